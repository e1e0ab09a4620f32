"""Resolutions, Ext, the transpose, AR translates and approximation sequences."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .modrep import (
    DirectSum, ModuleError, ModuleMap, ModuleRep, ShortExactSeq,
    _same_algebra, cokernel, direct_sum, dualize, factor_through_epi,
    factor_through_mono, hom_space, identity_map, injective_envelope, kernel,
    map_from_blocks, map_from_projective, projective_cover, projective_module, split_indecomposables,
    summand_vertices, zero_map, zero_module, find_iso_class,
)


class ResolutionDepthError(RuntimeError):
    pass


class ApproximationError(RuntimeError):
    pass


# --- resolutions -------------------------------------------------------------------

@dataclass(eq=False)
class Resolution:
    """``P_k -> ... -> P_0 -> M -> 0`` (kind "projective") or ``0 -> M -> I^0 -> ...`` ("injective").

    ``terms[k]`` is the k-th term, ``maps[0]`` the augmentation (``P_0 -> M`` or
    ``M -> I^0``) and ``maps[k]`` for k >= 1 the differential between terms k and k-1.
    ``syzygies[k]`` is the k-th (co)syzygy with its inclusion or projection.
    """

    module: ModuleRep
    kind: str
    terms: list[ModuleRep]
    maps: list[ModuleMap]
    vertices: list[list[int]]
    terminated: bool
    syzygies: list[ModuleRep] = dc_field(default_factory=list)

    @property
    def length(self) -> int | None:
        """Index of the last nonzero term when terminated, else None."""
        if not self.terminated:
            return None
        nz = [k for k, t in enumerate(self.terms) if t.total_dim]
        return nz[-1] if nz else 0

    def is_exact(self) -> bool:
        maps = self.maps
        for k in range(len(maps) - 1):
            comp = (maps[k] @ maps[k + 1]) if self.kind == "projective" else (maps[k + 1] @ maps[k])
            if not comp.is_zero():
                return False
        if self.kind == "projective":
            if not maps[0].is_surjective():
                return False
            for k in range(len(maps)):
                # rank(d_k) + rank(d_{k+1}) == dim P_k per vertex
                nxt = maps[k + 1].ranks() if k + 1 < len(maps) else None
                for v, d in enumerate(self.terms[k].dims):
                    r1 = maps[k].ranks()[v]
                    r2 = nxt[v] if nxt is not None else (0 if self.terminated else d - r1)
                    if r1 + r2 != d:
                        return False
            return True
        if not maps[0].is_injective():
            return False
        for k in range(1, len(maps)):
            prev = maps[k - 1].ranks()
            cur = maps[k].ranks()
            for v, d in enumerate(self.terms[k - 1].dims):
                if prev[v] + cur[v] != d:
                    return False
        if self.terminated:
            last = self.maps[-1]
            if not last.is_surjective():
                return False
        return True

    def is_minimal(self) -> bool:
        from .modrep import radical
        for k in range(1, len(self.maps)):
            d = self.maps[k]
            if self.kind == "projective":
                rad_mod, rad_inc = radical(self.terms[k - 1])
                if factor_through_mono(d, rad_inc) is None:
                    return False
            else:
                from .modrep import socle
                _, soc_inc = socle(self.terms[k - 1])
                if not (d @ soc_inc).is_zero():
                    return False
        return True


def min_proj_resolution(m: ModuleRep, bound: int = 8) -> Resolution:
    key = ("projres", bound)
    if key in m._cache:
        return m._cache[key]
    terms, maps, verts, syz = [], [], [], [m]
    cur, cur_inc = m, identity_map(m)
    terminated = False
    for k in range(bound + 1):
        ds, cov = projective_cover(cur)
        terms.append(ds.module)
        verts.append(summand_vertices(ds))
        maps.append(cur_inc @ cov)
        kmod, kinc = kernel(cov)
        syz.append(kmod)
        if kmod.total_dim == 0:
            terminated = True
            break
        cur, cur_inc = kmod, kinc
    res = Resolution(m, "projective", terms, maps, verts, terminated, syz)
    m._cache[key] = res
    return res


def min_inj_resolution(m: ModuleRep, bound: int = 8) -> Resolution:
    key = ("injres", bound)
    if key in m._cache:
        return m._cache[key]
    terms, maps, verts, syz = [], [], [], [m]
    cur = m
    cur_proj = identity_map(m)
    terminated = False
    for k in range(bound + 1):
        inj, env = injective_envelope(cur)
        terms.append(inj.module)
        verts.append(summand_vertices_injective(inj))
        maps.append(env @ cur_proj)
        q = cokernel(env)
        syz.append(q.module)
        if q.module.total_dim == 0:
            terminated = True
            break
        cur, cur_proj = q.module, q.proj
    res = Resolution(m, "injective", terms, maps, verts, terminated, syz)
    m._cache[key] = res
    return res


def summand_vertices_injective(ds: DirectSum) -> list[int]:
    from .modrep import injective_module
    alg = ds.module.algebra
    out = []
    for s in ds.summands:
        for v in range(alg.num_vertices):
            if injective_module(alg, v) is s:
                out.append(v)
                break
        else:
            raise ModuleError("not a cached indecomposable injective")
    return out


def projective_dimension(m: ModuleRep, bound: int = 8) -> int | None:
    return min_proj_resolution(m, bound).length


def injective_dimension(m: ModuleRep, bound: int = 8) -> int | None:
    """Length of the minimal injective coresolution, or None if it exceeds ``bound``."""
    return min_inj_resolution(m, bound).length


# --- Ext ---------------------------------------------------------------------------

def _yoneda_dual_matrix(res: Resolution, k: int, n: ModuleRep) -> np.ndarray:
    """Matrix of ``Hom(P_{k-1}, N) -> Hom(P_k, N)`` in Yoneda coordinates (``Hom(P(v), N) = N_v``)."""
    f = n.field
    alg = n.algebra
    src_v, tgt_v = res.vertices[k - 1], res.vertices[k]
    rows = sum(n.dims[w] for w in tgt_v)
    cols = sum(n.dims[v] for v in src_v)
    out = f.zeros(rows, cols)
    d = res.maps[k]
    # Offsets of each summand inside P_{k-1} at each vertex.
    summ_off: list[dict[int, int]] = []
    acc = [0] * alg.num_vertices
    for v in src_v:
        pv = projective_module(alg, v)
        summ_off.append({w: acc[w] for w in range(alg.num_vertices)})
        for w in range(alg.num_vertices):
            acc[w] += pv.dims[w]
    own = [0] * alg.num_vertices
    r0 = 0
    for w in tgt_v:
        col = own[w]  # e_w is the first basis vector of P(w)_w
        own[w] += projective_module(alg, w).dims[w]
        x = d.mats[w][:, col]
        c0 = 0
        for r, v in enumerate(src_v):
            idx = [b for b in alg.basis_from(v) if alg.basis[b].target == w]
            off = summ_off[r][w]
            blk = f.zeros(n.dims[w], n.dims[v])
            for t, b in enumerate(idx):
                c = x[off + t]
                if c != 0:
                    blk = f.add(blk, f.scale(c, n.basis_action(b)))
            out[r0:r0 + n.dims[w], c0:c0 + n.dims[v]] = blk
            c0 += n.dims[v]
        r0 += n.dims[w]
    return out


def ext_dim(m: ModuleRep, n: ModuleRep, i: int, bound: int | None = None) -> int:
    """``dim Ext^i(M, N)`` from the minimal projective resolution of ``M``."""
    _same_algebra(m.algebra, n.algebra)
    if i < 0:
        raise ValueError("negative Ext degree")
    res = min_proj_resolution(m, max(i + 1, bound or 0, 8))
    if i >= len(res.terms):
        return 0
    f = n.field
    dim_i = sum(n.dims[v] for v in res.vertices[i])
    r_out = f.rank(_yoneda_dual_matrix(res, i + 1, n)) if i + 1 < len(res.terms) else 0
    r_in = f.rank(_yoneda_dual_matrix(res, i, n)) if i >= 1 else 0
    return dim_i - r_out - r_in


def _induced_post(hs_src, hs_tgt, g: ModuleMap) -> np.ndarray:
    """Matrix of ``phi -> g @ phi`` from ``Hom(M, A)`` to ``Hom(M, B)`` in basis coordinates."""
    f = g.field
    out = f.zeros(hs_tgt.dim, hs_src.dim)
    for c, b in enumerate(hs_src.basis):
        out[:, c] = hs_tgt.coords(g @ b)
    return out


def ext_dim_injective(m: ModuleRep, n: ModuleRep, i: int) -> int:
    """``dim Ext^i(M, N)`` from the minimal injective coresolution of ``N`` and generic Hom spaces."""
    _same_algebra(m.algebra, n.algebra)
    res = min_inj_resolution(n, max(i + 1, 8))
    if i >= len(res.terms):
        return 0
    f = m.field
    hs = [hom_space(m, t) for t in res.terms]
    dim_i = hs[i].dim
    r_out = f.rank(_induced_post(hs[i], hs[i + 1], res.maps[i + 1])) if i + 1 < len(res.terms) and hs[i].dim and hs[i + 1].dim else 0
    r_in = f.rank(_induced_post(hs[i - 1], hs[i], res.maps[i])) if i >= 1 and hs[i - 1].dim and hs[i].dim else 0
    return dim_i - r_out - r_in


@dataclass(frozen=True)
class ExtTable:
    source: str
    target: str
    dims: tuple[int, ...]

    def rows(self) -> list[tuple[str, str, int, int]]:
        return [(self.source, self.target, i, d) for i, d in enumerate(self.dims)]


def ext_table(m: ModuleRep, n: ModuleRep, max_i: int) -> ExtTable:
    return ExtTable(m.name, n.name, tuple(ext_dim(m, n, i) for i in range(max_i + 1)))


# --- Ext^1 with explicit extensions ------------------------------------------------------

class Ext1Space:
    """``Ext^1(X, L)`` as ``Hom(Omega X, L)`` modulo maps extending to the projective cover."""

    def __init__(self, x: ModuleRep, l: ModuleRep):
        _same_algebra(x.algebra, l.algebra)
        self.x, self.l = x, l
        f = x.field
        ds, cov = projective_cover(x)
        self.cover_mod, self.cover = ds.module, cov
        self.omega, self.omega_inc = kernel(cov)
        self.hom_omega = hom_space(self.omega, l)
        hp = hom_space(self.cover_mod, l)
        restr = [b @ self.omega_inc for b in hp.basis]
        if restr and self.hom_omega.dim:
            im = np.stack([self.hom_omega.coords(r) for r in restr], axis=1)
            self.boundary = f.column_basis(im)
        else:
            self.boundary = f.zeros(self.hom_omega.dim, 0)
        comp = f.extend_to_basis(self.boundary) if self.hom_omega.dim else f.zeros(0, 0)
        self.complement = comp
        self.dim = comp.shape[1]

    def cocycle(self, coeffs: Sequence) -> ModuleMap:
        f = self.x.field
        vec = f.matmul(self.complement, f.vector(coeffs).reshape(-1, 1)).reshape(-1)
        return self.hom_omega.element(vec)

    def class_of_cocycle(self, phi: ModuleMap) -> np.ndarray:
        """Coordinates of ``[phi]`` in the chosen complement basis."""
        f = self.x.field
        c = self.hom_omega.coords(phi).reshape(-1, 1)
        full = np.concatenate([self.complement, self.boundary], axis=1)
        sol = f.solve(full, c)
        return sol[:self.dim].reshape(-1)

    def is_zero_class(self, phi: ModuleMap) -> bool:
        return self.x.field.is_zero(self.class_of_cocycle(phi))

    def to_ses(self, phi: ModuleMap) -> ShortExactSeq:
        """Pushout of ``0 -> Omega X -> P -> X -> 0`` along ``phi``."""
        base = ShortExactSeq(self.omega_inc, self.cover)
        return pushout(base, phi)

    def classify(self, ses: ShortExactSeq) -> np.ndarray:
        """Class of an extension ``0 -> L -> E -> X -> 0``: lift the cover, restrict to Omega X."""
        lift = lift_through_epi(self.cover, ses.proj)
        if lift is None:
            raise ModuleError("projective cover does not lift (not an extension of X by L)")
        res = lift @ self.omega_inc
        phi = factor_through_mono(res, ses.incl)
        return self.class_of_cocycle(phi)

    def basis_sequences(self) -> list[ShortExactSeq]:
        f = self.x.field
        out = []
        for t in range(self.dim):
            e = [f.zero] * self.dim
            e[t] = f.one
            out.append(self.to_ses(self.cocycle(e)))
        return out


def lift_through_epi(g: ModuleMap, epi: ModuleMap) -> ModuleMap | None:
    """``h`` with ``epi @ h == g`` for ``g: P -> N`` and ``epi: E -> N`` (solve in Hom(P, E))."""
    hs = hom_space(g.source, epi.source)
    f = g.field
    if hs.dim == 0:
        return zero_map(g.source, epi.source) if g.is_zero() else None
    cols = np.stack([(epi @ b).vector() for b in hs.basis], axis=1)
    rhs = g.vector().reshape(-1, 1)
    if cols.shape[0] == 0:
        return hs.element([f.zero] * hs.dim)
    x = f.solve(cols, rhs)
    if x is None:
        return None
    return hs.element(x.reshape(-1))


def extend_along_mono(g: ModuleMap, mono: ModuleMap) -> ModuleMap | None:
    """``h`` with ``h @ mono == g`` for ``g: L -> X``, ``mono: L -> M`` (solve in Hom(M, X))."""
    hs = hom_space(mono.target, g.target)
    f = g.field
    if hs.dim == 0:
        return zero_map(mono.target, g.target) if g.is_zero() else None
    cols = np.stack([(b @ mono).vector() for b in hs.basis], axis=1)
    rhs = g.vector().reshape(-1, 1)
    if cols.shape[0] == 0:
        return hs.element([f.zero] * hs.dim)
    x = f.solve(cols, rhs)
    if x is None:
        return None
    return hs.element(x.reshape(-1))


# --- transpose and AR translates ------------------------------------------------------

def minimal_presentation(m: ModuleRep) -> tuple[list[int], list[int], ModuleMap]:
    res = min_proj_resolution(m, 1)
    p0 = res.vertices[0]
    p1 = res.vertices[1] if len(res.terms) > 1 else []
    d1 = res.maps[1] if len(res.terms) > 1 else zero_map(zero_module(m.algebra), res.terms[0])
    return p0, p1, d1


def transpose(m: ModuleRep) -> ModuleRep:
    """``Tr M = Coker(Hom(P_0, Lambda) -> Hom(P_1, Lambda))`` as a module over the opposite algebra."""
    if "tr" in m._cache:
        return m._cache["tr"]
    alg = m.algebra
    op = alg.opposite()
    f = alg.field
    p0, p1, d1 = minimal_presentation(m)
    src = direct_sum([projective_module(op, v) for v in p0], algebra=op)
    tgt = direct_sum([projective_module(op, w) for w in p1], algebra=op)
    if not p1:
        out = zero_module(op)
        m._cache["tr"] = out
        return out
    # Offsets of the P(v) summands of P_0 per vertex.
    acc = [0] * alg.num_vertices
    offs = []
    for v in p0:
        offs.append(list(acc))
        pv = projective_module(alg, v)
        for w in range(alg.num_vertices):
            acc[w] += pv.dims[w]
    own = [0] * alg.num_vertices
    blocks = []
    for s, w in enumerate(p1):
        col = own[w]
        own[w] += projective_module(alg, w).dims[w]
        x = d1.mats[w][:, col]
        row = []
        for r, v in enumerate(p0):
            idx = [b for b in alg.basis_from(v) if alg.basis[b].target == w]
            # The same coefficients, read as an element of e_w Lambda^op e_v.
            op_idx = [b for b in op.basis_from(w) if op.basis[b].target == v]
            pos = {b: t for t, b in enumerate(op_idx)}
            y = f.zeros(len(op_idx))
            for t, b in enumerate(idx):
                y[pos[b]] = x[offs[r][w] + t]
            row.append(map_from_projective(op, v, y, projective_module(op, w)))
        blocks.append(row)
    dmap = map_from_blocks(src, tgt, blocks)
    out = cokernel(dmap).module
    out.name = f"Tr({m.name})" if m.name else ""
    m._cache["tr"] = out
    return out


def tau(m: ModuleRep) -> ModuleRep:
    if "tau" not in m._cache:
        t = dualize(transpose(m))
        t.name = f"tau({m.name})" if m.name else ""
        m._cache["tau"] = t
    return m._cache["tau"]


def tau_minus(m: ModuleRep) -> ModuleRep:
    if "taum" not in m._cache:
        t = transpose(dualize(m))
        t.name = f"tau-({m.name})" if m.name else ""
        m._cache["taum"] = t
    return m._cache["taum"]


# --- pushout / pullback ----------------------------------------------------------------

def pushout(ses: ShortExactSeq, fm: ModuleMap) -> ShortExactSeq:
    """Pushout of ``0 -> L -> M -> N -> 0`` along ``f: L -> L'``."""
    return pushout_square(ses, fm)[0]


def pushout_square(ses: ShortExactSeq, fm: ModuleMap) -> tuple[ShortExactSeq, ModuleMap]:
    """The pushout sequence together with the induced map ``M -> M'``."""
    l, mid, n = ses.left, ses.middle, ses.right
    l2 = fm.target
    ds = direct_sum([mid, l2])
    mp = map_from_blocks(l, ds, [[ses.incl], [fm.scaled(-1)]])
    q = cokernel(mp)
    new_incl = q.proj @ ds.inclusions[1]
    to_n = map_from_blocks(ds, n, [[ses.proj, zero_map(l2, n)]])
    new_proj = factor_through_epi(to_n, q.proj)
    return ShortExactSeq(new_incl, new_proj), q.proj @ ds.inclusions[0]


def pullback(ses: ShortExactSeq, g: ModuleMap) -> ShortExactSeq:
    """Pullback of ``0 -> L -> M -> N -> 0`` along ``g: N' -> N``."""
    return pullback_square(ses, g)[0]


def pullback_square(ses: ShortExactSeq, g: ModuleMap) -> tuple[ShortExactSeq, ModuleMap]:
    """The pullback sequence together with the induced map ``M' -> M``."""
    l, mid, n = ses.left, ses.middle, ses.right
    n2 = g.source
    ds = direct_sum([mid, n2])
    mp = map_from_blocks(ds, n, [[ses.proj, g.scaled(-1)]])
    kmod, kinc = kernel(mp)
    new_proj = ds.projections[1] @ kinc
    to_mid = map_from_blocks(l, ds, [[ses.incl], [zero_map(l, n2)]])
    new_incl = factor_through_mono(to_mid, kinc)
    return ShortExactSeq(new_incl, new_proj), ds.projections[0] @ kinc


def split_sequence(a: ModuleRep, b: ModuleRep) -> ShortExactSeq:
    ds = direct_sum([a, b])
    return ShortExactSeq(ds.inclusions[0], ds.projections[1])


# --- minimal approximations ----------------------------------------------------------

def indecomposable_gens(mods: Sequence[ModuleRep], seed: int = 0) -> list[ModuleRep]:
    """Pairwise non-isomorphic indecomposable summands of the given modules, in order."""
    out: list[ModuleRep] = []
    for m in mods:
        for s in split_indecomposables(m, seed=seed):
            if find_iso_class(s.module, out) is None:
                x = s.module
                if not x.name:
                    x.name = m.name if len(split_indecomposables(m, seed=seed)) == 1 else ""
                out.append(x)
    return out


def _radical_basis(g: ModuleRep, h: ModuleRep) -> list[ModuleMap]:
    """Basis of ``rad(G, H)`` for indecomposables with split local endomorphism rings."""
    hs = hom_space(g, h)
    if g is not h:
        return list(hs.basis)
    f = g.field
    n = g.total_dim
    inv_n = f.inv(f(n))
    one = identity_map(g)
    out = []
    for b in hs.basis:
        tr = f.zero
        for a in b.mats:
            for t in range(a.shape[0]):
                tr = f(tr + a[t, t])
        c = f(tr * inv_n)
        out.append(b - one.scaled(c) if c != 0 else b)
    from .modrep import _independent
    return _independent(out)


@dataclass(eq=False)
class Approximation:
    """A map between ``x`` and a direct sum of generator copies."""

    map: ModuleMap
    sum: DirectSum
    gen_index: list[int]


def minimal_right_approximation(x: ModuleRep, gens: Sequence[ModuleRep]) -> Approximation:
    """Minimal right ``add(gens)``-approximation ``G_X -> X`` (gens: pairwise non-isomorphic indecomposables)."""
    f = x.field
    chosen: list[tuple[int, ModuleMap]] = []
    for k, g in enumerate(gens):
        hs = hom_space(g, x)
        if hs.dim == 0:
            continue
        sub = []
        for l, h in enumerate(gens):
            hl = hom_space(h, x)
            if hl.dim == 0:
                continue
            for r in _radical_basis(g, h):
                for b in hl.basis:
                    sub.append(hs.coords(b @ r))
        sub_mat = f.column_basis(np.stack(sub, axis=1)) if sub else f.zeros(hs.dim, 0)
        comp = f.extend_to_basis(sub_mat)
        for t in range(comp.shape[1]):
            chosen.append((k, hs.element(comp[:, t])))
    ds = direct_sum([gens[k] for k, _ in chosen], algebra=x.algebra)
    mp = map_from_blocks(ds, x, [[m for _, m in chosen]]) if chosen else zero_map(ds.module, x)
    return Approximation(mp, ds, [k for k, _ in chosen])


def minimal_left_approximation(x: ModuleRep, gens: Sequence[ModuleRep]) -> Approximation:
    """Minimal left ``add(gens)``-approximation ``X -> G^X``."""
    f = x.field
    chosen: list[tuple[int, ModuleMap]] = []
    for k, g in enumerate(gens):
        hs = hom_space(x, g)
        if hs.dim == 0:
            continue
        sub = []
        for l, h in enumerate(gens):
            hl = hom_space(x, h)
            if hl.dim == 0:
                continue
            for r in _radical_basis(h, g):
                for b in hl.basis:
                    sub.append(hs.coords(r @ b))
        sub_mat = f.column_basis(np.stack(sub, axis=1)) if sub else f.zeros(hs.dim, 0)
        comp = f.extend_to_basis(sub_mat)
        for t in range(comp.shape[1]):
            chosen.append((k, hs.element(comp[:, t])))
    ds = direct_sum([gens[k] for k, _ in chosen], algebra=x.algebra)
    mp = map_from_blocks(x, ds, [[m] for _, m in chosen]) if chosen else zero_map(x, ds.module)
    return Approximation(mp, ds, [k for k, _ in chosen])


def in_add(x: ModuleRep, gens: Sequence[ModuleRep], seed: int = 0) -> bool:
    """Membership of ``x`` in ``add(gens)`` for pairwise non-isomorphic indecomposable ``gens``."""
    if x.total_dim == 0:
        return True
    for s in split_indecomposables(x, seed=seed):
        if find_iso_class(s.module, gens) is None:
            return False
    return True


# --- hat resolutions ----------------------------------------------------------------------

@dataclass(eq=False)
class HatWitness:
    """Result of a greedy approximation descent; ``terms`` in order ``U_0, U_1, ...``."""

    target: ModuleRep
    side: str
    ok: bool
    terms: list[ModuleRep]
    maps: list[ModuleMap]
    reason: str = ""

    @property
    def length(self) -> int | None:
        if not self.ok:
            return None
        nz = [k for k, t in enumerate(self.terms) if t.total_dim]
        return nz[-1] if nz else 0

    def is_exact(self) -> bool:
        if not self.ok:
            return False
        for k in range(len(self.maps) - 1):
            a, b = self.maps[k], self.maps[k + 1]
            comp = (a @ b) if self.side == "resolution" else (b @ a)
            if not comp.is_zero():
                return False
        total = self.target.total_dim
        alt = sum((-1) ** k * t.total_dim for k, t in enumerate(self.terms))
        if alt != total:
            return False
        if self.side == "resolution":
            return self.maps[0].is_surjective() if self.maps else total == 0
        return self.maps[0].is_injective() if self.maps else total == 0


def hat_membership(target: ModuleRep, u_gens: Sequence[ModuleRep], depth: int = 8,
                   side: str = "resolution") -> HatWitness:
    """Greedy search for ``0 -> U_n -> ... -> U_0 -> target -> 0`` (or the coresolution form)."""
    gens = indecomposable_gens(u_gens)
    terms: list[ModuleRep] = []
    maps: list[ModuleMap] = []
    if side not in ("resolution", "coresolution"):
        raise ValueError("side must be 'resolution' or 'coresolution'")
    cur_mod = target
    link: ModuleMap | None = None  # inclusion of the syzygy (resolution) / projection onto the cosyzygy
    for k in range(depth + 1):
        if cur_mod.total_dim == 0:
            return HatWitness(target, side, True, terms, maps)
        if side == "resolution":
            ap = minimal_right_approximation(cur_mod, gens)
            if not ap.map.is_surjective():
                return HatWitness(target, side, False, terms, maps, f"approximation at step {k} not surjective")
            terms.append(ap.sum.module)
            maps.append(ap.map if link is None else link @ ap.map)
            cur_mod, link = kernel(ap.map)
        else:
            ap = minimal_left_approximation(cur_mod, gens)
            if not ap.map.is_injective():
                return HatWitness(target, side, False, terms, maps, f"approximation at step {k} not injective")
            terms.append(ap.sum.module)
            maps.append(ap.map if link is None else ap.map @ link)
            q = cokernel(ap.map)
            cur_mod, link = q.module, q.proj
    if cur_mod.total_dim == 0:
        return HatWitness(target, side, True, terms, maps)
    return HatWitness(target, side, False, terms, maps, f"depth {depth} exceeded")


# --- Auslander-Buchweitz approximation sequences -----------------------------------------

@dataclass(eq=False)
class ABResult:
    right: ShortExactSeq  # Y_C -> X_C -> C
    left: ShortExactSeq   # C -> Y^C -> X^C
    steps: int


def ab_approximation(c: ModuleRep, x_gens: Sequence[ModuleRep], w_gens: Sequence[ModuleRep],
                     depth: int = 8) -> ABResult:
    """Both approximation conflations for ``c``, built by the inductive pushout construction.

    ``x_gens`` lists the indecomposables of the extension-closed class X and
    ``w_gens`` generates its Ext-injective cogenerators W.
    """
    xs = indecomposable_gens(x_gens)
    ws = indecomposable_gens(w_gens)
    return _ab(c, xs, ws, depth)


def _w_coresolution_step(e: ModuleRep, ws, xs) -> ShortExactSeq:
    ap = minimal_left_approximation(e, ws)
    if not ap.map.is_injective():
        raise ApproximationError("left W-approximation is not injective")
    seq = ShortExactSeq(ap.map, cokernel(ap.map).proj)
    if not in_add(seq.right, xs):
        raise ApproximationError("cokernel of the W-approximation leaves X")
    return seq


def _ab(c: ModuleRep, xs, ws, depth: int) -> ABResult:
    if in_add(c, xs):
        right = ShortExactSeq(zero_map(zero_module(c.algebra), c), identity_map(c))
        return ABResult(right, _w_coresolution_step(c, ws, xs), 0)
    if depth <= 0:
        raise ResolutionDepthError("no finite X-resolution within the depth bound")
    ap = minimal_right_approximation(c, xs)
    if not ap.map.is_surjective():
        raise ApproximationError("right X-approximation is not surjective")
    d_mod, d_inc = kernel(ap.map)
    first = ShortExactSeq(d_inc, ap.map)         # D -> X -> C
    sub = _ab(d_mod, xs, ws, depth - 1)
    po = pushout(first, sub.left.incl)           # Y^D -> E -> C
    e = po.middle
    right = po
    w_step = _w_coresolution_step(e, ws, xs)     # E -> W -> F
    comp = w_step.incl @ po.incl                 # Y^D -> W
    g_quot = cokernel(comp)
    c_to_g = factor_through_epi(g_quot.proj @ w_step.incl, po.proj)
    if c_to_g is None:
        raise ApproximationError("induced map C -> G does not exist")
    left = ShortExactSeq(c_to_g, cokernel(c_to_g).proj)
    return ABResult(right, left, sub.steps + 1)


# --- AR-duality exactness --------------------------------------------------------------

def is_hom_exact_from(ses: ShortExactSeq, x: ModuleRep) -> bool:
    """``Hom(X, M) -> Hom(X, N)`` surjective."""
    hs_n = hom_space(x, ses.right)
    if hs_n.dim == 0:
        return True
    hs_m = hom_space(x, ses.middle)
    f = x.field
    if hs_m.dim == 0:
        return False
    img = np.stack([hs_n.coords(ses.proj @ b) for b in hs_m.basis], axis=1)
    return f.rank(img) == hs_n.dim


def is_hom_exact_into(ses: ShortExactSeq, x: ModuleRep) -> bool:
    """``Hom(M, X) -> Hom(L, X)`` surjective."""
    hs_l = hom_space(ses.left, x)
    if hs_l.dim == 0:
        return True
    hs_m = hom_space(ses.middle, x)
    f = x.field
    if hs_m.dim == 0:
        return False
    img = np.stack([hs_l.coords(b @ ses.incl) for b in hs_m.basis], axis=1)
    return f.rank(img) == hs_l.dim
