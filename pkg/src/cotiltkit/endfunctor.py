"""Endomorphism algebras, their quiver presentations, and the functor ``Hom(G, -)``.

For pairwise non-isomorphic indecomposables ``G_1, ..., G_n`` the algebra
``Gamma = End(G)`` (or its quotient by maps factoring through a subcategory) is
presented as ``kQ / I``. Vertex ``i`` is the summand ``G_i``; an arrow ``i -> j``
is an irreducible element of ``e_i Gamma e_j = Hom(G_j, G_i)``, so the right
module ``Hom(G, X)`` moves ``phi: G_i -> X`` along the arrow ``a`` to ``phi o a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import (
    Arrow, BasedAlgebra, Path, Quiver, Relation, SaturationError, build_based_algebra, deglex_key,
    trivial_path,
)
from .modrep import (
    ModuleMap, ModuleRep, decompose, hom_space, identity_map, is_isomorphic, is_indecomposable,
)
from .relexact import QuotientHom, SubcatSpec, quotient_hom


class PresentationError(RuntimeError):
    pass


@dataclass(eq=False)
class EndPresentation:
    summands: list[ModuleRep]
    spec: SubcatSpec | None
    algebra: BasedAlgebra
    arrow_maps: list[ModuleMap]          # representative of each arrow, G_target -> G_source
    basis_maps: list[ModuleMap]          # representative of each basis path
    nilpotency: int                      # smallest L with rad^L = 0
    relations_recovered: bool

    @property
    def dimension(self) -> int:
        return self.algebra.dimension

    def space(self, i: int, j: int) -> QuotientHom:
        """``e_i Gamma e_j`` as the (coset) space of maps ``G_j -> G_i``."""
        return quotient_hom(self.summands[j], self.summands[i], self.spec)

    def evaluate(self, p: Path) -> ModuleMap:
        g = self.summands
        if not p.arrows:
            return identity_map(g[p.source])
        out = self.arrow_maps[p.arrows[-1]]
        for k in reversed(p.arrows[:-1]):
            out = self.arrow_maps[k] @ out
        return out

    def verify_multiplication(self) -> bool:
        """Structure constants of the presentation agree with composition of representatives."""
        alg = self.algebra
        f = alg.field
        for s, p in enumerate(self.basis_maps):
            bs = alg.basis[s]
            for t, q in enumerate(self.basis_maps):
                bt = alg.basis[t]
                if bs.target != bt.source:
                    continue
                prod = p @ q
                sp = self.space(bs.source, bt.target)
                want = sp.reduce(prod)
                vec = alg.mult[s][t]
                got = f.zeros(sp.dim)
                if vec is not None:
                    for u in np.nonzero(vec != 0)[0]:
                        got = f.add(got, f.scale(vec[u], sp.reduce(self.basis_maps[u])))
                if not np.array_equal(got, want):
                    return False
        return True

    def radical_layer_table(self) -> dict[tuple[int, int], list[int]]:
        """``dim e_i rad^k e_j`` for ``k = 0, 1, ...`` from the path-length filtration."""
        alg = self.algebra
        out: dict[tuple[int, int], list[int]] = {}
        for i in range(alg.num_vertices):
            for j in range(alg.num_vertices):
                lens = [alg.basis[k].length for k in alg.basis_between(i, j)]
                top = max(lens, default=-1)
                out[(i, j)] = [sum(1 for l in lens if l >= k) for k in range(top + 1)]
        return out


def _basic_summands(g: ModuleRep | Sequence[ModuleRep], seed: int = 0) -> list[ModuleRep]:
    if isinstance(g, ModuleRep):
        return [m for m, _ in decompose(g, seed)]
    out: list[ModuleRep] = []
    for m in g:
        for piece, _ in (decompose(m, seed) if not is_indecomposable(m) else [(m, 1)]):
            if not any(o.dims == piece.dims and is_isomorphic(o, piece) for o in out):
                out.append(piece)
    return out


def _radical_coords(q: QuotientHom, diagonal: bool) -> np.ndarray:
    f = q.source.field
    if not diagonal:
        return f.eye(q.dim)
    g = q.source
    n = g.total_dim
    ident = identity_map(g)
    cols = []
    for b in q.hom.basis:
        tr = f.zero
        for mat in b.mats:
            for k in range(mat.shape[0]):
                tr = f(tr + mat[k, k])
        lam = f(tr * f.inv(f(n)))
        cols.append(q.reduce(b - ident.scaled(lam)))
    m = np.stack(cols, axis=1) if cols else f.zeros(q.dim, 0)
    return f.column_basis(m) if m.shape[1] else m


def _present(summands: list[ModuleRep], spec: SubcatSpec | None, name: str,
             labels: Sequence[str] | None, recover_relations: bool) -> EndPresentation:
    n = len(summands)
    if n == 0:
        raise PresentationError("no summands")
    f = summands[0].field
    for g in summands:
        if spec is not None and spec.contains(g):
            raise PresentationError(f"summand {g.name} lies in the subcategory (zero in the quotient)")
    Q = [[quotient_hom(summands[j], summands[i], spec) for j in range(n)] for i in range(n)]
    rad = [[_radical_coords(Q[i][j], i == j) for j in range(n)] for i in range(n)]
    radmaps = [[[Q[i][j].representative(rad[i][j][:, t]) for t in range(rad[i][j].shape[1])]
                for j in range(n)] for i in range(n)]
    arrows: list[tuple[int, int, ModuleMap]] = []
    for i in range(n):
        for j in range(n):
            if rad[i][j].shape[1] == 0:
                continue
            sq = [Q[i][j].reduce(x @ y) for k in range(n) for x in radmaps[i][k] for y in radmaps[k][j]]
            sq_m = f.column_basis(np.stack(sq, axis=1)) if sq else f.zeros(Q[i][j].dim, 0)
            both = np.concatenate([sq_m, rad[i][j]], axis=1)
            _, piv = f.rref(both)
            for c in piv:
                if c >= sq_m.shape[1]:
                    arrows.append((i, j, radmaps[i][j][c - sq_m.shape[1]]))
    if labels is not None and len(labels) != len(arrows):
        raise PresentationError(f"{len(labels)} labels for {len(arrows)} arrows")
    lab = list(labels) if labels is not None else [f"g{k + 1}" for k in range(len(arrows))]
    quiver = Quiver(n, tuple(Arrow(lab[k], a[0], a[1]) for k, a in enumerate(arrows)))
    amaps = [a[2] for a in arrows]

    def ev(p: Path) -> ModuleMap:
        if not p.arrows:
            return identity_map(summands[p.source])
        out = amaps[p.arrows[-1]]
        for k in reversed(p.arrows[:-1]):
            out = amaps[k] @ out
        return out

    # paths by length until everything vanishes
    by_len: list[list[Path]] = [[trivial_path(v) for v in range(n)]]
    coords: dict[Path, np.ndarray] = {p: Q[p.source][p.target].reduce(ev(p)) for p in by_len[0]}
    L = 0
    while True:
        L += 1
        if L > 64:
            raise PresentationError("radical does not vanish within 64 steps")
        nxt = [Path(p.source, quiver.arrows[k].target, p.arrows + (k,))
               for p in by_len[-1] for k in quiver.arrows_from(p.target)]
        nxt.sort(key=deglex_key)
        by_len.append(nxt)
        for p in nxt:
            coords[p] = Q[p.source][p.target].reduce(ev(p))
        if all(f.is_zero(coords[p]) for p in nxt):
            break
    # every element of Gamma must be a combination of paths
    for i in range(n):
        for j in range(n):
            cols = [coords[p] for ps in by_len for p in ps if p.source == i and p.target == j]
            r = f.rank(np.stack(cols, axis=1)) if cols and Q[i][j].dim else 0
            if r != Q[i][j].dim:
                raise PresentationError(f"paths {i + 1}->{j + 1} do not span (rank {r} of {Q[i][j].dim})")
    total = sum(Q[i][j].dim for i in range(n) for j in range(n))
    rels = _relations(quiver, by_len, coords, Q, f, minimal=recover_relations)
    try:
        alg = build_based_algebra(quiver, rels, f, max_length=max(L + 1, 2), name=name)
    except SaturationError:
        alg = None
    recovered = recover_relations
    if alg is None or alg.dimension != total:
        rels = _relations(quiver, by_len, coords, Q, f, minimal=False)
        alg = build_based_algebra(quiver, rels, f, max_length=max(L + 1, 2), name=name)
        recovered = False
    if alg.dimension != total:
        raise PresentationError(f"presented dimension {alg.dimension} != {total}")
    basis_maps = [ev(p) for p in alg.basis]
    return EndPresentation(summands, spec, alg, amaps, basis_maps, L, recovered)


def _relations(quiver: Quiver, by_len, coords, Q, f, minimal: bool) -> list[Relation]:
    """Generators of the kernel of path evaluation (paths of length >= 2)."""
    n = quiver.num_vertices
    L = len(by_len) - 1
    cands: list[Relation] = []
    for i in range(n):
        for j in range(n):
            ps = [p for ps in by_len[2:] for p in ps if p.source == i and p.target == j]
            if not ps:
                continue
            ps.sort(key=deglex_key, reverse=True)   # rref leads with the largest path
            d = Q[i][j].dim
            mat = np.stack([coords[p] for p in ps], axis=1) if d else f.zeros(0, len(ps))
            kb = f.kernel_basis(mat) if d else f.eye(len(ps))
            if kb.shape[1] == 0:
                continue
            red, _ = f.rref(kb.T.copy())
            for row in red:
                if f.is_zero(row):
                    continue
                terms = tuple((row[t], ps[t]) for t in range(len(ps)) if row[t] != 0)
                lead = 1 / terms[0][0] if f.characteristic == 0 else f.inv(terms[0][0])
                terms = tuple((f(c * lead), p) for c, p in terms)
                cands.append(Relation(tuple(sorted(terms, key=lambda t: deglex_key(t[1]), reverse=True))))
    cands.sort(key=lambda r: (r.max_length, deglex_key(r.terms[0][1])))
    if not minimal:
        return cands
    return _prune(quiver, cands, L, f)


def _prune(quiver: Quiver, cands: list[Relation], L: int, f) -> list[Relation]:
    allp = [trivial_path(v) for v in range(quiver.num_vertices)]
    frontier = list(allp)
    for _ in range(L):
        frontier = [Path(p.source, quiver.arrows[k].target, p.arrows + (k,))
                    for p in frontier for k in quiver.arrows_from(p.target)]
        allp.extend(frontier)
    idx = {p: k for k, p in enumerate(allp)}
    span = f.zeros(len(allp), 0)
    kept: list[Relation] = []

    def vec(terms) -> np.ndarray:
        v = f.zeros(len(allp))
        for c, p in terms:
            if p in idx:
                v[idx[p]] = f(v[idx[p]] + c)
        return v

    for r in cands:
        v = vec(r.terms).reshape(-1, 1)
        if span.shape[1] and f.solve(span, v) is not None:
            continue
        kept.append(r)
        new = []
        for p in allp:
            if p.target != r.source:
                continue
            for q in allp:
                if q.source != r.target or p.length + q.length + r.min_length > L:
                    continue
                terms = []
                for c, w in r.terms:
                    pw = quiver.concat(p, w)
                    full = quiver.concat(pw, q) if pw is not None else None
                    if full is not None:
                        terms.append((c, full))
                new.append(vec(terms))
        span = f.column_basis(np.concatenate([span] + [x.reshape(-1, 1) for x in new], axis=1))
    return kept


def end_algebra(g, name: str = "End", labels: Sequence[str] | None = None,
                recover_relations: bool = True, seed: int = 0) -> EndPresentation:
    """Basic presentation of ``End(G)`` with vertices in summand order."""
    return _present(_basic_summands(g, seed), None, name, labels, recover_relations)


def stable_end_algebra(g, spec: SubcatSpec, name: str = "StEnd", labels: Sequence[str] | None = None,
                       recover_relations: bool = True, seed: int = 0) -> EndPresentation:
    """Presentation of ``End(G)`` modulo maps factoring through ``add C``."""
    return _present(_basic_summands(g, seed), spec, name, labels, recover_relations)


def gabriel_quiver(pres: EndPresentation) -> Quiver:
    return pres.algebra.quiver


# --- the functor Hom(G, -) ------------------------------------------------------------------

def hom_functor(pres: EndPresentation, x: ModuleRep, name: str | None = None) -> ModuleRep:
    """``Hom(G, X)`` (modulo the ideal for stable presentations) as a right ``Gamma``-module."""
    alg = pres.algebra
    f = alg.field
    spaces = [quotient_hom(g, x, pres.spec) for g in pres.summands]
    reps = [s.coset_basis for s in spaces]
    mats = []
    for k, a in enumerate(alg.quiver.arrows):
        tgt = spaces[a.target]
        am = pres.arrow_maps[k]
        cols = [tgt.reduce(phi @ am) for phi in reps[a.source]]
        mats.append(np.stack(cols, axis=1) if cols else f.zeros(tgt.dim, 0))
    label = name if name is not None else f"F({x.name})"
    return ModuleRep(alg, [s.dim for s in spaces], mats, name=label)


stable_hom_functor = hom_functor


def hom_functor_map(pres: EndPresentation, fm: ModuleMap, fx: ModuleRep, fy: ModuleRep) -> ModuleMap:
    f = fm.field
    mats = []
    for i, g in enumerate(pres.summands):
        sx = quotient_hom(g, fm.source, pres.spec)
        sy = quotient_hom(g, fm.target, pres.spec)
        cols = [sy.reduce(fm @ phi) for phi in sx.coset_basis]
        mats.append(np.stack(cols, axis=1) if cols else f.zeros(sy.dim, 0))
    return ModuleMap(fx, fy, tuple(mats))


@dataclass
class FullyFaithfulReport:
    rows: list[tuple[str, str, int, int, int]]   # x, y, dim source Hom, dim Gamma-Hom, rank

    @property
    def failures(self) -> list[tuple[str, str, int, int, int]]:
        return [r for r in self.rows if not (r[2] == r[3] == r[4])]

    @property
    def ok(self) -> bool:
        return not self.failures


def fully_faithful_check(pres: EndPresentation, fixtures: Sequence[ModuleRep],
                         images: Sequence[ModuleRep] | None = None) -> FullyFaithfulReport:
    f = pres.algebra.field
    imgs = list(images) if images is not None else [hom_functor(pres, x) for x in fixtures]
    rows = []
    for a, x in enumerate(fixtures):
        for b, y in enumerate(fixtures):
            q = quotient_hom(x, y, pres.spec)
            gdim = hom_space(imgs[a], imgs[b]).dim
            vecs = [hom_functor_map(pres, r, imgs[a], imgs[b]).vector() for r in q.coset_basis]
            rk = f.rank(np.stack(vecs, axis=1)) if vecs and vecs[0].size else 0
            rows.append((x.name, y.name, q.dim, gdim, rk))
    return FullyFaithfulReport(rows)
