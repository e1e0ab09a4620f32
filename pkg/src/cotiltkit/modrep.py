"""Right modules as quiver representations.

A module over ``kQ/I`` stores one vector space per vertex (by dimension) and
one matrix per arrow. An arrow ``a: i -> j`` acts as ``M_a: M_i -> M_j`` on
column vectors, so a path ``a1*a2*...*ak`` acts by ``M_ak @ ... @ M_a1``.
Morphisms are tuples of vertex matrices; ``g @ f`` is "first f, then g".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import BasedAlgebra, Path
from .exactlin import Field


class ModuleError(ValueError):
    pass


class AlgebraMismatchError(ModuleError):
    pass


class DecompositionError(RuntimeError):
    """No splitting endomorphism and no locality certificate within budget."""


class UndeterminedError(RuntimeError):
    pass


def _same_algebra(a: BasedAlgebra, b: BasedAlgebra) -> None:
    if a is not b:
        raise AlgebraMismatchError("modules live over different algebras")


class ModuleRep:
    __slots__ = ("algebra", "dims", "maps", "name", "_cache", "__weakref__")

    def __init__(self, algebra: BasedAlgebra, dims: Sequence[int], maps: Sequence[np.ndarray],
                 name: str = "", validate: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        f = algebra.field
        self.maps = tuple(f.check(np.asarray(m)) for m in maps)
        self.name = name
        self._cache: dict = {}
        if validate:
            self.validate()

    # --- basic structure -----------------------------------------------------
    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return out

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def validate(self) -> None:
        q = self.algebra.quiver
        if len(self.dims) != q.num_vertices:
            raise ModuleError("dimension vector length differs from vertex count")
        if any(d < 0 for d in self.dims):
            raise ModuleError("negative dimension")
        if len(self.maps) != len(q.arrows):
            raise ModuleError("one matrix per arrow is required")
        for a, m in zip(q.arrows, self.maps):
            if m.shape != (self.dims[a.target], self.dims[a.source]):
                raise ModuleError(f"arrow {a.label}: expected shape "
                                  f"{(self.dims[a.target], self.dims[a.source])}, got {m.shape}")
        f = self.field
        for r in self.algebra.relations:
            acc = f.zeros(self.dims[r.target], self.dims[r.source])
            for c, p in r.terms:
                acc = f.add(acc, f.scale(c, self.path_matrix(p)))
            if not f.is_zero(acc):
                raise ModuleError(f"relation {r.format(q, f)} fails on module {self.name or ''}".rstrip())

    def path_matrix(self, p: Path) -> np.ndarray:
        f = self.field
        m = f.eye(self.dims[p.source])
        for k in p.arrows:
            m = f.matmul(self.maps[k], m)
        return m

    def basis_action(self, b: int) -> np.ndarray:
        """Matrix of right multiplication by the algebra basis element ``b``."""
        key = ("act", b)
        if key not in self._cache:
            self._cache[key] = self.path_matrix(self.algebra.basis[b])
        return self._cache[key]

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"ModuleRep({label}dims={list(self.dims)})"

    def renamed(self, name: str) -> "ModuleRep":
        return ModuleRep(self.algebra, self.dims, self.maps, name=name, validate=False)

    def same_data(self, other: "ModuleRep") -> bool:
        return (self.algebra is other.algebra and self.dims == other.dims
                and all(np.array_equal(a, b) for a, b in zip(self.maps, other.maps)))


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: ModuleRep
    target: ModuleRep
    mats: tuple[np.ndarray, ...]

    def __post_init__(self):
        _same_algebra(self.source.algebra, self.target.algebra)
        for v, m in enumerate(self.mats):
            if m.shape != (self.target.dims[v], self.source.dims[v]):
                raise ModuleError(f"vertex {v}: bad map shape {m.shape}")

    @property
    def field(self) -> Field:
        return self.source.field

    def check(self) -> bool:
        f = self.field
        for k, a in enumerate(self.source.algebra.quiver.arrows):
            lhs = f.matmul(self.target.maps[k], self.mats[a.source])
            rhs = f.matmul(self.mats[a.target], self.source.maps[k])
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def validated(self) -> "ModuleMap":
        if not self.check():
            raise ModuleError("vertex maps do not commute with the arrow actions")
        return self

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        if other.target is not self.source and not other.target.same_data(self.source):
            raise ModuleError("composition of non-composable maps")
        f = self.field
        return ModuleMap(other.source, self.target,
                         tuple(f.matmul(a, b) for a, b in zip(self.mats, other.mats)))

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        f = self.field
        return ModuleMap(self.source, self.target, tuple(f.add(a, b) for a, b in zip(self.mats, other.mats)))

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        f = self.field
        return ModuleMap(self.source, self.target, tuple(f.sub(a, b) for a, b in zip(self.mats, other.mats)))

    def scaled(self, c) -> "ModuleMap":
        f = self.field
        return ModuleMap(self.source, self.target, tuple(f.scale(f(c), a) for a in self.mats))

    def is_zero(self) -> bool:
        return all(self.field.is_zero(m) for m in self.mats)

    def ranks(self) -> list[int]:
        return [self.field.rank(m) if m.size else 0 for m in self.mats]

    def is_injective(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.source.dims))

    def is_surjective(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.target.dims))

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def vector(self) -> np.ndarray:
        parts = [m.reshape(-1) for m in self.mats]
        if not parts:
            return self.field.zeros(0)
        return np.concatenate(parts)

    def global_matrix(self) -> np.ndarray:
        f = self.field
        out = f.zeros(self.target.total_dim, self.source.total_dim)
        ro, co = self.target.offsets(), self.source.offsets()
        for v, m in enumerate(self.mats):
            out[ro[v]:ro[v] + m.shape[0], co[v]:co[v] + m.shape[1]] = m
        return out

    def inverse(self) -> "ModuleMap":
        f = self.field
        return ModuleMap(self.target, self.source, tuple(f.inverse(m) for m in self.mats))

    def power(self, k: int) -> "ModuleMap":
        f = self.field
        out = []
        for m in self.mats:
            r = f.eye(m.shape[0])
            for _ in range(k):
                r = f.matmul(m, r)
            out.append(r)
        return ModuleMap(self.source, self.target, tuple(out))

    def __repr__(self) -> str:
        return f"ModuleMap({self.source!r} -> {self.target!r})"


def identity_map(m: ModuleRep) -> ModuleMap:
    return ModuleMap(m, m, tuple(m.field.eye(d) for d in m.dims))


def zero_map(m: ModuleRep, n: ModuleRep) -> ModuleMap:
    f = m.field
    return ModuleMap(m, n, tuple(f.zeros(b, a) for a, b in zip(m.dims, n.dims)))


def map_from_vector(m: ModuleRep, n: ModuleRep, vec: np.ndarray) -> ModuleMap:
    mats, pos = [], 0
    for a, b in zip(m.dims, n.dims):
        mats.append(np.asarray(vec[pos:pos + a * b]).reshape(b, a).copy())
        pos += a * b
    return ModuleMap(m, n, tuple(mats))


def zero_module(algebra: BasedAlgebra) -> ModuleRep:
    f = algebra.field
    q = algebra.quiver
    return ModuleRep(algebra, [0] * q.num_vertices, [f.zeros(0, 0) for _ in q.arrows], name="0")


# --- direct sums ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DirectSum:
    module: ModuleRep
    summands: tuple[ModuleRep, ...]
    inclusions: tuple[ModuleMap, ...]
    projections: tuple[ModuleMap, ...]


def direct_sum(mods: Sequence[ModuleRep], algebra: BasedAlgebra | None = None, name: str = "") -> DirectSum:
    if not mods:
        if algebra is None:
            raise ModuleError("empty direct sum needs an explicit algebra")
        z = zero_module(algebra)
        return DirectSum(z, (), (), ())
    alg = mods[0].algebra
    for m in mods:
        _same_algebra(alg, m.algebra)
    f = alg.field
    q = alg.quiver
    dims = [sum(m.dims[v] for m in mods) for v in range(q.num_vertices)]
    maps = []
    for k, a in enumerate(q.arrows):
        blk = f.zeros(dims[a.target], dims[a.source])
        r = c = 0
        for m in mods:
            blk[r:r + m.dims[a.target], c:c + m.dims[a.source]] = m.maps[k]
            r += m.dims[a.target]
            c += m.dims[a.source]
        maps.append(blk)
    if not name:
        name = " + ".join(m.name or "?" for m in mods)
    s = ModuleRep(alg, dims, maps, name=name, validate=False)
    incs, projs = [], []
    starts = [0] * q.num_vertices
    for m in mods:
        im, pm = [], []
        for v in range(q.num_vertices):
            e = f.zeros(dims[v], m.dims[v])
            for t in range(m.dims[v]):
                e[starts[v] + t, t] = f.one
            im.append(e)
            pm.append(e.T.copy())
            starts[v] += m.dims[v]
        incs.append(ModuleMap(m, s, tuple(im)))
        projs.append(ModuleMap(s, m, tuple(pm)))
    return DirectSum(s, tuple(mods), tuple(incs), tuple(projs))


def map_from_blocks(src: DirectSum | ModuleRep, tgt: DirectSum | ModuleRep,
                    blocks: Sequence[Sequence[ModuleMap | None]]) -> ModuleMap:
    """Assemble a map between direct sums from a block matrix ``blocks[row][col]``."""
    s_mod = src.module if isinstance(src, DirectSum) else src
    t_mod = tgt.module if isinstance(tgt, DirectSum) else tgt
    s_inc = src.projections if isinstance(src, DirectSum) else (identity_map(src),)
    t_inc = tgt.inclusions if isinstance(tgt, DirectSum) else (identity_map(tgt),)
    total = zero_map(s_mod, t_mod)
    for r, row in enumerate(blocks):
        for c, blk in enumerate(row):
            if blk is not None:
                total = total + (t_inc[r] @ blk @ s_inc[c])
    return total


# --- sub and quotient objects --------------------------------------------------

def submodule(m: ModuleRep, bases: Sequence[np.ndarray], name: str = "") -> tuple[ModuleRep, ModuleMap]:
    """Submodule spanned per vertex by the (independent) columns of ``bases``."""
    f = m.field
    q = m.algebra.quiver
    maps = []
    for k, a in enumerate(q.arrows):
        img = f.matmul(m.maps[k], bases[a.source])
        x = f.solve(bases[a.target], img)
        if x is None:
            raise ModuleError("subspaces are not closed under the arrow actions")
        maps.append(x)
    sub = ModuleRep(m.algebra, [b.shape[1] for b in bases], maps, name=name, validate=False)
    return sub, ModuleMap(sub, m, tuple(b.copy() for b in bases))


@dataclass(frozen=True, eq=False)
class Quotient:
    module: ModuleRep
    proj: ModuleMap
    section: tuple[np.ndarray, ...]  # vertex-wise linear splitting of proj


def quotient(m: ModuleRep, bases: Sequence[np.ndarray], name: str = "") -> Quotient:
    f = m.field
    q = m.algebra.quiver
    comps, projs = [], []
    for v, b in enumerate(bases):
        c = f.extend_to_basis(b)
        t = np.concatenate([b, c], axis=1)
        tinv = f.inverse(t) if t.shape[0] else f.zeros(0, 0)
        comps.append(c)
        projs.append(tinv[b.shape[1]:, :].copy())
    maps = []
    for k, a in enumerate(q.arrows):
        maps.append(f.matmul(projs[a.target], f.matmul(m.maps[k], comps[a.source])))
    qm = ModuleRep(m.algebra, [c.shape[1] for c in comps], maps, name=name, validate=False)
    return Quotient(qm, ModuleMap(m, qm, tuple(projs)), tuple(comps))


def kernel(fm: ModuleMap) -> tuple[ModuleRep, ModuleMap]:
    f = fm.field
    return submodule(fm.source, [f.kernel_basis(a) for a in fm.mats])


@dataclass(frozen=True, eq=False)
class Image:
    module: ModuleRep
    epi: ModuleMap
    mono: ModuleMap


def image(fm: ModuleMap) -> Image:
    f = fm.field
    bases = [f.column_basis(a) if a.size else f.zeros(a.shape[0], 0) for a in fm.mats]
    im, mono = submodule(fm.target, bases)
    epi_mats = []
    for v, a in enumerate(fm.mats):
        if bases[v].shape[1] == 0:
            epi_mats.append(f.zeros(0, a.shape[1]))
        else:
            epi_mats.append(f.solve(bases[v], a))
    return Image(im, ModuleMap(fm.source, im, tuple(epi_mats)), mono)


def cokernel(fm: ModuleMap) -> Quotient:
    f = fm.field
    bases = [f.column_basis(a) if a.size else f.zeros(a.shape[0], 0) for a in fm.mats]
    return quotient(fm.target, bases)


def factor_through_mono(g: ModuleMap, mono: ModuleMap) -> ModuleMap | None:
    """``h`` with ``mono @ h == g`` (vertex-wise solve), or None."""
    f = g.field
    mats = []
    for a, b in zip(mono.mats, g.mats):
        x = f.solve(a, b)
        if x is None:
            return None
        mats.append(x)
    return ModuleMap(g.source, mono.source, tuple(mats))


def factor_through_epi(g: ModuleMap, epi: ModuleMap) -> ModuleMap | None:
    """``h`` with ``h @ epi == g`` when ``g`` kills ``ker epi``, else None."""
    f = g.field
    mats = []
    for a, b in zip(epi.mats, g.mats):
        x = f.solve(a.T.copy(), b.T.copy())
        if x is None:
            return None
        mats.append(x.T.copy())
    return ModuleMap(epi.target, g.target, tuple(mats))


# --- standard modules ------------------------------------------------------------

def projective_module(algebra: BasedAlgebra, i: int) -> ModuleRep:
    """``P(i) = e_i Lambda``: basis = residues of paths starting at ``i``."""
    key = ("P", i)
    cache = _alg_cache(algebra)
    if key in cache:
        return cache[key]
    f = algebra.field
    q = algebra.quiver
    idx = algebra.basis_from(i)
    at = [[b for b in idx if algebra.basis[b].target == v] for v in range(q.num_vertices)]
    pos = {b: (v, t) for v in range(q.num_vertices) for t, b in enumerate(at[v])}
    maps = []
    for k, a in enumerate(q.arrows):
        m = f.zeros(len(at[a.target]), len(at[a.source]))
        ab = algebra.arrow_basis_index(k)
        for col, b in enumerate(at[a.source]):
            v = algebra.mult[b][ab]
            if v is None:
                continue
            for c in np.nonzero(v != 0)[0]:
                vv, t = pos[int(c)]
                m[t, col] = v[c]
        maps.append(m)
    mod = ModuleRep(algebra, [len(x) for x in at], maps, name=f"P{i + 1}")
    cache[key] = mod
    return mod


def injective_module(algebra: BasedAlgebra, i: int) -> ModuleRep:
    """``I(i) = D(Lambda e_i)``, computed as the dual of a projective over the opposite."""
    key = ("I", i)
    cache = _alg_cache(algebra)
    if key not in cache:
        cache[key] = dualize(projective_module(algebra.opposite(), i)).renamed(f"I{i + 1}")
    return cache[key]


def simple_module(algebra: BasedAlgebra, i: int) -> ModuleRep:
    f = algebra.field
    q = algebra.quiver
    dims = [1 if v == i else 0 for v in range(q.num_vertices)]
    maps = [f.zeros(dims[a.target], dims[a.source]) for a in q.arrows]
    return ModuleRep(algebra, dims, maps, name=f"S{i + 1}")


def regular_module(algebra: BasedAlgebra) -> DirectSum:
    return direct_sum([projective_module(algebra, i) for i in range(algebra.num_vertices)], name="Lambda")


def dual_regular_module(algebra: BasedAlgebra) -> DirectSum:
    return direct_sum([injective_module(algebra, i) for i in range(algebra.num_vertices)], name="DLambda")


_ALG_CACHES: dict[int, tuple[BasedAlgebra, dict]] = {}


def _alg_cache(algebra: BasedAlgebra) -> dict:
    ent = _ALG_CACHES.get(id(algebra))
    if ent is None or ent[0] is not algebra:
        ent = (algebra, {})
        _ALG_CACHES[id(algebra)] = ent
    return ent[1]


# --- duality ---------------------------------------------------------------------

def dualize(m: ModuleRep) -> ModuleRep:
    op = m.algebra.opposite()
    name = f"D({m.name})" if m.name else ""
    return ModuleRep(op, m.dims, [a.T.copy() for a in m.maps], name=name, validate=False)


def dualize_map(fm: ModuleMap, dsrc: ModuleRep | None = None, dtgt: ModuleRep | None = None) -> ModuleMap:
    """``D(f): D(target) -> D(source)``."""
    ds = dsrc if dsrc is not None else dualize(fm.target)
    dt = dtgt if dtgt is not None else dualize(fm.source)
    return ModuleMap(ds, dt, tuple(a.T.copy() for a in fm.mats))


# --- radical layers ----------------------------------------------------------------

def radical(m: ModuleRep) -> tuple[ModuleRep, ModuleMap]:
    f = m.field
    q = m.algebra.quiver
    bases = []
    for v in range(q.num_vertices):
        cols = [m.maps[k] for k in q.arrows_into(v) if m.maps[k].shape[1]]
        if cols:
            bases.append(f.column_basis(np.concatenate(cols, axis=1)))
        else:
            bases.append(f.zeros(m.dims[v], 0))
    return submodule(m, bases)


def socle(m: ModuleRep) -> tuple[ModuleRep, ModuleMap]:
    f = m.field
    q = m.algebra.quiver
    bases = []
    for v in range(q.num_vertices):
        rows = [m.maps[k] for k in q.arrows_from(v) if m.maps[k].shape[0]]
        if rows and m.dims[v]:
            bases.append(f.kernel_basis(np.concatenate(rows, axis=0)))
        else:
            bases.append(f.eye(m.dims[v]))
    return submodule(m, bases)


def top(m: ModuleRep) -> Quotient:
    _, inc = radical(m)
    return quotient(m, list(inc.mats))


def radical_layers(m: ModuleRep) -> list[tuple[int, ...]]:
    """Dimension vectors of ``rad^k M / rad^(k+1) M`` for k = 0, 1, ..."""
    layers = []
    cur = m
    while cur.total_dim:
        r, _ = radical(cur)
        layers.append(tuple(a - b for a, b in zip(cur.dims, r.dims)))
        if r.total_dim == cur.total_dim:
            raise ModuleError("radical series does not terminate")
        cur = r
    return layers


def layer_name(m: ModuleRep) -> str:
    """Radical-layer label such as ``3/2/1`` (1-based vertices, top first)."""
    if m.total_dim == 0:
        return "0"
    n = m.algebra.num_vertices
    sep = "," if n > 9 else ""
    parts = []
    for layer in radical_layers(m):
        parts.append(sep.join(str(v + 1) * 1 if sep == "" else str(v + 1)
                              for v in range(n) for _ in range(layer[v])))
    return "/".join(parts)


# --- covers and envelopes -------------------------------------------------------------

def projective_cover(m: ModuleRep) -> tuple[DirectSum, ModuleMap]:
    f = m.field
    alg = m.algebra
    _, rad_inc = radical(m)
    gens: list[tuple[int, np.ndarray]] = []
    for v in range(alg.num_vertices):
        comp = f.extend_to_basis(rad_inc.mats[v])
        for t in range(comp.shape[1]):
            gens.append((v, comp[:, t]))
    ds = direct_sum([projective_module(alg, v) for v, _ in gens], algebra=alg)
    pieces = []
    for (v, x), p in zip(gens, ds.summands):
        pieces.append(_map_from_projective(p, v, x, m))
    cover = map_from_blocks(ds, m, [pieces]) if gens else zero_map(ds.module, m)
    return ds, cover


def _map_from_projective(p: ModuleRep, v: int, x: np.ndarray, m: ModuleRep) -> ModuleMap:
    """The map ``P(v) -> M`` sending ``e_v`` to the element ``x`` of ``M_v``."""
    f = m.field
    alg = m.algebra
    idx = alg.basis_from(v)
    mats = []
    for w in range(alg.num_vertices):
        bs = [b for b in idx if alg.basis[b].target == w]
        mat = f.zeros(m.dims[w], len(bs))
        for c, b in enumerate(bs):
            mat[:, c] = f.matmul(m.basis_action(b), x.reshape(-1, 1)).reshape(-1)
        mats.append(mat)
    return ModuleMap(p, m, tuple(mats))


def map_from_projective(algebra: BasedAlgebra, v: int, x: np.ndarray, m: ModuleRep) -> ModuleMap:
    return _map_from_projective(projective_module(algebra, v), v, x, m)


def injective_envelope(m: ModuleRep) -> tuple[DirectSum, ModuleMap]:
    dm = dualize(m)
    ds, cov = projective_cover(dm)
    alg = m.algebra
    inj = direct_sum([injective_module(alg, _vertex_of_projective(p)) for p in ds.summands], algebra=alg)
    env = ModuleMap(m, inj.module, tuple(a.T.copy() for a in cov.mats))
    return inj, env


def _vertex_of_projective(p: ModuleRep) -> int:
    alg = p.algebra
    for v in range(alg.num_vertices):
        if projective_module(alg, v) is p:
            return v
    raise ModuleError("not a cached indecomposable projective")


def summand_vertices(ds: DirectSum) -> list[int]:
    """Vertices of the indecomposable projectives making up a projective cover."""
    return [_vertex_of_projective(p) for p in ds.summands]


# --- Hom spaces -------------------------------------------------------------------

class HomSpace:
    """Basis of ``Hom(M, N)`` with exact coordinates."""

    def __init__(self, m: ModuleRep, n: ModuleRep):
        _same_algebra(m.algebra, n.algebra)
        self.source, self.target = m, n
        f = m.field
        q = m.algebra.quiver
        sizes = [m.dims[v] * n.dims[v] for v in range(q.num_vertices)]
        offs = np.cumsum([0] + sizes)
        nvar = int(offs[-1])
        blocks = []
        for k, a in enumerate(q.arrows):
            i, j = a.source, a.target
            rows = n.dims[j] * m.dims[i]
            if rows == 0:
                continue
            eq = f.zeros(rows, nvar)
            if sizes[i]:
                eq[:, offs[i]:offs[i + 1]] = f.kron(n.maps[k], f.eye(m.dims[i]))
            if sizes[j]:
                eq[:, offs[j]:offs[j + 1]] = f.sub(eq[:, offs[j]:offs[j + 1]],
                                                   f.kron(f.eye(n.dims[j]), m.maps[k].T.copy()))
            blocks.append(eq)
        if blocks and nvar:
            kb = f.kernel_basis(np.concatenate(blocks, axis=0))
        else:
            kb = f.eye(nvar)
        self.matrix = kb
        self.basis = [map_from_vector(m, n, kb[:, t]) for t in range(kb.shape[1])]
        self._left_inv = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, fm: ModuleMap) -> np.ndarray:
        f = self.source.field
        if self._left_inv is None:
            if self.dim == 0:
                self._rows, self._left_inv = [], f.zeros(0, 0)
            else:
                _, rows = f.rref(self.matrix.T.copy())
                self._rows = rows
                self._left_inv = f.inverse(self.matrix[rows, :])
        vec = fm.vector()
        if self.dim == 0:
            return f.zeros(0)
        x = f.matmul(self._left_inv, vec[self._rows].reshape(-1, 1)).reshape(-1)
        return x

    def element(self, coeffs: Sequence) -> ModuleMap:
        f = self.source.field
        vec = f.matmul(self.matrix, f.vector(coeffs).reshape(-1, 1)).reshape(-1)
        return map_from_vector(self.source, self.target, vec)

    def contains(self, fm: ModuleMap) -> bool:
        return fm.check()


def hom_space(m: ModuleRep, n: ModuleRep) -> HomSpace:
    _same_algebra(m.algebra, n.algebra)
    key = ("hom", id(n))
    ent = m._cache.get(key)
    if ent is None or ent[0] is not n:
        ent = (n, HomSpace(m, n))
        m._cache[key] = ent
    return ent[1]


def hom_dim(m: ModuleRep, n: ModuleRep) -> int:
    return hom_space(m, n).dim


# --- short exact sequences ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ShortExactSeq:
    incl: ModuleMap
    proj: ModuleMap

    @property
    def left(self) -> ModuleRep:
        return self.incl.source

    @property
    def middle(self) -> ModuleRep:
        return self.incl.target

    @property
    def right(self) -> ModuleRep:
        return self.proj.target

    def is_valid(self) -> bool:
        if self.incl.target is not self.proj.source and not self.incl.target.same_data(self.proj.source):
            return False
        if not (self.incl.check() and self.proj.check()):
            return False
        if not (self.incl.is_injective() and self.proj.is_surjective()):
            return False
        if not (self.proj @ self.incl).is_zero():
            return False
        return all(a + b == c for a, b, c in zip(self.left.dims, self.right.dims, self.middle.dims))

    def validated(self) -> "ShortExactSeq":
        if not self.is_valid():
            raise ModuleError("not a short exact sequence")
        return self

    def is_split(self) -> bool:
        hs = hom_space(self.middle, self.left)
        target = identity_map(self.left)
        return _solve_in_span([g @ self.incl for g in hs.basis], target) is not None


def _solve_in_span(maps: Sequence[ModuleMap], target: ModuleMap) -> np.ndarray | None:
    f = target.field
    if not maps:
        return f.zeros(0) if target.is_zero() else None
    a = np.stack([m.vector() for m in maps], axis=1) if target.vector().size else f.zeros(0, len(maps))
    b = target.vector().reshape(-1, 1)
    if a.shape[0] == 0:
        return f.zeros(len(maps))
    x = f.solve(a, b)
    return None if x is None else x.reshape(-1)


def solve_in_span(maps: Sequence[ModuleMap], target: ModuleMap) -> np.ndarray | None:
    """Coefficients expressing ``target`` as a combination of ``maps`` (or None)."""
    return _solve_in_span(maps, target)


def ses_from_mono(incl: ModuleMap) -> ShortExactSeq:
    c = cokernel(incl)
    return ShortExactSeq(incl, c.proj)


def ses_from_epi(proj: ModuleMap) -> ShortExactSeq:
    _, inc = kernel(proj)
    return ShortExactSeq(inc, proj)


# --- decomposition ---------------------------------------------------------------------

def _local_certificate(m: ModuleRep, basis: Sequence[ModuleMap]) -> bool:
    """True when End(M) = k*1 + J with J (the trace-zero part) a nilpotent ideal."""
    f = m.field
    n = m.total_dim
    if n == 0:
        return False
    if len(basis) == 1:
        return True
    if f.characteristic and n % f.characteristic == 0:
        raise DecompositionError(f"local-End certificate needs char {f.characteristic} not dividing dim M = {n}")
    inv_n = f.inv(f(n))

    def lam(phi: ModuleMap):
        tr = f.zero
        for a in phi.mats:
            for t in range(a.shape[0]):
                tr = f(tr + a[t, t])
        return f(tr * inv_n)

    one = identity_map(m)
    jbasis = []
    for b in basis:
        c = lam(b)
        jbasis.append(b - one.scaled(c) if c != 0 else b)
    jbasis = _independent(jbasis)
    for x in jbasis:
        for y in jbasis:
            if lam(x @ y) != 0:
                return False
    power = jbasis
    for _ in range(n + 1):
        if not power:
            return True
        nxt = _independent([x @ y for x in power for y in jbasis])
        if len(nxt) >= len(power):
            return False
        power = nxt
    return not power


def _independent(maps: Sequence[ModuleMap]) -> list[ModuleMap]:
    maps = [m for m in maps if not m.is_zero()]
    if not maps:
        return []
    f = maps[0].field
    a = np.stack([m.vector() for m in maps], axis=1)
    _, piv = f.rref(a)
    return [maps[p] for p in piv]


def end_is_local(m: ModuleRep) -> bool:
    return _local_certificate(m, hom_space(m, m).basis)


@dataclass(frozen=True, eq=False)
class Summand:
    module: ModuleRep
    inclusion: ModuleMap
    projection: ModuleMap


def _split_once(m: ModuleRep, rng: np.random.Generator, attempts: int) -> tuple[np.ndarray, np.ndarray] | None:
    f = m.field
    hs = hom_space(m, m)
    n = m.total_dim
    candidates = list(hs.basis)
    for t in range(attempts):
        if t < len(candidates):
            phi = candidates[t]
        else:
            phi = hs.element(f.random(rng, hs.dim))
        g = phi.global_matrix()
        for lam in f.roots(f.charpoly(g)):
            psi = phi - identity_map(m).scaled(lam)
            pn = psi.power(n)
            r = pn.ranks()
            if 0 < sum(r) < n:
                return pn
    return None


def split_indecomposables(m: ModuleRep, seed: int = 0, attempts: int = 64) -> list[Summand]:
    """Split ``M`` into indecomposables with inclusions/projections (``sum i_k p_k = 1``)."""
    rng = np.random.default_rng(seed)
    out: list[Summand] = []
    stack: list[Summand] = [Summand(m, identity_map(m), identity_map(m))]
    while stack:
        s = stack.pop()
        x = s.module
        if x.total_dim == 0:
            continue
        if end_is_local(x):
            out.append(s)
            continue
        pn = _split_once(x, rng, attempts)
        if pn is None:
            raise DecompositionError(f"could not split or certify {x!r} within {attempts} attempts")
        f = x.field
        kb = [f.kernel_basis(a) for a in pn.mats]
        ib = [f.column_basis(a) if a.size else f.zeros(a.shape[0], 0) for a in pn.mats]
        k_mod, k_inc = submodule(x, kb)
        i_mod, i_inc = submodule(x, ib)
        kp, ip = [], []
        for v in range(len(x.dims)):
            t = np.concatenate([kb[v], ib[v]], axis=1)
            tinv = f.inverse(t) if t.shape[0] else f.zeros(0, 0)
            kp.append(tinv[:kb[v].shape[1], :].copy())
            ip.append(tinv[kb[v].shape[1]:, :].copy())
        k_proj = ModuleMap(x, k_mod, tuple(kp))
        i_proj = ModuleMap(x, i_mod, tuple(ip))
        # Push the larger piece first so output order is stable and small pieces come last.
        stack.append(Summand(i_mod, s.inclusion @ i_inc, i_proj @ s.projection))
        stack.append(Summand(k_mod, s.inclusion @ k_inc, k_proj @ s.projection))
    out.sort(key=lambda s: (s.module.total_dim, s.module.dims))
    return out


def iso_between_indecomposables(m: ModuleRep, n: ModuleRep) -> ModuleMap | None:
    """For ``M`` with local End: an isomorphism ``M -> N`` drawn from the Hom basis, or None."""
    if m.dims != n.dims:
        return None
    for b in hom_space(m, n).basis:
        if b.is_iso():
            return b
    return None


def is_isomorphic(m: ModuleRep, n: ModuleRep, seed: int = 0, attempts: int = 32) -> bool:
    _same_algebra(m.algebra, n.algebra)
    if m.dims != n.dims:
        return False
    if m.total_dim == 0:
        return True
    hmn, hnm = hom_space(m, n), hom_space(n, m)
    if hmn.dim != hnm.dim or hmn.dim != hom_space(m, m).dim or hom_space(n, n).dim != hmn.dim:
        return False
    for b in hmn.basis:
        if b.is_iso():
            return True
    rng = np.random.default_rng(seed)
    f = m.field
    for _ in range(attempts):
        if hmn.element(f.random(rng, hmn.dim)).is_iso():
            return True
    # Certified answer through Krull-Schmidt.
    dm = decompose(m, seed=seed)
    dn = decompose(n, seed=seed)
    if len(dm) != len(dn):
        return False
    used = [False] * len(dn)
    for x, mult in dm:
        hit = False
        for k, (y, mult2) in enumerate(dn):
            if not used[k] and mult == mult2 and iso_between_indecomposables(x, y) is not None:
                used[k] = hit = True
                break
        if not hit:
            return False
    return True


def decompose(m: ModuleRep, seed: int = 0) -> list[tuple[ModuleRep, int]]:
    """Indecomposable summands up to isomorphism, with multiplicities."""
    groups: list[list] = []
    for s in split_indecomposables(m, seed=seed):
        for g in groups:
            if iso_between_indecomposables(g[0], s.module) is not None:
                g[1] += 1
                break
        else:
            groups.append([s.module, 1])
    return [(g[0], g[1]) for g in groups]


def is_indecomposable(m: ModuleRep) -> bool:
    return m.total_dim > 0 and end_is_local(m)


def find_iso_class(x: ModuleRep, reps: Sequence[ModuleRep]) -> int | None:
    """Index of the indecomposable in ``reps`` isomorphic to the indecomposable ``x``."""
    for k, r in enumerate(reps):
        if r.algebra is x.algebra and iso_between_indecomposables(r, x) is not None:
            return k
    return None


def is_projective(m: ModuleRep) -> bool:
    ds, _ = projective_cover(m)
    return ds.module.total_dim == m.total_dim


def is_injective(m: ModuleRep) -> bool:
    inj, _ = injective_envelope(m)
    return inj.module.total_dim == m.total_dim


def modules_in_add(x: ModuleRep, gens: Iterable[ModuleRep], seed: int = 0) -> bool:
    """Whether every indecomposable summand of ``x`` is isomorphic to a summand of some generator."""
    pieces = []
    for g in gens:
        pieces.extend(s for s, _ in decompose(g, seed=seed))
    for s, _ in decompose(x, seed=seed):
        if find_iso_class(s, pieces) is None:
            return False
    return True
