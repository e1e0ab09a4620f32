"""Self-orthogonality, cotilting and Wakamatsu-tilting checks, Ext-perpendicular categories.

Verdicts that depend on a search bound are tri-state: ``"pass"``, ``"fail"`` or
``"undetermined"``. An undetermined verdict is never reported as a failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .homological import (
    HatWitness, Ext1Space, ext_dim, hat_membership, indecomposable_gens, injective_dimension,
    minimal_left_approximation,
)
from .modrep import (
    ModuleRep, cokernel, dual_regular_module, find_iso_class, is_isomorphic, projective_module,
)
from .relexact import enumerate_subrepresentations, is_cogenerated_by
from .modrep import decompose, submodule

PASS, FAIL, UNDETERMINED = "pass", "fail", "undetermined"


def _generators(u) -> list[ModuleRep]:
    return indecomposable_gens(u if isinstance(u, (list, tuple)) else [u])


def module_injective_dimension(u, bound: int = 8) -> int | None:
    """Max injective dimension over the summands of ``u`` (``None`` if some exceeds ``bound``)."""
    best = 0
    for g in _generators(u):
        d = injective_dimension(g, bound)
        if d is None:
            return None
        best = max(best, d)
    return best


@dataclass
class SelfOrthogonality:
    table: dict[int, int]
    ok: bool


def is_self_orthogonal(u, bound: int) -> SelfOrthogonality:
    gens = _generators(u)
    table = {i: sum(ext_dim(a, b, i) for a in gens for b in gens) for i in range(1, bound + 1)}
    return SelfOrthogonality(table, all(v == 0 for v in table.values()))


@dataclass
class CotiltingReport:
    module: ModuleRep | list
    injective_dimension: int | None
    bound: int
    self_orthogonality: SelfOrthogonality
    hat_witness: HatWitness
    n: int | None

    @property
    def verdict(self) -> str:
        if self.injective_dimension is None:
            return UNDETERMINED
        if not self.self_orthogonality.ok:
            return FAIL
        if self.n is not None and self.injective_dimension > self.n:
            return FAIL
        if not self.hat_witness.ok:
            return FAIL if self.hat_witness.reason.startswith("approximation") else UNDETERMINED
        return PASS

    @property
    def cotilting_degree(self) -> int | None:
        return self.injective_dimension if self.verdict == PASS else None

    def lines(self) -> list[str]:
        table = " ".join(f"Ext^{i}={d}" for i, d in self.self_orthogonality.table.items())
        chain = (f"length {self.hat_witness.length}" if self.hat_witness.ok
                 else f"none ({self.hat_witness.reason})")
        idim = "exceeds bound" if self.injective_dimension is None else str(self.injective_dimension)
        return [f"injective dimension: {idim}",
                f"self-orthogonality: {table} -> {'ok' if self.self_orthogonality.ok else 'fails'}",
                f"D(A) resolution by add U: {chain}",
                f"verdict: {self.verdict}" + (f" ({self.cotilting_degree}-cotilting)" if self.verdict == PASS else "")]


def is_cotilting(u, n: int | None = None, bound: int = 8) -> CotiltingReport:
    """Check the three cotilting conditions; ``n`` caps the allowed injective dimension."""
    gens = _generators(u)
    alg = gens[0].algebra
    idim = module_injective_dimension(gens, bound)
    so_bound = (idim if idim is not None else bound) + 2
    so = is_self_orthogonal(gens, so_bound)
    depth = idim if idim is not None else bound
    if n is not None:
        depth = min(depth, n)
    dl = dual_regular_module(alg).module
    wit = hat_membership(dl, gens, depth=depth)
    if wit.ok and not wit.is_exact():
        raise RuntimeError("hat witness failed to re-certify")
    return CotiltingReport(u, idim, bound, so, wit, n)


# --- perpendicular categories --------------------------------------------------------------

@dataclass
class PerpMembership:
    module: ModuleRep
    u: object
    ext_dims: dict[int, int]

    @property
    def verdict(self) -> bool:
        return all(v == 0 for v in self.ext_dims.values())


def perp_membership(x: ModuleRep, u, id_u: int | None = None) -> PerpMembership:
    """``Ext^i(x, U) = 0`` for ``1 <= i <= id U``."""
    gens = _generators(u)
    if id_u is None:
        id_u = module_injective_dimension(gens)
        if id_u is None:
            raise ValueError("injective dimension of U not finite within bound")
    dims = {i: sum(ext_dim(x, g, i) for g in gens) for i in range(1, id_u + 1)}
    return PerpMembership(x, u, dims)


def perp_fixture_list(fixtures: Sequence[ModuleRep], u, id_u: int | None = None) -> list[int]:
    gens = _generators(u)
    if id_u is None:
        id_u = module_injective_dimension(gens)
    return [k for k, x in enumerate(fixtures) if perp_membership(x, gens, id_u).verdict]


# --- X_W membership ------------------------------------------------------------------------

@dataclass
class XWResult:
    module: ModuleRep
    verdict: str
    cosyzygies: list[ModuleRep]
    terms: list[ModuleRep]
    reason: str = ""
    period_start: int | None = None


def _in_perp(x: ModuleRep, gens: Sequence[ModuleRep], ext_bound: int) -> bool:
    return all(ext_dim(x, g, i) == 0 for g in gens for i in range(1, ext_bound + 1))


def xw_membership(x: ModuleRep, w_gens: Sequence[ModuleRep], depth: int = 8,
                  ext_bound: int | None = None) -> XWResult:
    """Greedy minimal left add(W)-coresolution with cosyzygies tested in the perpendicular category.

    The search stops with ``pass`` when a cosyzygy vanishes or repeats an earlier one up to
    isomorphism, with ``fail`` when an approximation is not injective or a cosyzygy leaves the
    perpendicular category, and with ``undetermined`` once ``depth`` steps are exhausted.
    """
    gens = indecomposable_gens(w_gens)
    if ext_bound is None:
        idw = module_injective_dimension(gens)
        ext_bound = idw if idw is not None else depth
    seen: list[ModuleRep] = []
    terms: list[ModuleRep] = []
    cur = x
    for step in range(depth + 1):
        if not _in_perp(cur, gens, ext_bound):
            return XWResult(x, FAIL, seen + [cur], terms, f"cosyzygy {step} not Ext-orthogonal to W")
        if cur.total_dim == 0:
            return XWResult(x, PASS, seen + [cur], terms)
        for k, old in enumerate(seen):
            if old.dims == cur.dims and is_isomorphic(old, cur):
                return XWResult(x, PASS, seen, terms, period_start=k)
        seen.append(cur)
        if step == depth:
            break
        ap = minimal_left_approximation(cur, gens)
        if not ap.map.is_injective():
            return XWResult(x, FAIL, seen, terms, f"approximation at step {step} not injective")
        terms.append(ap.sum.module)
        cur = cokernel(ap.map).module
    return XWResult(x, UNDETERMINED, seen, terms, f"depth {depth} exhausted without periodicity")


def gorenstein_projective(x: ModuleRep, depth: int = 8) -> XWResult:
    alg = x.algebra
    return xw_membership(x, [projective_module(alg, i) for i in range(alg.num_vertices)], depth)


@dataclass
class WakamatsuReport:
    self_orthogonality: SelfOrthogonality
    projectives: list[XWResult]

    @property
    def verdict(self) -> str:
        if not self.self_orthogonality.ok:
            return FAIL
        vs = {r.verdict for r in self.projectives}
        if FAIL in vs:
            return FAIL
        return UNDETERMINED if UNDETERMINED in vs else PASS


def is_wakamatsu_tilting(w_gens: Sequence[ModuleRep], depth: int = 8) -> WakamatsuReport:
    gens = indecomposable_gens(w_gens)
    alg = gens[0].algebra
    idw = module_injective_dimension(gens)
    bound = (idw if idw is not None else depth) + 2
    so = is_self_orthogonal(gens, bound)
    if not so.ok:
        return WakamatsuReport(so, [])
    projs = [xw_membership(projective_module(alg, i), gens, depth, ext_bound=bound)
             for i in range(alg.num_vertices)]
    return WakamatsuReport(so, projs)


# --- torsionfree classes -----------------------------------------------------------------------

@dataclass
class TorsionfreeReport:
    extension_failures: list[str] = dc_field(default_factory=list)
    submodule_failures: list[str] = dc_field(default_factory=list)
    sequences_checked: int = 0
    method: str = "cogeneration"

    @property
    def ok(self) -> bool:
        return not self.extension_failures and not self.submodule_failures


def torsionfree_class_check(members: Sequence[ModuleRep], fixtures: Sequence[ModuleRep],
                            budget: int = 20000) -> TorsionfreeReport:
    """Closure of ``add(members)`` under extensions and submodules.

    Extensions are tested on every basis class of ``Ext^1(B, A)`` for members A, B.
    Submodule closure is decided against the complete fixture list: a class closed
    under submodules contains every indecomposable cogenerated by its members. Over
    a small prime field the subrepresentations of each member are also enumerated
    when their number stays within ``budget``.
    """
    rep = TorsionfreeReport()
    for a in members:
        for b in members:
            e = Ext1Space(b, a)
            for s in e.basis_sequences():
                rep.sequences_checked += 1
                for piece, _ in decompose(s.middle):
                    if find_iso_class(piece, members) is None:
                        rep.extension_failures.append(f"{a.name} -> ? -> {b.name}: summand outside")
                        break
    for k, x in enumerate(fixtures):
        if find_iso_class(x, members) is None and is_cogenerated_by(x, members):
            rep.submodule_failures.append(x.name or f"fixture {k}")
    f = members[0].field if members else None
    if f is not None and f.characteristic and f.characteristic <= 3:
        rep.method = "cogeneration+enumeration"
        for m in members:
            try:
                subs = enumerate_subrepresentations(m, budget)
            except RuntimeError:
                rep.method = "cogeneration"
                continue
            for bases in subs:
                sub, _ = submodule(m, bases)
                if sub.total_dim and not all(find_iso_class(p, members) is not None
                                             for p, _ in decompose(sub)):
                    rep.submodule_failures.append(f"submodule of {m.name}")
                    break
    return rep
