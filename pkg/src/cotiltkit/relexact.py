"""Relative exact structures, ideal quotients and the 0-kernel factorization.

A subcategory is always ``add`` of a finite list of generator modules. The
quotient ``mod A / [C]`` is never built as an object; it is probed through
:class:`QuotientHom` spaces. Verdicts that quantify over "all objects" take an
explicit list of test objects; for representation-finite fixtures that list is
the complete set of indecomposables.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

from .homological import (
    Ext1Space, indecomposable_gens, in_add, is_hom_exact_from, is_hom_exact_into,
    lift_through_epi, minimal_left_approximation, minimal_right_approximation,
    pullback, pullback_square, pushout, pushout_square, tau_minus, tau,
)
from .modrep import (
    ModuleMap, ModuleRep, ShortExactSeq, direct_sum, factor_through_mono, find_iso_class,
    hom_space, image, injective_module, kernel, map_from_blocks, projective_module,
    ses_from_epi, ses_from_mono,
)


class CertificationError(RuntimeError):
    pass


class HypothesisError(ValueError):
    """A formula was requested outside the setting where it applies."""


# --- subcategories --------------------------------------------------------------------

@dataclass(eq=False)
class SubcatSpec:
    generators: list[ModuleRep]
    quotient_closed: bool | None = None
    submodule_closed: bool | None = None
    name: str = "C"
    _indecs: list[ModuleRep] | None = dc_field(default=None, repr=False)

    def __post_init__(self):
        algs = {id(g.algebra) for g in self.generators}
        if len(algs) > 1:
            raise ValueError("generators live over different algebras")

    @property
    def indecomposables(self) -> list[ModuleRep]:
        if self._indecs is None:
            self._indecs = indecomposable_gens(self.generators) if self.generators else []
        return self._indecs

    def contains(self, x: ModuleRep) -> bool:
        return in_add(x, self.indecomposables)

    @property
    def is_empty(self) -> bool:
        return not self.indecomposables


class ExactKind(enum.Enum):
    FULL = "full"
    FROM_C = "from"
    TO_C = "to"
    BOTH_C = "both"

    @classmethod
    def parse(cls, s: str) -> "ExactKind":
        key = s.strip().lower().replace("_", "").replace("-", "")
        table = {"full": cls.FULL, "all": cls.FULL, "fromc": cls.FROM_C, "from": cls.FROM_C,
                 "c": cls.FROM_C, "toc": cls.TO_C, "to": cls.TO_C, "bothc": cls.BOTH_C, "both": cls.BOTH_C}
        if key not in table:
            raise ValueError(f"unknown exact structure {s!r}")
        return table[key]


@dataclass(eq=False)
class ExactStructureSpec:
    kind: ExactKind
    subcat: SubcatSpec | None = None

    def __post_init__(self):
        if self.kind is not ExactKind.FULL and self.subcat is None:
            raise ValueError("relative structures need a subcategory")


# --- conflations ----------------------------------------------------------------------------

def is_from_c(ses: ShortExactSeq, gens: Sequence[ModuleRep]) -> bool:
    return all(is_hom_exact_from(ses, c) for c in gens)


def is_to_c(ses: ShortExactSeq, gens: Sequence[ModuleRep]) -> bool:
    return all(is_hom_exact_into(ses, c) for c in gens)


def is_conflation(ses: ShortExactSeq, spec: ExactStructureSpec) -> bool:
    if not ses.is_valid():
        return False
    if spec.kind is ExactKind.FULL:
        return True
    gens = spec.subcat.indecomposables
    if spec.kind is ExactKind.FROM_C:
        return is_from_c(ses, gens)
    if spec.kind is ExactKind.TO_C:
        return is_to_c(ses, gens)
    return is_from_c(ses, gens) and is_to_c(ses, gens)


# --- relative Ext^1 ----------------------------------------------------------------------------

def _syzygy_map(c: ModuleMap, ec: Ext1Space, ex: Ext1Space) -> ModuleMap:
    """``Omega(c): Omega C -> Omega X`` induced by lifting ``c: C -> X`` to projective covers."""
    h = lift_through_epi(c @ ec.cover, ex.cover)
    if h is None:
        raise CertificationError("projective cover failed to lift")
    om = factor_through_mono(h @ ec.omega_inc, ex.omega_inc)
    if om is None:
        raise CertificationError("lifted map does not preserve syzygies")
    return om


def relative_ext1_constraints(x: ModuleRep, l: ModuleRep, spec: ExactStructureSpec) -> tuple[Ext1Space, np.ndarray]:
    """``Ext^1(X, L)`` and a matrix whose kernel is the subspace of relative conflations."""
    e = Ext1Space(x, l)
    f = x.field
    rows = []
    if e.dim and spec.kind is not ExactKind.FULL:
        gens = spec.subcat.indecomposables
        basis = [e.cocycle([f.one if s == t else f.zero for s in range(e.dim)]) for t in range(e.dim)]
        if spec.kind in (ExactKind.FROM_C, ExactKind.BOTH_C):
            for c in gens:
                hs = hom_space(c, x)
                if hs.dim == 0:
                    continue
                ec = Ext1Space(c, l)
                if ec.dim == 0:
                    continue
                for cm in hs.basis:
                    om = _syzygy_map(cm, ec, e)
                    rows.append(np.stack([ec.class_of_cocycle(phi @ om) for phi in basis], axis=1))
        if spec.kind in (ExactKind.TO_C, ExactKind.BOTH_C):
            for c in gens:
                hs = hom_space(l, c)
                if hs.dim == 0:
                    continue
                ed = Ext1Space(x, c)
                if ed.dim == 0:
                    continue
                for dm in hs.basis:
                    rows.append(np.stack([ed.class_of_cocycle(dm @ phi) for phi in basis], axis=1))
    mat = np.concatenate(rows, axis=0) if rows else f.zeros(0, e.dim)
    return e, mat


def relative_ext1_dim(x: ModuleRep, l: ModuleRep, spec: ExactStructureSpec) -> int:
    e, mat = relative_ext1_constraints(x, l, spec)
    if e.dim == 0:
        return 0
    return e.dim - (x.field.rank(mat) if mat.shape[0] else 0)


def relative_conflations(x: ModuleRep, l: ModuleRep, spec: ExactStructureSpec) -> list[ShortExactSeq]:
    """Sequences ``L -> E -> X`` spanning the relative part of ``Ext^1(X, L)``."""
    e, mat = relative_ext1_constraints(x, l, spec)
    if e.dim == 0:
        return []
    f = x.field
    kb = f.kernel_basis(mat) if mat.shape[0] else f.eye(e.dim)
    return [e.to_ses(e.cocycle(kb[:, t])) for t in range(kb.shape[1])]


def relative_projectives(fixtures: Sequence[ModuleRep], spec: ExactStructureSpec) -> list[int]:
    """Indices of fixtures X with ``Ext^1_F(X, L) = 0`` for every fixture L."""
    return [k for k, x in enumerate(fixtures)
            if all(relative_ext1_dim(x, l, spec) == 0 for l in fixtures)]


def relative_injectives(fixtures: Sequence[ModuleRep], spec: ExactStructureSpec) -> list[int]:
    return [k for k, x in enumerate(fixtures)
            if all(relative_ext1_dim(l, x, spec) == 0 for l in fixtures)]


def relative_projectives_expected(spec: ExactStructureSpec, algebra=None) -> list[ModuleRep]:
    """Indecomposables of the expected relative projectives (add{A, C, tau^- C} or add C)."""
    if spec.kind is ExactKind.FULL:
        raise HypothesisError("use the algebra's projectives for the full structure")
    sub = spec.subcat
    alg = algebra if algebra is not None else sub.generators[0].algebra
    projs = [projective_module(alg, i) for i in range(alg.num_vertices)]
    if spec.kind is ExactKind.BOTH_C:
        if sub.submodule_closed is not True:
            raise HypothesisError("formula needs a submodule-closed subcategory")
        cand = projs + list(sub.indecomposables) + [tau_minus(c) for c in sub.indecomposables]
    elif spec.kind is ExactKind.FROM_C:
        if not all(find_iso_class(p, sub.indecomposables) is not None for p in projs):
            raise HypothesisError("formula needs a generating subcategory")
        cand = list(sub.indecomposables)
    else:
        raise HypothesisError("no closed formula for the (-,C) structure")
    return indecomposable_gens([c for c in cand if c.total_dim])


def relative_injectives_expected(spec: ExactStructureSpec, algebra=None) -> list[ModuleRep]:
    if spec.kind is not ExactKind.BOTH_C or spec.subcat.submodule_closed is not True:
        raise HypothesisError("formula needs the C-structure with C submodule-closed")
    sub = spec.subcat
    alg = algebra if algebra is not None else sub.generators[0].algebra
    injs = [injective_module(alg, i) for i in range(alg.num_vertices)]
    cand = injs + list(sub.indecomposables) + [tau(c) for c in sub.indecomposables]
    return indecomposable_gens([c for c in cand if c.total_dim])


def is_relative_projective(x: ModuleRep, spec: ExactStructureSpec,
                           test_sequences: Iterable[ShortExactSeq]) -> bool:
    """Lifting test: ``Hom(X, -)`` is exact on every supplied conflation."""
    return all(is_hom_exact_from(s, x) for s in test_sequences if is_conflation(s, spec))


def is_relative_injective(x: ModuleRep, spec: ExactStructureSpec,
                          test_sequences: Iterable[ShortExactSeq]) -> bool:
    return all(is_hom_exact_into(s, x) for s in test_sequences if is_conflation(s, spec))


# --- approximations -------------------------------------------------------------------------

def right_approx(x: ModuleRep, spec: SubcatSpec) -> ModuleMap:
    """Right add(C)-approximation; an injection ``C_X -> X`` when C is quotient-closed."""
    ap = minimal_right_approximation(x, spec.indecomposables)
    if spec.quotient_closed:
        return image(ap.map).mono
    return ap.map


def left_approx(x: ModuleRep, spec: SubcatSpec) -> ModuleMap:
    """Left add(C)-approximation; a surjection ``X -> C^X`` when C is submodule-closed."""
    ap = minimal_left_approximation(x, spec.indecomposables)
    if spec.submodule_closed:
        return image(ap.map).epi
    return ap.map


# --- quotient Hom spaces -------------------------------------------------------------------------

class QuotientHom:
    """``Hom(X, Y) / [C](X, Y)`` with coset representatives drawn from the Hom basis."""

    def __init__(self, x: ModuleRep, y: ModuleRep, spec: SubcatSpec | None):
        self.source, self.target = x, y
        self.hom = hom_space(x, y)
        f = x.field
        d = self.hom.dim
        cols = []
        if spec is not None and not spec.is_empty and d:
            ap = minimal_left_approximation(x, spec.indecomposables)
            if ap.sum.module.total_dim:
                for g in hom_space(ap.sum.module, y).basis:
                    cols.append(self.hom.coords(g @ ap.map))
        self.ideal = f.column_basis(np.stack(cols, axis=1)) if cols else f.zeros(d, 0)
        self.coset_matrix = f.extend_to_basis(self.ideal) if d else f.zeros(0, 0)
        full = np.concatenate([self.coset_matrix, self.ideal], axis=1)
        self._inv = f.inverse(full) if d else f.zeros(0, 0)

    @property
    def dim(self) -> int:
        return self.coset_matrix.shape[1]

    @property
    def ideal_dim(self) -> int:
        return self.ideal.shape[1]

    @property
    def coset_basis(self) -> list[ModuleMap]:
        return [self.hom.element(self.coset_matrix[:, t]) for t in range(self.dim)]

    @property
    def ideal_basis(self) -> list[ModuleMap]:
        return [self.hom.element(self.ideal[:, t]) for t in range(self.ideal_dim)]

    def reduce(self, fm: ModuleMap) -> np.ndarray:
        """Coset coordinates of ``fm``."""
        f = fm.field
        if self.hom.dim == 0:
            return f.zeros(0)
        c = self.hom.coords(fm).reshape(-1, 1)
        return f.matmul(self._inv, c).reshape(-1)[:self.dim]

    def in_ideal(self, fm: ModuleMap) -> bool:
        return fm.field.is_zero(self.reduce(fm))

    def representative(self, coeffs) -> ModuleMap:
        f = self.source.field
        vec = f.matmul(self.coset_matrix, f.vector(coeffs).reshape(-1, 1)).reshape(-1)
        return self.hom.element(vec)


def quotient_hom(x: ModuleRep, y: ModuleRep, spec: SubcatSpec | None) -> QuotientHom:
    key = ("qhom", id(y), id(spec))
    ent = x._cache.get(key)
    if ent is None or ent[0] is not y or ent[1] is not spec:
        ent = (y, spec, QuotientHom(x, y, spec))
        x._cache[key] = ent
    return ent[2]


def quotient_is_mono(fm: ModuleMap, spec: SubcatSpec, test_objects: Sequence[ModuleRep]) -> bool:
    """``pi(f)`` is monic against the declared test objects."""
    f = fm.field
    for z in test_objects:
        q_zx = quotient_hom(z, fm.source, spec)
        q_zy = quotient_hom(z, fm.target, spec)
        if q_zx.dim == 0:
            continue
        if q_zy.dim == 0:
            return False
        reps = q_zx.coset_basis
        img = np.stack([q_zy.reduce(fm @ r) for r in reps], axis=1)
        if f.rank(img) != q_zx.dim:
            return False
    return True


def quotient_is_epi(fm: ModuleMap, spec: SubcatSpec, test_objects: Sequence[ModuleRep]) -> bool:
    f = fm.field
    for z in test_objects:
        q_yz = quotient_hom(fm.target, z, spec)
        q_xz = quotient_hom(fm.source, z, spec)
        if q_yz.dim == 0:
            continue
        if q_xz.dim == 0:
            return False
        img = np.stack([q_xz.reduce(r @ fm) for r in q_yz.coset_basis], axis=1)
        if f.rank(img) != q_yz.dim:
            return False
    return True


# --- 0-kernel factorization ------------------------------------------------------------------

@dataclass(eq=False)
class Factorization:
    morphism: ModuleMap
    conflation: ShortExactSeq | None
    deflation: ModuleMap | None       # X -> F, the component of the quotient deflation
    mono: ModuleMap | None            # F -> Y
    checks: dict[str, bool]
    error: str = ""

    @property
    def ok(self) -> bool:
        return not self.error and all(self.checks.values())


def zero_kernel_factorization(fm: ModuleMap, spec: SubcatSpec,
                              test_objects: Sequence[ModuleRep]) -> Factorization:
    """Factor ``pi(f)`` as a C-deflation followed by a monomorphism in the quotient."""
    x, y = fm.source, fm.target
    checks: dict[str, bool] = {}
    gens = spec.indecomposables
    try:
        im = image(fm)
        surj = im.epi
        ycur = im.module
        k_mod, k_inc = kernel(surj)
        base = ShortExactSeq(k_inc, surj)                       # K -> X -> Im f
        cy = minimal_right_approximation(ycur, gens).map        # C_Y -> Im f
        pb, e_to_x = pullback_square(base, cy)                  # K -> E -> C_Y
        e_mod = pb.middle
        ds = direct_sum([x, cy.source])
        # 0 -> E -> X + C_Y -> Im f -> 0
        e_in = map_from_blocks(e_mod, ds, [[e_to_x], [pb.proj.scaled(-1)]])
        out = map_from_blocks(ds, ycur, [[surj, cy]])
        seq1 = ShortExactSeq(e_in, out)
        checks["pullback_sequence_exact"] = seq1.is_valid()
        checks["pullback_sequence_from_c"] = is_from_c(seq1, gens)
        la = minimal_left_approximation(e_mod, gens).map
        lsurj = image(la).epi if spec.submodule_closed else la  # E -> C^E
        checks["left_approx_surjective"] = lsurj.is_surjective()
        po, a = pushout_square(seq1, lsurj)                     # C^E -> F -> Im f, a: X + C_Y -> F
        f_mod = po.middle
        ds2 = direct_sum([lsurj.target, x, cy.source])
        # 0 -> E -> C^E + X + C_Y -> F -> 0
        inc2 = map_from_blocks(e_mod, ds2, [[lsurj], [e_to_x.scaled(-1)], [pb.proj]])
        proj2 = map_from_blocks(ds2, f_mod, [[po.incl, a @ ds.inclusions[0], a @ ds.inclusions[1]]])
        conf = ShortExactSeq(inc2, proj2)
        checks["conflation_exact"] = conf.is_valid()
        checks["conflation_both_c"] = is_from_c(conf, gens) and is_to_c(conf, gens)
        g = a @ ds.inclusions[0]                                # X -> F
        mono = im.mono @ po.proj                                # F -> Y
        defect = fm - mono @ g
        checks["composes_to_f"] = quotient_hom(x, y, spec).in_ideal(defect)
        checks["mono_part_monic"] = quotient_is_mono(mono, spec, test_objects)
        return Factorization(fm, conf, g, mono, checks)
    except Exception as exc:  # certification failures are reported, not raised
        return Factorization(fm, None, None, None, checks, error=f"{type(exc).__name__}: {exc}")


@dataclass
class KernelReport:
    n: int
    total: int
    failures: list[tuple[str, str]]
    relative_to: str = "declared fixture set"

    @property
    def ok(self) -> bool:
        return not self.failures


def n_kernels_check(morphisms: Sequence[tuple[str, ModuleMap]], spec: ExactStructureSpec, n: int,
                    test_objects: Sequence[ModuleRep]) -> KernelReport:
    """Check the n-kernel property on named morphisms (``n = -1, 0`` in the quotient; ``n >= 1`` in mod A)."""
    if n < -1:
        raise ValueError("n must be >= -1")
    failures: list[tuple[str, str]] = []
    sub = spec.subcat if spec.subcat is not None else SubcatSpec([], True, True, name="0")
    for name, fm in morphisms:
        if n <= 0:
            fac = zero_kernel_factorization(fm, sub, test_objects)
            if not fac.ok:
                bad = fac.error or ", ".join(k for k, v in fac.checks.items() if not v)
                failures.append((name, bad))
                continue
            if n == -1:
                mono = fac.mono
                if not mono.is_injective():
                    failures.append((name, "mono part is not an inflation"))
                    continue
                seq = ses_from_mono(mono)
                if sub.indecomposables and not (is_from_c(seq, sub.indecomposables) and is_to_c(seq, sub.indecomposables)):
                    failures.append((name, "mono part is not a C-inflation"))
        else:
            k_mod, k_inc = kernel(fm)
            ok = True
            for z in test_objects:
                hz_k, hz_x, hz_y = hom_space(z, k_mod), hom_space(z, fm.source), hom_space(z, fm.target)
                f = fm.field
                if hz_x.dim == 0:
                    continue
                post = np.stack([hz_y.coords(fm @ b) for b in hz_x.basis], axis=1) if hz_y.dim else f.zeros(0, hz_x.dim)
                ker_dim = hz_x.dim - (f.rank(post) if post.shape[0] else 0)
                inc_rank = f.rank(np.stack([hz_x.coords(k_inc @ b) for b in hz_k.basis], axis=1)) if hz_k.dim else 0
                if not (inc_rank == hz_k.dim == ker_dim):
                    ok = False
                    break
            if not ok:
                failures.append((name, "Hom sequence not exact at a test object"))
    return KernelReport(n, len(morphisms), failures)


# --- closure properties ----------------------------------------------------------------------------

def is_cogenerated_by(x: ModuleRep, gens: Sequence[ModuleRep]) -> bool:
    """``X`` embeds in a finite sum of copies of the generators."""
    f = x.field
    if x.total_dim == 0:
        return True
    for v in range(len(x.dims)):
        if not x.dims[v]:
            continue
        rows = []
        for g in gens:
            for b in hom_space(x, g).basis:
                if b.mats[v].shape[0]:
                    rows.append(b.mats[v])
        if not rows:
            return False
        if f.rank(np.concatenate(rows, axis=0)) != x.dims[v]:
            return False
    return True


def is_generated_by(x: ModuleRep, gens: Sequence[ModuleRep]) -> bool:
    """``X`` is a quotient of a finite sum of copies of the generators."""
    f = x.field
    if x.total_dim == 0:
        return True
    for v in range(len(x.dims)):
        if not x.dims[v]:
            continue
        cols = []
        for g in gens:
            for b in hom_space(g, x).basis:
                if b.mats[v].shape[1]:
                    cols.append(b.mats[v])
        if not cols:
            return False
        if f.rank(np.concatenate(cols, axis=1)) != x.dims[v]:
            return False
    return True


def sub_closure(m: Sequence[ModuleRep], fixtures: Sequence[ModuleRep]) -> list[int]:
    """Indices of the fixture indecomposables in ``Sub M``."""
    return [k for k, x in enumerate(fixtures) if is_cogenerated_by(x, m)]


@dataclass
class ClosureReport:
    submodule_closed: bool
    quotient_closed: bool
    image_closed: bool
    witnesses: dict[str, list[str]]


def closure_check(spec: SubcatSpec, fixtures: Sequence[ModuleRep]) -> ClosureReport:
    """Closure tags of add(C), exact relative to a complete list of indecomposables."""
    gens = spec.indecomposables
    subs, quots, ims = [], [], []
    for x in fixtures:
        if spec.contains(x):
            continue
        cog = is_cogenerated_by(x, gens)
        gen = is_generated_by(x, gens)
        if cog:
            subs.append(x.name)
        if gen:
            quots.append(x.name)
        if cog and gen:
            ims.append(x.name)
    rep = ClosureReport(not subs, not quots, not ims,
                        {"submodules_outside": subs, "quotients_outside": quots, "images_outside": ims})
    for tag, val in (("submodule_closed", rep.submodule_closed), ("quotient_closed", rep.quotient_closed)):
        asserted = getattr(spec, tag)
        if asserted is not None and asserted != val:
            raise CertificationError(f"asserted {tag}={asserted} but check gives {val}")
    return rep


def enumerate_subrepresentations(m: ModuleRep, budget: int = 200000) -> list[tuple[np.ndarray, ...]]:
    """All subrepresentations of ``m`` over a small prime field, as per-vertex column bases."""
    f = m.field
    p = f.characteristic
    if p == 0:
        raise ValueError("enumeration needs a finite field")
    per_vertex = [list(_subspaces(d, p, f)) for d in m.dims]
    total = 1
    for s in per_vertex:
        total *= len(s)
    if total > budget:
        raise RuntimeError(f"enumeration budget exceeded ({total} > {budget})")
    q = m.algebra.quiver
    out = []
    for combo in itertools.product(*per_vertex):
        ok = True
        for k, a in enumerate(q.arrows):
            img = f.matmul(m.maps[k], combo[a.source])
            tgt = combo[a.target]
            if img.size and f.rank(np.concatenate([tgt, img], axis=1)) != tgt.shape[1]:
                ok = False
                break
        if ok:
            out.append(combo)
    return out


def _subspaces(n: int, p: int, f) -> Iterable[np.ndarray]:
    """All subspaces of F_p^n as column bases (via reduced echelon forms)."""
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivots]
            for vals in itertools.product(range(p), repeat=len(free)):
                m = f.zeros(k, n)
                for r, pc in enumerate(pivots):
                    m[r, pc] = f.one
                for (r, c), v in zip(free, vals):
                    m[r, c] = f(v)
                yield m.T.copy()


# --- exact-structure axiom sweep ----------------------------------------------------------------

@dataclass
class AxiomReport:
    checked: dict[str, int]
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def axiom_sweep(conflations: Sequence[ShortExactSeq], maps_into: dict[int, list[ModuleMap]],
                maps_from: dict[int, list[ModuleMap]], spec: ExactStructureSpec,
                compose_with: Sequence[ShortExactSeq] = ()) -> AxiomReport:
    """Re-certify pullbacks, pushouts and composites of certified relative conflations.

    ``maps_into[k]`` lists maps with target the right end of ``conflations[k]``;
    ``maps_from[k]`` maps out of its left end. ``compose_with`` holds further
    conflations whose right end is the middle term of one in ``conflations``.
    """
    checked = {"pullback": 0, "pushout": 0, "composite": 0, "both_is_meet": 0}
    failures = []
    gens = spec.subcat.indecomposables
    for k, s in enumerate(conflations):
        fc, tc = is_from_c(s, gens), is_to_c(s, gens)
        both = is_conflation(s, ExactStructureSpec(ExactKind.BOTH_C, spec.subcat))
        checked["both_is_meet"] += 1
        if both != (fc and tc):
            failures.append(f"sequence {k}: C verdict differs from the meet")
        for g in maps_into.get(k, []):
            pb = pullback(s, g)
            checked["pullback"] += 1
            if not pb.is_valid():
                failures.append(f"sequence {k}: pullback not exact")
            if fc and not is_from_c(pb, gens):
                failures.append(f"sequence {k}: pullback of a (C,-)-conflation lost the property")
            if tc and not is_to_c(pb, gens):
                failures.append(f"sequence {k}: pullback of a (-,C)-conflation lost the property")
        for h in maps_from.get(k, []):
            po = pushout(s, h)
            checked["pushout"] += 1
            if not po.is_valid():
                failures.append(f"sequence {k}: pushout not exact")
            if tc and not is_to_c(po, gens):
                failures.append(f"sequence {k}: pushout of a (-,C)-conflation lost the property")
            if fc and not is_from_c(po, gens):
                failures.append(f"sequence {k}: pushout of a (C,-)-conflation lost the property")
    for t in compose_with:
        for k, s in enumerate(conflations):
            if t.right is not s.middle:
                continue
            fc1, fc2 = is_from_c(t, gens), is_from_c(s, gens)
            tc1, tc2 = is_to_c(t, gens), is_to_c(s, gens)
            comp = s.proj @ t.proj
            seq = ses_from_epi(comp)
            checked["composite"] += 1
            if not seq.is_valid():
                failures.append(f"composite onto sequence {k} not exact")
            if fc1 and fc2 and not is_from_c(seq, gens):
                failures.append(f"composite of (C,-)-deflations onto sequence {k} lost the property")
            if tc1 and tc2 and not is_to_c(seq, gens):
                failures.append(f"composite of (-,C)-deflations onto sequence {k} lost the property")
    return AxiomReport(checked, failures)
