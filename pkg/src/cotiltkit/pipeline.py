"""End-to-end pipelines producing deterministic staged reports.

``main2``: for a generator G of mod A, Gamma = End(G) and U = Hom(G, D(A) + tau G).
``main1``: for C = Sub M, Gamma = End of the relative-projective generator in
mod A / [C] and U = the quotient Hom into the relative-injective generator.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path as FsPath
from typing import Any, Sequence


from .algebra import BasedAlgebra
from .endfunctor import EndPresentation, end_algebra, fully_faithful_check, hom_functor, stable_end_algebra
from .exactlin import Field, parse_field
from .fileformats import (
    _resolve, field_label, load_algebra, load_config, load_fixtures, load_module, read_json, resolve,
    same_presentation,
)
from .fixtures import enumerate_indecomposables
from .homological import Ext1Space, indecomposable_gens, tau
from .modrep import (
    ModuleRep, ShortExactSeq, end_is_local, find_iso_class, hom_space, injective_module,
    is_isomorphic, is_projective, projective_module,
)
from .relexact import (
    ExactKind, ExactStructureSpec, SubcatSpec, axiom_sweep, closure_check, is_from_c, is_to_c,
    n_kernels_check, quotient_hom, relative_injectives,
    relative_injectives_expected, relative_projectives, relative_projectives_expected, sub_closure,
)
from .tilting import is_cotilting, perp_membership, torsionfree_class_check

REPORT_SCHEMA = 1


@dataclass
class Stage:
    name: str
    ok: bool
    lines: list[str] = dc_field(default_factory=list)
    data: dict[str, Any] = dc_field(default_factory=dict)


@dataclass
class PipelineReport:
    pipeline: str
    config: str
    field: str
    seed: int
    stages: list[Stage] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return bool(self.stages) and all(s.ok for s in self.stages)

    def stage(self, name: str) -> Stage:
        for s in self.stages:
            if s.name == name:
                return s
        raise KeyError(name)

    def add(self, name: str, ok: bool, lines: Sequence[str] = (), **data) -> Stage:
        s = Stage(name, bool(ok), list(lines), data)
        self.stages.append(s)
        return s

    def to_text(self) -> str:
        out = [f"pipeline {self.pipeline}  config={self.config}  field={self.field}  seed={self.seed}"]
        for s in self.stages:
            out.append(f"[{'PASS' if s.ok else 'FAIL'}] {s.name}")
            out.extend(f"    {ln}" for ln in s.lines)
        out.append(f"overall: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(out) + "\n"

    def to_json(self) -> str:
        doc = {"schema": REPORT_SCHEMA, "pipeline": self.pipeline, "config": self.config,
               "field": self.field, "seed": self.seed, "ok": self.ok,
               "stages": [{"name": s.name, "ok": s.ok, "lines": s.lines, "data": s.data} for s in self.stages]}
        return json.dumps(doc, indent=1, sort_keys=True, default=str) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["stage", "ok", "detail"])
        for s in self.stages:
            if not s.lines:
                w.writerow([s.name, s.ok, ""])
            for ln in s.lines:
                w.writerow([s.name, s.ok, ln])
        return buf.getvalue()

    def render(self, fmt: str = "text") -> str:
        return {"text": self.to_text, "json": self.to_json, "csv": self.to_csv}[fmt]()


# --- shared helpers ------------------------------------------------------------------------

def packaged_config(name: str) -> FsPath:
    base = resources.files("cotiltkit") / "data" / "configs"
    p = FsPath(str(base / name))
    return p if p.suffix else p.with_suffix(".toml")


def find_config(ref: str) -> FsPath:
    p = FsPath(ref)
    if p.exists():
        return p
    q = packaged_config(ref)
    if q.exists():
        return q
    raise FileNotFoundError(f"no config {ref!r} (neither a path nor a packaged config)")


def _arrow_str(a, labels: bool = True) -> str:
    return f"{a.label}:{a.source + 1}->{a.target + 1}" if labels else f"{a.source + 1}->{a.target + 1}"


def validate_fixtures(mods: Sequence[ModuleRep]) -> list[str]:
    """Problems with a fixture list: decomposable members or isomorphic pairs."""
    bad = []
    for k, m in enumerate(mods):
        if m.total_dim == 0 or not end_is_local(m):
            bad.append(f"fixture {m.name or k} is not indecomposable")
        for l in range(k):
            if mods[l].dims == m.dims and is_isomorphic(mods[l], m):
                bad.append(f"fixtures {mods[l].name} and {m.name} are isomorphic")
    return bad


@dataclass
class Context:
    cfg: dict
    field: Field
    seed: int
    algebra: BasedAlgebra
    fixtures: list[ModuleRep]

    def module(self, ref: str) -> ModuleRep:
        for m in self.fixtures:
            if m.name == ref:
                return m
        if ref.endswith(".json"):
            return load_module(resolve(self.cfg, ref), self.field, self.algebra)
        raise KeyError(f"unknown module reference {ref!r}")

    def modules(self, refs: Sequence[str]) -> list[ModuleRep]:
        return [self.module(r) for r in refs]


def _load_context(config, field: str | Field | None, seed: int | None, report_name: str):
    path = find_config(str(config))
    cfg = load_config(path)
    fld = field if isinstance(field, Field) else parse_field(field or cfg.get("field", "p=1009"))
    sd = int(seed if seed is not None else cfg.get("seed", 0))
    alg = load_algebra(resolve(cfg, cfg["algebra"]), fld)
    _, fix, meta = load_fixtures(resolve(cfg, cfg["fixtures"]), fld, alg)
    rep = PipelineReport(report_name, path.name, field_label(fld), sd)
    ctx = Context(cfg, fld, sd, alg, fix)
    bad = validate_fixtures(fix)
    rep.add("inputs", not bad,
            [f"algebra {alg.name or '?'}: {alg.num_vertices} vertices, {len(alg.quiver.arrows)} arrows, dimension {alg.dimension}",
             f"fixtures: {len(fix)} indecomposables (census file {meta.get('census')})"] + bad,
            algebra_dimension=alg.dimension, fixtures=len(fix))
    return ctx, rep


def _gamma_fixtures(ctx: Context, pres: EndPresentation, rep: PipelineReport) -> list[ModuleRep]:
    ref = ctx.cfg.get("gamma_fixtures")
    lines, source = [], "enumerated"
    mods: list[ModuleRep] | None = None
    if ref and resolve(ctx.cfg, ref).exists():
        path = resolve(ctx.cfg, ref)
        data = read_json(path)
        alg_data = read_json(_resolve(path, data["algebra"]))
        if same_presentation(pres.algebra, alg_data):
            _, mods, _ = load_fixtures(path, ctx.field, pres.algebra)
            source = "frozen"
        else:
            lines.append("frozen list does not match the computed presentation; enumerating")
    if mods is None:
        en = enumerate_indecomposables(pres.algebra, seed=ctx.seed)
        mods = en.modules
        lines.append(f"enumeration certificate: {'complete' if en.complete else 'incomplete'}")
    bad = validate_fixtures(mods)
    expected = ctx.cfg.get("expect", {}).get("gamma_census")
    ok = not bad and (expected is None or expected == len(mods))
    rep.add("gamma fixtures", ok, [f"{len(mods)} indecomposable Gamma-modules ({source})"] + lines + bad,
            census=len(mods), source=source)
    return mods


def _gamma_stage(rep: PipelineReport, pres: EndPresentation, cfg: dict) -> None:
    q = pres.algebra.quiver
    arrows = [_arrow_str(a) for a in q.arrows]
    mult_ok = pres.verify_multiplication()
    exp = cfg.get("expect", {})
    checks = []
    if "gamma_vertices" in exp:
        checks.append(("vertices", q.num_vertices == exp["gamma_vertices"]))
    if "gamma_arrows" in exp:
        want = sorted(tuple(x) for x in exp["gamma_arrows"])
        got = sorted((a.source + 1, a.target + 1) for a in q.arrows)
        checks.append(("arrows", want == got))
    if "gamma_dimension" in exp:
        checks.append(("dimension", pres.dimension == exp["gamma_dimension"]))
    lines = [f"summands: {', '.join(g.name for g in pres.summands)}",
             f"dimension {pres.dimension}, {q.num_vertices} vertices, {len(q.arrows)} arrows",
             f"arrows: {' '.join(arrows)}",
             "relations: " + ("; ".join(pres.algebra.relation_strings()) or "none")
             + ("" if pres.relations_recovered else " (unminimized)"),
             f"multiplication re-verified: {mult_ok}"]
    lines += [f"expected {k}: {'ok' if v else 'MISMATCH'}" for k, v in checks]
    rep.add("gamma presentation", mult_ok and all(v for _, v in checks), lines,
            vertices=q.num_vertices, arrows=[[a.label, a.source + 1, a.target + 1] for a in q.arrows],
            relations=pres.algebra.relation_strings(), dimension=pres.dimension)


def _census_stage(rep: PipelineReport, images: list[ModuleRep], gfix: list[ModuleRep], u_gens, id_u: int) -> list[int]:
    perp = [k for k, x in enumerate(gfix) if perp_membership(x, u_gens, id_u).verdict]
    perp_mods = [gfix[k] for k in perp]
    matched, lines, ok = set(), [], True
    for img in images:
        k = find_iso_class(img, perp_mods)
        if k is None or k in matched:
            ok = False
            lines.append(f"image {img.name} not matched to a distinct member of perp U")
        else:
            matched.add(k)
    ok = ok and len(perp) == len(images)
    lines.insert(0, f"perp U census: {len(perp)} of {len(gfix)} Gamma-fixtures; images: {len(images)}")
    rep.add("perp census", ok, lines, census=len(perp), images=len(images),
            members=[gfix[k].name for k in perp])
    return perp


def _ff_stage(rep: PipelineReport, pres: EndPresentation, objs: list[ModuleRep], images: list[ModuleRep]) -> None:
    ff = fully_faithful_check(pres, objs, images)
    dup = [(objs[a].name, objs[b].name) for a in range(len(images)) for b in range(a)
           if images[a].dims == images[b].dims and is_isomorphic(images[a], images[b])]
    lines = [f"{len(ff.rows)} pairs checked, {len(ff.failures)} failures",
             f"images pairwise non-isomorphic: {not dup}"]
    lines += [f"failure {x} -> {y}: dims {d1} vs {d2}, rank {r}" for x, y, d1, d2, r in ff.failures]
    rep.add("fully faithful", ff.ok and not dup, lines, pairs=len(ff.rows), failures=len(ff.failures))


def _expect_stage(rep: PipelineReport, cfg: dict, observed: dict) -> None:
    exp = {k: v for k, v in cfg.get("expect", {}).items() if k in observed}
    if not exp:
        return
    lines, ok = [], True
    for k in sorted(exp):
        good = observed[k] == exp[k]
        ok &= good
        lines.append(f"{k}: expected {exp[k]}, observed {observed[k]} {'ok' if good else 'MISMATCH'}")
    rep.add("expected values", ok, lines)


def fixture_conflations(fixtures: Sequence[ModuleRep], limit: int | None = None) -> list[tuple[str, ShortExactSeq]]:
    out = []
    for x in fixtures:
        for l in fixtures:
            for k, s in enumerate(Ext1Space(x, l).basis_sequences()):
                out.append((f"{l.name} >-> ? ->> {x.name} #{k}", s))
                if limit is not None and len(out) >= limit:
                    return out
    return out


def _exact_images(pres: EndPresentation, s: ShortExactSeq) -> bool:
    from .endfunctor import hom_functor_map
    fl, fm, fr = (hom_functor(pres, m) for m in (s.left, s.middle, s.right))
    a = hom_functor_map(pres, s.incl, fl, fm)
    b = hom_functor_map(pres, s.proj, fm, fr)
    return ShortExactSeq(a, b).is_valid()


# --- main2 ------------------------------------------------------------------------------------

def pipeline_main2(config, field: str | Field | None = None, seed: int | None = None,
                   capture: dict | None = None) -> PipelineReport:
    ctx, rep = _load_context(config, field, seed, "main2")
    cfg, alg, fix = ctx.cfg, ctx.algebra, ctx.fixtures
    g_list = ctx.modules(cfg["generator"])
    g_gens = indecomposable_gens(g_list, ctx.seed)
    missing = [i + 1 for i in range(alg.num_vertices)
               if find_iso_class(projective_module(alg, i), g_gens) is None]
    rep.add("generator", not missing,
            [f"G = {' + '.join(g.name for g in g_list)}", f"projectives outside add G: {missing or 'none'}"])
    if missing:
        return rep
    pres = end_algebra(g_gens, name=cfg.get("gamma_name", "Gamma"), labels=cfg.get("arrow_labels"), seed=ctx.seed)
    _gamma_stage(rep, pres, cfg)
    gfix = _gamma_fixtures(ctx, pres, rep)
    if capture is not None:
        capture.update(presentation=pres, gamma_fixtures=gfix, context=ctx)

    c_gens = indecomposable_gens([injective_module(alg, i) for i in range(alg.num_vertices)]
                                 + [t for t in (tau(g) for g in g_gens) if t.total_dim], ctx.seed)
    u_gens = [hom_functor(pres, c, name=f"F({c.name})") for c in c_gens]
    if capture is not None:
        capture["u_gens"] = u_gens
    bound = int(cfg.get("bound", 8))
    cot = is_cotilting(u_gens, bound=bound)
    g_proj = all(is_projective(g) for g in g_gens)
    idu = cot.injective_dimension
    id_ok = idu in (0, 2) and ((idu == 0) == g_proj)
    rep.add("cotilting", cot.verdict == "pass" and id_ok,
            [f"C = {' + '.join(c.name for c in c_gens)}", f"id U = {idu}"] + cot.lines()
            + [f"id U in {{0, 2}} with id U = 0 exactly when G is projective: {id_ok}"],
            injective_dimension=idu, verdict=cot.verdict)
    if idu is None:
        return rep

    images = [hom_functor(pres, x) for x in fix]
    _ff_stage(rep, pres, fix, images)
    perp = _census_stage(rep, images, gfix, u_gens, idu)

    sub = SubcatSpec(g_gens, name="add G")
    spec = ExactStructureSpec(ExactKind.FROM_C, sub)
    seqs = fixture_conflations(fix, cfg.get("sequence_limit"))
    mism = []
    n_rel = 0
    for name, s in seqs:
        rel = is_from_c(s, g_gens)
        n_rel += rel
        if rel != _exact_images(pres, s):
            mism.append(name)
    rep.add("exactness", not mism,
            [f"{len(seqs)} fixture sequences, {n_rel} are (G,-)-conflations",
             f"F(sequence) exact exactly for (G,-)-conflations: {not mism}"] + [f"mismatch: {m}" for m in mism])

    rp = relative_projectives(fix, spec)
    rp_ok = sorted(rp) == sorted(k for k, x in enumerate(fix) if find_iso_class(x, g_gens) is not None)
    rep.add("relative projectives", rp_ok,
            [f"relative projectives: {', '.join(fix[k].name for k in rp)}", f"equal to add G: {rp_ok}"])

    mors = [(f"{x.name}->{y.name}#{k}", m) for x in fix for y in fix for k, m in enumerate(hom_space(x, y).basis)]
    kr = n_kernels_check(mors, spec, 1, fix)
    rep.add("1-kernels", kr.ok, [f"{kr.total} Hom-basis morphisms, {len(kr.failures)} failures (relative to the fixture set)"]
            + [f"failure {a}: {b}" for a, b in kr.failures])
    _expect_stage(rep, cfg, {"injective_dimension": idu, "perp_census": len(perp), "lambda_census": len(fix),
                             "gamma_census": len(gfix)})
    return rep


def _zero_kernel_stage(rep, nonzero, sub, spec, fix) -> None:
    mors = []
    for x in nonzero:
        for y in nonzero:
            for k, r in enumerate(quotient_hom(x, y, sub).coset_basis):
                mors.append((f"{x.name}->{y.name}#{k}", r))
    kr = n_kernels_check(mors, spec, 0, fix)
    rep.add("0-kernels", kr.ok,
            [f"quotient has {len(nonzero)} nonzero indecomposables",
             f"{kr.total} quotient Hom-basis morphisms, {len(kr.failures)} failures (relative to the fixture set)"]
            + [f"failure {a}: {b}" for a, b in kr.failures], failures=[a for a, _ in kr.failures])


# --- main1 ------------------------------------------------------------------------------------

def pipeline_main1(config, field: str | Field | None = None, seed: int | None = None,
                   capture: dict | None = None) -> PipelineReport:
    ctx, rep = _load_context(config, field, seed, "main1")
    cfg, alg, fix = ctx.cfg, ctx.algebra, ctx.fixtures
    m_list = ctx.modules(cfg.get("m", []))
    mode = cfg.get("subcategory", "sub")
    if mode == "sub":
        c_mods = [fix[k] for k in sub_closure(m_list, fix)] if m_list else []
    elif mode == "add":
        c_mods = indecomposable_gens(m_list, ctx.seed) if m_list else []
    else:
        raise ValueError(f"unknown subcategory mode {mode!r}")
    sub = SubcatSpec(c_mods, name="Sub M" if mode == "sub" else "add M")
    clo = closure_check(sub, fix)
    rep.add("closure", clo.submodule_closed,
            [f"M = {' + '.join(m.name for m in m_list) or '0'}",
             f"{sub.name} indecomposables: {', '.join(m.name for m in c_mods) or 'none'}",
             f"submodule-closed {clo.submodule_closed}, quotient-closed {clo.quotient_closed}, image-closed {clo.image_closed}"],
            submodule_closed=clo.submodule_closed, image_closed=clo.image_closed)
    sub.submodule_closed = clo.submodule_closed
    sub.quotient_closed = clo.quotient_closed
    spec = ExactStructureSpec(ExactKind.BOTH_C, sub)
    nonzero = [x for x in fix if not sub.contains(x)]
    if not clo.submodule_closed:
        _zero_kernel_stage(rep, nonzero, sub, spec, fix)
        return rep

    # structure certification on fixture sequences
    seqs = fixture_conflations(fix, cfg.get("sequence_limit"))
    gens = sub.indecomposables
    counts = {"from": 0, "to": 0, "both": 0}
    rel_seqs = []
    for name, s in seqs:
        fc, tc = is_from_c(s, gens), is_to_c(s, gens)
        counts["from"] += fc
        counts["to"] += tc
        both = fc and tc
        counts["both"] += both
        if both:
            rel_seqs.append(s)
    maps_into = {k: [b for x in fix for b in hom_space(x, s.right).basis] for k, s in enumerate(rel_seqs)}
    maps_from = {k: [b for x in fix for b in hom_space(s.left, x).basis] for k, s in enumerate(rel_seqs)}
    sweep = axiom_sweep(rel_seqs, maps_into, maps_from, spec)
    rep.add("exact structure", sweep.ok,
            [f"{len(seqs)} fixture sequences: {counts['from']} (C,-), {counts['to']} (-,C), {counts['both']} C-conflations",
             f"pullbacks {sweep.checked['pullback']}, pushouts {sweep.checked['pushout']} re-certified; "
             f"{len(sweep.failures)} failures (verified on declared fixture set)"] + sweep.failures)

    rp, ri = relative_projectives(fix, spec), relative_injectives(fix, spec)
    exp_p, exp_i = relative_projectives_expected(spec, alg), relative_injectives_expected(spec, alg)
    got_p = [fix[k] for k in rp]
    got_i = [fix[k] for k in ri]

    def same(a, b):
        return len(a) == len(b) and all(find_iso_class(x, b) is not None for x in a)

    ok_pi = same(got_p, exp_p) and same(got_i, exp_i)
    rep.add("relative projectives", ok_pi,
            [f"relative projectives: {', '.join(x.name for x in got_p)}",
             f"expected add(A, C, tau^- C): {', '.join(x.name for x in exp_p)}",
             f"relative injectives: {', '.join(x.name for x in got_i)}",
             f"expected add(DA, C, tau C): {', '.join(x.name for x in exp_i)}"])

    _zero_kernel_stage(rep, nonzero, sub, spec, fix)

    m_hat = [x for x in got_p if not sub.contains(x)]
    n_hat = [x for x in got_i if not sub.contains(x)]
    if "gamma_vertices" in cfg:
        order = ctx.modules(cfg["gamma_vertices"])
        if not same(order, m_hat):
            rep.add("gamma presentation", False, ["configured vertex order is not the relative-projective generator"])
            return rep
        m_hat = order
    pres = stable_end_algebra(m_hat, sub, name=cfg.get("gamma_name", "Gamma"), labels=cfg.get("arrow_labels"),
                              seed=ctx.seed)
    _gamma_stage(rep, pres, cfg)
    gfix = _gamma_fixtures(ctx, pres, rep)
    if capture is not None:
        capture.update(presentation=pres, gamma_fixtures=gfix, context=ctx)

    u_gens = [hom_functor(pres, y, name=f"F({y.name})") for y in n_hat]
    if capture is not None:
        capture["u_gens"] = u_gens
    cot = is_cotilting(u_gens, bound=int(cfg.get("bound", 8)))
    idu = cot.injective_dimension
    rep.add("cotilting", cot.verdict == "pass" and idu is not None and idu <= 1,
            [f"U = F({' + '.join(y.name for y in n_hat)})", f"id U = {idu}"] + cot.lines(),
            injective_dimension=idu)
    if idu is None:
        return rep

    images = [hom_functor(pres, x) for x in nonzero]
    _ff_stage(rep, pres, nonzero, images)
    perp = _census_stage(rep, images, gfix, u_gens, idu)
    tf = torsionfree_class_check([gfix[k] for k in perp], gfix)
    rep.add("torsionfree class", tf.ok,
            [f"extension closure on {tf.sequences_checked} sequences, submodule closure by {tf.method}"]
            + [f"extension failure: {e}" for e in tf.extension_failures]
            + [f"submodule failure: {e}" for e in tf.submodule_failures])
    _expect_stage(rep, cfg, {"quotient_objects": len(nonzero), "perp_census": len(perp), "lambda_census": len(fix),
                             "gamma_census": len(gfix), "injective_dimension": idu})
    return rep


PIPELINES = {"main1": pipeline_main1, "main2": pipeline_main2}


def run_pipeline(config, field=None, seed=None, which: str | None = None) -> PipelineReport:
    path = find_config(str(config))
    declared = load_config(path).get("pipeline")
    if which and declared and which != declared:
        raise ValueError(f"config {path.name} is a {declared} config, not {which}")
    kind = which or declared
    if kind not in PIPELINES:
        raise ValueError(f"unknown pipeline {kind!r}")
    return PIPELINES[kind](path, field, seed)
