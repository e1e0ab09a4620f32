"""Command-line interface. Exit codes: 0 pass, 1 fail, 2 error."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .endfunctor import end_algebra, stable_end_algebra
from .exactlin import parse_field
from .fileformats import (
    FormatError, algebra_to_dict, load_algebra, load_fixtures, load_map, load_module,
    load_sequence, load_subcategory, module_to_dict, read_json, write_json,
)
from .homological import ext_table, tau, tau_minus
from .modrep import ModuleError, decompose, dualize, hom_space, layer_name
from .pipeline import PipelineReport, Stage, run_pipeline
from .relexact import (
    ExactKind, ExactStructureSpec, SubcatSpec, is_conflation, is_from_c, is_to_c, quotient_hom,
    zero_kernel_factorization,
)
from .tilting import is_cotilting, perp_membership, module_injective_dimension

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _field(args):
    return parse_field(args.field) if args.field else None


def _report(args, name: str) -> PipelineReport:
    return PipelineReport(name, " ".join(str(x) for x in args.inputs_for_report),
                          args.field or "file", args.seed)


def _module_line(m) -> str:
    return f"{m.name or layer_name(m)}: dims {list(m.dims)}, layers {layer_name(m)}"


# --- handlers ----------------------------------------------------------------------------------

def cmd_algebra(args) -> PipelineReport:
    alg = load_algebra(args.file, _field(args))
    rep = _report(args, f"algebra {args.action}")
    lines = [f"{alg.name or Path(args.file).stem}: {alg.num_vertices} vertices, {len(alg.quiver.arrows)} arrows, "
             f"dimension {alg.dimension} over {alg.field}",
             "arrows: " + " ".join(f"{a.label}:{a.source + 1}->{a.target + 1}" for a in alg.quiver.arrows),
             "relations: " + ("; ".join(alg.relation_strings()) or "none")]
    if args.action == "info":
        lines += [f"P{i + 1}: dim {len(alg.basis_from(i))}" for i in range(alg.num_vertices)]
        rep.add("info", True, lines)
    else:
        ok = alg.check_associativity() and alg.check_idempotents()
        rep.add("check", ok, lines + [f"associativity and idempotents: {'ok' if ok else 'FAILED'}"])
    return rep


def cmd_module(args) -> PipelineReport:
    m = load_module(args.file, _field(args))
    rep = _report(args, f"module {args.action}")
    if args.action == "validate":
        m.validate()
        rep.add("validate", True, [_module_line(m), "relations hold"])
    elif args.action == "decompose":
        parts = decompose(m, args.seed)
        rep.add("decompose", True, [f"{_module_line(p)}  x{k}" for p, k in parts])
    elif args.action in ("tau", "tau-"):
        t = tau(m) if args.action == "tau" else tau_minus(m)
        rep.add(args.action, True, [f"input {_module_line(m)}", f"result dims {list(t.dims)}, layers {layer_name(t)}"])
        out = t
    else:
        out = dualize(m)
        rep.add("dual", True, [f"dual over the opposite algebra: dims {list(out.dims)}"])
    if args.action in ("tau", "tau-") and args.output:
        write_json(args.output, module_to_dict(out, str(Path(args.file).resolve().parent / read_json(args.file)["algebra"])))
    return rep


def cmd_hom(args) -> PipelineReport:
    f = _field(args)
    x = load_module(args.x, f)
    y = load_module(args.y, f, x.algebra)
    rep = _report(args, "hom")
    rep.add("hom", True, [f"dim Hom({x.name}, {y.name}) = {hom_space(x, y).dim}"])
    return rep


def cmd_ext(args) -> PipelineReport:
    f = _field(args)
    x = load_module(args.x, f)
    y = load_module(args.y, f, x.algebra)
    rep = _report(args, "ext")
    tab = ext_table(x, y, args.max_i)
    rep.add("ext", True, [f"Ext^{i}({x.name}, {y.name}) = {d}" for i, d in enumerate(tab.dims)])
    return rep


def _structure(args, alg) -> ExactStructureSpec:
    kind = ExactKind.parse(args.structure)
    sub = load_subcategory(args.subcat, _field(args)) if args.subcat else None
    if sub is not None and sub.generators:
        sub = SubcatSpec([_rebase(g, alg) for g in sub.generators], sub.quotient_closed, sub.submodule_closed, sub.name)
    return ExactStructureSpec(kind, sub)


def _rebase(m, alg):
    from .modrep import ModuleRep
    if m.algebra is alg:
        return m
    if m.algebra.quiver != alg.quiver:
        raise FormatError("subcategory modules live over a different algebra")
    return ModuleRep(alg, m.dims, [alg.field.array(x) for x in m.maps], name=m.name)


def cmd_conflation(args) -> PipelineReport:
    ses = load_sequence(args.ses, _field(args))
    spec = _structure(args, ses.middle.algebra)
    rep = _report(args, "conflation check")
    valid = ses.is_valid()
    lines = [f"short exact: {valid}"]
    if valid and spec.subcat is not None:
        g = spec.subcat.indecomposables
        lines += [f"(C,-)-exact: {is_from_c(ses, g)}", f"(-,C)-exact: {is_to_c(ses, g)}"]
    ok = valid and is_conflation(ses, spec)
    rep.add(f"structure {spec.kind.value}", ok, lines + [f"conflation: {ok}"])
    return rep


def cmd_quotient(args) -> PipelineReport:
    f = _field(args)
    rep = _report(args, f"quotient {args.action}")
    if args.action == "hom":
        x = load_module(args.inputs[0], f)
        y = load_module(args.inputs[1], f, x.algebra)
        sub = load_subcategory(args.subcat, f)
        sub = SubcatSpec([_rebase(g, x.algebra) for g in sub.generators], sub.quotient_closed, sub.submodule_closed, sub.name)
        q = quotient_hom(x, y, sub)
        rep.add("quotient hom", True, [f"dim Hom = {q.hom.dim}, ideal = {q.ideal_dim}, quotient = {q.dim}"])
        return rep
    fm = load_map(args.inputs[0], f)
    sub = load_subcategory(args.subcat, f)
    alg = fm.source.algebra
    sub = SubcatSpec([_rebase(g, alg) for g in sub.generators], sub.quotient_closed, sub.submodule_closed, sub.name)
    if args.fixtures:
        _, tests, _ = load_fixtures(args.fixtures, f, alg)
    else:
        tests = [fm.source, fm.target]
    fac = zero_kernel_factorization(fm, sub, tests)
    lines = [f"{k}: {v}" for k, v in fac.checks.items()]
    if fac.error:
        lines.append(f"error: {fac.error}")
    lines.append(f"test objects: {len(tests)} ({'fixture list' if args.fixtures else 'source and target only'})")
    rep.add("0-kernel factorization", fac.ok, lines)
    return rep


def cmd_cotilt(args) -> PipelineReport:
    u = load_module(args.u, _field(args))
    rep = _report(args, "cotilt verify")
    cr = is_cotilting(u, args.n, bound=args.bound)
    rep.add("cotilting", cr.verdict == "pass", cr.lines(), verdict=cr.verdict, n=cr.cotilting_degree)
    return rep


def _fixture_modules(ref: str, field, alg):
    p = Path(ref)
    if p.is_dir():
        return [load_module(q, field, alg) for q in sorted(p.glob("*.json"))]
    return load_fixtures(p, field, alg)[1]


def cmd_perp(args) -> PipelineReport:
    f = _field(args)
    u = load_module(args.u, f)
    mods = _fixture_modules(args.fixtures, f, u.algebra)
    idu = module_injective_dimension(u, args.bound)
    rep = _report(args, "perp census")
    if idu is None:
        rep.add("perp census", False, [f"injective dimension of U exceeds {args.bound}"])
        return rep
    lines, count = [], 0
    for x in mods:
        pm = perp_membership(x, u, idu)
        count += pm.verdict
        lines.append(f"{x.name}: {'in' if pm.verdict else 'out'} "
                     + " ".join(f"Ext^{i}={d}" for i, d in pm.ext_dims.items()))
    rep.add("perp census", True, [f"{count} of {len(mods)} fixtures in perp U (id U = {idu})"] + lines, census=count)
    return rep


def cmd_endalg(args) -> PipelineReport:
    f = _field(args)
    g = load_module(args.g, f)
    rep = _report(args, "endalg")
    if args.stable:
        sub = load_subcategory(args.stable, f)
        sub = SubcatSpec([_rebase(x, g.algebra) for x in sub.generators], sub.quotient_closed, sub.submodule_closed, sub.name)
        pres = stable_end_algebra(g, sub, seed=args.seed)
    else:
        pres = end_algebra(g, seed=args.seed)
    q = pres.algebra.quiver
    ok = pres.verify_multiplication()
    rep.add("presentation", ok,
            [f"summands: {', '.join(s.name or layer_name(s) for s in pres.summands)}",
             f"dimension {pres.dimension}, {q.num_vertices} vertices, {len(q.arrows)} arrows",
             "arrows: " + " ".join(f"{a.label}:{a.source + 1}->{a.target + 1}" for a in q.arrows),
             "relations: " + ("; ".join(pres.algebra.relation_strings()) or "none"),
             f"multiplication re-verified: {ok}"])
    if args.export:
        write_json(args.export, algebra_to_dict(pres.algebra))
    return rep


def cmd_pipeline(args) -> PipelineReport:
    return run_pipeline(args.config, args.field, args.seed if args.seed_given else None, which=args.which)


def cmd_report(args) -> PipelineReport:
    doc = read_json(args.file)
    rep = PipelineReport(doc["pipeline"], doc["config"], doc["field"], doc["seed"])
    rep.stages = [Stage(s["name"], s["ok"], s["lines"], s.get("data", {})) for s in doc["stages"]]
    return rep


# --- parser ------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cotiltkit", description="Exact representation-theory computations.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--field", help="ground field: q or p=<prime> (default: as declared in the input files)")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized searches (default 0)")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.add_argument("-o", "--output-report", help="write the report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("algebra", help="check or describe an algebra file")
    a.add_argument("action", choices=("check", "info"))
    a.add_argument("file")
    a.set_defaults(func=cmd_algebra, report_args=("file",))

    m = sub.add_parser("module", help="module operations")
    m.add_argument("action", choices=("validate", "decompose", "tau", "tau-", "dual"))
    m.add_argument("file")
    m.add_argument("--output", help="write the resulting module (tau, tau-)")
    m.set_defaults(func=cmd_module, report_args=("file",))

    h = sub.add_parser("hom", help="dimension of Hom(x, y)")
    h.add_argument("x")
    h.add_argument("y")
    h.set_defaults(func=cmd_hom, report_args=("x", "y"))

    e = sub.add_parser("ext", help="Ext^i(x, y) for i <= max-i")
    e.add_argument("x")
    e.add_argument("y")
    e.add_argument("--max-i", type=int, default=3)
    e.set_defaults(func=cmd_ext, report_args=("x", "y"))

    c = sub.add_parser("conflation", help="check a short exact sequence against an exact structure")
    c.add_argument("action", choices=("check",))
    c.add_argument("ses")
    c.add_argument("--structure", default="full", help="full, from, to or both")
    c.add_argument("--subcat", help="subcategory file (required unless full)")
    c.set_defaults(func=cmd_conflation, report_args=("ses",))

    q = sub.add_parser("quotient", help="Hom spaces and factorizations modulo a subcategory")
    q.add_argument("action", choices=("hom", "factor"))
    q.add_argument("inputs", nargs="+", help="hom: x y; factor: map file")
    q.add_argument("--subcat", required=True)
    q.add_argument("--fixtures", help="fixture list used as test objects (factor)")
    q.set_defaults(func=cmd_quotient, report_args=("inputs",))

    t = sub.add_parser("cotilt", help="cotilting verification")
    t.add_argument("action", choices=("verify",))
    t.add_argument("u")
    t.add_argument("-n", type=int, default=None, help="maximal allowed injective dimension")
    t.add_argument("--bound", type=int, default=8)
    t.set_defaults(func=cmd_cotilt, report_args=("u",))

    pc = sub.add_parser("perp", help="perpendicular-category census over fixtures")
    pc.add_argument("action", choices=("census",))
    pc.add_argument("u")
    pc.add_argument("fixtures", help="fixture list file or directory of module files")
    pc.add_argument("--bound", type=int, default=8)
    pc.set_defaults(func=cmd_perp, report_args=("u", "fixtures"))

    en = sub.add_parser("endalg", help="quiver presentation of an endomorphism algebra")
    en.add_argument("g")
    en.add_argument("--stable", metavar="SUBCAT", help="work modulo maps factoring through this subcategory")
    en.add_argument("--export", help="write the presentation as an algebra file")
    en.set_defaults(func=cmd_endalg, report_args=("g",))

    pl = sub.add_parser("pipeline", help="run an end-to-end pipeline")
    pl.add_argument("which", choices=("main1", "main2"))
    pl.add_argument("config", help="config path or packaged config name")
    pl.set_defaults(func=cmd_pipeline, report_args=("config",))

    r = sub.add_parser("report", help="re-render a saved JSON report")
    r.add_argument("file")
    r.set_defaults(func=cmd_report, report_args=("file",))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.seed_given = args.seed is not None
    if args.seed is None:
        args.seed = 0
    vals = []
    for k in args.report_args:
        v = getattr(args, k)
        vals.extend(v if isinstance(v, list) else [v])
    args.inputs_for_report = [Path(v).name for v in vals]
    try:
        rep = args.func(args)
    except (OSError, FormatError, ModuleError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    text = rep.render(args.format)
    if args.output_report:
        Path(args.output_report).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS if rep.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
