"""JSON file formats for algebras, modules, maps, sequences and fixture lists; TOML configs.

Vertices are numbered from 1 in files and from 0 in memory. Matrices are
row-major lists of integers or fraction strings, with shape
``dim(target vertex) x dim(source vertex)``.
"""

from __future__ import annotations

import hashlib
import json
import sys
from pathlib import Path as FsPath
from typing import Any

import numpy as np

from .algebra import Arrow, BasedAlgebra, Quiver, build_based_algebra
from .exactlin import Field, parse_field
from .modrep import ModuleMap, ModuleRep, ShortExactSeq

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

FORMAT_VERSION = 1


class FormatError(ValueError):
    pass


def field_label(f: Field) -> str:
    return "q" if f.characteristic == 0 else f"p={f.characteristic}"


def _scalar(x) -> int | str:
    s = str(x)
    try:
        return int(s)
    except ValueError:
        return s


def matrix_to_json(m: np.ndarray, f: Field) -> list[list[int | str]]:
    return [[_scalar(f.to_int_repr(v)) for v in row] for row in m]


def matrix_from_json(data, rows: int, cols: int, f: Field) -> np.ndarray:
    if rows == 0 or cols == 0:
        return f.zeros(rows, cols)
    m = f.array(data)
    if m.shape != (rows, cols):
        raise FormatError(f"matrix has shape {m.shape}, expected {(rows, cols)}")
    return m


def _check_kind(data: dict, kind: str) -> None:
    if data.get("format") != kind:
        raise FormatError(f"expected a {kind!r} document, got {data.get('format')!r}")
    if data.get("version", FORMAT_VERSION) != FORMAT_VERSION:
        raise FormatError(f"unsupported {kind} version {data.get('version')}")


def read_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def write_json(path, data: dict) -> None:
    FsPath(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1, sort_keys=False)
        fh.write("\n")


# --- algebras ----------------------------------------------------------------------------

def algebra_to_dict(alg: BasedAlgebra) -> dict:
    q = alg.quiver
    return {
        "format": "cotiltkit-algebra", "version": FORMAT_VERSION, "name": alg.name,
        "field": field_label(alg.field), "vertices": q.num_vertices,
        "arrows": [[a.label, a.source + 1, a.target + 1] for a in q.arrows],
        "relations": alg.relation_strings(),
    }


def algebra_from_dict(data: dict, field: Field | None = None) -> BasedAlgebra:
    _check_kind(data, "cotiltkit-algebra")
    f = field if field is not None else parse_field(data.get("field", "q"))
    n = int(data["vertices"])
    arrows = []
    for ent in data.get("arrows", []):
        label, s, t = ent
        if not (1 <= s <= n and 1 <= t <= n):
            raise FormatError(f"arrow {label} has a vertex outside 1..{n}")
        arrows.append(Arrow(str(label), int(s) - 1, int(t) - 1))
    q = Quiver(n, tuple(arrows))
    return build_based_algebra(q, list(data.get("relations", [])), f,
                               max_length=int(data.get("max_length", 16)), name=data.get("name", ""))


_ALG_CACHE: dict[tuple[str, str], BasedAlgebra] = {}


def load_algebra(path, field: Field | None = None) -> BasedAlgebra:
    p = str(FsPath(path).resolve())
    data = read_json(p)
    f = field if field is not None else parse_field(data.get("field", "q"))
    key = (p, field_label(f))
    if key not in _ALG_CACHE:
        _ALG_CACHE[key] = algebra_from_dict(data, f)
    return _ALG_CACHE[key]


def same_presentation(a: BasedAlgebra, data: dict) -> bool:
    """True when ``a`` has exactly the quiver and relation strings recorded in ``data``."""
    d = algebra_to_dict(a)
    return (d["vertices"] == data.get("vertices") and d["arrows"] == data.get("arrows")
            and d["relations"] == list(data.get("relations", [])))


# --- modules -----------------------------------------------------------------------------

def module_to_dict(m: ModuleRep, algebra_ref: str | None = None) -> dict:
    q = m.algebra.quiver
    out: dict[str, Any] = {"format": "cotiltkit-module", "version": FORMAT_VERSION}
    if algebra_ref is not None:
        out["algebra"] = algebra_ref
    out["name"] = m.name
    out["dims"] = list(m.dims)
    out["maps"] = {a.label: matrix_to_json(m.maps[k], m.field) for k, a in enumerate(q.arrows)}
    return out


def module_from_dict(data: dict, alg: BasedAlgebra) -> ModuleRep:
    q = alg.quiver
    dims = [int(d) for d in data["dims"]]
    if len(dims) != q.num_vertices:
        raise FormatError(f"dims has length {len(dims)}, algebra has {q.num_vertices} vertices")
    raw = data.get("maps", {})
    unknown = set(raw) - {a.label for a in q.arrows}
    if unknown:
        raise FormatError(f"unknown arrow labels {sorted(unknown)}")
    mats = [matrix_from_json(raw.get(a.label, []), dims[a.target], dims[a.source], alg.field)
            for a in q.arrows]
    return ModuleRep(alg, dims, mats, name=str(data.get("name", "")))


def _resolve(base, ref: str) -> FsPath:
    p = FsPath(ref)
    return p if p.is_absolute() else (FsPath(base).parent / p)


def load_module(path, field: Field | None = None, alg: BasedAlgebra | None = None) -> ModuleRep:
    data = read_json(path)
    _check_kind(data, "cotiltkit-module")
    if alg is None:
        if "algebra" not in data:
            raise FormatError(f"{path}: module file names no algebra")
        alg = load_algebra(_resolve(path, data["algebra"]), field)
    m = module_from_dict(data, alg)
    if not m.name:
        m.name = FsPath(path).stem
    return m


def save_module(path, m: ModuleRep, algebra_ref: str) -> None:
    write_json(path, module_to_dict(m, algebra_ref))


# --- fixture lists ------------------------------------------------------------------------

def fixtures_to_dict(mods, algebra_ref: str, complete: bool, note: str = "") -> dict:
    return {"format": "cotiltkit-fixtures", "version": FORMAT_VERSION, "algebra": algebra_ref,
            "census": len(mods), "complete": complete, "note": note,
            "modules": [{k: v for k, v in module_to_dict(m).items() if k not in ("format", "version")}
                        for m in mods]}


def load_fixtures(path, field: Field | None = None, alg: BasedAlgebra | None = None) -> tuple[BasedAlgebra, list[ModuleRep], dict]:
    data = read_json(path)
    _check_kind(data, "cotiltkit-fixtures")
    if alg is None:
        alg = load_algebra(_resolve(path, data["algebra"]), field)
    mods = [module_from_dict(d, alg) for d in data["modules"]]
    if len(mods) != data.get("census", len(mods)):
        raise FormatError(f"{path}: census {data.get('census')} but {len(mods)} modules")
    return alg, mods, data


# --- maps and sequences -----------------------------------------------------------------------

def _vertex_mats(raw: dict, src: ModuleRep, tgt: ModuleRep) -> tuple[np.ndarray, ...]:
    f = src.field
    n = len(src.dims)
    return tuple(matrix_from_json(raw.get(str(v + 1), []), tgt.dims[v], src.dims[v], f) for v in range(n))


def map_to_dict(fm: ModuleMap) -> dict:
    return {str(v + 1): matrix_to_json(m, fm.field) for v, m in enumerate(fm.mats)}


def _module_ref(path, ref, field, alg) -> ModuleRep:
    if isinstance(ref, dict):
        return module_from_dict(ref, alg)
    return load_module(_resolve(path, ref), field, alg)


def load_map(path, field: Field | None = None) -> ModuleMap:
    """Map file: ``{"format": "cotiltkit-map", "algebra", "source", "target", "mats": {vertex: matrix}}``."""
    data = read_json(path)
    _check_kind(data, "cotiltkit-map")
    alg = load_algebra(_resolve(path, data["algebra"]), field)
    src = _module_ref(path, data["source"], field, alg)
    tgt = _module_ref(path, data["target"], field, alg)
    return ModuleMap(src, tgt, _vertex_mats(data["mats"], src, tgt)).validated()


def load_sequence(path, field: Field | None = None) -> ShortExactSeq:
    """Sequence file with modules ``left/middle/right`` and vertex matrices ``incl``/``proj``."""
    data = read_json(path)
    _check_kind(data, "cotiltkit-sequence")
    alg = load_algebra(_resolve(path, data["algebra"]), field)
    l, m, r = (_module_ref(path, data[k], field, alg) for k in ("left", "middle", "right"))
    return ShortExactSeq(ModuleMap(l, m, _vertex_mats(data["incl"], l, m)),
                         ModuleMap(m, r, _vertex_mats(data["proj"], m, r)))


def sequence_to_dict(ses: ShortExactSeq, algebra_ref: str) -> dict:
    strip = lambda m: {k: v for k, v in module_to_dict(m).items() if k not in ("format", "version")}
    return {"format": "cotiltkit-sequence", "version": FORMAT_VERSION, "algebra": algebra_ref,
            "left": strip(ses.left), "middle": strip(ses.middle), "right": strip(ses.right),
            "incl": map_to_dict(ses.incl), "proj": map_to_dict(ses.proj)}


def load_subcategory(path, field: Field | None = None):
    """Subcategory file: module references plus closure assertions."""
    from .relexact import SubcatSpec
    data = read_json(path)
    _check_kind(data, "cotiltkit-subcategory")
    alg = load_algebra(_resolve(path, data["algebra"]), field) if "algebra" in data else None
    mods = [_module_ref(path, ref, field, alg) for ref in data["modules"]]
    return SubcatSpec(mods, data.get("quotient_closed"), data.get("submodule_closed"),
                      name=data.get("name", "C"))


# --- configs and checksums ------------------------------------------------------------------------

def load_config(path) -> dict:
    p = FsPath(path)
    with open(p, "rb") as fh:
        cfg = tomllib.load(fh) if p.suffix == ".toml" else json.load(fh)
    cfg["_base"] = str(p.resolve())
    return cfg


def resolve(cfg: dict, ref: str) -> FsPath:
    return _resolve(cfg["_base"], ref)


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()
