#!/usr/bin/env python3
"""Regenerate the packaged fixture corpus and its manifest.

Run from the repository root:  python scripts/freeze_fixtures.py

Indecomposable lists are enumerated over the rationals (so that the frozen
matrices are valid over every supported field), checked for completeness by the
enumeration certificate, and written together with a checksum manifest.
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from cotiltkit.algebra import cyclic_nakayama, path_algebra_linear
from cotiltkit.exactlin import QQ
from cotiltkit.fileformats import (
    algebra_to_dict, fixtures_to_dict, module_to_dict, sequence_to_dict, sha256_file, write_json,
)
from cotiltkit.fixtures import enumerate_indecomposables
from cotiltkit.modrep import dual_regular_module, projective_module, simple_module, socle, ses_from_mono
from cotiltkit.pipeline import PIPELINES, find_config
from cotiltkit.fileformats import load_config

DATA = Path(__file__).resolve().parents[1] / "src" / "cotiltkit" / "data"

BASE_ALGEBRAS = {
    "a4": lambda: path_algebra_linear(4, QQ),
    "a5": lambda: path_algebra_linear(5, QQ),
    "nakayama-3-4": lambda: cyclic_nakayama(3, 4, QQ),
}

GAMMA_CONFIGS = {
    "gamma-a4-main2": "a4-main2",
    "gamma-a4-auslander": "a4-auslander-main2",
    "gamma-nakayama-main1": "nakayama-main1",
    "gamma-a4-apr": "a4-apr-main1",
}


def freeze_base() -> dict[str, int]:
    census = {}
    for key, make in BASE_ALGEBRAS.items():
        alg = make()
        write_json(DATA / "algebras" / f"{key}.json", algebra_to_dict(alg))
        en = enumerate_indecomposables(alg)
        if not en.complete:
            raise SystemExit(f"{key}: enumeration certificate missing")
        write_json(DATA / "fixtures" / f"{key}.json",
                   fixtures_to_dict(en.modules, f"../algebras/{key}.json", True,
                                    "enumerated; closure under translates and almost split sequences"))
        census[key] = len(en.modules)
    return census


def freeze_examples() -> None:
    a4 = path_algebra_linear(4, QQ)
    ref = "../algebras/a4.json"
    dl = dual_regular_module(a4).module
    dl.name = "D(A4)"
    write_json(DATA / "modules" / "a4-dlambda.json", module_to_dict(dl, ref))
    p2 = projective_module(a4, 1)
    for i in range(4):
        s = simple_module(a4, i)
        write_json(DATA / "modules" / f"a4-s{i + 1}.json", module_to_dict(s, ref))
        p = projective_module(a4, i)
        write_json(DATA / "modules" / f"a4-p{i + 1}.json", module_to_dict(p, ref))
    ses = ses_from_mono(socle(p2)[1])
    write_json(DATA / "sequences" / "a4-s1-p2-s2.json", sequence_to_dict(ses, ref))
    write_json(DATA / "subcategories" / "a4-add-s1.json",
               {"format": "cotiltkit-subcategory", "version": 1, "algebra": ref, "name": "add S1",
                "modules": ["../modules/a4-s1.json"], "submodule_closed": True})


def freeze_gamma() -> dict[str, int]:
    census = {}
    for key, cfg_name in GAMMA_CONFIGS.items():
        path = find_config(cfg_name)
        cfg = load_config(path)
        target = DATA / "fixtures" / f"{key}.json"
        if target.exists():
            target.unlink()
        cap: dict = {}
        rep = PIPELINES[cfg["pipeline"]](path, QQ, 0, capture=cap)
        pres, gfix = cap["presentation"], cap["gamma_fixtures"]
        write_json(DATA / "algebras" / f"{key}.json", algebra_to_dict(pres.algebra))
        write_json(target, fixtures_to_dict(gfix, f"../algebras/{key}.json", True,
                                            "enumerated from the computed presentation; census is implementation-derived"))
        census[key] = len(gfix)
        print(f"{key}: {len(gfix)} indecomposables; pipeline over QQ {'PASS' if rep.ok else 'FAIL'}")
    return census


def write_manifest(census: dict[str, int]) -> None:
    files = sorted(p for p in DATA.rglob("*") if p.is_file() and p.name != "manifest.json")
    manifest = {
        "format": "cotiltkit-manifest", "version": 1,
        "census": census,
        "census_note": "counts for gamma-* lists are implementation-derived regression data",
        "sha256": {str(p.relative_to(DATA)): sha256_file(p) for p in files},
    }
    (DATA / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--skip-gamma", action="store_true", help="only regenerate base algebras and modules")
    args = ap.parse_args()
    census = freeze_base()
    freeze_examples()
    if not args.skip_gamma:
        census.update(freeze_gamma())
    else:
        old = json.loads((DATA / "manifest.json").read_text()).get("census", {})
        census.update({k: v for k, v in old.items() if k.startswith("gamma")})
    write_manifest(census)
    print(json.dumps(census, sort_keys=True))


if __name__ == "__main__":
    main()
