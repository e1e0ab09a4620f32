import json

import pytest

from cotiltkit.algebra import build_based_algebra, cyclic_nakayama, path_algebra_linear, Quiver
from cotiltkit.exactlin import GF, QQ
from cotiltkit.fileformats import (
    FormatError, algebra_from_dict, algebra_to_dict, load_fixtures, load_map, load_module, load_sequence,
    load_subcategory, matrix_from_json, matrix_to_json, module_from_dict, module_to_dict, sha256_file, write_json,
)
from cotiltkit.fixtures import almost_split_sequence, enumerate_indecomposables
from cotiltkit.modrep import hom_space, is_indecomposable
from cotiltkit.pipeline import validate_fixtures

from conftest import DATA, data_path

MANIFEST = json.loads(data_path("manifest.json").read_text())


@pytest.mark.parametrize("rel", sorted(MANIFEST["sha256"]))
def test_manifest_checksums(rel):
    assert sha256_file(DATA / rel) == MANIFEST["sha256"][rel]


def test_manifest_covers_every_data_file():
    files = {str(p.relative_to(DATA)) for p in DATA.rglob("*.json") if p.name != "manifest.json"}
    assert files <= set(MANIFEST["sha256"])


@pytest.mark.parametrize("key", sorted(MANIFEST["census"]))
def test_fixture_lists_load_and_match_census(key):
    alg, mods, meta = load_fixtures(data_path("fixtures", f"{key}.json"), GF(1009))
    assert len(mods) == MANIFEST["census"][key] == meta["census"]
    assert meta["complete"]
    assert validate_fixtures(mods) == []


def test_census_table():
    c = MANIFEST["census"]
    assert (c["a4"], c["a5"], c["nakayama-3-4"]) == (10, 15, 12)


@pytest.mark.parametrize("make", [lambda: path_algebra_linear(3), lambda: cyclic_nakayama(2, 3, GF(5))])
def test_algebra_round_trip(make):
    alg = make()
    back = algebra_from_dict(json.loads(json.dumps(algebra_to_dict(alg))))
    assert back.dimension == alg.dimension and back.relation_strings() == alg.relation_strings()


def test_module_round_trip(nakayama):
    alg, _, mods = nakayama
    for m in mods:
        back = module_from_dict(json.loads(json.dumps(module_to_dict(m))), alg)
        assert back.same_data(m)


def test_fraction_entries():
    m = QQ.array([[1, "1/3"], [-2, "-5/7"]])
    data = matrix_to_json(m, QQ)
    assert data == [[1, "1/3"], [-2, "-5/7"]]
    assert (matrix_from_json(data, 2, 2, QQ) == m).all()
    with pytest.raises(FormatError):
        matrix_from_json(data, 3, 2, QQ)


def test_bad_documents(tmp_path, a4):
    alg = a4[0]
    with pytest.raises(FormatError):
        module_from_dict({"dims": [1, 0, 0]}, alg)
    with pytest.raises(FormatError):
        module_from_dict({"dims": [1, 1, 0, 0], "maps": {"zz": [[1]]}}, alg)
    bad = tmp_path / "m.json"
    write_json(bad, {"format": "cotiltkit-algebra", "vertices": 1})
    with pytest.raises(FormatError):
        load_module(bad)
    broken = tmp_path / "b.json"
    broken.write_text("{not json")
    with pytest.raises(FormatError):
        load_module(broken)
    with pytest.raises(FormatError):
        algebra_from_dict({"format": "cotiltkit-algebra", "vertices": 2, "arrows": [["a", 1, 3]]})


def test_example_files_load():
    ses = load_sequence(data_path("sequences", "a4-s1-p2-s2.json"))
    assert ses.is_valid() and not ses.is_split()
    sub = load_subcategory(data_path("subcategories", "a4-add-s1.json"))
    assert [m.name for m in sub.indecomposables] == ["S1"]
    m = load_module(data_path("modules", "a4-dlambda.json"))
    assert m.total_dim == 10


def test_map_file(tmp_path):
    src = data_path("modules", "a4-p1.json")
    tgt = data_path("modules", "a4-p2.json")
    doc = {"format": "cotiltkit-map", "version": 1, "algebra": str(data_path("algebras", "a4.json")),
           "source": str(src), "target": str(tgt), "mats": {"1": [[1]]}}
    write_json(tmp_path / "f.json", doc)
    fm = load_map(tmp_path / "f.json")
    assert fm.is_injective() and not fm.is_surjective()


def test_enumeration_small_cases():
    en = enumerate_indecomposables(path_algebra_linear(3, GF(1009)))
    assert en.complete and len(en.modules) == 6
    sq = Quiver.from_arrows(4, [("a", 0, 1), ("b", 1, 3), ("c", 0, 2), ("d", 2, 3)])
    comm = build_based_algebra(sq, ["a*b - c*d"], GF(1009))
    en2 = enumerate_indecomposables(comm)
    assert en2.complete and all(is_indecomposable(m) for m in en2.modules)
    assert len(en2.modules) == 11


def test_almost_split_sequence(a4):
    _, byname, _ = a4
    s = almost_split_sequence(byname["2"])
    assert s.is_valid() and not s.is_split()
    assert s.left.dims == byname["1"].dims
    # right almost split: every non-retraction into S2 factors through the middle term
    from cotiltkit.homological import lift_through_epi
    for x in ("2/1", "3/2/1"):
        for h in hom_space(byname[x], byname["2"]).basis:
            assert lift_through_epi(h, s.proj) is not None
