from cotiltkit.endfunctor import (
    end_algebra, fully_faithful_check, gabriel_quiver, hom_functor, hom_functor_map, stable_end_algebra,
)
from cotiltkit.fileformats import same_presentation
from cotiltkit.modrep import hom_space, injective_module, projective_module
from cotiltkit.relexact import SubcatSpec

from conftest import data_path


def _arrows(pres):
    return sorted((a.source + 1, a.target + 1) for a in gabriel_quiver(pres).arrows)


def test_end_of_regular_recovers_the_algebra(a4):
    alg = a4[0]
    pres = end_algebra([projective_module(alg, i) for i in range(4)])
    assert pres.dimension == alg.dimension
    assert _arrows(pres) == sorted((a.source + 1, a.target + 1) for a in alg.quiver.arrows)
    assert pres.verify_multiplication()


def test_five_summand_generator(a4):
    _, byname, _ = a4
    g = [byname[n] for n in ("1", "2/1", "3/2/1", "4/3/2/1", "3")]
    pres = end_algebra(g)
    assert pres.dimension == 12
    assert _arrows(pres) == [(2, 1), (3, 2), (4, 3), (5, 3)]
    assert pres.algebra.relation_strings() == ["g4*g2"]
    assert pres.relations_recovered and pres.verify_multiplication()
    import json
    frozen = json.loads(data_path("algebras", "gamma-a4-main2.json").read_text())
    assert same_presentation(pres.algebra, frozen)


def test_radical_layers(a4):
    _, byname, _ = a4
    pres = end_algebra([byname["1"], byname["2/1"], byname["3/2/1"]])
    table = pres.radical_layer_table()
    assert table[(2, 0)] == [1, 1, 1]
    assert pres.nilpotency == 3


def test_stable_end_algebra(nakayama):
    _, byname, _ = nakayama
    sub = SubcatSpec([byname["1"]], submodule_closed=True)
    g = [byname[n] for n in ("1/3/2/1", "2/1/3/2", "3/2/1/3", "2")]
    pres = stable_end_algebra(g, sub, labels=["delta", "epsilon", "alpha", "gamma", "beta"])
    assert pres.dimension == 14
    assert _arrows(pres) == [(1, 3), (2, 1), (2, 4), (3, 2), (4, 2)]
    assert [a.label for a in pres.algebra.quiver.arrows] == ["delta", "epsilon", "alpha", "gamma", "beta"]
    assert pres.verify_multiplication()


def test_hom_functor_dimensions(a4):
    alg, _, mods = a4
    pres = end_algebra([projective_module(alg, i) for i in range(4)])
    for x in mods:
        assert hom_functor(pres, x).dims == x.dims


def test_fully_faithful_on_generator(a4):
    _, byname, mods = a4
    g = [byname[n] for n in ("1", "2/1", "3/2/1", "4/3/2/1", "3")]
    pres = end_algebra(g)
    rep = fully_faithful_check(pres, mods)
    assert rep.ok and len(rep.rows) == 100


def test_not_full_without_generator(a4):
    alg, byname, mods = a4
    pres = end_algebra([injective_module(alg, i) for i in range(4)])
    rep = fully_faithful_check(pres, mods)
    assert not rep.ok


def test_functor_respects_composition(a4):
    _, byname, _ = a4
    g = [byname[n] for n in ("1", "2/1", "3/2/1", "4/3/2/1", "3")]
    pres = end_algebra(g)
    x, y, z = byname["2/1"], byname["3/2/1"], byname["3/2"]
    fx, fy, fz = (hom_functor(pres, m) for m in (x, y, z))
    for a in hom_space(x, y).basis:
        for b in hom_space(y, z).basis:
            lhs = hom_functor_map(pres, b @ a, fx, fz)
            rhs = hom_functor_map(pres, b, fy, fz) @ hom_functor_map(pres, a, fx, fy)
            assert (lhs - rhs).is_zero()
