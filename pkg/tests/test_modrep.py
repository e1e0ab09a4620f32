import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from cotiltkit.algebra import Quiver, build_based_algebra
from cotiltkit.exactlin import QQ
from cotiltkit.modrep import (
    AlgebraMismatchError, ModuleError, ModuleRep, cokernel, decompose, direct_sum, dual_regular_module,
    dualize, find_iso_class, hom_dim, identity_map, image, injective_module, is_indecomposable,
    is_injective, is_isomorphic, is_projective, kernel, layer_name, projective_cover, projective_module,
    radical, simple_module, socle, split_indecomposables, top,
)


def _base_change(m: ModuleRep, rng) -> ModuleRep:
    f = m.field
    ts = []
    for d in m.dims:
        while True:
            t = f.random(rng, d * d).reshape(d, d) if d else f.zeros(0, 0)
            if d == 0 or f.rank(t) == d:
                break
        ts.append(t)
    q = m.algebra.quiver
    maps = [f.matmul(f.matmul(ts[a.target], m.maps[k]), f.inverse(ts[a.source]) if m.dims[a.source] else ts[a.source])
            for k, a in enumerate(q.arrows)]
    return ModuleRep(m.algebra, m.dims, maps, name="scrambled")


def test_projectives_and_injectives(a4):
    alg, byname, _ = a4
    for i in range(4):
        p = projective_module(alg, i)
        assert list(p.dims) == [1] * (i + 1) + [0] * (3 - i)
        assert is_projective(p) and is_indecomposable(p)
        inj = injective_module(alg, i)
        assert list(inj.dims) == [0] * i + [1] * (4 - i)
        assert is_injective(inj)
    assert not is_projective(byname["2"]) and not is_injective(byname["2"])


def test_hom_from_projective_is_vertex_dimension(a4):
    alg, _, mods = a4
    for i in range(4):
        p = projective_module(alg, i)
        for m in mods:
            assert hom_dim(p, m) == m.dims[i]


def test_radical_socle_top(nakayama):
    alg, byname, _ = nakayama
    p = projective_module(alg, 0)
    assert layer_name(p) == "1/3/2/1"
    r, inc = radical(p)
    assert r.total_dim == 3 and inc.is_injective()
    s, sinc = socle(p)
    assert s.total_dim == 1 and s.dims[0] == 1
    t = top(p)
    assert t.module.total_dim == 1 and t.proj.is_surjective()


def test_kernel_image_cokernel(a4):
    alg, byname, _ = a4
    cover, pi = projective_cover(byname["3/2"])
    k, kinc = kernel(pi)
    im = image(pi)
    c = cokernel(pi)
    assert k.total_dim + im.module.total_dim == cover.module.total_dim
    assert c.module.total_dim == 0
    assert (pi @ kinc).is_zero()


def test_dualize_round_trip(nakayama):
    _, _, mods = nakayama
    for m in mods:
        dd = dualize(dualize(m))
        assert dd.algebra is m.algebra and is_isomorphic(dd, m)


def test_dual_regular_is_sum_of_injectives(a4):
    alg = a4[0]
    dl = dual_regular_module(alg)
    assert sorted(x.dims for x in dl.summands) == sorted(injective_module(alg, i).dims for i in range(4))


def test_relations_checked_on_construction():
    sq = Quiver.from_arrows(4, [("a", 0, 1), ("b", 1, 3), ("c", 0, 2), ("d", 2, 3)])
    alg = build_based_algebra(sq, ["a*b - c*d"], QQ)
    one = QQ.array([[1]])
    ModuleRep(alg, [1, 1, 1, 1], [one, one, one, one])
    with pytest.raises(ModuleError):
        ModuleRep(alg, [1, 1, 1, 1], [one, one, one, QQ.array([[0]])])
    with pytest.raises(ModuleError):
        ModuleRep(alg, [1, 1, 1, 1], [one, one, one])


def test_algebra_mismatch(a4, nakayama):
    with pytest.raises(AlgebraMismatchError):
        hom_dim(simple_module(a4[0], 0), simple_module(nakayama[0], 0))


def test_split_gives_complete_idempotent_family(a4):
    _, _, mods = a4
    m = direct_sum(mods[:5]).module
    pieces = split_indecomposables(m, seed=3)
    assert len(pieces) == 5
    total = pieces[0].inclusion @ pieces[0].projection
    for s in pieces[1:]:
        total = total + s.inclusion @ s.projection
    assert total.is_iso() and (total - identity_map(m)).is_zero()


@given(picks=st.lists(st.integers(0, 11), min_size=1, max_size=4), seed=st.integers(0, 2 ** 16))
@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
def test_decompose_recovers_scrambled_sum(nakayama, picks, seed):
    _, _, mods = nakayama
    rng = np.random.default_rng(seed)
    m = _base_change(direct_sum([mods[k] for k in picks]).module, rng)
    got: dict[int, int] = {}
    for x, mult in decompose(m, seed=seed):
        k = find_iso_class(x, mods)
        assert k is not None
        got[k] = got.get(k, 0) + mult
    want: dict[int, int] = {}
    for k in picks:
        want[k] = want.get(k, 0) + 1
    assert got == want


def test_fixture_names_are_layer_names(a4, nakayama):
    for _, _, mods in (a4, nakayama):
        for m in mods:
            assert m.name == layer_name(m)
            assert is_indecomposable(m)
