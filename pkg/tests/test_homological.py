import pytest

from cotiltkit.homological import (
    Ext1Space, ResolutionDepthError, ab_approximation, ext_dim, ext_table, hat_membership,
    injective_dimension, minimal_left_approximation, minimal_right_approximation, min_inj_resolution,
    min_proj_resolution, projective_dimension, pullback, pushout, split_sequence, tau, tau_minus,
)
from cotiltkit.modrep import (
    hom_dim, injective_module, is_isomorphic, layer_name, projective_module, simple_module,
)


def test_resolutions_over_a4(a4):
    alg, byname, mods = a4
    for m in mods:
        res = min_proj_resolution(m)
        assert res.is_exact() and res.is_minimal()
        assert res.length == projective_dimension(m) <= 1
        ires = min_inj_resolution(m)
        assert ires.is_exact() and ires.length == injective_dimension(m) <= 1
    assert projective_dimension(byname["3/2"]) == 1
    assert projective_dimension(byname["3/2/1"]) == 0


def test_self_injective_has_infinite_dimensions(nakayama):
    _, byname, _ = nakayama
    assert projective_dimension(byname["1"], bound=6) is None
    assert injective_dimension(byname["1"], bound=6) is None
    assert injective_dimension(byname["1/3/2/1"]) == 0


def test_hereditary_ar_formula(a4):
    # for hereditary algebras Ext^1(X, Y) is dual to Hom(Y, tau X)
    _, _, mods = a4
    for x in mods:
        tx = tau(x)
        for y in mods:
            assert ext_dim(x, y, 1) == hom_dim(y, tx)


def test_tau_of_simples(a4):
    alg = a4[0]
    for i in range(1, 4):
        assert layer_name(tau(simple_module(alg, i))) == str(i)
    assert tau(simple_module(alg, 0)).total_dim == 0
    assert tau_minus(simple_module(alg, 3)).total_dim == 0


def test_tau_is_periodic_on_nakayama(nakayama):
    _, _, mods = nakayama
    for m in mods:
        if m.total_dim < 4:
            assert tau(m).dims in {x.dims for x in mods}
            assert is_isomorphic(tau_minus(tau(m)), m)


def test_ext_table_rows(nakayama):
    _, byname, _ = nakayama
    tab = ext_table(byname["1"], byname["3"], 3)
    assert len(tab.dims) == 4 and tab.dims[0] == hom_dim(byname["1"], byname["3"])
    assert tab.rows()[1][2] == 1


def test_ext1_classify_round_trip(a4):
    _, byname, _ = a4
    e = Ext1Space(byname["2"], byname["1"])
    assert e.dim == 1
    (s,) = e.basis_sequences()
    assert s.is_valid() and not s.is_split()
    assert list(e.classify(s)) == [1]
    assert e.is_zero_class(e.cocycle([0]))


def test_pushout_and_pullback_stay_exact(a4):
    _, byname, _ = a4
    (s,) = Ext1Space(byname["3/2"], byname["1"]).basis_sequences()
    z = byname["2/1"]
    from cotiltkit.modrep import hom_space
    for g in hom_space(byname["1"], z).basis:
        assert pushout(s, g).is_valid()
    for h in hom_space(z, byname["3/2"]).basis:
        assert pullback(s, h).is_valid()
    assert split_sequence(byname["1"], byname["2"]).is_split()


def test_approximations_by_projectives(a4):
    alg, byname, _ = a4
    projs = [projective_module(alg, i) for i in range(4)]
    injs = [injective_module(alg, i) for i in range(4)]
    ap = minimal_right_approximation(byname["3/2"], projs)
    assert ap.map.is_surjective() and ap.sum.module.total_dim == 3
    al = minimal_left_approximation(byname["3/2"], injs)
    assert al.map.is_injective() and al.sum.module.total_dim == 3


def test_hat_membership_sides(nakayama):
    alg, byname, _ = nakayama
    projs = [projective_module(alg, i) for i in range(3)]
    w = hat_membership(byname["1/3/2/1"], projs)
    assert w.ok and w.length == 0
    bad = hat_membership(byname["1"], projs, depth=3)
    assert not bad.ok and "depth" in bad.reason
    with pytest.raises(ValueError):
        hat_membership(byname["1"], projs, side="sideways")


def test_ab_approximation_depth_error(nakayama):
    alg, byname, mods = nakayama
    projs = [projective_module(alg, i) for i in range(3)]
    with pytest.raises(ResolutionDepthError):
        # simple modules have no finite resolution by projectives here
        ab_approximation(byname["1"], projs, projs, depth=2)
