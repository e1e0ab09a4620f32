from cotiltkit.modrep import direct_sum, injective_module, projective_module
from cotiltkit.relexact import sub_closure
from cotiltkit.tilting import (
    FAIL, PASS, UNDETERMINED, gorenstein_projective, is_cotilting, is_self_orthogonal, is_wakamatsu_tilting,
    module_injective_dimension, perp_fixture_list, perp_membership, torsionfree_class_check, xw_membership,
)


def test_dual_regular_is_zero_cotilting(a4, a4_dlambda):
    rep = is_cotilting(a4_dlambda)
    assert rep.verdict == PASS and rep.cotilting_degree == 0
    assert rep.hat_witness.is_exact()


def test_regular_of_self_injective_is_cotilting(nakayama):
    alg = nakayama[0]
    lam = [projective_module(alg, i) for i in range(3)]
    assert is_cotilting(lam).cotilting_degree == 0


def test_a4_regular_module_is_one_cotilting(a4):
    alg = a4[0]
    lam = [projective_module(alg, i) for i in range(4)]
    rep = is_cotilting(lam)
    assert rep.verdict == PASS and rep.cotilting_degree == 1
    assert is_cotilting(lam, n=0).verdict == FAIL


def test_too_few_summands_fail(a4):
    _, byname, _ = a4
    rep = is_cotilting(byname["1"])
    assert rep.self_orthogonality.ok and rep.verdict == FAIL


def test_not_self_orthogonal(a4):
    _, byname, _ = a4
    so = is_self_orthogonal([byname["2"], byname["1"]], 2)
    assert not so.ok and so.table[1] == 1


def test_infinite_injective_dimension_is_undetermined(nakayama):
    _, byname, _ = nakayama
    assert module_injective_dimension(byname["1"], bound=4) is None
    assert is_cotilting(byname["1"], bound=4).verdict == UNDETERMINED


def test_perp_membership(a4, a4_dlambda):
    alg, byname, mods = a4
    assert perp_membership(byname["2"], a4_dlambda, 0).verdict
    lam = direct_sum([projective_module(alg, i) for i in range(4)]).module
    pm = perp_membership(byname["2"], lam)
    assert not pm.verdict and pm.ext_dims == {1: 1}
    assert len(perp_fixture_list(mods, lam)) == 4


def test_gorenstein_projective_verdicts(a4, nakayama):
    _, byname, _ = a4
    r = gorenstein_projective(byname["2"])
    assert r.verdict == FAIL and r.reason
    assert gorenstein_projective(byname["3/2/1"]).verdict == PASS
    _, nbyname, _ = nakayama
    res = gorenstein_projective(nbyname["1"])
    assert res.verdict == PASS and res.period_start is not None


def test_xw_depth_exhaustion(nakayama):
    alg, byname, _ = nakayama
    lam = [projective_module(alg, i) for i in range(3)]
    assert xw_membership(byname["1"], lam, depth=1).verdict == UNDETERMINED


def test_wakamatsu(a4):
    alg, byname, _ = a4
    assert is_wakamatsu_tilting([projective_module(alg, i) for i in range(4)]).verdict == PASS
    assert is_wakamatsu_tilting([byname["1"]]).verdict == FAIL


def test_torsionfree_class(a4):
    alg, byname, mods = a4
    sub = [mods[k] for k in sub_closure([byname["3/2/1"]], mods)]
    assert torsionfree_class_check(sub, mods).ok
    injs = [injective_module(alg, i) for i in range(4)]
    rep = torsionfree_class_check(injs, mods)
    assert not rep.ok and rep.submodule_failures
