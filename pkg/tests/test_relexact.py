import pytest

from cotiltkit.algebra import path_algebra_linear
from cotiltkit.exactlin import GF
from cotiltkit.fileformats import load_fixtures
from cotiltkit.homological import Ext1Space, ext_dim, tau_minus
from cotiltkit.modrep import direct_sum, find_iso_class, hom_space, is_isomorphic, simple_module
from cotiltkit.relexact import (
    CertificationError, ExactKind, ExactStructureSpec, HypothesisError, SubcatSpec, closure_check,
    enumerate_subrepresentations, is_cogenerated_by, is_conflation, is_from_c, is_generated_by, is_to_c,
    left_approx, n_kernels_check, quotient_hom, relative_conflations, relative_ext1_dim,
    relative_injectives, relative_injectives_expected, relative_projectives, relative_projectives_expected,
    right_approx, sub_closure, zero_kernel_factorization,
)

from conftest import data_path


@pytest.fixture(scope="module")
def nak_c(nakayama):
    alg, byname, fix = nakayama
    c = [fix[k] for k in sub_closure([byname["1"]], fix)]
    sub = SubcatSpec(c, submodule_closed=True, name="Sub S1")
    return alg, byname, fix, sub


def test_exact_kind_parse():
    assert ExactKind.parse("FromC") is ExactKind.FROM_C
    assert ExactKind.parse("both-c") is ExactKind.BOTH_C
    with pytest.raises(ValueError):
        ExactKind.parse("sideways")
    with pytest.raises(ValueError):
        ExactStructureSpec(ExactKind.TO_C)


def test_sub_of_simple_is_itself(nak_c):
    _, byname, _, sub = nak_c
    assert [m.name for m in sub.indecomposables] == ["1"]
    assert sub.contains(direct_sum([byname["1"], byname["1"]]).module)
    assert not sub.contains(byname["2/1"])


def test_relative_ext_is_a_subspace(nak_c):
    _, _, fix, sub = nak_c
    specs = {k: ExactStructureSpec(k, sub) for k in (ExactKind.FROM_C, ExactKind.TO_C, ExactKind.BOTH_C)}
    for x in fix:
        for l in fix:
            full = ext_dim(x, l, 1)
            d = {k: relative_ext1_dim(x, l, s) for k, s in specs.items()}
            assert d[ExactKind.BOTH_C] <= min(d[ExactKind.FROM_C], d[ExactKind.TO_C])
            assert max(d.values()) <= full


def test_relative_conflations_are_certified(nak_c):
    _, byname, fix, sub = nak_c
    spec = ExactStructureSpec(ExactKind.BOTH_C, sub)
    x = byname["2/1"]
    for l in fix:
        seqs = relative_conflations(x, l, spec)
        assert len(seqs) == relative_ext1_dim(x, l, spec)
        assert all(is_conflation(s, spec) for s in seqs)


def test_full_structure_accepts_every_short_exact_sequence(a4):
    _, byname, _ = a4
    (s,) = Ext1Space(byname["2"], byname["1"]).basis_sequences()
    assert is_conflation(s, ExactStructureSpec(ExactKind.FULL))
    sub = SubcatSpec([byname["2"]])
    # Hom(S2, -) does not lift the identity of S2 through P2 -> S2
    assert not is_from_c(s, sub.indecomposables)
    assert is_to_c(s, sub.indecomposables)


def test_relative_projectives_match_formula(nak_c):
    alg, _, fix, sub = nak_c
    spec = ExactStructureSpec(ExactKind.BOTH_C, sub)
    got_p = [fix[k] for k in relative_projectives(fix, spec)]
    exp_p = relative_projectives_expected(spec, alg)
    assert len(got_p) == len(exp_p) and all(find_iso_class(x, got_p) is not None for x in exp_p)
    got_i = [fix[k] for k in relative_injectives(fix, spec)]
    exp_i = relative_injectives_expected(spec, alg)
    assert len(got_i) == len(exp_i) and all(find_iso_class(x, got_i) is not None for x in exp_i)
    assert any(is_isomorphic(x, tau_minus(sub.indecomposables[0])) for x in got_p)


def test_expected_formula_hypotheses(nak_c):
    _, byname, _, _ = nak_c
    sub = SubcatSpec([byname["2/1"]], submodule_closed=False)
    with pytest.raises(HypothesisError):
        relative_injectives_expected(ExactStructureSpec(ExactKind.BOTH_C, sub))
    with pytest.raises(HypothesisError):
        relative_projectives_expected(ExactStructureSpec(ExactKind.TO_C, sub))


def test_approximations(nak_c):
    _, byname, _, sub = nak_c
    r = right_approx(byname["2/1"], sub)
    l = left_approx(byname["2/1"], sub)
    assert r.target is byname["2/1"] and l.source is byname["2/1"]


def test_quotient_hom_kills_maps_through_c(nak_c):
    _, byname, fix, sub = nak_c
    q = quotient_hom(byname["1/3"], byname["2/1"], sub)  # image S1
    assert q.hom.dim == 1 and q.ideal_dim == 1 and q.dim == 0
    for x in fix:
        for y in fix:
            qh = quotient_hom(x, y, sub)
            assert qh.dim + qh.ideal_dim == hom_space(x, y).dim
            for b in qh.ideal_basis:
                assert qh.in_ideal(b)


def test_zero_kernels_on_nakayama(nak_c):
    _, _, fix, sub = nak_c
    spec = ExactStructureSpec(ExactKind.BOTH_C, sub)
    nonzero = [x for x in fix if not sub.contains(x)][:4]
    mors = [(f"{x.name}->{y.name}#{k}", m) for x in nonzero for y in nonzero
            for k, m in enumerate(quotient_hom(x, y, sub).coset_basis)]
    rep = n_kernels_check(mors, spec, 0, fix)
    assert rep.total == len(mors) and rep.ok
    fac = zero_kernel_factorization(mors[0][1], sub, fix)
    assert fac.ok and fac.conflation.is_valid()


def test_closure_tags_a5_negative_control():
    alg, fix, _ = load_fixtures(data_path("fixtures", "a5.json"))
    byname = {m.name: m for m in fix}
    sub = SubcatSpec([byname["4/3/2"]])
    rep = closure_check(sub, fix)
    assert not rep.submodule_closed and rep.image_closed
    assert "3/2" in rep.witnesses["submodules_outside"]
    with pytest.raises(CertificationError):
        closure_check(SubcatSpec([byname["4/3/2"]], submodule_closed=True), fix)


def test_cogeneration_and_generation(a4):
    _, byname, _ = a4
    assert is_cogenerated_by(byname["2"], [byname["3/2"]])
    assert not is_cogenerated_by(byname["3"], [byname["3/2"]])
    assert is_generated_by(byname["3"], [byname["3/2"]])


def test_subrepresentation_enumeration_counts():
    alg = path_algebra_linear(2, GF(2))
    s1 = simple_module(alg, 0)
    two = direct_sum([s1, s1]).module
    # subspaces of F_2^2: zero, three lines, whole space
    assert len(enumerate_subrepresentations(two)) == 5
    assert len(enumerate_subrepresentations(simple_module(alg, 1))) == 2
    with pytest.raises(ValueError):
        enumerate_subrepresentations(simple_module(path_algebra_linear(2), 0))
