"""Numbered acceptance criteria; the terminal summary prints one verdict line per criterion."""

from __future__ import annotations

import time

import numpy as np
import pytest

from cotiltkit.algebra import path_algebra_linear
from cotiltkit.endfunctor import gabriel_quiver
from cotiltkit.exactlin import GF, QQ
from cotiltkit.fileformats import load_fixtures
from cotiltkit.homological import (
    ab_approximation, ext_dim, ext_dim_injective, hat_membership, in_add, indecomposable_gens,
    injective_dimension, is_hom_exact_from, is_hom_exact_into, lift_through_epi, tau, tau_minus,
)
from cotiltkit.modrep import (
    hom_space, injective_module, is_injective, is_isomorphic, is_projective, projective_module,
)
from cotiltkit.pipeline import PIPELINES, find_config, fixture_conflations, run_pipeline
from cotiltkit.relexact import (
    ExactKind, ExactStructureSpec, SubcatSpec, axiom_sweep, is_conflation, is_from_c, is_to_c,
    relative_conflations, sub_closure,
)
from cotiltkit.tilting import PASS, gorenstein_projective, module_injective_dimension, perp_membership

from conftest import data_path

FIXTURE_FILES = ["a4", "a5", "nakayama-3-4", "gamma-a4-main2", "gamma-a4-auslander",
                 "gamma-nakayama-main1", "gamma-a4-apr"]


def _timed(config):
    t0 = time.perf_counter()
    rep = run_pipeline(config)
    return rep, time.perf_counter() - t0


def _captured(config):
    cap: dict = {}
    path = find_config(config)
    which = "main2" if "main2" in config else "main1"
    rep = PIPELINES[which](path, None, None, capture=cap)
    return rep, cap


@pytest.mark.acceptance(1, "main2 on A4 with the five-summand generator")
def test_criterion_1_main2_a4():
    rep, secs = _timed("a4-main2")
    assert rep.ok, rep.to_text()
    assert rep.stage("cotilting").data["injective_dimension"] == 2
    ff = rep.stage("fully faithful")
    assert ff.data["pairs"] == 100 and ff.data["failures"] == 0
    perp = rep.stage("perp census")
    assert perp.data["census"] == 10 == rep.stage("inputs").data["fixtures"]
    assert secs < 10


@pytest.mark.acceptance(2, "main1 on Nakayama(3,4) with C = add S")
def test_criterion_2_main1_nakayama():
    rep, secs = _timed("nakayama-main1")
    assert rep.ok, rep.to_text()
    assert rep.stage("inputs").data["fixtures"] == 12
    assert "quotient has 11 nonzero indecomposables" in rep.stage("0-kernels").lines
    assert rep.stage("0-kernels").ok
    assert rep.stage("relative projectives").ok
    gp = rep.stage("gamma presentation").data
    assert gp["vertices"] == 4 and len(gp["arrows"]) == 5
    assert rep.stage("cotilting").data["injective_dimension"] == 1
    assert rep.stage("perp census").data["census"] == 11
    assert secs < 30


@pytest.mark.acceptance(3, "negative control: A5 with C = add(4/3/2) lacks 0-kernels")
def test_criterion_3_negative_control():
    rep = run_pipeline("a5-add-main1")
    clo = rep.stage("closure")
    assert clo.data["image_closed"] and not clo.data["submodule_closed"]
    zk = rep.stage("0-kernels")
    assert not zk.ok
    assert zk.data["failures"], "failure must name at least one morphism"
    assert any(ln.startswith("failure ") and "->" in ln for ln in zk.lines)
    assert not rep.ok


def _reflect_at(arrows: list[tuple[int, int]], k: int) -> list[tuple[int, int]]:
    """Hand reflection rule: reverse every arrow incident to vertex k."""
    return sorted((t, s) if k in (s, t) else (s, t) for s, t in arrows)


@pytest.mark.acceptance(4, "APR instance: A4 at the simple projective vertex")
def test_criterion_4_apr():
    rep, cap = _captured("a4-apr-main1")
    assert rep.ok, rep.to_text()
    a4 = path_algebra_linear(4, QQ)
    lam = [(a.source + 1, a.target + 1) for a in a4.quiver.arrows]
    sinks = [v for v in range(1, 5) if all(s != v for s, _ in lam)]
    assert sinks == [1]
    expected = _reflect_at(lam, 1)
    # vertex order of Gamma: tau^- S1 first, then P2, P3, P4, matching vertices of A4
    q = gabriel_quiver(cap["presentation"])
    got = sorted((a.source + 1, a.target + 1) for a in q.arrows)
    assert got == expected
    assert cap["presentation"].algebra.relation_strings() == []


@pytest.mark.acceptance(5, "homological property suite")
def test_criterion_5_homological_properties():
    failures = []
    for key in FIXTURE_FILES:
        _, mods, _ = load_fixtures(data_path("fixtures", f"{key}.json"), GF(1009))
        for x in mods:
            if is_projective(x) and tau(x).total_dim:
                failures.append(f"{key}: tau {x.name} != 0")
            if is_injective(x) and tau_minus(x).total_dim:
                failures.append(f"{key}: tau^- {x.name} != 0")
            if not is_projective(x) and not is_isomorphic(tau_minus(tau(x)), x):
                failures.append(f"{key}: tau^- tau {x.name} not iso")
        for x in mods:
            for y in mods:
                for i in range(5):
                    if ext_dim(x, y, i) != ext_dim_injective(x, y, i):
                        failures.append(f"{key}: Ext^{i}({x.name}, {y.name})")
    rng = np.random.default_rng(20240611)
    for f in (QQ, GF(1009)):
        for _ in range(1000):
            r, c = (int(v) for v in rng.integers(1, 8, size=2))
            a = f.random(rng, r * c).reshape(r, c)
            if rng.random() < 0.3 and r > 1:
                a[-1] = f.reduce(a[0] * f(int(rng.integers(1, 5))))
            k = f.kernel_basis(a)
            if f.rank(a) + k.shape[1] != c or not f.is_zero(f.matmul(a, k)):
                failures.append(f"rank-nullity over {f}")
    assert not failures, failures[:10]


def _sweep(fix, spec):
    gens = spec.subcat.indecomposables
    seqs = [s for _, s in fixture_conflations(fix)]
    meet_bad = [k for k, s in enumerate(seqs)
                if is_conflation(s, ExactStructureSpec(ExactKind.BOTH_C, spec.subcat))
                != (is_from_c(s, gens) and is_to_c(s, gens))]
    cert = [s for s in seqs if is_conflation(s, spec)]
    maps_into = {k: [b for x in fix for b in hom_space(x, s.right).basis] for k, s in enumerate(cert)}
    maps_from = {k: [b for x in fix for b in hom_space(s.left, x).basis] for k, s in enumerate(cert)}
    compose = [t for s in cert for l in fix for t in relative_conflations(s.middle, l, spec)]
    assert compose and all(any(t.right is s.middle for s in cert) for t in compose)
    rep = axiom_sweep(cert, maps_into, maps_from, spec, compose_with=compose)
    ar_bad = [(k, x.name) for k, s in enumerate(seqs) for x in fix
              if is_hom_exact_into(s, x) != is_hom_exact_from(s, tau_minus(x))]
    return rep, meet_bad, ar_bad


@pytest.mark.acceptance(6, "exact-structure axiom suite on both example fixtures")
def test_criterion_6_axioms(nakayama, a4):
    _, byname, fix = nakayama
    c = [fix[k] for k in sub_closure([byname["1"]], fix)]
    spec = ExactStructureSpec(ExactKind.BOTH_C, SubcatSpec(c, submodule_closed=True, name="Sub S"))
    rep1, meet1, ar1 = _sweep(fix, spec)

    _, byname, fix = a4
    g = [byname[n] for n in ("1", "2/1", "3/2/1", "4/3/2/1", "3")]
    spec2 = ExactStructureSpec(ExactKind.FROM_C, SubcatSpec(g, name="add G"))
    rep2, meet2, ar2 = _sweep(fix, spec2)

    for rep in (rep1, rep2):
        assert rep.checked["pullback"] and rep.checked["pushout"] and rep.checked["composite"]
    assert rep1.ok and rep2.ok, rep1.failures + rep2.failures
    assert not meet1 and not meet2
    assert not ar1 and not ar2


@pytest.mark.acceptance(7, "approximation sequences and hat membership")
def test_criterion_7_approximations():
    inputs = 0
    bad = []
    for config in ("a4-main2", "nakayama-main1"):
        _, cap = _captured(config)
        gfix, w = cap["gamma_fixtures"], indecomposable_gens(cap["u_gens"])
        idu = module_injective_dimension(w)
        xs = [x for x in gfix if perp_membership(x, w, idu).verdict]
        for c in gfix:
            ab = ab_approximation(c, xs, w)
            r, l = ab.right, ab.left
            checks = {
                "right exact": r.is_valid(), "left exact": l.is_valid(),
                "X_C in X": in_add(r.middle, xs), "X^C in X": in_add(l.right, xs),
                "Y_C in hat W": hat_membership(r.left, w).ok, "Y^C in hat W": hat_membership(l.middle, w).ok,
                "approximation": all(lift_through_epi(h, r.proj) is not None
                                     for x in xs for h in hom_space(x, c).basis),
            }
            bad += [f"{config} {c.name}: {k}" for k, v in checks.items() if not v]
            inputs += 1
    assert inputs >= 20
    for key in FIXTURE_FILES:
        alg, mods, _ = load_fixtures(data_path("fixtures", f"{key}.json"), GF(1009))
        dl = [injective_module(alg, i) for i in range(alg.num_vertices)]
        for x in mods:
            hw = hat_membership(x, dl, depth=8, side="coresolution")
            idx = injective_dimension(x, bound=8)
            # both report "not finite within 8 steps" for non-injectives of self-injective algebras
            if hw.length != idx or (hw.ok and not hw.is_exact()):
                bad.append(f"{key} {x.name}: hat length {hw.length} vs id {idx}")
    assert not bad, bad


@pytest.mark.acceptance(8, "Gorenstein-projective classification")
def test_criterion_8_gorenstein_projective(nakayama, a4):
    _, _, nak = nakayama
    assert len(nak) == 12
    assert all(gorenstein_projective(x).verdict == PASS for x in nak)
    alg, _, mods = a4
    gp = [x for x in mods if gorenstein_projective(x).verdict == PASS]
    projs = [projective_module(alg, i) for i in range(4)]
    assert len(gp) == 4 and all(any(is_isomorphic(x, p) for p in projs) for x in gp)


@pytest.mark.acceptance(9, "byte-identical reports across runs")
def test_criterion_9_determinism():
    for config in ("a4-main2", "a4-projective-main2", "a4-auslander-main2", "nakayama-main1",
                   "nakayama-zero-main1", "a4-apr-main1", "a5-add-main1"):
        first = run_pipeline(config)
        second = run_pipeline(config)
        for fmt in ("text", "json", "csv"):
            assert first.render(fmt) == second.render(fmt), (config, fmt)
