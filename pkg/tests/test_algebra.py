import pytest

from cotiltkit.algebra import (
    AlgebraError, Quiver, SaturationError, build_based_algebra, cyclic_nakayama, parse_relation,
    path_algebra_linear,
)
from cotiltkit.exactlin import GF, QQ

SQUARE = Quiver.from_arrows(4, [("a", 0, 1), ("b", 1, 3), ("c", 0, 2), ("d", 2, 3)])


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_linear_path_algebra_dimension(n):
    alg = path_algebra_linear(n)
    assert alg.dimension == n * (n + 1) // 2
    assert alg.check_associativity() and alg.check_idempotents()


@pytest.mark.parametrize("n,loewy", [(1, 3), (2, 2), (3, 4)])
def test_cyclic_nakayama(n, loewy):
    alg = cyclic_nakayama(n, loewy, GF(1009))
    assert alg.dimension == n * loewy
    assert all(len(alg.basis_from(v)) == loewy for v in range(n))
    assert alg.check_associativity()


@pytest.mark.parametrize("rels,dim", [([], 10), (["a*b - c*d"], 9), (["a*b", "c*d"], 8)])
def test_square_relations(rels, dim):
    alg = build_based_algebra(SQUARE, rels, QQ)
    assert alg.dimension == dim
    assert alg.check_associativity() and alg.check_idempotents()


def test_composition_is_diagrammatic():
    p = SQUARE.path(["a", "b"])
    assert (p.source, p.target) == (0, 3)
    with pytest.raises(AlgebraError):
        SQUARE.path(["b", "a"])


def test_relation_round_trip():
    rel = parse_relation("a*b - 2*c*d", SQUARE, QQ)
    assert rel.format(SQUARE, QQ) == "a*b - 2*c*d"
    assert parse_relation(rel.format(SQUARE, QQ), SQUARE, QQ) == rel


def test_inadmissible_relations_rejected():
    with pytest.raises(AlgebraError):
        parse_relation("a", SQUARE, QQ)
    with pytest.raises(AlgebraError):
        parse_relation("a*b - c", SQUARE, QQ)
    with pytest.raises(AlgebraError):
        parse_relation("a*b +* c*d", SQUARE, QQ)


def test_unsaturated_ideal_raises():
    loop = Quiver.from_arrows(1, [("x", 0, 0)])
    with pytest.raises(SaturationError):
        build_based_algebra(loop, [], QQ, max_length=6)
    assert build_based_algebra(loop, ["x*x*x"], QQ).dimension == 3


def test_opposite_algebra():
    alg = build_based_algebra(SQUARE, ["a*b - c*d"], QQ)
    op = alg.opposite()
    assert op.dimension == alg.dimension
    assert op.opposite() is alg
    assert op.check_associativity()
    assert all(len(op.basis_from(v)) == len([p for p in alg.basis if p.target == v]) for v in range(4))


def test_multiplication_of_arrows():
    alg = build_based_algebra(SQUARE, ["a*b - c*d"], QQ)
    q = alg.quiver
    ab = alg.mul(alg.unit(alg.arrow_basis_index(q.arrow_index("a"))),
                 alg.unit(alg.arrow_basis_index(q.arrow_index("b"))))
    cd = alg.mul(alg.unit(alg.arrow_basis_index(q.arrow_index("c"))),
                 alg.unit(alg.arrow_basis_index(q.arrow_index("d"))))
    assert (ab == cd).all() and not QQ.is_zero(ab)
    ba = alg.mul(alg.unit(alg.arrow_basis_index(q.arrow_index("b"))),
                 alg.unit(alg.arrow_basis_index(q.arrow_index("a"))))
    assert QQ.is_zero(ba)
