from fractions import Fraction
from random import Random

from parhox.fields import QQ, PrimeField
from parhox.linalg import (QuotientSpace, Subspace, column_space_basis,
                           identity, invert_matrix, matmul, matvec, nullspace,
                           rank, rref, solve, transpose)


def F(x):
    return Fraction(x)


def to_q(rows):
    return [[F(x) for x in row] for row in rows]


def test_rank_and_rref():
    M = to_q([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(QQ, M) == 2
    R, piv = rref(QQ, M)
    assert piv == [0, 1]
    assert rank(QQ, to_q([[0, 0], [0, 0]])) == 0
    assert rank(QQ, identity(QQ, 5)) == 5


def test_rank_matches_rref_randomized():
    rng = Random(3)
    for _ in range(40):
        m, n = rng.randrange(1, 6), rng.randrange(1, 6)
        M = [[F(rng.randrange(-4, 5)) / rng.randrange(1, 4) for _ in range(n)]
             for _ in range(m)]
        assert rank(QQ, M) == len(rref(QQ, M)[1])


def test_nullspace():
    M = to_q([[1, 2], [2, 4]])
    ns = nullspace(QQ, M)
    assert len(ns) == 1
    for v in ns:
        assert matvec(QQ, M, v) == [QQ.zero] * 2
    assert nullspace(QQ, [], 3) == [list(r) for r in identity(QQ, 3)]
    F5 = PrimeField(5)
    M5 = [[1, 2], [3, 2]]   # det = -4 = 1 mod 5, invertible
    assert nullspace(F5, M5) == []


def test_solve():
    M = to_q([[1, 1], [0, 1]])
    x = solve(QQ, M, [F(3), F(2)])
    assert x == [F(1), F(2)]
    assert solve(QQ, to_q([[1, 1], [1, 1]]), [F(0), F(1)]) is None


def test_invert():
    M = to_q([[1, 2], [3, 4]])
    Minv = invert_matrix(QQ, M)
    assert matmul(QQ, M, Minv) == identity(QQ, 2)
    assert invert_matrix(QQ, to_q([[1, 2], [2, 4]])) is None


def test_subspace_and_quotient():
    sub = Subspace(QQ, 3)
    assert sub.add([F(1), F(1), F(0)])
    assert sub.add([F(0), F(1), F(1)])
    assert not sub.add([F(1), F(2), F(1)])
    assert sub.dim == 2
    assert sub.contains([F(2), F(3), F(1)])
    assert not sub.contains([F(0), F(0), F(1)])
    Q = QuotientSpace(QQ, 3, sub)
    assert Q.dim == 1
    assert Q.project([F(1), F(1), F(0)]) == [F(0)]
    v = Q.lift([F(1)])
    assert Q.project(v) == [F(1)]


def test_subspace_order_independent():
    rng = Random(11)
    for _ in range(20):
        vecs = [[F(rng.randrange(-3, 4)) for _ in range(4)] for _ in range(5)]
        s1 = Subspace(QQ, 4, vecs)
        s2 = Subspace(QQ, 4, list(reversed(vecs)))
        assert s1.basis() == s2.basis()


def test_column_space():
    M = to_q([[1, 2], [2, 4], [0, 0]])
    basis = column_space_basis(QQ, M)
    assert len(basis) == 1


def test_prime_field_paths():
    F7 = PrimeField(7)
    M = [[1, 2, 3], [2, 4, 6], [0, 1, 5]]
    assert rank(F7, M) == 2
    ns = nullspace(F7, M)
    assert len(ns) == 1
    assert matvec(F7, M, ns[0]) == [0, 0, 0]
    assert transpose([[1, 2], [3, 4]]) == [[1, 3], [2, 4]]
