import random

import pytest

from twistcap.matrices import (ExactMatrix, SmithSolver, inverse,
                               is_invertible, kernel, kernel_with_relations,
                               smith_normal_form)
from twistcap.rings import Q, Z, Zmod

from oracles import invariant_factors_by_minors, rational_rank


def mat(ring, rows):
    return ExactMatrix(ring, rows)


def diag_of(snf):
    return [int(d) for d in snf.diagonal()]


def test_snf_two_by_two():
    # d1 = gcd of entries = 2, d1*d2 = |det| = 8 -> diag (2, 4)
    A = mat(Z, [[2, 4], [6, 8]])
    snf = smith_normal_form(A)
    assert snf.verify(A)
    assert diag_of(snf) == [2, 4]
    assert invariant_factors_by_minors([[2, 4], [6, 8]]) == [2, 4]


def test_snf_identity_and_zero():
    I3 = ExactMatrix.identity(Z, 3)
    snf = smith_normal_form(I3)
    assert snf.verify(I3)
    assert diag_of(snf) == [1, 1, 1]

    Z32 = ExactMatrix.zeros(Z, 3, 2)
    snf = smith_normal_form(Z32)
    assert snf.verify(Z32)
    assert snf.D.is_zero()


def test_snf_rationals_zero_one_diagonal():
    A = mat(Q, [[2, 4, 0], [1, 2, 0]])
    snf = smith_normal_form(A)
    assert snf.verify(A)
    assert sorted(diag_of(snf), reverse=True) == [1, 0, 0][:min(2, 3)]
    assert all(d in (0, 1) for d in diag_of(snf))


def test_snf_modular_torsion():
    A = mat(Zmod(4), [[2, 0], [0, 2]])
    snf = smith_normal_form(A)
    assert snf.verify(A)
    assert diag_of(snf) == [2, 2]


def test_snf_modular_divisibility_chain():
    ring = Zmod(12)
    A = mat(ring, [[4, 0, 0], [0, 6, 0], [0, 0, 3]])
    snf = smith_normal_form(A)
    assert snf.verify(A)
    diag = diag_of(snf)
    for a, b in zip(diag, diag[1:]):
        assert ring.divides(a, b)


@pytest.mark.parametrize("seed", range(30))
def test_snf_random_integer_matrices(seed):
    rng = random.Random(seed)
    r = rng.randint(1, 6)
    c = rng.randint(1, 6)
    rows = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
    A = mat(Z, rows)
    snf = smith_normal_form(A)
    assert snf.verify(A)
    assert snf.nonzero_count() == rational_rank(rows)
    if r <= 4 and c <= 4:
        expected = [d for d in invariant_factors_by_minors(rows)]
        got = [d for d in diag_of(snf) if d]
        assert got == expected


@pytest.mark.parametrize("m", [2, 3, 4, 6, 9])
def test_snf_random_modular(m):
    rng = random.Random(m * 17)
    ring = Zmod(m)
    for _ in range(20):
        r = rng.randint(1, 5)
        c = rng.randint(1, 5)
        A = mat(ring, [[rng.randrange(m) for _ in range(c)] for _ in range(r)])
        snf = smith_normal_form(A)
        assert snf.verify(A)


def test_kernel_is_exact():
    A = mat(Z, [[1, 2, 3], [2, 4, 6]])
    K = kernel(A)
    assert (A @ K).is_zero()
    assert K.cols == 2
    # saturation: (1,1,-1) lies in the kernel and must be expressible over Z
    assert SmithSolver(K).solve_vector((1, 1, -1)) is not None


def test_kernel_torsion_modular():
    ring = Zmod(4)
    A = mat(ring, [[2]])
    K, Krel = kernel_with_relations(A)
    assert K.cols == 1
    assert K.column(0) == (2,)
    assert Krel.cols == 1 and Krel.column(0) == (2,)


def test_solver_exact_and_unsolvable():
    A = mat(Z, [[2, 0], [0, 3]])
    s = SmithSolver(A)
    assert s.solve_vector((4, 9)) == (2, 3)
    assert s.solve_vector((1, 0)) is None

    ring = Zmod(6)
    s = SmithSolver(mat(ring, [[2]]))
    x = s.solve_vector((4,))
    assert x is not None and (2 * x[0]) % 6 == 4
    assert s.solve_vector((3,)) is None


def test_inverse_roundtrip():
    A = mat(Z, [[1, 2], [0, -1]])
    assert is_invertible(A)
    B = inverse(A)
    assert (A @ B) == ExactMatrix.identity(Z, 2)

    assert not is_invertible(mat(Z, [[2]]))


def test_kron_and_apply():
    A = mat(Z, [[0, 1], [1, 0]])
    B = mat(Z, [[-1]])
    K = A.kron(B)
    assert K.data == ((0, -1), (-1, 0))
    assert A.apply((3, 5)) == (5, 3)
