import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from macpair.exactfield import NumericField, SymbolicField
from macpair.linsolve import InconsistentSystem, SingularSystem, gauss_solve, solve
from macpair.macdonald import interpolation_I, macdonald_P
from macpair.partitions import enumerate_partitions

F = SymbolicField()
G = NumericField(Fraction(3, 7), Fraction(5, 2))


def matvec(A, x, zero):
    out = []
    for row in A:
        acc = zero
        for a, v in zip(row, x):
            acc = acc + a * v
        out.append(acc)
    return out


@settings(max_examples=80)
@given(st.integers(1, 6).flatmap(
    lambda k: st.tuples(st.lists(st.lists(st.integers(-9, 9), min_size=k, max_size=k), min_size=k, max_size=k),
                        st.lists(st.integers(-9, 9), min_size=k, max_size=k))))
def test_gauss_and_bareiss_agree_on_integers(system):
    A, b = system
    A = [[G(a) for a in row] for row in A]
    b = [G(v) for v in b]
    try:
        x = solve(G, A, b, "gauss")
    except SingularSystem:
        with pytest.raises(SingularSystem):
            solve(G, A, b, "bareiss")
        return
    assert solve(G, A, b, "bareiss") == x
    assert matvec(A, x, G.zero) == b


def test_symbolic_systems_agree():
    rng = random.Random(5)
    atoms = [F.one, F.q, F.t, F.q * F.t, 1 + F.q, F.one / (1 - F.t), F.zero]
    for _ in range(20):
        k = rng.randint(1, 4)
        A = [[rng.choice(atoms) * rng.randint(-3, 3) for _ in range(k)] for _ in range(k)]
        b = [rng.choice(atoms) for _ in range(k)]
        try:
            x = solve(F, A, b)
        except SingularSystem:
            continue
        assert solve(F, A, b, "bareiss") == x
        assert matvec(A, x, F.zero) == b


def test_overdetermined():
    A = [[1, 0], [0, 1], [1, 1]]
    assert gauss_solve(A, [Fraction(2), Fraction(3), Fraction(5)], Fraction(0)) == [2, 3]
    with pytest.raises(InconsistentSystem):
        gauss_solve(A, [Fraction(2), Fraction(3), Fraction(6)], Fraction(0))
    with pytest.raises(SingularSystem):
        gauss_solve([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]], [Fraction(1), Fraction(2)], Fraction(0))
    with pytest.raises(ValueError):
        solve(G, [[G(1)]], [G(1)], "cramer")


@pytest.mark.parametrize("n", [2, 3])
def test_basis_construction_independent_of_solver(n):
    for lam in enumerate_partitions(4 if n == 2 else 3, n):
        assert macdonald_P(lam, n, F, method="bareiss") == macdonald_P(lam, n, F)
        assert interpolation_I(lam, n, F, method="bareiss") == interpolation_I(lam, n, F)
        assert interpolation_I(lam, n, G, method="bareiss") == interpolation_I(lam, n, G)
