import cmath
import itertools
import random

import pytest

from gl1zeta.basicfn import (BasicFunction, basic_fourier_check,
                             basic_zeta_check, complete_homogeneous)
from gl1zeta.characters import MultChar, trivial_char, unramified_char
from gl1zeta.ratfunc import rf_close


def h_bruteforce(m, alpha):
    total = 0j
    for combo in itertools.combinations_with_replacement(range(len(alpha)), m):
        prod = 1.0 + 0j
        for i in combo:
            prod *= alpha[i]
        total += prod
    return total


def test_h0_is_one():
    assert complete_homogeneous(0, [2.0, -3.0, 1j]) == 1


def test_h2_two_variables():
    a, b = 0.7 + 0.1j, -0.3 + 0.5j
    assert abs(complete_homogeneous(2, [a, b]) - (a * a + a * b + b * b)) < 1e-12


def test_h_geometric_degenerate():
    assert all(abs(complete_homogeneous(m, [1.0]) - 1) < 1e-14 for m in range(7))


def test_h_recurrence_vs_multiset_enumeration():
    rng = random.Random(3)
    for m in range(7):
        for n in range(1, 4):
            alpha = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
                     for _ in range(n)]
            assert abs(complete_homogeneous(m, alpha)
                       - h_bruteforce(m, alpha)) < 1e-9


def test_shell_values_and_support():
    fn = BasicFunction(5, (1.0,))
    assert fn.shell_value(-1) == 0 and fn.shell_value(-3) == 0
    vol = 1 - 1 / 5
    assert abs(fn.shell_value(0) - 1 / vol) < 1e-14
    assert abs(fn.shell_value(2) - 5 ** -1.0 / vol) < 1e-14


def test_zeta_check_rank1_trivial():
    rep = basic_zeta_check([1.0], trivial_char(5))
    # Z = 1/(1 - X)
    from gl1zeta.ratfunc import LaurentPoly, RationalFunc
    assert rf_close(rep.lhs, RationalFunc(LaurentPoly.one(5),
                                          LaurentPoly(5, {0: 1, 1: -1})))
    assert rep.ok(1e-12)


def test_zeta_check_cauchy_pair():
    a = 0.8j
    rep = basic_zeta_check([a, 1 / a], trivial_char(3))
    assert rep.ok(1e-10)


def test_zeta_check_unramified_twist_rescales():
    t = cmath.exp(0.4j)
    r1 = basic_zeta_check([0.5 + 0.2j], unramified_char(7, t))
    r2 = basic_zeta_check([(0.5 + 0.2j) * t], trivial_char(7))
    assert r1.ok(1e-10) and r2.ok(1e-10)
    assert rf_close(r1.rhs, r2.rhs, 1e-10)


def test_zeta_check_requires_unramified():
    with pytest.raises(ValueError):
        basic_zeta_check([1.0], MultChar(5, 1, (1,), 1.0))


def test_zeta_check_repeated_roots_route():
    rep = basic_zeta_check([0.5, 0.5], trivial_char(3))
    assert rep.ok(1e-10) and rep.route == "series-window"


def test_fourier_check_rank1_trivial():
    assert basic_fourier_check([1.0], 5).ok(1e-12)


def test_fourier_check_self_dual_pair():
    a = 0.3 + 0.4j
    assert basic_fourier_check([a, 1 / a], 3).ok(1e-10)


def test_random_unitary_corpus_with_permutations():
    rng = random.Random(7)
    for _ in range(20):
        p = rng.choice([2, 3, 5, 7])
        n = rng.randrange(1, 5)
        alpha = [cmath.exp(2j * cmath.pi * rng.random()) for _ in range(n)]
        z = basic_zeta_check(alpha, trivial_char(p))
        f = basic_fourier_check(alpha, p)
        assert z.ok(1e-10) and f.ok(1e-10)
        perm = list(alpha)
        rng.shuffle(perm)
        z2 = basic_zeta_check(perm, trivial_char(p))
        assert rf_close(z.rhs, z2.rhs, 1e-10)
        assert rf_close(z.lhs, z2.lhs, 1e-9)
