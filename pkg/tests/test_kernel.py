import cmath
import random
from fractions import Fraction

import pytest

from gl1zeta.characters import (MultChar, char_product, trivial_char,
                                unitary_components)
from gl1zeta.corpus import random_char, random_mult_step, random_satake
from gl1zeta.kernel import (GammaSymbol, Gl1Kernel, TruncatedKernel,
                            gamma_symbol, hankel_convolve, hankel_mellin,
                            homogeneous_identity_check, kernel_eval,
                            lemma31_grid, pointwise_threshold,
                            stability_threshold, trace_average_check,
                            truncation_stability)
from gl1zeta.padic import PAdicElt
from gl1zeta.ratfunc import RationalFunc, rf_close, rf_dual_subst
from gl1zeta.stepfn import (delta_approximant, mellin, mellin_invert,
                            unit_indicator)
from gl1zeta.zetagamma import gamma_closed, l_factor, l_factor_satake


def test_kernel_eval_at_one():
    for chi in unitary_components(5, 1):
        k = Gl1Kernel(chi)
        assert abs(kernel_eval(k, PAdicElt.from_int(5, 1)) - 1) < 1e-14


def test_kernel_eval_at_p():
    k = Gl1Kernel(trivial_char(5))
    assert abs(kernel_eval(k, PAdicElt.from_int(5, 5)) - 5 ** -0.5) < 1e-14


def test_kernel_eval_negative_shell():
    k = Gl1Kernel(trivial_char(5))
    x = PAdicElt.from_rational(5, Fraction(1, 5))
    expect = 5 ** 0.5 * cmath.exp(2j * cmath.pi / 5)
    assert abs(kernel_eval(k, x) - expect) < 1e-12


def test_truncated_kernel_indicator():
    k = Gl1Kernel(trivial_char(3))
    x = PAdicElt.from_rational(3, Fraction(1, 9))
    assert TruncatedKernel(k, 1).eval(x) == 0
    assert abs(TruncatedKernel(k, 2).eval(x) - k.eval(x)) < 1e-14


def test_truncation_stability_inactive_on_units():
    k = Gl1Kernel(MultChar(5, 1, (1,), 1.0))
    vals = truncation_stability(k, 0, range(1, 8))
    assert all(v == vals[0] for v in vals)


def test_truncation_stability_indicator_support():
    k = Gl1Kernel(trivial_char(5))
    # probe shell -3 with a conductor-3 twist so the coefficient is nonzero
    tw = [c for c in unitary_components(5, 3) if c.cond == 3][0]
    vals = truncation_stability(k, -3, range(1, 8), tw)
    assert vals[0] == vals[1] == 0
    assert all(abs(v - vals[-1]) < 1e-15 for v in vals[2:])
    assert abs(vals[-1]) > 1e-6


def test_thresholds_on_window():
    k = Gl1Kernel(MultChar(5, 1, (1,), 1.0))
    for m in range(-4, 5):
        assert pointwise_threshold(k, m) == max(1, -m)
        if m <= -2:
            twist = next(c for c in unitary_components(5, -m)
                         if char_product(k.chi, c).cond == -m)
        else:
            twist = k.chi.inverse()
        assert stability_threshold(k, m, twist) == max(1, -m)
    # uniformity on [-3, 3]: one threshold covers the window
    assert max(pointwise_threshold(k, m) for m in range(-3, 4)) == 3


def test_trace_average_diagonal_dominant():
    g = [[Fraction(1, 27), 0], [0, 18]]  # diag(3^-3, 2*3^2)
    assert abs(trace_average_check(3, g, 1, 4)) < 1e-10


def test_trace_average_identity_control():
    assert abs(trace_average_check(3, [[1, 0], [0, 1]], 1, 3) - 1) < 1e-12
    assert abs(trace_average_check(2, [[1, 0], [0, 1]], 1, 4) - 1) < 1e-12


def test_trace_average_grid_all_branches():
    for p in (2, 3):
        for l0 in (1, 2):
            for g in lemma31_grid(p, l0):
                v = trace_average_check(p, g, l0, l0 + 3)
                assert abs(v) < 1e-10, (p, l0, g)


def test_trace_average_random_hypothesis_grid():
    # random g with a deep dominant entry and the rest integral
    rng = random.Random(47)
    for _ in range(6):
        p = rng.choice([2, 3])
        deep = Fraction(rng.randrange(1, p ** 3), p ** 3)
        pos = rng.randrange(4)
        ent = [Fraction(rng.randrange(0, 3)) for _ in range(4)]
        ent[pos] = deep
        # dominant entry alone must carry valuation <= -3 after inversion
        if deep.denominator != p ** 3:
            continue
        g = [[ent[0], ent[1]], [ent[2], ent[3]]]
        det = ent[0] * ent[3] - ent[1] * ent[2]
        if det == 0:
            continue
        assert abs(trace_average_check(p, g, 1, 4)) < 1e-10, g


def test_trace_average_guards():
    with pytest.raises(ValueError):
        trace_average_check(5, [[1, 0], [0, 1]], 1, 3)
    with pytest.raises(ValueError):
        trace_average_check(3, [[Fraction(1, 27), 0], [0, 1]], 1, 3)  # L < l0+d
    with pytest.raises(ValueError):
        trace_average_check(3, [[1, 1], [1, 1]], 1, 3)  # singular
    with pytest.raises(ValueError):
        trace_average_check(3, [[Fraction(1, 2), 0], [0, 1]], 1, 3)


def test_gamma_symbol_rank1():
    sym = gamma_symbol([trivial_char(5)], 1, p=5)
    assert rf_close(sym.component(trivial_char(5)), gamma_closed(trivial_char(5)))


def test_gamma_symbol_satake_l_ratio():
    # n=2 alpha=(a, 1/a): product of rank-1 gammas equals eps*L(1-s,~)/L(s,.)
    a = cmath.exp(0.9j)
    p = 3
    sym = gamma_symbol([a, 1 / a], 0, p=p)
    got = sym.component(trivial_char(p))
    lhs = rf_dual_subst(l_factor_satake(p, [1 / a, a])) / l_factor_satake(p, [a, 1 / a])
    assert rf_close(got, lhs, 1e-9)


def test_gamma_symbol_permutation_invariance():
    alpha = [cmath.exp(0.3j), cmath.exp(-1.2j), 0.5 + 0.1j]
    s1 = gamma_symbol(alpha, 1, p=5)
    s2 = gamma_symbol(list(reversed(alpha)), 1, p=5)
    for w in unitary_components(5, 1):
        assert rf_close(s1.component(w), s2.component(w), 1e-9)


def test_gamma_symbol_ramified_list():
    chi_r = MultChar(3, 1, (1,), 1.0)
    sym = gamma_symbol([chi_r, trivial_char(3)], 1, p=3)
    for w in unitary_components(3, 1):
        expect = gamma_closed(char_product(chi_r, w)) * gamma_closed(w)
        assert rf_close(sym.component(w), expect, 1e-9)


def test_gamma_symbol_missing_component():
    sym = gamma_symbol([trivial_char(3)], 0, p=3)
    with pytest.raises(KeyError):
        sym.component(MultChar(3, 1, (1,), 1.0))


def test_hankel_two_routes_agree():
    rng = random.Random(53)
    worst = 0.0
    for p in (3, 5):
        for _ in range(6):
            chi_pi = random_char(rng, p, 1)
            kern = Gl1Kernel(chi_pi)
            phi = random_mult_step(rng, p)
            c_max = max(phi.max_level(), chi_pi.cond, 1)
            sym = gamma_symbol([chi_pi], c_max, p=p)
            back = mellin_invert(hankel_mellin(phi, sym), -5, 5, c_max)
            table = hankel_convolve(phi, kern, -5, 5, level=c_max)
            for m, rep, v in table.rows:
                worst = max(worst, abs(v - back.eval(rep)))
    assert worst <= 1e-9


def test_hankel_unit_indicator_hand_values():
    p = 5
    table = hankel_convolve(unit_indicator(p), Gl1Kernel(trivial_char(p)),
                            -3, 3, level=1)
    for m, rep, v in table.rows:
        if m >= 0:
            expect = (1 - 1 / p) * p ** (-m / 2)
        elif m == -1:
            expect = -(1 / p) * p ** 0.5
        else:
            expect = 0.0
        assert abs(v - expect) < 1e-12


def test_hankel_delta_approximant_recovers_symbol():
    # F(delta-approximant) has Mellin components equal to the shifted dual
    # gamma components themselves (its input Mellin data is identically 1)
    p = 5
    phi = delta_approximant(p, 1)
    sym = gamma_symbol([trivial_char(p)], 1, p=p)
    out = hankel_mellin(phi, sym)
    rt = p ** 0.5
    for w in unitary_components(p, 1):
        expect = rf_dual_subst(sym.component(w.inverse())
                               ).subst_monomial(1 / rt, 1)
        got_in = mellin(phi, 1).component(w.inverse())
        assert rf_close(got_in, RationalFunc.one(p), 1e-12)
        assert rf_close(out.component(w), expect, 1e-10)


def test_hankel_linearity():
    rng = random.Random(59)
    p = 3
    sym = gamma_symbol([random_char(rng, p, 1)], 2, p=p)
    f1, f2 = random_mult_step(rng, p), random_mult_step(rng, p)
    a, b = 1.3 - 0.2j, -0.4 + 2j
    lhs = hankel_mellin(a * f1 + b * f2, sym)
    r1 = hankel_mellin(f1, sym, mellin(f1, 2))
    r2 = hankel_mellin(f2, sym, mellin(f2, 2))
    for w in unitary_components(p, 2):
        zero = RationalFunc.zero(p)
        want = r1.comps.get(w, zero).scale(a) + r2.comps.get(w, zero).scale(b)
        assert rf_close(lhs.comps.get(w, zero), want, 1e-10)


def test_hankel_support_bookkeeping():
    # phi on S_0: evaluation at x in S_m only sees kernel shell S_m
    p = 3
    phi = unit_indicator(p)
    kern = Gl1Kernel(trivial_char(p))
    table = hankel_convolve(phi, kern, -2, 2, level=0)
    from gl1zeta.zetagamma import shell_psi_chi_integral
    one = PAdicElt(p, 0, 1, 24)
    for m, rep, v in table.rows:
        shell = shell_psi_chi_integral(p, m, trivial_char(p), b=one, brute=True)
        assert abs(v - shell * p ** (-m / 2)) < 1e-12


def test_hankel_convolve_refinement_invariance():
    # evaluating on a finer coset grid must refine, not change, the values
    rng = random.Random(71)
    p = 3
    phi = random_mult_step(rng, p, max_level=1)
    kern = Gl1Kernel(random_char(rng, p, 1))
    coarse = hankel_convolve(phi, kern, -3, 3, level=1)
    fine = hankel_convolve(phi, kern, -3, 3, level=3)
    for m, rep, v in fine.rows:
        assert abs(v - coarse.value_at(rep)) < 1e-12


def test_homogeneous_identity_trivial():
    rep = homogeneous_identity_check(trivial_char(5), trivial_char(5),
                                     unit_indicator(5))
    assert rep.max_coeff_diff <= 1e-10


def test_homogeneous_identity_corpus():
    rng = random.Random(61)
    for _ in range(12):
        p = rng.choice([3, 5])
        chi = random_char(rng, p, 2)
        pi = ([random_char(rng, p, 1)] if rng.random() < 0.5
              else random_satake(rng, 2))
        rep = homogeneous_identity_check(chi, pi, random_mult_step(rng, p))
        assert rep.max_coeff_diff <= 1e-9


def test_homogeneous_identity_scaling_covariance():
    rng = random.Random(67)
    p = 5
    phi0 = random_mult_step(rng, p)
    a = PAdicElt(p, 1, 3, 24)
    chi = random_char(rng, p, 1)
    r1 = homogeneous_identity_check(chi, trivial_char(p), phi0)
    r2 = homogeneous_identity_check(chi, trivial_char(p), phi0.scaled_arg(a))
    assert r1.max_coeff_diff <= 1e-9 and r2.max_coeff_diff <= 1e-9
