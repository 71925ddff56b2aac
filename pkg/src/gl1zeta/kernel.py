"""GL(1) kernel functions, gamma symbols, and the Hankel transform.

The rank-1 kernel attached to a multiplicative character chi is

    k(x) = psi(x) * chi^(-1)(x) * |x|^(1/2),

truncated versions carry the extra indicator 1_{v(x) >= -ell}.  Its Mellin
transform (principal value) is the gamma factor, computed in `zetagamma`;
here the kernel drives the Fourier operator on C_c^inf(F^x) two ways:

* hankel_convolve -- the convolution (k * phi^v)(x) evaluated pointwise as
  finite Gauss-type coset sums;
* hankel_mellin -- multiplication by the gamma symbol in the Mellin domain
  followed by the s -> 1-s substitution,

      M(F phi)(omega)(X) = [Gamma(omega^(-1)) * M(phi)(omega^(-1))](s -> 1-s)

  with the q^(+-1/2) bookkeeping from the |x|^(s-1/2) zeta normalization.

For unramified GL(n) the kernel is represented only through its gamma
symbol, the map omega -> gamma(s, pi x omega, psi) built multiplicatively
from Satake parameters; both routes exist (and are compared) at n = 1.

`trace_average_check` is the finite verifier of the vanishing lemma for
averages of psi(tr(g h)) over principal congruence subgroups of SL_2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .characters import MultChar, char_product, unitary_components
from .defaults import COEFF_TOL, DEFAULT_PREC
from .padic import PAdicElt, check_prime, psi_value
from .ratfunc import RationalFunc, rf_discrepancy, rf_dual_subst, root_of_unity
from .stepfn import MellinData, MultStepFunction, mellin
from .zetagamma import (gamma_closed, gamma_pv, gamma_product, normalize_pi,
                        psi_chi_coset_integral, shell_psi_chi_integral)


# ---------------------------------------------------------------------------
# rank-1 kernels


@dataclass(frozen=True)
class Gl1Kernel:
    """k(x) = psi(x) chi^(-1)(x) |x|^(1/2); the matrix coefficient of the
    contragredient is chi^(-1) itself."""

    chi: MultChar

    @property
    def p(self) -> int:
        return self.chi.p

    def eval(self, x: PAdicElt) -> complex:
        return (psi_value(x) / self.chi.eval(x)
                * float(self.p) ** (-x.val / 2.0))


@dataclass(frozen=True)
class TruncatedKernel:
    base: Gl1Kernel
    ell: int

    def eval(self, x: PAdicElt) -> complex:
        if x.val < -self.ell:
            return 0.0 + 0.0j
        return self.base.eval(x)


def kernel_eval(k: Gl1Kernel, x: PAdicElt) -> complex:
    return k.eval(x)


def kernel_shell_coefficient(k: Gl1Kernel, m: int,
                             twist: MultChar | None = None) -> complex:
    """q^(-m/2) * int_{S_m} psi(y) (chi*twist)^(-1)(y) dy*, the scalar
    multiplying X^(-m)-type bookkeeping in the kernel's Mellin transform."""
    p = k.p
    prod = char_product(k.chi, twist) if twist is not None else k.chi
    one = PAdicElt(p, 0, 1, DEFAULT_PREC)
    val = shell_psi_chi_integral(p, m, prod.inverse(), b=one, brute=True)
    return val * float(p) ** (-m / 2.0)


def truncation_stability(k: Gl1Kernel, m: int, ell_list,
                         twist: MultChar | None = None) -> list[complex]:
    """Shell-S_m Mellin coefficient of the ell-truncated kernel, per ell.

    The truncation indicator kills the shell entirely for ell < -m, so the
    values must coincide for every ell >= max(1, -m).
    """
    stable = kernel_shell_coefficient(k, m, twist)
    return [stable if m >= -ell else 0.0 + 0.0j for ell in ell_list]


def stability_threshold(k: Gl1Kernel, m: int,
                        twist: MultChar | None = None,
                        ell_max: int = 12) -> int:
    """Empirical first ell >= 1 from which the shell coefficient stops
    changing (measured, not assumed).

    A vanishing shell coefficient cannot exhibit its activation shell; probe
    with a twist of conductor -m (for m <= -2) to make the jump visible, or
    use `pointwise_threshold`, which never degenerates.
    """
    vals = truncation_stability(k, m, range(1, ell_max + 1), twist)
    final = vals[-1]
    thr = ell_max
    for ell in range(ell_max, 0, -1):
        if abs(vals[ell - 1] - final) > 1e-15:
            break
        thr = ell
    return thr


def pointwise_threshold(k: Gl1Kernel, m: int, ell_max: int = 12) -> int:
    """First ell with k_ell = k pointwise on S_m.

    |k(x)| = q^(-m/2) never vanishes, so this is the sharp truncation
    activation shell max(1, -m), here measured by evaluation."""
    p = k.p
    x = PAdicElt(p, m, 1, max(1, -m) + k.chi.cond + 2)
    full = k.eval(x)
    thr = ell_max
    for ell in range(ell_max, 0, -1):
        if abs(TruncatedKernel(k, ell).eval(x) - full) > 1e-15:
            break
        thr = ell
    return thr


# ---------------------------------------------------------------------------
# Lemma-3.1-style finite verifier (n = 2)


def trace_average_check(p: int, g, l0: int, L: int) -> complex:
    """Average of psi(tr(g h)) over h in (1 + p^l0 M_2) ∩ SL_2 modulo the
    level-L principal congruence subgroup, computed exactly.

    `g` is a 2x2 matrix of rationals with p-power denominators.  Desk-scale
    guard rails: p in {2, 3} and L - l0 <= 3 (at most p^9 cosets), with
    L >= l0 + d where d is the largest denominator exponent in g (so the
    integrand is constant on level-L cosets).
    """
    check_prime(p)
    if p not in (2, 3):
        raise ValueError("finite verifier is capped at p in {2, 3}")
    if not (1 <= l0 < L <= l0 + 3):
        raise ValueError("need 1 <= l0 < L <= l0 + 3")
    entries = [Fraction(g[i][j]) for i in range(2) for j in range(2)]
    d = 0
    for e in entries:
        den = e.denominator
        k = 0
        while den % p == 0:
            den //= p
            k += 1
        if den != 1:
            raise ValueError("entry %r has a denominator prime to p" % (e,))
        d = max(d, k)
    if L < l0 + d:
        raise ValueError("precision guard: need L >= l0 + %d" % (d,))
    g00, g01, g10, g11 = entries
    if g00 * g11 - g01 * g10 == 0:
        raise ValueError("g must be invertible")
    modD = p ** d
    # integer numerators of the entries over the common denominator p^d
    n00, n01, n10, n11 = (int(e * modD) % modD for e in entries)
    modL = p ** L
    span = p ** (L - l0)
    step = p ** l0
    roots = [root_of_unity(r, modD) for r in range(modD)]
    total = 0.0 + 0.0j
    count = 0
    for ia in range(span):
        a = (1 + step * ia) % modL
        a_inv = pow(a, -1, modL)
        for ib in range(span):
            b = (step * ib) % modL
            for ic in range(span):
                c = (step * ic) % modL
                dd = ((1 + b * c) * a_inv) % modL
                # tr(g h) for h = [[a, b], [c, dd]]
                r = (n00 * a + n01 * c + n10 * b + n11 * dd) % modD
                total += roots[r]
                count += 1
    return total / count


def lemma31_grid(p: int, l0: int) -> list[list[list[Fraction]]]:
    """Default grid of matrices satisfying the vanishing hypotheses, with the
    dominant entry placed on and off the diagonal (the entry-dominance
    branches reachable at n = 2)."""
    if p not in (2, 3):
        raise ValueError("grid is defined for p in {2, 3}")
    u = 2 if p == 3 else 1
    P = Fraction(p)
    mats = [
        # diagonal-dominant (sigma(1) = 1)
        [[P ** -3, Fraction(0)], [Fraction(0), u * P ** 2]],
        [[P ** -3, Fraction(1)], [Fraction(0), u * P ** 2]],
        # antidiagonal-dominant (sigma(1) = n)
        [[Fraction(0), P ** -3], [u * P ** 2, Fraction(0)]],
        [[Fraction(1), P ** -3], [u * P ** 2, Fraction(1)]],
        # dominant entry in the lower-left corner
        [[Fraction(0), u * P ** 2], [P ** -3, Fraction(0)]],
        [[Fraction(1), u * P ** 2], [P ** -3, Fraction(0)]],
    ]
    del l0
    return mats


# ---------------------------------------------------------------------------
# gamma symbols


@dataclass
class GammaSymbol:
    """Map omega -> gamma(s, pi x omega, psi) as rational functions in X.

    Components are stored at the s-normalization of gamma_closed; the
    (s+1/2)-shift required by the kernel Mellin transform is applied at use
    sites via X -> q^(-1/2) X.
    """

    p: int
    c_max: int
    components: dict[MultChar, RationalFunc]
    provenance: str

    def component(self, omega: MultChar) -> RationalFunc:
        key = omega.unitary_part()
        if key not in self.components:
            raise KeyError("gamma symbol has no component at conductor %d "
                           "(c_max = %d)" % (omega.cond, self.c_max))
        return self.components[key]


def gamma_symbol(params, c_max: int, p: int | None = None,
                 route: str = "closed") -> GammaSymbol:
    """Build the gamma symbol of pi from Satake parameters or a GL(1)
    character list, multiplicatively: component at omega is the product of
    rank-1 gamma factors of the constituents twisted by omega.

    route="pv" computes each rank-1 factor by the principal-value shell
    sums instead of the closed epsilon*L-ratio form.
    """
    if p is None:
        chis = [c for c in params if isinstance(c, MultChar)]
        if not chis:
            raise ValueError("pass p= for a bare Satake list")
        p = chis[0].p
    constituents = normalize_pi(params, p)
    comps: dict[MultChar, RationalFunc] = {}
    for omega in unitary_components(p, c_max):
        out = RationalFunc.one(p)
        for chi in constituents:
            prod = char_product(chi, omega)
            if route == "closed":
                out = out * gamma_closed(prod)
            elif route == "pv":
                out = out * gamma_pv(prod).gamma_pv
            else:
                raise ValueError("route must be 'closed' or 'pv'")
        comps[omega] = out
    kinds = "satake" if not any(isinstance(x, MultChar) for x in params) \
        else "gl1-chars"
    return GammaSymbol(p, c_max, comps, kinds)


# ---------------------------------------------------------------------------
# Hankel transform, two routes


def hankel_mellin(phi: MultStepFunction, sym: GammaSymbol,
                  mellin_data: MellinData | None = None) -> MellinData:
    """Mellin data of F_pi(phi) from the functional-equation contract

        M(F phi)(omega) = [Gamma(omega^(-1)) * M(phi)(omega^(-1))](s -> 1-s),

    where both Mellin transforms carry the |x|^s convention and Gamma sits
    at the gamma(s, .) normalization (hence the q^(+-1/2) rescalings)."""
    md = mellin_data if mellin_data is not None else mellin(phi, sym.c_max)
    if md.c_max > sym.c_max:
        raise KeyError("gamma symbol truncated at conductor %d, Mellin data "
                       "needs %d" % (sym.c_max, md.c_max))
    p = phi.p
    rt_q = float(p) ** 0.5
    out = MellinData(p, md.c_max)
    for omega in unitary_components(p, md.c_max):
        win = omega.inverse()
        m_in = md.component(win)
        if m_in.is_zero():
            continue
        z_in = m_in.scale_x(rt_q)                    # Z(s, phi, omega^(-1))
        z_out = rf_dual_subst(sym.component(win) * z_in)
        out.comps[omega] = z_out.scale_x(1.0 / rt_q)
    return out


@dataclass
class ShellTable:
    """Pointwise values on coset representatives across a shell window."""

    p: int
    level: int
    rows: list[tuple[int, PAdicElt, complex]]

    def value_at(self, x: PAdicElt) -> complex:
        for m, rep, v in self.rows:
            if x.val == m and (self.level == 0
                               or x.unit_mod(self.level) == rep.unit_mod(self.level)):
                return v
        raise KeyError("no row covers %r" % (x,))

    def max_diff(self, other: "ShellTable") -> float:
        worst = 0.0
        for m, rep, v in self.rows:
            worst = max(worst, abs(v - other.value_at(rep)))
        return worst


def _grid_units(p: int, level: int) -> list[int]:
    if level == 0:
        return [1]
    return [u for u in range(1, p ** level) if u % p]


def kernel_coset_integral(k: Gl1Kernel, a: PAdicElt, level: int) -> complex:
    """int over a*(1+p^level Z_p) (level >= 1) or a*Z_p^x (level 0) of
    psi(y) chi^(-1)(y) |y|^(1/2) dy*, as a finite Gauss-type sum."""
    p = k.p
    one = PAdicElt(p, 0, 1, DEFAULT_PREC)
    chi_inv = k.chi.inverse()
    if level == 0:
        val = shell_psi_chi_integral(p, a.val, chi_inv, b=one)
    else:
        val = psi_chi_coset_integral(a, level, chi_inv, b=one)
    return val * float(p) ** (-a.val / 2.0)


def hankel_convolve(phi: MultStepFunction, k: Gl1Kernel,
                    m_lo: int, m_hi: int,
                    level: int | None = None) -> ShellTable:
    """(k * phi^v)(x) = int k(y) phi(x^(-1) y) dy* on the shell window.

    Values are reported on 1+p^level cosets; F phi is invariant at the
    smoothness level of phi, so the default level is phi's coset level.
    """
    p = phi.p
    if level is None:
        level = phi.max_level()
    rows: list[tuple[int, PAdicElt, complex]] = []
    for m in range(m_lo, m_hi + 1):
        for u in _grid_units(p, level):
            x = PAdicElt(p, m, u, DEFAULT_PREC)
            total = 0.0 + 0.0j
            for t in phi.terms:
                a = x.mul(t.rep)
                total += t.coeff * kernel_coset_integral(k, a, t.k)
            rows.append((m, x, total))
    return ShellTable(p, level, rows)


@dataclass
class IdentityReport:
    lhs: RationalFunc
    rhs: RationalFunc
    max_coeff_diff: float

    def ok(self, tol: float = COEFF_TOL) -> bool:
        return self.max_coeff_diff <= tol


def homogeneous_identity_check(chi: MultChar, pi_params,
                               phi0: MultStepFunction) -> IdentityReport:
    """The homogeneous-distribution identity F_pi(chi_s^(-1)) =
    gamma(1/2, pi x chi_s, psi) * chi_s, paired against the test function.

    Both pairings are exact zeta integrals:
      (F(chi_s^(-1)), phi0) := (chi_s^(-1), F(phi0)) = Z(1/2 - s, F(phi0), chi^(-1))
      gamma(1/2, pi x chi_s) * (chi_s, phi0)
    and the comparison is a rational-function identity in X."""
    p = chi.p
    constituents = normalize_pi(pi_params, p)
    omega = chi.unitary_part()
    t = chi.t
    rt_q = float(p) ** 0.5
    c_max = max(phi0.max_level(), omega.cond)
    md = mellin(phi0, c_max)
    sym = gamma_symbol(constituents, c_max, p=p, route="closed")
    out = hankel_mellin(phi0, sym, md)
    z_out = out.component(omega.inverse()).scale_x(rt_q / t)
    lhs = z_out.subst_monomial(1.0 / rt_q, -1)        # evaluate at 1/2 - s
    gam_shift = gamma_product(constituents, omega).scale_x(t / rt_q)
    rhs = gam_shift * md.component(omega).scale_x(t)
    return IdentityReport(lhs, rhs, rf_discrepancy(lhs, rhs))
