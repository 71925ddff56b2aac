"""Tate zeta integrals, local factors, and gamma factors by two routes.

Everything is exact in X = q^(-s):

* zeta integrals of step functions are Laurent polynomials plus closed-form
  geometric tails (the meromorphic continuation is the rational-function
  identity itself);
* gamma_closed assembles eps(s,chi,psi) * L(1-s,chi^(-1)) / L(s,chi), with
  the epsilon factor computed as a normalized Gauss sum over the last
  nonvanishing shell;
* gamma_pv integrates the GL(1) kernel psi(x) chi^(-1)(x) |x|^(1/2) shell by
  shell (principal value): finitely many negative shells by brute coset
  summation, the nonnegative tail resummed in closed form.  The two routes
  agreeing coefficientwise is the package's central identity check.

Shell integral conventions (q = p, level-0 psi, vol(S_m, dx*) = 1 - 1/q):

    int_{S_m} psi(y) chi^(-1)(y) dy*  =  t^(-m) G_m,

with G_m = 0 for m < -max(cond, 1), G_{-cond} the Gauss-sum shell when chi
is ramified, and G_{-1} = -1/q, G_{m>=0} = 1 - 1/q when chi is unramified.
"""

from __future__ import annotations

from dataclasses import dataclass

from .characters import MultChar, char_product, trivial_char, unramified_char
from .defaults import COEFF_TOL, DEFAULT_PREC
from .padic import PAdicElt, psi_value, shell_volume
from .ratfunc import (LaurentPoly, RationalFunc, geometric_series, rf_discrepancy,
                      rf_dual_subst)
from .stepfn import MultStepFunction, StepFunction, fourier_transform, mellin


class ShellGuardError(ArithmeticError):
    """A shell that must vanish identically came back nonzero: conductor
    bookkeeping is broken somewhere upstream."""


# ---------------------------------------------------------------------------
# exact coset / shell integrals of psi(b*y) * chi(y)


def psi_chi_coset_integral(rep: PAdicElt, k: int, chi: MultChar,
                           b: PAdicElt | None = None,
                           inverse_psi: bool = False) -> complex:
    """integral over rep*(1+p^k Z_p) of psi(b*y) chi(y) dy*, for k >= 1.

    Refines the coset just far enough for the integrand to be locally
    constant and sums the finitely many values; a stationary-phase vanishing
    shortcut keeps the refinement bounded by max(cond, k) - k digits.
    """
    if k < 1:
        raise ValueError("coset level must be >= 1")
    p = chi.p
    cond = chi.cond
    w = (b.val + rep.val) if b is not None else 0
    if b is not None and w < -max(cond, k):
        return 0.0 + 0.0j  # oscillation strictly finer than any character scale
    extra = max(0, cond - k)
    if b is not None:
        extra = max(extra, -w - k)
    level = k + extra
    vol = float(p) ** (-level)
    beff = b.mul(rep) if b is not None else None
    chi_rep = chi.eval(rep)
    step = p ** k
    total = 0.0 + 0.0j
    for j in range(p ** extra):
        u = 1 + step * j
        v = chi.unit_value(u) if cond else 1.0 + 0.0j
        if beff is not None:
            v *= psi_value(beff.mul_int(u), inverse_psi)
        total += v
    return chi_rep * vol * total


def shell_psi_chi_integral(p: int, m: int, chi: MultChar,
                           b: PAdicElt | None = None,
                           inverse_psi: bool = False,
                           brute: bool = False) -> complex:
    """integral over S_m = p^m Z_p^x of psi(b*y) chi(y) dy*.

    With brute=True the full coset sum is carried out even where the
    vanishing shortcut applies; gamma_pv uses this to verify that guard
    shells vanish identically.
    """
    cond = chi.cond
    w = (b.val + m) if b is not None else 0
    tval = chi.t ** m if m >= 0 else (1.0 / chi.t) ** (-m)
    if b is None or w >= 0:
        # psi is trivial on the shell: character orthogonality decides
        if not brute and cond > 0:
            return 0.0 + 0.0j
        if not brute:
            return tval * shell_volume(m, p)
    elif not brute and -w > max(cond, 1):
        return 0.0 + 0.0j
    k = max(1, cond, -w if (b is not None and w < 0) else 0)
    vol = float(p) ** (-k)
    total = 0.0 + 0.0j
    for u in range(1, p ** k):
        if u % p == 0:
            continue
        v = chi.unit_value(u) if cond else 1.0 + 0.0j
        if b is not None:
            y = PAdicElt(p, m, u, max(k, -m + 1, 1)).mul(b)
            v *= psi_value(y, inverse_psi)
        total += v
    return tval * vol * total


def _one(p: int) -> PAdicElt:
    return PAdicElt(p, 0, 1, DEFAULT_PREC)


# ---------------------------------------------------------------------------
# zeta integrals


def zeta(phi, chi: MultChar) -> RationalFunc:
    """Z(s, phi, chi) = integral of phi(x) chi(x) |x|^(s-1/2) dx*.

    Shell S_m contributes (q^(1/2) X)^m times the finite coset sum of
    phi * chi; a step function's germ at 0 adds a geometric tail in closed
    form when chi is unramified (and nothing otherwise).
    """
    if isinstance(phi, MultStepFunction):
        return _zeta_mult(phi, chi)
    if isinstance(phi, StepFunction):
        return _zeta_step(phi, chi)
    raise TypeError("unsupported function model %r" % type(phi).__name__)


def _shell_monomial(q: int, m: int, value: complex) -> RationalFunc:
    return RationalFunc.monomial(q, m, value * float(q) ** (m / 2.0))


def _zeta_mult(phi: MultStepFunction, chi: MultChar) -> RationalFunc:
    q = phi.p
    total = RationalFunc.zero(q)
    for t in phi.terms:
        m = t.rep.val
        if t.k == 0:
            val = shell_psi_chi_integral(q, m, chi)
        else:
            val = psi_chi_coset_integral(t.rep, t.k, chi)
        if val != 0:
            total = total + _shell_monomial(q, m, t.coeff * val)
    return total


def _zeta_step(phi: StepFunction, chi: MultChar) -> RationalFunc:
    q = phi.p
    total = RationalFunc.zero(q)
    for t in phi.terms:
        if t.center is not None:
            # a single multiplicative coset center*(1 + p^(rad-v) Z_p)
            m = t.center.val
            val = psi_chi_coset_integral(t.center, t.rad - m, chi, b=t.twist)
            if val != 0:
                total = total + _shell_monomial(q, m, t.coeff * val)
            continue
        # ball p^rad Z_p around 0: shells m >= rad
        m_tail = t.rad if t.twist is None else max(t.rad, -t.twist.val)
        for m in range(t.rad, m_tail):
            val = shell_psi_chi_integral(q, m, chi, b=t.twist)
            if val != 0:
                total = total + _shell_monomial(q, m, t.coeff * val)
        if chi.cond == 0:
            first = _shell_monomial(q, m_tail,
                                    t.coeff * shell_volume(0, q)
                                    * chi.t ** m_tail)
            total = total + geometric_series(q, chi.t * float(q) ** 0.5, 1, first)
    return total


# ---------------------------------------------------------------------------
# local factors


def l_factor(chi: MultChar) -> RationalFunc:
    """L(s, chi): 1/(1 - chi(p) X) unramified, 1 ramified."""
    q = chi.p
    if chi.cond:
        return RationalFunc.one(q)
    den = LaurentPoly.one(q) - LaurentPoly.monomial(q, 1, chi.t)
    return RationalFunc(LaurentPoly.one(q), den)


def l_factor_satake(p: int, alpha) -> RationalFunc:
    """L(s, pi) = prod_i 1/(1 - alpha_i X) for Satake parameters alpha."""
    out = RationalFunc.one(p)
    for a in alpha:
        out = out * l_factor(unramified_char(p, complex(a)))
    return out


def epsilon_factor(chi: MultChar, inverse_psi: bool = False) -> RationalFunc:
    """eps(s, chi, psi) for the level-0 psi.

    1 for unramified chi; for conductor a >= 1 the monomial
    (qX)^a * int_{S_{-a}} psi(y) chi^(-1)(y) dy*, the normalized Gauss sum
    calibrated so that gamma_closed agrees with the principal-value route.
    """
    q = chi.p
    a = chi.cond
    if a == 0:
        return RationalFunc.one(q)
    gauss = shell_psi_chi_integral(q, -a, chi.inverse(), b=_one(q),
                                   inverse_psi=inverse_psi)
    return RationalFunc.monomial(q, a, gauss * float(q) ** a)


def gamma_closed(chi: MultChar, inverse_psi: bool = False) -> RationalFunc:
    """gamma(s, chi, psi) = eps(s, chi, psi) L(1-s, chi^(-1)) / L(s, chi)."""
    eps = epsilon_factor(chi, inverse_psi)
    return eps * rf_dual_subst(l_factor(chi.inverse())) / l_factor(chi)


@dataclass
class GammaReport:
    """Agreement record between the closed-form and principal-value routes."""

    gamma_closed: RationalFunc
    gamma_pv: RationalFunc
    max_coeff_diff: float
    shells_used: tuple[int, int]

    def ok(self, tol: float = COEFF_TOL) -> bool:
        return self.max_coeff_diff <= tol


def gamma_pv(chi: MultChar, twist: MultChar | None = None,
             inverse_psi: bool = False, shell_floor: int | None = None,
             guard_tol: float = 1e-9) -> GammaReport:
    """Principal-value Mellin transform of the GL(1) kernel, as gamma(s).

    Shell S_m contributes (q^(-1) X^(-1))^m times the exact shell integral
    of psi * (chi*twist)^(-1); shells below -max(cond, 1) are verified to
    vanish (two guard shells, brute force), the m >= 0 tail is resummed in
    closed form.  The result is compared against gamma_closed of the product
    character.

    `shell_floor` extends the brute-forced range downward; any cofinal
    truncation schedule yields the same rational function, which is the
    testable shape of the kernel's well-definedness.
    """
    prod = char_product(chi, twist) if twist is not None else chi
    q = prod.p
    a = prod.cond
    m_last = -max(a, 1)
    lo = m_last - 2 if shell_floor is None else min(shell_floor, m_last - 2)
    chi_inv = prod.inverse()
    one = _one(q)
    total = RationalFunc.zero(q)
    for m in range(lo, 0):
        val = shell_psi_chi_integral(q, m, chi_inv, b=one,
                                     inverse_psi=inverse_psi, brute=True)
        if m < m_last and abs(val) > guard_tol:
            raise ShellGuardError(
                "shell %d of the kernel Mellin integral should vanish, got %r"
                % (m, val))
        if val != 0:
            total = total + RationalFunc.monomial(q, -m, val * float(q) ** (-m))
    if a == 0:
        # int over S_m of psi * chi^(-1) = t^(-m) (1 - 1/q) for m >= 0
        first = RationalFunc.const(q, shell_volume(0, q))
        total = total + geometric_series(q, 1.0 / (prod.t * q), -1, first)
    closed = gamma_closed(prod, inverse_psi)
    return GammaReport(closed, total, rf_discrepancy(closed, total), (lo, -1))


# ---------------------------------------------------------------------------
# functional equation GL1-FE


@dataclass
class FEReport:
    lhs: RationalFunc
    rhs: RationalFunc
    max_coeff_diff: float

    def ok(self, tol: float = COEFF_TOL) -> bool:
        return self.max_coeff_diff <= tol


def normalize_pi(pi_params, p: int) -> list[MultChar]:
    """Accept a GL(1) character, a list of characters, or a Satake list of
    nonzero scalars; return the list of rank-1 constituents."""
    if isinstance(pi_params, MultChar):
        return [pi_params]
    out = []
    for item in pi_params:
        if isinstance(item, MultChar):
            if item.p != p:
                raise ValueError("constituent at wrong prime")
            out.append(item)
        else:
            alpha = complex(item)
            if alpha == 0:
                raise ValueError("Satake parameters must be nonzero")
            out.append(unramified_char(p, alpha))
    if not out:
        raise ValueError("empty parameter list")
    return out


def gamma_product(constituents, omega: MultChar,
                  inverse_psi: bool = False) -> RationalFunc:
    """gamma(s, pi x omega, psi) = prod_i gamma(s, chi_i * omega, psi)."""
    out = RationalFunc.one(omega.p)
    for c in constituents:
        out = out * gamma_closed(char_product(c, omega), inverse_psi)
    return out


def verify_fe(phi, chi: MultChar, pi_params) -> FEReport:
    """Check Z(1-s, F_pi(phi), chi^(-1)) = gamma(s, pi x chi, psi) Z(s, phi, chi).

    For a StepFunction seed f the rank-1 Fourier operator acts in closed
    form: the pi-Schwartz function is |x|^(1/2) chi_pi(x) f(x) and
    F(|x|^(1/2) chi_pi f) = |x|^(1/2) chi_pi^(-1) F_psi(f).  For a
    C_c^inf(F^x) input the left side goes through the Mellin-domain Hankel
    transform with the principal-value gamma symbol, so the comparison pits
    the pv route against the closed-form route through the whole pipeline.
    """
    p = chi.p
    constituents = normalize_pi(pi_params, p)
    rt_q = float(p) ** 0.5
    if isinstance(phi, StepFunction):
        if len(constituents) != 1:
            raise ValueError("a StepFunction seed needs a rank-1 pi")
        chi_pi = constituents[0]
        prod = char_product(chi, chi_pi)
        rhs = gamma_closed(prod) * zeta(phi, prod).scale_x(1.0 / rt_q)
        g = fourier_transform(phi)
        lhs = rf_dual_subst(zeta(g, prod.inverse()).scale_x(1.0 / rt_q))
        return FEReport(lhs, rhs, rf_discrepancy(lhs, rhs))
    if isinstance(phi, MultStepFunction):
        from .kernel import gamma_symbol, hankel_mellin
        omega = chi.unitary_part()
        c_max = max(phi.max_level(), omega.cond)
        md = mellin(phi, c_max)
        sym = gamma_symbol(constituents, c_max, p=p, route="pv")
        out = hankel_mellin(phi, sym, mellin_data=md)
        z_out = out.component(omega.inverse()).scale_x(rt_q / chi.t)
        lhs = rf_dual_subst(z_out)
        gam = gamma_product(constituents, omega).scale_x(chi.t)
        rhs = gam * md.component(omega).scale_x(chi.t * rt_q)
        return FEReport(lhs, rhs, rf_discrepancy(lhs, rhs))
    raise TypeError("unsupported function model %r" % type(phi).__name__)


def gamma_report_json(report: GammaReport) -> dict:
    from .ratfunc import rf_to_json
    return {
        "gamma_closed": rf_to_json(report.gamma_closed),
        "gamma_pv": rf_to_json(report.gamma_pv),
        "max_coeff_diff": report.max_coeff_diff,
        "shells": [report.shells_used[0], report.shells_used[1]],
    }
