"""Step functions on Q_p and Q_p^x with exact transforms.

Two function models:

* StepFunction -- finite sums coeff * psi(twist*x) * 1_{center + p^rad Z_p},
  the Schwartz-Bruhat functions on Q_p.  The class is closed under the
  standard Fourier transform, which is computed term by term in closed form:

      F_psi(psi(a.)1_{b+p^n Z_p})(y) = p^(-n) psi(ab) psi(by) 1_{-a+p^(-n)Z_p}(y).

* MultStepFunction -- finite sums coeff * 1_{rep*(1+p^k Z_p)} (k = 0 meaning
  rep*Z_p^x), the compactly supported locally constant functions on Q_p^x.
  Cosets are disjointified per shell on construction.

MellinData maps each unitary unit-group character omega (with t = 1) to the
rational function M(f)(omega)(X) = integral of f(x) omega(x) |x|^s dx*; for a
compactly supported f each component is a Laurent polynomial and the finite
character sum inverts it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .characters import MultChar, unitary_components
from .defaults import DEFAULT_PREC, PRUNE_REL_EPS
from .padic import PAdicElt, check_prime, psi_value, shell_volume
from .ratfunc import LaurentPoly, RationalFunc, rf_series_coeffs


# ---------------------------------------------------------------------------
# additive model


@dataclass(frozen=True)
class StepTerm:
    coeff: complex
    twist: PAdicElt | None   # None encodes twist 0 (no oscillation)
    center: PAdicElt | None  # None encodes the ball p^rad Z_p around 0
    rad: int

    def ball_contains(self, x: PAdicElt | None) -> bool:
        if x is None:
            return self.center is None
        if self.center is None:
            return x.val >= self.rad
        d = x.sub(self.center)
        return d is None or d.val >= self.rad


class StepFunction:
    """A Schwartz-Bruhat function on Q_p in reduced term form."""

    def __init__(self, p: int, terms):
        check_prime(p)
        self.p = p
        self.terms = tuple(self._reduce(t) for t in terms
                           if t.coeff != 0)

    def _reduce(self, t: StepTerm) -> StepTerm:
        coeff, twist, center, rad = t.coeff, t.twist, t.center, t.rad
        if center is not None and center.val >= rad:
            center = None
        if center is not None and center.val < rad:
            # canonical ball label: center taken mod p^rad
            k = rad - center.val
            center = PAdicElt(self.p, center.val, center.unit_mod(k),
                              max(center.prec, DEFAULT_PREC))
        if twist is not None and twist.val + rad >= 0:
            # psi(twist*x) is constant on the ball; fold it into the coeff
            if center is not None:
                coeff *= psi_value(twist.mul(center))
            twist = None
        return StepTerm(complex(coeff), twist, center, rad)

    def __mul__(self, c: complex) -> "StepFunction":
        return StepFunction(self.p, [StepTerm(t.coeff * c, t.twist, t.center, t.rad)
                                     for t in self.terms])

    __rmul__ = __mul__

    def __add__(self, other: "StepFunction") -> "StepFunction":
        if self.p != other.p:
            raise ValueError("mixed primes")
        return StepFunction(self.p, self.terms + other.terms)

    def eval(self, x: PAdicElt | None) -> complex:
        total = 0.0 + 0.0j
        for t in self.terms:
            if t.ball_contains(x):
                v = t.coeff
                if t.twist is not None and x is not None:
                    v *= psi_value(t.twist.mul(x))
                total += v
        return total

    def __repr__(self) -> str:
        return "StepFunction(p=%d, %d terms)" % (self.p, len(self.terms))


def indicator_ball(p: int, center: PAdicElt | None, rad: int,
                   coeff: complex = 1.0, twist: PAdicElt | None = None) -> StepFunction:
    return StepFunction(p, [StepTerm(complex(coeff), twist, center, rad)])


def fourier_transform(f: StepFunction, inverse_psi: bool = False) -> StepFunction:
    """The standard Fourier transform F_psi (or F_{psi^(-1)}) of f.

    Exact closed form per term; F_psi followed by F_{psi^(-1)} is the
    identity.
    """
    out = []
    for t in f.terms:
        coeff = t.coeff * float(f.p) ** (-t.rad)
        if t.twist is not None and t.center is not None:
            coeff *= psi_value(t.twist.mul(t.center))
        if inverse_psi:
            twist = t.center.neg() if t.center is not None else None
            center = t.twist
        else:
            twist = t.center
            center = t.twist.neg() if t.twist is not None else None
        out.append(StepTerm(coeff, twist, center, -t.rad))
    return StepFunction(f.p, out)


def _ball_intersection(t1: StepTerm, t2: StepTerm):
    """Intersection of the two balls: (center, rad) or None if disjoint.

    Balls are nested or disjoint; in reduced form a non-None center has
    valuation < rad, so the center difference decides containment.
    """
    a, b = (t1, t2) if t1.rad <= t2.rad else (t2, t1)
    if b.center is None and a.center is None:
        return (b.center, b.rad)
    if b.center is None:
        return None  # 0 lies in a's ball only if a.center reduced to None
    if a.center is None:
        return (b.center, b.rad) if b.center.val >= a.rad else None
    d = b.center.sub(a.center)
    if d is not None and d.val < a.rad:
        return None
    return (b.center, b.rad)


def step_inner(f: StepFunction, g: StepFunction) -> complex:
    """Exact L2 pairing integral of f * conj(g) against d+x."""
    if f.p != g.p:
        raise ValueError("mixed primes")
    p = f.p
    total = 0.0 + 0.0j
    for t1 in f.terms:
        for t2 in g.terms:
            inter = _ball_intersection(t1, t2)
            if inter is None:
                continue
            center, rad = inter
            # effective oscillation psi((a1 - a2) x) on the intersection
            if t1.twist is None and t2.twist is None:
                b = None
            elif t2.twist is None:
                b = t1.twist
            elif t1.twist is None:
                b = t2.twist.neg()
            else:
                b = t1.twist.sub(t2.twist)
            if b is not None and b.val + rad < 0:
                continue  # full additive character sum over the ball: 0
            val = float(p) ** (-rad)
            if b is not None and center is not None:
                val *= psi_value(b.mul(center))
            total += t1.coeff * t2.coeff.conjugate() * val
    return total


def step_l2(f: StepFunction) -> float:
    return step_inner(f, f).real


def step_distance_sq(f: StepFunction, g: StepFunction) -> float:
    """Exact integral of |f - g|^2 against d+x."""
    return max(step_l2(f) + step_l2(g) - 2.0 * step_inner(f, g).real, 0.0)


# ---------------------------------------------------------------------------
# multiplicative model


@dataclass(frozen=True)
class MultTerm:
    coeff: complex
    rep: PAdicElt
    k: int  # coset 1 + p^k Z_p; k = 0 means rep * Z_p^x


class MultStepFunction:
    """A compactly supported locally constant function on Q_p^x.

    Terms are normalized so that, within each shell, all cosets share a
    common level and are pairwise disjoint.
    """

    def __init__(self, p: int, terms):
        check_prime(p)
        self.p = p
        self.terms = self._normalize([t for t in terms if t.coeff != 0])

    def _normalize(self, terms) -> tuple[MultTerm, ...]:
        p = self.p
        by_shell: dict[int, list[MultTerm]] = {}
        for t in terms:
            if t.k < 0:
                raise ValueError("coset level must be >= 0")
            by_shell.setdefault(t.rep.val, []).append(t)
        out: list[MultTerm] = []
        scale = max((abs(t.coeff) for t in terms), default=0.0)
        cut = scale * PRUNE_REL_EPS
        for m in sorted(by_shell):
            shell_terms = by_shell[m]
            level = max(t.k for t in shell_terms)
            merged: dict[int, complex] = {}
            for t in shell_terms:
                for u in _refined_units(p, t, level):
                    merged[u] = merged.get(u, 0.0) + t.coeff
            for u in sorted(merged):
                c = merged[u]
                if abs(c) <= cut or c == 0:
                    continue
                rep = PAdicElt(p, m, u, DEFAULT_PREC)
                out.append(MultTerm(complex(c), rep, level))
        return tuple(out)

    def max_level(self) -> int:
        return max((t.k for t in self.terms), default=0)

    def shells(self) -> list[int]:
        return sorted({t.rep.val for t in self.terms})

    def eval(self, x: PAdicElt) -> complex:
        for t in self.terms:
            if x.val != t.rep.val:
                continue
            if t.k == 0 or x.unit_mod(t.k) == t.rep.unit_mod(t.k):
                return t.coeff
        return 0.0 + 0.0j

    def scaled_arg(self, a: PAdicElt) -> "MultStepFunction":
        """The translate x -> f(a^(-1) x), supported on a * supp(f)."""
        return MultStepFunction(self.p,
                                [MultTerm(t.coeff, a.mul(t.rep), t.k)
                                 for t in self.terms])

    def __mul__(self, c: complex) -> "MultStepFunction":
        return MultStepFunction(self.p, [MultTerm(t.coeff * c, t.rep, t.k)
                                         for t in self.terms])

    __rmul__ = __mul__

    def __add__(self, other: "MultStepFunction") -> "MultStepFunction":
        if self.p != other.p:
            raise ValueError("mixed primes")
        return MultStepFunction(self.p, self.terms + other.terms)

    def __repr__(self) -> str:
        return "MultStepFunction(p=%d, %d terms)" % (self.p, len(self.terms))


def _refined_units(p: int, t: MultTerm, level: int):
    """Unit residues mod p^level of the 1+p^level cosets tiling t's coset."""
    if level == 0:
        yield 1
        return
    mod = p ** level
    if t.k == 0:
        for u in range(1, mod):
            if u % p:
                yield u
        return
    u_rep = t.rep.unit_mod(level)
    step = p ** t.k
    for j in range(p ** (level - t.k)):
        yield (u_rep * (1 + step * j)) % mod


def coset_indicator(p: int, rep: PAdicElt, k: int, coeff: complex = 1.0) -> MultStepFunction:
    return MultStepFunction(p, [MultTerm(complex(coeff), rep, k)])


def unit_indicator(p: int, m: int = 0, coeff: complex = 1.0) -> MultStepFunction:
    """The indicator of the shell p^m Z_p^x."""
    return coset_indicator(p, PAdicElt(p, m, 1, DEFAULT_PREC), 0, coeff)


def delta_approximant(p: int, k: int) -> MultStepFunction:
    """1_{1+p^k Z_p} / vol, the convolution unit at scale k (k >= 1)."""
    if k < 1:
        raise ValueError("delta approximant needs k >= 1")
    vol = float(p) ** (-k)
    return coset_indicator(p, PAdicElt(p, 0, 1, DEFAULT_PREC), k, 1.0 / vol)


def mult_convolve(f: MultStepFunction, g: MultStepFunction) -> MultStepFunction:
    """(f*g)(x) = integral of f(y) g(y^(-1) x) dy*, exact on coset pairs."""
    if f.p != g.p:
        raise ValueError("mixed primes")
    p = f.p
    out: list[MultTerm] = []
    for t1 in f.terms:
        for t2 in g.terms:
            level = max(t1.k, t2.k)
            if level == 0:
                # full shells: S_a * S_b spreads over S_{a+b} with volume 1-1/p
                rep = PAdicElt(p, t1.rep.val + t2.rep.val, 1, DEFAULT_PREC)
                out.append(MultTerm(t1.coeff * t2.coeff * shell_volume(0, p), rep, 0))
                continue
            vol = float(p) ** (-level)
            for u1 in _refined_units(p, t1, level):
                r1 = PAdicElt(p, t1.rep.val, u1, DEFAULT_PREC)
                for u2 in _refined_units(p, t2, level):
                    r2 = PAdicElt(p, t2.rep.val, u2, DEFAULT_PREC)
                    out.append(MultTerm(t1.coeff * t2.coeff * vol,
                                        r1.mul(r2), level))
    return MultStepFunction(p, out)


# ---------------------------------------------------------------------------
# Mellin data


@dataclass
class MellinData:
    """Components omega -> M(f)(omega)(X), for unitary omega with t = 1."""

    p: int
    c_max: int
    comps: dict[MultChar, RationalFunc] = field(default_factory=dict)

    def component(self, omega: MultChar) -> RationalFunc:
        if omega.cond > self.c_max:
            raise KeyError("component of conductor %d beyond c_max %d"
                           % (omega.cond, self.c_max))
        zero = RationalFunc.zero(self.p)
        return self.comps.get(omega.unitary_part(), zero)

    def nonzero_components(self):
        return [(w, rf) for w, rf in self.comps.items() if not rf.is_zero()]


def mellin(f: MultStepFunction, c_max: int | None = None) -> MellinData:
    """M(f)(omega)(X) = sum_m X^m * (coset sums of f * omega on S_m)."""
    p = f.p
    if c_max is None:
        c_max = f.max_level()
    if c_max < f.max_level():
        raise ValueError("c_max %d below the function's coset level %d"
                         % (c_max, f.max_level()))
    comps: dict[MultChar, dict[int, complex]] = {}
    omegas = unitary_components(p, c_max)
    for omega in omegas:
        acc: dict[int, complex] = {}
        for t in f.terms:
            if omega.cond > t.k:
                continue  # omega nontrivial on the coset subgroup: integral 0
            vol = shell_volume(0, p) if t.k == 0 else float(p) ** (-t.k)
            val = omega.unit_value(t.rep.unit_mod(omega.cond)) \
                if omega.cond else 1.0 + 0.0j
            m = t.rep.val
            acc[m] = acc.get(m, 0.0) + t.coeff * val * vol
        comps[omega] = acc
    data = MellinData(p, c_max)
    for omega, acc in comps.items():
        poly = LaurentPoly(p, acc)
        if not poly.is_zero():
            data.comps[omega] = RationalFunc.from_poly(poly)
    return data


def mellin_invert(d: MellinData, m_lo: int, m_hi: int, c_max: int) -> MultStepFunction:
    """Reconstruct shell values on m in [m_lo, m_hi], refined to 1+p^c_max
    cosets, by finite character sums against the series coefficients.

    Exact left-inverse of `mellin` on the window.
    """
    for omega, rf in d.comps.items():
        if omega.cond > c_max and not rf.is_zero():
            raise ValueError("nonzero component of conductor %d exceeds c_max %d"
                             % (omega.cond, c_max))
    p = d.p
    vol_units = shell_volume(0, p)
    omegas = [w for w in unitary_components(p, c_max) if w.unitary_part() in d.comps]
    series = {w: rf_series_coeffs(d.comps[w], m_lo, m_hi) for w in omegas}
    terms = []
    if c_max == 0:
        unit_reps = [1]
    else:
        mod = p ** c_max
        unit_reps = [u for u in range(1, mod) if u % p]
    for i, m in enumerate(range(m_lo, m_hi + 1)):
        for u in unit_reps:
            v = 0.0 + 0.0j
            for w in omegas:
                c = series[w][i]
                if c == 0:
                    continue
                wu = w.unit_value(u) if w.cond else 1.0 + 0.0j
                v += c * wu.conjugate()
            v /= vol_units
            if v != 0:
                terms.append(MultTerm(v, PAdicElt(p, m, u, DEFAULT_PREC), c_max))
    return MultStepFunction(p, terms)


def mult_distance(f: MultStepFunction, g: MultStepFunction,
                  shells: tuple[int, int] | None = None) -> float:
    """Max pointwise |f - g| over coset representatives of the joint support
    (or of the given shell window)."""
    p = f.p
    level = max(f.max_level(), g.max_level(), 1)
    if shells is None:
        ms = sorted(set(f.shells()) | set(g.shells()))
    else:
        ms = list(range(shells[0], shells[1] + 1))
    mod = p ** level
    worst = 0.0
    for m in ms:
        for u in range(1, mod):
            if u % p == 0:
                continue
            x = PAdicElt(p, m, u, DEFAULT_PREC)
            worst = max(worst, abs(f.eval(x) - g.eval(x)))
    return worst
