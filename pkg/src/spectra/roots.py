"""Certified complex root isolation for integer polynomials.

Approximations come from mpmath (polish only); every stated enclosure is then
certified a posteriori in exact rational arithmetic.  For a snapped dyadic
center c the bound min_r |c - r| <= d*|f(c)/f'(c)| guarantees a root within
that radius, so d pairwise-disjoint discs for a squarefree degree-d factor
each contain exactly one root, and every root lies in exactly one disc.  A
disc centered on the real axis containing exactly one root contains a real
root (the conjugate of its root lies in the same disc), which makes the
real/non-real labels rigorous rather than numerical.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

import mpmath

from .errors import PrecisionExhausted, UsageError
from .intervals import Box, RatInterval, sqrt_upper
from .polyalg import (
    IntPolynomial,
    count_real_roots,
    sqf_factors_with_multiplicity,
)

DEFAULT_EPS = Fraction(1, 2**48)
DEFAULT_BUDGET_BITS = 4096


def _mpf_to_fraction(x) -> Fraction:
    """Exact value of an mpmath float (mpfs are dyadic rationals)."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    v = Fraction(-man if sign else man)
    if exp >= 0:
        return v * (1 << exp)
    return v / (1 << -exp)


def _snap(x, bits: int) -> Fraction:
    """Round an mpmath float to a dyadic rational with 2^-bits resolution."""
    f = _mpf_to_fraction(x)
    scale = 1 << bits
    return Fraction(round(f * scale), scale)


@dataclass(frozen=True)
class RootBox:
    """Certified disc around one root: Gaussian-rational center plus radius.

    ``center_im == 0`` exactly when the enclosed root is real.  ``is_exact``
    marks centers that are roots themselves (the radius is then padding).
    """

    center_re: Fraction
    center_im: Fraction
    radius: Fraction
    multiplicity: int = 1
    is_exact: bool = False

    def box(self) -> Box:
        r = self.radius
        re = RatInterval(self.center_re - r, self.center_re + r)
        if self.center_im == 0:
            # Real root: collapse the imaginary direction exactly.
            return Box(re, RatInterval.point(0))
        return Box(re, RatInterval(self.center_im - r, self.center_im + r))

    @property
    def is_real(self) -> bool:
        return self.center_im == 0

    def real_interval(self) -> RatInterval:
        if not self.is_real:
            raise ValueError("root is not real")
        return RatInterval(self.center_re - self.radius, self.center_re + self.radius)

    def dist2_to(self, other: "RootBox") -> Fraction:
        dr = self.center_re - other.center_re
        di = self.center_im - other.center_im
        return dr * dr + di * di

    def disjoint_from(self, other: "RootBox") -> bool:
        s = self.radius + other.radius
        return self.dist2_to(other) > s * s

    def __complex__(self) -> complex:
        return complex(float(self.center_re), float(self.center_im))


def _gaussian_eval(p: IntPolynomial, re: Fraction, im: Fraction) -> tuple[Fraction, Fraction]:
    """p(re + i*im) as an exact Gaussian rational (a, b) meaning a + i*b."""
    a, b = Fraction(0), Fraction(0)
    for c in reversed(p.coeffs):
        a, b = a * re - b * im + c, a * im + b * re
    return a, b


def _certified_radius(fac: IntPolynomial, re: Fraction, im: Fraction, bits: int) -> Fraction | None:
    """Upper bound on the distance from (re, im) to the nearest root of fac.

    Returns None when the derivative vanishes at the center (retry closer).
    An exact zero residual gives radius 0.
    """
    fa, fb = _gaussian_eval(fac, re, im)
    if fa == 0 and fb == 0:
        return Fraction(0)
    da, db = _gaussian_eval(fac.derivative(), re, im)
    d2 = da * da + db * db
    if d2 == 0:
        return None
    d = fac.degree
    rho2 = Fraction(d * d) * (fa * fa + fb * fb) / d2
    return sqrt_upper(rho2, bits)


def _dps_cap(budget_bits: int) -> int:
    return max(60, (budget_bits * 3) // 10)


def _polish_factor(fac: IntPolynomial, dps: int, eps: Fraction) -> list[RootBox] | None:
    """One precision rung: approximate, label real/complex, snap, certify.

    Returns certified pairwise-disjoint boxes with radius <= eps, or None to
    request more precision.  Soundness never rests on the numerics: a wrong
    label or a stale approximation fails certification and bumps the ladder.
    """
    d = fac.degree
    desc = [int(c) for c in reversed(fac.coeffs)]
    with mpmath.workdps(dps):
        try:
            approx = mpmath.polyroots(desc, maxsteps=200, extraprec=120)
        except (mpmath.libmp.NoConvergence, ZeroDivisionError):
            return None
        n_real = count_real_roots(fac)
        order = sorted(range(d), key=lambda i: abs(mpmath.im(approx[i])))
        real_idx = set(order[:n_real])
        reals = [mpmath.re(approx[i]) for i in order[:n_real]]
        pos = sorted(
            (approx[i] for i in range(d) if i not in real_idx and mpmath.im(approx[i]) > 0),
            key=lambda z: (mpmath.re(z), mpmath.im(z)),
        )
        neg = sorted(
            (approx[i] for i in range(d) if i not in real_idx and mpmath.im(approx[i]) <= 0),
            key=lambda z: (mpmath.re(z), -mpmath.im(z)),
        )
        if len(pos) != len(neg):
            return None
        bits = max(64, (dps * 10) // 3)
        boxes: list[RootBox] = []
        for r in reals:
            cre = _snap(r, bits)
            rho = _certified_radius(fac, cre, Fraction(0), 2 * bits)
            if rho is None:
                return None
            exact = rho == 0
            rad = Fraction(1, 1 << (2 * bits)) if exact else rho * Fraction(3, 2)
            boxes.append(RootBox(cre, Fraction(0), rad, is_exact=exact))
        for zp, zn in zip(pos, neg):
            cre = _snap((mpmath.re(zp) + mpmath.re(zn)) / 2, bits)
            cim = _snap((mpmath.im(zp) - mpmath.im(zn)) / 2, bits)
            if cim <= 0:
                return None
            rho = _certified_radius(fac, cre, cim, 2 * bits)
            if rho is None:
                return None
            rad = rho * Fraction(3, 2)
            if rad == 0:
                rad = Fraction(1, 1 << (2 * bits))
            if cim <= rad:
                return None  # non-real disc must clear the real axis
            boxes.append(RootBox(cre, cim, rad))
            boxes.append(RootBox(cre, -cim, rad))
    if len(boxes) != d or any(b.radius > eps for b in boxes):
        return None
    for i in range(d):
        for j in range(i + 1, d):
            if not boxes[i].disjoint_from(boxes[j]):
                return None
    return boxes


def _isolate_with_factors(
    p: IntPolynomial, eps: Fraction, budget_bits: int
) -> list[tuple[RootBox, IntPolynomial]]:
    """Certified discs for all roots of p, each paired with its squarefree factor."""
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    prim = p.primitive()
    if prim.degree == 0:
        return []
    factors = [(f, m) for f, m in sqf_factors_with_multiplicity(prim) if f.degree >= 1]
    dps = 30
    cap = _dps_cap(budget_bits)
    cur_eps = eps
    while True:
        out: list[tuple[RootBox, IntPolynomial]] = []
        ok = True
        for fac, mult in factors:
            if fac.degree == 1:
                center = Fraction(-fac.constant, fac.leading)
                rb = RootBox(center, Fraction(0), min(cur_eps, Fraction(1, 2**80)),
                             multiplicity=mult, is_exact=True)
                out.append((rb, fac))
                continue
            boxes = _polish_factor(fac, dps, cur_eps)
            if boxes is None:
                ok = False
                break
            out.extend((replace(b, multiplicity=mult), fac) for b in boxes)
        if ok:
            n = len(out)
            for i in range(n):
                if not ok:
                    break
                for j in range(i + 1, n):
                    if not out[i][0].disjoint_from(out[j][0]):
                        ok = False
                        break
        if ok:
            out.sort(key=lambda t: (t[0].center_re, t[0].center_im))
            return out
        dps *= 2
        cur_eps = cur_eps / 16  # cross-factor collision: force tighter discs
        if dps > cap:
            raise PrecisionExhausted(
                f"root isolation of {p} needs more than {budget_bits} bits"
            )


def isolate_roots(
    p: IntPolynomial,
    eps: Fraction = DEFAULT_EPS,
    budget_bits: int = DEFAULT_BUDGET_BITS,
) -> list[RootBox]:
    """All complex roots of p in certified pairwise-disjoint discs.

    Each disc contains exactly one root of p, carries that root's
    multiplicity in p, and has radius at most eps.  Real roots get exactly
    real centers.  Sorted by (Re, Im) with exact comparisons.
    """
    return [rb for rb, _ in _isolate_with_factors(p, eps, budget_bits)]


@dataclass(frozen=True)
class AlgebraicNumber:
    """One root of an integer polynomial with a certified, refinable disc.

    ``defining`` is the primitive input polynomial; ``factor`` is the
    squarefree factor this root belongs to, used for all exact arithmetic.
    """

    defining: IntPolynomial
    factor: IntPolynomial
    root: RootBox
    budget_bits: int = DEFAULT_BUDGET_BITS

    @property
    def is_real(self) -> bool:
        return self.root.is_real

    def box(self) -> Box:
        return self.root.box()

    def interval(self) -> RatInterval:
        return self.root.real_interval()

    def mag2(self) -> RatInterval:
        return self.box().mag2()

    def approx(self) -> complex:
        return complex(self.root)

    def decimal(self, sig: int = 20) -> str:
        if self.is_real:
            return self.interval().decimal(sig)
        re, im = self.box().decimal_pair(sig)
        joiner = "-" if im.startswith("-") else "+"
        return f"{re} {joiner} {im.lstrip('-')}i"

    def refined(self, eps: Fraction) -> "AlgebraicNumber":
        """Same root, radius at most eps, new disc nested inside the old one."""
        rb = self.root
        if rb.radius <= eps:
            return self
        if rb.is_exact:
            return replace(self, root=replace(rb, radius=min(rb.radius, eps)))
        fac = self.factor
        desc = [int(c) for c in reversed(fac.coeffs)]
        dps = 30
        cap = _dps_cap(self.budget_bits)
        while dps <= cap:
            with mpmath.workdps(dps):
                if rb.is_real:
                    z = mpmath.mpf(rb.center_re.numerator) / rb.center_re.denominator
                else:
                    z = mpmath.mpc(
                        mpmath.mpf(rb.center_re.numerator) / rb.center_re.denominator,
                        mpmath.mpf(rb.center_im.numerator) / rb.center_im.denominator,
                    )
                try:
                    for _ in range(300):
                        val, der = mpmath.polyval(desc, z, derivative=True)
                        if der == 0:
                            break
                        step = val / der
                        z = z - step
                        if abs(step) < mpmath.mpf(2) ** (-(dps * 10) // 3):
                            break
                except ZeroDivisionError:
                    z = None
                if z is not None:
                    bits = max(64, (dps * 10) // 3)
                    cre = _snap(mpmath.re(z), bits)
                    cim = Fraction(0) if rb.is_real else _snap(mpmath.im(z), bits)
                    rho = _certified_radius(fac, cre, cim, 2 * bits)
                    if rho is not None:
                        exact = rho == 0
                        rad = Fraction(1, 1 << (2 * bits)) if exact else rho * Fraction(3, 2)
                        if rad <= eps and rad <= rb.radius:
                            dr, di = cre - rb.center_re, cim - rb.center_im
                            slack = rb.radius - rad
                            nested = dr * dr + di * di <= slack * slack
                            axis_ok = rb.is_real or abs(cim) > rad
                            if nested and axis_ok:
                                new = RootBox(cre, cim, rad,
                                              multiplicity=rb.multiplicity,
                                              is_exact=exact)
                                return replace(self, root=new)
            dps *= 2
        raise PrecisionExhausted(f"refinement of root of {fac} exhausted budget")


def all_roots(
    p: IntPolynomial,
    eps: Fraction = DEFAULT_EPS,
    budget_bits: int = DEFAULT_BUDGET_BITS,
) -> list[AlgebraicNumber]:
    """Every root of p as an AlgebraicNumber, sorted by (Re, Im)."""
    prim = p.primitive()
    return [
        AlgebraicNumber(prim, fac, rb, budget_bits)
        for rb, fac in _isolate_with_factors(prim, eps, budget_bits)
    ]


def select_root(
    p: IntPolynomial,
    index: int | None = None,
    eps: Fraction = DEFAULT_EPS,
    budget_bits: int = DEFAULT_BUDGET_BITS,
) -> AlgebraicNumber:
    """Pick the working root: by sorted index, or the largest real root in (1, 2).

    Membership in the open interval is decided exactly; endpoint roots are
    excluded.  Raises UsageError when p has no real root in (1, 2).
    """
    nums = all_roots(p, eps, budget_bits)
    if index is not None:
        if not 0 <= index < len(nums):
            raise UsageError(f"root index {index} out of range 0..{len(nums) - 1}")
        return nums[index]
    chosen: list[AlgebraicNumber] = []
    for num in nums:
        if not num.is_real:
            continue
        cur = num
        inside: bool | None = None
        while inside is None:
            iv = cur.interval()
            if iv.strictly_greater(1) and iv.strictly_less(2):
                inside = True
            elif iv.strictly_less(1) or iv.strictly_greater(2):
                inside = False
            elif iv.contains(Fraction(1)) and cur.defining(Fraction(1)) == 0:
                # 1 is a root of p and lies in this disc, so this disc's
                # unique root is 1 itself: excluded by the open interval.
                inside = False
            elif iv.contains(Fraction(2)) and cur.defining(Fraction(2)) == 0:
                inside = False
            else:
                cur = cur.refined(cur.root.radius / 16)
        if inside:
            chosen.append(cur)
    if not chosen:
        raise UsageError(f"{p} has no real root in the open interval (1, 2)")
    return max(chosen, key=lambda a: a.interval().lo)
