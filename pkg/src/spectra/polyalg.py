"""Integer-polynomial algebra and exact residue arithmetic.

``IntPolynomial`` stores ascending integer coefficients and carries the exact
transforms the rest of the package is built on: reversal (reciprocal roots),
the root-squaring transform, power-structure detection, and the pairwise
root-product polynomial computed from Newton power sums.  ``ResidueVector``
implements elements of Q[x]/(f) so that equality of power sums is decidable
with no floating point at all.

Classical plumbing (gcd, squarefree decomposition, Sturm root counting,
factorization over GF(p)) is delegated to sympy; everything specific to power
sums and root products is implemented here.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, lcm

import sympy

from .errors import DegreeOverflow, UsageError, ZeroConstantTerm
from .intervals import RatInterval

_X = sympy.Symbol("x")

INPUT_DEGREE_CAP = 64
PAIR_PRODUCT_DEGREE_CAP = 500


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, ascending by degree.

    The zero polynomial is stored as ``(0,)``; any other coefficient tuple is
    trimmed so the last entry is nonzero.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = tuple(int(v) for v in self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        if not c:
            c = (0,)
        object.__setattr__(self, "coeffs", c)

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_coeffs(coeffs) -> "IntPolynomial":
        return IntPolynomial(tuple(int(v) for v in coeffs))

    @staticmethod
    def parse(text: str) -> "IntPolynomial":
        """Parse either comma-separated ascending coefficients or symbolic form.

        Accepted: ``-1,-1,0,0,1`` and ``x^4 - x - 1`` (integer coefficients,
        ``^`` powers, optional ``*``, no parentheses).  Unicode minus signs
        are normalized.
        """
        s = text.strip().replace("−", "-").replace("–", "-")
        if not s:
            raise UsageError("empty polynomial text")
        if "(" in s or ")" in s:
            raise UsageError("parentheses are not part of the polynomial format")
        if "," in s:
            try:
                return IntPolynomial.from_coeffs(int(t.strip()) for t in s.split(","))
            except ValueError as exc:
                raise UsageError(f"bad coefficient list {text!r}") from exc
        return IntPolynomial._parse_symbolic(s)

    @staticmethod
    def _parse_symbolic(s: str) -> "IntPolynomial":
        compact = s.replace(" ", "").replace("*", "")
        if not compact:
            raise UsageError("empty polynomial text")
        term_re = _re.compile(r"([+-]?)(\d*)(x(?:\^(\d+))?)?")
        pos = 0
        coeffs: dict[int, int] = {}
        while pos < len(compact):
            m = term_re.match(compact, pos)
            if not m or m.end() == pos:
                raise UsageError(f"cannot parse polynomial near {compact[pos:]!r}")
            sign, num, xpart, exp = m.groups()
            if not num and not xpart:
                raise UsageError(f"cannot parse polynomial near {compact[pos:]!r}")
            coeff = int(num) if num else 1
            if sign == "-":
                coeff = -coeff
            if xpart:
                k = int(exp) if exp else 1
            else:
                k = 0
            coeffs[k] = coeffs.get(k, 0) + coeff
            pos = m.end()
        deg = max(coeffs) if coeffs else 0
        return IntPolynomial.from_coeffs(coeffs.get(i, 0) for i in range(deg + 1))

    # -- basics ------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        if self.is_zero():
            return -1
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    @property
    def constant(self) -> int:
        return self.coeffs[0]

    def is_monic_up_to_sign(self) -> bool:
        return abs(self.leading) == 1

    def is_height_one(self) -> bool:
        return not self.is_zero() and all(abs(c) <= 1 for c in self.coeffs)

    def __call__(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def evaluate_interval(self, x: RatInterval) -> RatInterval:
        out = RatInterval.point(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial((0,))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def scale_arg_neg(self) -> "IntPolynomial":
        """p(-x)."""
        return IntPolynomial(tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)))

    def derivative(self) -> "IntPolynomial":
        if self.degree <= 0:
            return IntPolynomial((0,))
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i >= 1))

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, abs(c))
        return g or 1

    def primitive(self) -> "IntPolynomial":
        g = self.content()
        return IntPolynomial(tuple(c // g for c in self.coeffs))

    def monic_rational(self) -> tuple[Fraction, ...]:
        lead = self.leading
        return tuple(Fraction(c, lead) for c in self.coeffs)

    def strip_power_of_x(self) -> tuple["IntPolynomial", int]:
        """Remove the x^v factor; returns (quotient, v)."""
        v = 0
        c = self.coeffs
        while len(c) > 1 and c[0] == 0:
            c = c[1:]
            v += 1
        return IntPolynomial(c), v

    # -- emission ----------------------------------------------------------

    def to_text(self) -> str:
        """Canonical symbolic form, descending powers: ``x^4 - x - 1``."""
        if self.is_zero():
            return "0"
        parts: list[str] = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                xs = "x" if k == 1 else f"x^{k}"
                body = xs if mag == 1 else f"{mag}{xs}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()


# -- sympy bridge ------------------------------------------------------------


def to_sympy(p: IntPolynomial) -> sympy.Poly:
    return sympy.Poly(list(reversed(p.coeffs)), _X, domain=sympy.ZZ)


def from_sympy(sp) -> IntPolynomial:
    coeffs = [int(c) for c in reversed(sympy.Poly(sp, _X).all_coeffs())]
    return IntPolynomial.from_coeffs(coeffs)


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    return from_sympy(sympy.gcd(to_sympy(a), to_sympy(b))).primitive()


def divexact(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Exact quotient of integer polynomials over Q, primitive integer result."""
    q, r = sympy.div(to_sympy(a).as_expr(), to_sympy(b).as_expr(), _X)
    if sympy.simplify(r) != 0:
        raise ValueError("division is not exact")
    qp = sympy.Poly(q, _X)
    den = lcm(*[int(sympy.Rational(c).q) for c in qp.all_coeffs()] or [1])
    return IntPolynomial.from_coeffs(
        int(sympy.Rational(c) * den) for c in reversed(qp.all_coeffs())
    ).primitive()


def divides(b: IntPolynomial, a: IntPolynomial) -> bool:
    """True when b divides a exactly over Q."""
    _, r = sympy.div(to_sympy(a).as_expr(), to_sympy(b).as_expr(), _X)
    return sympy.simplify(r) == 0


def count_real_roots(p: IntPolynomial, lo=None, hi=None) -> int:
    sp = to_sympy(squarefree_part(p))
    return int(sp.count_roots(inf=lo, sup=hi))


def sqf_factors_with_multiplicity(p: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Squarefree decomposition: pairwise-coprime squarefree factors + powers."""
    _, pairs = to_sympy(p).sqf_list()
    return [(from_sympy(f).primitive(), int(m)) for f, m in pairs]


# -- the exact transforms ----------------------------------------------------


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """p / gcd(p, p'): same roots, all simple, primitive."""
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if p.degree <= 0:
        return IntPolynomial((1,))
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return p.primitive()
    return divexact(p, g)


def reverse(p: IntPolynomial) -> IntPolynomial:
    """Coefficient reversal; roots map to their inverses.  Needs p(0) != 0."""
    if p.constant == 0:
        raise ZeroConstantTerm(f"cannot reverse {p}: zero constant term")
    return IntPolynomial(tuple(reversed(p.coeffs)))


def graeffe(p: IntPolynomial) -> IntPolynomial:
    """Root-squaring transform: result has roots exactly the squares of p's.

    Computed as +-p(sqrt(x)) * p(-sqrt(x)): take the even part of p(x)p(-x)
    and fix the sign so the leading coefficient is lc(p)^2.
    """
    if p.is_zero():
        raise ValueError("graeffe of the zero polynomial")
    prod = p * p.scale_arg_neg()
    even = prod.coeffs[0::2]
    out = IntPolynomial(even)
    if p.degree % 2 == 1:
        out = -out
    return out


def detect_power_structure(p: IntPolynomial) -> tuple[int, IntPolynomial]:
    """Largest m with p(x) = g(x^m); returns (m, g), m = 1 meaning none."""
    if p.is_zero():
        raise ValueError("power structure of the zero polynomial")
    exps = [i for i, c in enumerate(p.coeffs) if c != 0 and i > 0]
    if not exps:
        return 1, p
    m = 0
    for e in exps:
        m = gcd(m, e)
    if m <= 1:
        return 1, p
    g = IntPolynomial(tuple(p.coeffs[i] for i in range(0, p.degree + 1, m)))
    return m, g


def negation_conjugate_test(p: IntPolynomial) -> bool:
    """True iff p has a root pair (r, -r) with r != 0, decided exactly.

    Computed as deg gcd(p(x), p(-x)) >= 1 after stripping any x factor from
    the gcd (a root at 0 is its own negation and does not count).
    """
    g = poly_gcd(p, p.scale_arg_neg())
    g, _ = g.strip_power_of_x()
    return g.degree >= 1


def _power_sums(p: IntPolynomial, upto: int) -> list[Fraction]:
    """Power sums s_0..s_upto of the roots via Newton's identities."""
    d = p.degree
    a = p.monic_rational()  # a[0]..a[d], a[d] == 1
    s: list[Fraction] = [Fraction(d)]
    for k in range(1, upto + 1):
        acc = Fraction(0)
        if k <= d:
            acc += k * a[d - k]
        for i in range(1, k):
            if 0 <= d - i <= d and k - i >= 1:
                if d - i < d:  # a[d-i] with i>=1
                    acc += a[d - i] * s[k - i]
        s.append(-acc)
    return s


def _poly_from_power_sums(ps: list[Fraction], degree: int) -> list[Fraction]:
    """Monic polynomial (ascending rational coeffs) with given root power sums."""
    e: list[Fraction] = [Fraction(1)]
    for k in range(1, degree + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * ps[i]
        e.append(acc / k)
    # P = sum_k (-1)^k e_k x^(degree-k), ascending order:
    return [(-1) ** (degree - i) * e[degree - i] for i in range(degree + 1)]


def pair_product_polynomial(p: IntPolynomial) -> IntPolynomial:
    """Integer polynomial whose roots are the products a_i*a_j, i < j.

    Built from power sums: the k-th power sum of the pairwise products is
    (s_k^2 - s_{2k})/2, where s_k are the power sums of p's roots; the
    coefficients are then recovered with Newton's identities.  No resultants.
    """
    d = p.degree
    if d < 2:
        raise ValueError("pair products need degree >= 2")
    target = d * (d - 1) // 2
    if target > PAIR_PRODUCT_DEGREE_CAP:
        raise DegreeOverflow(
            f"pair-product degree {target} exceeds cap {PAIR_PRODUCT_DEGREE_CAP}"
        )
    s = _power_sums(p, 2 * target)
    pair_ps = [Fraction(0)] + [(s[k] * s[k] - s[2 * k]) / 2 for k in range(1, target + 1)]
    coeffs = _poly_from_power_sums(pair_ps, target)
    den = lcm(*[c.denominator for c in coeffs])
    ints = [int(c * den) for c in coeffs]
    out = IntPolynomial.from_coeffs(ints).primitive()
    if out.leading < 0:
        out = -out
    return out


def pair_sum_polynomial(p: IntPolynomial) -> IntPolynomial:
    """Integer polynomial whose roots are the sums a_i + a_j, i < j.

    Same Newton-identity construction as the pair products; the k-th power
    sum of the pairwise sums is (sum_t C(k,t) s_t s_{k-t} - 2^k s_k) / 2.
    Used to reason exactly about 2*Re(a) = a + conj(a) for non-real roots.
    """
    d = p.degree
    if d < 2:
        raise ValueError("pair sums need degree >= 2")
    target = d * (d - 1) // 2
    if target > PAIR_PRODUCT_DEGREE_CAP:
        raise DegreeOverflow(
            f"pair-sum degree {target} exceeds cap {PAIR_PRODUCT_DEGREE_CAP}"
        )
    s = _power_sums(p, 2 * target)
    pair_ps = [Fraction(0)]
    for k in range(1, target + 1):
        acc = Fraction(0)
        for t in range(0, k + 1):
            acc += comb(k, t) * s[t] * s[k - t]
        pair_ps.append((acc - 2**k * s[k]) / 2)
    coeffs = _poly_from_power_sums(pair_ps, target)
    den = lcm(*[c.denominator for c in coeffs])
    ints = [int(c * den) for c in coeffs]
    out = IntPolynomial.from_coeffs(ints).primitive()
    if out.leading < 0:
        out = -out
    return out


# -- irreducibility certification --------------------------------------------

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _has_rational_root(p: IntPolynomial) -> bool:
    a0, ad = abs(p.constant), abs(p.leading)
    if a0 == 0:
        return True
    num_divs = [i for i in range(1, a0 + 1) if a0 % i == 0] if a0 <= 10**6 else None
    den_divs = [i for i in range(1, ad + 1) if ad % i == 0] if ad <= 10**6 else None
    if num_divs is None or den_divs is None:
        return False  # too big to screen; stay inconclusive elsewhere
    for n in num_divs:
        for d in den_divs:
            r = Fraction(n, d)
            if p(r) == 0 or p(-r) == 0:
                return True
    return False


def _subset_sums(degrees: list[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


@lru_cache(maxsize=256)
def certify_irreducible(p: IntPolynomial) -> tuple[bool, tuple[str, ...]]:
    """Best-effort irreducibility certificate over Q.

    Returns (verified, evidence).  ``verified`` is True only when the
    reduction-mod-p factor degrees rule out every proper factor degree, or
    the degree is <= 1.  A False result means "not verified", never "proved
    reducible" unless the evidence says so explicitly.
    """
    q = p.primitive()
    d = q.degree
    if d <= 0:
        return False, ("constant",)
    if d == 1:
        return True, ("degree-1",)
    if q.constant == 0:
        return False, ("reducible: x divides",)
    if _has_rational_root(q):
        return False, ("reducible: rational root",)
    # Cyclotomics can factor modulo every prime, so certify them directly.
    for n in range(1, 33):
        cyc = from_sympy(sympy.cyclotomic_poly(n, _X))
        if cyc.degree != d:
            continue
        if q == cyc or q == -cyc:
            return True, (f"cyclotomic({n})",)
    achievable: set[int] | None = None
    used: list[str] = []
    for prime in _SMALL_PRIMES:
        if q.leading % prime == 0:
            continue
        try:
            fp = sympy.Poly(list(reversed(q.coeffs)), _X, modulus=prime)
            _, factors = fp.factor_list()
        except sympy.polys.polyerrors.PolynomialError:  # pragma: no cover
            continue
        if any(m > 1 for _, m in factors):
            continue  # not squarefree mod prime: degree pattern unusable
        degs = [int(sympy.Poly(f, _X).degree()) for f, _ in factors]
        if sum(degs) != d:
            continue
        sums = _subset_sums(degs)
        achievable = sums if achievable is None else (achievable & sums)
        used.append(f"mod {prime}: degrees {sorted(degs)}")
        if achievable <= {0, d}:
            return True, tuple(used)
        if len(used) >= 6:
            break
    return False, tuple(used) if used else ("no usable primes",)


# -- residue arithmetic -------------------------------------------------------


@dataclass(frozen=True)
class ResidueVector:
    """Element of Q[x]/(f) for squarefree f, monic up to sign.

    The coordinates are the canonical representative's coefficients, so
    equality and zero tests are exact rational comparisons.
    """

    modulus: IntPolynomial
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        d = self.modulus.degree
        if d < 1:
            raise ValueError("residue modulus must have degree >= 1")
        c = tuple(Fraction(v) for v in self.coords)
        if len(c) != d:
            raise ValueError(f"need exactly {d} coordinates, got {len(c)}")
        object.__setattr__(self, "coords", c)

    # construction
    @staticmethod
    def zero(modulus: IntPolynomial) -> "ResidueVector":
        return ResidueVector(modulus, (Fraction(0),) * modulus.degree)

    @staticmethod
    def one(modulus: IntPolynomial) -> "ResidueVector":
        d = modulus.degree
        return ResidueVector(modulus, (Fraction(1),) + (Fraction(0),) * (d - 1))

    @staticmethod
    def from_polynomial(modulus: IntPolynomial, p: IntPolynomial) -> "ResidueVector":
        out = ResidueVector.zero(modulus)
        for c in reversed(p.coeffs):
            out = out.mul_x_inplace_style()
            if c:
                out = out + ResidueVector.constant(modulus, Fraction(c))
        return out

    @staticmethod
    def constant(modulus: IntPolynomial, v: Fraction) -> "ResidueVector":
        d = modulus.degree
        return ResidueVector(modulus, (Fraction(v),) + (Fraction(0),) * (d - 1))

    @staticmethod
    def x_power(modulus: IntPolynomial, k: int) -> "ResidueVector":
        out = ResidueVector.one(modulus)
        for _ in range(k):
            out = out.mul_x_inplace_style()
        return out

    # arithmetic
    def _check(self, other: "ResidueVector") -> None:
        if self.modulus != other.modulus:
            raise ValueError("residue moduli differ")

    def __add__(self, other: "ResidueVector") -> "ResidueVector":
        self._check(other)
        return ResidueVector(self.modulus, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "ResidueVector") -> "ResidueVector":
        self._check(other)
        return ResidueVector(self.modulus, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "ResidueVector":
        return ResidueVector(self.modulus, tuple(-a for a in self.coords))

    def scaled(self, k) -> "ResidueVector":
        f = Fraction(k)
        return ResidueVector(self.modulus, tuple(a * f for a in self.coords))

    def mul_x_inplace_style(self) -> "ResidueVector":
        """Multiply by x and reduce: the shift-and-fold step."""
        mod = self.modulus
        d = mod.degree
        lead = mod.leading
        top = self.coords[d - 1]
        shifted = (Fraction(0),) + self.coords[: d - 1]
        if top == 0:
            return ResidueVector(mod, shifted)
        # x^d == -(a_0 + ... + a_{d-1} x^{d-1}) / a_d
        fold = tuple(shifted[i] - top * Fraction(mod.coeffs[i], lead) for i in range(d))
        return ResidueVector(mod, fold)

    def __mul__(self, other: "ResidueVector") -> "ResidueVector":
        self._check(other)
        mod = self.modulus
        d = mod.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        prod[i + j] += a * b
        out = ResidueVector.zero(mod)
        for c in reversed(prod):
            out = out.mul_x_inplace_style()
            if c:
                out = out + ResidueVector.constant(mod, c)
        return out

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def evaluate_interval(self, x: RatInterval) -> RatInterval:
        out = RatInterval.point(0)
        for c in reversed(self.coords):
            out = out * x + c
        return out
