"""q-Pochhammer symbols, infinite products, Gaussian binomials, theta sums.

Monomial arguments follow the convention of :mod:`rrs.series`: the symbol
(A; q^m)_n with A = sign*x^a*q^b expands as the product of binomials
1 - A*q^(m*j) for j = 0..n-1 (or all j >= 0 for the infinite symbol).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .series import Monomial, NotInvertibleError, Series, SeriesError

__all__ = [
    "InvalidProductError",
    "poch_finite",
    "poch_infinite",
    "inv_poch_finite",
    "inv_poch_infinite",
    "gauss_binom",
    "ProductExpr",
    "product_expand",
    "theta_triple_sum",
    "triple_product",
    "FactorBag",
]


class InvalidProductError(SeriesError):
    """A product whose factors do not terminate below the truncation order."""


def _geometric_inverse(m: Monomial, trunc: int) -> Series:
    """1/(1 - m) as a truncated series; m must have q_exp >= 1."""
    if m.q_exp < 1:
        raise NotInvertibleError(f"factor (1 - {m}) is not a unit of the truncated ring")
    coeffs: dict[int, dict] = {}
    t = 0
    while t * m.q_exp < trunc:
        sgn = 1 if (m.sign == 1 or t % 2 == 0) else -1
        coeffs[t * m.q_exp] = {t * m.x_exp: sgn}
        t += 1
    return Series(coeffs, trunc)


def poch_finite(a: Monomial, base: int, n: int, trunc: int | None = None) -> Series:
    """(a; q^base)_n as an exact polynomial (or truncated if trunc is given)."""
    if base < 1:
        raise InvalidProductError("Pochhammer base must be a positive q-power")
    if n < 0:
        raise ValueError("finite Pochhammer needs n >= 0")
    out = Series.one(trunc)
    for j in range(n):
        out = out * Series.one_minus(a.q_shifted(base * j))
    return out


def poch_infinite(a: Monomial, base: int, trunc: int) -> Series:
    """(a; q^base)_infinity, exact to the truncation order."""
    if base < 1:
        raise InvalidProductError("infinite Pochhammer base must be positive")
    out = Series.one(trunc)
    j = 0
    while a.q_exp + base * j < trunc:
        out = out * Series.one_minus(a.q_shifted(base * j))
        j += 1
    return out


def inv_poch_finite(a: Monomial, base: int, n: int, trunc: int) -> Series:
    """1/(a; q^base)_n; every factor must be a unit (q-exponent >= 1)."""
    out = Series.one(trunc)
    for j in range(n):
        out = out * _geometric_inverse(a.q_shifted(base * j), trunc)
    return out


def inv_poch_infinite(a: Monomial, base: int, trunc: int) -> Series:
    """1/(a; q^base)_infinity; requires a.q_exp >= 1."""
    if base < 1:
        raise InvalidProductError("infinite Pochhammer base must be positive")
    if a.q_exp < 1:
        raise NotInvertibleError(f"1/({a}; q^{base})_inf is outside the series ring")
    out = Series.one(trunc)
    j = 0
    while a.q_exp + base * j < trunc:
        out = out * _geometric_inverse(a.q_shifted(base * j), trunc)
        j += 1
    return out


def gauss_binom(A: int, B: int, base: int = 1, trunc: int | None = None) -> Series:
    """Gaussian binomial [A, B] at q -> q^base; zero unless 0 <= B <= A.

    The standard convention is used: the bracket is the Pochhammer quotient
    (q;q)_A / ((q;q)_B (q;q)_{A-B}) exactly when 0 <= B <= A.
    """
    if trunc is None:
        trunc = B * (A - B) * base + 1 if 0 <= B <= A else 1
    if B < 0 or B > A:
        return Series.zero(trunc)
    # (q;q)_A/(q;q)_B = (q^{B+1};q)_{A-B}
    num = poch_finite(Monomial(1, 0, base * (B + 1)), base, A - B)
    den = inv_poch_finite(Monomial(1, 0, base), base, A - B, trunc)
    return (num * den).truncate(trunc)


@dataclass(frozen=True)
class ProductExpr:
    """Quotient of infinite q-Pochhammer products with signed monomial terms.

    Each entry is (term, modulus) representing (term; q^modulus)_infinity.
    Denominator terms must have q_exp >= 1 so the denominator is a unit.
    """

    num: tuple = field(default_factory=tuple)
    den: tuple = field(default_factory=tuple)

    def __post_init__(self):
        for term, m in tuple(self.num) + tuple(self.den):
            if m < 1:
                raise InvalidProductError(f"modulus {m} < 1 in ({term}; q^{m})_inf")
        for term, m in self.den:
            if term.q_exp < 1:
                raise InvalidProductError(
                    f"denominator factor ({term}; q^{m})_inf is not a unit")

    def expand(self, trunc: int) -> Series:
        out = Series.one(trunc)
        for term, m in self.num:
            out = out * poch_infinite(term, m, trunc)
        for term, m in self.den:
            out = out * inv_poch_infinite(term, m, trunc)
        return out

    def sign_flip_q(self) -> "ProductExpr":
        """The product for q -> -q, re-expressed with fixed-sign factors."""
        return ProductExpr(_flip_factors(self.num), _flip_factors(self.den))

    def dilate(self, t: int) -> "ProductExpr":
        """The product for q -> q^t."""
        if t < 1:
            raise ValueError("dilation power must be positive")
        f = lambda fs: tuple(
            (Monomial(term.sign, term.x_exp, term.q_exp * t), m * t) for term, m in fs)
        return ProductExpr(f(self.num), f(self.den))

    def to_json(self) -> dict:
        return {"num": [_factor_json(t, m) for t, m in self.num],
                "den": [_factor_json(t, m) for t, m in self.den]}

    @staticmethod
    def from_json(obj: dict) -> "ProductExpr":
        return ProductExpr(
            tuple(_factor_from_json(f) for f in obj.get("num", [])),
            tuple(_factor_from_json(f) for f in obj.get("den", [])),
        )

    def __str__(self):
        def side(fs):
            return " ".join(f"({t}; q^{m})oo" for t, m in fs) or "1"
        if not self.den:
            return side(self.num)
        return f"{side(self.num)} / [{side(self.den)}]"


def _factor_json(term: Monomial, m: int) -> dict:
    d = {"sign": term.sign, "a": term.q_exp, "m": m}
    if term.x_exp:
        d["xa"] = term.x_exp
    return d


def _factor_from_json(f: dict):
    return (Monomial(f.get("sign", 1), f.get("xa", 0), f["a"]), f["m"])


def _flip_factors(factors):
    out = []
    for term, m in factors:
        if m % 2 == 0:
            sgn = term.sign if term.q_exp % 2 == 0 else -term.sign
            out.append((Monomial(sgn, term.x_exp, term.q_exp), m))
        else:
            for b in (term.q_exp, term.q_exp + m):
                sgn = term.sign if b % 2 == 0 else -term.sign
                out.append((Monomial(sgn, term.x_exp, b), 2 * m))
    return tuple(out)


def product_expand(p: ProductExpr, trunc: int) -> Series:
    """Expand the quotient of infinite products to the truncation order."""
    return p.expand(trunc)


def theta_triple_sum(a: int, m: int, trunc: int, alternating: bool = True) -> Series:
    """Bilateral theta sum over j of (+-1)^j q^(m*j*(j-1)/2 + a*j).

    With the alternating sign this is the expansion of
    (q^a, q^(m-a), q^m; q^m)_inf by the triple product identity; without it,
    of (-q^a, -q^(m-a), q^m; q^m)_inf.  Implemented independently of the
    product code so the two can check each other.
    """
    coeffs: dict[int, dict] = {}

    def put(j):
        e = m * j * (j - 1) // 2 + a * j
        if e < trunc:
            s = -1 if (alternating and j % 2) else 1
            p = coeffs.setdefault(e, {})
            v = p.get(0, 0) + s
            if v:
                p[0] = v
            else:
                del p[0]
            return True
        return False

    j = 0
    while put(j):
        j += 1
    j = -1
    while put(j):
        j -= 1
    return Series(coeffs, trunc)


def triple_product(a: int, m: int, negative: bool = False, extra_num=(), den_base: int | None = None) -> ProductExpr:
    """(±q^a, ±q^(m-a), q^m; q^m)_inf, optionally over (q^den_base; q^den_base)_inf."""
    s = -1 if negative else 1
    num = [(Monomial(s, 0, a), m), (Monomial(s, 0, m - a), m), (Monomial(1, 0, m), m)]
    num.extend(extra_num)
    den = ((Monomial(1, 0, den_base), den_base),) if den_base else ()
    return ProductExpr(tuple(num), den)


class FactorBag:
    """Multiset of Pochhammer binomial factors with symbolic cancellation.

    Builders use this to realize quotients like (x;q^3)_n / (x;q)_{2n} whose
    shared (1 - x*q^j) factors must cancel before inversion is possible.
    """

    def __init__(self):
        self._mult: dict[tuple, int] = {}

    def add_poch(self, a: Monomial, base: int, n: int, power: int = 1):
        for j in range(n):
            key = (a.sign, a.x_exp, a.q_exp + base * j)
            self._mult[key] = self._mult.get(key, 0) + power
        return self

    def div_poch(self, a: Monomial, base: int, n: int, power: int = 1):
        return self.add_poch(a, base, n, -power)

    def to_series(self, trunc: int) -> Series:
        out = Series.one(None)
        inv = []
        for (s, xa, qa), mult in sorted(self._mult.items()):
            mono = Monomial(s, xa, qa)
            if mult > 0:
                f = Series.one_minus(mono)
                for _ in range(mult):
                    out = out * f
            elif mult < 0:
                inv.append((mono, -mult))
        shortfall = max(0, -out.low)
        acc = out if inv else out.truncate(trunc)
        for mono, mult in inv:
            g = _geometric_inverse(mono, trunc + shortfall)
            for _ in range(mult):
                acc = acc * g
        return acc.truncate(trunc)
