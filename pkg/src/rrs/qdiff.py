"""Two-variable series machinery: H/J functions, Q and F families, recursions.

Indices are carried as doubled integers (k2 = 2k, i2 = 2i) so the
half-integer bookkeeping of the Euler family is exact; every exponent is
asserted integral before use.  Family members are computed from the H/J
definitions; the q-difference recursions are verified against them as an
independent check, never used as the definition.
"""

from __future__ import annotations

from .series import Monomial, Series, SeriesError
from .qtools import (
    ProductExpr,
    inv_poch_finite,
    inv_poch_infinite,
    poch_finite,
    poch_infinite,
    triple_product,
)
from .bailey import MBPParams, UnsupportedCaseError, mbp_beta_closed, _alpha_low, _xpow, _xmono

__all__ = [
    "InvalidModeError",
    "h_series",
    "j_series",
    "q_member",
    "q_family",
    "f_top",
    "verify_qdiff",
    "q_product_at_one",
    "QDiffReport",
]


class InvalidModeError(SeriesError):
    """A requested evaluation would leave the integer-exponent ring."""


def _half(v: int, what: str) -> int:
    if v % 2:
        raise InvalidModeError(f"non-integral exponent: {what} = {v}/2")
    return v // 2


def _mono_pow(X: Monomial, t2: int) -> Monomial:
    """X^(t2/2) as a monomial; every exponent must stay integral."""
    xe = _half(X.x_exp * t2, f"x-power of {X}^({t2}/2)")
    qe = _half(X.q_exp * t2, f"q-power of {X}^({t2}/2)")
    if X.sign == -1 and t2 % 4:
        raise InvalidModeError(f"sign of {X}^({t2}/2) is not determined")
    return Monomial(1 if X.sign == 1 else (1 if (t2 // 2) % 2 == 0 else -1), xe, qe)


def h_series(k2: int, i2: int, a_qexp: int | None, X: Monomial | None,
             base: int, trunc: int) -> Series:
    """H at index (k2/2, i2/2), parameter a = q^a_qexp (or 0), argument X.

    X = None means the x-argument is 0, for which only the first summand
    survives and the value is 1.  Negative i2 reflects via
    H_{k,-i} = -X^{-i} H_{k,i}; i2 = 0 gives the zero series.  The
    1/(X;q^base)_inf prefactor is folded into each summand as
    1/(X q^{base*n}; q^base)_inf, so a naked argument (q-exponent 0) is
    legal whenever the index is integral.
    """
    if i2 == 0:
        return Series.zero(trunc)
    if X is None:
        return Series.one(trunc)
    if i2 < 0:
        refl = _mono_pow(X, i2)  # X^{i2/2} with i2 < 0: negative exponents
        pad = max(0, -refl.q_exp)
        inner = h_series(k2, -i2, a_qexp, X, base, trunc + pad)
        return -(Series.from_monomial(refl) * inner).truncate(trunc)
    u, v = X.x_exp, X.q_exp
    if v < 0:
        raise InvalidModeError(f"H argument {X} has negative q-exponent")
    mid = _mono_pow(X, i2)
    out = Series.zero(trunc)
    n = 0
    clear = 0
    guard = 8 * trunc + 64
    while clear < 2:
        if n > guard:
            raise InvalidModeError(f"H sum does not terminate (k2={k2}, i2={i2})")
        wq2 = base * (k2 * n * n + (2 - i2) * n)
        Xk = _mono_pow(X, k2 * n) if n else Monomial(1, 0, 0)
        if a_qexp is None:
            # a^n (1/a; q^b)_n collapses to (-1)^n q^{b n(n-1)/2} as a -> 0
            a_shift = base * n * (n - 1) // 2
            a_sign = (-1) ** n
            a_low = 0
        else:
            a_shift = a_qexp * n
            a_sign = 1
            a_low = sum(min(0, base * j - a_qexp) for j in range(n))
        qlow = _half(wq2, "H weight") + Xk.q_exp + a_shift + a_low
        if qlow >= trunc:
            clear += 1
            n += 1
            continue
        clear = 0
        mono = Series({qlow - a_low: {Xk.x_exp: a_sign * Xk.sign}})
        polys = []
        skip_first_tail_factor = False
        if n == 0 and v == 0:
            # (1 - X^I) against the j = 0 factor of 1/(X;q^b)_inf:
            # a polynomial 1 + X + ... + X^{I-1} for integral I.
            if i2 % 2:
                raise InvalidModeError(
                    f"H with half-integer index at naked argument {X}")
            poly = Series.zero()
            for j in range(i2 // 2):
                t = _mono_pow(X, 2 * j) if j else Monomial(1, 0, 0)
                poly = poly + Series.from_monomial(t)
            polys.append(poly)
            skip_first_tail_factor = True
        else:
            polys.append(Series.one() - Series.from_monomial(
                Monomial(mid.sign, mid.x_exp, mid.q_exp + base * n * i2)))
        if a_qexp is not None:
            ainv = Series.one()
            for j in range(n):
                ainv = ainv * (Series.one() - Series({base * j - a_qexp: {0: 1}}))
            polys.append(ainv)
        term = mono
        for p in polys:
            term = term * p
        if term.is_zero():
            n += 1
            continue
        t_in = trunc + max(0, -term.low)
        if a_qexp is not None:
            pref = Monomial(X.sign, u, v + a_qexp + base * (n + 1))
            term = term * poch_infinite(pref, base, t_in)
        term = term * inv_poch_finite(Monomial(1, 0, base), base, n, t_in)
        tail_exp = v + base * (n + (1 if skip_first_tail_factor else 0))
        term = term * inv_poch_infinite(Monomial(X.sign, u, tail_exp), base, t_in)
        out = out + term.truncate(trunc)
        n += 1
    return out


def j_series(k2: int, i2: int, a_qexp: int | None, X0: Monomial,
             base: int, trunc: int) -> Series:
    """J at index (k2/2, i2/2): H at argument X0*q^base, minus the a-term."""
    X = Monomial(X0.sign, X0.x_exp, X0.q_exp + base)
    first = h_series(k2, i2, a_qexp, X, base, trunc)
    if a_qexp is None:
        return first
    mult = Monomial(X.sign, X.x_exp, X.q_exp + a_qexp)
    pad = max(0, -mult.q_exp)
    second = h_series(k2, i2 - 2, a_qexp, X, base, trunc + pad)
    return (first - Series.from_monomial(mult) * second).truncate(trunc)


def _square(v: Monomial) -> Monomial:
    return Monomial(1, 2 * v.x_exp, 2 * v.q_exp)


def q_member(kind: str, p: MBPParams, i: int, trunc: int,
             x_value: Monomial | None = None) -> Series:
    """Family member i (any integer; 0 is the zero series) from the J route."""
    d, e, K = p.d, p.e, p.top
    xv = x_value
    if kind == "S":
        body = j_series(2 * K, 2 * i, None, _xmono(xv, 1, 0), d, trunc)
        t = trunc + max(0, -body.low)
        pre = (poch_infinite(_xmono(xv, 1, d), d, t)
               * inv_poch_infinite(_xmono(xv, e, e), e, t))
    elif kind == "E":
        body = j_series(K - 1, i, None, _square(_xmono(xv, 1, 0)), 2 * d, trunc)
        t = trunc + max(0, -body.low)
        pre = (poch_infinite(_xmono(xv, 2, 2 * d), 2 * d, t)
               * inv_poch_infinite(_xmono(xv, e, e), e, t))
    elif kind == "JS":
        body = j_series(2 * K, 2 * i, -d, _xmono(xv, 1, 0), 2 * d, trunc)
        t = trunc + max(0, -body.low)
        pre = (poch_infinite(_xmono(xv, 1, 2 * d), 2 * d, t)
               * inv_poch_infinite(_xmono(xv, e, 2 * e), 2 * e, t)
               * inv_poch_infinite(_xmono(xv, 1, d), 2 * d, t))
    else:
        raise UnsupportedCaseError(f"unknown kind {kind!r}")
    return (pre * body).truncate(trunc)


def q_family(kind: str, p: MBPParams, trunc: int,
             x_value: Monomial | None = None) -> dict[int, Series]:
    """All members i = 1..d(e-1)+k, computed from the J definitions."""
    return {i: q_member(kind, p, i, trunc, x_value) for i in range(1, p.top + 1)}


def f_top(kind: str, p: MBPParams, trunc: int,
          x_value: Monomial | None = None) -> Series:
    """The top member as the weighted beta sum (the multi-sum route)."""
    e = p.e
    wq = 2 * e if kind == "JS" else e
    out = Series.zero(trunc)
    n = 0
    clear = 0
    while clear < 2 and n < 8 * int(trunc ** 0.5) + 16:
        b = mbp_beta_closed(MBPParams(kind, p.d, p.e, p.k), n, trunc, x_value)
        floor = wq * n * n + (x_value.q_exp * e * n if x_value else 0) + min(0, b.low)
        if floor >= trunc:
            clear += 1
        else:
            clear = 0
        out = out + (_xpow(x_value, e * n, wq * n * n) * b).truncate(trunc)
        n += 1
    return out


class QDiffReport:
    """Per-member recursion verdicts for one family."""

    def __init__(self, kind, p, trunc):
        self.kind = kind
        self.params = p
        self.trunc = trunc
        self.results: list[tuple[int, bool, tuple | None]] = []

    @property
    def ok(self) -> bool:
        return all(r[1] for r in self.results)

    def add(self, i, ok, witness=None):
        self.results.append((i, ok, witness))

    def __str__(self):
        body = ", ".join(f"i={i}:{'ok' if ok else 'FAIL'}" for i, ok, _ in self.results)
        return f"{self.kind}{self.params.d, self.params.e, self.params.k} [{body}]"


def verify_qdiff(kind: str, p: MBPParams, trunc: int,
                 members: dict[int, Series] | None = None) -> QDiffReport:
    """Check the family's q-difference recursion for every member (formal x).

    Index 0 uses the zero member, negative indices the reflection rule, and
    the index K+1 appearing in the JS recursion is computed directly from
    the J definition.
    """
    from .series import equal_to_order

    d, e, K = p.d, p.e, p.top
    report = QDiffReport(kind, p, trunc)
    if members is None:
        members = q_family(kind, p, trunc)
    memo: dict[int, Series] = dict(members)

    def member(i):
        if i not in memo:
            memo[i] = q_member(kind, p, i, trunc)
        return memo[i]

    for i in range(1, K + 1):
        lhs = member(i)
        if kind == "S":
            shift = member(K - i + 1).substitute(x_shift=d)
            factor = (Series.one_minus(Monomial(1, 1, d))
                      * Series({d * (i - 1): {i - 1: 1}}))
            rhs = member(i - 1) + (factor * shift
                                   * inv_poch_finite(Monomial(1, e, e), e, d, trunc)
                                   ).truncate(trunc)
        elif kind == "E":
            shift = member(K - i + 1).substitute(x_shift=d)
            factor = (Series.one_minus(Monomial(1, 2, 2 * d))
                      * Series({d * (i - 2): {i - 2: 1}}))
            prev = member(i - 2)
            rhs = prev + (factor * shift
                          * inv_poch_finite(Monomial(1, e, e), e, d, trunc)
                          ).truncate(trunc)
        else:  # JS
            shift1 = member(K - i + 1).substitute(x_shift=2 * d)
            shift2 = member(K - i + 2).substitute(x_shift=2 * d)
            comb = shift1 - Series({-d: {0: 1}}) * shift2
            pad = max(0, -comb.low)
            unit = Series.one_minus(Monomial(1, 1, d)).invert(trunc + pad)
            factor = (Series.one_minus(Monomial(1, 1, 2 * d))
                      * Series({2 * d * (i - 1): {i - 1: 1}}))
            rhs = member(i - 1) + (factor * comb * unit
                                   * inv_poch_finite(Monomial(1, e, 2 * e), 2 * e, d, trunc + pad)
                                   ).truncate(trunc)
        cmp = equal_to_order(lhs.truncate(trunc), rhs.truncate(trunc))
        report.add(i, cmp.ok, cmp.mismatch)
    return report


def q_product_at_one(kind: str, p: MBPParams, i: int) -> ProductExpr:
    """The infinite product for member i at x = 1 (the product lemma)."""
    d, e, k = p.d, p.e, p.k
    if not 1 <= i <= p.top:
        raise ValueError(f"member {i} outside 1..{p.top}")
    if kind == "S":
        m = d * (2 * e * d - 2 * d + 2 * k + 1)
        return triple_product(d * i, m, negative=False, den_base=e)
    if kind == "E":
        m = 2 * d * (d * e - d + k)
        return triple_product(d * i, m, negative=False, den_base=e)
    if kind == "JS":
        m = 4 * d * (d * e - d + k)
        return triple_product(d * (2 * i - 1), m, negative=True, den_base=2 * e)
    raise UnsupportedCaseError(f"unknown kind {kind!r}")
