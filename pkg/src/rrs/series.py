"""Exact arithmetic on truncated bivariate Laurent series.

The universal value type is a formal series in q whose coefficients are
Laurent polynomials in x with arbitrary-precision integer coefficients.
A series carries a truncation order ``trunc``: every coefficient of q^e
with e < trunc is exact, everything at or above it is unknown.  Exact
polynomials (finite products of binomials, monomial prefactors) use
``trunc = None`` so that multiplying them into a truncated value never
loses precision.

Negative q-exponents are permitted: Bailey-pair summands pass through
Laurent intermediates before their negative tails cancel.  Negative
x-exponents are likewise allowed (some Euler-family values are genuinely
Laurent in x); the runaway-degree cap applies to the top x-exponent only.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "Series",
    "Monomial",
    "CompareResult",
    "SeriesError",
    "DegenerateInputError",
    "NotInvertibleError",
    "EmptyWindowError",
    "equal_to_order",
    "set_x_degree_cap",
    "get_x_degree_cap",
]


class SeriesError(Exception):
    """Base class for series arithmetic failures."""


class DegenerateInputError(SeriesError):
    """x-degree cap exceeded; the message names the offending exponent."""


class NotInvertibleError(SeriesError):
    """The leading term is not a unit of the truncated ring."""


class EmptyWindowError(SeriesError):
    """An operation left no exactly-known window."""


_x_degree_cap = 8


def set_x_degree_cap(cap: int) -> None:
    """Set the global cap c: the q^e coefficient may not exceed x-degree max(e,0)+c."""
    global _x_degree_cap
    if cap < 0:
        raise ValueError("x-degree cap must be nonnegative")
    _x_degree_cap = cap


def get_x_degree_cap() -> int:
    return _x_degree_cap


@dataclass(frozen=True)
class Monomial:
    """Signed monomial sign * x^x_exp * q^q_exp with sign in {+1, -1}."""

    sign: int = 1
    x_exp: int = 0
    q_exp: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("Monomial sign must be +1 or -1")

    def q_shifted(self, delta: int) -> "Monomial":
        return Monomial(self.sign, self.x_exp, self.q_exp + delta)

    def __str__(self):
        parts = []
        if self.x_exp:
            parts.append("x" if self.x_exp == 1 else f"x^{self.x_exp}")
        if self.q_exp:
            parts.append("q" if self.q_exp == 1 else f"q^{self.q_exp}")
        body = "*".join(parts) if parts else "1"
        return body if self.sign == 1 else "-" + body


@dataclass(frozen=True)
class CompareResult:
    """Outcome of equal_to_order: the agreement order and the first mismatch."""

    verified_order: int
    mismatch: tuple | None = None  # (q_exp, x_exp, lhs_coeff, rhs_coeff)

    @property
    def ok(self) -> bool:
        return self.mismatch is None


def _min_trunc(*truncs):
    finite = [t for t in truncs if t is not None]
    return min(finite) if finite else None


class Series:
    """Immutable truncated series; do not mutate ``coeffs`` after construction."""

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs=None, trunc=None, _canonical=False):
        if coeffs is None:
            coeffs = {}
        if not _canonical:
            coeffs = _canon(coeffs, trunc)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "trunc", trunc)

    def __setattr__(self, *a):  # pragma: no cover - guard
        raise AttributeError("Series is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(trunc=None) -> "Series":
        return Series({}, trunc, _canonical=True)

    @staticmethod
    def one(trunc=None) -> "Series":
        return Series({0: {0: 1}}, trunc, _canonical=True)

    @staticmethod
    def from_int(c: int, trunc=None) -> "Series":
        if c == 0:
            return Series.zero(trunc)
        return Series({0: {0: c}}, trunc, _canonical=True)

    @staticmethod
    def from_monomial(m: Monomial, trunc=None) -> "Series":
        return Series({m.q_exp: {m.x_exp: m.sign}}, trunc, _canonical=True)

    @staticmethod
    def one_minus(m: Monomial, trunc=None) -> "Series":
        """The binomial 1 - sign*x^a*q^b (a Pochhammer factor)."""
        if m.q_exp == 0 and m.x_exp == 0:
            return Series.from_int(1 - m.sign, trunc)
        coeffs = {0: {0: 1}}
        coeffs.setdefault(m.q_exp, {})[m.x_exp] = coeffs.get(m.q_exp, {}).get(m.x_exp, 0) - m.sign
        return Series(coeffs, trunc)

    # -- inspection ---------------------------------------------------

    @property
    def low(self) -> int:
        """Smallest stored q-exponent (0 for the zero series)."""
        return min(self.coeffs) if self.coeffs else 0

    @property
    def x_max(self) -> int:
        """Largest stored x-exponent (0 if none)."""
        return max((max(p) for p in self.coeffs.values()), default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def qcoeff(self, e: int) -> dict:
        """The x-polynomial (x_exp -> int) attached to q^e; a copy."""
        return dict(self.coeffs.get(e, {}))

    def coefficient(self, q_exp: int, x_exp: int = 0) -> int:
        return self.coeffs.get(q_exp, {}).get(x_exp, 0)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):  # pragma: no cover
        raise TypeError("Series is unhashable")

    # -- ring operations ----------------------------------------------

    def __neg__(self) -> "Series":
        out = {e: {a: -c for a, c in p.items()} for e, p in self.coeffs.items()}
        return Series(out, self.trunc, _canonical=True)

    def __add__(self, other) -> "Series":
        if isinstance(other, int):
            other = Series.from_int(other)
        if not isinstance(other, Series):
            return NotImplemented
        trunc = _min_trunc(self.trunc, other.trunc)
        out = {e: dict(p) for e, p in self.coeffs.items()}
        for e, p in other.coeffs.items():
            tgt = out.setdefault(e, {})
            for a, c in p.items():
                s = tgt.get(a, 0) + c
                if s:
                    tgt[a] = s
                elif a in tgt:
                    del tgt[a]
            if not tgt:
                del out[e]
        if trunc is not None:
            out = {e: p for e, p in out.items() if e < trunc}
        return Series(out, trunc, _canonical=True)

    __radd__ = __add__

    def __sub__(self, other) -> "Series":
        if isinstance(other, int):
            other = Series.from_int(other)
        return self + (-other)

    def __rsub__(self, other) -> "Series":
        return (-self) + other

    def scaled(self, c: int) -> "Series":
        if c == 0:
            return Series.zero(self.trunc)
        out = {e: {a: c * v for a, v in p.items()} for e, p in self.coeffs.items()}
        return Series(out, self.trunc, _canonical=True)

    def __mul__(self, other) -> "Series":
        if isinstance(other, int):
            return self.scaled(other)
        if isinstance(other, Monomial):
            other = Series.from_monomial(other)
        if not isinstance(other, Series):
            return NotImplemented
        return _mul(self, other)

    def __rmul__(self, other) -> "Series":
        return self.__mul__(other)

    def truncate(self, trunc: int) -> "Series":
        new_t = trunc if self.trunc is None else min(trunc, self.trunc)
        out = {e: dict(p) for e, p in self.coeffs.items() if e < new_t}
        return Series(out, new_t, _canonical=True)

    def invert(self, trunc=None) -> "Series":
        """Multiplicative inverse, exact on the meet window.

        The lowest nonzero term must be +-x^0*q^L.  For an exact operand,
        ``trunc`` picks the order of the (generally infinite) inverse.
        """
        if self.is_zero():
            raise NotInvertibleError("cannot invert the zero series")
        L = self.low
        lead = self.coeffs[L]
        if set(lead) != {0} or lead[0] not in (1, -1):
            raise NotInvertibleError(
                f"leading term at q^{L} is not a unit monomial: {lead}")
        if self.trunc is None:
            if trunc is None:
                raise NotInvertibleError("inverting an exact value needs a truncation order")
            t_out = trunc
        else:
            t_out = self.trunc - 2 * L
            if trunc is not None:
                t_out = min(t_out, trunc)
        if t_out <= -L:
            raise EmptyWindowError("inverse would have an empty window")
        s = lead[0]
        # B indexed from -L; A*B = 1 with A_L = s, so B_{-L} = s.
        b: dict[int, dict] = {-L: {0: s}}
        a_items = sorted((e, p) for e, p in self.coeffs.items() if e > L)
        for n in range(-L + 1, t_out):
            acc: dict[int, int] = {}
            for e, p in a_items:
                bm = b.get(n + L - e)
                if not bm:
                    continue
                for a1, c1 in p.items():
                    for a2, c2 in bm.items():
                        k = a1 + a2
                        acc[k] = acc.get(k, 0) - s * c1 * c2
            acc = {a: c for a, c in acc.items() if c}
            if acc:
                b[n] = acc
        return Series(b, t_out)

    def substitute(self, q_power: int = 1, x_shift: int = 0, x_set: Monomial | None = None) -> "Series":
        """Apply q -> q^m, then x -> x*q^s, then optionally x -> x_set.

        Truncation is rescaled conservatively so reported coefficients stay
        exact.  Negative shifts assume the stored top x-exponent bounds the
        unknown region as well, which holds for every value this engine
        produces (their x-degrees grow sublinearly in the q-exponent).
        """
        if q_power < 1:
            raise ValueError("q_power must be a positive integer")
        coeffs = self.coeffs
        trunc = self.trunc
        if q_power > 1:
            coeffs = {e * q_power: dict(p) for e, p in coeffs.items()}
            if trunc is not None:
                trunc = q_power * (trunc - 1) + 1
        if x_shift:
            out: dict[int, dict] = {}
            for e, p in coeffs.items():
                for a, c in p.items():
                    e2 = e + x_shift * a
                    tgt = out.setdefault(e2, {})
                    tgt[a] = tgt.get(a, 0) + c
            if trunc is not None and x_shift < 0:
                trunc += x_shift * self.x_max
            coeffs = out
        if x_set is not None:
            out = {}
            for e, p in coeffs.items():
                for a, c in p.items():
                    e2 = e + x_set.q_exp * a
                    a2 = x_set.x_exp * a
                    sgn = 1 if (x_set.sign == 1 or a % 2 == 0) else -1
                    tgt = out.setdefault(e2, {})
                    v = tgt.get(a2, 0) + sgn * c
                    if v:
                        tgt[a2] = v
                    elif a2 in tgt:
                        del tgt[a2]
            if trunc is not None and x_set.q_exp < 0:
                trunc += x_set.q_exp * self.x_max
            coeffs = {e: p for e, p in out.items() if p}
        if trunc is not None:
            coeffs = {e: p for e, p in coeffs.items() if e < trunc and p}
            if coeffs and trunc <= min(coeffs):
                raise EmptyWindowError(f"substitution left no exact window (trunc {trunc})")
            if trunc <= 0 and not coeffs:
                raise EmptyWindowError(f"substitution left no exact window (trunc {trunc})")
        return Series(coeffs, trunc)

    def exact_div_x_binomial(self, sign: int, x_exp: int) -> "Series":
        """Divide by the q-free binomial 1 - sign*x^x_exp; must be exact.

        Used where a summand family carries a removable (1+x)-type pole that
        only cancels in the total.  Raises if any q-coefficient leaves a
        remainder.
        """
        if x_exp < 1:
            raise ValueError("divisor must involve x")
        out = {}
        for e, p in self.coeffs.items():
            work = dict(p)
            top = max(work)
            quo: dict[int, int] = {}
            while work:
                a = min(work)
                if a > top:
                    raise SeriesError(
                        f"division by (1 - {sign}*x^{x_exp}) leaves a remainder at q^{e}")
                c = work.pop(a)
                quo[a] = quo.get(a, 0) + c
                t = a + x_exp
                v = work.get(t, 0) + sign * c
                if v:
                    work[t] = v
                elif t in work:
                    del work[t]
            if quo:
                out[e] = quo
        return Series(out, self.trunc)

    def sign_flip_q(self) -> "Series":
        """The substitution q -> -q."""
        out = {}
        for e, p in self.coeffs.items():
            out[e] = dict(p) if e % 2 == 0 else {a: -c for a, c in p.items()}
        return Series(out, self.trunc, _canonical=True)

    def x_constant_part(self) -> "Series":
        """The x^0 column (the value at x = 0 for series with x_exp >= 0)."""
        out = {}
        for e, p in self.coeffs.items():
            if 0 in p:
                out[e] = {0: p[0]}
        return Series(out, self.trunc, _canonical=True)

    # -- display ------------------------------------------------------

    def head(self, n_terms: int = 12) -> str:
        """Readable leading terms, lowest q-exponent first."""
        chunks = []
        for e in sorted(self.coeffs):
            if len(chunks) >= n_terms:
                chunks.append("...")
                break
            chunks.append(f"[q^{e}] {_poly_str(self.coeffs[e])}")
        if not chunks:
            chunks = ["0"]
        t = "exact" if self.trunc is None else f"O(q^{self.trunc})"
        return " + ".join(chunks) + f"  ({t})"

    def __repr__(self):
        return f"<Series {self.head(6)}>"


def _poly_str(p: dict) -> str:
    terms = []
    for a in sorted(p):
        c = p[a]
        if a == 0:
            terms.append(str(c))
        else:
            xs = "x" if a == 1 else f"x^{a}"
            if c == 1:
                terms.append(xs)
            elif c == -1:
                terms.append("-" + xs)
            else:
                terms.append(f"{c}{xs}")
    s = "+".join(terms).replace("+-", "-")
    return f"({s})" if len(terms) > 1 else s


def _canon(coeffs: dict, trunc) -> dict:
    cap = _x_degree_cap
    out = {}
    for e, p in coeffs.items():
        if trunc is not None and e >= trunc:
            continue
        q = {a: c for a, c in p.items() if c}
        if q:
            out[e] = q
    if out:
        # The cap is measured from the Laurent floor: for a power series
        # (low 0) the q^e coefficient may have x-degree at most e + cap;
        # Laurent intermediates get the shifted allowance.
        floor = min(out)
        for e, q in out.items():
            top = max(q)
            if top > e - min(floor, 0) + cap:
                raise DegenerateInputError(
                    f"x-degree {top} at q^{e} exceeds cap {e - min(floor, 0) + cap}")
    return out


def _mul(a: Series, b: Series) -> Series:
    ta = None if a.trunc is None else a.trunc + min(0, b.low)
    tb = None if b.trunc is None else b.trunc + min(0, a.low)
    trunc = _min_trunc(ta, tb)
    if a.is_zero() or b.is_zero():
        return Series.zero(trunc)
    if len(a.coeffs) > len(b.coeffs):
        a, b = b, a
    out: dict[int, dict] = {}
    bi = list(b.coeffs.items())
    for e1, p1 in a.coeffs.items():
        for e2, p2 in bi:
            e = e1 + e2
            if trunc is not None and e >= trunc:
                continue
            tgt = out.setdefault(e, {})
            for a1, c1 in p1.items():
                for a2, c2 in p2.items():
                    k = a1 + a2
                    v = tgt.get(k, 0) + c1 * c2
                    if v:
                        tgt[k] = v
                    elif k in tgt:
                        del tgt[k]
    out = {e: p for e, p in out.items() if p}
    return Series(out, trunc)


def equal_to_order(a: Series, b: Series) -> CompareResult:
    """Largest order M with all coefficients of q^e, e < M, agreeing.

    A mismatch is reported as (q_exp, x_exp, lhs, rhs); it is data, not an
    error.
    """
    m = _min_trunc(a.trunc, b.trunc)
    if m is None:
        exps = sorted(set(a.coeffs) | set(b.coeffs))
        m_scan = exps[-1] + 1 if exps else 1
    else:
        m_scan = m
    exps = sorted(e for e in set(a.coeffs) | set(b.coeffs) if e < m_scan)
    for e in exps:
        pa = a.coeffs.get(e, {})
        pb = b.coeffs.get(e, {})
        if pa == pb:
            continue
        for x in sorted(set(pa) | set(pb)):
            ca, cb = pa.get(x, 0), pb.get(x, 0)
            if ca != cb:
                return CompareResult(e, (e, x, ca, cb))
    return CompareResult(m if m is not None else m_scan, None)
