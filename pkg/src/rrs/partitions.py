"""Brute-force partition and overpartition oracles for the classical theorems.

Counting is exhaustive enumeration over cached partition lists: desk-scale
certainty beats clever counting that could share a bug with the claim under
test.  Each theorem couples a constrained count, a congruence-side count,
and the matching infinite product, so the combinatorics and the series
engine check each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .series import Monomial
from .qtools import ProductExpr

__all__ = [
    "Partition",
    "partitions_of",
    "count_unrestricted",
    "count_overpartitions_unrestricted",
    "gordon_count",
    "gordon_gap_count",
    "gordon_congruence_count",
    "bressoud_count",
    "bressoud_congruence_count",
    "santos_count",
    "santos_congruence_count",
    "santos_even_constrained_count",
    "santos_overpartition_count",
    "andrews_lewis_count",
    "andrews_lewis_product",
    "congruence_product",
    "verify_partition_theorem",
    "PartitionReport",
    "THEOREMS",
]


@dataclass(frozen=True)
class Partition:
    """Nonincreasing parts with optional overline marks (first occurrence)."""

    parts: tuple
    overlines: frozenset = frozenset()

    def __post_init__(self):
        if any(self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)):
            raise ValueError("parts must be nonincreasing")
        if not self.overlines <= set(self.parts) | self.overlines:
            raise ValueError("overlined values must be parts")

    @property
    def weight(self) -> int:
        return sum(self.parts) + sum(self.overlines)


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple:
    """All partitions of n as nonincreasing tuples."""
    if n == 0:
        return ((),)
    out = []

    def rec(rem, maxpart, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for p in range(min(rem, maxpart), 0, -1):
            acc.append(p)
            rec(rem - p, p, acc)
            acc.pop()

    rec(n, n, [])
    return tuple(out)


def _mults(parts) -> dict:
    m: dict[int, int] = {}
    for p in parts:
        m[p] = m.get(p, 0) + 1
    return m


def count_unrestricted(n: int) -> int:
    return len(partitions_of(n))


def count_overpartitions_unrestricted(n: int) -> int:
    """Overpartitions of n: a distinct overlined set plus a free partition."""
    total = 0
    for s, cnt in _distinct_subset_counts(n, list(range(1, n + 1))).items():
        total += cnt * count_unrestricted(n - s)
    return total


def _distinct_subset_counts(n: int, values) -> dict:
    """Map: subset-sum s <= n -> number of distinct subsets of values with that sum."""
    counts = {0: 1}
    for v in values:
        if v > n:
            continue
        for s in sorted(counts, reverse=True):
            if s + v <= n:
                counts[s + v] = counts.get(s + v, 0) + counts[s]
    return counts


# ---------------------------------------------------------------------------
# Constrained sides
# ---------------------------------------------------------------------------

def _gordon_ok(parts, d, k, i) -> bool:
    """Multiples of d satisfy the Gordon conditions (everything else free)."""
    m = _mults(parts)
    if m.get(d, 0) > i - 1:
        return False
    for v, cnt in m.items():
        if v % d == 0 and cnt + m.get(v + d, 0) > k - 1:
            return False
    return True


def gordon_count(n, k, i, d=1) -> int:
    return sum(_gordon_ok(p, d, k, i) for p in partitions_of(n))


def gordon_gap_count(n, k, i) -> int:
    """The difference-condition form: parts[j] - parts[j+k-1] >= 2."""
    total = 0
    for parts in partitions_of(n):
        m1 = sum(1 for p in parts if p == 1)
        if m1 > i - 1:
            continue
        s = len(parts)
        if all(parts[j] - parts[j + k - 1] >= 2 for j in range(s - k + 1)):
            total += 1
    return total


def _bressoud_ok(parts, k, i) -> bool:
    s = len(parts)
    if sum(1 for p in parts if p == 1) > i - 1:
        return False
    for j in range(s - k + 1):
        if parts[j] - parts[j + k - 1] < 2:
            return False
    for j in range(s - k + 2):
        if parts[j] - parts[j + k - 2] <= 1:
            if sum(parts[j:j + k - 1]) % 2 != (i - 1) % 2:
                return False
    return True


def bressoud_count(n, k, i, d=1) -> int:
    """Bressoud conditions on the multiples of d (dilated); 1 <= i <= k."""
    if d == 1:
        return sum(_bressoud_ok(p, k, i) for p in partitions_of(n))
    total = 0
    for parts in partitions_of(n):
        sub = tuple(p // d for p in parts if p % d == 0)
        if _bressoud_ok(sub, k, i):
            total += 1
    return total


def _santos_ok(parts, d, k, i) -> bool:
    """Andrews-Santos conditions, dilated by d; modified presentation built in.

    For odd d > 1 the generating-function derivation only produces odd parts
    that are multiples of d (even non-multiples of 2d are free); the support
    clause is implicit in the theorem statement and enforced here.
    """
    m = _mults(parts)
    if d % 2 == 1 and d > 1 and any(v % 2 == 1 and v % d for v in m):
        return False
    if m.get(2 * d, 0) > i - 1:
        return False
    for v, cnt in m.items():
        if v % (2 * d) == 0 and cnt + m.get(v + 2 * d, 0) > k - 1:
            return False
    for v, cnt in m.items():
        if v % d == 0 and (v // d) % 2 == 1:
            # v = d(2j-1): its presence needs m_{2dj-2d}(pi-hat) + m_{2dj} = k-1
            j = (v // d + 1) // 2
            lower = (k - i) if j == 1 else m.get(2 * d * (j - 1), 0)
            if lower + m.get(2 * d * j, 0) != k - 1:
                return False
    return True


def santos_count(n, k, i, d=1) -> int:
    return sum(_santos_ok(p, d, k, i) for p in partitions_of(n))


def santos_even_constrained_count(n, k, i, d) -> int:
    """Even-dilation variant: odd part multiplicities must be divisible by d."""
    total = 0
    for parts in partitions_of(n):
        m = _mults(parts)
        if any(v % 2 == 1 and cnt % d != 0 for v, cnt in m.items()):
            continue
        if _santos_ok(parts, d, k, i):
            total += 1
    return total


# ---------------------------------------------------------------------------
# Congruence sides
# ---------------------------------------------------------------------------

def _residue_filter_count(n, modulus, forbidden) -> int:
    forbidden = {r % modulus for r in forbidden}
    total = 0
    for parts in partitions_of(n):
        if all(p % modulus not in forbidden for p in parts):
            total += 1
    return total


def gordon_congruence_count(n, k, i, d=1) -> int:
    """Parts not congruent to 0, +-di modulo d(2k+1)."""
    mod = d * (2 * k + 1)
    return _residue_filter_count(n, mod, {0, d * i, mod - d * i})


def bressoud_congruence_count(n, k, i, d=1) -> int:
    """Parts not congruent to 0, +-di mod 2dk (i < k), or the i = k rule."""
    if i < k:
        return _residue_filter_count(n, 2 * d * k, {0, d * i, 2 * d * k - d * i})
    if d != 1:
        raise ValueError("the i = k extension is defined undilated")
    if k == 2:
        return sum(
            all(p % 2 == 1 for p in parts) and len(set(parts)) == len(parts)
            for parts in partitions_of(n))
    total = 0
    for parts in partitions_of(n):
        ok = True
        used = set(parts)
        for p in parts:
            r = p % k
            if r == 0:
                ok = False
                break
            if r == 1 and (p + k - 2) in used:
                ok = False
                break
        if ok:
            total += 1
    return total


def santos_congruence_count(n, k, i, d=1) -> int:
    """Odd d: parts even but not multiples of 4dk, or distinct odd parts
    congruent to +-d(2i-1) mod 4dk."""
    mod = 4 * d * k
    a = d * (2 * i - 1)
    allowed_odd = {a % mod, (mod - a) % mod}
    total = 0
    for parts in partitions_of(n):
        odds = [p for p in parts if p % 2 == 1]
        if len(set(odds)) != len(odds):
            continue
        ok = True
        for p in parts:
            if p % 2 == 0:
                if p % mod == 0:
                    ok = False
                    break
            elif p % mod not in allowed_odd:
                ok = False
                break
        if ok:
            total += 1
    return total


def santos_overpartition_count(n, k, i, d) -> int:
    """Even d: overpartitions with overlined parts +-d(2i-1) mod 4dk and
    nonoverlined parts even but not multiples of 4dk."""
    mod = 4 * d * k
    a = d * (2 * i - 1)
    allowed_over = [v for v in range(1, n + 1) if v % mod in {a % mod, (mod - a) % mod}]
    total = 0
    subset_counts = _distinct_subset_counts(n, allowed_over)
    for s, cnt in subset_counts.items():
        rem = n - s
        total += cnt * sum(
            all(p % 2 == 0 and p % mod != 0 for p in parts)
            for parts in partitions_of(rem))
    return total


def andrews_lewis_count(n, a, b, k) -> int:
    """Parts congruent to a or b mod k; kj+a and kj+b never both present."""
    total = 0
    for parts in partitions_of(n):
        if any(p % k not in (a % k, b % k) for p in parts):
            continue
        used = set(parts)
        if any(p % k == a % k and (p - a + b) in used for p in parts):
            continue
        total += 1
    return total


# ---------------------------------------------------------------------------
# Matching infinite products
# ---------------------------------------------------------------------------

def _den_residues(modulus, allowed) -> ProductExpr:
    den = tuple((Monomial(1, 0, r), modulus) for r in sorted(allowed))
    return ProductExpr((), den)


def congruence_product(theorem: str, k: int, i: int, d: int = 1) -> ProductExpr:
    """ProductExpr whose coefficients are the congruence-side counts."""
    if theorem == "gordon":
        mod = d * (2 * k + 1)
        bad = {0, (d * i) % mod, (mod - d * i) % mod}
        return _den_residues(mod, [r for r in range(1, mod + 1) if r % mod not in bad])
    if theorem == "bressoud":
        if i < k:
            mod = 2 * d * k
            bad = {0, (d * i) % mod, (mod - d * i) % mod}
            return _den_residues(mod, [r for r in range(1, mod + 1) if r % mod not in bad])
        if k == 2:
            return ProductExpr(((Monomial(-1, 0, 1), 2),), ())
        num = ((Monomial(1, 0, k), 2 * k),)
        den = tuple((Monomial(1, 0, j), k) for j in range(1, k))
        return ProductExpr(num, den)
    if theorem == "santos":
        mod = 4 * d * k
        a = d * (2 * i - 1)
        num = ((Monomial(-1, 0, a), mod), (Monomial(-1, 0, mod - a), mod),
               (Monomial(1, 0, mod), mod))
        den = ((Monomial(1, 0, 2), 2),)
        return ProductExpr(num, den)
    raise ValueError(f"no product for theorem {theorem!r}")


def andrews_lewis_product(a: int, b: int, k: int) -> ProductExpr:
    return ProductExpr(((Monomial(1, 0, a + b), 2 * k),),
                       ((Monomial(1, 0, a), k), (Monomial(1, 0, b), k)))


# ---------------------------------------------------------------------------
# Theorem driver
# ---------------------------------------------------------------------------

@dataclass
class PartitionReport:
    theorem: str
    params: dict
    n_max: int
    rows: list = field(default_factory=list)  # (n, lhs, rhs)
    counterexample: dict | None = None
    product_checked: bool = False

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def _witnesses(n, pred) -> list:
    return [p for p in partitions_of(n) if pred(p)]


THEOREMS = {
    "gordon": {
        "lhs": lambda n, k, i, d: gordon_count(n, k, i, d),
        "rhs": lambda n, k, i, d: gordon_congruence_count(n, k, i, d),
        "product": lambda k, i, d: congruence_product("gordon", k, i, d),
        "check": lambda k, i, d: 1 <= i <= k,
    },
    "bressoud": {
        "lhs": lambda n, k, i, d: bressoud_count(n, k, i, d),
        "rhs": lambda n, k, i, d: bressoud_congruence_count(n, k, i, d),
        "product": lambda k, i, d: congruence_product("bressoud", k, i, d),
        "check": lambda k, i, d: 1 <= i <= k and (i < k or d == 1),
    },
    "santos": {
        "lhs": lambda n, k, i, d: (santos_count(n, k, i, d) if d % 2
                                   else santos_even_constrained_count(n, k, i, d)),
        "rhs": lambda n, k, i, d: (santos_congruence_count(n, k, i, d) if d % 2
                                   else santos_overpartition_count(n, k, i, d)),
        "product": lambda k, i, d: congruence_product("santos", k, i, d),
        "check": lambda k, i, d: 1 <= i <= k,
    },
}


def verify_partition_theorem(theorem: str, k: int, i: int, d: int = 1,
                             n_max: int = 40, product_check: bool = True) -> PartitionReport:
    """Assert LHS count = RHS count for n <= n_max; also tie the congruence
    side to the matching product coefficients.  A mismatch produces a
    counterexample certificate with the enumerated witnesses."""
    spec = THEOREMS[theorem]
    if not spec["check"](k, i, d):
        raise ValueError(f"{theorem}: parameters k={k}, i={i}, d={d} out of range")
    report = PartitionReport(theorem, {"k": k, "i": i, "d": d}, n_max)
    prod_coeffs = None
    if product_check:
        series = spec["product"](k, i, d).expand(n_max + 1)
        prod_coeffs = [series.coefficient(n) for n in range(n_max + 1)]
        report.product_checked = True
    for n in range(n_max + 1):
        lhs = spec["lhs"](n, k, i, d)
        rhs = spec["rhs"](n, k, i, d)
        report.rows.append((n, lhs, rhs))
        bad_product = prod_coeffs is not None and prod_coeffs[n] != rhs
        if lhs != rhs or bad_product:
            report.counterexample = {
                "n": n,
                "lhs": lhs,
                "rhs": rhs,
                "product_coefficient": None if prod_coeffs is None else prod_coeffs[n],
            }
            break
    return report
