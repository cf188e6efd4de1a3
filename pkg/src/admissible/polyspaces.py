"""Brute-force oracle for graded dimensions of symmetric vanishing spaces.

A space is cut out of symmetric polynomials (in one variable family, or two
families that are symmetric separately) by substitution conditions: a
condition identifies a group of leading variables with a shared symbol t,
with -t, or with 0, and demands that the result vanish identically.  The
dimension of each graded piece is obtained by expanding every monomial
symmetric basis element under each substitution, reading off one linear
constraint per surviving monomial, and computing the kernel dimension with
fraction-free integer elimination.  No floating point is involved anywhere,
so rank decisions are exact.

The same module expands the product-formula weights attached to restricted
partitions, giving an independent check of the quadratic-form exponents used
by the fermionic sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from .series import TruncatedSeries

MAX_VARS = 8
MAX_DEGREE_CAP = 16
EXPAND_VAR_LIMIT = 6


class CapacityError(Exception):
    """Problem size exceeds the configured limits; nothing was truncated."""


@dataclass(frozen=True)
class Condition:
    """One substitution pattern: per family (num -> t, num -> -t, num -> 0)."""

    patterns: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class VanishingSpec:
    """A vanishing-condition space: variable counts, conditions, degree cap."""

    family_sizes: tuple[int, ...]
    conditions: tuple[Condition, ...]
    degree_cap: int

    def __post_init__(self):
        if len(self.family_sizes) not in (1, 2):
            raise ValueError("one or two variable families are supported")
        if any(n < 0 for n in self.family_sizes):
            raise ValueError("variable counts must be non-negative")
        if self.degree_cap < 0:
            raise ValueError("degree_cap must be non-negative")
        for cond in self.conditions:
            if len(cond.patterns) != len(self.family_sizes):
                raise ValueError("condition must give one pattern per family")
            for (p, m, z), n in zip(cond.patterns, self.family_sizes):
                if p < 0 or m < 0 or z < 0:
                    raise ValueError("pattern counts must be non-negative")
                if p + m + z > n:
                    raise ValueError(
                        f"pattern ({p},{m},{z}) references more variables "
                        f"than the family has ({n})"
                    )


def partitions_max_parts(d: int, max_parts: int) -> list[tuple[int, ...]]:
    """Partitions of d into at most max_parts parts, descending tuples."""
    if d == 0:
        return [()]
    if max_parts <= 0:
        return []
    out = []

    def rec(remaining, largest, parts_left, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        if parts_left == 0:
            return
        for part in range(min(remaining, largest), 0, -1):
            rec(remaining - part, part, parts_left - 1, prefix + [part])

    rec(d, d, max_parts, [])
    return out


@lru_cache(maxsize=None)
def _substitute_monomial(rho, n, pattern):
    """Expand a monomial symmetric polynomial under a substitution pattern.

    rho is a partition (descending tuple) with at most n parts; pattern is
    (num_plus, num_minus, num_zero): the first variables are set to t, the
    next to -t, the next to 0, the rest stay free.  The result is returned
    as a map (t_exponent, free_partition) -> integer coefficient, where
    free_partition indexes a monomial symmetric polynomial in the free
    variables.
    """
    p_cnt, m_cnt, z_cnt = pattern
    values: list[int] = list(rho) + [0] * (n - len(rho))
    counts: dict[int, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    distinct = sorted(counts, reverse=True)

    out: dict[tuple[int, tuple[int, ...]], int] = {}

    def choose(idx, left, taken, remaining, acc):
        """Enumerate sub-multisets of size `left` from `remaining` counts."""
        if left == 0:
            acc.append((tuple(taken), dict(remaining)))
            return
        if idx == len(distinct):
            return
        v = distinct[idx]
        avail = remaining.get(v, 0)
        for c in range(min(avail, left), -1, -1):
            remaining[v] = avail - c
            choose(idx + 1, left - c, taken + [(v, c)], remaining, acc)
            remaining[v] = avail

    def arrangements(taken) -> int:
        total = sum(c for _, c in taken)
        num = factorial(total)
        for _, c in taken:
            num //= factorial(c)
        return num

    plus_options: list = []
    choose(0, p_cnt, [], dict(counts), plus_options)
    for plus_taken, after_plus in plus_options:
        minus_options: list = []
        choose(0, m_cnt, [], dict(after_plus), minus_options)
        for minus_taken, after_minus in minus_options:
            if after_minus.get(0, 0) < z_cnt:
                continue  # a positive exponent would land on a zero slot
            free_counts = dict(after_minus)
            free_counts[0] = free_counts.get(0, 0) - z_cnt
            sigma = tuple(
                sorted(
                    (v for v, c in free_counts.items() for _ in range(c) if v),
                    reverse=True,
                )
            )
            t_exp = sum(v * c for v, c in plus_taken) + sum(
                v * c for v, c in minus_taken
            )
            sign = -1 if sum(v * c for v, c in minus_taken) % 2 else 1
            coeff = sign * arrangements(plus_taken) * arrangements(minus_taken)
            key = (t_exp, sigma)
            out[key] = out.get(key, 0) + coeff
            if not out[key]:
                del out[key]
    return out


def _basis(spec: VanishingSpec, degree: int):
    if len(spec.family_sizes) == 1:
        return [(rho,) for rho in partitions_max_parts(degree, spec.family_sizes[0])]
    l1, l2 = spec.family_sizes
    out = []
    for d1 in range(degree + 1):
        for rho1 in partitions_max_parts(d1, l1):
            for rho2 in partitions_max_parts(degree - d1, l2):
                out.append((rho1, rho2))
    return out


def _condition_rows(spec: VanishingSpec, cond: Condition, basis) -> list[list[int]]:
    cols = len(basis)
    rows_by_key: dict[tuple, list[int]] = {}
    for ci, elem in enumerate(basis):
        pieces = [
            _substitute_monomial(rho, n, pattern)
            for rho, n, pattern in zip(elem, spec.family_sizes, cond.patterns)
        ]
        if len(pieces) == 1:
            combined = {(t, sig): c for (t, sig), c in pieces[0].items()}
        else:
            combined = {}
            for (t1, s1), c1 in pieces[0].items():
                for (t2, s2), c2 in pieces[1].items():
                    key = (t1 + t2, s1, s2)
                    combined[key] = combined.get(key, 0) + c1 * c2
        for key, c in combined.items():
            if not c:
                continue
            row = rows_by_key.get(key)
            if row is None:
                row = rows_by_key[key] = [0] * cols
            row[ci] += c
    return list(rows_by_key.values())


def _bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    if not rows:
        return 0
    mat = [list(r) for r in rows]
    nrows, ncols = len(mat), len(mat[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pivot_row = mat[rank]
        pivot = pivot_row[col]
        for r in range(rank + 1, nrows):
            row = mat[r]
            factor = row[col]
            for c in range(col, ncols):
                value = row[c] * pivot - factor * pivot_row[c]
                quotient, remainder = divmod(value, prev)
                if remainder:
                    raise AssertionError("fraction-free elimination lost exactness")
                row[c] = quotient
        prev = pivot
        rank += 1
        if rank == nrows:
            break
    return rank


def graded_dimension(
    spec: VanishingSpec,
    max_vars: int = MAX_VARS,
    max_degree_cap: int = MAX_DEGREE_CAP,
) -> list[int]:
    """Dimension of each graded piece, degrees 0..degree_cap.

    Refuses (CapacityError) rather than degrade when the problem exceeds the
    configured size limits.
    """
    total_vars = sum(spec.family_sizes)
    if total_vars > max_vars:
        raise CapacityError(
            f"{total_vars} variables exceeds the limit of {max_vars}"
        )
    if spec.degree_cap > max_degree_cap:
        raise CapacityError(
            f"degree cap {spec.degree_cap} exceeds the limit of {max_degree_cap}"
        )
    dims = []
    for d in range(spec.degree_cap + 1):
        basis = _basis(spec, d)
        if not basis:
            dims.append(0)
            continue
        rows: list[list[int]] = []
        for cond in spec.conditions:
            rows.extend(_condition_rows(spec, cond, basis))
        dims.append(len(basis) - _bareiss_rank(rows))
    return dims


# ---------------------------------------------------------------------------
# Canned specs

def vanishing_spec_r2(n: int, k: int, b0: int, degree_cap: int) -> VanishingSpec:
    """Symmetric polynomials in n variables vanishing on the (k+1)-fold
    diagonal and when b0+1 variables are set to zero.  Patterns that need
    more variables than n are skipped (no constraint)."""
    _check_kb(k, b0)
    conds = []
    if k + 1 <= n:
        conds.append(Condition(((k + 1, 0, 0),)))
    if b0 + 1 <= n:
        conds.append(Condition(((0, 0, b0 + 1),)))
    return VanishingSpec((n,), tuple(conds), degree_cap)


def vanishing_spec_r3_pair(
    l1: int, l2: int, k: int, b0: int, b1: int, degree_cap: int
) -> VanishingSpec:
    """Two-family space: vanishing when a leading x's and b leading y's share
    a value (a + b = k + 1), and when b0+1 x's are zero.  For b1 < k the
    conjectural combined zero conditions (s x's and t y's zero, s + t = b1+1)
    are added as well."""
    _check_kb(k, b0)
    if not b0 <= b1 <= k:
        raise ValueError(f"b1 must lie in [b0, k], got {b1}")
    conds = []
    for a in range(k + 2):
        b = k + 1 - a
        if a <= l1 and b <= l2:
            conds.append(Condition(((a, 0, 0), (b, 0, 0))))
    if b0 + 1 <= l1:
        conds.append(Condition(((0, 0, b0 + 1), (0, 0, 0))))
    if b1 < k:
        for s in range(b1 + 2):
            t = b1 + 1 - s
            if s <= l1 and t <= l2:
                conds.append(Condition(((0, 0, s), (0, 0, t))))
    return VanishingSpec((l1, l2), tuple(conds), degree_cap)


def vanishing_spec_r3_signed(n: int, k: int, b0: int, degree_cap: int) -> VanishingSpec:
    """Single-family space with signed diagonals: vanishing when a leading
    variables equal t and the next k+1-a equal -t (all a), and when b0+1
    variables are zero."""
    _check_kb(k, b0)
    conds = []
    if k + 1 <= n:
        for a in range(k + 2):
            conds.append(Condition(((a, k + 1 - a, 0),)))
    if b0 + 1 <= n:
        conds.append(Condition(((0, 0, b0 + 1),)))
    return VanishingSpec((n,), tuple(conds), degree_cap)


def _check_kb(k: int, b0: int):
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if not 0 <= b0 <= k:
        raise ValueError(f"b0 must lie in [0, {k}], got {b0}")


# ---------------------------------------------------------------------------
# Oracle characters

def character_from_oracle_r2(
    n: int, k: int, b0: int, degree_cap: int, **limits
) -> TruncatedSeries:
    """q-character of the n-variable rank-2 vanishing space, through degree_cap."""
    dims = graded_dimension(vanishing_spec_r2(n, k, b0, degree_cap), **limits)
    return TruncatedSeries({(d, 0): c for d, c in enumerate(dims)}, degree_cap, 0)


def character_from_oracle_r3(
    n: int, k: int, b0: int, b1: int, degree_cap: int, **limits
) -> TruncatedSeries:
    """q-character of the z-degree-n block assembled from the two-family spaces.

    The pair space graded in its own degree enters regraded: the (l1, l2)
    summand contributes q^l2 times its character evaluated at q^2.  With
    each pair space computed through degree_cap, the assembled series is
    exact through q-degree 2*degree_cap + 1.
    """
    q_order = 2 * degree_cap + 1
    coeffs: dict[tuple[int, int], int] = {}
    for l2 in range(n + 1):
        l1 = n - l2
        dims = graded_dimension(
            vanishing_spec_r3_pair(l1, l2, k, b0, b1, degree_cap), **limits
        )
        for d, c in enumerate(dims):
            dq = 2 * d + l2
            if c and dq <= q_order:
                coeffs[(dq, 0)] = coeffs.get((dq, 0), 0) + c
    return TruncatedSeries(coeffs, q_order, 0)


# ---------------------------------------------------------------------------
# Product-formula weights

@dataclass(frozen=True)
class GordonWeight:
    """Total degree of an expanded weight product, with the monomial count
    when the full symbolic expansion was performed (None above the size
    limit, where only a nonvanishing witness is evaluated)."""

    degree: int
    monomial_count: int | None


def _group_vars(multiplicities) -> list[tuple[int, int]]:
    return [
        (a + 1, i)
        for a, m in enumerate(multiplicities)
        for i in range(m)
    ]


def _weight_factors(variant: str, k: int, b0: int, lam, mu=None):
    """Factor list for a weight product, over a flat variable list.

    Returns (variables, monomial_powers, binomials) where monomial_powers is
    a per-variable exponent list and binomials are (i, j, sign, exponent)
    with sign +1 for (x_i + x_j) and -1 for (x_i - x_j).
    """
    if variant not in ("G2", "G3", "G_pair"):
        raise ValueError(f"unknown weight variant: {variant}")
    _check_kb(k, b0)
    lam_vars = _group_vars(lam.multiplicities)
    if variant == "G_pair":
        if mu is None:
            raise ValueError("G_pair needs a second partition")
        mu_vars = _group_vars(mu.multiplicities)
        variables = [("x", a, i) for a, i in lam_vars] + [
            ("y", b, i) for b, i in mu_vars
        ]
    else:
        if mu is not None:
            raise ValueError(f"{variant} takes a single partition")
        variables = [("x", a, i) for a, i in lam_vars]
    mono = [0] * len(variables)
    binomials: list[tuple[int, int, int, int]] = []

    for vi, (fam, a, _) in enumerate(variables):
        if fam == "x" and a > b0:
            mono[vi] = a - b0

    for vi in range(len(variables)):
        for vj in range(vi + 1, len(variables)):
            fam_i, a, _ = variables[vi]
            fam_j, b, _ = variables[vj]
            if fam_i == fam_j:
                binomials.append((vi, vj, -1, 2 * min(a, b)))
                if variant == "G3" and a + b > k:
                    binomials.append((vi, vj, +1, a + b - k))
            else:
                if a + b > k:
                    binomials.append((vi, vj, -1, a + b - k))
    return variables, mono, binomials


def expand_gordon_weight(
    lam,
    variant: str,
    k: int,
    b0: int,
    mu=None,
    expand_limit: int = EXPAND_VAR_LIMIT,
) -> GordonWeight:
    """Total degree of the weight product attached to a restricted partition.

    The degree is the sum of the factor exponents.  When the variable count
    is within expand_limit the product is fully expanded and the degree and
    monomial count are read off the expansion; above the limit the product
    is certified nonzero by exact evaluation at a generic integer point and
    only the degree is returned.
    """
    variables, mono, binomials = _weight_factors(variant, k, b0, lam, mu)
    degree = sum(mono) + sum(e for _, _, _, e in binomials)
    nvars = len(variables)
    if nvars > expand_limit:
        point = list(range(1, nvars + 1))  # distinct positive: no factor vanishes
        for vi, e in enumerate(mono):
            assert point[vi] ** e != 0
        for vi, vj, sign, e in binomials:
            base = point[vi] + sign * point[vj]
            assert base != 0
        return GordonWeight(degree, None)

    poly: dict[tuple[int, ...], int] = {tuple(mono): 1}
    for vi, vj, sign, e in binomials:
        if e == 0:
            continue
        factor: dict[tuple[int, ...], int] = {}
        for t in range(e + 1):
            expo = [0] * nvars
            expo[vi] = e - t
            expo[vj] = t
            factor[tuple(expo)] = comb(e, t) * (sign**t)
        poly = _poly_mul(poly, factor)
    if not poly:
        raise AssertionError("weight product expanded to zero")
    degrees = {sum(e) for e in poly}
    if degrees != {degree}:
        raise AssertionError(
            f"expanded degree {degrees} disagrees with factor total {degree}"
        )
    return GordonWeight(degree, len(poly))


def _poly_mul(p, q):
    out: dict[tuple[int, ...], int] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            elif e in out:
                del out[e]
    return out
