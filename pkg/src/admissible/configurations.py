"""Enumeration of (k, r)-admissible configurations and their bivariate character.

A configuration is a finitely supported sequence a_0, a_1, ... of non-negative
integers in which every window of r consecutive entries sums to at most k,
subject to initial caps a_0 <= b_0, a_0 + a_1 <= b_1, ..., up to b_{r-2}.
Each configuration is weighted q^(sum j*a_j) z^(sum a_j); summing the weights
over all configurations within a truncation window gives the character by
direct enumeration, the ground truth every formula here is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .series import TruncatedSeries


def validate_b(k: int, r: int, b) -> tuple[int, ...]:
    """Check the initial-condition vector: length r-1, monotone, within [0, k]."""
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    b = tuple(int(x) for x in b)
    if len(b) != r - 1:
        raise ValueError(f"b must have r-1 = {r - 1} entries, got {len(b)}")
    if any(x < 0 or x > k for x in b):
        raise ValueError(f"b entries must lie in [0, {k}]: {b}")
    if any(b[i] > b[i + 1] for i in range(len(b) - 1)):
        raise ValueError(f"b must be weakly increasing: {b}")
    return b


@dataclass(frozen=True)
class AdmissibleConfig:
    """One admissible configuration; entries beyond the stored vector are 0."""

    entries: tuple[int, ...]
    k: int
    r: int
    b: tuple[int, ...]

    @property
    def q_degree(self) -> int:
        return sum(j * a for j, a in enumerate(self.entries))

    @property
    def z_degree(self) -> int:
        return sum(self.entries)


def is_admissible(a, k: int, r: int, b) -> bool:
    """True iff the vector satisfies all window-sum and initial constraints."""
    b = validate_b(k, r, b)
    a = tuple(int(x) for x in a)
    if any(x < 0 or x > k for x in a):
        return False
    padded = a + (0,) * r
    for i in range(len(a)):
        if sum(padded[i : i + r]) > k:
            return False
    prefix = 0
    for t in range(r - 1):
        prefix += padded[t]
        if prefix > b[t]:
            return False
    return True


def _walk(k, r, b, q_max, z_max):
    """DFS over configurations in lexicographic order.

    Yields (entries, q_degree, z_degree).  Each recursion step appends the next
    nonzero entry; positions are tried from high to low so that the overall
    yield order is lexicographic on the (zero-padded) vectors.  Window sums are
    enforced on the window ending at each placed position, which covers every
    window once all entries are placed.
    """
    b = validate_b(k, r, b)
    if q_max < 0 or z_max < 0:
        raise ValueError("q_max and z_max must be non-negative")
    stack = [((), 0, 0, 0)]
    while stack:
        acc, start, qdeg, zdeg = stack.pop()
        yield acc, qdeg, zdeg
        if zdeg >= z_max:
            continue
        children = []
        for j in range(q_max, start - 1, -1):
            if j > 0 and qdeg + j > q_max:
                continue
            lo = max(0, j - r + 1)
            window = sum(acc[lo : min(j, len(acc))])
            vmax = k - window
            if j > 0:
                vmax = min(vmax, (q_max - qdeg) // j)
            vmax = min(vmax, z_max - zdeg)
            for v in range(1, vmax + 1):
                if j <= r - 2:
                    prefix = sum(acc[:j]) + v
                    if any(prefix > b[t] for t in range(j, r - 1)):
                        break
                child = acc + (0,) * (j - len(acc)) + (v,)
                children.append((child, j + 1, qdeg + j * v, zdeg + v))
        # LIFO stack: push in reverse so children come out in generation order
        stack.extend(reversed(children))


def enumerate_configs(k: int, r: int, b, q_max: int, z_max: int):
    """Every admissible configuration with q-degree <= q_max and z-degree <= z_max.

    Each configuration is yielded exactly once, in lexicographic order on the
    entry vectors.
    """
    b = validate_b(k, r, b)
    for entries, _, _ in _walk(k, r, b, q_max, z_max):
        yield AdmissibleConfig(entries, k, r, b)


def character_direct(k: int, r: int, b, q_max: int, z_max: int) -> TruncatedSeries:
    """Character of admissible configurations by direct summation.

    Coefficient of q^i z^j counts configurations with q-degree i and
    z-degree j; the constant term is 1 (the empty configuration).
    """
    coeffs: dict[tuple[int, int], int] = {}
    for _, qdeg, zdeg in _walk(k, r, b, q_max, z_max):
        key = (qdeg, zdeg)
        coeffs[key] = coeffs.get(key, 0) + 1
    return TruncatedSeries(coeffs, q_max, z_max)
