"""Gordon matrices, boundary vectors, and the fermionic character sums.

The three closed-form characters computed here share one shape: a sum over
multiplicity vectors m of q^(quadratic form in m) divided by a product of
finite q-Pochhammer factors.  GordonData packages the matrix, the linear
boundary term, the Pochhammer step, and the sector bookkeeping so that a
single audited evaluator covers all of them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .series import TruncatedSeries, _pochhammer_inverse_coeffs


def gordon_a2(k: int) -> list[list[int]]:
    """k x k matrix with entries 2*min(a, b)."""
    _check_k(k)
    return [[2 * min(a, b) for b in range(1, k + 1)] for a in range(1, k + 1)]


def gordon_b3(k: int) -> list[list[int]]:
    """k x k matrix with entries max(0, a + b - k)."""
    _check_k(k)
    return [[max(0, a + b - k) for b in range(1, k + 1)] for a in range(1, k + 1)]


def gordon_a(k: int) -> list[list[int]]:
    """2k x 2k block matrix [[A2, B3], [B3, A2]]."""
    a2 = gordon_a2(k)
    b3 = gordon_b3(k)
    top = [a2[i] + b3[i] for i in range(k)]
    bottom = [b3[i] + a2[i] for i in range(k)]
    return top + bottom


def gordon_b(k: int) -> list[list[int]]:
    """k x k matrix with entries 2*min(a, b) + max(0, a + b - k)."""
    a2 = gordon_a2(k)
    b3 = gordon_b3(k)
    return [[a2[i][j] + b3[i][j] for j in range(k)] for i in range(k)]


def boundary_c2(k: int, b0: int) -> list[int]:
    """Length-k vector (0, ..., 0, 1, 2, ..., k - b0) with b0 leading zeros."""
    _check_k(k)
    if not 0 <= b0 <= k:
        raise ValueError(f"b0 must lie in [0, {k}], got {b0}")
    return [0] * b0 + list(range(1, k - b0 + 1))


def boundary_c3(k: int, b0: int) -> list[int]:
    """Length-2k vector: boundary_c2(k, b0) followed by k zeros."""
    return boundary_c2(k, b0) + [0] * k


def _check_k(k: int):
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")


@dataclass(frozen=True)
class GordonData:
    """Everything that determines one fermionic sum.

    matrix          symmetric integer matrix of the quadratic form
    boundary        linear term vector c, same dimension
    q_step          Pochhammer base: 1 for (q)_m denominators, 2 for (q^2)_m
    halved          exponent (m'Am - diag.m)/2 + c.m when True,
                    m'Am - diag.m + 2c.m when False
    z_weights       per-coordinate z-degree: z-degree of a term is z_weights.m
    extra_q_weights per-coordinate extra q-power (the sector prefactor)
    """

    matrix: tuple[tuple[int, ...], ...]
    boundary: tuple[int, ...]
    q_step: int
    halved: bool
    z_weights: tuple[int, ...]
    extra_q_weights: tuple[int, ...]

    def __post_init__(self):
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(n):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise ValueError("matrix must be symmetric")
                if self.matrix[i][j] < 0:
                    raise ValueError("matrix entries must be non-negative")
        if not (len(self.boundary) == len(self.z_weights) == len(self.extra_q_weights) == n):
            raise ValueError("vector dimensions must match the matrix")
        if self.q_step < 1:
            raise ValueError("q_step must be positive")


def _freeze(matrix) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(row) for row in matrix)


def gordon_data_r2(k: int, b0: int) -> GordonData:
    """Sum data for the rank-2 character with initial cap b0."""
    return GordonData(
        matrix=_freeze(gordon_a2(k)),
        boundary=tuple(boundary_c2(k, b0)),
        q_step=1,
        halved=True,
        z_weights=tuple(range(1, k + 1)),
        extra_q_weights=(0,) * k,
    )


def gordon_data_r3(k: int, b0: int) -> GordonData:
    """Sum data for the rank-3 character with b = (b0, k).

    Coordinates are (m_{1,1}, ..., m_{1,k}, m_{2,1}, ..., m_{2,k}); the second
    block contributes an extra q^(l2) with l2 = sum_j j*m_{2,j}, and all
    Pochhammer factors run in q^2.
    """
    return GordonData(
        matrix=_freeze(gordon_a(k)),
        boundary=tuple(boundary_c3(k, b0)),
        q_step=2,
        halved=False,
        z_weights=tuple(range(1, k + 1)) * 2,
        extra_q_weights=(0,) * k + tuple(range(1, k + 1)),
    )


def gordon_data_r3_special(k: int) -> GordonData:
    """Sum data for the rank-3 character at the symmetric initial cap.

    Uses the k x k matrix B with the boundary vector taken at
    b0 = floor((k+1)/2); this is the only b0 the closed form covers.
    """
    return GordonData(
        matrix=_freeze(gordon_b(k)),
        boundary=tuple(boundary_c2(k, (k + 1) // 2)),
        q_step=1,
        halved=True,
        z_weights=tuple(range(1, k + 1)),
        extra_q_weights=(0,) * k,
    )


def quadratic_exponent(data: GordonData, m) -> int:
    """The q-exponent of the term indexed by multiplicity vector m.

    Computed in exact integers; when the halved form applies, divisibility
    by 2 is asserted (it holds for every symmetric integer matrix, so a
    failure here means corrupted data, never bad input).
    """
    mat = data.matrix
    n = len(mat)
    quad = 0
    for i in range(n):
        mi = m[i]
        if not mi:
            continue
        row = mat[i]
        quad += mi * sum(row[j] * m[j] for j in range(n) if m[j])
    lin = sum(mat[i][i] * m[i] for i in range(n))
    numerator = quad - lin + 2 * sum(c * x for c, x in zip(data.boundary, m))
    if data.halved:
        if numerator % 2:
            raise AssertionError(
                f"non-integral exponent for m={tuple(m)}: numerator {numerator}"
            )
        return numerator // 2
    return numerator


def _multiplicity_vectors(weights, total):
    """All non-negative integer vectors m with sum(weights[i]*m[i]) = total."""
    n = len(weights)

    def rec(i, remaining, prefix):
        if i == n:
            if remaining == 0:
                yield tuple(prefix)
            return
        w = weights[i]
        if i == n - 1:
            if remaining % w == 0:
                yield tuple(prefix) + (remaining // w,)
            return
        for v in range(remaining // w + 1):
            yield from rec(i + 1, remaining - v * w, prefix + [v])

    yield from rec(0, total, [])


def evaluate_gordon_sum(data: GordonData, q_max: int, z_max: int) -> TruncatedSeries:
    """Evaluate the fermionic sum as a truncated series in (q, z)."""
    coeffs: dict[tuple[int, int], int] = {}
    for n in range(z_max + 1):
        for m in _multiplicity_vectors(data.z_weights, n):
            shift = quadratic_exponent(data, m) + sum(
                w * x for w, x in zip(data.extra_q_weights, m)
            )
            if shift > q_max:
                continue
            poch = {0: 1}
            for mi in m:
                if mi:
                    poch = _dict_mul_q(
                        poch,
                        _pochhammer_inverse_coeffs(mi, data.q_step, q_max - shift),
                        q_max - shift,
                    )
            for d, c in poch.items():
                key = (d + shift, n)
                coeffs[key] = coeffs.get(key, 0) + c
    return TruncatedSeries(coeffs, q_max, z_max)


def _dict_mul_q(a: dict[int, int], b: dict[int, int], q_max: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for da, ca in a.items():
        for db, cb in b.items():
            d = da + db
            if d <= q_max:
                out[d] = out.get(d, 0) + ca * cb
    return out


def fermionic_r2(k: int, b0: int, q_max: int, z_max: int) -> TruncatedSeries:
    """Fermionic character for rank 2, initial cap b0."""
    return evaluate_gordon_sum(gordon_data_r2(k, b0), q_max, z_max)


def fermionic_r3(k: int, b0: int, q_max: int, z_max: int) -> TruncatedSeries:
    """Fermionic character for rank 3 with b = (b0, k)."""
    return evaluate_gordon_sum(gordon_data_r3(k, b0), q_max, z_max)


def fermionic_r3_special(k: int, q_max: int, z_max: int) -> TruncatedSeries:
    """Fermionic character for rank 3 at b = (floor((k+1)/2), k)."""
    return evaluate_gordon_sum(gordon_data_r3_special(k), q_max, z_max)


@dataclass(frozen=True)
class RestrictedPartition:
    """A partition with all parts at most k, stored by part multiplicities.

    multiplicities[a-1] counts parts of size a, for a = 1..k.
    """

    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if any(m < 0 for m in self.multiplicities):
            raise ValueError("multiplicities must be non-negative")

    @classmethod
    def from_parts(cls, parts, k: int) -> "RestrictedPartition":
        mult = [0] * k
        for p in parts:
            if not 1 <= p <= k:
                raise ValueError(f"part {p} violates the level-{k} restriction")
            mult[p - 1] += 1
        return cls(tuple(mult))

    @property
    def size(self) -> int:
        return sum((a + 1) * m for a, m in enumerate(self.multiplicities))

    @property
    def parts(self) -> tuple[int, ...]:
        out = []
        for a in range(len(self.multiplicities), 0, -1):
            out.extend([a] * self.multiplicities[a - 1])
        return tuple(out)

    @property
    def conjugate(self) -> tuple[int, ...]:
        return tuple(
            sum(self.multiplicities[a:]) for a in range(len(self.multiplicities))
        )


def level_restricted_partitions(n: int, k: int):
    """All partitions of n with parts at most k, as RestrictedPartition."""
    _check_k(k)
    for m in _multiplicity_vectors(tuple(range(1, k + 1)), n):
        yield RestrictedPartition(m)


def partition_term(
    partition: RestrictedPartition, data: GordonData, q_max: int
) -> TruncatedSeries:
    """Character contribution of a single partition: q^weight / prod (q)_{m_a}.

    The weight is the quadratic-form exponent of the sum data evaluated at the
    partition's multiplicity vector.  Only the k-dimensional (halved) variants
    make sense here.
    """
    m = partition.multiplicities
    if len(m) != len(data.boundary):
        raise ValueError(
            f"partition has {len(m)} multiplicities, sum data expects {len(data.boundary)}"
        )
    weight = quadratic_exponent(data, m)
    if weight > q_max:
        return TruncatedSeries.zero(q_max)
    poch = {0: 1}
    for mi in m:
        if mi:
            poch = _dict_mul_q(
                poch,
                _pochhammer_inverse_coeffs(mi, data.q_step, q_max - weight),
                q_max - weight,
            )
    return TruncatedSeries({(d + weight, 0): c for d, c in poch.items()}, q_max, 0)
