"""Truncated bivariate power series in q and z with exact integer coefficients.

Every series carries explicit truncation orders: coefficients of q^i z^j with
i > q_order or j > z_order are unknown (not zero).  Arithmetic keeps exact
int coefficients and propagates truncation as the componentwise minimum of
the operand windows, so "equal up to order" is a total, decidable relation.
"""

from __future__ import annotations

import json


class TruncatedSeries:
    """Sparse polynomial in (q, z), exact on the window [0, q_order] x [0, z_order].

    The coefficient map stores no zeros and no keys outside the window
    (canonical form).  Instances are treated as immutable; all operations
    return new series.
    """

    __slots__ = ("coeffs", "q_order", "z_order")

    def __init__(self, coeffs=None, q_order: int = 0, z_order: int = 0):
        if q_order < 0 or z_order < 0:
            raise ValueError("truncation orders must be non-negative")
        clean: dict[tuple[int, int], int] = {}
        if coeffs:
            for (dq, dz), c in coeffs.items():
                if dq < 0 or dz < 0:
                    raise ValueError("exponents must be non-negative")
                if c and dq <= q_order and dz <= z_order:
                    clean[(dq, dz)] = c
        self.coeffs = clean
        self.q_order = q_order
        self.z_order = z_order

    @classmethod
    def zero(cls, q_order: int, z_order: int = 0) -> "TruncatedSeries":
        return cls({}, q_order, z_order)

    @classmethod
    def one(cls, q_order: int, z_order: int = 0) -> "TruncatedSeries":
        return cls({(0, 0): 1}, q_order, z_order)

    def coefficient(self, dq: int, dz: int = 0) -> int:
        """Coefficient of q^dq z^dz.  Raises outside the truncation window."""
        if dq > self.q_order or dz > self.z_order:
            raise ValueError(
                f"coefficient ({dq},{dz}) is beyond the truncation window "
                f"({self.q_order},{self.z_order})"
            )
        return self.coeffs.get((dq, dz), 0)

    def restrict(self, q_order: int, z_order: int) -> "TruncatedSeries":
        """Truncate down to a smaller window."""
        q = min(self.q_order, q_order)
        z = min(self.z_order, z_order)
        return TruncatedSeries(self.coeffs, q, z)

    def z_block(self, n: int) -> "TruncatedSeries":
        """The q-series multiplying z^n, as a series with z_order 0."""
        if n > self.z_order:
            raise ValueError(f"z^{n} is beyond z_order={self.z_order}")
        block = {(dq, 0): c for (dq, dz), c in self.coeffs.items() if dz == n}
        return TruncatedSeries(block, self.q_order, 0)

    def scale(self, factor: int) -> "TruncatedSeries":
        return TruncatedSeries(
            {e: factor * c for e, c in self.coeffs.items()},
            self.q_order,
            self.z_order,
        )

    def shift(self, dq: int, dz: int = 0) -> "TruncatedSeries":
        """Multiply by the monomial q^dq z^dz, keeping the same window."""
        out = {}
        for (eq, ez), c in self.coeffs.items():
            fq, fz = eq + dq, ez + dz
            if fq <= self.q_order and fz <= self.z_order:
                out[(fq, fz)] = c
        return TruncatedSeries(out, self.q_order, self.z_order)

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        q = min(self.q_order, other.q_order)
        z = min(self.z_order, other.z_order)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return TruncatedSeries(out, q, z)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        q = min(self.q_order, other.q_order)
        z = min(self.z_order, other.z_order)
        a, b = self.coeffs, other.coeffs
        if len(a) > len(b):
            a, b = b, a
        out: dict[tuple[int, int], int] = {}
        for (aq, az), ca in a.items():
            if aq > q or az > z:
                continue
            for (bq, bz), cb in b.items():
                eq, ez = aq + bq, az + bz
                if eq > q or ez > z:
                    continue
                key = (eq, ez)
                out[key] = out.get(key, 0) + ca * cb
        return TruncatedSeries(out, q, z)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        q = min(self.q_order, other.q_order)
        z = min(self.z_order, other.z_order)
        for (dq, dz), c in self.coeffs.items():
            if dq <= q and dz <= z and other.coeffs.get((dq, dz), 0) != c:
                return False
        for (dq, dz), c in other.coeffs.items():
            if dq <= q and dz <= z and self.coeffs.get((dq, dz), 0) != c:
                return False
        return True

    __hash__ = None  # window-relative equality is incompatible with hashing

    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self):
        """Nonzero terms as (dq, dz, coeff), sorted by (dz, dq)."""
        return sorted(
            ((dq, dz, c) for (dq, dz), c in self.coeffs.items()),
            key=lambda t: (t[1], t[0]),
        )

    def __repr__(self):
        parts = []
        for dq, dz, c in self.terms()[:8]:
            mono = "".join(
                s
                for s in (
                    f"q^{dq}" if dq else "",
                    f"z^{dz}" if dz else "",
                )
                if s
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        body = " + ".join(parts) if parts else "0"
        if len(self.coeffs) > 8:
            body += " + ..."
        return f"<series {body} | O(q^{self.q_order}, z^{self.z_order})>"

    def to_json_obj(self) -> dict:
        """Canonical JSON object: terms sorted by (dz, dq), coefficients as strings."""
        return {
            "q_order": self.q_order,
            "z_order": self.z_order,
            "terms": [[dq, dz, str(c)] for dq, dz, c in self.terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "TruncatedSeries":
        coeffs = {(int(dq), int(dz)): int(c) for dq, dz, c in obj["terms"]}
        return cls(coeffs, int(obj["q_order"]), int(obj["z_order"]))

    @classmethod
    def from_json(cls, text: str) -> "TruncatedSeries":
        return cls.from_json_obj(json.loads(text))


def monomial(
    q_exp: int,
    z_exp: int,
    coefficient: int,
    q_order: int | None = None,
    z_order: int | None = None,
) -> TruncatedSeries:
    """Single-term series; the window defaults to the monomial's own exponents."""
    if q_order is None:
        q_order = q_exp
    if z_order is None:
        z_order = z_exp
    if q_exp > q_order or z_exp > z_order:
        raise ValueError("monomial exponents exceed the declared truncation")
    return TruncatedSeries({(q_exp, z_exp): coefficient}, q_order, z_order)


def pochhammer_inverse(
    m: int, step: int, q_order: int, z_order: int = 0
) -> TruncatedSeries:
    """Truncated expansion of 1 / prod_{j=1..m} (1 - q^(step*j)).

    step=1 gives the inverse of the usual finite q-Pochhammer (q)_m,
    step=2 the inverse of its q^2 analogue.  m=0 is the empty product 1.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if step < 1:
        raise ValueError("step must be positive")
    coeffs = _pochhammer_inverse_coeffs(m, step, q_order)
    return TruncatedSeries(
        {(d, 0): c for d, c in coeffs.items()}, q_order, z_order
    )


def _pochhammer_inverse_coeffs(m: int, step: int, q_order: int) -> dict[int, int]:
    # 1/(1 - q^(step*j)) is the geometric series in q^(step*j).
    out = {0: 1}
    for j in range(1, m + 1):
        stride = step * j
        if stride > q_order:
            continue
        new = dict(out)
        # multiply by sum_{t>=1} q^(stride*t), accumulate in increasing degree
        for d in range(stride, q_order + 1):
            lower = new.get(d - stride)
            if lower:
                new[d] = new.get(d, 0) + lower
        out = new
    return out


def pochhammer(m: int, step: int, q_order: int, z_order: int = 0) -> TruncatedSeries:
    """The finite product prod_{j=1..m} (1 - q^(step*j)), truncated."""
    acc = TruncatedSeries.one(q_order, z_order)
    for j in range(1, m + 1):
        factor = TruncatedSeries(
            {(0, 0): 1, (step * j, 0): -1}, q_order, z_order
        )
        acc = acc * factor
    return acc


def first_mismatch(a: TruncatedSeries, b: TruncatedSeries):
    """First disagreeing term on the common window, ordered by (dz, dq).

    Returns (dq, dz, coeff_a, coeff_b) or None when the series agree.
    """
    q = min(a.q_order, b.q_order)
    z = min(a.z_order, b.z_order)
    keys = set(a.coeffs) | set(b.coeffs)
    for dq, dz in sorted(keys, key=lambda e: (e[1], e[0])):
        if dq > q or dz > z:
            continue
        ca = a.coeffs.get((dq, dz), 0)
        cb = b.coeffs.get((dq, dz), 0)
        if ca != cb:
            return (dq, dz, ca, cb)
    return None
