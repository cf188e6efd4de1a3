"""Scalar data of lattice vertex operator products: pair functions and the
factored matrix-element formulas.

Operators are described by 2-periodic sequences of lattice vectors (one
vector for even mode indices, one for odd) plus a zero-mode vector.  Vectors
are never stored in coordinates, only as rational combinations of named
generators whose pairwise inner products live in a PairingTable; this keeps
every computation exact even when a generator itself has irrational
coordinates.  The product of two operators contracts to the scalar

    g(z, w) = z^(<a_0, b^0>) * exp(-sum_{m>0} <a_m, b_{-m}>/m (w/z)^m),

which for 2-periodic data has the closed form (1-w/z)^p (1+w/z)^s with
p = (c_odd + c_even)/2 and s = (c_even - c_odd)/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb


class PairingUndefined(KeyError):
    """No pairing stored for a generator pair (for instance an irrational one)."""


class PairingTable:
    """Symmetric table of rational inner products of named generators."""

    def __init__(self, pairings: dict):
        table = {}
        names = set()
        for (g, h), value in pairings.items():
            names.add(g)
            names.add(h)
            value = Fraction(value)
            key = (g, h) if g <= h else (h, g)
            if key in table and table[key] != value:
                raise ValueError(f"conflicting pairings for {key}")
            table[key] = value
        self._table = table
        self.names = frozenset(names)

    def pairing_of(self, g: str, h: str) -> Fraction:
        key = (g, h) if g <= h else (h, g)
        try:
            return self._table[key]
        except KeyError:
            raise PairingUndefined(f"pairing <{g}, {h}> is not defined") from None

    def pairing(self, u: dict, v: dict) -> Fraction:
        """Bilinear extension to sparse rational combinations of generators."""
        total = Fraction(0)
        for g, cu in u.items():
            if not cu:
                continue
            for h, cv in v.items():
                if cv:
                    total += Fraction(cu) * Fraction(cv) * self.pairing_of(g, h)
        return total


def _vec_add(u: dict, v: dict) -> dict:
    out = dict(u)
    for g, c in v.items():
        out[g] = out.get(g, 0) + c
        if not out[g]:
            del out[g]
    return out


def _vec_scale(u: dict, factor) -> dict:
    return {g: c * factor for g, c in u.items() if c * factor}


@dataclass(frozen=True, eq=False)
class VOSpec:
    """A 2-periodic operator spec: mode vectors by parity plus a zero mode.

    even applies to all even mode indices including 0, odd to all odd ones;
    a constant spec has even == odd.  Every sequence used here is of this
    form, so the representation is lossless.
    """

    even: dict
    odd: dict
    zero_mode: dict

    @classmethod
    def constant(cls, vec: dict) -> "VOSpec":
        return cls(dict(vec), dict(vec), dict(vec))

    def is_constant(self) -> bool:
        return self.even == self.odd


@dataclass(frozen=True)
class PairFunction:
    """Expansion of one contraction scalar.

    z_power is the leading power of z; coeffs[d] is the coefficient of
    (w/z)^d; closed_form is (p, s) for (1-w/z)^p (1+w/z)^s when both
    exponents are non-negative integers, else None.
    """

    z_power: Fraction
    coeffs: tuple
    closed_form: tuple[int, int] | None


def _pair_exponents(a: VOSpec, b: VOSpec, table: PairingTable):
    c_even = table.pairing(a.even, b.even)
    c_odd = table.pairing(a.odd, b.odd)
    z_power = table.pairing(a.even, b.zero_mode)
    return c_even, c_odd, z_power


def pair_function(a: VOSpec, b: VOSpec, table: PairingTable, trunc: int) -> PairFunction:
    """Contraction scalar of two operator specs, to order trunc in w/z."""
    c_even, c_odd, z_power = _pair_exponents(a, b, table)
    # exp(sum L_m x^m) with L_m = -c_m/m via the log-derivative recurrence
    coeffs = [Fraction(1)]
    for d in range(1, trunc + 1):
        acc = Fraction(0)
        for j in range(1, d + 1):
            c_j = c_odd if j % 2 else c_even
            acc -= c_j * coeffs[d - j]
        coeffs.append(acc / d)
    p = (c_odd + c_even) / 2
    s = (c_even - c_odd) / 2
    closed = None
    if p.denominator == 1 and s.denominator == 1 and p >= 0 and s >= 0:
        closed = (int(p), int(s))
    return PairFunction(z_power, tuple(coeffs), closed)


def closed_form_series(p: int, s: int, trunc: int) -> list[Fraction]:
    """Coefficients of (1 - x)^p (1 + x)^s through order trunc."""
    out = [Fraction(0)] * (trunc + 1)
    for i in range(min(p, trunc) + 1):
        ci = comb(p, i) * (-1) ** i
        for j in range(min(s, trunc - i) + 1):
            out[i + j] += ci * comb(s, j)
    return out


@dataclass(frozen=True, eq=False)
class FactoredMatrixElement:
    """The scalar prefactor of a product of grouped vertex operators.

    Per group a with multiplicity m_a: each variable carries the power
    var_powers[a]; each unordered pair of groups (and each pair of variables
    within a group) carries a (z-w)^p (z+w)^s factor recorded in
    pair_factors, keyed by group names in spec-list order.
    """

    group_names: tuple[str, ...]
    multiplicities: dict
    specs: dict
    var_powers: dict
    pair_factors: dict

    def pair_exponents(self, a: str, b: str) -> tuple[int, int]:
        order = {name: i for i, name in enumerate(self.group_names)}
        key = (a, b) if order[a] <= order[b] else (b, a)
        return self.pair_factors[key]

    def total_degree(self) -> int:
        deg = 0
        for name in self.group_names:
            m = self.multiplicities[name]
            deg += m * self.var_powers[name]
            p, s = self.pair_factors[(name, name)]
            deg += (m * (m - 1) // 2) * (p + s)
        for i, a in enumerate(self.group_names):
            for b in self.group_names[i + 1 :]:
                p, s = self.pair_factors[(a, b)]
                deg += self.multiplicities[a] * self.multiplicities[b] * (p + s)
        return deg

    def variables(self) -> list[tuple[str, int]]:
        return [
            (name, j)
            for name in self.group_names
            for j in range(self.multiplicities[name])
        ]


def matrix_element_F1(specs, beta, table: PairingTable) -> FactoredMatrixElement:
    """Factored form of the vacuum-to-charged-sector matrix element.

    specs is a list of (name, VOSpec, multiplicity); beta is the ket vector,
    given as a generator name or a sparse vector (None means the vacuum).
    Raises when a variable power is non-integral or a pair has no closed
    form, naming the offender.
    """
    if beta is None:
        beta_vec: dict = {}
    elif isinstance(beta, str):
        beta_vec = {beta: 1}
    else:
        beta_vec = beta
    names = tuple(name for name, _, _ in specs)
    if len(set(names)) != len(names):
        raise ValueError("group names must be distinct")
    mult = {name: m for name, _, m in specs}
    spec_map = {name: s for name, s, _ in specs}
    var_powers = {}
    for name, spec, _ in specs:
        power = table.pairing(spec.zero_mode, beta_vec)
        if power.denominator != 1:
            raise ValueError(f"variable power for group {name} is not an integer: {power}")
        var_powers[name] = int(power)
    pair_factors = {}
    for i, a in enumerate(names):
        for b in names[i:]:
            c_even, c_odd, z_power = _pair_exponents(spec_map[a], spec_map[b], table)
            p = (c_odd + c_even) / 2
            s = (c_even - c_odd) / 2
            if p.denominator != 1 or s.denominator != 1 or p < 0 or s < 0:
                raise ValueError(
                    f"pair ({a}, {b}) has no closed form: exponents ({p}, {s})"
                )
            if z_power != p + s:
                raise ValueError(
                    f"pair ({a}, {b}) has leading z-power {z_power}, "
                    f"expected {p + s}; closed form unavailable"
                )
            pair_factors[(a, b)] = (int(p), int(s))
    return FactoredMatrixElement(names, mult, spec_map, var_powers, pair_factors)


@dataclass(frozen=True, eq=False)
class GroupedPolynomial:
    """Polynomial in the grouped variables x^(a)_j of a matrix element."""

    variables: tuple[tuple[str, int], ...]
    terms: dict

    def is_symmetric_within_groups(self) -> bool:
        """True if invariant under swapping any two variables of one group."""
        index = {v: i for i, v in enumerate(self.variables)}
        groups: dict[str, list[int]] = {}
        for (name, j), i in index.items():
            groups.setdefault(name, []).append(i)
        for positions in groups.values():
            positions.sort()
            for a_pos, b_pos in zip(positions, positions[1:]):
                for expo, c in self.terms.items():
                    swapped = list(expo)
                    swapped[a_pos], swapped[b_pos] = swapped[b_pos], swapped[a_pos]
                    if self.terms.get(tuple(swapped), 0) != c:
                        return False
        return True

    def total_degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}


def apply_powersum(h, f1: FactoredMatrixElement, table: PairingTable) -> GroupedPolynomial:
    """Expand the power-sum multiplier attached to a list of raising modes.

    h is a list of (r, gamma) with r >= 1 and gamma a generator name or
    sparse vector.  Each entry contributes the factor
    sum_a <gamma, alpha_{a,-r}> p_r^(a); the product is returned expanded in
    the grouped variables, so the full matrix element is multiplier * F(1).
    """
    variables = tuple(f1.variables())
    nvars = len(variables)
    terms: dict[tuple[int, ...], Fraction] = {(0,) * nvars: Fraction(1)}
    for r, gamma in h:
        if r < 1:
            raise ValueError(f"mode order must be positive, got {r}")
        gamma_vec = {gamma: 1} if isinstance(gamma, str) else gamma
        factor: dict[tuple[int, ...], Fraction] = {}
        for i, (name, _) in enumerate(variables):
            spec = f1.specs[name]
            mode_vec = spec.odd if r % 2 else spec.even
            coeff = table.pairing(gamma_vec, mode_vec)
            if not coeff:
                continue
            expo = [0] * nvars
            expo[i] = r
            key = tuple(expo)
            factor[key] = factor.get(key, Fraction(0)) + coeff
        new_terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in terms.items():
            for e2, c2 in factor.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = new_terms.get(e, Fraction(0)) + c1 * c2
                if v:
                    new_terms[e] = v
                elif e in new_terms:
                    del new_terms[e]
        terms = new_terms
    return GroupedPolynomial(variables, terms)


# ---------------------------------------------------------------------------
# Built-in spec families

@dataclass(frozen=True, eq=False)
class VOFamily:
    """A named collection of operator specs sharing one pairing table."""

    name: str
    k: int
    table: PairingTable
    specs: tuple
    boundary: str | None


def family_r2(k: int, b0: int) -> VOFamily:
    """Constant specs gamma_a built from an orthogonal norm-2 basis, with the
    boundary vector pairing to 0 on the first b0 generators and 1 after."""
    _check_kb(k, b0)
    pairings = {}
    for a in range(1, k + 1):
        for b in range(a, k + 1):
            pairings[(f"eps{a}", f"eps{b}")] = 2 if a == b else 0
        pairings[(f"eps{a}", "beta0")] = 0 if a <= b0 else 1
    table = PairingTable(pairings)
    specs = tuple(
        (f"gamma{a}", VOSpec.constant({f"eps{j}": 1 for j in range(1, a + 1)}))
        for a in range(1, k + 1)
    )
    return VOFamily("r2", k, table, specs, "beta0")


def family_r3_split(k: int, b0: int) -> VOFamily:
    """Two constant families gamma_a^+ and gamma_a^- over paired 2-dimensional
    blocks; the minus family accumulates generators from the top index down."""
    _check_kb(k, b0)
    pairings = {}
    for j in range(1, k + 1):
        pairings[(f"eps{j}+", f"eps{j}+")] = 2
        pairings[(f"eps{j}-", f"eps{j}-")] = 2
        pairings[(f"eps{j}+", f"eps{j}-")] = 1
        for j2 in range(j + 1, k + 1):
            for s1 in "+-":
                for s2 in "+-":
                    pairings[(f"eps{j}{s1}", f"eps{j2}{s2}")] = 0
        pairings[(f"eps{j}+", "gamma0")] = 0 if j <= b0 else 1
        pairings[(f"eps{j}-", "gamma0")] = 0
    table = PairingTable(pairings)
    plus = tuple(
        (f"gamma{a}+", VOSpec.constant({f"eps{j}+": 1 for j in range(1, a + 1)}))
        for a in range(1, k + 1)
    )
    minus = tuple(
        (
            f"gamma{a}-",
            VOSpec.constant({f"eps{k + 1 - j}-": 1 for j in range(1, a + 1)}),
        )
        for a in range(1, k + 1)
    )
    return VOFamily("r3-split", k, table, plus + minus, "gamma0")


def family_r3_mixed(k: int) -> VOFamily:
    """The mixed-current family: alternating-sign specs on paired blocks and,
    for odd k, a middle spec whose even modes use the norm-3 composite
    generator.  The irrational cross pairing of the two middle generators is
    deliberately absent from the table."""
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    half = k // 2
    pairings = {}
    for j in range(1, half + 1):
        pairings[(f"eps{j}+", f"eps{j}+")] = 2
        pairings[(f"eps{j}-", f"eps{j}-")] = 2
        pairings[(f"eps{j}+", f"eps{j}-")] = 1
        for j2 in range(j + 1, half + 1):
            for s1 in "+-":
                for s2 in "+-":
                    pairings[(f"eps{j}{s1}", f"eps{j2}{s2}")] = 0
    if k % 2:
        pairings[("eps0", "eps0")] = 1
        pairings[("sqrt3_eps0", "sqrt3_eps0")] = 3
        for j in range(1, half + 1):
            for s in "+-":
                pairings[(f"eps{j}{s}", "eps0")] = 0
                pairings[(f"eps{j}{s}", "sqrt3_eps0")] = 0
    table = PairingTable(pairings)

    def base_spec(a: int) -> VOSpec:
        if a <= half:
            vec = {f"eps{a}+": 1}
            return VOSpec(even=vec, odd=dict(vec), zero_mode=dict(vec))
        if k % 2 and a == half + 1:
            return VOSpec(
                even={"sqrt3_eps0": 1},
                odd={"eps0": 1},
                zero_mode={"sqrt3_eps0": 1},
            )
        j = k - a + 1
        vec = {f"eps{j}-": 1}
        return VOSpec(even=dict(vec), odd={f"eps{j}-": -1}, zero_mode=dict(vec))

    specs = []
    even_acc: dict = {}
    odd_acc: dict = {}
    zero_acc: dict = {}
    for a in range(1, k + 1):
        base = base_spec(a)
        even_acc = _vec_add(even_acc, base.even)
        odd_acc = _vec_add(odd_acc, base.odd)
        zero_acc = _vec_add(zero_acc, base.zero_mode)
        specs.append(
            (f"gamma{a}", VOSpec(dict(even_acc), dict(odd_acc), dict(zero_acc)))
        )
    name = "r3-odd-k" if k % 2 else "r3-even-k"
    return VOFamily(name, k, table, tuple(specs), None)


def build_family(name: str, k: int, b0: int = 0) -> VOFamily:
    """Dispatch on the CLI family names."""
    if name == "r2":
        return family_r2(k, b0)
    if name == "r3-split":
        return family_r3_split(k, b0)
    if name == "r3-odd-k":
        if k % 2 == 0:
            raise ValueError("r3-odd-k requires odd k")
        return family_r3_mixed(k)
    if name == "r3-even-k":
        if k % 2:
            raise ValueError("r3-even-k requires even k")
        return family_r3_mixed(k)
    raise ValueError(f"unknown family: {name}")


def _check_kb(k: int, b0: int):
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if not 0 <= b0 <= k:
        raise ValueError(f"b0 must lie in [0, {k}], got {b0}")
