"""Arithmetic in R[x; d], the projections R[x; d] -> (R/I)[x], and polynomials over finite fields."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

from .config import DEFAULT_BOUNDS, Bounds
from .derivation import Derivation
from .errors import BoundExceeded, DiffPolyError, IdealError, InvariantError
from .ideals import Ideal, Quotient, quotient_ring
from .rings import FiniteRing, polymod


def _normalize(coeffs: Iterable[int], zero: int) -> tuple[int, ...]:
    c = [int(v) for v in coeffs]
    while c and c[-1] == zero:
        c.pop()
    return tuple(c)


def _poly_str(ring: FiniteRing, coeffs: Sequence[int], var: str = "x") -> str:
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == ring.zero:
            continue
        lbl = ring.short_label(c)
        if k == 0:
            parts.append(lbl)
            continue
        mono = var if k == 1 else f"{var}^{k}"
        if c == ring.one:
            parts.append(mono)
        elif lbl.isdigit() or lbl.isidentifier():
            parts.append(f"{lbl}{mono}" if lbl.isdigit() else f"{lbl}*{mono}")
        else:
            parts.append(f"({lbl}){mono}")
    return " + ".join(parts)


class OreRing:
    """The differential polynomial ring R[x; d] with left coefficients a_0 + a_1 x + ... ."""

    def __init__(self, delta: Derivation):
        self.delta = delta
        self.base = delta.ring

    def __call__(self, coeffs: Iterable) -> "OrePoly":
        return OrePoly(self, _normalize((self.base.element(c) for c in coeffs), self.base.zero))

    def const(self, a: int) -> "OrePoly":
        return self([a])

    def monomial(self, a: int, k: int) -> "OrePoly":
        return self([self.base.zero] * k + [a])

    @property
    def zero(self) -> "OrePoly":
        return OrePoly(self, ())

    @property
    def one(self) -> "OrePoly":
        return self.const(self.base.one)

    @property
    def x(self) -> "OrePoly":
        return self.monomial(self.base.one, 1)

    def all_polys(self, dmax: int) -> Iterator["OrePoly"]:
        """Every polynomial of degree <= dmax (|R|^(dmax+1) of them)."""
        for coeffs in itertools.product(range(self.base.order), repeat=dmax + 1):
            yield self(coeffs)

    def random_poly(self, rng, dmax: int) -> "OrePoly":
        return self(rng.integers(0, self.base.order, size=dmax + 1).tolist())

    def __repr__(self) -> str:
        return f"OreRing({self.base.describe()}, {self.delta.name})"


@dataclass(frozen=True)
class OrePoly:
    """An element of R[x; d]; coefficients lowest degree first with no trailing zero."""

    ring: OreRing
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        """Degree, with -1 standing in for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int | None:
        return self.coeffs[-1] if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.ring.base.one

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.ring.base.zero

    def padded(self, length: int) -> tuple[int, ...]:
        if len(self.coeffs) > length:
            raise DiffPolyError(f"degree {self.degree} exceeds {length - 1}")
        return self.coeffs + (self.ring.base.zero,) * (length - len(self.coeffs))

    def _same(self, other: "OrePoly") -> None:
        if not isinstance(other, OrePoly) or other.ring is not self.ring:
            raise DiffPolyError("polynomials belong to different rings")

    def __add__(self, other: "OrePoly") -> "OrePoly":
        return op_add(self, other)

    def __neg__(self) -> "OrePoly":
        R = self.ring.base
        return OrePoly(self.ring, tuple(R.negate(c) for c in self.coeffs))

    def __sub__(self, other: "OrePoly") -> "OrePoly":
        return op_add(self, -other)

    def __mul__(self, other: "OrePoly") -> "OrePoly":
        return op_mul(self, other)

    def __pow__(self, k: int) -> "OrePoly":
        out = self.ring.one
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        return _poly_str(self.ring.base, self.coeffs)


def op_add(f: OrePoly, g: OrePoly) -> OrePoly:
    f._same(g)
    R = f.ring.base
    n = max(len(f.coeffs), len(g.coeffs))
    return OrePoly(f.ring, _normalize((R.add(f.coeff(k), g.coeff(k)) for k in range(n)), R.zero))


def op_mul(f: OrePoly, g: OrePoly) -> OrePoly:
    """Product using x^i b = sum_k C(i, k) d^(i-k)(b) x^k.

    Binomial coefficients act on R as integer multiples, so nothing assumes
    characteristic zero.
    """
    f._same(g)
    R, delta = f.ring.base, f.ring.delta
    if not f.coeffs or not g.coeffs:
        return f.ring.zero
    out = [R.zero] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a == R.zero:
            continue
        for k in range(i + 1):
            iterate = delta.iterate(i - k)
            c = comb(i, k)
            for j, b in enumerate(g.coeffs):
                if b == R.zero:
                    continue
                term = R.mul(a, R.times(c, iterate[b]))
                out[k + j] = R.add(out[k + j], term)
    return OrePoly(f.ring, _normalize(out, R.zero))


# ---------------------------------------------------------------------------
# polynomials over a finite field


@dataclass(frozen=True)
class FieldPoly:
    """A polynomial over a finite field, lowest degree first, no trailing zero."""

    field: FiniteRing
    coeffs: tuple[int, ...]

    @classmethod
    def of(cls, field: FiniteRing, coeffs: Iterable) -> "FieldPoly":
        return cls(field, _normalize((field.element(c) for c in coeffs), field.zero))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def _same(self, other):
        if not isinstance(other, FieldPoly) or other.field is not self.field:
            raise DiffPolyError("polynomials over different fields")

    def __add__(self, other: "FieldPoly") -> "FieldPoly":
        self._same(other)
        K = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return FieldPoly(K, _normalize((K.add(self.coeff(k), other.coeff(k)) for k in range(n)), K.zero))

    def __neg__(self) -> "FieldPoly":
        return FieldPoly(self.field, tuple(self.field.negate(c) for c in self.coeffs))

    def __sub__(self, other: "FieldPoly") -> "FieldPoly":
        return self + (-other)

    def __mul__(self, other: "FieldPoly") -> "FieldPoly":
        self._same(other)
        K = self.field
        if not self.coeffs or not other.coeffs:
            return FieldPoly(K, ())
        out = [K.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = K.add(out[i + j], K.mul(a, b))
        return FieldPoly(K, _normalize(out, K.zero))

    def scale(self, c: int) -> "FieldPoly":
        K = self.field
        return FieldPoly(K, _normalize((K.mul(c, a) for a in self.coeffs), K.zero))

    def monic(self) -> "FieldPoly":
        if not self.coeffs:
            return self
        inv = self.field.inverse(self.coeffs[-1])
        return self.scale(inv)

    def labels(self) -> list[str]:
        return [self.field.short_label(c) for c in self.coeffs]

    def __str__(self) -> str:
        return _poly_str(self.field, self.coeffs)


def monic_division(f: FieldPoly, p: FieldPoly) -> tuple[FieldPoly, FieldPoly]:
    """(q, r) with f = q p + r and deg r < deg p; p must be monic."""
    f._same(p)
    if not p.is_monic():
        raise DiffPolyError(f"divisor {p} is not monic")
    K = f.field
    r = list(f.coeffs)
    dp = p.degree
    q = [K.zero] * max(len(r) - dp, 0)
    for top in range(len(r) - 1, dp - 1, -1):
        c = r[top]
        if c == K.zero:
            continue
        q[top - dp] = c
        for m, pm in enumerate(p.coeffs):
            r[top - dp + m] = K.sub(r[top - dp + m], K.mul(c, pm))
    quo = FieldPoly(K, _normalize(q, K.zero))
    rem = FieldPoly(K, _normalize(r, K.zero))
    if quo * p + rem != f or rem.degree >= dp:
        raise InvariantError(f"division of {f} by {p} failed verification")
    return quo, rem


def poly_gcd(polys: Iterable[FieldPoly]) -> FieldPoly | None:
    """Monic gcd by Euclid; None for an empty input, the zero polynomial if all are zero."""
    g = None
    for f in polys:
        if g is None:
            g = f.monic()
            continue
        a, b = g, f.monic()
        while not b.is_zero():
            a, b = b, monic_division(a, b)[1].monic()
        g = a.monic()
    return g


def _monics(K: FiniteRing, d: int) -> Iterator[FieldPoly]:
    # lowest coefficient varies fastest
    for low in itertools.product(range(K.order), repeat=d):
        yield FieldPoly(K, tuple(reversed(low)) + (K.one,))


def irreducible_monics(K: FiniteRing, dmax: int, bounds: Bounds = DEFAULT_BOUNDS, exact: bool = False) -> list[FieldPoly]:
    """Monic irreducible polynomials over the field K of degree 1..dmax (only dmax when ``exact``).

    Trial division by the irreducibles of degree <= deg/2 found so far.
    """
    if not K.is_field():
        raise DiffPolyError(f"{K.describe()} is not a field")
    if dmax > bounds.poly_degree_cap:
        raise BoundExceeded("irreducible polynomial degree", dmax, bounds.poly_degree_cap, "--dmax")
    key = ("irreducibles", dmax)
    if key not in K._memo:
        found: list[FieldPoly] = []
        for d in range(1, dmax + 1):
            small = [g for g in found if g.degree <= d // 2]
            for f in _monics(K, d):
                if all(not monic_division(f, g)[1].is_zero() for g in small):
                    found.append(f)
        K._memo[key] = found
    out = K._memo[key]
    return [f for f in out if f.degree == dmax] if exact else list(out)


def quotient_field(K: FiniteRing, p: FieldPoly, bounds: Bounds = DEFAULT_BOUNDS) -> FiniteRing:
    """K[x]/(p) as a concrete finite ring; raises with a zero-divisor witness if p is reducible."""
    if p.field is not K or not p.is_monic():
        raise DiffPolyError("quotient_field needs a monic polynomial over K")
    F = polymod(K, list(p.coeffs), var="x", bounds=bounds)
    if not F.is_field():
        pair = F.zero_divisor_pair()
        raise DiffPolyError(
            f"{p} is reducible: {F.label(pair[0])} * {F.label(pair[1])} = 0 in K[x]/(p)"
            if pair else f"{p} does not give a field"
        )
    return F


# ---------------------------------------------------------------------------
# projections to (R/I)[x]


class PhiMap:
    """Coefficientwise projection R[x; d] -> (R/I)[x].

    With ``check`` the ideal must be two-sided with R/I a field and d(R) inside I,
    which is exactly when the projection is a ring morphism onto a commutative
    polynomial ring. ``check=False`` builds the same coefficient map for negative
    controls.
    """

    def __init__(self, ring: OreRing, ideal: Ideal, check: bool = True):
        if ideal.ring is not ring.base:
            raise IdealError("ideal lives on a different ring")
        self.ring = ring
        self.ideal = ideal
        self.quotient: Quotient = quotient_ring(ring.base, ideal)
        self.field = self.quotient.ring
        if check:
            if not self.field.is_field():
                raise IdealError(f"R/I is not a field for I = {ideal.label()}")
            image = set(ring.delta.image)
            if not image <= ideal.elements:
                bad = min(image - ideal.elements)
                raise IdealError(f"d(R) is not inside I = {ideal.label()}: {ring.base.label(bad)} escapes")

    def __call__(self, f: OrePoly) -> FieldPoly:
        proj = self.quotient.projection
        return FieldPoly(self.field, _normalize((proj[c] for c in f.coeffs), self.field.zero))

    def lift(self, p: FieldPoly) -> OrePoly:
        """A preimage of p; the leading coefficient of a monic p lifts to 1."""
        R = self.ring.base
        coeffs = [self.quotient.reps[c] for c in p.coeffs]
        if p.is_monic():
            coeffs[-1] = R.one
        return self.ring(coeffs)


@lru_cache(maxsize=256)
def _phi(ring: OreRing, ideal: Ideal) -> PhiMap:
    return PhiMap(ring, ideal)


def phi_map(I: Ideal, f: OrePoly) -> FieldPoly:
    return _phi(f.ring, I)(f)


# ---------------------------------------------------------------------------
# additive subgroups of truncated polynomial modules


class PolySpan:
    """An additive subgroup of {polynomials of degree <= degree} over ``base``.

    Stored in echelon form: for each degree k, the group of leading coefficients
    of members of exact degree k, each with one representative member. Membership,
    reduction and the group order follow from that table, and only additive
    structure of ``base`` is used.
    """

    def __init__(self, base: FiniteRing, degree: int):
        self.base = base
        self.degree = degree
        zero = (base.zero,) * (degree + 1)
        self.leads: list[dict[int, tuple[int, ...]]] = [{base.zero: zero} for _ in range(degree + 1)]
        self.zero = zero

    def vector(self, f) -> tuple[int, ...]:
        coeffs = tuple(f.coeffs) if hasattr(f, "coeffs") else tuple(f)
        if len(coeffs) > self.degree + 1:
            raise DiffPolyError(f"degree {len(coeffs) - 1} exceeds span degree {self.degree}")
        return coeffs + (self.base.zero,) * (self.degree + 1 - len(coeffs))

    def _sub(self, u, v):
        return tuple(self.base.sub(a, b) for a, b in zip(u, v))

    def _add(self, u, v):
        return tuple(self.base.add(a, b) for a, b in zip(u, v))

    def reduce(self, f) -> tuple[int, ...]:
        """Remainder after subtracting representatives from the top degree down."""
        v = self.vector(f)
        for k in range(self.degree, -1, -1):
            c = v[k]
            if c == self.base.zero:
                continue
            rep = self.leads[k].get(c)
            if rep is None:
                return v
            v = self._sub(v, rep)
        return v

    def __contains__(self, f) -> bool:
        return self.reduce(f) == self.zero

    def insert(self, f) -> list[tuple[int, ...]]:
        """Add f to the subgroup; returns the new echelon atoms (empty when f was already a member)."""
        v = self.reduce(f)
        if v == self.zero:
            return []
        k = max(i for i, c in enumerate(v) if c != self.base.zero)
        B = self.base
        L = self.leads[k]
        old = dict(L)
        c = v[k]
        mc, mv = c, v
        while mc not in old:
            for l, rep in old.items():
                L[B.add(l, mc)] = self._add(rep, mv)
            mc, mv = B.add(mc, c), self._add(mv, v)
        # now mv = o * v with o * c already a leading coefficient; the difference drops degree
        return [v] + self.insert(self._sub(mv, old[mc]))

    @property
    def size(self) -> int:
        out = 1
        for L in self.leads:
            out *= len(L)
        return out

    def lead_sets(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(L) for L in self.leads)

    def representatives(self) -> list[tuple[int, ...]]:
        """Nonzero representatives; together they generate the subgroup."""
        return [rep for L in self.leads for c, rep in L.items() if c != self.base.zero]
