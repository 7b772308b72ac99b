"""Ideals of finite rings: closure, enumeration, radicals and factor rings."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable

import numpy as np

from .checks import Check, PASS
from .config import DEFAULT_BOUNDS, Bounds
from .errors import BoundExceeded, IdealError, InvariantError
from .rings import FiniteRing, _greedy_generators

SIDES = ("left", "right", "two-sided")


@dataclass(frozen=True, eq=False)
class Ideal:
    """A set of elements of ``ring`` closed under addition and the multiplications allowed by ``side``.

    Equality and hashing use the ring and the element set only.
    """

    ring: FiniteRing
    elements: frozenset
    side: str = "two-sided"

    def __eq__(self, other):
        return isinstance(other, Ideal) and self.ring is other.ring and self.elements == other.elements

    def __hash__(self):
        return hash((id(self.ring), self.elements))

    def __contains__(self, a) -> bool:
        return a in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __le__(self, other: "Ideal") -> bool:
        return self.elements <= other.elements

    def __lt__(self, other: "Ideal") -> bool:
        return self.elements < other.elements

    @property
    def is_unit(self) -> bool:
        return self.ring.one in self.elements

    @property
    def is_zero(self) -> bool:
        return len(self.elements) == 1

    @cached_property
    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.elements))

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.ring.order, dtype=bool)
        m[list(self.elements)] = True
        return m

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set (greedy, in index order) for this ideal with its sidedness."""
        gens: list[int] = []
        current = ideal_closure(self.ring, [], self.side)
        for a in self.sorted:
            if a not in current:
                gens.append(a)
                current = ideal_closure(self.ring, gens, self.side)
            if len(current) == len(self):
                break
        return tuple(gens)

    def label(self) -> str:
        if self.is_zero:
            return "0"
        if self.is_unit:
            return "R"
        return "<" + ",".join(self.ring.short_label(g) for g in self.generators) + ">"

    def __repr__(self) -> str:
        return f"Ideal({self.label()}, size={len(self)}, {self.side})"


def _make(R: FiniteRing, mask: np.ndarray, side: str) -> Ideal:
    return Ideal(R, frozenset(int(i) for i in np.flatnonzero(mask)), side)


def unit_ideal(R: FiniteRing) -> Ideal:
    return Ideal(R, frozenset(range(R.order)), "two-sided")


def zero_ideal(R: FiniteRing) -> Ideal:
    return Ideal(R, frozenset([R.zero]), "two-sided")


def ideal_closure(R: FiniteRing, gens: Iterable[int], side: str = "two-sided") -> Ideal:
    """Smallest ideal of the given sidedness containing gens.

    Each new additive generator g extends the subgroup by its cyclic group; the
    products r*g and/or g*r for every r are queued. Products of additive generators
    suffice for absorption because multiplication is biadditive.
    """
    if side not in SIDES:
        raise IdealError(f"unknown sidedness '{side}'")
    mask = np.zeros(R.order, dtype=bool)
    mask[R.zero] = True
    members = np.array([R.zero], dtype=np.int64)
    queue = deque(int(g) for g in gens)
    while queue:
        g = queue.popleft()
        if mask[g]:
            continue
        members = R.extend_subgroup(mask, members, g)
        if side in ("left", "two-sided"):
            cand = R.mul_table[:, g]
            queue.extend(np.unique(cand[~mask[cand]]).tolist())
        if side in ("right", "two-sided"):
            cand = R.mul_table[g, :]
            queue.extend(np.unique(cand[~mask[cand]]).tolist())
    return _make(R, mask, side)


def additive_join(R: FiniteRing, a: Ideal, b: Ideal) -> Ideal:
    """a + b. Sums of ideals of one sidedness need no further absorption."""
    mask = a.mask.copy()
    members = np.array(a.sorted, dtype=np.int64)
    for g in b.sorted:
        if not mask[g]:
            members = R.extend_subgroup(mask, members, g)
    return _make(R, mask, a.side)


def intersection(R: FiniteRing, ideals: list[Ideal]) -> Ideal:
    """Intersection; the empty intersection is the whole ring."""
    if not ideals:
        return unit_ideal(R)
    elems = frozenset.intersection(*(I.elements for I in ideals))
    return Ideal(R, elems, ideals[0].side)


def check_ideal(I: Ideal, side: str | None = None) -> Check:
    """Verify additive closure and absorption exhaustively."""
    R, side = I.ring, side or I.side
    el = np.array(I.sorted)
    mask = I.mask
    if not mask[R.zero]:
        return Check(False, None, "missing zero")
    sums = R.add_table[np.ix_(el, el)]
    if not mask[sums].all():
        i, j = np.argwhere(~mask[sums])[0]
        return Check(False, (int(el[i]), int(el[j])), "not closed under addition")
    if not mask[R.neg[el]].all():
        return Check(False, (int(el[np.flatnonzero(~mask[R.neg[el]])[0]]),), "not closed under negation")
    if side in ("left", "two-sided"):
        prods = R.mul_table[:, el]
        if not mask[prods].all():
            r, j = np.argwhere(~mask[prods])[0]
            return Check(False, (int(r), int(el[j])), "r*a escapes")
    if side in ("right", "two-sided"):
        prods = R.mul_table[el, :]
        if not mask[prods].all():
            j, r = np.argwhere(~mask[prods])[0]
            return Check(False, (int(el[j]), int(r)), "a*r escapes")
    return PASS


def _cap(R: FiniteRing, side: str, bounds: Bounds) -> None:
    cap = bounds.two_sided_cap if side == "two-sided" else bounds.one_sided_cap
    if R.order > cap:
        raise BoundExceeded(f"{side} ideal enumeration", R.order, cap)


def enumerate_ideals(R: FiniteRing, side: str = "two-sided", bounds: Bounds = DEFAULT_BOUNDS) -> list[Ideal]:
    """All ideals of the given sidedness, including {0} and R, sorted by (size, elements).

    Principal ideals first, then joins with principal ideals until nothing new
    appears; every finitely generated ideal is a finite sum of principal ones.
    """
    _cap(R, side, bounds)
    key = ("ideals", side)
    if key in R._memo:
        return R._memo[key]
    principal: dict[frozenset, Ideal] = {}
    for r in range(R.order):
        I = ideal_closure(R, [r], side)
        principal.setdefault(I.elements, I)
    found = dict(principal)
    work = deque(found.values())
    prin = list(principal.values())
    while work:
        I = work.popleft()
        for P in prin:
            if P.elements <= I.elements:
                continue
            J = additive_join(R, I, P)
            if J.elements not in found:
                found[J.elements] = J
                work.append(J)
    out = sorted(found.values(), key=lambda I: (len(I), I.sorted))
    R._memo[key] = out
    return out


def enumerate_maximal_ideals(R: FiniteRing, side: str = "two-sided", bounds: Bounds = DEFAULT_BOUNDS) -> list[Ideal]:
    """Maximal proper ideals of the given sidedness, each verified maximal, list verified complete."""
    key = ("maximal", side)
    if key in R._memo:
        return R._memo[key]
    ideals = enumerate_ideals(R, side, bounds)
    proper = [I for I in ideals if not I.is_unit]
    maximal = [I for I in proper if not any(I < J for J in proper)]
    for M in maximal:
        # adding any element outside M must give the unit ideal; one representative per coset suffices
        seen = M.mask.copy()
        for r in range(R.order):
            if seen[r]:
                continue
            if not ideal_closure(R, list(M.generators) + [r], side).is_unit:
                raise InvariantError(f"{M} is not maximal: adding {R.label(r)} stays proper")
            seen[R.add_table[np.array(M.sorted), r]] = True
    for I in proper:
        if not any(I <= M for M in maximal):
            raise InvariantError(f"{I} lies in no listed maximal ideal")
    R._memo[key] = maximal
    return maximal


def jacobson_radical(R: FiniteRing, bounds: Bounds = DEFAULT_BOUNDS) -> Ideal:
    """J(R), computed two ways that must agree.

    (a) quasi-regularity: r such that 1 - s*r is a unit for every s;
    (b) the intersection of all maximal left ideals (of all maximal two-sided ideals
        when the ring is above the one-sided enumeration cap; the two agree for
        finite, hence Artinian, rings).
    """
    if "jacobson" in R._memo:
        return R._memo["jacobson"]
    units = R.units
    one_minus = R.add_table[R.one][R.neg[R.mul_table]]  # [s, r] -> 1 - s r
    qr = units[one_minus].all(axis=0)
    route_a = _make(R, qr, "two-sided")

    side = "left" if R.order <= bounds.one_sided_cap else "two-sided"
    route_b = intersection(R, enumerate_maximal_ideals(R, side, bounds))
    if route_a.elements != route_b.elements:
        raise InvariantError(
            f"Jacobson radical routes disagree on {R.describe()}: {len(route_a)} vs {len(route_b)} elements"
        )
    check = check_ideal(route_a, "two-sided")
    if not check:
        raise InvariantError(f"J(R) is not a two-sided ideal: {check.detail} at {check.witness}")
    R._memo["jacobson"] = route_a
    return route_a


def nilpotency_index(R: FiniteRing, a: int) -> int | None:
    """Least k >= 1 with a^k = 0, or None if a is not nilpotent."""
    x = a
    for k in range(1, R.order + 1):
        if x == R.zero:
            return k
        x = R.mul(x, a)
    return None


def nilradical(R: FiniteRing, bounds: Bounds = DEFAULT_BOUNDS) -> Ideal:
    """Nil(R). For a finite ring this is J(R); every element is checked nilpotent."""
    J = jacobson_radical(R, bounds)
    for a in J.sorted:
        if nilpotency_index(R, a) is None:
            raise InvariantError(f"radical element {R.label(a)} is not nilpotent")
    return J


def ideal_power_chain(I: Ideal) -> list[Ideal]:
    """I, I^2, I^3, ... up to the first repeat (two-sided products)."""
    R = I.ring
    chain = [I]
    while True:
        prev = chain[-1]
        prods = {R.mul(a, b) for a in prev.sorted for b in I.sorted}
        nxt = ideal_closure(R, prods, "two-sided")
        if nxt == prev:
            return chain
        chain.append(nxt)


@dataclass(frozen=True, eq=False)
class Quotient:
    """R/I together with the projection and a representative for every class."""

    ring: FiniteRing
    ideal: Ideal
    projection: tuple[int, ...]
    reps: tuple[int, ...] = field(repr=False)

    def __call__(self, a: int) -> int:
        return self.projection[a]


@lru_cache(maxsize=512)
def _quotient_cached(I: Ideal, recipe) -> Quotient:
    R = I.ring
    if I.is_unit:
        raise IdealError("cannot form the quotient by the unit ideal")
    check = check_ideal(I, "two-sided")
    if not check:
        raise IdealError(f"quotient needs a two-sided ideal: {check.detail} at {check.witness}")
    members = np.array(I.sorted)
    proj = np.full(R.order, -1, dtype=np.int64)
    reps = []
    for r in range(R.order):
        if proj[r] < 0:
            proj[R.add_table[members, r]] = len(reps)
            reps.append(r)
    rep_arr = np.array(reps)
    add = proj[R.add_table[np.ix_(rep_arr, rep_arr)]]
    mul = proj[R.mul_table[np.ix_(rep_arr, rep_arr)]]
    labels = [f"[{R.short_label(r)}]" for r in reps] if not I.is_zero else [R.label(r) for r in reps]

    def aliases(Q: FiniteRing) -> dict:
        out = {"0": Q.zero, "1": Q.one}
        for r in range(R.order):
            out.setdefault(f"[{R.short_label(r)}]", int(proj[r]))
            out.setdefault(f"[{R.label(r)}]", int(proj[r]))
        return out

    if recipe is None:
        recipe = ("quotient", R.recipe, tuple(R.label(g) for g in I.generators))
    Q = FiniteRing(add, mul, recipe, labeler=labels.__getitem__, aliases=aliases, check=False)
    # the projection must be a unital ring morphism; this also certifies the factor tables
    a = np.arange(R.order)
    if not (proj[R.add_table] == Q.add_table[proj[a][:, None], proj[a][None, :]]).all():
        raise InvariantError("projection does not preserve addition")
    if not (proj[R.mul_table] == Q.mul_table[proj[a][:, None], proj[a][None, :]]).all():
        raise InvariantError("projection does not preserve multiplication")
    if proj[R.one] != Q.one:
        raise InvariantError("projection does not preserve the identity")
    return Quotient(Q, I, tuple(int(v) for v in proj), tuple(reps))


def quotient_ring(R: FiniteRing, I: Ideal, recipe=None) -> Quotient:
    """R/I for a proper two-sided ideal I, with a verified projection."""
    if I.ring is not R:
        raise IdealError("ideal belongs to a different ring")
    return _quotient_cached(I, recipe)


def maximal_field_ideals(R: FiniteRing, delta, bounds: Bounds = DEFAULT_BOUNDS) -> list[Ideal]:
    """Maximal two-sided ideals I with R/I a field and delta(R) contained in I."""
    image = set(delta.image)
    out = []
    for M in enumerate_maximal_ideals(R, "two-sided", bounds):
        if not image <= M.elements:
            continue
        if quotient_ring(R, M).ring.is_field():
            out.append(M)
    return out


def spanning_generators(I: Ideal) -> list[int]:
    """Additive generators of I as a group."""
    return _greedy_generators(I.ring, I.sorted, start=[])
