"""Derivations (additive Leibniz maps) on finite rings."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .checks import Check, PASS
from .config import DEFAULT_BOUNDS, Bounds
from .errors import DerivationError, IdealError, InvariantError
from .ideals import Ideal, Quotient, check_ideal, ideal_closure, jacobson_radical, quotient_ring
from .rings import FiniteRing


@dataclass(frozen=True, eq=False)
class Derivation:
    """A validated derivation. Build through validate_derivation or the helpers below."""

    ring: FiniteRing
    image: tuple[int, ...]
    name: str = field(default="table", compare=False)

    def __call__(self, a: int) -> int:
        return self.image[a]

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.ring is other.ring and self.image == other.image

    def __hash__(self):
        return hash((id(self.ring), self.image))

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.image, dtype=np.int64)

    @property
    def is_zero(self) -> bool:
        return all(v == self.ring.zero for v in self.image)

    def iterate(self, k: int) -> tuple[int, ...]:
        """Image table of the k-fold composite."""
        cache = self.__dict__.setdefault("_iterates", {0: tuple(range(self.ring.order))})
        if k not in cache:
            prev = self.iterate(k - 1)
            cache[k] = tuple(self.image[v] for v in prev)
        return cache[k]

    def __repr__(self) -> str:
        return f"Derivation({self.name} on {self.ring.describe()})"


def validate_derivation(R: FiniteRing, image: Sequence[int], name: str = "table") -> Derivation:
    """Return the derivation if image is additive and Leibniz; raise DerivationError otherwise.

    The witness is the first failing pair (a, b) in index order.
    """
    img = np.asarray(image, dtype=np.int64)
    if img.shape != (R.order,) or img.min() < 0 or img.max() >= R.order:
        raise DerivationError("totality", (), f"image must list one element per ring element ({R.order})")
    A, M = R.add_table, R.mul_table
    bad = img[A] != A[img[:, None], img[None, :]]
    if bad.any():
        a, b = (int(v) for v in np.argwhere(bad)[0])
        raise DerivationError(
            "additivity", (a, b),
            f"d({R.label(a)}+{R.label(b)}) = {R.label(int(img[A[a, b]]))} "
            f"but d({R.label(a)})+d({R.label(b)}) = {R.label(int(A[img[a], img[b]]))}",
        )
    lhs = img[M]
    rhs = A[M[:, img], M[img, :]]
    bad = lhs != rhs
    if bad.any():
        a, b = (int(v) for v in np.argwhere(bad)[0])
        raise DerivationError(
            "Leibniz", (a, b),
            f"d({R.label(a)}*{R.label(b)}) = {R.label(int(lhs[a, b]))} "
            f"but {R.label(a)}*d({R.label(b)}) + d({R.label(a)})*{R.label(b)} = {R.label(int(rhs[a, b]))}",
        )
    if img[R.one] != R.zero:
        raise DerivationError("d(1) = 0", (R.one, R.one), f"d(1) = {R.label(int(img[R.one]))}")
    return Derivation(R, tuple(int(v) for v in img), name)


def zero_derivation(R: FiniteRing) -> Derivation:
    return Derivation(R, tuple([R.zero] * R.order), "zero")


def inner_derivation(R: FiniteRing, a: int) -> Derivation:
    """b -> ab - ba."""
    img = R.add_table[R.mul_table[a, :], R.neg[R.mul_table[:, a]]]
    return validate_derivation(R, img.tolist(), f"inner {R.short_label(a)}")


def derivation_from_pairs(R: FiniteRing, pairs: Iterable[tuple[int, int]], name: str = "table") -> Derivation:
    """Extend prescribed values a -> d(a) to all of R using additivity and the Leibniz rule.

    Unlisted 0 and 1 are sent to 0. A conflict between a forced value and a known one
    is reported as a DerivationError naming the law and pair that forced it. The
    result is validated exhaustively.
    """
    known: dict[int, int] = {}
    for a, b in pairs:
        if a in known and known[a] != b:
            raise DerivationError("consistency", (a, a), f"two values given for {R.label(a)}")
        known[a] = b
    known.setdefault(R.zero, R.zero)
    known.setdefault(R.one, R.zero)
    changed = True
    while changed:
        changed = False
        items = sorted(known.items())
        for a, da in items:
            for b, db in items:
                s, v = R.add(a, b), R.add(da, db)
                if s not in known:
                    known[s] = v
                    changed = True
                elif known[s] != v:
                    raise DerivationError(
                        "additivity", (a, b),
                        f"d({R.label(a)}+{R.label(b)}) = {R.label(known[s])} but d({R.label(a)})+d({R.label(b)}) = {R.label(v)}",
                    )
                p, v = R.mul(a, b), R.add(R.mul(a, db), R.mul(da, b))
                if p not in known:
                    known[p] = v
                    changed = True
                elif known[p] != v:
                    raise DerivationError(
                        "Leibniz", (a, b),
                        f"d({R.label(a)}*{R.label(b)}) = {R.label(known[p])} but "
                        f"{R.label(a)}*d({R.label(b)}) + d({R.label(a)})*{R.label(b)} = {R.label(v)}",
                    )
        if len(known) == R.order:
            break
    if len(known) < R.order:
        missing = min(set(range(R.order)) - set(known))
        raise DerivationError("coverage", (missing,), f"values do not determine d({R.label(missing)})")
    return validate_derivation(R, [known[a] for a in range(R.order)], name)


def delta_stable(I: Ideal, delta: Derivation) -> Check:
    """Whether delta maps I into itself; the witness is the first r in I with d(r) outside I."""
    if I.ring is not delta.ring:
        raise IdealError("ideal and derivation live on different rings")
    for r in I.sorted:
        if delta(r) not in I:
            return Check(False, r, "d(r) escapes")
    return PASS


def induced_derivation(I: Ideal, delta: Derivation, quotient: Quotient | None = None) -> Derivation:
    """The derivation a + I -> d(a) + I on R/I; I must be delta-stable."""
    stable = delta_stable(I, delta)
    if not stable:
        r = stable.witness
        raise DerivationError("stability", (r,), f"d({I.ring.label(r)}) is not in the ideal")
    Q = quotient or quotient_ring(I.ring, I)
    proj = Q.projection
    image = [proj[delta(rep)] for rep in Q.reps]
    for r in range(I.ring.order):
        if image[proj[r]] != proj[delta(r)]:
            raise InvariantError(f"induced derivation not well defined at {I.ring.label(r)}")
    return validate_derivation(Q.ring, image, f"induced {delta.name}")


def delta_stable_closure(R: FiniteRing, gens: Iterable[int], delta: Derivation) -> Ideal:
    """Smallest delta-stable two-sided ideal containing gens."""
    I = ideal_closure(R, gens, "two-sided")
    while True:
        escaped = [delta(r) for r in I.sorted if delta(r) not in I]
        if not escaped:
            return I
        I = ideal_closure(R, list(I.generators) + escaped, "two-sided")


def delta_core(R: FiniteRing, delta: Derivation, bounds: Bounds = DEFAULT_BOUNDS) -> Ideal:
    """Largest delta-stable two-sided ideal inside J(R).

    Iterates T_0 = J(R), T_{k+1} = {r in T_k : d(r) in T_k} to a fixpoint. Every
    step is checked to be a two-sided ideal, and the fixpoint is checked maximal:
    the delta-stable closure of T plus any element of J(R) outside T must leave J(R).
    For finite R this ideal equals J(R[x; d]) intersected with R.
    """
    memo_key = ("delta_core", delta.image)
    if memo_key in R._memo:
        return R._memo[memo_key]
    J = jacobson_radical(R, bounds)
    T = J
    while True:
        nxt = Ideal(R, frozenset(r for r in T.elements if delta(r) in T), "two-sided")
        check = check_ideal(nxt)
        if not check:
            raise InvariantError(f"delta-core step is not an ideal: {check.detail} at {check.witness}")
        if nxt == T:
            break
        T = nxt
    if not delta_stable(T, delta):
        raise InvariantError("delta-core fixpoint is not delta-stable")
    # one representative per coset of T in J is enough
    seen = T.mask.copy()
    members = np.array(T.sorted)
    for r in J.sorted:
        if seen[r]:
            continue
        ext = delta_stable_closure(R, list(T.generators) + [r], delta)
        if ext.elements <= J.elements:
            raise InvariantError(f"delta-core is not maximal: {R.label(r)} extends it inside J(R)")
        seen[R.add_table[members, r]] = True
    R._memo[memo_key] = T
    return T
