"""Differential polynomials in several non-commuting indeterminates, R[x_1, ..., x_m; d_1, ..., d_m].

Monomials are words in the letters; coefficients sit on the left. Each letter
passes a coefficient with x_i a = a x_i + d_i(a). Letters are numbered from 0
internally and printed as x1, x2, ...
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .analyzer import SEVERAL_VARIABLES, Verdict, quasi_duo
from .checks import Check, PASS
from .config import DEFAULT_BOUNDS, Bounds
from .derivation import Derivation
from .errors import BoundExceeded, DiffPolyError
from .orepoly import OrePoly, OreRing
from .rings import FiniteRing

Word = tuple[int, ...]


def word_str(w: Word) -> str:
    return "".join(f"x{i + 1}" for i in w) if w else "1"


def word_key(w: Word):
    return (len(w), w)


class MContext:
    """The ring R[X; D]: a base ring and one derivation per indeterminate."""

    def __init__(self, ring: FiniteRing, derivations: Iterable[Derivation]):
        self.ring = ring
        self.derivations = tuple(derivations)
        if not self.derivations:
            raise DiffPolyError("need at least one indeterminate")
        for d in self.derivations:
            if d.ring is not ring:
                raise DiffPolyError("derivation lives on a different ring")
        self._push: dict[tuple[Word, int], dict[Word, int]] = {}

    @property
    def m(self) -> int:
        return len(self.derivations)

    def __call__(self, terms: Mapping[Word, int]) -> "MPoly":
        return MPoly(self, terms)

    def monomial(self, a: int, word: Iterable[int]) -> "MPoly":
        return MPoly(self, {tuple(word): a})

    def const(self, a: int) -> "MPoly":
        return self.monomial(a, ())

    def var(self, i: int) -> "MPoly":
        return self.monomial(self.ring.one, (i,))

    @property
    def zero(self) -> "MPoly":
        return MPoly(self, {})

    @property
    def one(self) -> "MPoly":
        return self.const(self.ring.one)

    def words(self, degree: int, letters: Iterable[int] | None = None) -> list[Word]:
        """Words of length <= degree over ``letters`` (all letters by default), shortest first."""
        alphabet = sorted(range(self.m) if letters is None else letters)
        out: list[Word] = []
        for k in range(degree + 1):
            out.extend(itertools.product(alphabet, repeat=k))
        return out

    def all_polys(self, degree: int) -> Iterator["MPoly"]:
        words = self.words(degree)
        for coeffs in itertools.product(range(self.ring.order), repeat=len(words)):
            yield MPoly(self, dict(zip(words, coeffs)))

    def random_poly(self, rng, degree: int, terms: int = 4) -> "MPoly":
        words = self.words(degree)
        picks = rng.integers(0, len(words), size=terms)
        coeffs = rng.integers(0, self.ring.order, size=terms)
        f = self.zero
        for w, a in zip(picks, coeffs):
            f = f + self.monomial(int(a), words[int(w)])
        return f

    def push(self, word: Word, b: int) -> dict[Word, int]:
        """word * b written as a sum of c * w with coefficients on the left."""
        key = (word, b)
        if key in self._push:
            return self._push[key]
        R = self.ring
        if b == R.zero:
            out: dict[Word, int] = {}
        elif not word:
            out = {(): b}
        else:
            # (u x_i) b = u (b x_i + d_i(b))
            *u, i = word
            u = tuple(u)
            out = {}
            for w, c in self.push(u, b).items():
                _accumulate(R, out, w + (i,), c)
            for w, c in self.push(u, self.derivations[i](b)).items():
                _accumulate(R, out, w, c)
        self._push[key] = out
        return out

    def __repr__(self) -> str:
        names = ", ".join(d.name for d in self.derivations)
        return f"MContext({self.ring.describe()}; {names})"


def _accumulate(R: FiniteRing, acc: dict[Word, int], w: Word, c: int) -> None:
    v = R.add(acc.get(w, R.zero), c)
    if v == R.zero:
        acc.pop(w, None)
    else:
        acc[w] = v


class MPoly:
    """A finite sum of a * w over words w, with no zero coefficients stored."""

    __slots__ = ("context", "terms")

    def __init__(self, context: MContext, terms: Mapping[Word, int]):
        zero = context.ring.zero
        self.context = context
        self.terms = {tuple(w): int(a) for w, a in terms.items() if a != zero}
        for w in self.terms:
            if any(not 0 <= i < context.m for i in w):
                raise DiffPolyError(f"word {w} uses a letter outside 0..{context.m - 1}")

    def _same(self, other: "MPoly") -> None:
        if self.context is not other.context:
            raise DiffPolyError("polynomials from different contexts")

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.context is other.context and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def __add__(self, other: "MPoly") -> "MPoly":
        self._same(other)
        R = self.context.ring
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(R, acc, w, c)
        return MPoly(self.context, acc)

    def __neg__(self) -> "MPoly":
        R = self.context.ring
        return MPoly(self.context, {w: R.negate(c) for w, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other: "MPoly") -> "MPoly":
        return m_mul(self, other)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        R = self.context.ring
        parts = []
        for w in sorted(self.terms, key=word_key, reverse=True):
            c = R.short_label(self.terms[w])
            if not w:
                parts.append(c)
            elif self.terms[w] == R.one:
                parts.append(word_str(w))
            else:
                parts.append(f"{c}*{word_str(w)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({self})"


def m_mul(f: MPoly, g: MPoly) -> MPoly:
    """Product in R[X; D]: (a u)(b v) = sum of (a c) (w v) over u b = sum c w."""
    f._same(g)
    ctx = f.context
    R = ctx.ring
    acc: dict[Word, int] = {}
    for u, a in f.terms.items():
        for v, b in g.terms.items():
            for w, c in ctx.push(u, b).items():
                _accumulate(R, acc, w + v, R.mul(a, c))
    return MPoly(ctx, acc)


def support(f: MPoly) -> set[Word]:
    return set(f.terms)


# ---------------------------------------------------------------------------
# one indeterminate


def to_orepoly(f: MPoly, S: OreRing) -> OrePoly:
    if f.context.m != 1:
        raise DiffPolyError("only one-indeterminate polynomials convert")
    coeffs = [S.base.zero] * (f.degree + 1)
    for w, c in f.terms.items():
        coeffs[len(w)] = c
    return S(coeffs)


def from_orepoly(p: OrePoly, ctx: MContext) -> MPoly:
    if ctx.m != 1:
        raise DiffPolyError("only one-indeterminate contexts accept univariate polynomials")
    return MPoly(ctx, {(0,) * k: c for k, c in enumerate(p.coeffs)})


# ---------------------------------------------------------------------------
# corners


def _inside(w: Word, J: frozenset[int]) -> bool:
    return all(i in J for i in w)


def in_corner_complement(w: Word, J: frozenset[int], literal: bool = False) -> bool:
    """Whether the word belongs to the complement C of the corner over J.

    By default C is spanned by words with at least one letter outside J. With
    ``literal`` C is spanned by every word that is not a nonempty word over J, so
    the empty word lies in both parts.
    """
    if literal:
        return not (w and _inside(w, J))
    return not _inside(w, J)


@dataclass(frozen=True)
class CornerSplit:
    f_J: MPoly
    f_C: MPoly


def corner_split(f: MPoly, J: Iterable[int]) -> CornerSplit:
    """Split f into its part over the letters in J (constants included) and the rest."""
    J = frozenset(J)
    if any(not 0 <= i < f.context.m for i in J):
        raise DiffPolyError(f"corner letters {sorted(J)} out of range")
    inner = {w: c for w, c in f.terms.items() if _inside(w, J)}
    outer = {w: c for w, c in f.terms.items() if not _inside(w, J)}
    return CornerSplit(MPoly(f.context, inner), MPoly(f.context, outer))


@dataclass(frozen=True)
class CornerReport:
    """Closure of the complement C under multiplication by the corner S_J on each side.

    Witnesses are (left factor, right factor, product, offending term).
    """

    corner: tuple[int, ...]
    degree: int
    literal: bool
    left: Check  # S_J * C inside C
    right: Check  # C * S_J inside C
    products: int


def _offending(p: MPoly, J: frozenset[int], literal: bool) -> Word | None:
    bad = [w for w in p.terms if not in_corner_complement(w, J, literal)]
    return min(bad, key=word_key) if bad else None


def corner_closure_report(ctx: MContext, J: Iterable[int], d: int, literal: bool = False,
                          bounds: Bounds = DEFAULT_BOUNDS) -> CornerReport:
    """Test S_J * C and C * S_J against C on monomials a w with |w| <= d.

    Coefficients range over ``one`` plus an additive generating set of R, which
    spans every monomial a w additively. Corner monomials with nonempty words are
    tried before constants.
    """
    if d > bounds.corner_degree_cap:
        raise BoundExceeded("corner degree", d, bounds.corner_degree_cap, "corner_degree_cap")
    J = frozenset(J)
    if any(not 0 <= i < ctx.m for i in J):
        raise DiffPolyError(f"corner letters {sorted(J)} out of range")
    coeffs = ctx.ring.spanning_coefficients
    words = ctx.words(d)
    corner_words = [w for w in words if _inside(w, J)]
    corner_words = [w for w in corner_words if w] + [w for w in corner_words if not w]
    outside_words = [w for w in words if in_corner_complement(w, J, literal)]
    corner = [ctx.monomial(a, w) for w in corner_words for a in coeffs]
    outside = [ctx.monomial(a, w) for w in outside_words for a in coeffs]

    count = 0

    def scan(pairs) -> Check:
        nonlocal count
        for left, right in pairs:
            count += 1
            p = m_mul(left, right)
            w = _offending(p, J, literal)
            if w is not None:
                term = ctx.monomial(p.terms[w], w)
                return Check(False, (str(left), str(right), str(p), str(term)), "product leaves C")
        return PASS

    left = scan((s, c) for s in corner for c in outside)
    right = scan((c, s) for s in corner for c in outside)
    return CornerReport(tuple(sorted(J)), d, literal, left, right, count)


def multivar_quasi_duo(ctx: MContext, bounds: Bounds = DEFAULT_BOUNDS) -> Verdict:
    """With two or more indeterminates the ring is never quasi-duo; one indeterminate defers to the analyzer."""
    if ctx.m >= 2:
        return Verdict(False, SEVERAL_VARIABLES, (), None, reason="several indeterminates")
    return quasi_duo(ctx.ring, ctx.derivations[0], bounds)
