"""Finite unital rings as dense index tables.

Every constructor compiles its recipe down to an ``order x order`` addition table
and multiplication table over element indices ``0..order-1``. The recipe and a
labelling scheme are kept for reports and for resolving element names typed by
a user (``e12``, ``t``, ``g+1``, ``[1,0;0,1]``, ``@5`` for a raw index).
"""

from __future__ import annotations

from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .checks import Check, PASS
from .config import DEFAULT_BOUNDS, Bounds
from .errors import BoundExceeded, DiffPolyError, InvariantError, RingAxiomError

DTYPE = np.int32
# Rings up to this order also keep Python-list copies of the tables for fast scalar access.
_LIST_CAP = 1024
_SAMPLE_TRIPLES = 20000


class LabelError(DiffPolyError, KeyError):
    def __str__(self) -> str:
        return self.args[0] if self.args else "unknown label"


class FiniteRing:
    """A finite unital ring given by its addition and multiplication tables.

    Identity elements and additive inverses are located from the tables; the ring
    axioms are verified on construction (exhaustively up to
    ``bounds.exhaustive_axiom_cap`` elements, on a fixed random sample above).
    Instances are immutable and compare by identity.
    """

    def __init__(
        self,
        add_table,
        mul_table,
        recipe: tuple,
        *,
        labeler: Callable[[int], str] | None = None,
        aliases: Callable[["FiniteRing"], dict] | None = None,
        bounds: Bounds = DEFAULT_BOUNDS,
        check: bool = True,
    ):
        add = np.array(add_table, dtype=DTYPE)
        mul = np.array(mul_table, dtype=DTYPE)
        if add.ndim != 2 or add.shape[0] != add.shape[1] or add.shape != mul.shape:
            raise RingAxiomError("table shape", (add.shape, mul.shape))
        n = add.shape[0]
        if n < 1:
            raise RingAxiomError("non-empty carrier", ())
        if n > bounds.order_cap:
            raise BoundExceeded("ring order", n, bounds.order_cap)
        for name, t in (("addition table range", add), ("multiplication table range", mul)):
            if t.min() < 0 or t.max() >= n:
                bad = tuple(int(v) for v in np.argwhere((t < 0) | (t >= n))[0])
                raise RingAxiomError(name, bad)
        add.flags.writeable = False
        mul.flags.writeable = False
        self.order = n
        self.add_table = add
        self.mul_table = mul
        self.recipe = recipe
        self._labeler = labeler
        self._aliases = aliases
        self._memo: dict = {}

        self.zero = _identity(add, "additive identity")
        self.one = _identity(mul, "multiplicative identity")
        self.neg = _additive_inverses(add, self.zero)

        if n <= _LIST_CAP:
            self._A = add.tolist()
            self._M = mul.tolist()
            self._N = self.neg.tolist()
        else:
            self._A, self._M, self._N = add, mul, self.neg
        if check:
            check_axioms(self, bounds.exhaustive_axiom_cap)

    # scalar arithmetic on indices

    def add(self, a: int, b: int) -> int:
        return int(self._A[a][b])

    def mul(self, a: int, b: int) -> int:
        return int(self._M[a][b])

    def negate(self, a: int) -> int:
        return int(self._N[a])

    def sub(self, a: int, b: int) -> int:
        return int(self._A[a][self._N[b]])

    def commutator(self, a: int, b: int) -> int:
        return self.sub(self.mul(a, b), self.mul(b, a))

    def power(self, a: int, k: int) -> int:
        r = self.one
        for _ in range(k):
            r = self.mul(r, a)
        return r

    @cached_property
    def characteristic(self) -> int:
        k, x = 1, self.one
        while x != self.zero:
            x = self.add(x, self.one)
            k += 1
        return k

    @cached_property
    def _integers(self) -> list[int]:
        out, x = [], self.zero
        for _ in range(self.characteristic):
            out.append(x)
            x = self.add(x, self.one)
        return out

    def integer(self, k: int) -> int:
        """The element k * 1."""
        return self._integers[k % self.characteristic]

    def times(self, k: int, a: int) -> int:
        """The integer multiple k * a (k may be negative)."""
        return self.mul(self.integer(k), a)

    # structure

    def is_commutative(self) -> Check:
        diff = self.mul_table != self.mul_table.T
        if not diff.any():
            return PASS
        a, b = (int(v) for v in np.argwhere(diff)[0])
        return Check(False, (a, b), "ab != ba")

    @cached_property
    def _inverse_table(self) -> np.ndarray:
        hit = self.mul_table == self.one
        has_right = hit.any(axis=1)
        right = np.where(has_right, hit.argmax(axis=1), -1)
        inv = np.full(self.order, -1, dtype=np.int64)
        for u in np.flatnonzero(has_right):
            v = int(right[u])
            # one-sided inverses are two-sided in a finite ring; a mismatch means broken tables
            if self.mul(v, int(u)) != self.one:
                raise InvariantError(f"element {self.label(int(u))} has a right inverse but no left inverse")
            inv[u] = v
        has_left = hit.any(axis=0)
        if (has_left != has_right).any():
            u = int(np.flatnonzero(has_left != has_right)[0])
            raise InvariantError(f"one-sided inverse asymmetry at {self.label(u)}")
        return inv

    @property
    def units(self) -> np.ndarray:
        """Boolean mask of invertible elements."""
        return self._inverse_table >= 0

    def inverse(self, a: int) -> int | None:
        v = int(self._inverse_table[a])
        return None if v < 0 else v

    def is_field(self) -> bool:
        if self.order < 2 or not self.is_commutative():
            return False
        return bool(self.units.sum() == self.order - 1)

    def zero_divisor_pair(self) -> tuple[int, int] | None:
        prods = self.mul_table == self.zero
        prods[self.zero, :] = False
        prods[:, self.zero] = False
        if not prods.any():
            return None
        a, b = (int(v) for v in np.argwhere(prods)[0])
        return a, b

    def extend_subgroup(self, mask: np.ndarray, members: np.ndarray, g: int) -> np.ndarray:
        """Join the additive subgroup ``members`` (with boolean ``mask``) and the cyclic group of ``g``.

        Updates ``mask`` in place and returns the new member array.
        """
        parts = [members]
        step = g
        while not mask[step]:
            coset = self.add_table[members, step]
            mask[coset] = True
            parts.append(coset)
            step = int(self.add_table[step, g])
        return np.concatenate(parts) if len(parts) > 1 else members

    @cached_property
    def additive_generators(self) -> tuple[int, ...]:
        """Greedy additive generating set, scanning indices in order."""
        return tuple(_greedy_generators(self, range(self.order), start=[]))

    @cached_property
    def spanning_coefficients(self) -> tuple[int, ...]:
        """``one`` followed by enough elements to generate R additively."""
        return tuple(_greedy_generators(self, range(self.order), start=[self.one]))

    # labels

    def label(self, i: int) -> str:
        if self._labeler is None:
            return str(i)
        return self._labeler(int(i))

    @cached_property
    def labels(self) -> list[str]:
        return [self.label(i) for i in range(self.order)]

    @cached_property
    def _lookup(self) -> dict[str, int]:
        table = {lbl: i for i, lbl in enumerate(self.labels)}
        if self._aliases is not None:
            for name, i in self._aliases(self).items():
                table.setdefault(name, i)
        return table

    @cached_property
    def _short(self) -> dict[int, str]:
        out = {}
        if self._aliases is not None:
            for name, i in self._aliases(self).items():
                if self._lookup.get(name) == i and len(name) < len(out.get(i, self.label(i))):
                    out[i] = name
        return out

    def short_label(self, i: int) -> str:
        """The shortest name for element i (an alias such as ``e12`` when one exists)."""
        return self._short.get(int(i)) or self.label(i)

    def element(self, ref) -> int:
        """Resolve a label (or a raw index written ``@k``, or an int) to an element index."""
        if isinstance(ref, (int, np.integer)):
            if 0 <= ref < self.order:
                return int(ref)
            raise LabelError(f"element index {ref} out of range for ring of order {self.order}")
        ref = str(ref).strip()
        if ref in self._lookup:
            return self._lookup[ref]
        if ref.startswith("@") and ref[1:].isdigit():
            return self.element(int(ref[1:]))
        raise LabelError(f"no element labelled '{ref}' in {recipe_text(self.recipe)}")

    def describe(self) -> str:
        return recipe_text(self.recipe)

    def __repr__(self) -> str:
        return f"FiniteRing({self.describe()}, order={self.order})"


def _identity(table: np.ndarray, what: str) -> int:
    n = table.shape[0]
    idx = np.arange(n)
    ok = (table == idx[None, :]).all(axis=1) & (table == idx[:, None]).all(axis=0)
    if not ok.any():
        raise RingAxiomError(what, ())
    return int(np.flatnonzero(ok)[0])


def _additive_inverses(add: np.ndarray, zero: int) -> np.ndarray:
    hit = add == zero
    has = hit.any(axis=1)
    if not has.all():
        raise RingAxiomError("additive inverse", (int(np.flatnonzero(~has)[0]),))
    neg = hit.argmax(axis=1).astype(DTYPE)
    neg.flags.writeable = False
    return neg


def _greedy_generators(R: FiniteRing, candidates, start: Sequence[int]) -> list[int]:
    mask = np.zeros(R.order, dtype=bool)
    mask[R.zero] = True
    members = np.array([R.zero], dtype=np.int64)
    gens = []
    for g in list(start) + list(candidates):
        if not mask[g]:
            members = R.extend_subgroup(mask, members, g)
            gens.append(g)
        if len(members) == R.order:
            break
    return gens


def check_axioms(R: FiniteRing, exhaustive_cap: int = DEFAULT_BOUNDS.exhaustive_axiom_cap) -> None:
    """Raise RingAxiomError with a witness if any ring axiom fails."""
    A, M, n = R.add_table, R.mul_table, R.order
    diff = A != A.T
    if diff.any():
        a, b = np.argwhere(diff)[0]
        raise RingAxiomError("additive commutativity", (int(a), int(b)))
    if n <= exhaustive_cap:
        for c in range(n):
            _assoc_slice(A, c, "additive associativity")
            _assoc_slice(M, c, "multiplicative associativity")
            # left distributivity: c(a+b) = ca + cb ; right: (a+b)c = ac + bc
            lhs = M[c][A]
            rhs = A[M[c][:, None], M[c][None, :]]
            _first_mismatch(lhs, rhs, "left distributivity", lambda a, b: (c, a, b))
            lhs = M[:, c][A]
            rhs = A[M[:, c][:, None], M[:, c][None, :]]
            _first_mismatch(lhs, rhs, "right distributivity", lambda a, b: (a, b, c))
    else:
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, _SAMPLE_TRIPLES))
        checks = [
            ("additive associativity", A[A[a, b], c], A[a, A[b, c]]),
            ("multiplicative associativity", M[M[a, b], c], M[a, M[b, c]]),
            ("left distributivity", M[a, A[b, c]], A[M[a, b], M[a, c]]),
            ("right distributivity", M[A[a, b], c], A[M[a, c], M[b, c]]),
        ]
        for name, lhs, rhs in checks:
            bad = np.flatnonzero(lhs != rhs)
            if len(bad):
                k = bad[0]
                raise RingAxiomError(name, (int(a[k]), int(b[k]), int(c[k])))


def _assoc_slice(T: np.ndarray, c: int, name: str) -> None:
    # (a*b)*c versus a*(b*c) for every a, b
    lhs = T[:, c][T]
    rhs = T[:, T[:, c]]
    _first_mismatch(lhs, rhs, name, lambda a, b: (a, b, c))


def _first_mismatch(lhs, rhs, name, witness) -> None:
    bad = lhs != rhs
    if bad.any():
        a, b = np.argwhere(bad)[0]
        raise RingAxiomError(name, witness(int(a), int(b)))


# ---------------------------------------------------------------------------
# constructors


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """(p, k) with q = p**k, or None."""
    if q < 2:
        return None
    p = next(f for f in range(2, q + 1) if q % f == 0)
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


def _check_order(order: int, bounds: Bounds) -> None:
    if order > bounds.order_cap:
        raise BoundExceeded("ring order", order, bounds.order_cap)


def zmod(n: int, bounds: Bounds = DEFAULT_BOUNDS) -> FiniteRing:
    """The integers modulo n."""
    if n < 2:
        raise DiffPolyError(f"zmod needs n >= 2, got {n}")
    _check_order(n, bounds)
    i = np.arange(n)
    return FiniteRing(
        (i[:, None] + i[None, :]) % n,
        (i[:, None] * i[None, :]) % n,
        ("zmod", n),
        bounds=bounds,
    )


def _tuple_ring(base: FiniteRing, dim: int, terms, recipe, labeler_for, aliases, bounds) -> FiniteRing:
    """Free module base^dim with a bilinear product given by structure terms.

    Each term ``(i, j, m, c)`` adds ``a_i * b_j * c`` to coordinate m of the product
    (``c`` is None for the identity). Coordinates are stored lowest-first in the
    mixed-radix element index.
    """
    q = base.order
    order = q**dim
    _check_order(order, bounds)
    idx = np.arange(order)
    coords = np.stack([(idx // q**k) % q for k in range(dim)], axis=1).astype(DTYPE)
    weights = [q**k for k in range(dim)]
    A, M = base.add_table, base.mul_table

    add = np.zeros((order, order), dtype=DTYPE)
    for k in range(dim):
        col = coords[:, k]
        add += A[col[:, None], col[None, :]] * weights[k]

    by_target: dict[int, list] = {}
    for i, j, m, c in terms:
        by_target.setdefault(m, []).append((i, j, c))
    mul = np.zeros((order, order), dtype=DTYPE)
    for m in range(dim):
        acc = np.full((order, order), base.zero, dtype=DTYPE)
        for i, j, c in by_target.get(m, []):
            t = M[coords[:, i][:, None], coords[:, j][None, :]]
            if c is not None:
                t = M[t, c]
            acc = A[acc, t]
        mul += acc * weights[m]
        del acc

    coord_list = coords.tolist()
    labeler = labeler_for(coord_list)
    return FiniteRing(add, mul, recipe, labeler=labeler, aliases=aliases, bounds=bounds)


def _poly_label(base: FiniteRing, coeffs: Sequence[int], var: str) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == base.zero:
            continue
        lbl = base.label(c)
        if k == 0:
            terms.append(lbl)
            continue
        mono = var if k == 1 else f"{var}^{k}"
        if c == base.one:
            terms.append(mono)
        elif lbl.isdigit():
            terms.append(f"{lbl}{mono}")
        else:
            terms.append(f"({lbl}){mono}")
    return "+".join(terms) if terms else base.label(base.zero)


def _unit_aliases(R: FiniteRing) -> dict:
    return {"0": R.zero, "1": R.one}


def polymod(base: FiniteRing, coeffs: Sequence, var: str = "t", bounds: Bounds = DEFAULT_BOUNDS) -> FiniteRing:
    """base[t]/(f) for a monic f with central coefficients, given lowest degree first."""
    f = [base.element(c) for c in coeffs]
    k = len(f) - 1
    if k < 1:
        raise DiffPolyError("polymod needs a modulus of degree >= 1")
    if f[-1] != base.one:
        raise DiffPolyError("polymod modulus must be monic")
    M = base.mul_table
    for c in f:
        if not (M[c, :] == M[:, c]).all():
            raise DiffPolyError(f"polymod modulus coefficient {base.label(c)} is not central")
    _check_order(base.order**k, bounds)

    # coefficient vectors of t^e reduced mod f, for e < 2k - 1
    powers = [[base.one if m == e else base.zero for m in range(k)] for e in range(k)]
    top = [base.negate(c) for c in f[:k]]
    for e in range(k, 2 * k - 1):
        prev = powers[-1]
        shifted = [base.zero] + prev[:-1]
        lead = prev[-1]
        powers.append([base.add(shifted[m], base.mul(lead, top[m])) for m in range(k)])
    terms = []
    for i in range(k):
        for j in range(k):
            for m, c in enumerate(powers[i + j]):
                if c != base.zero:
                    terms.append((i, j, m, None if c == base.one else c))

    def labeler_for(coords):
        return lambda i: _poly_label(base, coords[i], var)

    recipe = ("polymod", base.recipe, tuple(base.label(c) for c in f))
    return _tuple_ring(base, k, terms, recipe, labeler_for, _unit_aliases, bounds)


def _int_poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by monic b over Z/p, lowest degree first."""
    a = a[:]
    db = len(b) - 1
    for top in range(len(a) - 1, db - 1, -1):
        c = a[top] % p
        if c:
            for m in range(db + 1):
                a[top - db + m] = (a[top - db + m] - c * b[m]) % p
    return a[:db]


def _first_irreducible(p: int, k: int) -> list[int]:
    def monics(d):
        for v in range(p**d):
            yield [(v // p**m) % p for m in range(d)] + [1]

    for f in monics(k):
        if all(any(_int_poly_mod(f, g, p)) for d in range(1, k // 2 + 1) for g in monics(d)):
            return f
    raise InvariantError(f"no irreducible polynomial of degree {k} over Z/{p}")


def gf(q: int, k: int | None = None, modulus: Sequence[int] | None = None, bounds: Bounds = DEFAULT_BOUNDS) -> FiniteRing:
    """The finite field of order q, or of order p**k when k is given.

    For k > 1 the field is Z/p[g]/(modulus); the default modulus is the first monic
    irreducible polynomial of degree k in counting order.
    """
    if k is None:
        pk = prime_power(q)
        if pk is None:
            raise DiffPolyError(f"gf parameter {q} is not a prime power")
        p, k = pk
    else:
        p = q
        if not _is_prime(p) or k < 1:
            raise DiffPolyError(f"gf parameters ({q}, {k}) do not describe a prime power")
    _check_order(p**k, bounds)
    if modulus is None and k == 1:
        R = zmod(p, bounds)
        R.recipe = ("gf", p, 1)
        return R
    if modulus is None:
        modulus = _first_irreducible(p, k)
    modulus = [int(c) % p for c in modulus]
    if len(modulus) - 1 != k or modulus[-1] != 1:
        raise DiffPolyError(f"gf modulus must be monic of degree {k}")
    R = polymod(zmod(p, bounds), modulus, var="g", bounds=bounds)
    R.recipe = ("gf", p, k, tuple(modulus))
    if not R.is_field():
        a, b = R.zero_divisor_pair()
        raise DiffPolyError(
            f"gf modulus {modulus} is reducible over Z/{p}: {R.label(a)} * {R.label(b)} = 0"
        )
    return R


def _matrix_labeler(base: FiniteRing, n: int, positions):
    pos = {rc: k for k, rc in enumerate(positions)}
    zero = base.label(base.zero)

    def labeler_for(coords):
        def label(i):
            rows = []
            for r in range(n):
                rows.append(",".join(base.label(coords[i][pos[(r, c)]]) if (r, c) in pos else zero for c in range(n)))
            return "[" + ";".join(rows) + "]"

        return label

    return labeler_for


def _matrix_aliases(base: FiniteRing, n: int, positions):
    def aliases(R: FiniteRing) -> dict:
        out = {"0": R.zero, "1": R.one}
        if n <= 9:
            q = base.order
            for k, (r, c) in enumerate(positions):
                idx = 0
                for kk in range(len(positions)):
                    idx += (base.one if kk == k else base.zero) * q**kk
                out[f"e{r + 1}{c + 1}"] = idx
        return out

    return aliases


def matrix(base: FiniteRing, n: int, bounds: Bounds = DEFAULT_BOUNDS) -> FiniteRing:
    """Full n x n matrices over base. Matrix units are available as ``e11``, ``e12``, ..."""
    if n < 1:
        raise DiffPolyError("matrix size must be >= 1")
    positions = [(r, c) for r in range(n) for c in range(n)]
    pos = {rc: k for k, rc in enumerate(positions)}
    terms = [
        (pos[(i, k)], pos[(k, j)], pos[(i, j)], None)
        for i in range(n)
        for j in range(n)
        for k in range(n)
    ]
    return _tuple_ring(
        base, len(positions), terms, ("matrix", n, base.recipe),
        _matrix_labeler(base, n, positions), _matrix_aliases(base, n, positions), bounds,
    )


def triangular(base: FiniteRing, n: int, bounds: Bounds = DEFAULT_BOUNDS) -> FiniteRing:
    """Upper triangular n x n matrices over base."""
    if n < 1:
        raise DiffPolyError("matrix size must be >= 1")
    positions = [(r, c) for r in range(n) for c in range(r, n)]
    pos = {rc: k for k, rc in enumerate(positions)}
    terms = [
        (pos[(i, k)], pos[(k, j)], pos[(i, j)], None)
        for i in range(n)
        for j in range(i, n)
        for k in range(i, j + 1)
    ]
    return _tuple_ring(
        base, len(positions), terms, ("triangular", n, base.recipe),
        _matrix_labeler(base, n, positions), _matrix_aliases(base, n, positions), bounds,
    )


def product(left: FiniteRing, right: FiniteRing, bounds: Bounds = DEFAULT_BOUNDS) -> FiniteRing:
    """Direct product; element (a, b) has index a + |left| * b."""
    n1, n2 = left.order, right.order
    _check_order(n1 * n2, bounds)
    idx = np.arange(n1 * n2)
    c1, c2 = idx % n1, idx // n1
    add = left.add_table[c1[:, None], c1[None, :]] + n1 * right.add_table[c2[:, None], c2[None, :]]
    mul = left.mul_table[c1[:, None], c1[None, :]] + n1 * right.mul_table[c2[:, None], c2[None, :]]
    return FiniteRing(
        add, mul, ("product", left.recipe, right.recipe),
        labeler=lambda i: f"({left.label(i % n1)},{right.label(i // n1)})",
        aliases=_unit_aliases, bounds=bounds,
    )


def quotient(base: FiniteRing, gens: Sequence, bounds: Bounds = DEFAULT_BOUNDS) -> FiniteRing:
    """base modulo the two-sided ideal generated by gens (labels or indices)."""
    from .ideals import ideal_closure, quotient_ring

    elems = [base.element(g) for g in gens]
    I = ideal_closure(base, elems, "two-sided")
    Q = quotient_ring(base, I, recipe=("quotient", base.recipe, tuple(base.label(g) for g in elems)))
    return Q.ring


def table_ring(add_table, mul_table, bounds: Bounds = DEFAULT_BOUNDS) -> FiniteRing:
    """A ring from literal tables; elements are labelled by index."""
    n = len(add_table)
    return FiniteRing(add_table, mul_table, ("table", n), bounds=bounds)


def make_ring(desc, bounds: Bounds = DEFAULT_BOUNDS) -> FiniteRing:
    """Build a ring from a nested construction descriptor.

    Descriptors are tuples: ``("zmod", n)``, ``("gf", q)``, ``("gf", p, k[, modulus])``,
    ``("matrix", n, sub)``, ``("triangular", n, sub)``, ``("product", a, b)``,
    ``("quotient", sub, gens)``, ``("polymod", sub, coeffs)``, ``("table", add, mul)``.
    """
    if isinstance(desc, FiniteRing):
        return desc
    kind, *args = desc
    if kind == "zmod":
        return zmod(args[0], bounds)
    if kind == "gf":
        if len(args) == 1:
            return gf(args[0], bounds=bounds)
        return gf(args[0], args[1], args[2] if len(args) > 2 else None, bounds=bounds)
    if kind in ("matrix", "triangular"):
        n, sub = args
        base = make_ring(sub, bounds)
        _check_order(base.order ** (n * n if kind == "matrix" else n * (n + 1) // 2), bounds)
        return (matrix if kind == "matrix" else triangular)(base, n, bounds)
    if kind == "product":
        return product(make_ring(args[0], bounds), make_ring(args[1], bounds), bounds)
    if kind == "quotient":
        return quotient(make_ring(args[0], bounds), args[1], bounds)
    if kind == "polymod":
        return polymod(make_ring(args[0], bounds), args[1], bounds=bounds)
    if kind == "table":
        return table_ring(args[0], args[1], bounds)
    raise DiffPolyError(f"unknown ring recipe '{kind}'")


def recipe_text(recipe) -> str:
    """Render a recipe in the scenario-file syntax."""
    kind, *args = recipe

    def sub(r):
        return f"({recipe_text(r)})"

    if kind == "zmod":
        return f"zmod {args[0]}"
    if kind == "gf":
        p, k = args[0], args[1]
        if k == 1:
            return f"gf {p}"
        return f"gf {p} {k} [{','.join(str(c) for c in args[2])}]"
    if kind in ("matrix", "triangular"):
        return f"{kind} {args[0]} {sub(args[1])}"
    if kind == "product":
        return f"product {sub(args[0])} {sub(args[1])}"
    if kind in ("quotient", "polymod"):
        return f"{kind} {sub(args[0])} [{', '.join(args[1])}]"
    if kind == "table":
        return f"table <{args[0]} elements>"
    return str(recipe)
