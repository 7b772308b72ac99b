"""Quasi-duo decision, maximal ideals and the Jacobson radical of R[x; d] for finite R.

The decision uses the criterion that R[x; d] is (left and right) quasi-duo exactly
when R/J0 is commutative and d(R) lies in J0, where J0 = J(R[x; d]) meets R. For
finite R, J0 is the delta-core computed in ``derivation.delta_core``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .checks import Check, PASS
from .config import DEFAULT_BOUNDS, Bounds
from .derivation import Derivation, delta_core, induced_derivation
from .errors import DiffPolyError, InvariantError, NotQuasiDuo
from .ideals import (
    Ideal,
    check_ideal,
    enumerate_ideals,
    intersection,
    jacobson_radical,
    maximal_field_ideals,
    quotient_ring,
)
from .orepoly import (
    FieldPoly,
    OrePoly,
    OreRing,
    PhiMap,
    PolySpan,
    irreducible_monics,
    monic_division,
    poly_gcd,
    quotient_field,
)
from .rings import FiniteRing

COMMUTATOR_ESCAPE = "commutator-escape"
DERIVATION_ESCAPE = "derivation-escape"
SEVERAL_VARIABLES = "several-indeterminates"


@dataclass(frozen=True)
class RadicalReport:
    j_R: Ideal
    t_core: Ideal
    m_r: tuple[Ideal, ...]
    k: Ideal
    k_equals_core: bool


@dataclass(frozen=True)
class Verdict:
    quasi_duo: bool
    witness_kind: str | None = None
    witness: tuple = ()
    report: RadicalReport | None = None
    radical_check: bool | None = None
    reason: str = ""


def radical_report(R: FiniteRing, delta: Derivation, bounds: Bounds = DEFAULT_BOUNDS) -> RadicalReport:
    """J(R), the delta-core, the ideals I with R/I a field containing d(R), and their intersection K."""
    J = jacobson_radical(R, bounds)
    T = delta_core(R, delta, bounds)
    m_r = tuple(maximal_field_ideals(R, delta, bounds))
    K = intersection(R, list(m_r))
    return RadicalReport(J, T, m_r, K, K == T)


def quasi_duo(R: FiniteRing, delta: Derivation, bounds: Bounds = DEFAULT_BOUNDS) -> Verdict:
    """Decide whether R[x; d] is quasi-duo.

    A negative verdict carries the first commutator ab - ba (or image d(r)) outside
    the delta-core, scanning pairs in index order. A positive verdict also checks
    that the delta-core equals K; a mismatch raises InvariantError.
    """
    report = radical_report(R, delta, bounds)
    mask = report.t_core.mask
    commutators = R.add_table[R.mul_table, R.neg[R.mul_table.T]]
    bad = ~mask[commutators]
    if bad.any():
        a, b = (int(v) for v in np.argwhere(bad)[0])
        return Verdict(False, COMMUTATOR_ESCAPE, (a, b), report, reason="R/J0 is not commutative")
    bad = ~mask[delta.array]
    if bad.any():
        r = int(np.flatnonzero(bad)[0])
        return Verdict(False, DERIVATION_ESCAPE, (r,), report, reason="d(R) is not inside J0")
    if not report.k_equals_core:
        raise InvariantError(
            f"quasi-duo instance with J0 != K: |J0| = {len(report.t_core)}, |K| = {len(report.k)}"
        )
    return Verdict(True, None, (), report, radical_check=True)


def check_witness(R: FiniteRing, delta: Derivation, verdict: Verdict) -> Check:
    """Re-validate a verdict's witness with scalar arithmetic, independently of the decision scan."""
    T = verdict.report.t_core.elements
    if verdict.quasi_duo:
        for a in range(R.order):
            if delta(a) not in T:
                return Check(False, (a,), "yes-verdict but d(a) escapes")
            for b in range(R.order):
                if R.sub(R.mul(a, b), R.mul(b, a)) not in T:
                    return Check(False, (a, b), "yes-verdict but ab - ba escapes")
        return PASS
    if verdict.witness_kind == COMMUTATOR_ESCAPE:
        a, b = verdict.witness
        ok = R.sub(R.mul(a, b), R.mul(b, a)) not in T
        return Check(ok, verdict.witness, "" if ok else "commutator lies in J0")
    if verdict.witness_kind == DERIVATION_ESCAPE:
        (r,) = verdict.witness
        ok = delta(r) not in T
        return Check(ok, verdict.witness, "" if ok else "d(r) lies in J0")
    return Check(False, verdict.witness, f"unknown witness kind {verdict.witness_kind}")


def commutative_quotient_evidence(R: FiniteRing, delta: Derivation, T: Ideal) -> Check:
    """R/T commutative and the induced derivation zero, so R[x; d]/T[x; d] is an ordinary polynomial ring."""
    if T.is_unit:
        return Check(False, None, "J0 is the unit ideal")
    Q = quotient_ring(R, T)
    comm = Q.ring.is_commutative()
    if not comm:
        return Check(False, comm.witness, "R/J0 not commutative")
    induced = induced_derivation(T, delta, Q)
    if not induced.is_zero:
        return Check(False, None, "induced derivation on R/J0 is nonzero")
    return PASS


# ---------------------------------------------------------------------------
# maximal ideals of R[x; d]


@dataclass(frozen=True, eq=False)
class MaxIdealHandle:
    """The maximal ideal I[x; d] + <lift> of R[x; d], where lift maps to p under the projection."""

    i: Ideal
    p: FieldPoly
    lift: OrePoly
    phi: PhiMap = field(repr=False)

    def key(self) -> tuple:
        return (self.i.sorted, self.p.coeffs)

    def __eq__(self, other):
        return isinstance(other, MaxIdealHandle) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def ring(self) -> OreRing:
        return self.phi.ring

    def generators(self) -> list[OrePoly]:
        """Generators of the ideal: the ideal generators of I as constants, then the lift."""
        S = self.ring
        return [S.const(a) for a in self.i.generators] + [self.lift]

    def __contains__(self, f: OrePoly) -> bool:
        return membership(self, f)


def _handle(phi: PhiMap, p: FieldPoly) -> MaxIdealHandle:
    return MaxIdealHandle(phi.ideal, p, phi.lift(p), phi)


def enumerate_max_ideals(S: OreRing, dmax: int, bounds: Bounds = DEFAULT_BOUNDS) -> list[MaxIdealHandle]:
    """All maximal ideals whose polynomial part has degree <= dmax, as (I, p) handles."""
    verdict = quasi_duo(S.base, S.delta, bounds)
    if not verdict.quasi_duo:
        raise NotQuasiDuo(
            f"{S.base.describe()} with {S.delta.name} is not quasi-duo ({verdict.witness_kind}); "
            "maximal ideals are only enumerated for quasi-duo rings"
        )
    out = []
    for I in verdict.report.m_r:
        phi = PhiMap(S, I)
        for p in irreducible_monics(phi.field, dmax, bounds):
            out.append(_handle(phi, p))
    return out


def membership(M: MaxIdealHandle, f: OrePoly) -> bool:
    """f lies in M exactly when its projection is divisible by p."""
    return monic_division(M.phi(f), M.p)[1].is_zero()


def _multipliers(S: OreRing) -> list[OrePoly]:
    # membership sets are additive groups, so additive generators of R stand in for all of R
    return [S.const(a) for a in S.base.spanning_coefficients] + [S.x]


def two_sided_check(M: MaxIdealHandle, d: int) -> Check:
    """Check that M absorbs multiplication by ring elements and by x on both sides.

    Tested on a family spanning the degree <= d part of M: a x^j for a in I, and
    x^j lift, lift x^j. The witness is (side, multiplier, member, product).
    """
    S = M.ring
    family = [S.monomial(a, j) for j in range(d + 1) for a in M.i.sorted if a != S.base.zero]
    n = M.lift.degree
    for j in range(max(d - n, -1) + 1):
        xj = S.monomial(S.base.one, j)
        family += [xj * M.lift, M.lift * xj]
    for g in family:
        if not membership(M, g):
            return Check(False, ("member", None, str(g), str(g)), "family element not in M")
        for s in _multipliers(S):
            left = s * g
            if not membership(M, left):
                return Check(False, ("left", str(s), str(g), str(left)), "s*g escapes")
            right = g * s
            if not membership(M, right):
                return Check(False, ("right", str(s), str(g), str(right)), "g*s escapes")
    return PASS


def negative_control_handle(S: OreRing, bounds: Bounds = DEFAULT_BOUNDS) -> MaxIdealHandle | None:
    """A deliberately ineligible handle: a field ideal I with d(R) not inside I, paired with p = x.

    Its membership set is not an ideal, so two_sided_check must fail on it. Returns
    None when the ring has no such ideal.
    """
    from .ideals import enumerate_maximal_ideals

    R = S.base
    image = set(S.delta.image)
    for I in enumerate_maximal_ideals(R, "two-sided", bounds):
        if image <= I.elements:
            continue
        phi = PhiMap(S, I, check=False)
        if phi.field.is_field():
            p = FieldPoly(phi.field, (phi.field.zero, phi.field.one))
            return _handle(phi, p)
    return None


def bounded_closure(S: OreRing, gens: Iterable[OrePoly], degree: int) -> PolySpan:
    """The two-sided ideal generated by gens, cut down to polynomials of degree <= degree.

    Closed under addition and under multiplication (both sides) by elements of R,
    and by x whenever the product stays within the degree bound.
    """
    R = S.base
    span = PolySpan(R, degree)
    mults = [S.const(a) for a in R.additive_generators]

    def products(v):
        f = S(v)
        out = [m * f for m in mults] + [f * m for m in mults]
        if f.degree < degree:
            out += [S.x * f, f * S.x]
        return out

    pending = []
    for g in gens:
        if g.degree > degree:
            raise DiffPolyError(f"generator {g} has degree above the closure bound {degree}")
        pending.append(g.coeffs)
    while True:
        while pending:
            for atom in span.insert(pending.pop()):
                pending.extend(p.coeffs for p in products(atom))
        # closure pass over echelon representatives, which generate every degree slice
        for rep in span.representatives():
            pending.extend(p.coeffs for p in products(rep) if p.coeffs not in span)
        if not pending:
            return span


def decompose_max_ideal(S: OreRing, gens: list[OrePoly], dmax: int, bounds: Bounds = DEFAULT_BOUNDS) -> MaxIdealHandle:
    """Recover the handle (M cap R, p) of the maximal ideal generated by gens.

    The degree-bounded closure must agree at dmax and dmax + 1 on polynomials of
    degree <= dmax; p is the monic gcd of the projected generators.
    """
    R = S.base
    span = bounded_closure(S, gens, dmax)
    wider = bounded_closure(S, gens, dmax + 1)
    if wider.lead_sets()[: dmax + 1] != span.lead_sets():
        raise DiffPolyError(f"ideal closure did not stabilise at degree {dmax}; raise dmax")
    M0 = Ideal(R, frozenset(span.leads[0]), "two-sided")
    check = check_ideal(M0)
    if not check:
        raise InvariantError(f"degree-0 part of the closure is not an ideal: {check.detail}")
    if M0.is_unit:
        raise DiffPolyError("generators give the whole ring")
    try:
        phi = PhiMap(S, M0)
    except DiffPolyError as exc:
        raise DiffPolyError(f"M cap R is not admissible: {exc}") from exc
    p = poly_gcd(phi(g) for g in gens)
    if p is None or p.is_zero():
        raise DiffPolyError("projected generators are all zero: the ideal is not maximal")
    if p.degree == 0:
        raise DiffPolyError("projected generators have a constant gcd: the ideal is the whole ring")
    try:
        quotient_field(phi.field, p, bounds)
    except DiffPolyError as exc:
        raise DiffPolyError(f"gcd {p} is reducible: the ideal is not maximal") from exc
    return _handle(phi, p)


def membership_agreement(M: MaxIdealHandle, degree: int, exhaustive_cap: int = 5000) -> Check:
    """Compare the closure of M's generators with the projection-based membership test.

    Both sides are subgroups of the degree <= degree polynomials: the closure must
    sit inside the membership set and have the predicted order
    |I|^(d+1) |R/I|^(d+1-deg p). Small cases are also compared polynomial by polynomial.
    """
    S = M.ring
    span = bounded_closure(S, M.generators(), degree)
    for rep in span.representatives():
        if not membership(M, S(rep)):
            return Check(False, str(S(rep)), "closure element fails the membership test")
    K = M.phi.field.order
    expected = len(M.i) ** (degree + 1) * K ** max(0, degree + 1 - M.p.degree)
    if span.size != expected:
        return Check(False, (span.size, expected), "closure order differs from the membership set order")
    if S.base.order ** (degree + 1) <= exhaustive_cap:
        for f in S.all_polys(degree):
            if (f.coeffs in span) != membership(M, f):
                return Check(False, str(f), "membership disagrees")
    return PASS


def saturation_check(M: MaxIdealHandle, degree: int, exhaustive_cap: int = 5000) -> Check:
    """The preimage of the projected ideal is the ideal itself, on degree <= degree polynomials."""
    S = M.ring
    span = bounded_closure(S, M.generators(), degree)
    image = PolySpan(M.phi.field, degree)
    for rep in span.representatives():
        image.insert(M.phi(S(rep)).coeffs)
    saturated = len(M.i) ** (degree + 1) * image.size
    if saturated != span.size:
        return Check(False, (saturated, span.size), "saturation is strictly larger")
    if S.base.order ** (degree + 1) <= exhaustive_cap:
        for f in S.all_polys(degree):
            if (M.phi(f).coeffs in image) != (f.coeffs in span):
                return Check(False, str(f), "saturation membership disagrees")
    return PASS


def quasi_regular_inverse(f: OrePoly, K: Ideal | None = None, cap: int | None = None) -> OrePoly:
    """g = 1 + f + f^2 + ..., the inverse of 1 - f, for nilpotent f.

    With K given, every coefficient of f must lie in K.
    """
    S = f.ring
    if K is not None and not set(f.coeffs) <= K.elements:
        raise DiffPolyError(f"{f} has a coefficient outside K")
    if cap is None:
        cap = S.base.order * (max(f.degree, 0) + 1)
    g, power, steps = S.one, f, 0
    while not power.is_zero():
        steps += 1
        if steps > cap:
            raise DiffPolyError(f"{f} is not nilpotent within {cap} steps")
        g = g + power
        power = power * f
    one_minus = S.one - f
    if one_minus * g != S.one or g * one_minus != S.one:
        raise InvariantError(f"quasi-regular inverse of {f} failed verification")
    return g


def radical_spanning_set(S: OreRing, K: Ideal, degree: int) -> list[OrePoly]:
    return [S.monomial(a, j) for j in range(degree + 1) for a in K.sorted if a != S.base.zero]


# ---------------------------------------------------------------------------
# full invariant sweep for one instance


def verify_instance(S: OreRing, dmax: int, bounds: Bounds = DEFAULT_BOUNDS) -> list[tuple[str, Check]]:
    """Run every structural invariant on (R, d); returns (name, outcome) pairs."""
    from .ideals import nilradical, ideal_power_chain
    from .derivation import delta_stable

    R, delta = S.base, S.delta
    results: list[tuple[str, Check]] = []

    def record(name, fn):
        try:
            outcome = fn()
        except DiffPolyError as exc:
            outcome = Check(False, None, f"{type(exc).__name__}: {exc}")
        results.append((name, outcome if isinstance(outcome, Check) else Check(bool(outcome))))

    J = jacobson_radical(R, bounds)
    record("radical routes agree", lambda: PASS)
    record("nilradical equals J(R)", lambda: nilradical(R, bounds) == J)
    record("J(R) nilpotent", lambda: ideal_power_chain(J)[-1].is_zero)
    record("d(1) = 0", lambda: delta(R.one) == R.zero)

    verdict = quasi_duo(R, delta, bounds)
    rep = verdict.report
    T = rep.t_core
    record("delta-core inside J(R), delta-stable, two-sided",
           lambda: T <= J and bool(delta_stable(T, delta)) and bool(check_ideal(T)))
    record("K is the intersection of M(R)", lambda: rep.k == intersection(R, list(rep.m_r)))
    record("verdict witness re-validates", lambda: check_witness(R, delta, verdict))

    def field_ideals_ok():
        for I in rep.m_r:
            Q = quotient_ring(R, I)
            if not Q.ring.is_field() or not set(delta.image) <= I.elements:
                return Check(False, I.label(), "not a field ideal containing d(R)")
        return PASS

    record("M(R) ideals have field quotients containing d(R)", field_ideals_ok)

    simple = [I for I in enumerate_ideals(R, "two-sided", bounds)]
    if len(simple) == 2:
        record("simple ring: quasi-duo iff field with d = 0",
               lambda: verdict.quasi_duo == (R.is_field() and delta.is_zero))
    if J.is_zero:
        record("semiprimitive: quasi-duo iff commutative with d = 0",
               lambda: verdict.quasi_duo == (bool(R.is_commutative()) and delta.is_zero))

    record("kernel law for the projections (degree <= 2)", lambda: kernel_law(S, rep.m_r, 2))

    if verdict.quasi_duo:
        record("J0 = K", lambda: rep.k_equals_core)
        record("R/J0 commutative with zero induced derivation",
               lambda: commutative_quotient_evidence(R, delta, T))
        handles = enumerate_max_ideals(S, dmax, bounds)
        record(f"maximal ideals two-sided (degree <= {dmax + 1})",
               lambda: _all(two_sided_check(h, dmax + 1) for h in handles))
        record(f"decompose(enumerate) is the identity (dmax = {dmax})",
               lambda: _all(Check(decompose_max_ideal(S, h.generators(), dmax, bounds) == h, str(h.p))
                            for h in handles))
        record(f"membership sets agree (degree <= {dmax})",
               lambda: _all(membership_agreement(h, dmax) for h in handles))
        record(f"saturation (degree <= {dmax})", lambda: _all(saturation_check(h, dmax) for h in handles))
        record("quasi-regular inverses on K[x; d] (degree <= 2)",
               lambda: all(quasi_regular_inverse(f, rep.k) is not None
                           for f in radical_spanning_set(S, rep.k, 2)))
    control = negative_control_handle(S, bounds)
    if control is not None:
        record("negative control is rejected", lambda: Check(not two_sided_check(control, 2)))
    return results


def _all(checks: Iterable[Check]) -> Check:
    for c in checks:
        if not c:
            return c
    return PASS


def kernel_law(S: OreRing, ideals: Iterable[Ideal], degree: int, exhaustive_cap: int = 5000) -> Check:
    """Projection is zero exactly when every coefficient lies in I; exhaustive for small rings."""
    rng = np.random.default_rng(7)
    for I in ideals:
        phi = PhiMap(S, I)
        if S.base.order ** (degree + 1) <= exhaustive_cap:
            polys = S.all_polys(degree)
        else:
            polys = (S.random_poly(rng, degree) for _ in range(500))
        for f in polys:
            if phi(f).is_zero() != (set(f.coeffs) <= I.elements):
                return Check(False, str(f), f"kernel law fails for I = {I.label()}")
    return PASS
