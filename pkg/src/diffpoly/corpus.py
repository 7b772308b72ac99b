"""The shipped instance corpus: small rings with derivations, each with its expected verdict."""

from __future__ import annotations

from dataclasses import dataclass

from .config import DEFAULT_BOUNDS, Bounds
from .derivation import Derivation
from .orepoly import OreRing
from .rings import FiniteRing, make_ring
from .scenario import DerivSpec, build_derivation


def UT2(q: int) -> tuple:
    return ("triangular", 2, ("gf", q))


@dataclass(frozen=True)
class Instance:
    name: str
    ring: tuple
    derivation: DerivSpec
    expected: bool  # quasi-duo or not
    family: str  # commutative-zero | triangular-inner | other

    def build(self, bounds: Bounds = DEFAULT_BOUNDS) -> tuple[FiniteRing, Derivation]:
        R = make_ring(self.ring, bounds)
        return R, build_derivation(R, self.derivation)

    def ore_ring(self, bounds: Bounds = DEFAULT_BOUNDS) -> OreRing:
        return OreRing(self.build(bounds)[1])


ZERO = DerivSpec("zero")

CORPUS: tuple[Instance, ...] = (
    Instance("zmod2", ("zmod", 2), ZERO, True, "commutative-zero"),
    Instance("zmod4", ("zmod", 4), ZERO, True, "commutative-zero"),
    Instance("zmod8", ("zmod", 8), ZERO, True, "commutative-zero"),
    Instance("zmod9", ("zmod", 9), ZERO, True, "commutative-zero"),
    Instance("gf2", ("gf", 2), ZERO, True, "commutative-zero"),
    Instance("gf3", ("gf", 3), ZERO, True, "commutative-zero"),
    Instance("gf4", ("gf", 4), ZERO, True, "commutative-zero"),
    Instance("gf5", ("gf", 5), ZERO, True, "commutative-zero"),
    Instance("gf2xgf3", ("product", ("gf", 2), ("gf", 3)), ZERO, True, "commutative-zero"),
    Instance("dual2", ("polymod", ("gf", 2), ("0", "0", "1")), ZERO, True, "commutative-zero"),
    Instance("ut2_gf2_zero", UT2(2), ZERO, True, "triangular-inner"),
    Instance("ut2_gf2_inner_e12", UT2(2), DerivSpec("inner", "e12"), True, "triangular-inner"),
    Instance("ut2_gf2_inner_e11", UT2(2), DerivSpec("inner", "e11"), True, "triangular-inner"),
    Instance("ut2_gf3_zero", UT2(3), ZERO, True, "triangular-inner"),
    Instance("ut2_gf3_inner_e12", UT2(3), DerivSpec("inner", "e12"), True, "triangular-inner"),
    Instance("m2_gf2_zero", ("matrix", 2, ("gf", 2)), ZERO, False, "other"),
    Instance("m2_gf2_inner_e12", ("matrix", 2, ("gf", 2)), DerivSpec("inner", "e12"), False, "other"),
    Instance("dual2_shift", ("polymod", ("gf", 2), ("0", "0", "1")),
             DerivSpec("table", pairs=(("t", "1"),)), False, "other"),
)


def instance(name: str) -> Instance:
    for inst in CORPUS:
        if inst.name == name:
            return inst
    raise KeyError(name)
