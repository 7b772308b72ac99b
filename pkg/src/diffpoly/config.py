from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Bounds:
    """Desk-scale caps. Every enumeration consults one of these before it starts."""

    order_cap: int = 4096          # largest ring make_ring will build
    one_sided_cap: int = 256       # left/right ideal enumeration
    two_sided_cap: int = 4096      # two-sided ideal enumeration
    dmax: int = 3                  # default degree bound for polynomial enumeration
    poly_degree_cap: int = 6       # irreducible_monics refuses dmax above this
    corner_degree_cap: int = 4     # corner_closure_report word-length cap
    exhaustive_axiom_cap: int = 512  # above this, axiom checks are sampled

    def with_(self, **changes) -> "Bounds":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


DEFAULT_BOUNDS = Bounds()
