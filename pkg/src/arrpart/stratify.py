"""Classification of chambers by the flag: level, anchor flat, base
point, envelope, and the resulting ordered stratification.

The level of a chamber is the smallest q with a point of the chamber
on F^q.  Its anchor flat is the intersection of all hyperplanes
through the h_q-minimizing vertex of the closed chamber trace on F^q
(the ambient space at level 0).  The envelope is the chamber of the
parallel-class subarrangement containing it; the stratification lists
strata level by level in ascending height order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .arrangement import (
    Arrangement,
    Flat,
    IntersectionPoset,
    build_poset,
    parallel_class,
)
from .chambers import Chamber, SubChamber, contained_in, enumerate_chambers, restrict, strict_member_point
from .errors import FlagError, LevelMismatch
from .exact_geom import GE, OPTIMAL, Vector, lp_optimize
from .flag import Flag, chamber_level


@dataclass(frozen=True)
class Stratum:
    chamber: Chamber
    level: int
    anchor: Flat
    height: Optional[Fraction]  # None at level 0, where no height form applies
    base_point: Vector
    envelope: SubChamber

    @property
    def index(self) -> int:
        return self.chamber.index


def level_of(arr: Arrangement, chamber: Chamber, flag: Flag) -> int:
    return chamber_level(arr, chamber.signs, flag)


def minimal_flat(
    arr: Arrangement,
    poset: IntersectionPoset,
    chamber: Chamber,
    q: int,
    flag: Flag,
) -> tuple[Flat, Optional[Fraction]]:
    """Anchor flat of a level-q chamber and the height of its trace
    point; (ambient, None) at level 0."""
    if q == 0:
        return poset.ambient(), None
    closure = [
        (arr.forms[i] if s > 0 else arr.forms[i].negated(), GE)
        for i, s in enumerate(chamber.signs)
    ] + flag.subspace_equalities(q)
    res = lp_optimize(flag.height_form(q), closure, sense="min")
    if res.status != OPTIMAL:
        raise FlagError(
            f"height unbounded on chamber {chamber.signs} at level {q}; "
            "the flag fails its positional conditions and must be re-verified"
        )
    vertex = res.point
    support = frozenset(
        i for i, f in enumerate(arr.forms) if f.evaluate(vertex) == 0
    )
    flat = poset.by_support.get(support)
    if flat is None or flat.dim != arr.dim - q:
        raise FlagError(
            f"minimizing vertex of chamber {chamber.signs} lies on "
            f"{sorted(support)}, not a codimension-{q} flat; flag defect"
        )
    return flat, res.value


def base_point(arr: Arrangement, chamber: Chamber, q: int, flag: Flag) -> Vector:
    """Deterministic interior point of the chamber trace on F^q."""
    p = strict_member_point(
        arr, range(arr.n), chamber.signs, extra=flag.subspace_equalities(q)
    )
    if p is None:
        raise FlagError("chamber trace empty at its own level")
    return p


def envelope_of(arr: Arrangement, chamber: Chamber, anchor: Flat) -> SubChamber:
    return restrict(chamber, sorted(parallel_class(arr, anchor)))


def order_leq(a: Stratum, b: Stratum) -> bool:
    """Partial order within one level: a precedes b when b lies inside
    a's envelope."""
    if a.level != b.level:
        raise LevelMismatch(
            f"order compares levels {a.level} and {b.level}"
        )
    return contained_in(b.chamber, a.envelope)


@dataclass
class Stratification:
    arrangement: Arrangement
    flag: Flag
    poset: IntersectionPoset
    chambers: tuple[Chamber, ...]
    strata: tuple[Stratum, ...]  # level-major, ascending height
    by_chamber: dict[int, Stratum] = field(default_factory=dict)
    _classify_cache: dict = field(default_factory=dict, repr=False)
    _far_cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return self.arrangement.dim

    def levels(self) -> dict[int, list[Stratum]]:
        out: dict[int, list[Stratum]] = {}
        for s in self.strata:
            out.setdefault(s.level, []).append(s)
        return out

    def at_level(self, q: int) -> list[Stratum]:
        return [s for s in self.strata if s.level == q]

    def level_sizes(self) -> tuple[int, ...]:
        return tuple(len(self.at_level(q)) for q in range(self.dim + 1))


def stratification(
    arr: Arrangement,
    flag: Flag,
    chambers: Optional[Sequence[Chamber]] = None,
    poset: Optional[IntersectionPoset] = None,
) -> Stratification:
    if poset is None:
        poset = build_poset(arr)
    if chambers is None:
        chambers = enumerate_chambers(arr)
    strata = []
    for c in chambers:
        q = level_of(arr, c, flag)
        anchor, height = minimal_flat(arr, poset, c, q, flag)
        p = base_point(arr, c, q, flag)
        env = envelope_of(arr, c, anchor)
        strata.append(Stratum(c, q, anchor, height, p, env))
    strata.sort(
        key=lambda s: (s.level, s.height if s.height is not None else 0, s.index)
    )
    strat = Stratification(arr, flag, poset, tuple(chambers), tuple(strata))
    strat.by_chamber = {s.index: s for s in strata}
    return strat
