"""Chamber enumeration and membership.

Chambers are open sign-vector cells of the real arrangement, each
carrying a certified rational interior point.  Enumeration inserts one
hyperplane at a time: the side already containing a cell's interior
point survives for free, the opposite side is certified or refuted by
one strict-feasibility LP.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .arrangement import Arrangement
from .exact_geom import GT, Vector, strictly_feasible_point, zero_vec


@dataclass(frozen=True)
class Chamber:
    index: int
    signs: tuple[int, ...]
    interior_point: Vector


@dataclass(frozen=True)
class SubChamber:
    """A chamber of the subarrangement on `indices`, as a partial sign
    vector."""

    indices: tuple[int, ...]
    signs: tuple[int, ...]

    def sign_of(self, i: int) -> int:
        return self.signs[self.indices.index(i)]


@dataclass(frozen=True)
class OnBoundary:
    """First-class result for points lying on at least one hyperplane."""

    vanishing: frozenset[int]


def signs_text(signs: Sequence[int]) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


def _strict_system(arr: Arrangement, indices: Sequence[int], signs: Sequence[int]):
    return [
        (arr.forms[i] if s > 0 else arr.forms[i].negated(), GT)
        for i, s in zip(indices, signs)
    ]


def enumerate_chambers(arr: Arrangement) -> tuple[Chamber, ...]:
    """Complete duplicate-free chamber list with interior points."""
    partial: list[tuple[tuple[int, ...], Vector]] = [((), zero_vec(arr.dim))]
    for k in range(arr.n):
        form = arr.forms[k]
        grown: list[tuple[tuple[int, ...], Vector]] = []
        for signs, point in partial:
            val = form.evaluate(point)
            carried = 0 if val == 0 else (1 if val > 0 else -1)
            if carried != 0:
                grown.append((signs + (carried,), point))
            for side in (1, -1):
                if side == carried:
                    continue
                system = _strict_system(arr, range(k + 1), signs + (side,))
                p = strictly_feasible_point(system, dim=arr.dim)
                if p is not None:
                    grown.append((signs + (side,), p))
        partial = grown
    return tuple(
        Chamber(i, signs, point) for i, (signs, point) in enumerate(partial)
    )


def restrict(chamber: Chamber, indices: Sequence[int]) -> SubChamber:
    idx = tuple(sorted(indices))
    return SubChamber(idx, tuple(chamber.signs[i] for i in idx))


def contained_in(chamber: Chamber, sub: SubChamber) -> bool:
    """Whether the full chamber lies inside the subarrangement chamber."""
    return all(chamber.signs[i] == s for i, s in zip(sub.indices, sub.signs))


def chamber_of_point(
    arr: Arrangement,
    chambers: Sequence[Chamber],
    point: Sequence[Fraction],
) -> Union[Chamber, OnBoundary]:
    sigma = arr.sign_vector(point)
    if 0 in sigma:
        return OnBoundary(frozenset(i for i, s in enumerate(sigma) if s == 0))
    for c in chambers:
        if c.signs == sigma:
            return c
    raise AssertionError("sign vector of a point matches no chamber")


def subchamber_of_point(
    arr: Arrangement,
    indices: Sequence[int],
    point: Sequence[Fraction],
) -> Union[SubChamber, OnBoundary]:
    idx = tuple(sorted(indices))
    vals = [arr.forms[i].evaluate(point) for i in idx]
    if any(v == 0 for v in vals):
        return OnBoundary(frozenset(i for i, v in zip(idx, vals) if v == 0))
    return SubChamber(idx, tuple(1 if v > 0 else -1 for v in vals))


def strict_member_point(
    arr: Arrangement, indices: Sequence[int], signs: Sequence[int],
    extra=None,
) -> Optional[Vector]:
    """Interior point of a (sub)chamber cell, optionally intersected
    with extra constraints; None when provably empty."""
    system = _strict_system(arr, indices, signs)
    if extra:
        system = system + list(extra)
    return strictly_feasible_point(system, dim=arr.dim)
