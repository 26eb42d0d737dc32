"""Arrangements of rational affine hyperplanes and their intersection
poset: flats, Moebius function, Betti numbers, parallelism structure
and separating-hyperplane sets."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionError, InputError
from .exact_geom import (
    AffineForm,
    LinearSubspace,
    Vector,
    proportional_forms,
    solve_affine,
    vec,
    zero_vec,
)


@dataclass(frozen=True)
class Arrangement:
    """An ordered list of distinct affine hyperplanes in R^dim."""

    dim: int
    forms: tuple[AffineForm, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.dim < 1:
            raise InputError("ambient dimension must be at least 1")
        for k, f in enumerate(self.forms):
            if f.dim != self.dim:
                raise DimensionError(f"hyperplane {k} over wrong ambient dimension")
            if f.has_zero_linear():
                raise InputError(f"hyperplane {k} has zero linear part")
        for i in range(len(self.forms)):
            for j in range(i + 1, len(self.forms)):
                if proportional_forms(self.forms[i], self.forms[j]):
                    raise InputError(f"hyperplanes {i} and {j} define the same set")
        if not self.names:
            object.__setattr__(
                self, "names", tuple(f"H{k + 1}" for k in range(len(self.forms)))
            )
        elif len(self.names) != len(self.forms):
            raise InputError("names/hyperplanes length mismatch")

    @property
    def n(self) -> int:
        return len(self.forms)

    def evaluate(self, i: int, point: Sequence[Fraction]) -> Fraction:
        return self.forms[i].evaluate(point)

    def sign_vector(self, point: Sequence[Fraction]) -> tuple[int, ...]:
        out = []
        for f in self.forms:
            v = f.evaluate(point)
            out.append(0 if v == 0 else (1 if v > 0 else -1))
        return tuple(out)

    def max_coefficient(self) -> Fraction:
        m = Fraction(0)
        for f in self.forms:
            for c in list(f.linear) + [f.constant]:
                m = max(m, abs(c))
        return m

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "hyperplanes": [
                {"name": name, **f.to_dict()}
                for name, f in zip(self.names, self.forms)
            ],
        }

    @staticmethod
    def from_dict(d: dict) -> "Arrangement":
        try:
            dim = int(d["dim"])
            hyps = d["hyperplanes"]
            forms = tuple(AffineForm.from_dict(h) for h in hyps)
            names = tuple(h.get("name", f"H{k + 1}") for k, h in enumerate(hyps))
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"malformed arrangement: {e}") from e
        return Arrangement(dim, forms, names)


@dataclass(frozen=True)
class Flat:
    """An element of the intersection poset.

    `support` is maximal: it holds every hyperplane containing the
    flat, which makes it a canonical key.  The ambient space appears as
    the unique flat with empty support.
    """

    support: frozenset[int]
    point: Vector
    direction: LinearSubspace
    dim: int

    def key(self) -> frozenset[int]:
        return self.support


@dataclass
class IntersectionPoset:
    arrangement: Arrangement
    flats: tuple[Flat, ...]
    by_support: dict[frozenset, Flat] = field(default_factory=dict)
    moebius: dict[frozenset, int] = field(default_factory=dict)

    def codim(self, flat: Flat) -> int:
        return self.arrangement.dim - flat.dim

    def flats_of_codim(self, q: int) -> list[Flat]:
        return [X for X in self.flats if self.codim(X) == q]

    def ambient(self) -> Flat:
        return self.by_support[frozenset()]

    @staticmethod
    def contains(outer: Flat, inner: Flat) -> bool:
        """Set containment outer >= inner, via maximal supports."""
        return outer.support <= inner.support


def _maximal_support(arr: Arrangement, sol) -> frozenset[int]:
    idx = []
    for i, f in enumerate(arr.forms):
        if f.evaluate(sol.point) != 0:
            continue
        if all(f.linear_value(b) == 0 for b in sol.directions.basis):
            idx.append(i)
    return frozenset(idx)


def build_poset(arr: Arrangement) -> IntersectionPoset:
    """All nonempty intersections of subfamilies, each found once, with
    maximal supports; breadth-first by intersecting with one more
    hyperplane at a time."""
    ambient = Flat(
        frozenset(), zero_vec(arr.dim), LinearSubspace.full(arr.dim), arr.dim
    )
    by_support: dict[frozenset, Flat] = {frozenset(): ambient}
    frontier = [ambient]
    while frontier:
        next_frontier = []
        for X in frontier:
            for i in range(arr.n):
                if i in X.support:
                    continue
                forms = [arr.forms[j] for j in X.support] + [arr.forms[i]]
                sol = solve_affine(forms, arr.dim)
                if sol is None:
                    continue
                support = _maximal_support(arr, sol)
                if support in by_support:
                    continue
                flat = Flat(support, sol.point, sol.directions, sol.dim)
                by_support[support] = flat
                next_frontier.append(flat)
        frontier = next_frontier

    flats = tuple(
        sorted(
            by_support.values(),
            key=lambda X: (arr.dim - X.dim, sorted(X.support)),
        )
    )
    poset = IntersectionPoset(arr, flats, dict(by_support))
    # Moebius recursion down the containment order from the ambient flat.
    for X in flats:
        acc = 0
        for Y in flats:
            if Y.support < X.support:
                acc += poset.moebius[Y.support]
        poset.moebius[X.support] = 1 if X.support == frozenset() else -acc
    return poset


def betti_numbers(poset: IntersectionPoset) -> tuple[int, ...]:
    """Whitney-style Betti numbers: b_q sums |mu| over codim-q flats."""
    dim = poset.arrangement.dim
    out = [0] * (dim + 1)
    for X in poset.flats:
        out[poset.codim(X)] += abs(poset.moebius[X.support])
    return tuple(out)


def chamber_count(poset: IntersectionPoset) -> int:
    """Zaslavsky count: sum of |mu| over all flats."""
    return sum(abs(m) for m in poset.moebius.values())


def parallel_class(arr: Arrangement, flat: Flat) -> frozenset[int]:
    """Hyperplanes whose direction space contains the flat's direction
    (a superset of the flat's support)."""
    out = []
    for i, f in enumerate(arr.forms):
        if all(f.linear_value(b) == 0 for b in flat.direction.basis):
            out.append(i)
    return frozenset(out)


def parallel_to_vector(arr: Arrangement, v: Sequence[Fraction]) -> frozenset[int]:
    """Hyperplanes whose linear part annihilates v; all of them for v = 0."""
    return frozenset(i for i, f in enumerate(arr.forms) if f.linear_value(v) == 0)


def sep_points(arr: Arrangement, p1: Sequence[Fraction], p2: Sequence[Fraction]) -> frozenset[int]:
    """Hyperplanes meeting the closed segment [p1, p2]: the two values
    have opposite signs or at least one vanishes."""
    out = []
    for i, f in enumerate(arr.forms):
        a = f.evaluate(p1)
        b = f.evaluate(p2)
        if a * b <= 0:
            out.append(i)
    return frozenset(out)


def random_arrangement(
    rng: random.Random,
    dim: int,
    count: int,
    coeff_bound: int = 5,
    max_tries: int = 1000,
) -> Arrangement:
    """Seeded random arrangement with small integer coefficients;
    rejects zero linear parts and duplicate hyperplanes."""
    forms: list[AffineForm] = []
    tries = 0
    while len(forms) < count:
        tries += 1
        if tries > max_tries:
            raise InputError("could not sample enough distinct hyperplanes")
        linear = [rng.randint(-coeff_bound, coeff_bound) for _ in range(dim)]
        if all(c == 0 for c in linear):
            continue
        constant = rng.randint(-coeff_bound, coeff_bound)
        cand = AffineForm(vec(linear), Fraction(constant))
        if any(proportional_forms(cand, f) for f in forms):
            continue
        forms.append(cand)
    return Arrangement(dim, tuple(forms))
