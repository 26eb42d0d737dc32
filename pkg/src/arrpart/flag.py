"""Generic flags: nested affine subspaces F^0 c F^1 c ... c F^dim cut
out by independent affine forms h_1, ..., h_dim, where
F^q = {h_{q+1} = ... = h_dim = 0}.

A flag is usable when it is generic (meets every flat in the expected
dimension) and satisfies two positional conditions: every chamber
first met at level q stays on the positive side of h_q there, and the
h_q-heights of the codimension-q flat traces are pairwise distinct.
`generate_flag` samples random independent linear parts and then
places the constants so all flat traces get positive heights, which
lands in the good region with overwhelming probability; the result is
always re-verified, never trusted.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .arrangement import Arrangement, IntersectionPoset, build_poset
from .chambers import Chamber, enumerate_chambers, strict_member_point
from .errors import DimensionError, FlagError, InputError
from .exact_geom import (
    EQ,
    GE,
    OPTIMAL,
    UNBOUNDED,
    AffineForm,
    Vector,
    lp_optimize,
    rank,
    solve_affine,
    vec,
)


@dataclass(frozen=True)
class Flag:
    """forms[k] is h_{k+1}; linear parts must be independent."""

    forms: tuple[AffineForm, ...]

    def __post_init__(self):
        dim = len(self.forms)
        for f in self.forms:
            if f.dim != dim:
                raise DimensionError("flag form over wrong ambient dimension")
        if rank([f.linear for f in self.forms], dim) != dim:
            raise InputError("flag linear parts are dependent")

    @property
    def dim(self) -> int:
        return len(self.forms)

    def height_form(self, q: int) -> AffineForm:
        """h_q, defined for 1 <= q <= dim."""
        if not 1 <= q <= self.dim:
            raise ValueError(f"no height form at level {q}")
        return self.forms[q - 1]

    def subspace_equalities(self, q: int) -> list[tuple[AffineForm, str]]:
        """Equality constraints cutting out F^q."""
        if not 0 <= q <= self.dim:
            raise ValueError(f"no flag subspace at level {q}")
        return [(f, EQ) for f in self.forms[q:]]

    def subspace_forms(self, q: int) -> list[AffineForm]:
        return list(self.forms[q:])

    def base_vertex(self) -> Vector:
        """The single point F^0."""
        sol = solve_affine(self.subspace_forms(0), self.dim)
        assert sol is not None and sol.dim == 0
        return sol.point

    def to_dict(self) -> dict:
        return {"forms": [f.to_dict() for f in self.forms]}

    @staticmethod
    def from_dict(d: dict) -> "Flag":
        try:
            return Flag(tuple(AffineForm.from_dict(f) for f in d["forms"]))
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"malformed flag: {e}") from e


@dataclass(frozen=True)
class GenericityViolation:
    flat_support: frozenset[int]
    level: int
    expected_dim: Optional[int]  # None encodes "must be empty"
    actual_dim: Optional[int]    # None encodes "is empty"

    def describe(self, arr: Arrangement) -> str:
        names = "&".join(arr.names[i] for i in sorted(self.flat_support)) or "ambient"
        return (
            f"flat {names} meets flag subspace of level {self.level} in "
            f"dimension {self.actual_dim} (expected {self.expected_dim})"
        )


@dataclass(frozen=True)
class PositivityViolation:
    chamber_signs: tuple[int, ...]
    level: int
    minimum: Optional[Fraction]  # None when unbounded below

    def describe(self, arr: Arrangement) -> str:
        lo = "unbounded below" if self.minimum is None else f"minimum {self.minimum}"
        return (
            f"chamber {self.chamber_signs} at level {self.level} has "
            f"nonpositive height ({lo})"
        )


@dataclass(frozen=True)
class HeightCollision:
    level: int
    support_a: frozenset[int]
    support_b: frozenset[int]
    height: Fraction

    def describe(self, arr: Arrangement) -> str:
        na = "&".join(arr.names[i] for i in sorted(self.support_a))
        nb = "&".join(arr.names[i] for i in sorted(self.support_b))
        return (
            f"flats {na} and {nb} share height {self.height} at level {self.level}"
        )


AssumptionViolation = Union[PositivityViolation, HeightCollision]


def check_generic(
    arr: Arrangement, flag: Flag, poset: Optional[IntersectionPoset] = None
) -> Optional[GenericityViolation]:
    """None when every flat meets every flag subspace in the expected
    dimension; otherwise the first violation found."""
    if flag.dim != arr.dim:
        raise DimensionError("flag and arrangement dimensions differ")
    if poset is None:
        poset = build_poset(arr)
    for q in range(arr.dim + 1):
        flag_forms = flag.subspace_forms(q)
        for X in poset.flats:
            if not X.support:
                continue
            expected = q + X.dim - arr.dim
            forms = flag_forms + [arr.forms[i] for i in X.support]
            sol = solve_affine(forms, arr.dim)
            actual = None if sol is None else sol.dim
            want = expected if expected >= 0 else None
            if actual != want:
                return GenericityViolation(X.support, q, want, actual)
    return None


def chamber_level(arr: Arrangement, signs: Sequence[int], flag: Flag) -> int:
    """Smallest q such that the open chamber meets F^q."""
    for q in range(arr.dim + 1):
        p = strict_member_point(
            arr, range(arr.n), signs, extra=flag.subspace_equalities(q)
        )
        if p is not None:
            return q
    raise AssertionError("chamber met no flag subspace, not even the ambient one")


def trace_heights(
    arr: Arrangement, flag: Flag, poset: IntersectionPoset, q: int
) -> list[tuple[frozenset, Fraction]]:
    """h_q-heights of X n F^q over the codimension-q flats X."""
    out = []
    h_q = flag.height_form(q)
    for X in poset.flats_of_codim(q):
        forms = flag.subspace_forms(q) + [arr.forms[i] for i in X.support]
        sol = solve_affine(forms, arr.dim)
        if sol is None or sol.dim != 0:
            raise FlagError("height of a flat trace requested for a non-generic flag")
        out.append((X.support, h_q.evaluate(sol.point)))
    return out


def check_assumption(
    arr: Arrangement,
    flag: Flag,
    poset: Optional[IntersectionPoset] = None,
    chambers: Optional[Sequence[Chamber]] = None,
) -> Optional[AssumptionViolation]:
    """Verifies the two positional conditions on a generic flag:
    pairwise-distinct trace heights per level, then chamber positivity
    (the closure minimum of h_q over each level-q chamber trace is
    nonnegative).  Returns the first violation, or None."""
    if poset is None:
        poset = build_poset(arr)
    for q in range(1, arr.dim + 1):
        seen: dict[Fraction, frozenset] = {}
        for support, height in trace_heights(arr, flag, poset, q):
            if height in seen:
                return HeightCollision(q, seen[height], support, height)
            seen[height] = support
    if chambers is None:
        chambers = enumerate_chambers(arr)
    for c in chambers:
        q = chamber_level(arr, c.signs, flag)
        if q == 0:
            continue
        closure = [
            (arr.forms[i] if s > 0 else arr.forms[i].negated(), GE)
            for i, s in enumerate(c.signs)
        ] + flag.subspace_equalities(q)
        res = lp_optimize(flag.height_form(q), closure, sense="min")
        if res.status == UNBOUNDED:
            return PositivityViolation(c.signs, q, None)
        assert res.status == OPTIMAL
        if res.value < 0:
            return PositivityViolation(c.signs, q, res.value)
    return None


def generate_flag(
    arr: Arrangement,
    seed: int,
    poset: Optional[IntersectionPoset] = None,
    rounds: int = 64,
) -> Flag:
    """Deterministic seeded flag search.

    Each round samples integer linear parts uniformly from [-M, M]
    (M doubling every round), then chooses the constants top-down so
    every codimension-q flat trace receives a height in [1, M + spread].
    Candidates failing verification are discarded; the returned flag
    always carries a full machine check.
    """
    if poset is None:
        poset = build_poset(arr)
    chambers = enumerate_chambers(arr)
    rng = random.Random(seed)
    dim = arr.dim
    base_m = 10 * max(arr.n, 1) * dim
    last_failure = None
    for round_no in range(rounds):
        m = base_m * (2 ** min(round_no, 16))
        linear_parts = [
            vec([rng.randint(-m, m) for _ in range(dim)]) for _ in range(dim)
        ]
        if rank(linear_parts, dim) != dim:
            last_failure = "dependent linear parts"
            continue
        forms: list[Optional[AffineForm]] = [None] * dim
        ok = True
        for q in range(dim, 0, -1):
            tail = [f for f in forms[q:] if f is not None]
            lin = linear_parts[q - 1]
            lowest = Fraction(0)
            have_traces = False
            for X in poset.flats_of_codim(q):
                sol = solve_affine(
                    tail + [arr.forms[i] for i in X.support], dim
                )
                if sol is None or sol.dim != 0:
                    ok = False
                    break
                val = sum((a * b for a, b in zip(lin, sol.point)), Fraction(0))
                lowest = val if not have_traces else min(lowest, val)
                have_traces = True
            if not ok:
                last_failure = "degenerate partial flag"
                break
            offset = Fraction(rng.randint(1, m)) - (lowest if have_traces else 0)
            forms[q - 1] = AffineForm(lin, offset)
        if not ok:
            continue
        flag = Flag(tuple(forms))
        g = check_generic(arr, flag, poset)
        if g is not None:
            last_failure = g.describe(arr)
            continue
        a = check_assumption(arr, flag, poset, chambers)
        if a is not None:
            last_failure = a.describe(arr)
            continue
        return flag
    raise FlagError(
        f"no valid flag after {rounds} rounds (seed {seed}); "
        f"last failure: {last_failure}"
    )
