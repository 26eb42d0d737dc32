"""The semialgebraic pieces of the complexified complement.

A complex point is stored as a pair (x, v) of rational vectors for
x + sqrt(-1) v.  The piece of a stratum C consists of the points whose
imaginary part lies in the direction space of C's anchor flat and is
transverse to every hyperplane crossed by the segment from C's base
point to x.  Membership, the constructive classifier, and the exact
verification harnesses (disjoint cover, star-shapedness, real parts)
all live here.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .arrangement import sep_points
from .chambers import OnBoundary, SubChamber, contained_in, subchamber_of_point
from .errors import FlagError, InternalDisagreement, NotInComplement
from .exact_geom import (
    GE,
    GT,
    OPTIMAL,
    Vector,
    lp_optimize,
    strictly_feasible_point,
    vec,
    zero_vec,
)
from .stratify import Stratification, Stratum


@dataclass(frozen=True)
class GaussPoint:
    x: Vector
    v: Vector

    @staticmethod
    def make(x, v) -> "GaussPoint":
        return GaussPoint(vec(x), vec(v))

    def to_dict(self) -> dict:
        return {"x": [str(c) for c in self.x], "v": [str(c) for c in self.v]}

    @staticmethod
    def from_dict(d: dict) -> "GaussPoint":
        return GaussPoint.make(d["x"], d["v"])


@dataclass(frozen=True)
class PieceAssignment:
    point: GaussPoint
    chamber_index: int
    witness: dict


def in_complement(strat: Stratification, p: GaussPoint) -> bool:
    """Whether x + iv avoids every complexified hyperplane."""
    arr = strat.arrangement
    for f in arr.forms:
        if f.evaluate(p.x) == 0 and f.linear_value(p.v) == 0:
            return False
    return True


def in_piece(strat: Stratification, stratum: Stratum, p: GaussPoint) -> bool:
    """Membership predicate of a single piece: v inside the anchor
    direction space, and transverse to every separating hyperplane of
    [base point, x]."""
    arr = strat.arrangement
    if not stratum.anchor.direction.contains(p.v):
        return False
    for i in sep_points(arr, stratum.base_point, p.x):
        if arr.forms[i].linear_value(p.v) == 0:
            return False
    return True


def _value_profile(strat: Stratification, p: GaussPoint) -> tuple[list, list]:
    arr = strat.arrangement
    vals_x = [f.evaluate(p.x) for f in arr.forms]
    vals_v = [f.linear_value(p.v) for f in arr.forms]
    return vals_x, vals_v


def _brute_force_piece(
    strat: Stratification, p: GaussPoint, profile=None
) -> list[Stratum]:
    """All strata whose piece contains p: the same predicate as
    `in_piece`, with each form evaluated once per point.

    Membership in the anchor direction space is the vanishing of the
    linear values on the anchor support (the direction space is the
    common kernel of those linear parts), and a hyperplane separates x
    from the base point exactly when the sign of its value at x
    differs from the chamber sign (base points sit strictly inside
    their chambers)."""
    arr = strat.arrangement
    vals_x, vals_v = profile if profile is not None else _value_profile(strat, p)
    sx = [0 if v == 0 else (1 if v > 0 else -1) for v in vals_x]
    nonzero_v = [v != 0 for v in vals_v]
    indices = range(arr.n)
    out = []
    for s in strat.strata:
        if any(nonzero_v[i] for i in s.anchor.support):
            continue
        signs = s.chamber.signs
        if all(nonzero_v[i] or sx[i] == signs[i] for i in indices):
            out.append(s)
    return out


def _constructive_piece(
    strat: Stratification, p: GaussPoint, profile=None
) -> tuple[Stratum, dict]:
    """The classifier from the covering argument: restrict to the
    hyperplanes parallel to v, take the subchamber around x, find its
    level and minimizing vertex, and pick the stratum anchored at the
    flat of all hyperplanes through that vertex.

    Cached per (parallel set, subchamber signs); repeated queries with
    the same combinatorial data cost only sign evaluations.
    """
    arr = strat.arrangement
    flag = strat.flag
    vals_x, vals_v = profile if profile is not None else _value_profile(strat, p)
    par = frozenset(i for i in range(arr.n) if vals_v[i] == 0)
    idx = tuple(sorted(par))
    if any(vals_x[i] == 0 for i in idx):
        # x on a hyperplane parallel to v would put the point on the
        # complexified hyperplane; excluded by the complement check.
        raise AssertionError("complement point on a parallel hyperplane")
    sub = SubChamber(idx, tuple(1 if vals_x[i] > 0 else -1 for i in idx))
    key = (par, sub.signs)
    cached = strat._classify_cache.get(key)
    if cached is not None:
        return cached

    system = [
        (arr.forms[i] if s > 0 else arr.forms[i].negated(), GE)
        for i, s in zip(sub.indices, sub.signs)
    ]
    # The open subchamber meets a flag subspace iff one of the full
    # chambers inside it does: a trace point perturbs off the full
    # arrangement's walls without leaving the open set, because no flag
    # subspace lies inside a hyperplane (genericity).
    level = min(
        (
            s.level
            for s in strat.strata
            if all(s.chamber.signs[i] == sg for i, sg in zip(sub.indices, sub.signs))
        ),
        default=None,
    )
    assert level is not None, "a subchamber always contains a full chamber"

    if level == 0:
        vertex = flag.base_vertex()
    else:
        res = lp_optimize(
            flag.height_form(level), system + flag.subspace_equalities(level), "min"
        )
        if res.status != OPTIMAL:
            raise FlagError("unbounded height on a parallel subchamber trace")
        vertex = res.point
    support = frozenset(
        i for i, f in enumerate(arr.forms) if f.evaluate(vertex) == 0
    )
    flat = strat.poset.by_support.get(support)
    if flat is None:
        raise FlagError("vertex support is not a flat; flag defect")
    candidates = [
        s
        for s in strat.at_level(level)
        if s.anchor.support == support and contained_in(s.chamber, sub)
    ]
    if len(candidates) != 1:
        raise InternalDisagreement(
            f"constructive route found {len(candidates)} candidate strata "
            f"for parallel set {sorted(par)} and signs {sub.signs}"
        )
    witness = {
        "parallel": sorted(par),
        "subchamber_signs": list(sub.signs),
        "level": level,
        "vertex": [str(c) for c in vertex],
        "anchor_support": sorted(support),
        "direction_contains_v": flat.direction.contains(p.v),
    }
    result = (candidates[0], witness)
    if witness["direction_contains_v"]:
        strat._classify_cache[key] = result
    return result


def classify(strat: Stratification, p: GaussPoint) -> PieceAssignment:
    """Unique piece of a complement point, computed independently by
    brute force over all pieces and by the constructive route; any
    disagreement raises instead of being resolved silently."""
    if not in_complement(strat, p):
        raise NotInComplement(f"{p} lies on a complexified hyperplane")
    brute = _brute_force_piece(strat, p)
    if len(brute) != 1:
        raise InternalDisagreement(
            f"{len(brute)} pieces claim {p}; the partition property failed"
        )
    winner = brute[0]
    constructed, cached_witness = _constructive_piece(strat, p)
    witness = dict(cached_witness)
    if not witness["direction_contains_v"]:
        # The covering argument silently assumes every hyperplane
        # through the minimizing vertex is parallel to v; if that ever
        # fails we keep the brute-force answer and say so.
        witness["fallback"] = "vertex flat does not absorb v"
        constructed = winner
    if constructed.index != winner.index:
        raise InternalDisagreement(
            f"routes disagree on {p}: brute force {winner.index}, "
            f"constructive {constructed.index}"
        )
    arr = strat.arrangement
    sep = sorted(sep_points(arr, winner.base_point, p.x))
    witness.update(
        {
            "sep": sep,
            "sep_transversality": {
                str(i): str(arr.forms[i].linear_value(p.v)) for i in sep
            },
            "direction_coefficients": [
                str(c) for c in (winner.anchor.direction.coordinates(p.v) or ())
            ],
        }
    )
    return PieceAssignment(p, winner.index, witness)


# ---------------------------------------------------------------------------
# Samplers.
# ---------------------------------------------------------------------------


def sample_box(strat: Stratification) -> int:
    return 16 * (1 + int(strat.arrangement.max_coefficient()))


def sample_gauss_point(
    strat: Stratification,
    rng: random.Random,
    box: Optional[int] = None,
    direction_flat=None,
) -> tuple[GaussPoint, int]:
    """Random rational complement point: integer coordinates first,
    denominators 2^k on the k-th rejection.  When `direction_flat` is
    given, v is a random integer combination of that flat's direction
    basis, which exercises the pieces whose imaginary parts are
    constrained (a plain uniform v is almost never parallel to
    anything).  Returns (point, rejections)."""
    if box is None:
        box = sample_box(strat)
    dim = strat.dim
    rejections = 0
    while True:
        denom = 2 ** min(rejections, 12)
        x = vec([Fraction(rng.randint(-box * denom, box * denom), denom) for _ in range(dim)])
        if direction_flat is None:
            v = vec([Fraction(rng.randint(-box * denom, box * denom), denom) for _ in range(dim)])
        else:
            v = zero_vec(dim)
            for b in direction_flat.direction.basis:
                c = rng.randint(-9, 9)
                v = tuple(a + c * bb for a, bb in zip(v, b))
        p = GaussPoint(x, v)
        if in_complement(strat, p):
            return p, rejections
        rejections += 1


def direction_certificate(
    strat: Stratification, stratum: Stratum, avoid: Sequence[int]
) -> Vector:
    """A vector in the anchor direction space transverse to each listed
    hyperplane.  Exists whenever no listed hyperplane is parallel to
    the anchor; found by scanning a small grid of basis combinations
    (a nonzero product of m linear forms cannot vanish on all of
    {0..m}^dim)."""
    arr = strat.arrangement
    basis = stratum.anchor.direction.basis
    forms = [arr.forms[i] for i in avoid]
    for f, i in zip(forms, avoid):
        if all(f.linear_value(b) == 0 for b in basis):
            raise ValueError(
                f"hyperplane {i} is parallel to the anchor; no transverse "
                "direction exists"
            )
    if not forms:
        if not basis:
            return zero_vec(arr.dim)
        return basis[0]
    rng = range(len(forms) + 1)
    for coeffs in itertools.product(rng, repeat=len(basis)):
        v = zero_vec(arr.dim)
        for c, b in zip(coeffs, basis):
            if c:
                v = tuple(a + c * bb for a, bb in zip(v, b))
        if all(f.linear_value(v) != 0 for f in forms):
            return v
    raise AssertionError("grid search missed a transverse direction")


def sample_piece_member(
    strat: Stratification,
    stratum: Stratum,
    rng: random.Random,
    box: Optional[int] = None,
) -> GaussPoint:
    """Random member of one piece: draw x until its parallel-class
    signs match the envelope (then a transverse v exists), then draw
    integer coefficients against the anchor basis until v clears every
    separating hyperplane."""
    arr = strat.arrangement
    if box is None:
        box = sample_box(strat)
    env = stratum.envelope
    basis = stratum.anchor.direction.basis
    tries = 0
    while True:
        denom = 2 ** min(tries // 8, 10)
        tries += 1
        x = vec(
            [Fraction(rng.randint(-box * denom, box * denom), denom) for _ in range(arr.dim)]
        )
        sub = subchamber_of_point(arr, env.indices, x)
        if isinstance(sub, OnBoundary) or sub.signs != env.signs:
            continue
        sep = sep_points(arr, stratum.base_point, x)
        if not basis:
            if sep:
                continue
            return GaussPoint(x, zero_vec(arr.dim))
        for _ in range(64):
            v = zero_vec(arr.dim)
            for b in basis:
                c = rng.randint(-len(sep) - 2, len(sep) + 2)
                v = tuple(a + c * bb for a, bb in zip(v, b))
            if all(arr.forms[i].linear_value(v) != 0 for i in sep):
                return GaussPoint(x, v)


# ---------------------------------------------------------------------------
# Verification harnesses.
# ---------------------------------------------------------------------------


@dataclass
class PartitionReport:
    samples: int
    rejected: int
    counts: dict[int, int] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "rejected": self.rejected,
            "counts": {str(k): v for k, v in sorted(self.counts.items())},
            "violations": self.violations,
            "ok": self.ok,
        }


def verify_partition(
    strat: Stratification, samples: int, seed: int, structured_every: int = 3
) -> PartitionReport:
    """Samples complement points and checks that exactly one piece
    claims each and that the constructive classifier agrees; returns
    counterexamples instead of raising.  Every `structured_every`-th
    sample draws its imaginary part from a random flat's direction
    space so constrained pieces get covered too."""
    rng = random.Random(seed)
    report = PartitionReport(samples=samples, rejected=0)
    for k in range(samples):
        flat = None
        if structured_every and k % structured_every == structured_every - 1:
            flat = rng.choice(strat.poset.flats)
        p, rej = sample_gauss_point(strat, rng, direction_flat=flat)
        report.rejected += rej
        profile = _value_profile(strat, p)
        members = _brute_force_piece(strat, p, profile)
        if len(members) != 1:
            report.violations.append(
                {
                    "point": p.to_dict(),
                    "kind": "membership-count",
                    "pieces": [s.index for s in members],
                }
            )
            continue
        try:
            constructed, witness = _constructive_piece(strat, p, profile)
            if not witness["direction_contains_v"]:
                constructed = members[0]
        except InternalDisagreement as e:
            report.violations.append(
                {"point": p.to_dict(), "kind": "route-disagreement", "detail": str(e)}
            )
            continue
        if constructed.index != members[0].index:
            report.violations.append(
                {
                    "point": p.to_dict(),
                    "kind": "route-disagreement",
                    "brute": members[0].index,
                    "constructive": constructed.index,
                }
            )
            continue
        report.counts[members[0].index] = report.counts.get(members[0].index, 0) + 1
    return report


def verify_star_shaped(strat: Stratification, stratum: Stratum, p: GaussPoint) -> bool:
    """Exact check that the straight segment from the base point to
    x + iv stays inside the complement.

    For each hyperplane, the imaginary part of its value along the
    segment is t * <linear, v>; when that slope is nonzero the only
    candidate parameter is t = 0 (the base point, never on a wall);
    otherwise the hyperplane is hit iff the real affine value changes
    sign or vanishes at t = 1.
    """
    if not in_piece(strat, stratum, p):
        raise ValueError("segment check requires a member of the piece")
    arr = strat.arrangement
    for f in arr.forms:
        imag_slope = f.linear_value(p.v)
        a = f.evaluate(stratum.base_point)
        b = f.evaluate(p.x)
        if imag_slope != 0:
            if a == 0:
                return False
            continue
        # Imaginary part identically zero: real root in [0, 1]?
        if a == b:
            if a == 0:
                return False
            continue
        t = a / (a - b)
        if 0 <= t <= 1:
            return False
    return True


def real_part_piece(strat: Stratification, stratum: Stratum, x: Sequence[Fraction]) -> bool:
    """Whether the real point x occurs as the real part of some member
    of the piece, i.e. x lies in the stratum's envelope.  Points on a
    parallel-class hyperplane are rejected as boundary input."""
    arr = strat.arrangement
    env = stratum.envelope
    sub = subchamber_of_point(arr, env.indices, x)
    if isinstance(sub, OnBoundary):
        raise ValueError(
            f"point lies on hyperplanes {sorted(sub.vanishing)} of the "
            "parallel class; real-part membership is undefined there"
        )
    return sub.signs == env.signs


def real_part_certificate(
    strat: Stratification, stratum: Stratum, x: Sequence[Fraction]
) -> GaussPoint:
    """A piece member above x, for x in the envelope: v is any anchor
    direction transverse to the hyperplanes separating x from the base
    point (none of which is parallel to the anchor)."""
    if not real_part_piece(strat, stratum, x):
        raise ValueError("point is not in the envelope; no member exists above it")
    sep = sorted(sep_points(strat.arrangement, stratum.base_point, x))
    v = direction_certificate(strat, stratum, sep)
    return GaussPoint(vec(x), v)
