"""Cycle pairing combinatorics.

Piece closures at level q define locally-finite (Borel-Moore) cycles
of dimension 2*dim - q; the dual compact q-cells are represented only
by their base points and enter through two pairing rules:

  * a piece closure meets the cell of another stratum at the same
    level exactly when the second chamber lies inside the first
    stratum's envelope, with intersection number (-1)^{q(dim-q)};
  * the logarithmic generator of an ordered independent q-tuple of
    hyperplanes integrates over a cell to its orientation sign when
    the cell's chamber lies inside the tuple's far chamber, else 0.

`os_to_bm` maps a generator to the signed sum of piece closures inside
the far chamber whose anchors are parallel to the tuple's flat;
`dual_basis_check` verifies that this class pairs against every cell
exactly as the generator does.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .arrangement import Flat
from .chambers import SubChamber, contained_in
from .errors import FlagError, InputError, LevelMismatch
from .exact_geom import (
    GT,
    LinearSubspace,
    Vector,
    rank,
    rref,
    solve_affine,
    strictly_feasible_point,
    vec,
    zero_vec,
)
from .stratify import Stratification, Stratum


@dataclass(frozen=True)
class IndexTuple:
    """An ordered tuple of distinct hyperplane indices; `flat` is the
    common intersection when the linear parts are independent."""

    indices: tuple[int, ...]
    independent: bool
    flat: Optional[Flat]

    @property
    def size(self) -> int:
        return len(self.indices)


def index_tuple(strat: Stratification, indices: Sequence[int]) -> IndexTuple:
    arr = strat.arrangement
    idx = tuple(indices)
    if len(set(idx)) != len(idx):
        raise InputError(f"repeated hyperplane index in {idx}")
    for i in idx:
        if not 0 <= i < arr.n:
            raise InputError(f"hyperplane index {i} out of range")
    if len(idx) > arr.dim or rank([arr.forms[i].linear for i in idx], arr.dim) != len(idx):
        return IndexTuple(idx, False, None)
    sol = solve_affine([arr.forms[i] for i in idx], arr.dim)
    assert sol is not None  # independent linear parts always intersect
    support = frozenset(
        i
        for i, f in enumerate(arr.forms)
        if f.evaluate(sol.point) == 0
        and all(f.linear_value(b) == 0 for b in sol.directions.basis)
    )
    flat = strat.poset.by_support.get(support)
    assert flat is not None
    return IndexTuple(idx, True, flat)


def far_chamber(strat: Stratification, it: IndexTuple) -> SubChamber:
    """The unique chamber of the subarrangement on the tuple that
    misses the flag subspace one level down.  Verifies on the way that
    the subarrangement has exactly 2^q chambers and that exactly one
    of them qualifies."""
    if not it.independent:
        raise InputError("far chamber requires an independent tuple")
    arr = strat.arrangement
    flag = strat.flag
    q = it.size
    if q == 0:
        return SubChamber((), ())
    idx = tuple(sorted(it.indices))
    cached = strat._far_cache.get(idx)
    if cached is not None:
        return cached
    feasible = []
    for signs in itertools.product((1, -1), repeat=q):
        system = [
            (arr.forms[i] if s > 0 else arr.forms[i].negated(), GT)
            for i, s in zip(idx, signs)
        ]
        if strictly_feasible_point(system, dim=arr.dim) is not None:
            feasible.append(signs)
    if len(feasible) != 2 ** q:
        raise FlagError(
            f"subarrangement on {idx} has {len(feasible)} chambers, expected {2 ** q}"
        )
    missing = []
    for signs in feasible:
        system = [
            (arr.forms[i] if s > 0 else arr.forms[i].negated(), GT)
            for i, s in zip(idx, signs)
        ] + flag.subspace_equalities(q - 1)
        if strictly_feasible_point(system, dim=arr.dim) is None:
            missing.append(signs)
    if len(missing) != 1:
        raise FlagError(
            f"{len(missing)} chambers of the subarrangement on {idx} miss the "
            f"level-{q - 1} flag subspace; the flag needs re-verification"
        )
    result = SubChamber(idx, missing[0])
    strat._far_cache[idx] = result
    return result


def _flag_coordinates(strat: Stratification, w: Vector, q: int, tuple_dirs: LinearSubspace) -> Vector:
    """Coordinates of w in the oriented frame of the level-q flag
    subspace, after projecting along the tuple's direction space.

    The direction spaces of F^q and of the tuple's flat are
    complementary by genericity, so w splits uniquely as
    w = w_flag + u with u in the tuple's directions and w_flag killed
    by the higher flag forms; the coordinates of w_flag are the values
    of the first q flag linear parts."""
    flag = strat.flag
    dim = strat.dim
    basis = tuple_dirs.basis
    k = len(basis)
    if k:
        # Solve the (dim - q) x k system for u's coefficients.
        rows = []
        for f in flag.forms[q:]:
            rows.append([f.linear_value(b) for b in basis] + [f.linear_value(w)])
        reduced, pivots = rref(rows)
        if len(pivots) != k or k in pivots:
            raise FlagError("flag and tuple directions are not complementary")
        coeffs = [Fraction(0)] * k
        for row, p in zip(reduced, pivots):
            coeffs[p] = row[k]
        u = zero_vec(dim)
        for c, b in zip(coeffs, basis):
            u = tuple(a + c * bb for a, bb in zip(u, b))
        w = tuple(a - b for a, b in zip(w, u))
    return tuple(flag.forms[j].linear_value(w) for j in range(q))


def _det_sign(cols: Sequence[Vector]) -> int:
    n = len(cols)
    mat = [[cols[j][i] for j in range(n)] for i in range(n)]
    sign = 1
    for c in range(n):
        pivot = next((r for r in range(c, n) if mat[r][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            mat[c], mat[pivot] = mat[pivot], mat[c]
            sign = -sign
        if mat[c][c] < 0:
            sign = -sign
        pv = mat[c][c]
        for r in range(c + 1, n):
            if mat[r][c] != 0:
                f = mat[r][c] / pv
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
    return sign


def orientation_sign(strat: Stratification, it: IndexTuple) -> int:
    """Sign of the ordered tuple: 0 when dependent; otherwise the sign
    of the determinant of the inward normals (pointing into the far
    chamber), projected to the level-q flag frame."""
    if not it.independent:
        return 0
    q = it.size
    if q == 0:
        return 1
    arr = strat.arrangement
    fc = far_chamber(strat, it)
    cols = []
    for i in it.indices:
        w = arr.forms[i].linear
        if fc.sign_of(i) < 0:
            w = tuple(-c for c in w)
        cols.append(_flag_coordinates(strat, w, q, it.flat.direction))
    return _det_sign(cols)


def _cell_sign(dim: int, q: int) -> int:
    return -1 if (q * (dim - q)) % 2 else 1


def pair_piece_cell(strat: Stratification, a: Stratum, b: Stratum) -> int:
    """Intersection number of the piece closure of `a` with the dual
    cell of `b` (same level): (+/-1)^{q(dim-q)} when b's chamber lies
    in a's envelope, else 0."""
    if a.level != b.level:
        raise LevelMismatch(f"pairing across levels {a.level} and {b.level}")
    if not contained_in(b.chamber, a.envelope):
        return 0
    return _cell_sign(strat.dim, a.level)


def pair_form_cell(strat: Stratification, b: Stratum, it: IndexTuple) -> int:
    """Integral of the tuple's logarithmic generator over the dual
    cell of `b`: the orientation sign when b's chamber lies in the far
    chamber, else 0."""
    if it.size != b.level:
        raise LevelMismatch(
            f"tuple of size {it.size} paired with a level-{b.level} cell"
        )
    eps = orientation_sign(strat, it)
    if eps == 0:
        return 0
    if not contained_in(b.chamber, far_chamber(strat, it)):
        return 0
    return eps


@dataclass
class BMClass:
    """Integer combination of level-q piece closures, keyed by chamber
    index."""

    level: int
    coefficients: dict[int, int]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients.values())

    def to_dict(self, strat: Stratification) -> dict:
        return {
            "level": self.level,
            "coefficients": {
                str(k): v for k, v in sorted(self.coefficients.items())
            },
        }


def os_to_bm(strat: Stratification, it: IndexTuple) -> BMClass:
    """Image of an ordered tuple's logarithmic generator in the cycle
    basis: coefficient (+/-1)^{q(dim-q)} * sign on the level-q strata
    inside the far chamber whose anchor directions equal the tuple
    flat's direction; the zero class for dependent tuples."""
    q = it.size
    eps = orientation_sign(strat, it)
    if eps == 0:
        return BMClass(q, {})
    fc = far_chamber(strat, it)
    coeff = _cell_sign(strat.dim, q) * eps
    coefficients = {
        s.index: coeff
        for s in strat.at_level(q)
        if contained_in(s.chamber, fc)
        and s.anchor.direction == it.flat.direction
    }
    return BMClass(q, coefficients)


def dual_basis_check(
    strat: Stratification, it: IndexTuple
) -> tuple[bool, Optional[Stratum]]:
    """The defining identity of the correspondence: the mapped class
    pairs against every same-level cell exactly as the generator does.
    Returns (ok, first violating stratum)."""
    q = it.size
    cls = os_to_bm(strat, it)
    for b in strat.at_level(q):
        lhs = sum(
            coeff * pair_piece_cell(strat, strat.by_chamber[idx], b)
            for idx, coeff in cls.coefficients.items()
        )
        rhs = pair_form_cell(strat, b, it)
        if lhs != rhs:
            return False, b
    return True, None


@dataclass
class PairingMatrix:
    level: int
    chamber_order: tuple[int, ...]  # chamber indices, stratification order
    entries: tuple[tuple[int, ...], ...]  # rows: pieces, columns: cells

    def is_triangular(self) -> bool:
        return all(
            self.entries[i][j] == 0
            for i in range(len(self.chamber_order))
            for j in range(i)
        )

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(len(self.chamber_order)))

    def determinant(self) -> int:
        n = len(self.chamber_order)
        if n == 0:
            return 1
        mat = [[Fraction(x) for x in row] for row in self.entries]
        det = Fraction(1)
        for c in range(n):
            pivot = next((r for r in range(c, n) if mat[r][c] != 0), None)
            if pivot is None:
                return 0
            if pivot != c:
                mat[c], mat[pivot] = mat[pivot], mat[c]
                det = -det
            det *= mat[c][c]
            for r in range(c + 1, n):
                if mat[r][c] != 0:
                    f = mat[r][c] / mat[c][c]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
        assert det.denominator == 1
        return int(det)

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "chamber_order": list(self.chamber_order),
            "entries": [list(r) for r in self.entries],
            "triangular": self.is_triangular(),
            "determinant": self.determinant(),
        }


def pairing_matrix(strat: Stratification, q: int) -> PairingMatrix:
    """All piece/cell intersection numbers at one level, rows and
    columns in stratification (ascending height) order."""
    level = strat.at_level(q)
    entries = tuple(
        tuple(pair_piece_cell(strat, a, b) for b in level) for a in level
    )
    return PairingMatrix(q, tuple(s.index for s in level), entries)


def concurrent_triples(strat: Stratification) -> Iterator[tuple[int, int, int]]:
    """Ordered triples of distinct hyperplanes through a common
    codimension-2 flat (then automatically pairwise independent)."""
    seen = set()
    for X in strat.poset.flats:
        if strat.poset.codim(X) != 2:
            continue
        for triple in itertools.combinations(sorted(X.support), 3):
            if triple not in seen:
                seen.add(triple)
                yield triple


def os_relation_pairings(
    strat: Stratification, i: int, j: int, k: int
) -> list[tuple[int, int]]:
    """Pairings of the three-term alternating combination of a
    concurrent triple against every level-2 cell; all must vanish.
    Returns the nonzero (cell chamber index, value) pairs."""
    classes = [
        (1, os_to_bm(strat, index_tuple(strat, (i, j)))),
        (-1, os_to_bm(strat, index_tuple(strat, (i, k)))),
        (1, os_to_bm(strat, index_tuple(strat, (j, k)))),
    ]
    combined: dict[int, int] = {}
    for sign, cls in classes:
        for idx, c in cls.coefficients.items():
            combined[idx] = combined.get(idx, 0) + sign * c
    out = []
    for b in strat.at_level(2):
        val = sum(
            coeff * pair_piece_cell(strat, strat.by_chamber[idx], b)
            for idx, coeff in combined.items()
        )
        if val != 0:
            out.append((b.index, val))
    return out
