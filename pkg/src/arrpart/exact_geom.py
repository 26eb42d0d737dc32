"""Exact rational linear algebra and linear programming.

Every geometric decision in this package (sign tests, feasibility,
minima) reduces to the operations here, carried out over `Fraction`
with no floating point anywhere.  The LP solver is a two-phase
textbook simplex with Bland's rule, which terminates on every input;
problem sizes are tiny so simplicity beats speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionError

try:  # fast exact rationals for the simplex inner loop
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover
    _mpq = None

Vector = tuple[Fraction, ...]

# Constraint relations.
GE = ">="
EQ = "="
GT = ">"

# LP statuses.
OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"

# Interior point statuses.
POINT = "point"
EMPTY_IN_BOX = "empty-in-box"
EMPTY = "empty"


def vec(values: Iterable) -> Vector:
    """Coerce an iterable of numbers/strings into a rational vector."""
    return tuple(Fraction(v) for v in values)


def zero_vec(dim: int) -> Vector:
    return (Fraction(0),) * dim


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise DimensionError(f"dot of lengths {len(a)} and {len(b)}")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add_vec(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def sub_vec(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def scale_vec(c: Fraction, a: Vector) -> Vector:
    return tuple(c * x for x in a)


def format_fraction(f: Fraction) -> str:
    """Canonical string form: "p/q", or "p" when q = 1."""
    return str(f)


def parse_fraction(s) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class AffineForm:
    """A rational affine functional  x -> <linear, x> + constant."""

    linear: Vector
    constant: Fraction

    @staticmethod
    def make(linear: Iterable, constant=0) -> "AffineForm":
        return AffineForm(vec(linear), Fraction(constant))

    @property
    def dim(self) -> int:
        return len(self.linear)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        return dot(self.linear, point) + self.constant

    def linear_value(self, direction: Sequence[Fraction]) -> Fraction:
        """Value of the linear part only (derivative along `direction`)."""
        return dot(self.linear, direction)

    def is_zero(self) -> bool:
        return self.constant == 0 and all(c == 0 for c in self.linear)

    def has_zero_linear(self) -> bool:
        return all(c == 0 for c in self.linear)

    def negated(self) -> "AffineForm":
        return AffineForm(tuple(-c for c in self.linear), -self.constant)

    def to_dict(self) -> dict:
        return {
            "linear": [format_fraction(c) for c in self.linear],
            "constant": format_fraction(self.constant),
        }

    @staticmethod
    def from_dict(d: dict) -> "AffineForm":
        return AffineForm(vec(d["linear"]), Fraction(d["constant"]))


def proportional_forms(a: AffineForm, b: AffineForm) -> bool:
    """True iff a = lambda * b for some nonzero rational lambda
    (then the two forms cut out the same affine hyperplane)."""
    if a.dim != b.dim:
        raise DimensionError("forms over different ambient dimensions")
    ca = list(a.linear) + [a.constant]
    cb = list(b.linear) + [b.constant]
    lam = None
    for x, y in zip(ca, cb):
        if (x == 0) != (y == 0):
            return False
        if x != 0:
            r = x / y
            if lam is None:
                lam = r
            elif r != lam:
                return False
    return lam is not None


# ---------------------------------------------------------------------------
# Gaussian elimination: rank, RREF, linear subspaces, affine solution sets.
# ---------------------------------------------------------------------------


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(vectors: Sequence[Sequence[Fraction]], dim: Optional[int] = None) -> int:
    """Exact rank of a list of rational vectors."""
    vectors = [tuple(v) for v in vectors]
    if dim is not None:
        for v in vectors:
            if len(v) != dim:
                raise DimensionError(f"vector of length {len(v)}, expected {dim}")
    elif vectors:
        d = len(vectors[0])
        for v in vectors:
            if len(v) != d:
                raise DimensionError("vectors of mixed lengths")
    if not vectors:
        return 0
    _, pivots = rref(vectors)
    return len(pivots)


@dataclass(frozen=True)
class LinearSubspace:
    """A linear subspace of R^d given by a canonical (RREF) basis.

    The canonical basis makes equality of subspaces plain tuple
    equality.
    """

    ambient: int
    basis: tuple[Vector, ...]

    @staticmethod
    def span(vectors: Sequence[Sequence[Fraction]], ambient: int) -> "LinearSubspace":
        vectors = [vec(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise DimensionError("spanning vector of wrong length")
        if not vectors:
            return LinearSubspace(ambient, ())
        reduced, _ = rref(vectors)
        return LinearSubspace(ambient, tuple(tuple(r) for r in reduced))

    @staticmethod
    def full(ambient: int) -> "LinearSubspace":
        eye = tuple(
            tuple(Fraction(1 if i == j else 0) for j in range(ambient))
            for i in range(ambient)
        )
        return LinearSubspace(ambient, eye)

    @staticmethod
    def zero(ambient: int) -> "LinearSubspace":
        return LinearSubspace(ambient, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[Fraction]) -> bool:
        v = list(v)
        if len(v) != self.ambient:
            raise DimensionError("membership test with wrong vector length")
        for row in self.basis:
            lead = next(i for i, x in enumerate(row) if x != 0)
            if v[lead] != 0:
                f = v[lead]
                v = [x - f * y for x, y in zip(v, row)]
        return all(x == 0 for x in v)

    def coordinates(self, v: Sequence[Fraction]) -> Optional[Vector]:
        """Coefficients of v against the canonical basis, or None."""
        v = list(v)
        coeffs = []
        for row in self.basis:
            lead = next(i for i, x in enumerate(row) if x != 0)
            f = v[lead]
            coeffs.append(f)
            if f != 0:
                v = [x - f * y for x, y in zip(v, row)]
        if any(x != 0 for x in v):
            return None
        return tuple(coeffs)

    def is_subspace_of(self, other: "LinearSubspace") -> bool:
        return all(other.contains(b) for b in self.basis)


@dataclass(frozen=True)
class AffineSolution:
    """A nonempty affine solution set: particular point + directions."""

    point: Vector
    directions: LinearSubspace

    @property
    def dim(self) -> int:
        return self.directions.dim


def solve_affine(forms: Sequence[AffineForm], dim: int) -> Optional[AffineSolution]:
    """Exact common zero set of affine forms; None when inconsistent."""
    for f in forms:
        if f.dim != dim:
            raise DimensionError("form over wrong ambient dimension")
    if not forms:
        return AffineSolution(zero_vec(dim), LinearSubspace.full(dim))
    aug = [list(f.linear) + [-f.constant] for f in forms]
    reduced, pivots = rref(aug)
    if dim in pivots:
        return None
    point = [Fraction(0)] * dim
    for row, p in zip(reduced, pivots):
        point[p] = row[dim]
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * dim
        v[fc] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[fc]
        basis.append(tuple(v))
    return AffineSolution(tuple(point), LinearSubspace.span(basis, dim))


# ---------------------------------------------------------------------------
# Exact simplex (two phases, Bland's rule).
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Optional[Fraction] = None
    point: Optional[Vector] = None


def _q(x) -> "Fraction":
    """Tableau scalar: gmpy2.mpq when available, Fraction otherwise."""
    return _mpq(x.numerator, x.denominator) if _mpq is not None else Fraction(x)


def _q_zero():
    return _mpq(0) if _mpq is not None else Fraction(0)


def _q_one(negative: bool = False):
    v = _mpq(-1 if negative else 1) if _mpq is not None else Fraction(-1 if negative else 1)
    return v


def _from_q(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _pivot(tableau: list[list[Fraction]], cost: list[Fraction], basis: list[int], row: int, col: int) -> None:
    pv = tableau[row][col]
    tableau[row] = [x / pv for x in tableau[row]]
    for i in range(len(tableau)):
        if i != row and tableau[i][col] != 0:
            f = tableau[i][col]
            tableau[i] = [x - f * y for x, y in zip(tableau[i], tableau[row])]
    if cost[col] != 0:
        f = cost[col]
        for j in range(len(cost)):
            cost[j] -= f * tableau[row][j]
    basis[row] = col


def _run_simplex(tableau: list[list[Fraction]], cost: list[Fraction], basis: list[int]) -> str:
    """Minimize; `cost` is the reduced-cost row (last entry = -value).
    Bland's rule throughout, so this always terminates."""
    ncols = len(cost) - 1
    while True:
        enter = next((j for j in range(ncols) if cost[j] < 0), None)
        if enter is None:
            return OPTIMAL
        leave = None
        best = None
        for i, row in enumerate(tableau):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return UNBOUNDED
        _pivot(tableau, cost, basis, leave, enter)


def lp_optimize(
    objective: AffineForm,
    constraints: Sequence[tuple[AffineForm, str]],
    sense: str = "min",
) -> LPResult:
    """Exact rational LP:  optimize objective(x) subject to
    form(x) >= 0  or  form(x) = 0 per constraint.

    Free variables are split into differences of nonnegatives; a slack
    turns every inequality into an equation; phase 1 runs on a full
    artificial basis.
    """
    dim = objective.dim
    for f, rel in constraints:
        if f.dim != dim:
            raise DimensionError("constraint over wrong ambient dimension")
        if rel not in (GE, EQ):
            raise ValueError(f"unsupported relation {rel!r}")
    nslack = sum(1 for _, rel in constraints if rel == GE)
    ncols = 2 * dim + nslack
    rows: list[list] = []
    slack_at = 0
    for f, rel in constraints:
        row = [_q_zero()] * (ncols + 1)
        for j, a in enumerate(f.linear):
            row[j] = _q(a)
            row[dim + j] = -row[j]
        if rel == GE:
            row[2 * dim + slack_at] = _q_one(negative=True)
            slack_at += 1
        row[-1] = -_q(f.constant)
        if row[-1] < 0:
            row = [-x for x in row]
        rows.append(row)

    m = len(rows)
    # Phase 1: artificial basis.
    tableau = [
        r[:-1] + [_q_one() if i == k else _q_zero() for i in range(m)] + [r[-1]]
        for k, r in enumerate(rows)
    ]
    basis = [ncols + k for k in range(m)]
    cost1 = [_q_zero()] * (ncols + m + 1)
    for j in range(ncols):
        cost1[j] = -sum(row[j] for row in tableau)
    cost1[-1] = -sum(row[-1] for row in tableau)
    # (reduced costs of artificials are 0 in their own basis)
    status = _run_simplex(tableau, cost1, basis)
    assert status == OPTIMAL
    if -cost1[-1] != 0:
        return LPResult(INFEASIBLE)
    # Drive leftover artificials out of the basis, dropping redundant rows.
    keep = []
    for i in range(len(tableau)):
        if basis[i] < ncols:
            keep.append(i)
            continue
        col = next((j for j in range(ncols) if tableau[i][j] != 0), None)
        if col is None:
            continue  # redundant row
        _pivot(tableau, cost1, basis, i, col)
        keep.append(i)
    tableau = [tableau[i][:ncols] + [tableau[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]

    # Phase 2.
    minimize = sense == "min"
    obj = objective if minimize else objective.negated()
    c = [_q_zero()] * (ncols + 1)
    for j, a in enumerate(obj.linear):
        c[j] = _q(a)
        c[dim + j] = -c[j]
    cost2 = c[:]
    for i, b in enumerate(basis):
        if c[b] != 0:
            f = c[b]
            for j in range(ncols + 1):
                cost2[j] -= f * tableau[i][j]
    status = _run_simplex(tableau, cost2, basis)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    point = [_q_zero()] * dim
    for i, b in enumerate(basis):
        if b < dim:
            point[b] += tableau[i][-1]
        elif b < 2 * dim:
            point[b - dim] -= tableau[i][-1]
    x = tuple(_from_q(v) for v in point)
    return LPResult(OPTIMAL, objective.evaluate(x), x)


# ---------------------------------------------------------------------------
# Strict systems: relative interior points.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InteriorResult:
    status: str  # POINT, EMPTY_IN_BOX, or EMPTY
    point: Optional[Vector] = None


def _slack_lp(constraints: Sequence[tuple[AffineForm, str]], dim: int,
              box: Optional[Fraction]) -> LPResult:
    """Maximize the common slack t of the strict constraints, capped at
    t <= 1 so the LP is never unbounded; equalities pass through."""
    ext: list[tuple[AffineForm, str]] = []
    for f, rel in constraints:
        if rel == GT:
            ext.append((AffineForm(f.linear + (Fraction(-1),), f.constant), GE))
        elif rel == EQ:
            ext.append((AffineForm(f.linear + (Fraction(0),), f.constant), EQ))
        else:
            raise ValueError(f"unsupported relation {rel!r}")
    cap = AffineForm(zero_vec(dim) + (Fraction(-1),), Fraction(1))
    ext.append((cap, GE))
    if box is not None:
        for j in range(dim):
            e = [Fraction(0)] * (dim + 1)
            e[j] = Fraction(1)
            ext.append((AffineForm(tuple(e), box), GE))          # x_j + box >= 0
            ext.append((AffineForm(tuple(-c for c in e), box), GE))  # box - x_j >= 0
    t_obj = AffineForm(zero_vec(dim) + (Fraction(1),), Fraction(0))
    return lp_optimize(t_obj, ext, sense="max")


def _constraint_dim(constraints: Sequence[tuple[AffineForm, str]]) -> int:
    if not constraints:
        raise DimensionError("cannot infer ambient dimension from no constraints")
    return constraints[0][0].dim


def strictly_feasible_point(
    constraints: Sequence[tuple[AffineForm, str]], dim: Optional[int] = None
) -> Optional[Vector]:
    """A rational point satisfying every GT constraint strictly and
    every EQ constraint exactly, or None when no such point exists
    anywhere (a proof of emptiness, not a search failure)."""
    if dim is None:
        dim = _constraint_dim(constraints)
    res = _slack_lp(constraints, dim, box=None)
    if res.status == INFEASIBLE or (res.status == OPTIMAL and res.value <= 0):
        return None
    assert res.status == OPTIMAL
    return res.point[:dim]


def relative_interior_point(
    constraints: Sequence[tuple[AffineForm, str]],
    box,
    dim: Optional[int] = None,
) -> InteriorResult:
    """Point of the open set {GT strict, EQ exact} within [-box, box]^d,
    found by maximizing the minimum slack.  EMPTY_IN_BOX means the set
    may still be nonempty outside the box (caller may enlarge); EMPTY
    is a proof that the set is empty everywhere.
    """
    box = Fraction(box)
    if box <= 0:
        raise ValueError("box bound must be positive")
    if dim is None:
        dim = _constraint_dim(constraints)
    res = _slack_lp(constraints, dim, box=box)
    if res.status == OPTIMAL and res.value > 0:
        return InteriorResult(POINT, res.point[:dim])
    if strictly_feasible_point(constraints, dim) is None:
        return InteriorResult(EMPTY)
    return InteriorResult(EMPTY_IN_BOX)
