"""Built-in example arrangements with verified flags."""

from __future__ import annotations

from .arrangement import Arrangement
from .errors import InputError
from .exact_geom import AffineForm
from .flag import Flag

FIXTURE_NAMES = ("point-in-line", "three-lines")


def load_fixture(name: str) -> tuple[Arrangement, Flag]:
    """Named fixture arrangements.

    point-in-line: the origin in R^1, flag point at -1 with increasing
    height coordinate.

    three-lines: one line of slope +1 crossing two parallel lines of
    slope -1 in R^2; the flag line is the horizontal axis and the flag
    point sits left of all three crossings.  The level-1 chambers walk
    rightward along the axis between crossings; the two level-2
    chambers are the wedges above, anchored at the two intersection
    points.
    """
    if name == "point-in-line":
        arr = Arrangement(1, (AffineForm.make([1], 0),))
        flag = Flag((AffineForm.make([1], 1),))
        return arr, flag
    if name == "three-lines":
        arr = Arrangement(
            2,
            (
                AffineForm.make([1, -1], -4),  # slope +1, axis crossing x = 4
                AffineForm.make([1, 1], -6),   # slope -1, axis crossing x = 6
                AffineForm.make([1, 1], -7),   # slope -1, axis crossing x = 7
            ),
        )
        flag = Flag((AffineForm.make([1, 2], -2), AffineForm.make([0, 1], 0)))
        return arr, flag
    raise InputError(f"unknown fixture {name!r}; choose from {FIXTURE_NAMES}")


# Sign patterns of the three-lines chambers by their role in the
# stratification (level, then ascending height).
THREE_LINES_ROLES = {
    (-1, -1, -1): "level-0 chamber containing the flag point",
    (1, -1, -1): "first level-1 chamber (anchored at H1)",
    (1, 1, -1): "second level-1 chamber (anchored at H2)",
    (1, 1, 1): "third level-1 chamber (anchored at H3)",
    (-1, 1, -1): "first level-2 chamber (anchored at H1&H2)",
    (-1, 1, 1): "second level-2 chamber (anchored at H1&H3)",
}
