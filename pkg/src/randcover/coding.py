"""Symbol strings as nested dyadic cubes in the unit cube.

With alphabet size ``2**d``, contraction ``1/2`` and metric scale
``2*sqrt(d)``, a string picks one child cube per level: bit ``j`` of
``symbol - 1`` is the child offset in dimension ``j``.  Descending the
levels realizes the string as the intersection point of the nested cubes;
that map contracts distances (cube diameters match ball diameters), sends
cylinder measures to cube volumes exactly, and its inverse recovers the
unique depth-n cylinder over a given level-n cube.

Points are reported as exact lower corners of the deepest cube together
with the guaranteed error radius sqrt(d) * 2**-n (the cube diameter), so
no rounding enters until the caller wants floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConfigError
from .symbolic import CylinderWord, SpaceParams

_GAMMA_RTOL = 1e-12


def cube_space(d: int) -> SpaceParams:
    """Space parameters (b=2**d, rho=1/2, gamma=2*sqrt(d)) for dimension d."""
    if not 1 <= d <= 10:
        raise ConfigError(f"dimension must be in [1, 10], got {d}")
    return SpaceParams(b=2**d, rho=0.5, gamma=2.0 * math.sqrt(d))


@dataclass(frozen=True)
class DyadicCube:
    """Closed cube prod_j [coords_j * 2**-level, (coords_j+1) * 2**-level]."""

    d: int
    level: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.d < 1:
            raise ConfigError(f"dimension must be >= 1, got {self.d}")
        if self.level < 0:
            raise ConfigError(f"level must be >= 0, got {self.level}")
        if len(self.coords) != self.d:
            raise ConfigError("coords length must equal the dimension")
        top = 1 << self.level
        for c in self.coords:
            if not 0 <= c < top:
                raise ConfigError(
                    f"coordinate {c} outside [0, 2**{self.level})"
                )

    @property
    def side(self) -> Fraction:
        return Fraction(1, 1 << self.level)

    @property
    def diameter(self) -> float:
        return math.sqrt(self.d) * 2.0**-self.level

    def volume(self) -> Fraction:
        return self.side**self.d

    def lower_corner(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.float64) * 2.0**-self.level

    def parent(self) -> "DyadicCube":
        if self.level == 0:
            raise ConfigError("the unit cube has no parent")
        return DyadicCube(self.d, self.level - 1, tuple(c >> 1 for c in self.coords))

    def contains_cube(self, other: "DyadicCube") -> bool:
        if other.d != self.d or other.level < self.level:
            return False
        shift = other.level - self.level
        return all(oc >> shift == c for oc, c in zip(other.coords, self.coords))

    def to_json(self) -> dict:
        return {"d": self.d, "level": self.level, "coords": list(self.coords)}

    @staticmethod
    def from_json(obj: dict) -> "DyadicCube":
        return DyadicCube(int(obj["d"]), int(obj["level"]), tuple(obj["coords"]))


def subcube_enumeration(q: int, d: int) -> tuple[int, ...]:
    """Child-cube offset vector for symbol q: bit j of q-1, j=0 least significant."""
    if not 1 <= q <= (1 << d):
        raise ConfigError(f"symbol must lie in [1, {1 << d}], got {q}")
    return tuple((q - 1) >> j & 1 for j in range(d))


def symbol_for_offsets(offsets, d: int) -> int:
    """Inverse of :func:`subcube_enumeration`."""
    if len(offsets) != d:
        raise ConfigError("offset vector length must equal the dimension")
    q = 1
    for j, o in enumerate(offsets):
        if o not in (0, 1):
            raise ConfigError(f"offsets must be 0/1, got {o}")
        q += o << j
    return q


def _check_cube_params(space: SpaceParams, d: int) -> None:
    want = cube_space(d)
    gamma_ok = math.isclose(space.gamma, want.gamma, rel_tol=_GAMMA_RTOL)
    if space.b != want.b or space.rho != want.rho or not gamma_ok:
        raise ConfigError(
            f"cube coding in dimension {d} needs b={want.b}, rho=0.5, "
            f"gamma=2*sqrt({d}); got b={space.b}, rho={space.rho}, "
            f"gamma={space.gamma}"
        )


def _check_full_prefix(word: CylinderWord) -> None:
    if word.positions != tuple(range(1, word.depth + 1)):
        raise ConfigError(
            "cube coding needs a word over the full index set "
            "(positions 1..n with no gaps)"
        )


def encode_cube(word: CylinderWord, d: int) -> DyadicCube:
    """Level-n cube reached by descending one child per symbol."""
    _check_cube_params(word.space, d)
    _check_full_prefix(word)
    coords = [0] * d
    for q in word.symbols:
        offs = subcube_enumeration(q, d)
        for j in range(d):
            coords[j] = (coords[j] << 1) | offs[j]
    return DyadicCube(d, word.depth, tuple(coords))


def pi_point(word: CylinderWord, d: int) -> tuple[np.ndarray, float]:
    """Lower corner of the depth-n cube plus the guaranteed error radius.

    Any infinite extension of the word realizes a point within
    sqrt(d) * 2**-n of the returned corner.
    """
    cube = encode_cube(word, d)
    return cube.lower_corner(), cube.diameter


def preimage_ball_check(cube: DyadicCube) -> CylinderWord:
    """The depth-n word whose image is exactly this cube.

    The word's cylinder is the ball (in the coding metric) with the same
    diameter sqrt(d) * 2**-n as the cube.
    """
    d, n = cube.d, cube.level
    symbols = []
    prev = [0] * d
    for lvl in range(1, n + 1):
        offs = []
        for j in range(d):
            cur = cube.coords[j] >> (n - lvl)
            offs.append(cur - (prev[j] << 1))
            prev[j] = cur
        symbols.append(symbol_for_offsets(offs, d))
    return CylinderWord(cube_space(d), tuple(range(1, n + 1)), tuple(symbols))


def cylinder_ball_diameter(word: CylinderWord, d: int) -> float:
    """Diameter of the depth-n cylinder under the coding metric.

    Members first differ at position >= n+1, so the diameter is
    gamma * rho**(n+1) = sqrt(d) * 2**-n, matching the image cube.
    """
    _check_cube_params(word.space, d)
    return word.space.gamma * 0.5 ** (word.depth + 1)


def covering_cubes_for_ball(
    center, r: float, d: int
) -> tuple[int, list[tuple[int, int]], int]:
    """Dyadic cover of B(center, r) intersected with the unit cube.

    Uses the deepest level whose side 2**-level is still >= r/2 (so sides
    lie in (r/2, r]); returns (level, per-axis index ranges, cube count).
    The product of the ranges covers the ball's bounding box clipped to
    [0,1]^d, hence the ball itself.
    """
    if not 0 < r <= 1:
        raise ConfigError(f"ball radius must lie in (0, 1], got {r}")
    level = 0
    while 2.0 ** -(level + 1) >= r / 2.0:
        level += 1
    # now 2**-level ... the largest power of two <= r
    while 2.0**-level > r:  # guard against boundary rounding
        level += 1
    size = 1 << level
    h = 2.0**-level
    ranges = []
    count = 1
    for j in range(d):
        lo = max(0, int(math.floor((center[j] - r) / h)))
        hi = min(size - 1, int(math.floor((center[j] + r) / h)))
        hi = max(hi, lo)
        ranges.append((lo, hi))
        count *= hi - lo + 1
    return level, ranges, count


def random_word(space: SpaceParams, depth: int, rng: np.random.Generator) -> CylinderWord:
    """Uniform random depth-n word over the full index set (test utility)."""
    symbols = tuple(int(s) for s in rng.integers(1, space.b + 1, size=depth))
    return CylinderWord(space, tuple(range(1, depth + 1)), symbols)
