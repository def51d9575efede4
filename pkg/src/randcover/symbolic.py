"""Constrained symbol spaces with ultrametric distance and cylinder measures.

A space is the set of infinite strings over ``{1, ..., b}`` carrying the
metric ``gamma * rho**(first differing position)`` and the uniform product
measure.  Restricting attention to a subset ``I`` of the positions (an
:class:`IndexSet`) yields the subspace whose metric only inspects positions
in ``I``; the open ball of radius ``r`` around any point is then the cylinder
fixing the first ``k`` constrained positions, where ``k`` is pinned by the
bracketing

    gamma * rho**i_{k+1}  <  r  <=  gamma * rho**i_k,

with ``k = 0`` meaning the whole space.  Ball measures are the exact
rationals ``b**-k``.

The index family ``i_k = floor(alpha * k / t)`` with
``alpha = log b / (-log rho)`` tunes the subspace so that ball measures are
comparable to ``r**t`` with a depth-independent constant;
:func:`regularity_sweep` certifies that constant numerically at any depth.

Finite strings carry an explicit depth: comparing two strings that agree on
every stored constrained position yields distance 0 flagged as "equal at
available depth" rather than a silent answer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConfigError, DepthExhaustedError, DomainError
from .rng import MAX_ALPHABET

FULL = "full"
FLOOR = "floor"


@dataclass(frozen=True)
class SpaceParams:
    """Alphabet size, contraction per position, and metric scale."""

    b: int
    rho: float
    gamma: float

    def __post_init__(self):
        if not isinstance(self.b, int) or not 2 <= self.b <= MAX_ALPHABET:
            raise ConfigError(
                f"alphabet size must be an int in [2, {MAX_ALPHABET}], got {self.b!r}"
            )
        if not 0.0 < self.rho < 1.0:
            raise ConfigError(f"contraction rho must lie in (0, 1), got {self.rho}")
        if not self.gamma > 0:
            raise ConfigError(f"metric scale gamma must be positive, got {self.gamma}")

    @property
    def alpha(self) -> float:
        return alpha_of(self)

    @property
    def diameter(self) -> float:
        """Distance between strings differing at position 1."""
        return self.gamma * self.rho

    def to_json(self) -> dict:
        return {"b": self.b, "rho": self.rho, "gamma": self.gamma}

    @staticmethod
    def from_json(obj: dict) -> "SpaceParams":
        return SpaceParams(int(obj["b"]), float(obj["rho"]), float(obj["gamma"]))


def alpha_of(params: SpaceParams) -> float:
    """Scaling exponent log b / (-log rho) of the unconstrained space."""
    return math.log(params.b) / (-math.log(params.rho))


class IndexSet:
    """Strictly increasing set of constrained positions.

    Either all positions (``full``) or the lazily generated family
    ``floor(alpha * k / t)`` for ``k >= 1`` (``floor``).  Membership,
    rank and k-th element queries run in O(1) plus a bounded correction
    walk; no elements are materialized.
    """

    __slots__ = ("kind", "alpha", "t")

    def __init__(self, kind: str, alpha: float = math.nan, t: float = math.nan):
        if kind not in (FULL, FLOOR):
            raise ConfigError(f"unknown index set kind {kind!r}")
        if kind == FLOOR:
            if not (t > 0 and alpha > 0):
                raise ConfigError("floor index set needs positive alpha and t")
            if t > alpha:
                raise DomainError(
                    f"index set needs t <= alpha, got t={t} > alpha={alpha}"
                )
        self.kind = kind
        self.alpha = alpha
        self.t = t

    def __repr__(self):
        if self.kind == FULL:
            return "IndexSet(full)"
        return f"IndexSet(floor, alpha={self.alpha}, t={self.t})"

    def __eq__(self, other):
        if not isinstance(other, IndexSet):
            return NotImplemented
        if self.kind != other.kind:
            return False
        if self.kind == FULL:
            return True
        return self.alpha == other.alpha and self.t == other.t

    def __hash__(self):
        return hash((self.kind, self.alpha, self.t))

    def element(self, k: int) -> int:
        """The k-th constrained position, k >= 1."""
        if k < 1:
            raise ConfigError(f"element index must be >= 1, got {k}")
        if self.kind == FULL:
            return k
        return int(math.floor(self.alpha * k / self.t))

    def elements_array(self, ks: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`element` (int64 in, int64 out)."""
        ks = np.asarray(ks, dtype=np.float64)
        if self.kind == FULL:
            return ks.astype(np.int64)
        return np.floor(self.alpha * ks / self.t).astype(np.int64)

    def first(self, count: int) -> list[int]:
        return [self.element(k) for k in range(1, count + 1)]

    def count_leq(self, n: int) -> int:
        """Number of constrained positions <= n."""
        if n < 1:
            return 0
        if self.kind == FULL:
            return n
        k = max(0, int(n * self.t / self.alpha))
        while self.element(k + 1) <= n:
            k += 1
        while k >= 1 and self.element(k) > n:
            k -= 1
        return k

    def __contains__(self, n: int) -> bool:
        return n >= 1 and self.count_leq(n) > self.count_leq(n - 1)

    @property
    def density(self) -> float:
        """Limiting counting density t / alpha of the constrained positions."""
        if self.kind == FULL:
            return 1.0
        return self.t / self.alpha

    def complement_first(self, count: int) -> list[int]:
        """The first ``count`` unconstrained positions, ascending."""
        out = []
        p = 1
        while len(out) < count:
            if p not in self:
                out.append(p)
            p += 1
            if p > 10_000_000:
                raise DomainError("unconstrained positions are too sparse to collect")
        return out

    def to_json(self) -> dict:
        if self.kind == FULL:
            return {"kind": FULL}
        return {"kind": FLOOR, "alpha": self.alpha, "t": self.t}

    @staticmethod
    def from_json(obj: dict) -> "IndexSet":
        if obj["kind"] == FULL:
            return IndexSet(FULL)
        return IndexSet(FLOOR, alpha=float(obj["alpha"]), t=float(obj["t"]))


def full_index_set() -> IndexSet:
    return IndexSet(FULL)


def index_set_for(t: float, params: SpaceParams) -> IndexSet:
    """Constrained positions floor(alpha*k/t) making balls comparable to r**t."""
    alpha = alpha_of(params)
    if not 0 < t <= alpha:
        raise DomainError(f"need 0 < t <= alpha={alpha}, got t={t}")
    return IndexSet(FLOOR, alpha=alpha, t=t)


@dataclass(frozen=True)
class DistanceResult:
    """Distance value plus the flag for 'equal on every stored position'."""

    value: float
    equal_at_depth: bool
    first_difference: int | None = None

    def require(self) -> float:
        if self.equal_at_depth:
            raise DepthExhaustedError(
                "sequences agree on all stored constrained positions; "
                "distance is below the resolution of the stored depth"
            )
        return self.value


def distance(a, b, positions: IndexSet, params: SpaceParams) -> DistanceResult:
    """gamma * rho**(first constrained position where a and b differ).

    ``a`` and ``b`` are finite prefixes indexed from position 1; positions
    beyond ``min(len(a), len(b))`` are unknown, and agreement on all known
    constrained positions returns 0 with ``equal_at_depth`` set.
    """
    depth = min(len(a), len(b))
    k = 1
    while True:
        i = positions.element(k)
        if i > depth:
            return DistanceResult(0.0, True, None)
        if a[i - 1] != b[i - 1]:
            return DistanceResult(
                params.gamma * params.rho ** float(i), False, i
            )
        k += 1


def ball_measure_exponent(r: float, positions: IndexSet, params: SpaceParams) -> int:
    """The k with gamma*rho**i_{k+1} < r <= gamma*rho**i_k (k=0: whole space)."""
    if not 0.0 < r <= params.gamma * params.rho:
        raise DomainError(
            f"ball radius must lie in (0, {params.gamma * params.rho}], got {r}"
        )
    k = 0
    while params.gamma * params.rho ** float(positions.element(k + 1)) >= r:
        k += 1
    return k


def ball_exponents(
    radii, positions: IndexSet, params: SpaceParams
) -> np.ndarray:
    """Vectorized :func:`ball_measure_exponent`; agrees with it bitwise.

    A log-based candidate is corrected against the same pow-based
    bracketing predicate the scalar walk uses.
    """
    r = np.asarray(radii, dtype=np.float64)
    if r.size == 0:
        return np.zeros(0, dtype=np.int64)
    if not ((r > 0.0) & (r <= params.gamma * params.rho)).all():
        raise DomainError("ball radii must lie in (0, gamma*rho]")
    gamma, rho = params.gamma, params.rho
    # candidate position depth, then rank within the index set
    i_cand = np.floor(np.log(r / gamma) / math.log(rho))
    if positions.kind == FULL:
        k = np.maximum(i_cand.astype(np.int64), 0)
    else:
        k = np.maximum(
            (i_cand * (positions.t / positions.alpha)).astype(np.int64), 0
        )
    for _ in range(64):
        thr_next = gamma * rho ** positions.elements_array(k + 1).astype(np.float64)
        inc = thr_next >= r
        if inc.any():
            k = k + inc.astype(np.int64)
            continue
        cur = positions.elements_array(np.maximum(k, 1)).astype(np.float64)
        dec = (k >= 1) & (gamma * rho**cur < r)
        if dec.any():
            k = k - dec.astype(np.int64)
            continue
        break
    else:  # pragma: no cover - correction always converges in a few steps
        raise RuntimeError("ball exponent correction failed to converge")
    return k


def ball_measure(r: float, positions: IndexSet, params: SpaceParams) -> Fraction:
    """Exact measure b**-k of the open ball of radius r (center-free)."""
    k = ball_measure_exponent(r, positions, params)
    return Fraction(1, params.b**k)


@dataclass(frozen=True)
class CylinderWord:
    """Symbols assigned to the first ``k`` constrained positions."""

    space: SpaceParams
    positions: tuple[int, ...]
    symbols: tuple[int, ...]

    def __post_init__(self):
        if len(self.positions) != len(self.symbols):
            raise ConfigError("positions and symbols must have equal length")
        prev = 0
        for p in self.positions:
            if p <= prev:
                raise ConfigError("constrained positions must be strictly increasing")
            prev = p
        for s in self.symbols:
            if not 1 <= s <= self.space.b:
                raise ConfigError(
                    f"symbol {s} outside alphabet {{1..{self.space.b}}}"
                )

    @property
    def depth(self) -> int:
        return len(self.symbols)

    def measure(self) -> Fraction:
        """Exact uniform measure b**-k of the cylinder."""
        return Fraction(1, self.space.b ** len(self.symbols))

    @staticmethod
    def from_index_set(
        space: SpaceParams, positions: IndexSet, symbols
    ) -> "CylinderWord":
        symbols = tuple(int(s) for s in symbols)
        return CylinderWord(space, tuple(positions.first(len(symbols))), symbols)


@dataclass(frozen=True)
class SweepEntry:
    exponent: float
    radius: float
    ball_exponent: int
    measure: float
    ratio: float


@dataclass(frozen=True)
class RegularityReport:
    """Observed bounds on measure(ball)/r**t over a geometric radius sweep."""

    t: float
    depth_max: int
    min_ratio: float
    max_ratio: float
    constant: float
    entries: tuple[SweepEntry, ...]

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "depth_max": self.depth_max,
            "min_ratio": self.min_ratio,
            "max_ratio": self.max_ratio,
            "constant": self.constant,
            "num_radii": len(self.entries),
        }


def regularity_sweep(
    positions: IndexSet, t: float, params: SpaceParams, depth_max: int
) -> RegularityReport:
    """Sweep r over gamma*rho**e for e in {1, 1.5, 2, ..., depth_max}.

    Returns min/max of measure(ball)/r**t and the implied two-sided
    constant max(max_ratio, 1/min_ratio).  Ratios are computed from exact
    exponent arithmetic in log2 space, so sweeps at different depths yield
    bit-identical ratios on their common radii.
    """
    if depth_max < 2:
        raise ConfigError(f"depth_max must be >= 2, got {depth_max}")
    if positions.kind == FLOOR:
        if t != positions.t:
            raise ConfigError(
                f"sweep exponent t={t} does not match the index set's t={positions.t}"
            )
    else:
        if t != alpha_of(params):
            raise ConfigError(
                "full index set is calibrated to t = alpha; "
                f"got t={t}, alpha={alpha_of(params)}"
            )
    log2_b = math.log2(params.b)
    log2_gamma = math.log2(params.gamma)
    log2_rho = math.log2(params.rho)
    entries = []
    for twice_e in range(2, 2 * depth_max + 1):
        e = twice_e * 0.5
        r = params.gamma * params.rho**e
        k = ball_measure_exponent(r, positions, params)
        log2_ratio = -k * log2_b - t * (log2_gamma + e * log2_rho)
        entries.append(
            SweepEntry(
                exponent=e,
                radius=r,
                ball_exponent=k,
                measure=float(Fraction(1, params.b**k)),
                ratio=2.0**log2_ratio,
            )
        )
    ratios = [entry.ratio for entry in entries]
    min_ratio = min(ratios)
    max_ratio = max(ratios)
    return RegularityReport(
        t=t,
        depth_max=depth_max,
        min_ratio=min_ratio,
        max_ratio=max_ratio,
        constant=max(max_ratio, 1.0 / min_ratio),
        entries=tuple(entries),
    )
