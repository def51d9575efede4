"""Radius sequences r_n, their critical exponent, and tail cover costs.

Three families are supported:

* power-law: ``r_n = scale * n**(-1/s)`` with shape parameter ``s > 0``,
* geometric: ``r_n = scale * ratio**n`` with ``ratio`` in (0, 1),
* explicit:  a finite positive list.

The critical exponent is the infimum of ``t`` with ``sum_n r_n**t`` finite.
For the power-law family the p-series threshold gives exactly ``s``; for
the geometric family every positive ``t`` gives a convergent sum, so the
exponent is 0.  A finite list has no meaningful exponent and asking for one
raises.

``hausdorff_upper_bound`` is the cost ``2**t * sum_{n=M..N} r_n**t`` of
covering the limsup set with the tail of the ball sequence (diameters are
twice the radii); it is the quantitative upper-bound diagnostic used by
``boxdim.critical_exponent_estimate``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, UndefinedExponentError

POWER_LAW = "power-law"
GEOMETRIC = "geometric"
EXPLICIT = "explicit"

# Chunk length for partial sums; fixed so results are reproducible
# independently of the requested range.
_CHUNK = 1 << 20


@dataclass(frozen=True)
class RadiusSpec:
    """Parametric description of a positive radius sequence, n >= 1."""

    family: str
    s: float | None = None
    scale: float = 1.0
    ratio: float | None = None
    values: tuple[float, ...] = field(default=())

    def __post_init__(self):
        if self.family == POWER_LAW:
            if self.s is None or not self.s > 0:
                raise ConfigError("power-law family needs exponent parameter s > 0")
            if not self.scale > 0:
                raise ConfigError("scale must be positive")
        elif self.family == GEOMETRIC:
            if self.ratio is None or not 0 < self.ratio < 1:
                raise ConfigError("geometric family needs ratio in (0, 1)")
            if not self.scale > 0:
                raise ConfigError("scale must be positive")
        elif self.family == EXPLICIT:
            if not self.values:
                raise ConfigError("explicit family needs a non-empty value list")
            if any(not v > 0 for v in self.values):
                raise ConfigError("explicit radii must all be positive")
        else:
            raise ConfigError(f"unknown radius family {self.family!r}")

    def to_json(self) -> dict:
        """JSON object with exactly the fields relevant to the family."""
        if self.family == POWER_LAW:
            return {"family": POWER_LAW, "s": self.s, "scale": self.scale}
        if self.family == GEOMETRIC:
            return {"family": GEOMETRIC, "ratio": self.ratio, "scale": self.scale}
        return {"family": EXPLICIT, "values": list(self.values)}

    @staticmethod
    def from_json(obj: dict) -> "RadiusSpec":
        family = obj.get("family")
        if family == POWER_LAW:
            return power_law(obj["s"], obj.get("scale", 1.0))
        if family == GEOMETRIC:
            return geometric(obj["ratio"], obj.get("scale", 1.0))
        if family == EXPLICIT:
            return explicit(obj["values"])
        raise ConfigError(f"unknown radius family {family!r}")


def power_law(s: float, scale: float = 1.0) -> RadiusSpec:
    return RadiusSpec(POWER_LAW, s=float(s), scale=float(scale))


def geometric(ratio: float, scale: float = 1.0) -> RadiusSpec:
    return RadiusSpec(GEOMETRIC, ratio=float(ratio), scale=float(scale))


def explicit(values) -> RadiusSpec:
    return RadiusSpec(EXPLICIT, values=tuple(float(v) for v in values))


def radius_at(spec: RadiusSpec, n: int) -> float:
    """r_n for 1-based index n."""
    if n < 1:
        raise ConfigError(f"radius index must be >= 1, got {n}")
    if spec.family == POWER_LAW:
        return spec.scale * float(n) ** (-1.0 / spec.s)
    if spec.family == GEOMETRIC:
        return spec.scale * spec.ratio**n
    if n > len(spec.values):
        raise IndexError(
            f"explicit radius list has {len(spec.values)} entries, index {n} requested"
        )
    return spec.values[n - 1]


def radii_block(spec: RadiusSpec, n_lo: int, n_hi: int) -> np.ndarray:
    """Vector of r_n for n in [n_lo, n_hi]."""
    if n_lo < 1 or n_hi < n_lo:
        raise ConfigError(f"bad radius range [{n_lo}, {n_hi}]")
    ns = np.arange(n_lo, n_hi + 1, dtype=np.float64)
    if spec.family == POWER_LAW:
        return spec.scale * ns ** (-1.0 / spec.s)
    if spec.family == GEOMETRIC:
        return spec.scale * spec.ratio**ns
    if n_hi > len(spec.values):
        raise IndexError(
            f"explicit radius list has {len(spec.values)} entries, index {n_hi} requested"
        )
    return np.asarray(spec.values[n_lo - 1 : n_hi], dtype=np.float64)


def critical_exponent(spec: RadiusSpec) -> float:
    """inf{t : sum_n r_n**t converges}; s for power-law, 0 for geometric."""
    if spec.family == POWER_LAW:
        return spec.s
    if spec.family == GEOMETRIC:
        return 0.0
    raise UndefinedExponentError(
        "critical exponent is undefined for a finite radius list"
    )


def partial_power_sum(spec: RadiusSpec, t: float, n_from: int, n_to: int) -> float:
    """sum_{n=n_from..n_to} r_n**t.

    Terms are consumed in ascending n; each fixed-size chunk is reduced with
    numpy's pairwise summation and chunk totals accumulate in order, so the
    result is reproducible for a given range.
    """
    if t < 0:
        raise ConfigError(f"power must be nonnegative, got {t}")
    if n_from < 1 or n_to < n_from:
        raise ConfigError(f"bad summation range [{n_from}, {n_to}]")
    total = 0.0
    lo = n_from
    while lo <= n_to:
        hi = min(lo + _CHUNK - 1, n_to)
        total += float(np.sum(radii_block(spec, lo, hi) ** t))
        lo = hi + 1
    return total


def hausdorff_upper_bound(
    spec: RadiusSpec, t: float, m_start: int, n_end: int
) -> float:
    """Tail cover cost 2**t * sum_{n=m_start..n_end} r_n**t."""
    if not t > 0:
        raise ConfigError(f"cover cost needs t > 0, got {t}")
    return 2.0**t * partial_power_sum(spec, t, m_start, n_end)
