"""Mean-zero sub-Gaussian distribution catalog and reproducible RNG streams.

Three families, each with a valid variance proxy sigma^2 (so that
``E exp(t X) <= exp(t^2 sigma^2 / 2)`` for all real t) and closed-form
moments:

==========  =========  ===============  ==================
family      scale      proxy sigma^2    true second moment
==========  =========  ===============  ==================
gaussian    sigma      sigma^2          sigma^2
rademacher  (fixed 1)  1                1
uniform     a          a^2 (Hoeffding)  a^2 / 3
==========  =========  ===============  ==================

The uniform proxy is the Hoeffding proxy for variables bounded in [-a, a];
it is valid but not optimal, which is all the bounds downstream require.

Randomness comes from numpy's Philox bit generator, a documented 64-bit
counter-based algorithm whose stream is fixed by its 128-bit key.  Keys are
derived from ``(seed, stream_id)`` through a splitmix64 mixing chain, so
distinct stream ids give independent substreams and the same pair always
reproduces the same draws.  Normals are produced by an explicit Box-Muller
transform on the raw uniform stream (two uniforms per pair of normals,
never data-dependent consumption), so the uniform-level bit stream fully
determines every sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ValidationError

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """One splitmix64 step; the standard 64-bit avalanche mixer."""
    x = (x + _GOLDEN) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _mix2(a: int, b: int) -> int:
    return splitmix64(splitmix64(a) ^ splitmix64(b ^ _GOLDEN))


@dataclass(frozen=True)
class RngStream:
    """Addressable random stream: (seed, stream_id) -> Philox key.

    A stream is owned by one consumer at a time; derive substreams for
    parallel work instead of sharing generator state.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        if not 0 <= self.seed <= _MASK64:
            raise ValidationError("seed must be an unsigned 64-bit integer")
        if not 0 <= self.stream_id <= _MASK64:
            raise ValidationError("stream_id must be an unsigned 64-bit integer")

    def substream(self, k: int) -> "RngStream":
        """Derived independent stream; deterministic in (stream_id, k)."""
        return RngStream(self.seed, _mix2(self.stream_id, k & _MASK64))

    def generator(self) -> np.random.Generator:
        k0 = _mix2(self.seed, self.stream_id)
        k1 = splitmix64(k0)
        return np.random.Generator(np.random.Philox(key=k0 | (k1 << 64)))


@dataclass(frozen=True)
class SubGaussianDist:
    """Distribution descriptor: family, scale, variance proxy, second moment."""

    family: str
    scale: float
    proxy_sigma2: float
    second_moment: float

    def __post_init__(self):
        if self.family not in ("gaussian", "rademacher", "uniform"):
            raise ValidationError(f"unknown family {self.family!r}")
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise ValidationError("scale must be positive and finite")
        if not (self.proxy_sigma2 > 0 and math.isfinite(self.proxy_sigma2)):
            raise ValidationError("variance proxy must be positive and finite")
        if self.second_moment < 0 or self.second_moment > self.proxy_sigma2:
            raise ValidationError("need 0 <= E X^2 <= proxy_sigma2 for a valid proxy")

    def label(self) -> str:
        if self.family == "rademacher":
            return "rademacher"
        return f"{self.family}:{self.scale:g}"


def gaussian(sigma: float) -> SubGaussianDist:
    return SubGaussianDist("gaussian", float(sigma), float(sigma) ** 2, float(sigma) ** 2)


def rademacher() -> SubGaussianDist:
    return SubGaussianDist("rademacher", 1.0, 1.0, 1.0)


def uniform(a: float) -> SubGaussianDist:
    return SubGaussianDist("uniform", float(a), float(a) ** 2, float(a) ** 2 / 3.0)


def parse_dist(spec: str) -> SubGaussianDist:
    """Parse the CLI syntax: ``gaussian:<sigma>``, ``rademacher``, ``uniform:<a>``."""
    name, _, arg = spec.strip().partition(":")
    name = name.lower()
    if name == "rademacher":
        if arg:
            raise ValidationError("rademacher takes no parameter")
        return rademacher()
    if name in ("gaussian", "uniform"):
        if not arg:
            raise ValidationError(f"{name} requires a scale, e.g. {name}:1.0")
        try:
            scale = float(arg)
        except ValueError as exc:
            raise ValidationError(f"bad scale {arg!r} in distribution spec {spec!r}") from exc
        return gaussian(scale) if name == "gaussian" else uniform(scale)
    raise ValidationError(f"unknown distribution spec {spec!r}")


def sample(d: SubGaussianDist, rng: RngStream, count: int) -> np.ndarray:
    """``count`` iid draws from ``d``; bitwise reproducible given the stream."""
    if count < 1:
        raise ValidationError("count must be at least 1")
    gen = rng.generator()
    if d.family == "rademacher":
        return np.where(gen.random(count) < 0.5, -1.0, 1.0)
    if d.family == "uniform":
        return d.scale * (2.0 * gen.random(count) - 1.0)
    # gaussian via Box-Muller; u1 is reflected into (0, 1] so log never sees 0
    pairs = (count + 1) // 2
    u1 = gen.random(pairs)
    u2 = gen.random(pairs)
    radius = np.sqrt(-2.0 * np.log1p(-u1))
    angle = 2.0 * np.pi * u2
    out = np.empty(2 * pairs)
    out[0::2] = radius * np.cos(angle)
    out[1::2] = radius * np.sin(angle)
    return d.scale * out[:count]


def exact_even_moment(d: SubGaussianDist, j: int) -> float:
    """Closed-form ``E X^(2j)``.

    gaussian: (2j-1)!! sigma^(2j); rademacher: 1; uniform: a^(2j) / (2j+1).
    Raises OverflowError once the value leaves float range.
    """
    if j < 1:
        raise ValidationError("j must be at least 1")
    if d.family == "rademacher":
        return 1.0
    if d.family == "uniform":
        return d.scale ** (2 * j) / (2 * j + 1)
    double_fact = math.prod(range(1, 2 * j, 2))  # (2j-1)!!, exact integer
    value = float(double_fact) * d.scale ** (2 * j)
    if math.isinf(value):
        raise OverflowError(f"E X^{2 * j} exceeds float range for {d.label()}")
    return value


def exact_central_square_moment(d: SubGaussianDist, k: int) -> float:
    """Closed-form ``E (X^2 - E X^2)^k`` via the binomial expansion
    ``sum_j C(k,j) (-1)^(k-j) (E X^2)^(k-j) E X^(2j)`` over exact even moments."""
    if k < 1:
        raise ValidationError("k must be at least 1")
    m2 = d.second_moment
    terms = [(-m2) ** k]  # j = 0 term, E X^0 = 1
    for j in range(1, k + 1):
        sign = -1.0 if (k - j) % 2 else 1.0
        terms.append(math.comb(k, j) * sign * m2 ** (k - j) * exact_even_moment(d, j))
    value = math.fsum(terms)
    if math.isinf(value):
        raise OverflowError(f"E (X^2 - E X^2)^{k} exceeds float range for {d.label()}")
    return value
