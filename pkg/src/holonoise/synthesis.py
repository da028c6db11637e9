"""Seeded synthesis of the correlated-pair interferometer time series.

Each channel is the sum of a common geometric component, shared between the
two instruments, and an independent white shot-noise floor:

    ch_i = sqrt(holo_scale) * common + shot_i

The common component is a stationary Gaussian series with the triangular
autocovariance of `HolographicModel`, generated exactly by circulant
embedding: the sampled autocovariance is wrapped onto a circle large enough
that the wrap-around never overlaps the triangle support, the embedding
eigenvalues come from one FFT of that row, and filtered complex white noise
transforms back into a real series with the target covariance.  For the
triangular kernel the eigenvalues are non-negative up to roundoff; anything
below ``-1e-9 * sigma2`` aborts with `SynthesisError`.

All randomness is drawn from counter-based Philox generators keyed by
``SeedSequence(seed, spawn_key=(stream_id,))``, so the common and the two
shot streams are mutually independent and each is reproducible bit for bit
from ``(seed, stream_id)`` alone.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields

import numpy as np

from .constants import CONSTANTS
from .errors import DomainError, SynthesisError
from .model import HolographicModel, autocorrelation

#: Stream identifiers for the per-run Philox substreams.
STREAM_COMMON = 0
STREAM_SHOT1 = 1
STREAM_SHOT2 = 2

#: Relative tolerance on negative embedding eigenvalues.
EIGENVALUE_TOLERANCE = 1e-9


def generator(seed: int, stream_id: int) -> np.random.Generator:
    """Philox generator for one (seed, stream_id) substream."""
    ss = np.random.SeedSequence(seed, spawn_key=(stream_id,))
    return np.random.Generator(np.random.Philox(ss))


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class ExperimentConfig:
    """One reproducible run of the twin-interferometer simulation."""

    arm_length: float = 40.0      # m
    shot_asd: float = 2e-18       # m / sqrt(Hz), per channel
    sample_rate: float = 5e7      # Hz
    n_samples: int = 2**22        # power of two
    seed: int = 0                 # 64-bit master seed
    holo_scale: float = 1.0       # common-component power multiplier
    segment_length: int = 8192    # Welch segment, power of two
    overlap: float = 0.5          # Welch segment overlap fraction

    def __post_init__(self):
        if not math.isfinite(self.arm_length) or self.arm_length <= 0.0:
            raise DomainError(f"arm_length must be positive, got {self.arm_length!r}")
        if not math.isfinite(self.shot_asd) or self.shot_asd < 0.0:
            raise DomainError(f"shot_asd must be >= 0, got {self.shot_asd!r}")
        if not math.isfinite(self.sample_rate) or self.sample_rate <= 0.0:
            raise DomainError(f"sample_rate must be positive, got {self.sample_rate!r}")
        if not isinstance(self.n_samples, int) or not _is_pow2(self.n_samples) or self.n_samples < 1024:
            raise DomainError(
                f"n_samples must be a power of two >= 1024, got {self.n_samples!r}"
            )
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if not math.isfinite(self.holo_scale) or self.holo_scale < 0.0:
            raise DomainError(f"holo_scale must be >= 0, got {self.holo_scale!r}")
        if not isinstance(self.segment_length, int) or not _is_pow2(self.segment_length):
            raise DomainError(
                f"segment_length must be a power of two, got {self.segment_length!r}"
            )
        if self.segment_length > self.n_samples:
            raise DomainError("segment_length cannot exceed n_samples")
        if not 0.0 <= self.overlap <= 0.75:
            raise DomainError(f"overlap must lie in [0, 0.75], got {self.overlap!r}")
        tau_c = 2.0 * self.arm_length / CONSTANTS.c
        if self.sample_rate * tau_c < 4.0:
            raise DomainError(
                "undersampled: sample_rate * tau_c = "
                f"{self.sample_rate * tau_c:.3f} < 4; raise sample_rate or arm_length"
            )

    def model(self) -> HolographicModel:
        return HolographicModel.from_baseline(self.arm_length)

    def as_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        """Build from a mapping, rejecting unknown keys (fail closed)."""
        if not isinstance(raw, dict):
            raise DomainError(f"config must be a JSON object, got {type(raw).__name__}")
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise DomainError(f"unknown config fields: {', '.join(unknown)}")
        kwargs = dict(raw)
        for name in ("n_samples", "seed", "segment_length"):
            if name in kwargs:
                v = kwargs[name]
                if isinstance(v, bool) or not isinstance(v, int):
                    raise DomainError(f"config field {name} must be an integer, got {v!r}")
        for name in ("arm_length", "shot_asd", "sample_rate", "holo_scale", "overlap"):
            if name in kwargs:
                v = kwargs[name]
                if isinstance(v, bool) or not isinstance(v, (int, float)):
                    raise DomainError(f"config field {name} must be a number, got {v!r}")
                kwargs[name] = float(v)
        return cls(**kwargs)


@dataclass(frozen=True)
class TimeSeriesPair:
    """Synthesized channel pair plus the injected common component."""

    sample_rate: float   # Hz
    ch1: np.ndarray      # m
    ch2: np.ndarray      # m
    common: np.ndarray   # m, as injected (already scaled by sqrt(holo_scale))

    def __post_init__(self):
        n = len(self.ch1)
        if len(self.ch2) != n or len(self.common) != n:
            raise DomainError("ch1, ch2, and common must have equal length")
        if self.sample_rate <= 0.0 or not math.isfinite(self.sample_rate):
            raise DomainError(f"sample_rate must be positive, got {self.sample_rate!r}")
        for name in ("ch1", "ch2", "common"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise DomainError(f"{name} contains non-finite samples")

    @property
    def n_samples(self) -> int:
        return len(self.ch1)

    @property
    def duration(self) -> float:
        return self.n_samples / self.sample_rate


def synthesize_common(
    model: HolographicModel, sample_rate: float, n: int, seed: int
) -> np.ndarray:
    """Generate ``n`` samples of the triangular-autocovariance process.

    Parameters
    ----------
    model : HolographicModel
        Supplies sigma2 and tau_c.
    sample_rate : float
        Sampling rate in Hz; must satisfy sample_rate * tau_c >= 4.
    n : int
        Number of samples; must be at least twice the correlation support.
    seed : int
        Master seed; the common stream id is fixed to STREAM_COMMON.

    Returns
    -------
    numpy.ndarray
        Zero-mean Gaussian series whose autocovariance equals the sampled
        triangle exactly (circulant embedding is not approximate).
    """
    if sample_rate * model.tau_c < 4.0:
        raise DomainError(
            "undersampled: sample_rate * tau_c = "
            f"{sample_rate * model.tau_c:.3f} < 4"
        )
    support = int(math.ceil(sample_rate * model.tau_c))
    if n < 2 * support:
        raise DomainError(
            f"n = {n} too short: need at least twice the correlation support "
            f"({2 * support} samples)"
        )
    # Embedding period: wrap-around must stay clear of the triangle support.
    m_embed = 1 << int(math.ceil(math.log2(n + support + 1)))
    idx = np.arange(m_embed)
    circular_lag = np.minimum(idx, m_embed - idx) / sample_rate
    row = autocorrelation(model, circular_lag)
    eig = np.fft.fft(row).real
    del row, circular_lag, idx
    worst = float(eig.min())
    if worst < -EIGENVALUE_TOLERANCE * model.sigma2:
        raise SynthesisError(
            f"embedding eigenvalue {worst:.3e} below tolerance "
            f"{-EIGENVALUE_TOLERANCE * model.sigma2:.3e}"
        )
    np.clip(eig, 0.0, None, out=eig)
    np.sqrt(eig, out=eig)
    rng = generator(seed, STREAM_COMMON)
    z = rng.standard_normal(m_embed) + 1j * rng.standard_normal(m_embed)
    z *= eig
    del eig
    x = np.fft.fft(z).real
    del z
    x *= 1.0 / math.sqrt(m_embed)
    return x[:n].copy()


def white_noise(
    asd: float, sample_rate: float, n: int, seed: int, stream_id: int
) -> np.ndarray:
    """White series with one-sided PSD asd^2, i.e. variance asd^2 * fs / 2."""
    if not math.isfinite(asd) or asd < 0.0:
        raise DomainError(f"asd must be >= 0, got {asd!r}")
    if n < 1:
        raise DomainError(f"n must be positive, got {n!r}")
    if asd == 0.0:
        return np.zeros(n)
    sigma = asd * math.sqrt(sample_rate / 2.0)
    return sigma * generator(seed, stream_id).standard_normal(n)


def synthesize_pair(config: ExperimentConfig) -> TimeSeriesPair:
    """Synthesize both channels for one configuration.

    The stored ``common`` array is the injected component as it appears in
    the channels (scaled by sqrt(holo_scale)); with holo_scale = 0 the
    generation is skipped entirely and ``common`` is all zeros.
    """
    n, fs = config.n_samples, config.sample_rate
    if config.holo_scale > 0.0:
        common = synthesize_common(config.model(), fs, n, config.seed)
        common *= math.sqrt(config.holo_scale)
    else:
        common = np.zeros(n)
    ch1 = common + white_noise(config.shot_asd, fs, n, config.seed, STREAM_SHOT1)
    ch2 = common + white_noise(config.shot_asd, fs, n, config.seed, STREAM_SHOT2)
    return TimeSeriesPair(sample_rate=fs, ch1=ch1, ch2=ch2, common=common)
