"""Broadband passive-sonar terms and the single-sensor detection probability.

The signal-excess budget in dB is

    SE = SSL - TL - NSL + DI - DT

with a broadband source spectrum level SSL, range-dependent transmission
loss TL, stochastic noise spectrum level NSL, array directivity index DI
and detection threshold DT. The noise is Rayleigh at baseband, so the
band-averaged NSL splits into a deterministic constant ``gamma`` plus a
stochastic term 10*log10(Y) with Y ~ Rayleigh(1/sqrt(2)). Detection is the
event SE > 0, which gives the closed form

    P(detect at range r) = 1 - exp(-10**(0.2 * (SSL - TL(r) - DT + DI - gamma)))

used by every higher-level module. All functions here are pure and accept
scalars or numpy arrays for the range argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .units import DEFAULT_SOUND_SPEED_MPS, METRES_PER_NMI, NMI_PER_KILOYARD

LOG10_E = math.log10(math.e)
LN10_FIFTH = math.log(10.0) / 5.0  # 0.2 * ln(10), the dB-to-exponent factor
# Offset between the band-mean noise level and the Rayleigh-mean constant:
# 10*log10(2/sqrt(pi)) ~= 0.5246 dB.
RAYLEIGH_MEAN_OFFSET_DB = 10.0 * math.log10(2.0 / math.sqrt(math.pi))

GAMMA_MODES = ("scaled", "raw")


class ArrayGainError(ValueError):
    """Raised when a line array is too short to provide any gain.

    Carries ``min_length_m``, the length in metres the array must exceed.
    """

    def __init__(self, length_m: float, min_length_m: float):
        self.length_m = length_m
        self.min_length_m = min_length_m
        super().__init__(
            f"array of length {length_m:.2f} m provides no gain; "
            f"length must exceed {min_length_m:.2f} m"
        )


@dataclass(frozen=True)
class SonarEnvironment:
    """Broadband band, spectrum levels, absorption model and sound speed.

    ``alpha_m_db_per_nmi`` and ``alpha_f_db_per_nmi_hz`` parameterise the
    absorption coefficient alpha(f) = alpha_m + alpha_f * (f - f_m), linear
    in frequency across the band. ``gamma_mode`` selects how the band-mean
    noise level enters the detection constant: ``"scaled"`` adds the
    Rayleigh-mean offset 10*log10(2/sqrt(pi)), ``"raw"`` uses it unchanged.
    """

    f_m_hz: float = 100.0
    bandwidth_hz: float = 30.0
    ssl_db: float = 133.0
    nsl_db: float = 68.5
    alpha_m_db_per_nmi: float = 31.2218
    alpha_f_db_per_nmi_hz: float = 0.20347
    sound_speed_mps: float = DEFAULT_SOUND_SPEED_MPS
    gamma_mode: str = "scaled"

    def __post_init__(self):
        if not self.bandwidth_hz > 0:
            raise ValueError(f"bandwidth_hz must be positive, got {self.bandwidth_hz}")
        if not self.f_m_hz > self.bandwidth_hz / 2.0:
            raise ValueError(
                "f_m_hz must exceed half the bandwidth "
                f"(got f_m={self.f_m_hz}, B={self.bandwidth_hz})"
            )
        if self.alpha_m_db_per_nmi < 0:
            raise ValueError("alpha_m_db_per_nmi must be non-negative")
        if not self.alpha_f_db_per_nmi_hz > 0:
            raise ValueError("alpha_f_db_per_nmi_hz must be positive")
        if not self.sound_speed_mps > 0:
            raise ValueError("sound_speed_mps must be positive")
        if self.gamma_mode not in GAMMA_MODES:
            raise ValueError(
                f"gamma_mode must be one of {GAMMA_MODES}, got {self.gamma_mode!r}"
            )

    @property
    def band_edges_hz(self) -> tuple[float, float]:
        half = self.bandwidth_hz / 2.0
        return (self.f_m_hz - half, self.f_m_hz + half)


@dataclass(frozen=True)
class RayleighNoiseModel:
    """Rayleigh model for the narrowband noise amplitude.

    The reduced variable Y = NSL(f) / (sqrt(2) * sigma) is Rayleigh with
    scale 1/sqrt(2). The closed-form detection probability fixes
    sigma**2 = 0.5, which is the default here.
    """

    sigma: float = math.sqrt(0.5)

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")

    def cdf(self, t):
        t = np.asarray(t, dtype=float)
        out = -np.expm1(-np.square(np.maximum(t, 0.0)) / (2.0 * self.sigma**2))
        out = np.where(t >= 0, out, 0.0)
        return float(out) if out.ndim == 0 else out

    def sample(self, rng: np.random.Generator, size=None):
        return rng.rayleigh(scale=self.sigma, size=size)


@dataclass(frozen=True)
class DetectionDesign:
    """Required detection/false-alarm rates and decision time.

    The detection index ``d`` and threshold ``dt_db`` are derived from the
    requirements and exposed as properties.
    """

    pd: float = 0.5
    pfa: float = 1e-4
    t_seconds: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.pfa < self.pd < 1.0):
            raise ValueError(
                f"need 0 < pfa < pd < 1, got pd={self.pd!r}, pfa={self.pfa!r}"
            )
        if not self.t_seconds > 0:
            raise ValueError("t_seconds must be positive")

    @property
    def d(self) -> float:
        return detection_index(self.pd, self.pfa)

    @property
    def dt_db(self) -> float:
        return detection_threshold_db(self.d, self.t_seconds)


def gamma_db(env: SonarEnvironment) -> float:
    """Deterministic part of the broadband noise level, in dB.

    In the default ``scaled`` mode this is the band-mean noise spectrum
    level plus the Rayleigh-mean offset 10*log10(2/sqrt(pi)); ``raw`` mode
    returns the band-mean level unchanged.
    """
    if env.gamma_mode == "raw":
        return env.nsl_db
    return env.nsl_db + RAYLEIGH_MEAN_OFFSET_DB


def detection_index(pd: float, pfa: float) -> float:
    """Detection index of the Rayleigh amplitude detector.

    d = (pi / (4 - pi)) * (sqrt(ln pfa / ln pd) - 1)**2 for an integration
    factor of one.
    """
    if not (0.0 < pfa < pd < 1.0):
        raise ValueError(f"need 0 < pfa < pd < 1, got pd={pd!r}, pfa={pfa!r}")
    ratio = math.log(pfa) / math.log(pd)
    return (math.pi / (4.0 - math.pi)) * (math.sqrt(ratio) - 1.0) ** 2


def detection_threshold_db(d: float, t_seconds: float) -> float:
    """Detection threshold DT = 10*log10(0.273*d/t + 1.045*sqrt(d/t)) in dB."""
    if not d > 0:
        raise ValueError(f"detection index must be positive, got {d!r}")
    if not t_seconds > 0:
        raise ValueError(f"decision time must be positive, got {t_seconds!r}")
    x = d / t_seconds
    return 10.0 * math.log10(0.273 * x + 1.045 * math.sqrt(x))


def _transmission_loss_db(r_nmi, env: SonarEnvironment):
    """Broadband TL without input checks; r must be positive (array ok)."""
    r = np.asarray(r_nmi, dtype=float)
    k = 2.0 * env.alpha_f_db_per_nmi_hz * env.bandwidth_hz
    x = k * r
    # 10*log10(exp(x) - exp(-x)) rewritten as x*10*log10(e) + 10*log10(1 - exp(-2x))
    # so that x beyond ~700 (r around 57 nmi and up) cannot overflow.
    band_term = 10.0 * LOG10_E * x + 10.0 * np.log10(-np.expm1(-2.0 * x))
    return (
        (40.0 * env.alpha_m_db_per_nmi * LOG10_E) * r
        + 30.0 * np.log10(r)
        + 10.0 * math.log10(k)
        - band_term
    )


def transmission_loss_nmi(r_nmi, env: SonarEnvironment):
    """Broadband transmission loss in dB at range ``r_nmi`` nautical miles.

    Spherical spreading plus absorption linear in frequency, averaged over
    the band in closed form:

        TL(r) = (40*alpha_m*log10 e)*r + 30*log10 r + 10*log10(2*alpha_f*B)
                - 10*log10(exp(2*alpha_f*B*r) - exp(-2*alpha_f*B*r))

    Evaluated in a numerically stable form; no overflow for any positive
    range. Accepts scalars or arrays.
    """
    r = np.asarray(r_nmi, dtype=float)
    if np.any(~np.isfinite(r)) or np.any(r <= 0):
        raise ValueError("range must be finite and positive")
    out = _transmission_loss_db(r, env)
    return float(out) if out.ndim == 0 else out


def transmission_loss_kyd(r_kyd, env: SonarEnvironment):
    """Broadband transmission loss with range and absorption in kiloyards.

    ``env``'s absorption coefficients are interpreted per kiloyard here.
    Identical to :func:`transmission_loss_nmi` at half the range with
    coefficients twice as large, one nautical mile being two kiloyards.
    """
    env_nmi = replace(
        env,
        alpha_m_db_per_nmi=2.0 * env.alpha_m_db_per_nmi,
        alpha_f_db_per_nmi_hz=2.0 * env.alpha_f_db_per_nmi_hz,
    )
    r = np.asarray(r_kyd, dtype=float)
    if np.any(~np.isfinite(r)) or np.any(r <= 0):
        raise ValueError("range must be finite and positive")
    out = _transmission_loss_db(r * NMI_PER_KILOYARD, env_nmi)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ArrayGain:
    """Broadband directivity of an unsteered line array."""

    length_m: float
    lambda_short_m: float  # wavelength at the upper band edge
    lambda_long_m: float  # wavelength at the lower band edge
    min_length_m: float
    di_db: float


def array_gain(length_nmi: float, env: SonarEnvironment) -> ArrayGain:
    """Directivity of a line array of ``length_nmi``, averaged over the band.

    DI = 10*log10(2*L / (lambda1*lambda2)) with L in metres and the
    wavelengths taken at the band edges. Raises :class:`ArrayGainError`
    when L is at or below the no-gain threshold 0.5*lambda1*lambda2.
    """
    if not length_nmi > 0:
        raise ValueError("array length must be positive")
    f_lo, f_hi = env.band_edges_hz
    lambda_short = env.sound_speed_mps / f_hi
    lambda_long = env.sound_speed_mps / f_lo
    length_m = length_nmi * METRES_PER_NMI
    min_length_m = 0.5 * lambda_short * lambda_long
    if length_m <= min_length_m:
        raise ArrayGainError(length_m, min_length_m)
    di = 10.0 * math.log10(2.0 * length_m / (lambda_short * lambda_long))
    return ArrayGain(length_m, lambda_short, lambda_long, min_length_m, di)


def directivity_index_db(length_nmi: float, env: SonarEnvironment) -> float:
    """Directivity index in dB of a line array of ``length_nmi``."""
    return array_gain(length_nmi, env).di_db


def single_sensor_pd(
    r_nmi,
    env: SonarEnvironment,
    design: DetectionDesign,
    di_db: float = 0.0,
    noise: RayleighNoiseModel | None = None,
):
    """Probability that one sensor detects a target at range ``r_nmi``.

    Closed form 1 - exp(-10**(0.2 * margin)) with
    margin = SSL - TL(r) - DT + DI - gamma. The tails saturate cleanly to
    0 and 1 without overflow, and a target sitting exactly on the sensor
    (r = 0) is detected with certainty. Accepts scalars or arrays.
    """
    if noise is not None and not math.isclose(noise.sigma**2, 0.5, rel_tol=1e-12):
        raise ValueError("the closed form fixes the Rayleigh scale at sigma^2 = 0.5")
    r = np.asarray(r_nmi, dtype=float)
    if np.any(~np.isfinite(r)) or np.any(r < 0):
        raise ValueError("range must be finite and non-negative")
    positive = r > 0
    tl = _transmission_loss_db(np.where(positive, r, 1.0), env)
    margin = (env.ssl_db - design.dt_db + di_db - gamma_db(env)) - tl
    # exp argument capped: anything above ~e^700 already drives P to exactly 1.
    z = np.exp(np.minimum(LN10_FIFTH * margin, 700.0))
    p = -np.expm1(-z)
    p = np.where(positive, p, 1.0)
    p = np.clip(p, 0.0, 1.0)
    return float(p) if p.ndim == 0 else p


def single_sensor_pd_monte_carlo(
    r_nmi: float,
    env: SonarEnvironment,
    design: DetectionDesign,
    di_db: float = 0.0,
    samples: int = 1_000_000,
    seed: int = 0,
) -> tuple[float, float]:
    """Monte Carlo check of :func:`single_sensor_pd` by direct noise sampling.

    Draws the stochastic noise term 10*log10(Y) with Y ~ Rayleigh(1/sqrt(2))
    and counts how often the signal excess is positive. Returns
    ``(estimate, standard_error)``; deterministic for a given seed.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    rng = np.random.default_rng(seed)
    y = RayleighNoiseModel().sample(rng, samples)
    nsl_db = gamma_db(env) + 10.0 * np.log10(y)
    threshold = env.ssl_db - transmission_loss_nmi(r_nmi, env) - design.dt_db + di_db
    hits = nsl_db < threshold
    estimate = float(np.mean(hits))
    std_error = math.sqrt(max(estimate * (1.0 - estimate), 1e-300) / samples)
    return estimate, std_error
