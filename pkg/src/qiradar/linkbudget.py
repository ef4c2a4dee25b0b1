"""Closed-form link-budget, noise and EMI calculators.

All functions are scalar, pure and use the exact 2019 SI constants
h = 6.62607015e-34 J·s and k_B = 1.380649e-23 J/K. Every "log" in a dB
formula is log₁₀, consistent with the 1 mW dBm reference:

    power (dBm)              10·log₁₀(P / 1 mW)
    photon energy            E = h·f
    photon rate              P / (h·f)
    thermal occupancy        n̄ = 1 / (e^{h·f / k_B·T} − 1)
    SNR                      P_signal / P_noise
    range multiplier         (sensitivity improvement)^(1/4)
    shielding effectiveness  SE = 20·log₁₀(d / λ)
    isolation factor         I = N_ext / N_isolated
    stopband attenuation     SA = 20·log₁₀(A_stop / A_pass)

SE and SA are evaluated verbatim even in regimes where the sign is
physically questionable (d < λ gives negative "effectiveness",
A_stop < A_pass gives negative attenuation); ``evaluate_link_budget``
annotates those regimes with warnings instead of altering the formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from .errors import DegenerateInput


@dataclass(frozen=True)
class PhysicalConstants:
    """Exact SI values of the two constants used here."""

    planck_h: float = 6.62607015e-34    # J·s
    boltzmann_kb: float = 1.380649e-23  # J/K


CONSTANTS = PhysicalConstants()

MILLIWATT = 1e-3
SERIES_CROSSOVER_X = 1e-6   # below this, e^x − 1 cancels; use the Laurent series
OCCUPANCY_FLOOR = 1e-100    # occupancies below this are reported as exactly 0
_FLOOR_X = 230.3            # just above ln(1e100); e^x would dwarf the floor anyway
SATURATION_NBAR = 10.0      # above this the qubit noise map p = n̄/(1+n̄) saturates


def _require_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DegenerateInput(f"{name} must be a positive finite number, got {value!r}")
    return value


def watts_to_dbm(p: float) -> float:
    """Power in dB relative to 1 mW: 10·log₁₀(P / 1 mW)."""
    p = _require_positive("power", p)
    return 10.0 * math.log10(p / MILLIWATT)


def dbm_to_watts(x: float) -> float:
    """Inverse dBm conversion, 1 mW · 10^(x/10)."""
    x = float(x)
    if not math.isfinite(x):
        raise DegenerateInput(f"dBm value must be finite, got {x!r}")
    return MILLIWATT * 10.0 ** (x / 10.0)


def photon_energy(f: float) -> float:
    """Energy h·f of one photon at frequency f (hertz in, joules out)."""
    f = _require_positive("frequency", f)
    return CONSTANTS.planck_h * f


def photon_rate(p: float, f: float) -> float:
    """Photons per second carried by power p at frequency f: P / (h·f)."""
    p = _require_positive("power", p)
    return p / photon_energy(f)


def _occupancy_series(x: float) -> float:
    """Laurent series 1/x − 1/2 + x/12 of 1/(e^x − 1); relative truncation
    error is about x⁴/720, far below double roundoff for x < 1e-6."""
    return 1.0 / x - 0.5 + x / 12.0


def _occupancy_direct(x: float) -> float:
    return 1.0 / math.expm1(x)


def thermal_occupancy(f: float, t: float) -> float:
    """Bose-Einstein mean photon number n̄ = 1/(e^{h·f/k_B·T} − 1).

    Evaluated via expm1, switching to the Laurent series below
    x = h·f/(k_B·T) = 1e-6 to avoid cancellation. Occupancies below 1e-100
    (a bath frozen for any practical purpose) are floored to exactly 0.
    """
    f = _require_positive("frequency", f)
    t = _require_positive("temperature", t)
    x = CONSTANTS.planck_h * f / (CONSTANTS.boltzmann_kb * t)
    if x < SERIES_CROSSOVER_X:
        return _occupancy_series(x)
    if x > _FLOOR_X:
        return 0.0
    nbar = _occupancy_direct(x)
    return nbar if nbar >= OCCUPANCY_FLOOR else 0.0


def occupancy_to_excitation(nbar: float) -> float:
    """Map a mean photon number onto a qubit excitation probability,
    p = n̄/(1 + n̄) in [0, 1).

    This is the bridge from a thermal background to the two-level noise
    model; it saturates toward 1 for n̄ ≫ 1, where a qubit truncation can no
    longer represent the bath.
    """
    nbar = float(nbar)
    if not math.isfinite(nbar) or nbar < 0.0:
        raise DegenerateInput(f"occupancy must be finite and >= 0, got {nbar!r}")
    return nbar / (1.0 + nbar)


def snr(p_signal: float, p_noise: float) -> float:
    """Signal-to-noise power ratio P_signal / P_noise."""
    p_signal = _require_positive("signal power", p_signal)
    p_noise = _require_positive("noise power", p_noise)
    return p_signal / p_noise


def range_multiplier(sensitivity_improvement: float) -> float:
    """Detection-range gain from a sensitivity gain: ratio^(1/4).

    Received power falls as 1/R⁴ for a round trip, so detecting 100× weaker
    signals stretches the range by 100^(1/4) ≈ 3.16.
    """
    ratio = _require_positive("sensitivity improvement", sensitivity_improvement)
    return ratio ** 0.25


def shielding_effectiveness(d: float, lam: float) -> float:
    """SE = 20·log₁₀(d/λ) in dB for shield thickness d and wavelength λ.

    Negative for d < λ; reported verbatim and flagged by the evaluator.
    """
    d = _require_positive("shield thickness", d)
    lam = _require_positive("wavelength", lam)
    return 20.0 * math.log10(d / lam)


def isolation_factor(n_ext: float, n_isolated: float) -> float:
    """Isolation ratio I = N_ext / N_isolated."""
    n_ext = _require_positive("external noise", n_ext)
    n_isolated = _require_positive("isolated noise", n_isolated)
    return n_ext / n_isolated


def stopband_attenuation(a_stop: float, a_pass: float) -> float:
    """SA = 20·log₁₀(A_stop / A_pass) in dB; negative when the stopband
    amplitude is the smaller one (sign convention reported verbatim)."""
    a_stop = _require_positive("stopband amplitude", a_stop)
    a_pass = _require_positive("passband amplitude", a_pass)
    return 20.0 * math.log10(a_stop / a_pass)


@dataclass(frozen=True)
class LinkBudgetInputs:
    """Physical inputs for the calculators; every field is optional and, when
    given, must be strictly positive."""

    power_w: float | None = None
    frequency_hz: float | None = None
    temperature_k: float | None = None
    noise_power_w: float | None = None
    shield_thickness_m: float | None = None
    wavelength_m: float | None = None
    amplitude_stop: float | None = None
    amplitude_pass: float | None = None
    noise_ext: float | None = None
    noise_isolated: float | None = None

    def __post_init__(self):
        for spec in fields(self):
            value = getattr(self, spec.name)
            if value is not None:
                object.__setattr__(self, spec.name, _require_positive(spec.name, value))


@dataclass(frozen=True)
class LinkBudgetResult:
    """Every output derivable from the inputs that were supplied; the rest
    stay None. ``warnings`` flags physically questionable regimes."""

    power_dbm: float | None = None
    noise_power_dbm: float | None = None
    photon_energy_j: float | None = None
    photon_rate_per_s: float | None = None
    thermal_occupancy: float | None = None
    noise_excitation: float | None = None
    snr: float | None = None
    shielding_effectiveness_db: float | None = None
    isolation_factor: float | None = None
    stopband_attenuation_db: float | None = None
    warnings: tuple[str, ...] = ()


def evaluate_link_budget(inputs: LinkBudgetInputs) -> LinkBudgetResult:
    """Run every calculator whose inputs are present."""
    i = inputs
    warnings: list[str] = []
    values: dict[str, float] = {}

    if i.power_w is not None:
        values["power_dbm"] = watts_to_dbm(i.power_w)
    if i.noise_power_w is not None:
        values["noise_power_dbm"] = watts_to_dbm(i.noise_power_w)
    if i.frequency_hz is not None:
        values["photon_energy_j"] = photon_energy(i.frequency_hz)
    if i.power_w is not None and i.frequency_hz is not None:
        values["photon_rate_per_s"] = photon_rate(i.power_w, i.frequency_hz)
    if i.frequency_hz is not None and i.temperature_k is not None:
        nbar = thermal_occupancy(i.frequency_hz, i.temperature_k)
        values["thermal_occupancy"] = nbar
        values["noise_excitation"] = occupancy_to_excitation(nbar)
        if nbar > SATURATION_NBAR:
            warnings.append(
                f"thermal occupancy {nbar:.6g} far exceeds 1; the two-level noise model "
                f"saturates (excitation {values['noise_excitation']:.6g} is pinned near 1)"
            )
    if i.power_w is not None and i.noise_power_w is not None:
        values["snr"] = snr(i.power_w, i.noise_power_w)
    if i.shield_thickness_m is not None and i.wavelength_m is not None:
        values["shielding_effectiveness_db"] = shielding_effectiveness(
            i.shield_thickness_m, i.wavelength_m
        )
        if i.shield_thickness_m < i.wavelength_m:
            warnings.append(
                "shielding effectiveness is negative in the sub-wavelength regime "
                "(shield thickness below wavelength); formula reported verbatim"
            )
    if i.noise_ext is not None and i.noise_isolated is not None:
        values["isolation_factor"] = isolation_factor(i.noise_ext, i.noise_isolated)
    if i.amplitude_stop is not None and i.amplitude_pass is not None:
        values["stopband_attenuation_db"] = stopband_attenuation(i.amplitude_stop, i.amplitude_pass)
        if i.amplitude_stop < i.amplitude_pass:
            warnings.append(
                "stopband attenuation is negative (stopband amplitude below passband); "
                "sign convention reported verbatim"
            )
    return LinkBudgetResult(warnings=tuple(warnings), **values)
