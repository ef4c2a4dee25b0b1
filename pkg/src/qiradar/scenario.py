"""Scenario documents: a flat key-value grammar and its validation.

Grammar, one entry per line:

    # full-line comments and blank lines are ignored
    key = value        (or "key: value")
    link_budget.power_w = 1e-16

Keys:

    phase_rad          required, finite real, radians
    reflectivity       required, in [0, 1]
    noise_excitation   in [0, 1); mutually exclusive with the pair below
    frequency_hz       > 0 )  both together derive noise_excitation from the
    temperature_k      > 0 )  thermal occupancy at that frequency/temperature
    env_phase_rad      finite real, default 0 (known environmental phase,
                       subtracted from phase_rad before detection)
    prior_h0           both or neither; nonnegative, must sum to 1
    prior_h1           (default 0.5 / 0.5)
    trials             integer >= 0, default 0 (0 means analytic only)
    seed               unsigned 64-bit integer, default 0
    roc_thresholds     comma-separated, each >= 0, non-descending
    link_budget.*      optional group, dotted keys named after
                       LinkBudgetInputs fields, each > 0

Unknown or duplicate keys raise ParseError with the line number; range and
consistency violations raise ValidationError naming the field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

from .errors import ParseError, ValidationError
from .linkbudget import LinkBudgetInputs, occupancy_to_excitation, thermal_occupancy

MAX_SEED = 2**64 - 1

_LINK_PREFIX = "link_budget."
_LINK_KEYS = frozenset(_LINK_PREFIX + f.name for f in fields(LinkBudgetInputs))
_SCALAR_KEYS = frozenset({
    "phase_rad", "reflectivity", "noise_excitation", "frequency_hz", "temperature_k",
    "env_phase_rad", "prior_h0", "prior_h1", "trials", "seed", "roc_thresholds",
})
KNOWN_KEYS = _SCALAR_KEYS | _LINK_KEYS


@dataclass(frozen=True)
class Scenario:
    """One validated detection scenario.

    noise_excitation is always populated; when the document gave
    frequency_hz/temperature_k instead, it holds the derived value and the
    two source fields are echoed alongside it.
    """

    phase_rad: float
    reflectivity: float
    noise_excitation: float
    frequency_hz: float | None = None
    temperature_k: float | None = None
    env_phase_rad: float = 0.0
    prior_h0: float = 0.5
    prior_h1: float = 0.5
    trials: int = 0
    seed: int = 0
    roc_thresholds: tuple[float, ...] | None = None
    link_budget: LinkBudgetInputs | None = None


def _split_line(raw: str, line_no: int) -> tuple[str, str]:
    for sep in ("=", ":"):
        if sep in raw:
            key, _, value = raw.partition(sep)
            key = key.strip()
            value = value.strip()
            if not key:
                raise ParseError(f"line {line_no}: missing key before {sep!r}", line=line_no)
            if not value:
                raise ParseError(f"line {line_no}: missing value for {key!r}", line=line_no)
            return key, value
    raise ParseError(f"line {line_no}: expected 'key = value', got {raw!r}", line=line_no)


def _float_field(key: str, text: str, line_no: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(
            f"line {line_no}: value for {key!r} is not a number: {text!r}", line=line_no
        )
    if not math.isfinite(value):
        raise ValidationError(f"{key} must be finite, got {text!r}", field=key)
    return value


def _int_field(key: str, text: str, line_no: int) -> int:
    try:
        return int(text, 10)
    except ValueError:
        raise ParseError(
            f"line {line_no}: value for {key!r} is not an integer: {text!r}", line=line_no
        )


def _float_list_field(key: str, text: str, line_no: int) -> tuple[float, ...]:
    tokens = [tok.strip() for tok in text.split(",")]
    if any(not tok for tok in tokens):
        raise ParseError(f"line {line_no}: empty entry in list for {key!r}", line=line_no)
    return tuple(_float_field(key, tok, line_no) for tok in tokens)


def _positive_field(key: str, value: float) -> float:
    if value <= 0.0:
        raise ValidationError(f"{key} must be > 0, got {value!r}", field=key)
    return value


def parse_scenario(text: str) -> Scenario:
    """Parse and fully validate a scenario document."""
    entries: dict[str, tuple[str, int]] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, value = _split_line(stripped, line_no)
        if key not in KNOWN_KEYS:
            raise ParseError(f"line {line_no}: unknown key {key!r}", line=line_no)
        if key in entries:
            raise ParseError(f"line {line_no}: duplicate key {key!r}", line=line_no)
        entries[key] = (value, line_no)

    def take_float(key):
        if key not in entries:
            return None
        return _float_field(key, *entries[key])

    def take_int(key):
        if key not in entries:
            return None
        return _int_field(key, *entries[key])

    # Required scalars.
    phase_rad = take_float("phase_rad")
    if phase_rad is None:
        raise ValidationError("phase_rad is required", field="phase_rad")
    reflectivity = take_float("reflectivity")
    if reflectivity is None:
        raise ValidationError("reflectivity is required", field="reflectivity")
    if not (0.0 <= reflectivity <= 1.0):
        raise ValidationError(
            f"reflectivity must lie in [0, 1], got {reflectivity!r}", field="reflectivity"
        )

    # Noise specification: direct excitation XOR frequency/temperature pair.
    noise_excitation = take_float("noise_excitation")
    frequency_hz = take_float("frequency_hz")
    temperature_k = take_float("temperature_k")
    if noise_excitation is not None:
        if frequency_hz is not None or temperature_k is not None:
            raise ValidationError(
                "give either noise_excitation or the frequency_hz/temperature_k pair, not both",
                field="noise_excitation",
            )
        if not (0.0 <= noise_excitation < 1.0):
            raise ValidationError(
                f"noise_excitation must lie in [0, 1), got {noise_excitation!r}",
                field="noise_excitation",
            )
    else:
        if frequency_hz is None or temperature_k is None:
            raise ValidationError(
                "either noise_excitation or both frequency_hz and temperature_k are required",
                field="noise_excitation",
            )
        _positive_field("frequency_hz", frequency_hz)
        _positive_field("temperature_k", temperature_k)
        noise_excitation = occupancy_to_excitation(thermal_occupancy(frequency_hz, temperature_k))
        if noise_excitation >= 1.0:
            raise ValidationError(
                "thermal occupancy at frequency_hz/temperature_k is too large for the "
                "two-level noise model (derived excitation rounds to 1)",
                field="temperature_k",
            )

    env_phase_rad = take_float("env_phase_rad")
    if env_phase_rad is None:
        env_phase_rad = 0.0

    # Priors come as a pair or not at all; silently completing one given
    # value would hide a typo.
    prior_h0 = take_float("prior_h0")
    prior_h1 = take_float("prior_h1")
    if (prior_h0 is None) != (prior_h1 is None):
        raise ValidationError(
            "prior_h0 and prior_h1 must be given together", field="prior_h0"
        )
    if prior_h0 is None:
        prior_h0, prior_h1 = 0.5, 0.5
    if prior_h0 < 0.0 or prior_h1 < 0.0 or abs(prior_h0 + prior_h1 - 1.0) > 1e-9:
        raise ValidationError(
            f"priors must be nonnegative and sum to 1, got {prior_h0!r} and {prior_h1!r}",
            field="prior_h0",
        )

    trials = take_int("trials")
    if trials is None:
        trials = 0
    if trials < 0:
        raise ValidationError(f"trials must be >= 0, got {trials}", field="trials")

    seed = take_int("seed")
    if seed is None:
        seed = 0
    if not (0 <= seed <= MAX_SEED):
        raise ValidationError(
            f"seed must be an unsigned 64-bit integer, got {seed}", field="seed"
        )

    roc_thresholds = None
    if "roc_thresholds" in entries:
        roc_thresholds = _float_list_field("roc_thresholds", *entries["roc_thresholds"])
        if any(t < 0.0 for t in roc_thresholds):
            raise ValidationError("roc_thresholds must all be >= 0", field="roc_thresholds")
        if any(b < a for a, b in zip(roc_thresholds, roc_thresholds[1:])):
            raise ValidationError(
                "roc_thresholds must be in ascending order", field="roc_thresholds"
            )

    link_budget = None
    link_values = {}
    for key in sorted(_LINK_KEYS):
        if key in entries:
            value = _float_field(key, *entries[key])
            _positive_field(key, value)
            link_values[key[len(_LINK_PREFIX):]] = value
    if link_values:
        link_budget = LinkBudgetInputs(**link_values)

    return Scenario(
        phase_rad=phase_rad,
        reflectivity=reflectivity,
        noise_excitation=noise_excitation,
        frequency_hz=frequency_hz,
        temperature_k=temperature_k,
        env_phase_rad=env_phase_rad,
        prior_h0=prior_h0,
        prior_h1=prior_h1,
        trials=trials,
        seed=seed,
        roc_thresholds=roc_thresholds,
        link_budget=link_budget,
    )
