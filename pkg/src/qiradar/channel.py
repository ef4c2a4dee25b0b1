"""Target and environment model producing the two detection hypotheses.

Both hypotheses live on a common 4-dimensional return-mode ⊗ idler space,
return mode first:

    H0 (no target):  ρ₀ = noise_state(p) ⊗ I/2
    H1 (target):     ρ₁ = η |ψ′⟩⟨ψ′| + (1 − η) ρ₀

where |ψ′⟩ = (|00⟩ + e^{iφ}|11⟩)/√2 is the entangled pair after the target
imprints phase φ on the signal mode, η is the probability the signal photon
returns coherently, and p is the excitation probability of the noise mode.
The idler factor I/2 under H0 is the reduced idler state of the pair itself,
so the idler alone carries no information about which hypothesis holds.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput, DimensionMismatch
from .qstate import DensityOperator, PureState, bell_phi_plus, density_from_pure, tensor

TWO_PI = 2.0 * math.pi


def _reduce_phase(phi: float) -> float:
    """Map any finite angle into [0, 2π)."""
    reduced = math.fmod(phi, TWO_PI)
    if reduced < 0.0:
        reduced += TWO_PI
    if reduced >= TWO_PI:
        # fmod of a tiny negative can round back up to exactly 2π.
        reduced = 0.0
    return reduced


@dataclass(frozen=True)
class TargetParams:
    """Physical parameters of one target interaction.

    phase_phi is stored reduced to [0, 2π); reflectivity_eta must lie in
    [0, 1] and noise_excitation_p in [0, 1).
    """

    phase_phi: float
    reflectivity_eta: float
    noise_excitation_p: float

    def __post_init__(self):
        phi = float(self.phase_phi)
        eta = float(self.reflectivity_eta)
        p = float(self.noise_excitation_p)
        if not math.isfinite(phi):
            raise DegenerateInput(f"phase must be finite, got {self.phase_phi!r}")
        if not (0.0 <= eta <= 1.0):
            raise DegenerateInput(f"reflectivity must lie in [0, 1], got {eta!r}")
        if not (0.0 <= p < 1.0):
            raise DegenerateInput(f"noise excitation must lie in [0, 1), got {p!r}")
        object.__setattr__(self, "phase_phi", _reduce_phase(phi))
        object.__setattr__(self, "reflectivity_eta", eta)
        object.__setattr__(self, "noise_excitation_p", p)


def apply_signal_phase(psi: PureState, phi: float) -> PureState:
    """Imprint |1⟩_S → e^{iφ}|1⟩_S on the signal (first) mode of a 2x2 state.

    Norm is unchanged; the entangled pair maps to (|00⟩ + e^{iφ}|11⟩)/√2.
    """
    if psi.dims != (2, 2):
        raise DimensionMismatch(f"expected a state on dims (2, 2), got {psi.dims}")
    if not math.isfinite(float(phi)):
        raise DegenerateInput(f"phase must be finite, got {phi!r}")
    amps = psi.amplitudes.copy()
    amps[2:] *= cmath.exp(1j * float(phi))  # basis index 2s + i, signal-first
    return PureState(amps, psi.dims)


def noise_state(p: float) -> DensityOperator:
    """Single-mode noise qubit diag(1 − p, p) for excitation probability p."""
    p = float(p)
    if not (0.0 <= p < 1.0):
        raise DegenerateInput(f"noise excitation must lie in [0, 1), got {p!r}")
    return DensityOperator(np.diag([1.0 - p, p]).astype(complex), (2,))


def hypothesis_h0(p: float) -> DensityOperator:
    """No-target hypothesis ρ₀ = noise_state(p) ⊗ I/2 on return ⊗ idler."""
    idler = DensityOperator(np.eye(2, dtype=complex) / 2.0, (2,))
    return tensor(noise_state(p), idler)


def hypothesis_h1(params: TargetParams) -> DensityOperator:
    """Target hypothesis ρ₁ = η |ψ′⟩⟨ψ′| + (1 − η) ρ₀.

    At η = 1 this is exactly the rank-1 projector onto the phase-shifted
    pair; at η = 0 it collapses to hypothesis_h0(p).
    """
    rho0 = hypothesis_h0(params.noise_excitation_p)
    psi_prime = apply_signal_phase(bell_phi_plus(), params.phase_phi)
    pure = density_from_pure(psi_prime)
    eta = params.reflectivity_eta
    return DensityOperator(eta * pure.matrix + (1.0 - eta) * rho0.matrix, (2, 2))
