"""Time-parameterized noise channels on a two-qubit register.

Both channel families act on the first qubit (the noisy one); the second
qubit is noise-free.  Channel action is specified pointwise in the scalar
decoherence parameter (kappa or chi), with thin time wrappers on the family
objects, so parameter-level identities stay testable without time grids.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decoherence import DephasingSpec, LorentzSpec, chi, kappa_complex

__all__ = [
    "DephasingChannel",
    "AmplitudeDampingChannel",
    "ChannelFamily",
    "SingularIntermediateMapError",
    "apply_dephasing",
    "apply_amplitude_damping",
    "maximally_entangled",
    "choi_state",
    "intermediate_choi",
]

_CONTRACTION_SLACK = 1e-12

# Decoherence magnitudes below this are treated as exact zeros when building
# intermediate maps (the ratio of decoherence values is undefined there).
SINGULARITY_TOL = 1e-14


class SingularIntermediateMapError(ArithmeticError):
    """The decoherence function vanishes, so the intermediate map is undefined."""

    def __init__(self, t: float):
        super().__init__(f"decoherence function vanishes at t={t!r}; intermediate map undefined")
        self.t = float(t)


def _blocks(rho: np.ndarray, rest: int) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    d = 2 * rest
    if rho.shape != (d, d):
        raise ValueError(f"expected a {d}x{d} matrix, got shape {rho.shape}")
    return rho.reshape(2, rest, 2, rest)


def _dephase(rho: np.ndarray, kappa: complex, rest: int) -> np.ndarray:
    """Multiply the 0-1 coherence blocks of the first qubit by kappa, kappa*."""
    b = _blocks(rho, rest).copy()
    b[0, :, 1, :] *= kappa
    b[1, :, 0, :] *= np.conj(kappa)
    return b.reshape(2 * rest, 2 * rest)


def _amp_damp(rho: np.ndarray, x: float, rest: int) -> np.ndarray:
    """Amplitude-damping action with amplitude x on the first qubit.

    Linear in rho and well-defined for any real x; it is a physical (CPTP)
    map only for |x| <= 1.  Basis order of the damped qubit: (ground, excited).
    """
    b = _blocks(rho, rest)
    out = np.empty_like(b)
    out[0, :, 0, :] = b[0, :, 0, :] + (1.0 - x * x) * b[1, :, 1, :]
    out[0, :, 1, :] = x * b[0, :, 1, :]
    out[1, :, 0, :] = x * b[1, :, 0, :]
    out[1, :, 1, :] = (x * x) * b[1, :, 1, :]
    return out.reshape(2 * rest, 2 * rest)


def apply_dephasing(rho: np.ndarray, kappa: complex) -> np.ndarray:
    """Dephase the first qubit of a two-qubit state by the complex factor kappa.

    The four coherence entries between the qubit's 0 and 1 sectors are
    multiplied by kappa (conjugate block by kappa*); diagonal blocks are
    untouched.  Rejects |kappa| > 1 (not a contraction).
    """
    kappa = complex(kappa)
    if abs(kappa) > 1.0 + _CONTRACTION_SLACK:
        raise ValueError(f"|kappa| = {abs(kappa):.12g} > 1: not a valid dephasing factor")
    return _dephase(rho, kappa, 2)


def apply_amplitude_damping(rho: np.ndarray, chi_value: float) -> np.ndarray:
    """Amplitude-damp the first qubit of a two-qubit state.

    Kraus pair K0 = diag(1, chi) in (ground, excited) order and
    K1 = sqrt(1 - chi^2) |ground><excited|, tensored with the identity on the
    second qubit.  Rejects |chi| > 1.
    """
    x = float(chi_value)
    if abs(x) > 1.0 + _CONTRACTION_SLACK:
        raise ValueError(f"|chi| = {abs(x):.12g} > 1: not a valid damping amplitude")
    return _amp_damp(rho, x, 2)


@dataclass(frozen=True)
class DephasingChannel:
    """Dephasing family Lambda_tau on qubit A, driven by kappa(tau)."""

    spec: DephasingSpec

    def decoherence(self, t):
        return kappa_complex(self.spec, t)

    def apply(self, rho: np.ndarray, t: float) -> np.ndarray:
        return apply_dephasing(rho, self.decoherence(t))


@dataclass(frozen=True)
class AmplitudeDampingChannel:
    """Amplitude-damping family Lambda_t on qubit A, driven by chi(t)."""

    spec: LorentzSpec

    def decoherence(self, t):
        return chi(self.spec, t)

    def apply(self, rho: np.ndarray, t: float) -> np.ndarray:
        return apply_amplitude_damping(rho, self.decoherence(t))


ChannelFamily = DephasingChannel | AmplitudeDampingChannel


def maximally_entangled(d: int) -> np.ndarray:
    """|Psi><Psi| with |Psi> = sum_j |j>|j> / sqrt(d), system factor first."""
    psi = np.eye(d, dtype=complex).reshape(-1) / np.sqrt(d)
    return np.outer(psi, psi.conj())


def _apply_on_first_qubit(family: ChannelFamily, rho: np.ndarray, value, rest: int) -> np.ndarray:
    if isinstance(family, DephasingChannel):
        return _dephase(rho, complex(value), rest)
    return _amp_damp(rho, float(value), rest)


def choi_state(family: ChannelFamily, t: float, system_dim: int) -> np.ndarray:
    """(Lambda_t x I) applied to the maximally entangled system-ancilla state.

    ``system_dim`` is 2 (the noisy qubit alone, via the reduced single-qubit
    channel) or 4 (both qubits, noise on the first).  The result is a valid
    density matrix of dimension system_dim**2.
    """
    if system_dim not in (2, 4):
        raise ValueError(f"system_dim must be 2 or 4, got {system_dim}")
    if t < 0.0:
        raise ValueError(f"t={t} must be non-negative")
    bell = maximally_entangled(system_dim)
    rest = system_dim * system_dim // 2
    return _apply_on_first_qubit(family, bell, family.decoherence(t), rest)


def intermediate_choi(family: ChannelFamily, t: float, eps: float) -> np.ndarray:
    """Choi matrix of the step map taking the state at ``t`` to ``t + eps``.

    Built from the decoherence ratio r = f(t+eps)/f(t) on the reduced
    single-qubit channel (4x4 Choi).  The result has unit trace and is
    Hermitian but may fail positivity; a negative eigenvalue signals a
    non-divisible step.  Raises ``SingularIntermediateMapError`` where the
    decoherence function vanishes.
    """
    if eps <= 0.0:
        raise ValueError(f"eps={eps} must be positive")
    f_t = family.decoherence(t)
    if abs(f_t) <= SINGULARITY_TOL:
        raise SingularIntermediateMapError(t)
    ratio = family.decoherence(t + eps) / f_t
    bell = maximally_entangled(2)
    return _apply_on_first_qubit(family, bell, ratio, 2)
