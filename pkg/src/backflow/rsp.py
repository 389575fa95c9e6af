"""Bell-diagonal resource states, Pauli correlation matrices and the
remote-state-preparation fidelity functional."""

from __future__ import annotations

import numpy as np

from .linalg import PAULIS, tensor_product

__all__ = ["bell_diagonal", "correlation_matrix", "rsp_fidelity"]

_PSD_SLACK = 4e-12


def bell_diagonal(c) -> np.ndarray:
    """Two-qubit state (1/4)(I x I + sum_j c_j sigma_j x sigma_j).

    ``c`` is the triple (c1, c2, c3) of real correlations in the Pauli basis
    (sigma_x, sigma_y, sigma_z).  The state is positive semidefinite exactly
    when 1 - c1 - c2 - c3, 1 - c1 + c2 + c3, 1 + c1 - c2 + c3 and
    1 + c1 + c2 - c3 are all non-negative; violating triples are rejected
    with the offending combination.
    """
    c1, c2, c3 = (float(x) for x in c)
    for x, name in ((c1, "c1"), (c2, "c2"), (c3, "c3")):
        if not -1.0 <= x <= 1.0:
            raise ValueError(f"{name}={x} outside [-1, 1]")
    # The four eigenvalues of the state are these combinations divided by 4.
    combos = {
        "1 - c1 - c2 - c3": 1.0 - c1 - c2 - c3,
        "1 - c1 + c2 + c3": 1.0 - c1 + c2 + c3,
        "1 + c1 - c2 + c3": 1.0 + c1 - c2 + c3,
        "1 + c1 + c2 - c3": 1.0 + c1 + c2 - c3,
    }
    for name, value in combos.items():
        if value < -_PSD_SLACK:
            raise ValueError(
                f"({c1}, {c2}, {c3}) gives a negative eigenvalue: {name} = {value:.6g} < 0"
            )
    rho = np.eye(4, dtype=complex)
    for coeff, sigma in zip((c1, c2, c3), PAULIS):
        rho += coeff * tensor_product(sigma, sigma)
    return rho / 4.0


def correlation_matrix(rho: np.ndarray) -> np.ndarray:
    """3x3 real matrix of Pauli-Pauli expectations tr[rho sigma_j x sigma_j']."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 state, got shape {rho.shape}")
    c = np.empty((3, 3), dtype=float)
    for j, sj in enumerate(PAULIS):
        for jp, sjp in enumerate(PAULIS):
            c[j, jp] = float(np.trace(rho @ tensor_product(sj, sjp)).real)
    return c


def rsp_fidelity(c: np.ndarray) -> float:
    """Mean of the two smallest eigenvalues of C^T C.

    The fidelity depends only on the spectrum of C^T C, so it is invariant
    under sign flips and row/column permutations of the correlation matrix.
    """
    c = np.asarray(c, dtype=float)
    if c.shape != (3, 3):
        raise ValueError(f"expected a 3x3 correlation matrix, got shape {c.shape}")
    eigs = np.linalg.eigvalsh(c.T @ c)
    return float(0.5 * (eigs[0] + eigs[1]))
