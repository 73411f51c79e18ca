"""Dense statevector reference for small codes.

Basis index ``n`` has bit ``i`` equal to data qubit ``i``. Stabilisers are
applied as forced projectors ``(I + (-1)^outcome O) / 2``, X-type first.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .amplitude import InjectionState, normalize
from .coset import Trajectory
from .lattice import CodeLayout

MAX_QUBITS = 13


def prepare_product(chi: InjectionState, n: int) -> np.ndarray:
    if n > MAX_QUBITS:
        raise ValueError(f"oracle is limited to {MAX_QUBITS} qubits, got {n}")
    state = np.array([1.0 + 0j])
    single = np.array([chi.alpha, chi.beta], dtype=complex)
    for _ in range(n):
        # identical factors, so the kron ordering of qubits is immaterial
        state = np.kron(single, state)
    return state


def _indices(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.uint64)


def measure_operator(sv: np.ndarray, support: int, kind: str, forced: int) -> tuple[np.ndarray, float]:
    """Project onto outcome ``forced`` of the X- or Z-type operator on
    ``support``. Returns the renormalised state (zeros if impossible) and
    the outcome probability."""
    idx = _indices(int(np.log2(len(sv))))
    sign = -1.0 if forced else 1.0
    if kind == "X":
        out = 0.5 * (sv + sign * sv[idx ^ np.uint64(support)])
    elif kind == "Z":
        parity = (np.bitwise_count(idx & np.uint64(support)) & 1).astype(float)
        out = 0.5 * (sv + sign * (1.0 - 2.0 * parity) * sv)
    else:
        raise ValueError(f"kind must be 'X' or 'Z', got {kind!r}")
    prob = float(np.vdot(out, out).real)
    if prob <= 1e-20:
        return np.zeros_like(sv), 0.0
    return out / np.sqrt(prob), prob


def run_trajectory(
    layout: CodeLayout, trajectory: Trajectory, chi: InjectionState, order: str = "XZ"
) -> tuple[np.ndarray, list[float]]:
    """Prepare ``|chi>^N`` and force every stabiliser outcome.

    Returns the final state and the per-measurement probabilities.
    """
    trajectory.check(layout)
    sv = prepare_product(chi, layout.num_data)
    steps = {
        "X": list(zip(layout.x_stabs, trajectory.x_outcomes)),
        "Z": list(zip(layout.z_stabs, trajectory.z_outcomes)),
    }
    probs = []
    for kind in order:
        for support, outcome in steps[kind]:
            sv, p = measure_operator(sv, support, kind, outcome)
            probs.append(p)
    return sv, probs


def codewords(layout: CodeLayout, x_outcomes, frame: tuple[int, int]) -> tuple[np.ndarray, np.ndarray]:
    """Normalised signed codewords built from the frame representatives."""
    n = layout.num_data
    words = []
    for rep in frame:
        vec = np.zeros(1 << n, dtype=complex)
        for subset in product((0, 1), repeat=len(layout.x_stabs)):
            image, sign = rep, 0
            for used, stab, outcome in zip(subset, layout.x_stabs, x_outcomes):
                if used:
                    image ^= stab
                    sign ^= outcome
            vec[image] += -1.0 if sign else 1.0
        words.append(vec / np.linalg.norm(vec))
    return words[0], words[1]


def logical_readout(sv: np.ndarray, layout: CodeLayout, x_outcomes, frame) -> tuple[complex, complex, float]:
    """Logical amplitudes of a fully projected state and its norm outside
    the two-dimensional codeword span."""
    c0, c1 = codewords(layout, x_outcomes, frame)
    a = complex(np.vdot(c0, sv))
    b = complex(np.vdot(c1, sv))
    residual = float(np.linalg.norm(sv - a * c0 - b * c1))
    return a, b, residual


def oracle_state(layout: CodeLayout, trajectory: Trajectory, chi: InjectionState, frame):
    """``(alpha_L, beta_L, probability, residual)``; amplitudes are zero
    when the trajectory is impossible."""
    sv, probs = run_trajectory(layout, trajectory, chi)
    prob = float(np.prod(probs))
    if prob == 0.0:
        return 0j, 0j, 0.0, 0.0
    a, b, residual = logical_readout(sv, layout, trajectory.x_outcomes, frame)
    return a, b, prob, residual


def compare_with_oracle(layout: CodeLayout, result, chis) -> float:
    """Worst deviation between a projection result and the oracle over ``chis``.

    Takes the max of ``1 - |<psi_alg|psi_oracle>|``, the probability
    mismatch and the oracle's out-of-code residual.
    """
    worst = 0.0
    for chi in chis:
        prob = result.probability(chi)
        a_o, b_o, prob_o, residual = oracle_state(layout, result.trajectory, chi, result.frame)
        worst = max(worst, abs(prob - prob_o), residual)
        if prob_o == 0.0 or prob == 0.0:
            continue
        (a, b), _ = normalize(result.logical, chi)
        norm = np.hypot(abs(a_o), abs(b_o))
        overlap = abs(a.conjugate() * a_o + b.conjugate() * b_o) / norm
        worst = max(worst, 1.0 - overlap)
    return worst
