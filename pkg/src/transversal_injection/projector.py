"""Signed X-stabiliser projection of a Z-consistent coset onto the code space.

After the Z projection, the state is ``sum_z term(|z|) |z>`` over the coset.
The X projection with outcomes ``x`` maps each ``z`` to
``sum_g (-1)^(x.g) |z ^ supp(g)>`` over generator subsets ``g``. The X group
splits the coset into two orbits by logical-Z parity; with orbit
representatives ``rep0``/``rep1`` the logical amplitudes are

    S0 = sum_{z in orbit0} (-1)^(x . g(z)) term(|z|),   g(z): rep0 -> z

and likewise ``S1`` over orbit1 relative to ``rep1``. The heralding
probability is ``2**-k * (|S0|^2 + |S1|^2)`` with ``k`` X generators.

Two engines compute ``(S0, S1)``:

``expansion``
    Expands every coset element over the full X group and keeps the images
    landing on ``rep0``/``rep1``; cost ``2**(N-1)``.
``solver``
    Uses the GF(2) solver to turn ``x . g(z)`` into a single masked parity
    of ``z ^ rep``; cost ``2**((N+1)/2)``.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .amplitude import AmplitudePoly, InjectionState, LogicalState
from .bitkit import Gf2Solver, masked_parity
from .coset import CosetStream, Trajectory, coset_representatives
from .lattice import CodeLayout

Engine = Literal["expansion", "solver"]
ENGINES = ("expansion", "solver")
MAX_EXPANSION_DISTANCE = 4

# cap on (coset block) x (group) pairs held at once by the expansion engine
_EXPANSION_PAIRS = 1 << 22


@dataclass(frozen=True)
class ProjectionResult:
    trajectory: Trajectory
    logical: LogicalState
    frame: tuple[int, int]
    num_x_generators: int

    @property
    def A(self) -> AmplitudePoly:
        return self.logical.A

    @property
    def B(self) -> AmplitudePoly:
        return self.logical.B

    def probability(self, chi: InjectionState) -> float:
        return trajectory_probability(self, chi)


def x_generator_solver(layout: CodeLayout) -> Gf2Solver:
    return Gf2Solver.from_supports(layout.x_stabs, layout.num_data)


def sign_mask(layout: CodeLayout, x_outcomes) -> int:
    """Mask ``m`` with ``masked_parity(y, m) == x . solve(y)`` on the X span."""
    x_word = sum(b << i for i, b in enumerate(x_outcomes))
    return x_generator_solver(layout).dual_mask(x_word)


def _group_table(layout: CodeLayout, x_outcomes) -> tuple[np.ndarray, np.ndarray]:
    """Supports and signs of all ``2**k`` X-stabiliser products."""
    supports = np.zeros(1, dtype=np.uint64)
    signs = np.zeros(1, dtype=np.uint8)
    for stab, outcome in zip(layout.x_stabs, x_outcomes):
        supports = np.concatenate([supports, supports ^ np.uint64(stab)])
        signs = np.concatenate([signs, signs ^ np.uint8(outcome)])
    return supports, signs


def _counts(weights: np.ndarray, negative: np.ndarray, n: int) -> np.ndarray:
    plus = np.bincount(weights[~negative], minlength=n + 1)
    minus = np.bincount(weights[negative], minlength=n + 1)
    return plus.astype(np.int64) - minus.astype(np.int64)


def _accumulate_solver(stream: CosetStream, frame, mask: int, n: int) -> np.ndarray:
    rep0, rep1 = frame
    lz = np.uint64(stream.layout.logical_z)
    m = np.uint64(mask)
    flip = np.uint8(masked_parity(rep0 ^ rep1, mask))
    width = n + 1
    counts = np.zeros(4 * width, dtype=np.int64)
    for block in stream.blocks():
        orbit = np.bitwise_count(block & lz) & np.uint8(1)
        # the sign relative to rep1 differs from the rep0 one by a constant
        negative = (np.bitwise_count((block ^ np.uint64(rep0)) & m) & np.uint8(1)) ^ (orbit * flip)
        key = (orbit.astype(np.intp) * 2 + negative) * width + np.bitwise_count(block)
        counts += np.bincount(key, minlength=4 * width)
    counts = counts.reshape(2, 2, width)
    return counts[:, 0, :] - counts[:, 1, :]


def _accumulate_expansion(stream: CosetStream, frame, x_outcomes, n: int) -> np.ndarray:
    rep0, rep1 = frame
    supports, signs = _group_table(stream.layout, x_outcomes)
    acc = np.zeros((2, n + 1), dtype=np.int64)
    rows = max(1, _EXPANSION_PAIRS // len(supports))
    for block in stream.blocks():
        for start in range(0, len(block), rows):
            z = block[start : start + rows]
            images = z[:, None] ^ supports[None, :]
            for idx, rep in enumerate((rep0, rep1)):
                zi, gi = np.nonzero(images == np.uint64(rep))
                weights = np.bitwise_count(z[zi]).astype(np.intp)
                acc[idx] += _counts(weights, signs[gi].astype(bool), n)
    return acc


def _accumulate(layout: CodeLayout, trajectory: Trajectory, frame, engine: str, part) -> np.ndarray:
    stream = CosetStream(layout, trajectory.z_outcomes, part)
    n = layout.num_data
    if engine == "solver":
        return _accumulate_solver(stream, frame, sign_mask(layout, trajectory.x_outcomes), n)
    return _accumulate_expansion(stream, frame, trajectory.x_outcomes, n)


def _accumulate_task(args):
    return _accumulate(*args)


def default_workers() -> int:
    return int(os.environ.get("TI_WORKERS", "1"))


def project(
    layout: CodeLayout,
    trajectory: Trajectory,
    engine: Engine = "solver",
    *,
    workers: int = 1,
    frame: tuple[int, int] | None = None,
) -> ProjectionResult:
    """Logical amplitude polynomials heralded by ``trajectory``.

    ``frame`` overrides the orbit representatives; ``rep1`` must have odd
    logical-Z parity and both must lie in the coset.
    """
    trajectory.check(layout)
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    if layout.num_data > 64:
        raise ValueError("projection supports N <= 64 only")
    if engine == "expansion" and layout.distance > MAX_EXPANSION_DISTANCE:
        raise ValueError(f"expansion engine is limited to d <= {MAX_EXPANSION_DISTANCE}; use the solver")
    if frame is None:
        frame = coset_representatives(layout, trajectory.z_outcomes)
    _check_frame(layout, trajectory, frame)

    if workers <= 1:
        acc = _accumulate(layout, trajectory, frame, engine, (0, 1))
    else:
        tasks = [(layout, trajectory, frame, engine, (k, workers)) for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            acc = sum(pool.map(_accumulate_task, tasks))

    n = layout.num_data
    logical = LogicalState(
        AmplitudePoly(n, [int(c) for c in acc[0]]),
        AmplitudePoly(n, [int(c) for c in acc[1]]),
    )
    return ProjectionResult(trajectory, logical, tuple(frame), len(layout.x_stabs))


def _check_frame(layout: CodeLayout, trajectory: Trajectory, frame) -> None:
    rep0, rep1 = frame
    for rep, parity in ((rep0, 0), (rep1, 1)):
        if masked_parity(rep, layout.logical_z) != parity:
            raise ValueError("frame representatives have the wrong logical parity")
        for stab, outcome in zip(layout.z_stabs, trajectory.z_outcomes):
            if masked_parity(rep, stab) != outcome:
                raise ValueError("frame representative is not in the coset")


def trajectory_probability(result: ProjectionResult, chi: InjectionState) -> float:
    a = result.A.evaluate(chi)
    b = result.B.evaluate(chi)
    return (abs(a) ** 2 + abs(b) ** 2) / float(1 << result.num_x_generators)


def projection_table(layout: CodeLayout, trajectory: Trajectory) -> dict[int, list[tuple[int, int]]]:
    """Signed images of every coset element under the X projection.

    Maps each coset string to ``[(sign, image), ...]`` in generator-subset
    order (subset bit ``i`` = X stabiliser ``i``). Small layouts only.
    """
    trajectory.check(layout)
    if layout.num_data > 13:
        raise ValueError("projection table is for N <= 13")
    out = {}
    k = len(layout.x_stabs)
    for z in CosetStream(layout, trajectory.z_outcomes):
        row = []
        for subset in range(1 << k):
            image = z
            sign = 0
            for i in range(k):
                if (subset >> i) & 1:
                    image ^= layout.x_stabs[i]
                    sign ^= trajectory.x_outcomes[i]
            row.append((-1 if sign else 1, image))
        out[z] = row
    return out


def basis_coefficients(layout: CodeLayout, trajectory: Trajectory) -> dict[int, AmplitudePoly]:
    """Unnormalised coefficient of each basis string after both projections
    (scaled by ``2**k``)."""
    n = layout.num_data
    coeffs: dict[int, AmplitudePoly] = {}
    for z, images in projection_table(layout, trajectory).items():
        w = z.bit_count()
        for sign, image in images:
            coeffs[image] = coeffs.get(image, AmplitudePoly(n)).add_term(w, sign)
    return coeffs
