"""Unrotated (planar) surface code layouts.

Cells live on a (2d-1) x (2d-1) grid. Data qubits sit where row+col is
even and are numbered row-major from 0. Z-type (plaquette) ancillas sit at
(odd row, even col), X-type (vertex) ancillas at (even row, odd col); each
couples to its grid neighbours. The logical Z chain is data row 0 (left to
right), the logical X chain data column 0 (top to bottom).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .bitkit import gf2_rank, hamming, masked_parity, to_indices


@dataclass(frozen=True)
class CodeLayout:
    distance: int
    num_data: int
    x_stabs: tuple[int, ...]
    z_stabs: tuple[int, ...]
    logical_z: int
    logical_x: int
    z_aux_index: tuple[tuple[int, ...], ...]
    coords: tuple[tuple[int, int], ...] = ()

    @property
    def num_stabs(self) -> int:
        """Stabilisers of each type, (N-1)/2."""
        return len(self.z_stabs)

    @property
    def num_trajectories(self) -> int:
        return 1 << (2 * self.num_stabs)

    def to_json(self) -> dict[str, Any]:
        return {
            "distance": self.distance,
            "num_data": self.num_data,
            "x_stabs": [to_indices(s) for s in self.x_stabs],
            "z_stabs": [to_indices(s) for s in self.z_stabs],
            "logical_z": to_indices(self.logical_z),
            "logical_x": to_indices(self.logical_x),
        }


def build_layout(d: int) -> CodeLayout:
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"distance must be an integer >= 2, got {d!r}")
    size = 2 * d - 1
    index: dict[tuple[int, int], int] = {}
    for r in range(size):
        for c in range(size):
            if (r + c) % 2 == 0:
                index[(r, c)] = len(index)

    def support(r: int, c: int) -> int:
        mask = 0
        for dr, dc in ((-1, 0), (0, -1), (0, 1), (1, 0)):
            q = index.get((r + dr, c + dc))
            if q is not None:
                mask |= 1 << q
        return mask

    z_stabs, x_stabs = [], []
    for r in range(size):
        for c in range(size):
            if r % 2 == 1 and c % 2 == 0:
                z_stabs.append(support(r, c))
            elif r % 2 == 0 and c % 2 == 1:
                x_stabs.append(support(r, c))

    logical_z = sum(1 << index[(0, c)] for c in range(0, size, 2))
    logical_x = sum(1 << index[(r, 0)] for r in range(0, size, 2))
    return CodeLayout(
        distance=d,
        num_data=len(index),
        x_stabs=tuple(x_stabs),
        z_stabs=tuple(z_stabs),
        logical_z=logical_z,
        logical_x=logical_x,
        z_aux_index=tuple(tuple(to_indices(s)) for s in z_stabs),
        coords=tuple(index),
    )


def _chain_connected(layout: CodeLayout, chain: int) -> bool:
    """Consecutive chain qubits must share a stabiliser of the other type's
    neighbourhood, i.e. sit two grid cells apart on one row."""
    if not layout.coords:
        return True
    cells = sorted(layout.coords[q] for q in to_indices(chain))
    size = 2 * layout.distance - 1
    if len({r for r, _ in cells}) != 1:
        return False
    cols = [c for _, c in cells]
    return cols[0] == 0 and cols[-1] == size - 1 and all(
        b - a == 2 for a, b in zip(cols, cols[1:])
    )


def validate_layout(layout: CodeLayout) -> list[str]:
    """Return the invariants ``layout`` violates; an empty list means pass."""
    problems: list[str] = []
    d, n = layout.distance, layout.num_data
    if n != d * d + (d - 1) ** 2:
        problems.append(f"num_data {n} != d^2 + (d-1)^2")
    half = (n - 1) // 2
    if len(layout.x_stabs) != half or len(layout.z_stabs) != half:
        problems.append("stabiliser counts must both equal (N-1)/2")
    full = (1 << n) - 1
    for kind, stabs in (("x", layout.x_stabs), ("z", layout.z_stabs)):
        for i, s in enumerate(stabs):
            if s & ~full:
                problems.append(f"{kind}_stabs[{i}] has bits beyond N")
            if hamming(s) not in (3, 4):
                problems.append(f"{kind}_stabs[{i}] has weight {hamming(s)}")
    for i, xs in enumerate(layout.x_stabs):
        for j, zs in enumerate(layout.z_stabs):
            if masked_parity(xs, zs):
                problems.append(f"commutation: x_stabs[{i}] and z_stabs[{j}] overlap oddly")
    for i, xs in enumerate(layout.x_stabs):
        if masked_parity(layout.logical_z, xs):
            problems.append(f"logical_z anticommutes with x_stabs[{i}]")
    for j, zs in enumerate(layout.z_stabs):
        if masked_parity(layout.logical_x, zs):
            problems.append(f"logical_x anticommutes with z_stabs[{j}]")
    if not masked_parity(layout.logical_z, layout.logical_x):
        problems.append("logical_z and logical_x must overlap oddly")
    if hamming(layout.logical_z) != d:
        problems.append(f"logical_z popcount {hamming(layout.logical_z)} != d")
    elif not _chain_connected(layout, layout.logical_z):
        problems.append("logical_z is not a connected left-right chain")
    if len(layout.z_aux_index) != len(layout.z_stabs) or any(
        list(row) != to_indices(s) for row, s in zip(layout.z_aux_index, layout.z_stabs)
    ):
        problems.append("z_aux_index does not list z_stabs supports")
    if gf2_rank(list(layout.z_stabs) + [layout.logical_z], n) != half + 1:
        problems.append("[z_stabs; logical_z] is rank deficient")
    return problems
