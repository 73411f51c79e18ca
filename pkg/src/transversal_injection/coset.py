"""Z-consistent data-qubit strings.

Given Z-stabiliser outcomes ``s``, the strings ``z`` with
``masked_parity(z, z_stabs[i]) == s[i]`` are built one stabiliser at a time:
bits already fixed by earlier stabilisers ("seen") decide the parity ``t``
still owed, and the partial string is extended by every subset of the
stabiliser's unseen qubits of size parity ``t``.

The walk is a tree with one level per stabiliser. ``CosetStream`` visits
leaves depth-first in combination order, either one int at a time or in
numpy blocks; both orders agree. Partitioning splits the tree at a fixed
depth and deals the subtrees out round-robin.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .bitkit import (
    affine_lexmin,
    affine_solutions,
    combinations,
    from_bits,
    masked_parity,
    to_bits,
)
from .lattice import CodeLayout

DEFAULT_BLOCK = 1 << 18


@dataclass(frozen=True)
class Trajectory:
    """Measured outcomes: X-stabiliser bits, then Z-stabiliser bits."""

    x_outcomes: tuple[int, ...]
    z_outcomes: tuple[int, ...]

    def __post_init__(self):
        if len(self.x_outcomes) != len(self.z_outcomes):
            raise ValueError("x and z outcome strings must have equal length")
        if any(b not in (0, 1) for b in self.x_outcomes + self.z_outcomes):
            raise ValueError("outcomes must be bits")

    @classmethod
    def parse(cls, text: str, layout: CodeLayout | None = None) -> "Trajectory":
        if any(ch not in "01" for ch in text):
            raise ValueError(f"trajectory must be a bit string, got {text!r}")
        if layout is not None and len(text) != 2 * layout.num_stabs:
            raise ValueError(
                f"trajectory length must be {2 * layout.num_stabs} for d={layout.distance}, got {len(text)}"
            )
        if len(text) % 2:
            raise ValueError("trajectory length must be even")
        half = len(text) // 2
        bits = tuple(int(ch) for ch in text)
        return cls(bits[:half], bits[half:])

    @classmethod
    def from_words(cls, x_word: int, z_word: int, num_stabs: int) -> "Trajectory":
        """Build from ints whose bit ``i`` is the outcome of stabiliser ``i``."""
        return cls(
            tuple((x_word >> i) & 1 for i in range(num_stabs)),
            tuple((z_word >> i) & 1 for i in range(num_stabs)),
        )

    @property
    def x_word(self) -> int:
        return from_bits("".join(map(str, self.x_outcomes)))

    @property
    def z_word(self) -> int:
        return from_bits("".join(map(str, self.z_outcomes)))

    def check(self, layout: CodeLayout) -> None:
        if len(self.z_outcomes) != layout.num_stabs:
            raise ValueError(
                f"trajectory has {len(self.z_outcomes)} outcomes per type, layout needs {layout.num_stabs}"
            )

    def __str__(self):
        return "".join(map(str, self.x_outcomes + self.z_outcomes))


@dataclass(frozen=True)
class _Level:
    seen: int
    outcome: int
    even: tuple[int, ...]
    odd: tuple[int, ...]

    def choices(self, partial: int) -> tuple[int, ...]:
        if masked_parity(partial, self.seen) ^ self.outcome:
            return self.odd
        return self.even

    @property
    def branching(self) -> int:
        return max(len(self.even), len(self.odd))


def _levels(layout: CodeLayout, z_outcomes: Sequence[int]) -> tuple[_Level, ...]:
    levels = []
    covered = 0
    for row, outcome in zip(layout.z_aux_index, z_outcomes):
        support = sum(1 << q for q in row)
        unseen = [q for q in row if not (covered >> q) & 1]
        levels.append(
            _Level(
                seen=support & covered,
                outcome=outcome,
                even=tuple(combinations(unseen, 0)),
                odd=tuple(combinations(unseen, 1)),
            )
        )
        covered |= support
    free = [q for q in range(layout.num_data) if not (covered >> q) & 1]
    if free:
        every = tuple(combinations(free, 0)) + tuple(combinations(free, 1))
        levels.append(_Level(seen=0, outcome=0, even=every, odd=every))
    return tuple(levels)


def _walk(levels: Sequence[_Level], depth: int, prefix: int) -> Iterator[int]:
    """Depth-first leaves below ``prefix`` (which sits at ``depth``)."""
    n_levels = len(levels)
    if depth == n_levels:
        yield prefix
        return
    partial = [0] * (n_levels + 1)
    options: list[tuple[int, ...]] = [()] * n_levels
    pos = [0] * n_levels
    i = depth
    partial[i] = prefix
    options[i] = levels[i].choices(prefix)
    while i >= depth:
        if pos[i] < len(options[i]):
            nxt = partial[i] | options[i][pos[i]]
            pos[i] += 1
            if i + 1 == n_levels:
                yield nxt
            else:
                i += 1
                partial[i] = nxt
                options[i] = levels[i].choices(nxt)
                pos[i] = 0
        else:
            i -= 1


def _expand_block(levels: Sequence[_Level], depth: int, arr: np.ndarray) -> np.ndarray:
    for lvl in levels[depth:]:
        t = (np.bitwise_count(arr & np.uint64(lvl.seen)) & np.uint8(1)) ^ np.uint8(lvl.outcome)
        if len(lvl.even) == len(lvl.odd):
            table = np.array([lvl.even, lvl.odd], dtype=np.uint64)
            arr = (arr[:, None] | table[t]).ravel()
        else:
            # no unseen qubits: the branch survives only if the parity already holds
            arr = arr[t == 0]
    return arr


class CosetStream:
    """All strings consistent with ``z_outcomes``, streamed without storing them.

    ``part=(k, K)`` restricts the stream to worker ``k`` of ``K``; the
    partitions are disjoint and their union is the full stream.
    """

    def __init__(self, layout: CodeLayout, z_outcomes: Sequence[int], part: tuple[int, int] = (0, 1)):
        if len(z_outcomes) != layout.num_stabs:
            raise ValueError(f"expected {layout.num_stabs} Z outcomes, got {len(z_outcomes)}")
        k, n_parts = part
        if n_parts < 1 or not 0 <= k < n_parts:
            raise ValueError(f"bad partition {part!r}")
        self.layout = layout
        self.z_outcomes = tuple(int(b) & 1 for b in z_outcomes)
        self.part = (k, n_parts)
        self._levels = _levels(layout, self.z_outcomes)

    @cached_property
    def split_depth(self) -> int:
        """Shallowest depth with at least K subtrees (first stabiliser first)."""
        n_parts = self.part[1]
        units, depth = 1, 0
        while units < n_parts and depth < len(self._levels):
            units *= self._levels[depth].branching
            depth += 1
        return depth

    def units(self) -> Iterator[int]:
        """Prefixes at ``split_depth`` owned by this partition, in order."""
        k, n_parts = self.part
        for j, prefix in enumerate(_walk(self._levels[: self.split_depth], 0, 0)):
            if j % n_parts == k:
                yield prefix

    def __iter__(self) -> Iterator[int]:
        depth = self.split_depth
        for prefix in self.units():
            yield from _walk(self._levels, depth, prefix)

    def _subtree_size(self, depth: int) -> int:
        size = 1
        for lvl in self._levels[depth:]:
            size *= lvl.branching
        return size

    def blocks(self, max_block: int = DEFAULT_BLOCK) -> Iterator[np.ndarray]:
        """Same sequence as iteration, as uint64 arrays of bounded size."""
        if self.layout.num_data > 64:
            raise ValueError("block enumeration needs N <= 64")
        depth = self.split_depth
        # descend until one subtree fits in a block
        chunk_depth = depth
        while chunk_depth < len(self._levels) and self._subtree_size(chunk_depth) > max_block:
            chunk_depth += 1
        for prefix in self.units():
            for sub in _walk(self._levels[:chunk_depth], depth, prefix) if chunk_depth > depth else (prefix,):
                yield _expand_block(self._levels, chunk_depth, np.array([sub], dtype=np.uint64))

    def expected_size(self) -> int:
        """Stream length for an unpartitioned stream: 2**(N - rank)."""
        return 1 << (self.layout.num_data - len(self.layout.z_stabs))


def enumerate_coset(layout: CodeLayout, z_outcomes: Sequence[int], part: tuple[int, int] = (0, 1)) -> CosetStream:
    return CosetStream(layout, z_outcomes, part)


def partial_strings(layout: CodeLayout, z_outcomes: Sequence[int], upto: int) -> list[int]:
    """Partial strings after processing the first ``upto`` Z-stabilisers."""
    levels = _levels(layout, z_outcomes)[:upto]
    return list(_walk(levels, 0, 0))


def coset_representatives(layout: CodeLayout, z_outcomes: Sequence[int]) -> tuple[int, int]:
    """Frame for the logical readout.

    ``rep0`` is the coset element with even logical-Z parity that sorts first
    as a bit string (qubit 0 leftmost); ``rep1 = rep0 ^ logical_x``.
    """
    if len(z_outcomes) != layout.num_stabs:
        raise ValueError(f"expected {layout.num_stabs} Z outcomes, got {len(z_outcomes)}")
    rows = list(layout.z_stabs) + [layout.logical_z]
    rhs = list(z_outcomes) + [0]
    solved = affine_solutions(rows, rhs, layout.num_data)
    if solved is None:
        raise ValueError("Z outcomes are inconsistent with the layout")
    particular, basis = solved
    rep0 = affine_lexmin(particular, basis, layout.num_data)
    return rep0, rep0 ^ layout.logical_x


def format_coset(layout: CodeLayout, words) -> list[str]:
    return [to_bits(int(w), layout.num_data) for w in words]
