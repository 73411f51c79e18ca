"""GF(2) bit-vector helpers.

Bit words are plain Python ints: bit ``i`` of the int is data qubit ``i``.
String forms list qubit 0 first, so ``"00001"`` is qubit 4 set (int 16).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations as _index_combinations
from typing import Iterable, Iterator, Sequence

MAX_WIDTH = 128


def hamming(w: int) -> int:
    return w.bit_count()


def masked_parity(w: int, mask: int) -> int:
    return (w & mask).bit_count() & 1


def from_bits(s: str) -> int:
    """Parse a qubit-0-first bit string into a word."""
    if any(ch not in "01" for ch in s):
        raise ValueError(f"not a bit string: {s!r}")
    if len(s) > MAX_WIDTH:
        raise ValueError(f"width {len(s)} exceeds {MAX_WIDTH}")
    w = 0
    for i, ch in enumerate(s):
        if ch == "1":
            w |= 1 << i
    return w


def to_bits(w: int, width: int) -> str:
    if w >> width:
        raise ValueError(f"word has bits beyond width {width}")
    return "".join("1" if (w >> i) & 1 else "0" for i in range(width))


def from_indices(indices: Iterable[int]) -> int:
    w = 0
    for i in indices:
        w |= 1 << i
    return w


def to_indices(w: int) -> list[int]:
    out = []
    i = 0
    while w:
        if w & 1:
            out.append(i)
        w >>= 1
        i += 1
    return out


def string_order_key(w: int, width: int) -> int:
    """Integer whose natural order matches lexicographic order of ``to_bits``."""
    return int(to_bits(w, width), 2) if width else 0


def combinations(indices: Sequence[int], parity: int) -> Iterator[int]:
    """Yield every subset of ``indices`` whose size has the given parity.

    Subsets come out as bitmasks, ordered by size and then lexicographically
    by position in ``indices``.
    """
    if len(set(indices)) != len(indices):
        raise ValueError("indices must be distinct")
    for size in range(parity & 1, len(indices) + 1, 2):
        for combo in _index_combinations(indices, size):
            yield from_indices(combo)


class NotInSpan(Exception):
    """Target is not an XOR combination of the solver's generators."""


@dataclass(frozen=True)
class Gf2Solver:
    """Reduced row-echelon form of a set of generator supports.

    ``generators`` are bitmasks. After construction each reduced row is
    stored with its pivot column and the generator subset (as a bitmask
    over generator indices) that XORs to it.
    """

    generators: tuple[int, ...]
    width: int
    _rows: tuple[tuple[int, int, int], ...] = field(init=False, repr=False)

    def __post_init__(self):
        rows: list[list[int]] = []  # [pivot, row, combo]
        work = [(g, 1 << i) for i, g in enumerate(self.generators)]
        for col in range(self.width):
            bit = 1 << col
            pivot = next((k for k, (r, _) in enumerate(work) if r & bit), None)
            if pivot is None:
                continue
            prow, pcombo = work.pop(pivot)
            work = [(r ^ prow, c ^ pcombo) if r & bit else (r, c) for r, c in work]
            for entry in rows:
                if entry[1] & bit:
                    entry[1] ^= prow
                    entry[2] ^= pcombo
            rows.append([col, prow, pcombo])
        object.__setattr__(self, "_rows", tuple(tuple(r) for r in rows))

    @classmethod
    def from_supports(cls, supports: Sequence[int], width: int) -> "Gf2Solver":
        return cls(tuple(supports), width)

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def independent(self) -> bool:
        return self.rank == len(self.generators)

    def solve(self, target: int) -> int:
        """Return a generator subset (bitmask over generator indices) whose
        supports XOR to ``target``; raise ``NotInSpan`` otherwise."""
        combo = 0
        residue = target
        for pivot, row, rcombo in self._rows:
            if (target >> pivot) & 1:
                residue ^= row
                combo ^= rcombo
        if residue:
            raise NotInSpan(f"{target:#x} not in span")
        return combo

    def in_span(self, target: int) -> bool:
        try:
            self.solve(target)
        except NotInSpan:
            return False
        return True

    def dual_mask(self, syndrome: int) -> int:
        """Return a mask ``m`` with ``masked_parity(m, generators[i])`` equal
        to bit ``i`` of ``syndrome`` for every generator.

        Then for any ``y`` in the span, ``masked_parity(y, m)`` equals
        ``masked_parity(syndrome, solve(y))``. Requires independent generators.
        """
        if not self.independent:
            raise ValueError("dual mask needs linearly independent generators")
        m = 0
        for pivot, _, rcombo in self._rows:
            if masked_parity(rcombo, syndrome):
                m |= 1 << pivot
        return m


def solve_in_span(solver: Gf2Solver, target: int) -> int | None:
    """Generator subset reproducing ``target``, or ``None`` when not in span."""
    try:
        return solver.solve(target)
    except NotInSpan:
        return None


def gf2_rank(rows: Sequence[int], width: int) -> int:
    return Gf2Solver(tuple(rows), width).rank


def affine_lexmin(offset: int, basis: Sequence[int], width: int) -> int:
    """Smallest element of ``offset + span(basis)`` in string order
    (qubit 0 most significant)."""
    # eliminate with pivots taken from qubit 0 upwards
    reduced: list[tuple[int, int]] = []
    work = list(basis)
    for col in range(width):
        bit = 1 << col
        k = next((j for j, r in enumerate(work) if r & bit), None)
        if k is None:
            continue
        prow = work.pop(k)
        work = [r ^ prow if r & bit else r for r in work]
        reduced.append((bit, prow))
    w = offset
    for bit, prow in reduced:
        if w & bit:
            w ^= prow
    return w


def affine_solutions(rows: Sequence[int], rhs: Sequence[int], width: int) -> tuple[int, list[int]] | None:
    """Solve ``masked_parity(z, rows[i]) == rhs[i]`` for all ``i``.

    Returns ``(particular, null_basis)`` or ``None`` when inconsistent.
    """
    aug = 1 << width
    work = [r | (aug if b & 1 else 0) for r, b in zip(rows, rhs)]
    pivots: list[tuple[int, int]] = []
    for col in range(width):
        bit = 1 << col
        k = next((j for j, r in enumerate(work) if r & bit), None)
        if k is None:
            continue
        prow = work.pop(k)
        work = [r ^ prow if r & bit else r for r in work]
        pivots = [(c, r ^ prow if r & bit else r) for c, r in pivots]
        pivots.append((col, prow))
    if any(work):
        return None  # a leftover row is exactly the augmented bit
    pivot_cols = {c for c, _ in pivots}
    particular = 0
    for c, r in pivots:
        if r & aug:
            particular |= 1 << c
    basis = []
    for free in range(width):
        if free in pivot_cols:
            continue
        v = 1 << free
        for c, r in pivots:
            if (r >> free) & 1:
                v |= 1 << c
        basis.append(v)
    return particular, basis
