from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from transversal_injection.bitkit import from_bits, hamming, masked_parity, to_bits
from transversal_injection.coset import (
    CosetStream,
    Trajectory,
    coset_representatives,
    enumerate_coset,
    partial_strings,
)
from transversal_injection.lattice import build_layout

RESULTS_MATRIX = {
    "00001": 1, "01000": 1, "10100": 2, "11101": 4,
    "10011": 3, "11010": 3, "00110": 2, "01111": 4,
}


def brute_coset(layout, z_outcomes):
    return {
        z for z in range(1 << layout.num_data)
        if all(masked_parity(z, s) == b for s, b in zip(layout.z_stabs, z_outcomes))
    }


def bits_of(word, k):
    return tuple((word >> i) & 1 for i in range(k))


class TestTrajectory:
    def test_parse(self, d2):
        t = Trajectory.parse("1001", d2)
        assert t.x_outcomes == (1, 0) and t.z_outcomes == (0, 1)
        assert str(t) == "1001"

    @pytest.mark.parametrize("text", ["10010", "10a1", "100"])
    def test_parse_rejects(self, d2, text):
        with pytest.raises(ValueError):
            Trajectory.parse(text, d2)

    def test_from_words(self):
        assert str(Trajectory.from_words(0b01, 0b10, 2)) == "1001"


class TestPaperExample:
    def test_first_stabiliser_expansion(self, d2):
        got = [to_bits(w, 5) for w in partial_strings(d2, (0, 1), 1)]
        assert got == ["00000", "10100", "10010", "00110"]

    def test_results_matrix(self, d2):
        got = {to_bits(w, 5): hamming(w) for w in enumerate_coset(d2, (0, 1))}
        assert got == RESULTS_MATRIX

    def test_trivial_outcomes_contain_zero(self, d2):
        got = list(enumerate_coset(d2, (0, 0)))
        assert len(got) == 8 and 0 in got
        assert all(masked_parity(z, s) == 0 for z in got for s in d2.z_stabs)

    def test_wrong_length(self, d2):
        with pytest.raises(ValueError):
            enumerate_coset(d2, (0, 1, 1))


@pytest.mark.parametrize("s", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_brute_force_equivalence_d2(d2, s):
    got = list(enumerate_coset(d2, s))
    assert len(got) == len(set(got))
    assert set(got) == brute_coset(d2, s)


@pytest.mark.parametrize("word", [0, 0b101101, 0b111111, 0b010011])
def test_brute_force_equivalence_d3(d3, word):
    s = bits_of(word, d3.num_stabs)
    got = list(enumerate_coset(d3, s))
    assert len(got) == 2 ** ((d3.num_data + 1) // 2)
    assert set(got) == brute_coset(d3, s)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_stream_properties(data):
    d = data.draw(st.integers(2, 4))
    layout = build_layout(d)
    s = data.draw(st.lists(st.integers(0, 1), min_size=layout.num_stabs, max_size=layout.num_stabs))
    stream = enumerate_coset(layout, s)
    got = list(stream)
    assert len(got) == len(set(got)) == stream.expected_size() == 2 ** ((layout.num_data + 1) // 2)
    assert all(masked_parity(z, st_) == b for z in got[:: max(1, len(got) // 64)]
               for st_, b in zip(layout.z_stabs, s))
    parities = Counter(masked_parity(z, layout.logical_z) for z in got)
    assert parities[0] == parities[1]
    blocks = np.concatenate(list(stream.blocks(max_block=64)))
    assert blocks.tolist() == got


@pytest.mark.parametrize("parts", [1, 2, 3, 5, 8])
def test_partitions_cover(d3, parts):
    s = (1, 0, 0, 1, 1, 0)
    full = list(enumerate_coset(d3, s))
    pieces = [list(CosetStream(d3, s, (k, parts))) for k in range(parts)]
    assert sorted(sum(pieces, [])) == sorted(full)
    assert sum(len(p) for p in pieces) == len(full)
    for k in range(parts):
        blocks = list(CosetStream(d3, s, (k, parts)).blocks(max_block=16))
        got = np.concatenate(blocks).tolist() if blocks else []
        assert got == pieces[k]


def test_bad_partition(d2):
    with pytest.raises(ValueError):
        CosetStream(d2, (0, 0), (2, 2))


class TestRepresentatives:
    def test_paper_frame(self, d2):
        rep0, rep1 = coset_representatives(d2, (0, 1))
        assert to_bits(rep0, 5) == "00001"
        assert to_bits(rep1, 5) == "10011"

    def test_trivial(self, d2):
        assert coset_representatives(d2, (0, 0))[0] == 0

    @pytest.mark.parametrize("d", [2, 3])
    def test_brute_force(self, d):
        layout = build_layout(d)
        for word in range(1 << layout.num_stabs):
            s = bits_of(word, layout.num_stabs)
            rep0, rep1 = coset_representatives(layout, s)
            coset = brute_coset(layout, s)
            even = [z for z in coset if masked_parity(z, layout.logical_z) == 0]
            assert rep0 == min(even, key=lambda z: to_bits(z, layout.num_data))
            assert rep1 in coset and masked_parity(rep1, layout.logical_z) == 1
            assert rep1 == rep0 ^ layout.logical_x


def test_coset_against_paper_rows(d2):
    assert {from_bits(b) for b in RESULTS_MATRIX} == set(enumerate_coset(d2, (0, 1)))
