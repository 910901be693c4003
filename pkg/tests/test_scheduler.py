import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cryptsteg import SplitMix64, StegoKey, slot_sequence
from cryptsteg.errors import CapacityExceeded, InvalidKey, InvalidParameter

from oracles import partial_fisher_yates, splitmix64_stream


class TestSplitMix64:
    def test_published_vectors_for_seed_zero(self):
        gen = SplitMix64(0)
        assert gen.next_u64() == 0xE220A8397B1DCDAF
        assert gen.next_u64() == 0x6E789E6AA1B965F4

    def test_deterministic(self):
        a = SplitMix64(0xDEADBEEF)
        b = SplitMix64(0xDEADBEEF)
        assert [a.next_u64() for _ in range(100)] == [b.next_u64() for _ in range(100)]

    @given(st.integers(0, 2**64 - 1))
    def test_matches_oracle(self, seed):
        gen = SplitMix64(seed)
        assert [gen.next_u64() for _ in range(8)] == splitmix64_stream(seed, 8)

    def test_outputs_fit_64_bits(self):
        gen = SplitMix64(12345)
        for _ in range(1000):
            assert 0 <= gen.next_u64() < 2**64


class TestStegoKey:
    def test_parse_format_round_trip(self):
        key = StegoKey.parse("deadbeef")
        assert key.seed == 0xDEADBEEF
        assert key.format() == "deadbeef"
        assert StegoKey.parse(key.format()) == key

    def test_zero_is_valid(self):
        assert StegoKey.parse("0").seed == 0
        assert StegoKey(0).format() == "0"

    def test_uppercase_accepted_canonical_lowercase(self):
        key = StegoKey.parse("DEADBEEF")
        assert key.format() == "deadbeef"

    @given(st.integers(0, 2**64 - 1))
    def test_value_round_trip(self, seed):
        key = StegoKey(seed)
        assert StegoKey.parse(key.format()).seed == seed

    @pytest.mark.parametrize("bad", ["", "0x1f", "12345678901234567", "gg", "-1"])
    def test_rejections(self, bad):
        with pytest.raises(InvalidKey):
            StegoKey.parse(bad)

    def test_out_of_range_seed_rejected(self):
        with pytest.raises(InvalidKey):
            StegoKey(2**64)
        with pytest.raises(InvalidKey):
            StegoKey(-1)


class TestSlotSequence:
    def test_empty_request(self):
        out = slot_sequence(StegoKey(7), 5, 0)
        assert out.size == 0

    def test_single_slot(self):
        assert list(slot_sequence(StegoKey(99), 1, 1)) == [0]

    def test_seed_zero_full_permutation_matches_oracle(self):
        got = list(slot_sequence(StegoKey(0), 48, 48))
        assert got == partial_fisher_yates(0, 48, 48)
        assert sorted(got) == list(range(48))

    @settings(max_examples=40)
    @given(
        st.integers(0, 2**64 - 1),
        st.integers(1, 400),
        st.data(),
    )
    def test_distinct_in_range_and_oracle_equal(self, seed, total, data):
        count = data.draw(st.integers(0, total))
        got = list(slot_sequence(StegoKey(seed), total, count))
        assert got == partial_fisher_yates(seed, total, count)
        assert len(set(got)) == count
        assert all(0 <= v < total for v in got)

    def test_full_count_is_a_permutation(self):
        for seed, total in [(0, 1), (1, 2), (42, 97), (2**63, 256)]:
            got = sorted(slot_sequence(StegoKey(seed), total, total))
            assert got == list(range(total))

    def test_prefix_stability(self):
        key = StegoKey(0xFEEDFACE)
        full = slot_sequence(key, 1000, 1000)
        for m in (0, 1, 31, 500, 999):
            assert np.array_equal(slot_sequence(key, 1000, m), full[:m])

    def test_one_bit_seed_difference_changes_schedule(self):
        rng = np.random.default_rng(4242)
        for _ in range(100):
            seed = int(rng.integers(0, 2**63))
            flipped = seed ^ (1 << int(rng.integers(0, 64)))
            total = int(rng.integers(100, 5000))
            n = min(100, total)
            a = slot_sequence(StegoKey(seed), total, n)
            b = slot_sequence(StegoKey(flipped), total, n)
            assert not np.array_equal(a, b)

    def test_count_beyond_total_rejected(self):
        with pytest.raises(CapacityExceeded):
            slot_sequence(StegoKey(1), 10, 11)

    def test_bad_arguments_rejected(self):
        with pytest.raises(InvalidParameter):
            slot_sequence(StegoKey(1), 0, 0)
        with pytest.raises(InvalidParameter):
            slot_sequence(StegoKey(1), 10, -1)
