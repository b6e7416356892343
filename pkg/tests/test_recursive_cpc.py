from itertools import combinations

import numpy as np
import pytest

from codes.code_model import KIND_LPC, CodeParameterError, Codeword, MalformedCodewordError, UnionCode, explicit_code
from codes.recursive_cpc import (
    RecursionRegimeWarning,
    RecursiveCpcCode,
    build_lpc_union,
    build_recursive,
    build_trivial_inner,
    outer_parallel_classes,
    split_by_weight,
)
from validation.verifier import verify_code


@pytest.fixture(scope="module")
def recursive_20_10_2():
    return RecursiveCpcCode(5, build_trivial_inner(4, 2))


class TestTrivialInner:
    """Inner codes made of every weight-w word."""

    def test_single_codeset_of_all_pairs(self):
        inner = build_trivial_inner(4, 2)
        assert (inner.n, inner.t, inner.w, inner.size) == (4, 2, 2, 1)
        assert len(inner.codeset(0)) == 6

    def test_rejects_bad_weight(self):
        with pytest.raises(CodeParameterError):
            build_trivial_inner(4, 5)


class TestRecursiveCpc:
    """The (20,10,2) code from q=5 over the trivial (4,2,2) inner code."""

    def test_parameters(self, recursive_20_10_2):
        code = recursive_20_10_2.to_code()
        assert (code.n, code.t, code.w, code.size) == (20, 10, 2, 5)
        assert code.kind == "cpc"
        assert code.describe()["inner"] == {"n": 4, "t": 2, "w": 2, "size": 1}

    def test_codesets_are_disjoint_and_complete(self, recursive_20_10_2):
        """Each codeset holds q blocks times six inner words; no word repeats."""
        seen = set()
        for i in range(recursive_20_10_2.size):
            cs = recursive_20_10_2.codeset(i)
            assert len(cs) == 5 * 6
            for word in cs:
                assert word.weight == 2
                assert word.support not in seen
                seen.add(word.support)

    def test_exhaustive_verification(self, recursive_20_10_2):
        report = verify_code(recursive_20_10_2.to_code())
        assert report.passed
        assert report.hot_sets == 184756

    def test_windowed_exhaustive_roundtrip(self, recursive_20_10_2):
        """Every 10-subset of a 14-wire window, against every codeset."""
        code = recursive_20_10_2.to_code()
        cases = 0
        for hot in combinations(range(14), 10):
            for i in range(code.size):
                word = code.encode(i, hot)
                assert word.weight == 2 and word.avoids(hot)
                assert code.decode(word) == i
                cases += 1
        assert cases == 1001 * 5

    def test_random_roundtrip(self, recursive_20_10_2):
        rng = np.random.default_rng(2)
        code = recursive_20_10_2.to_code()
        for _ in range(1000):
            i = int(rng.integers(0, code.size))
            hot = [int(x) for x in rng.choice(20, size=10, replace=False)]
            word = code.encode(i, hot)
            assert word.avoids(hot)
            assert code.decode(word) == i

    def test_decode_rejects_two_points_in_a_column(self, recursive_20_10_2):
        """Wires 0 and 1 both sit in grid column 0."""
        with pytest.raises(MalformedCodewordError, match="one column"):
            recursive_20_10_2.decode(Codeword.from_wires(20, [0, 1]))

    def test_decode_rejects_wrong_weight(self, recursive_20_10_2):
        with pytest.raises(MalformedCodewordError):
            recursive_20_10_2.decode(Codeword.from_wires(20, [0, 5, 10]))

    def test_outer_field_too_small(self):
        with pytest.raises(CodeParameterError, match="q >= n\\+w-1"):
            RecursiveCpcCode(4, build_trivial_inner(4, 2))

    def test_regime_warning(self):
        """An inner code with t < n/w still builds, with a warning."""
        inner = build_trivial_inner(6, 2, t=1)
        with pytest.warns(RecursionRegimeWarning):
            code = RecursiveCpcCode(7, inner)
        assert (code.n, code.t, code.w) == (42, 7, 2)

    def test_mixed_weight_inner_needs_split(self):
        inner = explicit_code(4, 1, 2, KIND_LPC, [[[0, 1], [2, 3]], [[0], [1]]])
        with pytest.raises(CodeParameterError):
            RecursiveCpcCode(5, inner)


class TestLargeRecursiveCpc:
    """q=16 over a (10,3,6) inner code gives a (160,48,6) code of size m * 16^5."""

    @pytest.fixture(scope="class")
    def code(self):
        return RecursiveCpcCode(16, build_trivial_inner(10, 6, t=3))

    def test_parameters(self, code):
        assert (code.n, code.t, code.w) == (160, 48, 6)
        assert code.size == code.m * 16**5 == 16**5

    def test_random_roundtrip(self, code):
        rng = np.random.default_rng(21)
        lpc = code.to_code()
        for _ in range(100):
            i = int(rng.integers(0, lpc.size))
            hot = [int(x) for x in rng.choice(160, size=48, replace=False)]
            word = lpc.encode(i, hot)
            assert word.weight == 6 and word.avoids(hot)
            assert lpc.decode(word) == i


class TestWeightSplitting:
    """Inner codes whose codesets carry different weights."""

    @pytest.fixture
    def mixed_inner(self):
        return explicit_code(4, 1, 2, KIND_LPC, [[[0, 1], [2, 3]], [[0], [1]]])

    def test_split_groups_by_weight(self, mixed_inner):
        parts = split_by_weight(mixed_inner)
        assert [(p.w, p.size) for p in parts] == [(1, 1), (2, 1)]

    def test_union_of_recursive_parts(self, mixed_inner):
        with pytest.warns(RecursionRegimeWarning):
            union = build_recursive(5, mixed_inner)
        assert isinstance(union, UnionCode)
        code = union.to_code()
        assert (code.n, code.t, code.w, code.size) == (20, 5, 2, 6)
        assert verify_code(code).passed
        for i in range(code.size):
            word = code.encode(i, [0, 5, 10, 15, 1])
            assert code.decode(word) == i


class TestLpcUnion:
    """Unions of recursive codes over every weight up to w."""

    def test_size_and_verification(self):
        code = build_lpc_union(4, 2, 2, 5).to_code()
        assert (code.n, code.t, code.w, code.size) == (20, 10, 2, 6)
        assert code.describe()["construction"] == "lpc_union"
        report = verify_code(code, mode="sampled", trials=500, seed=4)
        assert report.passed

    def test_headline_union(self):
        """n=9, t=2, w=7 over GF(16): a (144,32,7) code of size sum of 16^i for i < 7."""
        code = build_lpc_union(9, 2, 7, 16).to_code()
        assert (code.n, code.t, code.w) == (144, 32, 7)
        assert code.size == sum(16**i for i in range(7))
        report = verify_code(code, mode="sampled", trials=40, seed=12)
        assert report.passed
        rng = np.random.default_rng(12)
        for _ in range(50):
            i = int(rng.integers(0, code.size))
            hot = [int(x) for x in rng.choice(144, size=32, replace=False)]
            word = code.encode(i, hot)
            assert 1 <= word.weight <= 7 and word.avoids(hot)
            assert code.decode(word) == i

    def test_hypothesis(self):
        with pytest.raises(CodeParameterError):
            build_lpc_union(4, 3, 2, 5)


class TestOuterClasses:
    """The outer parallel classes used as a code on their own."""

    def test_blocks_as_codewords(self):
        code = outer_parallel_classes(5, 4, 2).to_code()
        assert (code.n, code.t, code.w, code.size) == (20, 4, 4, 5)
        assert verify_code(code).passed
        for i in range(code.size):
            assert code.decode(code.encode(i, [0, 1, 2, 3])) == i
