from itertools import combinations

import numpy as np
import pytest

from codes.code_model import CodeParameterError, Codeword, MalformedCodewordError
from codes.mds_cpc import GridPoint, build_linear_cpc, build_rs_cpc, max_projection_multiplicity, rs_generator
from field.finite_field import field_ops
from validation.verifier import verify_code

LINEAR_GENERATOR = [[1, 1, 1, 1, 0, 0], [0, 0, 1, 1, 1, 1]]


@pytest.fixture(scope="module")
def rs_12_3_3():
    return build_rs_cpc(4, 3)


@pytest.fixture(scope="module")
def rs_96_15_6():
    return build_rs_cpc(16, 6)


class TestReedSolomonCpc:
    """CPC codes from the extended Reed-Solomon code."""

    def test_parameters(self, rs_12_3_3):
        """q=4, w=3 gives a (12,3,3) code of 16 codesets over a [5,3,3] code."""
        code = rs_12_3_3.to_code()
        assert (code.n, code.t, code.w, code.size) == (12, 3, 3, 16)
        assert code.kind == "cpc"
        summary = code.describe()
        assert (summary["N"], summary["K"], summary["D"]) == (5, 3, 3)
        assert summary["guaranteed_distance"] == 2
        assert summary["correctable_errors"] == 0

    def test_underlying_code_is_mds(self, rs_12_3_3):
        """64 distinct words of minimum weight N-K+1; listing respects its limit."""
        words = list(rs_12_3_3.outer_code_words())
        assert len(words) == len(set(words)) == 4**3
        assert min(sum(1 for v in word if v) for word in words if any(word)) == 3
        with pytest.raises(CodeParameterError):
            list(rs_12_3_3.outer_code_words(limit=10))

    def test_codesets_are_parallel_classes(self, rs_12_3_3):
        """Each codeset is q disjoint blocks, one point per column."""
        for i in range(rs_12_3_3.size):
            cs = rs_12_3_3.codeset(i)
            assert len(cs) == 4
            wires = [j for word in cs for j in word.support]
            assert sorted(wires) == list(range(12))
            for word in cs:
                columns = sorted(GridPoint.from_wire(j, 4).j for j in word.support)
                assert columns == [0, 1, 2]

    def test_roundtrip_every_hot_set(self, rs_12_3_3):
        code = rs_12_3_3.to_code()
        for i in range(code.size):
            for hot in combinations(range(12), 3):
                word = code.encode(i, hot)
                assert word.weight == 3
                assert word.avoids(hot)
                assert code.decode(word) == i

    def test_exhaustive_verification(self, rs_12_3_3):
        report = verify_code(rs_12_3_3.to_code())
        assert report.passed
        assert report.hot_sets == 220
        assert report.codesets == 16

    def test_headline_size(self, rs_96_15_6):
        """q=16, w=6 gives the (96,15,6) code of size 16^5."""
        code = rs_96_15_6.to_code()
        assert (code.n, code.t, code.w) == (96, 15, 6)
        assert code.size == 16**5

    def test_random_roundtrip_at_96_wires(self, rs_96_15_6):
        rng = np.random.default_rng(5)
        code = rs_96_15_6.to_code()
        for _ in range(500):
            i = int(rng.integers(0, code.size))
            hot = [int(x) for x in rng.choice(96, size=15, replace=False)]
            word = code.encode(i, hot)
            assert word.weight == 6 and word.avoids(hot)
            assert code.decode(word) == i

    def test_multiplication_counts(self, rs_96_15_6):
        """Encoding stays within 10n multiplications and decoding within 10w^3."""
        twin = rs_96_15_6.instrumented()
        hot = list(range(0, 96, 7))[:15]
        word = twin.encode(12345, hot)
        assert twin.field.multiplications <= 10 * 96
        twin.field.multiplications = 0
        assert twin.decode(word) == 12345
        assert twin.field.multiplications <= 10 * 6**3

    @pytest.mark.parametrize("q,w", [(4, 1), (4, 4), (6, 3)])
    def test_rejected_parameters(self, q, w):
        with pytest.raises(ValueError):
            build_rs_cpc(q, w)

    def test_hypothesis_message(self):
        with pytest.raises(CodeParameterError, match="q >= 2w-2"):
            build_rs_cpc(4, 4)

    def test_decode_rejects_two_points_in_a_column(self, rs_12_3_3):
        with pytest.raises(MalformedCodewordError):
            rs_12_3_3.decode(Codeword.from_wires(12, [0, 1, 8]))

    def test_decode_rejects_wrong_weight(self, rs_12_3_3):
        with pytest.raises(MalformedCodewordError):
            rs_12_3_3.decode(Codeword.from_wires(12, [0, 4]))

    def test_too_many_hot_wires(self, rs_12_3_3):
        with pytest.raises(CodeParameterError):
            rs_12_3_3.encode(0, [0, 1, 2, 3])

    @pytest.mark.parametrize("hot", [[12], [-1], [3, 40]])
    def test_hot_wires_outside_the_grid(self, rs_12_3_3, hot):
        with pytest.raises(CodeParameterError):
            rs_12_3_3.encode(0, hot)


class TestProjections:
    """Codewords of the underlying code seen on a few coordinates."""

    @pytest.mark.parametrize(
        "builder",
        [lambda: build_rs_cpc(4, 3), lambda: build_rs_cpc(4, 2), lambda: build_linear_cpc(LINEAR_GENERATOR, 3, 2)],
    )
    def test_projection_multiplicities(self, builder):
        """N-D+1 coordinates pin a codeword; N-D coordinates leave at most q."""
        code = builder()
        words = list(code.outer_code_words())
        free = code.N - code.D
        for coords in combinations(range(code.N), free + 1):
            assert max_projection_multiplicity(words, coords) == 1
        for coords in combinations(range(code.N), free):
            assert max_projection_multiplicity(words, coords) <= code.q

    def test_suffix_classes_have_q_words(self, rs_12_3_3):
        """Words sharing the suffix coordinates form the q blocks of one codeset."""
        words = list(rs_12_3_3.outer_code_words())
        suffix = list(range(rs_12_3_3.D, rs_12_3_3.N))
        assert max_projection_multiplicity(words, suffix) == 4

    def test_empty_input(self):
        assert max_projection_multiplicity([], [0]) == 0


class TestLinearCpc:
    """CPC codes from an arbitrary generator matrix."""

    @pytest.fixture
    def linear(self):
        return build_linear_cpc(LINEAR_GENERATOR, 3, 2)

    def test_parameters(self, linear):
        code = linear.to_code()
        assert (code.n, code.t, code.w, code.size) == (6, 1, 3, 2)
        assert code.describe()["D"] == 4
        assert code.describe()["permutation"] == [0, 1, 2, 3, 4, 5]

    def test_codesets(self, linear):
        assert [w.support for w in linear.codeset(0)] == [(0, 2, 4), (1, 3, 5)]
        assert [w.support for w in linear.codeset(1)] == [(0, 2, 5), (1, 3, 4)]

    def test_roundtrip(self, linear):
        code = linear.to_code()
        for i in range(2):
            for hot in range(6):
                word = code.encode(i, [hot])
                assert word.avoids([hot])
                assert code.decode(word) == i

    def test_verification(self, linear):
        assert verify_code(linear.to_code()).passed

    def test_decoder_rejects_off_code_words(self, linear):
        # columns 0 and 2 fix the codeword; column 1 disagrees with it
        with pytest.raises(MalformedCodewordError):
            linear.decode(Codeword.from_wires(6, [0, 3, 4]))

    @pytest.mark.parametrize("w", [2, 5])
    def test_weight_window(self, w):
        with pytest.raises(CodeParameterError):
            build_linear_cpc(LINEAR_GENERATOR, w, 2)

    def test_dependent_rows(self):
        with pytest.raises(CodeParameterError):
            build_linear_cpc([[1, 1, 0], [1, 1, 0]], 2, 2)

    def test_entries_must_be_field_elements(self):
        with pytest.raises(CodeParameterError):
            build_linear_cpc([[1, 2, 0]], 2, 2)

    def test_reed_solomon_generator_reproduces_rs_code(self, rs_12_3_3):
        """The RS generator through the general path gives the same codesets and decoder."""
        linear = build_linear_cpc(rs_generator(field_ops(4), 3), 3, 4)
        assert linear.construction == "linear_cpc"
        assert (linear.N, linear.K, linear.D) == (5, 3, 3)
        assert linear.permutation == (0, 1, 2, 3, 4)
        assert linear.size == rs_12_3_3.size
        for i in range(rs_12_3_3.size):
            expected = [word.support for word in rs_12_3_3.codeset(i)]
            assert [word.support for word in linear.codeset(i)] == expected
            for word in rs_12_3_3.codeset(i):
                assert linear.decode(word) == rs_12_3_3.decode(word) == i
