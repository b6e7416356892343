from itertools import combinations

import pytest

from codes.code_model import CodeParameterError, MalformedCodewordError
from cooling.spread_cooling import build_spread_cooling
from mapping.domination_map import (
    DominationGraph,
    Infeasible,
    LeafMapping,
    MappingError,
    ProductMapping,
    balanced_sizes,
    candidate_partitions,
    load_mapping,
    lpc_from_cooling,
    power,
    save_mapping,
    synthesize_for,
    synthesize_mapping,
)
from validation.mapping_verifier import verify_mapping
from validation.verifier import verify_code


@pytest.fixture(scope="module")
def leaf231():
    result = synthesize_mapping(DominationGraph.from_sizes((1, 2)), 1)
    assert isinstance(result, LeafMapping)
    return result


class TestDominationGraph:
    """Groups of output wires owned by input bits."""

    def test_from_sizes(self):
        graph = DominationGraph.from_sizes((2, 1))
        assert graph.groups == ((0, 1), (2,))
        assert graph.n == 3
        assert graph.group_of(2) == 1
        assert graph.allowed_wires(0b01) == 0b011
        assert graph.group_support(0b100) == 0b10

    def test_overlapping_groups(self):
        with pytest.raises(MappingError):
            DominationGraph(2, ((0, 1), (1, 2)), 3)

    def test_uncovered_wire(self):
        with pytest.raises(MappingError):
            DominationGraph(2, ((0,), (1,)), 3)

    def test_empty_group(self):
        with pytest.raises(MappingError):
            DominationGraph(2, ((0, 1), ()), 2)

    def test_neighborhood_never_grows(self):
        """Each output wire has one owner, so |N(S)| <= |S|."""
        graph = DominationGraph.from_sizes((2, 2, 1))
        for size in range(4):
            for wires in combinations(range(5), size):
                assert len(graph.neighborhood(wires)) <= len(wires)
        assert graph.neighborhood([0, 1]) == frozenset({0})

    def test_dominates(self):
        """x dominates y when y lies inside the groups x switches on."""
        graph = DominationGraph.from_sizes((1, 2))
        assert graph.dominates(0b11, 0b100)
        assert not graph.dominates(0b01, 0b100)


class TestPartitions:
    """Group-size candidates tried during synthesis."""

    def test_balanced(self):
        """Sizes differ by at most one, larger groups first."""
        assert balanced_sizes(9, 15) == (2, 2, 2, 2, 2, 2, 1, 1, 1)
        assert balanced_sizes(3, 3) == (1, 1, 1)

    def test_balanced_needs_room(self):
        with pytest.raises(MappingError):
            balanced_sizes(4, 3)

    def test_candidates(self):
        candidates = candidate_partitions(9, 15, fallbacks=5)
        assert candidates[0] == balanced_sizes(9, 15)
        assert len(candidates) == 6
        assert len(set(candidates)) == 6
        for sizes in candidates:
            assert len(sizes) == 9 and sum(sizes) == 15

    def test_fallbacks_ordered_by_spread(self):
        """Fallback partitions come in order of increasing spread."""
        spreads = [max(p) - min(p) for p in candidate_partitions(5, 9, fallbacks=20)[1:]]
        assert spreads == sorted(spreads)


class TestLeafMapping:
    """Mappings found by bipartite matching."""

    def test_synthesized_table(self, leaf231):
        assert leaf231.table == (0, 1, 2, 4)
        assert (leaf231.m, leaf231.n, leaf231.w) == (2, 3, 1)

    def test_apply_and_invert(self, leaf231):
        """apply and invert are inverse on every input."""
        assert leaf231.apply(3) == 4
        assert leaf231.apply([1, 1]) == [0, 0, 1]
        assert leaf231.invert([0, 1, 0]) == [0, 1]
        assert leaf231.invert(4) == 3
        assert leaf231.invert(7) is None

    def test_input_length(self, leaf231):
        with pytest.raises(MappingError):
            leaf231.apply([1, 0, 1])
        with pytest.raises(MappingError):
            leaf231.apply(4)

    def test_verified(self, leaf231):
        report = verify_mapping(leaf231)
        assert report.passed
        assert report.inputs_checked == 4

    def test_single_wire_identity(self):
        """One input on one wire maps to itself."""
        result = synthesize_mapping(DominationGraph.from_sizes((1,)), 1)
        assert result.table == (0, 1)

    def test_table_length_checked(self):
        with pytest.raises(MappingError):
            LeafMapping(DominationGraph.from_sizes((1, 2)), 1, [0, 1, 2])


class TestInfeasible:
    """Requests that fail Hall's condition."""

    def test_hall_witness(self):
        """The witness has more inputs than images."""
        result = synthesize_mapping(DominationGraph.from_sizes((1, 1)), 0)
        assert isinstance(result, Infeasible)
        assert result.matched == 1
        assert result.witness.deficiency >= 1
        doc = result.to_dict()
        assert doc["feasible"] is False
        assert doc["inputs"] == 4
        assert doc["witness_images"] == [0]

    def test_partition_search_reports_last_failure(self):
        result = synthesize_for(2, 2, 0, fallbacks=0)
        assert isinstance(result, Infeasible)

    def test_size_limits(self):
        """Graphs past the matching limits are refused."""
        with pytest.raises(MappingError):
            synthesize_mapping(DominationGraph.from_sizes((1,) * 15), 1)


class TestProductMapping:
    """Mappings acting factor by factor on concatenated inputs."""

    def test_shape(self, leaf231):
        prod = power(leaf231, 2)
        assert (prod.m, prod.n, prod.w) == (4, 6, 2)
        assert prod.graph.groups == ((0,), (1, 2), (3,), (4, 5))

    def test_factorwise_action(self, leaf231):
        """Each factor maps its own slice of the input."""
        prod = ProductMapping([leaf231, leaf231])
        for x in range(16):
            y = prod.apply(x)
            assert y == leaf231.apply(x & 3) | (leaf231.apply(x >> 2) << 3)
            assert prod.invert(y) == x
        assert prod.invert(0b111000) is None

    def test_single_factor(self, leaf231):
        prod = ProductMapping([leaf231])
        assert [prod.apply(x) for x in range(4)] == list(leaf231.table)

    def test_verified_factorwise(self, leaf231):
        """Products are verified one factor at a time."""
        report = verify_mapping(power(leaf231, 3))
        assert report.passed
        assert report.inputs_checked == 12
        assert len(report.factors) == 3

    def test_empty_product(self):
        with pytest.raises(MappingError):
            ProductMapping([])


class TestBrokenMappings:
    """Hand-written tables the verifier must reject."""

    def test_collision(self):
        """Two inputs sharing an image."""
        leaf = LeafMapping(DominationGraph.from_sizes((1, 2)), 1, [0, 1, 1, 4])
        report = verify_mapping(leaf)
        assert not report.injective
        assert report.witnesses["injective"] == {"inputs": [1, 2], "image": 1}

    def test_domination_violation(self):
        """An image outside the groups of its input."""
        leaf = LeafMapping(DominationGraph.from_sizes((1, 2)), 1, [0, 2, 1, 4])
        report = verify_mapping(leaf)
        assert not report.domination
        assert report.witnesses["domination"]["input"] == 1

    def test_weight_violation(self):
        """An image heavier than w."""
        leaf = LeafMapping(DominationGraph.from_sizes((1, 2)), 1, [0, 1, 2, 6])
        report = verify_mapping(leaf)
        assert not report.weight
        assert report.injective and report.domination


class TestPersistence:
    """Mapping files saved and loaded."""

    def test_leaf_roundtrip(self, tmp_path, leaf231):
        path = save_mapping(tmp_path / "leaf.json", leaf231)
        loaded = load_mapping(path)
        assert loaded.table == leaf231.table
        assert loaded.graph == leaf231.graph

    def test_product_roundtrip(self, tmp_path, leaf231):
        prod = power(leaf231, 2)
        loaded = load_mapping(save_mapping(tmp_path / "nested" / "prod.json", prod))
        assert isinstance(loaded, ProductMapping)
        assert [loaded.apply(x) for x in range(16)] == [prod.apply(x) for x in range(16)]

    def test_bad_documents(self, tmp_path):
        """Unreadable or unknown mapping documents raise MappingError."""
        path = tmp_path / "bad.json"
        path.write_text('{"kind": "tree"}', encoding="utf-8")
        with pytest.raises(MappingError):
            load_mapping(path)
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(MappingError):
            load_mapping(path)
        with pytest.raises(MappingError):
            load_mapping(tmp_path / "missing.json")


class TestDominatedLpc:
    """Cooling codes pushed through a domination mapping."""

    @pytest.fixture
    def lpc(self, leaf231):
        return lpc_from_cooling(build_spread_cooling(4, 1), power(leaf231, 2))

    def test_parameters(self, lpc):
        assert (lpc.n, lpc.t, lpc.w, lpc.size) == (6, 1, 2, 5)
        assert lpc.kind == "lpc"
        assert lpc.describe()["mapping"] == {"m": 4, "n": 6, "w": 2}

    def test_verification(self, lpc):
        assert verify_code(lpc).passed

    def test_every_hot_wire(self, lpc):
        """Every codeset avoids every single hot wire."""
        for i in range(lpc.size):
            for hot in range(6):
                word = lpc.encode(i, [hot])
                assert word.avoids([hot]) and word.weight <= 2
                assert lpc.decode(word) == i

    def test_non_image_rejected(self, lpc):
        with pytest.raises(MalformedCodewordError):
            lpc.decode([1, 2])

    def test_length_mismatch(self, leaf231):
        with pytest.raises(MappingError):
            lpc_from_cooling(build_spread_cooling(6, 1), power(leaf231, 2))

    def test_non_dominating_mapping_is_caught(self):
        """An encoder image that meets a hot wire raises."""
        bad = LeafMapping(DominationGraph.from_sizes((1, 2)), 1, [0, 2, 1, 4])
        lpc = lpc_from_cooling(build_spread_cooling(4, 1), power(bad, 2))
        with pytest.raises(CodeParameterError):
            for i in range(lpc.size):
                for hot in range(6):
                    lpc.encode(i, [hot])
