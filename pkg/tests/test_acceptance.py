"""
Acceptance tests for the cooling-code toolkit, end to end.

These tests validate:
1. The headline codes construct at their advertised sizes
2. Encode/decode round trips, including the multiplication budgets
3. Exhaustive and sampled verification of every construction family
4. Bounds consistency of the size comparisons
5. The bus simulator on the shipped configs
"""
from __future__ import annotations

from dataclasses import replace
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest

from analytics.bus_simulator import SimConfig, simulate
from codes.bounds import applicable_bound, headline_comparisons
from codes.code_model import Codeword
from codes.cpecc_rs import build_cpecc
from codes.mds_cpc import build_rs_cpc
from codes.recursive_cpc import RecursiveCpcCode, build_trivial_inner
from cooling.construction4 import build_leaf231_lpc, trivial_leaf
from cooling.spread_cooling import build_spread_cooling
from mapping.domination_map import LeafMapping, power, synthesize_for
from validation.mapping_verifier import verify_mapping
from validation.verifier import min_distance, verify_code

CONFIG_STORE = Path(__file__).resolve().parent.parent / "config_store"
OWN_CONSTRUCTIONS = {"mds_cpc", "linear_cpc", "recursive_cpc", "lpc_union", "leaf231_lpc", "construction4"}
LPC_CONSTRUCTIONS = {"lpc_union", "leaf231_lpc", "construction4"}


def test_headline_code_size():
    """The RS construction over GF(16) with w=6 is a (96,15,6) code of size 16^5."""
    code = build_rs_cpc(16, 6).to_code()
    assert (code.n, code.t, code.w) == (96, 15, 6)
    assert code.size == 16**5


def test_twelve_wire_code_verifies_exhaustively():
    """All 220 hot sets of the (12,3,3) code are avoided by every codeset."""
    report = verify_code(build_rs_cpc(4, 3).to_code(), mode="exhaustive")
    assert report.passed
    assert report.hot_sets == 220


def test_twelve_wire_round_trips_for_every_hot_set():
    """16 codesets x 220 hot sets encode to avoiding words that decode back."""
    code = build_rs_cpc(4, 3).to_code()
    cases = 0
    for i in range(code.size):
        for hot in combinations(range(12), 3):
            word = code.encode(i, hot)
            assert word.weight == 3 and word.avoids(hot)
            assert code.decode(word) == i
            cases += 1
    assert cases == 3520


def test_headline_random_round_trips():
    """10^4 random round trips at 96 wires, then the multiplication budgets."""
    rs = build_rs_cpc(16, 6)
    code = rs.to_code()
    rng = np.random.default_rng(2024)
    for _ in range(10**4):
        i = int(rng.integers(0, code.size))
        hot = [int(x) for x in rng.choice(96, size=15, replace=False)]
        word = code.encode(i, hot)
        assert word.weight == 6 and word.avoids(hot)
        assert code.decode(word) == i

    twin = rs.instrumented()
    word = twin.encode(777, list(range(15)))
    assert twin.field.multiplications <= 10 * 96
    twin.field.multiplications = 0
    assert twin.decode(word) == 777
    assert twin.field.multiplications <= 10 * 6**3


def test_cpecc_distance_and_single_flips():
    """The (32,7,4,1) code has distance >= 4 and corrects every single flip."""
    code = build_cpecc(8, 4, 1).to_code()
    assert min_distance(code) >= 4
    decoded = 0
    for i in range(code.size):
        for word in code.codeset(i):
            for flip in range(32):
                assert code.decode(Codeword.from_mask(32, word.mask ^ (1 << flip))) == i
                decoded += 1
    assert decoded == 16384


def test_recursive_code():
    """q=5 over the trivial (4,2,2) code: a (20,10,2) code of size 5, checked three ways."""
    code = RecursiveCpcCode(5, build_trivial_inner(4, 2)).to_code()
    assert (code.n, code.t, code.w, code.size) == (20, 10, 2, 5)
    assert verify_code(code).passed

    for hot in combinations(range(14), 10):
        for i in range(code.size):
            word = code.encode(i, hot)
            assert word.avoids(hot)
            assert code.decode(word) == i

    rng = np.random.default_rng(55)
    for _ in range(10**3):
        i = int(rng.integers(0, code.size))
        hot = [int(x) for x in rng.choice(20, size=10, replace=False)]
        word = code.encode(i, hot)
        assert word.avoids(hot)
        assert code.decode(word) == i


def test_domination_pipeline():
    """The (2,3,1) leaf and its square verify; the (6,1,2) code built on them verifies."""
    leaf = trivial_leaf()
    assert verify_mapping(leaf).inputs_checked == 4
    assert verify_mapping(power(leaf, 2)).passed
    code = build_leaf231_lpc(2, 1)
    assert (code.n, code.t, code.w, code.size) == (6, 1, 2, 5)
    assert verify_code(code).passed


def test_nine_to_fifteen_synthesis():
    """A (9,15,3) mapping is synthesized and checked on all 512 inputs."""
    result = synthesize_for(9, 15, 3)
    assert isinstance(result, LeafMapping)
    report = verify_mapping(result)
    assert report.passed
    assert report.inputs_checked == 2**9


def test_comparison_sizes_respect_bounds():
    """Own sizes stay under the upper bounds and beat the sunflower rows."""
    rows = headline_comparisons()
    for row in rows:
        if row.method in OWN_CONSTRUCTIONS:
            assert row.size <= applicable_bound(row.n, row.t, row.w, row.method not in LPC_CONSTRUCTIONS)
    own = {(r.n, r.t, r.w): r.size for r in rows if r.method in OWN_CONSTRUCTIONS}
    for row in rows:
        if row.method == "sunflower" and row.applicable:
            assert own[(row.n, row.t, row.w)] > row.size


def test_simulator_top_t_has_no_violations():
    """10^4 steps of the shipped (12,3,3) config: no hot wire driven, exactly w transitions."""
    report = simulate(SimConfig.from_json(CONFIG_STORE / "sim_cpc_12_3_3.json"))
    assert report.steps == 10**4
    assert report.hot_violations == 0
    assert report.weight_violations == 0
    assert report.max_transitions_per_step == report.min_transitions_per_step == 3
    assert report.decode_success_rate == 1.0


def test_simulator_cpecc_single_flip_channel():
    """The shipped CPECC config decodes every step through a one-flip channel."""
    config = SimConfig.from_json(CONFIG_STORE / "sim_cpecc_32_7_4_1.json")
    report = simulate(replace(config, steps=500))
    assert report.channel_flips == 1
    assert report.decode_success_rate == 1.0


@pytest.mark.parametrize("n,t", [(4, 1), (6, 2)])
def test_spread_cooling_codes(n, t):
    """Spread cooling codes verify exhaustively."""
    assert verify_code(build_spread_cooling(n, t)).passed
