"""
LPC codes from spread cooling codes pushed through product domination
mappings.

``build_construction4`` takes m = 3w = 9*alpha + 12*beta input wires and the product
of alpha (9,15,3)- and beta (12,20,4)-mappings, giving a (5w, t, w)-LPC code.
The 3w-wire variant uses w copies of the (2,3,1)-mapping on a (2w, t) spread
code.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Tuple

from codes.code_model import CodeParameterError, LpcCode
from config.settings import log
from cooling.spread_cooling import build_spread_cooling
from mapping.domination_map import (
    DominationGraph,
    LeafMapping,
    MappingError,
    ProductMapping,
    lpc_from_cooling,
    synthesize_for,
    synthesize_mapping,
)

LEAF_SHAPES = {"phi1": (9, 15, 3), "phi2": (12, 20, 4)}


@lru_cache(maxsize=None)
def leaf_mapping(m: int, n: int, w: int) -> LeafMapping:
    """Synthesized (m, n, w) leaf, shared per process."""
    result = synthesize_for(m, n, w)
    if not isinstance(result, LeafMapping):
        raise MappingError(
            f"no ({m},{n},{w}) domination mapping over the candidate partitions; "
            f"last witness: {len(result.witness.left)} inputs, {len(result.witness.right)} images"
        )
    log("MAPPING", f"({m},{n},{w}) leaf on groups {result.graph.sizes}")
    return result


@lru_cache(maxsize=None)
def trivial_leaf() -> LeafMapping:
    """The (2,3,1) mapping on groups {0}, {1,2}."""
    result = synthesize_mapping(DominationGraph.from_sizes((1, 2)), 1)
    assert isinstance(result, LeafMapping)
    return result


def construction4_split(w: int) -> Tuple[Tuple[int, int], ...]:
    """All (alpha, beta) with 3w = 9*alpha + 12*beta."""
    return tuple((a, b) for b in range(w // 4 + 1) for a in range(w // 3 + 1) if 9 * a + 12 * b == 3 * w)


def _check_spread(m: int, t: int) -> None:
    if 2 * (t + 1) > m:
        raise CodeParameterError(f"2(t+1) <= m violated: t={t}, m={m}")
    if m % (t + 1):
        raise CodeParameterError(f"(t+1) | m violated: t+1={t + 1}, m={m}")


def build_construction4(w: int, t: int, alpha: int, beta: int) -> LpcCode:
    if w < 6:
        raise CodeParameterError(f"w >= 6 violated: w={w}")
    if alpha < 0 or beta < 0 or 9 * alpha + 12 * beta != 3 * w:
        raise CodeParameterError(
            f"3w = 9*alpha + 12*beta violated: w={w}, alpha={alpha}, beta={beta}; "
            f"valid splits: {list(construction4_split(w))}"
        )
    m = 3 * w
    _check_spread(m, t)
    factors = [leaf_mapping(*LEAF_SHAPES["phi1"])] * alpha + [leaf_mapping(*LEAF_SHAPES["phi2"])] * beta
    mapping = ProductMapping(factors)
    cooling = build_spread_cooling(m, t)
    return lpc_from_cooling(
        cooling, mapping, "construction4", {"w": w, "t": t, "alpha": alpha, "beta": beta}
    )


def build_leaf231_lpc(w: int, t: int) -> LpcCode:
    """(3w, t, w)-LPC code of size (2^(2w) - 1) / (2^(t+1) - 1)."""
    if w < 1:
        raise CodeParameterError(f"w >= 1 violated: w={w}")
    _check_spread(2 * w, t)
    mapping = ProductMapping([trivial_leaf()] * w)
    cooling = build_spread_cooling(2 * w, t)
    return lpc_from_cooling(cooling, mapping, "leaf231_lpc", {"w": w, "t": t})


__all__ = ["LEAF_SHAPES", "leaf_mapping", "trivial_leaf", "construction4_split", "build_construction4", "build_leaf231_lpc"]
