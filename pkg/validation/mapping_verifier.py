"""
Exhaustive checks of domination mappings.

Leaves are enumerated input by input. A product is accepted when every
factor passes and its graph is the disjoint sum of the factor graphs, so
its own table is never expanded.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List

from config.settings import get_settings, log
from mapping.domination_map import DominationMapping, LeafMapping, MappingError, ProductMapping


@dataclass
class MappingReport:
    m: int
    n: int
    w: int
    injective: bool = True
    weight: bool = True
    domination: bool = True
    structure: bool = True
    inputs_checked: int = 0
    witnesses: Dict[str, Any] = dc_field(default_factory=dict)
    factors: List["MappingReport"] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.injective and self.weight and self.domination and self.structure

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "passed": self.passed,
            "m": self.m,
            "n": self.n,
            "w": self.w,
            "injective": self.injective,
            "weight": self.weight,
            "domination": self.domination,
            "structure": self.structure,
            "inputs_checked": self.inputs_checked,
        }
        if self.witnesses:
            out["witnesses"] = self.witnesses
        if self.factors:
            out["factors"] = [f.to_dict() for f in self.factors]
        return out


def _verify_leaf(leaf: LeafMapping) -> MappingReport:
    limit = get_settings().matching_max_right_bits
    if leaf.m > limit:
        raise MappingError(f"leaf with m={leaf.m} input bits exceeds the exhaustive limit {limit}")
    report = MappingReport(leaf.m, leaf.n, leaf.w)
    seen: Dict[int, int] = {}
    for x, y in enumerate(leaf.table):
        report.inputs_checked += 1
        if y >> leaf.n:
            report.weight = False
            report.witnesses.setdefault("weight", {"input": x, "image": y, "reason": f"image wider than n={leaf.n}"})
            continue
        first = seen.setdefault(y, x)
        if first != x and report.injective:
            report.injective = False
            report.witnesses["injective"] = {"inputs": [first, x], "image": y}
        weight = bin(y).count("1")
        if weight > leaf.w and report.weight:
            report.weight = False
            report.witnesses["weight"] = {"input": x, "image": y, "weight": weight}
        if not leaf.graph.dominates(x, y) and report.domination:
            report.domination = False
            off = [i for i in range(leaf.m) if not (x >> i) & 1 and y & leaf.graph.group_mask(i)]
            report.witnesses["domination"] = {"input": x, "image": y, "groups_switched_off": off}
    return report


def _verify_product(mapping: ProductMapping) -> MappingReport:
    report = MappingReport(mapping.m, mapping.n, mapping.w)
    report.factors = [verify_mapping(f) for f in mapping.factors]
    report.inputs_checked = sum(f.inputs_checked for f in report.factors)
    for name in ("injective", "weight", "domination"):
        setattr(report, name, all(getattr(f, name) for f in report.factors))
    sums = (
        sum(f.m for f in mapping.factors),
        sum(f.n for f in mapping.factors),
        sum(f.w for f in mapping.factors),
    )
    if sums != (mapping.m, mapping.n, mapping.w):
        report.structure = False
        report.witnesses["structure"] = {"expected": list(sums), "found": [mapping.m, mapping.n, mapping.w]}
    offset = 0
    for k, f in enumerate(mapping.factors):
        expected = [tuple(j + offset for j in g) for g in f.graph.groups]
        start = sum(g.m for g in mapping.factors[:k])
        if list(mapping.graph.groups[start:start + f.m]) != expected and report.structure:
            report.structure = False
            report.witnesses["structure"] = {"factor": k, "reason": "graph is not the shifted factor graph"}
        offset += f.n
    return report


def verify_mapping(mapping: DominationMapping) -> MappingReport:
    if isinstance(mapping, LeafMapping):
        report = _verify_leaf(mapping)
    elif isinstance(mapping, ProductMapping):
        report = _verify_product(mapping)
    else:
        raise MappingError(f"not a domination mapping: {mapping!r}")
    log("MAPPING", f"verify ({report.m},{report.n},{report.w}) passed={report.passed}")
    return report


__all__ = ["MappingReport", "verify_mapping"]
