"""
Domination mappings phi: {0,1}^m -> B(n, w).

The graph is kept in its right-degree-one form: a partition of the n output
wires into m groups, group i belonging to input bit i. A mapping is valid when
it is injective, every image has weight <= w and an input bit equal to 0
switches its whole group off in the image.

Bits are little-endian throughout: input bit i is ``(x >> i) & 1`` and output
wire j is ``(y >> j) & 1``. Sequences of 0/1 are accepted wherever an int is.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from codes.code_model import (
    KIND_LPC,
    CodeParameterError,
    Codeset,
    Codeword,
    LpcCode,
    MalformedCodewordError,
    code_document,
)
from config.settings import get_settings, log
from mapping.matching import BipartiteGraph, HallWitness, HopcroftKarp

Bits = Union[int, Sequence[int]]

# submask tries per input during the greedy pass; the rest is left to matching
GREEDY_TRIES = 256


class MappingError(ValueError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits_of(x: int) -> List[int]:
    return [i for i in range(x.bit_length()) if (x >> i) & 1]


def _to_int(value: Bits, length: int, what: str) -> Tuple[int, bool]:
    """(integer value, was_sequence)."""
    if isinstance(value, int):
        if not 0 <= value < (1 << length):
            raise MappingError(f"{what} {value} does not fit in {length} bits")
        return value, False
    bits = list(value)
    if len(bits) != length:
        raise MappingError(f"{what} has length {len(bits)}, expected {length}")
    out = 0
    for i, b in enumerate(bits):
        if int(b) not in (0, 1):
            raise MappingError(f"{what} holds non-binary entry {b!r}")
        out |= int(b) << i
    return out, True


def _from_int(value: int, length: int) -> List[int]:
    return [(value >> i) & 1 for i in range(length)]


# ---- graphs -----------------------------------------------------------------


@dataclass(frozen=True)
class DominationGraph:
    m: int
    groups: Tuple[Tuple[int, ...], ...]
    n: int
    _group_of: Tuple[int, ...] = dc_field(default=(), repr=False, compare=False)
    _masks: Tuple[int, ...] = dc_field(default=(), repr=False, compare=False)

    def __post_init__(self) -> None:
        groups = tuple(tuple(sorted(int(j) for j in g)) for g in self.groups)
        if len(groups) != self.m:
            raise MappingError(f"graph has {len(groups)} groups but m={self.m}")
        if any(not g for g in groups):
            raise MappingError("every group must be nonempty")
        owner = [-1] * self.n
        for i, g in enumerate(groups):
            for j in g:
                if not 0 <= j < self.n:
                    raise MappingError(f"group {i} names wire {j} outside [0, {self.n - 1}]")
                if owner[j] != -1:
                    raise MappingError(f"wire {j} lies in groups {owner[j]} and {i}")
                owner[j] = i
        missing = [j for j, o in enumerate(owner) if o == -1]
        if missing:
            raise MappingError(f"groups do not cover wires {missing}")
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "_group_of", tuple(owner))
        object.__setattr__(self, "_masks", tuple(sum(1 << j for j in g) for g in groups))

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "DominationGraph":
        """Groups of the given sizes over consecutive wires."""
        groups, start = [], 0
        for size in sizes:
            groups.append(tuple(range(start, start + size)))
            start += size
        return cls(len(groups), tuple(groups), start)

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(g) for g in self.groups)

    def group_of(self, wire: int) -> int:
        return self._group_of[wire]

    def group_mask(self, i: int) -> int:
        return self._masks[i]

    def allowed_wires(self, x: int) -> int:
        """Union of the groups switched on by input x."""
        out = 0
        for i in _bits_of(x):
            out |= self._masks[i]
        return out

    def group_support(self, y: int) -> int:
        """Input bits whose groups the output y touches."""
        out = 0
        for j in _bits_of(y):
            out |= 1 << self._group_of[j]
        return out

    def neighborhood(self, wires: Iterable[int]) -> frozenset:
        """Left vertices adjacent to a set of output wires; never larger than the set."""
        return frozenset(self._group_of[j] for j in wires)

    def dominates(self, x: int, y: int) -> bool:
        return y & ~self.allowed_wires(x) == 0

    def to_list(self) -> List[List[int]]:
        return [list(g) for g in self.groups]


def balanced_sizes(m: int, n: int) -> Tuple[int, ...]:
    """Group sizes differing by at most one, larger groups first."""
    if m < 1 or n < m:
        raise MappingError(f"need 1 <= m <= n for a partition into nonempty groups: m={m}, n={n}")
    base, extra = divmod(n, m)
    return tuple([base + 1] * extra + [base] * (m - extra))


def _partitions(n: int, parts: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(min(largest, n - parts + 1), 0, -1):
        for rest in _partitions(n - first, parts - 1, first):
            yield (first,) + rest


def candidate_partitions(m: int, n: int, fallbacks: Optional[int] = None) -> List[Tuple[int, ...]]:
    """
    The balanced partition followed by up to ``fallbacks`` others, ordered by
    spread (largest minus smallest group) and then lexicographically from the
    largest leading group.
    """
    if fallbacks is None:
        fallbacks = get_settings().partition_fallbacks
    balanced = balanced_sizes(m, n)
    others = [p for p in _partitions(n, m, n) if p != balanced]
    others.sort(key=lambda p: (p[0] - p[-1], tuple(-s for s in p)))
    return [balanced] + others[:fallbacks]


# ---- mappings ---------------------------------------------------------------


class _MappingBase:
    m: int
    n: int
    w: int

    def _lookup(self, x: int) -> int:
        raise NotImplementedError

    def _reverse(self, y: int) -> Optional[int]:
        raise NotImplementedError

    def apply(self, x: Bits) -> Bits:
        value, as_seq = _to_int(x, self.m, "input")
        y = self._lookup(value)
        return _from_int(y, self.n) if as_seq else y

    def invert(self, y: Bits) -> Optional[Bits]:
        value, as_seq = _to_int(y, self.n, "image")
        x = self._reverse(value)
        if x is None:
            return None
        return _from_int(x, self.m) if as_seq else x


class LeafMapping(_MappingBase):
    kind = "leaf"

    def __init__(self, graph: DominationGraph, w: int, table: Sequence[int]):
        if len(table) != 1 << graph.m:
            raise MappingError(f"table has {len(table)} entries, expected 2^{graph.m}")
        self.graph = graph
        self.m, self.n, self.w = graph.m, graph.n, w
        self.table: Tuple[int, ...] = tuple(int(y) for y in table)
        self._inverse: Dict[int, int] = {}
        for x, y in enumerate(self.table):
            self._inverse.setdefault(y, x)

    def _lookup(self, x: int) -> int:
        return self.table[x]

    def _reverse(self, y: int) -> Optional[int]:
        x = self._inverse.get(y)
        if x is None or self.table[x] != y:
            return None
        return x

    @property
    def leaves(self) -> List["LeafMapping"]:
        return [self]

    def __repr__(self) -> str:
        return f"LeafMapping(m={self.m}, n={self.n}, w={self.w}, groups={self.graph.sizes})"


class ProductMapping(_MappingBase):
    """Factors act on consecutive input slices and write consecutive output slices, lowest bits first."""

    kind = "product"

    def __init__(self, factors: Sequence[_MappingBase]):
        if not factors:
            raise MappingError("a product needs at least one factor")
        self.factors = tuple(factors)
        self.m = sum(f.m for f in self.factors)
        self.n = sum(f.n for f in self.factors)
        self.w = sum(f.w for f in self.factors)
        groups: List[Tuple[int, ...]] = []
        offset = 0
        for f in self.factors:
            groups.extend(tuple(j + offset for j in g) for g in f.graph.groups)
            offset += f.n
        self.graph = DominationGraph(self.m, tuple(groups), self.n)

    def _slices(self) -> Iterator[Tuple[_MappingBase, int, int]]:
        x_off = y_off = 0
        for f in self.factors:
            yield f, x_off, y_off
            x_off += f.m
            y_off += f.n

    def _lookup(self, x: int) -> int:
        y = 0
        for f, x_off, y_off in self._slices():
            y |= f._lookup((x >> x_off) & ((1 << f.m) - 1)) << y_off
        return y

    def _reverse(self, y: int) -> Optional[int]:
        x = 0
        for f, x_off, y_off in self._slices():
            part = f._reverse((y >> y_off) & ((1 << f.n) - 1))
            if part is None:
                return None
            x |= part << x_off
        return x

    @property
    def leaves(self) -> List[LeafMapping]:
        out: List[LeafMapping] = []
        for f in self.factors:
            out.extend(f.leaves)
        return out

    def __repr__(self) -> str:
        return f"ProductMapping(m={self.m}, n={self.n}, w={self.w}, factors={len(self.factors)})"


DominationMapping = Union[LeafMapping, ProductMapping]


def product(factors: Sequence[DominationMapping]) -> ProductMapping:
    return ProductMapping(factors)


def power(mapping: DominationMapping, copies: int) -> ProductMapping:
    return ProductMapping([mapping] * copies)


# ---- synthesis --------------------------------------------------------------


@dataclass
class Infeasible:
    """No left-perfect matching: ``witness`` inputs share too few images."""

    graph: DominationGraph
    w: int
    witness: HallWitness
    matched: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "feasible": False,
            "groups": self.graph.to_list(),
            "w": self.w,
            "matched": self.matched,
            "inputs": 1 << self.graph.m,
            "witness_inputs": self.witness.left,
            "witness_images": self.witness.right,
        }


def _ball(n: int, w: int, wires: Sequence[int]) -> List[int]:
    out = []
    for k in range(min(w, len(wires)) + 1):
        for combo in combinations(wires, k):
            out.append(sum(1 << j for j in combo))
    return out


def synthesize_mapping(graph: DominationGraph, w: int) -> Union[LeafMapping, Infeasible]:
    """
    Left-perfect matching between inputs x and outputs y with supp(y) inside
    the groups of x and wt(y) <= w.

    Inputs are taken in (weight, value) order. A greedy pass first gives x an
    unused output touching exactly the groups of x, or else the largest
    subfamily of them it can; Hopcroft-Karp augments from there.
    """
    settings = get_settings()
    if graph.m > settings.matching_max_left_bits:
        raise MappingError(f"m <= {settings.matching_max_left_bits} violated: m={graph.m}")
    if graph.n > settings.matching_max_right_bits:
        raise MappingError(f"n <= {settings.matching_max_right_bits} violated: n={graph.n}")
    if w < 0:
        raise MappingError(f"w must be non-negative, got {w}")

    right = sorted(_ball(graph.n, w, range(graph.n)))
    right_id = {y: i for i, y in enumerate(right)}
    buckets: Dict[int, List[int]] = {}
    for y in sorted(right, key=lambda y: (-_popcount(y), y)):
        buckets.setdefault(graph.group_support(y), []).append(right_id[y])
    cursor = {g: 0 for g in buckets}
    order = sorted(range(1 << graph.m), key=lambda x: (_popcount(x), x))
    log("MAPPING", f"synthesizing groups={graph.sizes} w={w}: {len(order)} inputs x {len(right)} images")

    def neighbors(x: int) -> List[int]:
        return sorted(right_id[y] for y in _ball(graph.n, w, _bits_of(graph.allowed_wires(x))))

    bip = BipartiteGraph(len(order), len(right), neighbors)
    matcher = HopcroftKarp(bip, order)
    used = [False] * len(right)
    pairs = []
    for x in order:
        on = _bits_of(x)
        tries = 0
        chosen = None
        for k in range(min(w, len(on)), -1, -1):
            for combo in combinations(on, k):
                tries += 1
                g = sum(1 << i for i in combo)
                ids = buckets.get(g)
                if ids:
                    pos = cursor[g]
                    while pos < len(ids) and used[ids[pos]]:
                        pos += 1
                    cursor[g] = pos
                    if pos < len(ids):
                        chosen = ids[pos]
                if chosen is not None or tries >= GREEDY_TRIES:
                    break
            if chosen is not None or tries >= GREEDY_TRIES:
                break
        if chosen is not None:
            used[chosen] = True
            pairs.append((x, chosen))
    matcher.seed(pairs)
    log("MAPPING", f"greedy matched {len(pairs)} of {len(order)}")
    matching = matcher()

    unmatched = matcher.unmatched_left
    if unmatched:
        raw = matcher.hall_witness(unmatched[0])
        witness = HallWitness(raw.left, [right[v] for v in raw.right])
        log("MAPPING", f"infeasible: {len(witness.left)} inputs share {len(witness.right)} images")
        return Infeasible(graph, w, witness, len(matching))
    table = [0] * (1 << graph.m)
    for x, v in matching:
        table[x] = right[v]
    return LeafMapping(graph, w, table)


def synthesize_for(m: int, n: int, w: int, fallbacks: Optional[int] = None) -> Union[LeafMapping, Infeasible]:
    """Try the candidate partitions in order; the last failure is returned if none works."""
    result: Union[LeafMapping, Infeasible, None] = None
    for sizes in candidate_partitions(m, n, fallbacks):
        result = synthesize_mapping(DominationGraph.from_sizes(sizes), w)
        if isinstance(result, LeafMapping):
            return result
        log("MAPPING", f"partition {sizes} fails Hall's condition; trying next")
    assert result is not None
    return result


# ---- persistence ------------------------------------------------------------


def mapping_document(mapping: DominationMapping) -> Dict[str, Any]:
    if isinstance(mapping, LeafMapping):
        return {"kind": "leaf", "groups": mapping.graph.to_list(), "w": mapping.w, "table": list(mapping.table)}
    return {"kind": "product", "factors": [mapping_document(f) for f in mapping.factors]}


def mapping_from_document(doc: Dict[str, Any]) -> DominationMapping:
    if not isinstance(doc, dict):
        raise MappingError("mapping document must be a JSON object")
    kind = doc.get("kind")
    try:
        if kind == "leaf":
            groups = [list(g) for g in doc["groups"]]
            n = sum(len(g) for g in groups)
            graph = DominationGraph(len(groups), tuple(tuple(g) for g in groups), n)
            return LeafMapping(graph, int(doc["w"]), [int(y) for y in doc["table"]])
        if kind == "product":
            return ProductMapping([mapping_from_document(f) for f in doc["factors"]])
    except (KeyError, TypeError) as exc:
        raise MappingError(f"mapping document is missing or mistypes a field: {exc}") from exc
    raise MappingError(f"unknown mapping kind {kind!r}; expected 'leaf' or 'product'")


def save_mapping(path: Union[str, Path], mapping: DominationMapping) -> Path:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(json.dumps(mapping_document(mapping)), encoding="utf-8")
    log("STORE", f"mapping written to {p}")
    return p


def load_mapping(path: Union[str, Path]) -> DominationMapping:
    p = Path(path)
    try:
        doc = json.loads(p.read_text(encoding="utf-8-sig"))
    except FileNotFoundError as exc:
        raise MappingError(f"mapping file not found: {p}") from exc
    except json.JSONDecodeError as exc:
        raise MappingError(f"mapping file is not valid JSON: {p}: {exc}") from exc
    return mapping_from_document(doc)


# ---- cooling code -> LPC code ----------------------------------------------


class DominatedLpcCode:
    """
    Codeset i is the image of cooling codeset i. To avoid hot wires S' the
    cooling encoder avoids N(S'), the inputs owning those wires; domination
    then keeps their groups, and with them S', silent.
    """

    def __init__(
        self,
        cooling: LpcCode,
        mapping: DominationMapping,
        construction: str = "dominated",
        params: Optional[Dict[str, Any]] = None,
    ):
        if cooling.n != mapping.m:
            raise MappingError(f"cooling code length {cooling.n} != mapping input length {mapping.m}")
        self.cooling = cooling
        self.mapping = mapping
        self.construction = construction
        self._params = params
        self.n, self.t, self.w = mapping.n, cooling.t, mapping.w

    @property
    def size(self) -> int:
        return self.cooling.size

    def descriptor(self) -> Dict[str, Any]:
        if self._params is not None:
            return {"construction": self.construction, "params": dict(self._params)}
        return {
            "construction": self.construction,
            "params": {"cooling": code_document(self.cooling), "mapping": mapping_document(self.mapping)},
        }

    def summary_extras(self) -> Dict[str, Any]:
        return {
            "cooling_n": self.cooling.n,
            "cooling_construction": self.cooling.construction,
            "mapping": {"m": self.mapping.m, "n": self.mapping.n, "w": self.mapping.w},
        }

    def to_code(self) -> LpcCode:
        return LpcCode(n=self.n, t=self.t, w=self.w, kind=KIND_LPC, generator=self)

    def _image(self, word: Codeword) -> Codeword:
        return Codeword.from_mask(self.n, self.mapping._lookup(word.mask))

    def codeset(self, index: int) -> Codeset:
        return Codeset(tuple(self._image(u) for u in self.cooling.codeset(index)))

    def encode(self, index: int, hot: Iterable[int]) -> Codeword:
        hot = frozenset(hot)
        owners = self.mapping.graph.neighborhood(hot)
        u = self.cooling.encode(index, owners)
        y = self._image(u)
        if not y.avoids(hot):
            raise CodeParameterError(f"image {y.to_list()} meets hot wires {sorted(hot)}; mapping is not dominating")
        return y

    def decode(self, word: Codeword) -> int:
        x = self.mapping._reverse(word.mask) if word.n == self.n else None
        if x is None:
            raise MalformedCodewordError(f"{word.to_list()} is not an image of the domination mapping")
        return self.cooling.decode(Codeword.from_mask(self.cooling.n, x))


def lpc_from_cooling(
    cooling: LpcCode,
    mapping: DominationMapping,
    construction: str = "dominated",
    params: Optional[Dict[str, Any]] = None,
) -> LpcCode:
    return DominatedLpcCode(cooling, mapping, construction, params).to_code()


__all__ = [
    "MappingError",
    "DominationGraph",
    "DominationMapping",
    "LeafMapping",
    "ProductMapping",
    "Infeasible",
    "balanced_sizes",
    "candidate_partitions",
    "product",
    "power",
    "synthesize_mapping",
    "synthesize_for",
    "mapping_document",
    "mapping_from_document",
    "save_mapping",
    "load_mapping",
    "DominatedLpcCode",
    "lpc_from_cooling",
]
