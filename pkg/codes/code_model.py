"""
Core data model for LPC / CPC / CPECC codes.

A code is a collection of pairwise disjoint codesets of binary words on n
wires. Small codes carry their codesets explicitly; large ones carry a
generator: a construction object that materializes codeset i on demand and
supplies an encoder and decoder. Both forms answer the same questions.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, Iterable, Iterator, List, Optional, Protocol, Sequence, Tuple, runtime_checkable

KIND_LPC = "lpc"
KIND_CPC = "cpc"
KIND_CPECC = "cpecc"
KIND_COOLING = "cooling"
KINDS = (KIND_LPC, KIND_CPC, KIND_CPECC, KIND_COOLING)


class CodeParameterError(ValueError):
    """Parameters or inputs violate a construction's hypotheses."""


class MalformedCodewordError(ValueError):
    """A word handed to a decoder is not a codeword of the code."""


class DecodingError(ValueError):
    """The received word cannot be decoded within the error budget."""


@dataclass(frozen=True)
class Codeword:
    n: int
    support: Tuple[int, ...]

    def __post_init__(self) -> None:
        support = tuple(self.support)
        if any(b <= a for a, b in zip(support, support[1:])):
            raise CodeParameterError(f"codeword support must be strictly increasing: {support}")
        if support and (support[0] < 0 or support[-1] >= self.n):
            raise CodeParameterError(f"codeword support {support} leaves wires [0, {self.n - 1}]")
        object.__setattr__(self, "support", support)

    @classmethod
    def from_wires(cls, n: int, wires: Iterable[int]) -> "Codeword":
        wires = sorted(set(int(x) for x in wires))
        return cls(n, tuple(wires))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Codeword":
        return cls(n, tuple(i for i in range(mask.bit_length()) if (mask >> i) & 1))

    @property
    def weight(self) -> int:
        return len(self.support)

    @property
    def mask(self) -> int:
        value = 0
        for i in self.support:
            value |= 1 << i
        return value

    def avoids(self, hot: Iterable[int]) -> bool:
        return not set(self.support).intersection(hot)

    def to_list(self) -> List[int]:
        return list(self.support)


@dataclass(frozen=True)
class Codeset:
    codewords: Tuple[Codeword, ...]

    def __post_init__(self) -> None:
        words = tuple(self.codewords)
        if not words:
            raise CodeParameterError("a codeset must contain at least one codeword")
        if len({c.n for c in words}) != 1:
            raise CodeParameterError("all codewords of a codeset must share n")
        object.__setattr__(self, "codewords", words)

    def __iter__(self) -> Iterator[Codeword]:
        return iter(self.codewords)

    def __len__(self) -> int:
        return len(self.codewords)

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(sorted({c.weight for c in self.codewords}))

    def first_avoiding(self, hot: Iterable[int]) -> Optional[Codeword]:
        hot = set(hot)
        for word in self.codewords:
            if not hot.intersection(word.support):
                return word
        return None


@dataclass(frozen=True)
class HotSet:
    n: int
    wires: frozenset

    @classmethod
    def from_wires(cls, n: int, wires: Iterable[int], t: Optional[int] = None) -> "HotSet":
        wires = frozenset(int(x) for x in wires)
        bad = sorted(x for x in wires if not 0 <= x < n)
        if bad:
            raise CodeParameterError(f"hot wires {bad} outside [0, {n - 1}]")
        if t is not None and len(wires) > t:
            raise CodeParameterError(f"hot set has {len(wires)} wires, more than t={t}")
        return cls(n, wires)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.wires))

    def __len__(self) -> int:
        return len(self.wires)

    @property
    def mask(self) -> int:
        value = 0
        for i in self.wires:
            value |= 1 << i
        return value


@runtime_checkable
class CodeGenerator(Protocol):
    """A construction that materializes codesets on demand."""

    construction: str

    @property
    def size(self) -> int: ...

    def descriptor(self) -> Dict[str, Any]: ...

    def codeset(self, index: int) -> Codeset: ...

    def encode(self, index: int, hot: Iterable[int]) -> Codeword: ...

    def decode(self, word: Codeword) -> int: ...


def hot_wires(hot: Iterable[int] | HotSet) -> frozenset:
    if isinstance(hot, HotSet):
        return hot.wires
    return frozenset(int(x) for x in hot)


@dataclass(frozen=True)
class LpcCode:
    n: int
    t: int
    w: int
    kind: str
    codesets: Optional[Tuple[Codeset, ...]] = None
    generator: Optional[Any] = None
    e: Optional[int] = None
    _index: Dict[Tuple[int, ...], int] = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise CodeParameterError(f"unknown code kind {self.kind!r}; expected one of {KINDS}")
        if self.n <= 0 or self.t < 0 or self.w < 0:
            raise CodeParameterError(f"parameters must be non-negative with n > 0: n={self.n}, t={self.t}, w={self.w}")
        if self.kind != KIND_COOLING and self.t + self.w > self.n:
            raise CodeParameterError(f"t + w <= n violated: t={self.t}, w={self.w}, n={self.n}")
        if self.kind == KIND_CPECC and (self.e is None or self.e < 1):
            raise CodeParameterError("a CPECC code needs e >= 1")
        if (self.codesets is None) == (self.generator is None):
            raise CodeParameterError("a code carries either explicit codesets or a generator, not both")
        if self.codesets is not None:
            sets = tuple(self.codesets)
            if not sets:
                raise CodeParameterError("a code needs at least one codeset")
            object.__setattr__(self, "codesets", sets)
            for i, cs in enumerate(sets):
                for word in cs:
                    if word.n != self.n:
                        raise CodeParameterError(f"codeset {i} holds a word on {word.n} wires, code has n={self.n}")
                    self._check_weight(word, i)
                    self._index.setdefault(word.support, i)

    def _check_weight(self, word: Codeword, index: int) -> None:
        if self.kind in (KIND_CPC, KIND_CPECC) and word.weight != self.w:
            raise CodeParameterError(
                f"constant-weight violated: codeset {index} word {word.support} has weight {word.weight} != w={self.w}"
            )
        if self.kind == KIND_LPC and word.weight > self.w:
            raise CodeParameterError(
                f"weight bound violated: codeset {index} word {word.support} has weight {word.weight} > w={self.w}"
            )

    # ---- shape -----------------------------------------------------------

    @property
    def is_explicit(self) -> bool:
        return self.codesets is not None

    @property
    def size(self) -> int:
        if self.codesets is not None:
            return len(self.codesets)
        return int(self.generator.size)

    @property
    def construction(self) -> str:
        return "explicit" if self.generator is None else self.generator.construction

    def codeset(self, index: int) -> Codeset:
        if not 0 <= index < self.size:
            raise CodeParameterError(f"codeset index {index} outside [0, {self.size - 1}]")
        if self.codesets is not None:
            return self.codesets[index]
        return self.generator.codeset(index)

    def iter_codesets(self) -> Iterator[Tuple[int, Codeset]]:
        for i in range(self.size):
            yield i, self.codeset(i)

    def codeset_weights(self) -> Dict[int, Tuple[int, ...]]:
        return {i: cs.weights for i, cs in self.iter_codesets()}

    def has_uniform_codesets(self) -> bool:
        return all(len(ws) == 1 for ws in self.codeset_weights().values())

    # ---- coding ----------------------------------------------------------

    def encode(self, index: int, hot: Iterable[int] | HotSet) -> Codeword:
        wires = hot_wires(hot)
        if len(wires) > self.t:
            raise CodeParameterError(f"hot set of size {len(wires)} exceeds t={self.t}")
        bad = sorted(x for x in wires if not 0 <= x < self.n)
        if bad:
            raise CodeParameterError(f"hot wires {bad} outside [0, {self.n - 1}]")
        if self.generator is not None:
            return self.generator.encode(index, wires)
        word = self.codeset(index).first_avoiding(wires)
        if word is None:
            raise CodeParameterError(f"codeset {index} has no codeword avoiding {sorted(wires)}; not a cooling code")
        return word

    def decode(self, word: Codeword | Sequence[int]) -> int:
        if not isinstance(word, Codeword):
            word = Codeword.from_wires(self.n, word)
        if self.generator is not None:
            return self.generator.decode(word)
        try:
            return self._index[word.support]
        except KeyError:
            raise MalformedCodewordError(f"{list(word.support)} is not a codeword of this code") from None

    def describe(self) -> Dict[str, Any]:
        summary: Dict[str, Any] = {
            "construction": self.construction,
            "kind": self.kind,
            "n": self.n,
            "t": self.t,
            "w": self.w,
            "size": self.size,
        }
        if self.e is not None:
            summary["e"] = self.e
        if self.generator is not None and hasattr(self.generator, "summary_extras"):
            summary.update(self.generator.summary_extras())
        return summary


def explicit_code(
    n: int,
    t: int,
    w: int,
    kind: str,
    codesets: Sequence[Sequence[Sequence[int]]],
    e: Optional[int] = None,
) -> LpcCode:
    """Build an explicit code from nested lists of wire indices."""
    sets = tuple(Codeset(tuple(Codeword.from_wires(n, word) for word in cs)) for cs in codesets)
    return LpcCode(n=n, t=t, w=w, kind=kind, codesets=sets, e=e)


class UnionCode:
    """Disjoint union of codes on the same wires; codewords of different
    components have different weights, so the codesets stay disjoint."""

    construction = "union"

    def __init__(self, components: Sequence[LpcCode]):
        if not components:
            raise CodeParameterError("a union needs at least one component code")
        if len({c.n for c in components}) != 1:
            raise CodeParameterError("union components must share n")
        self.components = tuple(components)
        self.n = components[0].n
        self.t = min(c.t for c in components)
        self.w = max(c.w for c in components)
        self._offsets: List[int] = []
        total = 0
        for c in components:
            self._offsets.append(total)
            total += c.size
        self._size = total

    @property
    def size(self) -> int:
        return self._size

    def _locate(self, index: int) -> Tuple[LpcCode, int]:
        if not 0 <= index < self._size:
            raise CodeParameterError(f"codeset index {index} outside [0, {self._size - 1}]")
        for comp, offset in zip(reversed(self.components), reversed(self._offsets)):
            if index >= offset:
                return comp, index - offset
        raise AssertionError("unreachable")

    def descriptor(self) -> Dict[str, Any]:
        return {"construction": self.construction, "params": {"components": [code_document(c) for c in self.components]}}

    def codeset(self, index: int) -> Codeset:
        comp, local = self._locate(index)
        return comp.codeset(local)

    def encode(self, index: int, hot: Iterable[int]) -> Codeword:
        comp, local = self._locate(index)
        return comp.encode(local, hot)

    def decode(self, word: Codeword) -> int:
        for comp, offset in zip(self.components, self._offsets):
            if comp.kind in (KIND_CPC, KIND_CPECC) and word.weight != comp.w:
                continue
            try:
                return offset + comp.decode(word)
            except (MalformedCodewordError, DecodingError):
                continue
        raise MalformedCodewordError(f"{list(word.support)} is not a codeword of any union component")

    def to_code(self, kind: str = KIND_LPC) -> LpcCode:
        return LpcCode(n=self.n, t=self.t, w=self.w, kind=kind, generator=self)


CODE_FILE_VERSION = 1


def code_document(code: LpcCode) -> Dict[str, Any]:
    """The code-file JSON object for ``code``; also used inline by composite descriptors."""
    doc: Dict[str, Any] = {
        "version": CODE_FILE_VERSION,
        "kind": code.kind,
        "n": code.n,
        "t": code.t,
        "w": code.w,
    }
    if code.e is not None:
        doc["e"] = code.e
    if code.generator is not None:
        doc["generator"] = code.generator.descriptor()
    else:
        doc["codesets"] = [[word.to_list() for word in cs] for cs in code.codesets]
    return doc


__all__ = [
    "KIND_LPC",
    "KIND_CPC",
    "KIND_CPECC",
    "KIND_COOLING",
    "KINDS",
    "CodeParameterError",
    "MalformedCodewordError",
    "DecodingError",
    "Codeword",
    "Codeset",
    "HotSet",
    "CodeGenerator",
    "LpcCode",
    "UnionCode",
    "explicit_code",
    "code_document",
    "CODE_FILE_VERSION",
    "hot_wires",
]
