"""
Recursive (nq, tq, w)-CPC codes.

Outer structure: on the grid F_q x [n] every polynomial f with deg f <= w-1
gives a block {(f(a_c), c)}; the blocks with f(b_i) = sigma_i form a parallel
class of q blocks. Each block is replaced by the codewords of an inner
(n, t, w) code through the column bijection (column c of the block <-> inner
wire c), giving codeset (sigma, l) for every inner codeset l.
"""
from __future__ import annotations

import warnings
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from codes.code_model import (
    KIND_CPC,
    KIND_LPC,
    CodeParameterError,
    Codeset,
    Codeword,
    LpcCode,
    MalformedCodewordError,
    UnionCode,
    code_document,
    explicit_code,
    hot_wires,
)
from codes.mds_cpc import GridPoint, column_values
from config.settings import log
from field.finite_field import (
    FieldParameterError,
    GaloisField,
    Poly,
    digits_to_int,
    field_ops,
    int_to_digits,
    lagrange_interpolate,
    poly_eval,
    vanishing_poly,
)


class RecursionRegimeWarning(UserWarning):
    """Inner code has t < n/w, where a direct construction already does better."""


class PolynomialClasses:
    """
    The q^(w-1) parallel classes of blocks C_f on F_q x [columns].

    Used on its own it is an (nq, q-1, n)-CPC code whose codewords are the
    whole blocks.
    """

    construction = "outer_classes"

    def __init__(self, q: int, columns: int, w: int):
        if columns < 1 or w < 1:
            raise CodeParameterError(f"need n >= 1 and w >= 1: n={columns}, w={w}")
        self.field: GaloisField = field_ops(q)
        if q < columns + w - 1:
            raise CodeParameterError(f"q >= n+w-1 violated: q={q}, n={columns}, w={w}")
        self.q, self.columns, self.w = q, columns, w
        self.a_points: Tuple[int, ...] = tuple(range(columns))
        self.b_points: Tuple[int, ...] = tuple(range(columns, columns + w - 1))
        self._z = vanishing_poly(self.field, self.b_points)
        self._z_at_a = [poly_eval(self.field, self._z, a) for a in self.a_points]

    # ---- class structure ---------------------------------------------------

    @property
    def classes(self) -> int:
        return self.q ** (self.w - 1)

    @property
    def n(self) -> int:
        return self.q * self.columns

    def sigma(self, i: int) -> Tuple[int, ...]:
        try:
            return int_to_digits(i, self.q, self.w - 1)
        except FieldParameterError:
            raise CodeParameterError(f"class index {i} outside [0, {self.classes - 1}]") from None

    def base_values(self, i: int) -> List[int]:
        """L_sigma(a_c) per column, where deg L_sigma < w-1."""
        base = lagrange_interpolate(self.field, list(zip(self.b_points, self.sigma(i))))
        return [poly_eval(self.field, base, a) for a in self.a_points]

    def block_of(self, base: Sequence[int], wire: int) -> int:
        """lambda of the class block through ``wire``."""
        f = self.field
        point = GridPoint.from_wire(wire, self.q)
        return f.div(f.sub(point.x, base[point.j]), self._z_at_a[point.j])

    def lift(self, base: Sequence[int], lam: int, columns: Iterable[int]) -> Codeword:
        """Wires of block lambda restricted to ``columns``."""
        f = self.field
        wires = [c * self.q + f.add(base[c], f.mul(lam, self._z_at_a[c])) for c in columns]
        return Codeword(self.n, tuple(sorted(wires)))

    def fit(self, word: Codeword) -> Tuple[int, int, Tuple[int, ...]]:
        """(class index, lambda, columns) of the block holding ``word``."""
        values = column_values(word, self.q, self.columns)
        if any(len(v) > 1 for v in values):
            raise MalformedCodewordError(f"{list(word.support)} has two lit points in one column")
        points = [(self.a_points[c], v[0]) for c, v in enumerate(values) if v]
        if not points:
            raise MalformedCodewordError("empty word lies on no block")
        used = tuple(c for c, v in enumerate(values) if v)
        f = lagrange_interpolate(self.field, points[: self.w])
        for x, y in points[self.w:]:
            if poly_eval(self.field, f, x) != y:
                raise MalformedCodewordError(f"{list(word.support)} does not lie on a single block")
        sigma = [poly_eval(self.field, f, b) for b in self.b_points]
        return digits_to_int(sigma, self.q), f.coefficient(self.w - 1), used

    # ---- as a code -----------------------------------------------------------

    @property
    def size(self) -> int:
        return self.classes

    def descriptor(self) -> Dict[str, Any]:
        return {"construction": self.construction, "params": {"q": self.q, "n": self.columns, "w": self.w}}

    def to_code(self) -> LpcCode:
        return LpcCode(n=self.n, t=self.q - 1, w=self.columns, kind=KIND_CPC, generator=self)

    def codeset(self, index: int) -> Codeset:
        base = self.base_values(index)
        return Codeset(tuple(self.lift(base, lam, range(self.columns)) for lam in self.field.elements()))

    def encode(self, index: int, hot: Iterable[int]) -> Codeword:
        wires = hot_wires(hot)
        if len(wires) > self.q - 1:
            raise CodeParameterError(f"hot set of size {len(wires)} exceeds t={self.q - 1}")
        base = self.base_values(index)
        blocked = {self.block_of(base, s) for s in wires}
        lam = next(l for l in self.field.elements() if l not in blocked)
        return self.lift(base, lam, range(self.columns))

    def decode(self, word: Codeword) -> int:
        if word.weight != self.columns:
            raise MalformedCodewordError(f"block words have weight {self.columns}, got {word.weight}")
        return self.fit(word)[0]


class RecursiveCpcCode:
    construction = "recursive_cpc"

    def __init__(self, q: int, inner: LpcCode):
        weights = set()
        for i, cs in inner.iter_codesets():
            if len(cs.weights) != 1:
                raise CodeParameterError(
                    f"inner codeset {i} mixes codeword weights {list(cs.weights)}; every codeset must be uniform"
                )
            weights.update(cs.weights)
        if len(weights) != 1:
            raise CodeParameterError(
                f"inner codesets have different weights {sorted(weights)}; split them with build_recursive"
            )
        self.w = weights.pop()
        if self.w < 1:
            raise CodeParameterError("inner codewords must have weight >= 1")
        self.inner = inner
        self.n_inner, self.t_inner, self.m = inner.n, inner.t, inner.size
        if self.t_inner + self.w > self.n_inner:
            raise CodeParameterError(f"t + w <= n violated on the inner code: t={self.t_inner}, w={self.w}, n={self.n_inner}")
        self.outer = PolynomialClasses(q, self.n_inner, self.w)
        self.q = q
        if self.t_inner * self.w < self.n_inner:
            warnings.warn(
                f"inner code has t={self.t_inner} < n/w={self.n_inner}/{self.w}; a direct RS construction is larger here",
                RecursionRegimeWarning,
                stacklevel=2,
            )
        log("RECURSIVE", f"q={q}, inner ({self.n_inner},{self.t_inner},{self.w}) x {self.m} -> n={self.n}, M={self.size}")

    @property
    def n(self) -> int:
        return self.n_inner * self.q

    @property
    def t(self) -> int:
        return self.t_inner * self.q

    @property
    def size(self) -> int:
        return self.m * self.outer.classes

    def index_of(self, i: int, l: int) -> int:
        return i * self.m + l

    def split_index(self, index: int) -> Tuple[int, int]:
        if not 0 <= index < self.size:
            raise CodeParameterError(f"codeset index {index} outside [0, {self.size - 1}]")
        return divmod(index, self.m)

    def descriptor(self) -> Dict[str, Any]:
        return {"construction": self.construction, "params": {"q": self.q, "inner": code_document(self.inner)}}

    def summary_extras(self) -> Dict[str, Any]:
        return {"inner": {"n": self.n_inner, "t": self.t_inner, "w": self.w, "size": self.m}}

    def to_code(self) -> LpcCode:
        kind = KIND_CPC if self.inner.kind == KIND_CPC else KIND_LPC
        return LpcCode(n=self.n, t=self.t, w=self.w, kind=kind, generator=self)

    def codeset(self, index: int) -> Codeset:
        i, l = self.split_index(index)
        base = self.outer.base_values(i)
        inner_set = self.inner.codeset(l)
        words = []
        for lam in self.outer.field.elements():
            for u in inner_set:
                words.append(self.outer.lift(base, lam, u.support))
        return Codeset(tuple(words))

    def encode(self, index: int, hot: Iterable[int]) -> Codeword:
        wires = hot_wires(hot)
        if len(wires) > self.t:
            raise CodeParameterError(f"hot set of size {len(wires)} exceeds t={self.t}")
        i, l = self.split_index(index)
        base = self.outer.base_values(i)
        by_block: Dict[int, List[int]] = {}
        for s in wires:
            by_block.setdefault(self.outer.block_of(base, s), []).append(s)
        # some block meets S in <= t_inner wires since |S| <= t_inner * q
        lam = next(l_ for l_ in self.outer.field.elements() if len(by_block.get(l_, ())) <= self.t_inner)
        inner_hot = [GridPoint.from_wire(s, self.q).j for s in by_block.get(lam, ())]
        u = self.inner.encode(l, inner_hot)
        return self.outer.lift(base, lam, u.support)

    def decode(self, word: Codeword) -> int:
        if word.weight != self.w:
            raise MalformedCodewordError(f"codeword weight {word.weight} != w={self.w}")
        i, _, used = self.outer.fit(word)
        l = self.inner.decode(Codeword(self.n_inner, used))
        return self.index_of(i, l)


def build_trivial_inner(n: int, w: int, t: Optional[int] = None) -> LpcCode:
    """One codeset holding all C(n, w) weight-w words; an (n, t, w)-CPC code for t <= n-w."""
    if not 1 <= w <= n:
        raise CodeParameterError(f"1 <= w <= n violated: w={w}, n={n}")
    t = n - w if t is None else t
    return explicit_code(n, t, w, KIND_CPC, [list(combinations(range(n), w))])


def split_by_weight(inner: LpcCode) -> List[LpcCode]:
    """Explicit inner code -> one sub-code per codeword weight, codesets kept whole."""
    if not inner.is_explicit:
        return [inner]
    groups: Dict[int, List[Codeset]] = {}
    for i, cs in inner.iter_codesets():
        if len(cs.weights) != 1:
            raise CodeParameterError(
                f"inner codeset {i} mixes codeword weights {list(cs.weights)}; every codeset must be uniform"
            )
        groups.setdefault(cs.weights[0], []).append(cs)
    return [
        LpcCode(n=inner.n, t=inner.t, w=weight, kind=KIND_CPC, codesets=tuple(groups[weight]))
        for weight in sorted(groups)
    ]


def build_recursive(q: int, inner: LpcCode):
    """Recursive code over ``inner``; codesets of different weights yield a union."""
    parts = split_by_weight(inner)
    if len(parts) == 1:
        return RecursiveCpcCode(q, inner)
    return UnionCode([RecursiveCpcCode(q, part).to_code() for part in parts])


class LpcUnionCode(UnionCode):
    """(nq, tq, w)-LPC code of size sum_(i<w) q^i from trivial inner codes."""

    construction = "lpc_union"

    def __init__(self, n_inner: int, t_inner: int, w: int, q: int):
        if t_inner + w > n_inner:
            raise CodeParameterError(f"t + w <= n violated: t={t_inner}, w={w}, n={n_inner}")
        if w < 1:
            raise CodeParameterError(f"w >= 1 violated: w={w}")
        self.params = {"n": n_inner, "t": t_inner, "w": w, "q": q}
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RecursionRegimeWarning)
            parts = [RecursiveCpcCode(q, build_trivial_inner(n_inner, k, t_inner)).to_code() for k in range(1, w + 1)]
        super().__init__(parts)

    def descriptor(self) -> Dict[str, Any]:
        return {"construction": self.construction, "params": dict(self.params)}


def build_lpc_union(n_inner: int, t_inner: int, w: int, q: int) -> LpcUnionCode:
    return LpcUnionCode(n_inner, t_inner, w, q)


def outer_parallel_classes(q: int, n: int, w: int) -> PolynomialClasses:
    """The (nq, q-1, n)-CPC code made of the outer classes alone."""
    return PolynomialClasses(q, n, w)


__all__ = [
    "RecursionRegimeWarning",
    "PolynomialClasses",
    "RecursiveCpcCode",
    "LpcUnionCode",
    "build_trivial_inner",
    "split_by_weight",
    "build_recursive",
    "build_lpc_union",
    "outer_parallel_classes",
]
