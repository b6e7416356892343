"""
CPC codes from linear [N, K, D]_q codes, Reed-Solomon first.

The wires are the grid F_q x [w]: grid point (x, j) is wire j*q + ord(x) with
0-based column j. Codewords of the underlying code that agree on the N-D
suffix coordinates form one codeset; truncated to their first w symbols each
becomes a block {(x_j, j)}. With the generator in systematic form

    G' = [ A     | I_{K-1} ]
         [ beta  |   0     ]

codeset sigma is {sigma*A + lambda*beta : lambda in F_q} restricted to [w],
a parallel class of q disjoint blocks.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from codes.code_model import (
    KIND_CPC,
    CodeParameterError,
    Codeset,
    Codeword,
    HotSet,
    LpcCode,
    MalformedCodewordError,
    hot_wires,
)
from config.settings import log
from field.finite_field import (
    FieldParameterError,
    GaloisField,
    MatrixQ,
    digits_to_int,
    field_ops,
    int_to_digits,
    lagrange_interpolate,
    matrix_rank,
    poly_eval,
)

MESSAGE_SEARCH_LIMIT = 2**20
SUBSET_SEARCH_MAX_LENGTH = 24
_CHUNK = 1 << 15


@dataclass(frozen=True)
class GridPoint:
    x: int
    j: int

    def wire(self, q: int) -> int:
        return self.j * q + self.x

    @classmethod
    def from_wire(cls, wire: int, q: int) -> "GridPoint":
        j, x = divmod(wire, q)
        return cls(x, j)


def column_values(word: Codeword, q: int, columns: int) -> List[List[int]]:
    """Lit field values per grid column."""
    values: List[List[int]] = [[] for _ in range(columns)]
    for wire in word.support:
        point = GridPoint.from_wire(wire, q)
        if point.j >= columns:
            raise MalformedCodewordError(f"wire {wire} lies outside the {q}x{columns} grid")
        values[point.j].append(point.x)
    return values


def single_values(word: Codeword, q: int, columns: int) -> List[int]:
    """One value per column, or MalformedCodewordError."""
    values = column_values(word, q, columns)
    bad = [j for j, v in enumerate(values) if len(v) != 1]
    if bad:
        raise MalformedCodewordError(
            f"columns {bad} do not hold exactly one lit point; {list(word.support)} is not a codeword"
        )
    return [v[0] for v in values]


def rs_generator(field: GaloisField, k: int) -> MatrixQ:
    """Extended RS generator: columns are F_q in ord order, then infinity."""
    rows = []
    for i in range(k):
        row = [field.pow(a, i) for a in field.elements()]
        row.append(1 if i == k - 1 else 0)
        rows.append(row)
    return MatrixQ.from_rows(rows)


def _zero_sets_by_messages(field: GaloisField, generator: MatrixQ) -> Tuple[int, set]:
    q, k, n = field.q, generator.rows, generator.cols
    g = generator.to_galois(field)
    powers = q ** np.arange(k, dtype=np.int64)
    best, zero_sets = n + 1, set()
    total = q**k
    for start in range(1, total, _CHUNK):
        ids = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        words = (field.GF((ids[:, None] // powers) % q) @ g).view(np.ndarray)
        weights = np.count_nonzero(words, axis=1)
        low = int(weights.min())
        if low < best:
            best, zero_sets = low, set()
        if low == best:
            for row in np.flatnonzero(weights == best):
                zero_sets.add(tuple(int(c) for c in np.flatnonzero(words[row] == 0)))
    return best, zero_sets


def minimum_weight_suffix(field: GaloisField, generator: MatrixQ) -> Tuple[int, Tuple[int, ...]]:
    """
    Minimum distance D and the zero set of a minimum-weight codeword.

    Among all such zero sets (each of size N-D, each with rank K-1) the one
    listed first by combinations(reversed(range(N)), N-D) is returned, so an
    MDS generator keeps its last K-1 columns as the suffix.
    """
    k, n = generator.rows, generator.cols
    if matrix_rank(field, generator) != k:
        raise CodeParameterError(f"generator rows are linearly dependent: rank < K={k}")
    if field.q**k <= MESSAGE_SEARCH_LIMIT:
        weight, zero_sets = _zero_sets_by_messages(field, generator)
        suffix = max(zero_sets, key=lambda zs: tuple(sorted(zs, reverse=True)))
        return weight, tuple(sorted(suffix))
    if n > SUBSET_SEARCH_MAX_LENGTH:
        raise CodeParameterError(
            f"minimum-weight search limited to q^K <= 2^20 or N <= {SUBSET_SEARCH_MAX_LENGTH}: "
            f"q={field.q}, K={k}, N={n}"
        )
    best = tuple(range(n - 1, n - k, -1))
    for size in range(k, n):
        found = next(
            (cols for cols in combinations(reversed(range(n)), size) if matrix_rank(field, generator, cols) < k),
            None,
        )
        if found is None:
            break
        best = found
    return n - len(best), tuple(sorted(best))


class MdsCpcCode:
    """Codes D_sigma from a generator whose last N-D columns have rank K-1."""

    def __init__(
        self,
        field: GaloisField,
        w: int,
        generator: MatrixQ,
        distance: int,
        construction: str = "mds_cpc",
        source: Optional[MatrixQ] = None,
        permutation: Optional[Tuple[int, ...]] = None,
    ):
        self.field = field
        self.q = field.q
        self.w = w
        self.K = generator.rows
        self.N = generator.cols
        self.D = distance
        self.construction = construction
        self.source = source
        self.permutation = permutation
        self._check_parameters()

        suffix = list(range(self.D, self.N))
        if matrix_rank(field, generator, suffix) != self.K - 1:
            raise CodeParameterError(
                f"suffix block of {len(suffix)} columns must have rank K-1={self.K - 1}; generator is corrupt"
            )
        pivots: List[int] = []
        for col in suffix:
            if len(pivots) == self.K - 1:
                break
            if matrix_rank(field, generator, pivots + [col]) > len(pivots):
                pivots.append(col)
        self.sigma_columns: Tuple[int, ...] = tuple(pivots)
        self.generator = self._systematic(generator)

        rows = self.generator.to_rows()
        self._a = [row[: self.w] for row in rows[:-1]]
        self._beta = rows[-1][: self.w]
        if any(b == 0 for b in self._beta):
            raise CodeParameterError("last generator row vanishes inside [w]; codesets would not be parallel classes")

        info: List[int] = []
        for col in range(self.w):
            if matrix_rank(field, self.generator, info + [col]) > len(info):
                info.append(col)
            if len(info) == self.K:
                break
        self.info_columns = tuple(info)
        g = self.generator.to_galois(field)
        self._info_inverse = np.linalg.inv(g[:, list(info)]).view(np.ndarray).tolist()
        log("MDS", f"{construction}: [N={self.N}, K={self.K}, D={self.D}]_{self.q}, w={w} -> n={self.n}, M={self.size}")

    def _check_parameters(self) -> None:
        lo = self.N - self.D + 1
        if self.w < lo:
            raise CodeParameterError(f"N - D + 1 <= w violated: N={self.N}, D={self.D}, w={self.w}")
        if self.w > self.D:
            raise CodeParameterError(f"w <= D violated: w={self.w}, D={self.D}")
        if self.K < 1:
            raise CodeParameterError("underlying code needs dimension K >= 1")

    def _systematic(self, generator: MatrixQ) -> MatrixQ:
        GF = self.field.GF
        g = generator.to_galois(self.field)
        cols = list(self.sigma_columns)
        if not cols:
            return generator
        augmented = np.concatenate((g[:, cols], GF.Identity(self.K)), axis=1)
        reduced = augmented.row_reduce(ncols=len(cols))
        transform = reduced[:, len(cols):]
        return MatrixQ.from_galois(transform @ g)

    # ---- parameters --------------------------------------------------------

    @property
    def n(self) -> int:
        return self.q * self.w

    @property
    def t(self) -> int:
        return self.q - 1

    @property
    def size(self) -> int:
        return self.q ** (self.K - 1)

    @property
    def is_reed_solomon(self) -> bool:
        return self.construction == "mds_cpc"

    @property
    def guaranteed_distance(self) -> int:
        return max(0, 2 * (self.D + self.w - self.N))

    @property
    def correctable_errors(self) -> int:
        return max(0, self.w + self.D - self.N - 1)

    def descriptor(self) -> Dict[str, Any]:
        params: Dict[str, Any] = {"q": self.q, "w": self.w}
        if not self.is_reed_solomon:
            params["generator"] = self.source.to_rows()
        return {"construction": self.construction, "params": params}

    def summary_extras(self) -> Dict[str, Any]:
        extras: Dict[str, Any] = {
            "N": self.N,
            "K": self.K,
            "D": self.D,
            "guaranteed_distance": self.guaranteed_distance,
            "correctable_errors": self.correctable_errors,
        }
        if self.permutation is not None:
            extras["permutation"] = list(self.permutation)
        return extras

    def to_code(self) -> LpcCode:
        return LpcCode(n=self.n, t=self.t, w=self.w, kind=KIND_CPC, generator=self)

    def instrumented(self) -> "MdsCpcCode":
        """Copy whose field counts multiplications in ``field.multiplications``."""
        twin = copy.copy(self)
        twin.field = self.field.counting()
        return twin

    # ---- coding ------------------------------------------------------------

    def sigma(self, index: int) -> Tuple[int, ...]:
        try:
            return int_to_digits(index, self.q, self.K - 1)
        except FieldParameterError:
            raise CodeParameterError(f"codeset index {index} outside [0, {self.size - 1}]") from None

    def _base_row(self, sigma: Sequence[int]) -> List[int]:
        f = self.field
        r = [0] * self.w
        for s, row in zip(sigma, self._a):
            if s == 0:
                continue
            for j in range(self.w):
                r[j] = f.add(r[j], f.mul(s, row[j]))
        return r

    def _block(self, r: Sequence[int], lam: int) -> Codeword:
        f = self.field
        wires = [j * self.q + f.add(r[j], f.mul(lam, self._beta[j])) for j in range(self.w)]
        return Codeword(self.n, tuple(sorted(wires)))

    def codeset(self, index: int) -> Codeset:
        r = self._base_row(self.sigma(index))
        return Codeset(tuple(self._block(r, lam) for lam in self.field.elements()))

    def encode(self, index: int, hot: Iterable[int]) -> Codeword:
        wires = HotSet.from_wires(self.n, hot_wires(hot), self.t).wires
        f = self.field
        r = self._base_row(self.sigma(index))
        # lambda puts block point (x, j) on a hot wire iff r_j + lambda*beta_j = x
        blocked = set()
        for wire in wires:
            point = GridPoint.from_wire(wire, self.q)
            blocked.add(f.div(f.sub(point.x, r[point.j]), self._beta[point.j]))
        lam = next(l for l in f.elements() if l not in blocked)
        return self._block(r, lam)

    def decode(self, word: Codeword) -> int:
        if word.weight != self.w:
            raise MalformedCodewordError(f"codeword weight {word.weight} != w={self.w}")
        y = single_values(word, self.q, self.w)
        if self.is_reed_solomon:
            sigma = self._decode_rs(y)
        else:
            sigma = self._decode_linear(y)
        return digits_to_int(sigma, self.q)

    def _decode_rs(self, y: Sequence[int]) -> List[int]:
        f = self.field
        poly = lagrange_interpolate(f, list(zip(range(self.w), y)))
        sigma = []
        for col in self.sigma_columns:
            if col == self.q:
                sigma.append(poly.coefficient(self.K - 1))
            else:
                sigma.append(poly_eval(f, poly, col))
        return sigma

    def _decode_linear(self, y: Sequence[int]) -> List[int]:
        f = self.field
        y_info = [y[c] for c in self.info_columns]
        x = [0] * self.K
        for i, yi in enumerate(y_info):
            if yi == 0:
                continue
            for k in range(self.K):
                x[k] = f.add(x[k], f.mul(yi, self._info_inverse[i][k]))
        rows = self._a + [self._beta]
        for j in range(self.w):
            value = 0
            for xk, row in zip(x, rows):
                value = f.add(value, f.mul(xk, row[j]))
            if value != y[j]:
                raise MalformedCodewordError(f"column {j} disagrees with every codeword of the underlying code")
        return x[: self.K - 1]

    # ---- underlying code ---------------------------------------------------

    def outer_code_words(self, limit: int = 2**16) -> Iterator[Tuple[int, ...]]:
        """All q^K codewords of the (column-permuted) underlying code."""
        total = self.q**self.K
        if total > limit:
            raise CodeParameterError(f"underlying code has q^K={total} words, over the listing limit {limit}")
        f = self.field
        rows = self.generator.to_rows()
        for index in range(total):
            x = int_to_digits(index, self.q, self.K)
            word = [0] * self.N
            for xk, row in zip(x, rows):
                if xk:
                    for c in range(self.N):
                        word[c] = f.add(word[c], f.mul(xk, row[c]))
            yield tuple(word)


def max_projection_multiplicity(words: Iterable[Sequence[int]], coords: Sequence[int]) -> int:
    """Largest number of words sharing one restriction to ``coords``."""
    counts: Dict[Tuple[int, ...], int] = {}
    for word in words:
        key = tuple(word[c] for c in coords)
        counts[key] = counts.get(key, 0) + 1
    return max(counts.values()) if counts else 0


def build_rs_cpc(q: int, w: int) -> MdsCpcCode:
    """(qw, q-1, w)-CPC code of size q^(w-1) from the extended RS code."""
    if w < 2:
        raise CodeParameterError(f"w >= 2 violated: w={w}")
    field = field_ops(q)
    if q < 2 * w - 2:
        raise CodeParameterError(f"q >= 2w-2 violated: q={q}, w={w}")
    return MdsCpcCode(field, w, rs_generator(field, w), distance=q - w + 2, construction="mds_cpc")


def build_linear_cpc(generator: MatrixQ | Sequence[Sequence[int]], w: int, q: int) -> MdsCpcCode:
    """CPC code from any linear code; the minimum-weight search is exhaustive."""
    field = field_ops(q)
    if not isinstance(generator, MatrixQ):
        generator = MatrixQ.from_rows(generator)
    for value in generator.entries:
        if not 0 <= value < q:
            raise CodeParameterError(f"generator entry {value} is not an element of GF({q})")
    distance, suffix = minimum_weight_suffix(field, generator)
    head = [c for c in range(generator.cols) if c not in suffix]
    permutation = tuple(head + list(suffix))
    rows = generator.to_rows()
    permuted = MatrixQ.from_rows([[row[c] for c in permutation] for row in rows])
    log("MDS", f"linear_cpc: minimum distance {distance}, suffix columns {list(suffix)}")
    return MdsCpcCode(
        field,
        w,
        permuted,
        distance=distance,
        construction="linear_cpc",
        source=generator,
        permutation=permutation,
    )


__all__ = [
    "GridPoint",
    "column_values",
    "single_values",
    "rs_generator",
    "minimum_weight_suffix",
    "MdsCpcCode",
    "max_projection_multiplicity",
    "build_rs_cpc",
    "build_linear_cpc",
]
