"""
Arithmetic over GF(p^k) for the code constructions.

Field construction (modulus, primitive element) comes from ``galois``; each
field is the Conway-polynomial representation that ``galois.GF`` selects by
default (see config_store/field_moduli.md). Scalar arithmetic runs on plain
Python ints through dense exp/log tables; ``CountingField`` tallies
multiplications for the encoder and decoder budgets.

Element numbering: an element's integer value is the base-p digit encoding of
its coefficient vector, lowest power first. That integer is also the element's
``ord``, the position used by every grid-to-wire mapping.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import galois
import numpy as np

from config.settings import log

MAX_FIELD_ORDER = 2**16


class FieldParameterError(ValueError):
    pass


class GaloisField:
    """Immutable GF(q) context: exp/log tables plus add/sub/mul/inv/pow."""

    def __init__(self, q: int):
        if q < 2 or q > MAX_FIELD_ORDER:
            raise FieldParameterError(f"field order must satisfy 2 <= q <= 2^16, got q={q}")
        if not galois.is_prime_power(q):
            raise FieldParameterError(f"q={q} is not a prime power")
        primes, exponents = galois.factors(q)
        self.q = q
        self.p = int(primes[0])
        self.k = int(exponents[0])
        self.GF = galois.GF(q)
        self.modulus: Tuple[int, ...] = tuple(
            int(c) for c in self.GF.irreducible_poly.coefficients(order="asc")
        )
        alpha = self.GF.primitive_element
        self.primitive = int(alpha)
        exp = [int(v) for v in (alpha ** np.arange(q - 1)).tolist()]
        log_table = [0] * q
        for i, v in enumerate(exp):
            log_table[v] = i
        self._exp: Tuple[int, ...] = tuple(exp)
        self._log: Tuple[int, ...] = tuple(log_table)
        log("FIELD", f"GF({q}) modulus={self.modulus} primitive={self.primitive}")

    def __repr__(self) -> str:
        return f"GaloisField(q={self.q})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GaloisField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("GF", self.q))

    # ---- element helpers -------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise FieldParameterError(f"{a} is not an element of GF({self.q})")
        return a

    # ---- arithmetic ------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        return self._digitwise(a, b, 1)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.k == 1:
            return (-a) % self.p
        return self._digitwise(0, a, -1)

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a - b) % self.p
        return self._digitwise(a, b, -1)

    def _digitwise(self, a: int, b: int, sign: int) -> int:
        p = self.p
        out, place = 0, 1
        while a or b:
            out += ((a % p + sign * (b % p)) % p) * place
            a //= p
            b //= p
            place *= p
        return out

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.q})")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError(f"0 has no inverse in GF({self.q})")
            return 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def counting(self) -> "CountingField":
        return CountingField(self)


class CountingField(GaloisField):
    """A view of a field that tallies calls to ``mul``; tables are shared."""

    def __init__(self, base: GaloisField):
        self.__dict__.update(base.__dict__)
        self.multiplications = 0

    def mul(self, a: int, b: int) -> int:
        self.multiplications += 1
        return super().mul(a, b)


@lru_cache(maxsize=None)
def field_ops(q: int) -> GaloisField:
    """Shared GF(q) context, one per order."""
    return GaloisField(q)


# ---- digit encodings ------------------------------------------------------


def int_to_digits(value: int, base: int, length: int) -> Tuple[int, ...]:
    """Little-endian base-``base`` digits of ``value``, exactly ``length`` long."""
    if value < 0 or value >= base**length:
        raise FieldParameterError(f"{value} is outside [0, {base}^{length} - 1]")
    digits = []
    for _ in range(length):
        value, d = divmod(value, base)
        digits.append(d)
    return tuple(digits)


def digits_to_int(digits: Sequence[int], base: int) -> int:
    value = 0
    for d in reversed(digits):
        value = value * base + d
    return value


# ---- polynomials ----------------------------------------------------------


@dataclass(frozen=True)
class Poly:
    """Polynomial over the active field, lowest degree first, normalized."""

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        coeffs = tuple(self.coeffs)
        end = len(coeffs)
        while end and coeffs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", coeffs[:end])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return not self.coeffs


def poly_eval(field: GaloisField, f: Poly, x: int) -> int:
    if not f.coeffs:
        return 0
    result = f.coeffs[-1]
    for c in reversed(f.coeffs[:-1]):
        result = field.add(field.mul(result, x), c)
    return result


def poly_add(field: GaloisField, f: Poly, g: Poly) -> Poly:
    size = max(len(f.coeffs), len(g.coeffs))
    return Poly(tuple(field.add(f.coefficient(i), g.coefficient(i)) for i in range(size)))


def poly_scale(field: GaloisField, f: Poly, c: int) -> Poly:
    return Poly(tuple(field.mul(a, c) for a in f.coeffs))


def poly_mul(field: GaloisField, f: Poly, g: Poly) -> Poly:
    if f.is_zero() or g.is_zero():
        return Poly()
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(g.coeffs):
            out[i + j] = field.add(out[i + j], field.mul(a, b))
    return Poly(tuple(out))


def _times_linear(field: GaloisField, coeffs: List[int], root: int) -> List[int]:
    # (c_0 + c_1 x + ...) * (x - root)
    out = [0] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i + 1] = field.add(out[i + 1], c)
        out[i] = field.sub(out[i], field.mul(c, root))
    return out


def vanishing_poly(field: GaloisField, roots: Iterable[int]) -> Poly:
    """Monic product of (x - r) over ``roots``."""
    coeffs = [1]
    for r in roots:
        coeffs = _times_linear(field, coeffs, r)
    return Poly(tuple(coeffs))


def lagrange_interpolate(field: GaloisField, points: Sequence[Tuple[int, int]]) -> Poly:
    """Unique polynomial of degree < len(points) through ``points``."""
    xs = [x for x, _ in points]
    if len(set(xs)) != len(xs):
        raise FieldParameterError("interpolation points must have distinct x coordinates")
    if len(points) > field.q:
        raise FieldParameterError(f"cannot interpolate {len(points)} points over GF({field.q})")
    total = [0] * len(points)
    for i, (xi, yi) in enumerate(points):
        if yi == 0:
            continue
        basis = [1]
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = _times_linear(field, basis, xj)
            denom = field.mul(denom, field.sub(xi, xj))
        scale = field.mul(yi, field.inv(denom))
        for d, c in enumerate(basis):
            total[d] = field.add(total[d], field.mul(c, scale))
    return Poly(tuple(total))


# ---- matrices -------------------------------------------------------------


@dataclass(frozen=True)
class MatrixQ:
    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise FieldParameterError(
                f"matrix needs rows*cols={self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "MatrixQ":
        if not rows:
            raise FieldParameterError("matrix must have at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise FieldParameterError("matrix rows must share one length")
        return cls(len(rows), width, tuple(int(v) for r in rows for v in r))

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_galois(self, field: GaloisField):
        return field.GF(np.array(self.to_rows(), dtype=np.int64))

    @classmethod
    def from_galois(cls, array) -> "MatrixQ":
        return cls.from_rows(np.asarray(array.view(np.ndarray), dtype=np.int64).tolist())


def matrix_rank(field: GaloisField, matrix: MatrixQ, columns: Optional[Sequence[int]] = None) -> int:
    arr = matrix.to_galois(field)
    if columns is not None:
        if not columns:
            return 0
        arr = arr[:, list(columns)]
    return int(np.linalg.matrix_rank(arr))


def solve_linear(field: GaloisField, rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> Optional[List[int]]:
    """One solution x of rows * x = rhs (free variables set to 0), or None."""
    if not rows:
        return None
    width = len(rows[0])
    augmented = field.GF(np.array([list(r) + [b] for r, b in zip(rows, rhs)], dtype=np.int64))
    reduced = augmented.row_reduce(ncols=width).view(np.ndarray)
    solution = [0] * width
    for row in reduced:
        nonzero = np.flatnonzero(row[:width])
        if nonzero.size == 0:
            if row[width]:
                return None
            continue
        solution[int(nonzero[0])] = int(row[width])
    return solution


# ---- GF(2) ----------------------------------------------------------------


def _as_bits(row) -> int:
    if isinstance(row, (int, np.integer)):
        return int(row)
    value = 0
    for i, bit in enumerate(row):
        if int(bit) & 1:
            value |= 1 << i
    return value


def gf2_kernel_vector(rows: Sequence) -> Optional[Tuple[int, ...]]:
    """
    Nonzero c with sum(c_i * rows[i]) = 0 over GF(2), or None.

    Rows may be int bitsets or 0/1 sequences. Among all nonzero solutions the
    one with the smallest integer value (c_0 as the lowest bit) is returned.
    """
    count = len(rows)
    if count == 0:
        return None
    # eliminate on (row bits, combination bits) pairs
    pivots: List[Tuple[int, int]] = []
    kernel: List[int] = []
    for i, row in enumerate(rows):
        bits, combo = _as_bits(row), 1 << i
        for pbits, pcombo in pivots:
            if bits & (pbits & -pbits):
                bits ^= pbits
                combo ^= pcombo
        if bits:
            pivots.append((bits, combo))
        else:
            kernel.append(combo)
    if not kernel:
        return None
    # echelon form keyed by leading bit; the smallest span element is the
    # basis vector with the lowest leading bit
    echelon: Dict[int, int] = {}
    for vec in kernel:
        for lead in sorted(echelon, reverse=True):
            if (vec >> lead) & 1:
                vec ^= echelon[lead]
        if vec:
            echelon[vec.bit_length() - 1] = vec
    best = echelon[min(echelon)]
    return tuple((best >> i) & 1 for i in range(count))


__all__ = [
    "FieldParameterError",
    "GaloisField",
    "CountingField",
    "field_ops",
    "int_to_digits",
    "digits_to_int",
    "Poly",
    "poly_eval",
    "poly_add",
    "poly_scale",
    "poly_mul",
    "vanishing_poly",
    "lagrange_interpolate",
    "MatrixQ",
    "matrix_rank",
    "solve_linear",
    "gf2_kernel_vector",
    "MAX_FIELD_ORDER",
]
