"""
Error-correcting CPC codes from Reed-Solomon evaluations.

Block C_f = {(f(a_j), j) : j in [w]} for deg f <= w-e-1; codeset sigma holds
the q blocks with f(b_i) = sigma_i. Decoding erases every column that does
not hold exactly one lit point and hands the rest to an error-and-erasure RS
decoder of length w and dimension w-e.
"""
from __future__ import annotations

import copy
from itertools import combinations
from math import comb
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import galois
import numpy as np

from codes.code_model import (
    KIND_CPECC,
    CodeParameterError,
    Codeset,
    Codeword,
    DecodingError,
    HotSet,
    LpcCode,
    hot_wires,
)
from codes.mds_cpc import GridPoint, column_values
from config.settings import get_settings, log
from field.finite_field import (
    FieldParameterError,
    GaloisField,
    Poly,
    digits_to_int,
    field_ops,
    int_to_digits,
    lagrange_interpolate,
    poly_add,
    poly_eval,
    poly_scale,
    solve_linear,
    vanishing_poly,
)

ERASURE = None


def _fits(field: GaloisField, f: Poly, known: Sequence[Tuple[int, int]]) -> int:
    """Number of known points that f misses."""
    return sum(1 for x, y in known if poly_eval(field, f, x) != y)


def _berlekamp_welch(field: GaloisField, known: Sequence[Tuple[int, int]], k: int, errors: int) -> Optional[Poly]:
    # Q(x_i) = y_i * E(x_i) with E monic of degree `errors`, deg Q < k + errors
    rows, rhs = [], []
    for x, y in known:
        powers = [field.pow(x, d) for d in range(k + errors + 1)]
        row = powers[: k + errors] + [field.neg(field.mul(y, powers[d])) for d in range(errors)]
        rows.append(row)
        rhs.append(field.mul(y, powers[errors]))
    solution = solve_linear(field, rows, rhs)
    if solution is None:
        return None
    GF = field.GF
    q_poly = galois.Poly(solution[: k + errors] or [0], field=GF, order="asc")
    e_poly = galois.Poly(solution[k + errors:] + [1], field=GF, order="asc")
    quotient, remainder = divmod(q_poly, e_poly)
    if np.count_nonzero(remainder.coeffs) or quotient.degree >= k:
        return None
    coeffs = [int(c) for c in quotient.coefficients(order="asc")]
    return Poly(tuple(coeffs))


def rs_decode_errors_erasures(
    field: GaloisField,
    received: Sequence[Optional[int]],
    k: int,
    points: Sequence[int],
    search_limit: Optional[int] = None,
) -> Optional[Poly]:
    """
    The polynomial of degree < k consistent with ``received`` up to
    floor((known - k) / 2) wrong symbols, or None.

    ``received[j]`` is the value at ``points[j]`` or None for an erasure.
    Small error budgets are searched exhaustively over error locations;
    larger ones go through Berlekamp-Welch.
    """
    if len(received) != len(points):
        raise CodeParameterError(f"received word has {len(received)} symbols for {len(points)} evaluation points")
    known = [(x, y) for x, y in zip(points, received) if y is not ERASURE]
    if len(known) < k:
        return None
    budget = (len(known) - k) // 2
    limit = get_settings().brute_force_error_search_limit if search_limit is None else search_limit
    searches = sum(comb(len(known), i) for i in range(budget + 1))
    if searches <= limit:
        for count in range(budget + 1):
            for wrong in combinations(range(len(known)), count):
                skip = set(wrong)
                kept = [pt for i, pt in enumerate(known) if i not in skip]
                f = lagrange_interpolate(field, kept[:k])
                if _fits(field, f, kept) == 0:
                    return f
        return None
    log("CPECC", f"error search over {searches} locations exceeds {limit}; using Berlekamp-Welch")
    for errors in range(budget, -1, -1):
        f = _berlekamp_welch(field, known, k, errors)
        if f is not None and _fits(field, f, known) <= budget:
            return f
    return None


class CpeccCode:
    construction = "cpecc"

    def __init__(self, q: int, w: int, e: int):
        if e < 1:
            raise CodeParameterError(f"e >= 1 violated: e={e}")
        if w < e + 2:
            raise CodeParameterError(f"w >= e+2 violated: w={w}, e={e}")
        self.field = field_ops(q)
        if q < 2 * w - e - 1:
            raise CodeParameterError(f"q >= 2w-e-1 violated: q={q}, w={w}, e={e}")
        self.q, self.w, self.e = q, w, e
        self.a_points: Tuple[int, ...] = tuple(range(w))
        self.b_points: Tuple[int, ...] = tuple(range(w, 2 * w - e - 1))
        self._z = vanishing_poly(self.field, self.b_points)
        self._z_at_a = [poly_eval(self.field, self._z, a) for a in self.a_points]
        log("CPECC", f"q={q}, w={w}, e={e} -> n={self.n}, M={self.size}")

    @property
    def n(self) -> int:
        return self.q * self.w

    @property
    def t(self) -> int:
        return self.q - 1

    @property
    def k(self) -> int:
        """Dimension of the length-w RS code at the a-points."""
        return self.w - self.e

    @property
    def size(self) -> int:
        return self.q ** (self.w - self.e - 1)

    def descriptor(self) -> Dict[str, Any]:
        return {"construction": self.construction, "params": {"q": self.q, "w": self.w, "e": self.e}}

    def summary_extras(self) -> Dict[str, Any]:
        return {"a_points": list(self.a_points), "b_points": list(self.b_points), "guaranteed_distance": 2 * self.e + 2}

    def to_code(self) -> LpcCode:
        return LpcCode(n=self.n, t=self.t, w=self.w, kind=KIND_CPECC, e=self.e, generator=self)

    def instrumented(self) -> "CpeccCode":
        twin = copy.copy(self)
        twin.field = self.field.counting()
        return twin

    def sigma(self, index: int) -> Tuple[int, ...]:
        try:
            return int_to_digits(index, self.q, self.w - self.e - 1)
        except FieldParameterError:
            raise CodeParameterError(f"codeset index {index} outside [0, {self.size - 1}]") from None

    def base_polynomial(self, sigma: Sequence[int]) -> Poly:
        """L_sigma: degree < w-e-1 with L(b_i) = sigma_i."""
        return lagrange_interpolate(self.field, list(zip(self.b_points, sigma)))

    def block_polynomial(self, index: int, lam: int) -> Poly:
        """L_sigma + lambda * Z; block lambda of codeset ``index`` is its graph on the a-points."""
        base = self.base_polynomial(self.sigma(index))
        return poly_add(self.field, base, poly_scale(self.field, self._z, lam))

    def _block(self, base_at_a: Sequence[int], lam: int) -> Codeword:
        f = self.field
        wires = [
            j * self.q + f.add(base_at_a[j], f.mul(lam, self._z_at_a[j])) for j in range(self.w)
        ]
        return Codeword(self.n, tuple(sorted(wires)))

    def _base_at_a(self, index: int) -> List[int]:
        base = self.base_polynomial(self.sigma(index))
        return [poly_eval(self.field, base, a) for a in self.a_points]

    def codeset(self, index: int) -> Codeset:
        base_at_a = self._base_at_a(index)
        return Codeset(tuple(self._block(base_at_a, lam) for lam in self.field.elements()))

    def encode(self, index: int, hot: Iterable[int]) -> Codeword:
        wires = HotSet.from_wires(self.n, hot_wires(hot), self.t).wires
        f = self.field
        base_at_a = self._base_at_a(index)
        blocked = set()
        for wire in wires:
            point = GridPoint.from_wire(wire, self.q)
            blocked.add(f.div(f.sub(point.x, base_at_a[point.j]), self._z_at_a[point.j]))
        lam = next(l for l in f.elements() if l not in blocked)
        return self._block(base_at_a, lam)

    def received_symbols(self, word: Codeword) -> List[Optional[int]]:
        """One symbol per column; columns without exactly one lit point are erased."""
        return [v[0] if len(v) == 1 else ERASURE for v in column_values(word, self.q, self.w)]

    def decode_polynomial(self, word: Codeword) -> Optional[Poly]:
        return rs_decode_errors_erasures(self.field, self.received_symbols(word), self.k, self.a_points)

    def decode(self, word: Codeword) -> int:
        poly = self.decode_polynomial(word)
        if poly is None:
            raise DecodingError(f"received word {list(word.support)} is beyond the {self.e}-error budget")
        sigma = [poly_eval(self.field, poly, b) for b in self.b_points]
        return digits_to_int(sigma, self.q)


def build_cpecc(q: int, w: int, e: int) -> CpeccCode:
    """(qw, q-1, w, e)-CPECC code of size q^(w-e-1)."""
    return CpeccCode(q, w, e)


__all__ = ["ERASURE", "rs_decode_errors_erasures", "CpeccCode", "build_cpecc"]
