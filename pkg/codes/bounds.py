"""
Upper bounds on LPC/CPC code sizes and size formulas for comparison reports.

All arithmetic is exact: binomials are Python ints and the one rational bound
is floored with integer division, never through floats.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb, log2
from typing import Any, Dict, List, Optional

import galois

from codes.code_model import CodeParameterError


def _check(n: int, t: int, w: int) -> None:
    if n <= 0 or t < 0 or w < 0:
        raise CodeParameterError(f"need n > 0, t >= 0, w >= 0: n={n}, t={t}, w={w}")
    if t + w > n:
        raise CodeParameterError(f"t + w <= n violated: t={t}, w={w}, n={n}")


def turan_lower_bound(n: int, k: int, r: int) -> Fraction:
    """De Caen's lower bound on the Turan number T(n, k, r), exact."""
    if not n >= k >= r >= 1:
        raise CodeParameterError(f"Turan bound needs n >= k >= r >= 1: n={n}, k={k}, r={r}")
    return Fraction(n - k + 1, n - r + 1) * Fraction(comb(n, r), comb(k - 1, r - 1))


def lpc_count_bound(n: int, t: int, w: int) -> int:
    _check(n, t, w)
    return sum(comb(n - t, i) for i in range(w + 1))


def cpc_count_bound(n: int, t: int, w: int) -> int:
    _check(n, t, w)
    return comb(n - t, w)


def cpc_turan_bound(n: int, t: int, w: int) -> int:
    """C(n, w) / T(n, n-t, w) floored, with T from below by de Caen."""
    _check(n, t, w)
    if w == 0:
        return 1
    return comb(n, w) // turan_lower_bound(n, n - t, w)


def lpc_turan_bound(n: int, t: int, w: int) -> int:
    _check(n, t, w)
    return sum(comb(n, i) for i in range(w)) + cpc_turan_bound(n, t, w)


def bounds(n: int, t: int, w: int) -> Dict[str, int]:
    """The four size bounds for (n, t, w) codes."""
    return {
        "lpc_count_bound": lpc_count_bound(n, t, w),
        "cpc_count_bound": cpc_count_bound(n, t, w),
        "cpc_turan_bound": cpc_turan_bound(n, t, w),
        "lpc_turan_bound": lpc_turan_bound(n, t, w),
    }


def applicable_bound(n: int, t: int, w: int, constant_weight: bool) -> int:
    """Tightest bound that applies to a code of the given weight regime."""
    b = bounds(n, t, w)
    if constant_weight:
        return min(b["cpc_count_bound"], b["cpc_turan_bound"])
    return min(b["lpc_count_bound"], b["lpc_turan_bound"])


# ---- prior constructions (size formulas only) ------------------------------


@dataclass
class ComparisonEntry:
    method: str
    n: int
    t: int
    w: int
    size: Optional[int]
    applicable: bool = True
    params: Dict[str, Any] = dc_field(default_factory=dict)
    reason: str = ""

    @property
    def log2_size(self) -> Optional[float]:
        if not self.size:
            return None
        # float conversion overflows past 2^1024
        shift = max(self.size.bit_length() - 53, 0)
        return log2(self.size >> shift) + shift

    def to_dict(self) -> Dict[str, Any]:
        return {
            "method": self.method,
            "n": self.n,
            "t": self.t,
            "w": self.w,
            "size": self.size,
            "log2_size": None if self.log2_size is None else round(self.log2_size, 3),
            "applicable": self.applicable,
            "params": dict(self.params),
            "reason": self.reason,
        }


def concatenation_size(m: int, s: int, w_prime: int, q: int, t: int) -> ComparisonEntry:
    """Size of the q-ary concatenation code on m*s wires with weight m*w'."""
    params = {"m": m, "s": s, "w_prime": w_prime, "q": q}
    n, w = m * s, m * w_prime

    def nope(reason: str) -> ComparisonEntry:
        return ComparisonEntry("concatenation", n, t, w, None, False, params, reason)

    if not galois.is_prime_power(q):
        return nope(f"q={q} is not a prime power")
    capacity = sum(comb(s, i) for i in range(w_prime + 1))
    if q > capacity:
        return nope(f"q <= sum_(i<=w') C(s,i) violated: q={q}, bound={capacity}")
    if t > s:
        return nope(f"t <= s violated: t={t}, s={s}")
    sizes = []
    if 2 * (t + 1) <= m:
        sizes.append(q ** (m - t - 1))
    if t + 1 <= m <= q + 1:
        sizes.append(q ** (m - t))
    if not sizes:
        return nope(f"neither t+1 <= m/2 nor t+1 <= m <= q+1 holds: t={t}, m={m}, q={q}")
    return ComparisonEntry("concatenation", n, t, w, max(sizes), True, params)


def sunflower_size(n: int, t: int, w: int, s: int, r: int) -> ComparisonEntry:
    """
    Size 2^(n-t-r) of the sunflower code. Existence of the [n, s, w+1] binary
    code and non-existence of the [n-t, r, w+1] code are taken on the caller's
    word; only the arithmetic hypothesis is checked here.
    """
    params = {"s": s, "r": r}
    if 2 * (r + t) > n + s:
        return ComparisonEntry(
            "sunflower", n, t, w, None, False, params, f"r + t <= (n + s)/2 violated: r={r}, t={t}, n={n}, s={s}"
        )
    if n - t - r < 0:
        return ComparisonEntry("sunflower", n, t, w, None, False, params, f"n - t - r < 0: n={n}, t={t}, r={r}")
    return ComparisonEntry("sunflower", n, t, w, 2 ** (n - t - r), True, params)


def sunflower_gv_parameters(n: int, t: int, w: int) -> Dict[str, int]:
    """(s, r) from the Gilbert-Varshamov and Hamming bounds."""
    _check(n, t, w)
    gv = sum(comb(n - 1, i) for i in range(w))
    hamming = sum(comb(n - t, i) for i in range(w // 2 + 1))
    s = n - (gv - 1).bit_length()  # ceil(log2 gv)
    r = n - t - (hamming.bit_length() - 1)  # floor(log2 hamming)
    return {"s": s, "r": r}


def decomposition_size(n: int, t: int, w: int) -> ComparisonEntry:
    """Hypergraph-decomposition CPC size; exists only when n = (t+1)w."""
    if w < 1 or n != (t + 1) * w:
        return ComparisonEntry("decomposition", n, t, w, None, False, {}, f"n = (t+1)w violated: n={n}, t={t}, w={w}")
    return ComparisonEntry("decomposition", n, t, w, comb(n - 1, w - 1), True)


def comparison_sizes(
    n: int,
    t: int,
    w: int,
    concatenation: Optional[List[Dict[str, int]]] = None,
    sunflower: Optional[List[Dict[str, int]]] = None,
) -> List[ComparisonEntry]:
    """Prior-construction sizes for (n, t, w), for side-by-side reporting."""
    rows: List[ComparisonEntry] = [decomposition_size(n, t, w)]
    for row in concatenation or []:
        rows.append(concatenation_size(row["m"], row["s"], row["w_prime"], row["q"], row.get("t", t)))
    for row in sunflower or [sunflower_gv_parameters(n, t, w)]:
        rows.append(sunflower_size(n, t, w, row["s"], row["r"]))
    return rows


# ---- this toolkit's constructions -----------------------------------------


def construction_sizes(name: str, **params: int) -> int:
    """Exact size of a named construction without building it."""
    p = params
    if name == "mds_cpc":
        return p["q"] ** (p["w"] - 1)
    if name == "linear_cpc":
        return p["q"] ** (p["k"] - 1)
    if name == "cpecc":
        return p["q"] ** (p["w"] - p["e"] - 1)
    if name == "recursive_cpc":
        return p["m"] * p["q"] ** (p["w"] - 1)
    if name == "lpc_union":
        return sum(p["q"] ** i for i in range(p["w"]))
    if name == "outer_classes":
        return p["q"] ** (p["w"] - 1)
    if name == "spread_cooling":
        return (2 ** p["n"] - 1) // (2 ** (p["t"] + 1) - 1)
    if name == "leaf231_lpc":
        return (2 ** (2 * p["w"]) - 1) // (2 ** (p["t"] + 1) - 1)
    if name == "construction4":
        return (2 ** (3 * p["w"]) - 1) // (2 ** (p["t"] + 1) - 1)
    raise CodeParameterError(f"no size formula for construction {name!r}")


def _own(method: str, n: int, t: int, w: int, /, **params: int) -> ComparisonEntry:
    return ComparisonEntry(method, n, t, w, construction_sizes(method, **params), True, params)


def headline_comparisons() -> List[ComparisonEntry]:
    """The worked size comparisons at the headline parameters."""
    return [
        _own("mds_cpc", 96, 15, 6, q=16, w=6),
        concatenation_size(m=6, s=16, w_prime=1, q=16, t=1),
        sunflower_size(96, 15, 6, s=81, r=65),
        _own("linear_cpc", 81, 8, 9, q=9, k=8),
        concatenation_size(m=9, s=9, w_prime=1, q=9, t=8),
        sunflower_size(81, 8, 9, s=54, r=52),
        _own("recursive_cpc", 160, 48, 6, m=5, q=16, w=6),
        sunflower_size(160, 48, 6, s=137, r=95),
        _own("lpc_union", 144, 32, 7, q=16, w=7),
        sunflower_size(144, 32, 7, s=121, r=94),
        _own("leaf231_lpc", 18, 2, 6, w=6, t=2),
        concatenation_size(m=6, s=3, w_prime=1, q=4, t=2),
        _own("construction4", 30, 2, 6, w=6, t=2),
        concatenation_size(m=2, s=15, w_prime=3, q=2**9, t=2),
    ]


__all__ = [
    "turan_lower_bound",
    "lpc_count_bound",
    "cpc_count_bound",
    "cpc_turan_bound",
    "lpc_turan_bound",
    "bounds",
    "applicable_bound",
    "ComparisonEntry",
    "concatenation_size",
    "sunflower_size",
    "sunflower_gv_parameters",
    "decomposition_size",
    "comparison_sizes",
    "construction_sizes",
    "headline_comparisons",
]
