"""
Binary (n, t)-cooling codes from a (t+1)-spread of F_2^n.

With tau = t+1 dividing n, F_2^n is read as GF(2^tau)^k, k = n/tau: coordinate
c of a word is the tau-bit field element in bits c*tau .. c*tau+tau-1. Every
line {lambda * v} minus zero is one codeset. A line restricted to any t wires
is a tau-dimensional GF(2)-space squeezed into t coordinates, so some nonzero
point of it vanishes there.
"""
from __future__ import annotations

from typing import Any, Dict, Iterable, List, Sequence, Tuple

from codes.code_model import (
    KIND_COOLING,
    CodeParameterError,
    Codeset,
    Codeword,
    LpcCode,
    MalformedCodewordError,
)
from config.settings import log
from field.finite_field import GaloisField, digits_to_int, field_ops, gf2_kernel_vector, int_to_digits

MAX_TAU = 16


class SpreadCoolingCode:
    construction = "spread_cooling"

    def __init__(self, n: int, t: int):
        if n < 1 or t < 0:
            raise CodeParameterError(f"need n >= 1 and t >= 0: n={n}, t={t}")
        tau = t + 1
        if n % tau:
            raise CodeParameterError(
                f"(t+1) | n violated: t+1={tau}, n={n}; partial spreads for t+1 not dividing n are not built here"
            )
        if tau > MAX_TAU:
            raise CodeParameterError(f"t+1 <= {MAX_TAU} violated: t={t}")
        self.n, self.t, self.tau = n, t, tau
        self.k = n // tau
        self.Q = 1 << tau
        self.field: GaloisField = field_ops(self.Q)
        # offsets[p]: rank of the first representative whose leading coordinate is p
        self._offsets: List[int] = []
        total = 0
        for p in range(self.k):
            self._offsets.append(total)
            total += self.Q ** (self.k - 1 - p)
        self._size = total
        log("SPREAD", f"n={n} t={t}: GF({self.Q})^{self.k}, {total} lines")

    # ---- shape ------------------------------------------------------------

    @property
    def size(self) -> int:
        return self._size

    @property
    def message_bits(self) -> int:
        """Bits addressable through ``message_from_bits``: the lines led by coordinate 0."""
        return self.n - self.tau

    def descriptor(self) -> Dict[str, Any]:
        return {"construction": self.construction, "params": {"n": self.n, "t": self.t}}

    def summary_extras(self) -> Dict[str, Any]:
        return {"tau": self.tau, "lines": self.size, "message_bits": self.message_bits}

    def to_code(self) -> LpcCode:
        return LpcCode(n=self.n, t=self.t, w=self.n, kind=KIND_COOLING, generator=self)

    # ---- vectors ----------------------------------------------------------

    def coordinates(self, word: int) -> Tuple[int, ...]:
        mask = self.Q - 1
        return tuple((word >> (c * self.tau)) & mask for c in range(self.k))

    def from_coordinates(self, coords: Sequence[int]) -> int:
        word = 0
        for c, v in enumerate(coords):
            word |= v << (c * self.tau)
        return word

    def scale(self, lam: int, word: int) -> int:
        return self.from_coordinates([self.field.mul(lam, v) for v in self.coordinates(word)])

    def representative(self, index: int) -> int:
        """Line ``index`` as its point whose first nonzero coordinate is 1."""
        if not 0 <= index < self._size:
            raise CodeParameterError(f"codeset index {index} outside [0, {self._size - 1}]")
        lead = max(p for p in range(self.k) if self._offsets[p] <= index)
        tail = int_to_digits(index - self._offsets[lead], self.Q, self.k - 1 - lead)
        coords = [0] * lead + [1] + list(tail)
        return self.from_coordinates(coords)

    def index_of(self, word: int) -> int:
        coords = self.coordinates(word)
        lead = next((p for p, v in enumerate(coords) if v), None)
        if lead is None or word >> self.n:
            raise MalformedCodewordError(f"word {word:#x} is zero or longer than {self.n} bits; it lies on no line")
        scale = self.field.inv(coords[lead])
        tail = [self.field.mul(scale, v) for v in coords[lead + 1:]]
        return self._offsets[lead] + digits_to_int(tail, self.Q)

    # ---- codesets and coding ------------------------------------------------

    def codeset(self, index: int) -> Codeset:
        rep = self.representative(index)
        words = sorted(self.scale(lam, rep) for lam in range(1, self.Q))
        return Codeset(tuple(Codeword.from_mask(self.n, y) for y in words))

    def encode(self, index: int, hot: Iterable[int]) -> Codeword:
        wires = sorted(set(hot))
        if len(wires) > self.t:
            raise CodeParameterError(f"hot set of size {len(wires)} exceeds t={self.t}")
        rep = self.representative(index)
        if not wires:
            return Codeword.from_mask(self.n, min(self.scale(lam, rep) for lam in range(1, self.Q)))
        # row b: the GF(2)-basis point 2^b * rep seen on the hot wires
        rows = []
        for b in range(self.tau):
            point = self.scale(1 << b, rep)
            rows.append(sum(((point >> j) & 1) << i for i, j in enumerate(wires)))
        combo = gf2_kernel_vector(rows)
        if combo is None:
            raise AssertionError(f"no kernel vector for {self.tau} rows on {len(wires)} wires")
        lam = sum(bit << b for b, bit in enumerate(combo))
        word = Codeword.from_mask(self.n, self.scale(lam, rep))
        assert word.weight > 0 and word.avoids(wires), (index, wires, word)
        return word

    def decode(self, word: Codeword) -> int:
        if word.n != self.n:
            raise MalformedCodewordError(f"word on {word.n} wires, code has n={self.n}")
        return self.index_of(word.mask)

    # ---- fixed-width messages -------------------------------------------------

    def message_from_bits(self, bits: Sequence[int]) -> int:
        """Little-endian bit string of ``message_bits`` bits -> line index."""
        bits = [int(b) for b in bits]
        if len(bits) != self.message_bits or any(b not in (0, 1) for b in bits):
            raise CodeParameterError(f"expected {self.message_bits} binary digits, got {bits}")
        return digits_to_int(bits, 2)

    def bits_from_message(self, index: int) -> List[int]:
        if not 0 <= index < 1 << self.message_bits:
            raise CodeParameterError(f"line {index} is outside the first 2^{self.message_bits} lines")
        return list(int_to_digits(index, 2, self.message_bits))


def build_spread_cooling(n: int, t: int) -> LpcCode:
    return SpreadCoolingCode(n, t).to_code()


__all__ = ["SpreadCoolingCode", "build_spread_cooling"]
