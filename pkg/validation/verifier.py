"""
Brute-force verification of LPC / CPC / CPECC / cooling codes.

Checks:
- weight: every codeword obeys its kind's weight rule
- disjointness: no codeword sits in two codesets
- cooling: for every t-subset S of wires, every codeset holds a codeword avoiding S

Codewords are packed into rows of 64-bit words so one hot set is tested
against all codewords with a single AND. Exhaustive mode refuses work beyond
the configured budget instead of falling back to sampling.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations, islice
from math import comb
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from codes.code_model import KIND_CPC, KIND_CPECC, KIND_LPC, Codeset, LpcCode
from config.settings import get_settings, log

MODE_EXHAUSTIVE = "exhaustive"
MODE_SAMPLED = "sampled"

# hot sets x codewords handled per vectorized block
BLOCK_CELLS = 1 << 21


class BudgetExceededError(RuntimeError):
    """Requested exhaustive work exceeds the configured budget."""


@dataclass
class CheckResult:
    passed: bool = True
    checked: int = 0
    failures: int = 0
    witness: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"passed": self.passed, "checked": self.checked, "failures": self.failures}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationReport:
    code: Dict[str, Any]
    mode: str
    weight: CheckResult
    disjointness: CheckResult
    cooling: CheckResult
    hot_sets: int = 0
    codesets: int = 0
    work: int = 0
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.weight.passed and self.disjointness.passed and self.cooling.passed

    def to_dict(self) -> Dict[str, Any]:
        out = {
            "passed": self.passed,
            "mode": self.mode,
            "code": self.code,
            "hot_sets": self.hot_sets,
            "codesets": self.codesets,
            "work": self.work,
            "checks": {
                "weight": self.weight.to_dict(),
                "disjointness": self.disjointness.to_dict(),
                "cooling": self.cooling.to_dict(),
            },
        }
        if self.seed is not None:
            out["seed"] = self.seed
        return out


# ---- packing ------------------------------------------------------------------


def _limbs(n: int) -> int:
    return (n + 63) // 64


def pack_supports(supports: Sequence[Sequence[int]], n: int) -> np.ndarray:
    """Rows of little-endian uint64 limbs, one row per support."""
    limbs = _limbs(n)
    full = (1 << 64) - 1
    rows = []
    for support in supports:
        mask = 0
        for j in support:
            mask |= 1 << j
        rows.append([(mask >> (64 * k)) & full for k in range(limbs)])
    return np.array(rows, dtype=np.uint64).reshape(len(supports), limbs)


@dataclass
class _Flattened:
    indices: List[int]
    starts: np.ndarray
    supports: List[Tuple[int, ...]]
    packed: np.ndarray


def _flatten(code: LpcCode, indices: Sequence[int]) -> Tuple[_Flattened, List[Codeset]]:
    codesets = [code.codeset(i) for i in indices]
    starts, supports = [], []
    for cs in codesets:
        starts.append(len(supports))
        supports.extend(word.support for word in cs)
    flat = _Flattened(list(indices), np.asarray(starts, dtype=np.intp), supports, pack_supports(supports, code.n))
    return flat, codesets


# ---- individual checks ------------------------------------------------------


def check_weights(code: LpcCode, indexed: Iterable[Tuple[int, Codeset]]) -> CheckResult:
    result = CheckResult()
    for i, cs in indexed:
        for word in cs:
            result.checked += 1
            ok = True
            if code.kind in (KIND_CPC, KIND_CPECC):
                ok = word.weight == code.w
            elif code.kind == KIND_LPC:
                ok = word.weight <= code.w
            if not ok:
                result.failures += 1
                if result.passed:
                    result.passed = False
                    result.witness = {"codeset": i, "codeword": word.to_list(), "weight": word.weight, "w": code.w}
    return result


def check_disjoint(indexed: Iterable[Tuple[int, Codeset]]) -> CheckResult:
    result = CheckResult()
    owner: Dict[Tuple[int, ...], int] = {}
    for i, cs in indexed:
        for word in cs:
            result.checked += 1
            first = owner.setdefault(word.support, i)
            if first != i:
                result.failures += 1
                if result.passed:
                    result.passed = False
                    result.witness = {"codesets": [first, i], "codeword": word.to_list()}
    return result


def _cooling_block(flat: _Flattened, hot_sets: List[Tuple[int, ...]], n: int) -> CheckResult:
    """Cooling check of one block of hot sets; witness is the first (S, i) failing."""
    result = CheckResult(checked=len(hot_sets) * len(flat.indices))
    if not hot_sets:
        return result
    hot = pack_supports(hot_sets, n)
    hits = np.any((hot[:, None, :] & flat.packed[None, :, :]) != 0, axis=2)
    covered = np.logical_or.reduceat(~hits, flat.starts, axis=1)
    bad = np.argwhere(~covered)
    if bad.size:
        result.passed = False
        result.failures = int(bad.shape[0])
        s, c = bad[0]
        result.witness = {"hot_set": list(hot_sets[int(s)]), "codeset": flat.indices[int(c)]}
    return result


def _merge(parts: Iterable[CheckResult]) -> CheckResult:
    out = CheckResult()
    for part in parts:
        out.checked += part.checked
        out.failures += part.failures
        if part.witness is not None:
            key = (tuple(part.witness["hot_set"]), part.witness["codeset"])
            if out.witness is None or key < (tuple(out.witness["hot_set"]), out.witness["codeset"]):
                out.witness = part.witness
    out.passed = out.failures == 0
    return out


def _blocks(hot_sets: Iterable[Tuple[int, ...]], size: int) -> Iterator[List[Tuple[int, ...]]]:
    it = iter(hot_sets)
    while True:
        block = list(islice(it, size))
        if not block:
            return
        yield block


def check_cooling(
    flat: _Flattened, hot_sets: Iterable[Tuple[int, ...]], n: int, workers: int = 1
) -> CheckResult:
    size = max(1, BLOCK_CELLS // max(1, len(flat.supports)))
    blocks = _blocks(hot_sets, size)
    if workers <= 1:
        return _merge(_cooling_block(flat, b, n) for b in blocks)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return _merge(pool.map(lambda b: _cooling_block(flat, b, n), blocks))


# ---- entry points -----------------------------------------------------------


def exhaustive_work(code: LpcCode) -> int:
    """Lower bound of avoid-checks: C(n, t) hot sets times one codeword per codeset."""
    return comb(code.n, code.t) * code.size


def verify_code(
    code: LpcCode,
    mode: str = MODE_EXHAUSTIVE,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
    budget: Optional[int] = None,
) -> VerificationReport:
    settings = get_settings()
    budget = settings.work_budget if budget is None else budget
    workers = settings.verify_workers if workers is None else workers
    if mode == MODE_EXHAUSTIVE:
        if exhaustive_work(code) > budget:
            raise BudgetExceededError(
                f"exhaustive verification needs at least C({code.n},{code.t}) x {code.size} = "
                f"{exhaustive_work(code)} checks, over the work budget {budget}; use sampled mode"
            )
        indices = list(range(code.size))
        flat, codesets = _flatten(code, indices)
        work = comb(code.n, code.t) * len(flat.supports)
        if work > budget:
            raise BudgetExceededError(f"exhaustive verification needs {work} checks, over the work budget {budget}")
        hot_sets: Iterable[Tuple[int, ...]] = combinations(range(code.n), code.t)
        hot_count = comb(code.n, code.t)
        seed = None
    elif mode == MODE_SAMPLED:
        trials = settings.sample_trials if trials is None else trials
        seed = settings.sample_seed if seed is None else seed
        rng = np.random.default_rng(seed)
        if code.size <= trials:
            indices = list(range(code.size))
        else:
            indices = sorted({int(i) for i in rng.integers(0, code.size, size=trials)})
        hot_sets = [tuple(sorted(int(x) for x in rng.choice(code.n, size=code.t, replace=False))) for _ in range(trials)]
        hot_count = len(hot_sets)
        flat, codesets = _flatten(code, indices)
        work = hot_count * len(flat.supports)
    else:
        raise ValueError(f"unknown verification mode {mode!r}; expected {MODE_EXHAUSTIVE!r} or {MODE_SAMPLED!r}")

    log("VERIFY", f"{mode}: {code.describe()['construction']} n={code.n} t={code.t} w={code.w}, {len(indices)} codesets, {hot_count} hot sets")
    indexed = list(zip(indices, codesets))
    report = VerificationReport(
        code=code.describe(),
        mode=mode,
        weight=check_weights(code, indexed),
        disjointness=check_disjoint(indexed),
        cooling=check_cooling(flat, hot_sets, code.n, workers),
        hot_sets=hot_count,
        codesets=len(indices),
        work=work,
        seed=seed,
    )
    log("VERIFY", f"passed={report.passed}")
    return report


def min_distance(code: LpcCode, budget: Optional[int] = None) -> Optional[int]:
    """Minimum Hamming distance over distinct codewords of all codesets; None below two codewords."""
    budget = get_settings().min_distance_budget if budget is None else budget
    if code.size > budget:
        raise BudgetExceededError(f"{code.size} codesets exceed the min-distance budget {budget}")
    supports = sorted({word.support for _, cs in code.iter_codesets() for word in cs})
    if len(supports) > budget:
        raise BudgetExceededError(f"{len(supports)} codewords exceed the min-distance budget {budget}")
    if len(supports) < 2:
        return None
    dense = np.zeros((len(supports), code.n), dtype=np.float32)
    for r, support in enumerate(supports):
        dense[r, list(support)] = 1.0
    weights = dense.sum(axis=1)
    best = code.n
    rows = max(1, BLOCK_CELLS // len(supports))
    for start in range(0, len(supports), rows):
        stop = min(start + rows, len(supports))
        overlap = dense[start:stop] @ dense.T
        dist = weights[start:stop, None] + weights[None, :] - 2.0 * overlap
        # only pairs j > i
        upper = np.arange(len(supports))[None, :] > np.arange(start, stop)[:, None]
        if upper.any():
            best = min(best, int(dist[upper].min()))
    return best


def turan_cover_check(codeset: Codeset, n: int, t: int) -> bool:
    """Whether the codeword supports form a Turan (n, n-t, w)-system: every
    (n-t)-subset of the wires contains some support."""
    blocks = [frozenset(word.support) for word in codeset]
    for window in combinations(range(n), n - t):
        window = frozenset(window)
        if not any(b <= window for b in blocks):
            return False
    return True


__all__ = [
    "MODE_EXHAUSTIVE",
    "MODE_SAMPLED",
    "BudgetExceededError",
    "CheckResult",
    "VerificationReport",
    "pack_supports",
    "check_weights",
    "check_disjoint",
    "check_cooling",
    "exhaustive_work",
    "verify_code",
    "min_distance",
    "turan_cover_check",
]
