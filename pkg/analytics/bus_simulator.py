"""
Batch simulation of a bus driven by a cooling code.

Each step picks a message, declares a hot set, encodes, and treats the
codeword as the transition vector (state <- state XOR codeword). The thermal
proxy is an exponential moving average of per-wire transitions; it is a model
choice, not a physical temperature.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field as dc_field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from codes.code_model import (
    KIND_CPC,
    KIND_CPECC,
    KIND_COOLING,
    CodeParameterError,
    Codeword,
    DecodingError,
    LpcCode,
    MalformedCodewordError,
)
from codes.code_store import load_code
from config.settings import get_settings, log

POLICY_TOP_T = "top_t"
POLICY_RANDOM_T = "random_t"
POLICY_FIXED = "adversarial_fixed"
POLICIES = (POLICY_TOP_T, POLICY_RANDOM_T, POLICY_FIXED)

THERMAL_MODEL = "EMA of per-wire transitions (model choice, not a temperature)"


class SimulationError(ValueError):
    pass


@dataclass(frozen=True)
class SimConfig:
    code_path: Optional[str] = None
    steps: int = 1000
    policy: str = POLICY_TOP_T
    fixed_hot: Sequence[int] = ()
    seed: int = 0
    decay: Optional[float] = None
    channel_flips: int = 0

    def __post_init__(self) -> None:
        if self.policy not in POLICIES:
            raise SimulationError(f"unknown hot-set policy {self.policy!r}; expected one of {list(POLICIES)}")
        if self.steps < 0:
            raise SimulationError(f"steps must be >= 0, got {self.steps}")
        if self.channel_flips < 0:
            raise SimulationError(f"channel_flips must be >= 0, got {self.channel_flips}")
        if self.decay is not None and not 0.0 < self.decay < 1.0:
            raise SimulationError(f"decay must lie in (0, 1), got {self.decay}")
        if self.policy == POLICY_FIXED and not self.fixed_hot:
            raise SimulationError("adversarial_fixed policy needs a nonempty fixed_hot list")
        object.__setattr__(self, "fixed_hot", tuple(int(x) for x in self.fixed_hot))

    @classmethod
    def from_dict(cls, data: Dict[str, Any], base_dir: Optional[Path] = None) -> "SimConfig":
        known = {"code_path", "steps", "policy", "fixed_hot", "seed", "decay", "channel_flips"}
        unknown = sorted(set(data) - known)
        if unknown:
            raise SimulationError(f"unknown simulation config keys: {', '.join(unknown)}")
        values = dict(data)
        code_path = values.get("code_path")
        if code_path and base_dir is not None and not Path(code_path).is_absolute():
            candidate = base_dir / code_path
            if candidate.exists() or not Path(code_path).exists():
                values["code_path"] = str(candidate)
        return cls(**values)

    @classmethod
    def from_json(cls, path: str | Path) -> "SimConfig":
        p = Path(path)
        if not p.exists():
            raise SimulationError(f"Simulation config not found: {path}")
        try:
            data = json.loads(p.read_text(encoding="utf-8-sig"))
        except json.JSONDecodeError as exc:
            raise SimulationError(f"Simulation config is not valid JSON: {path}: {exc}") from exc
        return cls.from_dict(data, base_dir=p.parent)


@dataclass
class BusState:
    n: int
    decay: float
    state: Optional[np.ndarray] = None
    transition_counts: Optional[np.ndarray] = None
    temp_proxy: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        if self.state is None:
            self.state = np.zeros(self.n, dtype=np.uint8)
        if self.transition_counts is None:
            self.transition_counts = np.zeros(self.n, dtype=np.int64)
        if self.temp_proxy is None:
            self.temp_proxy = np.zeros(self.n, dtype=np.float64)

    def hottest(self, t: int) -> List[int]:
        """The t wires with the highest proxy; ties go to the lower index."""
        order = np.argsort(-self.temp_proxy, kind="stable")
        return sorted(int(i) for i in order[:t])

    def apply(self, word: Codeword) -> np.ndarray:
        flips = np.zeros(self.n, dtype=np.uint8)
        flips[list(word.support)] = 1
        self.state ^= flips
        self.transition_counts += flips
        self.temp_proxy = self.decay * self.temp_proxy + (1.0 - self.decay) * flips
        return flips


@dataclass
class SimulationReport:
    steps: int
    policy: str
    seed: int
    decay: float
    channel_flips: int
    code: Dict[str, Any]
    max_transitions_per_step: int = 0
    min_transitions_per_step: int = 0
    hot_violations: int = 0
    weight_violations: int = 0
    decode_failures: int = 0
    decode_success_rate: Optional[float] = None
    transition_histogram: List[int] = dc_field(default_factory=list)
    temp_proxy: List[float] = dc_field(default_factory=list)
    thermal_model: str = THERMAL_MODEL

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _weight_ok(code: LpcCode, weight: int) -> bool:
    if code.kind in (KIND_CPC, KIND_CPECC):
        return weight == code.w
    if code.kind == KIND_COOLING:
        return True
    return weight <= code.w


def simulate(config: SimConfig, code: Optional[LpcCode] = None) -> SimulationReport:
    if code is None:
        if not config.code_path:
            raise SimulationError("simulation config names no code_path and no code was given")
        code = load_code(config.code_path)
    decay = get_settings().sim_decay if config.decay is None else config.decay
    if config.policy == POLICY_FIXED:
        bad = [x for x in config.fixed_hot if not 0 <= x < code.n]
        if bad or len(config.fixed_hot) > code.t:
            raise SimulationError(f"fixed hot set {list(config.fixed_hot)} must hold <= t={code.t} wires in [0, {code.n - 1}]")
    if config.channel_flips > code.n:
        raise SimulationError(f"channel_flips={config.channel_flips} exceeds n={code.n}")

    rng = np.random.default_rng(config.seed)
    bus = BusState(code.n, decay)
    report = SimulationReport(
        steps=config.steps,
        policy=config.policy,
        seed=config.seed,
        decay=decay,
        channel_flips=config.channel_flips,
        code=code.describe(),
    )
    weights: List[int] = []
    successes = 0
    log("SIM", f"{config.steps} steps, policy={config.policy}, n={code.n} t={code.t} w={code.w}")
    for step in range(config.steps):
        message = int(rng.integers(0, code.size))
        if config.policy == POLICY_TOP_T:
            hot = bus.hottest(code.t)
        elif config.policy == POLICY_RANDOM_T:
            hot = sorted(int(x) for x in rng.choice(code.n, size=code.t, replace=False))
        else:
            hot = list(config.fixed_hot)
        try:
            word = code.encode(message, hot)
        except (CodeParameterError, DecodingError) as exc:
            raise SimulationError(f"encoder failed at step {step} (message {message}, hot {hot}): {exc}") from exc

        if not word.avoids(hot):
            report.hot_violations += 1
        if not _weight_ok(code, word.weight):
            report.weight_violations += 1
        weights.append(word.weight)
        bus.apply(word)

        received = word
        if config.channel_flips:
            noise = 0
            for j in rng.choice(code.n, size=config.channel_flips, replace=False):
                noise |= 1 << int(j)
            received = Codeword.from_mask(code.n, word.mask ^ noise)
        try:
            if code.decode(received) == message:
                successes += 1
            else:
                report.decode_failures += 1
        except (MalformedCodewordError, DecodingError):
            report.decode_failures += 1

    if weights:
        report.max_transitions_per_step = max(weights)
        report.min_transitions_per_step = min(weights)
        report.decode_success_rate = successes / config.steps
    report.transition_histogram = [int(c) for c in bus.transition_counts]
    report.temp_proxy = [float(x) for x in bus.temp_proxy]
    log("SIM", f"hot_violations={report.hot_violations} decode_success_rate={report.decode_success_rate}")
    return report


__all__ = [
    "POLICIES",
    "POLICY_TOP_T",
    "POLICY_RANDOM_T",
    "POLICY_FIXED",
    "THERMAL_MODEL",
    "SimulationError",
    "SimConfig",
    "BusState",
    "SimulationReport",
    "simulate",
]
