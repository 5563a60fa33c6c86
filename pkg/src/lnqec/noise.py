"""Pauli noise under the asymmetric ancilla assumption and Monte Carlo runs.

Randomness: trial ``i`` of a run seeded with ``seed`` draws from
``PCG64(SeedSequence(seed, spawn_key=(i,)))``.  Each trial owns its
substream, so results do not depend on how trials are split across workers.
"""

from __future__ import annotations

import functools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .scheme import PauliErrorVector, Scheme, SyndromeTable, check_table_matches, run_cycle

REPORT_SCHEMA = "lnqec.simulate/1"
_Z95 = 1.959963984540054


@dataclass(frozen=True)
class Adversarial:
    """Uniform over all errors of weight at most ``t`` obeying the ancilla assumption."""

    t: int

    def __post_init__(self) -> None:
        if self.t < 0:
            raise ValueError("t must be non-negative")


@dataclass(frozen=True)
class IID:
    """Independent noise per qubit.

    Data qubits suffer X, Y or Z each with probability ``p_data``; ancillas
    suffer their one permitted Pauli (Z, or X for the dual) with
    probability ``p_anc``.
    """

    p_data: float
    p_anc: float

    def __post_init__(self) -> None:
        if not 0 <= 3 * self.p_data <= 1:
            raise ValueError("need 0 <= 3*p_data <= 1")
        if not 0 <= self.p_anc <= 1:
            raise ValueError("need 0 <= p_anc <= 1")


@dataclass(frozen=True)
class NoiseModel:
    kind: Adversarial | IID
    seed: int = 0

    def rng(self, trial: int) -> np.random.Generator:
        return trial_rng(self.seed, trial)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,))))


def _merge(scheme: Scheme, anc_bits: int, x_data: int, z_data: int) -> PauliErrorVector:
    n_anc = scheme.n_anc
    x, z = x_data << n_anc, z_data << n_anc
    if scheme.is_dual:
        x |= anc_bits
    else:
        z |= anc_bits
    return PauliErrorVector.from_bits(scheme, x, z)


@functools.lru_cache(maxsize=64)
def _weight_class_counts(n_anc: int, k: int, t: int) -> tuple[tuple[int, int, int], ...]:
    """``(ancilla_count, data_count, n_errors)`` for every split of weight <= t."""
    out = []
    for w in range(t + 1):
        for j in range(max(0, w - k), min(w, n_anc) + 1):
            count = math.comb(n_anc, j) * math.comb(k, w - j) * 3 ** (w - j)
            if count:
                out.append((j, w - j, count))
    return tuple(out)


def sample_adversarial(model: NoiseModel, scheme: Scheme, rng: np.random.Generator) -> PauliErrorVector:
    """Draw uniformly from every permitted error of weight at most ``t``."""
    t = model.kind.t
    if t > scheme.n_phys:
        raise ValueError(f"t={t} exceeds the {scheme.n_phys} physical qubits")
    classes = _weight_class_counts(scheme.n_anc, scheme.k, t)
    total = sum(c for _, _, c in classes)
    pick = int(rng.integers(total))
    for j, m, c in classes:
        if pick < c:
            break
        pick -= c
    anc = rng.choice(scheme.n_anc, size=j, replace=False) if j else ()
    data = rng.choice(scheme.k, size=m, replace=False) if m else ()
    paulis = rng.integers(1, 4, size=m)  # 1=X, 2=Z, 3=Y as (x, z) bit pairs
    anc_bits = sum(1 << int(a) for a in anc)
    x_data = z_data = 0
    for q, p in zip(data, paulis):
        x_data |= (int(p) & 1) << int(q)
        z_data |= (int(p) >> 1) << int(q)
    return _merge(scheme, anc_bits, x_data, z_data)


def sample_iid(model: NoiseModel, scheme: Scheme, rng: np.random.Generator) -> PauliErrorVector:
    p, pa = model.kind.p_data, model.kind.p_anc
    anc_hits = rng.random(scheme.n_anc) < pa
    u = rng.random(scheme.k)
    anc_bits = sum(1 << i for i in np.flatnonzero(anc_hits))
    x_data = z_data = 0
    for q, v in enumerate(u):
        if v < p:  # X
            x_data |= 1 << q
        elif v < 2 * p:  # Z
            z_data |= 1 << q
        elif v < 3 * p:  # Y
            x_data |= 1 << q
            z_data |= 1 << q
    return _merge(scheme, anc_bits, x_data, z_data)


def sample(model: NoiseModel, scheme: Scheme, rng: np.random.Generator) -> PauliErrorVector:
    if isinstance(model.kind, Adversarial):
        return sample_adversarial(model, scheme, rng)
    return sample_iid(model, scheme, rng)


def wilson_interval(failures: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    phat = failures / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    # pin the exact endpoints that rounding would otherwise smear
    lo = 0.0 if failures == 0 else max(0.0, centre - half)
    hi = 1.0 if failures == trials else min(1.0, centre + half)
    return lo, hi


@dataclass(frozen=True)
class MonteCarloReport:
    code: str
    variant: str
    model: NoiseModel
    trials: int
    failures: int

    @property
    def failure_rate(self) -> float:
        return self.failures / self.trials if self.trials else 0.0

    @property
    def wilson_95_interval(self) -> tuple[float, float]:
        return wilson_interval(self.failures, self.trials)

    def to_json_dict(self) -> dict:
        kind = self.model.kind
        out: dict = {"schema": REPORT_SCHEMA, "code": self.code, "variant": self.variant}
        if isinstance(kind, Adversarial):
            out["t"] = kind.t
        else:
            out["p"] = {"data": kind.p_data, "anc": kind.p_anc}
        lo, hi = self.wilson_95_interval
        out.update(
            trials=self.trials,
            failures=self.failures,
            rate=self.failure_rate,
            ci95=[lo, hi],
            seed=self.model.seed,
        )
        return out


def _count_failures(scheme: Scheme, table: SyndromeTable, model: NoiseModel, start: int, stop: int) -> int:
    failures = 0
    for i in range(start, stop):
        err = sample(model, scheme, model.rng(i))
        # the samplers never emit the forbidden ancilla Pauli
        assert (err.e_Z_l if scheme.is_dual else err.e_X_l).is_zero()
        if not run_cycle(scheme, table, err).success:
            failures += 1
    return failures


def monte_carlo(
    scheme: Scheme,
    table: SyndromeTable,
    model: NoiseModel,
    trials: int,
    workers: int = 1,
    chunk: int = 4096,
) -> MonteCarloReport:
    """Estimate the failure rate of the full decode cycle.

    The failure count is a sum over independent trials, so any ``workers``
    value yields the same report.
    """
    check_table_matches(scheme, table)
    if trials < 0:
        raise ValueError("trials must be non-negative")
    bounds = [(s, min(s + chunk, trials)) for s in range(0, trials, chunk)]
    if workers <= 1 or len(bounds) <= 1:
        failures = sum(_count_failures(scheme, table, model, a, b) for a, b in bounds)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            failures = sum(pool.map(lambda ab: _count_failures(scheme, table, model, *ab), bounds))
    return MonteCarloReport(scheme.code.name or "code", scheme.variant, model, trials, failures)
