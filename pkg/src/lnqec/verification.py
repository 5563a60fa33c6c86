"""Self-checks of the scheme's algebraic claims, for the CLI and the test suite.

Each suite returns a :class:`SuiteResult`; a failing suite carries a
counterexample that prints error vectors in the user's original code
columns together with both sides of the identity that broke.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .gf4 import F4Vector
from .scheme import (
    PauliErrorVector,
    Scheme,
    SyndromeCollisionError,
    SyndromeTable,
    build_syndrome_table,
    combined_error,
    decode,
    iter_errors,
    max_radius,
    propagate_closed_form,
    respects_assumption,
    run_cycle,
    trace_syndrome,
    trace_syndrome_decomposed,
)
from .statevector import (
    DEFAULT_QUBIT_CAP,
    PRODUCT_TOL,
    apply_pauli,
    propagation_fidelity,
    random_state,
    run_end_to_end,
)


@dataclass
class SuiteResult:
    name: str
    statement: str
    passed: bool
    checked: int
    counterexample: str | None = None
    skipped: str | None = None
    extra: dict = field(default_factory=dict)

    def line(self) -> str:
        if self.skipped:
            return f"SKIP {self.name}: {self.skipped}"
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name} ({self.checked} cases): {self.statement}"
        if self.counterexample:
            text += f"\n    counterexample: {self.counterexample}"
        return text

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "statement": self.statement,
            "passed": self.passed,
            "checked": self.checked,
            "counterexample": self.counterexample,
            "skipped": self.skipped,
            **self.extra,
        }


def describe_error(scheme: Scheme, err: PauliErrorVector) -> str:
    e = scheme.code.to_original(combined_error(err))
    return f"pauli={err} e_X={err.e_X} e_Z={err.e_Z} combined e (original columns)=({e})"


def random_error(scheme: Scheme, rng: np.random.Generator) -> PauliErrorVector:
    n = scheme.n_phys
    return PauliErrorVector.from_bits(scheme, int(rng.integers(1 << n)), int(rng.integers(1 << n)))


def random_f4_vector(n: int, rng: np.random.Generator) -> F4Vector:
    return F4Vector(int(rng.integers(1 << n)), int(rng.integers(1 << n)), n)


def syndrome_paths_suite(scheme: Scheme, rng: np.random.Generator, random_trials: int = 10_000, exhaustive_max_n: int = 4) -> SuiteResult:
    """Trace syndrome: direct GF(4) evaluation equals the binary decomposition."""
    n = scheme.n
    if n <= exhaustive_max_n:
        vectors = (F4Vector(a, b, n) for a in range(1 << n) for b in range(1 << n))
    else:
        vectors = (random_f4_vector(n, rng) for _ in range(random_trials))
    checked = 0
    for e in vectors:
        checked += 1
        direct, split = trace_syndrome(scheme, e), trace_syndrome_decomposed(scheme, e)
        if direct != split:
            return SuiteResult(
                "syndrome_paths", "Tr(H_Q e) = H_Z Tr(e) + H_X Tr(w e)", False, checked,
                f"e (original columns)=({scheme.code.to_original(e)}) direct={direct} decomposed={split}",
            )
    return SuiteResult("syndrome_paths", "Tr(H_Q e) = H_Z Tr(e) + H_X Tr(w e)", True, checked)


def distinct_syndromes_suite(scheme: Scheme, t: int | None = None) -> SuiteResult:
    """Distinct correctable errors have distinct syndromes (table build succeeds)."""
    t = max_radius(scheme.code) if t is None else t
    statement = f"errors of weight <= {t} have distinct trace syndromes"
    try:
        table = build_syndrome_table(scheme, t)
    except SyndromeCollisionError as exc:
        return SuiteResult("distinct_syndromes", statement, False, 0, str(exc))
    return SuiteResult("distinct_syndromes", statement, True, len(table), extra={"entries": len(table)})


def correction_suite(scheme: Scheme, table: SyndromeTable) -> SuiteResult:
    """Algebraic decode cycle corrects every permitted error of weight <= t."""
    statement = f"every permitted error of weight <= {table.t} is corrected"
    checked = 0
    for err in iter_errors(scheme, table.t):
        checked += 1
        e = combined_error(err.swap_ancilla_paulis() if scheme.is_dual else err)
        if e.weight() > err.weight():
            return SuiteResult("correction", statement, False, checked,
                               f"|supp(e)|={e.weight()} > weight {err.weight()}: {describe_error(scheme, err)}")
        res = run_cycle(scheme, table, err)
        if not res.success:
            return SuiteResult(
                "correction", statement, False, checked,
                f"{describe_error(scheme, err)} outcome={res.outcome} residual X={res.residual[0]} Z={res.residual[1]}",
            )
    return SuiteResult("correction", statement, True, checked)


def _sv_skip(scheme: Scheme, name: str, statement: str, cap: int) -> SuiteResult | None:
    if scheme.n_phys > cap:
        return SuiteResult(name, statement, True, 0, skipped=f"{scheme.n_phys} qubits exceeds cap {cap}")
    return None


def propagation_suite(
    scheme: Scheme,
    rng: np.random.Generator,
    random_errors: int = 1000,
    tol: float = PRODUCT_TOL,
    cap: int = DEFAULT_QUBIT_CAP,
) -> SuiteResult:
    """Closed-form propagation agrees with gate-level simulation.

    Covers every single-qubit X, Y, Z (ancillas included, so the ancilla
    assumption is deliberately violated too) and ``random_errors`` uniformly
    random Pauli errors, each against a fresh random data state.
    """
    name, statement = "propagation", "closed-form post-decoder state matches statevector simulation"
    if (skip := _sv_skip(scheme, name, statement, cap)) is not None:
        return skip
    singles = [PauliErrorVector.single(scheme, q, p) for q in range(scheme.n_phys) for p in "XYZ"]
    randoms = (random_error(scheme, rng) for _ in range(random_errors))
    worst = 1.0
    checked = 0
    for err in itertools.chain(singles, randoms):
        checked += 1
        fid = propagation_fidelity(scheme, err, random_state(scheme.k, rng), cap)
        worst = min(worst, fid)
        if fid < 1 - tol:
            return SuiteResult(name, statement, False, checked,
                               f"{describe_error(scheme, err)} fidelity={fid!r}", extra={"worst_fidelity": worst})
    return SuiteResult(name, statement, True, checked, extra={"worst_fidelity": worst})


def end_to_end_suite(
    scheme: Scheme,
    table: SyndromeTable,
    rng: np.random.Generator,
    states: int = 10,
    tol: float = PRODUCT_TOL,
    cap: int = DEFAULT_QUBIT_CAP,
) -> SuiteResult:
    """Simulated encode/error/decode/correct restores every logical state."""
    name, statement = "end_to_end", f"fidelity >= 1-{tol:g} for every permitted error of weight <= {table.t}"
    if (skip := _sv_skip(scheme, name, statement, cap)) is not None:
        return skip
    worst = 1.0
    checked = 0
    for err in iter_errors(scheme, table.t):
        for _ in range(states):
            checked += 1
            fid = run_end_to_end(scheme, table, err, random_state(scheme.k, rng)).fidelity
            worst = min(worst, fid)
            if fid < 1 - tol:
                return SuiteResult(name, statement, False, checked,
                                   f"{describe_error(scheme, err)} fidelity={fid!r}", extra={"worst_fidelity": worst})
    return SuiteResult(name, statement, True, checked, extra={"worst_fidelity": worst})


def random_violating_error(scheme: Scheme, rng: np.random.Generator) -> PauliErrorVector:
    """Random error with at least one forbidden Pauli on an ancilla."""
    while True:
        err = random_error(scheme, rng)
        if not respects_assumption(scheme, err):
            return err


def negative_control_suite(
    scheme: Scheme,
    table: SyndromeTable,
    rng: np.random.Generator,
    cases: int = 100,
    tol: float = PRODUCT_TOL,
    cap: int = DEFAULT_QUBIT_CAP,
) -> SuiteResult:
    """Forbidden ancilla errors leave exactly the residual the closed form predicts.

    The prediction is ``X^(e_X_l H_Xp + e_X_r + c_X) Z^(e_X_l H_Zp + e_Z_r + c_Z)``
    where ``(c_X, c_Z)`` is whatever correction the table returns for the
    predicted outcome (nothing on a table miss).
    """
    name, statement = "negative_control", "forbidden ancilla errors give the predicted miscorrection"
    if (skip := _sv_skip(scheme, name, statement, cap)) is not None:
        return skip
    miscorrected = 0
    for i in range(cases):
        err = random_violating_error(scheme, rng)
        psi = random_state(scheme.k, rng)
        prop = propagate_closed_form(scheme, err)
        corr = decode(table, prop.anc_outcome)
        rx, rz = prop.data_X, prop.data_Z
        if corr is not None:
            rx, rz = rx + corr.data_X, rz + corr.data_Z
        miscorrected += not (rx.is_zero() and rz.is_zero())
        expected = apply_pauli(psi, rx, rz)
        sim = run_end_to_end(scheme, table, err, psi)
        fid = expected.overlap(sim.data_out)
        if sim.outcome != prop.anc_outcome or fid < 1 - tol:
            return SuiteResult(
                name, statement, False, i + 1,
                f"{describe_error(scheme, err)} predicted outcome={prop.anc_outcome} "
                f"simulated outcome={sim.outcome} residual fidelity={fid!r}",
            )
    return SuiteResult(name, statement, True, cases, extra={"miscorrected": miscorrected})


def run_all(
    scheme: Scheme,
    seed: int = 0,
    random_errors: int = 1000,
    states: int = 10,
    negative_cases: int = 100,
) -> list[SuiteResult]:
    rng = np.random.default_rng(seed)
    results = [syndrome_paths_suite(scheme, rng), distinct_syndromes_suite(scheme)]
    if not results[-1].passed:
        return results
    table = build_syndrome_table(scheme)
    results.append(correction_suite(scheme, table))
    results.append(propagation_suite(scheme, rng, random_errors))
    results.append(end_to_end_suite(scheme, table, rng, states))
    results.append(negative_control_suite(scheme, table, rng, negative_cases))
    return results
