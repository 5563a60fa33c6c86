"""Quantum error correction assisted by phase-error-only ancilla qubits.

A classical ``[n, k, d]`` code with standard-form parity-check matrix
``H = [I | A]`` yields an encoder ``Q`` acting on ``2(n-k)`` ancillas
(prepared in ``|0>_X``) and ``k`` data qubits::

    Q = sum_mu |mu><mu| (x) X^(mu H_Xp) Z^(mu H_Zp)

where ``H_Zp``/``H_Xp`` are the right-hand ``k`` columns of the binary
matrices ``H_Z``/``H_X`` in ``H_Q = [H; wH] = H_Z + w H_X``.  After the
channel and ``Q^dagger``, measuring the ancillas in the X basis yields the
trace syndrome of a combined quaternary error, which a lookup table maps to
the Pauli correction for the data qubits.

Qubit layout: ancillas are qubits ``0 .. 2(n-k)-1``, data qubits follow.
"""

from __future__ import annotations

import itertools
import math
import struct
import zlib
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, replace
from types import MappingProxyType

from .codes import ClassicalCode, DistanceUnknownError, ensure_distance
from .gf4 import (
    W,
    F2Matrix,
    F2Vector,
    F4Matrix,
    F4Vector,
    mat_vec_mul,
    reconstruct_from_traces,
    trace,
    trace_omega,
)

QUATERNARY = "quaternary"
BINARY = "binary"
DUAL = "dual"

DEFAULT_TABLE_CAP = 1 << 24


class SchemeError(ValueError):
    """A scheme cannot be built or used with the given inputs."""


class SyndromeCollisionError(RuntimeError):
    """Two correctable errors share a syndrome.

    This cannot happen for a correct implementation: distinct errors of
    weight at most ``(d-1)//2`` always have distinct trace syndromes.
    """


@dataclass(frozen=True)
class Scheme:
    code: ClassicalCode
    variant: str
    base_variant: str
    H_Q: F4Matrix
    H_Z: F2Matrix
    H_X: F2Matrix
    H_Zp: F2Matrix
    H_Xp: F2Matrix

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def r(self) -> int:
        return self.code.n - self.code.k

    @property
    def n_anc(self) -> int:
        return 2 * self.r

    @property
    def n_phys(self) -> int:
        return 2 * self.code.n - self.code.k

    @property
    def is_dual(self) -> bool:
        return self.variant == DUAL

    @property
    def ancilla_basis(self) -> str:
        """Basis the ancillas are prepared and measured in."""
        return "Z" if self.is_dual else "X"

    @property
    def ancilla_error(self) -> str:
        """The only Pauli the ancillas are assumed to suffer."""
        return "X" if self.is_dual else "Z"

    def fingerprint(self) -> int:
        """CRC32 over the primed blocks, used to tie serialized tables to a scheme."""
        payload = repr((self.n, self.k, self.H_Zp.rows, self.H_Xp.rows)).encode()
        return zlib.crc32(payload)


def _assemble(code: ClassicalCode, variant: str) -> Scheme:
    r, n = code.r, code.n
    h_q = code.H.vstack(code.H.scale(W))
    h_z, h_x = h_q.ones_part(), h_q.omega_part()
    ident, zero = F2Matrix.identity(r), F2Matrix.zeros(r, r)
    if h_z.columns(0, r) != ident.vstack(zero) or h_x.columns(0, r) != zero.vstack(ident):
        raise SchemeError("parity-check matrix is not in standard form [I | A]")
    return Scheme(
        code=code,
        variant=variant,
        base_variant=variant,
        H_Q=h_q,
        H_Z=h_z,
        H_X=h_x,
        H_Zp=h_z.columns(r, n),
        H_Xp=h_x.columns(r, n),
    )


def build_quaternary(code: ClassicalCode) -> Scheme:
    if code.q != 4:
        raise SchemeError(f"quaternary scheme needs a code over GF(4), got q={code.q}")
    return _assemble(code, QUATERNARY)


def build_binary(code: ClassicalCode) -> Scheme:
    """Binary-code scheme with ``H_Zp = [A; 0]`` and ``H_Xp = [0; A]``.

    These are exactly the blocks the quaternary construction produces for a
    binary ``H``, so the same trace-syndrome machinery applies; only the set
    of decodable errors differs (see :func:`build_syndrome_table`).
    """
    if code.q != 2:
        raise SchemeError(f"binary scheme needs a code over GF(2), got q={code.q}")
    scheme = _assemble(code, BINARY)
    a = code.A.to_binary()
    zero = F2Matrix.zeros(code.r, code.k)
    assert scheme.H_Zp == a.vstack(zero) and scheme.H_Xp == zero.vstack(a)
    return scheme


def build_scheme(code: ClassicalCode) -> Scheme:
    return build_quaternary(code) if code.q == 4 else build_binary(code)


def dualize(scheme: Scheme) -> Scheme:
    """Toggle between the phase-error-only and bit-error-only ancilla versions.

    The dual prepares and measures ancillas in the computational basis,
    i.e. ``Q`` conjugated by Hadamards on every ancilla.  Matrices are
    unchanged; applying this twice returns an equal scheme.
    """
    if scheme.is_dual:
        return replace(scheme, variant=scheme.base_variant)
    return replace(scheme, variant=DUAL)


@dataclass(frozen=True)
class PauliErrorVector:
    """Pauli error ``X^e_X Z^e_Z`` on the ``2n - k`` physical qubits."""

    e_X: F2Vector
    e_Z: F2Vector
    n_anc: int

    def __post_init__(self) -> None:
        if self.e_X.length != self.e_Z.length:
            raise ValueError("e_X and e_Z lengths differ")
        if self.n_anc % 2 or not 0 <= self.n_anc <= self.e_X.length:
            raise ValueError(f"bad ancilla count {self.n_anc}")

    @classmethod
    def zero(cls, scheme: Scheme) -> PauliErrorVector:
        z = F2Vector.zeros(scheme.n_phys)
        return cls(z, z, scheme.n_anc)

    @classmethod
    def from_bits(cls, scheme: Scheme, x_bits: int, z_bits: int) -> PauliErrorVector:
        return cls(F2Vector(x_bits, scheme.n_phys), F2Vector(z_bits, scheme.n_phys), scheme.n_anc)

    @classmethod
    def from_string(cls, scheme: Scheme, paulis: str) -> PauliErrorVector:
        """Parse a Pauli string such as ``"IZIIXY"`` (qubit 0 first)."""
        if len(paulis) != scheme.n_phys:
            raise ValueError(f"expected {scheme.n_phys} Paulis, got {len(paulis)}")
        x = z = 0
        for i, p in enumerate(paulis.upper()):
            if p not in "IXYZ":
                raise ValueError(f"bad Pauli {p!r}")
            x |= (p in "XY") << i
            z |= (p in "ZY") << i
        return cls.from_bits(scheme, x, z)

    @classmethod
    def single(cls, scheme: Scheme, qubit: int, pauli: str) -> PauliErrorVector:
        s = ["I"] * scheme.n_phys
        s[qubit] = pauli
        return cls.from_string(scheme, "".join(s))

    @property
    def n_phys(self) -> int:
        return self.e_X.length

    @property
    def k(self) -> int:
        return self.n_phys - self.n_anc

    @property
    def r(self) -> int:
        return self.n_anc // 2

    @property
    def e_X_l(self) -> F2Vector:
        return self.e_X.slice(0, self.n_anc)

    @property
    def e_X_r(self) -> F2Vector:
        return self.e_X.slice(self.n_anc, self.n_phys)

    @property
    def e_Z_l(self) -> F2Vector:
        return self.e_Z.slice(0, self.n_anc)

    @property
    def e_Z_l0(self) -> F2Vector:
        return self.e_Z.slice(0, self.r)

    @property
    def e_Z_l1(self) -> F2Vector:
        return self.e_Z.slice(self.r, self.n_anc)

    @property
    def e_Z_r(self) -> F2Vector:
        return self.e_Z.slice(self.n_anc, self.n_phys)

    def support(self) -> list[int]:
        m = self.e_X.bits | self.e_Z.bits
        return [i for i in range(self.n_phys) if (m >> i) & 1]

    def weight(self) -> int:
        return (self.e_X.bits | self.e_Z.bits).bit_count()

    def swap_ancilla_paulis(self) -> PauliErrorVector:
        """Exchange X and Z on the ancillas, i.e. conjugate them by Hadamard."""
        m = (1 << self.n_anc) - 1
        x, z = self.e_X.bits, self.e_Z.bits
        n = self.n_phys
        return PauliErrorVector(
            F2Vector((x & ~m) | (z & m), n), F2Vector((z & ~m) | (x & m), n), self.n_anc
        )

    def __str__(self) -> str:
        return "".join("IXZY"[x | (z << 1)] for x, z in zip(self.e_X, self.e_Z))


def respects_assumption(scheme: Scheme, err: PauliErrorVector) -> bool:
    """True iff the ancillas only suffer the Pauli type the scheme tolerates."""
    forbidden = err.e_Z_l if scheme.is_dual else err.e_X_l
    return forbidden.is_zero()


def _check_quaternary_length(scheme: Scheme, e: F4Vector) -> None:
    if e.length != scheme.n:
        raise ValueError(f"error vector has length {e.length}, code length is {scheme.n}")


def trace_syndrome(scheme: Scheme, e: F4Vector) -> F2Vector:
    """Trace syndrome ``Tr(H_Q e^T)`` evaluated directly over GF(4)."""
    _check_quaternary_length(scheme, e)
    return trace(mat_vec_mul(scheme.H_Q, e))


def trace_syndrome_decomposed(scheme: Scheme, e: F4Vector) -> F2Vector:
    """Same syndrome via the binary route ``H_Z Tr(e) + H_X Tr(w e)``."""
    _check_quaternary_length(scheme, e)
    return mat_vec_mul(scheme.H_Z, trace(e)) + mat_vec_mul(scheme.H_X, trace_omega(e))


def combined_error(err: PauliErrorVector) -> F4Vector:
    """``e = w^2 (e_Z_l0, e_X_r) + (e_Z_l1, e_Z_r)`` over the ``n`` code coordinates."""
    return reconstruct_from_traces(err.e_Z_l0.concat(err.e_X_r), err.e_Z_l1.concat(err.e_Z_r))


@dataclass(frozen=True)
class Propagation:
    """Ancilla X-basis outcome and residual data Pauli ``X^data_X Z^data_Z``."""

    anc_outcome: F2Vector
    data_X: F2Vector
    data_Z: F2Vector


def propagate_closed_form(scheme: Scheme, err: PauliErrorVector) -> Propagation:
    """Evaluate ``Q^dagger X^e_X Z^e_Z Q |0>_X |psi>`` without simulating it.

    The ancillas end in ``|Tr(H_Q e^T) + H_Zp H_Xp^T e_X_l^T>_X`` and the
    data carry ``X^(e_X_l H_Xp + e_X_r) Z^(e_X_l H_Zp + e_Z_r)``, up to a
    global phase.  For the dual scheme the ancilla Paulis are first mapped
    through the Hadamard frame change.
    """
    if err.n_phys != scheme.n_phys or err.n_anc != scheme.n_anc:
        raise ValueError("error vector does not match scheme layout")
    if scheme.is_dual:
        err = err.swap_ancilla_paulis()
    e_xl = err.e_X_l
    x_shift = scheme.H_Xp.left_mul(e_xl)
    z_shift = scheme.H_Zp.left_mul(e_xl)
    outcome = trace_syndrome(scheme, combined_error(err)) + mat_vec_mul(scheme.H_Zp, x_shift)
    return Propagation(outcome, x_shift + err.e_X_r, z_shift + err.e_Z_r)


@dataclass(frozen=True)
class Correction:
    data_X: F2Vector
    data_Z: F2Vector
    error: F4Vector


@dataclass(frozen=True)
class SyndromeTable:
    """Injective map from ancilla outcome (packed int) to combined error."""

    variant: str
    n: int
    k: int
    t: int
    entries: Mapping[int, F4Vector]
    fingerprint: int = 0

    def __len__(self) -> int:
        return len(self.entries)

    def lookup(self, outcome: F2Vector) -> F4Vector | None:
        return self.entries.get(outcome.bits)

    def to_bytes(self) -> bytes:
        return _serialize_table(self)

    @classmethod
    def from_bytes(cls, data: bytes) -> SyndromeTable:
        return _deserialize_table(data)


def _binary_ball(n: int, t: int) -> Iterator[int]:
    for w in range(t + 1):
        for pos in itertools.combinations(range(n), w):
            yield sum(1 << p for p in pos)


def _quaternary_ball(n: int, t: int) -> Iterator[F4Vector]:
    for w in range(t + 1):
        for pos in itertools.combinations(range(n), w):
            for vals in itertools.product((1, 2, 3), repeat=w):
                ones = omegas = 0
                for p, a in zip(pos, vals):
                    ones |= (a & 1) << p
                    omegas |= (a >> 1) << p
                yield F4Vector(ones, omegas, n)


def table_size(scheme: Scheme, t: int) -> int:
    n = scheme.n
    if scheme.base_variant == QUATERNARY:
        return sum(math.comb(n, i) * 3**i for i in range(t + 1))
    return sum(math.comb(n, i) for i in range(t + 1)) ** 2


def max_radius(code: ClassicalCode) -> int:
    if code.d is None:
        raise DistanceUnknownError(f"{code}: minimum distance unknown")
    return (code.d - 1) // 2


def build_syndrome_table(scheme: Scheme, t: int | None = None, cap: int = DEFAULT_TABLE_CAP) -> SyndromeTable:
    """Enumerate every correctable error and key it by its syndrome.

    Quaternary codes: every ``e in GF(4)^n`` with ``|supp(e)| <= t``.
    Binary codes: every pair ``(e0, e1)`` of binary vectors each of weight
    at most ``t``, stored as ``e = w^2 e0 + e1`` so that its syndrome is
    ``(H e0^T, H e1^T)``.  Any key collision raises
    :class:`SyndromeCollisionError`.
    """
    code = scheme.code
    if code.d is None:
        code = ensure_distance(code)
    radius = max_radius(code)
    if t is None:
        t = radius
    if not 0 <= t <= radius:
        raise SchemeError(f"radius t={t} exceeds floor((d-1)/2)={radius} for {code.label}")
    size = table_size(scheme, t)
    if size > cap:
        raise SchemeError(f"table would hold {size} entries, above cap {cap}")

    n = scheme.n
    if scheme.base_variant == QUATERNARY:
        errors: Iterator[F4Vector] = _quaternary_ball(n, t)
    else:
        errors = (
            reconstruct_from_traces(F2Vector(e0, n), F2Vector(e1, n))
            for e0 in _binary_ball(n, t)
            for e1 in _binary_ball(n, t)
        )
    entries: dict[int, F4Vector] = {}
    for e in errors:
        key = trace_syndrome(scheme, e).bits
        prev = entries.setdefault(key, e)
        if prev is not e:
            raise SyndromeCollisionError(
                f"errors {code.to_original(prev)} and {code.to_original(e)} share syndrome "
                f"{F2Vector(key, scheme.n_anc)}"
            )
    return SyndromeTable(
        variant=scheme.variant,
        n=n,
        k=scheme.k,
        t=t,
        entries=MappingProxyType(entries),
        fingerprint=scheme.fingerprint(),
    )


def decode(table: SyndromeTable, anc_outcome: F2Vector) -> Correction | None:
    """Map an ancilla outcome to the data correction, or ``None`` if unknown."""
    e = table.lookup(anc_outcome)
    if e is None:
        return None
    r = table.n - table.k
    return Correction(trace(e).slice(r, table.n), trace_omega(e).slice(r, table.n), e)


@dataclass(frozen=True)
class CycleResult:
    success: bool
    decoded: bool
    residual: tuple[F2Vector, F2Vector]
    within_assumption: bool
    outcome: F2Vector


def run_cycle(scheme: Scheme, table: SyndromeTable, err: PauliErrorVector) -> CycleResult:
    """Encode, inject ``err``, decode and correct; report the data residual.

    Success requires a table hit and an identity residual.  Errors that put
    the forbidden Pauli type on an ancilla are processed anyway and flagged
    through ``within_assumption``.
    """
    prop = propagate_closed_form(scheme, err)
    corr = decode(table, prop.anc_outcome)
    ok_assumption = respects_assumption(scheme, err)
    if corr is None:
        return CycleResult(False, False, (prop.data_X, prop.data_Z), ok_assumption, prop.anc_outcome)
    rx, rz = prop.data_X + corr.data_X, prop.data_Z + corr.data_Z
    return CycleResult(rx.is_zero() and rz.is_zero(), True, (rx, rz), ok_assumption, prop.anc_outcome)


def iter_errors(scheme: Scheme, max_weight: int, respect: bool = True) -> Iterator[PauliErrorVector]:
    """Every Pauli error of weight at most ``max_weight``, weight-ordered.

    With ``respect`` the ancillas only carry the Pauli type the scheme
    tolerates (Z, or X for the dual); data qubits carry X, Y or Z.
    """
    anc_choices = ((scheme.ancilla_error,) if respect else ("X", "Y", "Z"))
    n_anc = scheme.n_anc
    for w in range(max_weight + 1):
        for pos in itertools.combinations(range(scheme.n_phys), w):
            options = [anc_choices if p < n_anc else ("X", "Y", "Z") for p in pos]
            for paulis in itertools.product(*options):
                x = z = 0
                for p, s in zip(pos, paulis):
                    x |= (s in "XY") << p
                    z |= (s in "ZY") << p
                yield PauliErrorVector.from_bits(scheme, x, z)


@dataclass(frozen=True)
class EAParameters:
    """Entanglement-assisted code ``[[n_e, k_e, d_e; c]]``; ``d_e`` is a lower bound."""

    n_e: int
    k_e: int
    d_e: int
    c: int
    d_source: str | None = None

    def __str__(self) -> str:
        return f"[[{self.n_e},{self.k_e},≥{self.d_e};{self.c}]]"


def ea_parameters(code: ClassicalCode) -> EAParameters:
    if code.d is None:
        raise DistanceUnknownError(f"{code}: minimum distance unknown")
    return EAParameters(code.k, code.k, code.d, 2 * code.r, code.d_source)


def singleton_slack(p: EAParameters) -> int:
    """``(n_e - 2 d_e + 2) - (k_e - c)``; zero means the bound is met with equality."""
    return (p.n_e - 2 * p.d_e + 2) - (p.k_e - p.c)


def singleton_applicable(p: EAParameters) -> bool:
    """Whether the quantum Singleton bound's hypothesis ``n_e >= 2(d_e - 1)`` holds."""
    return p.n_e >= 2 * (p.d_e - 1)


# Table file layout, all integers little-endian:
#   magic b"LNQT", u8 version, u8 variant, u32 n, u32 k, u32 t, u32 fingerprint, u32 count
#   then `count` entries sorted by key: key bits, e ones-mask, e w-mask,
#   each packed into ceil(bits/8) bytes.
_MAGIC = b"LNQT"
_VERSION = 1
_VARIANT_CODES = {QUATERNARY: 0, BINARY: 1, DUAL: 2}
_HEADER = struct.Struct("<4sBBIIIII")


def _nbytes(bits: int) -> int:
    return (bits + 7) // 8


def _serialize_table(table: SyndromeTable) -> bytes:
    r2 = 2 * (table.n - table.k)
    kb, nb = _nbytes(r2), _nbytes(table.n)
    out = [
        _HEADER.pack(
            _MAGIC, _VERSION, _VARIANT_CODES[table.variant], table.n, table.k, table.t,
            table.fingerprint, len(table.entries),
        )
    ]
    for key in sorted(table.entries):
        e = table.entries[key]
        out.append(key.to_bytes(kb, "little") + e.ones.to_bytes(nb, "little") + e.omegas.to_bytes(nb, "little"))
    return b"".join(out)


def _deserialize_table(data: bytes) -> SyndromeTable:
    if len(data) < _HEADER.size:
        raise ValueError("truncated syndrome table header")
    magic, version, vcode, n, k, t, fp, count = _HEADER.unpack_from(data)
    if magic != _MAGIC:
        raise ValueError("not a syndrome table file")
    if version != _VERSION:
        raise ValueError(f"unsupported table version {version}")
    variants = {v: name for name, v in _VARIANT_CODES.items()}
    if vcode not in variants:
        raise ValueError(f"unknown variant code {vcode}")
    kb, nb = _nbytes(2 * (n - k)), _nbytes(n)
    step = kb + 2 * nb
    body = data[_HEADER.size:]
    if len(body) != count * step:
        raise ValueError("syndrome table body length does not match entry count")
    entries: dict[int, F4Vector] = {}
    for i in range(count):
        chunk = body[i * step:(i + 1) * step]
        key = int.from_bytes(chunk[:kb], "little")
        ones = int.from_bytes(chunk[kb:kb + nb], "little")
        omegas = int.from_bytes(chunk[kb + nb:], "little")
        if key in entries:
            raise ValueError(f"duplicate key {key} in table file")
        entries[key] = F4Vector(ones, omegas, n)
    return SyndromeTable(variants[vcode], n, k, t, MappingProxyType(entries), fp)


def check_table_matches(scheme: Scheme, table: SyndromeTable) -> None:
    if (table.n, table.k) != (scheme.n, scheme.k) or table.fingerprint != scheme.fingerprint():
        raise SchemeError("syndrome table was built for a different scheme")
