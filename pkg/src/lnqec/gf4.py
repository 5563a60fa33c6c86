"""Exact arithmetic over GF(2) and GF(4) with bit-packed vectors and matrices.

A GF(4) element is the integer ``b1 + 2*bw`` standing for ``b1*1 + bw*w``,
so ``0, 1, 2, 3`` encode ``0, 1, w, w^2 = w + 1``.  Vectors pack entry ``i``
into bit ``i`` of Python ints: an :class:`F2Vector` holds one mask, an
:class:`F4Vector` holds a mask of 1-coefficients and a mask of
w-coefficients.  Under this encoding the trace is simply the w-mask.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

ZERO, ONE, W, W2 = 0, 1, 2, 3

SYMBOLS = {"0": ZERO, "1": ONE, "w": W, "W": W2}
_NAMES = ("0", "1", "w", "W")


def _mul_slow(a: int, b: int) -> int:
    a1, aw = a & 1, a >> 1
    b1, bw = b & 1, b >> 1
    # (a1 + aw w)(b1 + bw w) with w^2 = w + 1
    ww = aw & bw
    return (a1 & b1 ^ ww) | ((a1 & bw ^ aw & b1 ^ ww) << 1)


ADD_TABLE = tuple(tuple(a ^ b for b in range(4)) for a in range(4))
MUL_TABLE = tuple(tuple(_mul_slow(a, b) for b in range(4)) for a in range(4))
INV_TABLE = (None, ONE, W2, W)


class DimensionError(ValueError):
    """Operand shapes do not fit together."""


class RankDeficientError(ValueError):
    """A parity-check matrix does not have full row rank."""

    def __init__(self, row: int) -> None:
        super().__init__(f"row {row} is linearly dependent on the rows before it")
        self.row = row


def gf4_add(a: int, b: int) -> int:
    return a ^ b


def gf4_mul(a: int, b: int) -> int:
    return MUL_TABLE[a][b]


def gf4_inv(a: int) -> int:
    if a == ZERO:
        raise ZeroDivisionError("0 has no inverse in GF(4)")
    return INV_TABLE[a]


def element_trace(a: int) -> int:
    """Tr(a) = a + a^2, which is the w-coefficient of ``a``."""
    return a >> 1


def parse_element(token: str | int) -> int:
    if isinstance(token, int):
        if 0 <= token <= 3:
            return token
        raise ValueError(f"not a GF(4) element code: {token}")
    try:
        return SYMBOLS[token]
    except KeyError:
        raise ValueError(f"unknown GF(4) symbol {token!r}; expected one of 0 1 w W") from None


def element_name(a: int) -> str:
    return _NAMES[a]


def _parity(x: int) -> int:
    return x.bit_count() & 1


def _mask(n: int) -> int:
    return (1 << n) - 1


def _scale_masks(ones: int, omegas: int, s: int) -> tuple[int, int]:
    """Multiply every entry of a packed GF(4) vector by the scalar ``s``."""
    if s == ZERO:
        return 0, 0
    if s == ONE:
        return ones, omegas
    if s == W:
        # w*(x + y w) = y + (x + y) w
        return omegas, ones ^ omegas
    # w^2*(x + y w) = (x + y) + x w
    return ones ^ omegas, ones


@dataclass(frozen=True)
class F2Vector:
    bits: int
    length: int

    def __post_init__(self) -> None:
        if self.bits >> self.length:
            raise ValueError("bits set beyond vector length")

    @classmethod
    def from_list(cls, entries: Iterable[int]) -> F2Vector:
        bits = 0
        n = 0
        for i, x in enumerate(entries):
            if x not in (0, 1):
                raise ValueError(f"entry {i} is not a bit: {x!r}")
            bits |= x << i
            n = i + 1
        return cls(bits, n)

    @classmethod
    def zeros(cls, n: int) -> F2Vector:
        return cls(0, n)

    @classmethod
    def ones(cls, n: int) -> F2Vector:
        return cls(_mask(n), n)

    @classmethod
    def unit(cls, n: int, i: int) -> F2Vector:
        return cls(1 << i, n)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not -self.length <= i < self.length:
            raise IndexError(i)
        return (self.bits >> (i % self.length)) & 1

    def __iter__(self):
        return (self[i] for i in range(self.length))

    def __add__(self, other: F2Vector) -> F2Vector:
        _check_len(self, other)
        return F2Vector(self.bits ^ other.bits, self.length)

    __xor__ = __add__

    def dot(self, other: F2Vector) -> int:
        _check_len(self, other)
        return _parity(self.bits & other.bits)

    def to_list(self) -> list[int]:
        return list(self)

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> list[int]:
        return [i for i in range(self.length) if (self.bits >> i) & 1]

    def is_zero(self) -> bool:
        return self.bits == 0

    def slice(self, start: int, stop: int) -> F2Vector:
        return F2Vector((self.bits >> start) & _mask(stop - start), stop - start)

    def concat(self, other: F2Vector) -> F2Vector:
        return F2Vector(self.bits | (other.bits << self.length), self.length + other.length)

    def __str__(self) -> str:
        return "".join(str(b) for b in self)


@dataclass(frozen=True)
class F4Vector:
    ones: int
    omegas: int
    length: int

    def __post_init__(self) -> None:
        if (self.ones | self.omegas) >> self.length:
            raise ValueError("entries set beyond vector length")

    @classmethod
    def from_list(cls, entries: Iterable[int | str]) -> F4Vector:
        ones = omegas = 0
        n = 0
        for i, x in enumerate(entries):
            a = parse_element(x)
            ones |= (a & 1) << i
            omegas |= (a >> 1) << i
            n = i + 1
        return cls(ones, omegas, n)

    @classmethod
    def zeros(cls, n: int) -> F4Vector:
        return cls(0, 0, n)

    @classmethod
    def from_binary(cls, v: F2Vector) -> F4Vector:
        return cls(v.bits, 0, v.length)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not -self.length <= i < self.length:
            raise IndexError(i)
        i %= self.length
        return ((self.ones >> i) & 1) | (((self.omegas >> i) & 1) << 1)

    def __iter__(self):
        return (self[i] for i in range(self.length))

    def __add__(self, other: F4Vector) -> F4Vector:
        _check_len(self, other)
        return F4Vector(self.ones ^ other.ones, self.omegas ^ other.omegas, self.length)

    def scale(self, s: int) -> F4Vector:
        return F4Vector(*_scale_masks(self.ones, self.omegas, s), self.length)

    def __rmul__(self, s: int) -> F4Vector:
        return self.scale(s)

    def dot(self, other: F4Vector) -> int:
        """Bilinear (non-Hermitian) product sum_i a_i b_i."""
        _check_len(self, other)
        a1, aw, b1, bw = self.ones, self.omegas, other.ones, other.omegas
        ww = _parity(aw & bw)
        one = _parity(a1 & b1) ^ ww
        omega = _parity(a1 & bw) ^ _parity(aw & b1) ^ ww
        return one | (omega << 1)

    def to_list(self) -> list[int]:
        return list(self)

    def support_mask(self) -> int:
        return self.ones | self.omegas

    def weight(self) -> int:
        return self.support_mask().bit_count()

    def support(self) -> list[int]:
        m = self.support_mask()
        return [i for i in range(self.length) if (m >> i) & 1]

    def is_zero(self) -> bool:
        return self.ones == 0 and self.omegas == 0

    def is_binary(self) -> bool:
        return self.omegas == 0

    def slice(self, start: int, stop: int) -> F4Vector:
        m = _mask(stop - start)
        return F4Vector((self.ones >> start) & m, (self.omegas >> start) & m, stop - start)

    def concat(self, other: F4Vector) -> F4Vector:
        s = self.length
        return F4Vector(self.ones | other.ones << s, self.omegas | other.omegas << s, s + other.length)

    def permute(self, perm: Sequence[int]) -> F4Vector:
        """Return ``u`` with ``u[perm[i]] = self[i]``."""
        ones = omegas = 0
        for i, p in enumerate(perm):
            ones |= ((self.ones >> i) & 1) << p
            omegas |= ((self.omegas >> i) & 1) << p
        return F4Vector(ones, omegas, self.length)

    def __str__(self) -> str:
        return " ".join(_NAMES[a] for a in self)


def _check_len(a, b) -> None:
    if a.length != b.length:
        raise DimensionError(f"length mismatch: {a.length} vs {b.length}")


def trace(a):
    """Trace map, elementwise on vectors: Tr(a) = a + a^2."""
    if isinstance(a, F4Vector):
        return F2Vector(a.omegas, a.length)
    if isinstance(a, F2Vector):
        return F2Vector(0, a.length)
    return element_trace(a)


def trace_omega(a: F4Vector) -> F2Vector:
    """Tr(w a), the second trace coordinate of ``a``."""
    return F2Vector(a.ones ^ a.omegas, a.length)


def reconstruct_from_traces(t0: F2Vector, t1: F2Vector) -> F4Vector:
    """Return ``a = w^2 t0 + t1``; inverse of ``a -> (Tr(a), Tr(w a))``."""
    _check_len(t0, t1)
    # w^2 t0 + t1 = (t0 + t1) + t0 w
    return F4Vector(t0.bits ^ t1.bits, t0.bits, t0.length)


@dataclass(frozen=True)
class F2Matrix:
    """Binary matrix stored as packed row masks."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self) -> None:
        for r in self.rows:
            if r >> self.ncols:
                raise ValueError("row has bits beyond column count")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> F2Matrix:
        vecs = [F2Vector.from_list(r) for r in rows]
        if ncols is None:
            ncols = vecs[0].length if vecs else 0
        if any(v.length != ncols for v in vecs):
            raise DimensionError("ragged rows")
        return cls(tuple(v.bits for v in vecs), ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> F2Matrix:
        return cls((0,) * nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> F2Matrix:
        return cls(tuple(1 << i for i in range(n)), n)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> F2Vector:
        return F2Vector(self.rows[i], self.ncols)

    def to_lists(self) -> list[list[int]]:
        return [self.row(i).to_list() for i in range(self.nrows)]

    def transpose(self) -> F2Matrix:
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            for j in range(self.ncols):
                if (r >> j) & 1:
                    cols[j] |= 1 << i
        return F2Matrix(tuple(cols), self.nrows)

    @property
    def T(self) -> F2Matrix:
        return self.transpose()

    def __add__(self, other: F2Matrix) -> F2Matrix:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.shape} vs {other.shape}")
        return F2Matrix(tuple(a ^ b for a, b in zip(self.rows, other.rows)), self.ncols)

    def __matmul__(self, other: F2Matrix) -> F2Matrix:
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for r in self.rows:
            acc = 0
            j = 0
            while r:
                if r & 1:
                    acc ^= other.rows[j]
                r >>= 1
                j += 1
            out.append(acc)
        return F2Matrix(tuple(out), other.ncols)

    def left_mul(self, v: F2Vector) -> F2Vector:
        """Row vector times matrix, ``v M``."""
        if v.length != self.nrows:
            raise DimensionError(f"vector of length {v.length} cannot left-multiply {self.shape}")
        acc = 0
        bits = v.bits
        i = 0
        while bits:
            if bits & 1:
                acc ^= self.rows[i]
            bits >>= 1
            i += 1
        return F2Vector(acc, self.ncols)

    def hstack(self, other: F2Matrix) -> F2Matrix:
        if self.nrows != other.nrows:
            raise DimensionError("row count mismatch in hstack")
        s = self.ncols
        return F2Matrix(tuple(a | b << s for a, b in zip(self.rows, other.rows)), s + other.ncols)

    def vstack(self, other: F2Matrix) -> F2Matrix:
        if self.ncols != other.ncols:
            raise DimensionError("column count mismatch in vstack")
        return F2Matrix(self.rows + other.rows, self.ncols)

    def columns(self, start: int, stop: int) -> F2Matrix:
        m = _mask(stop - start)
        return F2Matrix(tuple((r >> start) & m for r in self.rows), stop - start)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def rank(self) -> int:
        return _f2_rank(self.rows)

    def __str__(self) -> str:
        return "\n".join(str(self.row(i)) for i in range(self.nrows))


def _f2_rank(rows: Iterable[int]) -> int:
    basis: dict[int, int] = {}  # leading bit -> row
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return len(basis)


@dataclass(frozen=True)
class F4Matrix:
    """GF(4) matrix stored as rows of packed (ones, omegas) masks."""

    rows: tuple[F4Vector, ...]
    ncols: int

    def __post_init__(self) -> None:
        if any(r.length != self.ncols for r in self.rows):
            raise DimensionError("row length differs from column count")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int | str]], ncols: int | None = None) -> F4Matrix:
        vecs = tuple(F4Vector.from_list(r) for r in rows)
        if ncols is None:
            ncols = vecs[0].length if vecs else 0
        if any(v.length != ncols for v in vecs):
            raise DimensionError("ragged rows")
        return cls(vecs, ncols)

    @classmethod
    def from_binary(cls, m: F2Matrix) -> F4Matrix:
        return cls(tuple(F4Vector(r, 0, m.ncols) for r in m.rows), m.ncols)

    @classmethod
    def identity(cls, n: int) -> F4Matrix:
        return cls.from_binary(F2Matrix.identity(n))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> F4Vector:
        return self.rows[i]

    def to_lists(self) -> list[list[int]]:
        return [r.to_list() for r in self.rows]

    def scale(self, s: int) -> F4Matrix:
        return F4Matrix(tuple(r.scale(s) for r in self.rows), self.ncols)

    def vstack(self, other: F4Matrix) -> F4Matrix:
        if self.ncols != other.ncols:
            raise DimensionError("column count mismatch in vstack")
        return F4Matrix(self.rows + other.rows, self.ncols)

    def columns(self, start: int, stop: int) -> F4Matrix:
        return F4Matrix(tuple(r.slice(start, stop) for r in self.rows), stop - start)

    def permute_columns(self, perm: Sequence[int]) -> F4Matrix:
        """Column ``j`` of the result is column ``perm[j]`` of ``self``."""
        out = []
        for r in self.rows:
            out.append(F4Vector.from_list(r[p] for p in perm) if perm else r)
        return F4Matrix(tuple(out), self.ncols)

    def ones_part(self) -> F2Matrix:
        """Binary matrix of 1-coefficients (the ``Z`` part in ``M = Z + wX``)."""
        return F2Matrix(tuple(r.ones for r in self.rows), self.ncols)

    def omega_part(self) -> F2Matrix:
        """Binary matrix of w-coefficients (the ``X`` part in ``M = Z + wX``)."""
        return F2Matrix(tuple(r.omegas for r in self.rows), self.ncols)

    def is_binary(self) -> bool:
        return all(r.is_binary() for r in self.rows)

    def to_binary(self) -> F2Matrix:
        if not self.is_binary():
            raise ValueError("matrix has entries outside GF(2)")
        return self.ones_part()

    def transpose(self) -> F4Matrix:
        return F4Matrix(
            tuple(F4Vector.from_list(self[i, j] for i in range(self.nrows)) for j in range(self.ncols)),
            self.nrows,
        )

    def __matmul__(self, other: F4Matrix) -> F4Matrix:
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.transpose().rows
        return F4Matrix(
            tuple(F4Vector.from_list(r.dot(c) for c in cols) for r in self.rows), other.ncols
        )

    def rank(self) -> int:
        return len(_reduce_rows(self, strict=False)[1])

    def __str__(self) -> str:
        return "\n".join(str(r) for r in self.rows)


def mat_vec_mul(m, v):
    """Matrix times column vector with exact field arithmetic.

    Binary matrices act on binary or quaternary vectors; quaternary matrices
    act on either (binary vectors are lifted).
    """
    if m.ncols != v.length:
        raise DimensionError(f"matrix with {m.ncols} columns cannot act on length-{v.length} vector")
    if isinstance(m, F2Matrix):
        if isinstance(v, F2Vector):
            bits = 0
            for i, r in enumerate(m.rows):
                bits |= _parity(r & v.bits) << i
            return F2Vector(bits, m.nrows)
        ones = omegas = 0
        for i, r in enumerate(m.rows):
            ones |= _parity(r & v.ones) << i
            omegas |= _parity(r & v.omegas) << i
        return F4Vector(ones, omegas, m.nrows)
    if isinstance(v, F2Vector):
        v = F4Vector.from_binary(v)
    ones = omegas = 0
    for i, r in enumerate(m.rows):
        x = r.dot(v)
        ones |= (x & 1) << i
        omegas |= (x >> 1) << i
    return F4Vector(ones, omegas, m.nrows)


def _entry(ones: int, omegas: int, j: int) -> int:
    return ((ones >> j) & 1) | (((omegas >> j) & 1) << 1)


def _reduce_rows(m: F4Matrix, strict: bool) -> tuple[list[tuple[int, int]], list[int]]:
    """Gauss-Jordan elimination processing rows in input order.

    Returns the reduced nonzero rows and their pivot columns (pivot entries
    are 1 and pivot columns are cleared in every other row).  With
    ``strict`` a row that reduces to zero raises :class:`RankDeficientError`.
    """
    rows: list[tuple[int, int]] = []
    pivots: list[int] = []
    for idx, r in enumerate(m.rows):
        ones, omegas = r.ones, r.omegas
        for (po, pw), pc in zip(rows, pivots):
            c = _entry(ones, omegas, pc)
            if c:
                so, sw = _scale_masks(po, pw, c)
                ones ^= so
                omegas ^= sw
        support = ones | omegas
        if not support:
            if strict:
                raise RankDeficientError(idx)
            continue
        pc = (support & -support).bit_length() - 1
        ones, omegas = _scale_masks(ones, omegas, INV_TABLE[_entry(ones, omegas, pc)])
        for i, (po, pw) in enumerate(rows):
            c = _entry(po, pw, pc)
            if c:
                so, sw = _scale_masks(ones, omegas, c)
                rows[i] = (po ^ so, pw ^ sw)
        rows.append((ones, omegas))
        pivots.append(pc)
    return rows, pivots


def standard_form(h):
    """Reduce a full-row-rank matrix to ``[I | A]``.

    Returns ``(h_std, col_perm)`` where column ``j`` of ``h_std`` is column
    ``col_perm[j]`` of the row-reduced input.  Pivot columns come first in
    increasing order, then the remaining columns in their original order, so
    an input already of the form ``[I | A]`` is returned unchanged with the
    identity permutation.  Binary input gives binary output.
    """
    binary = isinstance(h, F2Matrix)
    m = F4Matrix.from_binary(h) if binary else h
    rows, pivots = _reduce_rows(m, strict=True)
    order = sorted(range(len(rows)), key=lambda i: pivots[i])
    pivot_cols = [pivots[i] for i in order]
    pivot_set = set(pivot_cols)
    col_perm = pivot_cols + [j for j in range(m.ncols) if j not in pivot_set]
    reduced = F4Matrix(tuple(F4Vector(*rows[i], m.ncols) for i in order), m.ncols)
    h_std = reduced.permute_columns(col_perm)
    return (h_std.to_binary() if binary else h_std), tuple(col_perm)
