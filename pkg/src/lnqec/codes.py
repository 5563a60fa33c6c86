"""Classical linear codes over GF(2) and GF(4), distance checks and a small catalog."""

from __future__ import annotations

import functools
from collections.abc import Sequence
from dataclasses import dataclass, replace
from pathlib import Path

from .gf4 import F4Matrix, F4Vector, parse_element, standard_form

DEFAULT_ENUMERATION_CAP = 1 << 20


class CodeFormatError(ValueError):
    """A code description could not be parsed."""


class DistanceUnknownError(ValueError):
    """An operation needs the minimum distance but none is known."""


@dataclass(frozen=True)
class ClassicalCode:
    """An ``[n, k, d]_q`` code held by a standard-form parity-check matrix.

    ``H`` is always stored as an :class:`F4Matrix` (binary codes simply have
    no w entries) in the form ``[I | A]``.  Column ``j`` of ``H`` is column
    ``col_perm[j]`` of the matrix the user supplied.
    """

    q: int
    n: int
    k: int
    H: F4Matrix
    col_perm: tuple[int, ...]
    d: int | None = None
    d_source: str | None = None  # "computed" or "declared"
    name: str | None = None

    @property
    def r(self) -> int:
        return self.n - self.k

    @property
    def A(self) -> F4Matrix:
        return self.H.columns(self.r, self.n)

    def generator(self) -> F4Matrix:
        """Generator ``G = [A^T | I]``, which satisfies ``G H^T = 0``."""
        at = self.A.transpose()
        rows = tuple(
            at.rows[i].concat(F4Vector(1 << i, 0, self.k)) for i in range(self.k)
        )
        return F4Matrix(rows, self.n)

    def with_distance(self, d: int, source: str = "declared") -> ClassicalCode:
        if d < 1 or d > self.r + 1:
            raise ValueError(f"distance {d} impossible for an [{self.n},{self.k}] code")
        return replace(self, d=d, d_source=source)

    def to_original(self, v: F4Vector) -> F4Vector:
        """Map a vector in standardized coordinates back to user column order."""
        return v.permute(self.col_perm)

    def from_original(self, v: F4Vector) -> F4Vector:
        inv = [0] * self.n
        for j, p in enumerate(self.col_perm):
            inv[p] = j
        return v.permute(inv)

    @property
    def label(self) -> str:
        d = "?" if self.d is None else str(self.d)
        return f"[{self.n},{self.k},{d}]_{self.q}"

    def __str__(self) -> str:
        return f"{self.name or 'code'} {self.label}"


def from_parity_check(q: int, entries: Sequence[Sequence[int | str]], name: str | None = None) -> ClassicalCode:
    """Build a code from a full-rank parity-check matrix given in user columns."""
    if q not in (2, 4):
        raise CodeFormatError(f"field order must be 2 or 4, got {q}")
    if not entries:
        raise CodeFormatError("parity-check matrix has no rows")
    try:
        rows = [[parse_element(x) for x in row] for row in entries]
    except ValueError as exc:
        raise CodeFormatError(str(exc)) from None
    if q == 2 and any(x > 1 for row in rows for x in row):
        raise CodeFormatError("binary code has entries outside {0, 1}")
    h = F4Matrix.from_lists(rows)
    h_std, perm = standard_form(h)
    n = h.ncols
    return ClassicalCode(q=q, n=n, k=n - h.nrows, H=h_std, col_perm=perm, name=name)


def parse_code_text(text: str, name: str | None = None) -> ClassicalCode:
    """Parse the text format: ``q n k`` then ``n-k`` rows, optionally ``d <int>``.

    Blank lines and ``#`` comments are ignored.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line.split())
    if not lines:
        raise CodeFormatError("empty code description")
    try:
        q, n, k = (int(x) for x in lines[0])
    except ValueError:
        raise CodeFormatError(f"first line must be 'q n k', got {' '.join(lines[0])!r}") from None
    if not 0 <= k < n:
        raise CodeFormatError(f"need 0 <= k < n, got n={n} k={k}")
    body = lines[1:]
    declared = None
    if body and body[-1][0] == "d":
        if len(body[-1]) != 2:
            raise CodeFormatError("distance line must be 'd <int>'")
        try:
            declared = int(body[-1][1])
        except ValueError:
            raise CodeFormatError(f"bad distance {body[-1][1]!r}") from None
        body = body[:-1]
    if len(body) != n - k:
        raise CodeFormatError(f"expected {n - k} matrix rows, found {len(body)}")
    for i, row in enumerate(body):
        if len(row) != n:
            raise CodeFormatError(f"row {i} has {len(row)} entries, expected {n}")
    code = from_parity_check(q, body, name=name)
    if declared is not None:
        code = code.with_distance(declared, "declared")
    return code


def load_code(path: str | Path) -> ClassicalCode:
    path = Path(path)
    return parse_code_text(path.read_text(), name=path.stem)


def format_code_text(code: ClassicalCode) -> str:
    """Serialize in the text format (standardized columns)."""
    from .gf4 import element_name

    lines = [f"{code.q} {code.n} {code.k}"]
    lines += [" ".join(element_name(x) for x in row) for row in code.H.to_lists()]
    if code.d is not None:
        lines.append(f"d {code.d}")
    return "\n".join(lines) + "\n"


def codewords(code: ClassicalCode, cap: int = DEFAULT_ENUMERATION_CAP):
    """Yield every codeword, as packed :class:`F4Vector`, in a fixed order."""
    if code.q ** code.k > cap:
        raise ValueError(
            f"{code.q}^{code.k} codewords exceeds enumeration cap {cap}; declare d explicitly"
        )
    scalars = (0, 1) if code.q == 2 else (0, 1, 2, 3)
    words = [F4Vector.zeros(code.n)]
    for g in code.generator().rows:
        multiples = [g.scale(s) for s in scalars]
        words = [w + m for w in words for m in multiples]
    yield from words


def min_distance(code: ClassicalCode, cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Exact minimum distance by exhaustive enumeration of all codewords."""
    if code.k == 0:
        raise ValueError("the zero code has no nonzero codewords")
    return min(w.weight() for w in codewords(code, cap) if not w.is_zero())


def ensure_distance(code: ClassicalCode, cap: int = DEFAULT_ENUMERATION_CAP) -> ClassicalCode:
    if code.d is not None:
        return code
    return code.with_distance(min_distance(code, cap), "computed")


def is_mds(code: ClassicalCode) -> bool:
    if code.d is None:
        raise DistanceUnknownError(f"{code}: minimum distance unknown")
    return code.d == code.n - code.k + 1


# Quaternary entries use 0 1 w W with W = w^2.  The MDS codes are the
# extended and doubly-extended Reed-Solomon codes of dimension 2 whose
# generator columns are the projective points of PG(1, 4).
_CATALOG = {
    "rep3_b": (2, [[1, 1, 0], [1, 0, 1]]),
    "hamming7_b": (
        2,
        [
            [0, 0, 0, 1, 1, 1, 1],
            [0, 1, 1, 0, 0, 1, 1],
            [1, 0, 1, 0, 1, 0, 1],
        ],
    ),
    "mds4_2_q": (4, [["1", "0", "W", "w"], ["0", "1", "w", "W"]]),
    "ext_rs5_2_q": (
        4,
        [
            ["1", "0", "0", "1", "W"],
            ["0", "1", "0", "1", "w"],
            ["0", "0", "1", "1", "1"],
        ],
    ),
}

CATALOG_NAMES = tuple(_CATALOG)


@functools.cache
def catalog_get(name: str) -> ClassicalCode:
    """Return a catalog code with its distance computed by enumeration."""
    try:
        q, rows = _CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog code {name!r}; choose from {', '.join(_CATALOG)}") from None
    return ensure_distance(from_parity_check(q, rows, name=name))


def resolve_code(spec: str) -> ClassicalCode:
    """Resolve ``catalog:<name>`` or a path to a code file."""
    if spec.startswith("catalog:"):
        return catalog_get(spec.split(":", 1)[1])
    return load_code(spec)
