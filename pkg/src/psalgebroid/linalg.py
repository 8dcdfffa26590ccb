"""Exact rational linear algebra.

Elimination is fraction-free: every working row is scaled to a primitive
integer vector (content divided out) before and after each row operation,
so intermediate growth stays bounded and no Fraction arithmetic happens in
the inner loop. Results are converted back to reduced Fractions at the end.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Iterable, Mapping, Sequence

Vector = dict  # sparse: key -> Fraction (no zero entries)


class IntegrityError(RuntimeError):
    """An algebraic invariant that must hold exactly was violated."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def _primitive(row: dict, tag: dict | None = None):
    """Scale an integer row (and its tag) so that the leading entry is
    positive and the gcd of all entries is one."""
    g = 0
    for v in row.values():
        g = gcd(g, v)
    if tag:
        for v in tag.values():
            g = gcd(g, v)
    if g == 0:
        return row, tag
    lead = row[min(row)] if row else 1
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
        if tag is not None:
            tag = {k: v // g for k, v in tag.items()}
    return row, tag


def _to_integer(vec: Mapping) -> tuple[dict, int]:
    """Return (integer row, scale) with integer row = scale * vec."""
    den = 1
    for v in vec.values():
        den = lcm(den, as_fraction(v).denominator)
    out = {}
    for k, v in vec.items():
        v = as_fraction(v)
        if v:
            out[k] = v.numerator * (den // v.denominator)
    return out, den


def _combine(a: dict, ca: int, b: dict, cb: int) -> dict:
    """ca*a - cb*b, dropping zeros."""
    out = {k: ca * v for k, v in a.items()}
    for k, v in b.items():
        nv = out.get(k, 0) - cb * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


class Echelon:
    """Incrementally maintained, fully reduced echelon basis of a span.

    Vectors are sparse mappings from orderable keys to rationals. Each stored
    row has a pivot key (its smallest key) that appears in no other row. With
    ``track=True`` every row remembers which combination of the *accepted*
    input vectors produced it, which makes :meth:`solve` possible.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self._rows: dict[Hashable, dict] = {}   # pivot -> integer row
        self._tags: dict[Hashable, dict] = {}   # pivot -> integer combination
        self.labels: list = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, row: dict, tag: dict | None):
        hits = [k for k in row if k in self._rows]
        for k in hits:
            c = row.get(k)
            if not c:
                continue
            prow = self._rows[k]
            p = prow[k]
            g = gcd(p, c)
            row = _combine(row, p // g, prow, c // g)
            if tag is not None:
                tag = _combine(tag, p // g, self._tags[k], c // g)
            row, tag = _primitive(row, tag)
        return row, tag

    def add(self, vec: Mapping, label=None) -> bool:
        """Insert a vector; return True if it enlarged the span."""
        row, _ = _to_integer(vec)
        tag = None
        if self.track:
            idx = len(self.labels)
            # vec = row / den, so the row equals den * (input vector)
            tag = {idx: _to_integer(vec)[1]}
        row, tag = self._reduce(row, tag)
        if not row:
            return False
        row, tag = _primitive(row, tag)
        piv = min(row)
        # keep the basis fully reduced
        for k, prow in list(self._rows.items()):
            c = prow.get(piv)
            if c:
                p = row[piv]
                g = gcd(p, c)
                nrow = _combine(prow, p // g, row, c // g)
                ntag = _combine(self._tags[k], p // g, tag, c // g) if tag is not None else None
                nrow, ntag = _primitive(nrow, ntag)
                self._rows[k] = nrow
                if ntag is not None:
                    self._tags[k] = ntag
        self._rows[piv] = row
        if tag is not None:
            self._tags[piv] = tag
            self.labels.append(label)
        return True

    def contains(self, vec: Mapping) -> bool:
        row, _ = _to_integer(vec)
        row, _ = self._reduce(row, None)
        return not row

    def solve(self, vec: Mapping) -> dict | None:
        """Coefficients (label -> Fraction) over accepted inputs summing to
        ``vec``, or None when ``vec`` is outside the span."""
        if not self.track:
            raise ValueError("Echelon was built without tracking")
        row, den = _to_integer(vec)
        coeffs: dict[int, Fraction] = {}
        for k in [k for k in row if k in self._rows]:
            c = Fraction(row[k])
            prow = self._rows[k]
            f = c / prow[k]
            for kk, v in prow.items():
                nv = row.get(kk, 0) - f * v
                if nv:
                    row[kk] = nv
                else:
                    row.pop(kk, None)
            for idx, t in self._tags[k].items():
                coeffs[idx] = coeffs.get(idx, 0) + f * t
        if row:
            return None
        out = {}
        for idx, v in coeffs.items():
            v = Fraction(v) / den
            if v:
                out[self.labels[idx]] = v
        return out

    def pivots(self) -> list:
        return sorted(self._rows)

    def rows(self) -> dict:
        """pivot -> reduced row with pivot entry 1 (Fractions)."""
        out = {}
        for k, row in self._rows.items():
            p = row[k]
            out[k] = {kk: Fraction(v, p) for kk, v in row.items()}
        return out


class RationalMatrix:
    """Row-sparse matrix over the rationals."""

    __slots__ = ("nrows", "ncols", "data")

    def __init__(self, nrows: int, ncols: int, data: list[dict] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.data = data if data is not None else [dict() for _ in range(nrows)]
        if len(self.data) != nrows:
            raise ValueError("row count mismatch")

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        data = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            data.append({j: as_fraction(v) for j, v in enumerate(r) if v})
        return cls(len(rows), ncols, data)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping]):
        m = cls(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                v = as_fraction(v)
                if v:
                    if not 0 <= i < nrows:
                        raise ValueError(f"row index {i} out of range")
                    m.data[i][j] = v
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int):
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, [{i: Fraction(1)} for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i].get(j, Fraction(0))

    def __setitem__(self, ij, v):
        i, j = ij
        v = as_fraction(v)
        if v:
            self.data[i][j] = v
        else:
            self.data[i].pop(j, None)

    def to_dense(self) -> list[list[Fraction]]:
        return [[r.get(j, Fraction(0)) for j in range(self.ncols)] for r in self.data]

    def columns(self) -> list[dict]:
        cols: list[dict] = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.data):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def column(self, j: int) -> dict:
        return {i: r[j] for i, r in enumerate(self.data) if j in r}

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.ncols, self.nrows, self.columns())

    def is_zero(self) -> bool:
        return not any(self.data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for r in self.data:
            acc: dict = {}
            for k, a in r.items():
                for j, b in other.data[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.append({j: v for j, v in acc.items() if v})
        return RationalMatrix(self.nrows, other.ncols, out)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = []
        for a, b in zip(self.data, other.data):
            r = dict(a)
            for j, v in b.items():
                nv = r.get(j, 0) + v
                if nv:
                    r[j] = nv
                else:
                    r.pop(j, None)
            out.append(r)
        return RationalMatrix(self.nrows, self.ncols, out)

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.nrows, self.ncols, [{j: -v for j, v in r.items()} for r in self.data])

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def scale(self, c) -> "RationalMatrix":
        c = as_fraction(c)
        if not c:
            return RationalMatrix.zeros(self.nrows, self.ncols)
        return RationalMatrix(self.nrows, self.ncols, [{j: c * v for j, v in r.items()} for r in self.data])

    def apply(self, vec: Sequence) -> list[Fraction]:
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return [sum((v * vec[j] for j, v in r.items()), Fraction(0)) for r in self.data]

    def select_rows(self, idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix(len(idx), self.ncols, [dict(self.data[i]) for i in idx])

    def select_columns(self, idx: Sequence[int]) -> "RationalMatrix":
        pos = {j: n for n, j in enumerate(idx)}
        return RationalMatrix(self.nrows, len(idx),
                              [{pos[j]: v for j, v in r.items() if j in pos} for r in self.data])

    def __repr__(self) -> str:
        return f"RationalMatrix({self.nrows}x{self.ncols}, nnz={sum(map(len, self.data))})"


def block_diag(*blocks: RationalMatrix) -> RationalMatrix:
    rows = sum(b.nrows for b in blocks)
    cols = sum(b.ncols for b in blocks)
    data = []
    off = 0
    for b in blocks:
        for r in b.data:
            data.append({j + off: v for j, v in r.items()})
        off += b.ncols
    return RationalMatrix(rows, cols, data)


def hstack(*blocks: RationalMatrix) -> RationalMatrix:
    if len({b.nrows for b in blocks}) > 1:
        raise ValueError("row counts differ")
    nrows = blocks[0].nrows
    data = [dict() for _ in range(nrows)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b.data):
            data[i].update({j + off: v for j, v in r.items()})
        off += b.ncols
    return RationalMatrix(nrows, off, data)


def vstack(*blocks: RationalMatrix) -> RationalMatrix:
    if len({b.ncols for b in blocks}) > 1:
        raise ValueError("column counts differ")
    data = [dict(r) for b in blocks for r in b.data]
    return RationalMatrix(len(data), blocks[0].ncols, data)


def rank(m: RationalMatrix) -> int:
    e = Echelon()
    for r in m.data:
        if r:
            e.add(r)
    return e.rank


def rank_kernel_image(m: RationalMatrix):
    """Return (rank, kernel basis, image basis).

    Kernel vectors are dense lists of length ``ncols`` (one per free column,
    free entry equal to one). The image basis consists of the pivot columns
    of ``m`` itself, as dense lists of length ``nrows``.
    """
    e = Echelon()
    for r in m.data:
        if r:
            e.add(r)
    rows = e.rows()
    pivots = sorted(rows)
    free = [j for j in range(m.ncols) if j not in rows]
    kernel = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for c in pivots:
            a = rows[c].get(f)
            if a:
                v[c] = -a
        kernel.append(v)
    image = []
    for c in pivots:
        col = m.column(c)
        image.append([col.get(i, Fraction(0)) for i in range(m.nrows)])
    r = len(pivots)
    if r + len(kernel) != m.ncols:
        raise IntegrityError("rank + nullity != number of columns")
    return r, kernel, image


def kernel(m: RationalMatrix) -> list[list[Fraction]]:
    return rank_kernel_image(m)[1]


def sparse(vec: Sequence) -> dict:
    return {i: as_fraction(v) for i, v in enumerate(vec) if v}


def dense(vec: Mapping, n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, v in vec.items():
        out[i] = as_fraction(v)
    return out


def column_solver(m: RationalMatrix) -> Echelon:
    """Tracked echelon over the columns of ``m`` (labels are column indices)."""
    e = Echelon(track=True)
    for j, col in enumerate(m.columns()):
        if col:
            e.add(col, label=j)
    return e


def solve(m: RationalMatrix, b: Sequence) -> list[Fraction] | None:
    """One solution x of m x = b, or None."""
    sol = column_solver(m).solve(sparse(b))
    if sol is None:
        return None
    return dense(sol, m.ncols)


def in_column_space(m: RationalMatrix, vectors: Iterable[Sequence]) -> bool:
    e = Echelon()
    for col in m.columns():
        if col:
            e.add(col)
    return all(e.contains(sparse(v)) for v in vectors)
