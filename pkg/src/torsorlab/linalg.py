"""Exact scalars and matrices over the rationals or a prime field.

Matrices are immutable.  Entries are stored row by row keeping only the
nonzero positions, which keeps elimination on the large but very sparse
tensor-space maps cheap; the public interface is that of a dense grid.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpq

from .errors import DimensionCapExceeded, DomainMismatch, NoSolution, ShapeError

__all__ = [
    "Field", "QQ", "GF", "Matrix", "SubspaceBasis",
    "rref", "rank", "kernel_basis", "image_basis", "solve_factor", "cokernel",
    "inverse", "set_dimension_cap", "dimension_cap",
]

_CAP = [4096]


def set_dimension_cap(n: int) -> None:
    """Set the largest allowed dimension for intermediate spaces."""
    _CAP[0] = int(n)


def dimension_cap() -> int:
    return _CAP[0]


def check_cap(n: int, what: str = "space") -> None:
    if n > _CAP[0]:
        raise DimensionCapExceeded(f"{what} of dimension {n} exceeds cap {_CAP[0]}")


# ---------------------------------------------------------------- scalars


class Field:
    """A scalar domain.  Elements are plain values (``mpq`` or ``int``)."""

    p = 0
    name = "?"

    def __call__(self, value):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def __repr__(self):
        return f"<field {self.name}>"


class Rationals(Field):
    name = "Q"

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __call__(self, value):
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        if isinstance(value, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(value, (int, type(self.zero))):
            return mpq(value)
        if type(value).__name__ == "mpz":
            return mpq(value)
        raise TypeError(f"cannot interpret {value!r} as a rational")

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("division by zero")
        return 1 / x

    def format(self, x) -> str:
        x = mpq(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def parse(self, text: str):
        s = text.strip()
        try:
            if "/" in s:
                a, b = s.split("/")
                b = int(b)
                if b == 0:
                    raise ZeroDivisionError("zero denominator")
                return mpq(int(a), b)
            return mpq(int(s))
        except ValueError:
            raise ValueError(f"not a rational: {text!r}") from None

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or not gmpy2.is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = int(p)
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1

    def __call__(self, value):
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, Fraction) or type(value).__name__ == "mpq":
            num, den = int(value.numerator), int(value.denominator)
            return (num * self.inv(den % self.p)) % self.p
        raise TypeError(f"cannot interpret {value!r} in {self.name}")

    def inv(self, x):
        x %= self.p
        if not x:
            raise ZeroDivisionError("division by zero")
        return pow(x, self.p - 2, self.p)

    def format(self, x) -> str:
        return f"{x % self.p} mod {self.p}"

    def parse(self, text: str):
        s = text.strip()
        if "mod" in s:
            r, q = s.split("mod")
            if int(q) != self.p:
                raise DomainMismatch(f"residue mod {int(q)} given for {self.name}")
            return int(r) % self.p
        if "/" in s:
            a, b = s.split("/")
            return (int(a) * self.inv(int(b) % self.p)) % self.p
        return int(s) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def _same_field(a: Field, b: Field) -> Field:
    if a is not b and a != b:
        raise DomainMismatch(f"scalar domains differ: {a.name} vs {b.name}")
    return a


# ---------------------------------------------------------------- row kernels


def _axpy(row: dict, other: dict, coef, p: int) -> None:
    """row += coef * other, in place, dropping zeros."""
    get = row.get
    if p:
        for k, v in other.items():
            nv = (get(k, 0) + coef * v) % p
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)
    else:
        for k, v in other.items():
            nv = get(k, 0) + coef * v
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)


def _scale(row: dict, c, p: int) -> dict:
    if p:
        return {k: (v * c) % p for k, v in row.items()}
    return {k: v * c for k, v in row.items()}


def _echelon(field: Field, rows) -> list:
    """Reduced echelon form of the span of ``rows`` (sparse dicts).

    Returns a list of ``(pivot_column, row)`` sorted by pivot column; each
    row has a 1 at its pivot and zeros in every other pivot column.
    """
    p = field.p
    piv: dict = {}
    for src in rows:
        if not src:
            continue
        row = dict(src)
        hits = [c for c in row if c in piv]
        for c in hits:
            coef = row.get(c)
            if coef:
                _axpy(row, piv[c], -coef, p)
        if not row:
            continue
        lead = min(row)
        inv = field.inv(row[lead])
        if inv != 1:
            row = _scale(row, inv, p)
        for other in piv.values():
            v = other.get(lead)
            if v:
                _axpy(other, row, -v, p)
        piv[lead] = row
    return sorted(piv.items())


# ---------------------------------------------------------------- matrices


class Matrix:
    """Immutable matrix over a :class:`Field`."""

    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = tuple({} for _ in range(nrows))
        self._rows = tuple(rows)

    # constructors

    @classmethod
    def from_rows(cls, field: Field, rows, ncols: int | None = None) -> "Matrix":
        rows = list(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        out = []
        for r in rows:
            if len(r) != ncols:
                raise ShapeError("ragged rows")
            d = {}
            for j, v in enumerate(r):
                x = field(v)
                if x:
                    d[j] = x
            out.append(d)
        return cls(field, len(out), ncols, out)

    @classmethod
    def from_columns(cls, field: Field, columns, nrows: int | None = None) -> "Matrix":
        columns = list(columns)
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        return cls.from_rows(field, [[c[i] for c in columns] for i in range(nrows)], len(columns))

    @classmethod
    def from_dict(cls, field: Field, nrows: int, ncols: int, entries: dict) -> "Matrix":
        rows = [dict() for _ in range(nrows)]
        for (i, j), v in entries.items():
            x = field(v)
            if x:
                rows[i][j] = x
        return cls(field, nrows, ncols, rows)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, [{i: field.one} for i in range(n)])

    @classmethod
    def column_vector(cls, field: Field, values) -> "Matrix":
        return cls.from_rows(field, [[v] for v in values], 1)

    # access

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(ij)
        return self._rows[i].get(j, self.field.zero)

    def row_items(self, i: int) -> dict:
        """Nonzero entries of row ``i`` as a read-only mapping."""
        return self._rows[i]

    def tolist(self) -> list:
        z = self.field.zero
        return [[r.get(j, z) for j in range(self.ncols)] for r in self._rows]

    def column(self, j: int) -> list:
        z = self.field.zero
        return [r.get(j, z) for r in self._rows]

    def columns(self) -> list:
        t = self.transpose()
        return [t.row(i) for i in range(t.nrows)]

    def row(self, i: int) -> list:
        z = self.field.zero
        r = self._rows[i]
        return [r.get(j, z) for j in range(self.ncols)]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    # predicates

    def is_zero(self) -> bool:
        return not any(self._rows)

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        one = self.field.one
        return all(len(r) == 1 and r.get(i) == one for i, r in enumerate(self._rows))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.shape == other.shape and self.field == other.field
                and self._rows == other._rows)

    def __hash__(self):
        return hash((self.nrows, self.ncols,
                     tuple(tuple(sorted(r.items())) for r in self._rows)))

    # arithmetic

    def _check(self, other: "Matrix") -> int:
        _same_field(self.field, other.field)
        return self.field.p

    def __add__(self, other: "Matrix") -> "Matrix":
        p = self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        rows = []
        for a, b in zip(self._rows, other._rows):
            r = dict(a)
            _axpy(r, b, 1, p)
            rows.append(r)
        return Matrix(self.field, self.nrows, self.ncols, rows)

    def __sub__(self, other: "Matrix") -> "Matrix":
        p = self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        rows = []
        for a, b in zip(self._rows, other._rows):
            r = dict(a)
            _axpy(r, b, -1, p)
            rows.append(r)
        return Matrix(self.field, self.nrows, self.ncols, rows)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        if not c:
            return Matrix.zeros(self.field, self.nrows, self.ncols)
        p = self.field.p
        return Matrix(self.field, self.nrows, self.ncols, [_scale(r, c, p) for r in self._rows])

    def __mul__(self, c) -> "Matrix":
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        p = self._check(other)
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot compose {self.shape} @ {other.shape}")
        orows = other._rows
        out = []
        for a in self._rows:
            acc: dict = {}
            get = acc.get
            for k, x in a.items():
                for j, y in orows[k].items():
                    acc[j] = get(j, 0) + x * y
            if p:
                acc = {j: v % p for j, v in acc.items() if v % p}
            else:
                acc = {j: v for j, v in acc.items() if v}
            out.append(acc)
        return Matrix(self.field, self.nrows, other.ncols, out)

    def transpose(self) -> "Matrix":
        cols = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                cols[j][i] = v
        return Matrix(self.field, self.ncols, self.nrows, cols)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product, left-factor-major indexing."""
        p = self._check(other)
        nr, nc = self.nrows * other.nrows, self.ncols * other.ncols
        check_cap(max(nr, nc), "tensor space")
        n = other.ncols
        out = []
        for a in self._rows:
            for b in other._rows:
                r = {}
                for i, x in a.items():
                    base = i * n
                    for j, y in b.items():
                        v = x * y
                        if p:
                            v %= p
                        if v:
                            r[base + j] = v
                out.append(r)
        return Matrix(self.field, nr, nc, out)

    def select_rows(self, idx) -> "Matrix":
        idx = list(idx)
        return Matrix(self.field, len(idx), self.ncols, [self._rows[i] for i in idx])

    def select_columns(self, idx) -> "Matrix":
        idx = list(idx)
        pos = {c: k for k, c in enumerate(idx)}
        rows = [{pos[j]: v for j, v in r.items() if j in pos} for r in self._rows]
        return Matrix(self.field, self.nrows, len(idx), rows)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        rows = [{j - c0: v for j, v in r.items() if c0 <= j < c1} for r in self._rows[r0:r1]]
        return Matrix(self.field, r1 - r0, c1 - c0, rows)

    @staticmethod
    def hstack(*ms: "Matrix") -> "Matrix":
        if not ms:
            raise ShapeError("nothing to stack")
        field = ms[0].field
        nr = ms[0].nrows
        rows = [dict() for _ in range(nr)]
        off = 0
        for m in ms:
            _same_field(field, m.field)
            if m.nrows != nr:
                raise ShapeError("hstack row mismatch")
            for i, r in enumerate(m._rows):
                for j, v in r.items():
                    rows[i][off + j] = v
            off += m.ncols
        return Matrix(field, nr, off, rows)

    @staticmethod
    def vstack(*ms: "Matrix") -> "Matrix":
        if not ms:
            raise ShapeError("nothing to stack")
        field = ms[0].field
        nc = ms[0].ncols
        rows = []
        for m in ms:
            _same_field(field, m.field)
            if m.ncols != nc:
                raise ShapeError("vstack column mismatch")
            rows.extend(m._rows)
        return Matrix(field, len(rows), nc, rows)

    @staticmethod
    def block_diagonal(*ms: "Matrix") -> "Matrix":
        field = ms[0].field
        rows = []
        roff = coff = 0
        total = sum(m.ncols for m in ms)
        for m in ms:
            for r in m._rows:
                rows.append({coff + j: v for j, v in r.items()})
            coff += m.ncols
            roff += m.nrows
        return Matrix(field, roff, total, rows)

    # display

    def format_rows(self) -> list:
        f = self.field
        return [[f.format(x) for x in row] for row in self.tolist()]

    def __repr__(self):
        if self.nrows * self.ncols > 64:
            return f"Matrix({self.nrows}x{self.ncols} over {self.field.name}, nnz={self.nnz()})"
        return f"Matrix({self.format_rows()})"


def identity_kron(n: int, g: Matrix) -> Matrix:
    """``I_n ⊗ g`` built directly as a block-diagonal matrix."""
    check_cap(max(n * g.nrows, n * g.ncols), "tensor space")
    rows = []
    gr, gc = g.nrows, g.ncols
    for b in range(n):
        off = b * gc
        for r in g._rows:
            rows.append({off + j: v for j, v in r.items()})
    return Matrix(g.field, n * gr, n * gc, rows)


def kron_identity(g: Matrix, n: int) -> Matrix:
    """``g ⊗ I_n``."""
    check_cap(max(n * g.nrows, n * g.ncols), "tensor space")
    rows = []
    for r in g._rows:
        for b in range(n):
            rows.append({j * n + b: v for j, v in r.items()})
    return Matrix(g.field, g.nrows * n, g.ncols * n, rows)


# ---------------------------------------------------------------- subspaces


class SubspaceBasis:
    """A subspace given by a canonical basis (columns of ``basis``).

    The basis is in reduced column echelon form: column ``k`` has a 1 in
    row ``pivots[k]`` which is its first nonzero entry, and every other
    column vanishes there.  Coordinates of a member vector are therefore
    read off at the pivot rows.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis: Matrix, pivots):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = tuple(pivots)

    @property
    def dim(self) -> int:
        return self.basis.ncols

    @property
    def field(self) -> Field:
        return self.basis.field

    @classmethod
    def from_rows(cls, field: Field, ambient: int, echelon) -> "SubspaceBasis":
        pivots = [c for c, _ in echelon]
        t = Matrix(field, len(echelon), ambient, [r for _, r in echelon])
        return cls(ambient, t.transpose(), pivots)

    def coordinates(self, target: Matrix, check: bool = True) -> Matrix:
        """Solve ``basis @ X = target``; raises NoSolution if not contained."""
        if target.nrows != self.ambient_dim:
            raise ShapeError(f"vector length {target.nrows} != ambient {self.ambient_dim}")
        x = target.select_rows(self.pivots)
        if check and self.basis @ x != target:
            raise NoSolution("target leaves the subspace")
        return x

    def contains(self, target: Matrix) -> bool:
        try:
            self.coordinates(target)
        except NoSolution:
            return False
        return True

    def __eq__(self, other):
        return (isinstance(other, SubspaceBasis) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"SubspaceBasis(dim={self.dim} in {self.ambient_dim})"


# ---------------------------------------------------------------- operations


def rref(m: Matrix):
    """Reduced row echelon form and ascending pivot columns."""
    ech = _echelon(m.field, m._rows)
    rows = [r for _, r in ech] + [{} for _ in range(m.nrows - len(ech))]
    return Matrix(m.field, m.nrows, m.ncols, rows), [c for c, _ in ech]


def rank(m: Matrix) -> int:
    return len(_echelon(m.field, m._rows))


def kernel_basis(m: Matrix) -> SubspaceBasis:
    """Canonical basis of ``{x : m x = 0}``."""
    f = m.field
    p = f.p
    ech = _echelon(f, m._rows)
    pivset = {c for c, _ in ech}
    vecs = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        v = {free: f.one}
        for c, r in ech:
            x = r.get(free)
            if x:
                v[c] = (-x) % p if p else -x
        vecs.append(v)
    return SubspaceBasis.from_rows(f, m.ncols, _echelon(f, vecs))


def image_basis(m: Matrix) -> SubspaceBasis:
    """Canonical basis of the column space of ``m``."""
    return SubspaceBasis.from_rows(m.field, m.nrows, _echelon(m.field, m.transpose()._rows))


def span_of_columns(field: Field, ambient: int, columns) -> SubspaceBasis:
    """Canonical basis of the span of sparse column dicts."""
    return SubspaceBasis.from_rows(field, ambient, _echelon(field, columns))


def solve_factor(through: Matrix, target: Matrix) -> Matrix:
    """Some ``X`` with ``through @ X == target`` (free variables set to 0)."""
    _same_field(through.field, target.field)
    if through.nrows != target.nrows:
        raise ShapeError(f"row mismatch {through.shape} vs {target.shape}")
    n = through.ncols
    aug = []
    for a, b in zip(through._rows, target._rows):
        r = dict(a)
        for j, v in b.items():
            r[n + j] = v
        aug.append(r)
    ech = _echelon(through.field, aug)
    rows = [dict() for _ in range(n)]
    for c, r in ech:
        if c >= n:
            raise NoSolution("target is not in the image")
        rows[c] = {j - n: v for j, v in r.items() if j >= n}
    return Matrix(through.field, n, target.ncols, rows)


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise ShapeError(f"non-square matrix {m.shape} has no inverse")
    return solve_factor(m, Matrix.identity(m.field, m.nrows))


def cokernel(m: Matrix):
    """Projection onto ``ambient / image(m)`` and a section of it.

    The quotient keeps the coordinates that are not pivots of the
    echelon form of the image.
    """
    f = m.field
    p = f.p
    n = m.nrows
    ech = _echelon(f, m.transpose()._rows)
    if not ech:
        ident = Matrix.identity(f, n)
        return ident, ident
    pivots = {c: r for c, r in ech}
    keep = [j for j in range(n) if j not in pivots]
    pos = {j: k for k, j in enumerate(keep)}
    proj_cols = []
    for j in range(n):
        if j in pos:
            proj_cols.append({pos[j]: f.one})
        else:
            col = {}
            for q, v in pivots[j].items():
                if q in pos:
                    col[pos[q]] = (-v) % p if p else -v
            proj_cols.append(col)
    projection = Matrix(f, n, len(keep), proj_cols).transpose()
    section = Matrix(f, n, len(keep), [{pos[j]: f.one} if j in pos else {} for j in range(n)])
    return projection, section
