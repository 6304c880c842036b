"""Exact dense linear algebra over prime fields and the rationals.

Everything downstream works with row vectors: maps act on the right
(v -> v @ M), kernels are left kernels, images are row spaces.  Prime
fields are backed by int64 numpy arrays reduced mod p; the rationals by
tuples of Fraction.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

__all__ = [
    "FieldSpec",
    "QQ",
    "GF",
    "Mat",
    "Subspace",
    "DimensionMismatch",
]


class DimensionMismatch(ValueError):
    """Raised when matrix or subspace shapes are incompatible."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FieldSpec:
    """An exact base field: the rationals or a prime field F_p."""

    __slots__ = ("kind", "characteristic")

    def __init__(self, kind: str, characteristic: int):
        if kind not in ("rationals", "prime"):
            raise ValueError(f"unknown field kind {kind!r}")
        if kind == "rationals":
            if characteristic != 0:
                raise ValueError("rationals have characteristic 0")
        elif not _is_prime(characteristic):
            raise ValueError(f"characteristic {characteristic} is not prime")
        self.kind = kind
        self.characteristic = characteristic

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "prime"

    @property
    def p(self) -> int:
        return self.characteristic

    def coerce(self, x):
        """Bring a scalar into canonical form for this field."""
        if self.kind == "prime":
            if isinstance(x, Fraction):
                num, den = x.numerator, x.denominator
                return (num * pow(den % self.p, self.p - 2, self.p)) % self.p
            return int(x) % self.p
        if isinstance(x, Fraction):
            return x
        return Fraction(x)

    def zero(self):
        return 0 if self.kind == "prime" else Fraction(0)

    def one(self):
        return 1 if self.kind == "prime" else Fraction(1)

    def neg(self, x):
        return (-x) % self.p if self.kind == "prime" else -x

    def inv(self, x):
        if self.kind == "prime":
            x = x % self.p
            if x == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(x, self.p - 2, self.p)
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(x)

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.kind == other.kind
            and self.characteristic == other.characteristic
        )

    def __hash__(self):
        return hash((self.kind, self.characteristic))

    def __repr__(self):
        if self.kind == "rationals":
            return "QQ"
        return f"GF({self.characteristic})"


QQ = FieldSpec("rationals", 0)


def GF(p: int) -> FieldSpec:
    return FieldSpec("prime", p)


# ---------------------------------------------------------------------------
# Rational (Fraction) backend: plain list-of-lists Gaussian elimination.
# ---------------------------------------------------------------------------


def _q_rref(rows, ncols):
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                row_r = m[r]
                m[i] = [a - f * b for a, b in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
    return m, pivots


# ---------------------------------------------------------------------------
# Prime-field backend: vectorised elimination on int64 arrays.
# ---------------------------------------------------------------------------


_GF2_PACK_THRESHOLD = 8192


def _gf2_rref(a: np.ndarray):
    """Bitpacked Gauss-Jordan over F_2 (uint64 words, little-endian bits)."""
    rows, ncols = a.shape
    words = (ncols + 63) // 64
    packed = np.zeros((rows, words * 8), dtype=np.uint8)
    pb = np.packbits((a & 1).astype(np.uint8), axis=1, bitorder="little")
    packed[:, : pb.shape[1]] = pb
    p = packed.view(np.uint64)
    pivots = []
    r = 0
    one = np.uint64(1)
    for c in range(ncols):
        w, b = divmod(c, 64)
        b = np.uint64(b)
        col = (p[r:, w] >> b) & one
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            p[[r, i]] = p[[i, r]]
        mask = ((p[:, w] >> b) & one).astype(bool)
        mask[r] = False
        if mask.any():
            p[mask] ^= p[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    bits = np.unpackbits(p.view(np.uint8), axis=1, bitorder="little")[:, :ncols]
    return bits.astype(np.int64), pivots


def _gf_rref(a: np.ndarray, p: int):
    a = np.array(a, dtype=np.int64) % p
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


class Mat:
    """An immutable exact matrix; rows x cols over a FieldSpec."""

    __slots__ = ("field", "rows", "cols", "_a", "_q")

    def __init__(self, field: FieldSpec, rows: int, cols: int, _a=None, _q=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        self._a = _a
        self._q = _q

    # -- construction -------------------------------------------------

    @staticmethod
    def from_rows(field: FieldSpec, data) -> "Mat":
        data = list(data)
        rows = len(data)
        cols = len(data[0]) if rows else 0
        for r in data:
            if len(r) != cols:
                raise DimensionMismatch("ragged rows")
        if field.is_prime_field:
            a = np.array(
                [[int(field.coerce(x)) for x in r] for r in data], dtype=np.int64
            ).reshape(rows, cols)
            a.flags.writeable = False
            return Mat(field, rows, cols, _a=a)
        q = tuple(tuple(field.coerce(x) for x in r) for r in data)
        return Mat(field, rows, cols, _q=q)

    @staticmethod
    def zeros(field: FieldSpec, rows: int, cols: int) -> "Mat":
        if field.is_prime_field:
            a = np.zeros((rows, cols), dtype=np.int64)
            a.flags.writeable = False
            return Mat(field, rows, cols, _a=a)
        z = Fraction(0)
        return Mat(field, rows, cols, _q=tuple((z,) * cols for _ in range(rows)))

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "Mat":
        if field.is_prime_field:
            a = np.eye(n, dtype=np.int64)
            a.flags.writeable = False
            return Mat(field, n, n, _a=a)
        return Mat(
            field,
            n,
            n,
            _q=tuple(
                tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
            ),
        )

    @staticmethod
    def of_array(field: FieldSpec, a: np.ndarray) -> "Mat":
        """Wrap an int array (prime fields only); reduces mod p."""
        if not field.is_prime_field:
            raise ValueError("of_array is for prime fields")
        a = np.asarray(a, dtype=np.int64) % field.p
        a = np.ascontiguousarray(a)
        a.flags.writeable = False
        return Mat(field, a.shape[0], a.shape[1], _a=a)

    # -- accessors ----------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def entry(self, i: int, j: int):
        if self._a is not None:
            return int(self._a[i, j])
        return self._q[i][j]

    def row(self, i: int) -> "Mat":
        if self._a is not None:
            return Mat.of_array(self.field, self._a[i : i + 1])
        return Mat(self.field, 1, self.cols, _q=(self._q[i],))

    def to_rows(self):
        if self._a is not None:
            return [[int(x) for x in r] for r in self._a]
        return [list(r) for r in self._q]

    def array(self) -> np.ndarray:
        if self._a is None:
            raise ValueError("not a prime-field matrix")
        return self._a

    def is_zero(self) -> bool:
        if self._a is not None:
            return not self._a.any()
        return all(x == 0 for r in self._q for x in r)

    def key(self):
        """Hashable canonical form (for dedup dictionaries)."""
        if self._a is not None:
            return (self.rows, self.cols, self._a.tobytes())
        return (self.rows, self.cols, self._q)

    def __eq__(self, other):
        if not isinstance(other, Mat) or self.field != other.field:
            return NotImplemented
        if self.shape != other.shape:
            return False
        if self._a is not None:
            return bool(np.array_equal(self._a, other._a))
        return self._q == other._q

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Mat({self.field}, {self.rows}x{self.cols}, {self.to_rows()})"

    # -- arithmetic ---------------------------------------------------

    def _check_same(self, other: "Mat"):
        if self.field != other.field:
            raise DimensionMismatch("field mismatch")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"add {self.shape} vs {other.shape}")
        if self._a is not None:
            return Mat.of_array(self.field, self._a + other._a)
        return Mat(
            self.field,
            self.rows,
            self.cols,
            _q=tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self._q, other._q)
            ),
        )

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"sub {self.shape} vs {other.shape}")
        if self._a is not None:
            return Mat.of_array(self.field, self._a - other._a)
        return Mat(
            self.field,
            self.rows,
            self.cols,
            _q=tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self._q, other._q)
            ),
        )

    def __neg__(self) -> "Mat":
        if self._a is not None:
            return Mat.of_array(self.field, -self._a)
        return Mat(
            self.field,
            self.rows,
            self.cols,
            _q=tuple(tuple(-a for a in r) for r in self._q),
        )

    def scale(self, c) -> "Mat":
        c = self.field.coerce(c)
        if self._a is not None:
            return Mat.of_array(self.field, self._a * int(c))
        return Mat(
            self.field,
            self.rows,
            self.cols,
            _q=tuple(tuple(c * a for a in r) for r in self._q),
        )

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"matmul {self.shape} @ {other.shape}")
        if self._a is not None:
            return Mat.of_array(self.field, self._a @ other._a)
        out = []
        for i in range(self.rows):
            ri = self._q[i]
            row = []
            for j in range(other.cols):
                s = Fraction(0)
                for l in range(self.cols):
                    if ri[l]:
                        s += ri[l] * other._q[l][j]
                row.append(s)
            out.append(tuple(row))
        return Mat(self.field, self.rows, other.cols, _q=tuple(out))

    def transpose(self) -> "Mat":
        if self._a is not None:
            return Mat.of_array(self.field, self._a.T)
        return Mat(
            self.field,
            self.cols,
            self.rows,
            _q=tuple(
                tuple(self._q[i][j] for i in range(self.rows))
                for j in range(self.cols)
            ),
        )

    def kron(self, other: "Mat") -> "Mat":
        self._check_same(other)
        if self._a is not None:
            return Mat.of_array(self.field, np.kron(self._a, other._a))
        rows = []
        for i in range(self.rows):
            for k in range(other.rows):
                rows.append(
                    tuple(
                        self._q[i][j] * other._q[k][l]
                        for j in range(self.cols)
                        for l in range(other.cols)
                    )
                )
        return Mat(self.field, self.rows * other.rows, self.cols * other.cols, _q=tuple(rows))

    @staticmethod
    def vstack(mats) -> "Mat":
        mats = list(mats)
        if not mats:
            raise ValueError("vstack of nothing")
        field = mats[0].field
        cols = mats[0].cols
        for m in mats:
            if m.field != field or m.cols != cols:
                raise DimensionMismatch("vstack shape mismatch")
        if field.is_prime_field:
            return Mat.of_array(field, np.vstack([m._a for m in mats]))
        rows = tuple(r for m in mats for r in m._q)
        return Mat(field, len(rows), cols, _q=rows)

    @staticmethod
    def hstack(mats) -> "Mat":
        mats = list(mats)
        if not mats:
            raise ValueError("hstack of nothing")
        field = mats[0].field
        rows = mats[0].rows
        for m in mats:
            if m.field != field or m.rows != rows:
                raise DimensionMismatch("hstack shape mismatch")
        if field.is_prime_field:
            return Mat.of_array(field, np.hstack([m._a for m in mats]))
        out = tuple(
            tuple(x for m in mats for x in m._q[i]) for i in range(rows)
        )
        return Mat(field, rows, sum(m.cols for m in mats), _q=out)

    def take_rows(self, idx) -> "Mat":
        idx = list(idx)
        if self._a is not None:
            if not idx:
                return Mat.zeros(self.field, 0, self.cols)
            return Mat.of_array(self.field, self._a[idx, :])
        return Mat(
            self.field,
            len(idx),
            self.cols,
            _q=tuple(self._q[i] for i in idx),
        )

    def take_columns(self, idx) -> "Mat":
        idx = list(idx)
        if self._a is not None:
            if not idx:
                return Mat.zeros(self.field, self.rows, 0)
            return Mat.of_array(self.field, self._a[:, idx])
        return Mat(
            self.field,
            self.rows,
            len(idx),
            _q=tuple(tuple(r[j] for j in idx) for r in self._q),
        )

    # -- elimination --------------------------------------------------

    def rref(self):
        """Reduced row echelon form; returns (Mat, pivot column list)."""
        if self.rows == 0 or self.cols == 0:
            return self, []
        if self._a is not None:
            if self.field.p == 2 and self._a.size >= _GF2_PACK_THRESHOLD:
                a, piv = _gf2_rref(self._a)
            else:
                a, piv = _gf_rref(self._a, self.field.p)
            return Mat.of_array(self.field, a), piv
        m, piv = _q_rref(self._q, self.cols)
        return Mat(self.field, self.rows, self.cols, _q=tuple(tuple(r) for r in m)), piv

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel(self) -> "Mat":
        """Basis (rows, in rref) of the left kernel {v : v @ self = 0}."""
        n = self.rows
        red, piv = self.transpose().rref()
        pivset = set(piv)
        free = [j for j in range(n) if j not in pivset]
        if not free:
            return Mat.zeros(self.field, 0, n)
        out = Mat.zeros(self.field, len(free), n).to_rows()
        for k, f in enumerate(free):
            out[k][f] = 1
            for r, pc in enumerate(piv):
                out[k][pc] = self.field.neg(red.entry(r, f))
        return Mat.from_rows(self.field, out).rref()[0]

    def solve_left(self, b: "Mat"):
        """Solve X @ self = b; returns one X (free vars 0) or None."""
        self._check_same(b)
        if b.cols != self.cols:
            raise DimensionMismatch("solve_left column mismatch")
        at = self.transpose()
        bt = b.transpose()
        aug = Mat.hstack([at, bt])
        red, piv = aug.rref()
        for c in piv:
            if c >= self.rows:
                return None
        xt = Mat.zeros(self.field, self.rows, b.rows).to_rows()
        for r, pc in enumerate(piv):
            for j in range(b.rows):
                xt[pc][j] = red.entry(r, self.rows + j)
        return Mat.from_rows(self.field, xt).transpose()

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of non-square matrix")
        x = self.solve_left(Mat.identity(self.field, self.rows))
        if x is None:
            raise ValueError("matrix is singular")
        return x

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def trace(self):
        if self.rows != self.cols:
            raise DimensionMismatch("trace of non-square matrix")
        if self._a is not None:
            return int(np.trace(self._a) % self.field.p)
        s = Fraction(0)
        for i in range(self.rows):
            s += self._q[i][i]
        return s

    def power(self, k: int) -> "Mat":
        if self.rows != self.cols:
            raise DimensionMismatch("power of non-square matrix")
        result = Mat.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result


class Subspace:
    """A subspace of k^n held as a reduced-echelon row basis (canonical)."""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field: FieldSpec, ambient: int, basis: Mat, pivots):
        self.field = field
        self.ambient = ambient
        self.basis = basis
        self.pivots = list(pivots)

    @staticmethod
    def from_vectors(field: FieldSpec, ambient: int, vectors) -> "Subspace":
        if isinstance(vectors, Mat):
            m = vectors
        else:
            vectors = list(vectors)
            if not vectors:
                m = Mat.zeros(field, 0, ambient)
            else:
                m = Mat.from_rows(field, vectors)
        if m.cols != ambient:
            raise DimensionMismatch(f"ambient {ambient} vs vector length {m.cols}")
        red, piv = m.rref()
        basis = Mat.from_rows(field, red.to_rows()[: len(piv)]) if piv else Mat.zeros(field, 0, ambient)
        return Subspace(field, ambient, basis, piv)

    @staticmethod
    def zero(field: FieldSpec, ambient: int) -> "Subspace":
        return Subspace(field, ambient, Mat.zeros(field, 0, ambient), [])

    @staticmethod
    def full(field: FieldSpec, ambient: int) -> "Subspace":
        return Subspace(field, ambient, Mat.identity(field, ambient), list(range(ambient)))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient, self.basis.key()))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of k^{self.ambient})"

    def reduce(self, v: Mat) -> Mat:
        """Canonical coset representative of v modulo this subspace."""
        if v.cols != self.ambient:
            raise DimensionMismatch("vector length mismatch")
        out = v
        for r, pc in enumerate(self.pivots):
            c = out.entry(0, pc)
            if c != 0:
                out = out - self.basis.row(r).scale(c)
        return out

    def contains_vector(self, v: Mat) -> bool:
        return self.reduce(v).is_zero()

    def contains(self, other: "Subspace") -> bool:
        if other.ambient != self.ambient:
            raise DimensionMismatch("ambient mismatch")
        for i in range(other.dim):
            if not self.contains_vector(other.basis.row(i)):
                return False
        return True

    def coordinates_of(self, v: Mat):
        """Express v over the basis rows; returns 1 x dim Mat or None."""
        if self.dim == 0:
            return Mat.zeros(self.field, 1, 0) if v.is_zero() else None
        coeffs = [v.entry(0, pc) for pc in self.pivots]
        cand = Mat.from_rows(self.field, [coeffs])
        if (cand @ self.basis) == v:
            return cand
        return None

    def sum_with(self, other: "Subspace") -> "Subspace":
        if other.ambient != self.ambient or other.field != self.field:
            raise DimensionMismatch("subspace sum mismatch")
        return Subspace.from_vectors(
            self.field, self.ambient, Mat.vstack([self.basis, other.basis])
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        if other.ambient != self.ambient or other.field != self.field:
            raise DimensionMismatch("subspace intersection mismatch")
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        stacked = Mat.vstack([self.basis, other.basis])
        ker = stacked.kernel()
        if ker.rows == 0:
            return Subspace.zero(self.field, self.ambient)
        first = ker.take_columns(range(self.dim))
        return Subspace.from_vectors(self.field, self.ambient, first @ self.basis)

    def project_columns(self, idx) -> "Subspace":
        idx = list(idx)
        return Subspace.from_vectors(self.field, len(idx), self.basis.take_columns(idx))

    def nonpivot_columns(self):
        pivset = set(self.pivots)
        return [j for j in range(self.ambient) if j not in pivset]


def quotient_basis(inner: Subspace, outer: Subspace):
    """Rows of outer's basis completing a basis of inner to one of outer.

    Requires inner <= outer; raises DimensionMismatch otherwise.
    """
    if inner.ambient != outer.ambient:
        raise DimensionMismatch("ambient mismatch")
    if not outer.contains(inner):
        raise DimensionMismatch("quotient_basis requires inner <= outer")
    current = inner
    reps = []
    for i in range(outer.dim):
        v = outer.basis.row(i)
        if not current.contains_vector(v):
            reps.append(v)
            current = current.sum_with(Subspace.from_vectors(current.field, current.ambient, v))
    return reps
