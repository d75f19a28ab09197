"""Exact dense linear algebra over a Field.

Conventions used across the whole package:

  * a vector is a list of field values;
  * a matrix is a list of rows, all of equal length;
  * the linear map of an m x n matrix M is  v |-> M . v  (column vector);
  * composition of maps is matmul(A, B) ("A after B").

Ranks over Q are computed by fraction-free Bareiss elimination on an
integerized copy of the matrix, which keeps the inner loop on machine/big
integers instead of Fraction objects.  Everything else is plain exact
Gauss-Jordan elimination.
"""

from fractions import Fraction

__all__ = [
    "zeros", "identity", "matvec", "matmul", "transpose", "mat_add",
    "mat_scale", "mat_eq", "is_zero_matrix", "rank", "rref", "nullspace",
    "solve", "Subspace", "QuotientSpace", "column_space_basis",
    "invert_matrix",
]


def zeros(K, m, n):
    z = K.zero
    return [[z] * n for _ in range(m)]


def identity(K, n):
    M = zeros(K, n, n)
    for i in range(n):
        M[i][i] = K.one
    return M


def matvec(K, M, v):
    mul, add, zero = K.mul, K.add, K.zero
    out = []
    for row in M:
        acc = zero
        for a, x in zip(row, v):
            if a and x:
                acc = add(acc, mul(a, x))
        out.append(acc)
    return out


def matmul(K, A, B):
    if not A:
        return []
    if not B:
        return [[] for _ in A]
    mul, add, zero = K.mul, K.add, K.zero
    Bt = list(zip(*B))
    out = []
    for row in A:
        new = []
        for col in Bt:
            acc = zero
            for a, b in zip(row, col):
                if a and b:
                    acc = add(acc, mul(a, b))
            new.append(acc)
        out.append(new)
    return out


def transpose(M):
    return [list(col) for col in zip(*M)] if M else []

def mat_add(K, A, B):
    return [[K.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(K, c, A):
    return [[K.mul(c, a) for a in row] for row in A]


def mat_eq(A, B):
    return A == B


def is_zero_matrix(K, A):
    return not any(a for row in A for a in row)


def _bareiss_rank(rows):
    """Rank of an integer matrix, fraction-free."""
    M = [row[:] for row in rows]
    m = len(M)
    if m == 0:
        return 0
    n = len(M[0])
    rank_ = 0
    prev = 1
    row = 0
    for col in range(n):
        piv = None
        for r in range(row, m):
            if M[r][col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != row:
            M[row], M[piv] = M[piv], M[row]
        pivval = M[row][col]
        for r in range(row + 1, m):
            mr, mp = M[r], M[row]
            vr = mr[col]
            if vr:
                for c in range(col, n):
                    mr[c] = (pivval * mr[c] - vr * mp[c]) // prev
            elif prev != 1 or pivval != 1:
                for c in range(col, n):
                    if mr[c]:
                        mr[c] = (pivval * mr[c]) // prev
        prev = pivval
        row += 1
        rank_ += 1
        if row == m:
            break
    return rank_


def rank(K, M):
    if not M or not M[0]:
        return 0
    if K.kind == "Q":
        introws = []
        for row in M:
            den = 1
            for a in row:
                den = den * a.denominator // _gcd(den, a.denominator)
            introws.append([int(a * den) for a in row])
        return _bareiss_rank(introws)
    return len(rref(K, M)[1])


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def rref(K, M):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [row[:] for row in M]
    m = len(rows)
    n = len(rows[0]) if m else 0
    zero = K.zero
    pivots = []
    r = 0
    for col in range(n):
        piv = None
        best = None
        for i in range(r, m):
            if rows[i][col]:
                nz = sum(1 for a in rows[i] if a)
                if best is None or nz < best:
                    best = nz
                    piv = i
                    if nz == 1:
                        break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = K.inv(rows[r][col])
        if inv != K.one:
            rows[r] = [K.mul(inv, a) for a in rows[r]]
        for i in range(m):
            if i != r and rows[i][col]:
                f = rows[i][col]
                ri, rr = rows[i], rows[r]
                for c in range(col, n):
                    if rr[c]:
                        ri[c] = K.sub(ri[c], K.mul(f, rr[c]))
        pivots.append(col)
        r += 1
        if r == m:
            break
    return rows[:r] + rows[r:], pivots


def nullspace(K, M, ncols=None):
    """Basis of the right kernel {v : M v = 0}."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M or ncols == 0:
        return [list(col) for col in identity(K, ncols)]
    rows, pivots = rref(K, M)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    zero, one = K.zero, K.one
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            a = rows[r][fc]
            if a:
                v[pc] = K.neg(a)
        basis.append(v)
    return basis


def solve(K, M, b):
    """One solution of M x = b, or None if inconsistent."""
    m = len(M)
    n = len(M[0]) if m else 0
    aug = [M[i][:] + [b[i]] for i in range(m)]
    rows, pivots = rref(K, aug)
    zero = K.zero
    # inconsistent iff a pivot lands in the last column
    if n in pivots:
        return None
    x = [zero] * n
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][n]
    return x


def invert_matrix(K, M):
    n = len(M)
    aug = [M[i][:] + identity(K, n)[i] for i in range(n)]
    rows, pivots = rref(K, aug)
    if pivots != list(range(n)):
        return None
    return [rows[i][n:] for i in range(n)]


class Subspace:
    """A subspace of K^n kept in reduced row echelon form (monic pivots)."""

    __slots__ = ("K", "n", "rows", "pivots")

    def __init__(self, K, n, vectors=()):
        self.K = K
        self.n = n
        self.rows = []
        self.pivots = []
        for v in vectors:
            self.add(v)

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, v):
        """Fully reduce v by the stored echelon basis (returns a copy)."""
        K = self.K
        sub, mul = K.sub, K.mul
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            a = v[p]
            if a:
                for c in range(p, self.n):
                    rc = row[c]
                    if rc:
                        v[c] = sub(v[c], mul(a, rc))
        return v

    def contains(self, v):
        return not any(self.reduce(v))

    def add(self, v):
        """Add v to the span; True if the dimension grew."""
        K = self.K
        r = self.reduce(v)
        p = next((c for c, a in enumerate(r) if a), None)
        if p is None:
            return False
        inv = K.inv(r[p])
        if inv != K.one:
            r = [K.mul(inv, a) for a in r]
        # back-eliminate the new pivot from the existing rows
        sub, mul = K.sub, K.mul
        for row in self.rows:
            a = row[p]
            if a:
                for c in range(p, self.n):
                    if r[c]:
                        row[c] = sub(row[c], mul(a, r[c]))
        at = next((i for i, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(at, r)
        self.pivots.insert(at, p)
        return True

    def basis(self):
        return [row[:] for row in self.rows]

    def coords_in_basis(self, v, gens):
        """Express v as a combination of `gens` (must span v); or None."""
        M = transpose(gens) if gens else [[] for _ in range(self.n)]
        return solve(self.K, M, list(v))


class QuotientSpace:
    """K^n / W with canonical coordinates at the non-pivot positions of W."""

    __slots__ = ("K", "n", "sub", "free", "dim")

    def __init__(self, K, n, sub):
        assert isinstance(sub, Subspace) and sub.n == n
        self.K = K
        self.n = n
        self.sub = sub
        pivset = set(sub.pivots)
        self.free = [c for c in range(n) if c not in pivset]
        self.dim = len(self.free)

    def project(self, v):
        r = self.sub.reduce(v)
        return [r[c] for c in self.free]

    def lift(self, coords):
        v = [self.K.zero] * self.n
        for c, a in zip(self.free, coords):
            v[c] = a
        return v


def column_space_basis(K, M):
    """Echelonized basis of the column space (as vectors)."""
    sub = Subspace(K, len(M) if M else 0)
    for col in (transpose(M) or []):
        sub.add(col)
    return sub.basis()
