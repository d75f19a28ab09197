"""Finite-dimensional associative algebras by structure constants, their
modules and bimodules, and idempotent machinery.

Convention table (used consistently by every module):

  * structure constants:  b_i . b_j = sum_k  sc[(i,j)][k] . b_k,
    stored sparsely as  sc[(i, j)] = [(k, coeff), ...];
  * a left module action is a list L of matrices, one per algebra basis
    element, acting on column vectors:  b_i . x = L[i] @ x,
    with  L of a product satisfying  L[i] @ L[j] = sum_k c_ijk L[k];
  * a right module action R satisfies  R[j] @ R[i] = sum_k c_ijk R[k]
    (x . b_i . b_j applies R[i] first);
  * a bimodule is a left and a right action that commute;
  * an A-bimodule is the same thing as a left A**e = A (x) A^op module via
    (a (x) b) . m = a . m . b,  and as a right A**e-module via
    m . (a (x) b) = b . m . a.
"""

import random

from .errors import (InvalidInput, NotCommuting, NotIdempotent,
                     PreconditionFailed, SizeLimit, ValidationFailure)
from .linalg import (Subspace, identity, matmul, matvec, nullspace,
                     rank, solve, transpose, zeros)

__all__ = [
    "ValidationReport", "StructureAlgebra", "AlgebraHom", "ModuleData",
    "opposite", "enveloping", "bimodule_to_left_env_module",
    "bimodule_to_right_env_module", "subalgebra_generated",
    "ideal_and_quotient", "orthogonalize_idempotents",
    "is_von_neumann_regular_idempotent_generated", "separability_idempotent",
    "tensor_over_algebra", "hom_over_algebra", "restrict_along_hom",
    "regular_bimodule", "module_from_generator_actions",
    "matrix_algebra", "product_field_algebra", "dual_numbers",
    "group_algebra", "commutator_quotient",
]

EXHAUSTIVE_LIMIT = 40
RANDOM_TRIPLES = 1000


class ValidationReport:
    """Outcome of a validation pass; `violations` is a list of tuples."""

    def __init__(self, subject=""):
        self.subject = subject
        self.violations = []
        self.notes = []

    @property
    def ok(self):
        return not self.violations

    def fail(self, *info):
        self.violations.append(tuple(info))

    def note(self, *info):
        self.notes.append(tuple(info))

    def merge(self, other):
        self.violations.extend(other.violations)
        self.notes.extend(other.notes)
        return self

    def raise_if_failed(self, exc=ValidationFailure):
        if not self.ok:
            raise exc(f"{self.subject}: {self.violations[:5]}"
                      + ("..." if len(self.violations) > 5 else ""), self)
        return self

    def to_json(self):
        return {"subject": self.subject, "ok": self.ok,
                "violations": [list(map(str, v)) for v in self.violations[:50]],
                "notes": [list(map(str, v)) for v in self.notes]}

    def __repr__(self):
        state = "ok" if self.ok else f"{len(self.violations)} violations"
        return f"<ValidationReport {self.subject}: {state}>"


class StructureAlgebra:
    """Associative unital algebra given by sparse structure constants."""

    def __init__(self, field, dim, sc, unit, labels=None, name=""):
        self.field = field
        self.dim = dim
        self.sc = {ij: [(k, c) for (k, c) in row if c != field.zero]
                   for ij, row in sc.items()}
        self.sc = {ij: row for ij, row in self.sc.items() if row}
        self.unit = list(unit)
        self.labels = labels or [f"b{i}" for i in range(dim)]
        self.name = name or f"algebra(dim={dim})"

    def mul_basis(self, i, j):
        return self.sc.get((i, j), [])

    def mul(self, u, v):
        K = self.field
        zero = K.zero
        kmul, kadd = K.mul, K.add
        sc = self.sc
        out = [zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                row = sc.get((i, j))
                if not row:
                    continue
                ab = kmul(a, b)
                for k, c in row:
                    out[k] = kadd(out[k], kmul(ab, c))
        return out

    def basis_vector(self, i):
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def left_mult_matrix(self, v):
        """Matrix of x |-> v . x."""
        K = self.field
        cols = [self.mul(v, self.basis_vector(j)) for j in range(self.dim)]
        return transpose(cols) if cols else []

    def right_mult_matrix(self, v):
        """Matrix of x |-> x . v."""
        cols = [self.mul(self.basis_vector(j), v) for j in range(self.dim)]
        return transpose(cols) if cols else []

    def is_commutative(self):
        for i in range(self.dim):
            for j in range(i):
                if sorted(self.mul_basis(i, j)) != sorted(self.mul_basis(j, i)):
                    return False
        return True

    def validate(self, seed=0):
        """Associativity and the unit law; exhaustive for dim <= 40."""
        rep = ValidationReport(f"algebra {self.name}")
        K = self.field
        d = self.dim
        for i in range(d):
            bi = self.basis_vector(i)
            if self.mul(self.unit, bi) != bi or self.mul(bi, self.unit) != bi:
                rep.fail("unit", i)
        if d <= EXHAUSTIVE_LIMIT:
            triples = ((i, j, k) for i in range(d) for j in range(d) for k in range(d))
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(d), rng.randrange(d), rng.randrange(d))
                       for _ in range(RANDOM_TRIPLES))
            rep.note("associativity checked on", RANDOM_TRIPLES, "random triples")
        for (i, j, k) in triples:
            lhs = self.mul(self.mul(self.basis_vector(i), self.basis_vector(j)),
                           self.basis_vector(k))
            rhs = self.mul(self.basis_vector(i),
                           self.mul(self.basis_vector(j), self.basis_vector(k)))
            if lhs != rhs:
                rep.fail("associativity", i, j, k)
        return rep

    def to_json(self):
        K = self.field
        sc = [[i, j, k, K.dump(c)] for (i, j), row in sorted(self.sc.items())
              for (k, c) in row]
        return {"dim": self.dim, "unit": [K.dump(a) for a in self.unit], "sc": sc,
                "labels": self.labels}

    @staticmethod
    def from_json(field, obj, name=""):
        dim = obj["dim"]
        sc = {}
        for i, j, k, c in obj["sc"]:
            sc.setdefault((i, j), []).append((k, field.parse(c)))
        unit = [field.parse(a) for a in obj["unit"]]
        return StructureAlgebra(field, dim, sc, unit,
                                labels=obj.get("labels"), name=name)

    def __repr__(self):
        return f"StructureAlgebra({self.name}, dim={self.dim})"


class AlgebraHom:
    """Linear map between algebras given by a (tgt_dim x src_dim) matrix."""

    def __init__(self, source, target, matrix, name=""):
        self.source = source
        self.target = target
        self.matrix = matrix
        self.name = name or "hom"

    def apply(self, v):
        return matvec(self.source.field, self.matrix, v)

    def verify(self, unital=True):
        rep = ValidationReport(f"hom {self.name}")
        src, tgt = self.source, self.target
        for i in range(src.dim):
            fi = self.apply(src.basis_vector(i))
            for j in range(src.dim):
                fj = self.apply(src.basis_vector(j))
                lhs = tgt.mul(fi, fj)
                rhs = self.apply(src.mul(src.basis_vector(i), src.basis_vector(j)))
                if lhs != rhs:
                    rep.fail("multiplicative", i, j)
        if unital and self.apply(src.unit) != tgt.unit:
            rep.fail("unit")
        return rep

    def is_bijective(self):
        return (self.source.dim == self.target.dim
                and rank(self.source.field, self.matrix) == self.source.dim)

    def compose(self, other):
        """self . other (apply `other` first)."""
        return AlgebraHom(other.source, self.target,
                          matmul(self.source.field, self.matrix, other.matrix),
                          name=f"{self.name}*{other.name}")


class ModuleData:
    """Module/bimodule over one algebra: action matrices per basis element."""

    def __init__(self, algebra, dim, left=None, right=None, name=""):
        self.algebra = algebra
        self.dim = dim
        self.left = left
        self.right = right
        self.name = name or "module"
        if left is None and right is None:
            raise InvalidInput("module needs at least one action")

    @property
    def sidedness(self):
        if self.left is not None and self.right is not None:
            return "bi"
        return "left" if self.left is not None else "right"

    def act_left(self, a_vec, x):
        K = self.algebra.field
        out = [K.zero] * self.dim
        for i, c in enumerate(a_vec):
            if c:
                Lx = matvec(K, self.left[i], x)
                out = [K.add(o, K.mul(c, t)) for o, t in zip(out, Lx)]
        return out

    def act_right(self, x, a_vec):
        K = self.algebra.field
        out = [K.zero] * self.dim
        for i, c in enumerate(a_vec):
            if c:
                Rx = matvec(K, self.right[i], x)
                out = [K.add(o, K.mul(c, t)) for o, t in zip(out, Rx)]
        return out

    def left_matrix_of(self, a_vec):
        K = self.algebra.field
        M = zeros(K, self.dim, self.dim)
        for i, c in enumerate(a_vec):
            if c:
                for r in range(self.dim):
                    row = self.left[i][r]
                    M[r] = [K.add(M[r][s], K.mul(c, row[s])) for s in range(self.dim)]
        return M

    def right_matrix_of(self, a_vec):
        K = self.algebra.field
        M = zeros(K, self.dim, self.dim)
        for i, c in enumerate(a_vec):
            if c:
                for r in range(self.dim):
                    row = self.right[i][r]
                    M[r] = [K.add(M[r][s], K.mul(c, row[s])) for s in range(self.dim)]
        return M

    def validate(self):
        rep = ValidationReport(f"module {self.name} over {self.algebra.name}")
        A = self.algebra
        K = A.field
        d = A.dim
        idm = identity(K, self.dim)
        if self.left is not None:
            if self.left_matrix_of(A.unit) != idm:
                rep.fail("left unit")
            for i in range(d):
                for j in range(d):
                    lhs = matmul(K, self.left[i], self.left[j])
                    rhs = zeros(K, self.dim, self.dim)
                    for k, c in A.mul_basis(i, j):
                        for r in range(self.dim):
                            rowk = self.left[k][r]
                            rhs[r] = [K.add(rhs[r][s], K.mul(c, rowk[s]))
                                      for s in range(self.dim)]
                    if lhs != rhs:
                        rep.fail("left action", i, j)
        if self.right is not None:
            if self.right_matrix_of(A.unit) != idm:
                rep.fail("right unit")
            for i in range(d):
                for j in range(d):
                    lhs = matmul(K, self.right[j], self.right[i])
                    rhs = zeros(K, self.dim, self.dim)
                    for k, c in A.mul_basis(i, j):
                        for r in range(self.dim):
                            rowk = self.right[k][r]
                            rhs[r] = [K.add(rhs[r][s], K.mul(c, rowk[s]))
                                      for s in range(self.dim)]
                    if lhs != rhs:
                        rep.fail("right action", i, j)
        if self.left is not None and self.right is not None:
            for i in range(d):
                for j in range(d):
                    if matmul(K, self.left[i], self.right[j]) != \
                       matmul(K, self.right[j], self.left[i]):
                        rep.fail("actions do not commute", i, j)
        return rep


# ---------------------------------------------------------------------------
# constructions on algebras


def opposite(A):
    sc = {}
    for (i, j), row in A.sc.items():
        sc[(j, i)] = list(row)
    return StructureAlgebra(A.field, A.dim, sc, A.unit, labels=A.labels,
                            name=f"{A.name}^op")


def enveloping(A, size_limit=1 << 16):
    """A (x) A^op; basis (i, j) at index i * dim + j."""
    d = A.dim
    if d * d > size_limit:
        raise SizeLimit(f"enveloping dimension {d * d} over limit")
    K = A.field
    sc = {}
    for (i, k), row1 in A.sc.items():
        for (l, j), row2 in A.sc.items():
            # (b_i (x) b_j)(b_k (x) b_l) = b_i b_k (x) b_l b_j
            entries = []
            for m, c1 in row1:
                for n_, c2 in row2:
                    entries.append((m * d + n_, K.mul(c1, c2)))
            if entries:
                sc.setdefault((i * d + j, k * d + l), []).extend(entries)
    unit = [K.zero] * (d * d)
    for i, a in enumerate(A.unit):
        for j, b in enumerate(A.unit):
            unit[i * d + j] = K.add(unit[i * d + j], K.mul(a, b))
    labels = [f"{A.labels[i]}(x){A.labels[j]}" for i in range(d) for j in range(d)]
    return StructureAlgebra(K, d * d, sc, unit, labels=labels, name=f"{A.name}^e")


def bimodule_to_left_env_module(env, A, M):
    """Left A^e-action (a (x) b).m = a.m.b from a bimodule M over A."""
    d = A.dim
    K = A.field
    left = []
    for i in range(d):
        for j in range(d):
            left.append(matmul(K, M.left[i], M.right[j]))
    return ModuleData(env, M.dim, left=left, name=f"{M.name} as left {env.name}")


def bimodule_to_right_env_module(env, A, M):
    """Right A^e-action m.(a (x) b) = b.m.a."""
    d = A.dim
    K = A.field
    right = []
    for i in range(d):
        for j in range(d):
            right.append(matmul(K, M.left[j], M.right[i]))
    return ModuleData(env, M.dim, right=right, name=f"{M.name} as right {env.name}")


class SubalgebraResult:
    def __init__(self, algebra, basis_vectors, inclusion):
        self.algebra = algebra
        self.basis_vectors = basis_vectors
        self.inclusion = inclusion

    def to_sub_coords(self, vec):
        """Coordinates of an ambient vector in the subalgebra basis, or None."""
        K = self.algebra.field
        M = transpose(self.basis_vectors)
        return solve(K, M, list(vec))


def subalgebra_generated(A, gens, adjoin_unit=True, name=""):
    """Span-closure of gens (plus the unit) under the product of A."""
    K = A.field
    span = Subspace(K, A.dim)
    vecs = []
    def push(v):
        if span.add(v):
            vecs.append(v)
    if adjoin_unit:
        push(A.unit)
    for g in gens:
        push(list(g))
    frontier = list(vecs)
    while frontier:
        new = []
        for u in list(vecs):
            for v in frontier:
                for w in (A.mul(u, v), A.mul(v, u)):
                    if span.add(w):
                        vecs.append(w)
                        new.append(w)
        frontier = new
    basis = span.basis()  # deterministic echelon basis, lowest pivots first
    sub_dim = len(basis)
    Mb = transpose(basis)
    sc = {}
    for i in range(sub_dim):
        for j in range(sub_dim):
            prod = A.mul(basis[i], basis[j])
            coords = solve(K, Mb, prod)
            assert coords is not None, "subalgebra closure failed"
            row = [(k, c) for k, c in enumerate(coords) if c != K.zero]
            if row:
                sc[(i, j)] = row
    unit_coords = solve(K, Mb, A.unit)
    if unit_coords is None:
        raise InvalidInput("unit of the ambient algebra not in the subalgebra")
    sub = StructureAlgebra(K, sub_dim, sc, unit_coords, name=name or f"sub({A.name})")
    incl = AlgebraHom(sub, A, transpose(basis), name=f"incl {sub.name}")
    return SubalgebraResult(sub, basis, incl)


class QuotientResult:
    def __init__(self, ideal_basis, algebra, projection, section_indices):
        self.ideal_basis = ideal_basis
        self.algebra = algebra
        self.projection = projection          # AlgebraHom A -> A/I
        self.section_indices = section_indices  # ambient basis indices used


def ideal_and_quotient(A, gens, name=""):
    """Two-sided ideal closure of gens and the quotient algebra.

    The quotient basis is the set of ambient basis monomials at the
    non-pivot columns of the echelonized ideal (deterministic choice).
    Raises InvalidInput if the quotient would be the zero ring.
    """
    K = A.field
    span = Subspace(K, A.dim)
    worklist = []
    for g in gens:
        if span.add(list(g)):
            worklist.append(list(g))
    while worklist:
        v = worklist.pop()
        for i in range(A.dim):
            b = A.basis_vector(i)
            for w in (A.mul(b, v), A.mul(v, b)):
                if span.add(w):
                    worklist.append(w)
    ideal_basis = span.basis()
    from .linalg import QuotientSpace
    Q = QuotientSpace(K, A.dim, span)
    qdim = Q.dim
    if qdim == 0:
        raise InvalidInput("quotient is the zero ring (unit lies in the ideal)")
    proj_rows = [ [K.zero] * A.dim for _ in range(qdim)]
    for j in range(A.dim):
        col = Q.project(A.basis_vector(j))
        for r in range(qdim):
            proj_rows[r][j] = col[r]
    sc = {}
    for i in range(qdim):
        for j in range(qdim):
            u = Q.lift([K.one if t == i else K.zero for t in range(qdim)])
            v = Q.lift([K.one if t == j else K.zero for t in range(qdim)])
            coords = Q.project(A.mul(u, v))
            row = [(k, c) for k, c in enumerate(coords) if c != K.zero]
            if row:
                sc[(i, j)] = row
    unit = Q.project(A.unit)
    labels = [A.labels[c] for c in Q.free]
    quot = StructureAlgebra(K, qdim, sc, unit, labels=labels,
                            name=name or f"{A.name}/ideal")
    rep = quot.validate()
    rep.raise_if_failed()
    proj = AlgebraHom(A, quot, proj_rows, name=f"proj {quot.name}")
    return QuotientResult(ideal_basis, quot, proj, list(Q.free))


def orthogonalize_idempotents(A, gens, max_gens=14):
    """Orthogonal idempotent basis of the unital subalgebra generated by
    commuting idempotents, via inclusion-exclusion atoms.

    Returns a list of pairwise-orthogonal idempotents v_i with sum(v_i) = 1
    whose span equals span(products of gens, 1).
    """
    K = A.field
    gens = [list(g) for g in gens]
    if len(gens) > max_gens:
        raise SizeLimit(f"{len(gens)} idempotent generators (limit {max_gens})")
    for g in gens:
        if A.mul(g, g) != g:
            raise NotIdempotent(str(g))
    for i, g in enumerate(gens):
        for h in gens[i + 1:]:
            if A.mul(g, h) != A.mul(h, g):
                raise NotCommuting(f"{g} vs {h}")
    atoms = [A.unit]
    for g in gens:
        comp = [K.sub(a, b) for a, b in zip(A.unit, g)]
        new = []
        for at in atoms:
            for part in (A.mul(at, g), A.mul(at, comp)):
                if any(c != K.zero for c in part):
                    new.append(part)
        atoms = new
    zero_vec = [K.zero] * A.dim
    total = zero_vec
    for at in atoms:
        total = [K.add(a, b) for a, b in zip(total, at)]
    assert total == A.unit
    for i, u in enumerate(atoms):
        assert A.mul(u, u) == u
        for v in atoms[i + 1:]:
            assert A.mul(u, v) == zero_vec
    return atoms


def is_von_neumann_regular_idempotent_generated(A, gens):
    """True plus a witness map x -> y with xyx = x, for commutative A
    generated by the given idempotents."""
    if not A.is_commutative():
        raise PreconditionFailed("algebra is not commutative")
    span = subalgebra_generated(A, gens)
    if span.algebra.dim != A.dim:
        raise PreconditionFailed("the given idempotents do not generate")
    try:
        atoms = orthogonalize_idempotents(A, gens)
    except (NotIdempotent, NotCommuting) as exc:
        raise PreconditionFailed(str(exc))
    K = A.field
    Mb = transpose(atoms)

    def witness(x):
        coords = solve(K, Mb, list(x))
        if coords is None:
            return None
        y = [K.zero] * A.dim
        for c, at in zip(coords, atoms):
            if c != K.zero:
                ci = K.inv(c)
                y = [K.add(a, K.mul(ci, b)) for a, b in zip(y, at)]
        return y

    for i in range(A.dim):
        x = A.basis_vector(i)
        y = witness(x)
        if y is None or A.mul(A.mul(x, y), x) != x:
            return False, None
    return True, witness


def separability_idempotent(A):
    """Solve for e in A (x) A with mult(e) = 1 and (a (x) 1)e = (1 (x) a)e.

    Returns the coefficient matrix e[i][j] (meaning sum e_ij b_i (x) b_j)
    or None when the defining system is inconsistent.
    """
    K = A.field
    d = A.dim
    nvars = d * d
    rows = []
    rhs = []
    # multiplication condition: sum_ij e_ij b_i b_j = 1
    for k in range(d):
        row = [K.zero] * nvars
        for i in range(d):
            for j in range(d):
                for (kk, c) in A.mul_basis(i, j):
                    if kk == k:
                        row[i * d + j] = K.add(row[i * d + j], c)
        rows.append(row)
        rhs.append(A.unit[k])
    # centrality: for each basis a: sum e_ij (a b_i (x) b_j - b_i (x) b_j a) = 0
    for t in range(d):
        for k in range(d):
            for l in range(d):
                row = [K.zero] * nvars
                for i in range(d):
                    for j in range(d):
                        for (kk, c) in A.mul_basis(t, i):
                            if kk == k and l == j:
                                row[i * d + j] = K.add(row[i * d + j], c)
                        for (ll, c) in A.mul_basis(j, t):
                            if ll == l and k == i:
                                row[i * d + j] = K.sub(row[i * d + j], c)
                rows.append(row)
                rhs.append(K.zero)
    x = solve(K, rows, rhs)
    if x is None:
        return None
    return [[x[i * d + j] for j in range(d)] for i in range(d)]


# ---------------------------------------------------------------------------
# module constructions


def regular_bimodule(A):
    left = [A.left_mult_matrix(A.basis_vector(i)) for i in range(A.dim)]
    right = [A.right_mult_matrix(A.basis_vector(i)) for i in range(A.dim)]
    return ModuleData(A, A.dim, left=left, right=right, name=f"{A.name} regular")


class TensorOverAlgebra:
    """X (x)_R Y for a right module X and a left module Y over R.

    Ambient index of the pure tensor (ix, iy) is ix * dimY + iy; the
    quotient coordinates come from `QuotientSpace`.
    """

    def __init__(self, R, X, Y):
        if X.right is None or Y.left is None:
            raise InvalidInput("need a right module and a left module")
        K = R.field
        self.R, self.X, self.Y, self.K = R, X, Y, K
        mx, my = X.dim, Y.dim
        N = mx * my
        rel = Subspace(K, N)
        for b in range(R.dim):
            RX = X.right[b]
            LY = Y.left[b]
            for ix in range(mx):
                colX = [RX[r][ix] for r in range(mx)]
                for iy in range(my):
                    colY = [LY[r][iy] for r in range(my)]
                    v = [K.zero] * N
                    for r, a in enumerate(colX):
                        if a != K.zero:
                            v[r * my + iy] = K.add(v[r * my + iy], a)
                    for r, a in enumerate(colY):
                        if a != K.zero:
                            v[ix * my + r] = K.sub(v[ix * my + r], a)
                    rel.add(v)
        from .linalg import QuotientSpace
        self.ambient_dim = N
        self.relations = rel
        self.quotient = QuotientSpace(K, N, rel)
        self.dim = self.quotient.dim

    def pure(self, xvec, yvec):
        """Quotient coordinates of x (x) y."""
        K = self.K
        my = self.Y.dim
        v = [K.zero] * self.ambient_dim
        for ix, a in enumerate(xvec):
            if a == K.zero:
                continue
            for iy, b in enumerate(yvec):
                if b != K.zero:
                    v[ix * my + iy] = K.add(v[ix * my + iy], K.mul(a, b))
        return self.quotient.project(v)

    def project(self, ambient_vec):
        return self.quotient.project(ambient_vec)

    def map_on_quotient(self, ambient_map_fn):
        """Matrix on quotient coords of a map given on ambient pure-tensor
        basis vectors; asserts the map descends."""
        K = self.K
        cols = []
        for coords_idx in range(self.dim):
            amb = self.quotient.lift([K.one if t == coords_idx else K.zero
                                      for t in range(self.dim)])
            img = ambient_map_fn(amb)
            cols.append(self.quotient.project(img))
        # well-definedness: relation vectors must map into relations
        for relvec in self.relations.basis():
            img = ambient_map_fn(relvec)
            if any(a != K.zero for a in self.quotient.project(img)):
                raise InvalidInput("map does not descend to the tensor product")
        return transpose(cols) if cols else []

    def map_from(self, pure_images, target_dim):
        """Matrix (target_dim x self.dim) of the linear map sending the
        pure tensor of basis elements (ix, iy) to pure_images[ix][iy];
        asserts the map kills the balancing relations."""
        K = self.K
        my = self.Y.dim

        def apply_ambient(vec):
            out = [K.zero] * target_dim
            for idx, c in enumerate(vec):
                if c != K.zero:
                    img = pure_images[idx // my][idx % my]
                    out = [K.add(o, K.mul(c, w)) for o, w in zip(out, img)]
            return out

        zero = [K.zero] * target_dim
        for relvec in self.relations.basis():
            if apply_ambient(relvec) != zero:
                raise InvalidInput("map is not balanced over the algebra")
        cols = []
        for i in range(self.dim):
            amb = self.quotient.lift([K.one if t == i else K.zero
                                      for t in range(self.dim)])
            cols.append(apply_ambient(amb))
        return transpose(cols) if cols else [[] for _ in range(target_dim)]


def tensor_over_algebra(R, X, Y):
    return TensorOverAlgebra(R, X, Y)


def hom_over_algebra(R, X, Y):
    """Basis of Hom_R(X, Y) for left modules X, Y: matrices F with
    F L_X(b) = L_Y(b) F for every algebra basis element b."""
    if X.left is None or Y.left is None:
        raise InvalidInput("need left modules")
    K = R.field
    mx, my = X.dim, Y.dim
    nvars = my * mx
    rows = []
    for b in range(R.dim):
        LX, LY = X.left[b], Y.left[b]
        for r in range(my):
            for c in range(mx):
                row = [K.zero] * nvars
                # (F LX)[r][c] = sum_s F[r][s] LX[s][c]
                for s in range(mx):
                    if LX[s][c] != K.zero:
                        row[r * mx + s] = K.add(row[r * mx + s], LX[s][c])
                # (LY F)[r][c] = sum_s LY[r][s] F[s][c]
                for s in range(my):
                    if LY[r][s] != K.zero:
                        row[s * mx + c] = K.sub(row[s * mx + c], LY[r][s])
                rows.append(row)
    basis = nullspace(K, rows, nvars)
    return [[[v[r * mx + c] for c in range(mx)] for r in range(my)] for v in basis]


def restrict_along_hom(hom, M):
    """Pull a module over hom.target back to a module over hom.source."""
    src = hom.source
    K = src.field
    left = right = None
    if M.left is not None:
        left = [M.left_matrix_of(hom.apply(src.basis_vector(i)))
                for i in range(src.dim)]
    if M.right is not None:
        right = [M.right_matrix_of(hom.apply(src.basis_vector(i)))
                 for i in range(src.dim)]
    return ModuleData(src, M.dim, left=left, right=right,
                      name=f"{M.name} via {hom.name}")


def module_from_generator_actions(A, dim, given, side="left"):
    """Complete a module action specified only on generators of A.

    `given` maps basis indices to action matrices.  The closure tracks the
    span of algebra elements with known action; multiplication order follows
    the side convention.
    """
    K = A.field
    if dim == 0:
        empty = [[] for _ in range(A.dim)]
        if side == "left":
            return ModuleData(A, 0, left=empty)
        return ModuleData(A, 0, right=empty)
    span = Subspace(K, A.dim)
    known = []  # (algebra vector, action matrix)

    def push(vec, mat):
        if span.add(vec):
            known.append((vec, mat))
            return True
        return False

    push(A.unit, identity(K, dim))
    for i, mat in given.items():
        push(A.basis_vector(i), mat)
    changed = True
    while changed and span.dim < A.dim:
        changed = False
        for (u, Mu) in list(known):
            for (v, Mv) in list(known):
                w = A.mul(u, v)
                mat = matmul(K, Mu, Mv) if side == "left" else matmul(K, Mv, Mu)
                if push(w, mat):
                    changed = True
    if span.dim < A.dim:
        raise InvalidInput("the given generators do not generate the algebra")
    vecs = [u for (u, _) in known]
    Mb = transpose(vecs)
    actions = []
    for i in range(A.dim):
        coords = solve(K, Mb, A.basis_vector(i))
        assert coords is not None
        acc = zeros(K, dim, dim)
        for c, (_, mat) in zip(coords, known):
            if c != K.zero:
                acc = [[K.add(a, K.mul(c, b)) for a, b in zip(ra, rb)]
                       for ra, rb in zip(acc, mat)]
        actions.append(acc)
    if side == "left":
        return ModuleData(A, dim, left=actions)
    return ModuleData(A, dim, right=actions)


def module_map_kernel(R, X, Y, F, side="left"):
    """Kernel of a module map F: X -> Y (a kappa-matrix), returned as a
    basis plus the induced ModuleData on the kernel; raises ActionMismatch
    if F does not intertwine the actions."""
    from .errors import ActionMismatch
    K = R.field
    for i in range(R.dim):
        if side == "left":
            lhs = matmul(K, F, X.left[i])
            rhs = matmul(K, Y.left[i], F)
        else:
            lhs = matmul(K, F, X.right[i])
            rhs = matmul(K, Y.right[i], F)
        if lhs != rhs:
            raise ActionMismatch(f"not a module map at basis {i}")
    basis = nullspace(K, F, X.dim)
    Mb = transpose(basis) if basis else [[] for _ in range(X.dim)]
    acts = []
    for i in range(R.dim):
        cols = []
        for v in basis:
            img = X.act_left(R.basis_vector(i), v) if side == "left" \
                else X.act_right(v, R.basis_vector(i))
            coords = solve(K, Mb, img)
            assert coords is not None, "kernel is not action-stable"
            cols.append(coords)
        acts.append(transpose(cols) if cols else [])
    mod = ModuleData(R, len(basis), left=acts) if side == "left" \
        else ModuleData(R, len(basis), right=acts)
    return basis, mod


def module_map_cokernel(R, X, Y, F, side="left"):
    """Cokernel of a module map F: X -> Y: quotient coordinates plus the
    induced ModuleData on Y / im(F)."""
    from .linalg import QuotientSpace
    K = R.field
    img = Subspace(K, Y.dim)
    for col in transpose(F):
        img.add(col)
    Q = QuotientSpace(K, Y.dim, img)
    acts = []
    for i in range(R.dim):
        cols = []
        for j in range(Q.dim):
            v = Q.lift([K.one if t == j else K.zero for t in range(Q.dim)])
            w = Y.act_left(R.basis_vector(i), v) if side == "left" \
                else Y.act_right(v, R.basis_vector(i))
            cols.append(Q.project(w))
        acts.append(transpose(cols) if cols else [])
    mod = ModuleData(R, Q.dim, left=acts) if side == "left" \
        else ModuleData(R, Q.dim, right=acts)
    return Q, mod


def commutator_quotient(M):
    """M / [A, M] for a bimodule M: returns (QuotientSpace, dim)."""
    A = M.algebra
    K = A.field
    span = Subspace(K, M.dim)
    for i in range(A.dim):
        L, R = M.left[i], M.right[i]
        for c in range(M.dim):
            v = [K.sub(L[r][c], R[r][c]) for r in range(M.dim)]
            span.add(v)
    from .linalg import QuotientSpace
    return QuotientSpace(K, M.dim, span)


# ---------------------------------------------------------------------------
# stock algebras used by fixtures and tests


def matrix_algebra(K, n, name=None):
    """M_n(K) with basis E_{rc} at index r * n + c."""
    sc = {}
    for r in range(n):
        for c in range(n):
            for r2 in range(n):
                for c2 in range(n):
                    if c == r2:
                        sc[(r * n + c, r2 * n + c2)] = [(r * n + c2, K.one)]
    unit = [K.zero] * (n * n)
    for r in range(n):
        unit[r * n + r] = K.one
    return StructureAlgebra(K, n * n, sc, unit, name=name or f"M{n}")


def product_field_algebra(K, n, name=None):
    """K x K x ... x K (n factors)."""
    sc = {(i, i): [(i, K.one)] for i in range(n)}
    return StructureAlgebra(K, n, sc, [K.one] * n, name=name or f"K^{n}")


def dual_numbers(K, name=None):
    """K[x]/(x^2), basis {1, x}."""
    sc = {(0, 0): [(0, K.one)], (0, 1): [(1, K.one)], (1, 0): [(1, K.one)]}
    return StructureAlgebra(K, 2, sc, [K.one, K.zero], name=name or "K[x]/(x^2)")


def group_algebra(K, G, name=None):
    sc = {(i, j): [(G.mul(i, j), K.one)] for i in range(G.n) for j in range(G.n)}
    unit = [K.zero] * G.n
    unit[0] = K.one
    return StructureAlgebra(K, G.n, sc, unit, name=name or f"K[{G.name}]")
