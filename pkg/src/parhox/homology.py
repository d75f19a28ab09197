"""Chain complexes, bar complexes, free resolutions, Tor/Ext, Hochschild
(co)homology and the diagonal group action on Hochschild chains.

Degree conventions:

  * a ChainComplex stores d[q]: C_q -> C_{q-1} (q >= 1), C_q = kappa^{dims[q]};
  * homology dims use  dim H_q = dims[q] - rank d_q - rank d_{q+1};
  * a FreeResolution of a module X over R keeps generator images, so the
    boundary in F_q = R^{r_q} is  u_j -> gen_images[q][j], and the induced
    complexes for Tor/Ext are assembled from action matrices of the blocks;
  * Hochschild homology of R with coefficients in a bimodule M is computed
    both on the (normalized or full) bar complex  C_q = M (x) Rbar^(x q)
    and as Tor over R^e via a free resolution of R; the two routes must
    agree and that agreement is an acceptance gate, not an assumption.

The diagonal action of the group on Hochschild chains of the coefficient
algebra A uses the full (unnormalized) bar complex: the action does not
preserve degenerate chains, so the normalized model would not carry it.
"""

from .errors import EquivarianceFailure, InvalidInput, SizeLimit
from .algebras import (ModuleData, ValidationReport,
                       bimodule_to_left_env_module,
                       bimodule_to_right_env_module, enveloping,
                       hom_over_algebra, module_from_generator_actions)
from .linalg import (QuotientSpace, Subspace, identity, matmul, matvec,
                     nullspace, rank, solve, transpose, zeros)

__all__ = [
    "ChainComplex", "bar_complex", "cobar_complex", "homology_dims_of_complex",
    "HomologyData", "homology_data", "FreeResolution", "free_resolution",
    "tor_dims", "ext_dims", "hochschild_homology_bar",
    "hochschild_homology_resolution", "hochschild_cohomology_bar",
    "hochschild_cohomology_resolution", "partial_homology_dims",
    "partial_cohomology_dims", "GModuleOnChains", "diagonal_chain_action",
    "diagonal_cochain_action", "induced_action_on_homology",
    "induced_action_on_cohomology", "hom_A_carrier", "hom_A_module_structure",
    "kron",
]

DEFAULT_CHAIN_CAP = 200_000


class ChainComplex:
    """dims[q] for 0 <= q <= top; d[q]: C_q -> C_{q-1} for 1 <= q <= top."""

    def __init__(self, field, dims, diffs):
        self.field = field
        self.dims = list(dims)
        self.d = dict(diffs)

    @property
    def top(self):
        return len(self.dims) - 1

    def validate(self):
        rep = ValidationReport("chain complex")
        K = self.field
        for q in range(2, self.top + 1):
            if self.dims[q] == 0 or self.dims[q - 2] == 0:
                continue
            prod = matmul(K, self.d[q - 1], self.d[q]) if self.dims[q - 1] else []
            if any(c != K.zero for row in prod for c in row):
                rep.fail("d.d != 0", q)
        return rep


def kron(K, A, B):
    """Kronecker product acting on the lexicographic tensor basis."""
    if not A or not B:
        return [[K.zero] * (len(A[0] if A else []) * len(B[0] if B else []))
                for _ in range(len(A) * len(B))]
    ma, na = len(A), len(A[0])
    mb, nb = len(B), len(B[0])
    out = zeros(K, ma * mb, na * nb)
    for i in range(ma):
        for j in range(na):
            a = A[i][j]
            if a == K.zero:
                continue
            for k in range(mb):
                rowB = B[k]
                orow = out[i * mb + k]
                for l in range(nb):
                    b = rowB[l]
                    if b != K.zero:
                        orow[j * nb + l] = K.add(orow[j * nb + l], K.mul(a, b))
    return out


class _BarBasis:
    """Index bookkeeping for M (x) W^(x q), W either R or the reduced Rbar."""

    def __init__(self, R, M, normalized):
        self.R = R
        self.M = M
        K = R.field
        self.K = K
        if normalized:
            span = Subspace(K, R.dim, [R.unit])
            self.quot = QuotientSpace(K, R.dim, span)
            self.wdim = self.quot.dim
        else:
            self.quot = None
            self.wdim = R.dim

    def lift(self, i):
        """The algebra element behind reduced-basis index i."""
        K = self.K
        if self.quot is None:
            return self.R.basis_vector(i)
        return self.quot.lift([K.one if t == i else K.zero
                               for t in range(self.wdim)])

    def project(self, vec):
        """Coordinates of an algebra element in the reduced basis."""
        if self.quot is None:
            return list(vec)
        return self.quot.project(vec)

    def dim_q(self, q):
        return self.M.dim * self.wdim ** q

    def tuples(self, q):
        """All q-tuples over range(wdim), lexicographic."""
        if q == 0:
            yield ()
            return
        idx = [0] * q
        while True:
            yield tuple(idx)
            t = q - 1
            while t >= 0:
                idx[t] += 1
                if idx[t] < self.wdim:
                    break
                idx[t] = 0
                t -= 1
            if t < 0:
                return

    def flat(self, im, tup):
        out = im
        for i in tup:
            out = out * self.wdim + i
        return out


def bar_complex(R, M, max_q, normalized=True, cap=DEFAULT_CHAIN_CAP):
    """The Hochschild chain complex C_q = M (x) W^(x q) with boundary

        b(m,a1..aq) = (m.a1, a2..aq)
                      + sum_i (-1)^i (m, a1.. a_i a_{i+1} ..aq)
                      + (-1)^q (aq.m, a1..a_{q-1}).

    Returns (ChainComplex, _BarBasis); d.d = 0 is asserted exactly.
    """
    K = R.field
    bb = _BarBasis(R, M, normalized)
    dims = [bb.dim_q(q) for q in range(max_q + 1)]
    if any(d > cap for d in dims):
        raise SizeLimit(f"bar complex dims {dims} exceed cap {cap}")
    diffs = {}
    for q in range(1, max_q + 1):
        rowsdim = dims[q - 1]
        mat = zeros(K, rowsdim, dims[q])
        colidx = 0
        for im in range(M.dim):
            mvec = [K.one if t == im else K.zero for t in range(M.dim)]
            for tup in bb.tuples(q):
                lifted = [bb.lift(i) for i in tup]
                col = colidx
                colidx += 1
                # face 0: (m.a1, a2..)
                ma = M.act_right(mvec, lifted[0])
                rest = tup[1:]
                for jm, c in enumerate(ma):
                    if c != K.zero:
                        r = bb.flat(jm, rest)
                        mat[r][col] = K.add(mat[r][col], c)
                # inner faces: products a_i a_{i+1}
                sign = K.one
                for i in range(q - 1):
                    sign = K.neg(sign)
                    prod = bb.project(R.mul(lifted[i], lifted[i + 1]))
                    for jw, c in enumerate(prod):
                        if c != K.zero:
                            newtup = tup[:i] + (jw,) + tup[i + 2:]
                            r = bb.flat(im, newtup)
                            mat[r][col] = K.add(mat[r][col], K.mul(sign, c))
                # last face: (-1)^q (aq.m, a1..a_{q-1})
                sign = K.one if q % 2 == 0 else K.neg(K.one)
                am = M.act_left(lifted[-1], mvec)
                for jm, c in enumerate(am):
                    if c != K.zero:
                        r = bb.flat(jm, tup[:-1])
                        mat[r][col] = K.add(mat[r][col], K.mul(sign, c))
        diffs[q] = mat
    cc = ChainComplex(K, dims, diffs)
    cc.validate().raise_if_failed()
    return cc, bb


def cobar_complex(R, M, max_q, normalized=True, cap=DEFAULT_CHAIN_CAP):
    """The Hochschild cochain complex C^q = maps W^(x q) -> M, with

        (df)(a1..a_{q+1}) = a1.f(a2..) + sum_i (-1)^i f(..a_i a_{i+1}..)
                            + (-1)^{q+1} f(a1..aq).a_{q+1}.

    Basis of C^q: pairs (tuple, M-basis); flat index = flat(tuple)*dimM + im.
    Returns (ChainComplex-like with d[q]: C^{q-1} -> C^q, _BarBasis)."""
    K = R.field
    bb = _BarBasis(R, M, normalized)
    dims = [bb.wdim ** q * M.dim for q in range(max_q + 1)]
    if any(d > cap for d in dims):
        raise SizeLimit(f"cochain complex dims {dims} exceed cap {cap}")

    def flat_c(tup, im):
        out = 0
        for i in tup:
            out = out * bb.wdim + i
        return out * M.dim + im

    diffs = {}
    for q in range(1, max_q + 1):
        # d: C^{q-1} -> C^q, built column by column over the elementary
        # cochains f = (tau, jm)
        mat = zeros(K, dims[q], dims[q - 1])
        for tau in bb.tuples(q - 1):
            for jm in range(M.dim):
                colv = [K.zero] * dims[q]
                mvec = [K.one if t == jm else K.zero for t in range(M.dim)]
                col = flat_c(tau, jm)
                # (df)(a1..aq): a1 . f(a2..aq) when (a2..aq) = tau
                for j1 in range(bb.wdim):
                    out = M.act_left(bb.lift(j1), mvec)
                    newtup = (j1,) + tau
                    for km, c in enumerate(out):
                        if c != K.zero:
                            colv[flat_c(newtup, km)] = K.add(
                                colv[flat_c(newtup, km)], c)
                # inner: (-1)^i f(.. a_i a_{i+1} ..): for each position i and
                # each pair (x, y) whose product has a component on tau[i-1]
                for i in range(1, q):
                    sign = K.one if i % 2 == 0 else K.neg(K.one)
                    for x in range(bb.wdim):
                        lx = bb.lift(x)
                        for y in range(bb.wdim):
                            prod = bb.project(R.mul(lx, bb.lift(y)))
                            c = prod[tau[i - 1]]
                            if c == K.zero:
                                continue
                            newtup = tau[:i - 1] + (x, y) + tau[i:]
                            colv[flat_c(newtup, jm)] = K.add(
                                colv[flat_c(newtup, jm)], K.mul(sign, c))
                # last: (-1)^q f(a1..a_{q-1}) . a_q when (a1..a_{q-1}) = tau
                sign = K.one if q % 2 == 0 else K.neg(K.one)
                for jq in range(bb.wdim):
                    out = M.act_right(mvec, bb.lift(jq))
                    newtup = tau + (jq,)
                    for km, c in enumerate(out):
                        if c != K.zero:
                            colv[flat_c(newtup, km)] = K.add(
                                colv[flat_c(newtup, km)], K.mul(sign, c))
                for r, c in enumerate(colv):
                    if c != K.zero:
                        mat[r][col] = c
        diffs[q] = mat
    # validate d.d = 0
    for q in range(2, max_q + 1):
        prod = matmul(K, diffs[q], diffs[q - 1])
        if any(c != K.zero for row in prod for c in row):
            raise InvalidInput(f"cochain d.d != 0 at {q}")
    return ChainComplex(K, dims, diffs), bb


def homology_dims_of_complex(cc, max_q, cochain=False):
    """Betti-style dims; for cochains d[q]: C^{q-1} -> C^q."""
    K = cc.field
    out = []
    rk = {}
    for q in range(1, min(max_q + 1, cc.top) + 1):
        rk[q] = rank(K, cc.d[q]) if cc.dims[q] and cc.dims[q - 1] else 0
    for q in range(max_q + 1):
        if not cochain:
            r_in = rk.get(q, 0)
            r_out = rk.get(q + 1, 0)
        else:
            r_in = rk.get(q + 1, 0)   # d^q: C^q -> C^{q+1} stored at q+1
            r_out = rk.get(q, 0)      # d^{q-1}: C^{q-1} -> C^q
        out.append(cc.dims[q] - r_in - r_out)
    return out


class HomologyData:
    def __init__(self, K, dim_space, cycles_reps, boundary_quotient, hbasis):
        self.K = K
        self.dim_space = dim_space
        self.reps = cycles_reps            # cycle vectors in C_q
        self.quotient = boundary_quotient  # C_q / boundaries
        self.hbasis = hbasis               # projections of reps
        self.dim = len(cycles_reps)

    def express(self, cycle_vec):
        """Coefficients of a cycle in the homology basis."""
        qv = self.quotient.project(cycle_vec)
        if not self.hbasis:
            if any(c != self.K.zero for c in qv):
                raise InvalidInput("vector not in the homology span")
            return []
        coords = solve(self.K, transpose(self.hbasis), qv)
        if coords is None:
            raise InvalidInput("vector not in the homology span")
        return coords


def homology_data(K, dim_q, d_in, d_out):
    """Representative-level homology at one degree: d_in: C_q -> C_{q-1}
    (None for q = 0 or zero map), d_out: C_{q+1} -> C_q (None if absent)."""
    if d_in is not None and any(any(c != K.zero for c in row) for row in d_in):
        cycles = nullspace(K, d_in, dim_q)
    else:
        cycles = [list(r) for r in identity(K, dim_q)]
    bsub = Subspace(K, dim_q)
    if d_out is not None:
        for col in transpose(d_out):
            bsub.add(col)
    quot = QuotientSpace(K, dim_q, bsub)
    reps, hbasis = [], []
    hsub = Subspace(K, quot.dim)
    for c in cycles:
        p = quot.project(c)
        if hsub.add(p):
            reps.append(c)
            hbasis.append(p)
    return HomologyData(K, dim_q, reps, quot, hbasis)


# ---------------------------------------------------------------------------
# free resolutions and Tor / Ext


class FreeResolution:
    """X <- F_0 <- F_1 <- ... with F_q = R^{ranks[q]}; gen_images[0] lives
    in X, gen_images[q] (q >= 1) in kappa^{ranks[q-1] * dim R}."""

    def __init__(self, R, module, side, ranks, gen_images):
        self.R = R
        self.module = module
        self.side = side
        self.ranks = ranks
        self.gen_images = gen_images

    def boundary_matrix(self, q):
        """The kappa-matrix of d_q: F_q -> F_{q-1} (q >= 1) or of the
        augmentation (q = 0)."""
        R = self.R
        K = R.field
        d = R.dim
        tgt_dim = self.module.dim if q == 0 else self.ranks[q - 1] * d
        cols = []
        for img in self.gen_images[q]:
            for i in range(d):
                b = R.basis_vector(i)
                if q == 0:
                    col = self.module.act_right(img, b) if self.side == "right" \
                        else self.module.act_left(b, img)
                else:
                    col = _free_act(R, img, b, self.side)
                cols.append(col)
        if not cols:
            return [[] for _ in range(tgt_dim)]
        return transpose(cols)


def _free_act(R, vec, b, side):
    """Blockwise action of the algebra element b on R^r."""
    K = R.field
    d = R.dim
    out = []
    for k in range(0, len(vec), d):
        block = vec[k:k + d]
        if side == "right":
            out.extend(R.mul(block, b))
        else:
            out.extend(R.mul(b, block))
    return out


def _submodule_generators(R, vectors, side, r, fat=False):
    """Greedy module generators of the span-closure of `vectors` inside
    R^r (kappa-dim r * dim R)."""
    K = R.field
    N = r * R.dim
    if fat:
        return [list(v) for v in vectors]
    span = Subspace(K, N)
    gens = []
    basis_elements = [R.basis_vector(i) for i in range(R.dim)]
    for v in vectors:
        if span.contains(v):
            continue
        gens.append(list(v))
        work = [list(v)]
        span.add(v)
        while work:
            w = work.pop()
            for b in basis_elements:
                u = _free_act(R, w, b, side)
                if span.add(u):
                    work.append(u)
    return gens


def free_resolution(R, module, side, length, style="greedy"):
    """A free resolution of `module` (left or right R-module) of the given
    length (boundaries available for q <= length).  style: greedy | fat |
    greedy_reversed (a second, genuinely different resolution)."""
    K = R.field
    d = R.dim
    m = module.dim
    # step 0: generators of the module itself
    basis = [list(v) for v in identity(K, m)]
    if style == "greedy_reversed":
        cand0 = list(reversed(basis))
    else:
        cand0 = basis
    span = Subspace(K, m)
    gens0 = []
    for v in cand0:
        if span.contains(v):
            continue
        gens0.append(v)
        work = [v]
        span.add(v)
        while work:
            w = work.pop()
            for i in range(d):
                b = R.basis_vector(i)
                u = module.act_right(w, b) if side == "right" \
                    else module.act_left(b, w)
                if span.add(u):
                    work.append(u)
    ranks = [len(gens0)]
    gen_images = [gens0]
    res = FreeResolution(R, module, side, ranks, gen_images)
    prev = res.boundary_matrix(0)
    if rank(K, prev) != m:
        raise InvalidInput("augmentation not surjective")
    for q in range(1, length + 1):
        ker = nullspace(K, prev, ranks[q - 1] * d)
        if style == "greedy_reversed":
            ker = list(reversed(ker))
        gens = _submodule_generators(R, ker, side, ranks[q - 1],
                                     fat=(style == "fat"))
        ranks.append(len(gens))
        gen_images.append(gens)
        mat = res.boundary_matrix(q)
        # d.d = 0 on the generators (hence everywhere: these are module maps)
        for w in gens:
            if any(matvec(K, prev, w)):
                raise InvalidInput(f"d.d != 0 at degree {q}")
        # exactness gate: image of d_q spans exactly ker(d_{q-1})
        if len(ker) and rank(K, mat) != len(ker):
            raise InvalidInput(f"resolution not exact at degree {q}")
        prev = mat
    return res


def _blocks_of(vec, d):
    return [vec[k:k + d] for k in range(0, len(vec), d)]


def tor_dims(R, X_right, Y_left, max_n, style="greedy", resolution=None):
    """dim Tor_n^R(X, Y) for n <= max_n; a precomputed right resolution of
    X may be supplied (it must reach degree max_n + 1)."""
    K = R.field
    res = resolution if resolution is not None else \
        free_resolution(R, X_right, "right", max_n + 1, style=style)
    assert len(res.ranks) >= max_n + 2
    mY = Y_left.dim
    rk = {}
    for q in range(1, max_n + 2):
        # boundary Y^{r_q} -> Y^{r_{q-1}}
        rows = res.ranks[q - 1] * mY
        cols = []
        for img in res.gen_images[q]:
            blocks = _blocks_of(img, R.dim)
            for iy in range(mY):
                yv = [K.one if t == iy else K.zero for t in range(mY)]
                col = [K.zero] * rows
                for k, w in enumerate(blocks):
                    out = Y_left.act_left(w, yv)
                    for t, c in enumerate(out):
                        if c != K.zero:
                            col[k * mY + t] = K.add(col[k * mY + t], c)
                cols.append(col)
        rk[q] = rank(K, transpose(cols)) if cols else 0
    dims = []
    for n in range(max_n + 1):
        dims.append(res.ranks[n] * mY - rk.get(n, 0) - rk.get(n + 1, 0))
    return dims


def ext_dims(R, X_left, Y_left, max_n, style="greedy", resolution=None):
    """dim Ext^n_R(X, Y) for n <= max_n (projective resolution of X)."""
    K = R.field
    res = resolution if resolution is not None else \
        free_resolution(R, X_left, "left", max_n + 1, style=style)
    assert len(res.ranks) >= max_n + 2
    mY = Y_left.dim
    rk = {}
    for q in range(1, max_n + 2):
        # delta: Y^{r_{q-1}} -> Y^{r_q}, f.d(u_j) = sum_k w_k . f(u_k)
        rows = res.ranks[q] * mY
        mat = zeros(K, rows, res.ranks[q - 1] * mY)
        for j, img in enumerate(res.gen_images[q]):
            blocks = _blocks_of(img, R.dim)
            for k, w in enumerate(blocks):
                L = Y_left.left_matrix_of(w)
                for a in range(mY):
                    for b in range(mY):
                        c = L[a][b]
                        if c != K.zero:
                            mat[j * mY + a][k * mY + b] = K.add(
                                mat[j * mY + a][k * mY + b], c)
        rk[q] = rank(K, mat)
    dims = []
    for n in range(max_n + 1):
        dims.append(res.ranks[n] * mY - rk.get(n, 0) - rk.get(n + 1, 0))
    return dims


# ---------------------------------------------------------------------------
# Hochschild (co)homology


def hochschild_homology_bar(R, M, max_n, normalized=True, cap=DEFAULT_CHAIN_CAP):
    cc, _ = bar_complex(R, M, max_n + 1, normalized=normalized, cap=cap)
    return homology_dims_of_complex(cc, max_n)


def env_resolution(R, length, style="greedy"):
    """(R^e, free resolution of R as a left R^e-module)."""
    env = enveloping(R)
    R_as_left = ModuleData(env, R.dim,
                           left=_env_left_regular(env, R), name="R over R^e")
    return env, free_resolution(env, R_as_left, "left", length, style=style)


def hochschild_homology_resolution(R, M, max_n, style="greedy", env_res=None):
    """H_n(R, M) = Tor_n^{R^e}(M, R) via a free resolution of R as a left
    R^e-module, tensored with M as a right R^e-module."""
    env, res = env_res if env_res is not None else \
        env_resolution(R, max_n + 1, style=style)
    M_right = bimodule_to_right_env_module(env, R, M)
    X = ModuleData(env, M.dim, right=M_right.right, name="M right R^e")
    K = R.field
    mX = M.dim
    rk = {}
    for q in range(1, max_n + 2):
        # M (x)_{R^e} F_q -> M (x)_{R^e} F_{q-1}: u_j (x) m has image
        # sum_k w_k u_k (x) m = sum_k u_k (x) ... for LEFT free modules the
        # tensor with a right module gives  m (x) u_j -> sum_k m.w_k (x) u_k
        rows = res.ranks[q - 1] * mX
        cols = []
        for img in res.gen_images[q]:
            blocks = _blocks_of(img, env.dim)
            for im in range(mX):
                mv = [K.one if t == im else K.zero for t in range(mX)]
                col = [K.zero] * rows
                for k, w in enumerate(blocks):
                    out = X.act_right(mv, w)
                    for t, c in enumerate(out):
                        if c != K.zero:
                            col[k * mX + t] = K.add(col[k * mX + t], c)
                cols.append(col)
        rk[q] = rank(K, transpose(cols)) if cols else 0
    return [res.ranks[n] * mX - rk.get(n, 0) - rk.get(n + 1, 0)
            for n in range(max_n + 1)]


def _env_left_regular(env, R):
    """Left action matrices of R^e on R: (a (x) b).x = a x b."""
    K = R.field
    d = R.dim
    out = []
    for i in range(d):
        Li = R.left_mult_matrix(R.basis_vector(i))
        for j in range(d):
            Rj = R.right_mult_matrix(R.basis_vector(j))
            out.append(matmul(K, Li, Rj))
    return out


def hochschild_cohomology_bar(R, M, max_n, normalized=True,
                              cap=DEFAULT_CHAIN_CAP):
    cc, _ = cobar_complex(R, M, max_n + 1, normalized=normalized, cap=cap)
    return homology_dims_of_complex(cc, max_n, cochain=True)


def hochschild_cohomology_resolution(R, M, max_n, style="greedy",
                                     env_res=None):
    """H^n(R, M) = Ext^n_{R^e}(R, M)."""
    env, res = env_res if env_res is not None else \
        env_resolution(R, max_n + 1, style=style)
    M_left = bimodule_to_left_env_module(env, R, M)
    R_as_left = ModuleData(env, R.dim, left=_env_left_regular(env, R))
    return ext_dims(env, R_as_left,
                    ModuleData(env, M.dim, left=M_left.left), max_n,
                    style=style, resolution=res)


def partial_homology_dims(kpar_algebra, B_right, X_left, max_n,
                          style="greedy", resolution=None):
    return tor_dims(kpar_algebra, B_right, X_left, max_n, style=style,
                    resolution=resolution)


def partial_cohomology_dims(kpar_algebra, B_left, X_left, max_n,
                            style="greedy", resolution=None):
    return ext_dims(kpar_algebra, B_left, X_left, max_n, style=style,
                    resolution=resolution)


# ---------------------------------------------------------------------------
# the diagonal action on Hochschild chains of A


class GModuleOnChains:
    """A chain (or cochain) complex with one matrix per group element and
    degree, gated by equivariance and the partial-representation relations."""

    def __init__(self, complex_, action, sigma_pattern, cochain=False):
        self.complex = complex_
        self.action = action            # action[g][q] = matrix on C_q
        self.sigma_pattern = sigma_pattern
        self.cochain = cochain

    def gate(self, group):
        K = self.complex.field
        rep = ValidationReport("chain-level diagonal action")
        top = len(self.action[0]) - 1
        # equivariance with the differential
        for g in range(len(self.action)):
            for q in range(1, top + 1):
                dq = self.complex.d[q]
                if not self.cochain:
                    lhs = matmul(K, dq, self.action[g][q])
                    rhs = matmul(K, self.action[g][q - 1], dq)
                else:
                    lhs = matmul(K, dq, self.action[g][q - 1])
                    rhs = matmul(K, self.action[g][q], dq)
                if lhs != rhs:
                    rep.fail("equivariance", g, q)
        # partial representation relations with the given idempotent pattern
        sigma = self.sigma_pattern
        inv, mul = group.inv, group.mul
        for q in range(top + 1):
            n = self.complex.dims[q]
            idm = identity(K, n)
            if self.action[0][q] != idm:
                rep.fail("unit action", q)
            for g in range(group.n):
                Tg = self.action[g][q]
                Tgi = self.action[inv(g)][q]
                for h in range(group.n):
                    Th = self.action[h][q]
                    gh = mul(g, h)
                    Tgh = self.action[gh][q]
                    Thi = self.action[inv(h)][q]
                    s = sigma(g, h)
                    lhs = matmul(K, Tgi, matmul(K, Tg, Th))
                    rhs = [[K.mul(s, c) for c in row]
                           for row in matmul(K, Tgi, Tgh)]
                    if lhs != rhs:
                        rep.fail("left relation", g, h, q)
                    lhs2 = matmul(K, matmul(K, Tg, Th), Thi)
                    rhs2 = [[K.mul(s, c) for c in row]
                            for row in matmul(K, Tgh, Thi)]
                    if lhs2 != rhs2:
                        rep.fail("right relation", g, h, q)
                    if s == K.zero:
                        z = zeros(K, n, n)
                        if matmul(K, Tgi, Tgh) != z or matmul(K, Tgh, Thi) != z:
                            rep.fail("zero relation", g, h, q)
        return rep


def _crossed_action_matrices(lam, M, xi):
    """Per group element: the matrix of a -> theta_g(1_{g^-1} a) on A and of
    m -> xi(g) (1_g d_g) m (1_{g^-1} d_{g^-1}) on M."""
    theta = lam.theta
    A = theta.algebra
    K = A.field
    G = lam.group
    AG, MG = [], []
    for g in range(G.n):
        AG.append([row[:] for row in theta.action.theta[g]])
        lm = M.left_matrix_of(lam.one_delta(g))
        rm = M.right_matrix_of(lam.one_delta(G.inv(g)))
        mat = matmul(K, lm, rm)
        MG.append([[K.mul(xi(g), c) for c in row] for row in mat])
    return AG, MG


def m_as_a_bimodule(lam, M):
    """Restrict a Lambda-bimodule to an A-bimodule through a -> a delta_1."""
    A = lam.theta.algebra
    left = [M.left_matrix_of(lam.embed_a(A.basis_vector(i)))
            for i in range(A.dim)]
    right = [M.right_matrix_of(lam.embed_a(A.basis_vector(i)))
            for i in range(A.dim)]
    MA = ModuleData(A, M.dim, left=left, right=right, name=f"{M.name}|A")
    MA.validate().raise_if_failed()
    return MA


def diagonal_chain_action(lam, M, xi, sigma_dd, max_q, group=None,
                          cap=DEFAULT_CHAIN_CAP):
    """T_g(m, a1..aq) = ([g].m, [g].a1, ..., [g].aq) on the full bar complex
    of A with coefficients in M; hard-gated."""
    group = group or lam.group
    A = lam.theta.algebra
    K = A.field
    MA = m_as_a_bimodule(lam, M)
    cc, bb = bar_complex(A, MA, max_q, normalized=False, cap=cap)
    AG, MG = _crossed_action_matrices(lam, M, xi)
    action = []
    for g in range(group.n):
        mats = []
        for q in range(max_q + 1):
            T = MG[g]
            for _ in range(q):
                T = kron(K, T, AG[g])
            mats.append(T)
        action.append(mats)
    gmod = GModuleOnChains(cc, action, sigma_dd)
    rep = gmod.gate(group)
    if not rep.ok:
        raise EquivarianceFailure(f"chain action gate failed: {rep.violations[:5]}")
    return gmod, bb


def diagonal_cochain_action(lam, M, xi, sigma_dd, max_q, group=None,
                            cap=DEFAULT_CHAIN_CAP):
    """(T_g f)(a1..aq) = [g].f([g^-1].a1, ..., [g^-1].aq) on the full
    Hochschild cochain complex of A with coefficients in M; hard-gated."""
    group = group or lam.group
    A = lam.theta.algebra
    K = A.field
    MA = m_as_a_bimodule(lam, M)
    cc, bb = cobar_complex(A, MA, max_q, normalized=False, cap=cap)
    AG, MG = _crossed_action_matrices(lam, M, xi)
    action = []
    for g in range(group.n):
        mats = []
        AGt = transpose(AG[group.inv(g)])
        for q in range(max_q + 1):
            # basis of C^q is (tuple, im): tuple-major, M-minor
            T = identity(K, 1)
            for _ in range(q):
                T = kron(K, T, AGt)
            T = kron(K, T, MG[g])
            mats.append(T)
        action.append(mats)
    gmod = GModuleOnChains(cc, action, sigma_dd, cochain=True)
    rep = gmod.gate(group)
    if not rep.ok:
        raise EquivarianceFailure(f"cochain action gate failed: {rep.violations[:5]}")
    return gmod, bb


def induced_action_on_homology(gmod, q, target_algebra, group,
                               annihilator_vectors=None):
    """The module structure on H_q induced by an equivariant chain action,
    returned as a validated left ModuleData over a monomial group algebra
    (kappa_par G or kappa_par^{sigma''} G, passed as the ktw object)."""
    cc = gmod.complex
    K = cc.field
    d_in = cc.d.get(q) if q >= 1 else None
    d_out = cc.d.get(q + 1)
    hd = homology_data(K, cc.dims[q], d_in, d_out)
    gen_mats = {}
    for g in range(group.n):
        mono = target_algebra.monoid.gen(g)
        if not target_algebra.is_alive(mono):
            continue
        cols = []
        for rep_vec in hd.reps:
            img = matvec(K, gmod.action[g][q], rep_vec)
            cols.append(hd.express(img))
        gen_mats[target_algebra.position[mono]] = transpose(cols) if cols else []
    mod = module_from_generator_actions(target_algebra.algebra, hd.dim,
                                        gen_mats, side="left")
    mod.validate().raise_if_failed()
    if annihilator_vectors:
        z = zeros(K, hd.dim, hd.dim)
        for v in annihilator_vectors:
            if mod.left_matrix_of(v) != z:
                raise EquivarianceFailure(
                    "ker(zeta) does not annihilate the homology module")
    return hd, mod


def induced_action_on_cohomology(gmod, q, target_algebra, group,
                                 annihilator_vectors=None):
    """Dual of induced_action_on_homology for a cochain GModuleOnChains."""
    cc = gmod.complex
    K = cc.field
    d_in = cc.d.get(q + 1)       # d^q: C^q -> C^{q+1}
    d_out = cc.d.get(q)          # d^{q-1}: C^{q-1} -> C^q
    hd = homology_data(K, cc.dims[q], d_in, d_out)
    gen_mats = {}
    for g in range(group.n):
        mono = target_algebra.monoid.gen(g)
        if not target_algebra.is_alive(mono):
            continue
        cols = []
        for rep_vec in hd.reps:
            img = matvec(K, gmod.action[g][q], rep_vec)
            cols.append(hd.express(img))
        gen_mats[target_algebra.position[mono]] = transpose(cols) if cols else []
    mod = module_from_generator_actions(target_algebra.algebra, hd.dim,
                                        gen_mats, side="left")
    mod.validate().raise_if_failed()
    if annihilator_vectors:
        z = zeros(K, hd.dim, hd.dim)
        for v in annihilator_vectors:
            if mod.left_matrix_of(v) != z:
                raise EquivarianceFailure(
                    "ker(zeta) does not annihilate the cohomology module")
    return hd, mod


def hom_A_carrier(lam, M):
    """Basis of Hom_{A^e}(A, M) as matrices A -> M, for M a Lambda-bimodule
    restricted to A."""
    A = lam.theta.algebra
    MA = m_as_a_bimodule(lam, M)
    env = enveloping(A)
    return hom_over_algebra(
        env,
        ModuleData(env, A.dim, left=_env_left_regular(env, A)),
        ModuleData(env, M.dim,
                   left=bimodule_to_left_env_module(env, A, MA).left))


def hom_A_module_structure(lam, M, xi, ktw_dd, group=None):
    """The kappa_par^{sigma''} G-module structure on Hom_{A^e}(A, M):
    ([g].f)(a) = xi(g) [g]'.f([g^-1].a)."""
    group = group or lam.group
    A = lam.theta.algebra
    K = A.field
    carrier = hom_A_carrier(lam, M)
    AG, MG = _crossed_action_matrices(lam, M, xi)
    span = Subspace(K, M.dim * A.dim)

    def flatten(F):
        return [F[r][c] for r in range(M.dim) for c in range(A.dim)]

    for F in carrier:
        span.add(flatten(F))
    gen_mats = {}
    for g in range(group.n):
        mono = ktw_dd.monoid.gen(g)
        if not ktw_dd.is_alive(mono):
            continue
        cols = []
        for F in carrier:
            img = matmul(K, MG[g], matmul(K, F, AG[group.inv(g)]))
            coords = solve(K, transpose([flatten(F2) for F2 in carrier]),
                           flatten(img))
            if coords is None:
                raise EquivarianceFailure("action leaves Hom_{A^e}(A, M)")
            cols.append(coords)
        gen_mats[ktw_dd.position[mono]] = transpose(cols) if cols else []
    mod = module_from_generator_actions(ktw_dd.algebra, len(carrier),
                                        gen_mats, side="left")
    mod.validate().raise_if_failed()
    return carrier, mod
