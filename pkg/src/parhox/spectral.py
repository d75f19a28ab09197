"""Assembly of the second spectral-sequence pages and the full battery of
identity / isomorphism / collapse / bound checks run on an Instance.

The spectral differentials are never constructed; what is machine-checked
is every computable consequence: the two collapse isomorphisms, the
Tor-form bridge, the structural identities, and the subquotient dimension
bound sum(dim E2_{p,q}, p+q = n) >= dim H_n(Lambda, M), with equality
required on separable instances.
"""

from .errors import SizeLimit
from .algebras import (ModuleData, bimodule_to_left_env_module,
                       commutator_quotient, enveloping, group_algebra,
                       hom_over_algebra, regular_bimodule,
                       restrict_along_hom, tensor_over_algebra)
from .homology import (_crossed_action_matrices, _env_left_regular,
                       diagonal_chain_action, diagonal_cochain_action,
                       env_resolution, free_resolution,
                       hochschild_cohomology_bar,
                       hochschild_cohomology_resolution,
                       hochschild_homology_bar,
                       hochschild_homology_resolution,
                       hom_A_module_structure, induced_action_on_cohomology,
                       induced_action_on_homology, m_as_a_bimodule,
                       partial_cohomology_dims, partial_homology_dims,
                       tor_dims)
from .linalg import matmul, matvec, rank, solve, transpose
__all__ = [
    "E2Page", "SpectralCheckReport", "assemble_E2_homology",
    "assemble_E2_cohomology", "tor_form_consistency",
    "collapse_check_separable", "collapse_check_maclane",
    "structural_identity_suite", "dimension_bound_check",
    "hochschild_oracle_check", "run_all_checks",
]


class E2Page:
    def __init__(self, orientation, entries, skipped=None):
        self.orientation = orientation           # homological | cohomological
        self.entries = entries                   # dict (p, q) -> dim
        self.skipped = skipped or set()

    def entry(self, p, q):
        return self.entries.get((p, q))

    def max_p(self):
        return max(p for (p, _) in self.entries) if self.entries else -1

    def max_q(self):
        return max(q for (_, q) in self.entries) if self.entries else -1

    def to_json(self):
        return {"orientation": self.orientation,
                "entries": {f"{p},{q}": d for (p, q), d in
                            sorted(self.entries.items())},
                "skipped": sorted(f"{p},{q}" for (p, q) in self.skipped)}


class SpectralCheckReport:
    def __init__(self, instance_name):
        self.instance = instance_name
        self.checks = []                         # (name, status, detail)

    def record(self, name, ok, detail=""):
        self.checks.append((name, "pass" if ok else "fail", detail))

    def skip(self, name, reason):
        self.checks.append((name, "skipped", reason))

    @property
    def ok(self):
        return all(status != "fail" for (_, status, _) in self.checks)

    def to_json(self):
        return {"instance": self.instance,
                "scope": "spectral differentials d_r are not constructed; "
                         "verification is via collapse isomorphisms, the "
                         "Tor-form bridge, and subquotient dimension bounds",
                "checks": [{"name": n, "status": s, "detail": str(d)}
                           for (n, s, d) in self.checks],
                "ok": self.ok}


# ---------------------------------------------------------------------------
# E2 pages


def homology_module_tower(inst, max_q):
    """H_q(A, M) for q <= max_q with both the kappa_par G and the
    kappa_par^{sigma''} G module structures (cached on the instance)."""
    for key, value in inst._cache.items():
        if isinstance(key, tuple) and key[0] == "hq_tower" and key[1] >= max_q:
            return value
    cap = inst._cache.get("chain_cap", 200_000)
    gmod, _ = diagonal_chain_action(inst.lam, inst.M, inst.xi, inst.sigma_dd,
                                    max_q + 1, cap=cap)
    ann = inst.ker_zeta_in_kpar()
    tower = []
    for q in range(max_q + 1):
        hd, mod_kpar = induced_action_on_homology(gmod, q, inst.kpar,
                                                  inst.group,
                                                  annihilator_vectors=ann)
        _, mod_ksdd = induced_action_on_homology(gmod, q, inst.ksdd,
                                                 inst.group)
        tower.append((hd, mod_kpar, mod_ksdd))
    inst._cache[("hq_tower", max_q)] = (gmod, tower)
    return gmod, tower


def cohomology_module_tower(inst, max_q):
    for key, value in inst._cache.items():
        if isinstance(key, tuple) and key[0] == "hq_cotower" and key[1] >= max_q:
            return value
    cap = inst._cache.get("chain_cap", 200_000)
    gmod, _ = diagonal_cochain_action(inst.lam, inst.M, inst.xi,
                                      inst.sigma_dd, max_q + 1, cap=cap)
    ann = inst.ker_zeta_in_kpar()
    tower = []
    for q in range(max_q + 1):
        hd, mod_kpar = induced_action_on_cohomology(gmod, q, inst.kpar,
                                                    inst.group,
                                                    annihilator_vectors=ann)
        tower.append((hd, mod_kpar))
    inst._cache[("hq_cotower", max_q)] = (gmod, tower)
    return gmod, tower


def _cached_resolution(inst, key, builder, length):
    for k, v in inst._cache.items():
        if isinstance(k, tuple) and k[0] == key and k[1] >= length:
            return v
    res = builder(length)
    inst._cache[(key, length)] = res
    return res


def b_right_resolution(inst, length):
    return _cached_resolution(
        inst, "res_B_right",
        lambda l: free_resolution(inst.kpar.algebra, inst.b_right_over_kpar(),
                                  "right", l), length)


def b_left_resolution(inst, length):
    return _cached_resolution(
        inst, "res_B_left",
        lambda l: free_resolution(inst.kpar.algebra, inst.b_left_over_kpar(),
                                  "left", l), length)


def bsig_right_resolution(inst, length):
    def build(l):
        _, bs_right, _ = inst.bsig_modules_over_ksdd()
        Bs = ModuleData(inst.ksdd.algebra, bs_right.dim, right=bs_right.right)
        return free_resolution(inst.ksdd.algebra, Bs, "right", l)
    return _cached_resolution(inst, "res_Bsig_right", build, length)


def omega_right_resolution(inst, length):
    def build(l):
        om = inst.omega_right_over_kpar()
        Om = ModuleData(inst.kpar.algebra, om.dim, right=om.right)
        return free_resolution(inst.kpar.algebra, Om, "right", l)
    return _cached_resolution(inst, "res_Omega_right", build, length)


def lam_env_resolution(inst, length):
    return _cached_resolution(
        inst, "res_lam_env",
        lambda l: env_resolution(inst.lam.algebra, l), length)


def base_env_resolution(inst, length):
    return _cached_resolution(
        inst, "res_A_env",
        lambda l: env_resolution(inst.theta.algebra, l), length)


def assemble_E2_homology(inst, max_p, max_q):
    """E2_{p,q} = H_p^par(G, H_q(A, M))."""
    _, tower = homology_module_tower(inst, max_q)
    B_right = inst.b_right_over_kpar()
    res = b_right_resolution(inst, max_p + 1)
    entries = {}
    skipped = set()
    for q in range(max_q + 1):
        hd, mod_kpar, _ = tower[q]
        X = ModuleData(inst.kpar.algebra, hd.dim, left=mod_kpar.left)
        try:
            dims = partial_homology_dims(inst.kpar.algebra, B_right, X, max_p,
                                         resolution=res)
        except SizeLimit:
            for p in range(max_p + 1):
                skipped.add((p, q))
            continue
        for p in range(max_p + 1):
            entries[(p, q)] = dims[p]
    return E2Page("homological", entries, skipped)


def assemble_E2_cohomology(inst, max_p, max_q):
    """E2^{p,q} = H^p_par(G, H^q(A, M))."""
    _, tower = cohomology_module_tower(inst, max_q)
    B_left = inst.b_left_over_kpar()
    res = b_left_resolution(inst, max_p + 1)
    entries = {}
    skipped = set()
    for q in range(max_q + 1):
        hd, mod_kpar = tower[q]
        X = ModuleData(inst.kpar.algebra, hd.dim, left=mod_kpar.left)
        try:
            dims = partial_cohomology_dims(inst.kpar.algebra, B_left, X, max_p,
                                           resolution=res)
        except SizeLimit:
            for p in range(max_p + 1):
                skipped.add((p, q))
            continue
        for p in range(max_p + 1):
            entries[(p, q)] = dims[p]
    return E2Page("cohomological", entries, skipped)


# ---------------------------------------------------------------------------
# the checks


def tor_form_consistency(inst, report, max_p=2, max_q=1):
    """Tor_p^{ksdd}(B^sigma, X) = H_p^par(G, Omega (x)_{kpar} X) for
    X = H_q(A, M), dimensionwise; plus the degree-0 identity."""
    _, tower = homology_module_tower(inst, max_q)
    bs_left, bs_right, _ = inst.bsig_modules_over_ksdd()
    Bs_right = ModuleData(inst.ksdd.algebra, bs_right.dim,
                          right=bs_right.right)
    B_right = inst.b_right_over_kpar()
    om = inst.omega_right_over_kpar()
    Om_right = ModuleData(inst.kpar.algebra, om.dim, right=om.right)
    K = inst.field
    ok_all = True
    details = []
    for q in range(max_q + 1):
        hd, mod_kpar, mod_ksdd = tower[q]
        X_ksdd = ModuleData(inst.ksdd.algebra, hd.dim, left=mod_ksdd.left)
        lhs = tor_dims(inst.ksdd.algebra, Bs_right, X_ksdd, max_p,
                       resolution=bsig_right_resolution(inst, max_p + 1))
        # Omega (x)_{kpar} X with its left kpar structure r.(w (x) x) = rw (x) x
        X_kpar = ModuleData(inst.kpar.algebra, hd.dim, left=mod_kpar.left)
        T = tensor_over_algebra(inst.kpar.algebra, Om_right, X_kpar)
        om_alg = inst.omega.algebra
        mx = hd.dim
        left_mats = []
        for r in range(inst.kpar.dim):
            img_in_omega = inst.omega.projection.apply(
                inst.kpar.algebra.basis_vector(r))
            L = om_alg.left_mult_matrix(img_in_omega)

            def amb(vec, L=L):
                out = [K.zero] * len(vec)
                for idx, c in enumerate(vec):
                    if c == K.zero:
                        continue
                    iw, ix = idx // mx, idx % mx
                    for t in range(om.dim):
                        a = L[t][iw]
                        if a != K.zero:
                            out[t * mx + ix] = K.add(out[t * mx + ix],
                                                     K.mul(c, a))
                return out
            left_mats.append(T.map_on_quotient(amb))
        OX = ModuleData(inst.kpar.algebra, T.dim, left=left_mats)
        OX.validate().raise_if_failed()
        rhs = partial_homology_dims(inst.kpar.algebra, B_right, OX, max_p,
                                    resolution=b_right_resolution(inst,
                                                                  max_p + 1))
        details.append((q, lhs, rhs))
        if lhs != rhs:
            ok_all = False
    report.record("tor-form bridge", ok_all, details)
    # degree-0 identity: dim B^sigma (x)_{ksdd} X = dim B (x)_{kpar} (Omega (x) X)
    hd, mod_kpar, mod_ksdd = tower[0]
    X_ksdd = ModuleData(inst.ksdd.algebra, hd.dim, left=mod_ksdd.left)
    lhs0 = tensor_over_algebra(inst.ksdd.algebra, Bs_right, X_ksdd).dim
    X_kpar = ModuleData(inst.kpar.algebra, hd.dim, left=mod_kpar.left)
    T0 = tensor_over_algebra(inst.kpar.algebra, Om_right, X_kpar)
    om_alg = inst.omega.algebra
    mx0 = hd.dim
    left0 = []
    for r in range(inst.kpar.dim):
        L = om_alg.left_mult_matrix(
            inst.omega.projection.apply(inst.kpar.algebra.basis_vector(r)))

        def amb0(vec, L=L):
            out = [K.zero] * len(vec)
            for idx, c in enumerate(vec):
                if c == K.zero:
                    continue
                iw, ix = idx // mx0, idx % mx0
                for t in range(om.dim):
                    a = L[t][iw]
                    if a != K.zero:
                        out[t * mx0 + ix] = K.add(out[t * mx0 + ix],
                                                  K.mul(c, a))
            return out
        left0.append(T0.map_on_quotient(amb0))
    OX0 = ModuleData(inst.kpar.algebra, T0.dim, left=left0)
    rhs0 = tensor_over_algebra(inst.kpar.algebra, B_right, OX0).dim
    report.record("tor-form degree 0", lhs0 == rhs0, (lhs0, rhs0))
    return ok_all


def lemma_B_tensor_omega(inst, report):
    """B (x)_{kpar} Omega = B^sigma as right kpar-modules (explicit map)."""
    K = inst.field
    B_right = inst.b_right_over_kpar()
    om = inst.omega_right_over_kpar()
    T = tensor_over_algebra(inst.kpar.algebra, B_right,
                            ModuleData(inst.kpar.algebra, om.dim, left=om.left))
    bs_left, bs_right, _ = inst.bsig_modules_over_ksdd()
    epi = inst.kpar_to_ksdd()
    bs_right_kpar = restrict_along_hom(
        epi, ModuleData(inst.ksdd.algebra, bs_right.dim, right=bs_right.right))
    B_alg = inst.bsig.zeta.source
    pure_images = []
    for ib in range(B_alg.dim):
        zb = inst.bsig.zeta.apply(B_alg.basis_vector(ib))
        row = []
        for io in range(inst.omega.algebra.dim):
            m = inst.omega.surviving[io]
            row.append(bs_right_kpar.act_right(zb,
                                               inst.kpar.monomial_vector(m)))
        pure_images.append(row)
    try:
        M = T.map_from(pure_images, inst.bsig.algebra.dim)
    except Exception as exc:
        report.record("B (x) Omega = B^sigma", False, str(exc))
        return False
    ok = (T.dim == inst.bsig.algebra.dim
          and rank(K, M) == inst.bsig.algebra.dim)
    # right module map over kpar
    my = om.dim
    for r in range(inst.kpar.dim):
        if not ok:
            break
        rv = inst.kpar.algebra.basis_vector(r)
        act = om.right_matrix_of(rv)

        def amb(vec, act=act):
            out = [K.zero] * len(vec)
            for idx, c in enumerate(vec):
                if c == K.zero:
                    continue
                ib, io = idx // my, idx % my
                for t in range(my):
                    a = act[t][io]
                    if a != K.zero:
                        out[ib * my + t] = K.add(out[ib * my + t], K.mul(c, a))
            return out
        act_T = T.map_on_quotient(amb)
        if matmul(K, M, act_T) != matmul(K, bs_right_kpar.right_matrix_of(rv), M):
            ok = False
    report.record("B (x) Omega = B^sigma", ok,
                  f"dims {T.dim} = {inst.bsig.algebra.dim}")
    return ok


def omega_flatness_spot_check(inst, report, max_n=1):
    """Tor_1^{kpar}(Omega, X) = 0 for the sample modules in the pipeline."""
    om = inst.omega_right_over_kpar()
    Om_right = ModuleData(inst.kpar.algebra, om.dim, right=om.right)
    B_left = inst.b_left_over_kpar()
    samples = [("B", ModuleData(inst.kpar.algebra, B_left.dim,
                                left=B_left.left))]
    _, tower = homology_module_tower(inst, 1)
    for q, (hd, mod_kpar, _) in enumerate(tower):
        samples.append((f"H_{q}(A,M)",
                        ModuleData(inst.kpar.algebra, hd.dim,
                                   left=mod_kpar.left)))
    ok = True
    details = []
    om_res = omega_right_resolution(inst, max_n + 1)
    for name, X in samples:
        dims = tor_dims(inst.kpar.algebra, Om_right, X, max_n,
                        resolution=om_res)
        details.append((name, dims))
        if any(d != 0 for d in dims[1:]):
            ok = False
    report.record("Omega flatness Tor_1 = 0", ok, details)
    return ok


def hochschild_oracle_check(inst, report, max_n=2):
    """Bar and resolution route Hochschild dims agree for Lambda and for A."""
    lam_alg = inst.lam.algebra
    env_res = lam_env_resolution(inst, max_n + 1)
    bar = hochschild_homology_bar(lam_alg, inst.M, max_n)
    res = hochschild_homology_resolution(lam_alg, inst.M, max_n,
                                         env_res=env_res)
    ok = bar == res
    report.record("Hochschild dual route (homology)", ok, (bar, res))
    barc = hochschild_cohomology_bar(lam_alg, inst.M, max_n)
    resc = hochschild_cohomology_resolution(lam_alg, inst.M, max_n,
                                            env_res=env_res)
    okc = barc == resc
    report.record("Hochschild dual route (cohomology)", okc, (barc, resc))
    MA = m_as_a_bimodule(inst.lam, inst.M)
    A = inst.theta.algebra
    a_env_res = base_env_resolution(inst, max_n + 1)
    bara = hochschild_homology_bar(A, MA, max_n)
    resa = hochschild_homology_resolution(A, MA, max_n, env_res=a_env_res)
    oka = bara == resa
    report.record("Hochschild dual route (base algebra)", oka, (bara, resa))
    return ok and okc and oka, bar, barc


def collapse_check_separable(inst, report, max_n=2, hoch_dims=None):
    """A separable: dim H_n(Lambda, M) = dim H_n^par(G, M/[A, M])."""
    if inst.separability() is None:
        report.skip("separable collapse", "A admits no separability idempotent")
        return None
    lam_alg = inst.lam.algebra
    lhs = hoch_dims if hoch_dims is not None else \
        hochschild_homology_bar(lam_alg, inst.M, max_n)
    _, tower = homology_module_tower(inst, 0)
    hd0, mod0, _ = tower[0]
    X0 = ModuleData(inst.kpar.algebra, hd0.dim, left=mod0.left)
    rhs = partial_homology_dims(inst.kpar.algebra, inst.b_right_over_kpar(),
                                X0, max_n,
                                resolution=b_right_resolution(inst, max_n + 1))
    ok = lhs[:max_n + 1] == rhs[:max_n + 1]
    report.record("separable collapse (homology)", ok, (lhs, rhs))
    return ok


def collapse_check_separable_cohomology(inst, report, max_n=2, hoch_dims=None):
    if inst.separability() is None:
        report.skip("separable collapse (cohomology)",
                    "A admits no separability idempotent")
        return None
    lam_alg = inst.lam.algebra
    lhs = hoch_dims if hoch_dims is not None else \
        hochschild_cohomology_bar(lam_alg, inst.M, max_n)
    _, tower = cohomology_module_tower(inst, 0)
    hd0, mod0 = tower[0]
    X0 = ModuleData(inst.kpar.algebra, hd0.dim, left=mod0.left)
    rhs = partial_cohomology_dims(inst.kpar.algebra, inst.b_left_over_kpar(),
                                  X0, max_n,
                                  resolution=b_left_resolution(inst, max_n + 1))
    ok = lhs[:max_n + 1] == rhs[:max_n + 1]
    report.record("separable collapse (cohomology)", ok, (lhs, rhs))
    return ok


def collapse_check_maclane(inst, report, max_n=2):
    """On universal instances (A = B^sigma): the MacLane-type isomorphism
    dims H_n(kpar^sigma G, M) = H_n^par(G, M/[B, M]); on trivial sigma the
    classical specialization H_*(kpar G, M) = H_*(kG, M) for a G-module M."""
    if not inst.universal:
        report.skip("MacLane collapse", "instance has an external action")
        return None
    # Lambda = B^sigma * G = kpar^sigma G via the verified Phi/Psi pair, so
    # the Hochschild side may be computed on kpar^sigma G itself.
    ks_reg = regular_bimodule(inst.ks.algebra)
    lhs = hochschild_homology_bar(inst.ks.algebra, ks_reg, max_n)
    lam_side = hochschild_homology_bar(inst.lam.algebra, inst.M, max_n)
    report.record("MacLane: kpar^sigma G = B^sigma * G Hochschild dims",
                  lhs == lam_side, (lhs, lam_side))
    ok = collapse_check_separable(inst, report, max_n=max_n,
                                  hoch_dims=lam_side)
    K = inst.field
    trivial = all(inst.sigma(g, h) == K.one
                  for g in range(inst.group.n) for h in range(inst.group.n))
    if trivial:
        kg = group_algebra(K, inst.group)
        from .algebras import AlgebraHom
        cols = []
        for m in inst.kpar.surviving:
            _, g = inst.monoid.elements[m]
            col = [K.zero] * inst.group.n
            col[g] = K.one
            cols.append(col)
        quo = AlgebraHom(inst.kpar.algebra, kg, transpose(cols),
                         name="kpar->>kG")
        quo.verify().raise_if_failed()
        Mg = restrict_along_hom(quo, regular_bimodule(kg))
        lhs_par = hochschild_homology_bar(inst.kpar.algebra, Mg, max_n)
        rhs_g = hochschild_homology_bar(kg, regular_bimodule(kg), max_n)
        report.record("classical MacLane specialization", lhs_par == rhs_g,
                      (lhs_par, rhs_g))
        ok = ok and (lhs_par == rhs_g)
    return ok


def dimension_bound_check(inst, report, page, hoch, max_n=2,
                          orientation="homological"):
    """sum_{p+q=n} dim E2_{p,q} >= dim H_n(Lambda, M); equality required on
    separable instances, recorded as collapse-consistent otherwise."""
    separable = inst.separability() is not None
    ok = True
    rows = []
    for n in range(max_n + 1):
        touched = [(p, n - p) for p in range(n + 1)]
        if any(t in page.skipped for t in touched):
            report.skip(f"dimension bound n={n} ({orientation})",
                        "a contributing entry was skipped")
            continue
        total = sum(page.entry(p, n - p) or 0 for p in range(n + 1))
        target = hoch[n]
        status = total >= target
        if separable and total != target:
            status = False
        rows.append((n, total, target,
                     "collapse-consistent" if total == target else "strict"))
        if not status:
            ok = False
    report.record(f"dimension bound ({orientation})", ok, rows)
    return ok


def structural_identity_suite(inst, report):
    """Exact checks of the bimodule identities connecting Lambda, B^sigma
    and the twisted partial group algebras."""
    K = inst.field
    G = inst.group
    A = inst.theta.algebra
    lam = inst.lam
    M = inst.M
    AG, MG = _crossed_action_matrices(lam, M, inst.xi)
    MA = m_as_a_bimodule(lam, M)

    # (a-i) e_g . a = 1_g a on A
    ok = True
    for g in range(G.n):
        eg = matmul(K, AG[g], AG[G.inv(g)])
        mult = A.left_mult_matrix(inst.theta.one[g])
        if eg != mult:
            ok = False
    report.record("e_g.a = 1_g a on A", ok)

    # (a-ii) e_g . x = 1_g x 1_g on M
    ok = True
    for g in range(G.n):
        eg = matmul(K, MG[g], MG[G.inv(g)])
        one_g = lam.embed_a(inst.theta.one[g])
        mult = matmul(K, M.left_matrix_of(one_g), M.right_matrix_of(one_g))
        if eg != mult:
            ok = False
    report.record("e_g.x = 1_g x 1_g on M", ok)

    # (a-iii) e_g^sigma (x) y = 1 (x) e_g''.y in B^sigma (x)_{ksdd} Y
    bs_left, bs_right, iota = inst.bsig_modules_over_ksdd()
    Bs_right = ModuleData(inst.ksdd.algebra, bs_right.dim, right=bs_right.right)
    Y = regular_bimodule(inst.ksdd.algebra)
    Yl = ModuleData(inst.ksdd.algebra, Y.dim, left=Y.left)
    T = tensor_over_algebra(inst.ksdd.algebra, Bs_right, Yl)
    ok = True
    unit_b = inst.bsig.algebra.unit
    for g in range(G.n):
        e_sig = inst.bsig.e_coords[g]
        e_dd = inst.ksdd.e_vector(g)
        for iy in range(Y.dim):
            yv = [K.one if t == iy else K.zero for t in range(Y.dim)]
            lhs = T.pure(e_sig, yv)
            rhs = T.pure(unit_b, Yl.act_left(e_dd, yv))
            if lhs != rhs:
                ok = False
    report.record("e_g^s (x) y = 1 (x) e_g''.y", ok)

    # (a-iv) e_g.(a (x) x) = a (x) e_g.x = e_g.a (x) x in A (x)_{A^e} M
    env = enveloping(A)
    right = []
    for i in range(A.dim):
        for j in range(A.dim):
            right.append(matmul(K, A.left_mult_matrix(A.basis_vector(i)),
                                A.right_mult_matrix(A.basis_vector(j))))
    A_right = ModuleData(env, A.dim, right=right)
    M_left = bimodule_to_left_env_module(env, A, MA)
    TA = tensor_over_algebra(env, A_right,
                             ModuleData(env, M.dim, left=M_left.left))
    ok = True
    for g in range(G.n):
        Ae = matmul(K, AG[g], AG[G.inv(g)])
        Me = matmul(K, MG[g], MG[G.inv(g)])
        for ia in range(A.dim):
            av = A.basis_vector(ia)
            eg_a = matvec(K, Ae, av)
            for im in range(M.dim):
                mv = [K.one if t == im else K.zero for t in range(M.dim)]
                eg_m = matvec(K, Me, mv)
                diag = TA.pure(eg_a, eg_m)
                if diag != TA.pure(av, eg_m) or diag != TA.pure(eg_a, mv):
                    ok = False
    report.record("e_g.(a (x) x) identities", ok)

    # (b) + (e): phi: Lambda -> B^sigma (x)_{B''} Lambda, a Lambda-bimodule
    # isomorphism; the bimodule axioms of X (x)_{B''} Lambda are validated.
    bdd_alg, lam_bsdd = inst.lambda_as_bsdd()
    bs_right_bdd = []
    for i in range(bdd_alg.dim):
        v = bdd_alg.basis_vector(i)
        bs_right_bdd.append(inst.bsig.algebra.right_mult_matrix(
            iota.apply(v)))
    Bs_right_bdd = ModuleData(bdd_alg, inst.bsig.algebra.dim,
                              right=bs_right_bdd)
    Bs_right_bdd.validate().raise_if_failed()
    TL = tensor_over_algebra(bdd_alg, Bs_right_bdd,
                             ModuleData(bdd_alg, lam.algebra.dim,
                                        left=lam_bsdd.left))
    phi_cols = [TL.pure(inst.bsig.algebra.unit, lam.algebra.basis_vector(i))
                for i in range(lam.algebra.dim)]
    phi_mat = transpose(phi_cols)
    ok_b = (TL.dim == lam.algebra.dim
            and rank(K, phi_mat) == lam.algebra.dim)
    # bimodule structure on B^sigma (x)_{B''} Lambda (X = B^sigma) and the
    # intertwining phi(u . l . v) = u . phi(l) . v
    my = lam.algebra.dim
    epi = inst.kpar_to_ksdd()
    bs_right_overksdd = ModuleData(inst.ksdd.algebra, bs_right.dim,
                                   right=bs_right.right)
    left_mats, right_mats = [], []
    for pos, (g, li) in enumerate(lam.basis_index):
        u = lam.algebra.basis_vector(pos)
        Lu = lam.algebra.left_mult_matrix(u)
        Ru = lam.algebra.right_mult_matrix(u)
        gen_mono = inst.ksdd.monoid.gen(G.inv(g))
        x_act = bs_right_overksdd.right_matrix_of(
            inst.ksdd.monomial_vector(gen_mono))

        def amb_left(vec, Lu=Lu, x_act=x_act):
            out = [K.zero] * len(vec)
            for idx, c in enumerate(vec):
                if c == K.zero:
                    continue
                ix, ic = idx // my, idx % my
                xcol = [x_act[t][ix] for t in range(inst.bsig.algebra.dim)]
                lcol = [Lu[t][ic] for t in range(my)]
                for t, a in enumerate(xcol):
                    if a == K.zero:
                        continue
                    for s, b in enumerate(lcol):
                        if b != K.zero:
                            out[t * my + s] = K.add(out[t * my + s],
                                                    K.mul(c, K.mul(a, b)))
            return out

        def amb_right(vec, Ru=Ru):
            out = [K.zero] * len(vec)
            for idx, c in enumerate(vec):
                if c == K.zero:
                    continue
                ix, ic = idx // my, idx % my
                for s in range(my):
                    b = Ru[s][ic]
                    if b != K.zero:
                        out[ix * my + s] = K.add(out[ix * my + s],
                                                 K.mul(c, b))
            return out
        left_mats.append(TL.map_on_quotient(amb_left))
        right_mats.append(TL.map_on_quotient(amb_right))
    TL_bimod = ModuleData(lam.algebra, TL.dim, left=left_mats,
                          right=right_mats)
    bimod_rep = TL_bimod.validate()
    ok_e = bimod_rep.ok
    for pos in range(lam.algebra.dim):
        u = lam.algebra.basis_vector(pos)
        if matmul(K, phi_mat, lam.algebra.left_mult_matrix(u)) != \
           matmul(K, left_mats[pos], phi_mat):
            ok_b = False
        if matmul(K, phi_mat, lam.algebra.right_mult_matrix(u)) != \
           matmul(K, right_mats[pos], phi_mat):
            ok_b = False
    report.record("phi: Lambda = B^sigma (x) Lambda (bimodule iso)", ok_b)
    report.record("X (x)_{B''} Lambda bimodule axioms", ok_e,
                  bimod_rep.violations[:3])

    # bimodule maps are automatically module maps for the conjugation
    # action; verified for the connecting map phi
    def conj_action(g, left_of, right_of):
        one_g = lam.one_delta(g)
        one_gi = lam.one_delta(G.inv(g))
        mat = matmul(K, left_of(one_g), right_of(one_gi))
        return [[K.mul(inst.xi(g), c) for c in row] for row in mat]

    def combine(mats, vec):
        out = None
        for pos, c in enumerate(vec):
            if not c:
                continue
            scaled = [[K.mul(c, x) for x in row] for row in mats[pos]]
            out = scaled if out is None else \
                [[K.add(a, b) for a, b in zip(ra, rb)]
                 for ra, rb in zip(out, scaled)]
        if out is None:
            n = len(mats[0])
            return [[K.zero] * n for _ in range(n)]
        return out

    ok_conj = True
    for g in range(G.n):
        act_lam = conj_action(g, lam.algebra.left_mult_matrix,
                              lam.algebra.right_mult_matrix)
        act_T = conj_action(g, lambda v: combine(left_mats, v),
                            lambda v: combine(right_mats, v))
        if matmul(K, phi_mat, act_lam) != matmul(K, act_T, phi_mat):
            ok_conj = False
    report.record("bimodule maps are ksdd-module maps (phi)", ok_conj)

    # (c) M/[Lambda, M] = B^sigma (x)_{ksdd} (A (x)_{A^e} M)
    _, tower = homology_module_tower(inst, 0)
    hd0, mod0_kpar, mod0_ksdd = tower[0]
    X0 = ModuleData(inst.ksdd.algebra, hd0.dim, left=mod0_ksdd.left)
    TF = tensor_over_algebra(inst.ksdd.algebra, Bs_right, X0)
    lamq = commutator_quotient(M)
    ok_c = TF.dim == lamq.dim
    if ok_c:
        # explicit composite map: w (x) cls(a (x) m) -> cls((w . a d_1) . m)
        pure_images = []
        for ib in range(inst.bsig.algebra.dim):
            w_amb = inst.bsig.to_ambient(
                inst.bsig.algebra.basis_vector(ib), inst.ks)
            row = []
            for ih in range(hd0.dim):
                rep_vec = hd0.reps[ih]     # cycle in C_0 = M
                # w acts through its B^sigma action on Lambda at delta_1;
                # on the A (x) M side the class of a (x) m maps to a.m, and
                # C_0 reps are already elements of M, so apply w via the
                # idempotent-multiplication action and project.
                acted = _bsig_act_on_m(inst, w_amb, rep_vec)
                row.append(lamq.project(acted))
            pure_images.append(row)
        try:
            F_mat = TF.map_from(pure_images, lamq.dim)
            ok_c = rank(K, F_mat) == lamq.dim
        except Exception as exc:
            ok_c = False
    report.record("M/[Lambda,M] = B^sigma (x) (A (x) M)", ok_c,
                  (TF.dim, lamq.dim))

    # (d) Hom_{Lambda^e}(Lambda, M) = Hom_{ksdd}(B^sigma, Hom_{A^e}(A, M))
    lam_env = enveloping(lam.algebra)
    W_basis = hom_over_algebra(
        lam_env,
        ModuleData(lam_env, lam.algebra.dim,
                   left=_env_left_regular(lam_env, lam.algebra)),
        ModuleData(lam_env, M.dim,
                   left=bimodule_to_left_env_module(lam_env, lam.algebra,
                                                    M).left))
    carrier, hom_mod = hom_A_module_structure(lam, M, inst.xi, inst.ksdd)
    Bs_left = ModuleData(inst.ksdd.algebra, bs_left.dim, left=bs_left.left)
    RHS_basis = hom_over_algebra(inst.ksdd.algebra, Bs_left,
                                 ModuleData(inst.ksdd.algebra, hom_mod.dim,
                                            left=hom_mod.left))
    ok_d = len(W_basis) == len(RHS_basis)
    if ok_d and W_basis:
        # gamma sends F to the map l -> (F(1_B)(1_A)) . l; compare spans
        unit_b_coords = inst.bsig.algebra.unit
        gamma_images = []
        for Fm in RHS_basis:
            c_coords = matvec(K, Fm, unit_b_coords)
            mvec = [K.zero] * M.dim
            for k, c in enumerate(c_coords):
                if c != K.zero:
                    hom_map = carrier[k]
                    val = matvec(K, hom_map, A.unit)
                    mvec = [K.add(a, K.mul(c, b)) for a, b in zip(mvec, val)]
            # the Lambda^e-hom determined by m: l -> m.l, flattened like
            # hom_over_algebra flattens (rows of the matrix Lambda -> M)
            Lm = M.left_matrix_of(lam.algebra.unit)
            # build the matrix: column l-basis -> m . l
            cols = [M.act_right(mvec, lam.algebra.basis_vector(i))
                    for i in range(lam.algebra.dim)]
            gamma_images.append(transpose(cols))
        # each gamma image must lie in the span of W_basis and the map must
        # be bijective
        def flat(mat):
            return [x for row in mat for x in row]
        Wspan = transpose([flat(w) for w in W_basis])
        coords_mat = []
        for img in gamma_images:
            sol = solve(K, Wspan, flat(img))
            if sol is None:
                ok_d = False
                break
            coords_mat.append(sol)
        if ok_d:
            ok_d = rank(K, transpose(coords_mat)) == len(W_basis)
    report.record("Hom_{L^e}(L,M) = Hom_{ksdd}(B^s, Hom_{A^e}(A,M))", ok_d,
                  (len(W_basis), len(RHS_basis)))
    return report


def _bsig_act_on_m(inst, w_amb, mvec):
    """Action of w in B^sigma on M via phi^-1: w . m means (w acting on
    Lambda at delta_1) applied to m -- concretely multiplication by the
    image of w under the idempotent embedding into Lambda."""
    K = inst.field
    A = inst.theta.algebra
    lam = inst.lam
    out = [K.zero] * len(mvec)
    for p, c in enumerate(w_amb):
        if c == K.zero:
            continue
        mask, g = inst.monoid.elements[inst.ks.surviving[p]]
        assert g == 0
        prod = A.unit
        for a in inst.monoid.mask_elements(mask):
            if a == 0:
                continue
            prod = A.mul(prod, inst.theta.one[a])
        acted = inst.M.act_left(lam.embed_a(prod), mvec)
        out = [K.add(o, K.mul(c, t)) for o, t in zip(out, acted)]
    return out


def degree_zero_formula_check(inst, report):
    """The induced degree-0 action on H_0 = M/[A,M] coincides with the
    tensor-side formula [g].(a (x) m) = [g].a (x) [g].m on A (x)_{A^e} M."""
    K = inst.field
    G = inst.group
    A = inst.theta.algebra
    M = inst.M
    _, tower = homology_module_tower(inst, 0)
    hd0, mod0, _ = tower[0]
    MA = m_as_a_bimodule(inst.lam, M)
    env = enveloping(A)
    right = []
    for i in range(A.dim):
        for j in range(A.dim):
            right.append(matmul(K, A.left_mult_matrix(A.basis_vector(i)),
                                A.right_mult_matrix(A.basis_vector(j))))
    A_right = ModuleData(env, A.dim, right=right)
    M_left = bimodule_to_left_env_module(env, A, MA)
    T = tensor_over_algebra(env, A_right,
                            ModuleData(env, M.dim, left=M_left.left))
    ok = T.dim == hd0.dim
    if ok:
        my = M.dim
        pure_images = []
        for ia in range(A.dim):
            avec = A.basis_vector(ia)
            row = []
            for im in range(M.dim):
                mvec = [K.one if t == im else K.zero for t in range(M.dim)]
                row.append(hd0.express(MA.act_left(avec, mvec)))
            pure_images.append(row)
        phi0 = T.map_from(pure_images, hd0.dim)
        ok = rank(K, phi0) == hd0.dim
        AG, MG = _crossed_action_matrices(inst.lam, M, inst.xi)
        for g in range(G.n):
            if not ok:
                break

            def amb_map(vec, g=g):
                out = [K.zero] * len(vec)
                for idx, c in enumerate(vec):
                    if not c:
                        continue
                    ia, im = idx // my, idx % my
                    for r in range(A.dim):
                        a = AG[g][r][ia]
                        if not a:
                            continue
                        for s in range(M.dim):
                            b = MG[g][s][im]
                            if b:
                                out[r * my + s] = K.add(
                                    out[r * my + s], K.mul(c, K.mul(a, b)))
                return out
            Tg_tensor = T.map_on_quotient(amb_map)
            Tg_h0 = mod0.left_matrix_of(
                inst.kpar.monomial_vector(inst.kpar.monoid.gen(g)))
            if matmul(K, phi0, Tg_tensor) != matmul(K, Tg_h0, phi0):
                ok = False
    report.record("degree-0 action matches tensor formula", ok,
                  (T.dim, hd0.dim))
    return ok


def run_all_checks(inst, max_p=2, max_q=2, max_n=2, deep_hochschild=None):
    """The complete verdict battery on one instance."""
    report = SpectralCheckReport(inst.name)
    if deep_hochschild is None:
        deep_hochschild = 3 if inst.lam.algebra.dim <= 6 else 2
    okh, hoch, hochc = hochschild_oracle_check(inst, report,
                                               max_n=deep_hochschild)
    # assemble the pages first so the chain-action towers are built once at
    # the largest degree and reused by every later check
    page = assemble_E2_homology(inst, max_p, max_q)
    pagec = assemble_E2_cohomology(inst, max_p, max_q)
    tor_form_consistency(inst, report, max_p=max_p, max_q=min(1, max_q))
    lemma_B_tensor_omega(inst, report)
    omega_flatness_spot_check(inst, report)
    collapse_check_separable(inst, report, max_n=max_n,
                             hoch_dims=hoch[:max_n + 1])
    collapse_check_separable_cohomology(inst, report, max_n=max_n,
                                        hoch_dims=hochc[:max_n + 1])
    collapse_check_maclane(inst, report, max_n=max_n)
    degree_zero_formula_check(inst, report)
    structural_identity_suite(inst, report)
    dimension_bound_check(inst, report, page, hoch, max_n=max_n,
                          orientation="homological")
    dimension_bound_check(inst, report, pagec, hochc, max_n=max_n,
                          orientation="cohomological")
    return report, page, pagec
