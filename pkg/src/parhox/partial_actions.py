"""Unital twisted partial actions, crossed products, and the translation
between partial projective representations and partial actions.

A unital partial action stores, per group element g, the central idempotent
1_g generating the ideal D_g and the map theta_g as a full d x d matrix
that vanishes off D_{g^-1} and lands in D_g.  The crossed product has basis
pairs (g, ideal basis vector of D_g) and the product rule

    (a delta_g)(b delta_h) = sigma(g,h) . a theta_g(1_{g^-1} b) 1_{gh} delta_{gh}.
"""

from .errors import (AssociativityFailure, InvalidInput, NotCovariant,
                     NotARepresentation, PropertyFailure, ValidationFailure)
from .algebras import (AlgebraHom, StructureAlgebra, ValidationReport,
                       subalgebra_generated)
from .factor_sets import validate_twist
from .linalg import Subspace, matvec, solve, transpose

__all__ = [
    "UnitalPartialAction", "TwistedPartialAction", "CrossedProductAlgebra",
    "PartialProjRepresentation", "validate_partial_action", "validate_twisted",
    "build_crossed_product", "gamma_sigma", "induced_idempotents",
    "induced_partial_action", "validate_covariant", "pi_times_gamma",
    "transport_by_equivalence", "check_ideal_splittings",
]


class UnitalPartialAction:
    def __init__(self, algebra, one, theta):
        self.algebra = algebra
        self.one = [list(v) for v in one]        # 1_g as vectors in A
        self.theta = [[row[:] for row in m] for m in theta]
        if len(theta) != len(one):
            raise InvalidInput("need one idempotent and one map per group element")
        self._ideal_bases = None

    def ideal_basis(self, g):
        """Echelonized basis of D_g = 1_g . A."""
        if self._ideal_bases is None:
            A = self.algebra
            K = A.field
            bases = []
            for h in range(len(self.one)):
                span = Subspace(K, A.dim)
                for j in range(A.dim):
                    span.add(A.mul(self.one[h], A.basis_vector(j)))
                bases.append(span.basis())
            self._ideal_bases = bases
        return self._ideal_bases[g]

    def apply_theta(self, g, vec):
        return matvec(self.algebra.field, self.theta[g], vec)


class TwistedPartialAction:
    def __init__(self, action, sigma):
        self.action = action
        self.sigma = sigma
        self.algebra = action.algebra
        self.group = sigma.group

    @property
    def one(self):
        return self.action.one

    def apply_theta(self, g, vec):
        return self.action.apply_theta(g, vec)


def validate_partial_action(action, group):
    """All the unital partial action axioms, on ideal bases."""
    A = action.algebra
    K = A.field
    rep = ValidationReport("partial action")
    n = group.n
    if len(action.one) != n:
        rep.fail("arity", len(action.one), n)
        return rep
    # central idempotents
    for g in range(n):
        e = action.one[g]
        if A.mul(e, e) != e:
            rep.fail("1_g not idempotent", g)
        for j in range(A.dim):
            b = A.basis_vector(j)
            if A.mul(e, b) != A.mul(b, e):
                rep.fail("1_g not central", g, j)
    if action.one[0] != A.unit:
        rep.fail("D_1 != A")
    from .linalg import identity as _identity
    if action.theta[0] != _identity(K, A.dim):
        rep.fail("theta_1 != id")
    inv = group.inv
    mul = group.mul
    for g in range(n):
        ginv = inv(g)
        e_g, e_ginv = action.one[g], action.one[ginv]
        th = action.theta[g]
        # vanishes off D_{g^-1}: theta_g(x) = theta_g(1_{g^-1} x)
        for j in range(A.dim):
            b = A.basis_vector(j)
            if action.apply_theta(g, b) != action.apply_theta(g, A.mul(e_ginv, b)):
                rep.fail("theta_g not supported on D_{g^-1}", g, j)
        # lands in D_g and is multiplicative there; unity transport
        for u in action.ideal_basis(ginv):
            tu = action.apply_theta(g, u)
            if A.mul(e_g, tu) != tu:
                rep.fail("theta_g does not land in D_g", g)
            for v in action.ideal_basis(ginv):
                tv = action.apply_theta(g, v)
                if action.apply_theta(g, A.mul(u, v)) != A.mul(tu, tv):
                    rep.fail("theta_g not multiplicative", g)
        # theta_g : D_{g^-1} -> D_g bijective
        dim_src = len(action.ideal_basis(ginv))
        img = Subspace(K, A.dim)
        for u in action.ideal_basis(ginv):
            img.add(action.apply_theta(g, u))
        if img.dim != dim_src or dim_src != len(action.ideal_basis(g)):
            rep.fail("theta_g not an isomorphism onto D_g", g)
        for h in range(n):
            # theta_g(1_{g^-1} 1_h) = 1_g 1_{gh}
            lhs = action.apply_theta(g, A.mul(e_ginv, action.one[h]))
            rhs = A.mul(e_g, action.one[mul(g, h)])
            if lhs != rhs:
                rep.fail("unity transport", g, h)
            # theta_g(D_{g^-1} D_h) = D_g D_{gh}
            src = Subspace(K, A.dim)
            for u in action.ideal_basis(inv(g)):
                for v in action.ideal_basis(h):
                    src.add(action.apply_theta(g, A.mul(u, v)))
            tgt = Subspace(K, A.dim)
            for u in action.ideal_basis(g):
                for v in action.ideal_basis(mul(g, h)):
                    tgt.add(A.mul(u, v))
            if src.basis() != tgt.basis():
                rep.fail("ideal image", g, h)
            # composition on D_{h^-1} D_{(gh)^-1}
            gh = mul(g, h)
            dom = Subspace(K, A.dim)
            for u in action.ideal_basis(inv(h)):
                for v in action.ideal_basis(inv(gh)):
                    dom.add(A.mul(u, v))
            for a in dom.basis():
                if action.apply_theta(g, action.apply_theta(h, a)) != \
                   action.apply_theta(gh, a):
                    rep.fail("composition", g, h)
    return rep


def validate_twisted(theta, group=None):
    """Axioms for a kappa-based twist on top of a valid partial action."""
    group = group or theta.group
    action, sigma = theta.action, theta.sigma
    A = action.algebra
    K = A.field
    rep = validate_partial_action(action, group)
    n = group.n
    zero_vec = [K.zero] * A.dim
    support = [[A.mul(action.one[g], action.one[group.mul(g, h)]) != zero_vec
                for h in range(n)] for g in range(n)]
    triple = [[[A.mul(A.mul(action.one[g], action.one[group.mul(g, h)]),
                      action.one[group.mul(g, group.mul(h, t))]) != zero_vec
                for t in range(n)] for h in range(n)] for g in range(n)]
    rep.merge(validate_twist(sigma, support, triple))
    return rep


class CrossedProductAlgebra:
    """A *_Theta G as a StructureAlgebra with bookkeeping."""

    def __init__(self, theta, algebra, basis_index, dg_bases):
        self.theta = theta
        self.algebra = algebra               # the StructureAlgebra of Lambda
        self.basis_index = basis_index       # list of (g, local_index)
        self.dg_bases = dg_bases             # per g: list of vectors in A
        self.group = theta.group
        self._offsets = {}
        for pos, (g, li) in enumerate(basis_index):
            self._offsets.setdefault(g, {})[li] = pos

    @property
    def dim(self):
        return self.algebra.dim

    def delta(self, g, a_vec):
        """Element a delta_g of Lambda for a in D_g (given in A-coordinates)."""
        K = self.algebra.field
        basis = self.dg_bases[g]
        if not basis:
            if any(c != K.zero for c in a_vec):
                raise InvalidInput(f"nonzero coefficient outside D_{g}")
            return [K.zero] * self.dim
        coords = solve(K, transpose(basis), list(a_vec))
        if coords is None:
            raise InvalidInput(f"element not in D_{g}")
        out = [K.zero] * self.dim
        for li, c in enumerate(coords):
            out[self._offsets[g][li]] = c
        return out

    def embed_a(self, a_vec):
        return self.delta(0, a_vec)

    def component(self, vec, g):
        """The D_g-component of a Lambda element, in A-coordinates."""
        K = self.algebra.field
        out = [K.zero] * self.theta.algebra.dim
        for li, u in enumerate(self.dg_bases[g]):
            c = vec[self._offsets[g][li]]
            if c != K.zero:
                out = [K.add(o, K.mul(c, x)) for o, x in zip(out, u)]
        return out

    def one_delta(self, g):
        return self.delta(g, self.theta.one[g])


def build_crossed_product(theta, name=None, validate=True):
    """Construct Lambda = A *_Theta G; exhaustive associativity is a gate
    that reports invalid input (AssociativityFailure)."""
    action = theta.action
    sigma = theta.sigma
    group = theta.group
    A = action.algebra
    K = A.field
    dg_bases = [action.ideal_basis(g) for g in range(group.n)]
    basis_index = [(g, li) for g in range(group.n)
                   for li in range(len(dg_bases[g]))]
    pos = {bi: p for p, bi in enumerate(basis_index)}
    dim = len(basis_index)
    sc = {}
    for p1, (g, li) in enumerate(basis_index):
        a = dg_bases[g][li]
        for p2, (h, lj) in enumerate(basis_index):
            b = dg_bases[h][lj]
            s = sigma(g, h)
            if s == K.zero:
                continue
            gh = group.mul(g, h)
            w = A.mul(a, action.apply_theta(g, A.mul(action.one[group.inv(g)], b)))
            w = A.mul(w, action.one[gh])
            w = [K.mul(s, c) for c in w]
            if all(c == K.zero for c in w):
                continue
            coords = solve(K, transpose(dg_bases[gh]), w)
            if coords is None:
                raise InvalidInput("crossed product does not close")
            row = [(pos[(gh, lk)], c) for lk, c in enumerate(coords) if c != K.zero]
            if row:
                sc[(p1, p2)] = row
    unit = [K.zero] * dim
    unit_coords = solve(K, transpose(dg_bases[0]), A.unit)
    for li, c in enumerate(unit_coords):
        unit[pos[(0, li)]] = c
    labels = [f"d{g}[{li}]" for (g, li) in basis_index]
    alg = StructureAlgebra(K, dim, sc, unit, labels=labels,
                           name=name or f"{A.name}*{group.name}")
    if validate:
        rep = alg.validate()
        if not rep.ok:
            raise AssociativityFailure(
                "crossed product is not associative; the input twisted "
                f"partial action is invalid: {rep.violations[:3]}", rep)
    return CrossedProductAlgebra(theta, alg, basis_index, dg_bases)


class PartialProjRepresentation:
    """A map g -> Gamma(g) into a StructureAlgebra, with its factor set."""

    def __init__(self, target, gamma, sigma):
        self.target = target
        self.gamma = [list(v) for v in gamma]
        self.sigma = sigma
        self.group = sigma.group

    def __call__(self, g):
        return self.gamma[g]

    def validate(self, factor_set_property=True):
        R = self.target
        K = R.field
        G = self.group
        sigma = self.sigma
        rep = ValidationReport("partial projective representation")
        zero = [K.zero] * R.dim
        if self.gamma[0] != R.unit:
            rep.fail("Gamma(1) != 1")
        for g in range(G.n):
            ginv = G.inv(g)
            for h in range(G.n):
                gh = G.mul(g, h)
                left = R.mul(self.gamma[ginv], R.mul(self.gamma[g], self.gamma[h]))
                right = [K.mul(sigma(g, h), c)
                         for c in R.mul(self.gamma[ginv], self.gamma[gh])]
                if left != right:
                    rep.fail("left absorption", g, h)
                left2 = R.mul(R.mul(self.gamma[g], self.gamma[h]),
                              self.gamma[G.inv(h)])
                right2 = [K.mul(sigma(g, h), c)
                          for c in R.mul(self.gamma[gh], self.gamma[G.inv(h)])]
                if left2 != right2:
                    rep.fail("right absorption", g, h)
                if sigma.is_zero(g, h):
                    if R.mul(self.gamma[ginv], self.gamma[gh]) != zero:
                        rep.fail("zero relation left", g, h)
                    if R.mul(self.gamma[gh], self.gamma[G.inv(h)]) != zero:
                        rep.fail("zero relation right", g, h)
                if factor_set_property:
                    if (R.mul(self.gamma[g], self.gamma[h]) == zero) != \
                       sigma.is_zero(g, h):
                        rep.fail("factor set property", g, h)
        return rep

    def zero_pattern_equivalences(self):
        """Gamma(g^-1)Gamma(gh) = 0 <=> Gamma(g)Gamma(h) = 0 <=>
        Gamma(gh)Gamma(h^-1) = 0 for every pair."""
        R = self.target
        K = R.field
        G = self.group
        zero = [K.zero] * R.dim
        rep = ValidationReport("zero pattern equivalences")
        for g in range(G.n):
            for h in range(G.n):
                gh = G.mul(g, h)
                z1 = R.mul(self.gamma[G.inv(g)], self.gamma[gh]) == zero
                z2 = R.mul(self.gamma[g], self.gamma[h]) == zero
                z3 = R.mul(self.gamma[gh], self.gamma[G.inv(h)]) == zero
                if not (z1 == z2 == z3):
                    rep.fail("zero pattern", g, h)
        return rep


def gamma_sigma(crossed):
    """The canonical representation g -> 1_g delta_g inside Lambda."""
    theta = crossed.theta
    gamma = [crossed.one_delta(g) for g in range(crossed.group.n)]
    rep_obj = PartialProjRepresentation(crossed.algebra, gamma, theta.sigma)
    report = rep_obj.validate(factor_set_property=True)
    report.merge(rep_obj.zero_pattern_equivalences())
    report.raise_if_failed(NotARepresentation)
    return rep_obj


def induced_idempotents(rep):
    """e_g = Gamma(g) Gamma(g^-1) sigma(g^-1, g)^-1 (zero when the scalar
    vanishes), with the four commutation identities verified."""
    R = rep.target
    K = R.field
    G = rep.group
    sigma = rep.sigma
    es = []
    for g in range(G.n):
        s = sigma(G.inv(g), g)
        if s == K.zero:
            es.append([K.zero] * R.dim)
        else:
            prod = R.mul(rep.gamma[g], rep.gamma[G.inv(g)])
            si = K.inv(s)
            es.append([K.mul(si, c) for c in prod])
    report = ValidationReport("induced idempotents")
    for g in range(G.n):
        if R.mul(es[g], es[g]) != es[g]:
            report.fail("idempotent", g)
        for h in range(G.n):
            if R.mul(es[g], es[h]) != R.mul(es[h], es[g]):
                report.fail("commute", g, h)
            if R.mul(rep.gamma[g], es[h]) != R.mul(es[G.mul(g, h)], rep.gamma[g]):
                report.fail("left shift", g, h)
            if R.mul(es[h], rep.gamma[g]) != \
               R.mul(rep.gamma[g], es[G.mul(G.inv(g), h)]):
                report.fail("right shift", g, h)
    report.raise_if_failed(PropertyFailure)
    return es


def induced_partial_action(rep, validate=True):
    """The unital partial action on the subalgebra generated by the induced
    idempotents; returns (SubalgebraResult, UnitalPartialAction as matrices
    on the subalgebra basis)."""
    R = rep.target
    K = R.field
    G = rep.group
    sigma = rep.sigma
    es = induced_idempotents(rep)
    subres = subalgebra_generated(R, es, name="B^Gamma")
    B = subres.algebra
    basis = subres.basis_vectors
    one = []
    for g in range(G.n):
        coords = subres.to_sub_coords(es[g])
        assert coords is not None
        one.append(coords)
    thetas = []
    for g in range(G.n):
        ginv = G.inv(g)
        s = sigma(ginv, g)
        cols = []
        for bvec in basis:
            if s == K.zero:
                cols.append([K.zero] * B.dim)
                continue
            dom = R.mul(es[ginv], bvec)
            img = R.mul(rep.gamma[g], R.mul(dom, rep.gamma[ginv]))
            img = [K.mul(K.inv(s), c) for c in img]
            coords = subres.to_sub_coords(img)
            if coords is None:
                raise PropertyFailure("theta^Gamma leaves the subalgebra")
            cols.append(coords)
        thetas.append(transpose(cols))
    act = UnitalPartialAction(B, one, thetas)
    if validate:
        report = validate_partial_action(act, G)
        report.raise_if_failed()
        tw = TwistedPartialAction(act, sigma)
        validate_twisted(tw, G).raise_if_failed()
    return subres, act


def validate_covariant(pi, rep, theta, group):
    """pi: A -> R algebra hom, rep a partial sigma-representation on R;
    checks Gamma(g) pi(a) Gamma(g^-1) = sigma(g, g^-1) pi(theta_g(a)) for a
    in an ideal basis of D_{g^-1}."""
    R = rep.target
    K = R.field
    sigma = rep.sigma
    report = ValidationReport("covariant representation")
    for g in range(group.n):
        ginv = group.inv(g)
        for a in theta.action.ideal_basis(ginv):
            lhs = R.mul(rep.gamma[g], R.mul(pi.apply(a), rep.gamma[ginv]))
            rhs = [K.mul(sigma(g, ginv), c)
                   for c in pi.apply(theta.apply_theta(g, a))]
            if lhs != rhs:
                report.fail("covariance", g)
                break
    return report


def pi_times_gamma(pi, rep, crossed):
    """The hom Lambda -> R determined by a delta_g -> pi(a) Gamma(g)."""
    R = rep.target
    K = R.field
    report = validate_covariant(pi, rep, crossed.theta, crossed.group)
    report.raise_if_failed(NotCovariant)
    cols = []
    for (g, li) in crossed.basis_index:
        a = crossed.dg_bases[g][li]
        cols.append(R.mul(pi.apply(a), rep.gamma[g]))
    hom = AlgebraHom(crossed.algebra, R, transpose(cols), name="pi x Gamma")
    hom.verify().raise_if_failed(NotCovariant)
    return hom


def transport_by_equivalence(theta_rho, eta, validate=True):
    """Replace the twist rho by its eta-transport nu and return the
    isomorphism  A *_{theta,nu} G -> A *_{theta,rho} G,
    a delta_g^nu -> eta(g) a delta_g^rho."""
    nu = eta.transport(theta_rho.sigma)
    theta_nu = TwistedPartialAction(theta_rho.action, nu)
    if validate:
        validate_twisted(theta_nu).raise_if_failed()
    lam_rho = build_crossed_product(theta_rho, validate=validate)
    lam_nu = build_crossed_product(theta_nu, validate=validate)
    K = theta_rho.algebra.field
    cols = []
    for (g, li) in lam_nu.basis_index:
        a = lam_nu.dg_bases[g][li]
        img = lam_rho.delta(g, a)
        cols.append([K.mul(eta(g), c) for c in img])
    hom = AlgebraHom(lam_nu.algebra, lam_rho.algebra, transpose(cols),
                     name="eta transport")
    if validate:
        hom.verify().raise_if_failed()
        if not hom.is_bijective():
            raise ValidationFailure("eta transport is not bijective")
    return theta_nu, lam_nu, lam_rho, hom


def check_ideal_splittings(theta):
    """A = D_g + (1 - 1_g)A directly, per group element (projectivity of
    each D_g as a one-sided A-module)."""
    A = theta.algebra
    K = A.field
    rep = ValidationReport("ideal splittings")
    for g in range(theta.group.n):
        e = theta.one[g]
        comp = [K.sub(a, b) for a, b in zip(A.unit, e)]
        span = Subspace(K, A.dim)
        d1 = 0
        for u in theta.action.ideal_basis(g):
            span.add(u)
        d1 = span.dim
        d2 = 0
        comp_span = Subspace(K, A.dim)
        for j in range(A.dim):
            comp_span.add(A.mul(comp, A.basis_vector(j)))
        d2 = comp_span.dim
        for u in comp_span.basis():
            span.add(u)
        if d1 + d2 != A.dim or span.dim != A.dim:
            rep.fail("splitting", g, d1, d2)
    return rep
