"""One fully-built verification instance: the group, the factor-set tower
sigma -> sigma* -> sigma' -> (xi, sigma''), the partial group algebras,
B^sigma / Omega, the twisted partial action with its crossed product, and
the coefficient bimodule.  Everything is validated at construction; the
spectral-sequence checks consume instances.
"""

from .errors import InvalidInput
from .algebras import (ModuleData, regular_bimodule, restrict_along_hom,
                       separability_idempotent)
from .factor_sets import (EquivalenceWitness, trivial_factor_set,
                          normalize_inverse_pairs, sigma_prime,
                          involution_star, xi_sigma_double_prime)
from .groups import enumerate_exel
from .partial_actions import (TwistedPartialAction, build_crossed_product,
                              check_ideal_splittings, gamma_sigma,
                              transport_by_equivalence, validate_twisted)
from .partial_algebras import (b_sigma_module_structures, build_B_sigma_omega,
                               build_kpar, build_kpar_idempotent,
                               build_kpar_sigma, check_defining_relations,
                               lambda_as_bsdd_module, monomial_projection_hom,
                               phi_psi_crossed_iso)

__all__ = ["Instance"]


class Instance:
    def __init__(self, name, field, group, sigma=None, theta=None,
                 module=None, validate=True, monoid_limit=512):
        """theta: a TwistedPartialAction or None (then the universal action
        on B^sigma is used); module: a Lambda-bimodule ModuleData or None
        (then the regular bimodule); sigma defaults to the trivial twist and
        must agree with theta.sigma when both are given."""
        self.name = name
        self.field = field
        self.group = group
        K = field
        G = group
        if theta is not None and sigma is None:
            sigma = theta.sigma
        if sigma is None:
            sigma = trivial_factor_set(G, K)
        if theta is not None and theta.sigma.table != sigma.table:
            raise InvalidInput("sigma disagrees with the twist of theta")
        self.monoid = enumerate_exel(G, size_limit=monoid_limit)
        # inverse-pair normalization (records the witness when nontrivial)
        self.eta = None
        transport_hom = None
        if not sigma.is_inverse_normalized():
            eta, nu, rep = normalize_inverse_pairs(sigma, want_square_roots=False)
            rep.raise_if_failed()
            self.eta = eta
            if theta is not None:
                theta, _, _, transport_hom = transport_by_equivalence(theta, eta)
            sigma = nu
        if transport_hom is not None and module is not None:
            module = restrict_along_hom(transport_hom, module)
        self.sigma = sigma
        self.sigma_star = involution_star(sigma)
        self.sigma_prime = sigma_prime(sigma)
        self.xi, self.sigma_dd = xi_sigma_double_prime(sigma)
        # partial group algebras
        self.kpar = build_kpar(G, K, monoid=self.monoid)
        self.ks = build_kpar_sigma(sigma, monoid=self.monoid)
        self.ksdd = build_kpar_idempotent(self.sigma_dd, monoid=self.monoid)
        if validate:
            check_defining_relations(self.ks).raise_if_failed()
            rep = self.ks.canonical_representation()
            rep.validate(factor_set_property=True).raise_if_failed()
        self.bsig, self.omega = build_B_sigma_omega(self.kpar, self.ks,
                                                    ksdd=self.ksdd)
        # the crossed product: universal on B^sigma unless an action is given
        self.universal = theta is None
        if theta is None:
            lam, phi, psi, subres, act = phi_psi_crossed_iso(self.ks)
            self.lam = lam
            self.phi, self.psi = phi, psi
            self.theta = lam.theta
        else:
            if validate:
                validate_twisted(theta, G).raise_if_failed()
            self.theta = theta
            self.lam = build_crossed_product(theta, validate=validate)
            self.phi = self.psi = None
        if validate:
            check_ideal_splittings(self.theta).raise_if_failed()
            gamma_sigma(self.lam)          # canonical rep gates
        self.M = module if module is not None \
            else regular_bimodule(self.lam.algebra)
        if self.M.dim and validate:
            self.M.validate().raise_if_failed()
        self._cache = {}

    # -- module structures ------------------------------------------------

    def b_right_over_kpar(self):
        """B with its untwisted right kappa_par G-module structure."""
        if "b_right" not in self._cache:
            K = self.field
            xi1 = EquivalenceWitness(self.group, K, [K.one] * self.group.n)
            left, right, _ = b_sigma_module_structures(self.kpar, self.kpar, xi1)
            self._cache["b_right"] = ModuleData(self.kpar.algebra, right.dim,
                                                right=right.right, name="B right")
            self._cache["b_left"] = ModuleData(self.kpar.algebra, left.dim,
                                               left=left.left, name="B left")
        return self._cache["b_right"]

    def b_left_over_kpar(self):
        self.b_right_over_kpar()
        return self._cache["b_left"]

    def bsig_modules_over_ksdd(self):
        """(left, right, iota) for B^sigma over kappa_par^{sigma''} G."""
        if "bsig_mods" not in self._cache:
            self._cache["bsig_mods"] = b_sigma_module_structures(
                self.ks, self.ksdd, self.xi, bsig=self.bsig)
        return self._cache["bsig_mods"]

    def kpar_to_ksdd(self):
        if "epi" not in self._cache:
            self._cache["epi"] = monomial_projection_hom(self.kpar, self.ksdd)
        return self._cache["epi"]

    def omega_right_over_kpar(self):
        if "omega_right" not in self._cache:
            om_reg = regular_bimodule(self.omega.algebra)
            om = restrict_along_hom(self.omega.projection, om_reg)
            self._cache["omega_right"] = om
        return self._cache["omega_right"]

    def ker_zeta_in_kpar(self):
        """ker(zeta) generators as vectors of kappa_par G."""
        K = self.field
        B_positions = self.kpar.idempotent_positions()
        out = []
        for kv in self.bsig.ker_zeta_basis:
            vec = [K.zero] * self.kpar.dim
            for i, c in enumerate(kv):
                vec[B_positions[i]] = c
            out.append(vec)
        return out

    def lambda_as_bsdd(self):
        if "lam_bsdd" not in self._cache:
            self._cache["lam_bsdd"] = lambda_as_bsdd_module(self.lam, self.ksdd)
        return self._cache["lam_bsdd"]

    def separability(self):
        if "sep" not in self._cache:
            self._cache["sep"] = separability_idempotent(self.theta.algebra)
        return self._cache["sep"]
