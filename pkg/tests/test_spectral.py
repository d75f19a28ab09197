from fractions import Fraction

import pytest

from conftest import (z2_dual_numbers, z2_global_twist, z2_universal,
                      z2xz2_partial_idempotent, z3_kappa2_action)
from parhox.fields import QQ, PrimeField
from parhox.groups import cyclic_group
from parhox.instance import Instance
from parhox.factor_sets import PartialFactorSet, trivial_factor_set
from parhox.spectral import (assemble_E2_cohomology, assemble_E2_homology,
                             collapse_check_maclane, collapse_check_separable,
                             dimension_bound_check, hochschild_oracle_check,
                             lemma_B_tensor_omega, run_all_checks,
                             SpectralCheckReport, structural_identity_suite,
                             tor_form_consistency)


def F(x, y=1):
    return Fraction(x, y)


def test_instance_universal_z2_trivial():
    inst = Instance("z2_trivial", QQ, cyclic_group(2))
    assert inst.universal
    assert inst.lam.algebra.dim == 3
    assert inst.M.dim == 3


def test_instance_z3_action():
    G, theta = z3_kappa2_action()
    inst = Instance("z3_kappa2", QQ, G, theta=theta)
    assert not inst.universal
    assert inst.lam.algebra.dim == 4
    assert inst.ks.dim == 5


def test_instance_normalizes_sigma():
    # sigma(t, t^2) = 4 gets transported to 1 with a recorded witness
    G = cyclic_group(3)
    o = QQ.one
    table = [[o, o, o], [o, QQ.zero, F(4)], [o, F(4), QQ.zero]]
    sigma = PartialFactorSet(G, QQ, table)
    inst = Instance("z3_unnormalized", QQ, G, sigma=sigma)
    assert inst.eta is not None
    assert inst.sigma(1, 2) == QQ.one


def test_e2_trivial_group():
    G = cyclic_group(1)
    inst = Instance("trivial", QQ, G)
    page = assemble_E2_homology(inst, 2, 2)
    # E2_{0,q} = H_q(A, M) and zero for p >= 1
    for p in range(1, 3):
        for q in range(3):
            assert page.entry(p, q) == 0
    assert page.entry(0, 0) == 1      # A = kappa, M = kappa


def test_e2_separable_row():
    G, theta = z3_kappa2_action()
    inst = Instance("z3_kappa2", QQ, G, theta=theta)
    page = assemble_E2_homology(inst, 2, 2)
    for q in (1, 2):
        for p in range(3):
            assert page.entry(p, q) == 0      # A separable: only q = 0 row


def test_full_suite_z3_kappa2_q():
    G, theta = z3_kappa2_action()
    inst = Instance("z3_kappa2_q", QQ, G, theta=theta)
    report, page, pagec = run_all_checks(inst)
    assert report.ok, report.to_json()


def test_full_suite_z3_kappa2_f3():
    G, theta = z3_kappa2_action(field=PrimeField(3))
    inst = Instance("z3_kappa2_f3", PrimeField(3), G, theta=theta)
    report, page, pagec = run_all_checks(inst)
    assert report.ok, report.to_json()
    assert page.entry(0, 0) is not None


def test_full_suite_z2_universal_trivial_q():
    inst = Instance("z2_trivial_q", QQ, cyclic_group(2))
    report, page, pagec = run_all_checks(inst)
    assert report.ok, report.to_json()


def test_full_suite_z2_universal_twist_q():
    G = cyclic_group(2)
    sigma = PartialFactorSet(G, QQ, [[QQ.one, QQ.one], [QQ.one, F(2)]])
    inst = Instance("z2_twist2_q", QQ, G, sigma=sigma)
    report, page, pagec = run_all_checks(inst)
    assert report.ok, report.to_json()


def test_full_suite_z2_universal_f2():
    F2 = PrimeField(2)
    inst = Instance("z2_trivial_f2", F2, cyclic_group(2))
    report, page, pagec = run_all_checks(inst)
    assert report.ok, report.to_json()
    # char 2: the partial homology column is nonvanishing (collapse is a
    # genuinely nontrivial equality here)
    assert any(page.entry(p, 0) for p in (1, 2))


def test_full_suite_z2_dual_numbers():
    G, theta = z2_dual_numbers()
    inst = Instance("z2_dual_q", QQ, G, theta=theta)
    report, page, pagec = run_all_checks(inst)
    assert report.ok, report.to_json()
    # A = k[x]/(x^2) is not separable: q >= 1 rows are nonzero
    assert any(page.entry(0, q) for q in (1, 2))
    skipped = [c for c in report.checks if c[1] == "skipped"]
    assert any("separable" in c[0] for c in skipped)


def test_full_suite_z2xz2_idempotent():
    G, theta = z2xz2_partial_idempotent()
    inst = Instance("v4_idem_q", QQ, G, theta=theta)
    report, page, pagec = run_all_checks(inst)
    assert report.ok, report.to_json()


def test_full_suite_global_twist_f7():
    F7 = PrimeField(7)
    G, theta = z2_global_twist(4, field=F7)
    inst = Instance("z2_global4_f7", F7, G, theta=theta)
    report, page, pagec = run_all_checks(inst)
    assert report.ok, report.to_json()


def test_dual_numbers_f2_has_strict_margin_possible():
    # char 2 + non-separable A: both directions nonzero; bound must hold
    F2 = PrimeField(2)
    G, theta = z2_dual_numbers(field=F2)
    inst = Instance("z2_dual_f2", F2, G, theta=theta)
    report, page, pagec = run_all_checks(inst)
    assert report.ok, report.to_json()
    assert any(page.entry(p, 0) for p in (1, 2))
    assert any(page.entry(0, q) for q in (1, 2))


def test_report_reproducible():
    G, theta = z3_kappa2_action()
    r1 = run_all_checks(Instance("x", QQ, G, theta=theta))[0].to_json()
    G2, theta2 = z3_kappa2_action()
    r2 = run_all_checks(Instance("x", QQ, G2, theta=theta2))[0].to_json()
    assert r1 == r2
