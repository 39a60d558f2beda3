"""Lattice-operator layer: R-matrix, generators, quantum determinant."""

import math

import pytest

from qnls import alcovefn, exppoly, oracle, wavefn, ybops
from qnls.wavefn import RapiditySet

GAMMA = 1.0
LENGTH = 10.0


def test_rmatrix_satisfies_yang_baxter():
    assert ybops.ybe_check(0.6, -0.3, GAMMA) < 1e-13
    assert ybops.ybe_check(1.2 + 0.4j, 0.1 - 0.2j, 0.7) < 1e-13


def test_multi_index_counts():
    assert len(ybops.multi_indices(2, 4)) == 12
    assert len(ybops.ordered_multi_indices(2, 4)) == 6
    assert ybops.multi_indices(0, 3) == [()]


def test_insert_ops_pin_boundary_coordinates():
    r = RapiditySet((0.6, -0.9), GAMMA, LENGTH)
    G = wavefn.prewavefunction(r)
    top = ybops.insert_top(G, LENGTH)
    bottom = ybops.insert_bottom(G, LENGTH)
    half = LENGTH / 2
    from qnls.symgroup import Permutation

    for x in alcovefn.sample_interior(1, 5, LENGTH):
        # pinning the last slot at +L/2 selects the alcove where that
        # slot is largest; pinning the first slot at -L/2, smallest
        side_top = Permutation((2, 1))
        side_bottom = Permutation((2, 1))
        assert abs(top.eval(x) - G.eval((x[0], half), side=side_top)) < 1e-12
        assert abs(bottom.eval(x) - G.eval((-half, x[0]), side=side_bottom)) < 1e-12


def test_transfer_is_sum_of_diagonal_generators():
    r = RapiditySet((0.7, -0.4), GAMMA, LENGTH)
    Psi = wavefn.bethe_wavefunction(r)
    mu = 0.23
    lhs = ybops.transfer(mu, Psi, GAMMA, LENGTH)
    rhs = alcovefn.afn_add(
        ybops.apply_symmetric("A", mu, Psi, GAMMA, LENGTH),
        ybops.apply_symmetric("D", mu, Psi, GAMMA, LENGTH),
    )
    for x in alcovefn.sample_interior(2, 6, LENGTH):
        assert abs(lhs.eval(x) - rhs.eval(x)) < 1e-13


def test_quantum_determinant_on_vacuum_and_one_particle():
    vac = alcovefn.zero_function(0)
    vac = alcovefn.build({list(vac.pieces)[0]: exppoly.constant(1.0, 0)}) if vac.pieces else vac
    one = alcovefn.from_analytic(exppoly.plane_wave((0.5,)))
    out = ybops.qdet(0.3, one, GAMMA, LENGTH)
    want = math.exp(-GAMMA * LENGTH / 2)
    for x in alcovefn.sample_interior(1, 6, LENGTH):
        assert abs(out.eval(x) - want * one.eval(x)) < 1e-12


def test_nonsymmetric_product_and_direct_methods_agree():
    r = RapiditySet((0.8, -0.3), GAMMA, LENGTH)
    f = wavefn.prewavefunction(r)
    mu = 0.41
    for family in ("a", "d"):
        prod = ybops.apply_nonsymmetric(family, mu, f, GAMMA, LENGTH, method="product")
        direct = ybops.apply_nonsymmetric(family, mu, f, GAMMA, LENGTH, method="direct")
        for x in alcovefn.sample_interior(2, 6, LENGTH):
            assert abs(prod.eval(x) - direct.eval(x)) < 1e-12


def test_q_operator_scalar():
    assert ybops.q_operator_scalar(0.25, (1.0, -0.5)) == (1.0 - 0.25) * (-0.5 - 0.25)


def test_elementary_op_against_quadrature_oracle():
    r = RapiditySet((0.8, -0.3), GAMMA, LENGTH)
    f = wavefn.prewavefunction(r)
    mu = 0.37
    exact = ybops.elementary_nonsymmetric_op("e_bar+", mu, (1,), f, LENGTH)
    for x in alcovefn.sample_interior(2, 4, LENGTH):
        q = oracle.quad_elementary("e_bar+", mu, (1,), f, LENGTH, x)
        assert abs(exact.eval(x) - q) < 1e-8


def test_particle_cap_enforced():
    lam = tuple(0.3 * j for j in range(1, ybops.PARTICLE_CAP + 2))
    f = alcovefn.from_analytic(exppoly.plane_wave(lam))
    with pytest.raises(ValueError):
        ybops.apply_nonsymmetric("a", 0.2, f, GAMMA, LENGTH)
