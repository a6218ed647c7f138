import math

import numpy as np
import pytest

spde = pytest.importorskip("spde")


def test_spectral_eigenvalues():
    op = spde.build_spectral(4)
    assert op.lambdas[0] == pytest.approx(math.pi**2, rel=1e-12)
    assert op.lambdas[3] == pytest.approx(16 * math.pi**2, rel=1e-12)
    assert op.basis(1, 0.5) == pytest.approx(math.sqrt(2.0), rel=1e-12)


def test_resolvent_and_modified_noise_variance():
    op = spde.build_spectral(1)
    tau = 1.0 / op.lambdas[0]  # tau * lambda_1 = 1
    f = spde.factorize_resolvent(op, tau)
    e = spde.FieldState(np.array([1.0]), "modal")
    z = spde.FieldState(np.array([0.0]), "modal")
    assert spde.apply_A_tau(f, e).values[0] == pytest.approx(0.5, rel=1e-14)
    b1 = spde.sample_modified_noise(f, e, z).values[0]
    b2 = spde.sample_modified_noise(f, z, e).values[0]
    assert b1 * b1 + b2 * b2 == pytest.approx(3.0 * tau / 8.0, rel=1e-13)


def test_invariant_variance_recursion():
    op = spde.build_spectral(8)
    table = spde.mode_variances(spde.Scheme.modified, op, 0.2, -1)
    for j, v in enumerate(table.variances):
        assert v == pytest.approx(0.5 / op.lambdas[j], rel=1e-14)


def test_hellinger_and_fit():
    assert spde.hellinger_diag([1.0], [3.0]) == pytest.approx(0.26342957483528767, rel=1e-12)
    taus = [0.1, 0.05, 0.025, 0.0125]
    fit = spde.fit_rate(taus, [0.3 * math.sqrt(t) for t in taus])
    assert fit.ok
    assert fit.slope == pytest.approx(0.5, abs=1e-10)


def test_noise_stream_reproducibility():
    a = spde.NoiseStream(7, 1)
    b = spde.NoiseStream(7, 1)
    assert [a.normal() for _ in range(8)] == [b.normal() for _ in range(8)]
    g1, g2, g = spde.NoiseStream(1, 0).draw_coupled_pair(16, "modal")
    assert np.allclose((g1.values + g2.values) / math.sqrt(2.0), g.values)


def test_trajectory_and_transform_roundtrip():
    J = 16
    op = spde.build_spectral(J)
    dst = spde.SineTransform(J)
    x = spde.NoiseStream(3, 0).draw_cylindrical(J, "modal")
    back = dst.to_modal(dst.to_nodal(x))
    assert np.allclose(back.values, x.values, atol=1e-10)

    cfg = spde.SchemeConfig(0.05, 10, spde.Scheme.modified)
    x0 = spde.FieldState(np.zeros(J), "modal")
    final, times, path = spde.run_trajectory(cfg, op, spde.make_sine(), x0,
                                             spde.NoiseStream(11, 0), record_path=True)
    assert len(times) == 11
    assert len(final) == J


def test_mcmc_flat_potential_accepts_everything():
    J = 8
    op = spde.build_spectral(J)
    f = spde.factorize_resolvent(op, 0.2)
    dst = spde.SineTransform(J)
    x0 = spde.FieldState(np.zeros(J), "modal")
    stats = spde.run_chain(f, spde.make_ou(), dst, 2000, 100, 1,
                           spde.NoiseStream(5, 0), x0)
    assert stats.acceptance_rate == 1.0
    assert stats.samples == 1900


def test_fd_modified_chain_preserves_discrete_invariant_law():
    # Midpoint variance of the stationary FD field is exactly 1/8: the
    # standard-stencil discrete Green's function coincides with min(s,t)-st
    # at the nodes, and the invariant covariance is half of it.
    J, tau = 63, 0.05
    op = spde.build_fd(J)
    f = spde.factorize_resolvent(op, tau)
    p = spde.make_ou()
    s = spde.NoiseStream(777, 0)
    x = spde.FieldState(np.zeros(J), "nodal")
    mid = (J + 1) // 2 - 1
    acc, n = 0.0, 5000
    for _ in range(n):
        g1 = s.draw_cylindrical(J, "nodal")
        g2 = s.draw_cylindrical(J, "nodal")
        x = spde.step_modified(f, p, None, x, g1, g2)
        acc += x.values[mid] ** 2
    h = 1.0 / (J + 1)
    lam1 = 4.0 / h**2 * math.sin(math.pi * h / 2) ** 2
    a1 = 1.0 / (1.0 + tau * lam1)
    se = 0.125 * math.sqrt(2 * (1 + a1**2) / (1 - a1**2) / n)
    assert abs(acc / n - 0.125) < 5 * se


def test_acceptance_prob_and_potential():
    p = spde.make_gradient_cos(0.5)
    x = spde.FieldState(np.zeros(9), "nodal")
    assert spde.evaluate_V(p, x) == pytest.approx(0.5, rel=1e-14)
    assert spde.acceptance_prob(0.0, math.log(2.0) / 2.0) == pytest.approx(0.5, rel=1e-14)
