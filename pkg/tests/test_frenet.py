import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgcurves.frenet import (EpsilonFlipError, GraphCurve, InadmissibleError, SampledCurve,
                             check_admissible, frame_at, frenet_ode_residuals, frenet_series,
                             spacelike_check, torsion_det, uniform_grid)
from pgcurves.geometry import Motion, det_rows, lorentz_rows, scalar_product_rows
from pgcurves.reconstruct import reconstruct_curve

from conftest import sup


def test_uniform_grid_forces_odd():
    assert len(uniform_grid((0, 1), 10)) == 11
    with pytest.raises(ValueError):
        uniform_grid((0, 1), 5)
    with pytest.raises(ValueError):
        uniform_grid((1, 1), 11)


def test_ratio_curve_apparatus(ratio_curve, ratio_grid):
    fs = frenet_series(ratio_curve, ratio_grid)
    s = fs.s
    assert sup(fs.kappa * s - 1) < 1e-12
    assert sup(fs.tau * s + 2) < 1e-12
    assert fs.is_spacelike
    assert np.allclose(fs.N[:, 1:], np.column_stack([np.sinh(2 * np.log(s)),
                                                     np.cosh(2 * np.log(s))]), atol=1e-12)
    assert np.allclose(fs.B[:, 1:], np.column_stack([-np.cosh(2 * np.log(s)),
                                                     -np.sinh(2 * np.log(s))]), atol=1e-12)
    assert sup(fs.dkappa + 1 / s ** 2) < 1e-10
    assert sup(fs.dtau - 2 / s ** 2) < 1e-10
    assert sup(fs.ddkappa - 2 / s ** 3) < 1e-9


def test_frame_at_examples(ratio_curve, circle_curve):
    f = frame_at(ratio_curve, 2.0)
    assert f.kappa == pytest.approx(0.5, rel=1e-14)
    assert f.tau == pytest.approx(-1.0, rel=1e-14)
    assert f.eps == -1
    c = frame_at(circle_curve, 1.7)
    assert (c.kappa, c.tau) == (1.0, 0.0)
    assert tuple(c.N) == (0.0, 0.0, 1.0)


def test_torsion_det_agrees(ratio_curve, circle_curve):
    assert torsion_det(ratio_curve, 2.0) == pytest.approx(-1.0, rel=1e-12)
    assert torsion_det(circle_curve, 1.0) == 0.0


def test_salkowski_frame_at_one_and_a_half(salkowski_spec):
    rc = reconstruct_curve(salkowski_spec, 2001)
    fs = frenet_series(rc)
    i = int(np.argmin(np.abs(fs.s - 1.5)))
    assert fs.s[i] == pytest.approx(1.5, abs=1e-12)
    assert fs.kappa[i] == pytest.approx(1.0, abs=1e-12)
    assert fs.tau[i] == pytest.approx(1.5, abs=1e-12)


def test_admissibility_reports_violations(circle_curve):
    assert check_admissible(circle_curve, uniform_grid((0.5, 3), 101)).ok
    line = GraphCurve.from_strings("2*x + 1", "-x + 4", (0, 1))
    adm = check_admissible(line, uniform_grid((0, 1), 11))
    assert not adm.ok and len(adm.violations) == 11
    with pytest.raises(InadmissibleError, match="not admissible"):
        frenet_series(line, uniform_grid((0, 1), 11))


def test_epsilon_flip_is_an_error():
    c = GraphCurve.from_strings("x^2/2", "x^3/6", (0, 2))
    grid = np.linspace(0.05, 2, 41)  # avoids s = 1 exactly
    with pytest.raises(EpsilonFlipError):
        frenet_series(c, grid)
    fs = frenet_series(c, grid, allow_flip=True)
    assert set(fs.eps.tolist()) == {-1, 1}


def test_causal_check():
    assert spacelike_check(GraphCurve.from_strings("0", "x^2/2", (0, 1)),
                           uniform_grid((0, 1), 11)).spacelike
    assert spacelike_check(GraphCurve.from_strings("x^2/2", "0", (0, 1)),
                           uniform_grid((0, 1), 11)).kind == "timelike"
    mixed = spacelike_check(GraphCurve.from_strings("x^2/2", "x^3/6", (0, 2)),
                            uniform_grid((0, 2), 21))
    assert mixed.kind == "not uniformly causal"
    assert len(mixed.crossings) == 1
    lo, hi = mixed.crossings[0]
    assert lo <= 1.0 <= hi


def test_frame_identities(ratio_curve, ratio_grid):
    fs = frenet_series(ratio_curve, ratio_grid)
    assert sup(lorentz_rows(fs.N, fs.N) + 1) < 1e-12
    assert sup(lorentz_rows(fs.B, fs.B) - 1) < 1e-12
    assert sup(det_rows(fs.T, fs.N, fs.B) - 1) < 1e-12
    assert np.all(scalar_product_rows(fs.T, fs.T) == 1.0)


def test_frenet_equations_hold(ratio_curve, ratio_grid):
    res = frenet_ode_residuals(frenet_series(ratio_curve, ratio_grid))
    assert max(res.values()) < 1e-6


def test_sampled_curve_matches_symbolic(ratio_curve, ratio_grid):
    rows = np.column_stack([ratio_grid, ratio_curve.jet(ratio_grid, order=0).d[0]])
    sampled = SampledCurve.from_rows(rows)
    fs = frenet_series(sampled)
    exact = frenet_series(ratio_curve, ratio_grid)
    # third derivatives of samples are rounding-limited near 1e-5 relative
    assert sup((fs.kappa - exact.kappa) / exact.kappa) < 1e-6
    assert sup((fs.tau - exact.tau) / exact.tau) < 1e-4
    assert sup(((fs.tau - exact.tau) / exact.tau)[4:-4]) < 1e-5


def test_sampled_curve_validation():
    s = np.linspace(0, 1, 20)
    with pytest.raises(ValueError, match="arc-length"):
        SampledCurve.from_rows(np.column_stack([s, 2 * s, s, s]))
    bad = np.column_stack([s ** 2, s ** 2, s, s])
    with pytest.raises(ValueError, match="uniform"):
        SampledCurve.from_rows(bad)


motions = st.builds(Motion, st.floats(-2, 2), st.floats(-5, 5), st.floats(-3, 3),
                    st.floats(-5, 5), st.floats(-3, 3), st.floats(-1.5, 1.5))


@settings(max_examples=100, deadline=None)
@given(motions)
def test_curvatures_invariant_under_motions(ratio_curve, m):
    grid = uniform_grid((1.0, 4.0), 41)
    before = frenet_series(ratio_curve, grid)
    moved = ratio_curve.moved(m)
    after = frenet_series(moved, grid + m.a)
    assert np.allclose(after.kappa, before.kappa, rtol=1e-9, atol=0)
    assert np.allclose(after.tau, before.tau, rtol=1e-9, atol=0)
    assert np.allclose(after.alpha, m.apply_rows(before.alpha), rtol=1e-12, atol=1e-9)


def test_moved_curve_keeps_origin_in_step(ratio_curve):
    m = Motion(1.0, 2.0, 0.0, 0.0, 0.0, 0.3)
    moved = ratio_curve.moved(m)
    assert moved.domain == (1.5, 6.0)
    assert tuple(moved.origin) == tuple(m.apply(ratio_curve.origin))


TORSION_CURVES = [
    ("sinh(x)", "cosh(x) + x^3/20", (0.2, 2.0)),
    ("x^3/6", "x^2/2 + x^4/10", (0.1, 0.9)),
    ("sin(x)", "2*cosh(x)", (0.3, 1.5)),
]


@pytest.mark.parametrize("y, z, domain", TORSION_CURVES)
def test_torsion_formulas_agree(y, z, domain):
    c = GraphCurve.from_strings(y, z, domain)
    fs = frenet_series(c, uniform_grid(domain, 101), allow_flip=True)
    for i in range(0, 101, 10):
        t = torsion_det(c, fs.s[i])
        assert t == pytest.approx(fs.tau[i], rel=1e-9, abs=1e-9)
