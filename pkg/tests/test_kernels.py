import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgcurves import _kernels_py, kernels

BACKENDS = kernels.available_backends()


@pytest.fixture(params=BACKENDS)
def backend(request):
    previous = kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(previous)


def test_compiled_backend_is_default_when_built():
    if "cython" in BACKENDS:
        assert kernels.backend() == "cython"


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


def test_simpson_exact_for_cubics_at_even_nodes(backend):
    s = np.linspace(-1.0, 2.0, 31)
    h = s[1] - s[0]
    f = 4 * s ** 3 - 3 * s ** 2 + 2
    err = kernels.cumulative_simpson(f, h) - (s ** 4 - s ** 3 + 2 * s)
    assert np.abs(err[::2]).max() < 1e-13
    # odd nodes close with a half panel that is exact for quadratics only
    assert np.abs(err[1::2]).max() <= h ** 4 + 1e-13


def test_simpson_fourth_order(backend):
    errors = []
    for n in (101, 201, 401):
        s = np.linspace(0, 2, n)
        errors.append(np.abs(kernels.cumulative_simpson(np.exp(s), s[1] - s[0])
                             - (np.exp(s) - 1)).max())
    assert errors[0] / errors[1] > 14 and errors[1] / errors[2] > 14


def test_simpson_columns(backend):
    s = np.linspace(0, 1, 21)
    f = np.column_stack([s, s ** 2])
    out = kernels.cumulative_simpson(f, s[1] - s[0])
    assert np.allclose(out, np.column_stack([s ** 2 / 2, s ** 3 / 3]), atol=1e-15)


def test_rk4_exponential_decay(backend):
    # kappa = 0, tau = 1: m1' = -m2, m2' = -m1 has m2 = cosh(s), m1 = -sinh(s) from (0, 1)
    s = np.linspace(0, 1, 201)
    h = s[1] - s[0]
    one, one_mid = np.ones_like(s), np.ones(len(s) - 1)
    zero, zero_mid = np.zeros_like(s), np.zeros(len(s) - 1)
    m1, m2 = kernels.rk4_msystem(0.0, h, zero, zero_mid, one, one_mid, 0.0, 0.0, 1.0)
    assert np.allclose(m1, -np.sinh(s), atol=1e-11)
    assert np.allclose(m2, np.cosh(s), atol=1e-11)


@settings(max_examples=30, deadline=None)
@given(st.integers(9, 400), st.floats(-3, 3), st.floats(0.01, 2))
def test_backends_agree(n, shift, scale):
    if len(BACKENDS) < 2:
        return
    s = np.linspace(shift, shift + scale, n)
    h = s[1] - s[0]
    mid = s[:-1] + h / 2
    f = np.sin(3 * s) + s ** 2
    results = {}
    for name in BACKENDS:
        previous = kernels.use_backend(name)
        try:
            results[name] = (
                kernels.cumulative_simpson(f, h),
                *kernels.rk4_msystem(s[0], h, np.cos(s), np.cos(mid), s, mid, 0.5, 0.1, -0.2),
                kernels.stencil_derivative(f, h, 2),
            )
        finally:
            kernels.use_backend(previous)
    for a, b in zip(results["cython"], results["python"]):
        assert np.allclose(a, b, rtol=1e-13, atol=1e-12, equal_nan=True)


@pytest.mark.parametrize("order", [1, 2, 3, 4])
def test_stencil_derivative_accuracy(backend, order):
    s = np.linspace(0, 2, 201)
    f = np.sin(s)
    exact = [np.cos(s), -np.sin(s), -np.cos(s), np.sin(s)][order - 1]
    approx = kernels.stencil_derivative(f, s[1] - s[0], order)
    tol = {1: 1e-10, 2: 1e-9, 3: 1e-7, 4: 1e-5}[order]
    assert np.abs(approx - exact).max() < tol


def test_richardson_interior_leaves_edges_nan():
    f = np.linspace(0, 1, 30) ** 2
    out = _kernels_py.richardson_interior(f, 1 / 29, 1)
    assert np.isnan(out[:4]).all() and np.isnan(out[-4:]).all()
    assert np.isfinite(out[4:-4]).all()


def test_central_derivative_second_order():
    errs = []
    for n in (101, 201):
        s = np.linspace(0, 1, n)
        errs.append(np.abs(kernels.central_derivative(np.exp(s), s[1] - s[0]) - np.exp(s)).max())
    assert 3.5 < errs[0] / errs[1] < 4.5
