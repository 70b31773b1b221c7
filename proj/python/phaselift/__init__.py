"""PhaseLift phase retrieval.

Thin numpy front end over the native ``_phaselift`` module. Functions that
exist in both fields pick the real or complex kernel from the dtype of
their array arguments. A sensing ensemble is its m x n matrix of rows
z_i^T.
"""

import numpy as np

from . import _phaselift as _native
from ._phaselift import (
    InvalidInput,
    NumericalError,
    add_noise,
    config_hash,
    f_complex,
    f_real,
    monte_carlo_xi,
    rip1_check,
    run_experiment,
    silence_warnings,
)

__all__ = [
    "InvalidInput",
    "NumericalError",
    "add_noise",
    "apply_A",
    "apply_A_adjoint",
    "build_certificate",
    "config_hash",
    "estimate_lipschitz",
    "expectation_check",
    "f_complex",
    "f_real",
    "intensities",
    "monte_carlo_xi",
    "prox_psd_trace",
    "recover",
    "rel_mse",
    "rip1_check",
    "run_experiment",
    "sample_ensemble",
    "silence_warnings",
    "solve_constrained",
    "solve_regularized",
    "verify_certificate",
]


def _kernel(name, *arrays):
    complex_ = any(a is not None and np.iscomplexobj(a) for a in arrays)
    return getattr(_native, name + ("_complex" if complex_ else "_real")), complex_


def _dispatch(name, *arrays):
    """Kernel for the field of `arrays`, with the arrays cast to match."""
    fn, complex_ = _kernel(name, *arrays)
    dtype = np.complex128 if complex_ else np.float64
    cast = [None if a is None else np.asarray(a, dtype=dtype) for a in arrays]
    return fn, cast


def sample_ensemble(n, m, model="complex-unit-sphere", seed=0, field=None):
    if field is None:
        field = "real" if model.startswith("real") else "complex"
    fn = _native.sample_ensemble_real if field == "real" else _native.sample_ensemble_complex
    return fn(n, m, model, seed)


def apply_A(rows, x):
    fn, (rows, x) = _dispatch("apply_A", rows, x)
    return fn(rows, x)


def apply_A_adjoint(rows, y):
    fn, (rows,) = _dispatch("apply_A_adjoint", rows)
    return fn(rows, np.asarray(y, dtype=np.float64))


def intensities(rows, x):
    fn, (rows, x) = _dispatch("intensities", rows, x)
    return fn(rows, x)


def prox_psd_trace(v, tau):
    fn, (v,) = _dispatch("prox_psd_trace", v)
    return fn(v, tau)


def estimate_lipschitz(rows):
    fn, (rows,) = _dispatch("estimate_lipschitz", rows)
    return fn(rows)


def solve_regularized(rows, b, lam, **options):
    fn, (rows,) = _dispatch("solve_regularized", rows)
    return fn(rows, np.asarray(b, dtype=np.float64), lam, **options)


def solve_constrained(rows, b, eps, **options):
    fn, (rows,) = _dispatch("solve_constrained", rows)
    return fn(rows, np.asarray(b, dtype=np.float64), eps, **options)


def recover(x_hat, truth=None):
    fn, (x_hat, truth) = _dispatch("recover", x_hat, truth)
    return fn(x_hat, truth)


def rel_mse(x, x_hat):
    fn, (x, x_hat) = _dispatch("rel_mse", x, x_hat)
    return fn(x, x_hat)


def build_certificate(rows, model, x, beta=3.0, truncate=True):
    fn, (rows, x) = _dispatch("build_certificate", rows, x)
    return fn(rows, model, x, beta, truncate)


def verify_certificate(y, x, truncated_fraction=0.0):
    fn, (y, x) = _dispatch("verify_certificate", y, x)
    return fn(y, x, truncated_fraction)


def expectation_check(n, samples, seed, field="complex"):
    if field == "real":
        return _native.expectation_check_real(n, samples, seed)
    return _native.expectation_check_complex(n, samples, seed)
