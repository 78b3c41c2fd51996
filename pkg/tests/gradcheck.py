"""Central-difference gradient checking shared by the numerics tests.

Relative error uses max(|analytic|, |numeric|, 1) as the denominator, so
it degrades to absolute error for tiny gradients instead of blowing up.
"""

import numpy as np

from livekg.crossmodal import TwoStreamModel, zero_grads

EPS = 1e-5


def numerical_grad(loss_fn, param: np.ndarray, index: int) -> float:
    flat = param.reshape(-1) if param.ndim else param.reshape(1)
    orig = flat[index]
    flat[index] = orig + EPS
    up = loss_fn()
    flat[index] = orig - EPS
    down = loss_fn()
    flat[index] = orig
    return (up - down) / (2 * EPS)


def relative_error(analytic: float, numeric: float) -> float:
    return abs(analytic - numeric) / max(abs(analytic), abs(numeric), 1.0)


def check_all_params(model: TwoStreamModel, loss_fn, skip=()) -> tuple[float, str]:
    """Compare analytic gradients of every parameter against central differences.

    loss_fn(grads=None) must evaluate the loss, and accumulate into grads
    when one is passed. Returns (worst relative error, where it occurred).
    """
    grads = zero_grads(model.params)
    loss_fn(grads)
    worst, where = 0.0, ""
    for name, param in model.params.items():
        if name in skip:
            continue
        gflat = grads[name].reshape(-1) if grads[name].ndim else grads[name].reshape(1)
        for i in range(gflat.size):
            numeric = numerical_grad(lambda: loss_fn(None), param, i)
            rel = relative_error(gflat[i], numeric)
            if rel > worst:
                worst, where = rel, f"{name}[{i}]"
    return worst, where
