"""Single-pair post-selection: the purification step, its fixed point,
and the teleported error distribution at the fixed point.

One purification step takes two copies of the current ancilla channel
c = (x, y, z), applies a noisy CNOT between them, measures the
destination qubit in the Z basis, keeps the +1 outcome, and traces the
destination out.  The surviving source qubit is then Hadamard-rotated,
which swaps its x and z components.  Iterating this step from the
noiseless channel (1, 1, 1) drives the pair toward a fixed point; the
fixed point exists only below the threshold of the gate noise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .noise import diagonal_q, measurement_m
from .pauli import LABEL_INDEX, measure_traceout, total_cnot_noise


class NoConvergenceError(RuntimeError):
    """The post-selection iteration failed to reach a fixed point."""


@dataclass(frozen=True)
class FixedPointResult:
    channel: np.ndarray
    iterations: int
    residual: float


@dataclass(frozen=True)
class IndepFixedPoint:
    x_g: float
    x_b: float


def scalar_post(x1: float, x2: float) -> float:
    """Post-selected combination of two diagonal channel components:
    (x1 + x2) / (1 + x1 x2)."""
    return (x1 + x2) / (1.0 + x1 * x2)


def post_step(channel, q, m: float = 1.0) -> np.ndarray:
    """One purification step on channel (x, y, z) under gate noise with
    diagonal entries q and measurement noise scalar m.

    Both pair members carry the same channel.  The step is the accept
    branch of the measured, traced-out noisy CNOT, followed by the
    Hadamard swap of the x and z components.
    """
    channel = np.asarray(channel, dtype=float)
    n = total_cnot_noise(q, channel, channel)
    accept, _ = measure_traceout(n, m_noise=m)
    x, y, z = accept.channel
    return np.array([z, y, x])


def fixed_point(q, tol: float = 1e-14, max_iter: int = 10**6, m: float = 1.0) -> FixedPointResult:
    """Iterate post_step from the noiseless channel until successive
    iterates agree within tol (sup norm).

    Raises NoConvergenceError if the iteration runs out of steps or the
    acceptance probability breaks down, which is how an above-threshold
    gate noise manifests.
    """
    c = np.ones(3)
    for i in range(1, max_iter + 1):
        try:
            nxt = post_step(c, q, m=m)
        except ValueError as exc:
            raise NoConvergenceError(
                "post-selection broke down after %d iterations: %s" % (i - 1, exc)
            ) from exc
        residual = float(np.max(np.abs(nxt - c)))
        c = nxt
        if residual < tol:
            return FixedPointResult(channel=c, iterations=i, residual=residual)
        if not np.all(np.isfinite(c)):
            raise NoConvergenceError(
                "post-selection diverged after %d iterations" % i
            )
    raise NoConvergenceError(
        "no fixed point within %d iterations (residual %.3g)" % (max_iter, residual)
    )


def indep_fixed_point(f: float, b: float, m: float, tol: float = 1e-14) -> IndepFixedPoint:
    """Fixed point of the decoupled bit/phase recursion used for
    independent noise: x_g is the good (post-selected) component and
    x_b the bad one, with f and b the forward and backward diagonal
    factors and m the measurement scalar.
    """
    x_g = 1.0
    x_b = 1.0
    for _ in range(10**6):
        fm = f * m
        x_g2 = b * (x_b + x_b * fm) / (1.0 + x_b * x_b * fm)
        x_b2 = x_g2 * x_g2 * f
        if abs(x_g2 - x_g) < tol and abs(x_b2 - x_b) < tol:
            return IndepFixedPoint(x_g=x_g2, x_b=x_b2)
        if not (np.isfinite(x_g2) and np.isfinite(x_b2)):
            raise NoConvergenceError("independent recursion diverged")
        x_g, x_b = x_g2, x_b2
    raise NoConvergenceError("independent recursion did not converge")


def teleport_output(channel, q, m: float = 1.0) -> np.ndarray:
    """Error distribution (p_I, p_X, p_Y, p_Z) on the data qubit after
    teleporting through an ancilla pair in state channel = (x, y, z),
    with gate noise q and measurement scalar m."""
    x, y, z = np.asarray(channel, dtype=float)

    def g(lbl):
        return q[LABEL_INDEX[lbl]]

    coeffs = np.array(
        [
            1.0,
            m * x * z * g("XI"),
            m * m * y * y * g("XZ"),
            m * x * z * g("IZ"),
        ]
    )
    mat = np.array(
        [
            [1, 1, 1, 1],
            [1, 1, -1, -1],
            [1, -1, 1, -1],
            [1, -1, -1, 1],
        ],
        dtype=float,
    )
    p = 0.25 * mat @ coeffs
    if np.any(p < -1e-12):
        raise ValueError("teleported distribution has negative weight: %r" % (p,))
    return np.clip(p, 0.0, None)


def combined_noise(x_g: float, f: float, m: float) -> float:
    """Diagonal component of the teleported error seen by one sector
    when bit and phase decouple: x_g**3 * f**2 * m."""
    return x_g**3 * f * f * m


def model_fixed_point(model, tol: float = 1e-14, max_iter: int = 10**6) -> FixedPointResult:
    """fixed_point driven directly by a noise model, with the model's
    own measurement scalar."""
    return fixed_point(diagonal_q(model), tol=tol, max_iter=max_iter, m=measurement_m(model))


def model_teleport_output(model, tol: float = 1e-14) -> np.ndarray:
    """Teleported error distribution at the model's fixed point."""
    res = model_fixed_point(model, tol=tol)
    return teleport_output(res.channel, diagonal_q(model), m=measurement_m(model))
