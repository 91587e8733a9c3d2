"""Special functions and Gauss-Legendre quadrature.

Everything here works in atomic units. Functions accept scalars or numpy
arrays and broadcast the usual way; scalar input gives a Python float back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy as np
from scipy.special import eval_genlaguerre, lpmv

# Below this argument the ascending series is used instead of Miller's
# recurrence; 40 terms reach full double precision for |x| < 2.
_SERIES_LIMIT = 2.0
_SERIES_TERMS = 40
_RESCALE = 1e250

MAX_DOUBLINGS = 6


def _as_output(values: np.ndarray, scalar: bool):
    return float(values.reshape(())) if scalar else values


def _bessel_series(n: int, x: np.ndarray) -> np.ndarray:
    half = 0.5 * x
    if n <= 170:
        term = half**n / math.factorial(n)
    else:
        with np.errstate(divide="ignore"):
            term = np.exp(n * np.log(half) - math.lgamma(n + 1.0))
    q = -half * half
    total = term.copy()
    for k in range(1, _SERIES_TERMS):
        term = term * q / (k * (k + n))
        total += term
    return total


def _bessel_miller(n: int, x: np.ndarray) -> np.ndarray:
    """Downward recurrence normalised with J_0 + 2 sum J_2k = 1 (x > 0)."""
    top = max(n, math.ceil(float(x.max())))
    start = top + 30 + int(math.sqrt(40.0 * top))
    start += start % 2

    two_over_x = 2.0 / x
    f_next = np.zeros_like(x)  # f_{k+1}
    f_cur = np.full_like(x, 1e-30)  # f_k, arbitrary seed
    norm = np.zeros_like(x)
    result = np.zeros_like(x)
    for k in range(start, 0, -1):
        f_prev = k * two_over_x * f_cur - f_next
        f_next, f_cur = f_cur, f_prev
        # f_cur now holds f_{k-1}
        if k - 1 == n:
            result = f_cur.copy()
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * f_cur
        big = np.abs(f_cur) > _RESCALE
        if big.any():
            f_cur[big] /= _RESCALE
            f_next[big] /= _RESCALE
            norm[big] /= _RESCALE
            result[big] /= _RESCALE
    norm += f_cur
    return result / norm


def bessel_j(order: int, x):
    """Bessel function of the first kind J_order(x) for integer order.

    Small arguments use the ascending power series, larger ones Miller's
    downward recurrence. Negative orders and arguments are reduced with
    J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x).

    Raises:
        ValueError: if any element of ``x`` is not finite.
    """
    order = int(order)
    scalar = np.ndim(x) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    if not np.all(np.isfinite(xa)):
        raise ValueError("bessel_j requires finite arguments")

    n = abs(order)
    sign = np.where(xa < 0, (-1.0) ** n, 1.0)
    if order < 0:
        sign = sign * (-1.0) ** n
    ax = np.abs(xa)

    out = np.zeros_like(ax)
    small = ax < _SERIES_LIMIT
    if small.any():
        out[small] = _bessel_series(n, ax[small])
    if (~small).any():
        out[~small] = _bessel_miller(n, ax[~small])
    return _as_output(sign * out, scalar)


def hydrogen_radial(n: int, l: int, r):
    """Normalised hydrogen radial function R_nl(r) for Z = 1, r in a_0.

    Uses the associated-Laguerre closed form, so that
    ``integral R_nl(r)**2 r**2 dr = 1``.
    """
    if n < 1 or not 0 <= l < n:
        raise ValueError(f"invalid hydrogen quantum numbers n={n}, l={l}")
    scalar = np.ndim(r) == 0
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r < 0):
        raise ValueError("radius must be non-negative")
    rho = 2.0 * r / n
    norm = math.sqrt((2.0 / n) ** 3 * math.factorial(n - l - 1) / (2.0 * n * math.factorial(n + l)))
    values = norm * np.exp(-rho / 2.0) * rho**l * eval_genlaguerre(n - l - 1, 2 * l + 1, rho)
    return _as_output(values, scalar)


def radial_derivative_ground(r):
    """dR_10/dr, which for the 1s state is exactly -R_10(r) (a_0 = 1)."""
    scalar = np.ndim(r) == 0
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r < 0):
        raise ValueError("radius must be non-negative")
    return _as_output(-2.0 * np.exp(-r), scalar)


def spherical_harmonic_phi0(l: int, m: int, theta):
    """Y_lm(theta, phi=0) with the Condon-Shortley phase; real valued."""
    if l < 0 or abs(m) > l:
        raise ValueError(f"invalid spherical harmonic indices l={l}, m={m}")
    scalar = np.ndim(theta) == 0
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    am = abs(m)
    norm = math.sqrt((2 * l + 1) / (4.0 * math.pi) * math.factorial(l - am) / math.factorial(l + am))
    # lpmv carries the Condon-Shortley sign for m >= 0.
    values = norm * lpmv(am, l, np.cos(theta))
    if m < 0:
        values = (-1.0) ** am * values
    return _as_output(values, scalar)


@dataclass(frozen=True)
class QuadratureSpec:
    """Node counts and tolerances for Gauss-Legendre integration.

    ``radial_cutoff=None`` means "60 n a_0", resolved per final state by
    :meth:`cutoff`.
    """

    radial_nodes: int = 256
    angular_nodes: int = 128
    radial_cutoff: float | None = None
    rel_tol: float = 1e-9

    def __post_init__(self):
        if self.radial_nodes < 16 or self.angular_nodes < 16:
            raise ValueError("node counts must be at least 16")
        if self.radial_cutoff is not None and not self.radial_cutoff > 0:
            raise ValueError("radial_cutoff must be positive")
        if not 0 < self.rel_tol < 1:
            raise ValueError("rel_tol must lie in (0, 1)")

    def cutoff(self, n: int) -> float:
        return self.radial_cutoff if self.radial_cutoff is not None else 60.0 * n


DEFAULT_QUAD = QuadratureSpec()


class QuadResult(NamedTuple):
    value: complex | float
    error: float
    nodes: int


class ConvergenceError(RuntimeError):
    """Node doubling failed to stabilise an integral."""

    def __init__(self, message: str, estimates: tuple, nodes: tuple):
        super().__init__(f"{message}: last estimates {estimates} at nodes {nodes}")
        self.estimates = estimates
        self.nodes = nodes
        self._message = message

    def __reduce__(self):
        # worker processes send exceptions back pickled
        return type(self), (self._message, self.estimates, self.nodes)


@lru_cache(maxsize=64)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1] (cached, read-only)."""
    x, w = np.polynomial.legendre.leggauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


PANEL_NODES = 256


def _mapped_nodes(n: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    # Above PANEL_NODES the rule goes composite: high-order nodes are slow to
    # generate and lose accuracy, equal panels of a moderate rule do not.
    panels = -(-n // PANEL_NODES)
    x, w = gauss_legendre(-(-n // panels))
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)[:, None]
    nodes = edges[:-1, None] + half * (x + 1.0)
    return nodes.ravel(), np.broadcast_to(half * w, nodes.shape).ravel()


def _converged(new, old, l1: float, rel_tol: float) -> bool:
    # Integrals that cancel to (near) zero are judged against the rounding
    # floor of the absolute integrand instead of their own size.
    diff = abs(new - old)
    return diff <= rel_tol * abs(new) or diff <= 64.0 * np.finfo(float).eps * l1


def integrate(f: Callable, a: float, b: float, spec: QuadratureSpec = DEFAULT_QUAD) -> QuadResult:
    """Integrate a vectorised ``f`` over [a, b] with node doubling.

    Starts from ``spec.radial_nodes`` nodes and doubles until two successive
    estimates agree to ``spec.rel_tol``. Returns the finer estimate.

    Raises:
        ConvergenceError: after ``MAX_DOUBLINGS`` doublings without agreement.
    """
    if not a < b:
        raise ValueError("integrate requires a < b")
    n = spec.radial_nodes
    x, w = _mapped_nodes(n, a, b)
    old = np.sum(w * f(x))
    for _ in range(MAX_DOUBLINGS):
        n *= 2
        x, w = _mapped_nodes(n, a, b)
        fx = f(x)
        new = np.sum(w * fx)
        if _converged(new, old, float(np.sum(w * np.abs(fx))), spec.rel_tol):
            return QuadResult(new.item(), float(abs(new - old)), n)
        old = new
    raise ConvergenceError("integrate did not converge", (old, new), (n // 2, n))


def integrate_2d(
    f: Callable,
    x_range: tuple[float, float],
    y_range: tuple[float, float],
    spec: QuadratureSpec = DEFAULT_QUAD,
) -> QuadResult:
    """Tensor-product Gauss-Legendre integral of ``f(x[:, None], y[None, :])``.

    ``x`` starts at ``spec.radial_nodes`` nodes and ``y`` at
    ``spec.angular_nodes``; both are doubled together. ``nodes`` in the
    result is the final x node count.
    """
    nx, ny = spec.radial_nodes, spec.angular_nodes

    def estimate(nx, ny):
        x, wx = _mapped_nodes(nx, *x_range)
        y, wy = _mapped_nodes(ny, *y_range)
        values = f(x[:, None], y[None, :])
        weights = wx[:, None] * wy[None, :]
        return np.sum(weights * values), float(np.sum(weights * np.abs(values)))

    old, _ = estimate(nx, ny)
    for _ in range(MAX_DOUBLINGS):
        nx, ny = 2 * nx, 2 * ny
        new, l1 = estimate(nx, ny)
        if _converged(new, old, l1, spec.rel_tol):
            return QuadResult(new.item(), float(abs(new - old)), nx)
        old = new
    raise ConvergenceError("integrate_2d did not converge", (old, new), (nx // 2, nx))


def bessel_translation_partial_sum(
    n: int,
    kappa_rho: float,
    kappa_b: float,
    phi_rho: float,
    phi_b: float,
    n_max: int | None = None,
) -> complex:
    """Truncated addition-theorem sum for exp(i n phi') J_n(kappa |rho - b|).

    Sums exp(i N phi_rho) exp(-i (N - n) phi_b) J_N(kappa rho) J_{N-n}(kappa b)
    over |N| <= n_max. The default truncation is
    ``|n| + ceil(kappa_rho + kappa_b) + 40``.
    """
    if n_max is None:
        n_max = abs(n) + math.ceil(kappa_rho + kappa_b) + 40
    if n_max < abs(n) + 10:
        raise ValueError("n_max must be at least |n| + 10")
    total = 0j
    for big_n in range(-n_max, n_max + 1):
        total += (
            np.exp(1j * big_n * phi_rho - 1j * (big_n - n) * phi_b)
            * bessel_j(big_n, kappa_rho)
            * bessel_j(big_n - n, kappa_b)
        )
    return complex(total)
