"""Radial meshes for isotropic momentum integrals.

All integrals of the gap module reduce to int_0^inf dx x^2 f(x) / (2 pi^2)
with x = k / k0 and energies measured in eps0, so that eps_k = eps0 x^2.
The mesh concentrates panels around the Fermi surface x_mu = sqrt(mu / eps0),
where the integrands have a peak of half-width ~ Delta Gamma / (2 x_mu), and
maps [k_max, inf) onto (0, 1] through x = k_max / y.
"""
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from src.core.exceptions import QuadratureError
from src.gap.schemas import QuadratureSpec

# breakpoints below k_max, in units of k0
_BASE_BREAKS = tuple(2.0**j for j in range(-4, 8))
_GEOMETRIC_RATIO = 4.0


class RadialMesh(NamedTuple):
    x: np.ndarray
    weights: np.ndarray
    # x^2 - mu/eps0, computed without cancellation next to the Fermi surface
    shift: np.ndarray
    tail: np.ndarray


@lru_cache(maxsize=32)
def _reference_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = leggauss(order)
    return 0.5 * (nodes + 1.0), 0.5 * weights


def _panels(edges: np.ndarray, order: int, subdivisions: int) -> tuple[np.ndarray, np.ndarray]:
    if subdivisions > 1:
        fine = [np.linspace(a, b, subdivisions + 1)[:-1] for a, b in zip(edges[:-1], edges[1:])]
        edges = np.append(np.concatenate(fine), edges[-1])
    t, w = _reference_rule(order)
    left = edges[:-1, None]
    width = np.diff(edges)[:, None]
    return (left + width * t).ravel(), (width * w).ravel()


def _peak_offsets(width: float, limit: float) -> np.ndarray:
    offsets = [width]
    while offsets[-1] * _GEOMETRIC_RATIO < limit:
        offsets.append(offsets[-1] * _GEOMETRIC_RATIO)
    return np.asarray(offsets)


def radial_mesh(mu: float, gap: float, spec: QuadratureSpec) -> RadialMesh:
    """Mesh for reduced chemical potential ``mu`` and reduced gap ``gap`` (both in eps0)."""
    k_max = spec.k_max
    breaks = {0.0, k_max}
    breaks.update(b for b in _BASE_BREAKS if b < k_max)
    if mu != 0.0 and np.sqrt(abs(mu)) < k_max:
        breaks.add(float(np.sqrt(abs(mu))))

    peak_x = np.empty(0)
    peak_w = np.empty(0)
    peak_shift = np.empty(0)
    if mu > 0.0:
        x_mu = float(np.sqrt(mu))
        if x_mu > 0.5 * k_max:
            raise QuadratureError("k_max too small for the Fermi surface", float("inf"))
        width = gap / np.sqrt(1.0 + mu) / (2.0 * x_mu)
        width = max(width, 1e-3 * np.finfo(float).eps * x_mu)
        left_room = 0.5 * x_mu
        right_room = min(0.5 * x_mu, k_max - x_mu)
        if width < 0.5 * min(left_room, right_room):
            left = _peak_offsets(width, left_room)
            right = _peak_offsets(width, right_room)
            s_edges = np.concatenate([-left[::-1], [0.0], right])
            s, ws = _panels(s_edges, spec.order, spec.subdivisions)
            peak_x = x_mu + s
            peak_w = ws
            peak_shift = s * (2.0 * x_mu + s)
            lo, hi = x_mu - left[-1], x_mu + right[-1]
            breaks = {b for b in breaks if not lo < b < hi}
            breaks.update((lo, hi))
            # the window [lo, hi] is covered by the offset panels
            hole = (lo, hi)
        else:
            hole = None
    else:
        hole = None

    edges = np.array(sorted(breaks))
    x, w = _panels(edges, spec.order, spec.subdivisions)
    if hole is not None:
        keep = (x < hole[0]) | (x > hole[1])
        x, w = x[keep], w[keep]
    shift = x**2 - mu

    y, wy = _panels(np.array([0.0, 1.0]), 2 * spec.order, spec.subdivisions)
    tail_x = k_max / y
    tail_w = wy * k_max / y**2

    xs = np.concatenate([x, peak_x, tail_x])
    ws = np.concatenate([w, peak_w, tail_w])
    shifts = np.concatenate([shift, peak_shift, tail_x**2 - mu])
    tail = np.concatenate([np.zeros(x.size + peak_x.size, bool), np.ones(tail_x.size, bool)])
    return RadialMesh(xs, ws, shifts, tail)


def integrate(values: np.ndarray, mesh: RadialMesh, spec: QuadratureSpec) -> float:
    """Weighted sum over the mesh; with ``spec.tail`` off the mapped tail only bounds the error."""
    contributions = values * mesh.weights
    if spec.tail:
        return float(np.sum(contributions))
    body = float(np.sum(contributions[~mesh.tail]))
    tail = float(np.sum(contributions[mesh.tail]))
    if abs(tail) > max(spec.atol, spec.rtol * abs(body)):
        raise QuadratureError("Integrand tail beyond k_max exceeds tolerance", abs(tail))
    return body


def integrate_checked(
    integrand: Callable[[RadialMesh], np.ndarray],
    mu: float,
    gap: float,
    spec: QuadratureSpec,
) -> tuple[float, float]:
    """Integral and its panel-doubling error estimate; raises when the estimate is too large."""
    mesh = radial_mesh(mu, gap, spec)
    value = integrate(integrand(mesh), mesh, spec)
    fine_spec = spec.refined()
    fine_mesh = radial_mesh(mu, gap, fine_spec)
    fine = integrate(integrand(fine_mesh), fine_mesh, fine_spec)
    error = abs(fine - value)
    if error > max(spec.atol, spec.rtol * abs(fine)):
        raise QuadratureError("Radial quadrature did not converge", error)
    return fine, error
