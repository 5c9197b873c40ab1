"""Simultaneous root finding for integer polynomials (Aberth-Ehrlich).

A vectorized double-precision pass from a perturbed circle gives starting
values; they are then polished in mpmath, doubling the working precision
until every root meets the relative residual bound

    |p(z)| / (1 + sum_k |c_k| |z|^k) <= tol.
"""
from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import InputError, NumericalError
from .poly import Polynomial

log = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
START_BITS = 64
MAX_ESCALATIONS = 4


@dataclass(frozen=True)
class Root:
    value: complex
    residual: float

    def to_dict(self) -> dict:
        return {"re": self.value.real, "im": self.value.imag, "residual": self.residual}


def relative_residual(p: Polynomial, z, prec: int = 2 * START_BITS) -> float:
    """|p(z)| / (1 + sum |c_k| |z|^k), evaluated at ``prec`` bits."""
    with mpmath.workprec(prec):
        z = mpmath.mpc(z)
        r = abs(z)
        val = mpmath.mpc(0)
        scale = mpmath.mpf(0)
        for c in reversed(p.coefficients):
            val = val * z + c
            scale = scale * r + abs(c)
        return float(abs(val) / (1 + scale))


def _initial_guesses(coeffs: list[int]) -> np.ndarray:
    n = len(coeffs) - 1
    # geometric mean of the root moduli, from the constant and leading terms
    lead, const = abs(coeffs[-1]), abs(coeffs[0])
    radius = math.exp((math.log(const) - math.log(lead)) / n) if const else 1.0
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    return radius * np.exp(1j * angles)


def _aberth_double(coeffs: list[int], z: np.ndarray, maxiter: int = 500) -> np.ndarray:
    try:
        c = np.array([float(x) for x in reversed(coeffs)])  # high to low
    except OverflowError:
        return z
    dc = np.polyder(c)
    z = z.astype(complex)
    with np.errstate(all="ignore"):
        for _ in range(maxiter):
            pz = np.polyval(c, z)
            dpz = np.polyval(dc, z)
            ratio = pz / dpz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            step = ratio / (1.0 - ratio * inv.sum(axis=1))
            if not np.all(np.isfinite(step)):
                break
            z = z - step
            if np.max(np.abs(step) / np.maximum(np.abs(z), 1e-300)) < 1e-14:
                break
    return z


def _aberth_mp(coeffs: list[int], z: list, bits: int, maxiter: int = 100) -> list:
    n = len(z)
    target = mpmath.mpf(2) ** (-(bits - 8))
    previous = [mpmath.inf] * n
    active = set(range(n))
    for sweep in range(maxiter):
        if not active:
            break
        for k in sorted(active):
            zk = z[k]
            p = mpmath.mpc(0)
            dp = mpmath.mpc(0)
            for c in reversed(coeffs):
                dp = dp * zk + p
                p = p * zk + c
            if p == 0:
                active.discard(k)
                continue
            if dp == 0:
                # flat spot; nudge and retry next sweep
                z[k] = zk * (1 + target) + target
                continue
            w = p / dp
            s = mpmath.fsum(1 / (zk - z[j]) for j in range(n) if j != k and z[j] != zk)
            step = w / (1 - w * s)
            z[k] = zk - step
            rel = abs(step) / max(abs(z[k]), target)
            # a small step that stopped shrinking is rounding noise (or a
            # multiple root); the residual and Vieta checks decide later
            if rel < target or (sweep >= 3 and rel < 1e-6 and rel > previous[k] / 2):
                active.discard(k)
            previous[k] = rel
    return z


def _vieta_error(coeffs: list[int], z: list) -> float:
    """Largest coefficient mismatch of lead * prod(x - z_k) against ``coeffs``.

    Each mismatch is measured against the same product built from |z_k|,
    which bounds the size of the elementary symmetric functions.
    """
    rebuilt = [mpmath.mpc(1)]
    bound = [mpmath.mpf(1)]
    for zk in z:
        r = abs(zk)
        rebuilt = [mpmath.mpc(0)] + rebuilt
        bound = [mpmath.mpf(0)] + bound
        for i in range(len(rebuilt) - 1):
            rebuilt[i] -= zk * rebuilt[i + 1]
            bound[i] += r * bound[i + 1]
    lead = coeffs[-1]
    worst = 0.0
    for c, e, b in zip(coeffs, rebuilt, bound):
        worst = max(worst, float(abs(e - mpmath.mpf(c) / lead) / b))
    return worst


def polynomial_roots(
    p: Polynomial,
    tol: float = DEFAULT_TOL,
    start_bits: int | None = None,
    max_escalations: int = MAX_ESCALATIONS,
) -> list[Root]:
    """All complex roots of ``p`` with multiplicity, sorted by (re, im).

    ``start_bits`` defaults to ``2 * (bits of the largest coefficient) + 64``
    and never below START_BITS; tree polynomials need roughly that much
    before the Aberth iteration separates clustered roots.

    Besides the residual bound, the root set must rebuild the coefficients
    (to ``sqrt(tol)`` relative); otherwise near-duplicate approximations of
    one root could pass the residual test while another root is missing.
    """
    if p.degree < 1:
        raise InputError("polynomial_roots needs degree >= 1")
    coeffs = list(p.coefficients)
    zeros = 0
    while coeffs[0] == 0:
        coeffs.pop(0)
        zeros += 1
    reduced = Polynomial(coeffs)
    found: list[Root] = [Root(0j, 0.0) for _ in range(zeros)]
    if reduced.degree == 0:
        return found

    guesses = _aberth_double(coeffs, _initial_guesses(coeffs))
    z = [complex(g) if np.isfinite(g) else complex(1, 1) for g in guesses]
    if start_bits is None:
        start_bits = 2 * max(abs(c) for c in coeffs).bit_length() + START_BITS
    bits = max(start_bits, START_BITS)
    worst = math.inf
    for _ in range(max_escalations + 1):
        with mpmath.workprec(bits):
            z = _aberth_mp(coeffs, [mpmath.mpc(zk) for zk in z], bits)
            residuals = [relative_residual(reduced, zk, prec=bits) for zk in z]
            worst = max(residuals)
            vieta = _vieta_error(coeffs, z)
        if worst <= tol and vieta <= math.sqrt(tol):
            found.extend(Root(complex(v), r) for v, r in zip(z, residuals))
            return sorted(found, key=lambda r: (r.value.real, r.value.imag))
        log.debug("residual %.3g, vieta %.3g at %d bits; escalating", worst, vieta, bits)
        bits *= 2
    raise NumericalError(
        f"root refinement stalled: residual {worst:.3g} (tol {tol:g}) after "
        f"{max_escalations} escalations",
        achieved=worst,
    )


def roots_to_json(roots: list[Root]) -> str:
    return json.dumps([r.to_dict() for r in roots])
