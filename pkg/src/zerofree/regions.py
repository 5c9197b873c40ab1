"""Zero-free regions for the independence polynomial at maximum degree Delta.

Throughout ``d = Delta - 1``.  The regions are

* Shearer's disk ``|lam| <= d^d / (d+1)^(d+1)``;
* the Peters-Regts sectors ``D_eps`` and their union;
* ``U_d``, the image of the closed unit disk under
  ``alpha -> -alpha d^d / (d + alpha)^(d+1)``;
* the domain ``D`` traced by ``(t(beta), s(beta))``, ``beta in [0, pi/2]``,
  squeezed between the half disks ``D1`` (radius 7/8 tan(pi/2d)) and
  ``D2`` (radius tan(pi/2d)).

``s(beta, gamma)`` is the largest modulus for which the sector
``{|z| <= |lam|, -beta <= arg z <= gamma}`` is mapped into itself, and
``t(beta) = pi/2 - d * beta'`` is the matching argument.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError, InputError, InvariantError

HALF_PI = math.pi / 2
DEFAULT_BOUNDARY_SAMPLES = 512
DEFAULT_UD_SAMPLES = 4096
BISECTION_TOL = 1e-12
BOUNDARY_TOL = 1e-9


def _check_d(d: int) -> None:
    if d < 2:
        raise DomainError(f"d = Delta - 1 must be at least 2, got {d}")


def shearer_radius(delta: int) -> float:
    """(Delta-1)^(Delta-1) / Delta^Delta."""
    if delta < 2:
        raise DomainError("Shearer's bound needs Delta >= 2")
    return (delta - 1) ** (delta - 1) / delta**delta


def beta_prime(r: float, angle: float) -> float:
    """arg(1 + r e^{i angle}) = arctan(r sin(angle) / (1 + r cos(angle)))."""
    return math.atan2(r * math.sin(angle), 1 + r * math.cos(angle))


# -- the quadratic A x^2 + B x + C = 0 -------------------------------------------

@dataclass(frozen=True)
class QuadraticCoeffs:
    a: float
    b: float
    c: float
    u: float


def quadratic_coeffs(beta: float, gamma: float, d: int) -> QuadraticCoeffs:
    """Coefficients of the boundary quadratic, with u = tan((beta+gamma)/d).

    Raises InvariantError if the sign pattern a > 0, b >= 0, c < 0 fails,
    which means the parameters are outside the admissible range.
    """
    _check_d(d)
    if not (0 <= beta <= HALF_PI and 0 <= gamma <= HALF_PI):
        raise DomainError("beta and gamma must lie in [0, pi/2]")
    theta = (beta + gamma) / d
    if theta >= HALF_PI:
        raise DomainError("tan((beta+gamma)/d) is unbounded here")
    u = math.tan(theta)
    a = math.sin(beta + gamma) - u * math.cos(beta + gamma)
    b = math.sin(beta) + math.sin(gamma) - u * (math.cos(beta) + math.cos(gamma))
    c = -u
    scale = 1 + abs(u)
    if not (a > 0 and b >= -1e-12 * scale and c < 0):
        raise InvariantError(f"sign pattern violated: a={a}, b={b}, c={c}")
    return QuadraticCoeffs(a, b, c, u)


def _scaled_coeffs(beta: float, gamma: float, d: int) -> tuple[float, float, float]:
    # the quadratic multiplied through by cos((beta+gamma)/d); finite even
    # when (beta+gamma)/d = pi/2 (d = 2, beta = gamma = pi/2)
    theta = (beta + gamma) / d
    a = math.sin(beta + gamma - theta)
    b = math.sin(beta - theta) + math.sin(gamma - theta)
    c = -math.sin(theta)
    return a, b, c


def s_radius(beta: float, gamma: float, d: int) -> float:
    """Unique positive root of A x^2 + B x + C = 0."""
    _check_d(d)
    if not (0 <= beta <= HALF_PI and 0 <= gamma <= HALF_PI):
        raise DomainError("beta and gamma must lie in [0, pi/2]")
    if beta + gamma == 0:
        raise DomainError("beta = gamma = 0 leaves a degenerate sector")
    a, b, c = _scaled_coeffs(beta, gamma, d)
    if not (a > 0 and c < 0):
        raise InvariantError(f"sign pattern violated: a={a}, c={c}")
    b = max(b, 0.0)
    # cancellation-free form of (-b + sqrt(b^2 - 4ac)) / 2a
    return -2 * c / (b + math.sqrt(b * b - 4 * a * c))


def t_angle(beta: float, d: int) -> float:
    """Boundary argument pi/2 - d * beta'(s(beta, pi/2), beta)."""
    return HALF_PI - d * beta_prime(s_radius(beta, HALF_PI, d), beta)


@dataclass(frozen=True)
class BoundarySample:
    beta: float
    s_value: float
    t_value: float


def new_domain_boundary(d: int, samples: int = DEFAULT_BOUNDARY_SAMPLES) -> list[BoundarySample]:
    """(t, s) on a uniform beta grid over [0, pi/2], endpoints included."""
    if samples < 2:
        raise InputError("need at least 2 samples")
    _check_d(d)
    out = []
    for beta in np.linspace(0.0, HALF_PI, samples):
        beta = float(beta)
        s = s_radius(beta, HALF_PI, d)
        out.append(BoundarySample(beta, s, HALF_PI - d * beta_prime(s, beta)))
    return out


@lru_cache(maxsize=256)
def _t_grid(d: int, samples: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    pts = new_domain_boundary(d, samples)
    return tuple(p.beta for p in pts), tuple(p.t_value for p in pts)


def _bisect_crossing(lo: float, hi: float, alpha: float, d: int) -> float:
    h_lo = t_angle(lo, d) - alpha
    while hi - lo > BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        h_mid = t_angle(mid, d) - alpha
        if (h_mid > 0) == (h_lo > 0):
            lo, h_lo = mid, h_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def new_domain_radius(alpha: float, d: int, samples: int = DEFAULT_BOUNDARY_SAMPLES) -> float | None:
    """Largest s(beta) over all beta with t(beta) = |alpha|; None if there is none.

    Every sign change of t - |alpha| on the grid is refined by bisection,
    so no monotonicity of t is assumed.
    """
    _check_d(d)
    alpha = abs(alpha)
    if alpha > HALF_PI:
        return None
    betas, ts = _t_grid(d, samples)
    h = [t - alpha for t in ts]
    roots = []
    for i, hi in enumerate(h):
        if abs(hi) <= BISECTION_TOL:
            roots.append(betas[i])
        elif i + 1 < len(h) and abs(h[i + 1]) > BISECTION_TOL and (hi > 0) != (h[i + 1] > 0):
            roots.append(_bisect_crossing(betas[i], betas[i + 1], alpha, d))
    if not roots:
        return None
    return max(s_radius(b, HALF_PI, d) for b in roots)


def new_domain_contains(lam: complex, d: int, samples: int = DEFAULT_BOUNDARY_SAMPLES, tol: float = 1e-12) -> bool:
    """Membership in D; conjugation symmetric, so only |arg lam| matters."""
    lam = complex(lam)
    if lam == 0:
        return True
    radius = new_domain_radius(cmath.phase(lam), d, samples)
    return radius is not None and abs(lam) <= radius * (1 + tol)


# -- half disks and the Peters-Regts domain -----------------------------------

def half_disk_contains(lam: complex, radius: float, tol: float = 0.0) -> bool:
    lam = complex(lam)
    return lam.real >= -tol and abs(lam) <= radius * (1 + tol)


def half_disk_distance(lam: complex, radius: float) -> float:
    """Distance from ``lam`` to {Re z >= 0, |z| <= radius} (0 inside)."""
    lam = complex(lam)
    if lam.real >= 0:
        return max(abs(lam) - radius, 0.0)
    if abs(lam.imag) <= radius:
        return -lam.real
    return abs(lam - complex(0, math.copysign(radius, lam.imag)))


def d1_radius(delta: int) -> float:
    _check_d(delta - 1)
    return 7 / 8 * math.tan(math.pi / (2 * (delta - 1)))


def d2_radius(delta: int) -> float:
    _check_d(delta - 1)
    return math.tan(math.pi / (2 * (delta - 1)))


def pr_eps_contains(lam: complex, delta: int, eps: float) -> bool:
    """lam in D_eps: |lam| <= tan(pi/((2+eps)(Delta-1))), |arg| <= eps pi/(2(2+eps))."""
    lam = complex(lam)
    if eps <= 0:
        raise DomainError("eps must be positive")
    if lam == 0:
        return True
    d = delta - 1
    return (
        abs(lam) <= math.tan(math.pi / ((2 + eps) * d))
        and abs(cmath.phase(lam)) <= eps * math.pi / (2 * (2 + eps))
    )


def pr_radius(alpha: float, delta: int) -> float:
    """Modulus bound of the union of D_eps along |arg| = alpha.

    The smallest admissible eps solves eps pi / (2 (2 + eps)) = alpha, i.e.
    eps = 4 alpha / (pi - 2 alpha); the modulus bound shrinks with eps, so
    this eps is optimal and the bound is tan((pi/2 - alpha)/(Delta-1)).
    """
    alpha = abs(alpha)
    if alpha >= HALF_PI:
        return 0.0
    eps = 4 * alpha / (math.pi - 2 * alpha)
    return math.tan(math.pi / ((2 + eps) * (delta - 1)))


def pr_contains(lam: complex, delta: int) -> bool:
    if delta < 3:
        raise DomainError("the Peters-Regts domain is used here for Delta >= 3")
    lam = complex(lam)
    if lam == 0:
        return True
    return abs(lam) <= pr_radius(cmath.phase(lam), delta)


# -- U_d ------------------------------------------------------------------------

def ud_boundary_point(theta: float, d: int) -> complex:
    """-e^{i theta} d^d / (d + e^{i theta})^(d+1)."""
    _check_d(d)
    a = cmath.exp(1j * theta)
    return -a * d**d / (d + a) ** (d + 1)


@lru_cache(maxsize=64)
def _ud_polyline(d: int, samples: int) -> np.ndarray:
    _check_d(d)
    if samples < 64:
        raise InputError("U_d needs at least 64 boundary samples")
    theta = 2 * np.pi * np.arange(samples + 1) / samples
    a = np.exp(1j * theta)
    pts = -a * float(d) ** d / (d + a) ** (d + 1)
    pts[-1] = pts[0]
    return pts


def _segments_cross(p1, p2, q1, q2) -> np.ndarray:
    def orient(a, b, c):
        return np.sign(((b - a).conjugate() * (c - a)).imag)

    return (orient(p1, p2, q1) * orient(p1, p2, q2) < 0) & (orient(q1, q2, p1) * orient(q1, q2, p2) < 0)


@lru_cache(maxsize=64)
def ud_self_intersections(d: int, samples: int = DEFAULT_UD_SAMPLES) -> tuple[tuple[int, int], ...]:
    """Index pairs of non-adjacent boundary segments that cross (expected none)."""
    pts = _ud_polyline(d, samples)
    a, b = pts[:-1], pts[1:]
    n = len(a)
    hits = []
    block = 256
    for start in range(0, n, block):
        i = np.arange(start, min(start + block, n))[:, None]
        j = np.arange(n)[None, :]
        crossing = _segments_cross(a[i], b[i], a[j], b[j])
        gap = np.abs(i - j)
        crossing &= (gap > 1) & (gap < n - 1)
        for ii, jj in zip(*np.nonzero(crossing)):
            if start + ii < jj:
                hits.append((int(start + ii), int(jj)))
    return tuple(hits)


def _polyline_distance(z: np.ndarray, pts: np.ndarray) -> np.ndarray:
    a, b = pts[:-1], pts[1:]
    seg = b - a
    seg_norm2 = np.maximum(np.abs(seg) ** 2, 1e-300)
    t = np.clip(((z[:, None] - a) * seg.conjugate()).real / seg_norm2, 0.0, 1.0)
    return np.min(np.abs(a + t * seg - z[:, None]), axis=1)


def _winding(z: np.ndarray, pts: np.ndarray) -> np.ndarray:
    # signed crossings of the upward ray through each point
    a, b = pts[:-1], pts[1:]
    zx, zy = z.real[:, None], z.imag[:, None]
    ax, ay, bx, by = a.real, a.imag, b.real, b.imag
    side = (bx - ax) * (zy - ay) - (zx - ax) * (by - ay)
    up = (ay <= zy) & (by > zy) & (side > 0)
    down = (ay > zy) & (by <= zy) & (side < 0)
    return up.sum(axis=1) - down.sum(axis=1)


def _ud_batch(points: np.ndarray, d: int, samples: int) -> tuple[np.ndarray, np.ndarray]:
    """Winding numbers and, where the winding is zero, polyline distances."""
    pts = _ud_polyline(d, samples)
    wind = np.empty(len(points), dtype=int)
    dist = np.zeros(len(points))
    chunk = max(1, 2**21 // len(pts))
    for start in range(0, len(points), chunk):
        z = points[start : start + chunk]
        w = _winding(z, pts)
        wind[start : start + chunk] = w
        outside = np.nonzero(w == 0)[0]
        if len(outside):
            dist[start + outside] = _polyline_distance(z[outside], pts)
    return dist, wind


def ud_boundary_distance(lam: complex, d: int, samples: int = DEFAULT_UD_SAMPLES) -> float:
    """Distance from ``lam`` to the sampled boundary polyline of U_d."""
    return float(_polyline_distance(np.array([complex(lam)]), _ud_polyline(d, samples))[0])


def ud_winding_number(lam: complex, d: int, samples: int = DEFAULT_UD_SAMPLES) -> int:
    return int(_ud_batch(np.array([complex(lam)]), d, samples)[1][0])


def ud_contains_many(points, d: int, samples: int = DEFAULT_UD_SAMPLES) -> np.ndarray:
    """Vectorized ud_contains over an array of points."""
    if ud_self_intersections(d, samples):
        warnings.warn(f"U_{d} boundary polyline self-intersects; winding test unreliable")
    dist, wind = _ud_batch(np.asarray(points, dtype=complex).ravel(), d, samples)
    return (wind != 0) | (dist <= BOUNDARY_TOL)


def ud_contains(lam: complex, d: int, samples: int = DEFAULT_UD_SAMPLES) -> bool:
    """Membership in U_d via the winding number of its sampled boundary.

    Points within BOUNDARY_TOL of the polyline count as inside.
    """
    return bool(ud_contains_many([lam], d, samples)[0])


# -- certificates ---------------------------------------------------------------

def certificate_margins(lam: complex, beta: float, gamma: float, d: int) -> tuple[float, float]:
    """Slack in d gamma' - beta <= arg lam <= gamma - d beta' (both >= 0 when certified)."""
    lam = complex(lam)
    if not (0 <= beta <= HALF_PI and 0 <= gamma <= HALF_PI):
        raise DomainError("beta and gamma must lie in [0, pi/2]")
    alpha = 0.0 if lam == 0 else cmath.phase(lam)
    if not -HALF_PI < alpha < HALF_PI:
        raise DomainError("the certificate needs arg lam in (-pi/2, pi/2)")
    r = abs(lam)
    bp, gp = beta_prime(r, beta), beta_prime(r, gamma)
    return alpha - (d * gp - beta), (gamma - d * bp) - alpha


def certificate_check(lam: complex, beta: float, gamma: float, d: int, tol: float = 1e-12) -> bool:
    """True if the sector with half-angles (beta, gamma) certifies Z_G(lam) != 0."""
    left, right = certificate_margins(lam, beta, gamma, d)
    return left >= -tol and right >= -tol


# -- region descriptors ---------------------------------------------------------

REGION_KINDS = ("shearer", "pr_eps", "pr", "ud", "new", "d1", "d2")


@dataclass(frozen=True)
class RegionSpec:
    """One of the regions, tagged with its degree bound Delta."""

    kind: str
    delta: int
    eps: float | None = field(default=None)

    def __post_init__(self):
        if self.kind not in REGION_KINDS:
            raise InputError(f"unknown region {self.kind!r}")
        minimum = 2 if self.kind == "shearer" else 3
        if self.delta < minimum:
            raise InputError(f"region {self.kind} needs Delta >= {minimum}")
        if self.kind == "pr_eps" and not (self.eps and self.eps > 0):
            raise InputError("pr_eps needs a positive eps")

    @property
    def d(self) -> int:
        return self.delta - 1

    def contains(self, lam: complex) -> bool:
        k = self.kind
        if k == "shearer":
            return abs(complex(lam)) <= shearer_radius(self.delta)
        if k == "pr_eps":
            return pr_eps_contains(lam, self.delta, self.eps)
        if k == "pr":
            return pr_contains(lam, self.delta)
        if k == "ud":
            return ud_contains(lam, self.d)
        if k == "new":
            return new_domain_contains(lam, self.d)
        if k == "d1":
            return half_disk_contains(lam, d1_radius(self.delta))
        return half_disk_contains(lam, d2_radius(self.delta))

    def boundary(self, samples: int) -> list[tuple[float, float]]:
        """Closed boundary as (arg, modulus) pairs."""
        if samples < 2:
            raise InputError("need at least 2 samples")
        k = self.kind
        if k == "shearer":
            r = shearer_radius(self.delta)
            return [(float(a), r) for a in np.linspace(-math.pi, math.pi, samples)]
        if k in ("d1", "d2"):
            r = d1_radius(self.delta) if k == "d1" else d2_radius(self.delta)
            return [(float(a), r) for a in np.linspace(-HALF_PI, HALF_PI, samples)]
        if k == "pr":
            return [(float(a), pr_radius(a, self.delta)) for a in np.linspace(-HALF_PI, HALF_PI, samples)]
        if k == "pr_eps":
            half = self.eps * math.pi / (2 * (2 + self.eps))
            r = math.tan(math.pi / ((2 + self.eps) * self.d))
            return [(float(a), r) for a in np.linspace(-half, half, samples)]
        if k == "ud":
            out = []
            for th in np.linspace(0.0, 2 * math.pi, samples):
                z = ud_boundary_point(float(th), self.d)
                out.append((cmath.phase(z), abs(z)))
            return out
        pts = new_domain_boundary(self.d, samples)
        lower = [(-p.t_value, p.s_value) for p in pts]
        upper = [(p.t_value, p.s_value) for p in reversed(pts)]
        return lower + upper[1:]


# -- containment scan -----------------------------------------------------------

@dataclass
class ContainmentReport:
    delta: int
    samples: int
    checked: dict[str, int] = field(default_factory=dict)
    counterexamples: dict[str, list[complex]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.counterexamples.values())

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "samples": self.samples,
            "checked": self.checked,
            "counterexamples": {
                k: [{"re": z.real, "im": z.imag} for z in v] for k, v in self.counterexamples.items()
            },
        }


def region_containment_scan(
    delta: int,
    samples: int = 256,
    tol: float = BOUNDARY_TOL,
    ud_samples: int = DEFAULT_UD_SAMPLES,
) -> ContainmentReport:
    """Check D1 in D, D in D2, D_PR in D and Shearer in U_d on a polar grid.

    Each region is sampled at ``samples`` arguments times ``samples``
    moduli (fractions of the region's radius along that argument).  Points
    outside by at most ``tol`` (relative) count as boundary equality.
    """
    d = delta - 1
    _check_d(d)
    report = ContainmentReport(delta, samples)
    relations = ("d1_in_d", "d_in_d2", "pr_in_d", "shearer_in_ud")
    for name in relations:
        report.checked[name] = 0
        report.counterexamples[name] = []
    if samples < 2:
        return report

    fractions = np.linspace(0.0, 1.0, samples)
    r1, r2 = d1_radius(delta), d2_radius(delta)
    for alpha in np.linspace(-HALF_PI, HALF_PI, samples):
        alpha = float(alpha)
        rd = new_domain_radius(alpha, d)
        rpr = pr_radius(alpha, delta)
        for f in fractions:
            # D1 in D
            r = f * r1
            report.checked["d1_in_d"] += 1
            if r > 0 and (rd is None or r > rd * (1 + tol)):
                report.counterexamples["d1_in_d"].append(cmath.rect(r, alpha))
            # D_PR in D
            r = f * rpr
            report.checked["pr_in_d"] += 1
            if r > 0 and (rd is None or r > rd * (1 + tol)):
                report.counterexamples["pr_in_d"].append(cmath.rect(r, alpha))
            # D in D2
            if rd is not None:
                r = f * rd
                report.checked["d_in_d2"] += 1
                if r > 0 and (abs(alpha) > HALF_PI or r > r2 * (1 + tol)):
                    report.counterexamples["d_in_d2"].append(cmath.rect(r, alpha))

    thetas = np.linspace(-math.pi, math.pi, samples, endpoint=False)
    disk = (fractions[None, :] * shearer_radius(delta) * np.exp(1j * thetas)[:, None]).ravel()
    inside = ud_contains_many(disk, d, ud_samples)
    report.checked["shearer_in_ud"] = len(disk)
    report.counterexamples["shearer_in_ud"] = [complex(z) for z in disk[~inside]]
    return report
