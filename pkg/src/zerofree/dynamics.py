"""Tree ratios, the map f(z_1..z_d) = lam / prod(1 + z_i), and sector domains.

For a rooted tree the ratio ``R = lam * Z_{T-N[v]} / Z_{T-v}`` obeys
``R_v = f(R_children)``; ``Z_T(lam) = 0`` exactly when ``R_root = -1``.
The set S generated from 0 by ``f`` is explored by truncated sampling.
"""
from __future__ import annotations

import cmath
import itertools
import json
import math
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, InputError, SingularityError
from .graphs import RootedTree

POLE_EPS = 1e-14


def ratio(tree: RootedTree, lam: complex) -> complex:
    """R_{T,root} computed bottom-up by the tree recursion."""
    lam = complex(lam)
    values: dict[int, complex] = {}
    for v in reversed(tree.order):
        denom = 1 + 0j
        for c in tree.children(v):
            w = 1 + values.pop(c)
            if abs(w) < POLE_EPS:
                raise SingularityError(f"|1 + R| < {POLE_EPS:g} at subtree rooted at {c}", where=c)
            denom *= w
        values[v] = lam / denom
    return values[tree.root]


def f_map(lam: complex, zs: Sequence[complex]) -> complex:
    """lam / prod(1 + z_i); the empty product gives lam."""
    denom = 1 + 0j
    for i, z in enumerate(zs):
        w = 1 + complex(z)
        if abs(w) < POLE_EPS:
            raise SingularityError(f"pole: |1 + z_{i}| < {POLE_EPS:g}", where=i)
        denom *= w
    return complex(lam) / denom


def _arg(z: complex) -> float:
    return 0.0 if z == 0 else cmath.phase(z)


@dataclass(frozen=True)
class ConeDomain:
    """Truncated sector {z : |z| <= radius, -beta <= arg z <= gamma}."""

    radius: float
    beta: float
    gamma: float

    def __post_init__(self):
        if self.radius < 0:
            raise InputError("radius must be nonnegative")
        for name in ("beta", "gamma"):
            a = getattr(self, name)
            if not 0 <= a <= math.pi / 2:
                raise InputError(f"{name} must lie in [0, pi/2], got {a}")

    def contains(self, z: complex, tol: float = 0.0) -> bool:
        z = complex(z)
        if z == 0:
            return True
        if abs(z) > self.radius * (1 + tol) + tol:
            return False
        a = _arg(z)
        return -self.beta - tol <= a <= self.gamma + tol

    def corners(self) -> tuple[complex, complex, complex]:
        return (
            0j,
            cmath.rect(self.radius, -self.beta),
            cmath.rect(self.radius, self.gamma),
        )

    def distance_to(self, point: complex) -> float:
        """Euclidean distance from ``point`` to the closed sector."""
        point = complex(point)
        if self.contains(point):
            return 0.0
        candidates = []
        for phi in (-self.beta, self.gamma):
            u = cmath.rect(1.0, phi)
            t = min(max((point * u.conjugate()).real, 0.0), self.radius)
            candidates.append(abs(point - t * u))
        a = _arg(point)
        if -self.beta <= a <= self.gamma:
            candidates.append(abs(point) - self.radius)
        return min(candidates)

    def distance_to_minus_one(self) -> float:
        return self.distance_to(-1)


def cone_contains(cone: ConeDomain, z: complex) -> bool:
    return cone.contains(z)


def _sample_sector(cone: ConeDomain, rng: random.Random) -> complex:
    # uniform by area: radius ~ R sqrt(U)
    r = cone.radius * math.sqrt(rng.random())
    a = -cone.beta + (cone.beta + cone.gamma) * rng.random()
    return cmath.rect(r, a)


def cone_invariance_check(
    lam: complex,
    cone: ConeDomain,
    d: int,
    trials: int = 2000,
    seed: int = 0,
    tol: float = 1e-12,
) -> tuple[bool, tuple[complex, ...] | None]:
    """Test whether f maps cone^d into cone.

    Corner tuples (every combination of 0 and the two far corners) are
    tried first, then ``trials`` tuples sampled uniformly by area.  Returns
    ``(True, None)`` or ``(False, offending tuple)``.
    """
    lam = complex(lam)
    if d < 0:
        raise InputError("d must be nonnegative")
    if not math.isclose(cone.radius, abs(lam), rel_tol=1e-12, abs_tol=1e-15):
        raise InputError("cone radius must equal |lam|")
    if d == 0:
        ok = cone.contains(lam, tol)
        return ok, None if ok else ()

    corners = cone.corners()
    if d <= 6:
        fixed = itertools.product(corners, repeat=d)
    else:
        fixed = ((c,) * d for c in corners)
        fixed = itertools.chain(fixed, ((corners[1],) * (d // 2) + (corners[2],) * (d - d // 2),))
    rng = random.Random(seed)
    sampled = (tuple(_sample_sector(cone, rng) for _ in range(d)) for _ in range(trials))
    for zs in itertools.chain(fixed, sampled):
        if not cone.contains(f_map(lam, zs), tol):
            return False, zs
    return True, None


@dataclass(frozen=True)
class OrbitReport:
    depth: int
    samples: int
    min_distance_to_minus_one: float
    witness: complex

    def to_json(self) -> str:
        return json.dumps(
            {
                "depth": self.depth,
                "samples": self.samples,
                "min_distance": self.min_distance_to_minus_one,
                "witness": {"re": self.witness.real, "im": self.witness.imag},
            }
        )


def orbit_explore(lam: complex, d: int, depth: int, budget: int = 64, seed: int = 0) -> OrbitReport:
    """Truncated, seeded exploration of the set generated from 0 by f.

    Level 0 is {0}.  Each later level holds at most ``budget`` new images:
    up to half come from the diagonal tuples (z, .., z) of the previous
    level (these are the ratios of complete d-ary trees), the rest from
    random d-tuples drawn from all distinct elements found so far.
    Reports the element closest to -1.
    """
    lam = complex(lam)
    if depth < 0 or budget < 1 or d < 1:
        raise InputError("need depth >= 0, budget >= 1, d >= 1")
    rng = random.Random(seed)
    pool = [0j]
    seen = {0j}
    previous = [0j]
    best, witness = 1.0, 0j
    for _ in range(depth):
        level = []
        tuples = [(z,) * d for z in previous[: max(1, budget // 2)]]
        tuples += [tuple(rng.choice(pool) for _ in range(d)) for _ in range(budget - len(tuples))]
        for zs in tuples:
            try:
                image = f_map(lam, zs)
            except SingularityError as exc:
                return OrbitReport(depth, len(pool) + len(level), 0.0, zs[exc.where])
            if image in seen:
                continue
            seen.add(image)
            level.append(image)
            dist = abs(image + 1)
            if dist < best:
                best, witness = dist, image
        pool.extend(level)
        if level:
            previous = level
    return OrbitReport(depth, len(pool), best, witness)


def minus_one_ball_radius(lam: complex, d: int) -> float:
    """Radius of the ball around -1 avoided by S when -1 is not in its closure.

    Valid for d >= 3 and |lam| at or beyond Shearer's bound d^d/(d+1)^(d+1).
    """
    if d < 3:
        raise DomainError("the ball radius degenerates for d < 3")
    r = abs(complex(lam))
    threshold = d**d / (d + 1) ** (d + 1)
    if r < threshold * (1 - 1e-12):
        raise DomainError(f"|lam| = {r} is inside Shearer's disk (radius {threshold})")
    return r * (d - 2) ** d / (d - 1) ** (d - 1)
