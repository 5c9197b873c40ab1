"""Inequalities behind the lower bound on s(beta, pi/2).

With gamma = pi/2 and ``U = tan((beta + pi/2)/d)`` the boundary quadratic
reads ``A = cos b + U sin b``, ``B = 1 + sin b - U cos b``, ``C = -U``.  With
``V = (2 beta + pi)/pi * tan(pi/2d)`` the claim ``s >= V / (1 + sin b)``
reduces to ``F(d, beta) <= 0``, which in turn follows from ``G(d, beta) >= 0``.

F and G are undefined where ``(beta + pi/2)/d = pi/2``, i.e. d = 2 and
beta = pi/2; callers get a DomainError there.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import DomainError, InvariantError
from .regions import HALF_PI, s_radius

FORM_AGREEMENT_TOL = 1e-12


def quadratic_root_bounds(a: float, b: float, c: float) -> tuple[float, float]:
    """Bracket (-c/b - a c^2/b^3, -c/b) for the positive root of a x^2 + b x + c."""
    if not (a > 0 and b > 0 and c < 0):
        raise DomainError(f"need a > 0, b > 0, c < 0; got a={a}, b={b}, c={c}")
    upper = -c / b
    return upper - a * c * c / b**3, upper


def _uv(d: int, beta: float) -> tuple[float, float]:
    if d < 2:
        raise DomainError("d must be at least 2")
    if not 0 <= beta <= HALF_PI:
        raise DomainError("beta must lie in [0, pi/2]")
    theta = (beta + HALF_PI) / d
    if theta >= HALF_PI:
        raise DomainError(f"U = tan({theta}) is unbounded (d={d}, beta={beta})")
    u = math.tan(theta)
    v = (2 * beta + math.pi) / math.pi * math.tan(math.pi / (2 * d))
    return u, v


@dataclass(frozen=True)
class AnalysisPoint:
    d: int
    beta: float
    u: float
    v: float
    f_value: float
    g_value: float


def f_function(d: int, beta: float) -> float:
    """F(d, beta): the boundary quadratic evaluated at x = V / (1 + sin beta).

    Computed from the expanded form and checked against the rearranged one.
    """
    expanded = _f_expanded(d, beta)
    rearranged = f_function_rearranged(d, beta)
    if abs(expanded - rearranged) > FORM_AGREEMENT_TOL * _f_scale(*_uv(d, beta)):
        raise InvariantError(f"F forms disagree at d={d}, beta={beta}: {expanded} vs {rearranged}")
    return expanded


def _f_scale(u: float, v: float) -> float:
    # size of the terms that cancel in F; rounding is relative to this
    return max(1.0, abs(u) * (1 + v) ** 2)


def _f_expanded(d: int, beta: float) -> float:
    u, v = _uv(d, beta)
    sb, cb = math.sin(beta), math.cos(beta)
    x = v / (1 + sb)
    return (cb + u * sb) * x * x + (1 + sb - u * cb) * x - u


def f_function_rearranged(d: int, beta: float) -> float:
    u, v = _uv(d, beta)
    sb, cb = math.sin(beta), math.cos(beta)
    w = (1 + sb) ** 2
    return (v - u) - cb / w * v * (u - v) - sb / w * u * v * (cb - v)


def g_function(d: int, beta: float) -> float:
    """G(d, beta) = U - V - sin b/(1 + sin b)^2 * U V (V - cos b)."""
    u, v = _uv(d, beta)
    sb, cb = math.sin(beta), math.cos(beta)
    return u - v - sb / (1 + sb) ** 2 * u * v * (v - cb)


def analysis_point(d: int, beta: float) -> AnalysisPoint:
    u, v = _uv(d, beta)
    return AnalysisPoint(d, beta, u, v, f_function(d, beta), g_function(d, beta))


@dataclass
class CheckResult:
    name: str
    d: int
    violations: int = 0
    worst_margin: float = math.inf
    # beta values of the violating points
    where: list[float] = field(default_factory=list)

    def record(self, margin: float, beta: float, ok: bool | None = None) -> None:
        """Track a margin (>= 0 means satisfied unless ``ok`` overrides)."""
        self.worst_margin = min(self.worst_margin, margin)
        if not (margin >= 0 if ok is None else ok):
            self.violations += 1
            self.where.append(beta)

    def to_dict(self) -> dict:
        worst = self.worst_margin if math.isfinite(self.worst_margin) else None
        return {"name": self.name, "d": self.d, "violations": self.violations, "worst_margin": worst}


@dataclass
class Section4Report:
    checks: list[CheckResult] = field(default_factory=list)
    # points outside the domain of U (d = 2, beta = pi/2)
    undefined: list[tuple[int, float]] = field(default_factory=list)
    # informational, not gated
    observations: list[dict] = field(default_factory=list)

    @property
    def violations(self) -> list[CheckResult]:
        return [c for c in self.checks if c.violations]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> str:
        return json.dumps(
            {
                "checks": [c.to_dict() for c in self.checks],
                "undefined": [{"d": d, "beta": b} for d, b in self.undefined],
                "observations": self.observations,
            }
        )


def verify_section4(d_values: Iterable[int], grid: int = 257, tol: float = 1e-12) -> Section4Report:
    """Check every inequality of the lower-bound argument on a beta grid.

    Per d: (i) the sandwich bounds bracket s where B > 0; (ii) U >= V;
    (iii) F <= 0, strictly inside (0, pi/2) for d >= 3; (iv) G >= 0;
    (v) -C/B >= U/(1 + sin b) >= V/(1 + sin b) where B > 0;
    (vi) s >= V/(1 + sin b); plus agreement of the two forms of F.
    ``tol`` absorbs rounding at points where equality holds exactly.
    Convexity of s and concavity of G are reported as observations only.
    """
    report = Section4Report()
    betas = np.linspace(0.0, HALF_PI, grid) if grid >= 2 else np.array([])
    for d in d_values:
        if not 2 <= d <= 256:
            raise DomainError("d must lie in [2, 256]")
        names = ("sandwich", "u_ge_v", "f_nonpositive", "g_nonnegative", "upper_chain", "s_lower_bound", "f_forms")
        checks = {n: CheckResult(n, d) for n in names}
        g_values, s_values = [], []
        for i, beta in enumerate(betas):
            beta = float(beta)
            interior = 0 < i < len(betas) - 1
            try:
                u, v = _uv(d, beta)
            except DomainError:
                report.undefined.append((d, beta))
                continue
            sb, cb = math.sin(beta), math.cos(beta)
            a, b, c = cb + u * sb, 1 + sb - u * cb, -u
            s = s_radius(beta, HALF_PI, d)
            s_values.append(s)
            lower_target = v / (1 + sb)

            if b > 0:
                lo, hi = quadratic_root_bounds(a, b, c)
                checks["sandwich"].record(
                    min(s - lo, hi - s), beta, ok=lo <= s * (1 + tol) and s <= hi * (1 + tol)
                )
                upper = -c / b
                mid = u / (1 + sb)
                checks["upper_chain"].record(
                    min(upper - mid, mid - lower_target), beta,
                    ok=upper >= mid * (1 - tol) and mid >= lower_target * (1 - tol),
                )
            checks["u_ge_v"].record(u - v, beta, ok=u >= v * (1 - tol))

            f1 = _f_expanded(d, beta)
            f2 = f_function_rearranged(d, beta)
            scale = _f_scale(u, v)
            checks["f_forms"].record(-abs(f1 - f2), beta, ok=abs(f1 - f2) <= FORM_AGREEMENT_TOL * scale)
            if d >= 3 and interior:
                checks["f_nonpositive"].record(-f1, beta, ok=f1 < 0)
            else:
                checks["f_nonpositive"].record(-f1, beta, ok=f1 <= tol * scale)

            g = g_function(d, beta)
            g_values.append(g)
            checks["g_nonnegative"].record(g, beta, ok=g >= -tol * scale)
            checks["s_lower_bound"].record(s - lower_target, beta, ok=s >= lower_target * (1 - tol))

        report.checks.extend(checks.values())
        if len(g_values) >= 3:
            report.observations.append(
                {
                    "d": d,
                    "g_max_second_difference": float(np.max(np.diff(g_values, 2))),
                    "s_min_second_difference": float(np.min(np.diff(s_values, 2))),
                }
            )
    return report
