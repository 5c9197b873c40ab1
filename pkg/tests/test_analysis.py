import json
import math
import random

import numpy as np
import pytest

from zerofree.analysis import (
    analysis_point,
    f_function,
    f_function_rearranged,
    g_function,
    quadratic_root_bounds,
    verify_section4,
)
from zerofree.errors import DomainError
from zerofree.regions import HALF_PI, s_radius


def positive_root(a, b, c):
    return (-b + math.sqrt(b * b - 4 * a * c)) / (2 * a)


class TestRootBounds:
    def test_unit(self):
        lo, hi = quadratic_root_bounds(1, 1, -1)
        assert (lo, hi) == (0, 1)
        assert lo <= (math.sqrt(5) - 1) / 2 <= hi

    def test_wide_b(self):
        lo, hi = quadratic_root_bounds(1, 10, -1)
        assert (lo, hi) == pytest.approx((0.099, 0.1))
        assert lo <= positive_root(1, 10, -1) <= hi

    def test_linear_limit(self):
        lo, hi = quadratic_root_bounds(1e-12, 2, -1)
        assert lo == pytest.approx(0.5) and hi == 0.5

    @pytest.mark.parametrize("a,b,c", [(1, 0, -1), (0, 1, -1), (1, 1, 1)])
    def test_preconditions(self, a, b, c):
        with pytest.raises(DomainError):
            quadratic_root_bounds(a, b, c)

    def test_random_bracketing(self):
        rng = random.Random(0)
        for _ in range(10_000):
            a, b, c = rng.uniform(1e-3, 10), rng.uniform(1e-3, 10), -rng.uniform(1e-3, 10)
            lo, hi = quadratic_root_bounds(a, b, c)
            x0 = positive_root(a, b, c)
            assert lo <= x0 * (1 + 1e-12) and x0 <= hi * (1 + 1e-12)


class TestFG:
    @pytest.mark.parametrize("d", [2, 3, 9, 64])
    def test_beta_zero(self, d):
        assert f_function(d, 0) == pytest.approx(0, abs=1e-12)
        assert g_function(d, 0) == pytest.approx(0, abs=1e-12)

    @pytest.mark.parametrize("d", [3, 9, 64])
    def test_beta_half_pi(self, d):
        assert f_function(d, HALF_PI) == pytest.approx(0, abs=1e-12)
        assert g_function(d, HALF_PI) == pytest.approx(0, abs=1e-12)

    def test_d2_half_pi_undefined(self):
        # U = tan(pi/2) there
        with pytest.raises(DomainError):
            f_function(2, HALF_PI)
        with pytest.raises(DomainError):
            g_function(2, HALF_PI)

    def test_d2_one_sided_limits(self):
        # the limits as beta -> pi/2 are nonzero: F -> -4/pi, G -> 4/pi - 1
        beta = HALF_PI - 1e-7
        assert f_function(2, beta) == pytest.approx(-4 / math.pi, rel=1e-5)
        assert g_function(2, beta) == pytest.approx(4 / math.pi - 1, rel=1e-5)

    def test_f_negative_inside(self):
        assert f_function(3, math.pi / 4) < 0

    def test_g_positive_inside(self):
        assert g_function(9, math.pi / 4) > 0

    def test_forms_agree(self):
        for d in range(2, 65):
            for beta in np.linspace(0, HALF_PI, 65)[:-1]:
                a, b = f_function(d, float(beta)), f_function_rearranged(d, float(beta))
                assert abs(a - b) <= 1e-12 * max(1, abs(a))

    def test_f_nonpositive_gives_lower_bound(self):
        for d in (3, 7, 30):
            for beta in np.linspace(0, HALF_PI, 33):
                beta = float(beta)
                p = analysis_point(d, beta)
                if p.f_value <= 0:
                    assert s_radius(beta, HALF_PI, d) >= p.v / (1 + math.sin(beta)) * (1 - 1e-12)

    def test_u_at_least_v(self):
        for d in (2, 3, 10, 64):
            for beta in np.linspace(0, HALF_PI, 33)[:-1]:
                p = analysis_point(d, float(beta))
                assert p.u >= p.v * (1 - 1e-15)

    def test_bad_inputs(self):
        with pytest.raises(DomainError):
            g_function(1, 0.3)
        with pytest.raises(DomainError):
            g_function(4, 2.0)


class TestVerifySection4:
    def test_clean_range(self):
        rep = verify_section4(range(3, 65), 257)
        assert rep.ok, [c.to_dict() for c in rep.violations]
        assert rep.undefined == []

    def test_d2_pole_listed(self):
        rep = verify_section4([2], 33)
        assert rep.ok
        assert rep.undefined == [(2, HALF_PI)]

    def test_empty(self):
        rep = verify_section4([], 257)
        assert rep.checks == [] and rep.ok

    def test_json(self):
        data = json.loads(verify_section4([3, 4], 9).to_json())
        names = {c["name"] for c in data["checks"]}
        assert {"sandwich", "u_ge_v", "f_nonpositive", "g_nonnegative", "f_forms"} <= names
        assert all(set(c) == {"name", "d", "violations", "worst_margin"} for c in data["checks"])

    def test_range_guard(self):
        with pytest.raises(DomainError):
            verify_section4([300], 9)

    def test_observations_reported(self):
        rep = verify_section4([3, 10], 65)
        obs = {o["d"]: o for o in rep.observations}
        # G looked concave and s convex on every grid tried; reported only
        assert obs[3]["g_max_second_difference"] <= 0
        assert obs[10]["s_min_second_difference"] >= 0
