import cmath
import json
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zerofree.errors import DomainError, InputError, InvariantError
from zerofree.regions import (
    HALF_PI,
    RegionSpec,
    beta_prime,
    certificate_check,
    certificate_margins,
    d1_radius,
    d2_radius,
    new_domain_boundary,
    new_domain_contains,
    new_domain_radius,
    pr_contains,
    pr_eps_contains,
    pr_radius,
    quadratic_coeffs,
    region_containment_scan,
    s_radius,
    shearer_radius,
    t_angle,
    ud_boundary_point,
    ud_contains,
    ud_contains_many,
    ud_self_intersections,
    ud_winding_number,
)


def ud_preimage_modulus(lam, d):
    """Smallest |alpha| with -alpha d^d = lam (d + alpha)^(d+1)."""
    if lam == 0:
        return 0.0
    # lam (d + a)^(d+1) + d^d a, coefficients high to low
    binom = [math.comb(d + 1, k) * d ** (d + 1 - k) for k in range(d + 2)]  # coefficient of a^k
    coeffs = [lam * c for c in binom]
    coeffs[1] += d**d
    return float(np.min(np.abs(np.roots(coeffs[::-1]))))


class TestShearer:
    @pytest.mark.parametrize("delta,expected", [(2, 0.25), (3, 4 / 27), (10, 9**9 / 10**10)])
    def test_values(self, delta, expected):
        assert shearer_radius(delta) == pytest.approx(expected, rel=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            shearer_radius(1)


class TestBetaPrime:
    def test_zero_angle(self):
        assert beta_prime(3.0, 0.0) == 0

    def test_zero_radius(self):
        assert beta_prime(0.0, 1.2) == 0

    def test_unit(self):
        assert beta_prime(1.0, HALF_PI) == pytest.approx(math.pi / 4)

    @given(st.floats(0, 10), st.floats(0, HALF_PI))
    def test_is_argument(self, r, a):
        assert beta_prime(r, a) == pytest.approx(cmath.phase(1 + cmath.rect(r, a)), abs=1e-12)


class TestQuadratic:
    def test_beta_zero_d2(self):
        q = quadratic_coeffs(0, HALF_PI, 2)
        assert (q.a, q.b, q.c) == pytest.approx((1, 0, -1), abs=1e-15)

    def test_beta_half_pi_d4(self):
        q = quadratic_coeffs(HALF_PI, HALF_PI, 4)
        assert (q.a, q.b, q.c) == pytest.approx((1, 2, -1), abs=1e-15)

    def test_beta_zero_d9(self):
        u = math.tan(math.pi / 18)
        q = quadratic_coeffs(0, HALF_PI, 9)
        assert (q.a, q.b, q.c, q.u) == pytest.approx((1, 1 - u, -u, u), abs=1e-15)

    def test_pole_rejected(self):
        with pytest.raises(DomainError):
            quadratic_coeffs(HALF_PI, HALF_PI, 2)

    def test_degenerate_sector(self):
        # beta = gamma = 0 gives a = c = 0
        with pytest.raises(InvariantError):
            quadratic_coeffs(0, 0, 3)

    def test_angle_range(self):
        with pytest.raises(DomainError):
            quadratic_coeffs(2.0, 0.5, 3)

    def test_sign_pattern_on_grid(self):
        for d in (2, 3, 9, 64):
            for beta in np.linspace(0, HALF_PI, 33)[:-1]:
                q = quadratic_coeffs(float(beta), HALF_PI, d)
                # B vanishes identically at d = 2; allow rounding relative to U
                assert q.a > 0 and q.b >= -1e-14 * (1 + q.u) and q.c < 0


class TestSRadius:
    def test_d2_flat(self):
        for beta in np.linspace(0, HALF_PI, 50):
            assert s_radius(float(beta), HALF_PI, 2) == pytest.approx(1, abs=1e-12)

    @pytest.mark.parametrize("d", [2, 3, 9, 64])
    def test_endpoints(self, d):
        assert s_radius(0, HALF_PI, d) == pytest.approx(math.tan(math.pi / (2 * d)), abs=1e-14)
        assert s_radius(HALF_PI, HALF_PI, d) == pytest.approx(math.tan(math.pi / (2 * d)), abs=1e-14)

    def test_d9_value(self):
        assert s_radius(HALF_PI, HALF_PI, 9) == pytest.approx(0.176327, abs=1e-6)

    def test_defining_equation(self):
        for d in range(3, 65, 7):
            for beta in np.linspace(0, HALF_PI, 17):
                q = quadratic_coeffs(float(beta), HALF_PI, d)
                s = s_radius(float(beta), HALF_PI, d)
                assert abs(q.a * s * s + q.b * s + q.c) <= 1e-12

    def test_normalised_radius_decreases_in_d(self):
        # s_d / tan(pi/2d) falls towards (2b + pi)/(pi (1 + sin b)) as d grows
        for beta in np.linspace(0, HALF_PI, 33):
            beta = float(beta)
            g = [s_radius(beta, HALF_PI, d) / math.tan(math.pi / (2 * d)) for d in range(2, 65)]
            assert max(np.diff(g)) <= 1e-12
            assert g[-1] >= (2 * beta + math.pi) / (math.pi * (1 + math.sin(beta))) - 1e-12

    def test_angle_identity(self):
        # at |lam| = s the two primed angles add up to (beta + gamma)/d
        rng = random.Random(0)
        for _ in range(200):
            d = rng.randint(2, 40)
            beta, gamma = rng.uniform(0, HALF_PI), rng.uniform(0, HALF_PI)
            if (beta + gamma) / d >= HALF_PI - 1e-3:
                continue
            s = s_radius(beta, gamma, d)
            assert d * (beta_prime(s, beta) + beta_prime(s, gamma)) == pytest.approx(beta + gamma, abs=1e-10)


class TestTAngle:
    @pytest.mark.parametrize("d", [2, 3, 10, 64])
    def test_endpoints(self, d):
        assert t_angle(0, d) == pytest.approx(HALF_PI, abs=1e-12)
        assert t_angle(HALF_PI, d) == pytest.approx(0, abs=1e-12)

    def test_d2_quarter(self):
        assert t_angle(math.pi / 4, 2) == pytest.approx(math.pi / 4, abs=1e-12)


class TestNewDomainBoundary:
    def test_endpoints(self):
        d = 9
        pts = new_domain_boundary(d, 64)
        assert len(pts) == 64
        assert pts[0].beta == 0 and pts[-1].beta == HALF_PI
        assert pts[0].t_value == pytest.approx(HALF_PI) and pts[-1].t_value == pytest.approx(0, abs=1e-12)
        assert pts[0].s_value == pytest.approx(math.tan(math.pi / 18))

    def test_d2_unit(self):
        assert all(p.s_value == pytest.approx(1) for p in new_domain_boundary(2, 40))

    def test_seven_eighths(self):
        for d in (3, 9, 30):
            floor = 7 / 8 * math.tan(math.pi / (2 * d))
            assert min(p.s_value for p in new_domain_boundary(d, 128)) >= floor

    def test_continuity(self):
        pts = new_domain_boundary(9, 512)
        step = HALF_PI / 511
        for a, b in zip(pts, pts[1:]):
            assert abs(a.t_value - b.t_value) < 10 * step
            assert abs(a.s_value - b.s_value) < step

    def test_too_few_samples(self):
        with pytest.raises(InputError):
            new_domain_boundary(3, 1)


class TestNewDomainContains:
    @pytest.mark.parametrize("d", [2, 3, 9])
    def test_positive_axis(self, d):
        assert new_domain_contains(0.9 * math.tan(math.pi / (2 * d)), d)

    @pytest.mark.parametrize("phi", np.linspace(-HALF_PI, HALF_PI, 9))
    def test_inner_half_disk(self, phi):
        d = 9
        assert new_domain_contains(0.87 * math.tan(math.pi / (2 * d)) * cmath.exp(1j * phi), d)

    def test_outer_half_disk(self):
        d = 9
        assert not new_domain_contains(1.01 * math.tan(math.pi / (2 * d)) * 1j, d)

    def test_left_half_plane(self):
        assert not new_domain_contains(-0.01 + 0.001j, 3)

    def test_conjugation_symmetry(self):
        lam = cmath.rect(0.16, 0.8)
        assert new_domain_contains(lam, 9) == new_domain_contains(lam.conjugate(), 9)

    def test_unit_half_disk_at_d2(self):
        assert new_domain_contains(1j, 2)
        assert new_domain_contains(0.999 * cmath.exp(0.3j), 2)
        assert not new_domain_contains(1.001 * cmath.exp(0.3j), 2)

    def test_radius_endpoints(self):
        r = math.tan(math.pi / 18)
        assert new_domain_radius(0.0, 9) == pytest.approx(r, rel=1e-10)
        assert new_domain_radius(HALF_PI, 9) == pytest.approx(r, rel=1e-10)
        assert new_domain_radius(HALF_PI + 0.1, 9) is None

    def test_boundary_point_in_radius(self):
        d = 5
        for p in new_domain_boundary(d, 20):
            r = new_domain_radius(p.t_value, d)
            assert r >= p.s_value * (1 - 1e-10)


class TestPetersRegts:
    def test_real_axis(self):
        r = math.tan(math.pi / 18)
        assert pr_contains(r - 1e-12, 10)
        assert not pr_contains(r * (1 + 1e-9), 10)

    def test_imaginary_axis(self):
        assert not pr_contains(math.tan(math.pi / 18) * 1j, 10)

    def test_pi_over_six(self):
        # eps = 1 makes the argument constraint tight; radius tan(pi/27)
        assert pr_radius(math.pi / 6, 10) == pytest.approx(math.tan(math.pi / 27))
        assert pr_eps_contains(0.999 * math.tan(math.pi / 27) * cmath.exp(1j * math.pi / 6), 10, 1.0)

    def test_union_dominates_members(self):
        rng = random.Random(3)
        for _ in range(300):
            eps = rng.uniform(0.01, 5)
            lam = cmath.rect(rng.uniform(0, 0.3), rng.uniform(-1.5, 1.5))
            if pr_eps_contains(lam, 6, eps):
                assert pr_contains(lam, 6)

    def test_delta_guard(self):
        with pytest.raises(DomainError):
            pr_contains(0.1, 2)


class TestUd:
    @pytest.mark.parametrize("d", [2, 3, 9, 20])
    def test_theta_zero(self, d):
        assert ud_boundary_point(0, d) == pytest.approx(-shearer_radius(d + 1), abs=1e-15)

    @pytest.mark.parametrize("d", [2, 3, 9])
    def test_theta_pi(self, d):
        assert ud_boundary_point(math.pi, d) == pytest.approx(d**d / (d - 1) ** (d + 1), rel=1e-12)

    def test_d2_theta_pi(self):
        assert abs(ud_boundary_point(math.pi, 2) - 4) < 1e-12

    @pytest.mark.parametrize("d", [2, 3, 9])
    def test_anchor_points(self, d):
        assert ud_contains(0, d)
        assert not ud_contains(-2 * d**d / (d + 1) ** (d + 1), d)
        assert ud_contains(0.99 * d**d / (d - 1) ** (d + 1), d)

    def test_winding_number_values(self):
        assert ud_winding_number(0, 3) in (1, -1)
        assert ud_winding_number(-1, 3) == 0

    @pytest.mark.parametrize("d", [2, 3, 9])
    def test_simple_curve(self, d):
        assert ud_self_intersections(d) == ()

    @pytest.mark.parametrize("d", [2, 3, 6])
    def test_against_preimage_oracle(self, d):
        rng = np.random.default_rng(d)
        scale = d**d / (d - 1) ** (d + 1)
        pts = scale * 1.2 * (rng.uniform(-1, 1, 400) + 1j * rng.uniform(-1, 1, 400))
        got = ud_contains_many(pts, d)
        for z, inside in zip(pts, got):
            m = ud_preimage_modulus(complex(z), d)
            if abs(m - 1) > 1e-3:
                assert inside == (m < 1), z

    def test_sample_floor(self):
        with pytest.raises(InputError):
            ud_contains(0.1, 3, samples=10)


class TestCertificate:
    def test_zero(self):
        assert certificate_check(0, 0.3, 0.7, 4)

    def test_real_symmetric(self):
        # beta = gamma = pi/2 certifies real lam exactly up to tan(pi/2d)
        d = 5
        r = math.tan(math.pi / (2 * d))
        assert certificate_check(0.999 * r, HALF_PI, HALF_PI, d)
        assert not certificate_check(1.001 * r, HALF_PI, HALF_PI, d)

    @pytest.mark.parametrize("beta", [0.2, 0.7, 1.3])
    def test_boundary_tight(self, beta):
        d = 9
        s, t = s_radius(beta, HALF_PI, d), t_angle(beta, d)
        left, right = certificate_margins(cmath.rect(s, t), beta, HALF_PI, d)
        assert min(abs(left), abs(right)) < 1e-12
        assert certificate_check(cmath.rect(s, t), beta, HALF_PI, d)

    def test_argument_guard(self):
        with pytest.raises(DomainError):
            certificate_check(-0.1, 0.5, 0.5, 3)

    @settings(max_examples=200)
    @given(
        st.integers(2, 20),
        st.floats(0, HALF_PI),
        st.floats(0, HALF_PI),
        st.floats(-1.5, 1.5),
        st.floats(1e-9, 1),
        st.floats(1e-3, 1),
    )
    def test_monotone_in_modulus(self, d, beta, gamma, arg, r, shrink):
        lam = cmath.rect(r, arg)
        if certificate_check(lam, beta, gamma, d, tol=0):
            assert certificate_check(cmath.rect(r * shrink, arg), beta, gamma, d, tol=0)


class TestRegionSpec:
    def test_validation(self):
        with pytest.raises(InputError):
            RegionSpec("new", 2)
        with pytest.raises(InputError):
            RegionSpec("blob", 5)
        with pytest.raises(InputError):
            RegionSpec("pr_eps", 5)
        assert RegionSpec("shearer", 2).d == 1

    def test_contains_dispatch(self):
        assert RegionSpec("d1", 10).contains(0.9 * d1_radius(10))
        assert not RegionSpec("d2", 10).contains(1.1 * d2_radius(10))
        assert RegionSpec("pr_eps", 10, eps=1.0).contains(0.01)

    @pytest.mark.parametrize("kind", ["shearer", "pr", "ud", "new", "d1", "d2"])
    def test_boundary_shape(self, kind):
        pts = RegionSpec(kind, 10).boundary(64)
        assert len(pts) >= 64
        assert all(m >= 0 and -math.pi <= a <= math.pi for a, m in pts)

    def test_boundary_samples_guard(self):
        with pytest.raises(InputError):
            RegionSpec("ud", 10).boundary(1)


class TestContainmentScan:
    def test_delta3_half_disk(self):
        # D at Delta = 3 is the unit half disk, equal to D2
        assert d2_radius(3) == pytest.approx(1)
        rep = region_containment_scan(3, samples=32)
        assert rep.ok
        assert rep.checked["d_in_d2"] == 32 * 32

    def test_degenerate(self):
        rep = region_containment_scan(10, samples=1)
        assert rep.ok and sum(rep.checked.values()) == 0

    def test_json(self):
        rep = region_containment_scan(4, samples=16)
        data = json.loads(json.dumps(rep.to_dict()))
        assert set(data["counterexamples"]) == {"d1_in_d", "d_in_d2", "pr_in_d", "shearer_in_ud"}

    def test_detects_violation(self):
        # the wider disk D2 is not inside D along the imaginary direction
        assert not new_domain_contains(0.999 * d2_radius(10) * cmath.exp(0.4j), 9)
