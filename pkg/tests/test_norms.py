import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markovlab import (
    DimensionMismatchError,
    Interval,
    LpSpec,
    MixedDerivSpec,
    MultiPoly,
    QmsSpec,
    SchurSpec,
    SupPlusLpSpec,
    SupSpec,
    TaylorDiskSpec,
    UnionSet,
    UniPoly,
    box_region,
    chebyshev_t,
    chebyshev_u,
    cusp_region,
    evaluate_norm,
    fit_nikolskii,
    lebesgue_measure,
    lp_norm,
    mixed_deriv_norm,
    monomial,
    qms_norm,
    qms_norm_exact,
    qms_seminorm_terms,
    schur_norm,
    spec_from_json,
    spec_to_json,
    spectral_norm_estimate,
    sup_norm,
    sup_plus_lp_norm,
    taylor_disk_norm,
)
from markovlab.chebseries import random_unit
from markovlab.norms import qms_log_norm

E = Interval(-1.0, 1.0)
MU = lebesgue_measure()


class TestSupNorm:
    def test_constant(self):
        assert sup_norm(UniPoly((1.0,)), E) == 1.0
        assert sup_norm(UniPoly((1.0,)), UnionSet((E,), (5.0,))) == 1.0

    def test_isolated_point_dominates(self):
        u = UnionSet((Interval(-1.0, 1.0),), (2.0,))
        assert sup_norm(UniPoly((0.0, 1.0)), u) == 2.0

    def test_chebyshev8_equioscillation(self):
        # oracle: |T_8| attains 1 exactly at the extrema cos(j*pi/8)
        t8 = chebyshev_t(8)
        extrema = np.cos(np.arange(9) * np.pi / 8)
        assert np.max(np.abs(t8(extrema))) == pytest.approx(1.0, abs=1e-14)
        assert sup_norm(t8, E) == pytest.approx(1.0, abs=1e-10)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            sup_norm(MultiPoly({(1, 0): 1.0}, 2), E)

    def test_complex_coefficients(self):
        p = UniPoly((1j, 1.0))
        # |x + i| on [-1, 1] peaks at the endpoints
        assert sup_norm(p, E) == pytest.approx(math.sqrt(2.0), rel=1e-12)


class TestLpNorm:
    def test_constant_any_measure(self):
        for s in (1.0, 2.0, 3.0, 4.0):
            assert lp_norm(UniPoly((1.0,)), MU, s) == pytest.approx(1.0, abs=1e-12)

    def test_x_l2(self):
        # exact integral: int x^2 dx / 2 = 1/3
        assert lp_norm(UniPoly((0.0, 1.0)), MU, 2) == pytest.approx(
            1.0 / math.sqrt(3.0), rel=1e-14
        )

    def test_x_l1_via_root_split(self):
        assert lp_norm(UniPoly((0.0, 1.0)), MU, 1) == pytest.approx(0.5, rel=1e-14)

    def test_odd_power_with_interior_roots(self):
        # int |x^2 - 1/4| dx/2 = int_0^{1/2} (1/4 - x^2) + int_{1/2}^1 (x^2 - 1/4)
        #                      = 1/12 + 1/6 = 1/4
        got = lp_norm(UniPoly((-0.25, 0.0, 1.0)), MU, 1)
        assert got == pytest.approx(0.25, rel=1e-12)

    def test_non_integer_s(self):
        # pure quadrature path; constant polynomial keeps it exact
        assert lp_norm(UniPoly((2.0,)), MU, 2.5) == pytest.approx(2.0, rel=1e-9)

    def test_nikolskii_factor_bound(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 25))
            p = random_unit(n, rng)
            sup = sup_norm(p, E)
            for s in (1, 2, 4):
                lp = lp_norm(p, MU, s)
                assert lp <= sup * (1 + 1e-10)
                factor = (2.0 * (s + 1) * n * n) ** (1.0 / s)
                assert sup <= factor * lp * (1 + 1e-10)


class TestSchurNorm:
    def test_constant(self):
        assert schur_norm(UniPoly((1.0,)), 0.5) == pytest.approx(1.0, abs=1e-12)

    def test_linear(self):
        # oracle: max |x| sqrt(1-x^2) on a dense grid, attained at 1/sqrt(2)
        xs = np.linspace(-1, 1, 200001)
        oracle = np.max(np.abs(xs) * np.sqrt(1 - xs**2))
        got = schur_norm(UniPoly((0.0, 1.0)), 0.5)
        assert got == pytest.approx(0.5, abs=1e-12)
        assert got >= oracle - 1e-9

    def test_sandwich_with_sup(self, rng):
        for _ in range(15):
            n = int(rng.integers(1, 33))
            p = random_unit(n, rng)
            w = schur_norm(p, 0.5)
            s = sup_norm(p, E)
            assert w <= s * (1 + 1e-10)
            assert s <= (n + 1) * w * (1 + 1e-10)

    def test_alpha_validation(self):
        with pytest.raises(ValueError):
            schur_norm(UniPoly((1.0,)), 0.0)

    def test_ball_variant_on_point_cloud(self):
        # weight (1 - |x|^2)^alpha clips to zero outside the unit ball, so a
        # box cloud covering the ball is a valid carrier
        cloud = box_region(grid=81)
        one = MultiPoly({(0, 0): 1.0}, 2)
        assert schur_norm(one, 0.5, cloud) == pytest.approx(1.0, abs=1e-12)
        x1 = MultiPoly({(1, 0): 1.0}, 2)
        # max |x| sqrt(1 - x^2 - y^2) = 1/2 on the y = 0 slice
        assert schur_norm(x1, 0.5, cloud) == pytest.approx(0.5, abs=1e-3)


class TestQmsNorm:
    def test_constant_is_one(self):
        for m, s in ((1, 1), (2, 3), (0.5, 2)):
            assert qms_norm(UniPoly((1.0,)), m, s) == pytest.approx(1.0)

    def test_monomial_closed_form(self):
        # ||x^(sn)|| = ((sn)!)^(1-m): single surviving block
        for s, n, m in ((2, 3, 2), (3, 2, 1), (4, 1, 3)):
            base = UniPoly.monomial(s * n, 1)
            assert qms_norm_exact(base, m, s) == Fraction(math.factorial(s * n)) ** (1 - m)

    def test_derivative_closed_form(self):
        s, n, t, j, m = 3, 4, 1, 2, 2
        p = UniPoly.monomial(s * n, 1).deriv(s * t + j)
        want = Fraction(math.factorial(s * n), math.factorial(s - j))
        want /= Fraction(math.factorial(s * (n - t - 1))) ** m
        assert qms_norm_exact(p, m, s) == want

    def test_terms_match_brute_force_derivatives(self, rng):
        # independent oracle: seminorm blocks via repeated UniPoly.deriv at 0
        for _ in range(10):
            deg = int(rng.integers(0, 12))
            coeffs = [Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5))) for _ in range(deg + 1)]
            p = UniPoly(coeffs)
            s = int(rng.integers(1, 4))
            got = qms_seminorm_terms(p, s)
            want = {}
            if not p.is_zero:
                for r in range(int(p.degree) // s + 1):
                    total = Fraction(0)
                    for l in range(s):
                        d = p.deriv(r * s + l)
                        total += abs(d(Fraction(0))) / math.factorial(l)
                    if total:
                        want[r] = total
            assert got == want

    def test_float_log_agrees_with_exact(self):
        p = UniPoly((1.0, 2.0, 0.0, -3.0, 1.0))
        pe = UniPoly((1, 2, 0, -3, 1))
        for m, s in ((1, 2), (2, 2), (1, 3)):
            lv = qms_log_norm(p, m, s)
            ev = float(qms_norm_exact(pe, m, s))
            assert math.exp(lv) == pytest.approx(ev, rel=1e-12)

    def test_exact_requires_integer_m(self):
        with pytest.raises(ValueError):
            qms_norm_exact(UniPoly((1,)), 0.5, 2)

    def test_complex_coefficients_float_path(self):
        # with s = 1, m = 1 the norm is sum_r |p^(r)(0)|/r! = sum |c_r|
        p = UniPoly((0.5j, 0.0, 1j, -2.0))
        assert qms_norm(p, 1, 1) == pytest.approx(3.5, rel=1e-12)


class TestTaylorDiskNorm:
    def test_constant(self):
        assert taylor_disk_norm(UniPoly((1.0,)), E, 0.7) == 1.0

    def test_linear_two_terms(self):
        assert taylor_disk_norm(UniPoly((0.0, 1.0)), E, 1.0) == pytest.approx(2.0)

    def test_sandwich_with_shifted_sup(self, rng):
        # q_sigma oracle: max over a disk-boundary grid of sup |p(x + zeta)|
        zetas = np.exp(1j * np.linspace(0, 2 * np.pi, 64, endpoint=False))
        xs = np.linspace(-1, 1, 801)
        for _ in range(8):
            n = int(rng.integers(1, 9))
            p = random_unit(n, rng)
            q = taylor_disk_norm(p, E, 0.5)
            grid = xs[None, :] + 0.5 * zetas[:, None]
            q_sigma = float(np.max(np.abs(p(grid))))
            assert q_sigma <= q * (1 + 1e-9)
            assert q <= (n + 1) * q_sigma * (1 + 1e-9)

    def test_fast_path_matches_generic(self):
        p = chebyshev_t(9)
        fast = taylor_disk_norm(p, E, 0.3, refine=False)
        slow = taylor_disk_norm(p, E, 0.3, refine=True)
        assert fast == pytest.approx(slow, rel=1e-6)


class TestMixedDerivNorm:
    def test_constant(self):
        box = box_region(grid=33)
        p = MultiPoly({(0, 0): -3.0}, 2)
        assert mixed_deriv_norm(p, box, 0) == pytest.approx(3.0)

    def test_coordinate_on_box(self):
        box = box_region(grid=33)
        p = MultiPoly({(1, 0): 1.0}, 2)
        assert mixed_deriv_norm(p, box, 0) == pytest.approx(2.0)

    def test_univariate_union_variant(self):
        u = UnionSet((Interval(-1.0, 1.0),), (2.0,))
        p = UniPoly((0.0, 0.0, 1.0))  # x^2: sup 4 at the point, sup|2x| = 4
        assert mixed_deriv_norm(p, u) == pytest.approx(8.0)

    def test_cusp_bound(self, rng):
        # first-partial growth on the cusp set stays under 2*(deg)^2
        cusp = cusp_region(grid=201)
        from markovlab.chebseries import product_2d

        for n in (1, 3, 6, 10):
            p = product_2d(chebyshev_t(n), chebyshev_t(0))
            ratio = sup_norm(p.deriv(kx=1), cusp) / sup_norm(p, cusp)
            assert ratio <= 2.0 * n * n * (1 + 1e-9)
        for _ in range(5):
            coef = rng.standard_normal((5, 5))
            from markovlab.chebseries import ChebSeries2D

            p = ChebSeries2D(coef)
            n = p.total_degree
            denom = sup_norm(p, cusp)
            if denom == 0.0:
                continue
            assert sup_norm(p.deriv(kx=1), cusp) / denom <= 2.0 * n * n * (1 + 1e-9)


class TestSupPlusLp:
    def test_constant(self):
        assert sup_plus_lp_norm(UniPoly((1.0,)), E, MU, 2) == pytest.approx(2.0)

    def test_linear(self):
        got = sup_plus_lp_norm(UniPoly((0.0, 1.0)), E, MU, 2)
        assert got == pytest.approx(1.0 + 1.0 / math.sqrt(3.0), rel=1e-12)


class TestSpectralEstimate:
    def test_sup_norm_is_spectral(self):
        est = spectral_norm_estimate(chebyshev_t(3), SupSpec(E), 8)
        assert all(v == pytest.approx(1.0, abs=1e-9) for v in est.values)
        assert est.limit == pytest.approx(1.0, abs=1e-6)

    def test_taylor_disk_of_x(self):
        est = spectral_norm_estimate(UniPoly((0.0, 1.0)), TaylorDiskSpec(E, 1.0), 8)
        # oracle: max over the disk boundary of sup |x + zeta| = 2
        zetas = np.exp(1j * np.linspace(0, 2 * np.pi, 256))
        oracle = np.max(np.abs(np.array([1.0]) + zetas))
        assert oracle == pytest.approx(2.0, rel=1e-12)
        assert est.limit == pytest.approx(2.0, rel=1e-9)

    def test_sup_plus_lp_converges_to_sup(self):
        p = chebyshev_t(2)
        est = spectral_norm_estimate(p, SupPlusLpSpec(E, MU, 2.0), 10)
        sup = sup_norm(p, E)
        assert est.plain_tail == pytest.approx(sup, rel=0.05)
        assert est.limit == pytest.approx(sup, rel=0.05)
        # the raw tail converges from above onto the sup norm
        assert all(v >= sup * (1 - 1e-12) for v in est.values)

    def test_qms_shrinks_without_blowup(self):
        est = spectral_norm_estimate(UniPoly((0, 1)), QmsSpec(2.0, 1), 8)
        assert est.values[-1] < est.values[0]

    def test_requires_enough_powers(self):
        with pytest.raises(ValueError):
            spectral_norm_estimate(UniPoly((0, 1)), SupSpec(E), 3)


class TestFitNikolskii:
    def test_identical_norms(self):
        corpus = {n: [chebyshev_t(n)] for n in range(1, 9)}
        cert = fit_nikolskii(SupSpec(E), SupSpec(E), corpus)
        assert (cert.A, cert.a, cert.B, cert.b) == (1.0, 0.0, 1.0, 0.0)

    def test_sup_vs_l2_on_chebyshev(self):
        corpus = {n: [chebyshev_t(n)] for n in range(1, 33)}
        cert = fit_nikolskii(SupSpec(E), LpSpec(MU, 2.0), corpus)
        assert cert.status == "certified"
        assert cert.a <= 1.0

    def test_sup_vs_schur_shows_degree_factor(self):
        corpus = {
            n: [chebyshev_t(n), chebyshev_u(n), monomial(n)] for n in range(1, 65)
        }
        cert = fit_nikolskii(SupSpec(E), SchurSpec(0.5), corpus, deg_range=(16, 64))
        assert cert.a == pytest.approx(1.0, abs=0.15)
        assert cert.b <= 0.2

    def test_certificate_holds_on_corpus(self):
        corpus = {n: [chebyshev_t(n), monomial(n)] for n in range(1, 17)}
        cert = fit_nikolskii(SupSpec(E), LpSpec(MU, 2.0), corpus)
        for n, polys in corpus.items():
            for p in polys:
                v1, v2 = sup_norm(p, E), lp_norm(p, MU, 2.0)
                assert v1 <= cert.A * n**cert.a * v2 * (1 + 1e-9)
                assert v2 <= cert.B * n**cert.b * v1 * (1 + 1e-9)


class TestNormSpecJson:
    @pytest.mark.parametrize(
        "spec",
        [
            SupSpec(E),
            LpSpec(MU, 2.0),
            SupPlusLpSpec(E, MU, 4.0),
            SchurSpec(0.5),
            SchurSpec(1.0, E),
            QmsSpec(2.0, 3),
            TaylorDiskSpec(E, 0.5),
            MixedDerivSpec(E, 0),
        ],
    )
    def test_round_trip(self, spec):
        blob = spec_to_json(spec)
        back = spec_from_json(blob)
        assert spec_to_json(back) == blob
        assert blob["kind"] in {
            "sup", "lp", "sup_plus_lp", "schur", "qms", "taylor_disk", "mixed_deriv",
        }

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            spec_from_json({"kind": "sobolev"})

    @pytest.mark.parametrize(
        "bad",
        [
            lambda: LpSpec(MU, 0.5),
            lambda: SchurSpec(-1.0),
            lambda: QmsSpec(0.0, 2),
            lambda: QmsSpec(1.0, 0),
            lambda: TaylorDiskSpec(E, 0.0),
            lambda: SupPlusLpSpec(E, MU, 0.0),
        ],
    )
    def test_parameter_ranges_enforced(self, bad):
        with pytest.raises(ValueError):
            bad()


# ---------------------------------------------------------------------------
# Norm axioms (property-based)

_SPECS_EXACT_SCALING = [
    SupSpec(E),
    SchurSpec(0.5),
    TaylorDiskSpec(E, 0.5),
]
_SPECS_INTEGRAL = [LpSpec(MU, 2.0), SupPlusLpSpec(E, MU, 2.0), QmsSpec(1.0, 2)]


@settings(max_examples=20, deadline=None)
@given(
    seed=st.integers(0, 10_000),
    k=st.integers(-10, 10),
    spec_idx=st.integers(0, len(_SPECS_EXACT_SCALING) - 1),
)
def test_homogeneity_exact_for_binary_scalings(seed, k, spec_idx):
    # scaling by powers of two commutes with every float rounding step
    rng = np.random.default_rng(seed)
    p = random_unit(int(rng.integers(1, 13)), rng)
    spec = _SPECS_EXACT_SCALING[spec_idx]
    c = 2.0**k
    assert evaluate_norm(spec, c * p) == c * evaluate_norm(spec, p)


@settings(max_examples=15, deadline=None)
@given(
    seed=st.integers(0, 10_000),
    c=st.floats(min_value=0.1, max_value=10.0, allow_nan=False),
    spec_idx=st.integers(0, len(_SPECS_INTEGRAL) - 1),
)
def test_homogeneity_integral_norms(seed, c, spec_idx):
    rng = np.random.default_rng(seed)
    spec = _SPECS_INTEGRAL[spec_idx]
    if isinstance(spec, QmsSpec):
        p = UniPoly(tuple(rng.uniform(-1, 1, 6)))
        scaled = UniPoly(tuple(c * x for x in p.coeffs))
        assert qms_norm(scaled, spec.m, spec.s) == pytest.approx(
            c * qms_norm(p, spec.m, spec.s), rel=1e-12
        )
    else:
        p = random_unit(int(rng.integers(1, 13)), rng)
        assert evaluate_norm(spec, c * p) == pytest.approx(
            c * evaluate_norm(spec, p), rel=1e-12
        )


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10_000), spec_idx=st.integers(0, 4))
def test_triangle_inequality(seed, spec_idx):
    rng = np.random.default_rng(seed)
    specs = _SPECS_EXACT_SCALING + [LpSpec(MU, 2.0), SupPlusLpSpec(E, MU, 2.0)]
    spec = specs[spec_idx]
    p = random_unit(int(rng.integers(1, 11)), rng)
    g = random_unit(int(rng.integers(1, 11)), rng)
    qp, qg = evaluate_norm(spec, p), evaluate_norm(spec, g)
    assert evaluate_norm(spec, p + g) <= qp + qg + 1e-10 * (qp + qg)


@settings(max_examples=20, deadline=None)
@given(
    seed=st.integers(0, 10_000),
    a=st.floats(-1.0, -0.1),
    b=st.floats(0.1, 1.0),
)
def test_sup_monotone_in_set(seed, a, b):
    rng = np.random.default_rng(seed)
    p = random_unit(int(rng.integers(1, 13)), rng)
    small, big = Interval(a, b), Interval(-1.0, 1.0)
    s_small = sup_norm(p, small)
    s_big = sup_norm(p, big)
    assert s_small <= s_big + 1e-10 * s_big


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10_000), s=st.integers(1, 6))
def test_sup_norm_spectral(seed, s):
    rng = np.random.default_rng(seed)
    p = random_unit(int(rng.integers(1, 9)), rng)
    lhs = sup_norm(p**s, E)
    rhs = sup_norm(p, E) ** s
    assert lhs == pytest.approx(rhs, rel=1e-8)


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_lp_nondecreasing_in_s(seed):
    rng = np.random.default_rng(seed)
    p = random_unit(int(rng.integers(1, 17)), rng)
    vals = [lp_norm(p, MU, s) for s in (1, 2, 4, 8)]
    for lo, hi in zip(vals, vals[1:]):
        assert lo <= hi * (1 + 1e-10)
