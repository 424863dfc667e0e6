import math
import unittest

import numpy as np

from atoms.atom_model import AtomSpec, DipoleElement, Level

from . import series
from .crossing import nonthermal_crossing
from .field_correlations import (
    MINUS,
    PLUS,
    Inertial,
    Trajectory,
    UniformAcceleration,
    boundary_component,
    free_component,
    hadamard,
    pauli_jordan,
    wightman_boundary,
    wightman_free,
)
from .rates import (
    BOUNDARY,
    DEEXCITATION,
    EXCITATION,
    UNBOUNDED,
    rate_accelerated,
    rate_inertial,
    unbounded_rate,
)
from .special_functions import (
    EvalPolicy,
    NumericDomainError,
    ReducedPoint,
    closed_form_value,
    f_accel,
    f_x,
    f_y,
    f_z,
    nonthermal_term,
    planck_n,
    reduce,
    series_value,
    small_a_correction,
    small_z_coefficients,
)


def two_level(vector, omega=1.0, state="e"):
    return AtomSpec(
        name="two-level",
        levels=(Level("g", 0.0), Level("e", omega)),
        dipoles=(DipoleElement("e", "g", tuple(complex(c) for c in vector)),),
        initial_state=state,
    )


def random_atom(rng) -> AtomSpec:
    count = int(rng.integers(2, 5))
    energies = np.cumsum(rng.uniform(0.2, 1.5, size=count))
    levels = tuple(Level(f"l{i}", float(e)) for i, e in enumerate(energies))
    dipoles = []
    for i in range(count):
        for j in range(i + 1, count):
            if rng.random() < 0.7 or j == i + 1:
                vector = rng.normal(size=3) + 1j * rng.normal(size=3) * (rng.random() < 0.5)
                dipoles.append(DipoleElement(f"l{j}", f"l{i}", tuple(complex(c) for c in vector)))
    return AtomSpec(name="random", levels=levels, dipoles=tuple(dipoles), initial_state="l0")


class InertialFunctionTests(unittest.TestCase):
    def test_values_at_quarter_period(self):
        self.assertAlmostEqual(f_x(math.pi / 2), -8 / math.pi**2, places=12)
        self.assertAlmostEqual(f_z(math.pi / 2), -16 / math.pi**2, places=12)

    def test_limits_at_the_plane(self):
        for sigma in (1e-3, 1e-5):
            self.assertAlmostEqual(f_x(sigma), 16 / 3, places=5)
            self.assertAlmostEqual(f_z(sigma), -16 / 3, places=5)
        self.assertAlmostEqual(1 - 3 / 16 * f_z(1e-6), 2.0, places=10)

    def test_f_y_is_f_x(self):
        self.assertIs(f_y, f_x)

    def test_envelope_decay(self):
        for sigma in np.geomspace(10, 1e6, 25):
            bound_x = 2 / sigma**2 + abs(4 * sigma**2 - 1) / sigma**3
            bound_z = 4 / sigma**2 + 2 / sigma**3
            self.assertLessEqual(abs(f_x(sigma)), bound_x)
            self.assertLessEqual(abs(f_z(sigma)), bound_z)
        self.assertLessEqual(abs(f_x(1e6)), 5e-6)

    def test_domain_errors(self):
        for bad in (0.0, -1.0, math.nan, math.inf):
            with self.assertRaises(NumericDomainError):
                f_x(bad)
        with self.assertRaises(NumericDomainError):
            reduce(1.0, 0.0)
        with self.assertRaises(NumericDomainError):
            ReducedPoint(1.0, -0.1)
        with self.assertRaises(ValueError):
            EvalPolicy(series_threshold_sigma=2.0)
        with self.assertRaises(ValueError):
            EvalPolicy(series_order=2)


class AcceleratedFunctionTests(unittest.TestCase):
    def test_asinh_series_coefficients(self):
        np.testing.assert_allclose(series.asinhc_coefficients(3), [1, -1 / 6, 3 / 40, -5 / 112])

    def test_binomial_series_with_negative_powers(self):
        np.testing.assert_array_equal(series.binomial_series(-2.0, 3), [1, -2, 3, -4])
        np.testing.assert_allclose(series.binomial_series(-2.5, 2), [1, -2.5, 4.375])
        for pair in series.PAIRS:
            self.assertTrue(np.all(np.isfinite(series.leading_coefficients(pair, 16))), pair)

    def test_leading_bracket_term_vanishes_at_rest(self):
        for pair in series.PAIRS:
            self.assertEqual(series.leading_coefficients(pair, 8)[0], 0.0)
        self.assertAlmostEqual(series.leading_coefficients("xx", 8)[1], 16 / 3, places=13)
        self.assertAlmostEqual(series.leading_coefficients("zz", 8)[1], -16 / 3, places=13)
        self.assertAlmostEqual(series.leading_coefficients("xz", 8)[1], 32 / 3, places=13)

    def test_series_matches_closed_form(self):
        for sigma in (1e-2, 5e-2):
            for r in (0.2, 1.0):
                p = ReducedPoint(sigma, r * sigma)
                for pair in series.PAIRS:
                    with self.subTest(pair=pair, sigma=sigma, r=r):
                        closed = closed_form_value(pair, p)
                        self.assertLessEqual(abs(series_value(pair, p) - closed), 1e-10 * abs(closed))

    def test_series_with_large_eta(self):
        p = ReducedPoint(5e-3, 0.5)
        for pair in series.PAIRS:
            with self.subTest(pair=pair):
                np.testing.assert_allclose(series_value(pair, p), closed_form_value(pair, p), rtol=1e-9)

    def test_inertial_series_matches_closed_form_at_threshold(self):
        sigma = 1e-2
        np.testing.assert_allclose(
            series.series_value("xx", sigma, 0.0, 1.0, 8, True),
            2 / sigma**2 * math.cos(2 * sigma) + (4 * sigma**2 - 1) / sigma**3 * math.sin(2 * sigma),
            rtol=1e-10,
        )

    def test_zero_acceleration_delegates(self):
        for sigma in (0.3, 1.0, 3.0):
            p = ReducedPoint(sigma, 0.0)
            self.assertEqual(f_accel("xx", p), f_x(sigma))
            self.assertEqual(f_accel("yy", p), f_x(sigma))
            self.assertEqual(f_accel("zz", p), f_z(sigma))
            self.assertEqual(f_accel("xz", p), 0.0)

    def test_limits_at_the_plane(self):
        sigma = 1e-4
        for r in (0.2, 1.0, 3.0):
            p = ReducedPoint(sigma, r * sigma)
            with self.subTest(r=r):
                np.testing.assert_allclose(f_accel("xx", p), 16 / 3 * (1 + r * r), rtol=1e-6)
                np.testing.assert_allclose(f_accel("yy", p), 16 / 3 * (1 + r * r), rtol=1e-6)
                np.testing.assert_allclose(f_accel("zz", p), -16 / 3 * (1 + r * r), rtol=1e-6)
                np.testing.assert_allclose(f_accel("xz", p), 32 / 3 * sigma * r * (1 + r * r), rtol=1e-6)

    def test_scale_invariance(self):
        omega, z, a, lam = 1.3, 0.8, 0.45, 7.0
        for pair in series.PAIRS:
            with self.subTest(pair=pair):
                np.testing.assert_allclose(
                    f_accel(pair, reduce(lam * omega, z / lam, lam * a)),
                    f_accel(pair, reduce(omega, z, a)),
                    rtol=1e-12,
                )

    def test_envelope_decay(self):
        for r in (0.2, 1.0):
            for sigma in np.geomspace(10, 1e6, 13):
                p = ReducedPoint(sigma, r * sigma)
                e = p.eta**2
                for pair, terms in series.PAIR_TERMS.items():
                    cos_c = abs(np.polynomial.polynomial.polyval(e, terms.cos_numerator)) * (1 + e) ** terms.cos_power
                    sin_c = (
                        abs(np.polynomial.polynomial.polyval(e, terms.sin_constant)) / sigma
                        + sigma * abs(np.polynomial.polynomial.polyval(e, terms.sin_linear))
                    ) * (1 + e) ** terms.sin_power
                    bound = (cos_c + sin_c) / sigma**2 * (p.eta if terms.odd else 1.0)
                    self.assertLessEqual(abs(f_accel(pair, p)), bound * (1 + 1e-12))


class ExpansionTests(unittest.TestCase):
    def test_small_a_coefficients(self):
        omega, a = 1.0, 1e-3
        for sigma in (0.5, 1.0, 2.0):
            z = sigma / omega
            p = reduce(omega, z, a)
            for pair in ("xx", "yy", "zz"):
                with self.subTest(pair=pair, sigma=sigma):
                    inertial = f_accel(pair, ReducedPoint(sigma, 0.0))
                    measured = (f_accel(pair, p) - inertial) / a**2
                    np.testing.assert_allclose(measured, small_a_correction(pair, sigma, omega), rtol=1e-4)
            with self.subTest(pair="xz", sigma=sigma):
                np.testing.assert_allclose(f_accel("xz", p) / a, small_a_correction("xz", sigma, omega), rtol=1e-4)

    def test_small_a_coefficient_examples(self):
        sigma = math.pi / 2
        self.assertAlmostEqual(small_a_correction("xx", sigma, 1.0), -(13 - math.pi**2) / 3, places=12)
        self.assertAlmostEqual(small_a_correction("zz", sigma, 1.0), 16 / 3, places=12)
        self.assertAlmostEqual(small_a_correction("xx", sigma, 2.0), -(13 - math.pi**2) / 12, places=12)

    def test_small_a_invalid_pair(self):
        with self.assertRaises(NumericDomainError):
            small_a_correction("xy", 1.0, 1.0)

    def test_small_z_expansions(self):
        omega, z = 1.0, 1e-3
        for a in (0.2, 1.0):
            p = reduce(omega, z, a)
            for pair in ("xx", "yy", "zz"):
                with self.subTest(pair=pair, a=a):
                    constant, quadratic = small_z_coefficients(pair, omega, a)
                    lhs = 1 + (a / omega) ** 2 - 3 / 16 * f_accel(pair, p)
                    np.testing.assert_allclose(lhs - constant, quadratic * z * z, rtol=1e-3)
            with self.subTest(pair="xz", a=a):
                _, linear = small_z_coefficients("xz", omega, a)
                np.testing.assert_allclose(f_accel("xz", p), linear * z, rtol=1e-3)

    def test_nonthermal_term(self):
        p = ReducedPoint(1e-4, 1e-4)
        self.assertAlmostEqual(nonthermal_term("xx", p), 1 - 3 / 16 * 16 / 3 * 2, places=6)
        with self.assertRaises(NumericDomainError):
            nonthermal_term("xz", p)


class PlanckTests(unittest.TestCase):
    def test_values(self):
        omega = 1.7
        self.assertAlmostEqual(planck_n(omega, 2 * math.pi * omega / math.log(2)), 1.0, places=12)
        self.assertEqual(planck_n(omega, 0.0), 0.0)
        self.assertAlmostEqual(planck_n(omega, 2 * math.pi * omega), 1 / (math.e - 1), places=12)
        self.assertEqual(planck_n(1.0, 1e-3), 0.0)

    def test_domain(self):
        for omega in (0.0, -1.0):
            with self.assertRaises(NumericDomainError):
                planck_n(omega, 1.0)


class CorrelationTests(unittest.TestCase):
    def test_inertial_value_at_coincidence(self):
        z, eps = 1.0, 1e-3
        g = wightman_boundary(Trajectory(z), 0.0, eps)
        expected = -(0 + 4 * z * z) / (math.pi**2 * ((-1j * eps) ** 2 - 4 * z * z) ** 3)
        np.testing.assert_allclose(g[0, 0], expected, rtol=1e-15)
        np.testing.assert_allclose(g[1, 1], expected, rtol=1e-15)
        self.assertEqual(g[0, 2], 0)
        c = hadamard(Trajectory(z), 0.0, eps)
        self.assertAlmostEqual(c[0, 0], -(1 / (2 * math.pi**2)) * 2 * (4 / ((-1j * eps) ** 2 - 4) ** 3).real, places=15)

    def test_branch_conjugation_and_reflection(self):
        for traj in (Trajectory(0.7), Trajectory(0.7, UniformAcceleration(1.3))):
            for u in (-1.9, 0.2, 1.4, 3.0):
                minus = wightman_boundary(traj, u, 1e-2, MINUS)
                np.testing.assert_array_equal(wightman_boundary(traj, u, 1e-2, PLUS), minus.conj())
                np.testing.assert_allclose(wightman_boundary(traj, -u, 1e-2, PLUS), minus, rtol=1e-13)
                free_minus = wightman_free(traj, u, 1e-2, MINUS)
                np.testing.assert_allclose(wightman_free(traj, -u, 1e-2, PLUS), free_minus, rtol=1e-13)

    def test_velocity_independence(self):
        u = np.linspace(-3, 3, 41)
        for pair in ("xx", "yy", "zz", "xz"):
            np.testing.assert_array_equal(
                boundary_component(Trajectory(0.5, Inertial(0.0)), pair, u, 1e-2),
                boundary_component(Trajectory(0.5, Inertial(0.9)), pair, u, 1e-2),
            )

    def test_symmetric_and_antisymmetric_parts(self):
        traj = Trajectory(0.6, UniformAcceleration(0.8))
        for u in (0.3, 1.2, 2.5):
            np.testing.assert_allclose(hadamard(traj, u, 1e-2), hadamard(traj, -u, 1e-2), rtol=1e-12)
            np.testing.assert_allclose(pauli_jordan(traj, u, 1e-2), -pauli_jordan(traj, -u, 1e-2), rtol=1e-12)
            self.assertEqual(np.abs(pauli_jordan(traj, u, 1e-2).real).max(), 0.0)

    def test_small_acceleration_limit(self):
        u, z, eps = 0.7, 1.0, 1e-2
        inertial = wightman_boundary(Trajectory(z), u, eps)
        accelerated = wightman_boundary(Trajectory(z, UniformAcceleration(1e-4)), u, eps)
        for i in range(3):
            np.testing.assert_allclose(accelerated[i, i], inertial[i, i], rtol=1e-6)
        np.testing.assert_allclose(inertial[2, 2], (u * u - 4 * z * z) / (np.pi**2 * ((u - 1j * eps) ** 2 - 4 * z * z) ** 3))

    def test_decay_away_from_the_plane(self):
        traj = lambda z: Trajectory(z, UniformAcceleration(1.0))
        near = abs(boundary_component(traj(1e2), "zz", 1.0, 0.1))
        far = abs(boundary_component(traj(1e3), "zz", 1.0, 0.1))
        self.assertAlmostEqual(math.log10(far / near), -4.0, delta=0.01)

    def test_exponential_decay_in_proper_time(self):
        a = 1.0
        traj = Trajectory(1.0, UniformAcceleration(a))
        for pair in ("xx", "yy", "zz", "xz"):
            first = abs(boundary_component(traj, pair, 8.0, 1e-3))
            second = abs(boundary_component(traj, pair, 9.0, 1e-3))
            np.testing.assert_allclose(second / first, math.exp(-2 * a), rtol=1e-2)

    def test_tangential_components_vanish_on_the_plane(self):
        z, u, eps = 1e-3, 2.0, 1e-9
        traj = Trajectory(z)
        for pair in ("xx", "yy"):
            free = free_component(traj, pair, u, eps)
            total = free + boundary_component(traj, pair, u, eps)
            self.assertLessEqual(abs(total) / abs(free), 10 * z * z)

    def test_free_isotropy(self):
        g = wightman_free(Trajectory(1.0), 1.3, 1e-6)
        self.assertEqual(g[0, 0], g[1, 1])
        self.assertEqual(g[1, 1], g[2, 2])
        self.assertEqual(np.count_nonzero(g - np.diag(np.diag(g))), 0)

    def test_invalid_regulator(self):
        with self.assertRaises(NumericDomainError):
            wightman_boundary(Trajectory(1.0), 0.0, 0.0)
        with self.assertRaises(NumericDomainError):
            Trajectory(1.0, Inertial(1.0))


class RateTests(unittest.TestCase):
    def test_inertial_ground_state_is_stable(self):
        rng = np.random.default_rng(20240611)
        for _ in range(10):
            spec = random_atom(rng)
            for z in np.geomspace(1e-3, 1e3, 7):
                breakdown = rate_inertial(spec, spec.ground_state(), float(z))
                self.assertEqual(breakdown.total(), 0.0)
                for entry in breakdown.select(channel=EXCITATION, part=BOUNDARY, mechanism="vf"):
                    (rr,) = breakdown.select(level=entry.level, pair=entry.pair, mechanism="rr")
                    self.assertEqual(entry.rate, -rr.rate)
                self.assertEqual(breakdown.total(part=UNBOUNDED), 0.0)

    def test_assembly_identity(self):
        spec = two_level((0.3, 0.1, 0.5))
        breakdown = rate_accelerated(spec, "e", 0.8, 0.6)
        parts = [breakdown.total(part=part) for part in (BOUNDARY, UNBOUNDED)]
        self.assertAlmostEqual(breakdown.total(), math.fsum(parts), places=15)
        self.assertAlmostEqual(breakdown.total(), math.fsum(e.rate for e in breakdown.entries), places=15)

    def test_doubling_at_the_plane(self):
        spec = two_level((0, 0, 0.5))
        sigma = 1e-3
        inertial = rate_inertial(spec, "e", sigma)
        np.testing.assert_allclose(inertial.total(pair="zz") / inertial.total(pair="zz", part=UNBOUNDED), 2, rtol=1e-3)
        for r in (0.2, 1.0):
            accelerated = rate_accelerated(spec, "e", sigma, r)
            ratio = accelerated.total(pair="zz") / accelerated.total(pair="zz", part=UNBOUNDED)
            np.testing.assert_allclose(ratio, 2, rtol=1e-3)

    def test_quarter_period_total(self):
        r, coupling = 0.5, 0.3
        spec = two_level((0, 0, r))
        total = rate_inertial(spec, "e", math.pi / 2, coupling=coupling).total(pair="zz")
        np.testing.assert_allclose(total, -coupling / (3 * math.pi) * r * r * (1 + 3 / math.pi**2), rtol=1e-12)

    def test_boundary_kms_ratio(self):
        spec = two_level((0.5, 0.2, 0.4))
        omega = 1.0
        for ratio in (0.1, 1.0, 10.0):
            a = ratio * omega
            excited = rate_accelerated(spec, "e", 0.9, a)
            ground = rate_accelerated(spec, "g", 0.9, a)
            for pair in ("xx", "yy", "zz", "xz"):
                with self.subTest(pair=pair, ratio=ratio):
                    up = ground.total(pair=pair, part=BOUNDARY, channel=EXCITATION)
                    down = excited.total(pair=pair, part=BOUNDARY, channel=DEEXCITATION)
                    np.testing.assert_allclose(-up / down, math.exp(-2 * math.pi * omega / a), rtol=1e-12)

    def test_small_acceleration_matches_inertial(self):
        spec = two_level((0.5, 0.2, 0.4))
        inertial = rate_inertial(spec, "e", 1.2)
        accelerated = rate_accelerated(spec, "e", 1.2, 1e-4)
        for entry in inertial.entries:
            (match,) = accelerated.select(pair=entry.pair, mechanism=entry.mechanism, part=entry.part)
            np.testing.assert_allclose(match.rate, entry.rate, rtol=1e-6)
        ground = rate_accelerated(spec, "g", 1.2, 1e-3)
        self.assertEqual(ground.total(channel=EXCITATION), 0.0)

    def test_far_from_the_plane(self):
        spec = two_level((0.3, 0.3, 0.3))
        far = rate_accelerated(spec, "e", 1e6, 0.5)
        unbounded = unbounded_rate(spec, "e", 0.5)
        np.testing.assert_allclose(far.total(), unbounded.total(), rtol=1e-5)

    def test_component_equations_for_x_polarized_atom(self):
        r, omega, z, a, coupling = 0.4, 1.0, 0.9, 0.7, 1.0
        spec = two_level((r, 0, 0))
        breakdown = rate_accelerated(spec, "e", z, a, coupling=coupling)
        n = planck_n(omega, a)
        f = f_accel("xx", reduce(omega, z, a))
        expected = -1 / (3 * math.pi) * omega**4 * r * r * (1 + n) * (1 + a * a - 3 / 16 * f)
        np.testing.assert_allclose(breakdown.total(), expected, rtol=1e-12)
        self.assertEqual(len(breakdown.select(pair="xz")), 2)
        self.assertEqual(breakdown.total(pair="xz"), 0.0)

    def test_unbounded_rates(self):
        r, coupling = 0.5, 1.0
        excited = unbounded_rate(two_level((0, 0, r)), "e", 0.0, coupling=coupling)
        self.assertAlmostEqual(excited.total(), -1 / (3 * math.pi) * r * r, places=15)
        a = 0.8
        ground = unbounded_rate(two_level((0, 0, r)), "g", a, coupling=coupling)
        expected = 1 / (3 * math.pi) * r * r * (1 + a * a) * planck_n(1.0, a)
        np.testing.assert_allclose(ground.total(), expected, rtol=1e-14)
        self.assertGreater(ground.total(), 0)
        isotropic = unbounded_rate(two_level((r / math.sqrt(3),) * 3), "e", a, coupling=coupling)
        z_only = unbounded_rate(two_level((0, 0, r)), "e", a, coupling=coupling)
        np.testing.assert_allclose(isotropic.total(), z_only.total(), rtol=1e-14)
        self.assertEqual(excited.select(part=BOUNDARY), [])

    def test_scale_behaviour(self):
        lam = 7.0
        omega, z, a = 1.0, 0.8, 0.6
        spec = two_level((0.3, 0.2, 0.5), omega=omega)
        scaled = spec.with_scaled_energies(lam).with_scaled_dipoles(1 / lam)
        base = rate_accelerated(spec, "e", z, a, coupling=1.0)
        moved = rate_accelerated(scaled, "e", z / lam, lam * a, coupling=1.0)
        for before, after in zip(base.entries, moved.entries):
            np.testing.assert_allclose(after.rate, lam**2 * before.rate, rtol=1e-12)

    def test_degenerate_transition_contributes_nothing(self):
        spec = AtomSpec(
            name="degenerate",
            levels=(Level("a", 1.0), Level("b", 1.0)),
            dipoles=(DipoleElement("a", "b", (0j, 0j, 1 + 0j)),),
            initial_state="a",
        )
        breakdown = rate_accelerated(spec, "a", 1.0, 1.0)
        self.assertTrue(breakdown.entries)
        self.assertTrue(all(e.rate == 0.0 and e.channel == EXCITATION for e in breakdown.entries))

    def test_invalid_inputs(self):
        with self.assertRaises(NumericDomainError):
            rate_inertial(two_level((0, 0, 1)), "e", -1.0)
        with self.assertRaises(NumericDomainError):
            rate_accelerated(two_level((0, 0, 1)), "e", 1.0, 0.0)


class CrossingTests(unittest.TestCase):
    def test_root_for_weak_acceleration(self):
        omega, a = 1.0, 0.1
        result = nonthermal_crossing(omega, a, "zz", (0.01 / omega, 20 / omega))
        self.assertGreaterEqual(len(result.roots), 1)
        self.assertEqual(result.roots, sorted(result.roots))
        for root, residual in zip(result.roots, result.residuals):
            self.assertLessEqual(residual, 1e-10)
            g = lambda z: nonthermal_term("zz", reduce(omega, z, a))
            self.assertLess(g(root * (1 - 1e-6)) * g(root * (1 + 1e-6)), 0)

    def test_no_root_for_strong_acceleration(self):
        result = nonthermal_crossing(1.0, 10.0, "zz", (0.01, 20.0))
        self.assertEqual(result.roots, [])
        self.assertEqual(result.residuals, [])

    def test_tangential_root_near_the_plane(self):
        omega, a = 1.0, 10.0
        result = nonthermal_crossing(omega, a, "xx", (1e-3, 2.0), max_roots=1)
        self.assertEqual(len(result.roots), 1)
        self.assertLessEqual(result.residuals[0], 1e-10 * (a / omega) ** 2)

    def test_max_roots(self):
        result = nonthermal_crossing(1.0, 0.05, "xx", (0.5, 60.0), max_roots=2)
        self.assertLessEqual(len(result.roots), 2)

    def test_invalid_range(self):
        with self.assertRaises(NumericDomainError):
            nonthermal_crossing(1.0, 0.1, "zz", (2.0, 1.0))
        with self.assertRaises(NumericDomainError):
            nonthermal_crossing(1.0, 0.1, "xz", (0.1, 1.0))


if __name__ == "__main__":
    unittest.main()
