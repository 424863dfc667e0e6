import math
import unittest

import numpy as np

from atoms.atom_model import AtomSpec, DipoleElement, Level
from radiative.field_correlations import Trajectory, UniformAcceleration
from radiative.rates import BOUNDARY, RR, UNBOUNDED, VF
from radiative.special_functions import f_x

from .quadrature import QuadratureConfig, extrapolate_to_zero, fourier_kernel, fourier_transform, panel_nodes
from .series_probe import BACKWARD, FORWARD, SeriesProbeError, series_probe
from .verification import (
    OracleReport,
    expansion_verdicts,
    grid_atom,
    grid_trajectory,
    report_table,
    run_verification,
    verify_rate,
)


class QuadratureConfigTests(unittest.TestCase):
    def test_defaults(self):
        cfg = QuadratureConfig()
        self.assertEqual(cfg.eps_ladder, (0.02, 0.01, 0.005))
        self.assertIsNone(cfg.half_range_L)

    def test_invalid_ladders(self):
        for ladder in [(0.02, 0.01), (0.01, 0.02, 0.005), (0.02, 0.01, 0.0), (0.02, 0.02, 0.01)]:
            with self.assertRaises(ValueError):
                QuadratureConfig(eps_ladder=ladder)

    def test_invalid_tolerances(self):
        with self.assertRaises(ValueError):
            QuadratureConfig(abs_tol=0)
        with self.assertRaises(ValueError):
            QuadratureConfig(max_subdivisions=0)
        with self.assertRaises(ValueError):
            QuadratureConfig(half_range_L=-1.0)


class ExtrapolationTests(unittest.TestCase):
    def test_quadratic_is_exact(self):
        eps = [0.02, 0.01, 0.005]
        values = [3.0 - 2.0 * e + 5.0 * e * e for e in eps]
        limit, spread = extrapolate_to_zero(eps, values)
        self.assertAlmostEqual(limit, 3.0, places=12)
        self.assertGreater(spread, 0)

    def test_constant_curve_has_no_spread(self):
        limit, spread = extrapolate_to_zero([0.4, 0.2, 0.1, 0.05], [1.5] * 4)
        self.assertAlmostEqual(limit, 1.5, places=12)
        self.assertAlmostEqual(spread, 0.0, places=12)

    def test_panels_cover_the_window_and_hit_the_peaks(self):
        nodes = panel_nodes([-2.0, 2.0], 0.01, 1.0, 16.0)
        self.assertEqual(nodes[0], -16.0)
        self.assertEqual(nodes[-1], 16.0)
        self.assertIn(-2.0, nodes)
        self.assertIn(2.0, nodes)
        self.assertTrue(np.all(np.diff(nodes) > 0))
        near = nodes[np.abs(nodes - 2.0) <= 0.01]
        self.assertLessEqual(np.max(np.diff(near)), 0.001 + 1e-15)


class FourierTests(unittest.TestCase):
    def test_inertial_hadamard_xx(self):
        value, error = fourier_kernel(Trajectory(1.0), "xx", 1.0, "hadamard")
        expected = -f_x(1.0) / (32 * math.pi)
        self.assertAlmostEqual(value, expected, delta=1e-3 * abs(expected))
        self.assertLess(error, 1e-2 * abs(expected))

    def test_inertial_free_kernels(self):
        expected = 1.0 / (6 * math.pi)
        for kind in ("free_hadamard", "wightman_free_hadamard", "free_pauli_jordan"):
            value, _ = fourier_kernel(Trajectory(2.0), "zz", 1.0, kind)
            self.assertAlmostEqual(value, expected, delta=1e-3 * expected)

    def test_free_kernels_cancel_for_absorption_at_rest(self):
        result = fourier_transform(Trajectory(2.0), "xx", -1.0, ("free_hadamard", "free_pauli_jordan"))
        self.assertAlmostEqual(result.value, 0.0, delta=1e-6)
        self.assertEqual(len(result.curve), 3)

    def test_ladder_converges_monotonically(self):
        for traj, pair in ((Trajectory(1.0), "xx"), (grid_trajectory(1.0, 0.5), "zz")):
            result = fourier_transform(traj, pair, 1.0, "hadamard")
            gaps = [abs(value - result.value) for _, value in result.curve]
            with self.subTest(accel=traj.accel):
                self.assertEqual(len(gaps), 3)
                self.assertTrue(all(left > right for left, right in zip(gaps, gaps[1:])), gaps)

    def test_invalid_kind_and_frequency(self):
        with self.assertRaises(ValueError):
            fourier_kernel(Trajectory(1.0), "xx", 1.0, "retarded")
        with self.assertRaises(ValueError):
            fourier_kernel(Trajectory(1.0), "xx", 0.0, "hadamard")
        for omega in (0.0, math.nan):
            with self.assertRaises(ValueError):
                fourier_transform(Trajectory(1.0), "zz", omega, ("free_hadamard", "free_pauli_jordan"))


class SeriesProbeTests(unittest.TestCase):
    def test_cubic(self):
        result = series_probe(lambda t: t**3, 0.0, 4)
        np.testing.assert_allclose(result.coefficients, (0, 0, 0, 1, 0), atol=1e-8)

    def test_exponential_one_sided(self):
        expected = [1.0, 1.0, 0.5, 1.0 / 6]
        for direction in (FORWARD, BACKWARD):
            result = series_probe(math.exp, 0.0, 3, direction=direction)
            np.testing.assert_allclose(result.coefficients, expected, rtol=1e-6)

    def test_shifted_expansion_point(self):
        result = series_probe(math.sin, math.pi / 2, 2)
        np.testing.assert_allclose(result.coefficients, [1.0, 0.0, -0.5], atol=1e-9)

    def test_non_finite_samples(self):
        with self.assertRaises(SeriesProbeError):
            series_probe(lambda t: math.nan, 0.0, 2)

    def test_invalid_arguments(self):
        with self.assertRaises(ValueError):
            series_probe(math.exp, 0.0, 2, direction="sideways")
        with self.assertRaises(ValueError):
            series_probe(math.exp, 0.0, 2, levels=1)


class OracleReportTests(unittest.TestCase):
    def test_status(self):
        self.assertEqual(OracleReport("q", 1.0, 1.0005, rel_tol=1e-3).status, "pass")
        self.assertEqual(OracleReport("q", 1.0, 1.0005, rel_tol=1e-4).status, "fail")
        self.assertEqual(OracleReport("q", 0.0, 1e-12, abs_tol=1e-10).status, "pass")

    def test_relative_error_of_zero(self):
        self.assertEqual(OracleReport("q", 0.0, 0.0).rel_err, 0.0)
        self.assertEqual(OracleReport("q", 0.0, 1.0).rel_err, math.inf)

    def test_table(self):
        table = report_table([OracleReport("xx vf", 1.0, 1.0)])
        self.assertIn("quantity_id", table.splitlines()[0])
        self.assertTrue(table.splitlines()[1].endswith("pass"))

    def test_dict(self):
        data = OracleReport("xx vf", 2.0, 1.0, curve=((0.1, 1.0),)).to_dict()
        self.assertEqual(data["status"], "fail")
        self.assertEqual(data["curve"], [[0.1, 1.0]])


class VerificationTests(unittest.TestCase):
    def test_smoke_preset(self):
        reports = run_verification("smoke")
        self.assertEqual(len(reports), 8)
        for report in reports:
            self.assertTrue(report.passed, report.quantity_id)

    def test_inertial_excited_atom(self):
        reports = verify_rate(grid_atom("e"), "e", Trajectory(1.0))
        self.assertEqual(len(reports), 6)
        for report in reports:
            self.assertTrue(report.passed, report.quantity_id)

    def test_inertial_ground_state_cancellation(self):
        reports = verify_rate(grid_atom("g"), "g", Trajectory(1.0))
        for pair in ("xx", "yy", "zz"):
            vf = next(r for r in reports if f" {pair} {VF} " in r.quantity_id)
            rr = next(r for r in reports if f" {pair} {RR} " in r.quantity_id)
            self.assertNotEqual(vf.oracle, 0.0)
            self.assertAlmostEqual(vf.oracle + rr.oracle, 0.0, delta=1e-6 * abs(vf.oracle))

    def test_unbounded_accelerated(self):
        for ratio in (0.5, 1.0):
            reports = verify_rate(grid_atom("e"), "e", grid_trajectory(1.0, ratio), parts=(UNBOUNDED,))
            self.assertEqual(len(reports), 3)
            for report in reports:
                self.assertTrue(report.passed, report.quantity_id)

    def test_zero_polarization_skips_quadrature(self):
        spec = AtomSpec(
            name="x-polarized",
            levels=(Level("g", 0.0), Level("e", 1.0)),
            dipoles=(DipoleElement("e", "g", (0.5 + 0j, 0j, 0j)),),
            initial_state="e",
        )
        reports = verify_rate(spec, "e", Trajectory(1.0, UniformAcceleration(0.2)), parts=(BOUNDARY,))
        self.assertEqual(len(reports), 8)
        skipped = [r for r in reports if " xx " not in r.quantity_id]
        self.assertEqual(len(skipped), 6)
        for report in skipped:
            self.assertEqual(report.oracle, 0.0)
            self.assertEqual(report.curve, ())
            self.assertEqual(report.status, "pass")

    def test_unknown_preset(self):
        with self.assertRaises(ValueError):
            run_verification("huge")


class ExpansionVerdictTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.verdicts = expansion_verdicts()

    def test_corrected_coefficients_pass(self):
        for verdict in self.verdicts:
            if not verdict.printed:
                self.assertTrue(verdict.report.passed, verdict.report.quantity_id)

    def test_printed_variants_fail(self):
        printed = [v for v in self.verdicts if v.printed]
        self.assertEqual(len(printed), 8)
        for verdict in printed:
            self.assertFalse(verdict.report.passed, verdict.report.quantity_id)

    def test_odd_coefficient_keeps_its_sign(self):
        verdict = next(v for v in self.verdicts if v.report.quantity_id == "small-a f_xz c1 sigma=2")
        self.assertLess(verdict.report.closed_form, 0.0)
        self.assertLess(verdict.report.oracle, 0.0)
        self.assertTrue(verdict.report.passed)
