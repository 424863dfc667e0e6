import contextlib
import io
import json
import math
import tempfile
import unittest
from collections import defaultdict
from pathlib import Path

import scipy.constants

from .cli import SweepPlan, UnitContext, UsageError, main, run_sweep
from .helpers import CSV_HEADER, format_number, save_data_to_json, write_rates_csv

DATA_DIR = Path(__file__).resolve().parent.parent / "atoms" / "data"


def run_cli(*argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = main(list(argv))
    return code, out.getvalue()


class UnitContextTests(unittest.TestCase):
    def test_optical_scales(self):
        natural = UnitContext(omega_si=1e15, z_si=3e-5, a_si=1e25).natural()
        self.assertAlmostEqual(natural["sigma"], 1.0, places=2)
        self.assertAlmostEqual(natural["a_over_omega"], 1 / 3, places=2)
        self.assertAlmostEqual(natural["eta"], 1e25 * 3e-5 / (scipy.constants.c * 100) ** 2, places=12)

    def test_unruh_temperature(self):
        c, hbar, k = scipy.constants.c, scipy.constants.hbar, scipy.constants.k
        a_si = 2 * math.pi * c * k / hbar * 100.0
        self.assertAlmostEqual(UnitContext(a_si=a_si).natural()["unruh_temperature_K"], 1.0, places=12)

    def test_invalid(self):
        with self.assertRaises(UsageError):
            UnitContext(omega_si=-1.0)
        with self.assertRaises(UsageError):
            UnitContext()


class SweepPlanTests(unittest.TestCase):
    def plan(self, **overrides):
        values = dict(variable="z", start=0.5, stop=2.0, points=4, atom_path=DATA_DIR / "two_level_x.json")
        values.update(overrides)
        return SweepPlan(**values)

    def test_values(self):
        self.assertEqual(list(self.plan().values()), [0.5, 1.0, 1.5, 2.0])
        log_values = self.plan(log=True, start=0.1, stop=10.0, points=3).values()
        self.assertAlmostEqual(log_values[1], 1.0, places=12)

    def test_invalid_plans(self):
        for overrides in (
            dict(start=2.0, stop=1.0),
            dict(points=1),
            dict(log=True, start=0.0),
            dict(variable="omega"),
            dict(variable="a", start=0.0, z=1.0),
            dict(variable="t"),
            dict(accel=0.0),
            dict(variable="a", z=1.0, velocity=0.1),
            dict(variable="a", z=1.0, accel=1.0),
        ):
            with self.subTest(**overrides), self.assertRaises(UsageError):
                self.plan(**overrides)

    def test_boundary_total_oscillates(self):
        plan = self.plan(start=0.1, stop=20.0, points=512)
        totals = defaultdict(float)
        for z, _, _, _, part, _, rate in run_sweep(plan):
            if part == "boundary":
                totals[z] += rate
        values = [totals[z] for z in sorted(totals)]
        changes = sum(1 for left, right in zip(values, values[1:]) if left * right < 0)
        self.assertGreaterEqual(changes, 5)

    def test_excitation_vanishes_for_weak_acceleration(self):
        plan = self.plan(variable="a", start=1e-3, stop=1.0, points=3, z=1.0, state="g")
        rows = [row for row in run_sweep(plan) if row[0] == 1e-3 and row[5] == "excitation"]
        self.assertTrue(rows)
        self.assertAlmostEqual(sum(row[6] for row in rows), 0.0, delta=1e-18)

    def test_frequency_sweep_rescales_the_atom(self):
        plan = self.plan(variable="omega", start=1.0, stop=3.0, points=2, z=1.0)
        omegas = sorted({(row[0], row[1]) for row in run_sweep(plan)})
        self.assertEqual(omegas, [(1.0, 1.0), (3.0, 3.0)])


class HelperTests(unittest.TestCase):
    def test_format_number(self):
        self.assertEqual(format_number(0.1), "0.10000000000000001")
        self.assertEqual(float(format_number(math.pi)), math.pi)
        with self.assertRaises(ValueError):
            format_number(math.nan)

    def test_csv_and_json(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = write_rates_csv(Path(tmp) / "out" / "rates.csv", [(1.0, 1.0, "xx", "vf", "boundary", "deexcitation", -0.5)])
            lines = path.read_text().splitlines()
            self.assertEqual(lines[0], ",".join(CSV_HEADER))
            self.assertEqual(lines[1], "1,1,xx,vf,boundary,deexcitation,-0.5")

            filename = save_data_to_json([{"status": "pass"}], "verify", data_dir=tmp)
            with open(filename, encoding="utf-8") as f:
                self.assertEqual(json.load(f), [{"status": "pass"}])

            failed = save_data_to_json([{"status": "fail"}], "verify", data_dir=tmp, file_prefix="failed_")
            self.assertTrue(Path(failed).name.startswith("failed_verify_1_"))


class CommandTests(unittest.TestCase):
    def test_ground_state_total_is_zero(self):
        code, out = run_cli("rates", "--atom", str(DATA_DIR / "two_level_z.json"), "--state", "g", "--z", "0.7")
        self.assertEqual(code, 0)
        self.assertIn("grand total: 0\n", out)

    def test_accel_and_velocity_are_exclusive(self):
        with contextlib.redirect_stderr(io.StringIO()), self.assertRaises(SystemExit) as cm:
            main(["rates", "--atom", str(DATA_DIR / "two_level_z.json"), "--z", "1", "--accel", "1", "--velocity", "0.1"])
        self.assertEqual(cm.exception.code, 2)

    def test_invalid_atom_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "atom.json"
            path.write_text(json.dumps({"name": "bad", "levels": [], "dipoles": [], "initial_state": "g", "spin": 1}))
            code, out = run_cli("rates", "--atom", str(path), "--z", "1")
        self.assertEqual(code, 2)
        self.assertIn("spin", out)

    def test_zero_acceleration_is_rejected(self):
        code, out = run_cli("rates", "--atom", str(DATA_DIR / "two_level_z.json"), "--z", "1", "--accel", "0")
        self.assertEqual(code, 2)
        self.assertIn("--accel must be positive", out)

    def test_numeric_domain_error(self):
        code, _ = run_cli("rates", "--atom", str(DATA_DIR / "two_level_z.json"), "--z", "-1")
        self.assertEqual(code, 3)

    def test_sweep_rows_are_deterministic(self):
        with tempfile.TemporaryDirectory() as tmp:
            outputs = []
            for workers in ("1", "2"):
                out = Path(tmp) / f"sweep_{workers}.csv"
                args = ["sweep", "--atom", str(DATA_DIR / "two_level_x.json"), "--var", "z", "--from", "0.5"]
                args += ["--to", "20", "--points", "512", "--workers", workers, "--out", str(out)]
                code, _ = run_cli(*args)
                self.assertEqual(code, 0)
                outputs.append(out.read_bytes())
        self.assertEqual(outputs[0], outputs[1])
        lines = outputs[0].decode().splitlines()
        self.assertEqual(lines[0], "variable,omega_bd,pair,mechanism,part,channel,rate")
        self.assertEqual(len(lines) - 1, 512 * 9)

    def test_crossing(self):
        code, out = run_cli("crossing", "--accel", "0.1", "--component", "zz", "--zmin", "0.01", "--zmax", "20")
        self.assertEqual(code, 0)
        self.assertIn("residual", out)

        code, out = run_cli("crossing", "--accel", "10", "--component", "zz", "--zmin", "0.01", "--zmax", "20")
        self.assertEqual(code, 0)
        self.assertIn("no roots", out)

        code, _ = run_cli("crossing", "--accel", "0.1", "--component", "zz", "--zmin", "2", "--zmax", "1")
        self.assertEqual(code, 2)

    def test_units(self):
        code, out = run_cli("units", "--omega", "1e15", "--z", "3e-5")
        self.assertEqual(code, 0)
        self.assertIn("sigma = 1.0", out)
        code, _ = run_cli("units", "--z=-3e-5")
        self.assertEqual(code, 2)

    def test_verify_smoke(self):
        code, out = run_cli("verify", "--grid", "smoke")
        self.assertEqual(code, 0)
        self.assertIn("(printed)", out)

    def test_verify_below_the_extrapolation_floor(self):
        code, _ = run_cli("verify", "--grid", "smoke", "--rel-tol", "1e-9")
        self.assertEqual(code, 5)
