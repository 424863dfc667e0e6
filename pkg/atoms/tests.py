import json
import tempfile
import unittest
from pathlib import Path

import numpy as np

from .atom_model import AtomSpec, DipoleElement, Level, UnknownLevelError, transitions_from, validate
from .helpers import AtomSpecError, atom_spec_from_dict, atom_spec_to_dict, load_atom_spec

DATA_DIR = Path(__file__).resolve().parent / "data"


def two_level(vector=(0, 0, 0.5), initial_state="e", extra_dipoles=()):
    return AtomSpec(
        name="two-level",
        levels=(Level("g", 0.0), Level("e", 1.0)),
        dipoles=(DipoleElement("e", "g", tuple(complex(c) for c in vector)),) + tuple(extra_dipoles),
        initial_state=initial_state,
    )


class ValidateTests(unittest.TestCase):
    def test_valid_two_level_atom(self):
        self.assertEqual(validate(two_level()), [])

    def test_explicit_conjugate_reverse_is_accepted(self):
        reverse = DipoleElement("g", "e", (0j, 0j, 0.5 + 0j))
        self.assertEqual(validate(two_level(extra_dipoles=(reverse,))), [])

    def test_reverse_with_wrong_sign_violates_hermiticity(self):
        reverse = DipoleElement("g", "e", (0j, 0j, -0.5 + 0j))
        violations = validate(two_level(extra_dipoles=(reverse,)))
        self.assertEqual(len(violations), 1)
        self.assertIn("Hermiticity", violations[0])

    def test_missing_initial_state(self):
        violations = validate(two_level(initial_state="x"))
        self.assertEqual(len(violations), 1)
        self.assertIn("initial_state", violations[0])

    def test_duplicate_ids_and_self_dipole(self):
        spec = AtomSpec(
            name="bad",
            levels=(Level("g", 0.0), Level("g", 1.0)),
            dipoles=(DipoleElement("g", "g", (1j, 0j, 0j)),),
            initial_state="g",
        )
        violations = validate(spec)
        self.assertTrue(any("duplicate" in v for v in violations))
        self.assertTrue(any("itself" in v for v in violations))

    def test_unknown_dipole_level(self):
        spec = two_level(extra_dipoles=(DipoleElement("e", "q", (1j, 0j, 0j)),))
        self.assertTrue(any("unknown level" in v for v in validate(spec)))


class TransitionTests(unittest.TestCase):
    def test_sign_convention(self):
        spec = two_level()
        (down,) = transitions_from(spec, "e")
        (up,) = transitions_from(spec, "g")
        self.assertEqual(down.omega, 1.0)
        self.assertEqual(down.channel, "deexcitation")
        self.assertEqual(up.omega, -1.0)
        self.assertEqual(up.channel, "excitation")

    def test_real_dipole_gives_diagonal_tensor(self):
        (t,) = transitions_from(two_level((0, 0, 0.5)), "e")
        np.testing.assert_array_equal(t.polarization_tensor, np.diag([0.0, 0.0, 0.25]))

    def test_shared_pair_tensors_match(self):
        spec = load_atom_spec(DATA_DIR / "three_level_ladder.json")
        (from_1s,) = transitions_from(spec, "1s")
        to_1s = [t for t in transitions_from(spec, "2p") if t.level == "1s"][0]
        self.assertEqual(from_1s.omega, -to_1s.omega)
        np.testing.assert_allclose(from_1s.polarization_tensor, to_1s.polarization_tensor)

    def test_tensor_is_symmetric_psd(self):
        spec = two_level((0.3 + 0.2j, -0.1j, 0.7))
        (t,) = transitions_from(spec, "e")
        p = t.polarization_tensor
        np.testing.assert_array_equal(p, p.T)
        self.assertTrue(np.all(np.linalg.eigvalsh(p) >= -1e-15))
        for i in range(3):
            for j in range(3):
                self.assertLessEqual(p[i, j] ** 2, p[i, i] * p[j, j] + 1e-15)

    def test_ordering_by_level_id(self):
        spec = load_atom_spec(DATA_DIR / "three_level_ladder.json")
        self.assertEqual([t.level for t in transitions_from(spec, "2p")], ["1s", "3d"])

    def test_zero_dipole_is_skipped(self):
        self.assertEqual(transitions_from(two_level((0, 0, 0)), "e"), [])

    def test_unknown_state(self):
        with self.assertRaises(UnknownLevelError):
            transitions_from(two_level(), "x")


class AtomFileTests(unittest.TestCase):
    def test_bundled_atoms_load(self):
        for path in sorted(DATA_DIR.glob("*.json")):
            with self.subTest(path=path.name):
                spec = load_atom_spec(path)
                self.assertEqual(validate(spec), [])

    def test_dict_round_trip(self):
        spec = load_atom_spec(DATA_DIR / "three_level_ladder.json")
        self.assertEqual(atom_spec_from_dict(atom_spec_to_dict(spec)), spec)

    def test_unknown_keys_rejected(self):
        data = atom_spec_to_dict(two_level())
        data["levels"][0]["spin"] = 0.5
        data["comment"] = "x"
        with self.assertRaises(AtomSpecError) as ctx:
            atom_spec_from_dict(data)
        self.assertEqual(len(ctx.exception.violations), 2)

    def test_invalid_json(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "atom.json"
            path.write_text("{not json", encoding="utf-8")
            with self.assertRaises(AtomSpecError):
                load_atom_spec(path)

    def test_invariant_violations_are_reported(self):
        data = atom_spec_to_dict(two_level())
        data["initial_state"] = "nowhere"
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "atom.json"
            path.write_text(json.dumps(data), encoding="utf-8")
            with self.assertRaises(AtomSpecError) as ctx:
                load_atom_spec(path)
        self.assertTrue(ctx.exception.violations)


if __name__ == "__main__":
    unittest.main()
