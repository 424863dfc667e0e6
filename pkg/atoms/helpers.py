import json
import logging
from pathlib import Path

from .atom_model import AtomSpec, AtomSpecError, DipoleElement, Level, validate

logger = logging.getLogger(__name__)

ATOM_KEYS = {"name", "levels", "dipoles", "initial_state"}
LEVEL_KEYS = {"id", "energy"}
DIPOLE_KEYS = {"from", "to", "re", "im"}


def _check_keys(obj, allowed: set, required: set, where: str, violations: list) -> bool:
    if not isinstance(obj, dict):
        violations.append(f"{where} must be an object")
        return False
    unknown = sorted(set(obj) - allowed)
    missing = sorted(required - set(obj))
    if unknown:
        violations.append(f"{where} has unknown keys: {', '.join(unknown)}")
    if missing:
        violations.append(f"{where} is missing keys: {', '.join(missing)}")
    return not missing


def _number(value) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _triple(value, where: str, violations: list):
    if not isinstance(value, list) or len(value) != 3 or not all(_number(v) for v in value):
        violations.append(f"{where} must be an array of 3 numbers")
        return None
    return [float(v) for v in value]


def atom_spec_from_dict(data: dict) -> AtomSpec:
    """Build and validate an AtomSpec from the decoded atom file.

    Raises AtomSpecError carrying every problem found.
    """
    violations = []
    if not _check_keys(data, ATOM_KEYS, ATOM_KEYS, "atom", violations):
        raise AtomSpecError("invalid atom file", violations)

    if not isinstance(data["name"], str):
        violations.append("name must be a string")
    if not isinstance(data["initial_state"], str):
        violations.append("initial_state must be a string")

    levels = []
    for index, item in enumerate(data["levels"] if isinstance(data["levels"], list) else []):
        where = f"levels[{index}]"
        if not _check_keys(item, LEVEL_KEYS, LEVEL_KEYS, where, violations):
            continue
        if not isinstance(item["id"], str) or not _number(item["energy"]):
            violations.append(f"{where} needs a string id and a numeric energy")
            continue
        levels.append(Level(id=item["id"], energy=float(item["energy"])))
    if not isinstance(data["levels"], list):
        violations.append("levels must be an array")

    dipoles = []
    for index, item in enumerate(data["dipoles"] if isinstance(data["dipoles"], list) else []):
        where = f"dipoles[{index}]"
        if not _check_keys(item, DIPOLE_KEYS, {"from", "to", "re"}, where, violations):
            continue
        if not isinstance(item["from"], str) or not isinstance(item["to"], str):
            violations.append(f"{where} needs string from/to level ids")
            continue
        re_part = _triple(item["re"], f"{where}.re", violations)
        im_part = _triple(item.get("im", [0.0, 0.0, 0.0]), f"{where}.im", violations)
        if re_part is None or im_part is None:
            continue
        vector = tuple(complex(r, i) for r, i in zip(re_part, im_part))
        dipoles.append(DipoleElement(source=item["from"], target=item["to"], vector=vector))
    if not isinstance(data["dipoles"], list):
        violations.append("dipoles must be an array")

    if violations:
        raise AtomSpecError("invalid atom file", violations)

    spec = AtomSpec(
        name=data["name"],
        levels=tuple(levels),
        dipoles=tuple(dipoles),
        initial_state=data["initial_state"],
    )
    violations = validate(spec)
    if violations:
        raise AtomSpecError(f"atom {spec.name!r} violates its invariants", violations)
    return spec


def load_atom_spec(path) -> AtomSpec:
    """Read an atom JSON file."""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise AtomSpecError(f"{path} is not valid JSON", [str(e)])
    spec = atom_spec_from_dict(data)
    logger.info(f"Loaded atom {spec.name!r} from {path}")
    return spec


def atom_spec_to_dict(spec: AtomSpec) -> dict:
    """Inverse of atom_spec_from_dict, used for reports."""
    return {
        "name": spec.name,
        "levels": [{"id": level.id, "energy": level.energy} for level in spec.levels],
        "dipoles": [
            {
                "from": d.source,
                "to": d.target,
                "re": [complex(c).real for c in d.vector],
                "im": [complex(c).imag for c in d.vector],
            }
            for d in spec.dipoles
        ],
        "initial_state": spec.initial_state,
    }
