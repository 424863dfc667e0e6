from .atom_model import (
    AtomSpec,
    AtomSpecError,
    DipoleElement,
    Level,
    Transition,
    UnknownLevelError,
    transitions_from,
    validate,
)
from .helpers import atom_spec_from_dict, atom_spec_to_dict, load_atom_spec
