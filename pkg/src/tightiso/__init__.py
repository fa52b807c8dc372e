"""Tight groupoids of finite inverse semigroups, their isotropy, and the
right-LCM and subshift families, as exact finite computations.
"""

from .builders import build, bundled
from .errors import InputError, InvariantViolation, ParseError, TightIsoError, ValidationError
from .germs import isotropy_decomposition, tight_groupoid
from .isotropy import centralizer, isotropy_report, s_iso, w_set, z_region
from .semigroup import InverseSemigroup, from_json, validate
from .spectrum import tight_filters
from .verdict import Unknown, Verdict

__version__ = "0.1.0"

__all__ = [
    "build", "bundled", "InputError", "InvariantViolation", "ParseError", "TightIsoError",
    "ValidationError", "isotropy_decomposition", "tight_groupoid", "centralizer",
    "isotropy_report", "s_iso", "w_set", "z_region", "InverseSemigroup", "from_json",
    "validate", "tight_filters", "Unknown", "Verdict",
]
