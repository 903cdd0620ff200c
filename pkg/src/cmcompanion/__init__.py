"""CM eigenforms from Hecke characters of imaginary quadratic fields, and their companions mod M."""

__version__ = "0.1.0"

from .classgroup import class_group, class_number, reduced_forms
from .companion import (
    companion_weight_modM,
    companion_weight_p_power,
    construct_companion,
    is_ordinary_at,
    plan_companion,
    select_anchor_exponents,
)
from .congruence import detect_cm, nebentypus_of, twisted_congruence
from .errors import AnchorConflictError, HypothesisError, NotCoprimeError, UnitCompatibilityError
from .heckechar import conj_inverse, finite_type_from_values, hecke_char_new, trivial_finite_type
from .qexpansion import hecke_consistency, synthesize, theta_power
from .quadfield import Ideal, QuadField, kronecker, splitting_type
from .residue import galois_ring_new, lift_root_of_unity, residue_system
