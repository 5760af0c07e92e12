"""Numerical c-symplectic geometry: forms, deformations, torus testbed, K3 lattice."""

from .forms import ComplexKForm, ComplexTwoForm, contract, form_kernel, power, pullback, wedge
from .kernels import BACKEND
from .linalg import DEFAULT_TOL, ComplexStructure, Subspace
from .csymplectic import (
    CSymplecticSpace,
    Q_BLOCK,
    c_symplectic_basis,
    hodge_decompose,
    induced_complex_structure,
    is_c_isotropic,
    is_c_lagrangian,
    is_c_symplectic,
    is_c_symplectic_power,
    is_c_symplectic_rank,
    q_block_form,
    quotient_complex_structure,
    random_c_symplectic,
)
from .deformation import (
    DeformationFamily,
    LagrangianProjection,
    LinearSection,
    deform,
    holomorphize_section,
    section_form,
    verify_preservance,
)
from .lattice import (
    IntegralLattice,
    PeriodPoint,
    dual_vector,
    find_section_class,
    is_primitive_isotropic,
    square_minus_two,
    standard_k3_lattice,
    twistor_curve_plane,
    twistor_parameter,
)
from .torus import (
    GridField,
    SmoothSection,
    TorusGrid,
    deformed_structure_field,
    exterior_derivative_fd,
    nijenhuis_norm,
    sample_section_form,
    verify_section_holomorphic,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DEFAULT_TOL",
    "ComplexKForm",
    "ComplexStructure",
    "ComplexTwoForm",
    "CSymplecticSpace",
    "DeformationFamily",
    "GridField",
    "IntegralLattice",
    "LagrangianProjection",
    "LinearSection",
    "PeriodPoint",
    "Q_BLOCK",
    "SmoothSection",
    "Subspace",
    "TorusGrid",
    "c_symplectic_basis",
    "contract",
    "deform",
    "deformed_structure_field",
    "dual_vector",
    "exterior_derivative_fd",
    "find_section_class",
    "form_kernel",
    "hodge_decompose",
    "holomorphize_section",
    "induced_complex_structure",
    "is_c_isotropic",
    "is_c_lagrangian",
    "is_c_symplectic",
    "is_c_symplectic_power",
    "is_c_symplectic_rank",
    "is_primitive_isotropic",
    "nijenhuis_norm",
    "power",
    "pullback",
    "q_block_form",
    "quotient_complex_structure",
    "random_c_symplectic",
    "sample_section_form",
    "section_form",
    "square_minus_two",
    "standard_k3_lattice",
    "twistor_curve_plane",
    "twistor_parameter",
    "verify_preservance",
    "verify_section_holomorphic",
    "wedge",
]
