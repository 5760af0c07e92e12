"""Linear-level degenerate twistorial deformation.

Given a c-symplectic space with a c-Lagrangian fiber L, the base model K
is the Euclidean complement of L carrying the inherited structure.  A
section K -> V pulls the form back to a (2,0)+(1,1) form on K; deforming
by Omega_t = Omega + t pi^* gamma keeps the form c-symplectic, keeps the
fiber and quotient structures fixed, and for gamma = section pullback with
t = -1 turns the section into a complex-linear map.  Every statement is
verified numerically, not assumed.
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from .csymplectic import (
    CSymplecticSpace,
    induced_complex_structure,
    is_c_lagrangian,
    is_c_symplectic,
    hodge_decompose,
    quotient_complex_structure,
    quotient_model,
)
from .forms import ComplexTwoForm
from .linalg import DEFAULT_TOL, ComplexStructure, Subspace, max_abs, null_space

#: Default complex deformation parameters probed by verification sweeps.
DEFAULT_T_SAMPLES = (1.0, -1.0, 1j, -1j, 0.5 + 0.5j)


@dataclass(frozen=True)
class HodgeTypeCertificate:
    """Component norms of a 2-form w.r.t. a quotient structure."""

    norm_20: float
    norm_11: float
    norm_02: float
    scale: float

    def anti_holomorphic_ok(self, tol: float = DEFAULT_TOL) -> bool:
        return self.norm_02 <= tol * max(self.scale, 1e-300)


def _hodge_certificate(two_form: ComplexTwoForm, structure: ComplexStructure, scale: float):
    comps = hodge_decompose(two_form.to_kform(), structure)
    return HodgeTypeCertificate(
        norm_20=comps[(2, 0)].norm(),
        norm_11=comps[(1, 1)].norm(),
        norm_02=comps[(0, 2)].norm(),
        scale=max(scale, two_form.norm()),
    )


@dataclass(frozen=True)
class LagrangianProjection:
    """Projection V -> K along a c-Lagrangian fiber L (K = Euclidean L^perp)."""

    space: CSymplecticSpace
    fiber: Subspace
    base_model: Subspace = dc_field(repr=False)
    projection: np.ndarray = dc_field(repr=False)  # (2n, 4n), = W^T in K coordinates
    quotient_structure: ComplexStructure = dc_field(repr=False)

    @classmethod
    def build(cls, space: CSymplecticSpace, fiber: Subspace, tol: float = DEFAULT_TOL):
        if not is_c_lagrangian(fiber, space.omega, tol):
            raise ValueError("fiber is not c-Lagrangian for the given form")
        base = quotient_model(fiber)
        w = base.orthonormal_basis()
        return cls(
            space=space,
            fiber=fiber,
            base_model=base,
            projection=w.T,
            quotient_structure=quotient_complex_structure(space, fiber, tol),
        )

    @property
    def half_dim(self) -> int:
        return self.projection.shape[0]

    def fiber_structure(self, tol: float = DEFAULT_TOL):
        restricted, residual = self.space.structure.restrict(self.fiber, tol)
        return restricted, residual


@dataclass(frozen=True)
class LinearSection:
    """Real-linear right inverse of a Lagrangian projection."""

    projection: LagrangianProjection
    map: np.ndarray = dc_field(repr=False)  # (4n, 2n)

    def __post_init__(self):
        s = np.asarray(self.map, dtype=np.float64)
        p = self.projection.projection
        residual = max_abs(p @ s - np.eye(p.shape[0]))
        if residual > DEFAULT_TOL * max(1.0, max_abs(s)):
            raise ValueError(f"not a section: pi o sigma != id (residual {residual:.3e})")
        object.__setattr__(self, "map", s)

    @classmethod
    def from_fiber_part(cls, projection: LagrangianProjection, fiber_coeffs: np.ndarray):
        """Section W + B_L T: base inclusion plus a fiber-valued offset T."""
        w = projection.base_model.orthonormal_basis()
        b = projection.fiber.orthonormal_basis()
        return cls(projection=projection, map=w + b @ np.asarray(fiber_coeffs, dtype=float))

    @classmethod
    def random(cls, projection: LagrangianProjection, rng: np.random.Generator, scale: float = 1.0):
        k = projection.half_dim
        return cls.from_fiber_part(projection, scale * rng.standard_normal((k, k)))

    @classmethod
    def complex_linear(cls, projection: LagrangianProjection, tol: float = DEFAULT_TOL):
        """A section whose image is an I-invariant complement of the fiber.

        Uses the I-averaged metric g = (g0 + I^T g0 I)/2: its orthogonal
        complement of L is I-invariant, and the induced section
        intertwines the quotient structure with I.
        """
        structure = projection.space.structure.matrix
        metric = (np.eye(structure.shape[0]) + structure.T @ structure) / 2.0
        b = projection.fiber.orthonormal_basis()
        # complement = g-orthogonal of L: vectors x with b^T g x = 0
        comp = null_space(b.T @ metric, tol)
        m = projection.projection @ comp
        section = comp @ np.linalg.inv(m)
        return cls(projection=projection, map=section)

    def graph(self) -> Subspace:
        return Subspace(self.map, field="R")

    def fiber_part(self) -> np.ndarray:
        b = self.projection.fiber.orthonormal_basis()
        w = self.projection.base_model.orthonormal_basis()
        return b.T @ (self.map - w)


@dataclass(frozen=True)
class SectionForm:
    two_form: ComplexTwoForm
    certificate: HodgeTypeCertificate


def section_form(section: LinearSection, tol: float = DEFAULT_TOL) -> SectionForm:
    """Pullback of Omega to the base model along a section.

    The certificate records the Hodge component norms w.r.t. the inherited
    quotient structure and asserts the vanishing of the (0,2) part, which
    is the content of the pulled-back form having type (2,0)+(1,1).
    """
    p = section.projection
    s = section.map
    omega_sigma = ComplexTwoForm(s.T @ p.space.omega.matrix @ s)
    scale = p.space.omega.norm() * float(np.linalg.norm(s, 2)) ** 2
    certificate = _hodge_certificate(omega_sigma, p.quotient_structure, scale)
    if not certificate.anti_holomorphic_ok(max(tol, 1e-8)):
        raise AssertionError(
            f"(0,2) component of a section form is {certificate.norm_02:.3e}; "
            "this contradicts the Hodge-type property"
        )
    return SectionForm(two_form=omega_sigma, certificate=certificate)


def deform(
    projection: LagrangianProjection,
    gamma: ComplexTwoForm,
    t: complex,
    tol: float = DEFAULT_TOL,
    check: bool = True,
) -> ComplexTwoForm:
    """Omega_t = Omega + t pi^* gamma for a (2,0)+(1,1) form gamma on K.

    Rejects gamma with an anti-holomorphic component above tolerance and
    verifies c-symplecticity of the result by both criteria.
    """
    if gamma.dim != projection.half_dim:
        raise ValueError("gamma must live on the base model")
    certificate = _hodge_certificate(gamma, projection.quotient_structure, gamma.norm())
    if not certificate.anti_holomorphic_ok(max(tol, 1e-8)):
        raise ValueError(
            f"gamma has a (0,2) component of norm {certificate.norm_02:.3e}; "
            "deformation requires Hodge type (2,0)+(1,1)"
        )
    w = projection.projection  # (2n, 4n)
    pulled = w.T @ gamma.matrix @ w
    omega_t = ComplexTwoForm(projection.space.omega.matrix + complex(t) * pulled)
    if check:
        verdict = is_c_symplectic(omega_t, tol)
        if not verdict.ok:
            raise AssertionError(
                "deformed form failed c-symplecticity: "
                f"rank: {verdict.rank.reason or 'ok'}; power: {verdict.power.reason or 'ok'}"
            )
    return omega_t


@dataclass(frozen=True)
class DeformationFamily:
    """The affine family t -> Omega + t pi^* gamma with a validated gamma."""

    projection: LagrangianProjection
    gamma: ComplexTwoForm
    certificate: HodgeTypeCertificate = dc_field(repr=False)

    @classmethod
    def build(cls, projection: LagrangianProjection, gamma: ComplexTwoForm, tol: float = DEFAULT_TOL):
        certificate = _hodge_certificate(gamma, projection.quotient_structure, gamma.norm())
        if not certificate.anti_holomorphic_ok(max(tol, 1e-8)):
            raise ValueError(
                f"gamma has (0,2) norm {certificate.norm_02:.3e}, above tolerance"
            )
        return cls(projection=projection, gamma=gamma, certificate=certificate)

    def __call__(self, t: complex, tol: float = DEFAULT_TOL, check: bool = True) -> ComplexTwoForm:
        return deform(self.projection, self.gamma, t, tol, check)


@dataclass(frozen=True)
class PreservanceReport:
    t_samples: tuple
    fiber_lagrangian_ok: bool
    max_fiber_restriction_residual: float
    max_quotient_residual: float
    max_invariance_residual: float
    details: tuple

    @property
    def max_residual(self) -> float:
        return max(
            self.max_fiber_restriction_residual,
            self.max_quotient_residual,
            self.max_invariance_residual,
        )

    def ok(self, tol: float = 1e-9) -> bool:
        return self.fiber_lagrangian_ok and self.max_residual <= tol


def verify_preservance(
    projection: LagrangianProjection,
    gamma: ComplexTwoForm,
    t_samples=DEFAULT_T_SAMPLES,
    tol: float = DEFAULT_TOL,
) -> PreservanceReport:
    """Check that the deformation fixes the fiber and quotient structures.

    For each t: L stays c-Lagrangian for Omega_t, the restriction of the
    induced structure to L matches the t = 0 restriction, and the
    inherited quotient structure matches as well.
    """
    space = projection.space
    base_restriction, base_inv = projection.fiber_structure(tol)
    base_quotient = projection.quotient_structure.matrix
    fiber_ok = True
    max_restriction = 0.0
    max_quotient = 0.0
    max_invariance = base_inv
    details = []
    for t in t_samples:
        omega_t = deform(projection, gamma, t, tol)
        if not is_c_lagrangian(projection.fiber, omega_t, max(tol, 1e-8)):
            fiber_ok = False
        structure_t = induced_complex_structure(omega_t, tol)
        q = projection.fiber.orthonormal_basis()
        image = structure_t.matrix @ q
        restriction_t = q.T @ image
        invariance = max_abs(image - q @ restriction_t)
        restriction_residual = max_abs(restriction_t - base_restriction)
        w = projection.base_model.orthonormal_basis()
        quotient_t = w.T @ structure_t.matrix @ w
        quotient_residual = max_abs(quotient_t - base_quotient)
        max_restriction = max(max_restriction, restriction_residual)
        max_quotient = max(max_quotient, quotient_residual)
        max_invariance = max(max_invariance, invariance)
        details.append(
            {
                "t": complex(t),
                "fiber_restriction_residual": restriction_residual,
                "quotient_residual": quotient_residual,
                "invariance_residual": invariance,
            }
        )
    return PreservanceReport(
        t_samples=tuple(complex(t) for t in t_samples),
        fiber_lagrangian_ok=fiber_ok,
        max_fiber_restriction_residual=max_restriction,
        max_quotient_residual=max_quotient,
        max_invariance_residual=max_invariance,
        details=tuple(details),
    )


@dataclass(frozen=True)
class HolomorphizationCertificate:
    graph_restriction_norm: float
    graph_is_lagrangian: bool
    intertwining_residual: float

    @property
    def max_residual(self) -> float:
        return max(self.graph_restriction_norm, self.intertwining_residual)

    def ok(self, tol: float = 1e-9) -> bool:
        return self.graph_is_lagrangian and self.max_residual <= tol


@dataclass(frozen=True)
class HolomorphizedSection:
    eta: ComplexTwoForm
    omega_prime: ComplexTwoForm
    certificate: HolomorphizationCertificate


def holomorphize_section(section: LinearSection, tol: float = DEFAULT_TOL) -> HolomorphizedSection:
    """Deform by the section's own pullback form at t = -1.

    Certifies that the deformed form vanishes on the section's image, the
    image is c-Lagrangian (hence invariant under the new structure), and
    the section intertwines the quotient structure with the new one,
    i.e. becomes complex-linear.
    """
    p = section.projection
    eta = section_form(section, tol).two_form
    omega_prime = deform(p, eta, -1.0, tol)
    s = section.map
    scale = max(p.space.omega.norm(), 1e-300) * float(np.linalg.norm(s, 2)) ** 2
    restriction = max_abs(s.T @ omega_prime.matrix @ s) / scale
    graph = section.graph()
    lagrangian = is_c_lagrangian(graph, omega_prime, max(tol, 1e-8))
    structure_prime = induced_complex_structure(omega_prime, tol)
    intertwine = max_abs(
        s @ p.quotient_structure.matrix - structure_prime.matrix @ s
    ) / max(1.0, float(np.linalg.norm(s, 2)))
    return HolomorphizedSection(
        eta=eta,
        omega_prime=omega_prime,
        certificate=HolomorphizationCertificate(
            graph_restriction_norm=restriction,
            graph_is_lagrangian=lagrangian,
            intertwining_residual=intertwine,
        ),
    )


def random_base_form(
    projection: LagrangianProjection, rng: np.random.Generator, scale: float = 1.0
) -> ComplexTwoForm:
    """Random (2,0)+(1,1) form on the base model, for family sweeps."""
    k = projection.half_dim
    raw = scale * (rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k)))
    raw_form = ComplexTwoForm(raw)
    comps = hodge_decompose(raw_form.to_kform(), projection.quotient_structure)
    cleaned = comps[(2, 0)] + comps[(1, 1)]
    return ComplexTwoForm.from_kform(cleaned)
