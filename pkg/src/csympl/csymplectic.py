"""Recognition of c-symplectic 2-forms and their induced complex structures.

A complex-valued 2-form on R^{4n} is c-symplectic when its kernel inside
the complexification has complex dimension 2n and contains no real vector;
equivalently its (n+1)-st wedge power vanishes while the n-th power of
Omega ^ conj(Omega) does not.  Such a form determines a unique complex
structure (multiplication by -i on the kernel), and this module builds it,
decomposes forms into Hodge components, produces canonical bases with the
4x4 block Q on the diagonal, and handles c-isotropic / c-Lagrangian
subspaces and quotient structures.
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from .forms import ComplexKForm, ComplexTwoForm, form_kernel, power, pullback, wedge
from .linalg import DEFAULT_TOL, ComplexStructure, Subspace, max_abs, null_space

#: Canonical 4x4 block of a c-symplectic form in a basis (u1, I u1, u2, I u2).
Q_BLOCK = np.array(
    [
        [0, 0, 1, 1j],
        [0, 0, 1j, -1],
        [-1, -1j, 0, 0],
        [-1j, 1, 0, 0],
    ],
    dtype=np.complex128,
)


def q_block_form(n: int = 1) -> ComplexTwoForm:
    """blkdiag(Q, ..., Q) on R^{4n}."""
    mat = np.zeros((4 * n, 4 * n), dtype=np.complex128)
    for j in range(n):
        mat[4 * j : 4 * j + 4, 4 * j : 4 * j + 4] = Q_BLOCK
    return ComplexTwoForm(mat)


@dataclass(frozen=True)
class RankCriterion:
    ok: bool
    reason: str
    kernel_dim: int
    real_span_rank: int
    ill_conditioned: bool

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class PowerCriterion:
    ok: bool
    reason: str
    power_norm: float
    pairing_norm: float
    form_norm: float

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class CSymplecticVerdict:
    rank: RankCriterion
    power: PowerCriterion

    @property
    def ok(self) -> bool:
        return self.rank.ok and self.power.ok

    def __bool__(self):
        return self.ok


def is_c_symplectic_rank(omega: ComplexTwoForm, tol: float = DEFAULT_TOL) -> RankCriterion:
    """Kernel criterion: dim_C ker = 2n and ker meets R^{4n} only at 0.

    The real-intersection test runs as a rank check: the real span of the
    kernel basis' real and imaginary parts must fill all of R^{4n}.
    """
    m = omega.dim
    if m % 4:
        return RankCriterion(False, "dimension not 4n", -1, -1, False)
    n = m // 4
    ker = form_kernel(omega, tol)
    if ker.dim != 2 * n:
        return RankCriterion(
            False,
            f"kernel dimension {ker.dim} != {2 * n}",
            ker.dim,
            -1,
            ker.ill_conditioned,
        )
    span_rank = ker.subspace.real_span_rank(tol)
    if span_rank != m:
        return RankCriterion(
            False,
            "kernel contains real vectors",
            ker.dim,
            span_rank,
            ker.ill_conditioned,
        )
    return RankCriterion(True, "", ker.dim, span_rank, ker.ill_conditioned)


def is_c_symplectic_power(omega: ComplexTwoForm, tol: float = DEFAULT_TOL) -> PowerCriterion:
    """Power criterion: Omega^{n+1} = 0 while (Omega ^ conj Omega)^n != 0."""
    m = omega.dim
    if m % 4:
        return PowerCriterion(False, "dimension not 4n", -1.0, -1.0, omega.norm())
    n = m // 4
    scale = omega.norm()
    if scale == 0.0:
        return PowerCriterion(False, "zero form", 0.0, 0.0, 0.0)
    top_power = power(omega, n + 1).norm()
    pairing = wedge(omega, omega.conjugate())
    pairing_top = pairing
    for _ in range(n - 1):
        pairing_top = wedge(pairing_top, pairing)
    pairing_norm = pairing_top.norm()
    power_ok = top_power <= tol * scale ** (n + 1)
    pairing_ok = pairing_norm > tol * scale ** (2 * n)
    if not power_ok:
        reason = "Omega^{n+1} != 0"
    elif not pairing_ok:
        reason = "(Omega ^ conj Omega)^n = 0"
    else:
        reason = ""
    return PowerCriterion(power_ok and pairing_ok, reason, top_power, pairing_norm, scale)


def is_c_symplectic(omega: ComplexTwoForm, tol: float = DEFAULT_TOL) -> CSymplecticVerdict:
    """Both criteria; they agree on every input (numerically witnessed)."""
    return CSymplecticVerdict(
        rank=is_c_symplectic_rank(omega, tol),
        power=is_c_symplectic_power(omega, tol),
    )


def induced_complex_structure(omega: ComplexTwoForm, tol: float = DEFAULT_TOL) -> ComplexStructure:
    """The unique complex structure making omega a nondegenerate (2,0)-form.

    Acts as multiplication by -i on ker(omega) and by +i on the conjugate
    kernel; realness follows from self-conjugacy of that prescription.
    Raises on non-c-symplectic input, naming the failing criterion.
    """
    rank_check = is_c_symplectic_rank(omega, tol)
    if not rank_check:
        raise ValueError(f"not c-symplectic (rank criterion): {rank_check.reason}")
    basis = form_kernel(omega, tol).subspace.basis
    half = basis.shape[1]
    p = np.hstack([basis, basis.conj()])
    d = np.concatenate([np.full(half, -1j), np.full(half, 1j)])
    mat = (p * d) @ np.linalg.inv(p)
    residual = max_abs(mat.imag)
    if residual > tol * max(1.0, max_abs(mat)):
        raise ValueError(f"induced structure failed to be real (residual {residual:.3e})")
    structure = ComplexStructure(omega.dim, mat.real, tol=max(tol, 1e-8))
    # Omega(I u, v) = i Omega(u, v)  <=>  I^T A = i A.
    linearity = max_abs(structure.matrix.T @ omega.matrix - 1j * omega.matrix)
    if linearity > max(tol, 1e-8) * max(1.0, omega.norm()):
        raise ValueError(f"complex linearity residual {linearity:.3e}")
    return structure


def hodge_decompose(a: ComplexKForm, structure: ComplexStructure) -> dict:
    """Split a k-form into its (p, q) components for the given structure.

    Averages pullbacks over the rotations exp(theta I) with Fourier
    weights: the (p, q) part transforms with weight e^{i (p - q) theta},
    so 2k + 2 equispaced angles separate all components exactly.
    """
    if isinstance(a, ComplexTwoForm):
        a = a.to_kform()
    if a.dim != structure.dim:
        raise ValueError("form and structure dimensions differ")
    k = a.degree
    if k == 0:
        return {(0, 0): a}
    n_angles = 2 * k + 2
    thetas = [2 * np.pi * j / n_angles for j in range(n_angles)]
    rotated = [pullback(structure.rotation(t), a) for t in thetas]
    components = {}
    for p in range(k + 1):
        q = k - p
        weight = p - q
        acc = np.zeros_like(a.coeffs)
        for theta, rot in zip(thetas, rotated):
            acc += np.exp(-1j * weight * theta) * rot.coeffs
        components[(p, q)] = ComplexKForm(a.dim, k, acc / n_angles)
    return components


def is_c_isotropic(subspace: Subspace, omega: ComplexTwoForm, tol: float = DEFAULT_TOL) -> bool:
    """True when omega vanishes on the subspace (Gram residual test)."""
    if subspace.ambient_dim != omega.dim:
        raise ValueError("ambient dimension mismatch")
    if subspace.dim == 0:
        return True
    q = subspace.orthonormal_basis()
    gram = q.T @ omega.matrix @ q
    return max_abs(gram) <= tol * max(omega.norm(), 1e-300)


def is_c_lagrangian(subspace: Subspace, omega: ComplexTwoForm, tol: float = DEFAULT_TOL) -> bool:
    """c-isotropic of maximal real dimension 2n.

    Maximality is equivalent to dim_R = 2n: the real part of a
    c-symplectic form is a nondegenerate real symplectic form taming the
    induced structure, which caps isotropic subspaces at half dimension.
    """
    if omega.dim % 4:
        raise ValueError("omega does not live on R^{4n}")
    if subspace.field != "R":
        raise ValueError("c-Lagrangian subspaces are real")
    return subspace.dim == omega.dim // 2 and is_c_isotropic(subspace, omega, tol)


def c_symplectic_basis(omega: ComplexTwoForm, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Real invertible B with B^T A B = blkdiag(Q, ..., Q).

    Symplectic Gram-Schmidt: pick u1 (pivoted for stability), adjoin
    I u1, pick u2 with Omega(u1, u2) = 1 by a complex rescaling realized
    through I, adjoin I u2, then recurse on the Omega-orthogonal
    complement of the block.
    """
    rank_check = is_c_symplectic_rank(omega, tol)
    if not rank_check:
        raise ValueError(f"not c-symplectic: {rank_check.reason}")
    m = omega.dim
    carrier = np.eye(m)  # orthonormal basis of the still-unreduced subspace
    columns = []
    while carrier.shape[1] > 0:
        a_cur = ComplexTwoForm(carrier.T @ omega.matrix @ carrier)
        m_cur = a_cur.dim
        structure = induced_complex_structure(a_cur, tol)
        row_norms = np.linalg.norm(a_cur.matrix, axis=1)
        u1 = np.zeros(m_cur)
        u1[int(np.argmax(row_norms))] = 1.0
        v1 = structure.matrix @ u1
        pairings = u1 @ a_cur.matrix
        j = int(np.argmax(np.abs(pairings)))
        if abs(pairings[j]) <= tol * max(a_cur.norm(), 1e-300):
            raise RuntimeError("internal consistency error: no partner with Omega(u1, x) != 0")
        x = np.zeros(m_cur)
        x[j] = 1.0
        z = 1.0 / pairings[j]
        u2 = z.real * x + z.imag * (structure.matrix @ x)
        v2 = structure.matrix @ u2
        block = np.column_stack([u1, v1, u2, v2])
        columns.append(carrier @ block)
        # Omega-orthogonal of the block: Omega(w, u1) = Omega(w, u2) = 0
        # (conditions against I u1, I u2 are the same rows times i).
        cond = np.vstack(
            [
                (a_cur.matrix @ u1).real,
                (a_cur.matrix @ u1).imag,
                (a_cur.matrix @ u2).real,
                (a_cur.matrix @ u2).imag,
            ]
        )
        carrier = carrier @ null_space(cond, tol)
    b = np.hstack(columns)
    target = q_block_form(m // 4).matrix
    residual = max_abs(b.T @ omega.matrix @ b - target)
    if residual > 1e-6 * max(omega.norm(), 1e-300):
        raise RuntimeError(f"internal consistency error: basis residual {residual:.3e}")
    return b


@dataclass(frozen=True)
class CSymplecticSpace:
    """A validated c-symplectic form with its cached structure and kernel."""

    omega: ComplexTwoForm
    structure: ComplexStructure = dc_field(repr=False)
    half_kernel: Subspace = dc_field(repr=False)
    verdict: CSymplecticVerdict = dc_field(repr=False)

    @classmethod
    def from_form(cls, omega: ComplexTwoForm, tol: float = DEFAULT_TOL) -> "CSymplecticSpace":
        verdict = is_c_symplectic(omega, tol)
        if not verdict.ok:
            failing = "rank" if not verdict.rank.ok else "power"
            reason = verdict.rank.reason or verdict.power.reason
            raise ValueError(f"not c-symplectic ({failing} criterion): {reason}")
        return cls(
            omega=omega,
            structure=induced_complex_structure(omega, tol),
            half_kernel=form_kernel(omega, tol).subspace,
            verdict=verdict,
        )

    @property
    def dim(self) -> int:
        return self.omega.dim

    @property
    def n(self) -> int:
        return self.omega.dim // 4


def quotient_model(fiber: Subspace) -> Subspace:
    """Euclidean orthocomplement used as the concrete model of V / L."""
    return fiber.orthogonal_complement()


def quotient_complex_structure(
    space: CSymplecticSpace, fiber: Subspace, tol: float = DEFAULT_TOL
) -> ComplexStructure:
    """Structure inherited on the quotient model K of V / L.

    Defined by pi(I v) = I_quot(pi v) with pi the orthogonal projection
    onto K; well-defined because c-Lagrangian subspaces are I-invariant.
    """
    if not is_c_lagrangian(fiber, space.omega, tol):
        raise ValueError("fiber is not c-Lagrangian")
    w = quotient_model(fiber).orthonormal_basis()
    mat = w.T @ space.structure.matrix @ w
    # projection compatibility: W^T I = I_quot W^T on all of V
    residual = max_abs(w.T @ space.structure.matrix - mat @ w.T)
    if residual > max(tol, 1e-8) * max(1.0, max_abs(space.structure.matrix)):
        raise ValueError(f"quotient structure not well-defined (residual {residual:.3e})")
    return ComplexStructure(w.shape[1], mat, tol=max(tol, 1e-8))


def random_c_symplectic(rng: np.random.Generator, dim: int, cond_max: float = 1e3):
    """Random instance: pullback of blkdiag(Q,...) under a conditioned map.

    Every c-symplectic form arises this way; rejecting condition numbers
    above ``cond_max`` keeps instances numerically comfortable.  Returns
    (omega, p) with omega the form and p the change of basis used.
    """
    if dim % 4:
        raise ValueError("dim must be a multiple of 4")
    base = q_block_form(dim // 4).matrix
    while True:
        p = rng.standard_normal((dim, dim))
        if np.linalg.cond(p) <= cond_max:
            return ComplexTwoForm(p.T @ base @ p), p
