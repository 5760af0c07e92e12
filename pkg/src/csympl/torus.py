"""Flat torus fibration testbed: C^2 / Z^4 -> C / Z^2.

Real coordinates are (x1, y1, x2, y2) with z1 = x1 + i y1 on the base and
z2 = x2 + i y2 on the fiber; the constant form dz1 ^ dz2 makes the
fibration Lagrangian.  Sections are doubly periodic Fourier polynomials,
their pullback forms and differentials are evaluated analytically; finite
differences enter only where no analytic expression exists (exterior
derivative of sampled fields, Nijenhuis tensor of the deformed structure
field).  All sampled fields depend on the base point alone, so they are
stored per base node.
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from .csymplectic import Q_BLOCK
from .linalg import DEFAULT_TOL, max_abs

#: Index pairs of 2-form components on R^4, lex order.
PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
#: Index triples of 3-form components on R^4.
TRIPLES = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))

#: Base complex structure on (x1, y1).
BASE_J = np.array([[0.0, -1.0], [1.0, 0.0]])

#: Matrix of dz1 ^ dz2conj, the anti-holomorphic fiber pairing used by the
#: non-closed control form.
R_BLOCK = np.array(
    [
        [0, 0, 1, -1j],
        [0, 0, 1j, 1],
        [-1, -1j, 0, 0],
        [1j, -1, 0, 0],
    ],
    dtype=np.complex128,
)


@dataclass(frozen=True)
class TorusGrid:
    """Uniform periodic grid on the base torus, n nodes per coordinate."""

    n: int

    def __post_init__(self):
        if self.n < 8 or self.n % 2:
            raise ValueError("grid resolution must be even and at least 8")

    @property
    def h(self) -> float:
        return 1.0 / self.n

    def axes(self) -> np.ndarray:
        return np.arange(self.n) / self.n

    def mesh(self):
        x = self.axes()
        return np.meshgrid(x, x, indexing="ij")


class SmoothSection:
    """Doubly periodic section sigma(z1) = (z1, s(z1)), s a Fourier polynomial.

    ``modes`` maps integer wave vectors (k1, k2) to complex coefficients;
    s(x, y) = sum c_k exp(2 pi i (k1 x + k2 y)).  Values wrap into the
    fiber torus; derivatives are exact.
    """

    def __init__(self, modes: dict):
        self.modes = {tuple(int(i) for i in k): complex(c) for k, c in modes.items()}

    @classmethod
    def random(
        cls,
        rng: np.random.Generator,
        k_max: int = 3,
        amplitude: float = 2e-4,
    ) -> "SmoothSection":
        """Gaussian coefficients with 1 / (1 + |k|^2) decay up to |k|_inf <= k_max.

        The default amplitude keeps the mode-k_max content small enough
        that second-order finite differences resolve the induced
        structure field on the default 64^2 grid.
        """
        modes = {}
        for k1 in range(-k_max, k_max + 1):
            for k2 in range(-k_max, k_max + 1):
                decay = amplitude / (1.0 + k1 * k1 + k2 * k2)
                modes[(k1, k2)] = decay * complex(rng.standard_normal(), rng.standard_normal())
        return cls(modes)

    @classmethod
    def constant(cls, value: complex) -> "SmoothSection":
        return cls({(0, 0): value})

    def value(self, x, y):
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape, dtype=np.complex128)
        for (k1, k2), c in self.modes.items():
            out += c * np.exp(2j * np.pi * (k1 * x + k2 * y))
        return out

    def wrapped_value(self, x, y):
        v = self.value(x, y)
        return np.mod(v.real, 1.0) + 1j * np.mod(v.imag, 1.0)

    def derivatives(self, x, y):
        """Exact (ds/dx, ds/dy) from the Fourier series."""
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        sx = np.zeros(np.broadcast(x, y).shape, dtype=np.complex128)
        sy = np.zeros_like(sx)
        for (k1, k2), c in self.modes.items():
            phase = c * np.exp(2j * np.pi * (k1 * x + k2 * y))
            sx += 2j * np.pi * k1 * phase
            sy += 2j * np.pi * k2 * phase
        return sx, sy

    def differential(self, x, y):
        """Real 4x2 differential of sigma at (x, y), stacked over the grid."""
        sx, sy = self.derivatives(x, y)
        shape = sx.shape
        d = np.zeros(shape + (4, 2))
        d[..., 0, 0] = 1.0
        d[..., 1, 1] = 1.0
        d[..., 2, 0] = sx.real
        d[..., 2, 1] = sy.real
        d[..., 3, 0] = sx.imag
        d[..., 3, 1] = sy.imag
        return d


@dataclass(frozen=True)
class GridField:
    """Tensor field sampled per base node.

    kinds: 'two_form' (ambient 2: one complex component, the dx1 ^ dy1
    coefficient; ambient 4: six components over PAIRS), 'three_form'
    (ambient 4: four components over TRIPLES), 'endomorphism' (real
    4x4 per node).
    """

    grid: TorusGrid
    kind: str
    ambient: int
    values: np.ndarray = dc_field(repr=False)

    def __post_init__(self):
        n = self.grid.n
        expected = {
            ("two_form", 2): (n, n),
            ("two_form", 4): (n, n, 6),
            ("three_form", 4): (n, n, 4),
            ("endomorphism", 4): (n, n, 4, 4),
        }
        key = (self.kind, self.ambient)
        if key not in expected:
            raise ValueError(f"unsupported field kind {key}")
        if self.values.shape != expected[key]:
            raise ValueError(f"values shape {self.values.shape} != {expected[key]}")

    def max_abs(self) -> float:
        return max_abs(self.values)


def lift_base_form(field: GridField) -> GridField:
    """pi^* of a base 2-form: its coefficient lands in the (x1, y1) slot."""
    if (field.kind, field.ambient) != ("two_form", 2):
        raise ValueError("expected a base 2-form field")
    n = field.grid.n
    values = np.zeros((n, n, 6), dtype=np.complex128)
    values[..., PAIRS.index((0, 1))] = field.values
    return GridField(field.grid, "two_form", 4, values)


def two_form_matrices(field: GridField) -> np.ndarray:
    """(n, n, 4, 4) skew matrices of an ambient-4 two-form field."""
    if (field.kind, field.ambient) != ("two_form", 4):
        raise ValueError("expected an ambient-4 two-form field")
    n = field.grid.n
    mats = np.zeros((n, n, 4, 4), dtype=np.complex128)
    for p, (i, j) in enumerate(PAIRS):
        mats[..., i, j] = field.values[..., p]
        mats[..., j, i] = -field.values[..., p]
    return mats


def sample_section_form(sigma: SmoothSection, grid: TorusGrid) -> GridField:
    """eta = sigma^* (dz1 ^ dz2), evaluated from the exact differential.

    On a one-complex-dimensional base every 2-form is of type (1,1), so
    the Hodge-type requirement on eta holds structurally; the pointwise
    value is Omega(d sigma e1, d sigma e2).
    """
    x, y = grid.mesh()
    d = sigma.differential(x, y)
    eta = np.einsum("...a,ab,...b->...", d[..., 0], Q_BLOCK, d[..., 1])
    return GridField(grid, "two_form", 2, eta)


def nonclosed_control_form(grid: TorusGrid) -> GridField:
    """cos(2 pi x1) dz1 ^ dz2conj: pointwise (1,1) on the total space, not closed.

    Base 2-forms are automatically closed (the base is a surface), so the
    negative control must carry fiber components; this is the smallest
    single-mode example.
    """
    x, _ = grid.mesh()
    f = np.cos(2 * np.pi * x)
    n = grid.n
    values = np.zeros((n, n, 6), dtype=np.complex128)
    for p, (i, j) in enumerate(PAIRS):
        values[..., p] = f * R_BLOCK[i, j]
    return GridField(grid, "two_form", 4, values)


#: Matrix of dz1conj ^ dz2, the (1,1) pairing used by the closed control.
S_BLOCK = np.array(
    [
        [0, 0, 1, 1j],
        [0, 0, -1j, 1],
        [-1, 1j, 0, 0],
        [-1j, -1, 0, 0],
    ],
    dtype=np.complex128,
)


def closed_control_form(
    grid: TorusGrid, wave=(1, 2), amplitude: float = 5e-4
) -> GridField:
    """d(u dz2) = u_z1 dz1 ^ dz2 + u_z1conj dz1conj ^ dz2 for a cosine u.

    Exact, hence closed, of pointwise type (2,0)+(1,1), and with genuinely
    mixed base directions: unlike pullbacks of base forms, the structure
    it induces has nonvanishing finite-difference truncation error, which
    is what makes the second-order Nijenhuis decay measurable.
    """
    k1, k2 = wave
    x, y = grid.mesh()
    phase = 2 * np.pi * (k1 * x + k2 * y)
    u_x = -2 * np.pi * k1 * amplitude * np.sin(phase)
    u_y = -2 * np.pi * k2 * amplitude * np.sin(phase)
    u_z = (u_x - 1j * u_y) / 2.0
    u_zbar = (u_x + 1j * u_y) / 2.0
    n = grid.n
    values = np.zeros((n, n, 6), dtype=np.complex128)
    for p, (i, j) in enumerate(PAIRS):
        values[..., p] = u_z * Q_BLOCK[i, j] + u_zbar * S_BLOCK[i, j]
    return GridField(grid, "two_form", 4, values)


def exterior_derivative_fd(field: GridField) -> GridField:
    """Centered-difference exterior derivative, periodic, O(h^2).

    Fields are constant along the fiber, so fiber partials vanish exactly;
    base partials use the periodic centered stencil.
    """
    if field.kind != "two_form":
        raise ValueError("expected a two-form field")
    if field.ambient == 2:
        field = lift_base_form(field)
    n = field.grid.n
    h = field.grid.h
    comp = two_form_matrices(field)  # (n, n, 4, 4), alpha_{ij}
    partials = np.zeros((4,) + comp.shape, dtype=np.complex128)
    for axis in range(2):
        partials[axis] = (np.roll(comp, -1, axis=axis) - np.roll(comp, 1, axis=axis)) / (2 * h)
    out = np.zeros((n, n, 4), dtype=np.complex128)
    for p, (a, b, c) in enumerate(TRIPLES):
        out[..., p] = partials[a, ..., b, c] - partials[b, ..., a, c] + partials[c, ..., a, b]
    return GridField(field.grid, "three_form", 4, out)


@dataclass(frozen=True)
class StructureField:
    """Induced structure per node with pointwise diagnostics."""

    field: GridField
    bad_nodes: int
    max_imag_residual: float
    max_square_residual: float
    max_linearity_residual: float

    def ok(self, tol: float = 1e-8) -> bool:
        return self.bad_nodes == 0 and max(
            self.max_imag_residual, self.max_square_residual, self.max_linearity_residual
        ) <= tol


def deformed_structure_field(
    eta: GridField, t: complex, tol: float = DEFAULT_TOL
) -> StructureField:
    """Pointwise induced structure of Omega + t * eta (eta lifted if on base).

    Vectorized over nodes: batched SVD for the kernels, batched solve for
    the -i / +i eigenspace prescription, with the same postconditions as
    the single-space construction (kernel rank 2, no real kernel vectors,
    realness, I^2 = -Id, complex linearity).
    """
    if eta.ambient == 2:
        eta = lift_base_form(eta)
    grid = eta.grid
    mats = Q_BLOCK + complex(t) * two_form_matrices(eta)
    _, s, vh = np.linalg.svd(mats)
    scale = s[..., 0]
    rank_bad = (s[..., 2] > tol * scale) | (s[..., 1] <= tol * scale)
    kernel = np.swapaxes(vh[..., 2:, :].conj(), -1, -2)  # (n, n, 4, 2)
    real_stack = np.concatenate([kernel.real, kernel.imag], axis=-1)
    s_real = np.linalg.svd(real_stack, compute_uv=False)
    real_bad = s_real[..., -1] <= tol * s_real[..., 0]
    p = np.concatenate([kernel, kernel.conj()], axis=-1)
    d = np.array([-1j, -1j, 1j, 1j])
    structure = (p * d) @ np.linalg.inv(p)
    imag_residual = float(np.max(np.abs(structure.imag)))
    real_structure = structure.real
    eye = np.eye(4)
    square_residual = float(np.max(np.abs(real_structure @ real_structure + eye)))
    linearity = np.swapaxes(real_structure, -1, -2) @ mats - 1j * mats
    linearity_residual = float(np.max(np.abs(linearity)) / max(np.max(np.abs(mats)), 1e-300))
    bad = int(np.sum(rank_bad | real_bad))
    return StructureField(
        field=GridField(grid, "endomorphism", 4, real_structure),
        bad_nodes=bad,
        max_imag_residual=imag_residual,
        max_square_residual=square_residual,
        max_linearity_residual=linearity_residual,
    )


def nijenhuis_node_norms(structure_field: GridField) -> np.ndarray:
    """Per-node max over coordinate pairs of |N(e_a, e_b)|.

    N(X, Y) = [IX, IY] - I[IX, Y] - I[X, IY] - [X, Y] on coordinate
    fields, with derivatives of I by periodic centered differences (the
    field varies over the base only, so fiber partials vanish).
    """
    if structure_field.kind != "endomorphism":
        raise ValueError("expected an endomorphism field")
    grid = structure_field.grid
    h = grid.h
    ind = structure_field.values  # (n, n, 4, 4)
    d = np.zeros((4,) + ind.shape)
    for axis in range(2):
        d[axis] = (np.roll(ind, -1, axis=axis) - np.roll(ind, 1, axis=axis)) / (2 * h)
    # [Ie_a, Ie_b]^i = I_{ja} d_j I_{ib} - I_{jb} d_j I_{ia}
    term1 = np.einsum("xyja,jxyib->xyiab", ind[:, :, :2, :], d[:2])
    term1 = term1 - np.swapaxes(term1, -1, -2)
    # -I[Ie_a, e_b] - I[e_a, Ie_b] = I_{ik} (d_b I_{ka} - d_a I_{kb})
    term2 = np.einsum("xyik,bxyka->xyiab", ind, d)
    term2 = term2 - np.swapaxes(term2, -1, -2)
    nijenhuis = term1 + term2
    return np.sqrt(np.max(np.sum(nijenhuis**2, axis=2), axis=(-1, -2)))


def nijenhuis_norm(structure_field: GridField) -> float:
    return float(np.max(nijenhuis_node_norms(structure_field)))


@dataclass(frozen=True)
class SectionHolomorphyCertificate:
    max_residual: float
    node_residuals: np.ndarray = dc_field(repr=False)
    structure: StructureField = dc_field(repr=False)

    def ok(self, tol: float = 1e-8) -> bool:
        return self.structure.bad_nodes == 0 and self.max_residual <= tol


def verify_section_holomorphic(
    sigma: SmoothSection, grid: TorusGrid, tol: float = DEFAULT_TOL
) -> SectionHolomorphyCertificate:
    """Check d sigma o J_base = I' o d sigma at every node for t = -1.

    eta = sigma^* Omega and I' the structure induced by Omega - pi^* eta;
    the differential is exact, so the residual is pure linear algebra.
    """
    eta = sample_section_form(sigma, grid)
    structure = deformed_structure_field(eta, -1.0, tol)
    x, y = grid.mesh()
    d = sigma.differential(x, y)
    lhs = d @ BASE_J
    rhs = structure.field.values @ d
    residuals = np.max(np.abs(lhs - rhs), axis=(-1, -2))
    return SectionHolomorphyCertificate(
        max_residual=float(np.max(residuals)),
        node_residuals=residuals,
        structure=structure,
    )
