"""Subspaces and complex-structure operators.

Everything here is plain numerical linear algebra over R^m or C^m: rank
decisions go through SVD thresholding, subspaces compare by mutual
projection residuals, and a complex structure is a real matrix I with
I^2 = -Id.
"""

from dataclasses import dataclass, field

import numpy as np

#: Default relative comparison tolerance, overridable per call.
DEFAULT_TOL = 1e-9


def max_abs(x) -> float:
    x = np.asarray(x)
    return float(np.max(np.abs(x))) if x.size else 0.0


def null_space(mat: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the null space of ``mat`` (columns)."""
    mat = np.atleast_2d(np.asarray(mat))
    if mat.size == 0:
        return np.eye(mat.shape[1], dtype=mat.dtype)
    u, s, vh = np.linalg.svd(mat)
    cutoff = tol * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    return vh[rank:].conj().T


class Subspace:
    """Linear subspace of R^m or C^m given by a full-column-rank basis."""

    def __init__(self, basis, field: str = "R", tol: float = DEFAULT_TOL):
        if field not in ("R", "C"):
            raise ValueError(f"field must be 'R' or 'C', got {field!r}")
        basis = np.asarray(basis, dtype=np.complex128 if field == "C" else np.float64)
        if basis.ndim != 2:
            raise ValueError("basis must be a 2-d array of column vectors")
        self.ambient_dim = basis.shape[0]
        self.field = field
        self.basis = basis
        if basis.shape[1]:
            s = np.linalg.svd(basis, compute_uv=False)
            if s[-1] <= tol * s[0]:
                raise ValueError("basis columns are not linearly independent")
            self._ortho = np.linalg.qr(basis)[0]
        else:
            self._ortho = basis

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def orthonormal_basis(self) -> np.ndarray:
        return self._ortho

    def project(self, vectors: np.ndarray) -> np.ndarray:
        """Orthogonal projection of vectors (columns) onto the subspace."""
        q = self._ortho
        return q @ (q.conj().T @ np.asarray(vectors, dtype=q.dtype))

    def contains(self, vector, tol: float = DEFAULT_TOL) -> bool:
        v = np.asarray(vector, dtype=self._ortho.dtype).reshape(-1)
        scale = max(max_abs(v), 1e-300)
        return max_abs(v - self.project(v)) <= tol * scale

    def equals(self, other: "Subspace", tol: float = DEFAULT_TOL) -> bool:
        """Span equality via mutual projection residuals."""
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        a, b = self._ortho.astype(np.complex128), other._ortho.astype(np.complex128)
        res_ab = max_abs(b - a @ (a.conj().T @ b))
        res_ba = max_abs(a - b @ (b.conj().T @ a))
        return res_ab <= tol and res_ba <= tol

    def orthogonal_complement(self) -> "Subspace":
        if self.dim == 0:
            eye = np.eye(self.ambient_dim)
            return Subspace(eye, field=self.field)
        u = np.linalg.svd(self.basis, full_matrices=True)[0]
        return Subspace(u[:, self.dim :], field=self.field)

    def real_span_rank(self, tol: float = DEFAULT_TOL) -> int:
        """Real dimension of span_R(Re basis, Im basis)."""
        stacked = np.hstack([self.basis.real, self.basis.imag])
        if stacked.shape[1] == 0:
            return 0
        s = np.linalg.svd(stacked, compute_uv=False)
        return int(np.sum(s > tol * max(s[0], 1e-300)))

    def real_intersection_dim(self, tol: float = DEFAULT_TOL) -> int:
        """Complex dimension of the space of real vectors contained in self."""
        return 2 * self.dim - self.real_span_rank(tol)

    def __repr__(self):
        return f"Subspace(ambient={self.ambient_dim}, dim={self.dim}, field={self.field!r})"

    def to_json(self) -> dict:
        cols = [
            [[float(x.real), float(x.imag)] for x in col] if self.field == "C" else [float(x) for x in col]
            for col in self.basis.T
        ]
        return {"ambient": self.ambient_dim, "field": self.field, "basis": cols}

    @classmethod
    def from_json(cls, data: dict) -> "Subspace":
        field = data["field"]
        cols = data["basis"]
        if field == "C":
            basis = np.array([[complex(re, im) for re, im in col] for col in cols]).T
        else:
            basis = np.array(cols, dtype=float).T
        basis = basis.reshape(len(cols[0]) if cols else data["ambient"], len(cols))
        return cls(basis, field=field)


@dataclass(frozen=True)
class ComplexStructure:
    """Real endomorphism I with I^2 = -Id on R^dim (dim even)."""

    dim: int
    matrix: np.ndarray = field(repr=False)
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=np.float64)
        if mat.shape != (self.dim, self.dim):
            raise ValueError("matrix shape does not match dim")
        if self.dim % 2:
            raise ValueError("a complex structure needs even dimension")
        residual = max_abs(mat @ mat + np.eye(self.dim))
        if residual > self.tol * max(1.0, max_abs(mat) ** 2):
            raise ValueError(f"I^2 != -Id (residual {residual:.3e})")
        object.__setattr__(self, "matrix", mat)

    def rotation(self, theta: float) -> np.ndarray:
        """exp(theta I) = cos(theta) Id + sin(theta) I."""
        return np.cos(theta) * np.eye(self.dim) + np.sin(theta) * self.matrix

    def antiholomorphic_space(self, tol: float = DEFAULT_TOL) -> Subspace:
        """The (0,1) subspace of C^dim, i.e. the -i eigenspace of I."""
        candidates = np.eye(self.dim) + 1j * self.matrix
        u, s, _ = np.linalg.svd(candidates)
        rank = int(np.sum(s > tol * s[0]))
        return Subspace(u[:, :rank], field="C")

    def restrict(self, subspace: Subspace, tol: float = DEFAULT_TOL):
        """Matrix of I on an invariant subspace, plus the invariance residual."""
        q = subspace.orthonormal_basis()
        image = self.matrix @ q
        restricted = q.conj().T @ image
        residual = max_abs(image - q @ restricted)
        return restricted, residual

    def isclose(self, other: "ComplexStructure", tol: float = DEFAULT_TOL) -> bool:
        return self.dim == other.dim and max_abs(self.matrix - other.matrix) <= tol

    def to_json(self) -> dict:
        return {"dim": self.dim, "matrix": self.matrix.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> "ComplexStructure":
        return cls(dim=data["dim"], matrix=np.array(data["matrix"], dtype=float))
