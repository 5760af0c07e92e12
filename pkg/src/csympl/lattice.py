"""Even unimodular lattice arithmetic for K3 period computations.

All pairings of integer vectors run in exact integer arithmetic (Python
ints, no floats).  The standard rank-22 lattice is U^3 + E8(-1)^2 of
signature (3, 19); primitive isotropic classes e play the role of fiber
classes, and the module produces section classes s with (s, e) = 1,
(s, s) = -2, the deformation parameter t with (s, omega - t e) = 0, and
the two-plane sweeps of degenerate twistor curves in the period domain.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd

import numpy as np

from .linalg import DEFAULT_TOL

#: Gram matrix of the hyperbolic plane U.
U_GRAM = [[0, 1], [1, 0]]

#: Gram matrix of E8 with reversed sign, i.e. negative definite.
#: Nodes 0-6 form a chain; node 7 attaches to node 4.
E8_MINUS_GRAM = [
    [-2, 1, 0, 0, 0, 0, 0, 0],
    [1, -2, 1, 0, 0, 0, 0, 0],
    [0, 1, -2, 1, 0, 0, 0, 0],
    [0, 0, 1, -2, 1, 0, 0, 0],
    [0, 0, 0, 1, -2, 1, 0, 1],
    [0, 0, 0, 0, 1, -2, 1, 0],
    [0, 0, 0, 0, 0, 1, -2, 0],
    [0, 0, 0, 0, 1, 0, 0, -2],
]


def _det_exact(rows) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    a = [list(map(int, row)) for row in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


class IntegralLattice:
    """Integer lattice with pairing (v, w) = v^T G w."""

    def __init__(self, gram):
        rows = [list(map(int, row)) for row in gram]
        r = len(rows)
        if any(len(row) != r for row in rows):
            raise ValueError("Gram matrix must be square")
        for i in range(r):
            for j in range(r):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        self.rank = r
        self.gram = rows

    def pair(self, v, w):
        """Exact integer pairing for integer vectors; floats allowed for
        real or complex cohomology-class vectors."""
        if _is_int_vector(v) and _is_int_vector(w):
            return sum(
                int(v[i]) * self.gram[i][j] * int(w[j])
                for i in range(self.rank)
                for j in range(self.rank)
            )
        g = np.asarray(self.gram, dtype=float)
        return np.asarray(v) @ g @ np.asarray(w)

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def determinant(self) -> int:
        return _det_exact(self.gram)

    def is_unimodular(self) -> bool:
        return abs(self.determinant()) == 1

    def signature(self):
        """(positive, negative, zero) inertia by exact congruence
        diagonalization over the rationals."""
        a = [[Fraction(x) for x in row] for row in self.gram]
        n = self.rank
        pos = neg = zero = 0
        for k in range(n):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][i] != 0 and a[i][k] != 0), None)
                if swap is not None:
                    a[k], a[swap] = a[swap], a[k]
                    for row in a:
                        row[k], row[swap] = row[swap], row[k]
                else:
                    j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                    if j is None:
                        zero += 1
                        continue
                    for col in range(n):
                        a[k][col] += a[j][col]
                    for row in a:
                        row[k] += row[j]
                    if a[k][k] == 0:
                        zero += 1
                        continue
            pivot = a[k][k]
            if pivot > 0:
                pos += 1
            else:
                neg += 1
            for i in range(k + 1, n):
                f = a[i][k] / pivot
                if f == 0:
                    continue
                for col in range(n):
                    a[i][col] -= f * a[k][col]
                for row in a:
                    row[i] -= f * row[k]
        return pos, neg, zero

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": [list(row) for row in self.gram]}

    @classmethod
    def from_json(cls, data: dict) -> "IntegralLattice":
        lat = cls(data["gram"])
        if lat.rank != data.get("rank", lat.rank):
            raise ValueError("rank field disagrees with Gram size")
        return lat

    def __repr__(self):
        return f"IntegralLattice(rank={self.rank})"


def _is_int_vector(v) -> bool:
    if isinstance(v, np.ndarray):
        return issubclass(v.dtype.type, np.integer)
    return all(isinstance(x, (int, np.integer)) for x in v)


def _as_int_list(v):
    return [int(x) for x in v]


def block_diagonal(*blocks) -> IntegralLattice:
    size = sum(len(b) for b in blocks)
    gram = [[0] * size for _ in range(size)]
    offset = 0
    for b in blocks:
        r = len(b)
        for i in range(r):
            for j in range(r):
                gram[offset + i][offset + j] = int(b[i][j])
        offset += r
    return IntegralLattice(gram)


def hyperbolic_plane() -> IntegralLattice:
    return IntegralLattice(U_GRAM)


def standard_k3_lattice() -> IntegralLattice:
    """U^3 + E8(-1)^2, rank 22, even, unimodular, signature (3, 19)."""
    lat = block_diagonal(U_GRAM, U_GRAM, U_GRAM, E8_MINUS_GRAM, E8_MINUS_GRAM)
    assert lat.is_even() and lat.is_unimodular()
    return lat


def is_primitive_isotropic(lattice: IntegralLattice, e) -> bool:
    """gcd of entries 1 and (e, e) = 0, in exact arithmetic."""
    e = _as_int_list(e)
    if all(x == 0 for x in e):
        raise ValueError("zero vector")
    content = 0
    for x in e:
        content = gcd(content, x)
    return content == 1 and lattice.pair(e, e) == 0


def dual_vector(lattice: IntegralLattice, e):
    """Integer b with (b, e) = 1, from extended gcd over the entries of Ge.

    Exists exactly when gcd(Ge) = 1, which unimodularity grants for
    primitive e; non-primitive input is rejected.
    """
    e = _as_int_list(e)
    w = [sum(row[j] * e[j] for j in range(lattice.rank)) for row in lattice.gram]
    coeffs = [0] * lattice.rank
    g = 0
    for i, wi in enumerate(w):
        if wi == 0:
            continue
        if g == 0:
            g, coeffs = abs(wi), [0] * lattice.rank
            coeffs[i] = 1 if wi > 0 else -1
            continue
        old_g = g
        g, x, y = _xgcd(g, wi)
        coeffs = [x * c for c in coeffs]
        coeffs[i] += y
        if g == 1:
            break
        assert g <= old_g
    if g != 1:
        raise ValueError(f"no dual vector: gcd(Ge) = {g} != 1 (e is not primitive)")
    b = coeffs
    assert lattice.pair(b, e) == 1
    return b


def _xgcd(a: int, b: int):
    """g, x, y with x a + y b = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def square_minus_two(lattice: IntegralLattice, e, b):
    """a = b - ((b, b)/2 + 1) e, the vector with (a, e) = 1, (a, a) = -2.

    The coefficient is forced by expanding (a, a) = (b, b) - 2 c (b, e)
    with (e, e) = 0 and (b, e) = 1; asserted exactly on the result.
    """
    e, b = _as_int_list(e), _as_int_list(b)
    if lattice.pair(b, e) != 1:
        raise ValueError("(b, e) != 1")
    if not lattice.is_even():
        raise ValueError("lattice is not even")
    bb = lattice.pair(b, b)
    c = bb // 2 + 1
    a = [bi - c * ei for bi, ei in zip(b, e)]
    assert lattice.pair(a, e) == 1
    assert lattice.pair(a, a) == -2
    return a


def find_section_class(lattice: IntegralLattice, e):
    """s with (s, e) = 1 and (s, s) = -2 for primitive isotropic e."""
    if not lattice.is_unimodular() or not lattice.is_even():
        raise ValueError("lattice must be even unimodular")
    if not is_primitive_isotropic(lattice, e):
        raise ValueError("e must be primitive isotropic")
    return square_minus_two(lattice, e, dual_vector(lattice, e))


def reflect(lattice: IntegralLattice, root, v):
    """Reflection v + (v, root) root in a (-2)-vector; a lattice isometry."""
    root, v = _as_int_list(root), _as_int_list(v)
    if lattice.pair(root, root) != -2:
        raise ValueError("reflections need (root, root) = -2")
    p = lattice.pair(v, root)
    return [vi + p * ri for vi, ri in zip(v, root)]


def _root_pool(lattice: IntegralLattice):
    """Sparse (-2)-vectors: basis roots, adjacent sums, U differences and
    cross-block isotropic + root combinations."""
    rank = lattice.rank
    singles = []
    for i in range(rank):
        v = [0] * rank
        v[i] = 1
        singles.append(v)
    pool = []
    for i in range(rank):
        for j in range(i, rank):
            for coeff_j in ((1,) if i == j else (1, -1)):
                v = list(singles[i])
                v[j] += coeff_j
                if not all(x == 0 for x in v) and lattice.pair(v, v) == -2:
                    pool.append(v)
    return pool


def random_primitive_isotropic(
    lattice: IntegralLattice, rng: np.random.Generator, steps: int = 8
):
    """Image of the first hyperbolic isotropic vector under random
    (-2)-reflections; stays primitive and isotropic by isometry."""
    e = [0] * lattice.rank
    e[0] = 1
    pool = _root_pool(lattice)
    for _ in range(steps):
        root = pool[int(rng.integers(len(pool)))]
        e = reflect(lattice, root, e)
    assert is_primitive_isotropic(lattice, e)
    return e


def random_isometry_images(lattice: IntegralLattice, rng: np.random.Generator, vectors, steps: int = 8):
    """Apply one random reflection word to several vectors at once."""
    pool = _root_pool(lattice)
    word = [pool[int(rng.integers(len(pool)))] for _ in range(steps)]
    out = []
    for v in vectors:
        image = _as_int_list(v)
        for root in word:
            image = reflect(lattice, root, image)
        out.append(image)
    return out


@dataclass(frozen=True)
class PeriodPoint:
    """Class [Omega] in Lambda tensor C spanning a positive 2-plane."""

    lattice: IntegralLattice
    omega_class: np.ndarray = dc_field(repr=False)
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        omega = np.asarray(self.omega_class, dtype=np.complex128).reshape(-1)
        if omega.shape[0] != self.lattice.rank:
            raise ValueError("class length differs from lattice rank")
        square = self.lattice.pair(omega, omega)
        norm = self.lattice.pair(omega, omega.conj())
        scale = max(abs(self.lattice.pair(omega.real, omega.real)), abs(norm), 1e-300)
        if abs(square) > self.tol * scale:
            raise ValueError(f"(Omega, Omega) = {square} != 0")
        if not norm.real > 0:
            raise ValueError(f"(Omega, conj Omega) = {norm} is not positive")
        object.__setattr__(self, "omega_class", omega)

    @classmethod
    def standard(cls, lattice: IntegralLattice) -> "PeriodPoint":
        """Re Omega = f1 + g1, Im Omega = f2 + g2 in the first two U blocks."""
        omega = np.zeros(lattice.rank, dtype=np.complex128)
        omega[0] = omega[1] = 1.0
        omega[2] = omega[3] = 1j
        return cls(lattice, omega)


def twistor_parameter(lattice: IntegralLattice, s, e, omega_class) -> complex:
    """t = (s, omega) / (s, e): the unique parameter making s orthogonal
    to omega - t e; rejected when (s, e) = 0."""
    s = _as_int_list(s)
    e = _as_int_list(e)
    se = lattice.pair(s, e)
    if se == 0:
        raise ValueError("(s, e) = 0: no unique deformation parameter")
    omega = np.asarray(omega_class, dtype=np.complex128)
    t = complex(lattice.pair(s, omega)) / se
    return t


@dataclass(frozen=True)
class TwistorPlane:
    v1: np.ndarray
    v2: np.ndarray
    gram: np.ndarray


def twistor_curve_plane(
    point: PeriodPoint, e, x: float, y: float, tol: float = DEFAULT_TOL
) -> TwistorPlane:
    """Plane spanned by (Omega + conj Omega) + 2x e and
    i (Omega - conj Omega) - 2y e.

    Requires e isotropic and orthogonal to the period plane; then the
    2x2 Gram under the lattice pairing is positive definite and does not
    depend on (x, y).
    """
    lattice = point.lattice
    e = _as_int_list(e)
    omega = point.omega_class
    if lattice.pair(e, e) != 0:
        raise ValueError("(e, e) != 0: direction must be isotropic")
    scale = max(float(np.abs(lattice.pair(omega, omega.conj()))), 1e-300)
    for label, vec in (("Re Omega", omega.real), ("Im Omega", omega.imag)):
        pairing = float(lattice.pair(e, vec))
        if abs(pairing) > tol * scale:
            raise ValueError(f"(e, {label}) = {pairing} != 0")
    e_arr = np.asarray(e, dtype=float)
    v1 = (omega + omega.conj()).real + 2.0 * x * e_arr
    v2 = (1j * (omega - omega.conj())).real - 2.0 * y * e_arr
    gram = np.array(
        [
            [lattice.pair(v1, v1), lattice.pair(v1, v2)],
            [lattice.pair(v2, v1), lattice.pair(v2, v2)],
        ],
        dtype=float,
    )
    eigenvalues = np.linalg.eigvalsh(gram)
    if not np.all(eigenvalues > 0):
        raise ValueError(f"plane is not positive: Gram eigenvalues {eigenvalues}")
    return TwistorPlane(v1=v1, v2=v2, gram=gram)
