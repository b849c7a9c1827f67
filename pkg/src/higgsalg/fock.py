"""Truncated Fock-space matrices and the immutable operator value type.

Everything acts on a finite dimension-N slice spanned by the occupation
states |0> .. |N-1>.  Two scalar fields are supported:

* ``"complex"``: complex floats in the conventional normalized basis,
  where the annihilation matrix carries sqrt(n) entries.
* ``"rational"``: exact ``fractions.Fraction`` entries in the monomial
  basis (the creation matrix has unit entries, annihilation has integer
  entries n).  The commutator [a, a+] = 1 and every closure identity
  built from it are invariant under the diagonal change of basis between
  the two conventions, so exact checks done in this field transfer to
  the normalized basis unchanged.

Operators are immutable; mixed-field arithmetic promotes rational to
complex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Sequence, Union

import numpy as np

Scalar = Union[int, float, complex, Fraction]

COMPLEX = "complex"
RATIONAL = "rational"

# Hermiticity / unitarity slack for float constructions, relative to the
# largest entry magnitude.
_HERMITIAN_RTOL = 1e-10


class FieldError(TypeError):
    """Raised when an operation is asked of the wrong scalar field."""


@dataclass(frozen=True)
class FockSpace:
    """A truncation keeping the first ``dim`` occupation states."""

    dim: int

    def __post_init__(self) -> None:
        if not isinstance(self.dim, int) or self.dim < 2:
            raise ValueError(f"truncation dimension must be an integer >= 2, got {self.dim!r}")

    def occupations(self) -> range:
        return range(self.dim)


def _freeze(entries: np.ndarray) -> np.ndarray:
    entries.setflags(write=False)
    return entries


def _as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise FieldError(f"exact field requires rational scalars, got {type(x).__name__}")


class Operator:
    """A dense matrix on a FockSpace, tagged with its scalar field.

    ``entries`` is a read-only numpy array: complex128 for the float
    field, object-dtype of Fractions for the exact field.
    """

    __slots__ = ("space", "entries", "field", "_diag")

    def __init__(self, space: FockSpace, entries: np.ndarray, field: str):
        if field not in (COMPLEX, RATIONAL):
            raise ValueError(f"unknown field {field!r}")
        if entries.shape != (space.dim, space.dim):
            raise ValueError(f"entries shape {entries.shape} does not match dim {space.dim}")
        self.space = space
        self.entries = _freeze(entries)
        self.field = field
        nz = entries != (0 if field == COMPLEX else Fraction(0))
        self._diag = not bool((nz & ~np.eye(space.dim, dtype=bool)).any())

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def zeros(space: FockSpace, field: str = COMPLEX) -> "Operator":
        if field == RATIONAL:
            ent = np.full((space.dim, space.dim), Fraction(0), dtype=object)
        else:
            ent = np.zeros((space.dim, space.dim), dtype=complex)
        return Operator(space, ent, field)

    def _promote(self) -> "Operator":
        """Return the complex-field version of an exact operator."""
        if self.field == COMPLEX:
            return self
        ent = np.array([[complex(x) for x in row] for row in self.entries], dtype=complex)
        return Operator(self.space, ent, COMPLEX)

    @staticmethod
    def _align(a: "Operator", b: "Operator") -> tuple["Operator", "Operator", str]:
        if a.space != b.space:
            raise ValueError("operators live on different truncations")
        if a.field == b.field:
            return a, b, a.field
        return a._promote(), b._promote(), COMPLEX

    # -- arithmetic -----------------------------------------------------------

    def __matmul__(self, other: "Operator") -> "Operator":
        a, b, field = Operator._align(self, other)
        # diagonal factors turn the cubic product into a row or column
        # scaling, which matters for exact-field work
        if a._diag:
            ent = a.entries.diagonal()[:, None] * b.entries
        elif b._diag:
            ent = a.entries * b.entries.diagonal()[None, :]
        else:
            ent = a.entries @ b.entries
        return Operator(a.space, ent, field)

    def __add__(self, other: "Operator") -> "Operator":
        a, b, field = Operator._align(self, other)
        return Operator(a.space, a.entries + b.entries, field)

    def __sub__(self, other: "Operator") -> "Operator":
        a, b, field = Operator._align(self, other)
        return Operator(a.space, a.entries - b.entries, field)

    def __neg__(self) -> "Operator":
        return Operator(self.space, -self.entries, self.field)

    def scale(self, c: Scalar) -> "Operator":
        if self.field == RATIONAL:
            if isinstance(c, (int, Fraction)) or isinstance(c, Rational):
                f = _as_fraction(c)
                ent = np.array([[f * x for x in row] for row in self.entries], dtype=object)
                return Operator(self.space, ent, RATIONAL)
            return self._promote().scale(c)
        return Operator(self.space, complex(c) * self.entries, COMPLEX)

    def __rmul__(self, c: Scalar) -> "Operator":
        return self.scale(c)

    def adjoint(self) -> "Operator":
        """Conjugate transpose.  In the exact field entries are real
        rationals, so this is the plain transpose of the stored matrix."""
        if self.field == RATIONAL:
            return Operator(self.space, self.entries.T.copy(), RATIONAL)
        return Operator(self.space, self.entries.conj().T.copy(), COMPLEX)

    def power(self, k: int) -> "Operator":
        if k < 0:
            raise ValueError("negative matrix powers are not supported")
        out = identity_op(self.space, self.field)
        for _ in range(k):
            out = out @ self
        return out

    # -- inspection -----------------------------------------------------------

    def max_norm(self):
        """Entrywise max-magnitude norm.  Exact (a Fraction) for the
        rational field, a float otherwise."""
        if self.field == RATIONAL:
            worst = Fraction(0)
            for row in self.entries:
                for x in row:
                    if abs(x) > worst:
                        worst = abs(x)
            return worst
        if self.entries.size == 0:
            return 0.0
        return float(np.abs(self.entries).max())

    def interior(self, size: int) -> np.ndarray:
        """Leading principal block, where truncation artifacts cannot reach."""
        if not 0 <= size <= self.space.dim:
            raise ValueError(f"interior size {size} outside [0, {self.space.dim}]")
        return self.entries[:size, :size]

    def is_hermitian(self, rtol: float = _HERMITIAN_RTOL) -> bool:
        d = (self - self.adjoint()).max_norm()
        scale = self.max_norm()
        return float(d) <= rtol * max(1.0, float(scale))

    def __repr__(self) -> str:
        return f"Operator(dim={self.space.dim}, field={self.field})"

    # -- serialization --------------------------------------------------------

    def to_json_dict(self) -> dict:
        if self.field == RATIONAL:
            entries = [str(x) for row in self.entries for x in row]
        else:
            entries = [[float(x.real), float(x.imag)] for row in self.entries for x in row]
        return {"dim": self.space.dim, "field": self.field, "entries": entries}

    @staticmethod
    def from_json_dict(data: dict) -> "Operator":
        dim = data["dim"]
        field = data["field"]
        space = FockSpace(dim)
        flat = data["entries"]
        if len(flat) != dim * dim:
            raise ValueError("entry count does not match dim*dim")
        if field == RATIONAL:
            ent = np.array(
                [[Fraction(flat[i * dim + j]) for j in range(dim)] for i in range(dim)],
                dtype=object,
            )
        elif field == COMPLEX:
            ent = np.array(
                [[complex(flat[i * dim + j][0], flat[i * dim + j][1]) for j in range(dim)]
                 for i in range(dim)],
                dtype=complex,
            )
        else:
            raise ValueError(f"unknown field {field!r}")
        return Operator(space, ent, field)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @staticmethod
    def from_json(text: str) -> "Operator":
        return Operator.from_json_dict(json.loads(text))


# -- ladder operators ---------------------------------------------------------

def annihilation(space: FockSpace, field: str = COMPLEX) -> Operator:
    """Lowering matrix a.

    Normalized basis (complex field): entry (n-1, n) = sqrt(n).
    Monomial basis (rational field): entry (n-1, n) = n, exactly.
    """
    n = space.dim
    if field == RATIONAL:
        ent = np.full((n, n), Fraction(0), dtype=object)
        for m in range(1, n):
            ent[m - 1, m] = Fraction(m)
        return Operator(space, ent, RATIONAL)
    ent = np.diag(np.sqrt(np.arange(1, n)), 1).astype(complex)
    return Operator(space, ent, COMPLEX)


def creation(space: FockSpace, field: str = COMPLEX) -> Operator:
    """Raising matrix a+; adjoint of ``annihilation`` in the complex field,
    the unit-entry shift in the exact monomial basis."""
    n = space.dim
    if field == RATIONAL:
        ent = np.full((n, n), Fraction(0), dtype=object)
        for m in range(0, n - 1):
            ent[m + 1, m] = Fraction(1)
        return Operator(space, ent, RATIONAL)
    return annihilation(space, COMPLEX).adjoint()


def number_op(space: FockSpace, field: str = COMPLEX) -> Operator:
    """diag(0, 1, ..., N-1); identical in both bases."""
    if field == RATIONAL:
        return diagonal_operator(space, [Fraction(m) for m in space.occupations()], RATIONAL)
    return diagonal_operator(space, [float(m) for m in space.occupations()], COMPLEX)


def identity_op(space: FockSpace, field: str = COMPLEX) -> Operator:
    if field == RATIONAL:
        return diagonal_operator(space, [Fraction(1)] * space.dim, RATIONAL)
    return diagonal_operator(space, [1.0] * space.dim, COMPLEX)


def diagonal_operator(
    space: FockSpace,
    values: Union[Sequence[Scalar], Callable[[int], Scalar]],
    field: str = COMPLEX,
) -> Operator:
    """diag(f(0), ..., f(N-1)) from a sequence or a callable of n.

    A value of None marks an entry with no defined matrix element; it is
    stored as 0.  Callers tracking admissibility keep the mask themselves
    (see ``masked_diagonal``).
    """
    if callable(values):
        vals = [values(m) for m in space.occupations()]
    else:
        vals = list(values)
        if len(vals) != space.dim:
            raise ValueError(f"need {space.dim} diagonal values, got {len(vals)}")
    if field == RATIONAL:
        ent = np.full((space.dim, space.dim), Fraction(0), dtype=object)
        for m, v in enumerate(vals):
            ent[m, m] = Fraction(0) if v is None else _as_fraction(v)
        return Operator(space, ent, RATIONAL)
    ent = np.zeros((space.dim, space.dim), dtype=complex)
    for m, v in enumerate(vals):
        ent[m, m] = 0j if v is None else complex(v)
    return Operator(space, ent, COMPLEX)


def masked_diagonal(
    space: FockSpace,
    values: Union[Sequence[Scalar], Callable[[int], Scalar]],
    field: str = COMPLEX,
) -> tuple[Operator, list[bool]]:
    """Like ``diagonal_operator`` but also returns the admissibility mask:
    mask[n] is False exactly where the value was None."""
    if callable(values):
        vals = [values(m) for m in space.occupations()]
    else:
        vals = list(values)
    mask = [v is not None for v in vals]
    return diagonal_operator(space, vals, field), mask


def pochhammer(q: Scalar, n: int):
    """Rising factorial (q)_n = q (q+1) ... (q+n-1), with (q)_0 = 1.
    Exact when q is rational."""
    if n < 0:
        raise ValueError("rising factorial needs n >= 0")
    if isinstance(q, (int, Fraction)) or isinstance(q, Rational):
        out = Fraction(1)
        qf = _as_fraction(q)
        for i in range(n):
            out *= qf + i
        return out
    out = 1.0 + 0j if isinstance(q, complex) else 1.0
    for i in range(n):
        out *= q + i
    return out


def pochhammer_operator(space: FockSpace, q: Scalar, field: str = RATIONAL) -> Operator:
    """diag((q)_0, (q)_1, ..., (q)_{N-1})."""
    vals = [pochhammer(q, m) for m in space.occupations()]
    return diagonal_operator(space, vals, field)


# -- quadratures and spectral constructions -----------------------------------

_SQRT2 = np.sqrt(2.0)


def position(space: FockSpace) -> Operator:
    """X = (a + a+)/sqrt(2); Hermitian, complex field only."""
    a = annihilation(space)
    return (1.0 / _SQRT2) * (a + a.adjoint())


def momentum(space: FockSpace) -> Operator:
    """P = -i (a - a+)/sqrt(2); Hermitian, complex field only."""
    a = annihilation(space)
    return (-1j / _SQRT2) * (a - a.adjoint())


def unitary_exp(h: Operator, theta: float) -> Operator:
    """exp(i * theta * H) for Hermitian H, via eigendecomposition.

    A truncated power series would lose unitarity at the truncation edge;
    the spectral form is exactly unitary up to roundoff.
    """
    if isinstance(theta, complex):
        raise ValueError("theta must be real")
    op = h._promote()
    if not op.is_hermitian():
        raise ValueError("unitary_exp requires a Hermitian operator")
    w, v = np.linalg.eigh(op.entries)
    u = (v * np.exp(1j * float(theta) * w)) @ v.conj().T
    return Operator(op.space, u, COMPLEX)


def hermitian_eig(h: Operator) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvectors of a Hermitian operator."""
    op = h._promote()
    if not op.is_hermitian():
        raise ValueError("hermitian_eig requires a Hermitian operator")
    return np.linalg.eigh(op.entries)


def commutator(a: Operator, b: Operator) -> Operator:
    return a @ b - b @ a
