"""Structure constants, Casimir data, and admissibility analysis.

The algebra under study closes as

    [J3, J+-] = +-J+-        [J+, J-] = c1 J3 + c3 J3^3

with rational structure constants c1, c3.  On the spin-j multiplet the
states are indexed by a displacement n = j - m, n = 0 .. 2j, and every
squared ladder element is a rational function of (c1, c3, j, n).  All
quantities here are exact Fractions; nothing in this module touches
floating point except the optional float view of the root boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .fock import Operator

RationalLike = Union[int, str, Fraction]


def _frac(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class AlgebraParams:
    """The pair (c1, c3) of structure constants, held exactly."""

    c1: Fraction
    c3: Fraction

    @staticmethod
    def of(c1: RationalLike, c3: RationalLike) -> "AlgebraParams":
        return AlgebraParams(_frac(c1), _frac(c3))

    def __str__(self) -> str:
        return f"(c1={self.c1}, c3={self.c3})"


# The two classical degenerations.
SU2_PARAMS = AlgebraParams(Fraction(2), Fraction(0))
SU11_PARAMS = AlgebraParams(Fraction(-2), Fraction(0))


def casimir_eigenvalue(params: AlgebraParams, j: RationalLike) -> Fraction:
    """Invariant eigenvalue on the spin-j multiplet:
    c1 j(j+1) + (c3/2) j^2 (j+1)^2."""
    jf = _frac(j)
    return params.c1 * jf * (jf + 1) + Fraction(params.c3, 2) * (jf * (jf + 1)) ** 2


def bond_quadratic(params: AlgebraParams, j: RationalLike, n: int) -> Fraction:
    """The quadratic factor 2 c1 + c3 (2 j^2 - n (2j - n - 1)) appearing in
    every squared ladder element.  Its sign decides whether the bond from
    state n to state n+1 survives."""
    jf = _frac(j)
    return 2 * params.c1 + params.c3 * (2 * jf * jf - n * (2 * jf - n - 1))


def bond_product(params: AlgebraParams, j: RationalLike, n: int) -> Fraction:
    """(1/4) (2j - n) * bond_quadratic(n).

    Equal to the product of the two single-step factor functions, and to
    minus_square(n) / (n + 1).  Strictly positive bond_product(n) keeps
    the n <-> n+1 bond; zero terminates a chain cleanly; negative breaks
    Hermiticity of the pair (J+, J-) across that bond.
    """
    jf = _frac(j)
    return Fraction(1, 4) * (2 * jf - n) * bond_quadratic(params, jf, n)


def minus_square(params: AlgebraParams, j: RationalLike, n: int) -> Fraction:
    """Squared matrix element of J- taking state n to state n+1."""
    return (n + 1) * bond_product(params, j, n)


def plus_square(params: AlgebraParams, j: RationalLike, n: int) -> Fraction:
    """Squared matrix element of J+ taking state n to state n-1.
    Mirrors minus_square one step down; zero at n = 0."""
    if n == 0:
        return Fraction(0)
    return n * bond_product(params, j, n - 1)


# -- root boundaries of the bond quadratic ------------------------------------

def discriminant(params: AlgebraParams, j: RationalLike) -> Fraction:
    """Discriminant D of the monic quadratic q(n) with
    bond_quadratic = c3 * q(n); real roots exist iff D >= 0.
    Requires c3 != 0."""
    if params.c3 == 0:
        raise ValueError("root boundaries are defined only for c3 != 0")
    jf = _frac(j)
    return 2 - (2 * jf + 1) ** 2 - 8 * params.c1 / params.c3


def monic_bond_quadratic(params: AlgebraParams, j: RationalLike, n: RationalLike) -> Fraction:
    """q(n) = n^2 - (2j - 1) n + 2 j^2 + 2 c1 / c3, so that
    bond_quadratic = c3 * q.  Requires c3 != 0."""
    if params.c3 == 0:
        raise ValueError("monic form requires c3 != 0")
    jf = _frac(j)
    nf = _frac(n)
    return nf * nf - (2 * jf - 1) * nf + 2 * jf * jf + 2 * params.c1 / params.c3


def z_boundaries(params: AlgebraParams, j: RationalLike) -> Optional[tuple[float, float]]:
    """Roots (z_minus, z_plus) = j - 1/2 -+ sqrt(D)/2 of the monic bond
    quadratic, as floats.  None when the roots are complex.  Exact sign
    questions should go through root_side_admissible instead."""
    d = discriminant(params, j)
    if d < 0:
        return None
    jf = _frac(j)
    root = math.sqrt(float(d))
    center = float(jf) - 0.5
    return (center - root / 2.0, center + root / 2.0)


def root_side_admissible(params: AlgebraParams, j: RationalLike, n: int) -> Optional[bool]:
    """Predict the sign of bond_product(n) from the position of n relative
    to the roots of the bond quadratic, exactly in rational arithmetic.

    Returns True/False for a definite prediction, None where the root
    picture does not decide: n sitting exactly on a root, or n = 2j where
    the linear prefactor vanishes.  c3 > 0 keeps states outside the open
    root interval; c3 < 0 keeps the states between the roots.  Complex
    roots mean the quadratic never changes sign.
    """
    jf = _frac(j)
    if Fraction(n) == 2 * jf:
        return None
    d = discriminant(params, jf)
    if d < 0:
        # no real roots: the quadratic keeps the sign of its leading term
        return params.c3 > 0
    # displacement of n from the root midpoint, doubled to stay rational
    t = Fraction(2 * n) - (2 * jf - 1)
    if t * t == d:
        return None
    outside = t * t > d
    return outside if params.c3 > 0 else not outside


# -- per-state scan and chain decomposition -----------------------------------

def admissible_states(params: AlgebraParams, j: RationalLike) -> list[int]:
    """All n in [0, 2j] whose lowering radicand is nonnegative,
    by direct sign scan."""
    jf = _frac(j)
    top = int(2 * jf)
    if 2 * jf != top:
        raise ValueError(f"2j must be an integer, got j = {jf}")
    return [n for n in range(top + 1) if minus_square(params, jf, n) >= 0]


@dataclass(frozen=True)
class ChainStructure:
    """Decomposition of [0, 2j] under the bond signs.

    ``main`` is the chain grown from the displaced vacuum n = 0 through
    strictly positive bonds; a zero or negative bond ends it.  ``segments``
    are the remaining maximal runs of states with nonnegative lowering
    radicand.  A segment supports a well-defined Hermitian restriction
    but is not reachable from n = 0.
    """

    main: tuple[int, ...]
    segments: tuple[tuple[int, ...], ...]

    def all_states(self) -> list[int]:
        out = list(self.main)
        for seg in self.segments:
            out.extend(seg)
        return sorted(set(out))


def admissible_chain(params: AlgebraParams, j: RationalLike) -> ChainStructure:
    jf = _frac(j)
    top = int(2 * jf)
    if 2 * jf != top:
        raise ValueError(f"2j must be an integer, got j = {jf}")
    main = [0]
    while main[-1] < top and bond_product(params, jf, main[-1]) > 0:
        main.append(main[-1] + 1)
    in_main = set(main)
    states = [n for n in admissible_states(params, jf) if n not in in_main]
    segments: list[tuple[int, ...]] = []
    run: list[int] = []
    for n in states:
        if run and n == run[-1] + 1:
            run.append(n)
        else:
            if run:
                segments.append(tuple(run))
            run = [n]
    if run:
        segments.append(tuple(run))
    return ChainStructure(tuple(main), tuple(segments))


# -- the representation table -------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    n: int
    j3: Fraction
    plus: Optional[float]
    minus: Optional[float]
    admissible: bool


@dataclass(frozen=True)
class RepresentationTable:
    params: AlgebraParams
    j: Fraction
    rows: tuple[TableRow, ...]

    def to_csv(self) -> str:
        lines = [
            f"# c1 = {self.params.c1}",
            f"# c3 = {self.params.c3}",
            f"# j = {self.j}",
            "n,j3,plus,minus,admissible",
        ]
        for r in self.rows:
            plus = "" if r.plus is None else repr(r.plus)
            minus = "" if r.minus is None else repr(r.minus)
            lines.append(f"{r.n},{r.j3},{plus},{minus},{1 if r.admissible else 0}")
        return "\n".join(lines) + "\n"


def _sqrt_or_none(x: Fraction) -> Optional[float]:
    if x < 0:
        return None
    return math.sqrt(float(x))


def representation_table(params: AlgebraParams, j: RationalLike) -> RepresentationTable:
    """Matrix elements of J+- over the full index range n = 0 .. 2j.

    plus(n) moves n to n-1, minus(n) moves n to n+1; an element whose
    radicand is negative is reported as missing.  The admissible flag is
    the per-state sign scan (nonnegative lowering radicand).
    """
    jf = _frac(j)
    top = int(2 * jf)
    if 2 * jf != top:
        raise ValueError(f"2j must be an integer, got j = {jf}")
    rows = []
    for n in range(top + 1):
        rows.append(
            TableRow(
                n=n,
                j3=jf - n,
                plus=_sqrt_or_none(plus_square(params, jf, n)),
                minus=_sqrt_or_none(minus_square(params, jf, n)),
                admissible=minus_square(params, jf, n) >= 0,
            )
        )
    return RepresentationTable(params, jf, tuple(rows))


# -- Casimir operators --------------------------------------------------------

def casimir_operator(
    jp: Operator, jm: Operator, j3: Operator, params: AlgebraParams, symmetric: bool = True
) -> Operator:
    """Invariant built from realized generators.

    symmetric=True uses the ordering-balanced form
        J+ J- + J- J+ + (c1 + c3/2) J3^2 + (c3/2) J3^4,
    symmetric=False the normal-ordered form
        2 J- J+ + c1 J3 + (c1 + c3/2) J3^2 + c3 J3^3 + (c3/2) J3^4.
    The two agree exactly wherever the defining commutator holds.
    """
    c1, c3 = params.c1, params.c3
    a2 = c1 + Fraction(c3, 2)
    a4 = Fraction(c3, 2)
    j3sq = j3 @ j3
    if symmetric:
        out = jp @ jm + jm @ jp + a2 * j3sq + a4 * (j3sq @ j3sq)
    else:
        out = 2 * (jm @ jp) + c1 * j3 + a2 * j3sq + c3 * (j3sq @ j3) + a4 * (j3sq @ j3sq)
    return out
