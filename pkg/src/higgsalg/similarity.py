"""Diagonal similarity maps between one-sided and square-root realizations.

A step-k one-sided (dyson) realization and its square-root (hp) partner
differ by conjugation with a diagonal matrix diag(s(n)) whose squares
obey s(n+k)^2 = F_k(n) s(n)^2.  The map exists exactly on chains where
every weight along the way is strictly positive; the mask records how
far each chain extends.  The same squares give the metric operator
U = diag(s^2) that intertwines the one-sided pair with its adjoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import AlgebraParams, RationalLike, bond_product, _frac, z_boundaries
from .fock import COMPLEX, FockSpace, Operator, pochhammer
from .realizations import Realization, closed_form_k2


@dataclass(frozen=True)
class DiagonalTransform:
    """Diagonal scaling s(0) .. s(N-1); mask[n] marks entries reachable
    through strictly positive weights from the seed."""

    q0: float
    entries: tuple[float, ...]
    mask: tuple[bool, ...]
    q0_odd: Optional[float] = None

    @property
    def dim(self) -> int:
        return len(self.entries)

    def to_json_dict(self) -> dict:
        out = {
            "q0": self.q0,
            "entries": [float(x) for x in self.entries],
            "mask": [1 if b else 0 for b in self.mask],
        }
        if self.q0_odd is not None:
            out["q0_odd"] = self.q0_odd
        return out

    @staticmethod
    def from_json_dict(data: dict) -> "DiagonalTransform":
        return DiagonalTransform(
            q0=float(data["q0"]),
            entries=tuple(float(x) for x in data["entries"]),
            mask=tuple(bool(b) for b in data["mask"]),
            q0_odd=float(data["q0_odd"]) if "q0_odd" in data else None,
        )


def s1_recurrence(
    space: FockSpace, params: AlgebraParams, j: RationalLike, q0: float = 1.0
) -> DiagonalTransform:
    """Step-1 scaling from the first-order square recurrence
    s(n)^2 = F_1(n-1) s(n-1)^2, seeded with s(0) = q0.

    The chain stops at the first nonpositive weight; the top weight
    F_1(2j) always vanishes, so no chain passes n = 2j.
    """
    jf = _frac(j)
    entries = [0.0] * space.dim
    mask = [False] * space.dim
    entries[0] = q0
    mask[0] = True
    sq = q0 * q0
    for n in range(1, space.dim):
        if not mask[n - 1]:
            break
        factor = bond_product(params, jf, n - 1)
        if factor <= 0:
            break
        sq *= float(factor)
        entries[n] = math.sqrt(sq) if q0 >= 0 else -math.sqrt(sq)
        mask[n] = True
    return DiagonalTransform(q0=q0, entries=tuple(entries), mask=tuple(mask))


def s1_closed_form(
    space: FockSpace, params: AlgebraParams, j: RationalLike, q0: float = 1.0
) -> DiagonalTransform:
    """Step-1 scaling in product form,

        s(n) = q0 sqrt( (-c3/4)^n (-2j)_n (-z+)_n (-z-)_n ),

    with (x)_n the rising factorial and z-+ the roots of the bond
    quadratic.  Needs c3 != 0 and real roots.  The domain mask is taken
    from the exact weight signs, identical to the recurrence version.
    """
    jf = _frac(j)
    roots = z_boundaries(params, jf)
    if roots is None:
        raise ValueError("closed-form scaling needs real roots of the bond quadratic")
    zm, zp = roots
    base = -float(params.c3) / 4.0
    mask = s1_recurrence(space, params, jf, q0).mask
    entries = [0.0] * space.dim
    for n in range(space.dim):
        if not mask[n]:
            break
        val = (base ** n) * float(pochhammer(-2.0 * float(jf), n))
        val *= float(pochhammer(-zp, n)) * float(pochhammer(-zm, n))
        # the masked region keeps the radicand positive; roundoff may dip
        # a true zero slightly negative at the chain edge
        entries[n] = q0 * math.sqrt(max(val, 0.0))
    return DiagonalTransform(q0=q0, entries=tuple(entries), mask=mask)


def s2_matching(
    space: FockSpace,
    params: AlgebraParams,
    j: RationalLike,
    q0_even: float = 1.0,
    q0_odd: float = 1.0,
) -> DiagonalTransform:
    """Step-2 scaling: two independent parity chains seeded at n = 0 and
    n = 1, each obeying s(n+2)^2 = F_2(n) s(n)^2."""
    jf = _frac(j)
    entries = [0.0] * space.dim
    mask = [False] * space.dim
    seeds = {0: q0_even}
    if space.dim > 1:
        seeds[1] = q0_odd
    squares = [0.0] * space.dim
    for start, seed in seeds.items():
        entries[start] = seed
        squares[start] = seed * seed
        mask[start] = True
    for n in range(2, space.dim):
        if not mask[n - 2]:
            continue
        factor = closed_form_k2(params, jf, n - 2)
        if factor <= 0:
            continue
        squares[n] = float(factor) * squares[n - 2]
        entries[n] = math.sqrt(squares[n]) if entries[n - 2] >= 0 else -math.sqrt(squares[n])
        mask[n] = True
    return DiagonalTransform(
        q0=q0_even, entries=tuple(entries), mask=tuple(mask), q0_odd=q0_odd
    )


def conjugate(realization: Realization, transform: DiagonalTransform) -> Realization:
    """Similarity transform A -> diag(s) A diag(s)^-1, applied entrywise
    as s(row) A[row, col] / s(col) where both ends are in the transform's
    domain; entries touching an undefined scale are dropped and the bond
    mask is narrowed to match.

    With the step-1 scaling this carries a one-sided realization onto its
    square-root partner wherever the chain extends.
    """
    if transform.dim != realization.space.dim:
        raise ValueError("transform length does not match the truncation")
    k = realization.step_k
    n = realization.space.dim
    tmask = transform.mask
    s = transform.entries

    def carry(op: Operator) -> Operator:
        src = op._promote().entries
        out = np.zeros((n, n), dtype=complex)
        for i in range(n):
            for l in range(n):
                if src[i, l] == 0:
                    continue
                if tmask[i] and tmask[l]:
                    out[i, l] = s[i] * src[i, l] / s[l]
        return Operator(realization.space, out, COMPLEX)

    new_mask = []
    for b in range(n):
        ok = realization.admissible_mask[b] and tmask[b]
        if b + k < n:
            ok = ok and tmask[b + k]
        new_mask.append(ok)
    return Realization(
        kind=realization.kind,
        step_k=k,
        j2=realization.j2,
        params=realization.params,
        jp=carry(realization.jp),
        jm=carry(realization.jm),
        j3=carry(realization.j3),
        admissible_mask=tuple(new_mask),
        window=realization.window,
    )


def unitarization_residual(
    realization: Realization, transform: DiagonalTransform
) -> tuple[float, int]:
    """How far U = diag(s^2) is from intertwining the pair (J-, J+):
    measures U^-1 adj(J-) U - J+ entrywise over bonds whose two ends lie
    in the transform's domain.  Returns (residual, bonds_measured).
    """
    k = realization.step_k
    n = realization.space.dim
    u = [e * e for e in transform.entries]
    jm = realization.jm._promote().entries
    jp = realization.jp._promote().entries
    worst = 0.0
    measured = 0
    for b in range(n - k):
        if not (transform.mask[b] and transform.mask[b + k]):
            continue
        lhs = (u[b + k] / u[b]) * np.conj(jm[b + k, b])
        worst = max(worst, abs(lhs - jp[b, b + k]))
        measured += 1
    return worst, measured
