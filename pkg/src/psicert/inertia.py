"""Exact inertia of Hermitian matrices by rational congruence.

The factorization uses symmetric elimination with 1x1 pivots only.  When the
active diagonal vanishes but the block does not, a congruence that adds one
row/column into another (with a factor of 1 or i) manufactures a nonzero
diagonal entry, so square roots never appear and everything stays inside the
Gaussian rationals.  Sylvester's law makes the sign counts of the resulting
diagonal the inertia of the input.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import ExplicitLimit, NotHermitian
from .polycore import (
    GR_I,
    GR_ONE,
    GR_ZERO,
    GaussianRational,
    HermitianPoly,
)

_HARD_DIM_CAP = 2048


def _dim_cap() -> int:
    """Desk-scale cap on dense dimension; the environment may lower it."""
    cap = _HARD_DIM_CAP
    env = os.environ.get("PSI_MAX_DIM")
    if env:
        try:
            cap = min(cap, int(env))
        except ValueError:
            pass
    return cap


def _as_gr(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(Fraction(x), Fraction(0))
    raise TypeError(f"matrix entries must be exact: {x!r}")


class HermitianMatrix:
    """Dense Hermitian matrix over Gaussian rationals with an optional monomial basis."""

    __slots__ = ("dim", "rows", "basis")

    def __init__(self, rows, basis=None):
        rows = [[_as_gr(x) for x in row] for row in rows]
        dim = len(rows)
        if any(len(r) != dim for r in rows):
            raise ValueError("matrix must be square")
        if dim > _dim_cap():
            raise ExplicitLimit(f"dimension {dim} exceeds cap {_dim_cap()}")
        for i in range(dim):
            if rows[i][i].im != 0:
                raise NotHermitian(f"diagonal entry {i} is not real")
            for j in range(i + 1, dim):
                if rows[i][j] != rows[j][i].conjugate():
                    raise NotHermitian(f"entries ({i},{j}) and ({j},{i}) not conjugate")
        if basis is not None:
            basis = tuple(tuple(b) for b in basis)
            if len(basis) != dim:
                raise ValueError("basis length must match dimension")
            if len(set(basis)) != dim:
                raise ValueError("basis has duplicates")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "rows", tuple(tuple(r) for r in rows))
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, *a):
        raise AttributeError("HermitianMatrix is immutable")

    def entry(self, i: int, j: int) -> GaussianRational:
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, HermitianMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"HermitianMatrix(dim={self.dim})"


@dataclass(frozen=True)
class CongruenceFactorization:
    """diag == transform* . original . transform, all exact."""

    diag: tuple  # of Fraction, original index order
    transform: tuple  # rows of the congruence matrix T
    inverse: tuple  # rows of T^-1 (kept for decompositions)
    pivot_log: tuple  # ordered pivot record, for reproducibility

    @property
    def inertia(self) -> tuple:
        pos = sum(1 for d in self.diag if d > 0)
        neg = sum(1 for d in self.diag if d < 0)
        return (pos, neg, len(self.diag) - pos - neg)


def _identity(dim):
    return [
        [GR_ONE if i == j else GR_ZERO for j in range(dim)] for i in range(dim)
    ]


def congruence_factorization(M: HermitianMatrix) -> CongruenceFactorization:
    """Symmetric elimination with exact arithmetic and a deterministic pivot rule.

    Pivot rule: among the active diagonal, take the entry of largest absolute
    value (smallest index on ties).  If the active diagonal is all zero but an
    active off-diagonal entry remains, add row/column j into row/column i
    (factor 1, or i when the entry is purely imaginary) to create a pivot.
    """
    dim = M.dim
    W = [list(row) for row in M.rows]
    T = _identity(dim)
    Tinv = _identity(dim)
    log = []
    active = list(range(dim))

    def apply_add(i: int, j: int, factor: GaussianRational):
        # congruence: column i += factor * column j, row i += conj(factor) * row j
        fc = factor.conjugate()
        for r in range(dim):
            W[r][i] = W[r][i] + factor * W[r][j]
        for c in range(dim):
            W[i][c] = W[i][c] + fc * W[j][c]
        for r in range(dim):
            T[r][i] = T[r][i] + factor * T[r][j]
        for c in range(dim):
            Tinv[j][c] = Tinv[j][c] - factor * Tinv[i][c]

    while active:
        # best available diagonal pivot
        best, best_mag = None, None
        for k in active:
            mag = abs(W[k][k].re)
            if mag != 0 and (best_mag is None or mag > best_mag):
                best, best_mag = k, mag
        if best is None:
            bump = next(
                (
                    (i, j)
                    for i in active
                    for j in active
                    if i != j and not W[i][j].is_zero()
                ),
                None,
            )
            if bump is None:
                break  # all-zero active block: zeros of the diagonal
            i, j = bump
            # a factor of 1 creates 2*Re(entry); fall back to i when that is zero
            if W[i][j].re != 0:
                apply_add(i, j, GR_ONE)
                log.append(("bump", i, j, "1"))
            else:
                apply_add(i, j, GR_I)
                log.append(("bump", i, j, "i"))
            continue
        k = best
        log.append(("pivot", k))
        pivot = W[k][k].re
        for i in active:
            if i == k or W[i][k].is_zero():
                continue
            factor = -(W[i][k].conjugate()) / GaussianRational.of(pivot)
            apply_add(i, k, factor)
        active.remove(k)

    diag = tuple(W[k][k].re for k in range(dim))
    return CongruenceFactorization(
        diag=diag,
        transform=tuple(tuple(r) for r in T),
        inverse=tuple(tuple(r) for r in Tinv),
        pivot_log=tuple(log),
    )


def inertia(M: HermitianMatrix) -> tuple:
    """(n_plus, n_minus, n_zero) of M, exactly."""
    return congruence_factorization(M).inertia


def quadratic_form(M: HermitianMatrix, v) -> Fraction:
    """v* M v for an exact vector v; always real."""
    v = [_as_gr(x) for x in v]
    acc = GR_ZERO
    for i in range(M.dim):
        for j in range(M.dim):
            acc = acc + v[i].conjugate() * M.rows[i][j] * v[j]
    assert acc.im == 0
    return acc.re


def is_positive_semidefinite(M: HermitianMatrix):
    """(True, None) when PSD; otherwise (False, witness) with witness* M witness < 0."""
    fact = congruence_factorization(M)
    for k, d in enumerate(fact.diag):
        if d < 0:
            witness = tuple(fact.transform[r][k] for r in range(M.dim))
            value = quadratic_form(M, witness)
            assert value < 0
            return False, witness
    return True, None


def coefficient_matrix(r: HermitianPoly) -> HermitianMatrix:
    """Dense coefficient matrix of r over its sorted monomial index set."""
    basis = r.index_set()
    pos = {b: i for i, b in enumerate(basis)}
    dim = len(basis)
    rows = [[GR_ZERO] * dim for _ in range(dim)]
    for (alpha, beta), v in r.items():
        rows[pos[alpha]][pos[beta]] = v
    return HermitianMatrix(rows, basis=basis)


@dataclass(frozen=True)
class HolomorphicDecomposition:
    """r == sum_i s_i |a_i . Z|^2 - sum_j t_j |b_j . Z|^2 with exact squared scales."""

    plus_rows: tuple  # rows over the basis, Gaussian rational
    minus_rows: tuple
    plus_scales: tuple  # positive Fractions
    minus_scales: tuple  # positive Fractions
    basis: tuple  # ordered exponent vectors

    @property
    def signature(self):
        from .polycore import SignaturePair

        return SignaturePair(len(self.plus_rows), len(self.minus_rows))


def holomorphic_decomposition(r: HermitianPoly) -> HolomorphicDecomposition:
    """Extract an exact signed-squares decomposition from the coefficient matrix."""
    if r.is_zero():
        return HolomorphicDecomposition((), (), (), (), ())
    M = coefficient_matrix(r)
    fact = congruence_factorization(M)
    plus_rows, minus_rows, plus_s, minus_s = [], [], [], []
    for k, d in enumerate(fact.diag):
        if d > 0:
            plus_rows.append(fact.inverse[k])
            plus_s.append(d)
        elif d < 0:
            minus_rows.append(fact.inverse[k])
            minus_s.append(-d)
    return HolomorphicDecomposition(
        tuple(plus_rows),
        tuple(minus_rows),
        tuple(plus_s),
        tuple(minus_s),
        M.basis,
    )


def recompose(dec: HolomorphicDecomposition) -> HermitianPoly:
    """Rebuild the Hermitian polynomial represented by a decomposition, exactly."""
    if not dec.basis:
        return HermitianPoly(1, {})
    n = len(dec.basis[0])
    entries: dict = {}

    def accumulate(row, scale, sign):
        s = GaussianRational.of(scale if sign > 0 else -scale)
        nz = [(idx, c) for idx, c in enumerate(row) if not c.is_zero()]
        for i, ci in nz:
            for j, cj in nz:
                key = (dec.basis[i], dec.basis[j])
                cur = entries.get(key, GR_ZERO) + s * ci.conjugate() * cj
                if cur.is_zero():
                    entries.pop(key, None)
                else:
                    entries[key] = cur

    for row, scale in zip(dec.plus_rows, dec.plus_scales):
        accumulate(row, scale, +1)
    for row, scale in zip(dec.minus_rows, dec.minus_scales):
        accumulate(row, scale, -1)
    return HermitianPoly(n, entries)


# small exact-matrix helpers shared with tests and the reduction pipeline


def mat_mul(A, B):
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = [[GR_ZERO] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            a = A[i][k]
            if a.is_zero():
                continue
            for j in range(cols):
                out[i][j] = out[i][j] + a * B[k][j]
    return out

def mat_adjoint(A):
    if not A:
        return []
    return [
        [A[i][j].conjugate() for i in range(len(A))] for j in range(len(A[0]))
    ]
