"""Membership tests for the squared-norm positivity classes.

A real-valued bihomogeneous polynomial r sits in class d when r times the
d-th power of the squared norm is a squared norm of holomorphic polynomials.
Diagonal inputs reduce to coefficient nonnegativity of an exact product;
general inputs reduce to positive semidefiniteness of an exact coefficient
matrix.  Both routes produce checkable certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded
from .inertia import (
    coefficient_matrix,
    congruence_factorization,
    is_positive_semidefinite,
)
from .polycore import (
    GR_ZERO,
    HermitianPoly,
    MultiIndex,
    RealSparsePoly,
    add_index,
    compositions,
    multinomial,
    multiply_by_diagonal_multiplier,
    multiply_by_simplex_power,
)

HARD_POWER_CAP = 64
DEFAULT_POWER_CAP = 16


@dataclass(frozen=True)
class NegativeCoefficientWitness:
    """A product monomial whose coefficient came out negative."""

    monomial: MultiIndex
    value: Fraction


@dataclass(frozen=True)
class NegativeDirectionWitness:
    """A vector v with v* C v < 0 on the product coefficient matrix."""

    vector: tuple
    basis: tuple
    value: Fraction


@dataclass(frozen=True)
class NonnegativeProductCertificate:
    """The expanded diagonal product; all coefficients are nonnegative."""

    product: RealSparsePoly


@dataclass(frozen=True)
class PsdCertificate:
    """Exact congruence factorization of the product coefficient matrix."""

    factorization: object
    basis: tuple


@dataclass(frozen=True)
class PsiReport:
    """Outcome of a membership test at a fixed multiplier power."""

    d: int | None
    member: bool
    certificate: object
    multiplier: tuple | None = None


def in_psi_diagonal(p: RealSparsePoly, d: int) -> PsiReport:
    """Diagonal membership: every coefficient of p times the simplex power is >= 0."""
    product = multiply_by_simplex_power(p, d)
    negatives = sorted(a for a, c in product.items() if c < 0)
    if negatives:
        worst = negatives[0]
        return PsiReport(
            d, False, NegativeCoefficientWitness(worst, product.coeff(worst))
        )
    return PsiReport(d, True, NonnegativeProductCertificate(product))


def _product_matrix(r: HermitianPoly, d: int):
    """Coefficient matrix of r times the d-th squared-norm power.

    The multiplier is diagonal, so entry (alpha, beta) lands at
    (alpha+delta, beta+delta) weighted by the multinomial coefficient of
    delta; no general polynomial product is needed.
    """
    entries: dict = {}
    deltas = [(delta, multinomial(d, delta)) for delta in compositions(d, r.n)]
    for (alpha, beta), v in r.items():
        for delta, w in deltas:
            key = (add_index(alpha, delta), add_index(beta, delta))
            cur = entries.get(key, GR_ZERO) + v * w
            if cur.is_zero():
                entries.pop(key, None)
            else:
                entries[key] = cur
    return coefficient_matrix(HermitianPoly(r.n, entries))


def in_psi_hermitian(r: HermitianPoly, d: int) -> PsiReport:
    """General membership: the product coefficient matrix must be PSD, exactly."""
    if r.is_zero():
        return PsiReport(d, True, NonnegativeProductCertificate(RealSparsePoly(r.n, {})))
    M = _product_matrix(r, d)
    ok, witness = is_positive_semidefinite(M)
    if ok:
        return PsiReport(d, True, PsdCertificate(congruence_factorization(M), M.basis))
    from .inertia import quadratic_form

    return PsiReport(
        d,
        False,
        NegativeDirectionWitness(witness, M.basis, quadratic_form(M, witness)),
    )


def in_psi(obj, d: int) -> PsiReport:
    """Dispatch on input kind; the diagonal route is the fast exact path."""
    if isinstance(obj, RealSparsePoly):
        return in_psi_diagonal(obj, d)
    if isinstance(obj, HermitianPoly):
        if obj.is_diagonal():
            from .polycore import diagonal_real_bridge

            return in_psi_diagonal(diagonal_real_bridge(obj), d)
        return in_psi_hermitian(obj, d)
    raise TypeError(f"cannot test membership for {type(obj).__name__}")


def min_psi_index(obj, d_max: int = DEFAULT_POWER_CAP) -> int | None:
    """Smallest power d <= d_max giving membership, or None if none does.

    Classes are nested (multiplying by one more simplex factor preserves
    nonnegativity and PSD-ness), so the first success is the minimum.
    """
    if d_max > HARD_POWER_CAP:
        raise CapExceeded(f"power cap {d_max} exceeds hard limit {HARD_POWER_CAP}")
    if d_max < 0:
        raise ValueError("cap must be nonnegative")
    for d in range(d_max + 1):
        if in_psi(obj, d).member:
            return d
    return None


def in_psi_general_multiplier(obj, s) -> PsiReport:
    """Membership of r * sum_j |z^{alpha_j}|^2 among squared norms."""
    exps = [tuple(a) for a in s]
    if isinstance(obj, RealSparsePoly):
        product = multiply_by_diagonal_multiplier(obj, exps)
        negatives = sorted(a for a, c in product.items() if c < 0)
        if negatives:
            worst = negatives[0]
            return PsiReport(
                None,
                False,
                NegativeCoefficientWitness(worst, product.coeff(worst)),
                multiplier=tuple(exps),
            )
        return PsiReport(
            None, True, NonnegativeProductCertificate(product), multiplier=tuple(exps)
        )
    if isinstance(obj, HermitianPoly):
        if obj.is_diagonal():
            from .polycore import diagonal_real_bridge

            rep = in_psi_general_multiplier(diagonal_real_bridge(obj), exps)
            return rep
        from .errors import DuplicateMultiplierTerm

        if len(set(exps)) != len(exps):
            raise DuplicateMultiplierTerm(f"repeated exponent vector in {exps}")
        entries: dict = {}
        for (alpha, beta), v in obj.items():
            for delta in exps:
                key = (add_index(alpha, delta), add_index(beta, delta))
                cur = entries.get(key, GR_ZERO) + v
                if cur.is_zero():
                    entries.pop(key, None)
                else:
                    entries[key] = cur
        M = coefficient_matrix(HermitianPoly(obj.n, entries))
        ok, witness = is_positive_semidefinite(M)
        if ok:
            return PsiReport(
                None,
                True,
                PsdCertificate(congruence_factorization(M), M.basis),
                multiplier=tuple(exps),
            )
        from .inertia import quadratic_form

        return PsiReport(
            None,
            False,
            NegativeDirectionWitness(witness, M.basis, quadratic_form(M, witness)),
            multiplier=tuple(exps),
        )
    raise TypeError(f"cannot test membership for {type(obj).__name__}")
