"""Signature-ratio ceilings and the constructive pigeonhole certificate.

For power 1 the ratio of negative to positive squares is below n-1; for
power d it is below binom(n-1+d, d) - 1.  The pigeonhole certificate makes
the power-1 diagonal bound constructive: it maps each negative monomial to a
positive neighbor so that no positive monomial is hit more than n-1 times
and the least monomial is never hit at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import CertificateFailure, NotInPsiD
from .polycore import MultiIndex, RealSparsePoly, SignaturePair, sign_counts
from .psi import in_psi_diagonal


@dataclass(frozen=True)
class BoundReport:
    n: int
    d: int
    signature: SignaturePair
    bound: Fraction
    satisfied: bool
    strict: bool


def ratio_ceiling(n: int, d: int) -> Fraction:
    """The proven strict upper bound on N-/N+ at multiplier power d."""
    if n < 2 or d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    if d == 1:
        return Fraction(n - 1)
    return Fraction(comb(n - 1 + d, d) - 1)


def verify_ratio_bound(sig: SignaturePair, n: int, d: int) -> BoundReport:
    """Check a signature pair against the ceiling; the inequality is strict."""
    bound = ratio_ceiling(n, d)
    if sig.n_plus == 0:
        satisfied = sig.n_minus == 0
    else:
        satisfied = Fraction(sig.n_minus, sig.n_plus) < bound
    return BoundReport(n, d, sig, bound, satisfied, strict=True)


def verify_min_positive(p: RealSparsePoly, d: int) -> bool:
    """Any member with a negative coefficient has at least n positive ones.

    Requires membership at power d (checked); the guarantee is proved for
    d = 1 and reported informationally for other powers.
    """
    if not in_psi_diagonal(p, d).member:
        raise NotInPsiD(f"polynomial is not a member at power {d}")
    sig = sign_counts(p)
    return sig.n_minus == 0 or sig.n_plus >= p.n


@dataclass(frozen=True)
class PigeonholeCertificate:
    """Map from negative to positive support with small fibers.

    Fibers have at most n-1 elements and the least support monomial (which
    is always positive for a member) has an empty fiber, which forces
    N- < (n-1) * N+.
    """

    assignment: tuple  # ordered pairs (negative alpha, positive beta)
    max_fiber: int
    least_monomial: MultiIndex

    def fiber_sizes(self) -> dict:
        sizes: dict = {}
        for _, beta in self.assignment:
            sizes[beta] = sizes.get(beta, 0) + 1
        return sizes


def pigeonhole_certificate(p: RealSparsePoly) -> PigeonholeCertificate:
    """Construct the assignment for a homogeneous power-1 member.

    Each negative monomial alpha is pushed one step along the first
    variable; nonnegativity of the product coefficient there forces a
    positive contributor alpha + e_1 - e_j for some j >= 2, and the least
    such j is chosen.  Preimages of any beta sit among beta - e_1 + e_j, so
    fibers have at most n-1 elements, and every candidate preimage of the
    least support monomial falls below it in the monomial order.
    """
    if not p.is_homogeneous():
        raise NotInPsiD("certificate requires a homogeneous polynomial")
    if not in_psi_diagonal(p, 1).member:
        raise NotInPsiD("certificate requires membership at power 1")
    n = p.n
    pos = {a for a, c in p.items() if c > 0}
    neg = {a for a, c in p.items() if c < 0}
    if not pos and not neg:
        raise CertificateFailure("zero polynomial has no certificate")

    assignment = []
    for alpha in sorted(neg):
        bumped = (alpha[0] + 1,) + alpha[1:]
        target = None
        for j in range(1, n):
            if bumped[j] == 0:
                continue
            cand = bumped[:j] + (bumped[j] - 1,) + bumped[j + 1 :]
            if cand in pos:
                target = cand
                break
        if target is None:
            raise CertificateFailure(
                f"no positive contributor for {alpha}; membership verification is inconsistent"
            )
        assignment.append((alpha, target))

    sizes: dict = {}
    for _, beta in assignment:
        sizes[beta] = sizes.get(beta, 0) + 1
    max_fiber = max(sizes.values(), default=0)
    if max_fiber > n - 1:
        raise CertificateFailure("a fiber exceeded n-1; construction is inconsistent")

    least = min(pos | neg)
    if least not in pos:
        raise CertificateFailure("least support monomial is not positive")
    if sizes.get(least, 0) != 0:
        raise CertificateFailure("least positive monomial has a nonempty fiber")
    return PigeonholeCertificate(tuple(assignment), max_fiber, least)
