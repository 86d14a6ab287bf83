"""Sign-pattern combinatorics for the diagonal case.

A sign pattern assigns POS/NEG/ZERO to every lattice point of a fixed total
degree.  Feasibility is the covering condition: every product monomial that
receives a negative contribution must also receive a positive one.  When
that holds, making every positive coefficient large enough (and every
negative one -1) yields an exact class member, so feasibility and
realizability coincide.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BudgetExhausted, ExplicitLimit, Infeasible
from .polycore import (
    MultiIndex,
    RealSparsePoly,
    add_index,
    compositions,
    monomials_of_degree,
    multinomial,
    total_degree,
)

EXHAUSTIVE_POINT_CAP = 24


class Sign(enum.Enum):
    POS = "pos"
    NEG = "neg"
    ZERO = "zero"


class Strategy(enum.Enum):
    EXHAUSTIVE = "exhaustive"
    GREEDY = "greedy"
    LOCAL = "local"


@dataclass(frozen=True)
class SignPattern:
    """Total sign assignment on the degree-D lattice in n variables."""

    n: int
    D: int
    pos: frozenset
    neg: frozenset

    def __post_init__(self):
        pos = frozenset(tuple(a) for a in self.pos)
        neg = frozenset(tuple(a) for a in self.neg)
        object.__setattr__(self, "pos", pos)
        object.__setattr__(self, "neg", neg)
        if pos & neg:
            raise ValueError("a point cannot be both positive and negative")
        for a in pos | neg:
            if len(a) != self.n or any(x < 0 for x in a) or total_degree(a) != self.D:
                raise ValueError(f"{a} is not a degree-{self.D} point in {self.n} vars")

    def sign(self, alpha: MultiIndex) -> Sign:
        alpha = tuple(alpha)
        if alpha in self.pos:
            return Sign.POS
        if alpha in self.neg:
            return Sign.NEG
        return Sign.ZERO

    @property
    def support(self) -> frozenset:
        return self.pos | self.neg

    def ratio(self) -> Fraction | None:
        if not self.pos:
            return None
        return Fraction(len(self.neg), len(self.pos))

    def canonical(self) -> tuple:
        """Deterministic serialization used for tie-breaking."""
        return (tuple(sorted(self.pos)), tuple(sorted(self.neg)))


def pattern_from_poly(p: RealSparsePoly) -> SignPattern:
    """Sign skeleton of a homogeneous polynomial."""
    if p.is_zero():
        raise ValueError("zero polynomial has no sign pattern")
    if not p.is_homogeneous():
        raise ValueError("sign patterns are defined for homogeneous polynomials")
    pos = frozenset(a for a, c in p.items() if c > 0)
    neg = frozenset(a for a, c in p.items() if c < 0)
    return SignPattern(p.n, p.degree, pos, neg)


def pattern_to_json(pat: SignPattern) -> dict:
    return {
        "n": pat.n,
        "D": pat.D,
        "pos": [list(a) for a in sorted(pat.pos)],
        "neg": [list(a) for a in sorted(pat.neg)],
    }


def pattern_from_json(doc) -> SignPattern:
    import json as _json

    if isinstance(doc, str):
        doc = _json.loads(doc)
    return SignPattern(
        int(doc["n"]),
        int(doc["D"]),
        frozenset(tuple(int(x) for x in a) for a in doc.get("pos", [])),
        frozenset(tuple(int(x) for x in a) for a in doc.get("neg", [])),
    )


def _negative_inflow(signs_neg, n: int, d: int) -> dict:
    """Multinomial-weighted negative mass arriving at each product monomial."""
    deltas = [(delta, multinomial(d, delta)) for delta in compositions(d, n)]
    inflow: dict = {}
    for alpha in signs_neg:
        for delta, w in deltas:
            key = add_index(alpha, delta)
            inflow[key] = inflow.get(key, 0) + w
    return inflow


def support_feasible(pat: SignPattern, d: int):
    """(True, None) or (False, witness) for the covering condition at power d.

    A product monomial witnesses infeasibility when its contributor set
    meets the negative support but not the positive one.
    """
    if d < 1:
        raise ValueError("power must be >= 1")
    deltas = list(compositions(d, pat.n))
    pos = pat.pos
    for A in sorted(_negative_inflow(pat.neg, pat.n, d)):
        covered = False
        for delta in deltas:
            cand = tuple(a - b for a, b in zip(A, delta))
            if min(cand) >= 0 and cand in pos:
                covered = True
                break
        if not covered:
            return False, A
    return True, None


def realize_signs(signs: dict, n: int, d: int) -> RealSparsePoly:
    """Realize a raw sign map (point -> +1/-1) with the uniform magnitude policy.

    Negative points get coefficient -1; positive points get
    M = 1 + (largest multinomial-weighted negative mass into any product
    monomial), which is enough for every covered product coefficient to come
    out positive.
    """
    neg = [a for a, s in signs.items() if s < 0]
    inflow = _negative_inflow(neg, n, d)
    M = 1 + max(inflow.values(), default=0)
    terms = {
        a: (Fraction(M) if s > 0 else Fraction(-1)) for a, s in signs.items() if s
    }
    return RealSparsePoly(n, terms)


def realize_magnitudes(pat: SignPattern, d: int) -> RealSparsePoly:
    """Exact class member with the pattern's signs, or Infeasible."""
    ok, witness = support_feasible(pat, d)
    if not ok:
        raise Infeasible(f"no realization exists; uncovered product monomial {witness}")
    signs = {a: 1 for a in pat.pos}
    signs.update({a: -1 for a in pat.neg})
    return realize_signs(signs, pat.n, d)


@dataclass(frozen=True)
class SearchResult:
    best: SignPattern
    ratio: Fraction
    evaluations: int
    strategy: Strategy
    realized: RealSparsePoly


def _pattern_on_support(n, D, support, pos_set):
    pos = frozenset(pos_set)
    neg = frozenset(support) - pos
    return SignPattern(n, D, pos, neg)


def search_max_ratio(
    n: int,
    D: int,
    d: int,
    strategy: Strategy = Strategy.EXHAUSTIVE,
    budget: int = 200_000,
    seed: int = 0,
    support=None,
) -> SearchResult:
    """Hunt for the feasible sign pattern maximizing N-/N+ at fixed (n, D, d).

    EXHAUSTIVE enumerates POS/NEG assignments over the given support (or the
    whole lattice when it is small enough) and is optimal over that space.
    GREEDY flips positives to negatives one at a time.  LOCAL runs
    steepest-ascent over single-point sign changes plus whole-pattern lattice
    shifts, restarting from seeded perturbations of a known-good pattern.
    """
    if isinstance(strategy, str):
        strategy = Strategy(strategy.lower())
    lattice = monomials_of_degree(n, D)
    if support is None:
        support = lattice
        if strategy is Strategy.EXHAUSTIVE and len(lattice) > EXHAUSTIVE_POINT_CAP:
            raise ExplicitLimit(
                f"exhaustive search needs <= {EXHAUSTIVE_POINT_CAP} lattice points; "
                f"got {len(lattice)}; pass an explicit support restriction"
            )
    support = sorted(tuple(a) for a in support)
    if len(set(support)) != len(support):
        raise ValueError("support has duplicates")
    lattice_set = set(lattice)
    for a in support:
        if a not in lattice_set:
            raise ValueError(f"support point {a} is not on the degree-{D} lattice")
    if strategy is Strategy.EXHAUSTIVE and len(support) > EXHAUSTIVE_POINT_CAP:
        raise ExplicitLimit(
            f"exhaustive search needs <= {EXHAUSTIVE_POINT_CAP} support points"
        )

    if strategy is Strategy.EXHAUSTIVE:
        return _search_exhaustive(n, D, d, support)
    if strategy is Strategy.GREEDY:
        return _search_greedy(n, D, d, support, budget)
    return _search_local(n, D, d, support, budget, seed)


def _finish(n, D, d, best, evals, strategy):
    ratio = best.ratio() if best.pos else Fraction(0)
    realized = realize_magnitudes(best, d)
    return SearchResult(best, ratio, evals, strategy, realized)


def _search_exhaustive(n, D, d, support):
    # Fewer positives means a larger ratio, so scan positive-set sizes
    # upward and stop at the first size admitting a feasible pattern.
    evals = 0
    for p_count in range(1, len(support) + 1):
        for pos_set in combinations(support, p_count):
            pat = _pattern_on_support(n, D, support, pos_set)
            evals += 1
            ok, _ = support_feasible(pat, d)
            if ok:
                return _finish(n, D, d, pat, evals, Strategy.EXHAUSTIVE)
    raise Infeasible("no feasible pattern over the given support")


def _search_greedy(n, D, d, support, budget):
    current = _pattern_on_support(n, D, support, support)  # all positive
    evals = 0
    improved = True
    while improved:
        improved = False
        for point in sorted(current.pos):
            if len(current.pos) == 1:
                break
            cand = SignPattern(
                n, D, current.pos - {point}, current.neg | {point}
            )
            if evals >= budget:
                raise BudgetExhausted(
                    f"greedy search stopped after {evals} evaluations",
                    best=_finish(n, D, d, current, evals, Strategy.GREEDY),
                )
            evals += 1
            ok, _ = support_feasible(cand, d)
            if ok:
                current = cand
                improved = True
                break
    return _finish(n, D, d, current, evals, Strategy.GREEDY)


def _shift_pattern(pat: SignPattern, i: int, j: int):
    """Translate every support point by e_i - e_j; points leaving the lattice drop to ZERO."""
    def move(points):
        out = set()
        for a in points:
            b = list(a)
            b[i] += 1
            b[j] -= 1
            if b[j] >= 0:
                out.add(tuple(b))
        return frozenset(out)

    return SignPattern(pat.n, pat.D, move(pat.pos), move(pat.neg))


def _local_neighbors(pat: SignPattern, lattice):
    for point in lattice:
        s = pat.sign(point)
        others = [x for x in (Sign.POS, Sign.NEG, Sign.ZERO) if x is not s]
        for t in others:
            pos, neg = set(pat.pos), set(pat.neg)
            pos.discard(point)
            neg.discard(point)
            if t is Sign.POS:
                pos.add(point)
            elif t is Sign.NEG:
                neg.add(point)
            yield SignPattern(pat.n, pat.D, frozenset(pos), frozenset(neg))
    for i in range(pat.n):
        for j in range(pat.n):
            if i != j:
                yield _shift_pattern(pat, i, j)


def _search_local(n, D, d, support, budget, seed):
    import random

    from .generators import generate_pD

    rng = random.Random(seed)
    lattice = monomials_of_degree(n, D)
    support_set = set(support)

    base = pattern_from_poly(generate_pD(n, D))
    base = SignPattern(
        n, D, base.pos & support_set, base.neg & support_set
    )
    starts = [base]
    for _ in range(2):
        pos, neg = set(base.pos), set(base.neg)
        for point in rng.sample(sorted(support_set), max(1, len(support_set) // 4)):
            choice = rng.choice(("pos", "neg", "zero"))
            pos.discard(point)
            neg.discard(point)
            if choice == "pos":
                pos.add(point)
            elif choice == "neg":
                neg.add(point)
        starts.append(SignPattern(n, D, frozenset(pos), frozenset(neg)))

    evals = 0
    best = None

    def score(pat):
        nonlocal evals
        evals += 1
        if evals > budget:
            raise _Budget()
        if not pat.pos:
            return None
        ok, _ = support_feasible(pat, d)
        if not ok:
            return None
        return pat.ratio()

    class _Budget(Exception):
        pass

    try:
        for start in starts:
            current = start
            cur_score = score(current)
            if cur_score is None:
                current = _pattern_on_support(n, D, support, support)
                cur_score = score(current)
            while True:
                candidates = []
                for nb in _local_neighbors(current, lattice):
                    sc = score(nb)
                    if sc is not None and sc > cur_score:
                        candidates.append((sc, nb.canonical(), nb))
                if not candidates:
                    break
                candidates.sort(key=lambda t: (-t[0], t[1]))
                _, _, current = candidates[0]
                cur_score = current.ratio()
            if best is None or (cur_score, current.canonical()) > (
                best.ratio(),
                best.canonical(),
            ):
                best = current
    except _Budget:
        if best is None:
            raise BudgetExhausted(f"local search exhausted {budget} evaluations")
        raise BudgetExhausted(
            f"local search exhausted {budget} evaluations",
            best=_finish(n, D, d, best, evals, Strategy.LOCAL),
        )
    return _finish(n, D, d, best, evals, Strategy.LOCAL)
