"""Classical probabilistic inference and the quantum-like Bayes conditions.

Classical side: a probability space weights the ``2**n`` truth-table rows; an
event is a formula. Quantum side: for a state and two commuting projectors the
Bayes-like equalities ``P(B|A) = P(A->B)`` and ``P(A|B) = P(B->A)`` reduce to

    w10 * (1 - (w10 + w11)) = 0    and    w01 * (1 - (w01 + w11)) = 0

in terms of the decomposition weights of :mod:`eigenlogic.born`.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .born import (
    TOL_NUM,
    DecompositionWeights,
    ProbabilityBundle,
    decompose,
    format_probability,
    probabilities_from_weights,
    probability_bundle,
)
from .formula import FALSE, And, Formula, Implies, Or, OrderLike, VariableOrder, truth_table
from .operators import DiagonalProjector
from .states import StateVector

__all__ = [
    "TOL_ZERO",
    "TOL_CLASSIFY",
    "MAX_EVENTS",
    "ZeroPriorError",
    "ZeroDenominatorError",
    "SpaceError",
    "ProbabilitySpace",
    "event_probability",
    "conditional",
    "implication_probability",
    "alpha_implication",
    "linear_relation_residuals",
    "inclusion_exclusion",
    "PairBounds",
    "Bounds",
    "probability_bounds",
    "BayesCase",
    "BayesReport",
    "classify_case",
    "quantum_bayes_check",
]

TOL_ZERO = 1e-12
TOL_CLASSIFY = 1e-9
MAX_EVENTS = 12


class ZeroPriorError(ZeroDivisionError):
    """Conditioning on an event of probability zero."""


class ZeroDenominatorError(ZeroDivisionError):
    """The alpha-interpolated implication has a vanishing denominator."""


class SpaceError(ValueError):
    """Malformed probability space."""


@dataclass(frozen=True, eq=False)
class ProbabilitySpace:
    """Weights over the truth-table rows of ``order`` (first variable = MSB)."""

    order: VariableOrder
    weights: np.ndarray

    def __post_init__(self):
        order = self.order if isinstance(self.order, VariableOrder) else VariableOrder(self.order)
        w = np.array(self.weights, dtype=float)
        if not order:
            raise SpaceError("a probability space needs at least one variable")
        if w.shape != (1 << len(order),):
            raise SpaceError(f"expected {1 << len(order)} weights for {len(order)} variables, got {w.shape}")
        if not np.isfinite(w).all() or (w < 0).any():
            raise SpaceError("weights must be finite and nonnegative")
        if abs(math.fsum(w) - 1.0) > TOL_NUM:
            raise SpaceError(f"weights sum to {math.fsum(w)!r}, expected 1")
        w.flags.writeable = False
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, order: OrderLike) -> "ProbabilitySpace":
        order = VariableOrder(order)
        d = 1 << len(order)
        return cls(order, np.full(d, 1.0 / d))

    @classmethod
    def point_mass(cls, order: OrderLike, bits: str) -> "ProbabilitySpace":
        order = VariableOrder(order)
        w = np.zeros(1 << len(order))
        w[int(bits, 2)] = 1.0
        return cls(order, w)

    @classmethod
    def from_json(cls, obj) -> "ProbabilitySpace":
        """Decode ``{"order": ["A", "B"], "weights": [w00, w01, w10, w11]}``."""
        if not isinstance(obj, dict) or "order" not in obj or "weights" not in obj:
            raise SpaceError("space JSON must have 'order' and 'weights'")
        try:
            return cls(VariableOrder(obj["order"]), obj["weights"])
        except (TypeError, ValueError) as exc:
            raise SpaceError(str(exc)) from None

    @classmethod
    def load(cls, path) -> "ProbabilitySpace":
        try:
            obj = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise SpaceError(f"cannot read space file {path}: {exc}") from None
        return cls.from_json(obj)

    def to_json(self) -> dict:
        return {"order": list(self.order), "weights": self.weights.tolist()}

    def amplitudes(self) -> np.ndarray:
        """Square roots of the weights: the diagonal state reproducing this space."""
        return np.sqrt(self.weights)


def event_probability(sp: ProbabilitySpace, f: Formula) -> float:
    """Total weight of the rows on which ``f`` is true."""
    column = truth_table(f, sp.order).column.astype(bool)
    return math.fsum(sp.weights[column])


def conditional(sp: ProbabilitySpace, given: Formula, target: Formula) -> float:
    """``P(target | given)``; raises :class:`ZeroPriorError` if ``P(given)`` is ~0."""
    prior = event_probability(sp, given)
    if prior <= TOL_ZERO:
        raise ZeroPriorError(f"P({given}) = {prior!r}; conditional undefined")
    return event_probability(sp, And(given, target)) / prior


def implication_probability(sp: ProbabilitySpace, a: Formula, b: Formula) -> float:
    """``P(A -> B)`` by direct enumeration (equals ``1 - P(A) + P(A and B)``)."""
    return event_probability(sp, Implies(a, b))


def alpha_implication(pA: float, pAnd: float, alpha: float) -> float:
    """Interpolate between ``P(B|A)`` (alpha=0) and ``P(A->B)`` (alpha=1).

    ``(pAnd + alpha (1 - pA)) / (pA + alpha (1 - pA))``.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    if pAnd > pA + TOL_NUM:
        raise ValueError(f"P(A and B)={pAnd!r} exceeds P(A)={pA!r}")
    if alpha == 0:
        if pA <= TOL_ZERO:
            raise ZeroDenominatorError("alpha=0 with P(A)=0: conditional undefined")
        return pAnd / pA
    if alpha == 1:
        return 1 - pA + pAnd
    slack = alpha * (1 - pA)
    denominator = pA + slack
    if denominator <= TOL_ZERO:
        raise ZeroDenominatorError(f"denominator {denominator!r} vanishes")
    return (pAnd + slack) / denominator


def linear_relation_residuals(bundle: ProbabilityBundle) -> tuple[float, float]:
    """``(pA + pImp - 1 - pAnd, pB + pConv - 1 - pAnd)``; no division involved."""
    return (
        bundle.pA + bundle.pImp - 1 - bundle.pAnd,
        bundle.pB + bundle.pConv - 1 - bundle.pAnd,
    )


def _check_events(events: Sequence[Formula]) -> list[Formula]:
    events = list(events)
    if not events:
        raise ValueError("at least one event required")
    if len(events) > MAX_EVENTS:
        raise ValueError(f"at most {MAX_EVENTS} events supported, got {len(events)}")
    return events


def _event_columns(sp: ProbabilitySpace, events: Sequence[Formula]) -> list[np.ndarray]:
    return [truth_table(e, sp.order).column.astype(bool) for e in events]


def _intersection_sums(sp: ProbabilitySpace, columns, k: int) -> float:
    """Sum of ``P(A_i1 and ... and A_ik)`` over all ``i1 < ... < ik``."""
    terms = []
    for combo in itertools.combinations(columns, k):
        mask = np.logical_and.reduce(combo)
        terms.append(math.fsum(sp.weights[mask]))
    return math.fsum(terms)


def inclusion_exclusion(sp: ProbabilitySpace, events: Sequence[Formula]) -> float:
    """``P(A_1 or ... or A_m)`` by the alternating sum over intersections."""
    columns = _event_columns(sp, _check_events(events))
    terms = [
        (-1) ** (k + 1) * _intersection_sums(sp, columns, k)
        for k in range(1, len(columns) + 1)
    ]
    return math.fsum(terms)


@dataclass(frozen=True)
class PairBounds:
    antecedent: int
    consequent: int
    pB: float
    pImp: float
    upper: float  # 1 - P(A) + P(B)


@dataclass(frozen=True)
class Bounds:
    union: float
    boole_upper: float
    bonferroni_lower: float
    pairs: tuple[PairBounds, ...]

    def to_json(self) -> dict:
        return {
            "union": format_probability(self.union),
            "boole_upper": format_probability(self.boole_upper),
            "bonferroni_lower": format_probability(self.bonferroni_lower),
            "pairs": [
                {k: (format_probability(v) if isinstance(v, float) else v) for k, v in asdict(p).items()}
                for p in self.pairs
            ],
        }


def probability_bounds(
    sp: ProbabilitySpace, events: Sequence[Formula], tol: float = TOL_NUM
) -> Bounds:
    """Union probability with its Boole and Bonferroni bounds, plus the
    implication bounds ``P(B) <= P(A->B) <= 1 - P(A) + P(B)`` for every
    ordered pair of distinct events."""
    events = _check_events(events)
    columns = _event_columns(sp, events)
    singles = [math.fsum(sp.weights[c]) for c in columns]
    boole = math.fsum(singles)
    bonferroni = boole - _intersection_sums(sp, columns, 2) if len(columns) > 1 else boole
    union = inclusion_exclusion(sp, events)
    direct = event_probability(sp, _disjunction(events))
    if abs(union - direct) > tol:
        raise ArithmeticError(f"inclusion-exclusion {union!r} != direct union {direct!r}")
    if not bonferroni - tol <= union <= boole + tol:
        raise ArithmeticError("Bonferroni <= union <= Boole violated")

    pairs = []
    for i, j in itertools.permutations(range(len(events)), 2):
        p_imp = math.fsum(sp.weights[~columns[i] | columns[j]])
        upper = 1 - singles[i] + singles[j]
        if not singles[j] - tol <= p_imp <= upper + tol:
            raise ArithmeticError(f"implication bounds violated for events {i}, {j}")
        pairs.append(PairBounds(i, j, singles[j], p_imp, upper))
    return Bounds(union, boole, bonferroni, tuple(pairs))


def _disjunction(events: Sequence[Formula]) -> Formula:
    out: Formula = FALSE
    for e in events:
        out = e if out is FALSE else Or(out, e)
    return out


# ---------------------------------------------------------------------------
# quantum-like Bayes rule
# ---------------------------------------------------------------------------


class BayesCase:
    CASE1 = "case1"  # w10 = w01 = 0, w11 != 0
    CASE2 = "case2"  # w10 = w00 = 0, w01 + w11 = 1, w11 != 0
    CASE3 = "case3"  # w01 = w00 = 0, w10 + w11 = 1, w11 != 0
    CASE4 = "case4"  # w11 = 1
    HOLDS_A_ONLY = "holds_A_only"
    HOLDS_B_ONLY = "holds_B_only"
    FAILS = "fails"
    DEGENERATE = "degenerate"

    SATISFIED = frozenset({CASE1, CASE2, CASE3, CASE4})


def _condition_a(w: DecompositionWeights, tol: float) -> bool:
    # w10 (1 - (w10 + w11)) = 0 holds iff one factor vanishes
    return w.w10 <= tol or abs(1 - (w.w10 + w.w11)) <= tol


def _condition_b(w: DecompositionWeights, tol: float) -> bool:
    return w.w01 <= tol or abs(1 - (w.w01 + w.w11)) <= tol


def classify_case(w: DecompositionWeights, tol: float = TOL_CLASSIFY) -> str:
    """Which of the four sufficient hypotheses (if any) the weights satisfy.

    When both conditions hold: ``degenerate`` if ``P(A)`` or ``P(B)`` is
    zero, otherwise the first of case4, case1, case2, case3 that matches.
    When exactly one holds: ``holds_A_only`` / ``holds_B_only``, even if the
    other side's prior is zero. Otherwise ``fails``.
    """
    ok_a, ok_b = _condition_a(w, tol), _condition_b(w, tol)
    if ok_a and ok_b:
        if w.w10 + w.w11 <= tol or w.w01 + w.w11 <= tol:
            return BayesCase.DEGENERATE
        if abs(w.w11 - 1) <= tol:
            return BayesCase.CASE4
        if w.w10 <= tol and w.w01 <= tol:
            return BayesCase.CASE1
        if w.w10 <= tol and w.w00 <= tol:
            return BayesCase.CASE2
        if w.w01 <= tol and w.w00 <= tol:
            return BayesCase.CASE3
        # unreachable in exact arithmetic: both conditions with nonzero priors
        # force one of the four hypotheses
        raise ArithmeticError(f"inconsistent weights {w.as_tuple()}")
    if ok_a:
        return BayesCase.HOLDS_A_ONLY
    if ok_b:
        return BayesCase.HOLDS_B_ONLY
    return BayesCase.FAILS


@dataclass(frozen=True)
class BayesReport:
    bundle: ProbabilityBundle
    weights: DecompositionWeights
    residualA: float
    residualB: float
    condA_defined: bool
    condB_defined: bool
    conditionalBA: Optional[float]
    conditionalAB: Optional[float]
    case: str

    @property
    def satisfied(self) -> bool:
        return self.case in BayesCase.SATISFIED

    def to_json(self, state=None) -> dict:
        out = {"state": state} if state is not None else {}
        out.update({k: format_probability(v) for k, v in asdict(self.bundle).items()})
        out.update({k: format_probability(v) for k, v in self.weights.as_dict().items()})
        out["residualA"] = format_probability(self.residualA)
        out["residualB"] = format_probability(self.residualB)
        out["conditionalBA"] = (
            None if self.conditionalBA is None else format_probability(self.conditionalBA)
        )
        out["conditionalAB"] = (
            None if self.conditionalAB is None else format_probability(self.conditionalAB)
        )
        out["case"] = self.case
        return out


def quantum_bayes_check(
    s: StateVector,
    a: DiagonalProjector,
    b: DiagonalProjector,
    tol: float = TOL_CLASSIFY,
) -> BayesReport:
    """Test ``P(B|A) = P(A->B)`` and ``P(A|B) = P(B->A)`` in state ``s``."""
    _, w = decompose(s, a, b)
    bundle = probability_bundle(s, a, b)
    from_w = probabilities_from_weights(w)
    residual_a = w.w10 * (1 - (w.w10 + w.w11))
    residual_b = w.w01 * (1 - (w.w01 + w.w11))
    if abs(residual_a - (bundle.pA * bundle.pImp - bundle.pAnd)) > TOL_NUM or abs(
        residual_b - (bundle.pB * bundle.pConv - bundle.pAnd)
    ) > TOL_NUM:
        raise ArithmeticError("closed-form residual disagrees with direct Born means")
    if abs(from_w.pA - bundle.pA) > TOL_NUM or abs(from_w.pImp - bundle.pImp) > TOL_NUM:
        raise ArithmeticError("weights disagree with direct Born means")
    def_a = bundle.pA > TOL_ZERO
    def_b = bundle.pB > TOL_ZERO
    return BayesReport(
        bundle=bundle,
        weights=w,
        residualA=residual_a,
        residualB=residual_b,
        condA_defined=def_a,
        condB_defined=def_b,
        conditionalBA=bundle.pAnd / bundle.pA if def_a else None,
        conditionalAB=bundle.pAnd / bundle.pB if def_b else None,
        case=classify_case(w, tol),
    )
