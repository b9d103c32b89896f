"""Born-rule measurement of Eigenlogic projectors.

For a pair of commuting projectors ``A``, ``B`` a state splits into four
orthogonal pieces

    psi_00 = (I-A)(I-B) psi    psi_01 = (I-A) B psi
    psi_10 = A (I-B) psi       psi_11 = A B psi

whose squared norms ``w_ij`` determine every probability of the pair.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .operators import DiagonalProjector, complement, implies, join, meet
from .states import StateVector

__all__ = [
    "TOL_NUM",
    "born_mean",
    "ProbabilityBundle",
    "DecompositionWeights",
    "Decomposition",
    "probability_bundle",
    "decompose",
    "probabilities_from_weights",
    "bundle_report",
    "format_probability",
]

TOL_NUM = 1e-10


def born_mean(s: StateVector, p: DiagonalProjector) -> float:
    """``<psi|P|psi> = sum_r diag_r |c_r|**2``, summed exactly then rounded once."""
    if s.dim != p.dim:
        raise ValueError(f"dimension mismatch: state {s.dim} vs projector {p.dim}")
    probs = s.probabilities
    return math.fsum(probs[p.diagonal.astype(bool)])


@dataclass(frozen=True)
class ProbabilityBundle:
    pA: float
    pB: float
    pAnd: float
    pOr: float
    pImp: float
    pConv: float

    @property
    def pA_pImp(self) -> float:
        return self.pA * self.pImp

    @property
    def pB_pConv(self) -> float:
        return self.pB * self.pConv

    def table_row(self) -> tuple[float, ...]:
        """P(A), P(B), P(A->B), P(B->A), P(A)P(A->B), P(B)P(B->A), P(A and B)."""
        return (self.pA, self.pB, self.pImp, self.pConv, self.pA_pImp, self.pB_pConv, self.pAnd)

    def check(self, tol: float = TOL_NUM) -> None:
        """Raise ``ValueError`` if a bundle invariant is violated."""
        for name, v in asdict(self).items():
            if not -tol <= v <= 1 + tol:
                raise ValueError(f"{name}={v!r} outside [0, 1]")
        if abs(self.pOr - (self.pA + self.pB - self.pAnd)) > tol:
            raise ValueError("pOr != pA + pB - pAnd")
        one_plus = 1 + self.pAnd
        if abs(self.pA + self.pImp - one_plus) > tol or abs(self.pB + self.pConv - one_plus) > tol:
            raise ValueError("linear relation pA + pImp = pB + pConv = 1 + pAnd violated")


@dataclass(frozen=True)
class DecompositionWeights:
    w00: float
    w01: float
    w10: float
    w11: float

    def __post_init__(self):
        for name, v in self.as_dict().items():
            if not math.isfinite(v) or v < -TOL_NUM:
                raise ValueError(f"weight {name}={v!r} must be nonnegative")

    def as_dict(self) -> dict[str, float]:
        return {"w00": self.w00, "w01": self.w01, "w10": self.w10, "w11": self.w11}

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.w00, self.w01, self.w10, self.w11)

    @property
    def total(self) -> float:
        return math.fsum(self.as_tuple())


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Unnormalized components ``psi_00, psi_01, psi_10, psi_11`` and their weights."""

    components: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]
    weights: DecompositionWeights

    def __iter__(self):
        # allows ``components, weights = decompose(...)``
        yield self.components
        yield self.weights


def probability_bundle(
    s: StateVector, a: DiagonalProjector, b: DiagonalProjector
) -> ProbabilityBundle:
    """Born means of ``A``, ``B``, ``AB``, ``A+B-AB``, ``I-A+AB`` and ``I-B+BA``."""
    return ProbabilityBundle(
        pA=born_mean(s, a),
        pB=born_mean(s, b),
        pAnd=born_mean(s, meet(a, b)),
        pOr=born_mean(s, join(a, b)),
        pImp=born_mean(s, implies(a, b)),
        pConv=born_mean(s, implies(b, a)),
    )


def decompose(s: StateVector, a: DiagonalProjector, b: DiagonalProjector) -> Decomposition:
    if not s.dim == a.dim == b.dim:
        raise ValueError(f"dimension mismatch: state {s.dim}, A {a.dim}, B {b.dim}")
    not_a, not_b = complement(a), complement(b)
    parts = (meet(not_a, not_b), meet(not_a, b), meet(a, not_b), meet(a, b))
    amps = s.amplitudes
    components = []
    weights = []
    for proj in parts:
        comp = amps * proj.diagonal
        comp.flags.writeable = False
        components.append(comp)
        weights.append(math.fsum(np.abs(comp) ** 2))
    return Decomposition(tuple(components), DecompositionWeights(*weights))


def probabilities_from_weights(
    w: DecompositionWeights, tol: float = TOL_NUM
) -> ProbabilityBundle:
    """Probabilities of the pair from the four squared norms alone."""
    if abs(w.total - 1.0) > tol:
        raise ValueError(f"weights sum to {w.total!r}, expected 1")
    return ProbabilityBundle(
        pA=w.w10 + w.w11,
        pB=w.w01 + w.w11,
        pAnd=w.w11,
        pOr=1 - w.w00,
        pImp=1 - w.w10,
        pConv=1 - w.w01,
    )


def format_probability(x: float) -> float:
    """Round to 12 significant digits for reports."""
    return float(f"{x:.12g}")


def bundle_report(
    bundle: ProbabilityBundle, weights: DecompositionWeights | None = None, state=None
) -> dict:
    report = {"state": state}
    report.update({k: format_probability(v) for k, v in asdict(bundle).items()})
    if weights is not None:
        report["weights"] = [format_probability(v) for v in weights.as_tuple()]
    return report
