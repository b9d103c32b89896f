"""Eigenlogic projection operators.

Every proposition built from commuting elementary projectors is diagonal in
the computational basis, so a projector is stored as its 0/1 diagonal (the
truth-table column). Dense matrices exist only as an independent oracle,
assembled from Kronecker products.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .formula import MAX_VARIABLES, Formula, OrderLike, truth_table

__all__ = [
    "DiagonalProjector",
    "elementary",
    "identity",
    "zero",
    "compile_formula",
    "meet",
    "join",
    "complement",
    "implies",
    "to_dense",
    "dense_kron_elementary",
    "verify_projector",
    "dense_to_pairs",
    "TOL_OP",
    "MAX_DENSE_VARIABLES",
]

TOL_OP = 1e-12
MAX_DENSE_VARIABLES = 10

_SERIAL = re.compile(r"dim=(\d+);diag=([01]+)")


def _n_from_dim(dim: int) -> int:
    if dim < 2 or dim & (dim - 1):
        raise ValueError(f"dimension must be a power of two >= 2, got {dim}")
    return dim.bit_length() - 1


@dataclass(frozen=True, eq=False)
class DiagonalProjector:
    """Projector ``diag(d_0, ..., d_{2**n - 1})`` with ``d_r`` in {0, 1}."""

    diagonal: np.ndarray

    def __post_init__(self):
        diag = np.asarray(self.diagonal)
        if diag.ndim != 1:
            raise ValueError("diagonal must be one-dimensional")
        _n_from_dim(len(diag))
        if not np.isin(diag, (0, 1)).all():
            raise ValueError("projector diagonal entries must be 0 or 1")
        diag = diag.astype(np.uint8)
        diag.flags.writeable = False
        object.__setattr__(self, "diagonal", diag)

    @classmethod
    def from_bits(cls, bits) -> "DiagonalProjector":
        if isinstance(bits, str):
            bits = [int(c) for c in bits]
        return cls(np.array(bits, dtype=np.uint8))

    @classmethod
    def parse(cls, text: str) -> "DiagonalProjector":
        """Inverse of :meth:`serialize`."""
        m = _SERIAL.fullmatch(text.strip())
        if not m:
            raise ValueError(f"malformed projector {text!r}; expected dim=<d>;diag=<bits>")
        dim, bits = int(m.group(1)), m.group(2)
        if len(bits) != dim:
            raise ValueError(f"diag has {len(bits)} entries but dim={dim}")
        return cls.from_bits(bits)

    def serialize(self) -> str:
        return f"dim={self.dim};diag={self.bitstring}"

    @property
    def dim(self) -> int:
        return len(self.diagonal)

    @property
    def n(self) -> int:
        return self.dim.bit_length() - 1

    @property
    def bitstring(self) -> str:
        return "".join("1" if v else "0" for v in self.diagonal)

    @property
    def rank(self) -> int:
        return int(self.diagonal.sum())

    def __eq__(self, other):
        if not isinstance(other, DiagonalProjector):
            return NotImplemented
        return np.array_equal(self.diagonal, other.diagonal)

    def __hash__(self):
        return hash(self.diagonal.tobytes())

    def __repr__(self):
        return f"DiagonalProjector({self.serialize()!r})"

    # operator algebra; all products commute
    def __matmul__(self, other: "DiagonalProjector") -> "DiagonalProjector":
        return meet(self, other)

    def __invert__(self) -> "DiagonalProjector":
        return complement(self)

    def __and__(self, other):
        return meet(self, other)

    def __or__(self, other):
        return join(self, other)


def _check_n(n: int, cap: int = MAX_VARIABLES) -> None:
    if not 1 <= n <= cap:
        raise ValueError(f"variable count must be in 1..{cap}, got {n}")


def elementary(i: int, n: int) -> DiagonalProjector:
    """Projector onto the states whose variable ``i`` is true (bit 0 = MSB)."""
    _check_n(n)
    if not 0 <= i < n:
        raise IndexError(f"variable index {i} out of range for n={n}")
    rows = np.arange(1 << n, dtype=np.int64)
    return DiagonalProjector((rows >> (n - 1 - i)) & 1)


def identity(n: int) -> DiagonalProjector:
    _check_n(n)
    return DiagonalProjector(np.ones(1 << n, dtype=np.uint8))


def zero(n: int) -> DiagonalProjector:
    _check_n(n)
    return DiagonalProjector(np.zeros(1 << n, dtype=np.uint8))


def compile_formula(f: Formula, order: OrderLike) -> DiagonalProjector:
    """The Eigenlogic operator of ``f``: its truth-table column as a diagonal."""
    return DiagonalProjector(truth_table(f, order).column)


def _pair(p: DiagonalProjector, q: DiagonalProjector):
    if p.dim != q.dim:
        raise ValueError(f"dimension mismatch: {p.dim} vs {q.dim}")
    return p.diagonal, q.diagonal


def meet(p: DiagonalProjector, q: DiagonalProjector) -> DiagonalProjector:
    """``P Q``, the conjunction."""
    a, b = _pair(p, q)
    return DiagonalProjector(a & b)


def join(p: DiagonalProjector, q: DiagonalProjector) -> DiagonalProjector:
    """``P + Q - P Q``, the disjunction."""
    a, b = _pair(p, q)
    return DiagonalProjector(a | b)


def complement(p: DiagonalProjector) -> DiagonalProjector:
    """``I - P``."""
    return DiagonalProjector(1 - p.diagonal)


def implies(p: DiagonalProjector, q: DiagonalProjector) -> DiagonalProjector:
    """``I - P + P Q``, the material implication."""
    a, b = _pair(p, q)
    return DiagonalProjector(1 - a + (a & b))


def to_dense(p: DiagonalProjector) -> np.ndarray:
    _check_n(p.n, MAX_DENSE_VARIABLES)
    return np.diag(p.diagonal.astype(np.complex128))


_PI1 = np.array([[0, 0], [0, 1]], dtype=np.complex128)
_I2 = np.eye(2, dtype=np.complex128)


def dense_kron_elementary(i: int, n: int) -> np.ndarray:
    """``I x ... x |1><1| x ... x I`` with the projector in slot ``i``."""
    _check_n(n, MAX_DENSE_VARIABLES)
    if not 0 <= i < n:
        raise IndexError(f"variable index {i} out of range for n={n}")
    out = np.ones((1, 1), dtype=np.complex128)
    for k in range(n):
        out = np.kron(out, _PI1 if k == i else _I2)
    return out


def verify_projector(m: np.ndarray, tol: float = TOL_OP) -> bool:
    """True iff ``m`` is Hermitian and idempotent within ``tol`` (max-norm)."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if np.max(np.abs(m - m.conj().T)) > tol:
        return False
    return bool(np.max(np.abs(m @ m - m)) <= tol)


def dense_to_pairs(m: np.ndarray) -> list[list[list[float]]]:
    """Row-major nested lists of ``[re, im]`` pairs, for JSON reports."""
    m = np.asarray(m, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]
