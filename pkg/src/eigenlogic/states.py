"""Pure quantum states used as probabilistic contexts."""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

__all__ = [
    "StateError",
    "StateVector",
    "BlochAngles",
    "basis_state",
    "single_qubit",
    "tensor",
    "named_state",
    "STATE_NAMES",
    "from_amplitudes",
    "density",
    "equal_up_to_phase",
    "state_from_json",
    "state_to_json",
    "load_state",
    "TOL_NORM",
]

TOL_NORM = 1e-12

_R2 = 1 / math.sqrt(2)


class StateError(ValueError):
    """Invalid state description (bad norm, length, name or file)."""


def _is_pow2(d: int) -> bool:
    return d >= 2 and not d & (d - 1)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Unit vector of ``2**n`` complex amplitudes in row order 00..0, ..., 11..1."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or not _is_pow2(len(amps)):
            raise StateError(f"state length must be a power of two >= 2, got {amps.shape}")
        if not np.isfinite(amps).all():
            raise StateError("state amplitudes must be finite")
        norm2 = math.fsum(np.abs(amps) ** 2)
        if abs(norm2 - 1.0) > TOL_NORM:
            raise StateError(f"state is not normalized: |psi|^2 = {norm2!r}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return len(self.amplitudes)

    @property
    def n(self) -> int:
        return self.dim.bit_length() - 1

    @property
    def probabilities(self) -> np.ndarray:
        """``|c_r|**2`` per basis row."""
        return np.abs(self.amplitudes) ** 2

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return np.array_equal(self.amplitudes, other.amplitudes)

    def __hash__(self):
        return hash(self.amplitudes.tobytes())

    def __repr__(self):
        return f"StateVector({self.amplitudes.tolist()!r})"


@dataclass(frozen=True)
class BlochAngles:
    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise StateError(f"theta must lie in [0, pi], got {self.theta!r}")

    @classmethod
    def from_probability(cls, p: float, phi: float = 0.0) -> "BlochAngles":
        """Angles whose ``|1>`` probability ``sin**2(theta/2)`` equals ``p``."""
        if not 0.0 <= p <= 1.0:
            raise StateError(f"probability must lie in [0, 1], got {p!r}")
        return cls(2 * math.asin(math.sqrt(p)), phi)

    @property
    def p_true(self) -> float:
        return math.sin(self.theta / 2) ** 2


def basis_state(bits: Sequence[int]) -> StateVector:
    """Computational basis state; ``bits[0]`` is the most significant."""
    bits = [int(b) for b in bits]
    if not bits:
        raise StateError("basis state needs at least one bit")
    if any(b not in (0, 1) for b in bits):
        raise StateError(f"bits must be 0 or 1, got {bits}")
    amps = np.zeros(1 << len(bits), dtype=np.complex128)
    amps[int("".join(map(str, bits)), 2)] = 1
    return StateVector(amps)


def single_qubit(angles: BlochAngles) -> StateVector:
    """``cos(theta/2)|0> + exp(i phi) sin(theta/2)|1>``."""
    half = angles.theta / 2
    return StateVector([math.cos(half), cmath.exp(1j * angles.phi) * math.sin(half)])


def tensor(*states: StateVector) -> StateVector:
    """Kronecker product, first factor most significant."""
    if not states:
        raise StateError("tensor of no states")
    amps = states[0].amplitudes
    for s in states[1:]:
        amps = np.kron(amps, s.amplitudes)
    return StateVector(amps)


_ONE_QUBIT = {
    "0": np.array([1, 0], dtype=np.complex128),
    "1": np.array([0, 1], dtype=np.complex128),
    "+": np.array([_R2, _R2], dtype=np.complex128),
    "-": np.array([_R2, -_R2], dtype=np.complex128),
}

_ENTANGLED = {
    "phi+": np.array([_R2, 0, 0, _R2], dtype=np.complex128),
    "phi-": np.array([_R2, 0, 0, -_R2], dtype=np.complex128),
    "psi+": np.array([0, _R2, _R2, 0], dtype=np.complex128),
    "psi-": np.array([0, _R2, -_R2, 0], dtype=np.complex128),
    "cluster": np.array([0.5, 0.5, 0.5, -0.5], dtype=np.complex128),
}

STATE_NAMES = (
    "00", "01", "10", "11",
    "++", "+-", "-+", "--",
    "0+", "+0", "1+", "+1",
    "phi+", "phi-", "psi+", "psi-", "cluster",
)  # fmt: skip


def _canonical_name(name: str) -> str:
    name = name.strip().lower().replace("−", "-")
    for greek, ascii_ in (("φ", "phi"), ("ψ", "psi"), ("|", ""), ("⟩", ""), (">", "")):
        name = name.replace(greek, ascii_)
    return name


def named_state(name: str) -> StateVector:
    """One of the named two-qubit states; see ``STATE_NAMES``.

    Two-character names are tensor products of ``0 1 + -`` one-qubit states
    (so ``"10"`` is ``|10>`` and ``"+-"`` is ``|+->``); ``phi+`` ... ``psi-``
    are the Bell states and ``cluster`` is ``(|00>+|01>+|10>-|11>)/2``.
    """
    key = _canonical_name(name)
    if key in _ENTANGLED:
        return StateVector(_ENTANGLED[key])
    if key in STATE_NAMES:
        signs = np.kron(np.sign(_ONE_QUBIT[key[0]]), np.sign(_ONE_QUBIT[key[1]]))
        # 0.5 ** (k/2) is exact for k = 2, unlike the product of two 1/sqrt(2)
        superposed = sum(c in "+-" for c in key)
        return StateVector(signs * 0.5 ** (superposed / 2))
    raise StateError(f"unknown state name {name!r}; known: {', '.join(STATE_NAMES)}")


def from_amplitudes(values: Sequence[complex], normalize: bool = False) -> StateVector:
    amps = np.array(values, dtype=np.complex128)
    if amps.ndim != 1 or not _is_pow2(len(amps)):
        raise StateError(f"amplitude count must be a power of two >= 2, got {len(amps)}")
    if normalize:
        norm = math.sqrt(math.fsum(np.abs(amps) ** 2))
        if norm == 0:
            raise StateError("cannot normalize the zero vector")
        amps = amps / norm
    return StateVector(amps)


def density(s: StateVector) -> np.ndarray:
    """``|psi><psi|``."""
    return np.outer(s.amplitudes, s.amplitudes.conj())


def equal_up_to_phase(s: StateVector, t: StateVector, tol: float = TOL_NORM) -> bool:
    if s.dim != t.dim:
        return False
    overlap = abs(np.vdot(s.amplitudes, t.amplitudes))
    return abs(overlap - 1.0) <= tol


def state_from_json(obj) -> StateVector:
    """Decode ``{"n": 2, "amplitudes": [[re, im], ...]}`` or ``{"name": "phi+"}``."""
    if not isinstance(obj, dict):
        raise StateError("state JSON must be an object")
    if "name" in obj:
        return named_state(str(obj["name"]))
    if "amplitudes" not in obj:
        raise StateError("state JSON needs 'name' or 'amplitudes'")
    try:
        amps = [complex(float(re), float(im)) for re, im in obj["amplitudes"]]
    except (TypeError, ValueError) as exc:
        raise StateError(f"amplitudes must be [re, im] pairs: {exc}") from None
    if "n" in obj and len(amps) != 1 << int(obj["n"]):
        raise StateError(f"n={obj['n']} but {len(amps)} amplitudes given")
    return from_amplitudes(amps, normalize=bool(obj.get("normalize", False)))


def state_to_json(s: StateVector) -> dict:
    return {
        "n": s.n,
        "amplitudes": [[float(z.real), float(z.imag)] for z in s.amplitudes],
    }


def load_state(path) -> StateVector:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise StateError(f"cannot read state file {path}: {exc}") from None
    return state_from_json(obj)
