import random

import numpy as np
import pytest
from hypothesis import strategies as st

from eigenlogic.formula import (
    FALSE,
    TRUE,
    And,
    ConverseImplies,
    Iff,
    Implies,
    Not,
    Or,
    Var,
    Xor,
)

BINARY = (And, Or, Xor, Implies, ConverseImplies, Iff)
NAMES = ("A", "B", "C", "D")

ACCEPTANCE_LINES = []


def random_formula(rng: random.Random, names=NAMES, depth=6):
    """Random formula tree of depth at most ``depth`` over ``names``."""
    if depth == 0 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.08:
            return TRUE if rng.random() < 0.5 else FALSE
        return Var(rng.choice(names))
    if rng.random() < 0.2:
        return Not(random_formula(rng, names, depth - 1))
    kind = rng.choice(BINARY)
    return kind(random_formula(rng, names, depth - 1), random_formula(rng, names, depth - 1))


def formulas(names=NAMES, max_leaves=12):
    leaves = st.one_of(st.sampled_from([Var(n) for n in names]), st.sampled_from([TRUE, FALSE]))
    return st.recursive(
        leaves,
        lambda children: st.one_of(
            children.map(Not),
            st.tuples(st.sampled_from(BINARY), children, children).map(lambda t: t[0](t[1], t[2])),
        ),
        max_leaves=max_leaves,
    )


def random_state_amplitudes(rng: np.random.Generator, n: int) -> np.ndarray:
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return amps / np.linalg.norm(amps)


def random_weights(rng: np.random.Generator, d: int, sparsity: float = 0.3) -> np.ndarray:
    w = rng.random(d)
    w[rng.random(d) < sparsity] = 0.0
    if not w.any():
        w[rng.integers(d)] = 1.0
    return w / w.sum()


@pytest.fixture
def rng():
    return np.random.default_rng(20250207)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
