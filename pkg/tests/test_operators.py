import itertools

import numpy as np
import pytest

from eigenlogic.formula import (
    FALSE,
    TRUE,
    And,
    Implies,
    Not,
    Or,
    Var,
    VariableOrder,
    parse,
    truth_table,
)
from eigenlogic.operators import (
    TOL_OP,
    DiagonalProjector,
    complement,
    compile_formula,
    dense_kron_elementary,
    dense_to_pairs,
    elementary,
    identity,
    implies,
    join,
    meet,
    to_dense,
    verify_projector,
    zero,
)

P = DiagonalProjector.from_bits


class TestElementary:
    def test_first_variable(self):
        assert elementary(0, 2) == P("0011")

    def test_second_variable(self):
        assert elementary(1, 2) == P("0101")

    def test_single_qubit(self):
        assert elementary(0, 1) == P("01")

    @pytest.mark.parametrize("i, n", [(2, 2), (-1, 2), (0, 0), (0, 21)])
    def test_out_of_range(self, i, n):
        with pytest.raises((IndexError, ValueError)):
            elementary(i, n)


class TestProjector:
    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            DiagonalProjector(np.array([0, 2]))

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError):
            P("011")

    def test_immutable(self):
        p = P("0011")
        with pytest.raises(ValueError):
            p.diagonal[0] = 1

    def test_serialization_round_trip(self):
        p = P("1101")
        assert p.serialize() == "dim=4;diag=1101"
        assert DiagonalProjector.parse("dim=4;diag=1101") == p

    @pytest.mark.parametrize("text", ["dim=4;diag=110", "dim=4;diag=11012", "diag=1101"])
    def test_bad_serialization(self, text):
        with pytest.raises(ValueError):
            DiagonalProjector.parse(text)


class TestCompile:
    def test_implication(self):
        assert compile_formula(parse("A -> B"), "A,B") == P("1101")

    def test_conjunction(self):
        assert compile_formula(parse("A & B"), "A,B") == P("0001")

    def test_tautology_is_identity(self):
        assert compile_formula(parse("1"), "A,B") == identity(2)

    def test_contradiction_is_zero(self):
        assert compile_formula(parse("A & !A"), "A,B") == zero(2)

    def test_missing_variable(self):
        with pytest.raises(ValueError):
            compile_formula(parse("C"), "A,B")


class TestAlgebra:
    a, b = P("0011"), P("0101")

    def test_meet(self):
        assert meet(self.a, self.b) == P("0001")
        assert meet(self.a, identity(2)) == self.a
        assert meet(self.a, self.a) == self.a

    def test_join(self):
        assert join(self.a, self.b) == P("0111")
        assert join(self.a, zero(2)) == self.a
        assert join(self.a, complement(self.a)) == identity(2)

    def test_complement(self):
        assert complement(self.a) == P("1100")
        assert complement(identity(2)) == zero(2)
        assert complement(complement(self.b)) == self.b

    def test_implies(self):
        assert implies(self.a, self.b) == P("1101")
        assert implies(self.a, self.a) == identity(2)
        assert implies(identity(2), self.b) == self.b
        assert implies(self.a, self.b) == join(complement(self.a), meet(self.a, self.b))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension"):
            meet(self.a, P("01"))

    def test_operator_sugar(self):
        assert (self.a & self.b) == meet(self.a, self.b)
        assert (self.a | self.b) == join(self.a, self.b)
        assert ~self.a == complement(self.a)


def _formulas_depth(depth, leaves):
    if depth == 0:
        return list(leaves)
    smaller = _formulas_depth(depth - 1, leaves)
    out = list(smaller)
    out += [Not(f) for f in smaller]
    for kind in (And, Or, Implies):
        out += [kind(f, g) for f, g in itertools.product(smaller, smaller)]
    return out


def connective_formula(column, names=("A", "B")):
    """DNF formula whose truth-table column is ``column``."""
    n = len(names)
    terms = []
    for r, bit in enumerate(column):
        if bit:
            lits = [Var(v) if (r >> (n - 1 - i)) & 1 else Not(Var(v)) for i, v in enumerate(names)]
            term = lits[0]
            for lit in lits[1:]:
                term = And(term, lit)
            terms.append(term)
    if not terms:
        return FALSE
    out = terms[0]
    for t in terms[1:]:
        out = Or(out, t)
    return out


ALL_CONNECTIVES = [connective_formula(c) for c in itertools.product((0, 1), repeat=4)]


def test_connective_formulas_cover_all_columns():
    columns = {truth_table(f, "A,B").bits for f in ALL_CONNECTIVES}
    assert len(columns) == 16


def test_homomorphism_exhaustive():
    """compile(f op g) equals the projector algebra applied to compile(f), compile(g)."""
    order = VariableOrder("A,B")
    ops = {And: meet, Or: join, Implies: implies}
    # all depth-1 formulas plus one representative of each of the 16 columns
    operands = _formulas_depth(1, [Var("A"), Var("B"), TRUE, FALSE]) + ALL_CONNECTIVES
    compiled = [compile_formula(f, order) for f in operands]
    for f, pf in zip(operands, compiled):
        assert compile_formula(Not(f), order) == complement(pf)
        for g, pg in zip(operands, compiled):
            for kind, op in ops.items():
                assert compile_formula(kind(f, g), order) == op(pf, pg)


class TestDenseOracle:
    def test_to_dense(self):
        np.testing.assert_array_equal(to_dense(P("01")), [[0, 0], [0, 1]])
        np.testing.assert_array_equal(to_dense(identity(2)), np.eye(4))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_kron_matches_diagonal(self, n):
        for i in range(n):
            m = dense_kron_elementary(i, n)
            assert np.max(np.abs(m - to_dense(elementary(i, n)))) <= TOL_OP

    def test_kron_elements_commute(self):
        a, b = dense_kron_elementary(0, 2), dense_kron_elementary(1, 2)
        assert np.max(np.abs(a @ b - b @ a)) <= TOL_OP

    def test_connective_polynomials(self):
        a, b = dense_kron_elementary(0, 2), dense_kron_elementary(1, 2)
        eye = np.eye(4)
        order = "A,B"
        cases = {
            "A & B": a @ b,
            "A | B": a + b - a @ b,
            "A -> B": eye - a + a @ b,
            "B -> A": eye - b + b @ a,
            "!A": eye - a,
        }
        for text, dense in cases.items():
            assert np.max(np.abs(dense - to_dense(compile_formula(parse(text), order)))) <= TOL_OP
            assert verify_projector(dense)

    def test_verify_projector(self):
        assert verify_projector(to_dense(compile_formula(parse("A -> B"), "A,B")))
        assert not verify_projector(np.array([[0, 1], [0, 0]]))
        assert not verify_projector(0.5 * np.eye(2))
        with pytest.raises(ValueError):
            verify_projector(np.zeros((2, 3)))

    def test_dense_cap(self):
        with pytest.raises(ValueError):
            dense_kron_elementary(0, 11)

    def test_dense_to_pairs(self):
        assert dense_to_pairs(to_dense(P("01"))) == [[[0.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]
