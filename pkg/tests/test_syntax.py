import pytest
from hypothesis import given

from pkrkit.errors import ParseError
from pkrkit.pools import lunch_formula
from pkrkit.syntax import (
    FALSE, TRUE, And, Clause, Iff, Implies, KnowledgeBase, Not, Or, Var, atoms_of, conj, disj, negate,
    parse_formula, size, substitute, to_text,
)

from strategies import formulas, knowledge_bases


class TestParser:
    def test_precedence(self):
        p, q, r = Var("p"), Var("q"), Var("r")
        assert parse_formula("p | q & r") == Or(p, And(q, r))
        assert parse_formula("~p & q") == And(Not(p), q)
        assert parse_formula("p -> q <-> r") == Iff(Implies(p, q), r)
        assert parse_formula("p | q -> r") == Implies(Or(p, q), r)

    def test_implication_is_right_associative(self):
        p, q, r = Var("p"), Var("q"), Var("r")
        assert parse_formula("p -> q -> r") == Implies(p, Implies(q, r))

    def test_and_or_are_left_associative(self):
        p, q, r = Var("p"), Var("q"), Var("r")
        assert parse_formula("p & q & r") == And(And(p, q), r)
        assert parse_formula("p | q | r") == Or(Or(p, q), r)

    def test_constants_and_parentheses(self):
        assert parse_formula("true") == TRUE
        assert parse_formula("(false)") == FALSE
        assert parse_formula("~(p | q)") == Not(Or(Var("p"), Var("q")))

    @pytest.mark.parametrize("text,column", [
        ("p &", 4),
        ("p q", 3),
        ("(p | q", 7),
        ("p $ q", 3),
        ("P", 1),
    ])
    def test_errors_carry_column(self, text, column):
        with pytest.raises(ParseError) as info:
            parse_formula(text, line=7)
        assert info.value.line == 7
        assert info.value.column == column

    def test_column_offset(self):
        with pytest.raises(ParseError) as info:
            parse_formula("p &", line=2, column_offset=10)
        assert info.value.column == 14

    def test_invalid_atom_names(self):
        with pytest.raises(ValueError):
            Var("Upper")
        with pytest.raises(ValueError):
            Var("true")


class TestPrinter:
    def test_minimal_parentheses(self, f):
        assert to_text(f("(p | q) & r")) == "(p | q) & r"
        assert to_text(f("p | (q & r)")) == "p | q & r"
        assert to_text(f("(p -> q) -> r")) == "(p -> q) -> r"
        assert to_text(f("p -> (q -> r)")) == "p -> q -> r"
        assert to_text(f("p & (q & r)")) == "p & (q & r)"
        assert to_text(f("~~p")) == "~~p"

    @given(formulas())
    def test_round_trip(self, phi):
        assert parse_formula(to_text(phi)) == phi


class TestSize:
    def test_examples(self, f):
        assert size(Var("p")) == 1
        assert size(f("~~monday")) == 3
        # clause sizes 3 + 5 + 3 + 5 plus one node per conjunction
        assert size(lunch_formula()) == 19

    def test_collections(self, f, kb):
        assert size(kb("p", "q | r")) == 1 + 3 + 2
        assert size(KnowledgeBase()) == 0
        assert size((Var("p"), Var("q"))) == 4

    @given(knowledge_bases())
    def test_additive_over_members(self, k):
        assert size(k) == sum(size(phi) for phi in k) + len(k)
        assert all(size(phi) > 0 for phi in k)


class TestHelpers:
    def test_conj_disj_fold(self):
        p, q = Var("p"), Var("q")
        assert conj([]) == TRUE
        assert disj([]) == FALSE
        assert conj([p, q]) == And(p, q)
        assert disj([p]) == p

    def test_negate_cancels_outer_negation(self):
        assert negate(Not(Var("p"))) == Var("p")
        assert negate(Var("p")) == Not(Var("p"))

    def test_atoms_first_occurrence_order(self, f):
        assert atoms_of(f("r & (p | r) -> q")) == ("r", "p", "q")

    def test_substitute(self, f):
        assert substitute(f("p & ~q"), {"p": "a"}) == f("a & ~q")

    def test_operators(self):
        p, q = Var("p"), Var("q")
        assert (p & q) == And(p, q)
        assert (p | ~q) == Or(p, Not(q))
        assert (p >> q) == Implies(p, q)

    def test_clause(self):
        c = Clause((("p", False), ("q", True)))
        assert str(c) == "-p q"
        assert c.to_formula() == Or(Not(Var("p")), Var("q"))
        assert not c.is_positive
        assert c.variables == ("p", "q")


class TestKnowledgeBase:
    def test_alphabet_normalisation(self, kb):
        k = kb("q | z", atoms="p q")
        assert k.atoms == ("p", "q", "z")

    def test_duplicate_alphabet_rejected(self):
        with pytest.raises(ValueError):
            KnowledgeBase((), ("p", "p"))

    def test_multiset(self, kb):
        k = kb("p", "p")
        assert len(k) == 2
