import itertools

import pytest
from hypothesis import given

from pkrkit import limits
from pkrkit.circumscription import (
    CircKB, GcwaKB, circ_entails, circ_model_check, circ_models, circ_preferred, gcwa_entails,
    gcwa_free_atoms, gcwa_models, gcwa_rewrite,
)
from pkrkit.errors import CapacityError
from pkrkit.pools import LUNCH, LUNCH_MODELS, lunch_short_formula
from pkrkit.prop import all_interpretations, all_models, entails, evaluate, minimal_models
from pkrkit.syntax import FALSE, TRUE, KnowledgeBase, Not, Var, disj, size

from strategies import formulas, knowledge_bases


@pytest.fixture
def lunch_circ():
    return CircKB(KnowledgeBase((lunch_short_formula(),), LUNCH), minimized=frozenset(LUNCH))


@pytest.fixture
def micro(f):
    """``a <-> p`` with ``a`` minimised and ``p`` varying."""
    return CircKB(KnowledgeBase((f("a <-> p"),)), minimized={"a"}, varying={"p"})


def definitional_free_atoms(kb, include_empty=True):
    """Free atoms by enumerating positive clauses and calling plain entailment."""
    atoms = kb.atoms
    clauses = [g for r in range(0 if include_empty else 1, len(atoms) + 1) for g in itertools.combinations(atoms, r)]
    free = set()
    for a in atoms:
        blocked = any(
            a not in g
            and not entails(kb, disj(Var(x) for x in g))
            and entails(kb, disj(Var(x) for x in g + (a,)))
            for g in clauses
        )
        if not blocked:
            free.add(a)
    return frozenset(free)


class TestPreference:
    def test_examples(self, kb, micro):
        c = CircKB(kb("a"), minimized={"a"})
        assert circ_preferred(frozenset(), {"a"}, c)
        assert not circ_preferred({"a", "p"}, {"a"}, micro)
        assert circ_preferred(frozenset(), {"a", "p"}, micro)

    def test_fixed_atoms_must_agree(self, kb):
        c = CircKB(kb("a | q"), minimized={"a"}, fixed={"q"})
        assert not circ_preferred({"q"}, {"a"}, c)
        assert circ_preferred({"q"}, {"a", "q"}, c)

    def test_strict_partial_order(self, kb):
        c = CircKB(kb("a | b | z", atoms="a b z q"), minimized={"a", "b"}, varying={"z"})
        ms = list(all_interpretations(c.atoms))
        for m in ms:
            assert not circ_preferred(m, m, c)
        for m1, m2, m3 in itertools.product(ms, repeat=3):
            if circ_preferred(m1, m2, c) and circ_preferred(m2, m3, c):
                assert circ_preferred(m1, m3, c)

    def test_groups_must_be_disjoint(self, kb):
        with pytest.raises(ValueError):
            CircKB(kb("p"), minimized={"p"}, varying={"p"})

    def test_unlisted_atoms_are_fixed(self, kb):
        c = CircKB(kb("p | q"), minimized={"p"})
        assert c.effective_fixed == {"q"}


class TestCircumscription:
    def test_lunch(self, lunch_circ):
        assert frozenset(circ_models(lunch_circ)) == LUNCH_MODELS
        assert circ_model_check({"salad", "coke"}, lunch_circ)

    def test_trivial_examples(self, kb, micro):
        assert circ_models(CircKB(KnowledgeBase((TRUE,), ("p",)), minimized={"p"})) == [frozenset()]
        assert circ_models(micro) == [frozenset()]
        assert not circ_model_check(frozenset(), CircKB(kb("p"), minimized={"p"}))
        assert not circ_model_check({"a", "p"}, micro)

    def test_entailment_examples(self, lunch_circ, kb, f):
        assert circ_entails(lunch_circ, f("sandwich | salad"))
        assert circ_entails(lunch_circ, TRUE)
        c = CircKB(kb("p | q"), minimized={"p", "q"})
        assert circ_entails(c, f("~(p & q)"))
        assert not circ_entails(c, f("p"))

    def test_varying_atom_is_not_minimised(self, kb, f):
        c = CircKB(kb("p -> z"), minimized={"p"}, varying={"z"})
        assert circ_models(c) == [frozenset(), frozenset({"z"})]
        assert not circ_entails(c, f("~z"))

    def test_query_atoms_outside_alphabet_are_unconstrained(self, kb, f):
        c = CircKB(kb("p"), minimized={"p"})
        assert not circ_entails(c, f("q"))
        assert not circ_entails(c, f("~q"))

    @given(knowledge_bases())
    def test_all_minimised_equals_minimal_models(self, k):
        c = CircKB(k, minimized=frozenset(k.atoms))
        assert circ_models(c) == minimal_models(k)

    @given(knowledge_bases(max_atoms=3), formulas(("p", "q", "r"), 6))
    def test_entailment_is_absence_of_countermodels(self, k, phi):
        c = CircKB(KnowledgeBase(k.formulas, ("p", "q", "r")), minimized={"p"}, varying={"q"})
        assert circ_entails(c, phi) == (not any(evaluate(Not(phi), m) for m in circ_models(c)))


class TestGcwa:
    def test_free_atoms_examples(self, kb):
        assert gcwa_free_atoms(GcwaKB(kb("p | q", atoms="p q r"))) == {"r"}
        assert gcwa_free_atoms(GcwaKB(kb("p", "~p"))) == {"p"}

    def test_entailed_atom_in_only_model(self, kb):
        # the minimal-model reading keeps p; excluding the empty clause frees it
        g = GcwaKB(kb("p"))
        assert gcwa_free_atoms(g) == frozenset()
        assert gcwa_free_atoms(g, include_empty_clause=False) == {"p"}
        assert minimal_models(g.theory) == [frozenset({"p"})]

    def test_models_examples(self, kb):
        assert gcwa_models(GcwaKB(kb("p | q", atoms="p q r"))) == [
            frozenset({"q"}), frozenset({"p"}), frozenset({"p", "q"})
        ]
        assert gcwa_models(GcwaKB(KnowledgeBase((TRUE,), ("p",)))) == [frozenset()]
        assert gcwa_models(GcwaKB(kb("p", "~p"))) == []

    def test_entails_examples(self, kb, f):
        g = GcwaKB(kb("p | q", atoms="p q r"))
        assert gcwa_entails(g, f("~r"))
        assert gcwa_entails(g, TRUE)
        assert not gcwa_entails(g, f("~p"))

    def test_rewrite_examples(self, kb, f):
        assert gcwa_rewrite(GcwaKB(kb("p | q", atoms="p q r"))).formulas == (f("p | q"), f("~r"))
        assert gcwa_rewrite(GcwaKB(KnowledgeBase((TRUE,), ("p",)))).formulas == (TRUE, f("~p"))
        inconsistent = gcwa_rewrite(GcwaKB(kb("p", "~p | q", "~q")))
        assert inconsistent.formulas[3:] == (f("~p"), f("~q"))

    def test_accepts_plain_knowledge_base(self, kb):
        assert gcwa_free_atoms(kb("p | q", atoms="p q r")) == {"r"}

    def test_query_atom_outside_alphabet_is_closed(self, kb, f):
        assert gcwa_entails(GcwaKB(kb("p")), f("~q"))

    @given(knowledge_bases(max_atoms=3))
    def test_bitset_matches_definition(self, k):
        g = GcwaKB(k)
        assert gcwa_free_atoms(g) == definitional_free_atoms(k)
        assert gcwa_free_atoms(g, include_empty_clause=False) == definitional_free_atoms(k, include_empty=False)

    @given(knowledge_bases(max_atoms=3))
    def test_minimal_model_characterisation(self, k):
        free = gcwa_free_atoms(GcwaKB(k))
        assert free == {a for a in k.atoms if all(a not in m for m in minimal_models(k))}

    @given(knowledge_bases())
    def test_rewrite_models_and_size(self, k):
        g = GcwaKB(k)
        rewritten = gcwa_rewrite(g)
        assert all_models(rewritten) == gcwa_models(g)
        assert size(rewritten) <= size(k) + 3 * len(k.atoms)

    def test_capacity(self):
        with limits.override(positive_clauses=2):
            with pytest.raises(CapacityError):
                gcwa_free_atoms(GcwaKB(KnowledgeBase((FALSE,), ("p", "q", "r"))))
