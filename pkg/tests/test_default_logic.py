import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pkrkit import limits
from pkrkit.default_logic import (
    DefaultRule, DefaultTheory, credulous_entails, extensions, extensions_naive, model_of_some_extension,
    models_of_extensions, reiter_check, skeptical_entails,
)
from pkrkit.errors import CapacityError, PreconditionError
from pkrkit.pools import pfn_pool, random_default_theory
from pkrkit.prop import entails
from pkrkit.syntax import FALSE, TRUE, KnowledgeBase, conj, parse_formula


def theory(background=(), defaults=(), atoms=()):
    return DefaultTheory(KnowledgeBase.of(*background, atoms=atoms), tuple(defaults))


@pytest.fixture
def choice():
    """``:p/p`` and ``:~p/~p``."""
    return theory(defaults=[DefaultRule.normal("p"), DefaultRule.normal("~p")])


@pytest.fixture
def no_extension():
    """``:b/~b`` undermines its own justification."""
    return theory(defaults=[DefaultRule(TRUE, ("b",), "~b")])


class TestRule:
    def test_text(self):
        assert str(DefaultRule.normal("b")) == ": b / b"
        assert str(DefaultRule("a", (), "b")) == "a : / b"
        assert str(DefaultRule("a", ("b", "c"), "d")) == "a : b , c / d"

    def test_pfn(self):
        assert DefaultRule.normal("~p").is_pfn
        assert not DefaultRule.normal("p", prerequisite="q").is_pfn
        assert not DefaultRule(TRUE, ("p",), "q").is_pfn

    def test_theory_alphabet_covers_defaults(self):
        dt = theory(background=["a"], defaults=[DefaultRule("b", ("c",), "d")])
        assert dt.atoms == ("a", "b", "c", "d")


class TestReiterCheck:
    def test_examples(self, no_extension):
        dt = theory(background=["a"], defaults=[DefaultRule.normal("b")])
        assert reiter_check(dt, {0})
        assert not reiter_check(dt, set())
        assert not reiter_check(no_extension, set())
        assert not reiter_check(no_extension, {0})

    def test_groundedness(self):
        # a:/a would be self-supporting without the groundedness check
        dt = theory(defaults=[DefaultRule("a", (), "a")])
        assert not reiter_check(dt, {0})
        assert reiter_check(dt, set())

    def test_index_out_of_range(self):
        with pytest.raises(PreconditionError):
            reiter_check(theory(), {0})


class TestExtensions:
    def test_single_pfn(self, f):
        exts = extensions(theory(defaults=[DefaultRule.normal("~p")]))
        assert len(exts) == 1
        assert exts[0].base.formulas == (f("~p"),)

    def test_none(self, no_extension):
        assert extensions(no_extension) == []

    def test_two(self, choice, f):
        bases = [e.base.formulas for e in extensions(choice)]
        assert bases == [(f("~p"),), (f("p"),)] or bases == [(f("p"),), (f("~p"),)]
        assert len(bases) == 2

    def test_inconsistent_background_has_one_extension(self):
        exts = extensions(theory(background=["p", "~p"], defaults=[DefaultRule.normal("q")]))
        assert len(exts) == 1

    def test_prerequisite_chain(self, f):
        dt = theory(background=["a"], defaults=[DefaultRule("b", ("c",), "c"), DefaultRule("a", ("b",), "b")])
        [ext] = extensions(dt)
        assert ext.generating == (0, 1)
        assert entails(ext.base, f("c"))

    @pytest.mark.parametrize("seed", range(40))
    def test_search_matches_naive(self, seed):
        dt = random_default_theory(random.Random(seed), max_defaults=8)
        assert extensions(dt) == extensions_naive(dt)

    def test_every_extension_passes_reiter(self):
        rng = random.Random(7)
        for _ in range(30):
            dt = random_default_theory(rng, max_defaults=6)
            assert all(reiter_check(dt, e.generating) for e in extensions(dt))

    def test_normal_theories_have_an_extension(self):
        assert all(extensions(dt) for dt in pfn_pool())

    @given(st.integers(min_value=0, max_value=10_000))
    def test_extensions_are_incomparable(self, seed):
        dt = random_default_theory(random.Random(seed), max_defaults=6)
        exts = extensions(dt)
        for e1 in exts:
            for e2 in exts:
                if e1 is not e2:
                    assert not entails(e1.base, conj(e2.base.formulas)) or not entails(e2.base, conj(e1.base.formulas))

    def test_capacity(self):
        dt = theory(defaults=[DefaultRule.normal("p")] * 4)
        with limits.override(defaults=3):
            with pytest.raises(CapacityError):
                extensions(dt)


class TestInference:
    def test_credulous(self, choice, no_extension, f):
        assert credulous_entails(choice, f("p"))
        assert not credulous_entails(no_extension, TRUE)
        assert credulous_entails(theory(background=["a"]), f("a"))

    def test_skeptical(self, choice, no_extension, f):
        assert skeptical_entails(choice, f("p | ~p"))
        assert not skeptical_entails(choice, f("p"))
        assert skeptical_entails(no_extension, FALSE)

    def test_query_atoms_outside_alphabet(self, choice, f):
        assert not credulous_entails(choice, f("q"))

    @given(st.integers(min_value=0, max_value=10_000))
    def test_skeptical_implies_credulous(self, seed):
        rng = random.Random(seed)
        dt = random_default_theory(rng, max_defaults=5)
        q = parse_formula(rng.choice(["p", "~p", "p | q", "p & q", "q -> p"]))
        if extensions(dt) and skeptical_entails(dt, q):
            assert credulous_entails(dt, q)


class TestModelChecking:
    def test_examples(self, no_extension):
        dt = theory(defaults=[DefaultRule.normal("~p")])
        assert model_of_some_extension(frozenset(), dt)
        assert not model_of_some_extension({"p"}, dt)
        assert not model_of_some_extension({"b"}, no_extension)
        assert not model_of_some_extension(frozenset(), no_extension)

    def test_models_of_extensions(self, choice):
        assert models_of_extensions(choice) == [frozenset(), frozenset({"p"})]
