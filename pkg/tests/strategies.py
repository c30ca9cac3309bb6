"""Hypothesis strategies for formulas and knowledge bases."""

from hypothesis import strategies as st

from pkrkit.syntax import FALSE, TRUE, And, Iff, Implies, KnowledgeBase, Not, Or, Var

ATOMS = ("p", "q", "r", "s")


def atoms_subset(max_size=4):
    return st.integers(min_value=1, max_value=max_size).map(lambda n: ATOMS[:n])


def formulas(atoms=ATOMS, max_leaves=8):
    leaves = st.sampled_from([Var(a) for a in atoms]) | st.sampled_from([TRUE, FALSE])
    return st.recursive(
        leaves,
        lambda sub: st.builds(Not, sub)
        | st.builds(And, sub, sub)
        | st.builds(Or, sub, sub)
        | st.builds(Implies, sub, sub)
        | st.builds(Iff, sub, sub),
        max_leaves=max_leaves,
    )


@st.composite
def knowledge_bases(draw, max_atoms=4, max_formulas=3):
    atoms = draw(atoms_subset(max_atoms))
    fs = draw(st.lists(formulas(atoms, 6), max_size=max_formulas))
    return KnowledgeBase(tuple(fs), atoms)


@st.composite
def interpretations(draw, atoms):
    return frozenset(draw(st.sets(st.sampled_from(atoms))) if atoms else frozenset())
