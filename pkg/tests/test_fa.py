import itertools

import pytest

from hyperfa.errors import AlphabetMismatch, UnknownLetter
from hyperfa.fa import Fa

import oracles


def fa_astar_b():
    # a*b
    return Fa("ab", 2, {0}, {1}, [(0, "a", 0), (0, "b", 1)])


def fa_abstar():
    # ab*
    return Fa("ab", 2, {0}, {1}, [(0, "a", 1), (1, "b", 1)])


def words_upto(alphabet, n):
    for length in range(n + 1):
        yield from itertools.product(alphabet, repeat=length)


def test_accepts_self_loop():
    a = Fa("ab", 1, {0}, {0}, [(0, "a", 0)])
    assert a.accepts("aa")
    assert not a.accepts("ab")


def test_accepts_unknown_letter():
    with pytest.raises(UnknownLetter):
        fa_astar_b().accepts("ac")


def test_accepts_astar_b():
    a = fa_astar_b()
    assert a.accepts("aab")
    assert not a.accepts("aba")


def test_shortest_accepted():
    assert Fa("a", 1, {0}, set(), [(0, "a", 0)]).shortest_accepted() is None
    assert Fa("a", 1, {0}, {0}, []).shortest_accepted() == ()
    assert fa_astar_b().shortest_accepted() == ("b",)


def test_shortest_accepted_minimal_and_canonical():
    # two accepted words of length 1; tie broken by letter order
    a = Fa("ab", 2, {0}, {1}, [(0, "b", 1), (0, "a", 1), (1, "a", 1)])
    assert a.shortest_accepted() == ("a",)


def test_filtered_search_trivial_filter():
    a = fa_astar_b()
    assert a.shortest_accepted(lambda prev, nxt: True) == ("b",)


def test_filtered_search_blocks_everything():
    a = fa_astar_b()
    assert a.shortest_accepted(lambda prev, nxt: False) is None


def test_filtered_search_step_constraint():
    # only non-decreasing letters allowed: ba-words are filtered out
    a = Fa("ab", 2, {0}, {1}, [(0, "b", 0), (0, "a", 1)])
    ok = lambda prev, nxt: prev is None or prev <= nxt
    assert a.shortest_accepted(ok) == ("a",)


def test_complement_empty_language():
    empty = Fa("ab", 1, {0}, set(), [])
    comp = empty.complement()
    for w in words_upto("ab", 4):
        assert comp.accepts(w)


def test_complement_flips_membership():
    a = fa_astar_b()
    comp = a.complement()
    for w in words_upto("ab", 4):
        assert comp.accepts(w) == (not a.accepts(w))
    again = comp.complement()
    for w in words_upto("ab", 4):
        assert again.accepts(w) == a.accepts(w)


def test_complement_deterministic_complete():
    comp = fa_astar_b().complement()
    assert len(comp.initial) == 1
    for q in range(comp.n_states):
        for letter in comp.alphabet:
            assert len(comp.step(frozenset([q]), letter)) == 1


def test_intersect_union_against_enumeration():
    a, b = fa_astar_b(), fa_abstar()
    both = a.intersect(b)
    either = a.union(b)
    for w in words_upto("ab", 4):
        assert both.accepts(w) == (a.accepts(w) and b.accepts(w))
        assert either.accepts(w) == (a.accepts(w) or b.accepts(w))
    assert {w for w in words_upto("ab", 4) if both.accepts(w)} == {("a", "b")}


def test_intersect_with_universal():
    a = fa_astar_b()
    universal = Fa("ab", 1, {0}, {0}, [(0, "a", 0), (0, "b", 0)])
    got = a.intersect(universal)
    for w in words_upto("ab", 4):
        assert got.accepts(w) == a.accepts(w)


def test_union_with_empty():
    a = fa_astar_b()
    empty = Fa("ab", 1, {0}, set(), [])
    got = a.union(empty)
    for w in words_upto("ab", 4):
        assert got.accepts(w) == a.accepts(w)


def test_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        fa_astar_b().intersect(Fa("ac", 1, {0}, {0}, []))


def test_contains():
    a_only = Fa("ab", 1, {0}, {0}, [(0, "a", 0)])
    both = Fa("ab", 1, {0}, {0}, [(0, "a", 0), (0, "b", 0)])
    assert a_only.contains(a_only) is None
    assert both.contains(a_only) is None
    assert a_only.contains(both) == ("b",)
    empty = Fa("ab", 1, {0}, set(), [])
    assert both.contains(empty) is None


def test_contains_vs_enumeration():
    a, b = fa_astar_b(), fa_abstar()
    witness = b.contains(a)
    assert witness == ("b",)
    assert a.accepts(witness) and not b.accepts(witness)
    other_way = a.contains(b)
    assert other_way == ("a",)
    assert b.accepts(other_way) and not a.accepts(other_way)
    # agreement with enumeration: every short word of one side minus the
    # other is at least as long as the returned witness
    for w in words_upto("ab", 4):
        if a.accepts(w) and not b.accepts(w):
            assert len(w) >= len(witness)


def test_remap_identity():
    a = fa_astar_b()
    got = a.remap_letters(lambda l: l, a.alphabet)
    for w in words_upto("ab", 4):
        assert got.accepts(w) == a.accepts(w)


def test_remap_swap_pair_letters():
    alphabet = [("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]
    only_ab = Fa(alphabet, 2, {0}, {1}, [(0, ("a", "b"), 1)])
    swapped = only_ab.remap_letters(lambda l: (l[1], l[0]), alphabet)
    assert swapped.accepts([("b", "a")])
    assert not swapped.accepts([("a", "b")])


def test_remap_collapse_to_diagonal():
    alphabet = [("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]
    diag = Fa(alphabet, 1, {0}, {0}, [(0, ("a", "a"), 0)])
    collapsed = diag.remap_letters(lambda l: (l[0], l[0]), alphabet)
    for l in alphabet:
        assert collapsed.accepts([l]) == diag.accepts([(l[0], l[0])])


def test_minimize_preserves_language():
    a = fa_astar_b().union(fa_astar_b())
    m = a.determinize().minimize()
    assert m.n_states <= a.determinize().n_states
    for w in words_upto("ab", 5):
        assert m.accepts(w) == a.accepts(w)


def test_dot_export_mentions_all_parts():
    text = fa_astar_b().to_dot()
    assert "digraph" in text and "doublecircle" in text
    assert '"a"' in text or "label" in text


def test_language_enumeration_oracle_agrees():
    a = fa_astar_b()
    assert oracles.enumerate_language(a, 3) == {
        ("b",),
        ("a", "b"),
        ("a", "a", "b"),
    }
