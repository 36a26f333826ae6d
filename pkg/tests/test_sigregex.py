"""Parser, renderer and automaton construction."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import naive_matches
from sigbounds import sigregex as sr
from sigbounds.series import word_height


def lang(expr: str, max_len: int) -> set[str]:
    return set(sr.compile(sr.parse(expr)).words_up_to(max_len))


class TestParse:
    def test_single_letters(self):
        for ch in "<=>":
            node = sr.parse(ch)
            assert isinstance(node, sr.Lit)
            assert node.letter == ch

    def test_empty_and_epsilon_tokens(self):
        assert sr.parse("0") is sr.EMPTY
        assert sr.parse("1") is sr.EPSILON
        assert sr.compile(sr.parse("0")).is_empty
        assert sr.compile(sr.parse("1")).accepts("")

    def test_union_binds_weaker_than_concat(self):
        # <|=> is <  or  =>, not (<|=)>
        assert lang("<|=>", 2) == {"<", "=>"}
        assert lang("(<|=)>", 2) == {"<>", "=>"}

    def test_star_binds_to_last_factor(self):
        assert lang("<=*", 3) == {"<", "<=", "<=="}

    def test_plus_requires_one(self):
        assert lang(">=+>", 4) == {">=>", ">==>"}
        assert ">>" not in lang(">=+>", 4)

    def test_optional(self):
        assert lang("<>?", 2) == {"<", "<>"}

    def test_whitespace_ignored(self):
        assert lang(" < ( < | = ) ", 2) == lang("<(<|=)", 2)

    def test_nested_groups(self):
        assert "><" in lang("(>(>|=)*)*><((<|=)*<)*", 2)

    @pytest.mark.parametrize("bad, col", [
        ("(<", 3),
        ("((", 3),
        ("<)", 2),
        (")", 1),
        ("<>)", 3),
        ("*", 1),
        ("a", 1),
    ])
    def test_parse_errors_carry_column(self, bad: str, col: int):
        with pytest.raises(sr.ParseError) as err:
            sr.parse(bad)
        assert err.value.column == col

    def test_empty_text_and_empty_branches_mean_epsilon(self):
        assert sr.parse("") is sr.EPSILON
        # an empty union branch is allowed and denotes the empty word
        assert lang("|<", 2) == {"", "<"}
        assert lang("<|", 2) == {"", "<"}


class TestRender:
    @pytest.mark.parametrize("expr", [
        "<", "<|>", "<=*>", "(<|=)*", "<(<|=)*(>|=)*>",
        "(<>)+<(>|1)|(><)+>(<|1)", "0", "1", ">=+>",
    ])
    def test_round_trip_preserves_language(self, expr: str):
        text = sr.render(sr.parse(expr))
        assert lang(text, 4) == lang(expr, 4)

    def test_render_reparses_to_same_tree(self):
        node = sr.parse("<(<|=)*(>|=)*>")
        assert sr.parse(sr.render(node)) == node


class TestWordHelpers:
    def test_check_word_rejects_foreign_letters(self):
        assert sr.check_word("<=>") == "<=>"
        with pytest.raises(ValueError):
            sr.check_word("<x>")

    def test_word_key_orders_by_length_then_text(self):
        words = ["><", "<", "=", "<><", ">", "<>"]
        ordered = sorted(words, key=sr.word_key)
        assert ordered == ["<", "=", ">", "<>", "><", "<><"]

    def test_enumerate_words_counts(self):
        for k in range(4):
            assert len(list(sr.enumerate_words(k))) == 3 ** k


class TestAutomaton:
    def test_accepts_agrees_with_words_up_to(self):
        aut = sr.compile(sr.parse("<(<|=)*>"))
        listed = set(aut.words_up_to(4))
        for k in range(5):
            for tup in itertools.product("<=>", repeat=k):
                w = "".join(tup)
                assert aut.accepts(w) == (w in listed)

    def test_words_up_to_sorted_canonically(self):
        words = sr.compile(sr.parse("(<|>)*")).words_up_to(3)
        assert words == sorted(words, key=sr.word_key)

    def test_is_factor(self):
        # factors of some word of the language, not the other way round
        aut = sr.compile(sr.parse("<>"))
        assert aut.is_factor("")
        assert aut.is_factor("<")
        assert aut.is_factor("<>")
        assert not aut.is_factor("><")
        assert not aut.is_factor("=")
        rich = sr.compile(sr.parse(">=+>"))
        assert rich.is_factor("==")
        assert rich.is_factor(">=")
        assert not rich.is_factor("<")
        assert not sr.compile(sr.parse("0")).is_factor("")

    def test_exists_word_of_length(self):
        aut = sr.compile(sr.parse(">=+>"))
        assert not aut.exists_word_of_length(2)
        assert aut.exists_word_of_length(3)
        assert aut.exists_word_of_length(4)

    def test_shortest_nonempty_length(self):
        assert sr.compile(sr.parse(">=+>")).shortest_nonempty_length() == 3
        assert sr.compile(sr.parse("0")).shortest_nonempty_length() is None
        # the empty word does not count
        assert sr.compile(sr.parse("<*")).shortest_nonempty_length() == 1

    def test_intersect_is_language_intersection(self):
        a = sr.compile(sr.parse("<(<|=)*"))
        b = sr.compile(sr.parse("(<|>)(<|>)*"))
        both = a.intersect(b)
        want = lang("<(<|=)*", 3) & lang("(<|>)(<|>)*", 3)
        assert set(both.words_up_to(3)) == want

    def test_intersect_disjoint_is_empty(self):
        a = sr.compile(sr.parse("<"))
        b = sr.compile(sr.parse(">"))
        assert a.intersect(b).is_empty


class TestBoundedHeight:
    @pytest.mark.parametrize("h", [0, 1, 2, 3])
    def test_accepts_exactly_low_words(self, h: int):
        aut = sr.bounded_height_automaton(h)
        for k in range(6):
            for tup in itertools.product("<=>", repeat=k):
                w = "".join(tup)
                assert aut.accepts(w) == (word_height(w) <= h)

    def test_generator_matches_filter(self):
        got = set(sr.words_of_height_at_most(1, 4))
        want = {
            "".join(t)
            for t in itertools.product("<=>", repeat=4)
            if word_height("".join(t)) <= 1
        }
        assert got == want


class TestDisjunctionDecomposition:
    def test_two_branch_pattern(self):
        branches = sr.dc_decompose(sr.parse("<(<|=)*>|>(>|=)*<"))
        assert len(branches) == 2

    def test_single_branch(self):
        assert len(sr.dc_decompose(sr.parse("<=*>"))) == 1


def _ast_strategy():
    letters = st.sampled_from("<=>").map(sr.Lit)
    base = st.one_of(letters, st.just(sr.EPSILON))

    def extend(children):
        return st.one_of(
            st.lists(children, min_size=2, max_size=3).map(sr.union),
            st.lists(children, min_size=2, max_size=3).map(sr.concat),
            children.map(sr.star),
        )

    return st.recursive(base, extend, max_leaves=6)


SHORT_WORDS = [
    "".join(t)
    for k in range(4)
    for t in itertools.product("<=>", repeat=k)
]


class TestAgainstNaiveMatcher:
    @settings(max_examples=80, deadline=None)
    @given(_ast_strategy())
    def test_compiled_automaton_matches_recursive_semantics(self, node):
        aut = sr.compile(node)
        for w in SHORT_WORDS:
            assert aut.accepts(w) == naive_matches(node, w), (node, w)

    @settings(max_examples=80, deadline=None)
    @given(_ast_strategy())
    def test_render_parse_round_trip(self, node):
        again = sr.parse(sr.render(node))
        a1 = sr.compile(node)
        a2 = sr.compile(again)
        for w in SHORT_WORDS:
            assert a1.accepts(w) == a2.accepts(w)
