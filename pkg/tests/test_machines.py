import itertools

import pytest

from garnorm import (
    Alphabet,
    GarnormError,
    LetterNotInAlphabet,
    MealyMachine,
    SweepBudgetExhausted,
    Word,
    action_equal,
    build_mealy,
    build_thurston,
    distinguishing_word,
    dual,
    gallery,
    gallery_tables,
    growth,
    minimize,
    normalize,
    numeration_iterate,
    padding_normal_form,
    run,
    run_word,
    thurston_normalize,
    tuple_action_classes,
)
from garnorm.core import NotIdempotent, NormTable
from helpers import all_words, int_to_digits_lsb, word_to_int

bicyclic = gallery("bicyclic").table
plactic2 = gallery("plactic2").table
bs10 = gallery("bs10").table
div3 = gallery("div3").machine
mul2 = gallery("mul2").machine

HOME_UNIT_TABLES = [
    gallery(n).table
    for n in ("bs10", "bs32", "plactic2", "malcev", "braid3", "finite:Z/2", "finite:Z/3")
]


def identity_machine():
    # every state acts as the identity on words
    states = Alphabet(("s", "t"))
    alphabet = Alphabet(("x", "y"))
    return MealyMachine(states, alphabet, [[0, 0], [1, 1]], [[0, 1], [0, 1]])


# ---------------------------------------------------------------------------
# construction


def test_machine_validates_tables():
    states = Alphabet(("s",))
    alphabet = Alphabet(("x", "y"))
    with pytest.raises(GarnormError):
        MealyMachine(states, alphabet, [[0]], [[0, 1]])  # next row too short
    with pytest.raises(GarnormError):
        MealyMachine(states, alphabet, [[0, 1]], [[0, 1]])  # next out of range
    with pytest.raises(GarnormError):
        MealyMachine(states, alphabet, [[0, 0]], [[0, 2]])  # output out of range


def test_build_mealy_bicyclic_pinned_transition():
    m = build_mealy(bicyclic)
    assert m.output("b", "a").name == "1"
    assert m.next_state("b", "a").name == "1"


def test_build_mealy_unit_state_is_identity():
    for table in HOME_UNIT_TABLES + [bicyclic]:
        m = build_mealy(table)
        for x in table.alphabet:
            assert m.output("1", x).name == x.name
            assert m.next_state("1", x).name == "1"


def test_build_mealy_requires_idempotence():
    t = NormTable(
        Alphabet(("a", "b")), [(("a", "b"), ("b", "a")), (("b", "a"), ("a", "b"))]
    )
    with pytest.raises(NotIdempotent):
        build_mealy(t)


def test_build_thurston_pinned_transitions():
    th = build_thurston(bicyclic)
    assert th.output("a", "b").name == "1"
    assert th.next_state("a", "b").name == "1"
    # a fixed pair passes through unchanged
    assert th.output("b", "a").name == "b"
    assert th.next_state("b", "a").name == "a"
    thp = build_thurston(plactic2)
    assert thp.output("b", "a").name == "1"
    assert thp.next_state("b", "a").name == "ba"


# ---------------------------------------------------------------------------
# duality


def test_dual_of_div3_is_mul2():
    assert dual(div3) == mul2
    assert dual(mul2) == div3


def test_dual_is_an_involution():
    machines = [div3, mul2] + [build_mealy(e.table) for e in gallery_tables()]
    for m in machines:
        assert dual(dual(m)) == m


def test_dual_of_mealy_is_thurston():
    for entry in gallery_tables():
        assert dual(build_mealy(entry.table)) == build_thurston(entry.table)


# ---------------------------------------------------------------------------
# running


def test_run_div3_divides_by_three():
    out, final = run(div3, "0", div3.alphabet.word("110"))
    assert str(out) == "0 1 0" and final.name == "0"  # 6 = 3*2 + 0


def test_run_empty_word():
    out, final = run(div3, "2", Word())
    assert len(out) == 0 and final.name == "2"


def test_run_mul2():
    out, final = run(mul2, "0", mul2.alphabet.word("12"))
    assert str(out) == "2 1" and final.name == "1"


def test_run_rejects_foreign_letters():
    with pytest.raises(LetterNotInAlphabet):
        run(div3, "0", mul2.alphabet.word("2"))
    with pytest.raises(LetterNotInAlphabet):
        run(div3, "7", div3.alphabet.word("0"))


def test_run_preserves_length_and_prefixes():
    for w in all_words(div3.alphabet, 6):
        for x in div3.states:
            out, _ = run(div3, x, w)
            assert len(out) == len(w)
            for k in range(len(w)):
                prefix_out, _ = run(div3, x, w[:k])
                assert prefix_out == out[:k]


def test_run_word_composes_left_first():
    u = div3.states.word("0 0")
    w = div3.alphabet.word("1001")  # 9
    assert str(run_word(div3, u, w)) == "0 0 0 1"  # 9 div 9 = 1


def test_run_word_bicyclic_first_letter():
    m = build_mealy(bicyclic)
    u = bicyclic.alphabet.word("a b")
    for x in ("a", "b"):
        for rest in ("", " a", " b b", " 1 a"):
            w = bicyclic.alphabet.word(f"{x}{rest}")
            assert run_word(m, u, w)[0].name == "1"


def test_run_word_identity_states():
    m = build_mealy(bicyclic)
    u = bicyclic.alphabet.word("1 1 1")
    for w in all_words(bicyclic.alphabet, 3):
        assert run_word(m, u, w) == w


def test_run_word_rejects_empty_state_word():
    with pytest.raises(GarnormError):
        run_word(div3, Word(), div3.alphabet.word("0"))


# ---------------------------------------------------------------------------
# action equality


def test_action_equal_bicyclic_counterexample():
    m = build_mealy(bicyclic)
    u = bicyclic.alphabet.word("a b")
    v = bicyclic.alphabet.word("1 1")
    assert not action_equal(m, u, v)
    w = distinguishing_word(m, u, v)
    assert len(w) == 1  # a one-letter input already separates them
    assert run_word(m, u, w) != run_word(m, v, w)


def test_bicyclic_relation_not_respected_by_actions():
    # a b and 1 1 name the same monoid element (that is what the table
    # says), yet their actions differ: the machine semigroup is a proper
    # quotient when the breadth is too large
    from garnorm import normalize

    m = build_mealy(bicyclic)
    u = bicyclic.alphabet.word("a b")
    v = bicyclic.alphabet.word("1 1")
    assert normalize(bicyclic, u) == v
    assert not action_equal(m, u, v)


def test_action_equal_reflexive():
    m = build_mealy(plactic2)
    u = plactic2.alphabet.word("ba b")
    assert action_equal(m, u, u)


def test_action_equal_plactic_relation():
    m = build_mealy(plactic2)
    assert action_equal(m, plactic2.alphabet.word("a b a"), plactic2.alphabet.word("b a a"))


def test_action_equal_is_an_equivalence():
    m = build_mealy(bs10)
    words = list(all_words(bs10.alphabet, 2))
    for u, v in itertools.product(words, repeat=2):
        if action_equal(m, u, v):
            assert action_equal(m, v, u)
    for u, v, w in itertools.product(words, repeat=3):
        if action_equal(m, u, v) and action_equal(m, v, w):
            assert action_equal(m, u, w)


def test_action_equal_is_a_congruence():
    m = build_mealy(bs10)
    words = list(all_words(bs10.alphabet, 2))
    letters = [Word((x,)) for x in bs10.alphabet]
    for u, v in itertools.product(words, repeat=2):
        if action_equal(m, u, v):
            for w in letters:
                assert action_equal(m, u + w, v + w)
                assert action_equal(m, w + u, w + v)


def test_distinguishing_word_is_valid_and_shortest():
    t = gallery("braid3").table
    m = build_mealy(t)
    u = t.alphabet.word("a b")
    v = t.alphabet.word("b a")
    w = distinguishing_word(m, u, v)
    assert w is not None
    assert run_word(m, u, w) != run_word(m, v, w)
    # no strictly shorter word separates them
    for shorter in all_words(t.alphabet, len(w) - 1):
        assert run_word(m, u, shorter) == run_word(m, v, shorter)


# ---------------------------------------------------------------------------
# minimisation and growth


def test_minimize_div3_three_singletons():
    part = minimize(div3)
    assert part.num_classes == 3


def test_minimize_identity_machine_one_class():
    assert minimize(identity_machine()).num_classes == 1


def test_minimize_bicyclic_three_singletons():
    assert minimize(build_mealy(bicyclic)).num_classes == 3


def test_minimize_matches_length_one_action_classes():
    machines = [div3, mul2, identity_machine()] + [
        build_mealy(e.table) for e in gallery_tables()
    ]
    for m in machines:
        part = minimize(m)
        for x, y in itertools.product(m.states, repeat=2):
            same = part.class_of(x) == part.class_of(y)
            assert same == action_equal(m, Word((x,)), Word((y,)))


def test_tuple_action_classes_match_pairwise_action_equal():
    for m in (div3, build_mealy(plactic2)):
        classes = tuple_action_classes(m, 2)
        pairs = list(itertools.product(m.states, repeat=2))
        for s, t in itertools.product(pairs, repeat=2):
            same = classes[s] == classes[t]
            assert same == action_equal(m, Word(s), Word(t))


def test_growth_free_semigroups():
    assert growth(div3, 5) == [3, 9, 27, 81, 243]
    assert growth(mul2, 5) == [2, 4, 8, 16, 32]


def test_growth_identity_machine():
    assert growth(identity_machine(), 4) == [1, 1, 1, 1]


# ---------------------------------------------------------------------------
# padding recovery


def test_padding_bicyclic_pair():
    m = build_mealy(bicyclic)
    u = bicyclic.alphabet.word("a b")
    assert str(padding_normal_form(m, "1", u, 3)) == "1 1 1"


def test_padding_bs10_pair():
    m = build_mealy(bs10)
    u = bs10.alphabet.word("a b")
    assert str(padding_normal_form(m, "1", u, 3)) == "1 1 a"


def test_padding_single_unit_state():
    m = build_mealy(bicyclic)
    assert str(padding_normal_form(m, "1", bicyclic.alphabet.word("1"), 1)) == "1"


def test_padding_length_checked():
    m = build_mealy(bicyclic)
    with pytest.raises(GarnormError):
        padding_normal_form(m, "1", bicyclic.alphabet.word("a b"), 1)


def test_padding_recovers_normal_forms_on_bounded_breadth_tables():
    for table in HOME_UNIT_TABLES:
        m = build_mealy(table)
        unit = table.unit
        for u in all_words(table.alphabet, 3):
            nf = normalize(table, u)
            for n in range(len(u), 6):
                got = padding_normal_form(m, unit, u, n)
                assert got == Word([unit] * (n - len(u))) + nf


def test_padding_needs_small_p():
    # the bicyclic table has p = 4, and the recovery genuinely fails there:
    # the run schedule only performs the alternating applications up to
    # length three per column
    m = build_mealy(bicyclic)
    u = bicyclic.alphabet.word("a a b")
    got = padding_normal_form(m, "1", u, 3)
    assert str(got) == "1 a 1"
    assert got != normalize(bicyclic, u)


# ---------------------------------------------------------------------------
# sweeping normalisation


def test_thurston_plactic_single_sweep():
    th = build_thurston(plactic2)
    w = plactic2.alphabet.word("b a a")
    # one manual sweep already lands on the normal form
    out, final = run(th, w[0], w[1:])
    swept = out + Word((final,))
    assert str(swept) == "1 a ba"
    assert thurston_normalize(th, w) == swept


def test_thurston_normal_word_unchanged():
    th = build_thurston(plactic2)
    w = plactic2.alphabet.word("1 a ba")
    assert thurston_normalize(th, w, max_sweeps=0) == w


def test_thurston_bicyclic():
    th = build_thurston(bicyclic)
    w = bicyclic.alphabet.word("a a b")
    assert thurston_normalize(th, w, max_sweeps=3) == bicyclic.alphabet.word("1 1 a")


def test_thurston_sweep_budget():
    th = build_thurston(bicyclic)
    with pytest.raises(SweepBudgetExhausted):
        thurston_normalize(th, bicyclic.alphabet.word("a a b"), max_sweeps=1)


def test_thurston_requires_square_machine():
    with pytest.raises(GarnormError):
        thurston_normalize(div3, div3.alphabet.word("0"))


def test_thurston_matches_normalize_to_length_four():
    for entry in gallery_tables():
        table = entry.table
        th = build_thurston(table)
        for w in all_words(table.alphabet, 4):
            assert thurston_normalize(th, w) == normalize(table, w)


# ---------------------------------------------------------------------------
# iterated runs


def test_numeration_mul2_period_six():
    r = numeration_iterate(mul2, "0", mul2.alphabet.word("12"), 6)
    assert str(r.collected) == "1 1 0 0 0 1"
    assert r.words[6] == r.words[0]
    assert r.cycle_start == 0 and r.period == 6


def test_numeration_identity_machine():
    m = identity_machine()
    w = m.alphabet.word("x y x")
    r = numeration_iterate(m, "s", w, 4)
    assert r.collected.names() == ("s",) * 4
    assert all(x == w for x in r.words)
    assert r.cycle_start == 0 and r.period == 1


def test_numeration_div3_emits_base3_digits():
    # iterating the division by three reads off base-3 digits, least
    # significant first
    for value, text in ((6, "110"), (25, "11001"), (7, "111")):
        w = div3.alphabet.word(text)
        steps = 6
        r = numeration_iterate(div3, "0", w, steps)
        digits = [int(s.name) for s in r.collected]
        assert digits == int_to_digits_lsb(value, 3, steps)
        assert word_to_int(w, 2) == value


def test_numeration_validates_steps():
    with pytest.raises(GarnormError):
        numeration_iterate(div3, "0", div3.alphabet.word("1"), 0)
