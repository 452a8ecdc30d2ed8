import pytest

from garnorm import (
    UnknownName,
    action_equal,
    breadth,
    build_mealy,
    check_unit_condition,
    condition_home,
    dual,
    gallery,
    growth,
    minimize,
    numeration_iterate,
    run,
)
from garnorm.gallery import BASE_NAMES
from helpers import all_words, word_to_int

ALL_NAMES = BASE_NAMES + ("finite:Z/1", "finite:Z/2", "finite:Z/3")


def entry_machine(entry):
    return entry.machine if entry.machine is not None else build_mealy(entry.table)


def test_unknown_names_rejected():
    for name in ("nope", "finite:S3", "finite:Z/x", "finite:Z/0", "finite:Q8"):
        with pytest.raises(UnknownName):
            gallery(name)


def test_gallery_is_cached():
    assert gallery("bicyclic") is gallery("bicyclic")


def test_every_entry_constructs():
    for name in ALL_NAMES:
        entry = gallery(name)
        assert entry.table is not None or entry.machine is not None


def test_finite_trivial_monoid():
    entry = gallery("finite:Z/1")
    assert len(entry.table.alphabet) == 1
    assert breadth(entry.table).as_pair() == (0, 0)


def test_finite_z4_products():
    table = gallery("finite:Z/4").table
    al = table.alphabet
    assert table.entry("g", "g") == (al["1"], al["g2"])
    assert table.entry("g2", "g3") == (al["1"], al["g"])
    assert breadth(table).as_pair() == (3, 2)


@pytest.mark.parametrize("name", ALL_NAMES)
def test_expectations(name):
    entry = gallery(name)
    exps = entry.expectations
    for key, value in exps.items():
        if key == "breadth":
            assert breadth(entry.table).as_pair() == value
        elif key == "condition_home":
            assert condition_home(entry.table) == value
        elif key == "unit_condition":
            assert check_unit_condition(entry.table) == value
        elif key == "action_equal":
            m = entry_machine(entry)
            for left, right, expected in value:
                u = m.states.word(left)
                v = m.states.word(right)
                assert action_equal(m, u, v) == expected, (left, right)
        elif key == "table_entries":
            al = entry.table.alphabet
            for (a, b), (c, d) in value:
                assert entry.table.entry(a, b) == (al[c], al[d]), (a, b)
        elif key == "mealy_transitions":
            m = entry_machine(entry)
            for state, letter, nxt, out in value:
                assert m.next_state(state, letter).name == nxt, (state, letter)
                assert m.output(state, letter).name == out, (state, letter)
        elif key == "states":
            assert len(entry_machine(entry).states) == value
        elif key == "growth":
            assert tuple(growth(entry_machine(entry), len(value))) == value
        elif key == "minimize_classes":
            assert minimize(entry_machine(entry)).num_classes == value
        elif key == "dual_of":
            other = gallery(value)
            assert dual(other.machine) == entry.machine
            assert dual(entry.machine) == other.machine
        elif key == "iterate":
            m = entry_machine(entry)
            r = numeration_iterate(
                m, value["start"], m.alphabet.word(value["word"]), value["steps"]
            )
            assert str(r.collected) == value["collected"]
            assert r.cycle_start == value["cycle_start"]
            assert r.period == value["period"]
        elif key == "division_check_len":
            m = entry_machine(entry)
            for u in all_words(m.alphabet, value):
                out, final = run(m, "0", u)
                assert word_to_int(u, 2) == 3 * word_to_int(out, 2) + int(final.name)
        else:
            pytest.fail(f"unhandled expectation key {key!r}")


def test_gallery_tables_all_idempotent():
    for name in ALL_NAMES:
        entry = gallery(name)
        if entry.table is not None:
            assert not entry.table.idempotence_failures()


def test_gallery_tables_verify_as_normalisations():
    from garnorm import verify_normalisation

    for name in ALL_NAMES:
        entry = gallery(name)
        if entry.table is not None:
            assert verify_normalisation(entry.table, 5).ok, name
