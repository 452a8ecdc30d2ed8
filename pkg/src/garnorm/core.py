"""Quadratic normalisation tables and their string-rewriting machinery.

A normalisation table is the two-letter restriction of a length-preserving
normal-form map on words over a finite alphabet: a total map sending each
ordered pair of letters to an ordered pair of letters.  Pairs the table does
not mention are fixed.  Words are read left to right as products.  A table
may designate a unit letter ``1``; the convention is that the unit migrates
to the *left* of normal words and acts as padding, so ``(x, 1)`` and
``(1, x)`` both map to ``(1, x)``.

Rewriting a word means applying the table to two adjacent letters.  A word
is normal when every adjacent pair is fixed.  ``normalize`` computes a
normal word of the same length by repeated left-to-right sweeps, falling
back to an exhaustive search of the rewrite graph when the sweeps cycle.
``breadth`` measures how many alternating applications are needed to
normalise three-letter words, and ``condition_home`` is the bounded-breadth
predicate (d <= 4 and p <= 3) under which the companion Mealy automaton of
:mod:`garnorm.machines` computes exactly.

All values are immutable after construction and all operations are pure
functions of their inputs, so concurrent read-only use is safe.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

DEFAULT_NODE_BUDGET = 100_000

#: Characters that may not appear in symbol names (they carry syntactic
#: meaning in the text formats), besides whitespace.
FORBIDDEN_NAME_CHARS = frozenset("#|->")


# ---------------------------------------------------------------------------
# errors


class GarnormError(Exception):
    """Base class for every error raised by this package."""


class AlphabetError(GarnormError):
    """Bad symbol name, duplicate name, or unknown symbol."""


class PositionOutOfRange(GarnormError):
    """A rewrite position does not fit the word."""


class NotIdempotent(GarnormError):
    """The table is not idempotent on pairs, so it is not the restriction
    of any normalisation; operations that presuppose one refuse to run."""


class NotNormalising(GarnormError):
    """No normal word was reachable from the input."""


class NotConfluent(GarnormError):
    """Two distinct normal words are reachable from one input."""

    def __init__(self, word: "Word", first: "Word", second: "Word"):
        super().__init__(
            f"word '{word}' reaches distinct normal words '{first}' and '{second}'"
        )
        self.word = word
        self.first = first
        self.second = second


class MissingUnit(GarnormError):
    """The operation needs a designated unit letter and the table has none."""


class UnitAlreadyPresent(GarnormError):
    """The table already designates a unit letter."""


class LetterNotInAlphabet(GarnormError):
    """A word contains a letter outside the expected alphabet."""


class BudgetExhausted(GarnormError):
    """A search hit its node budget before reaching an answer."""


class NotTerminating(BudgetExhausted):
    """A rewrite cycle was found, so derivation lengths are unbounded."""


class SweepBudgetExhausted(BudgetExhausted):
    """Iterated sweeps did not reach a normal word within the sweep budget."""


class UnknownName(GarnormError):
    """No gallery entry with this name."""


class NoFactorisation(GarnormError):
    """A product admits no factorisation into two family elements."""


class AmbiguousMaximum(GarnormError):
    """The greedy choice of a table entry is not unique."""


class ParseError(GarnormError):
    """Malformed input text; carries the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


# ---------------------------------------------------------------------------
# symbols, alphabets, words


@dataclass(frozen=True)
class Symbol:
    """An interned letter: a small index plus a display name.

    Two symbols of one alphabet are equal iff their ids are equal; names
    within one alphabet are pairwise distinct, so either determines the
    other.
    """

    id: int
    name: str

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"Symbol({self.id}, {self.name!r})"


def _check_name(name: str) -> None:
    if not name:
        raise AlphabetError("symbol names must be non-empty")
    if any(ch.isspace() for ch in name):
        raise AlphabetError(f"symbol name {name!r} contains whitespace")
    bad = set(name) & FORBIDDEN_NAME_CHARS
    if bad:
        raise AlphabetError(
            f"symbol name {name!r} contains forbidden character {sorted(bad)[0]!r}"
        )


class Alphabet:
    """An ordered set of distinct symbols.

    Symbols are created once, in order, and shared by every word over the
    alphabet.  Alphabets compare equal when their name sequences agree.
    """

    __slots__ = ("symbols", "_by_name")

    def __init__(self, names: Iterable[str]):
        symbols = []
        by_name: dict[str, Symbol] = {}
        for i, name in enumerate(names):
            _check_name(name)
            if name in by_name:
                raise AlphabetError(f"duplicate symbol name {name!r}")
            sym = Symbol(i, name)
            symbols.append(sym)
            by_name[name] = sym
        self.symbols: tuple[Symbol, ...] = tuple(symbols)
        self._by_name = by_name

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __contains__(self, item) -> bool:
        if isinstance(item, Symbol):
            return 0 <= item.id < len(self.symbols) and self.symbols[item.id] == item
        return item in self._by_name

    def __getitem__(self, name: str) -> Symbol:
        try:
            return self._by_name[name]
        except KeyError:
            raise AlphabetError(f"unknown symbol {name!r}") from None

    def __eq__(self, other) -> bool:
        return isinstance(other, Alphabet) and self.names() == other.names()

    def __hash__(self) -> int:
        return hash(self.names())

    def __repr__(self) -> str:
        return f"Alphabet({list(self.names())!r})"

    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.symbols)

    def word_of(self, names: Iterable[str]) -> "Word":
        return Word(self[n] for n in names)

    def word(self, text: str, compact: bool = False) -> "Word":
        """Parse a word from text.

        Words are space-separated symbol names.  As a convenience, a single
        unspaced token whose characters are all one-character symbol names
        is read letter by letter ("110" over the alphabet {0, 1}); passing
        ``compact=True`` forces that reading for every token.
        """
        tokens = text.split()
        if compact:
            return Word(self[ch] for tok in tokens for ch in tok)
        if all(tok in self._by_name for tok in tokens):
            return self.word_of(tokens)
        if len(tokens) == 1 and all(ch in self._by_name for ch in tokens[0]):
            return Word(self[ch] for ch in tokens[0])
        bad = next(tok for tok in tokens if tok not in self._by_name)
        raise AlphabetError(f"unknown symbol {bad!r}")

    def resolve(self, w: "Word") -> "Word":
        """Re-intern a word of this alphabet's names into this alphabet."""
        try:
            return Word(self._by_name[s.name] for s in w)
        except KeyError as exc:
            raise LetterNotInAlphabet(f"letter {exc.args[0]!r} not in alphabet") from None


class Word:
    """An immutable sequence of symbols from one alphabet.

    Concatenation is ``+``, reversal is :meth:`reverse`, and slicing
    returns words.  Equality and hashing are structural.
    """

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Symbol] = ()):
        object.__setattr__(self, "letters", tuple(letters))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.letters)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return Word(self.letters[idx])
        return self.letters[idx]

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __str__(self) -> str:
        return " ".join(s.name for s in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def reverse(self) -> "Word":
        return Word(reversed(self.letters))

    def ids(self) -> tuple[int, ...]:
        return tuple(s.id for s in self.letters)

    def names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.letters)


# ---------------------------------------------------------------------------
# normalisation tables


class NormTable:
    """Two-letter restriction of a normalisation: alphabet, optional unit,
    and a total map on ordered pairs of letters (unlisted pairs are fixed).
    """

    __slots__ = ("alphabet", "unit", "_map")

    def __init__(
        self,
        alphabet: Alphabet,
        rules: Mapping | Iterable = (),
        unit: Symbol | str | None = None,
    ):
        if len(alphabet) == 0:
            raise AlphabetError("a normalisation table needs at least one letter")
        self.alphabet = alphabet
        if unit is not None and not isinstance(unit, Symbol):
            unit = alphabet[unit]
        if unit is not None and unit not in alphabet:
            raise AlphabetError(f"unit {unit.name!r} is not in the alphabet")
        self.unit = unit

        g = len(alphabet)
        table: dict[tuple[int, int], tuple[int, int]] = {
            (a, b): (a, b) for a in range(g) for b in range(g)
        }
        items = rules.items() if isinstance(rules, Mapping) else rules
        for (a, b), (c, d) in items:
            key = (self._sym(a).id, self._sym(b).id)
            table[key] = (self._sym(c).id, self._sym(d).id)
        self._map = table

    def _sym(self, s) -> Symbol:
        if isinstance(s, Symbol):
            if s not in self.alphabet:
                raise AlphabetError(f"symbol {s!r} is not in the alphabet")
            return s
        return self.alphabet[s]

    def entry(self, a: Symbol | str, b: Symbol | str) -> tuple[Symbol, Symbol]:
        c, d = self._map[self._sym(a).id, self._sym(b).id]
        syms = self.alphabet.symbols
        return syms[c], syms[d]

    def is_fixed(self, a: Symbol | str, b: Symbol | str) -> bool:
        key = (self._sym(a).id, self._sym(b).id)
        return self._map[key] == key

    def rules(self) -> tuple[tuple[tuple[Symbol, Symbol], tuple[Symbol, Symbol]], ...]:
        """The non-fixed entries, sorted by source pair."""
        syms = self.alphabet.symbols
        out = []
        for key in sorted(self._map):
            val = self._map[key]
            if val != key:
                out.append(((syms[key[0]], syms[key[1]]), (syms[val[0]], syms[val[1]])))
        return tuple(out)

    def idempotence_failures(
        self,
    ) -> list[tuple[tuple[Symbol, Symbol], tuple[Symbol, Symbol], tuple[Symbol, Symbol]]]:
        """Pairs whose image is not fixed: (pair, image, image of image)."""
        syms = self.alphabet.symbols
        fails = []
        for key in sorted(self._map):
            once = self._map[key]
            twice = self._map[once]
            if twice != once:
                fails.append(
                    (
                        (syms[key[0]], syms[key[1]]),
                        (syms[once[0]], syms[once[1]]),
                        (syms[twice[0]], syms[twice[1]]),
                    )
                )
        return fails

    def require_idempotent(self) -> None:
        fails = self.idempotence_failures()
        if fails:
            (a, b), (c, d), (e, f) = fails[0]
            raise NotIdempotent(
                f"table is not idempotent on pairs: ({a} {b}) -> ({c} {d}) -> ({e} {f})"
            )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NormTable)
            and self.alphabet == other.alphabet
            and self._map == other._map
            and (self.unit.name if self.unit else None)
            == (other.unit.name if other.unit else None)
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, tuple(sorted(self._map.items()))))

    def __repr__(self) -> str:
        unit = f", unit={self.unit.name!r}" if self.unit else ""
        return f"NormTable({list(self.alphabet.names())!r}, {len(self.rules())} rules{unit})"


# ---------------------------------------------------------------------------
# rewriting


def _is_normal_ids(table_map, ids: Sequence[int]) -> bool:
    for i in range(len(ids) - 1):
        key = (ids[i], ids[i + 1])
        if table_map[key] != key:
            return False
    return True


def _sweep(table_map, w: list[int]) -> bool:
    """Apply the table at positions 1..n-1 left to right, in place."""
    changed = False
    for i in range(len(w) - 1):
        a, b = w[i], w[i + 1]
        c, d = table_map[a, b]
        if c != a or d != b:
            w[i] = c
            w[i + 1] = d
            changed = True
    return changed


def _successors(table_map, ids: tuple[int, ...]) -> list[tuple[int, ...]]:
    out = []
    for i in range(len(ids) - 1):
        a, b = ids[i], ids[i + 1]
        c, d = table_map[a, b]
        if c != a or d != b:
            out.append(ids[:i] + (c, d) + ids[i + 2 :])
    return out


def _reachable_normals(
    table: NormTable, start: tuple[int, ...], node_budget: int
) -> tuple[list[tuple[int, ...]], bool]:
    """Breadth-first search of the rewrite graph; collects up to two
    distinct reachable normal words.  Returns (normals, budget_hit)."""
    mp = table._map
    seen = {start}
    queue = deque([start])
    normals: list[tuple[int, ...]] = []
    budget_hit = False
    while queue:
        w = queue.popleft()
        succ = _successors(mp, w)
        if not succ:
            normals.append(w)
            if len(normals) == 2:
                return normals, budget_hit
            continue
        for v in succ:
            if v not in seen:
                if len(seen) >= node_budget:
                    budget_hit = True
                    continue
                seen.add(v)
                queue.append(v)
    return normals, budget_hit


def _normalize_ids(
    table: NormTable, ids: tuple[int, ...], node_budget: int
) -> tuple[int, ...]:
    n = len(ids)
    if n <= 1:
        return ids
    mp = table._map
    w = list(ids)
    seen = {ids}
    for _ in range(n * n + n):
        if not _sweep(mp, w):
            return tuple(w)
        t = tuple(w)
        if t in seen:
            break
        seen.add(t)
    # Sweeps cycle: fall back to exhaustive search from the original word.
    normals, budget_hit = _reachable_normals(table, ids, node_budget)
    if len(normals) >= 2:
        syms = table.alphabet.symbols
        raise NotConfluent(
            Word(syms[i] for i in ids),
            Word(syms[i] for i in normals[0]),
            Word(syms[i] for i in normals[1]),
        )
    if not normals:
        word = " ".join(table.alphabet.symbols[i].name for i in ids)
        if budget_hit:
            raise NotNormalising(
                f"no normal word reachable from '{word}' within {node_budget} nodes"
            )
        raise NotNormalising(f"no normal word is reachable from '{word}'")
    return normals[0]


def _resolve_table_word(table: NormTable, w: Word) -> tuple[int, ...]:
    by_name = table.alphabet._by_name
    try:
        return tuple(by_name[s.name].id for s in w)
    except KeyError as exc:
        raise LetterNotInAlphabet(f"letter {exc.args[0]!r} not in alphabet") from None


def _word_from_ids(table: NormTable, ids: Iterable[int]) -> Word:
    syms = table.alphabet.symbols
    return Word(syms[i] for i in ids)


def nbar_apply(table: NormTable, w: Word, i: int) -> Word:
    """Apply the table to the letters at positions i and i+1 (1-based)."""
    ids = _resolve_table_word(table, w)
    if not 1 <= i <= len(ids) - 1:
        raise PositionOutOfRange(f"position {i} out of range for a word of length {len(ids)}")
    a, b = ids[i - 1], ids[i]
    c, d = table._map[a, b]
    return _word_from_ids(table, ids[: i - 1] + (c, d) + ids[i + 1 :])


def apply_sequence(table: NormTable, w: Word, positions: Iterable[int]) -> Word:
    """Left-to-right composition: the first listed position is applied first."""
    ids = _resolve_table_word(table, w)
    n = len(ids)
    mp = table._map
    for i in positions:
        if not 1 <= i <= n - 1:
            raise PositionOutOfRange(f"position {i} out of range for a word of length {n}")
        a, b = ids[i - 1], ids[i]
        c, d = mp[a, b]
        ids = ids[: i - 1] + (c, d) + ids[i + 1 :]
    return _word_from_ids(table, ids)


def is_normal(table: NormTable, w: Word) -> bool:
    """True iff every adjacent pair of the word is fixed by the table."""
    return _is_normal_ids(table._map, _resolve_table_word(table, w))


def normalize(table: NormTable, w: Word, node_budget: int = DEFAULT_NODE_BUDGET) -> Word:
    """A normal word of the same length reachable from ``w``.

    Strategy: repeated left-to-right sweeps until fixpoint, capped at
    |w|**2 + |w| sweeps; if the sweeps cycle, an exhaustive breadth-first
    search of the rewrite graph takes over (up to ``node_budget`` nodes).
    Raises :class:`NotNormalising` when no normal word is reachable and
    :class:`NotConfluent` when two distinct ones are.
    """
    if len(w) == 0:
        raise GarnormError("cannot normalise the empty word")
    ids = _resolve_table_word(table, w)
    return _word_from_ids(table, _normalize_ids(table, ids, node_budget))


# ---------------------------------------------------------------------------
# table verification


@dataclass
class NormalisationReport:
    """Witness lists from :func:`verify_normalisation`; empty means the
    table behaved as a normalisation restriction at the checked scale."""

    max_len: int
    idempotence_failures: list = None
    not_normalising: list = None  # words with no reachable normal form
    not_confluent: list = None  # (word, normal form 1, normal form 2)
    axiom_failures: list = None  # (u, w, v, nf of u N(w) v, nf of uwv)

    def __post_init__(self):
        for name in (
            "idempotence_failures",
            "not_normalising",
            "not_confluent",
            "axiom_failures",
        ):
            if getattr(self, name) is None:
                setattr(self, name, [])

    @property
    def ok(self) -> bool:
        return not (
            self.idempotence_failures
            or self.not_normalising
            or self.not_confluent
            or self.axiom_failures
        )


def _rewrite_analysis(table: NormTable, n: int):
    """Classify every length-n word by its reachable normal words.

    Returns (nf_of, confluence_failures, dead): a map word -> unique normal
    form, the words reaching two distinct normal forms (with both), and the
    words reaching none.  Works backwards from the normal words, so it is
    exact even when forward rewriting cycles.
    """
    g = len(table.alphabet)
    mp = table._map
    rev: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for a in range(g):
        for b in range(g):
            c, d = mp[a, b]
            if (c, d) != (a, b):
                rev.setdefault((c, d), []).append((a, b))

    all_words = list(itertools.product(range(g), repeat=n))
    nfsets: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for nf in all_words:
        if not _is_normal_ids(mp, nf):
            continue
        nfsets[nf] = [nf]
        stack = [nf]
        while stack:
            w = stack.pop()
            for i in range(n - 1):
                key = (w[i], w[i + 1])
                if key not in rev:
                    continue
                for a, b in rev[key]:
                    v = w[:i] + (a, b) + w[i + 2 :]
                    s = nfsets.setdefault(v, [])
                    if nf in s or len(s) >= 2:
                        continue
                    s.append(nf)
                    stack.append(v)

    nf_of: dict[tuple[int, ...], tuple[int, ...]] = {}
    confl = []
    dead = []
    for w in all_words:
        s = nfsets.get(w, ())
        if len(s) == 1:
            nf_of[w] = s[0]
        elif not s:
            dead.append(w)
        else:
            confl.append((w, s[0], s[1]))
    return nf_of, confl, dead


def verify_normalisation(table: NormTable, max_len: int = 5) -> NormalisationReport:
    """Exhaustively check the normalisation axioms on words up to ``max_len``.

    Checks pair idempotence, that every word reaches exactly one normal
    word, and that normalising an inner factor first never changes the
    result (N(u N(w) v) = N(uwv) for every split with |uwv| <= max_len).
    """
    if max_len < 3:
        raise GarnormError("max_len must be at least 3")
    report = NormalisationReport(max_len=max_len)
    report.idempotence_failures = table.idempotence_failures()

    g = len(table.alphabet)
    word = lambda ids: _word_from_ids(table, ids)

    nf_map: dict[tuple[int, ...], tuple[int, ...]] = {}
    for a in range(g):
        nf_map[(a,)] = (a,)
    for n in range(2, max_len + 1):
        nf_of, confl, dead = _rewrite_analysis(table, n)
        nf_map.update(nf_of)
        report.not_confluent.extend((word(w), word(x), word(y)) for w, x, y in confl)
        report.not_normalising.extend(word(w) for w in dead)

    for n in range(2, max_len + 1):
        for s in itertools.product(range(g), repeat=n):
            ns = nf_map.get(s)
            if ns is None:
                continue
            for i in range(n - 1):
                for j in range(i + 2, n + 1):
                    nw = nf_map.get(s[i:j])
                    if nw is None:
                        continue
                    lhs = s[:i] + nw + s[j:]
                    nl = nf_map.get(lhs)
                    if nl is not None and nl != ns:
                        report.axiom_failures.append(
                            (word(s[:i]), word(s[i:j]), word(s[j:]), word(nl), word(ns))
                        )
    return report


# ---------------------------------------------------------------------------
# breadth and the bounded-breadth condition


class _UnboundedType:
    """Sentinel for a breadth coordinate that exceeded the iteration cap."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Unbounded"


UNBOUNDED = _UnboundedType()


@dataclass(frozen=True)
class Breadth:
    """Worst-case lengths of the alternating position sequences needed to
    normalise three-letter words: ``d`` alternates 2,1,2,... and ``p``
    alternates 1,2,1,...; each witness is a triple attaining its maximum.
    """

    d: int | _UnboundedType
    p: int | _UnboundedType
    d_witness: Word
    p_witness: Word
    warning: str | None = None

    def as_pair(self) -> tuple:
        return (self.d, self.p)

    @property
    def finite(self) -> bool:
        return isinstance(self.d, int) and isinstance(self.p, int)


def _alternating_count(
    table_map, triple: tuple[int, int, int], target: tuple[int, ...], first: int, cap: int
) -> int | None:
    """Least number of alternating applications turning ``triple`` into
    ``target``; ``first`` is the 0-based position applied first.  Every
    application counts, including ones that fix the word.  Returns None
    past ``cap``."""
    w = triple
    pos = first
    for count in range(cap + 1):
        if w == target:
            return count
        a, b = w[pos], w[pos + 1]
        c, d = table_map[a, b]
        if pos == 0:
            w = (c, d, w[2])
        else:
            w = (w[0], c, d)
        pos = 1 - pos
    return None


def breadth(table: NormTable, cap: int = 64) -> Breadth:
    """Maximal alternating-sequence lengths over all three-letter words.

    Requires a pair-idempotent table.  A coordinate whose sequence fails to
    reach the normal form within ``cap`` applications is reported as
    UNBOUNDED, with the offending triple as witness.
    """
    table.require_idempotent()
    g = len(table.alphabet)
    mp = table._map

    d_val, d_wit = 0, (0, 0, 0)
    p_val, p_wit = 0, (0, 0, 0)
    for triple in itertools.product(range(g), repeat=3):
        target = _normalize_ids(table, triple, DEFAULT_NODE_BUDGET)
        if d_val is not UNBOUNDED:
            c = _alternating_count(mp, triple, target, 1, cap)
            if c is None:
                d_val, d_wit = UNBOUNDED, triple
            elif c > d_val:
                d_val, d_wit = c, triple
        if p_val is not UNBOUNDED:
            c = _alternating_count(mp, triple, target, 0, cap)
            if c is None:
                p_val, p_wit = UNBOUNDED, triple
            elif c > p_val:
                p_val, p_wit = c, triple

    warning = None
    if isinstance(d_val, int) and isinstance(p_val, int) and abs(d_val - p_val) > 1:
        warning = f"|d - p| = {abs(d_val - p_val)} > 1; genuine normalisations satisfy |d - p| <= 1"
    return Breadth(
        d=d_val,
        p=p_val,
        d_witness=_word_from_ids(table, d_wit),
        p_witness=_word_from_ids(table, p_wit),
        warning=warning,
    )


def condition_home(table: NormTable, cap: int = 64) -> bool:
    """True iff the breadth is finite with d <= 4 and p <= 3."""
    b = breadth(table, cap=cap)
    return b.finite and b.d <= 4 and b.p <= 3


# ---------------------------------------------------------------------------
# the unit letter


def unit_condition_failures(table: NormTable, max_len: int = 4) -> list[str]:
    """Witness descriptions of unit-condition violations (empty = holds).

    The unit must satisfy entries(x, 1) = entries(1, x) = (1, x) for every
    letter x, and normalising a word padded with the unit on either side
    must equal the unit-prefixed normal form, for words up to ``max_len``.
    """
    if table.unit is None:
        raise MissingUnit("the table has no designated unit letter")
    u = table.unit.id
    g = len(table.alphabet)
    syms = table.alphabet.symbols
    fails = []
    for x in range(g):
        want = (u, x)
        for key in ((x, u), (u, x)):
            got = table._map[key]
            if got != want:
                fails.append(
                    f"entries({syms[key[0]]} {syms[key[1]]}) = "
                    f"({syms[got[0]]} {syms[got[1]]}), expected ({syms[u]} {syms[x]})"
                )
    budget = DEFAULT_NODE_BUDGET
    for n in range(1, max_len + 1):
        for ids in itertools.product(range(g), repeat=n):
            nf = _normalize_ids(table, ids, budget)
            want = (u,) + nf
            left = _normalize_ids(table, (u,) + ids, budget)
            right = _normalize_ids(table, ids + (u,), budget)
            w = _word_from_ids(table, ids)
            if left != want:
                fails.append(
                    f"normalize(1 {w}) = {_word_from_ids(table, left)}, "
                    f"expected {_word_from_ids(table, want)}"
                )
            if right != want:
                fails.append(
                    f"normalize({w} 1) = {_word_from_ids(table, right)}, "
                    f"expected {_word_from_ids(table, want)}"
                )
    return fails


def check_unit_condition(table: NormTable, max_len: int = 4) -> bool:
    """True iff the designated unit behaves as left-migrating padding."""
    return not unit_condition_failures(table, max_len=max_len)


def adjoin_unit(table: NormTable, name: str = "1") -> NormTable:
    """Extend the table with a fresh unit letter acting as padding.

    The new letter absorbs nothing: entries(x, 1) = entries(1, x) = (1, x)
    for every old letter x, and old entries are unchanged.
    """
    if table.unit is not None:
        raise UnitAlreadyPresent(f"table already has unit {table.unit.name!r}")
    if name in table.alphabet:
        raise AlphabetError(
            f"cannot adjoin unit: a symbol named {name!r} already exists"
        )
    new_alpha = Alphabet(table.alphabet.names() + (name,))
    rules = []
    for (a, b), (c, d) in table.rules():
        rules.append(((a.name, b.name), (c.name, d.name)))
    for x in table.alphabet.names():
        rules.append(((x, name), (name, x)))
    return NormTable(new_alpha, rules, unit=name)


# ---------------------------------------------------------------------------
# derivation lengths


def max_derivation_length(
    table: NormTable, w: Word, node_budget: int = DEFAULT_NODE_BUDGET
) -> int:
    """Length of the longest sequence of word-changing rewrites from ``w``.

    Depth-first over the rewrite graph with memoisation; applications that
    fix the word are not steps.  Raises :class:`NotTerminating` when a
    rewrite cycle is found and :class:`BudgetExhausted` past the node
    budget.
    """
    start = _resolve_table_word(table, w)
    if len(start) < 2:
        return 0
    mp = table._map
    best_of: dict[tuple[int, ...], int] = {}
    on_stack: set[tuple[int, ...]] = set()
    # frame: [word, successor list, next successor index, best length so far]
    frames: list[list] = []

    def push(t):
        if len(best_of) + len(on_stack) >= node_budget:
            raise BudgetExhausted(
                f"derivation search exceeded the node budget of {node_budget}"
            )
        on_stack.add(t)
        frames.append([t, _successors(mp, t), 0, 0])

    push(start)
    while frames:
        frame = frames[-1]
        t, succ, idx, best = frame
        if idx < len(succ):
            frame[2] += 1
            child = succ[idx]
            if child in best_of:
                if 1 + best_of[child] > frame[3]:
                    frame[3] = 1 + best_of[child]
            elif child in on_stack:
                raise NotTerminating(
                    f"rewrite cycle through '{_word_from_ids(table, child)}': "
                    "derivation lengths are unbounded"
                )
            else:
                push(child)
        else:
            frames.pop()
            on_stack.discard(t)
            best_of[t] = best
            if frames and 1 + best > frames[-1][3]:
                frames[-1][3] = 1 + best
    return best_of[start]
