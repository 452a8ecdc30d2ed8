"""Independent oracles used to compute expected values.

Everything here deliberately avoids the library's own search strategies:
normal forms come from an exhaustive closure over *all* rewrite sequences,
arithmetic checks go through plain integer base conversion, and derivation
lengths are recomputed by value iteration over the whole word space.
"""

from collections import deque
import itertools

from garnorm import NormTable, Word


def brute_normal_forms(table: NormTable, w: Word) -> set[Word]:
    """All normal words reachable from w by any sequence of applications,
    found by exhaustive breadth-first closure (no strategy)."""
    entry = table.entry
    start = tuple(w)
    seen = {start}
    queue = deque([start])
    normals = set()
    while queue:
        cur = queue.popleft()
        moved = False
        for i in range(len(cur) - 1):
            c, d = entry(cur[i], cur[i + 1])
            if (c, d) != (cur[i], cur[i + 1]):
                moved = True
                nxt = cur[:i] + (c, d) + cur[i + 2 :]
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        if not moved:
            normals.add(Word(cur))
    return normals


def brute_is_normal(table: NormTable, w: Word) -> bool:
    return all(
        table.entry(w[i], w[i + 1]) == (w[i], w[i + 1]) for i in range(len(w) - 1)
    )


def alternating_count(table: NormTable, triple: Word, first: int, cap: int = 64):
    """Least number of alternating applications (positions first, other,
    first, ... with first in {1, 2}) reaching the unique brute-force normal
    form; every application counts.  None if cap is exceeded."""
    normals = brute_normal_forms(table, triple)
    assert len(normals) == 1, "oracle needs a confluent table"
    target = next(iter(normals))
    cur = tuple(triple)
    pos = first
    for count in range(cap + 1):
        if Word(cur) == target:
            return count
        c, d = table.entry(cur[pos - 1], cur[pos])
        cur = cur[: pos - 1] + (c, d) + cur[pos + 1 :]
        pos = 3 - pos
    return None


def all_words(alphabet, max_len: int, min_len: int = 1):
    for n in range(min_len, max_len + 1):
        for tup in itertools.product(alphabet.symbols, repeat=n):
            yield Word(tup)


def word_to_int(w: Word, base: int) -> int:
    """Most significant digit first; digit names must be integers."""
    value = 0
    for s in w:
        value = value * base + int(s.name)
    return value


def int_to_digits_lsb(value: int, base: int, count: int) -> list[int]:
    digits = []
    for _ in range(count):
        value, r = divmod(value, base)
        digits.append(r)
    return digits


def bulk_longest_derivations(table: NormTable, n: int, round_cap: int):
    """Longest derivation length for every length-n word at once, by value
    iteration with numpy; returns the maximum, or None if the lengths did
    not stabilise within round_cap rounds (cycle or bound violation)."""
    import numpy as np

    g = len(table.alphabet)
    total = g**n
    repl = np.arange(g * g, dtype=np.int64)
    syms = table.alphabet.symbols
    for a in range(g):
        for b in range(g):
            c, d = table.entry(syms[a], syms[b])
            repl[a * g + b] = c.id * g + d.id

    packed = np.arange(total, dtype=np.int64)
    positions = []
    for i in range(n - 1):
        shift = g ** (n - 2 - i)
        pairidx = (packed // shift) % (g * g)
        delta = (repl[pairidx] - pairidx) * shift
        mask = delta != 0
        positions.append((np.nonzero(mask)[0], (packed + delta)[mask]))

    lengths = np.zeros(total, dtype=np.int32)
    for _ in range(round_cap):
        prev = lengths.copy()
        for sources, targets in positions:
            # each word has at most one rewrite per position, so the
            # source indices are unique and fancy assignment is safe
            lengths[sources] = np.maximum(lengths[sources], lengths[targets] + 1)
        if np.array_equal(lengths, prev):
            return int(lengths.max())
    return None
