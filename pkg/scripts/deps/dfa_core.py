"""
Generic complete deterministic automaton with a dense transition table.

Every builder of this package produces a Dfa. The table is a read-only numpy
array of shape (n_states, n_letters); letters are referred to by their index
in the alphabet the automaton was built over.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)


class DfaFormatError(ValueError):
    """Malformed automaton or serialization document."""


@dataclass(frozen=True, eq=False)
class Dfa:
    """Complete DFA. *labels* and *letters* are optional display data."""
    transitions: np.ndarray
    initial: int
    finals: FrozenSet[int]
    labels: Optional[Tuple[str, ...]] = None
    letters: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        table = np.array(self.transitions, dtype=np.int64, copy=True)
        if table.ndim != 2 or table.shape[0] == 0 or table.shape[1] == 0:
            raise DfaFormatError(f'transition table must be a non-empty'
                                 f' matrix, got shape {table.shape}')
        n_states = table.shape[0]
        if table.min() < 0 or table.max() >= n_states:
            raise DfaFormatError('transition to a non-existent state')
        if not 0 <= self.initial < n_states:
            raise DfaFormatError(f'initial state {self.initial} out of range')
        finals = frozenset(int(q) for q in self.finals)
        if any(not 0 <= q < n_states for q in finals):
            raise DfaFormatError('final state out of range')
        if self.labels is not None and len(self.labels) != n_states:
            raise DfaFormatError('one label per state required')
        if self.letters is not None and len(self.letters) != table.shape[1]:
            raise DfaFormatError('one letter symbol per column required')
        table.setflags(write=False)
        object.__setattr__(self, 'transitions', table)
        object.__setattr__(self, 'finals', finals)

    @property
    def n_states(self) -> int:
        return self.transitions.shape[0]

    @property
    def n_letters(self) -> int:
        return self.transitions.shape[1]

    def is_final(self, state: int) -> bool:
        return state in self.finals

    def label(self, state: int) -> str:
        if self.labels is None:
            return str(state)
        return self.labels[state]

    def letter(self, index: int) -> str:
        if self.letters is None:
            return str(index)
        return self.letters[index]

    def __eq__(self, other):
        if not isinstance(other, Dfa):
            return NotImplemented
        return (self.initial == other.initial
                and self.finals == other.finals
                and self.labels == other.labels
                and np.array_equal(self.transitions, other.transitions))

    __hash__ = None


def run(d: Dfa, word: Iterable[int], start: Optional[int] = None) -> int:
    """State reached from *start* (default initial) reading letter indices."""
    state = d.initial if start is None else start
    table = d.transitions
    for letter in word:
        state = int(table[state, letter])
    return state


def accepts(d: Dfa, word: Iterable[int]) -> bool:
    return d.is_final(run(d, word))


def _bfs(d: Dfa) -> Iterator[Tuple[int, Optional[int], Optional[int]]]:
    """Yield (state, parent, letter) for reachable states in BFS order."""
    table = d.transitions.tolist()
    seen = {d.initial}
    queue = deque([d.initial])
    yield d.initial, None, None
    while queue:
        state = queue.popleft()
        for letter, target in enumerate(table[state]):
            if target not in seen:
                seen.add(target)
                queue.append(target)
                yield target, state, letter


def reachable(d: Dfa) -> List[int]:
    """Reachable states, breadth-first from the initial state."""
    return [state for state, _, _ in _bfs(d)]


def reachable_count(d: Dfa) -> int:
    return len(reachable(d))


def access_words(d: Dfa) -> List[Optional[Tuple[int, ...]]]:
    """Shortest (then alphabetically first) word reaching every state; None
    for unreachable states."""
    words: List[Optional[Tuple[int, ...]]] = [None] * d.n_states
    for state, parent, letter in _bfs(d):
        words[state] = () if parent is None else words[parent] + (letter,)
    return words


def _renumber(d: Dfa, order: Sequence[int]) -> Dfa:
    new_id = {old: new for new, old in enumerate(order)}
    table = d.transitions
    transitions = [[new_id[int(t)] for t in table[old]] for old in order]
    labels = None
    if d.labels is not None:
        labels = tuple(d.labels[old] for old in order)
    return Dfa(transitions, new_id[d.initial],
               frozenset(new_id[q] for q in d.finals if q in new_id),
               labels, d.letters)


def prune(d: Dfa) -> Dfa:
    """Drop unreachable states, keeping the relative order of the others."""
    order = sorted(reachable(d))
    if len(order) == d.n_states:
        return d
    return _renumber(d, order)


def _refine(table: np.ndarray, finals: FrozenSet[int]) -> List[int]:
    """Hopcroft partition refinement. Returns the block of every state.

    Blocks occupy contiguous ranges of *elems*; marking a state moves it to
    the marked prefix of its block so a split costs the size of the marked
    part only."""
    n, k = table.shape
    preds, offsets = [], []
    for c in range(k):
        column = table[:, c]
        preds.append(np.argsort(column, kind='stable').tolist())
        offsets.append(np.concatenate(
            ([0], np.cumsum(np.bincount(column, minlength=n)))).tolist())

    final_states = sorted(finals)
    elems = final_states + [q for q in range(n) if q not in finals]
    loc = [0] * n
    for i, q in enumerate(elems):
        loc[q] = i
    block_of = [0] * n
    first: List[int] = []
    end: List[int] = []
    for lo, hi in ((0, len(final_states)), (len(final_states), n)):
        if lo < hi:
            for i in range(lo, hi):
                block_of[elems[i]] = len(first)
            first.append(lo)
            end.append(hi)
    mid = list(first)
    worklist = set()
    if len(first) == 2:
        worklist.add(0 if end[0] - first[0] <= end[1] - first[1] else 1)

    while worklist:
        b = worklist.pop()
        splitter = elems[first[b]:end[b]]
        for c in range(k):
            pc, oc = preds[c], offsets[c]
            touched = []
            for q in splitter:
                for i in range(oc[q], oc[q + 1]):
                    p = pc[i]
                    bp = block_of[p]
                    j, m = loc[p], mid[bp]
                    if j < m:
                        continue
                    moved = elems[m]
                    elems[m], loc[p] = p, m
                    elems[j], loc[moved] = moved, j
                    if m == first[bp]:
                        touched.append(bp)
                    mid[bp] = m + 1
            for bp in touched:
                lo, m, hi = first[bp], mid[bp], end[bp]
                mid[bp] = lo
                if m == hi:
                    continue
                new = len(first)
                first.append(lo)
                end.append(m)
                mid.append(lo)
                first[bp] = mid[bp] = m
                for i in range(lo, m):
                    block_of[elems[i]] = new
                if bp in worklist or m - lo <= hi - m:
                    worklist.add(new)
                else:
                    worklist.add(bp)
    return block_of


def minimize(d: Dfa) -> Dfa:
    """Canonical minimal complete DFA of the same language, states numbered
    breadth-first from the initial state."""
    d = prune(d)
    block_of = _refine(d.transitions, d.finals)
    n_blocks = max(block_of) + 1
    representative = [0] * n_blocks
    for state in range(d.n_states - 1, -1, -1):
        representative[block_of[state]] = state
    table = d.transitions.tolist()
    quotient = Dfa([[block_of[t] for t in table[representative[b]]]
                    for b in range(n_blocks)],
                   block_of[d.initial],
                   frozenset(block_of[q] for q in d.finals),
                   None, d.letters)
    result = _renumber(quotient, reachable(quotient))
    logger.debug('minimized %i states to %i', d.n_states, result.n_states)
    return result


def equivalent(d1: Dfa, d2: Dfa) -> bool:
    """Language equality by the Hopcroft-Karp union-find check."""
    if d1.n_letters != d2.n_letters:
        raise DfaFormatError(f'alphabet size mismatch: {d1.n_letters} vs'
                             f' {d2.n_letters}')
    offset = d1.n_states
    t1 = d1.transitions.tolist()
    t2 = d2.transitions.tolist()
    parent = list(range(offset + d2.n_states))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    parent[offset + d2.initial] = d1.initial
    stack = [(d1.initial, d2.initial)]
    while stack:
        p, q = stack.pop()
        if d1.is_final(p) != d2.is_final(q):
            return False
        for a, b in zip(t1[p], t2[q]):
            ra, rb = find(a), find(offset + b)
            if ra != rb:
                parent[rb] = ra
                stack.append((a, b))
    return True


def isomorphic_by_labels(d1: Dfa, d2: Dfa) -> bool:
    """Same labelled states with label-wise identical transitions."""
    if d1.labels is None or d2.labels is None or d1.n_letters != d2.n_letters:
        return False
    index2 = {label: q for q, label in enumerate(d2.labels)}
    if len(index2) != d2.n_states or sorted(d1.labels) != sorted(d2.labels):
        return False
    mapping = [index2[label] for label in d1.labels]
    if mapping[d1.initial] != d2.initial:
        return False
    if {mapping[q] for q in d1.finals} != set(d2.finals):
        return False
    t1 = d1.transitions.tolist()
    t2 = d2.transitions.tolist()
    return all(mapping[t] == t2[mapping[q]][c]
               for q in range(d1.n_states) for c, t in enumerate(t1[q]))


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace('\\', '\\\\').replace('"', r'\"'))


def export_dot(d: Dfa, name: str = 'automaton') -> str:
    """Graphviz digraph; parallel edges are merged into one labelled edge."""
    lines = ['digraph {} {{'.format(_gvquote(name)),
             '  rankdir=LR;',
             '  start [shape=point];']
    for q in range(d.n_states):
        shape = 'doublecircle' if d.is_final(q) else 'circle'
        lines.append('  q{} [label={}, shape={}];'.format(
            q, _gvquote(d.label(q)), shape))
    lines.append('  start -> q{};'.format(d.initial))
    table = d.transitions.tolist()
    for q in range(d.n_states):
        edges = {}
        for c, target in enumerate(table[q]):
            edges.setdefault(target, []).append(d.letter(c))
        for target, letters in edges.items():
            lines.append('  q{} -> q{} [label={}];'.format(
                q, target, _gvquote(','.join(letters))))
    lines.append('}')
    return '\n'.join(lines) + '\n'


def serialize(d: Dfa) -> str:
    """Line-oriented text form, see deserialize()."""
    out = [f'dfa {d.n_states} {d.n_letters} {d.initial}',
           'finals: ' + ' '.join(map(str, sorted(d.finals)))]
    if d.letters is not None:
        out.append('letters: ' + ' '.join(d.letters))
    out.extend(' '.join(map(str, row)) for row in d.transitions.tolist())
    if d.labels is not None:
        out.extend(f'label {q} {label}' for q, label in enumerate(d.labels))
    return '\n'.join(out) + '\n'


def deserialize(text: str) -> Dfa:
    """Parse:

        dfa <n_states> <n_letters> <initial>
        finals: <ids...>
        [letters: <symbols...>]
        <n_states lines of n_letters target ids>
        [label <id> <text> ...]
    """
    lines = [l for l in text.splitlines() if l.strip()]
    if not lines:
        raise DfaFormatError('empty automaton document')
    header = lines[0].split()
    if len(header) != 4 or header[0] != 'dfa':
        raise DfaFormatError(f'bad header {lines[0]!r}')
    try:
        n_states, n_letters, initial = map(int, header[1:])
        if len(lines) < 2 or not lines[1].startswith('finals:'):
            raise DfaFormatError('missing "finals:" line')
        finals = frozenset(int(x) for x in lines[1][len('finals:'):].split())
        pos = 2
        letters = None
        if pos < len(lines) and lines[pos].startswith('letters:'):
            letters = tuple(lines[pos][len('letters:'):].split())
            pos += 1
        rows = []
        for _ in range(n_states):
            if pos >= len(lines):
                raise DfaFormatError(f'expected {n_states} transition rows')
            row = [int(x) for x in lines[pos].split()]
            if len(row) != n_letters:
                raise DfaFormatError(f'row {len(rows)} has {len(row)} entries,'
                                     f' expected {n_letters}')
            rows.append(row)
            pos += 1
    except ValueError as err:
        if isinstance(err, DfaFormatError):
            raise
        raise DfaFormatError(f'malformed automaton document: {err}') from None
    labels: Optional[List[str]] = None
    for line in lines[pos:]:
        parts = line.split(' ', 2)
        if parts[0] != 'label' or len(parts) < 2 or not parts[1].isdigit():
            raise DfaFormatError(f'unexpected line {line!r}')
        state = int(parts[1])
        if state >= n_states:
            raise DfaFormatError(f'label for non-existent state {state}')
        if labels is None:
            labels = [''] * n_states
        labels[state] = parts[2] if len(parts) > 2 else ''
    return Dfa(rows, initial, finals,
               tuple(labels) if labels is not None else None, letters)
