"""
The subset seed automaton S_pi.

A non-final state is a pair <X,t>: t is the length of the trailing run of
match letters read so far, X the set of non-'#' seed prefixes matching a
suffix of the text before that run. X is a bit set over indices 1..r of the
non-'#' positions z_1 < ... < z_r (bit i-1 for index i), so k(X) is simply
X.bit_length(). All final states are merged into one absorbing state.

Two builders produce the same automaton with the same state numbering (final
state 0, initial state 1, the others in breadth-first creation order):

* build_naive() applies the transition function and deduplicates states with
  a dictionary;
* build_incremental() follows the Fail / RevMaxFail construction, where every
  transition costs a constant number of table look-ups and no state lookup
  structure is used.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from deps.alphabet_seed import AlignmentText, AlphabetError, Seed
from deps.dfa_core import Dfa

logger = logging.getLogger(__name__)

FINAL_ID = 0
INITIAL_ID = 1

Letter = Union[str, int]


class InvariantError(AssertionError):
    """A construction produced a result violating a proven property."""


@dataclass(frozen=True)
class SpiState:
    """<X,t> with X as a bit set over prefix indices, or the final state."""
    x_set: int = 0
    t: int = 0
    is_final: bool = False

    def positions(self, seed: Seed) -> List[int]:
        return [seed.z(i + 1) for i in range(self.x_set.bit_length())
                if self.x_set >> i & 1]

    def label(self, seed: Seed) -> str:
        if self.is_final:
            return '<>'
        return '<{%s},%i>' % (','.join(map(str, self.positions(seed))), self.t)


FINAL = SpiState(is_final=True)
INITIAL = SpiState()


def _letter_index(seed: Seed, letter: Letter) -> int:
    if isinstance(letter, str):
        return seed.alignment.index(letter)
    if not 0 <= letter < len(seed.alignment):
        raise AlphabetError(f'letter index {letter} out of range')
    return letter


def _max_position(seed: Seed, x_set: int) -> int:
    """max{X} as a seed position, max{empty} = 0."""
    return seed.z(x_set.bit_length())


def _x_step(seed: Seed, x_set: int, t: int, a: int) -> int:
    """X_U | X_V for a non-run letter *a* read in state <x_set,t>."""
    index_of = seed.index_of
    s = seed.span
    y = 0
    for position in range(1, min(t + 1, s) + 1):
        if seed.position_matches(position, a):
            y |= 1 << (index_of[position] - 1)
    for i in range(x_set.bit_length()):
        if x_set >> i & 1:
            position = seed.z(i + 1) + t + 1
            if position <= s and index_of[position] \
                    and seed.position_matches(position, a):
                y |= 1 << (index_of[position] - 1)
    return y


def _close(seed: Seed, x_set: int, t: int) -> SpiState:
    if _max_position(seed, x_set) + t >= seed.span:
        return FINAL
    return SpiState(x_set, t)


def psi_step(seed: Seed, q: SpiState, a: Letter) -> SpiState:
    """The transition function of S_pi."""
    index = _letter_index(seed, a)
    if q.is_final:
        return q
    if seed.alignment.is_run(index):
        return _close(seed, q.x_set, q.t + 1)
    return _close(seed, _x_step(seed, q.x_set, q.t, index), 0)


def size_bound(seed: Seed) -> int:
    """Upper bound on the number of states: (w+1)*2^r, or w*2^r plus the
    final state for seeds starting with '#'."""
    if seed.starts_with_hash():
        return seed.weight * 2 ** seed.r + 1
    return (seed.weight + 1) * 2 ** seed.r


def build_naive(seed: Seed) -> Dfa:
    """Breadth-first application of psi_step with dictionary deduplication."""
    n_letters = len(seed.alignment)
    states: List[SpiState] = [FINAL, INITIAL]
    ids: Dict[Tuple[int, int], int] = {(0, 0): INITIAL_ID}
    rows: List[List[int]] = [[FINAL_ID] * n_letters, []]
    queue = deque([INITIAL_ID])
    while queue:
        q = queue.popleft()
        row = rows[q]
        for a in range(n_letters):
            target = psi_step(seed, states[q], a)
            if target.is_final:
                row.append(FINAL_ID)
                continue
            key = (target.x_set, target.t)
            if key not in ids:
                ids[key] = len(states)
                states.append(target)
                rows.append([])
                queue.append(ids[key])
            row.append(ids[key])
    logger.debug('naive S_pi for %s: %i states', seed, len(states))
    return Dfa(rows, INITIAL_ID, frozenset({FINAL_ID}),
               tuple(st.label(seed) for st in states), seed.alignment.letters)


@dataclass(frozen=True)
class PrecomputedTables:
    """u_table[t][a]: bit set U(t,a) of prefixes matching 1^t a.
    v_table[k][t][a]: index j with z_j = z_k + t + 1 when that position is
    non-'#' and matches a, else 0 (the empty set).
    Entries for run letters are unused and hold 0."""
    u_table: Tuple[Tuple[int, ...], ...]
    v_table: Tuple[Tuple[Tuple[int, ...], ...], ...]


def precompute_tables(seed: Seed) -> PrecomputedTables:
    """U and V tables in O(|A|*r*s)."""
    s = seed.span
    n_letters = len(seed.alignment)
    alphabet = seed.alignment
    index_of = seed.index_of
    u_rows = []
    previous = [0] * n_letters
    for t in range(s):
        row = list(previous)
        position = t + 1
        for a in range(n_letters):
            if not alphabet.is_run(a) and index_of[position] \
                    and seed.position_matches(position, a):
                row[a] |= 1 << (index_of[position] - 1)
        u_rows.append(tuple(row))
        previous = row
    v_rows = []
    for k in range(seed.r + 1):
        per_t = []
        for t in range(s):
            position = seed.z(k) + t + 1
            per_t.append(tuple(
                index_of[position]
                if position <= s and index_of[position]
                and not alphabet.is_run(a)
                and seed.position_matches(position, a) else 0
                for a in range(n_letters)))
        v_rows.append(tuple(per_t))
    return PrecomputedTables(tuple(u_rows), tuple(v_rows))


class IncrementalBuilder:
    """Breadth-first construction with Fail and RevMaxFail.

    *fail*, *rev_max_fail*, *queue* and *op_counter* are the bookkeeping of
    one construction; a builder instance must not be shared between
    concurrent builds."""

    def __init__(self, seed: Seed, tables: Optional[PrecomputedTables] = None):
        self.seed = seed
        self.tables = tables or precompute_tables(seed)
        self.x_sets: List[int] = [-1, 0]
        self.ts: List[int] = [0, 0]
        self.fail: List[Optional[int]] = [None, None]
        self.rev_max_fail: List[Optional[int]] = [None, None]
        self.rows: List[List[int]] = []
        self.queue: deque = deque()
        self.op_counter = 0
        self.transitions_computed = 0
        self.z_of_k = (0,) + seed.r_positions

    def _create(self, x_set: int, t: int, fail: int) -> int:
        state = len(self.x_sets)
        self.x_sets.append(x_set)
        self.ts.append(t)
        self.fail.append(fail)
        self.rev_max_fail.append(None)
        self.rows.append([FINAL_ID] * len(self.seed.alignment))
        self.rev_max_fail[fail] = state
        self.queue.append(state)
        self.op_counter += 1
        return state

    def _is_final(self, x_set: int, t: int) -> bool:
        self.op_counter += 1
        return self.z_of_k[x_set.bit_length()] + t >= self.seed.span

    def _first_level(self) -> None:
        alphabet = self.seed.alignment
        n_letters = len(alphabet)
        self.rows = [[FINAL_ID] * n_letters, [INITIAL_ID] * n_letters]
        # at most two distinct targets leave q0: <{},1> and <{1},0>
        created: Dict[int, int] = {}
        for a in range(n_letters):
            self.transitions_computed += 1
            self.op_counter += 1
            if alphabet.is_run(a):
                x_set, t = 0, 1
            elif self.seed.position_matches(1, a):
                x_set, t = 1, 0
            else:
                continue
            if self._is_final(x_set, t):
                target = FINAL_ID
            elif t in created:
                target = created[t]
            else:
                target = created[t] = self._create(x_set, t, INITIAL_ID)
            self.rows[INITIAL_ID][a] = target

    def build(self) -> Dfa:
        seed = self.seed
        alphabet = seed.alignment
        n_letters = len(alphabet)
        u_table, v_table = self.tables.u_table, self.tables.v_table
        x_sets, ts, rows = self.x_sets, self.ts, self.rows
        self._first_level()
        rows = self.rows
        while self.queue:
            q = self.queue.popleft()
            x_set, t = x_sets[q], ts[q]
            k = x_set.bit_length()
            fail_row = rows[self.fail[q]]
            row = rows[q]
            for a in range(n_letters):
                self.transitions_computed += 1
                self.op_counter += 1
                prev = fail_row[a]
                if prev == FINAL_ID:
                    row[a] = FINAL_ID
                    continue
                self.op_counter += 1
                if alphabet.is_run(a):
                    y, t_y = x_set, t + 1
                elif x_set == 0:
                    y, t_y = u_table[t][a], 0
                else:
                    j = v_table[k][t][a]
                    y = x_sets[prev] | (1 << (j - 1)) if j else x_sets[prev]
                    t_y = 0
                rev = self.rev_max_fail[prev]
                self.op_counter += 1
                if rev is not None and ts[rev] == t_y and x_sets[rev] == y:
                    row[a] = rev
                    continue
                self.op_counter += 1
                if ts[prev] == t_y and x_sets[prev] == y:
                    row[a] = prev
                elif self._is_final(y, t_y):
                    row[a] = FINAL_ID
                else:
                    row[a] = self._create(y, t_y, prev)
        labels = tuple(
            FINAL.label(seed) if q == FINAL_ID
            else SpiState(self.x_sets[q], self.ts[q]).label(seed)
            for q in range(len(self.x_sets)))
        logger.debug('incremental S_pi for %s: %i states, %i transitions,'
                     ' %i steps', seed, len(self.x_sets),
                     self.transitions_computed, self.op_counter)
        return Dfa(rows, INITIAL_ID, frozenset({FINAL_ID}), labels,
                   alphabet.letters)


def build_incremental(seed: Seed) -> Dfa:
    """S_pi with constant work per transition after table precomputation."""
    return IncrementalBuilder(seed).build()


def check_same_alphabet(seeds: Sequence[Seed]) -> None:
    if not seeds:
        raise AlphabetError('at least one seed required')
    first = seeds[0].alphabet
    for seed in seeds[1:]:
        if seed.alphabet != first:
            raise AlphabetError(f'seed {seed} uses a different alphabet')


def multi_label(seeds: Sequence[Seed], x_sets: Sequence[int], t: int) -> str:
    parts = ['{%s}' % ','.join(map(str, SpiState(x).positions(seed)))
             for seed, x in zip(seeds, x_sets)]
    return '<%s,%i>' % (','.join(parts), t)


def build_multi(seeds: Sequence[Seed]) -> Dfa:
    """Automaton for "matched by at least one seed": states <X_1..X_k,t>
    with one shared run counter."""
    check_same_alphabet(seeds)
    seeds = list(seeds)
    alphabet = seeds[0].alignment
    n_letters = len(alphabet)

    def close(x_sets: Tuple[int, ...], t: int) -> Optional[Tuple[int, ...]]:
        if any(_max_position(seed, x) + t >= seed.span
               for seed, x in zip(seeds, x_sets)):
            return None
        return x_sets

    initial = (tuple(0 for _ in seeds), 0)
    states: List[Optional[Tuple[Tuple[int, ...], int]]] = [None, initial]
    ids = {initial: INITIAL_ID}
    rows: List[List[int]] = [[FINAL_ID] * n_letters, []]
    queue = deque([INITIAL_ID])
    while queue:
        q = queue.popleft()
        x_sets, t = states[q]
        for a in range(n_letters):
            if alphabet.is_run(a):
                target = close(x_sets, t + 1)
                t_y = t + 1
            else:
                target = close(tuple(_x_step(seed, x, t, a)
                                     for seed, x in zip(seeds, x_sets)), 0)
                t_y = 0
            if target is None:
                rows[q].append(FINAL_ID)
                continue
            key = (target, t_y)
            if key not in ids:
                ids[key] = len(states)
                states.append(key)
                rows.append([])
                queue.append(ids[key])
            rows[q].append(ids[key])
    labels = ('<>',) + tuple(multi_label(seeds, x, t) for x, t in states[1:])
    logger.debug('multi-seed automaton for %s: %i states',
                 ' '.join(map(str, seeds)), len(states))
    return Dfa(rows, INITIAL_ID, frozenset({FINAL_ID}), labels,
               alphabet.letters)


def _symbols(text: Union[AlignmentText, Sequence[int]]) -> Sequence[int]:
    return text.symbols if isinstance(text, AlignmentText) else text


def first_hit(d: Dfa, text: Union[AlignmentText, Sequence[int]]) \
        -> Optional[int]:
    """Smallest 1-based end position p after which *d* is in a final state."""
    state = d.initial
    if d.is_final(state):
        return 0
    table = d.transitions
    for p, letter in enumerate(_symbols(text), start=1):
        state = int(table[state, letter])
        if d.is_final(state):
            return p
    return None


def brute_force_state(seed: Seed, prefix: Sequence[int]) -> SpiState:
    """<X,t> recomputed from its defining invariant after reading *prefix*."""
    alphabet = seed.alignment
    t = 0
    while t < len(prefix) and alphabet.is_run(prefix[len(prefix) - 1 - t]):
        t += 1
    end = len(prefix) - t
    x_set = 0
    for k, z in enumerate(seed.r_positions, start=1):
        if z <= end and all(seed.position_matches(i, prefix[end - z + i - 1])
                            for i in range(1, z + 1)):
            x_set |= 1 << (k - 1)
    return _close(seed, x_set, t)


def verify_state_invariant(seed: Seed,
                           text: Union[AlignmentText, Sequence[int]],
                           d: Optional[Dfa] = None) -> bool:
    """Run S_pi over every prefix of *text* and compare each state label with
    the brute-force state, up to the first final state."""
    if d is None:
        d = build_incremental(seed)
    symbols = list(_symbols(text))
    state = d.initial
    for p in range(len(symbols) + 1):
        if p:
            state = int(d.transitions[state, symbols[p - 1]])
        expected = brute_force_state(seed, symbols[:p])
        if d.label(state) != expected.label(seed):
            logger.info('state mismatch after %i letters: %s != %s', p,
                        d.label(state), expected.label(seed))
            return False
        if expected.is_final:
            break
    return True


def reachability_witness(seed: Seed, state: SpiState) -> List[int]:
    """Word reaching *state* in S_pi for a seed #_..._#: for
    X = {x_1 < ... < x_k}, a_p is the match letter iff p = x_k - x_i + 1 for
    some i, otherwise a mismatch letter; then t match letters."""
    alphabet = seed.alignment
    inner = set(seed.letters[1:-1])
    if seed.span < 2 or not seed.starts_with_hash() \
            or seed.letters[-1] != seed.alphabet.hash_symbol \
            or len(inner) > 1 or alphabet.match_index is None:
        raise AlphabetError(f'{seed} is not of the form #_..._#')
    mismatch = None
    if inner:
        candidates = seed.masks[1] & ~alphabet.run_mask
        if candidates:
            mismatch = (candidates & -candidates).bit_length() - 1
    if state.is_final or (state.x_set and mismatch is None):
        raise AlphabetError(f'no witness for {state.label(seed)}')
    one = alphabet.match_index
    positions = state.positions(seed)
    word: List[int] = []
    if positions:
        x_k = positions[-1]
        ones = {x_k - x + 1 for x in positions}
        word = [one if p in ones else mismatch for p in range(1, x_k + 1)]
    return word + [one] * state.t
