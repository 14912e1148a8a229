"""
Aho-Corasick automaton of a subset seed, the baseline S_pi is compared to.

States are the words A with |A| < s matched letterwise by the seed prefix of
the same length; a transition leads to the longest such word that is a suffix
of Aa. Every occurrence collapses into one absorbing sink, so words of length
s never become trie nodes. The sink is state 0 and the root (empty word)
state 1, as in seed_automaton.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from deps.alphabet_seed import Seed
from deps.dfa_core import Dfa, access_words, reachable, run
from deps.seed_automaton import (FINAL, FINAL_ID, INITIAL_ID, SpiState,
                                 brute_force_state, check_same_alphabet)

logger = logging.getLogger(__name__)

ROOT_LABEL = 'ε'


def _word_label(letters: Sequence[str], word: Tuple[int, ...]) -> str:
    if not word:
        return ROOT_LABEL
    glue = '' if all(len(l) == 1 for l in letters) else '.'
    return glue.join(letters[a] for a in word)


def build_ac_multi(seeds: Sequence[Seed]) -> Dfa:
    """Trie over the prefix-matched words of all *seeds*, failure links
    resolved into a complete transition table."""
    check_same_alphabet(seeds)
    alphabet = seeds[0].alignment
    n_letters = len(alphabet)
    everyone = tuple(range(len(seeds)))
    words: List[Tuple[int, ...]] = [(), ()]
    fail = [FINAL_ID, INITIAL_ID]
    # seeds whose prefix matches the node word
    alive: List[Tuple[int, ...]] = [(), everyone]
    rows: List[List[int]] = [[FINAL_ID] * n_letters, [INITIAL_ID] * n_letters]
    queue = deque([INITIAL_ID])
    while queue:
        node = queue.popleft()
        depth = len(words[node]) + 1
        for a in range(n_letters):
            fallback = INITIAL_ID if node == INITIAL_ID else rows[fail[node]][a]
            extended = tuple(i for i in alive[node]
                             if depth <= seeds[i].span
                             and seeds[i].position_matches(depth, a))
            if fallback == FINAL_ID \
                    or any(depth == seeds[i].span for i in extended):
                rows[node][a] = FINAL_ID
            elif extended:
                child = len(words)
                words.append(words[node] + (a,))
                fail.append(fallback)
                alive.append(extended)
                rows.append([INITIAL_ID] * n_letters)
                queue.append(child)
                rows[node][a] = child
            else:
                rows[node][a] = fallback
    labels = ('<>',) + tuple(_word_label(alphabet.letters, w) for w in words[1:])
    logger.debug('AC automaton for %s: %i states',
                 ' '.join(map(str, seeds)), len(words))
    return Dfa(rows, INITIAL_ID, frozenset({FINAL_ID}), labels,
               alphabet.letters)


def build_ac(seed: Seed) -> Dfa:
    return build_ac_multi([seed])


def ac_word_for_state(seed: Seed, access_word: Sequence[int],
                      state: SpiState) -> Tuple[int, ...]:
    """AC word mapped onto *state*: the last max{X} letters before the
    trailing run of a word C reaching <X,t>, followed by that run."""
    keep = seed.z(state.x_set.bit_length()) + state.t
    return tuple(access_word[len(access_word) - keep:]) if keep else ()


@dataclass
class SurjectionReport:
    """AC state id -> S_pi state id, and what went wrong if anything."""
    mapping: Dict[int, int] = field(default_factory=dict)
    problems: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def surjection_map(ac: Dfa, spi: Dfa, seed: Seed) -> SurjectionReport:
    """Map every AC word A = A'1^t onto <X,t> with X the non-'#' prefixes
    matching a suffix of A', then check that the map is onto the reachable
    states of *spi* and commutes with both transition functions."""
    report = SurjectionReport()
    spi_ids = {spi.label(q): q for q in range(spi.n_states)}
    words = access_words(ac)
    for q in reachable(ac):
        image = FINAL if ac.is_final(q) else brute_force_state(seed, words[q])
        label = image.label(seed)
        if label not in spi_ids:
            report.problems.append(f'AC state {ac.label(q)} maps to {label},'
                                   ' unknown to S_pi')
            continue
        report.mapping[q] = spi_ids[label]
    if report.problems:
        return report

    if report.mapping.get(ac.initial) != spi.initial:
        report.problems.append('root does not map to the initial state')
    for q in ac.finals:
        if q in report.mapping and not spi.is_final(report.mapping[q]):
            report.problems.append(f'sink {ac.label(q)} maps to a non-final'
                                   ' state')
    for q, image in report.mapping.items():
        for a in range(ac.n_letters):
            lhs = report.mapping[int(ac.transitions[q, a])]
            rhs = int(spi.transitions[image, a])
            if lhs != rhs:
                report.problems.append(
                    f'f(delta({ac.label(q)},{ac.letter(a)})) = {spi.label(lhs)}'
                    f' but delta({spi.label(image)},{ac.letter(a)})'
                    f' = {spi.label(rhs)}')

    hit = set(report.mapping.values())
    spi_words = access_words(spi)
    for q in reachable(spi):
        if q not in hit:
            report.problems.append(f'S_pi state {spi.label(q)} has no preimage')
            continue
        if spi.is_final(q):
            continue
        state = brute_force_state(seed, spi_words[q])
        word = ac_word_for_state(seed, spi_words[q], state)
        if report.mapping.get(run(ac, word)) != q:
            report.problems.append(f'constructed preimage of {spi.label(q)}'
                                   ' maps elsewhere')
    if report.problems:
        logger.info('surjection check for %s: %i problems', seed,
                    len(report.problems))
    return report
