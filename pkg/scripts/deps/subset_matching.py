"""
Subset seeds over degenerate texts.

Pattern and text letters both denote nonempty subsets of a base alphabet
(typically IUPAC nucleotide codes over A C G T). A pattern letter b matches a
text letter a under one of three semantics:

    exact         text letters are base letters, a in b
    inclusion     a is a subset of b
    intersection  a and b share a base letter

generalize_seed() turns a pattern into an ordinary subset seed over the text
alphabet, so that seed_automaton builds the matching automaton unchanged. The
text letters matched by every pattern position (the universal set T) take the
role of the match letter: a trailing run of T letters is counted by t, and
positions matching exactly T are the '#' positions.
"""

import enum
import logging
import string
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from deps import consts
from deps.alphabet_seed import MAX_LETTERS, AlignmentAlphabet, Seed, \
    SeedAlphabet

logger = logging.getLogger(__name__)

HASH_SYMBOL = '#'
RUN_LETTER_RULES = ('universal', 'none')


class DegenerateError(ValueError):
    """Invalid degenerate alphabet, pattern or text."""


class MatchSemantics(enum.Enum):
    EXACT = 'exact'
    INCLUSION = 'inclusion'
    INTERSECTION = 'intersection'

    def matches(self, pattern_mask: int, text_mask: int) -> bool:
        if self is MatchSemantics.INCLUSION:
            return text_mask & ~pattern_mask == 0
        return bool(text_mask & pattern_mask)


@dataclass(frozen=True)
class DegenerateAlphabet:
    """Named subsets (bit sets over *base_letters*) for texts and patterns."""
    base_letters: Tuple[str, ...]
    text_letters: Tuple[Tuple[str, int], ...]
    pattern_letters: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        if not self.base_letters:
            raise DegenerateError('empty base alphabet')
        if len(set(self.base_letters)) != len(self.base_letters):
            raise DegenerateError('duplicate base letters')
        full = (1 << len(self.base_letters)) - 1
        for kind, entries in (('text', self.text_letters),
                              ('pattern', self.pattern_letters)):
            names = [name for name, _ in entries]
            if len(set(names)) != len(names):
                raise DegenerateError(f'duplicate {kind} letter names')
            for name, mask in entries:
                if not mask:
                    raise DegenerateError(f'{kind} letter {name!r} is empty')
                if mask & ~full:
                    raise DegenerateError(f'{kind} letter {name!r} uses'
                                          ' unknown base letters')
                if name == HASH_SYMBOL:
                    raise DegenerateError(f'{HASH_SYMBOL!r} is reserved')

    def base_mask(self, letters: str) -> int:
        mask = 0
        for letter in letters:
            if letter not in self.base_letters:
                raise DegenerateError(f'unknown base letter {letter!r}')
            mask |= 1 << self.base_letters.index(letter)
        return mask

    def format_mask(self, mask: int) -> str:
        """Pattern letter name of *mask*, or a bracket group."""
        for name, m in self.pattern_letters:
            if m == mask:
                return name
        return '[%s]' % ''.join(l for i, l in enumerate(self.base_letters)
                                if mask >> i & 1)

    def text_alphabet(self, sem: MatchSemantics) -> Tuple[Tuple[str, int], ...]:
        """Text letters under *sem*: base letters for exact matching."""
        if sem is MatchSemantics.EXACT:
            return tuple((l, 1 << i) for i, l in enumerate(self.base_letters))
        return self.text_letters


def _entries(value: str, kind: str) -> List[Tuple[str, str]]:
    entries = []
    for entry in value.split(';'):
        entry = entry.strip()
        if not entry:
            continue
        name, sep, letters = entry.partition('=')
        name, letters = name.strip(), letters.strip()
        if not sep or len(name) != 1 or not letters:
            raise DegenerateError(f'malformed {kind} entry {entry!r}')
        entries.append((name, letters))
    return entries


def _iupac(base: Tuple[str, ...]) -> List[Tuple[str, str]]:
    if set(base) != set('ACGT'):
        raise DegenerateError('IUPAC codes need base letters A C G T')
    return list(consts.iupacCodes.items())


def _all_nonempty(base: Tuple[str, ...]) -> List[Tuple[str, str]]:
    """Every nonempty subset of *base*: IUPAC codes over A C G T, otherwise
    base letters for singletons and spare ASCII letters or digits for larger
    subsets, ordered by size and then by bit set."""
    if set(base) == set('ACGT'):
        return _iupac(base)
    n = len(base)
    if (1 << n) - 1 > MAX_LETTERS:
        raise DegenerateError(f'all-nonempty allows at most {MAX_LETTERS}'
                              f' text letters, {n} base letters give'
                              f' {(1 << n) - 1}')
    spare = (c for c in string.ascii_lowercase + string.ascii_uppercase
             + string.digits if c not in base and c != HASH_SYMBOL)
    entries = []
    for mask in sorted(range(1, 1 << n), key=lambda m: (bin(m).count('1'), m)):
        letters = ''.join(l for i, l in enumerate(base) if mask >> i & 1)
        entries.append((letters if len(letters) == 1 else next(spare),
                        letters))
    return entries


def parse_degenerate_spec(text: str) -> DegenerateAlphabet:
    """Parse

        base: A C G T
        textsets: all-nonempty        (or: base, or name=letters; ...)
        patsets: iupac                (or: name=letters; ...)
    """
    fields: Dict[str, str] = {}
    for line in text.replace(' / ', '\n').splitlines():
        line = line.strip()
        if not line:
            continue
        key, sep, value = line.partition(':')
        key = key.strip()
        if not sep or key not in ('base', 'textsets', 'patsets'):
            raise DegenerateError(f'unexpected line {line!r}')
        if key in fields:
            raise DegenerateError(f'duplicate {key!r} line')
        fields[key] = value.strip()
    missing = {'base', 'textsets', 'patsets'} - set(fields)
    if missing:
        raise DegenerateError(f'missing lines: {", ".join(sorted(missing))}')

    base = tuple(fields['base'].split())
    if any(len(l) != 1 for l in base):
        raise DegenerateError('base letters must be single characters')

    def masks(entries):
        result = []
        for name, letters in entries:
            mask = 0
            for letter in letters:
                if letter not in base:
                    raise DegenerateError(f'unknown base letter {letter!r}'
                                          f' in {name!r}')
                mask |= 1 << base.index(letter)
            result.append((name, mask))
        return tuple(result)

    textsets = fields['textsets']
    if textsets == 'base':
        text_entries = [(l, l) for l in base]
    elif textsets == 'all-nonempty':
        text_entries = _all_nonempty(base)
    else:
        text_entries = _entries(textsets, 'textsets')
    patsets = fields['patsets']
    pattern_entries = _iupac(base) if patsets == 'iupac' \
        else _entries(patsets, 'patsets')
    alpha = DegenerateAlphabet(base, masks(text_entries),
                               masks(pattern_entries))
    logger.debug('degenerate alphabet: %i base, %i text, %i pattern letters',
                 len(base), len(alpha.text_letters), len(alpha.pattern_letters))
    return alpha


def iupac_alphabet() -> DegenerateAlphabet:
    """A C G T base, the 15 nonempty subsets as text letters, IUPAC patterns."""
    return parse_degenerate_spec('base: A C G T\ntextsets: all-nonempty\n'
                                 'patsets: iupac\n')


def parse_pattern(alpha: DegenerateAlphabet, text: str) -> Tuple[int, ...]:
    """Pattern letters and bracket groups, e.g. "[GA]GGN", as base masks.
    Inside brackets both base letters and pattern letter names are accepted
    and united."""
    names = dict(alpha.pattern_letters)
    pattern: List[int] = []
    offset = 0
    text = text.strip()
    while offset < len(text):
        char = text[offset]
        if char == '[':
            close = text.find(']', offset)
            if close < 0:
                raise DegenerateError(f'unclosed bracket at position'
                                      f' {offset + 1}')
            mask = 0
            for member in text[offset + 1:close]:
                if member in names:
                    mask |= names[member]
                elif member in alpha.base_letters:
                    mask |= alpha.base_mask(member)
                else:
                    raise DegenerateError(f'unknown pattern letter {member!r}'
                                          f' in group at position'
                                          f' {offset + 1}')
            if not mask:
                raise DegenerateError(f'empty group at position {offset + 1}')
            pattern.append(mask)
            offset = close + 1
        elif char in names:
            pattern.append(names[char])
            offset += 1
        else:
            raise DegenerateError(f'unknown pattern letter {char!r} at position'
                                  f' {offset + 1}')
    if not pattern:
        raise DegenerateError('empty pattern')
    return tuple(pattern)


def format_pattern(alpha: DegenerateAlphabet, pattern: Sequence[int]) -> str:
    return ''.join(alpha.format_mask(mask) for mask in pattern)


def parse_degenerate_text(alpha: DegenerateAlphabet, sem: MatchSemantics,
                          text: str) -> Tuple[int, ...]:
    """One text letter per character, as indices into text_alphabet(sem)."""
    index = {name: i for i, (name, _) in enumerate(alpha.text_alphabet(sem))}
    symbols = []
    for offset, char in enumerate(text, start=1):
        if char not in index:
            raise DegenerateError(f'unknown text letter {char!r} at position'
                                  f' {offset}')
        symbols.append(index[char])
    return tuple(symbols)


def position_match_sets(pattern: Sequence[int], alpha: DegenerateAlphabet,
                        sem: MatchSemantics) -> List[int]:
    """For every pattern position, the bit set of matching text letters."""
    letters = alpha.text_alphabet(sem)
    sets = []
    for position, mask in enumerate(pattern, start=1):
        matched = 0
        for i, (_, text_mask) in enumerate(letters):
            if sem.matches(mask, text_mask):
                matched |= 1 << i
        if not matched:
            raise DegenerateError(f'pattern position {position} matches no'
                                  ' text letter')
        sets.append(matched)
    return sets


def generalize_seed(pattern: Sequence[int], alpha: DegenerateAlphabet,
                    sem: MatchSemantics, run_letters: str = 'universal') \
        -> Tuple[AlignmentAlphabet, SeedAlphabet, Seed]:
    """Subset seed over the text alphabet equivalent to *pattern* under
    *sem*.

    run_letters='universal' makes T, the text letters every position
    matches, the run letters; 'none' disables the run counter so that every
    position is a non-'#' position."""
    if not pattern:
        raise DegenerateError('empty pattern')
    if run_letters not in RUN_LETTER_RULES:
        raise DegenerateError(f'unknown run letter rule {run_letters!r}')
    sets = position_match_sets(pattern, alpha, sem)
    universal = 0
    if run_letters == 'universal':
        universal = sets[0]
        for matched in sets[1:]:
            universal &= matched
    letters = tuple(name for name, _ in alpha.text_alphabet(sem))
    match_index = (universal & -universal).bit_length() - 1 if universal \
        else None
    alignment = AlignmentAlphabet(letters, match_index, universal)

    entries: Dict[str, int] = {HASH_SYMBOL: universal}
    symbol_of: Dict[int, str] = {universal: HASH_SYMBOL}
    for mask, matched in zip(pattern, sets):
        if matched not in symbol_of:
            symbol = alpha.format_mask(mask)
            if symbol in entries:
                symbol = '%s%i' % (symbol, len(entries))
            symbol_of[matched] = symbol
            entries[symbol] = matched
    seed_alphabet = SeedAlphabet(alignment, entries, HASH_SYMBOL)
    seed = Seed(seed_alphabet, tuple(symbol_of[m] for m in sets))
    logger.debug('generalized %s (%s, run letters %s): T={%s}, r=%i',
                 format_pattern(alpha, pattern), sem.value, run_letters,
                 ','.join(alignment.unpack(universal)), seed.r)
    return alignment, seed_alphabet, seed


def naive_degenerate_match(pattern: Sequence[int], text: Sequence[int],
                           sem: MatchSemantics) -> List[int]:
    """1-based start positions; *pattern* and *text* are base masks."""
    m = len(pattern)
    return [p + 1 for p in range(len(text) - m + 1)
            if all(sem.matches(pattern[i], text[p + i]) for i in range(m))]


def text_masks(alpha: DegenerateAlphabet, sem: MatchSemantics,
               symbols: Sequence[int]) -> Tuple[int, ...]:
    letters = alpha.text_alphabet(sem)
    return tuple(letters[i][1] for i in symbols)


def is_reference_motif(pattern: Sequence[int],
                       alpha: DegenerateAlphabet) -> bool:
    """Whether *pattern* is the E. coli translation initiation motif over an
    A C G T base."""
    if set(alpha.base_letters) != set('ACGT'):
        return False
    reference = DegenerateAlphabet(alpha.base_letters, (),
                                   tuple((n, alpha.base_mask(l)) for n, l
                                         in consts.iupacCodes.items()))
    return tuple(pattern) == parse_pattern(reference, consts.ecoliMotif)


def reference_check(pattern: Sequence[int], alpha: DegenerateAlphabet,
                    sem: MatchSemantics, states: int, minimal: int) \
        -> List[str]:
    """Diagnostics when the motif is the E. coli one and the built counts
    differ from the published (states, minimal states)."""
    if not is_reference_motif(pattern, alpha):
        return []
    if sem is not MatchSemantics.EXACT:
        full = sorted(m for _, m in alpha.text_letters)
        if full != list(range(1, 16)):
            return []
    expected = consts.ecoliReferenceCounts[sem.value]
    if (states, minimal) == expected:
        logger.info('%s motif counts match the published %i/%i', sem.value,
                    *expected)
        return []
    return ['%s motif: built %i states (minimal %i), published %i (minimal %i)'
            % (sem.value, states, minimal, expected[0], expected[1])]
