"""
Alignment alphabets, seed alphabets, seeds and alignment texts.

An alignment is a word over an alignment alphabet that contains a distinguished
match letter '1'. A seed is a word over a seed alphabet whose letters denote
subsets of the alignment alphabet, every subset containing '1', with '#'
denoting exactly {'1'}. Subsets are stored as bit sets over letter indices.

Positions are 1-based in every public interface.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from deps import consts

logger = logging.getLogger(__name__)

MAX_LETTERS = 32


class AlphabetError(ValueError):
    """Invalid alphabet specification, seed or text."""


@dataclass(frozen=True)
class AlignmentAlphabet:
    """Ordered alignment letters.

    *run_mask* is the bit set of letters acting as the match letter. Parsed
    alphabets always have run_mask == {match letter}; alphabets derived from
    degenerate texts may use a larger set or an empty one (then there is no
    *match_index*)."""
    letters: Tuple[str, ...]
    match_index: Optional[int] = None
    run_mask: Optional[int] = None

    def __post_init__(self):
        if not 1 <= len(self.letters) <= MAX_LETTERS:
            raise AlphabetError(f'alignment alphabet needs 1..{MAX_LETTERS}'
                                f' letters, got {len(self.letters)}')
        if len(set(self.letters)) != len(self.letters):
            raise AlphabetError(f'duplicate alignment letters in {self.letters}')
        if self.match_index is not None \
                and not 0 <= self.match_index < len(self.letters):
            raise AlphabetError(f'match index {self.match_index} out of range')
        if self.run_mask is None:
            object.__setattr__(self, 'run_mask',
                0 if self.match_index is None else 1 << self.match_index)
        if self.run_mask >> len(self.letters):
            raise AlphabetError('run letters outside the alphabet')

    def __len__(self):
        return len(self.letters)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.letters)) - 1

    @property
    def match_letter(self) -> Optional[str]:
        if self.match_index is None:
            return None
        return self.letters[self.match_index]

    def index(self, letter: str) -> int:
        """Index of *letter*, AlphabetError if unknown."""
        try:
            return self.letters.index(letter)
        except ValueError:
            raise AlphabetError(f'unknown alignment letter {letter!r}') from None

    def mask(self, letters: Iterable[str]) -> int:
        """Bit set of *letters*."""
        result = 0
        for letter in letters:
            result |= 1 << self.index(letter)
        return result

    def is_run(self, index: int) -> bool:
        return bool(self.run_mask >> index & 1)

    def unpack(self, mask: int) -> List[str]:
        return [l for i, l in enumerate(self.letters) if mask >> i & 1]


@dataclass(frozen=True)
class SeedAlphabet:
    """Seed symbols mapped to subsets (bit sets) of *alignment* letters."""
    alignment: AlignmentAlphabet
    entries: Mapping[str, int]
    hash_symbol: str

    def __post_init__(self):
        run = self.alignment.run_mask
        if self.hash_symbol not in self.entries:
            raise AlphabetError(f'no entry for hash symbol {self.hash_symbol!r}')
        if self.entries[self.hash_symbol] != run:
            raise AlphabetError(
                f'{self.hash_symbol!r} subset must equal'
                f' {{{",".join(self.alignment.unpack(run))}}}'
                ' (the match letter) exactly')
        for symbol, subset in self.entries.items():
            if not symbol:
                raise AlphabetError('empty seed symbol')
            if subset & run != run:
                raise AlphabetError(f'seed letter {symbol!r} does not contain'
                                    f' the match letter')
            if subset & ~self.alignment.full_mask:
                raise AlphabetError(f'seed letter {symbol!r} references an'
                                    f' unknown alignment letter')
            if symbol != self.hash_symbol and subset == run:
                raise AlphabetError(f'seed letter {symbol!r} duplicates'
                                    f' {self.hash_symbol!r}')

    def subset(self, symbol: str) -> int:
        try:
            return self.entries[symbol]
        except KeyError:
            raise AlphabetError(f'unknown seed letter {symbol!r}') from None

    def symbols(self) -> List[str]:
        return list(self.entries)


@dataclass(frozen=True)
class Seed:
    """A subset seed pi_1..pi_s.

    Derived values follow the usual notation: *span* s, *weight* w (count of
    '#'), r = s - w, and *r_positions* z_1 < ... < z_r, the non-'#'
    positions. *masks* holds the subset of every position (0-based list), and
    *index_of* maps a position to its index in r_positions (0 for '#')."""
    alphabet: SeedAlphabet
    letters: Tuple[str, ...]
    masks: Tuple[int, ...] = field(init=False, repr=False)
    r_positions: Tuple[int, ...] = field(init=False, repr=False)
    index_of: Tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if not self.letters:
            raise AlphabetError('empty seed')
        masks = tuple(self.alphabet.subset(l) for l in self.letters)
        r_positions = tuple(i for i, l in enumerate(self.letters, start=1)
                            if l != self.alphabet.hash_symbol)
        index_of = [0] * (len(self.letters) + 1)
        for k, z in enumerate(r_positions, start=1):
            index_of[z] = k
        object.__setattr__(self, 'masks', masks)
        object.__setattr__(self, 'r_positions', r_positions)
        object.__setattr__(self, 'index_of', tuple(index_of))

    def __str__(self):
        return ''.join(self.letters)

    @property
    def span(self) -> int:
        return len(self.letters)

    @property
    def r(self) -> int:
        return len(self.r_positions)

    @property
    def weight(self) -> int:
        return self.span - self.r

    @property
    def alignment(self) -> AlignmentAlphabet:
        return self.alphabet.alignment

    def z(self, k: int) -> int:
        """z_k, with z_0 = 0."""
        return self.r_positions[k - 1] if k else 0

    def position_matches(self, position: int, letter_index: int) -> bool:
        """Whether pi_position contains the letter with *letter_index*."""
        return bool(self.masks[position - 1] >> letter_index & 1)

    def starts_with_hash(self) -> bool:
        return self.letters[0] == self.alphabet.hash_symbol


@dataclass(frozen=True)
class AlignmentText:
    """An alignment as letter indices into *alphabet*."""
    alphabet: AlignmentAlphabet
    symbols: Tuple[int, ...]

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return ''.join(self.alphabet.letters[i] for i in self.symbols)


def _field(line: str, name: str) -> str:
    key, sep, value = line.partition(':')
    if not sep or key.strip() != name:
        raise AlphabetError(f'expected "{name}:" line, got {line!r}')
    return value.strip()


def parse_alphabet_spec(text: str) -> Tuple[AlignmentAlphabet, SeedAlphabet]:
    """Parse the four line alphabet specification:

        align: 1 h 0
        match: 1
        seed: #=1; @=1h; _=1h0
        hash: #

    Lines may also be separated with " / " to allow one-line specs."""
    lines = [l.strip() for l in text.replace(' / ', '\n').splitlines()]
    lines = [l for l in lines if l]
    if len(lines) != 4:
        raise AlphabetError(f'alphabet spec needs 4 lines, got {len(lines)}')
    letters = tuple(_field(lines[0], 'align').split())
    match = _field(lines[1], 'match')
    if match not in letters:
        raise AlphabetError(f'match letter {match!r} is not an alignment letter')
    alignment = AlignmentAlphabet(letters, letters.index(match))
    entries: Dict[str, int] = {}
    for entry in _field(lines[2], 'seed').split(';'):
        entry = entry.strip()
        if not entry:
            continue
        symbol, sep, subset = entry.partition('=')
        symbol = symbol.strip()
        if not sep or len(symbol) != 1:
            raise AlphabetError(f'malformed seed entry {entry!r}')
        if symbol in entries:
            raise AlphabetError(f'duplicate seed letter {symbol!r}')
        subset_letters = subset.strip()
        if len(set(subset_letters)) != len(subset_letters):
            raise AlphabetError(f'duplicate letters in seed entry {entry!r}')
        entries[symbol] = alignment.mask(subset_letters)
    hash_symbol = _field(lines[3], 'hash')
    seed_alphabet = SeedAlphabet(alignment, entries, hash_symbol)
    logger.debug('alphabets parsed: %i alignment letters, %i seed letters',
                 len(letters), len(entries))
    return alignment, seed_alphabet


def format_alphabet_spec(alignment: AlignmentAlphabet,
                         seed_alphabet: SeedAlphabet) -> str:
    """Serialize alphabets back to the line format of parse_alphabet_spec."""
    seed_entries = '; '.join(
        f'{symbol}={"".join(alignment.unpack(subset))}'
        for symbol, subset in seed_alphabet.entries.items())
    return (f'align: {" ".join(alignment.letters)}\n'
            f'match: {alignment.match_letter}\n'
            f'seed: {seed_entries}\n'
            f'hash: {seed_alphabet.hash_symbol}\n')


def builtin_alphabets(name: str) -> Tuple[AlignmentAlphabet, SeedAlphabet]:
    """The alphabets used for the published size tables."""
    try:
        return parse_alphabet_spec(consts.builtinAlphabets[name])
    except KeyError:
        raise AlphabetError(f'unknown built-in alphabet {name!r}') from None


def parse_seed(seed_alphabet: SeedAlphabet, text: str) -> Seed:
    """Parse a plain symbol string such as "#@_#"."""
    text = text.strip()
    for offset, symbol in enumerate(text, start=1):
        if symbol not in seed_alphabet.entries:
            raise AlphabetError(f'unknown seed letter {symbol!r} at position'
                                f' {offset}')
    return Seed(seed_alphabet, tuple(text))


def parse_text(alignment: AlignmentAlphabet, text: str) -> AlignmentText:
    """Parse one symbol per character, no separators."""
    symbols = []
    for offset, letter in enumerate(text, start=1):
        if letter not in alignment.letters:
            raise AlphabetError(f'unknown text letter {letter!r} at position'
                                f' {offset}')
        symbols.append(alignment.letters.index(letter))
    return AlignmentText(alignment, tuple(symbols))


def seed_letter_matches(seed_alphabet: SeedAlphabet, symbol: str,
                        letter: str) -> bool:
    """True iff alignment *letter* belongs to the subset of seed *symbol*."""
    index = seed_alphabet.alignment.index(letter)
    return bool(seed_alphabet.subset(symbol) >> index & 1)


def naive_match_positions(seed: Seed, text: AlignmentText) -> List[int]:
    """All 1-based positions p where seed matches text[p..p+s-1]."""
    s = seed.span
    symbols = text.symbols
    return [p + 1 for p in range(len(symbols) - s + 1)
            if all(seed.masks[i] >> symbols[p + i] & 1 for i in range(s))]


def load_alphabets(spec: str) -> Tuple[AlignmentAlphabet, SeedAlphabet]:
    """Built-in alphabet *spec* ("binary", "ternary") or a spec file path."""
    if spec in consts.builtinAlphabets:
        return builtin_alphabets(spec)
    try:
        text = Path(spec).read_text()
    except OSError as err:
        raise AlphabetError(f'cannot read alphabet spec {spec}: '
                            f'{err.strerror}') from err
    return parse_alphabet_spec(text)
