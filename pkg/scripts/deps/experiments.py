"""
Random seed generation and the automaton size statistics harness.

For every sample the harness builds the Aho-Corasick automaton, S_pi and the
minimal automaton of one seed (or of a tuple of seeds) and averages the state
counts. Seeds are drawn sequentially from one numpy Generator, so the output
only depends on the configuration and never on the number of worker
processes.
"""

import csv
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, TextIO, Tuple

import numpy as np
from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError

from deps import consts
from deps.ac_baseline import build_ac, build_ac_multi
from deps.alphabet_seed import AlphabetError, Seed, SeedAlphabet, load_alphabets
from deps.dfa_core import minimize, reachable_count
from deps.seed_automaton import (InvariantError, build_incremental,
                                 build_multi, size_bound)
from deps.yaml_merge import mergeYaml

logger = logging.getLogger(__name__)
yaml = YAML(typ='safe')


class StatsConfigError(ValueError):
    """Invalid statistics configuration."""


@dataclass(frozen=True)
class StatsConfig:
    """One statistics run: a CSV row per weight.

    Spans are drawn uniformly from w + span_extra[0] .. w + span_extra[1].
    *letter_weights* maps non-'#' seed letters to relative frequencies; None
    selects the per-alphabet default of consts.defaultLetterWeights, or
    uniform letters for alphabets read from a file."""
    alphabet: str = consts.defaultStatsConfig['alphabet']
    weights: Tuple[int, ...] = tuple(consts.defaultStatsConfig['weights'])
    span_extra: Tuple[int, int] = consts.defaultSpanExtra
    samples: int = consts.defaultSamples
    seeds_per_sample: int = 1
    letter_weights: Optional[Tuple[Tuple[str, float], ...]] = None
    rng_seed: int = consts.defaultRngSeed
    jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, 'weights', tuple(self.weights))
        object.__setattr__(self, 'span_extra', tuple(self.span_extra))
        if isinstance(self.letter_weights, Mapping):
            object.__setattr__(self, 'letter_weights',
                               tuple(self.letter_weights.items()))
        if self.letter_weights is not None:
            object.__setattr__(self, 'letter_weights', tuple(
                (str(letter), float(weight))
                for letter, weight in self.letter_weights))
            if any(weight < 0 for _, weight in self.letter_weights) \
                    or sum(w for _, w in self.letter_weights) <= 0:
                raise StatsConfigError('letter_weights must be non-negative'
                                       f' with a positive sum: '
                                       f'{self.letter_weights}')
        if not self.weights or any(w < 1 for w in self.weights):
            raise StatsConfigError(f'weights must be positive: {self.weights}')
        if len(self.span_extra) != 2 \
                or not 0 <= self.span_extra[0] <= self.span_extra[1]:
            raise StatsConfigError('span_extra must be two increasing'
                                   f' non-negative numbers: {self.span_extra}')
        if self.samples < 1:
            raise StatsConfigError(f'samples must be >= 1: {self.samples}')
        if self.seeds_per_sample < 1:
            raise StatsConfigError('seeds_per_sample must be >= 1:'
                                   f' {self.seeds_per_sample}')
        if self.jobs < 1:
            raise StatsConfigError(f'jobs must be >= 1: {self.jobs}')

    def resolved_letter_weights(self) -> Optional[Mapping[str, float]]:
        if self.letter_weights is not None:
            return dict(self.letter_weights)
        return consts.defaultLetterWeights.get(self.alphabet)


def load_stats_config(path: Optional[Path] = None,
                      overrides: Optional[Mapping[str, Any]] = None) \
        -> StatsConfig:
    """Defaults, then the YAML document at *path*, then *overrides* (None
    values are ignored)."""
    document: Dict[str, Any] = dict(consts.defaultStatsConfig)
    if path is not None:
        try:
            loaded = yaml.load(Path(path))
        except OSError as err:
            raise StatsConfigError(f'cannot read {path}: {err.strerror}') \
                from err
        except YAMLError as err:
            raise StatsConfigError(f'{path} is not valid YAML: {err}') from err
        if loaded is None:
            loaded = {}
        if not isinstance(loaded, dict):
            raise StatsConfigError(f'{path}: expected a mapping')
        document = mergeYaml(loaded, document)
    if overrides:
        document = mergeYaml({k: v for k, v in overrides.items()
                              if v is not None}, document)
    unknown = set(document) - set(consts.defaultStatsConfig)
    if unknown:
        raise StatsConfigError(f'unknown settings: {", ".join(sorted(unknown))}')
    try:
        return StatsConfig(**document)
    except StatsConfigError:
        raise
    except (TypeError, ValueError) as err:
        raise StatsConfigError(str(err)) from err


@dataclass(frozen=True)
class StatsRow:
    alphabet: str
    w: int
    seeds_per_sample: int
    samples: int
    avg_ac: float
    ratio_ac: float
    avg_spi: float
    ratio_spi: float
    avg_min: float

    def csv_values(self) -> List[str]:
        values = asdict(self)
        return [('%.3f' % values[c]) if isinstance(values[c], float)
                else str(values[c]) for c in consts.csvColumns]


def _letter_probabilities(others: List[str],
                          letter_weights: Mapping[str, float]) -> np.ndarray:
    unknown = set(letter_weights) - set(others)
    if unknown:
        raise StatsConfigError('letter_weights name unknown non-# letters: '
                               f'{", ".join(sorted(unknown))}')
    weights = np.array([letter_weights.get(s, 0.0) for s in others],
                       dtype=np.float64)
    if weights.sum() <= 0:
        raise StatsConfigError('letter_weights give every letter weight 0')
    return weights / weights.sum()


def random_seed(seed_alphabet: SeedAlphabet, w: int, span: int,
                rng: np.random.Generator,
                letter_weights: Optional[Mapping[str, float]] = None) -> Seed:
    """Seed of *span* with exactly *w* '#' letters.

    The first and last letters are '#' whenever w >= 2 (only the first for
    w = 1); the other '#' positions are placed uniformly. Every non-'#'
    letter is drawn from the non-'#' seed symbols, uniformly or with the
    relative frequencies of *letter_weights*."""
    if w > span:
        raise StatsConfigError(f'weight {w} exceeds span {span}')
    hash_symbol = seed_alphabet.hash_symbol
    others = [s for s in seed_alphabet.symbols() if s != hash_symbol]
    if span > w and not others:
        raise StatsConfigError('alphabet has no non-# seed letter')
    probabilities = None
    if letter_weights is not None:
        probabilities = _letter_probabilities(others, letter_weights)
    letters = [None] * span
    fixed = [0, span - 1] if w >= 2 else [0]
    for position in fixed:
        letters[position] = hash_symbol
    inner = [p for p in range(span) if letters[p] is None]
    for position in rng.choice(len(inner), size=w - len(fixed), replace=False):
        letters[inner[position]] = hash_symbol
    for position in range(span):
        if letters[position] is None:
            if probabilities is None:
                letters[position] = others[int(rng.integers(len(others)))]
            else:
                letters[position] = others[int(rng.choice(len(others),
                                                          p=probabilities))]
    return Seed(seed_alphabet, tuple(letters))


def random_seeds(config: StatsConfig, seed_alphabet: SeedAlphabet, w: int,
                 rng: np.random.Generator) -> Tuple[Seed, ...]:
    """One sample: seeds_per_sample seeds, spans drawn independently."""
    low, high = config.span_extra
    letter_weights = config.resolved_letter_weights()
    return tuple(
        random_seed(seed_alphabet, w, w + int(rng.integers(low, high + 1)),
                    rng, letter_weights)
        for _ in range(config.seeds_per_sample))


def measure(seeds: Tuple[Seed, ...]) -> Tuple[int, int, int]:
    """(AC, S_pi, minimal) state counts of one sample, checking that
    min <= S_pi <= AC and, for a single seed, the size bound."""
    if len(seeds) == 1:
        spi = build_incremental(seeds[0])
        ac = build_ac(seeds[0])
    else:
        spi = build_multi(seeds)
        ac = build_ac_multi(seeds)
    counts = (reachable_count(ac), reachable_count(spi),
              reachable_count(minimize(spi)))
    name = ' '.join(map(str, seeds))
    if not counts[2] <= counts[1] <= counts[0]:
        raise InvariantError(f'{name}: ordering min <= S_pi <= AC broken by'
                             ' ac=%i spi=%i min=%i' % counts)
    if len(seeds) == 1 and counts[1] > size_bound(seeds[0]):
        raise InvariantError(f'{name}: {counts[1]} states exceed the bound'
                             f' {size_bound(seeds[0])}')
    return counts


def _row(config: StatsConfig, w: int, counts: np.ndarray) -> StatsRow:
    avg_ac, avg_spi, avg_min = counts.mean(axis=0)
    return StatsRow(config.alphabet, w, config.seeds_per_sample,
                    config.samples, float(avg_ac), float(avg_ac / avg_min),
                    float(avg_spi), float(avg_spi / avg_min), float(avg_min))


def run_stats(config: StatsConfig) -> List[StatsRow]:
    """One StatsRow per configured weight."""
    try:
        _, seed_alphabet = load_alphabets(config.alphabet)
    except AlphabetError as err:
        raise StatsConfigError(str(err)) from err
    rng = np.random.default_rng(config.rng_seed)
    rows = []
    for w in config.weights:
        samples = [random_seeds(config, seed_alphabet, w, rng)
                   for _ in range(config.samples)]
        if config.jobs > 1:
            with ProcessPoolExecutor(max_workers=config.jobs) as pool:
                chunk = max(1, len(samples) // (4 * config.jobs))
                results = list(pool.map(measure, samples, chunksize=chunk))
        else:
            results = [measure(sample) for sample in samples]
        row = _row(config, w, np.array(results, dtype=np.float64))
        logger.info('%s w=%i: ac=%.2f spi=%.2f min=%.2f', config.alphabet, w,
                    row.avg_ac, row.avg_spi, row.avg_min)
        rows.append(row)
    return rows


def write_csv(rows: Iterable[StatsRow], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(consts.csvColumns)
    for row in rows:
        writer.writerow(row.csv_values())
