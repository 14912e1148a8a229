#!/usr/bin/python3
"""
Build, compare and run subset seed matching automata.

Every command prints machine-readable "key=value" summaries on stdout;
diagnostics and, on a terminal, rendered tables go to stderr. Exit codes:
0 on success, 1 when a check fails (an invariant or a published count), 2 on
invalid input.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from blessed import Terminal

from deps import consts
from deps.ac_baseline import build_ac, build_ac_multi
from deps.alphabet_seed import load_alphabets, naive_match_positions, \
    parse_seed, parse_text
from deps.chars import boxedTable, renderModes
from deps.dfa_core import Dfa, deserialize, export_dot, minimize, \
    reachable_count, serialize
from deps.experiments import load_stats_config, run_stats, write_csv
from deps.seed_automaton import InvariantError, build_incremental, \
    build_multi, build_naive, first_hit
from deps.subset_matching import MatchSemantics, RUN_LETTER_RULES, \
    generalize_seed, iupac_alphabet, naive_degenerate_match, \
    parse_degenerate_spec, parse_degenerate_text, parse_pattern, \
    reference_check, text_masks

logger = logging.getLogger(__name__)

BUILDERS = {'naive': build_naive, 'incremental': build_incremental}


class CheckFailed(Exception):
    """A result contradicts a proven property or a published number."""


def _write(text: str, out: Optional[str]) -> None:
    if out is None or out == '-':
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)
        logger.info('wrote %s', out)


def _format(d: Dfa, fmt: str, name: str) -> str:
    return export_dot(d, name) if fmt == 'dot' else serialize(d)


def _render(args, title: str, header: Sequence[str], rows) -> None:
    term = Terminal(stream=sys.stderr)
    if not term.is_a_tty:
        return
    for line in boxedTable(args.render, title, header, rows, term):
        print(line, file=sys.stderr)


def _seeds(args):
    _, seed_alphabet = load_alphabets(args.spec)
    return [parse_seed(seed_alphabet, s) for s in args.seed]


def _read_text(path: str) -> str:
    return Path(path).read_text().strip()


def build_op(args) -> int:
    seeds = _seeds(args)
    if len(seeds) > 1:
        if args.method is not None:
            logger.warning('--method ignored with several seeds')
        d = build_multi(seeds)
    else:
        d = BUILDERS[args.method or 'incremental'](seeds[0])
    _write(_format(d, args.format, 'S_pi'), args.out)
    print(f'states={reachable_count(d)} final={min(d.finals)}')
    return 0


def compare_op(args) -> int:
    seeds = _seeds(args)
    if len(seeds) > 1:
        ac, spi = build_ac_multi(seeds), build_multi(seeds)
    else:
        ac, spi = build_ac(seeds[0]), build_incremental(seeds[0])
    counts = (reachable_count(ac), reachable_count(spi),
              reachable_count(minimize(spi)))
    print('ac=%i spi=%i min=%i' % counts)
    _render(args, ' '.join(map(str, seeds)), ('Aho-Corasick', 'S_pi', 'minimal'),
            [counts])
    if not counts[2] <= counts[1] <= counts[0]:
        raise CheckFailed('state counts violate min <= spi <= ac')
    return 0


def _positions_line(positions: List[int]) -> str:
    return ' '.join(map(str, positions))


def match_op(args) -> int:
    seeds = _seeds(args)
    if len(seeds) != 1:
        raise ValueError('match takes exactly one --seed')
    seed = seeds[0]
    text = parse_text(seed.alignment, _read_text(args.text))
    positions = naive_match_positions(seed, text)
    end = first_hit(build_incremental(seed), text)
    print(_positions_line(positions))
    print(f'first_hit_end={end if end is not None else "none"}')
    expected = positions[0] + seed.span - 1 if positions else None
    if end != expected:
        raise CheckFailed(f'automaton first hit {end} disagrees with the'
                          f' oracle ({expected})')
    return 0


def motif_op(args) -> int:
    if args.spec == 'iupac':
        alpha = iupac_alphabet()
    else:
        alpha = parse_degenerate_spec(_read_text(args.spec))
    sem = MatchSemantics(args.semantics)
    pattern = parse_pattern(alpha, args.pattern)
    _, _, seed = generalize_seed(pattern, alpha, sem, args.run_letters)
    d = BUILDERS[args.method](seed)
    counts = (reachable_count(d), reachable_count(minimize(d)))
    print('states=%i min=%i' % counts)
    _render(args, f'{args.pattern} ({sem.value})', ('states', 'minimal'),
            [counts])
    if args.text:
        symbols = parse_degenerate_text(alpha, sem, _read_text(args.text))
        positions = naive_degenerate_match(pattern,
                                           text_masks(alpha, sem, symbols), sem)
        end = first_hit(d, symbols)
        print(_positions_line(positions))
        print(f'first_hit_end={end if end is not None else "none"}')
        expected = positions[0] + len(pattern) - 1 if positions else None
        if end != expected:
            raise CheckFailed(f'automaton first hit {end} disagrees with the'
                              f' oracle ({expected})')
    problems = reference_check(pattern, alpha, sem, *counts)
    if problems:
        if args.run_letters == 'universal':
            problems.append('the run letter rule may differ, try'
                            ' --run-letters none')
        raise CheckFailed('; '.join(problems))
    return 0


def stats_op(args) -> int:
    overrides = {
        'alphabet': args.alphabet,
        'weights': args.weights,
        'span_extra': args.span_extra,
        'samples': args.samples,
        'seeds_per_sample': args.seeds_per_sample,
        'letter_weights': args.letter_weights,
        'rng_seed': args.rng_seed,
        'jobs': args.jobs,
    }
    config = load_stats_config(args.config, overrides)
    logger.info('statistics configuration: %s', config)
    rows = run_stats(config)
    if args.out is None or args.out == '-':
        write_csv(rows, sys.stdout)
    else:
        with open(args.out, 'w', newline='') as stream:
            write_csv(rows, stream)
    _render(args, f'{config.alphabet}, {config.samples} samples',
            consts.csvColumns[1:],
            [row.csv_values()[1:] for row in rows])
    return 0


def minimize_op(args) -> int:
    d = deserialize(_read_text(getattr(args, 'in')) + '\n')
    m = minimize(d)
    _write(_format(m, args.format, 'minimal'), args.out)
    print(f'states={reachable_count(d)} min={reachable_count(m)}')
    return 0


def init_logger(verbosity: int):
    """Set-up logging. verbosity: 0=ERROR 1=WARN 2=INFO 3=DEBUG"""
    msg_format = '%(levelname)s: %(message)s'
    if verbosity >= 2:
        msg_format = ('[%(filename)s:%(lineno)s/%(funcName)17s]'
                            '%(levelname)s: %(message)s')
    level = max(10, 40 - verbosity*10)
    logging.basicConfig(format=msg_format, level=level, stream=sys.stderr)


def _int_list(value: str) -> List[int]:
    try:
        return [int(v) for v in value.split(',') if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f'not a comma separated list of'
                                         f' integers: {value}') from None


def _letter_weights(value: str) -> Dict[str, float]:
    weights = {}
    for entry in value.split(','):
        letter, _, weight = entry.partition('=')
        try:
            if not letter.strip():
                raise ValueError(entry)
            weights[letter.strip()] = float(weight)
        except ValueError:
            raise argparse.ArgumentTypeError(f'expected LETTER=WEIGHT pairs:'
                                             f' {value}') from None
    return weights


def build_parser(prog_name: Optional[str] = None) -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog=prog_name,
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog='''Examples:
    Build the automaton of a seed as graphviz:
        %(prog)s build --spec ternary --seed '#@_#' --format dot --out s.dot

    Compare with the Aho-Corasick and minimal automata:
        %(prog)s compare --spec ternary --seed '#@_#'

    E. coli motif over IUPAC texts:
        %(prog)s motif --semantics inclusion''')
    ap.add_argument('--prog', help=argparse.SUPPRESS)
    ap.add_argument('-v', '--verbose', action='count', default=1,
                    help='''Print extra information to stderr. Use twice for
                    debug information.''')
    ap.add_argument('--render', choices=renderModes, default='latin',
                    help='Border glyphs of tables shown on a terminal.')
    sub = ap.add_subparsers(dest='command', metavar='COMMAND')

    def seed_command(name, help_text, op):
        p = sub.add_parser(name, help=help_text)
        p.add_argument('--spec', default='binary',
                       help='''Alphabet spec file, or one of the built-in
                       alphabets "binary" and "ternary".''')
        p.add_argument('--seed', action='append', required=True,
                       help='Seed string, repeat for several seeds.')
        p.set_defaults(op=op)
        return p

    p = seed_command('build', 'Build S_pi (several seeds: the union).',
                     build_op)
    p.add_argument('--method', choices=sorted(BUILDERS),
                   help='Construction method, default incremental.')
    p.add_argument('--format', choices=('text', 'dot'), default='text')
    p.add_argument('--out', help='Output file, default stdout.')

    seed_command('compare', 'Count Aho-Corasick, S_pi and minimal states.',
                 compare_op)

    p = seed_command('match', 'Report seed occurrences in an alignment.',
                     match_op)
    p.add_argument('--text', required=True,
                   help='File holding one alignment, one letter per char.')

    p = sub.add_parser('motif', help='Degenerate motif automaton.')
    p.add_argument('--spec', default='iupac',
                   help='''Degenerate alphabet spec file, or "iupac" for the
                   A C G T base with all 15 subsets as text letters.''')
    p.add_argument('--pattern', default=consts.ecoliMotif)
    p.add_argument('--semantics', default='exact',
                   choices=[s.value for s in MatchSemantics])
    p.add_argument('--run-letters', dest='run_letters', default='universal',
                   choices=RUN_LETTER_RULES,
                   help='''"universal": letters matched by every position
                   form the run counted by t; "none": no run counter.''')
    p.add_argument('--method', choices=sorted(BUILDERS), default='incremental')
    p.add_argument('--text', help='Optional degenerate text file to search.')
    p.set_defaults(op=motif_op)

    p = sub.add_parser('stats', help='Average automaton sizes as CSV.')
    p.add_argument('--config', type=Path, help='YAML statistics config.')
    p.add_argument('--alphabet',
                   help='"binary", "ternary" or an alphabet spec file.')
    p.add_argument('--weights', type=_int_list, help='Comma separated.')
    p.add_argument('--span-extra', dest='span_extra', type=int, nargs=2,
                   metavar=('LOW', 'HIGH'),
                   help='Span range relative to the weight.')
    p.add_argument('--samples', type=int)
    p.add_argument('--seeds-per-sample', dest='seeds_per_sample', type=int)
    p.add_argument('--letter-weights', dest='letter_weights',
                   type=_letter_weights, metavar='LETTER=WEIGHT,...',
                   help='''Relative frequencies of the non-# seed letters,
                   e.g. "@=1,_=9".''')
    p.add_argument('--rng-seed', dest='rng_seed', type=int)
    p.add_argument('--jobs', type=int)
    p.add_argument('--out', help='CSV file, default stdout.')
    p.set_defaults(op=stats_op)

    p = sub.add_parser('minimize', help='Minimize a serialized automaton.')
    p.add_argument('--in', required=True, metavar='FILE',
                   help='Automaton in the text serialization.')
    p.add_argument('--format', choices=('text', 'dot'), default='text')
    p.add_argument('--out', help='Output file, default stdout.')
    p.set_defaults(op=minimize_op)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    """CLI entrypoint."""
    argv = sys.argv[1:] if argv is None else argv
    prog_name = None
    if len(argv) >= 2 and argv[0] == '--prog':
        prog_name = argv[1]
    ap = build_parser(prog_name)
    args = ap.parse_args(argv)
    init_logger(args.verbose)
    logger.debug("Program arguments: %s", args)
    if not getattr(args, 'op', None):
        logger.error('No command selected')
        ap.print_usage()
        return 2
    try:
        return args.op(args)
    except (InvariantError, CheckFailed) as err:
        print(f'ERROR: {err}', file=sys.stderr)
        return 1
    except (ValueError, OSError) as err:
        print(f'ERROR: {err}', file=sys.stderr)
        return 2


if __name__ == '__main__':
    sys.exit(main())
