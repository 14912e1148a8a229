"""Tests for seedautomata.py"""
import contextlib
import io
import os
import tempfile
import unittest
from pathlib import Path
import seedautomata
from deps import consts
from deps.dfa_core import deserialize

FIXTURES = Path('scripts/test/seedautomata_test')
SLOW = bool(os.environ.get(consts.slowTestsVariable))

def cli(*argv):
    """(exit code, stdout, stderr) of one command line"""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = seedautomata.main(list(argv))
    return code, out.getvalue(), err.getvalue()

class BuildTestCase(unittest.TestCase):
    """build and compare commands"""
    def test_dot(self):
        code, out, _ = cli('build', '--spec', 'ternary', '--seed', '#@_#',
                           '--format', 'dot')
        self.assertEqual(code, 0)
        self.assertIn('digraph "S_pi" {', out)
        self.assertEqual(out.splitlines()[-1], 'states=9 final=0')

    def test_single_hash(self):
        code, out, _ = cli('build', '--seed', '#')
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[-1], 'states=2 final=0')

    def test_methods_agree(self):
        results = []
        with tempfile.TemporaryDirectory() as tmp:
            for method in ('naive', 'incremental'):
                target = Path(tmp) / method
                code, out, _ = cli('build', '--spec', 'ternary', '--seed',
                                   '#@#_##_###', '--method', method,
                                   '--out', str(target))
                self.assertEqual(code, 0)
                self.assertTrue(out.startswith('states='))
                results.append(target.read_text())
        self.assertEqual(results[0], results[1])

    def test_spec_file(self):
        code, out, _ = cli('build', '--spec',
                           str(FIXTURES / 'ternary.alpha'), '--seed', '#@_#',
                           '--out', '-')
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[-1], 'states=9 final=0')

    def test_several_seeds(self):
        with self.assertLogs('seedautomata', 'WARNING') as logs:
            code, out, _ = cli('build', '--seed', '#_#', '--seed', '##',
                               '--method', 'naive')
        self.assertEqual(code, 0)
        self.assertIn('--method ignored', logs.output[0])
        self.assertTrue(out.splitlines()[-1].startswith('states='))

    def test_compare(self):
        code, out, _ = cli('compare', '--spec', 'ternary', '--seed', '#@_#')
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith('ac=11 spi=9 min='))

    def test_invalid_input(self):
        for argv in (('build', '--spec', 'quaternary', '--seed', '#'),
                     ('build', '--seed', '#x#'),
                     ('build', '--seed', '#', '--seed', '#@#', '--spec',
                      'binary')):
            with self.subTest(argv=argv):
                code, _, err = cli(*argv)
                self.assertEqual(code, 2)
                self.assertTrue(err.startswith('ERROR: '))

    def test_no_command(self):
        code, _, _ = cli()
        self.assertEqual(code, 2)

class MatchTestCase(unittest.TestCase):
    """match command"""
    def test_example(self):
        code, out, _ = cli('match', '--spec', 'ternary', '--seed', '#@_#',
                           '--text', str(FIXTURES / 'example.aln'))
        self.assertEqual(code, 0)
        self.assertEqual(out, '4 6\nfirst_hit_end=7\n')

    def test_bad_text(self):
        code, _, err = cli('match', '--seed', '##',
                           '--text', str(FIXTURES / 'bad.aln'))
        self.assertEqual(code, 2)
        self.assertIn('ERROR', err)
        code, _, _ = cli('match', '--seed', '##',
                         '--text', str(FIXTURES / 'missing.aln'))
        self.assertEqual(code, 2)

class MotifTestCase(unittest.TestCase):
    """motif command"""
    def test_exact(self):
        code, out, _ = cli('motif')
        self.assertEqual(code, 0)
        self.assertEqual(out, 'states=%i min=%i\n'
                         % consts.ecoliReferenceCounts['exact'])

    def test_inclusion_with_text(self):
        code, out, _ = cli('motif', '--spec', str(FIXTURES / 'iupac.degen'),
                           '--semantics', 'inclusion',
                           '--text', str(FIXTURES / 'motif.txt'))
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(lines[0], 'states=139 min=127')
        self.assertEqual(lines[1:], ['', 'first_hit_end=none'])

    def test_other_pattern(self):
        code, out, _ = cli('motif', '--pattern', 'ACATG', '--text',
                           str(FIXTURES / 'motif.txt'))
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[1:], ['13', 'first_hit_end=17'])

    @unittest.skipUnless(SLOW, 'set SEEDAUTOMATA_SLOW to build 162640 states')
    def test_intersection_run_letters(self):
        code, _, err = cli('motif', '--semantics', 'intersection')
        self.assertEqual(code, 1)
        self.assertIn('162640', err)
        self.assertIn('--run-letters none', err)
        code, out, _ = cli('motif', '--semantics', 'intersection',
                           '--run-letters', 'none')
        self.assertEqual(code, 0)
        self.assertEqual(out, 'states=87617 min=10482\n')

class StatsTestCase(unittest.TestCase):
    """stats and minimize commands"""
    def test_stats(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = Path(tmp) / 'stats.csv'
            code, _, _ = cli('stats', '--config', str(FIXTURES / 'stats.yml'),
                             '--samples', '3', '--weights', '4',
                             '--out', str(target))
            self.assertEqual(code, 0)
            lines = target.read_text().splitlines()
        self.assertEqual(lines[0], ','.join(consts.csvColumns))
        self.assertEqual(len(lines), 2)
        self.assertTrue(lines[1].startswith('binary,4,1,3,'))

    def test_stats_stdout(self):
        code, out, _ = cli('stats', '--samples', '2', '--weights', '3,4',
                           '--span-extra', '0', '2')
        self.assertEqual(code, 0)
        self.assertEqual(len(out.splitlines()), 3)

    def test_letter_weights(self):
        code, out, _ = cli('stats', '--alphabet', 'ternary', '--samples', '2',
                           '--weights', '4', '--letter-weights', '@=1,_=9')
        self.assertEqual(code, 0)
        self.assertTrue(out.splitlines()[1].startswith('ternary,4,1,2,'))
        code, _, err = cli('stats', '--samples', '2', '--weights', '4',
                           '--letter-weights', 'x=1')
        self.assertEqual(code, 2)
        self.assertIn('x', err)
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as raised:
                seedautomata.main(['stats', '--letter-weights', '@'])
        self.assertEqual(raised.exception.code, 2)

    def test_bad_config(self):
        code, _, err = cli('stats', '--samples', '0')
        self.assertEqual(code, 2)
        self.assertIn('samples', err)

    def test_minimize(self):
        with tempfile.TemporaryDirectory() as tmp:
            built = Path(tmp) / 'spi.txt'
            minimal = Path(tmp) / 'min.txt'
            cli('build', '--seed', '#_#', '--out', str(built))
            code, out, _ = cli('minimize', '--in', str(built),
                               '--out', str(minimal))
            self.assertEqual(code, 0)
            self.assertEqual(deserialize(minimal.read_text()).n_states,
                             int(out.split('min=')[1]))
            code, _, _ = cli('minimize', '--in', str(FIXTURES / 'bad.aln'))
            self.assertEqual(code, 2)
