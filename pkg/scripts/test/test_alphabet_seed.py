"""Tests for deps/alphabet_seed.py"""
import unittest
from pathlib import Path
from deps import alphabet_seed
from deps.alphabet_seed import AlphabetError

FIXTURES = Path('scripts/test/seedautomata_test')

class AlphabetSpecTestCase(unittest.TestCase):
    """Alphabet specification parsing"""
    def setUp(self):
        self.aa, self.sa = alphabet_seed.parse_alphabet_spec(
            (FIXTURES / 'ternary.alpha').read_text())

    def test_alignment_letters(self):
        self.assertEqual(self.aa.letters, ('1', 'h', '0'))
        self.assertEqual(self.aa.match_letter, '1')
        self.assertEqual(self.aa.run_mask, 0b001)
        self.assertTrue(self.aa.is_run(0))
        self.assertFalse(self.aa.is_run(1))

    def test_seed_letters(self):
        self.assertEqual(self.sa.subset('#'), 0b001)
        self.assertEqual(self.sa.subset('@'), 0b011)
        self.assertEqual(self.sa.subset('_'), 0b111)
        self.assertTrue(alphabet_seed.seed_letter_matches(self.sa, '@', 'h'))
        self.assertFalse(alphabet_seed.seed_letter_matches(self.sa, '@', '0'))

    def test_one_line_spec(self):
        aa, sa = alphabet_seed.parse_alphabet_spec(
            'align: 1 0 / match: 1 / seed: #=1; _=10 / hash: #')
        self.assertEqual(aa.letters, ('1', '0'))
        self.assertEqual(sa.symbols(), ['#', '_'])

    def test_format_parses_back(self):
        text = alphabet_seed.format_alphabet_spec(self.aa, self.sa)
        self.assertEqual(alphabet_seed.parse_alphabet_spec(text),
                         (self.aa, self.sa))

    def test_builtin(self):
        self.assertEqual(alphabet_seed.builtin_alphabets('ternary'),
                         (self.aa, self.sa))
        self.assertEqual(alphabet_seed.load_alphabets(
            str(FIXTURES / 'ternary.alpha')), (self.aa, self.sa))
        self.assertRaises(AlphabetError,
                          lambda: alphabet_seed.builtin_alphabets('quaternary'))
        self.assertRaises(AlphabetError,
                          lambda: alphabet_seed.load_alphabets('/nonexistent'))

    def test_invalid_specs(self):
        bad = [
            'align: 1 0 / match: 1 / seed: #=10; _=10 / hash: #',
            'align: 1 0 / match: 1 / seed: #=1; _=0 / hash: #',
            'align: 1 0 / match: 1 / seed: #=1; _=1x / hash: #',
            'align: 1 0 / match: 1 / seed: #=1; #=10 / hash: #',
            'align: 1 0 / match: 2 / seed: #=1 / hash: #',
            'align: 1 1 / match: 1 / seed: #=1 / hash: #',
            'align: 1 0 / match: 1 / seed: #=1',
            'align: 1 0 / match: 1 / seed: #=1; _=1 / hash: #',
            'align: 1 0 / match: 1 / seed: #=1 / hash: @',
        ]
        for text in bad:
            with self.subTest(text=text):
                self.assertRaises(AlphabetError,
                                  lambda: alphabet_seed.parse_alphabet_spec(text))

class SeedTestCase(unittest.TestCase):
    """Seed and text parsing, naive matching"""
    def setUp(self):
        self.aa, self.sa = alphabet_seed.builtin_alphabets('ternary')
        self.seed = alphabet_seed.parse_seed(self.sa, '#@_#')

    def test_derived_values(self):
        self.assertEqual(self.seed.span, 4)
        self.assertEqual(self.seed.weight, 2)
        self.assertEqual(self.seed.r, 2)
        self.assertEqual(self.seed.r_positions, (2, 3))
        self.assertEqual(self.seed.index_of, (0, 0, 1, 2, 0))
        self.assertEqual(self.seed.z(0), 0)
        self.assertEqual(self.seed.z(2), 3)
        self.assertTrue(self.seed.starts_with_hash())
        self.assertEqual(str(self.seed), '#@_#')

    def test_unknown_seed_letter(self):
        with self.assertRaisesRegex(AlphabetError, 'position 3'):
            alphabet_seed.parse_seed(self.sa, '#@x#')
        self.assertRaises(AlphabetError,
                          lambda: alphabet_seed.parse_seed(self.sa, ''))

    def test_unknown_text_letter(self):
        with self.assertRaisesRegex(AlphabetError, 'position 3'):
            alphabet_seed.parse_text(self.aa, '10x1')

    def test_naive_match(self):
        text = alphabet_seed.parse_text(self.aa, '10h1h1101')
        self.assertEqual(str(text), '10h1h1101')
        self.assertEqual(
            alphabet_seed.naive_match_positions(self.seed, text), [4, 6])
        empty = alphabet_seed.parse_text(self.aa, '')
        self.assertEqual(
            alphabet_seed.naive_match_positions(self.seed, empty), [])

    def test_derived_run_mask(self):
        aa = alphabet_seed.AlignmentAlphabet(('a', 'b', 'c'), None, 0b011)
        self.assertIsNone(aa.match_letter)
        self.assertTrue(aa.is_run(1))
        empty = alphabet_seed.AlignmentAlphabet(('a', 'b'))
        self.assertEqual(empty.run_mask, 0)
        self.assertRaises(AlphabetError, lambda:
                          alphabet_seed.AlignmentAlphabet(('a',), None, 0b10))
