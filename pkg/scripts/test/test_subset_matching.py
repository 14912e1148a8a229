"""Tests for deps/subset_matching.py"""
import itertools
import os
import unittest
from pathlib import Path
import numpy as np
from deps import consts, subset_matching
from deps.alphabet_seed import builtin_alphabets, parse_seed
from deps.dfa_core import accepts, minimize, reachable_count
from deps.seed_automaton import build_incremental, build_naive, first_hit
from deps.subset_matching import DegenerateError, MatchSemantics

FIXTURES = Path('scripts/test/seedautomata_test')
SLOW = bool(os.environ.get(consts.slowTestsVariable))

def motif_counts(sem, run_letters='universal'):
    alpha = subset_matching.iupac_alphabet()
    pattern = subset_matching.parse_pattern(alpha, consts.ecoliMotif)
    _, _, seed = subset_matching.generalize_seed(pattern, alpha, sem,
                                                 run_letters)
    d = build_incremental(seed)
    return reachable_count(d), reachable_count(minimize(d))

class DegenerateSpecTestCase(unittest.TestCase):
    """Degenerate alphabet and pattern parsing"""
    def setUp(self):
        self.alpha = subset_matching.parse_degenerate_spec(
            (FIXTURES / 'iupac.degen').read_text())

    def test_iupac(self):
        self.assertEqual(self.alpha.base_letters, ('A', 'C', 'G', 'T'))
        self.assertEqual(len(self.alpha.text_letters), 15)
        self.assertEqual(sorted(m for _, m in self.alpha.text_letters),
                         list(range(1, 16)))
        self.assertEqual(dict(self.alpha.pattern_letters)['N'], 0b1111)
        self.assertEqual(self.alpha, subset_matching.iupac_alphabet())

    def test_text_alphabet(self):
        exact = self.alpha.text_alphabet(MatchSemantics.EXACT)
        self.assertEqual([name for name, _ in exact], ['A', 'C', 'G', 'T'])
        self.assertEqual(len(self.alpha.text_alphabet(
            MatchSemantics.INTERSECTION)), 15)

    def test_pattern(self):
        pattern = subset_matching.parse_pattern(self.alpha, consts.ecoliMotif)
        self.assertEqual(len(pattern), 24)
        self.assertEqual(pattern[0], self.alpha.base_mask('AG'))
        self.assertEqual(subset_matching.format_pattern(self.alpha, pattern),
                         'RRGGGNNNNANYATGNNWNNNNNB')
        self.assertEqual(subset_matching.parse_pattern(self.alpha, '[RC]'),
                         (self.alpha.base_mask('ACG'),))

    def test_invalid(self):
        for text in ('[GA', 'GXA', '[]', ''):
            with self.subTest(pattern=text):
                self.assertRaises(DegenerateError, lambda:
                    subset_matching.parse_pattern(self.alpha, text))
        for spec in ('base: A C\ntextsets: base',
                     'base: A C\ntextsets: base\npatsets: iupac',
                     'base: A C\ntextsets: base\npatsets: #=A',
                     'base: A C\ntextsets: base\npatsets: X=AG',
                     'base: A C\ntextsets: base\npatsets: X=',
                     'base: A A\ntextsets: base\npatsets: X=A',
                     'base: A C\nbase: A C\ntextsets: base\npatsets: X=A',
                     'base: A C\ntextsets: base\npatsets: X=A; X=C',
                     'alphabet: A C'):
            with self.subTest(spec=spec):
                self.assertRaises(DegenerateError, lambda:
                    subset_matching.parse_degenerate_spec(spec))

    def test_all_nonempty(self):
        alpha = subset_matching.parse_degenerate_spec(
            'base: A C\ntextsets: all-nonempty\npatsets: A=A; M=AC')
        self.assertEqual(alpha.text_letters, (('A', 1), ('C', 2), ('a', 3)))
        alpha = subset_matching.parse_degenerate_spec(
            'base: a b c\ntextsets: all-nonempty\npatsets: a=a; N=abc')
        self.assertEqual(alpha.text_letters,
                         (('a', 1), ('b', 2), ('c', 4), ('d', 3), ('e', 5),
                          ('f', 6), ('g', 7)))
        self.assertRaisesRegex(DegenerateError, 'at most', lambda:
            subset_matching.parse_degenerate_spec(
                'base: A B C D E F\ntextsets: all-nonempty\npatsets: A=A'))

    def test_all_nonempty_matches_oracle(self):
        alpha = subset_matching.parse_degenerate_spec(
            'base: A C\ntextsets: all-nonempty\npatsets: A=A; C=C; M=AC')
        letters = alpha.text_alphabet(MatchSemantics.INTERSECTION)
        texts = [t for n in range(6)
                 for t in itertools.product(range(len(letters)), repeat=n)]
        for name in ('AM', 'MCA', 'AMMA'):
            pattern = subset_matching.parse_pattern(alpha, name)
            _, _, seed = subset_matching.generalize_seed(
                pattern, alpha, MatchSemantics.INTERSECTION, 'none')
            d = build_incremental(seed)
            for text in texts:
                masks = subset_matching.text_masks(
                    alpha, MatchSemantics.INTERSECTION, text)
                with self.subTest(pattern=name, text=text):
                    self.assertEqual(accepts(d, text), bool(
                        subset_matching.naive_degenerate_match(
                            pattern, masks, MatchSemantics.INTERSECTION)))

    def test_text(self):
        symbols = subset_matching.parse_degenerate_text(
            self.alpha, MatchSemantics.INCLUSION, 'ANR')
        self.assertEqual(subset_matching.text_masks(
            self.alpha, MatchSemantics.INCLUSION, symbols),
            (0b0001, 0b1111, 0b0101))
        with self.assertRaisesRegex(DegenerateError, 'position 2'):
            subset_matching.parse_degenerate_text(
                self.alpha, MatchSemantics.EXACT, 'AN')

class SemanticsTestCase(unittest.TestCase):
    """Match semantics and the brute-force matcher"""
    def test_matches(self):
        self.assertTrue(MatchSemantics.EXACT.matches(0b0101, 0b0001))
        self.assertTrue(MatchSemantics.INCLUSION.matches(0b0111, 0b0101))
        self.assertFalse(MatchSemantics.INCLUSION.matches(0b0101, 0b0111))
        self.assertTrue(MatchSemantics.INTERSECTION.matches(0b0101, 0b0110))
        self.assertFalse(MatchSemantics.INTERSECTION.matches(0b0101, 0b1010))

    def test_naive_match(self):
        alpha = subset_matching.iupac_alphabet()
        pattern = subset_matching.parse_pattern(alpha, 'ANDGR')
        self.assertEqual(pattern, subset_matching.parse_pattern(
            alpha, 'A[ACGT][AGT]G[AG]'))
        text = subset_matching.text_masks(
            alpha, MatchSemantics.EXACT, subset_matching.parse_degenerate_text(
                alpha, MatchSemantics.EXACT, 'AAAGA'))
        self.assertEqual(subset_matching.naive_degenerate_match(
            pattern, text, MatchSemantics.EXACT), [1])
        self.assertEqual(subset_matching.naive_degenerate_match(
            pattern, text[:4], MatchSemantics.EXACT), [])

class GeneralizeTestCase(unittest.TestCase):
    """Reduction of degenerate patterns to subset seeds"""
    def test_classic_instance(self):
        alpha = subset_matching.parse_degenerate_spec(
            'base: 1 h 0\ntextsets: base\npatsets: o=1; a=1h; u=1h0')
        pattern = subset_matching.parse_pattern(alpha, 'oauo')
        aa, sa, seed = subset_matching.generalize_seed(
            pattern, alpha, MatchSemantics.EXACT)
        self.assertEqual(aa.letters, ('1', 'h', '0'))
        self.assertEqual(aa.match_letter, '1')
        self.assertEqual(str(seed), '#au#')
        _, ternary = builtin_alphabets('ternary')
        self.assertEqual(build_naive(seed),
                         build_naive(parse_seed(ternary, '#@_#')))

    def test_universal_letters(self):
        alpha = subset_matching.iupac_alphabet()
        pattern = subset_matching.parse_pattern(alpha, consts.ecoliMotif)
        aa, _, seed = subset_matching.generalize_seed(
            pattern, alpha, MatchSemantics.INTERSECTION)
        self.assertEqual(aa.unpack(aa.run_mask), ['D', 'N'])
        self.assertEqual(seed.r, 24)
        aa, _, seed = subset_matching.generalize_seed(
            pattern, alpha, MatchSemantics.INTERSECTION, 'none')
        self.assertEqual(aa.run_mask, 0)
        self.assertIsNone(aa.match_letter)
        aa, _, _ = subset_matching.generalize_seed(
            pattern, alpha, MatchSemantics.EXACT)
        self.assertEqual(aa.run_mask, 0)

    def test_errors(self):
        alpha = subset_matching.parse_degenerate_spec(
            'base: A C\ntextsets: m=AC\npatsets: A=A; M=AC')
        pattern = subset_matching.parse_pattern(alpha, 'MA')
        self.assertRaises(DegenerateError, lambda:
            subset_matching.generalize_seed(pattern, alpha,
                                            MatchSemantics.INCLUSION))
        self.assertRaises(DegenerateError, lambda:
            subset_matching.generalize_seed((), alpha, MatchSemantics.EXACT))
        self.assertRaises(DegenerateError, lambda:
            subset_matching.generalize_seed(pattern, alpha,
                                            MatchSemantics.EXACT, 'all'))

    def test_agrees_with_oracle(self):
        alpha = subset_matching.parse_degenerate_spec(
            'base: A C G\ntextsets: a=A; c=C; s=CG\n'
            'patsets: A=A; C=C; G=G; M=AC; S=CG; V=ACG')
        names = [name for name, _ in alpha.pattern_letters]
        rng = np.random.default_rng(31)
        for sem, rule in itertools.product(MatchSemantics,
                                           subset_matching.RUN_LETTER_RULES):
            letters = alpha.text_alphabet(sem)
            texts = [t for n in range(7)
                     for t in itertools.product(range(len(letters)), repeat=n)]
            for _ in range(12):
                length = int(rng.integers(1, 6))
                pattern = subset_matching.parse_pattern(alpha, ''.join(
                    names[i] for i in rng.integers(len(names), size=length)))
                try:
                    _, _, seed = subset_matching.generalize_seed(
                        pattern, alpha, sem, rule)
                except DegenerateError:
                    continue
                d = build_incremental(seed)
                self.assertEqual(d, build_naive(seed))
                for text in texts:
                    masks = subset_matching.text_masks(alpha, sem, text)
                    positions = subset_matching.naive_degenerate_match(
                        pattern, masks, sem)
                    expected = positions[0] + len(pattern) - 1 \
                        if positions else None
                    if first_hit(d, text) != expected:
                        self.fail(f'{sem.value}/{rule}: pattern'
                                  f' {subset_matching.format_pattern(alpha, pattern)}'
                                  f' on {text}')
                    self.assertEqual(accepts(d, text), bool(positions))
                self.assertLessEqual(reachable_count(minimize(d)),
                                     reachable_count(d))

class MotifTestCase(unittest.TestCase):
    """E. coli translation initiation motif"""
    def test_exact(self):
        self.assertEqual(motif_counts(MatchSemantics.EXACT), (138, 126))

    def test_inclusion(self):
        self.assertEqual(motif_counts(MatchSemantics.INCLUSION), (139, 127))

    @unittest.skipUnless(SLOW, 'set SEEDAUTOMATA_SLOW to build 87617 states')
    def test_intersection(self):
        self.assertEqual(
            motif_counts(MatchSemantics.INTERSECTION, 'none'), (87617, 10482))

    @unittest.skipUnless(SLOW, 'set SEEDAUTOMATA_SLOW to build 87617 states')
    def test_intersection_run_letters(self):
        self.assertEqual(
            motif_counts(MatchSemantics.INTERSECTION), (162640, 10482))

    def test_reference_check(self):
        alpha = subset_matching.iupac_alphabet()
        pattern = subset_matching.parse_pattern(alpha, consts.ecoliMotif)
        self.assertEqual(subset_matching.reference_check(
            pattern, alpha, MatchSemantics.EXACT, 138, 126), [])
        problems = subset_matching.reference_check(
            pattern, alpha, MatchSemantics.INTERSECTION, 90000, 10482)
        self.assertEqual(len(problems), 1)
        self.assertIn('87617', problems[0])
        other = subset_matching.parse_pattern(alpha, 'ANDGR')
        self.assertEqual(subset_matching.reference_check(
            other, alpha, MatchSemantics.EXACT, 1, 1), [])
