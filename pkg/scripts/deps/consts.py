builtinAlphabets = {
  'binary': 'align: 1 0\nmatch: 1\nseed: #=1; _=10\nhash: #\n',
  'ternary': 'align: 1 h 0\nmatch: 1\nseed: #=1; @=1h; _=1h0\nhash: #\n',
}

# IUPAC nucleotide codes, in the order used for the 15 text subsets
iupacCodes = {
  'A': 'A', 'C': 'C', 'G': 'G', 'T': 'T',
  'R': 'AG', 'Y': 'CT', 'S': 'CG', 'W': 'AT', 'K': 'GT', 'M': 'AC',
  'B': 'CGT', 'D': 'AGT', 'H': 'ACT', 'V': 'ACG',
  'N': 'ACGT',
}

ecoliMotif = '[GA][GA]GGGNNNNAN[CT]ATGNN[AT]NNNNN[CTG]'
# (states, minimal states) of the published E. coli motif automata
ecoliReferenceCounts = {
  'exact': (138, 126),
  'inclusion': (139, 127),
  'intersection': (87617, 10482),
}

defaultSpanExtra = (0, 7)
# relative frequencies of the non-'#' letters drawn by random seeds
defaultLetterWeights = {
  'binary': {'_': 1},
  'ternary': {'@': 1, '_': 9},
}
defaultSamples = 200
defaultRngSeed = 2007
defaultStatsConfig = {
  'alphabet': 'binary',
  'weights': [9],
  'span_extra': list(defaultSpanExtra),
  'samples': defaultSamples,
  'seeds_per_sample': 1,
  'letter_weights': None,
  'rng_seed': defaultRngSeed,
  'jobs': 1,
}

csvColumns = ['alphabet', 'w', 'seeds_per_sample', 'samples', 'avg_ac',
              'ratio_ac', 'avg_spi', 'ratio_spi', 'avg_min']

slowTestsVariable = 'SEEDAUTOMATA_SLOW'
