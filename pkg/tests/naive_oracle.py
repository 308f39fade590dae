"""Naive full-scan reference implementations used as independent oracles.

Nothing here touches the package's trie or metric code. Every query scans
the complete entry table and recomputes from the defining ratios
directly. The scan is vectorized over a padded phoneme-id matrix for
speed, but it is still a full scan per query: there is no shared prefix
structure to inherit bugs from.

Entries are plain (orthography, pron tuple, frequency) triples, so the
oracle does not even depend on the package's lexicon types.
"""

from __future__ import annotations

import math

import numpy as np


class NaiveLexicon:
    def __init__(self, rows):
        self.rows = [(orth, tuple(pron), float(freq)) for orth, pron, freq in rows]
        symbols = sorted({ph for _, pron, _ in self.rows for ph in pron})
        self.symbol_id = {s: i for i, s in enumerate(symbols)}
        max_len = max(len(pron) for _, pron, _ in self.rows)
        self.table = np.full((len(self.rows), max_len), -1, dtype=np.int64)
        for i, (_, pron, _) in enumerate(self.rows):
            self.table[i, : len(pron)] = [self.symbol_id[p] for p in pron]
        self.freqs = np.array([f for _, _, f in self.rows], dtype=float)

    def mask(self, prefix):
        k = len(prefix)
        if k == 0:
            return np.ones(len(self.rows), dtype=bool)
        if k > self.table.shape[1]:
            return np.zeros(len(self.rows), dtype=bool)
        ids = np.array([self.symbol_id.get(p, -2) for p in prefix])
        return (self.table[:, :k] == ids).all(axis=1)

    def prefix_frequency(self, prefix):
        return float(self.freqs[self.mask(prefix)].sum())

    def total_frequency(self):
        return float(self.freqs.sum())

    def cohort(self, prefix):
        """{(orthography, pron): probability} over entries matching prefix."""
        mask = self.mask(prefix)
        total = self.freqs[mask].sum()
        if total == 0:
            raise ValueError(f"empty cohort at {prefix}")
        return {
            (self.rows[i][0], self.rows[i][1]): self.freqs[i] / total
            for i in np.nonzero(mask)[0]
        }

    def all_prefixes(self):
        """Every distinct prefix of every pronunciation, shortest first."""
        seen = set()
        for _, pron, _ in self.rows:
            for k in range(1, len(pron) + 1):
                seen.add(pron[:k])
        return sorted(seen, key=lambda p: (len(p), p))


def entropy_bits(probs):
    return -math.fsum(p * math.log2(p) for p in probs if p > 0)


def switch_entropy(lex: NaiveLexicon, prefix):
    return entropy_bits(lex.cohort(prefix).values())


def switch_surprisal(lex: NaiveLexicon, prefix):
    numerator = lex.prefix_frequency(prefix)
    denominator = lex.prefix_frequency(prefix[:-1])
    if numerator == 0 or denominator == 0:
        raise ValueError(f"impossible continuation at {prefix}")
    return -math.log2(numerator / denominator)


def acoustic_probs(lex: NaiveLexicon, a, b, p_a, continuation):
    """{(orthography, pron): weight} under two-onset evidence.

    Both sub-cohorts alive: weights are conditional probability times
    evidence weight. One empty: the survivor's conditional distribution.
    """
    continuation = tuple(continuation)
    mask_a = lex.mask((a,) + continuation)
    mask_b = lex.mask((b,) + continuation)
    sum_a = lex.freqs[mask_a].sum()
    sum_b = lex.freqs[mask_b].sum()
    if sum_a == 0 and sum_b == 0:
        raise ValueError("both sub-cohorts empty")
    weights = {}
    if sum_a > 0 and sum_b > 0:
        for i in np.nonzero(mask_a)[0]:
            key = (lex.rows[i][0], lex.rows[i][1])
            weights[key] = p_a * lex.freqs[i] / sum_a
        for i in np.nonzero(mask_b)[0]:
            key = (lex.rows[i][0], lex.rows[i][1])
            weights[key] = (1.0 - p_a) * lex.freqs[i] / sum_b
        return weights
    mask, total = (mask_a, sum_a) if sum_a > 0 else (mask_b, sum_b)
    for i in np.nonzero(mask)[0]:
        key = (lex.rows[i][0], lex.rows[i][1])
        weights[key] = lex.freqs[i] / total
    return weights


def acoustic_entropy(lex: NaiveLexicon, a, b, p_a, continuation):
    return entropy_bits(acoustic_probs(lex, a, b, p_a, continuation).values())


def acoustic_surprisal(lex: NaiveLexicon, a, b, p_a, continuation):
    continuation = tuple(continuation)
    if not continuation:
        raise ValueError("onset position has its own oracle")
    fa_now = lex.prefix_frequency((a,) + continuation)
    fb_now = lex.prefix_frequency((b,) + continuation)
    fa_before = lex.prefix_frequency((a,) + continuation[:-1])
    fb_before = lex.prefix_frequency((b,) + continuation[:-1])
    return _inner_surprisal(p_a, fa_now, fb_now, fa_before, fb_before)


def acoustic_surprisal_onset(lex: NaiveLexicon, a, b, p_a):
    total = lex.total_frequency()
    fa = lex.prefix_frequency((a,))
    fb = lex.prefix_frequency((b,))
    return _inner_surprisal(p_a, fa, fb, total, total)


def _inner_surprisal(p_a, fa_now, fb_now, fa_before, fb_before):
    joint = fa_now + fb_now
    inner = 0.0
    if fa_now > 0:
        inner += p_a * (fa_now / fa_before) * (fa_now / joint)
    if fb_now > 0:
        inner += (1.0 - p_a) * (fb_now / fb_before) * (fb_now / joint)
    if inner <= 0:
        raise ValueError("impossible continuation")
    return -math.log2(inner)


def random_rows(
    rng,
    n_words,
    n_phonemes=10,
    min_len=2,
    max_len=8,
    max_freq=9999,
    homophone_rate=0.05,
):
    """Random lexicon rows: (orthography, pron-string, frequency).

    Frequencies are integer-valued so cross-implementation sums stay
    exact in float64 and oracle comparisons are not summation-order
    noise. A small fraction of words reuse an earlier pronunciation
    (homophones), which the package must treat as distinct entries.
    """
    inventory = [f"S{i}" for i in range(n_phonemes)]
    rows = []
    prons = []
    for i in range(n_words):
        if prons and rng.random() < homophone_rate:
            pron = prons[int(rng.integers(0, len(prons)))]
        else:
            length = int(rng.integers(min_len, max_len + 1))
            pron = tuple(
                inventory[j] for j in rng.integers(0, n_phonemes, length)
            )
        prons.append(pron)
        rows.append((f"w{i:04d}", " ".join(pron), float(rng.integers(1, max_freq + 1))))
    return rows
