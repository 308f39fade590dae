"""Switch-based and acoustic-weighted cohort activation metrics.

Two models of how graded evidence about a word's onset phoneme reaches the
lexicon. The switch model commits to the more probable onset and computes
entropy/surprisal over that single cohort. The acoustic-weighted model keeps
both candidate onsets alive: word probabilities mix the two onset
sub-cohorts weighted by the onset evidence, and phoneme surprisal scales
each onset's conditional continuation probability by the evidence weight
and by a lexical weighting Q (the share of the observed continuation's
frequency carried by that onset's sub-cohort).

Rounding the evidence weights to 0/1 collapses the acoustic-weighted
entropy onto the switch entropy; the surprisal definitions do not collapse
the same way because Q keeps referring to both sub-cohorts.

All logarithms are base 2; every value is in bits and non-negative.
Impossible continuations raise rather than returning infinities.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

from .cohort import CohortTrie, ImpossibleContinuationError
from .lexicon import LexiconEntry, Phoneme, PhonemeSeq

_INNER_TOL = 1e-12

TRACE_FIELDS = (
    "position",
    "phoneme",
    "switch_surprisal",
    "acoustic_surprisal",
    "switch_entropy",
    "acoustic_entropy",
    "switch_cohort_size",
    "joint_cohort_size",
)


class UndefinedCorrelationError(ValueError):
    """Pearson r is undefined (a constant value vector)."""


@dataclass(frozen=True)
class AcousticEvidence:
    """Graded two-alternative evidence about a word-initial phoneme.

    `p_a` is the probability that the signal realises `phoneme_a`;
    `phoneme_b` carries the remaining mass.
    """

    phoneme_a: Phoneme
    phoneme_b: Phoneme
    p_a: float

    def __post_init__(self):
        if self.phoneme_a == self.phoneme_b:
            raise ValueError("evidence needs two distinct candidate phonemes")
        if not 0.0 <= self.p_a <= 1.0:
            raise ValueError(f"p_a must be in [0, 1], got {self.p_a}")

    @property
    def p_b(self) -> float:
        return 1.0 - self.p_a

    @property
    def committed(self) -> Phoneme:
        """The onset the switch model commits to: the more probable one.

        Ties (p_a = 0.5) deterministically commit to phoneme_a.
        """
        return self.phoneme_a if self.p_a >= 0.5 else self.phoneme_b


@dataclass(frozen=True)
class WeightedCohort:
    """Evidence-weighted distribution over both onset sub-cohorts.

    `raw_mass` is the probability mass the weighting assigns before
    renormalization: 1 when both sub-cohorts are alive, the surviving
    onset's evidence weight when one is empty (the returned probabilities
    are always renormalized to sum to 1).
    """

    members: tuple[tuple[LexiconEntry, float], ...]
    raw_mass: float

    @property
    def size(self) -> int:
        """Members with non-zero probability."""
        return sum(1 for _, p in self.members if p > 0)


@dataclass(frozen=True)
class MetricPoint:
    """Both models' values at one phoneme position of a trace."""

    position: int
    phoneme: Phoneme
    switch_surprisal: float
    acoustic_surprisal: float
    switch_entropy: float
    acoustic_entropy: float
    switch_cohort_size: int
    joint_cohort_size: int


@dataclass(frozen=True)
class MetricTrace:
    """Per-position metric values for one word under fixed onset evidence."""

    word: LexiconEntry
    evidence: AcousticEvidence
    points: tuple[MetricPoint, ...]

    def point_at(self, position: int) -> MetricPoint | None:
        if 1 <= position <= len(self.points):
            return self.points[position - 1]
        return None


def _entropy_bits(probs) -> float:
    h = -sum(p * math.log2(p) for p in probs if p > 0.0)
    return max(0.0, h)


def switch_entropy(trie: CohortTrie, prefix: PhonemeSeq) -> float:
    """Entropy in bits of the frequency-normalized cohort at `prefix`."""
    cohort = trie.cohort_at(prefix)
    return _entropy_bits(p for _, p in cohort.members)


def acoustic_weighted_probs(
    trie: CohortTrie, evidence: AcousticEvidence, continuation: PhonemeSeq
) -> WeightedCohort:
    """Word distribution mixing both onset sub-cohorts by evidence weight.

    Each word in the sub-cohort of onset x (prefix [x] + continuation)
    gets weight P(word | sub-cohort) * P(x | evidence). If exactly one
    sub-cohort is empty the survivor is renormalized to a proper
    distribution and the pre-renormalization mass is reported as raw_mass.
    """
    continuation = tuple(continuation)
    prefix_a = (evidence.phoneme_a,) + continuation
    prefix_b = (evidence.phoneme_b,) + continuation
    freq_a = trie.prefix_frequency(prefix_a)
    freq_b = trie.prefix_frequency(prefix_b)
    if freq_a == 0 and freq_b == 0:
        raise ImpossibleContinuationError(
            f"neither /{evidence.phoneme_a}/ nor /{evidence.phoneme_b}/ admits "
            f"the continuation /{' '.join(continuation)}/"
        )
    if freq_a > 0 and freq_b > 0:
        members = [
            (entry, p * evidence.p_a)
            for entry, p in trie.cohort_at(prefix_a).members
        ]
        members += [
            (entry, p * evidence.p_b)
            for entry, p in trie.cohort_at(prefix_b).members
        ]
        return WeightedCohort(tuple(members), raw_mass=1.0)
    # Lone surviving sub-cohort: its conditional distribution, renormalized.
    if freq_a > 0:
        survivor, mass = prefix_a, evidence.p_a
    else:
        survivor, mass = prefix_b, evidence.p_b
    return WeightedCohort(trie.cohort_at(survivor).members, raw_mass=mass)


def acoustic_entropy(
    trie: CohortTrie, evidence: AcousticEvidence, continuation: PhonemeSeq
) -> float:
    """Entropy in bits of the evidence-weighted word distribution."""
    weighted = acoustic_weighted_probs(trie, evidence, continuation)
    return _entropy_bits(p for _, p in weighted.members)


def switch_surprisal(trie: CohortTrie, prefix: PhonemeSeq) -> float:
    """Surprisal in bits of the last phoneme of `prefix` given the rest.

    At prefix length 1 the conditioning set is the whole lexicon. A zero
    conditional probability is an impossible continuation and raises.
    """
    conditional = trie.conditional_prob(prefix)
    if conditional == 0:
        raise ImpossibleContinuationError(
            f"/{' '.join(prefix)}/ has no surviving cohort"
        )
    return max(0.0, -math.log2(conditional))


def _weighted_inner(evidence, freqs_now, freqs_before) -> float:
    """Evidence- and lexically-weighted continuation probability.

    Per-onset term: P(onset|evidence) * conditional continuation
    probability * Q, where Q is that onset's share of the combined
    continuation frequency. An onset with no surviving continuation
    contributes zero. The sum is provably <= 1.
    """
    freq_a, freq_b = freqs_now
    before_a, before_b = freqs_before
    joint = freq_a + freq_b
    inner = 0.0
    if freq_a > 0:
        inner += evidence.p_a * (freq_a / before_a) * (freq_a / joint)
    if freq_b > 0:
        inner += evidence.p_b * (freq_b / before_b) * (freq_b / joint)
    assert inner <= 1.0 + _INNER_TOL, f"weighted inner term {inner} exceeds 1"
    return inner


def acoustic_surprisal(
    trie: CohortTrie, evidence: AcousticEvidence, continuation: PhonemeSeq
) -> float:
    """Acoustic-weighted surprisal of the final continuation phoneme.

    `continuation` is the post-onset phoneme sequence up to and including
    the current position (so the current position is len(continuation)+1,
    at least 2). Raises when neither onset admits the continuation.
    """
    continuation = tuple(continuation)
    if not continuation:
        raise ValueError(
            "empty continuation: use acoustic_surprisal_onset for position 1"
        )
    prefix_a = (evidence.phoneme_a,) + continuation
    prefix_b = (evidence.phoneme_b,) + continuation
    inner = _weighted_inner(
        evidence,
        (trie.prefix_frequency(prefix_a), trie.prefix_frequency(prefix_b)),
        (trie.prefix_frequency(prefix_a[:-1]), trie.prefix_frequency(prefix_b[:-1])),
    )
    if inner <= 0:
        raise ImpossibleContinuationError(
            f"neither /{evidence.phoneme_a}/ nor /{evidence.phoneme_b}/ admits "
            f"the continuation /{' '.join(continuation)}/"
        )
    return max(0.0, -math.log2(inner))


def acoustic_surprisal_onset(trie: CohortTrie, evidence: AcousticEvidence) -> float:
    """Acoustic-weighted surprisal of the onset itself (position 1).

    The conditional terms are onset frequency over total lexicon
    frequency; Q is each onset's share of the two onsets' combined
    frequency.
    """
    total = trie.total_frequency
    freq_a = trie.prefix_frequency((evidence.phoneme_a,))
    freq_b = trie.prefix_frequency((evidence.phoneme_b,))
    inner = _weighted_inner(evidence, (freq_a, freq_b), (total, total))
    if inner <= 0:
        raise ImpossibleContinuationError(
            f"neither /{evidence.phoneme_a}/ nor /{evidence.phoneme_b}/ "
            "starts any word"
        )
    return max(0.0, -math.log2(inner))


def metric_trace(
    trie: CohortTrie, word: LexiconEntry, evidence: AcousticEvidence
) -> MetricTrace:
    """Both models' entropy and surprisal at every position of `word`.

    The switch model walks the cohort of the committed onset (the
    evidence argmax) followed by the word's post-onset phonemes; the
    acoustic-weighted model mixes both onset sub-cohorts throughout. The
    onset commitment is fixed for the whole trace. Raises if a position
    is an impossible continuation under either model.
    """
    if word.onset not in (evidence.phoneme_a, evidence.phoneme_b):
        raise ValueError(
            f"word onset /{word.onset}/ is neither evidence candidate "
            f"(/{evidence.phoneme_a}/, /{evidence.phoneme_b}/)"
        )
    committed = evidence.committed
    points = []
    for position in range(1, len(word.pron) + 1):
        continuation = word.pron[1:position]
        switch_prefix = (committed,) + continuation
        if position == 1:
            ac_surprisal = acoustic_surprisal_onset(trie, evidence)
        else:
            ac_surprisal = acoustic_surprisal(trie, evidence, continuation)
        weighted = acoustic_weighted_probs(trie, evidence, continuation)
        points.append(
            MetricPoint(
                position=position,
                phoneme=word.pron[position - 1],
                switch_surprisal=switch_surprisal(trie, switch_prefix),
                acoustic_surprisal=ac_surprisal,
                switch_entropy=switch_entropy(trie, switch_prefix),
                acoustic_entropy=_entropy_bits(p for _, p in weighted.members),
                switch_cohort_size=trie.cohort_size(switch_prefix),
                joint_cohort_size=weighted.size,
            )
        )
    return MetricTrace(word, evidence, tuple(points))


def _values_at(traces, position: int, quantity: str):
    if quantity not in ("surprisal", "entropy"):
        raise ValueError(f"quantity must be 'surprisal' or 'entropy', got {quantity!r}")
    pairs = []
    for trace in traces:
        point = trace.point_at(position)
        if point is None:
            continue
        if quantity == "surprisal":
            pairs.append((trace, point.switch_surprisal, point.acoustic_surprisal))
        else:
            pairs.append((trace, point.switch_entropy, point.acoustic_entropy))
    return pairs


def model_correlation(traces, position: int, quantity: str) -> float:
    """Pearson r between the two models' values at `position` across traces."""
    pairs = _values_at(traces, position, quantity)
    if len(pairs) < 3:
        raise ValueError(
            f"need at least 3 traces with position {position}, have {len(pairs)}"
        )
    switch_values = [s for _, s, _ in pairs]
    acoustic_values = [a for _, _, a in pairs]
    try:
        return statistics.correlation(switch_values, acoustic_values)
    except statistics.StatisticsError:
        raise UndefinedCorrelationError(
            f"constant {quantity} values at position {position}: "
            "correlation undefined"
        ) from None


def model_divergence_ranking(
    traces, position: int, quantity: str
) -> list[tuple[LexiconEntry, float]]:
    """Words ranked by |acoustic - switch| at `position`, largest first.

    Ties break by orthography, so the ranking is deterministic.
    """
    pairs = _values_at(traces, position, quantity)
    if not pairs:
        raise ValueError(f"no trace has a point at position {position}")
    ranked = sorted(
        ((trace.word, abs(acoustic - switch)) for trace, switch, acoustic in pairs),
        key=lambda item: (-item[1], item[0].orthography),
    )
    return ranked
