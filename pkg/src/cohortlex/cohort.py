"""Incremental cohort queries over a phoneme prefix trie.

Every trie node aggregates the summed frequency of all words whose
pronunciation passes through it, so prefix frequencies, cohort membership
distributions, conditional continuation probabilities, and uniqueness
points all resolve in O(prefix length) walks plus (for membership) a
subtree collection. The trie is immutable once built; queries are
read-only and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lexicon import Lexicon, LexiconEntry, PhonemeSeq


class ImpossibleContinuationError(ValueError):
    """Raised when a queried prefix has no surviving cohort.

    Raising instead of returning an infinite surprisal keeps silent
    infinities out of downstream datasets.
    """


@dataclass(frozen=True)
class Cohort:
    """Words consistent with a heard prefix, with normalized probabilities.

    Member probability is the word's frequency divided by the prefix
    frequency, so probabilities sum to 1. A word whose pronunciation
    equals the prefix exactly is still a member; it only drops out once a
    further phoneme arrives.
    """

    prefix: PhonemeSeq
    members: tuple[tuple[LexiconEntry, float], ...]

    @property
    def size(self) -> int:
        return len(self.members)

    def probability_of(self, orthography: str) -> float:
        """Summed probability of members spelled `orthography` (0 if absent)."""
        return sum(p for e, p in self.members if e.orthography == orthography)


class _Node:
    __slots__ = ("children", "cum_freq", "n_entries", "terminals")

    def __init__(self):
        self.children: dict[str, _Node] = {}
        self.cum_freq = 0.0
        self.n_entries = 0
        self.terminals: list[LexiconEntry] = []


class CohortTrie:
    """Phoneme prefix trie with cumulative frequency at every node."""

    def __init__(self, lexicon: Lexicon):
        if len(lexicon) == 0:
            raise ValueError("cannot build a trie from an empty lexicon")
        self.lexicon = lexicon
        self._root = _Node()
        self._keys = set()
        for entry in lexicon.entries:
            node = self._root
            node.cum_freq += entry.frequency
            node.n_entries += 1
            for phoneme in entry.pron:
                node = node.children.setdefault(phoneme, _Node())
                node.cum_freq += entry.frequency
                node.n_entries += 1
            node.terminals.append(entry)
            self._keys.add((entry.orthography, entry.pron))

    @property
    def total_frequency(self) -> float:
        return self._root.cum_freq

    def _node_at(self, prefix: PhonemeSeq) -> _Node | None:
        node = self._root
        for phoneme in prefix:
            node = node.children.get(phoneme)
            if node is None:
                return None
        return node

    def prefix_frequency(self, prefix: PhonemeSeq) -> float:
        """Summed frequency of words starting with `prefix` (0 if none).

        The empty prefix returns the total lexicon frequency.
        """
        node = self._node_at(tuple(prefix))
        return node.cum_freq if node is not None else 0.0

    def cohort_size(self, prefix: PhonemeSeq) -> int:
        """Number of entries whose pronunciation starts with `prefix`."""
        node = self._node_at(tuple(prefix))
        return node.n_entries if node is not None else 0

    def cohort_at(self, prefix: PhonemeSeq) -> Cohort:
        """The cohort of words consistent with `prefix`.

        Raises ImpossibleContinuationError when no word survives.
        """
        prefix = tuple(prefix)
        node = self._node_at(prefix)
        if node is None:
            raise ImpossibleContinuationError(
                f"no word starts with /{' '.join(prefix)}/"
            )
        total = node.cum_freq
        members = []
        stack = [node]
        while stack:
            current = stack.pop()
            for entry in current.terminals:
                members.append((entry, entry.frequency / total))
            stack.extend(reversed(current.children.values()))
        return Cohort(prefix, tuple(members))

    def conditional_prob(self, prefix: PhonemeSeq) -> float:
        """P(last phoneme | preceding phonemes) by prefix-frequency ratio.

        For a length-1 prefix the denominator is the total lexicon
        frequency. A zero denominator means the preceding prefix itself is
        impossible and raises ImpossibleContinuationError.
        """
        prefix = tuple(prefix)
        if len(prefix) < 1:
            raise ValueError("conditional_prob needs a prefix of length >= 1")
        denominator = self.prefix_frequency(prefix[:-1])
        if denominator == 0:
            raise ImpossibleContinuationError(
                f"prefix /{' '.join(prefix[:-1])}/ has no cohort"
            )
        return self.prefix_frequency(prefix) / denominator

    def uniqueness_point(self, entry: LexiconEntry) -> int | None:
        """Earliest position at which `entry` is the only surviving word.

        Returns None when the full pronunciation never isolates the entry
        (a longer word embeds it as a prefix, or a homophone shares the
        whole pronunciation).
        """
        if (entry.orthography, entry.pron) not in self._keys:
            raise KeyError(
                f"entry {entry.orthography!r} /{' '.join(entry.pron)}/ "
                "is not in this trie's lexicon"
            )
        node = self._root
        for position, phoneme in enumerate(entry.pron, start=1):
            node = node.children[phoneme]
            if node.n_entries == 1:
                return position
        return None


def build_trie(lexicon: Lexicon) -> CohortTrie:
    """Index a lexicon for incremental cohort queries."""
    return CohortTrie(lexicon)
