import numpy as np
import pytest

from cohortlex import divergence_point, find_word_pairs, make_lexicon

LONG_OVERLAP_ROWS = [
    ("balance", "B AE L AH N S", 10.0),
    ("palate", "P AE L AH T", 4.0),
    ("bin", "B IH N", 2.0),
    ("mat", "M AE T", 7.0),
]


def test_shared_three_phoneme_pair_found():
    pairs = find_word_pairs(make_lexicon(LONG_OVERLAP_ROWS), min_shared=3)
    assert len(pairs) == 1
    pair = pairs[0]
    assert pair.entry_a.orthography == "balance"  # voiced member first
    assert pair.entry_b.orthography == "palate"
    assert pair.onset_pair == ("B", "P")
    assert pair.entry_a.pron[1:4] == ("AE", "L", "AH") == pair.entry_b.pron[1:4]
    assert pair.shared_len == 3
    assert pair.divergence_point == 5


def test_single_onset_lexicon_has_no_pairs():
    lex = make_lexicon([("bat", "B AE T", 3.0), ("ban", "B AE N", 1.0)])
    assert find_word_pairs(lex, min_shared=1) == []


def test_full_post_onset_match_needs_divergence_flag():
    lex = make_lexicon([("bat", "B AE T", 3.0), ("pat", "P AE T", 4.0)])
    assert find_word_pairs(lex, min_shared=2) == []
    pairs = find_word_pairs(lex, min_shared=2, require_divergence=False)
    assert len(pairs) == 1
    assert pairs[0].divergence_point is None
    assert pairs[0].shared_len == 2


def test_prefix_embedding_counts_as_no_divergence():
    lex = make_lexicon([("bat", "B AE T", 3.0), ("pats", "P AE T S", 4.0)])
    assert find_word_pairs(lex, min_shared=2) == []
    pairs = find_word_pairs(lex, min_shared=2, require_divergence=False)
    assert pairs[0].divergence_point is None
    # shared through the shorter pronunciation
    assert pairs[0].shared_len == 2


def test_divergence_point_long_overlap_pair():
    assert divergence_point(
        ("P", "AE", "L", "AH", "T"), ("B", "AE", "L", "AH", "N", "S")
    ) == 5


def test_divergence_point_identical_prons():
    assert divergence_point(("B", "AE", "T"), ("B", "AE", "T")) is None


def test_divergence_point_immediate():
    assert divergence_point(("B", "AE"), ("P", "IH")) == 2


def test_divergence_point_requires_length_two():
    with pytest.raises(ValueError):
        divergence_point(("B",), ("P", "AE"))


def test_min_shared_validation():
    lex = make_lexicon(LONG_OVERLAP_ROWS)
    with pytest.raises(ValueError):
        find_word_pairs(lex, min_shared=0)


def test_short_words_are_skipped():
    lex = make_lexicon([("bay", "B EY", 3.0), ("pay", "P EY", 4.0)])
    assert find_word_pairs(lex, min_shared=2) == []
    assert len(find_word_pairs(lex, min_shared=1, require_divergence=False)) == 1


def test_all_three_voicing_contrasts():
    lex = make_lexicon(
        [
            ("bat", "B AE T", 1.0),
            ("pan", "P AE N", 1.0),
            ("dock", "D AA K", 1.0),
            ("tot", "T AA T", 1.0),
            ("gore", "G AO R", 1.0),
            ("core", "K AO L", 1.0),
        ]
    )
    pairs = find_word_pairs(lex, min_shared=1)
    assert {p.onset_pair for p in pairs} == {("B", "P"), ("D", "T"), ("G", "K")}
    for pair in pairs:
        assert pair.entry_a.onset == pair.onset_pair[0]


def test_order_invariance():
    lex = make_lexicon(LONG_OVERLAP_ROWS)
    reversed_lex = make_lexicon(list(reversed(LONG_OVERLAP_ROWS)))
    def summary(pairs):
        return [
            (
                p.entry_a.orthography,
                p.entry_b.orthography,
                p.shared_len,
                p.divergence_point,
            )
            for p in pairs
        ]
    assert summary(find_word_pairs(lex, 1)) == summary(find_word_pairs(reversed_lex, 1))


def test_sorted_by_shared_length_then_orthography():
    lex = make_lexicon(
        [
            ("balance", "B AE L AH N S", 1.0),
            ("palate", "P AE L AH T", 1.0),
            ("bat", "B AE T", 1.0),
            ("pan", "P AE N", 1.0),
            ("bad", "B AE D", 1.0),
        ]
    )
    pairs = find_word_pairs(lex, min_shared=1)
    keys = [(-p.shared_len, p.entry_a.orthography, p.entry_b.orthography) for p in pairs]
    assert keys == sorted(keys)
    assert (pairs[0].entry_a.orthography, pairs[0].entry_b.orthography) == (
        "balance",
        "palate",
    )
    assert {(p.entry_a.orthography, p.entry_b.orthography) for p in pairs[1:]} == {
        ("balance", "pan"),
        ("bat", "palate"),
        ("bat", "pan"),
        ("bad", "palate"),
        ("bad", "pan"),
    }


def test_reported_pairs_verified_by_direct_comparison():
    rng = np.random.default_rng(31)
    onsets = ["B", "P", "D", "T", "G", "K", "M"]
    vowels = ["AE", "IH", "AA"]
    codas = ["N", "S", "L", "R"]
    rows = []
    for i in range(120):
        pron = [
            onsets[int(rng.integers(len(onsets)))],
            vowels[int(rng.integers(len(vowels)))],
            codas[int(rng.integers(len(codas)))],
        ]
        if rng.random() < 0.5:
            pron.append(codas[int(rng.integers(len(codas)))])
        rows.append((f"w{i}", " ".join(pron), float(rng.integers(1, 50))))
    lex = make_lexicon(rows)
    voiced_of = {"B": "B", "D": "D", "G": "G", "P": "B", "T": "D", "K": "G"}
    for min_shared in (1, 2):
        pairs = find_word_pairs(lex, min_shared=min_shared)
        seen = set()
        for pair in pairs:
            a, b = pair.entry_a, pair.entry_b
            assert voiced_of[a.onset] == a.onset
            assert voiced_of[b.onset] == a.onset
            assert a.pron[1 : 1 + min_shared] == b.pron[1 : 1 + min_shared]
            point = pair.divergence_point
            assert point is not None and point >= 2
            assert a.pron[1 : point - 1] == b.pron[1 : point - 1]
            assert a.pron[point - 1] != b.pron[point - 1]
            assert pair.shared_len == point - 2
            key = frozenset((a.orthography, b.orthography))
            assert key not in seen
            seen.add(key)
