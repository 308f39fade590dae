import pytest

from cohortlex import build_trie, make_lexicon

TOY_A_ROWS = [
    ("bat", "B AE T", 3.0),
    ("ban", "B AE N", 1.0),
    ("pat", "P AE T", 4.0),
]

TOY_B_ROWS = [
    ("bat", "B AE T", 3.0),
    ("bin", "B IH N", 1.0),
    ("pat", "P AE T", 4.0),
    ("pin", "P IH N", 4.0),
]

# Mirrored onset pairs over four vowel groups with uneven frequencies.
# Every continuation exists under both onsets, so no trace is skipped,
# and the position-2 metric vectors span enough directions for the full
# regression design to be non-singular (the toy lexicons collapse to too
# few distinct metric points for that).
SIM_ROWS = [
    ("bat", "B AE T", 3.0),
    ("bad", "B AE D", 2.0),
    ("bin", "B IH N", 2.0),
    ("bid", "B IH D", 1.0),
    ("bet", "B EH T", 5.0),
    ("beck", "B EH K", 1.0),
    ("bog", "B AA G", 2.0),
    ("bob", "B AA B", 2.0),
    ("pat", "P AE T", 4.0),
    ("pad", "P AE D", 1.0),
    ("pin", "P IH N", 4.0),
    ("pid", "P IH D", 2.0),
    ("pet", "P EH T", 2.0),
    ("peck", "P EH K", 3.0),
    ("pog", "P AA G", 6.0),
    ("pob", "P AA B", 1.0),
]


@pytest.fixture
def toy_a():
    return make_lexicon(TOY_A_ROWS)


@pytest.fixture
def toy_b():
    return make_lexicon(TOY_B_ROWS)


@pytest.fixture
def trie_a(toy_a):
    return build_trie(toy_a)


@pytest.fixture
def trie_b(toy_b):
    return build_trie(toy_b)


@pytest.fixture
def trie_sim():
    return build_trie(make_lexicon(SIM_ROWS))
