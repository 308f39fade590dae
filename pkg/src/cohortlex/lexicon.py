"""Pronunciation lexicon with frequency counts.

The on-disk format is TSV: ``orthography<TAB>PH1 PH2 ...<TAB>frequency``.
Lines starting with '#' are headers; ``#unit:`` declares the frequency unit
and ``#inventory:`` pins an explicit phoneme inventory. All downstream math
works on frequency ratios, so counts and per-million files behave the same.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

Phoneme = str
PhonemeSeq = tuple[Phoneme, ...]

# Voiced/voiceless plosive onset contrasts used throughout stimulus design.
PLOSIVE_VOICING_PAIRS: tuple[tuple[Phoneme, Phoneme], ...] = (
    ("B", "P"),
    ("D", "T"),
    ("G", "K"),
)

KNOWN_UNITS = ("counts", "per-million")


class LexiconError(ValueError):
    """Base class for lexicon file problems."""


class LexiconParseError(LexiconError):
    """Structurally malformed row (wrong column count, bad header)."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class LexiconValidationError(LexiconError):
    """Well-formed row violating a lexicon invariant."""


@dataclass(frozen=True)
class LexiconEntry:
    """One word: spelling, phoneme pronunciation, positive frequency."""

    orthography: str
    pron: PhonemeSeq
    frequency: float

    def __post_init__(self):
        if not self.pron:
            raise LexiconValidationError(f"{self.orthography!r}: empty pronunciation")
        if not self.frequency > 0:
            raise LexiconValidationError(
                f"{self.orthography!r}: frequency must be > 0, got {self.frequency}"
            )

    @property
    def onset(self) -> Phoneme:
        return self.pron[0]


@dataclass(frozen=True)
class Lexicon:
    """Immutable word list plus its phoneme inventory.

    Homophones (same pronunciation, different orthography) are distinct
    entries; the same orthography+pronunciation pair may appear only once.
    """

    entries: tuple[LexiconEntry, ...]
    inventory: frozenset[Phoneme]
    frequency_unit: str = "counts"
    _by_orthography: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        seen = set()
        by_orth: dict[str, list[LexiconEntry]] = {}
        for entry in self.entries:
            key = (entry.orthography, entry.pron)
            if key in seen:
                raise LexiconValidationError(
                    f"duplicate entry {entry.orthography!r} /{' '.join(entry.pron)}/"
                )
            seen.add(key)
            missing = set(entry.pron) - self.inventory
            if missing:
                raise LexiconValidationError(
                    f"{entry.orthography!r} uses phonemes outside the inventory: "
                    f"{sorted(missing)}"
                )
            by_orth.setdefault(entry.orthography, []).append(entry)
        object.__setattr__(self, "_by_orthography", by_orth)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def total_frequency(self) -> float:
        return sum(e.frequency for e in self.entries)

    def lookup(self, orthography: str) -> tuple[LexiconEntry, ...]:
        """All entries spelled `orthography` (empty tuple if absent)."""
        return tuple(self._by_orthography.get(orthography, ()))


def plosive_voicing_pairs() -> list[tuple[Phoneme, Phoneme]]:
    """The (voiced, voiceless) plosive onset pairs: (B,P), (D,T), (G,K)."""
    return list(PLOSIVE_VOICING_PAIRS)


def _normalize_pron(raw: str) -> PhonemeSeq:
    return tuple(tok.upper() for tok in raw.split())


def parse_lexicon(path: str | Path, smoothing: float = 0.0) -> Lexicon:
    """Parse a TSV lexicon file.

    `smoothing` adds a constant to every frequency (add-lambda), letting
    files with zero counts through; with the default 0.0 a non-positive
    frequency is rejected.

    Raises LexiconParseError for malformed rows (with the line number) and
    LexiconValidationError for invariant violations, including an empty
    lexicon.
    """
    if smoothing < 0:
        raise ValueError(f"smoothing must be >= 0, got {smoothing}")
    path = Path(path)
    unit = "counts"
    declared_inventory: frozenset[Phoneme] | None = None
    entries: list[LexiconEntry] = []
    seen: set[tuple[str, PhonemeSeq]] = set()
    with path.open(encoding="utf-8") as handle:
        for line_number, line in enumerate(handle, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            if line.startswith("#"):
                header = line[1:].strip()
                if header.lower().startswith("unit:"):
                    unit = header[len("unit:"):].strip()
                    if unit not in KNOWN_UNITS:
                        raise LexiconParseError(
                            f"unknown frequency unit {unit!r} "
                            f"(expected one of {KNOWN_UNITS})",
                            line_number,
                        )
                elif header.lower().startswith("inventory:"):
                    declared_inventory = frozenset(
                        _normalize_pron(header[len("inventory:"):])
                    )
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                raise LexiconParseError(
                    f"expected 3 tab-separated columns, got {len(fields)}",
                    line_number,
                )
            orthography, pron_field, freq_field = fields
            pron = _normalize_pron(pron_field)
            if not pron:
                raise LexiconValidationError(
                    f"line {line_number}: {orthography!r} has an empty pronunciation"
                )
            try:
                raw_freq = float(freq_field)
            except ValueError:
                raise LexiconValidationError(
                    f"line {line_number}: non-numeric frequency {freq_field!r}"
                ) from None
            if raw_freq < 0:
                raise LexiconValidationError(
                    f"line {line_number}: negative frequency {raw_freq}"
                )
            frequency = raw_freq + smoothing
            if not frequency > 0:
                raise LexiconValidationError(
                    f"line {line_number}: frequency must be > 0, got {raw_freq}"
                )
            key = (orthography, pron)
            if key in seen:
                raise LexiconValidationError(
                    f"line {line_number}: duplicate entry {orthography!r} "
                    f"/{' '.join(pron)}/"
                )
            seen.add(key)
            entries.append(LexiconEntry(orthography, pron, frequency))
    if not entries:
        raise LexiconValidationError("empty lexicon")
    observed = frozenset(ph for e in entries for ph in e.pron)
    inventory = declared_inventory if declared_inventory is not None else observed
    return Lexicon(tuple(entries), inventory, unit)


def write_lexicon(lexicon: Lexicon, path: str | Path) -> None:
    """Serialize back to the TSV format parse_lexicon reads (round-trips)."""
    path = Path(path)
    lines = [f"#unit: {lexicon.frequency_unit}"]
    lines.append(f"#inventory: {' '.join(sorted(lexicon.inventory))}")
    for e in lexicon.entries:
        lines.append(f"{e.orthography}\t{' '.join(e.pron)}\t{e.frequency!r}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def make_lexicon(
    rows: Iterable[tuple[str, str | PhonemeSeq, float]],
    frequency_unit: str = "counts",
) -> Lexicon:
    """Build a Lexicon from (orthography, pron, frequency) triples.

    `pron` may be a space-separated string or a phoneme tuple. Convenience
    constructor for tests and embedding callers.
    """
    entries = []
    for orthography, pron, frequency in rows:
        if isinstance(pron, str):
            pron = _normalize_pron(pron)
        else:
            pron = tuple(p.upper() for p in pron)
        entries.append(LexiconEntry(orthography, pron, float(frequency)))
    if not entries:
        raise LexiconValidationError("empty lexicon")
    inventory = frozenset(ph for e in entries for ph in e.pron)
    return Lexicon(tuple(entries), inventory, frequency_unit)
