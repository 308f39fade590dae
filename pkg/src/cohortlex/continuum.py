"""Perceptual resampling of 11-step identification continua.

A behavioral pretest yields, per continuum step, the proportion of
listeners labelling the onset as the first category. Those proportions
turn the 11-step acoustic continuum into a 5-step perceptually defined
one by picking the steps closest to the target probabilities, and they
supply the evidence weights handed to the activation metrics.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import least_squares

from .lexicon import Phoneme
from .metrics import AcousticEvidence

N_STEPS = 11

# Target identification probabilities of the resampled 5-step continuum,
# endpoint / partially-ambiguous / midpoint grid. Selection order matters:
# greedy assignment walks this tuple left to right.
CONTINUUM_TARGETS = (1.0, 0.75, 0.5, 0.25, 0.0)

_FIT_START = (6.0, 1.0)  # (midpoint, slope) initialization
_FIT_MAX_EVALS = 200


class DegenerateCurveError(ValueError):
    """Identification proportions carry no step information (all equal)."""


@dataclass(frozen=True)
class IdentificationCurve:
    """Proportion of first-category responses at continuum steps 1..11."""

    proportions: tuple[float, ...]

    def __post_init__(self):
        if len(self.proportions) != N_STEPS:
            raise ValueError(
                f"expected {N_STEPS} proportions, got {len(self.proportions)}"
            )
        bad = [p for p in self.proportions if not 0.0 <= p <= 1.0]
        if bad:
            raise ValueError(f"proportions outside [0, 1]: {bad}")

    @classmethod
    def from_pairs(cls, pairs) -> "IdentificationCurve":
        """Build from (step index, proportion) pairs in any order."""
        by_step = {}
        for step, proportion in pairs:
            step = int(step)
            if step in by_step:
                raise ValueError(f"duplicate step index {step}")
            by_step[step] = float(proportion)
        if sorted(by_step) != list(range(1, N_STEPS + 1)):
            raise ValueError(
                f"step indices must be exactly 1..{N_STEPS}, got {sorted(by_step)}"
            )
        return cls(tuple(by_step[s] for s in range(1, N_STEPS + 1)))

    def proportion_at(self, step: int) -> float:
        return self.proportions[step - 1]


@dataclass(frozen=True)
class ContinuumPoint:
    target: float
    step: int
    achieved_proportion: float
    fitted_probability: float


@dataclass(frozen=True)
class PerceptualContinuum:
    """5-step resampled continuum plus the psychometric fit behind it."""

    points: tuple[ContinuumPoint, ...]
    midpoint: float
    slope: float

    def point_for(self, target: float) -> ContinuumPoint:
        for point in self.points:
            if point.target == target:
                return point
        raise KeyError(
            f"target {target} is not on the continuum "
            f"(targets: {[p.target for p in self.points]})"
        )


def logistic_identification(step, midpoint: float, slope: float):
    """Two-parameter descending logistic: 1 / (1 + exp(slope*(step-midpoint)))."""
    return 1.0 / (1.0 + np.exp(slope * (np.asarray(step, dtype=float) - midpoint)))


def fit_psychometric(curve: IdentificationCurve) -> tuple[float, float]:
    """Least-squares logistic fit of an identification curve.

    Returns (midpoint, slope). Deterministic: fixed start (6, 1) and a
    fixed evaluation budget. A constant curve has no midpoint and raises
    DegenerateCurveError.
    """
    proportions = np.array(curve.proportions)
    if np.all(proportions == proportions[0]):
        raise DegenerateCurveError("all identification proportions are equal")
    steps = np.arange(1, N_STEPS + 1, dtype=float)

    def residual(params):
        midpoint, slope = params
        return logistic_identification(steps, midpoint, slope) - proportions

    result = least_squares(residual, _FIT_START, max_nfev=_FIT_MAX_EVALS)
    midpoint, slope = result.x
    return float(midpoint), float(slope)


def resample_continuum(
    curve: IdentificationCurve, mode: str = "raw"
) -> PerceptualContinuum:
    """Pick the 5 steps nearest the target identification probabilities.

    Greedy assignment in target order 1 -> 0; each step is used at most
    once; distance ties break toward the lower step index. `mode`
    selects what "nearest" compares against: the raw pretest proportions
    (default) or the fitted logistic probabilities.
    """
    if mode not in ("raw", "fitted"):
        raise ValueError(f"mode must be 'raw' or 'fitted', got {mode!r}")
    midpoint, slope = fit_psychometric(curve)
    fitted = logistic_identification(np.arange(1, N_STEPS + 1), midpoint, slope)
    reference = fitted if mode == "fitted" else np.array(curve.proportions)

    used: set[int] = set()
    points = []
    for target in CONTINUUM_TARGETS:
        step = min(
            (s for s in range(1, N_STEPS + 1) if s not in used),
            key=lambda s: (abs(reference[s - 1] - target), s),
        )
        used.add(step)
        points.append(
            ContinuumPoint(
                target=target,
                step=step,
                achieved_proportion=curve.proportion_at(step),
                fitted_probability=float(fitted[step - 1]),
            )
        )
    return PerceptualContinuum(tuple(points), midpoint, slope)


def evidence_for_target(
    continuum: PerceptualContinuum,
    target: float,
    pair: tuple[Phoneme, Phoneme],
    use_achieved: bool = False,
) -> AcousticEvidence:
    """Evidence weights for one continuum step.

    By default p_a is the design-level target probability; set
    `use_achieved` to use the step's achieved pretest proportion instead
    (sensitivity analysis). Raises KeyError for a target not on the
    continuum.
    """
    point = continuum.point_for(target)
    p_a = point.achieved_proportion if use_achieved else point.target
    return AcousticEvidence(pair[0], pair[1], p_a)


def read_identification_curves(path: str | Path) -> dict[str, IdentificationCurve]:
    """Read identification curves from CSV.

    Two layouts: `step,proportion` (one curve, keyed by the file stem) or
    long-format `item,step,proportion`. Column order is free; headers are
    required.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise ValueError(f"{path}: empty file")
        fields = {name.strip().lower() for name in reader.fieldnames}
        if not {"step", "proportion"} <= fields:
            raise ValueError(
                f"{path}: expected columns step,proportion (plus optional item), "
                f"got {sorted(fields)}"
            )
        has_item = "item" in fields
        rows_by_item: dict[str, list[tuple[int, float]]] = {}
        for row in reader:
            row = {k.strip().lower(): v for k, v in row.items() if k is not None}
            item = row["item"].strip() if has_item else path.stem
            rows_by_item.setdefault(item, []).append(
                (int(row["step"]), float(row["proportion"]))
            )
    if not rows_by_item:
        raise ValueError(f"{path}: no data rows")
    return {
        item: IdentificationCurve.from_pairs(pairs)
        for item, pairs in rows_by_item.items()
    }
