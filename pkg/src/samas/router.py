"""Threshold routing from an SFS to a style class and its agent workflow.

Also hosts threshold calibration (exhaustive grid search plus per-feature ROC
curves) on a labeled set of spectra.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ConfigError, DegenerateLabels, EmptyInput
from .roles import AgentRole, StyleClass
from .sfs import StylisticFeatureSpectrum, low_frequency_energy

FAULKNER = StyleClass.FAULKNER_ESQUE
HEMINGWAY = StyleClass.HEMINGWAY_ESQUE


@dataclass(frozen=True)
class RoutingThresholds:
    h_threshold: float = 0.85
    e_low_threshold: float = 0.6

    def __post_init__(self):
        for name in ("h_threshold", "e_low_threshold"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")

    def to_json(self) -> dict:
        return {"h": self.h_threshold, "e_low": self.e_low_threshold}

    @classmethod
    def from_json(cls, obj: Mapping) -> "RoutingThresholds":
        return cls(float(obj.get("h", 0.85)), float(obj.get("e_low", 0.6)))


@dataclass(frozen=True)
class Workflow:
    name: str
    stages: tuple[AgentRole, ...]

    def __post_init__(self):
        if not self.stages:
            raise ValueError(f"workflow {self.name!r} has no stages")
        if len(set(self.stages)) != len(self.stages):
            raise ValueError(f"workflow {self.name!r} repeats a role")

    def __len__(self):
        return len(self.stages)


FAULKNER_WORKFLOW = Workflow(
    "faulkner",
    (
        AgentRole.LINGUISTIC_STRUCTURE,
        AgentRole.METAPHOR_TRANSLATION,
        AgentRole.CORE_TRANSLATION,
        AgentRole.CONSISTENCY_FIDELITY,
    ),
)
HEMINGWAY_WORKFLOW = Workflow(
    "hemingway",
    (
        AgentRole.CORE_TRANSLATION,
        AgentRole.RHYTHM_PROSODY,
        AgentRole.CONSISTENCY_FIDELITY,
    ),
)


@dataclass(frozen=True)
class WorkflowLibrary:
    workflows: Mapping[StyleClass, Workflow] = field(
        default_factory=lambda: {FAULKNER: FAULKNER_WORKFLOW, HEMINGWAY: HEMINGWAY_WORKFLOW}
    )

    def __post_init__(self):
        missing = [c.value for c in StyleClass if c not in self.workflows]
        if missing:
            raise ConfigError(f"workflow library has no entry for {', '.join(missing)}")

    def __getitem__(self, cls: StyleClass) -> Workflow:
        return self.workflows[cls]

    def to_json(self) -> dict:
        return {c.value: [r.value for r in wf.stages] for c, wf in self.workflows.items()}

    @classmethod
    def from_json(cls, obj: Mapping) -> "WorkflowLibrary":
        try:
            workflows = {
                StyleClass.parse(name): Workflow(
                    StyleClass.parse(name).value, tuple(AgentRole(r) for r in roles)
                )
                for name, roles in obj.items()
            }
        except ValueError as exc:
            raise ConfigError(f"invalid workflow library: {exc}") from exc
        return cls(workflows)


def load_routing_config(path) -> tuple[RoutingThresholds, WorkflowLibrary]:
    """Read ``{"thresholds": {...}, "workflows": {...}}``; missing keys use defaults."""
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    thresholds = RoutingThresholds.from_json(obj.get("thresholds", {}))
    library = WorkflowLibrary.from_json(obj["workflows"]) if "workflows" in obj else WorkflowLibrary()
    return thresholds, library


def classify_values(h: float, e_low: float, thresholds: RoutingThresholds = RoutingThresholds()) -> StyleClass:
    if h > thresholds.h_threshold and e_low > thresholds.e_low_threshold:
        return FAULKNER
    return HEMINGWAY


def classify(sfs: StylisticFeatureSpectrum, thresholds: RoutingThresholds = RoutingThresholds()) -> StyleClass:
    """Faulkner-esque iff H > h and E_low > e_low, both strict."""
    return classify_values(sfs.global_entropy, low_frequency_energy(sfs), thresholds)


def allocate_workflow(style: StyleClass, library: WorkflowLibrary = WorkflowLibrary()) -> Workflow:
    return library[style]


# -- calibration --------------------------------------------------------------


@dataclass
class CalibrationReport:
    best_thresholds: RoutingThresholds
    accuracy: float
    confusion: dict
    margin: float
    clearance: dict
    roc_points: dict  # feature -> [(fpr, tpr, threshold), ...], thresholds descending
    auc: dict
    grid_resolution: float
    n_samples: int

    def to_json(self) -> dict:
        return {
            "best_thresholds": self.best_thresholds.to_json(),
            "accuracy": self.accuracy,
            "confusion": self.confusion,
            "margin": self.margin,
            "clearance": self.clearance,
            "grid_resolution": self.grid_resolution,
            "n_samples": self.n_samples,
            "auc": self.auc,
            "roc_points": {
                k: [{"fpr": f, "tpr": t, "threshold": th} for f, t, th in pts]
                for k, pts in self.roc_points.items()
            },
        }


def threshold_grid(resolution: float) -> np.ndarray:
    """``{0, r, 2r, ...}`` up to 1, with 1 always included."""
    if not 0 < resolution <= 0.5:
        raise ValueError(f"grid resolution must lie in (0, 0.5], got {resolution}")
    steps = int(np.floor(1.0 / resolution + 1e-9))
    grid = np.round(np.arange(steps + 1) * resolution, 12)
    if grid[-1] < 1.0:
        grid = np.append(grid, 1.0)
    return grid


def roc_curve(scores, positives, thresholds, gate=None) -> list[tuple[float, float, float]]:
    """(fpr, tpr, threshold) for the rule ``score > threshold``, thresholds descending.

    ``gate`` is an optional boolean mask ANDed into every prediction.
    """
    s = np.asarray(scores, dtype=float)
    y = np.asarray(positives, dtype=bool)
    g = np.ones_like(y) if gate is None else np.asarray(gate, dtype=bool)
    n_pos, n_neg = int(y.sum()), int((~y).sum())
    points = []
    for t in sorted(np.asarray(thresholds, dtype=float), reverse=True):
        pred = (s > t) & g
        tpr = float((pred & y).sum() / n_pos) if n_pos else 0.0
        fpr = float((pred & ~y).sum() / n_neg) if n_neg else 0.0
        points.append((fpr, tpr, float(t)))
    return points


def roc_auc(points: Sequence[tuple[float, float, float]]) -> float:
    """Trapezoid area under ROC points, anchored at (0, 0) and (1, 1)."""
    fpr = [0.0] + [p[0] for p in points] + [1.0]
    tpr = [0.0] + [p[1] for p in points] + [1.0]
    order = np.lexsort((tpr, fpr))
    x = np.asarray(fpr)[order]
    y = np.asarray(tpr)[order]
    return float(np.sum(np.diff(x) * (y[1:] + y[:-1]) / 2.0))


def _clearance(grid, values, positives):
    """Signed gap between each threshold and the classes it should separate.

    Positive when every positive sample lies above the threshold and every
    negative one below it; the value is the smaller of the two gaps.
    """
    above = values[positives].min() - grid
    below = grid - values[~positives].max()
    return np.minimum(above, below)


def _sample_features(samples) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    H, E, y = [], [], []
    for sfs, label in samples:
        if isinstance(sfs, StylisticFeatureSpectrum):
            h, e = sfs.global_entropy, low_frequency_energy(sfs)
        else:
            h, e = sfs
        H.append(h)
        E.append(e)
        y.append(StyleClass.parse(label) is FAULKNER)
    return np.asarray(H, float), np.asarray(E, float), np.asarray(y, bool)


def calibrate_thresholds(
    samples: Iterable[tuple[StylisticFeatureSpectrum | tuple[float, float], object]],
    grid_resolution: float = 0.05,
) -> CalibrationReport:
    """Exhaustive (h, e_low) grid search for the most accurate thresholds.

    Samples are ``(sfs, label)`` pairs; ``sfs`` may also be a bare ``(H, E_low)``
    tuple. Ties on accuracy are broken by margin: for each feature, the
    signed clearance between its threshold and the nearest sample of either
    class on the wrong side (Faulkner samples should lie above, Hemingway
    below). The pair with the larger worse-feature clearance wins, then the
    larger better-feature clearance, then the lexicographically smallest
    ``(h, e_low)``. ``report.margin`` is the worse-feature clearance.
    """
    H, E, y = _sample_features(list(samples))
    if len(y) == 0:
        raise EmptyInput("no calibration samples")
    if y.all() or not y.any():
        raise DegenerateLabels("calibration needs both style classes")
    grid = threshold_grid(grid_resolution)

    hh, ee = np.meshgrid(grid, grid, indexing="ij")
    pred = (H[None, None, :] > hh[..., None]) & (E[None, None, :] > ee[..., None])
    accuracy = (pred == y[None, None, :]).mean(axis=-1)
    h_clear, e_clear = np.meshgrid(_clearance(grid, H, y), _clearance(grid, E, y), indexing="ij")
    margin = np.minimum(h_clear, e_clear)
    slack = np.maximum(h_clear, e_clear)

    tied = np.isclose(accuracy, accuracy.max(), rtol=0, atol=1e-12)
    for key in (margin, slack):
        tied &= np.isclose(key, key[tied].max(), rtol=0, atol=1e-12)
    i, j = np.argwhere(tied)[0]  # row-major order == lexicographic (h, e_low)

    chosen = pred[i, j]
    confusion = {
        "tp": int((chosen & y).sum()),
        "fp": int((chosen & ~y).sum()),
        "tn": int((~chosen & ~y).sum()),
        "fn": int((~chosen & y).sum()),
    }
    roc = {
        "global_entropy": roc_curve(H, y, grid, gate=E > 0.0),
        "low_frequency_energy": roc_curve(E, y, grid, gate=H > 0.0),
    }
    return CalibrationReport(
        best_thresholds=RoutingThresholds(float(grid[i]), float(grid[j])),
        accuracy=float((confusion["tp"] + confusion["tn"]) / len(y)),
        confusion=confusion,
        margin=float(margin[i, j]),
        clearance={"h": float(h_clear[i, j]), "e_low": float(e_clear[i, j])},
        roc_points=roc,
        auc={k: roc_auc(v) for k, v in roc.items()},
        grid_resolution=float(grid_resolution),
        n_samples=int(len(y)),
    )
