"""Trajectory catalogs: per-trajectory logical states, probabilities and
Bloch points, plus distribution summaries and JSON/CSV export."""

from __future__ import annotations

import csv
import io
import json
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from .amplitude import InjectionState, ZeroProbabilityTrajectory, bloch, normalize
from .bitkit import to_bits
from .coset import Trajectory
from .lattice import CodeLayout
from .projector import project, trajectory_probability

MAX_TRIVIAL_X_DISTANCE = 4
MAX_ALL_DISTANCE = 3
MAX_SAMPLE_DISTANCE = 6

CSV_FIELDS = (
    "trajectory",
    "prob",
    "alphaL_re",
    "alphaL_im",
    "betaL_re",
    "betaL_im",
    "bloch_x",
    "bloch_y",
    "bloch_z",
)


@dataclass(frozen=True)
class CatalogEntry:
    trajectory: str
    A: tuple[int, ...]
    B: tuple[int, ...]
    probability: float
    alpha_l: complex | None
    beta_l: complex | None
    bloch: tuple[float, float, float] | None
    frame: tuple[str, str]
    sector_probability: float | None = None

    def to_json(self) -> dict[str, Any]:
        def pair(z):
            return None if z is None else [z.real, z.imag]

        out = {
            "trajectory": self.trajectory,
            "A_coeffs": list(self.A),
            "B_coeffs": list(self.B),
            "probability": self.probability,
            "alpha_L": pair(self.alpha_l),
            "beta_L": pair(self.beta_l),
            "bloch": None if self.bloch is None else list(self.bloch),
            "frame": {"rep0": self.frame[0], "rep1": self.frame[1]},
        }
        if self.sector_probability is not None:
            out["sector_probability"] = self.sector_probability
        return out


def make_entry(layout: CodeLayout, trajectory: Trajectory, chi: InjectionState, engine: str = "solver") -> CatalogEntry:
    result = project(layout, trajectory, engine)
    prob = trajectory_probability(result, chi)
    try:
        (a, b), _ = normalize(result.logical, chi)
        point = bloch(a, b)
    except ZeroProbabilityTrajectory:
        a = b = None
        point = None
    n = layout.num_data
    return CatalogEntry(
        trajectory=str(trajectory),
        A=tuple(result.A.coeffs),
        B=tuple(result.B.coeffs),
        probability=prob,
        alpha_l=a,
        beta_l=b,
        bloch=point,
        frame=(to_bits(result.frame[0], n), to_bits(result.frame[1], n)),
    )


def _entries_task(args) -> list[CatalogEntry]:
    layout, trajectories, chi = args
    return [make_entry(layout, t, chi) for t in trajectories]


def build_entries(
    layout: CodeLayout, trajectories: Sequence[Trajectory], chi: InjectionState, workers: int = 1
) -> list[CatalogEntry]:
    """Entries for ``trajectories``, ordered by trajectory string."""
    if workers <= 1 or len(trajectories) < 2:
        entries = _entries_task((layout, trajectories, chi))
    else:
        chunks = [trajectories[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            entries = [e for part in pool.map(_entries_task, [(layout, c, chi) for c in chunks]) for e in part]
    return sorted(entries, key=lambda e: e.trajectory)


def _z_sector(layout: CodeLayout, z_words: Iterable[int]) -> list[Trajectory]:
    k = layout.num_stabs
    return [Trajectory.from_words(0, z, k) for z in z_words]


def enumerate_trivial_x(layout: CodeLayout, chi: InjectionState, workers: int = 1) -> list[CatalogEntry]:
    if layout.distance > MAX_TRIVIAL_X_DISTANCE:
        raise ValueError(
            f"full trivial-X enumeration supports d <= {MAX_TRIVIAL_X_DISTANCE}; use sample_trajectories"
        )
    entries = build_entries(layout, _z_sector(layout, range(1 << layout.num_stabs)), chi, workers)
    total = math.fsum(e.probability for e in entries)
    return [
        _with_sector(e, e.probability / total if total > 0 else 0.0) for e in entries
    ]


def _with_sector(entry: CatalogEntry, p: float) -> CatalogEntry:
    return CatalogEntry(**{**entry.__dict__, "sector_probability": p})


def enumerate_all(layout: CodeLayout, chi: InjectionState, workers: int = 1) -> list[CatalogEntry]:
    if layout.distance > MAX_ALL_DISTANCE:
        raise ValueError(f"full enumeration supports d <= {MAX_ALL_DISTANCE}")
    k = layout.num_stabs
    trajectories = [Trajectory.from_words(x, z, k) for x in range(1 << k) for z in range(1 << k)]
    return build_entries(layout, trajectories, chi, workers)


def sample_trajectories(
    layout: CodeLayout, chi: InjectionState, count: int, seed: int, workers: int = 1
) -> list[CatalogEntry]:
    """Distinct trivial-X trajectories drawn uniformly (not by their physical
    probability); each entry carries its true probability for reweighting."""
    if layout.distance > MAX_SAMPLE_DISTANCE:
        raise ValueError(f"sampling supports d <= {MAX_SAMPLE_DISTANCE}")
    space = 1 << layout.num_stabs
    z_words = random.Random(seed).sample(range(space), min(count, space))
    return build_entries(layout, _z_sector(layout, z_words), chi, workers)


def distribution_stats(entries: Sequence[CatalogEntry], tol: float = 1e-9) -> dict[str, Any]:
    if not entries:
        raise ValueError("no entries")
    points: list[np.ndarray] = []
    for e in entries:
        if e.bloch is None:
            continue
        p = np.array(e.bloch)
        if not any(np.max(np.abs(p - q)) <= tol for q in points):
            points.append(p)
    weighted = [(e.probability, np.array(e.bloch)) for e in entries if e.bloch is not None]
    total = math.fsum(w for w, _ in weighted)
    mean = sum((w * p for w, p in weighted), np.zeros(3)) / total if total > 0 else np.zeros(3)

    min_sep = max_sep = None
    if len(points) > 1:
        pts = np.array(points)
        cos = np.clip(pts @ pts.T, -1.0, 1.0)
        iu = np.triu_indices(len(pts), 1)
        angles = np.arccos(cos[iu])
        min_sep, max_sep = float(angles.min()), float(angles.max())
    return {
        "entries": len(entries),
        "distinct_states": len(points),
        "min_separation": min_sep,
        "max_separation": max_sep,
        "mean_bloch": [float(v) for v in mean],
        "total_probability": total,
    }


def chi_json(chi: InjectionState, theta: float | None = None, phi: float | None = None) -> dict[str, Any]:
    if theta is not None and phi is not None:
        return {"theta": theta, "phi": phi}
    return {"alpha": [chi.alpha.real, chi.alpha.imag], "beta": [chi.beta.real, chi.beta.imag]}


def to_json(layout: CodeLayout, chi_spec: dict[str, Any], entries: Sequence[CatalogEntry]) -> str:
    doc = {"layout": layout.to_json(), "chi": chi_spec, "entries": [e.to_json() for e in entries]}
    return json.dumps(doc, indent=1) + "\n"


def to_csv(entries: Sequence[CatalogEntry]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    nan = float("nan")
    for e in entries:
        a = e.alpha_l if e.alpha_l is not None else complex(nan, nan)
        b = e.beta_l if e.beta_l is not None else complex(nan, nan)
        point = e.bloch if e.bloch is not None else (nan, nan, nan)
        writer.writerow(
            [e.trajectory, repr(e.probability), repr(a.real), repr(a.imag), repr(b.real), repr(b.imag)]
            + [repr(v) for v in point]
        )
    return buf.getvalue()
