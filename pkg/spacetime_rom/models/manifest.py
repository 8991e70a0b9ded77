#!/usr/bin/env python3
"""
Run Manifest Models

This module contains the manifest written next to every offline run. It
ties the stored matrices to the case, the seed and the time grid, and
records a checksum per file.
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Mapping, Optional


@dataclass(frozen=True)
class ArtifactRecord:
    """
    One stored file.

    Attributes:
        path: Path relative to the run directory
        sha256: Hex digest of the file contents
        kind: "basis", "spectrum", "space", "reduced_term", "lift", "case" or "snapshots"
        shape: Matrix shape for binary matrices
    """

    path: str
    sha256: str
    kind: str
    shape: Optional[List[int]] = None


@dataclass
class RunManifest:
    """
    Description of an offline run.

    Attributes:
        case_id: Benchmark identifier
        config_hash: sha256 of the canonical case config JSON
        seed: Sampling seed actually used
        grid: {"final_time", "n_steps", "dt"}
        dimensions: Full-order and reduced sizes
        bases: Per-basis metadata (size, inner product, eigenvalue count)
        artifacts: Stored files with checksums
        timings: Stage durations in seconds (excluded from determinism checks)
        tool_version: Package version that wrote the run
    """

    case_id: str
    config_hash: str
    seed: int
    grid: Dict[str, float]
    dimensions: Dict[str, int] = field(default_factory=dict)
    bases: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    artifacts: List[ArtifactRecord] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)
    tool_version: str = ""

    def artifact(self, path: str) -> ArtifactRecord:
        for record in self.artifacts:
            if record.path == path:
                return record
        raise KeyError(path)

    def to_dict(self, include_timings: bool = True) -> Dict[str, Any]:
        data = asdict(self)
        if not include_timings:
            data.pop("timings")
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "RunManifest":
        return cls(
            case_id=data["case_id"],
            config_hash=data["config_hash"],
            seed=int(data["seed"]),
            grid=dict(data["grid"]),
            dimensions=dict(data.get("dimensions", {})),
            bases={name: dict(meta) for name, meta in data.get("bases", {}).items()},
            artifacts=[ArtifactRecord(**record) for record in data.get("artifacts", [])],
            timings=dict(data.get("timings", {})),
            tool_version=data.get("tool_version", ""),
        )
