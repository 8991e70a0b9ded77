#!/usr/bin/env python3
"""
Artifact storage.

Matrices are stored in a small binary format: a 16-byte little-endian
header (magic b"STRM", rows, cols, scalar width as uint32) followed by the
column-major float64 payload. Every file written for a run is recorded in
the run manifest with its sha256 checksum, and checksums are verified when
a run is loaded.
"""

import hashlib
import json
import logging
import struct
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np

from ..constants import (
    MANIFEST_FILENAME,
    MATRIX_HEADER_BYTES,
    MATRIX_MAGIC,
    MATRIX_SCALAR_WIDTH,
    REDUCED_MODEL_FILENAME,
)
from ..exceptions import ArtifactError
from ..models.basis import ReducedBasis
from ..models.case import CaseId
from ..models.fields import TimeGrid, VariableRole
from ..models.kkt import StepLayout
from ..models.manifest import ArtifactRecord, RunManifest
from ..models.parameter import ParameterBox
from ..models.rom import PARABOLIC, STOKES, AggregatedSpace, BasisSet, ReducedFamily, ReducedModel

logger = logging.getLogger(__name__)

_HEADER = struct.Struct("<4sIII")

PathLike = Union[str, Path]


def basis_kind(case_id) -> str:
    return PARABOLIC if CaseId.parse(case_id) is CaseId.GRAETZ else STOKES


def write_matrix(path: PathLike, array: np.ndarray) -> List[int]:
    """
    Write a 1-D or 2-D float array; vectors are stored as one column.

    Returns:
        Stored [rows, cols]
    """
    array = np.asarray(array, dtype=float)
    if array.ndim == 1:
        array = array[:, None]
    if array.ndim != 2:
        raise ArtifactError(f"Only vectors and matrices can be stored, got shape {array.shape}")
    rows, cols = array.shape
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as f:
        f.write(_HEADER.pack(MATRIX_MAGIC, rows, cols, MATRIX_SCALAR_WIDTH))
        f.write(np.asarray(array, dtype="<f8").tobytes(order="F"))
    return [rows, cols]


def read_matrix(path: PathLike) -> np.ndarray:
    """
    Read a matrix written by write_matrix.

    Raises:
        ArtifactError: If the file is missing, truncated or not in the format
    """
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as e:
        raise ArtifactError(f"Cannot read matrix file {path}: {e}") from e
    if len(data) < MATRIX_HEADER_BYTES:
        raise ArtifactError(f"{path} is too short for a matrix header")
    magic, rows, cols, width = _HEADER.unpack(data[:MATRIX_HEADER_BYTES])
    if magic != MATRIX_MAGIC:
        raise ArtifactError(f"{path} has magic {magic!r}, expected {MATRIX_MAGIC!r}")
    if width != MATRIX_SCALAR_WIDTH:
        raise ArtifactError(f"{path} has scalar width {width}, expected {MATRIX_SCALAR_WIDTH}")
    expected = MATRIX_HEADER_BYTES + rows * cols * width
    if len(data) != expected:
        raise ArtifactError(f"{path} holds {len(data)} bytes, header announces {expected}")
    payload = np.frombuffer(data, dtype="<f8", offset=MATRIX_HEADER_BYTES, count=rows * cols)
    return payload.reshape((rows, cols), order="F").astype(float)


def file_sha256(path: PathLike) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


class ArtifactWriter:
    """
    Writes the files of one run and keeps their manifest records.

    Only the main thread writes; workers hand their results back first.
    """

    def __init__(self, root: PathLike):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.records: List[ArtifactRecord] = []

    def matrix(self, relative: str, array: np.ndarray, kind: str) -> ArtifactRecord:
        shape = write_matrix(self.root / relative, array)
        record = ArtifactRecord(relative, file_sha256(self.root / relative), kind, shape)
        self.records.append(record)
        return record

    def text(self, relative: str, content: str, kind: str) -> ArtifactRecord:
        path = self.root / relative
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content, encoding="utf-8")
        record = ArtifactRecord(relative, file_sha256(path), kind)
        self.records.append(record)
        return record


def write_manifest(root: PathLike, manifest: RunManifest) -> Path:
    path = Path(root) / MANIFEST_FILENAME
    path.write_text(json.dumps(manifest.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info(f"Wrote manifest with {len(manifest.artifacts)} artifacts to {path}")
    return path


def load_manifest(root: PathLike, verify: bool = True) -> RunManifest:
    """
    Load a run manifest and check every recorded file.

    Raises:
        ArtifactError: If the manifest is missing or malformed, or a file
            is missing or fails its checksum
    """
    root = Path(root)
    path = root / MANIFEST_FILENAME
    try:
        manifest = RunManifest.from_dict(json.loads(path.read_text(encoding="utf-8")))
    except FileNotFoundError as e:
        raise ArtifactError(f"No manifest at {path}") from e
    except (ValueError, KeyError, TypeError) as e:
        raise ArtifactError(f"Malformed manifest {path}: {e}") from e
    if verify:
        for record in manifest.artifacts:
            target = root / record.path
            if not target.is_file():
                raise ArtifactError(f"Artifact {record.path} listed in the manifest is missing")
            actual = file_sha256(target)
            if actual != record.sha256:
                raise ArtifactError(
                    f"Checksum mismatch for {record.path}: manifest {record.sha256[:12]}…, file {actual[:12]}…"
                )
        logger.debug(f"Verified {len(manifest.artifacts)} artifact checksums in {root}")
    return manifest


def save_basis_set(writer: ArtifactWriter, basis_set: BasisSet) -> Dict[str, Dict[str, object]]:
    """Store every basis and its spectrum; returns the manifest metadata."""
    meta = {}
    for name, basis in basis_set.bases.items():
        matrix = writer.matrix(f"bases/{name}.strm", basis.matrix, "basis")
        spectrum = writer.matrix(f"bases/{name}_spectrum.strm", basis.spectrum, "spectrum")
        meta[name] = {
            "role": basis.role.value,
            "size": basis.size,
            "inner_product": basis.inner_product,
            "matrix": matrix.path,
            "spectrum": spectrum.path,
        }
    return meta


def load_basis_set(root: PathLike, manifest: RunManifest) -> BasisSet:
    root = Path(root)
    bases = {}
    for name, meta in manifest.bases.items():
        matrix = read_matrix(root / meta["matrix"])
        spectrum = read_matrix(root / meta["spectrum"])[:, 0]
        if matrix.shape[1] != int(meta["size"]):
            raise ArtifactError(f"Basis {name} has {matrix.shape[1]} columns, manifest says {meta['size']}")
        bases[name] = ReducedBasis(
            VariableRole(meta["role"]),
            matrix,
            spectrum[: matrix.shape[1]].copy(),
            spectrum,
            str(meta.get("inner_product", "")),
        )
    return BasisSet(basis_kind(manifest.case_id), bases)


def save_reduced_model(writer: ArtifactWriter, model: ReducedModel) -> ArtifactRecord:
    """Store the reduced model as reduced_model.json plus one matrix per projected term."""
    space = model.space
    blocks = {name: writer.matrix(f"space/{name}.strm", matrix, "space").path for name, matrix in space.blocks.items()}
    control = writer.matrix("space/control.strm", space.control, "space").path
    families = {}
    for name, family in model.families.items():
        if family.stack.ndim == 1:
            files = [writer.matrix(f"reduced/{name}.strm", family.stack, "reduced_term").path]
        else:
            files = [
                writer.matrix(f"reduced/{name}_{q:02d}.strm", term, "reduced_term").path
                for q, term in enumerate(family.stack)
            ]
        families[name] = {"descriptors": list(family.descriptors), "files": files}
    document = {
        "case_id": model.case_id.value,
        "grid": {"final_time": model.grid.final_time, "n_steps": model.grid.n_steps},
        "layout": [[name, size] for name, size in model.layout.blocks],
        "control_size": model.control_size,
        "space": {
            "kind": space.kind,
            "n": space.n,
            "blocks": blocks,
            "control": control,
            "deficiency": dict(space.deficiency),
        },
        "box": {
            "names": list(model.box.names),
            "lower": list(model.box.lower),
            "upper": list(model.box.upper),
            "reference": list(model.box.reference),
        },
        "families": families,
    }
    return writer.text(REDUCED_MODEL_FILENAME, json.dumps(document, indent=2, sort_keys=True) + "\n", "reduced_model")


def load_reduced_model(root: PathLike) -> ReducedModel:
    """
    Rebuild a ReducedModel from reduced_model.json and its matrices.

    Raises:
        ArtifactError: If files are missing or inconsistent
    """
    root = Path(root)
    try:
        document = json.loads((root / REDUCED_MODEL_FILENAME).read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ArtifactError(f"No {REDUCED_MODEL_FILENAME} in {root}") from e
    except ValueError as e:
        raise ArtifactError(f"Malformed {REDUCED_MODEL_FILENAME}: {e}") from e

    try:
        space_doc = document["space"]
        space = AggregatedSpace(
            kind=space_doc["kind"],
            n=int(space_doc["n"]),
            blocks={name: read_matrix(root / path) for name, path in space_doc["blocks"].items()},
            control=read_matrix(root / space_doc["control"]),
            deficiency={k: int(v) for k, v in space_doc.get("deficiency", {}).items()},
        )
        families = {}
        for name, family in document["families"].items():
            matrices = [read_matrix(root / path) for path in family["files"]]
            if name == "c":
                stack = matrices[0][:, 0]
            elif name in ("F", "G"):
                stack = np.stack([m[:, 0] for m in matrices])
            else:
                stack = np.stack(matrices)
            families[name] = ReducedFamily(tuple(family["descriptors"]), stack)
        box_doc = document["box"]
        model = ReducedModel(
            case_id=CaseId.parse(document["case_id"]),
            grid=TimeGrid(float(document["grid"]["final_time"]), int(document["grid"]["n_steps"])),
            layout=StepLayout(tuple((str(name), int(size)) for name, size in document["layout"])),
            control_size=int(document["control_size"]),
            space=space,
            box=ParameterBox(
                tuple(box_doc["names"]), tuple(box_doc["lower"]), tuple(box_doc["upper"]), tuple(box_doc["reference"])
            ),
            families=families,
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ArtifactError(f"Inconsistent {REDUCED_MODEL_FILENAME}: {e}") from e
    for name, family in model.families.items():
        if family.stack.shape[0] != family.q:
            raise ArtifactError(f"Reduced family {name} has {family.stack.shape[0]} terms for {family.q} descriptors")
    return model


def spill_snapshots(directory: PathLike, run_name: str, matrices: Dict[str, np.ndarray]) -> Optional[Path]:
    """Write snapshot matrices to the scratch directory; returns the folder used."""
    folder = Path(directory) / f"spacetime-rom-{run_name}"
    try:
        for name, matrix in matrices.items():
            write_matrix(folder / f"snapshots_{name}.strm", matrix)
    except OSError as e:
        logger.warning(f"Could not spill snapshots to {folder}: {e}")
        return None
    logger.debug(f"Spilled {len(matrices)} snapshot matrices to {folder}")
    return folder
