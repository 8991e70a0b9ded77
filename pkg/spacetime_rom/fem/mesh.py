#!/usr/bin/env python3
"""
Structured triangulations of the benchmark reference domains.

Every rectangular cell is split into the triangles (v00, v10, v11) and
(v00, v11, v01), so node and element numbering are fully deterministic.
"""

import logging
from pathlib import Path
from typing import List, Tuple, Union

import numpy as np

from ..exceptions import MeshError
from ..models.case import CaseId
from ..models.mesh import Mesh

logger = logging.getLogger(__name__)

GRAETZ_LENGTH = 2.0
GRAETZ_CHANNEL_END = 1.0
GRAETZ_CORE_BOUNDS = (0.2, 0.8)

GRAETZ_TAGS = ("gamma_d", "gamma_c", "gamma_n")
STOKES_TAGS = ("gamma_in", "gamma_d", "gamma_n")


def build_structured_mesh(case_id: Union[CaseId, str], nx: int, ny: int) -> Mesh:
    """
    Build the reference mesh of a benchmark case.

    Graetz: [0,2]×[0,1] with Ω₁ = [0,1]×[0,1], Ω₂ = [1,2]×[0.2,0.8] and
    Ω₃ = [1,2]×([0,0.2]∪[0.8,1]); nx counts cells over the full length 2.
    Stokes cavity: the unit square, one subdomain.

    Args:
        case_id: Benchmark identifier
        nx: Cells in x
        ny: Cells in y

    Returns:
        The reference mesh

    Raises:
        MeshError: If the case is unknown, nx or ny < 2, or a subdomain
            interface does not fall on a grid line
    """
    case = CaseId.parse(case_id)
    if nx < 2 or ny < 2:
        raise MeshError(f"Structured mesh needs nx, ny >= 2, got nx={nx}, ny={ny}")

    if case is CaseId.GRAETZ:
        _check_interface("x", GRAETZ_CHANNEL_END, GRAETZ_LENGTH, nx)
        for y in GRAETZ_CORE_BOUNDS:
            _check_interface("y", y, 1.0, ny)
        width = GRAETZ_LENGTH
    else:
        width = 1.0

    xs = np.linspace(0.0, width, nx + 1)
    ys = np.linspace(0.0, 1.0, ny + 1)
    gx, gy = np.meshgrid(xs, ys)
    vertices = np.column_stack([gx.ravel(), gy.ravel()])

    def vid(i: int, j: int) -> int:
        return j * (nx + 1) + i

    triangles = []
    for j in range(ny):
        for i in range(nx):
            v00, v10, v01, v11 = vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)
            triangles.append((v00, v10, v11))
            triangles.append((v00, v11, v01))
    triangles = np.asarray(triangles, dtype=np.int64)

    edges: List[Tuple[int, int]] = []
    edges += [(vid(i, 0), vid(i + 1, 0)) for i in range(nx)]
    edges += [(vid(nx, j), vid(nx, j + 1)) for j in range(ny)]
    edges += [(vid(i + 1, ny), vid(i, ny)) for i in reversed(range(nx))]
    edges += [(vid(0, j + 1), vid(0, j)) for j in reversed(range(ny))]
    boundary_edges = np.asarray(edges, dtype=np.int64)
    midpoints = 0.5 * (vertices[boundary_edges[:, 0]] + vertices[boundary_edges[:, 1]])

    centroids = vertices[triangles].mean(axis=1)
    if case is CaseId.GRAETZ:
        tags = tuple(_graetz_tag(x, y) for x, y in midpoints)
        subdomain_ids = np.where(
            centroids[:, 0] < GRAETZ_CHANNEL_END,
            1,
            np.where(
                (centroids[:, 1] > GRAETZ_CORE_BOUNDS[0]) & (centroids[:, 1] < GRAETZ_CORE_BOUNDS[1]),
                2,
                3,
            ),
        )
        names = {1: "omega_1", 2: "omega_2", 3: "omega_3"}
        declared = GRAETZ_TAGS
    else:
        tags = tuple("gamma_in" if y > 1.0 - 1e-12 else "gamma_d" for _, y in midpoints)
        subdomain_ids = np.ones(triangles.shape[0], dtype=np.int64)
        names = {1: "omega"}
        declared = STOKES_TAGS

    mesh = Mesh(
        case_id=case,
        vertices=vertices,
        triangles=triangles,
        boundary_edges=boundary_edges,
        boundary_tags=tags,
        subdomain_ids=np.asarray(subdomain_ids, dtype=np.int64),
        subdomain_names=names,
        declared_tags=declared,
        shape=(nx, ny),
    )
    logger.debug(
        f"Built {case.value} mesh: {mesh.n_vertices} vertices, {mesh.n_triangles} triangles, "
        f"{len(tags)} boundary edges"
    )
    return mesh


def _check_interface(axis: str, coordinate: float, length: float, cells: int) -> None:
    position = coordinate / length * cells
    if abs(position - round(position)) > 1e-9:
        raise MeshError(
            f"Subdomain interface {axis}={coordinate} is not a grid line for "
            f"n{axis}={cells} (cell size {float(length / cells)!r})"
        )


def _graetz_tag(x: float, y: float) -> str:
    if x < 1e-12:
        return "gamma_d"
    if x > GRAETZ_LENGTH - 1e-12:
        return "gamma_n"
    return "gamma_d" if x < GRAETZ_CHANNEL_END else "gamma_c"


def export_mesh(mesh: Mesh, path: Union[str, Path]) -> Path:
    """
    Write a plain-text node/element/tag file, one record per line.

    Records:
        V <index> <x> <y>
        T <index> <v0> <v1> <v2> <subdomain tag>
        E <v0> <v1> <boundary tag>
    """
    path = Path(path)
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"# {mesh.case_id.value} mesh nx={mesh.shape[0]} ny={mesh.shape[1]}\n")
        for i, (x, y) in enumerate(mesh.vertices):
            f.write(f"V {i} {float(x)!r} {float(y)!r}\n")
        for i, (a, b, c) in enumerate(mesh.triangles):
            f.write(f"T {i} {a} {b} {c} {mesh.subdomain_names[int(mesh.subdomain_ids[i])]}\n")
        for (a, b), tag in zip(mesh.boundary_edges, mesh.boundary_tags):
            f.write(f"E {a} {b} {tag}\n")
    logger.info(f"Wrote mesh to {path}")
    return path
