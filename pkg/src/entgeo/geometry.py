"""2-D affine slices of the state-space body through the maximally mixed state.

A plane is spanned by two traceless, HS-orthonormal Hermitian directions built
from a pair of anchor states by Gram-Schmidt. Scanning a plane evaluates, per
grid cell, the minimal eigenvalue of the matrix and of its partial transpose,
from which the state body, the PPT body, and negativity level sets follow.
Contours are extracted by marching squares with linear edge interpolation.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .linalg import hs_inner, hs_norm
from .states import DensityMatrix

STATE_EIG_TOL = 1e-10


@dataclass(frozen=True)
class Plane:
    """An affine 2-plane through I/n with an HS-orthonormal traceless frame.

    The anchors satisfy rho_i = I/n + a*A1 + b*A2 for some coordinates (a, b),
    so HS distances in the plane equal Euclidean distances in (a, b).
    """

    n: int
    anchor1: DensityMatrix
    anchor2: DensityMatrix
    a1: np.ndarray
    a2: np.ndarray

    @property
    def dims(self) -> tuple[int, int]:
        return self.anchor1.dims

    def coordinates_of(self, m: np.ndarray) -> tuple[float, float]:
        """(a, b) frame coordinates of a matrix (its in-plane component)."""
        centered = m - np.eye(self.n) / self.n
        return (
            float(hs_inner(self.a1, centered).real),
            float(hs_inner(self.a2, centered).real),
        )


def build_plane(rho1: DensityMatrix, rho2: DensityMatrix) -> Plane:
    """Gram-Schmidt frame for the plane spanned by I/n, rho1, rho2."""
    if rho1.dim != rho2.dim:
        raise ValueError("anchors must share the total dimension")
    n = rho1.dim
    center = np.eye(n) / n
    v1 = rho1.matrix - center
    norm1 = hs_norm(v1)
    if norm1 < 1e-12:
        raise ValueError("first anchor coincides with the maximally mixed state")
    a1 = v1 / norm1
    v2 = rho2.matrix - center
    v2 = v2 - hs_inner(a1, v2) * a1
    norm2 = hs_norm(v2)
    if norm2 < 1e-12:
        raise ValueError("anchors are linearly dependent around I/n (degenerate plane)")
    a2 = v2 / norm2
    return Plane(n=n, anchor1=rho1, anchor2=rho2, a1=a1, a2=a2)


def state_at(plane: Plane, a: float, b: float) -> np.ndarray:
    """The plane point I/n + a*A1 + b*A2 (Hermitian, trace 1; PSD not guaranteed)."""
    return np.eye(plane.n) / plane.n + a * plane.a1 + b * plane.a2


@dataclass(frozen=True)
class ScanGrid:
    """Per-cell fields over a rectangular (a, b) grid; arrays indexed [i_a, i_b]."""

    plane: Plane
    a_values: np.ndarray
    b_values: np.ndarray
    min_eig: np.ndarray
    min_eig_pt: np.ndarray
    negativity: np.ndarray
    is_state: np.ndarray = field(init=False)
    is_ppt: np.ndarray = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "is_state", self.min_eig >= -STATE_EIG_TOL)
        object.__setattr__(self, "is_ppt", self.is_state & (self.min_eig_pt >= -STATE_EIG_TOL))

    @property
    def cell_size(self) -> float:
        da = float(self.a_values[1] - self.a_values[0])
        db = float(self.b_values[1] - self.b_values[0])
        return max(da, db)


def _batched_pt(ms: np.ndarray, dims: tuple[int, int]) -> np.ndarray:
    da, db = dims
    k = ms.shape[0]
    return ms.reshape(k, da, db, da, db).transpose(0, 1, 4, 3, 2).reshape(k, da * db, da * db)


def _scan_block(plane: Plane, pts: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    n = plane.n
    ms = (
        np.eye(n) / n
        + pts[:, 0, None, None] * plane.a1
        + pts[:, 1, None, None] * plane.a2
    )
    eigs = np.linalg.eigvalsh(ms)
    eigs_pt = np.linalg.eigvalsh(_batched_pt(ms, plane.dims))
    min_eig = eigs[:, 0]
    min_eig_pt = eigs_pt[:, 0]
    if n == 4:
        neg = 2.0 * np.maximum(0.0, -min_eig_pt)
    else:
        neg = -np.minimum(eigs_pt, 0.0).sum(axis=1)
    return min_eig, min_eig_pt, neg


def scan_plane(plane: Plane, a_range: tuple[float, float, int], b_range: tuple[float, float, int]) -> ScanGrid:
    """Evaluate the spectral fields over the grid; deterministic, cell-parallel.

    ENTGEO_THREADS caps the number of worker threads (default 1).
    """
    a_min, a_max, na = a_range
    b_min, b_max, nb = b_range
    if na < 2 or nb < 2:
        raise ValueError("need at least 2 steps per axis")
    a_values = np.linspace(a_min, a_max, na)
    b_values = np.linspace(b_min, b_max, nb)
    aa, bb = np.meshgrid(a_values, b_values, indexing="ij")
    pts = np.stack([aa.ravel(), bb.ravel()], axis=1)

    threads = max(1, int(os.environ.get("ENTGEO_THREADS", "1")))
    if threads == 1 or pts.shape[0] < 4096:
        min_eig, min_eig_pt, neg = _scan_block(plane, pts)
    else:
        chunks = np.array_split(pts, threads * 4)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda c: _scan_block(plane, c), chunks))
        min_eig = np.concatenate([p[0] for p in parts])
        min_eig_pt = np.concatenate([p[1] for p in parts])
        neg = np.concatenate([p[2] for p in parts])

    shape = (na, nb)
    return ScanGrid(
        plane=plane,
        a_values=a_values,
        b_values=b_values,
        min_eig=min_eig.reshape(shape),
        min_eig_pt=min_eig_pt.reshape(shape),
        negativity=neg.reshape(shape),
    )


# ---------------------------------------------------------------------------
# Marching squares


def _marching_squares(a_values, b_values, f):
    """Zero-level polylines of a scalar field sampled on a rectangular grid.

    Corner signs pick one of 16 cases; crossings are placed by linear
    interpolation along cell edges; the two saddle cases are disambiguated by
    the cell-center average. Segments are chained into ordered polylines.
    """
    na, nb = f.shape
    segments = []

    def same_node(p, q, decimals=9):
        return round(p[0], decimals) == round(q[0], decimals) and round(
            p[1], decimals
        ) == round(q[1], decimals)

    def interp(p0, p1, f0, f1):
        t = f0 / (f0 - f1)
        return (p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]))

    for i in range(na - 1):
        for j in range(nb - 1):
            corners = (
                (a_values[i], b_values[j], f[i, j]),
                (a_values[i + 1], b_values[j], f[i + 1, j]),
                (a_values[i + 1], b_values[j + 1], f[i + 1, j + 1]),
                (a_values[i], b_values[j + 1], f[i, j + 1]),
            )
            vals = [c[2] for c in corners]
            case = sum(1 << k for k, v in enumerate(vals) if v >= 0)
            if case in (0, 15):
                continue
            # edge k joins corner k and corner (k+1) % 4
            crossings = {}
            for k in range(4):
                f0, f1 = vals[k], vals[(k + 1) % 4]
                if (f0 >= 0) != (f1 >= 0):
                    p0 = corners[k][:2]
                    p1 = corners[(k + 1) % 4][:2]
                    crossings[k] = interp(p0, p1, f0, f1)
            edges = sorted(crossings)
            if len(edges) == 2:
                p, q = crossings[edges[0]], crossings[edges[1]]
                if not same_node(p, q):  # crossings on a shared grid node degenerate
                    segments.append((p, q))
            elif len(edges) == 4:
                center_pos = sum(vals) / 4 >= 0
                # pair crossings so the positive region stays connected iff the
                # center sample is positive
                if (case == 5) == center_pos:
                    pairs = [(0, 1), (2, 3)]
                else:
                    pairs = [(0, 3), (1, 2)]
                for e0, e1 in pairs:
                    if not same_node(crossings[e0], crossings[e1]):
                        segments.append((crossings[e0], crossings[e1]))
    return _chain_segments(segments)


def _chain_segments(segments, decimals=9):
    """Join shared-endpoint segments into polylines (closed loops or open arcs)."""
    if not segments:
        return []
    key = lambda p: (round(p[0], decimals), round(p[1], decimals))
    adjacency: dict[tuple, list] = {}
    for idx, (p, q) in enumerate(segments):
        adjacency.setdefault(key(p), []).append((idx, q))
        adjacency.setdefault(key(q), []).append((idx, p))

    used = [False] * len(segments)
    polylines = []

    def walk(start_pt):
        line = [start_pt]
        cur = start_pt
        while True:
            nxt = None
            for idx, other in adjacency.get(key(cur), ()):
                if not used[idx]:
                    used[idx] = True
                    nxt = other
                    break
            if nxt is None:
                return line
            line.append(nxt)
            cur = nxt

    # open chains first: start from endpoints of odd degree
    endpoints = [p for p, links in adjacency.items() if len(links) % 2 == 1]
    for ep in endpoints:
        if any(not used[idx] for idx, _ in adjacency[ep]):
            polylines.append(walk(ep))
    # remaining are closed loops
    for idx, (p, q) in enumerate(segments):
        if not used[idx]:
            used[idx] = True
            line = [p, q]
            rest = walk(q)
            line.extend(rest[1:])
            polylines.append(line)
    return [np.array(line) for line in polylines if len(line) >= 2]


def boundary_contours(grid: ScanGrid, kind: str, level: float = 0.0):
    """Extract iso-polylines from a scan.

    kind: 'state_boundary' (min_eig = 0), 'ppt_boundary' (min_eig_pt = 0
    restricted to the state body), or 'negativity' at the given level.
    Returns a list of (k, 2) arrays of (a, b) points; empty list if no contour.
    """
    if kind == "state_boundary":
        f = grid.min_eig
    elif kind == "ppt_boundary":
        f = grid.min_eig_pt
    elif kind == "negativity":
        f = grid.negativity - level
    else:
        raise ValueError(f"unknown contour kind {kind!r}")
    lines = _marching_squares(grid.a_values, grid.b_values, np.asarray(f, dtype=float))
    if kind == "ppt_boundary":
        lines = _restrict_to_state_body(grid, lines)
    return lines


def _bilinear(grid: ScanGrid, f: np.ndarray, a: float, b: float) -> float:
    ia = np.clip(np.searchsorted(grid.a_values, a) - 1, 0, len(grid.a_values) - 2)
    ib = np.clip(np.searchsorted(grid.b_values, b) - 1, 0, len(grid.b_values) - 2)
    ta = (a - grid.a_values[ia]) / (grid.a_values[ia + 1] - grid.a_values[ia])
    tb = (b - grid.b_values[ib]) / (grid.b_values[ib + 1] - grid.b_values[ib])
    return float(
        f[ia, ib] * (1 - ta) * (1 - tb)
        + f[ia + 1, ib] * ta * (1 - tb)
        + f[ia, ib + 1] * (1 - ta) * tb
        + f[ia + 1, ib + 1] * ta * tb
    )


def _restrict_to_state_body(grid: ScanGrid, lines, slack: float = 1e-6):
    """Keep only polyline points inside the state body, splitting where cut."""
    out = []
    for line in lines:
        run = []
        for a, b in line:
            if _bilinear(grid, grid.min_eig, a, b) >= -slack:
                run.append((a, b))
            else:
                if len(run) >= 2:
                    out.append(np.array(run))
                run = []
        if len(run) >= 2:
            out.append(np.array(run))
    return out


def points_in_state_body(grid: ScanGrid, points, slack: float = 1e-6) -> np.ndarray:
    """Subset of (a, b) points whose interpolated min eigenvalue is nonnegative."""
    kept = [p for p in points if _bilinear(grid, grid.min_eig, p[0], p[1]) >= -slack]
    return np.array(kept) if kept else np.empty((0, 2))


def radial_similarity_residual(grid: ScanGrid, level: float) -> float:
    """Worst radial misfit between a negativity contour and the scaled PPT boundary.

    Along any ray from I/n the PT spectrum is affine, so the negativity-N level
    set sits at radius r0(theta) * (1 + n*N/2) where r0 is the PPT boundary
    radius. Returns max |r - predicted| over in-body contour points (0.0 if
    either contour is empty).
    """
    boundary = boundary_contours(grid, "ppt_boundary")
    contour = boundary_contours(grid, "negativity", level)
    if not boundary or not contour:
        return 0.0
    pts = points_in_state_body(grid, np.vstack(contour))
    if len(pts) == 0:
        return 0.0
    bpts = np.vstack(boundary)
    bth = np.arctan2(bpts[:, 1], bpts[:, 0])
    br = np.hypot(bpts[:, 0], bpts[:, 1])
    order = np.argsort(bth)
    bth, br = bth[order], br[order]
    th = np.arctan2(pts[:, 1], pts[:, 0])
    r = np.hypot(pts[:, 0], pts[:, 1])
    r0 = np.interp(th, bth, br, period=2 * np.pi)
    predicted = r0 * (1.0 + grid.plane.n * level / 2.0)
    return float(np.max(np.abs(r - predicted)))


# ---------------------------------------------------------------------------
# Export formats


def grid_to_csv(grid: ScanGrid) -> str:
    """CSV of the grid: one row per cell, b outer / a inner, 17 significant digits."""
    lines = ["a,b,min_eig,min_eig_pt,negativity,is_state,is_ppt"]
    for j in range(len(grid.b_values)):
        for i in range(len(grid.a_values)):
            lines.append(
                "%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d"
                % (
                    grid.a_values[i],
                    grid.b_values[j],
                    grid.min_eig[i, j],
                    grid.min_eig_pt[i, j],
                    grid.negativity[i, j],
                    int(grid.is_state[i, j]),
                    int(grid.is_ppt[i, j]),
                )
            )
    return "\n".join(lines) + "\n"


def contours_to_json(entries) -> str:
    """Serialize contour sets: [{"field":..., "level":..., "polylines":[...]}, ...]."""
    doc = [
        {
            "field": field_name,
            "level": level,
            "polylines": [[[float(a), float(b)] for a, b in line] for line in lines],
        }
        for field_name, level, lines in entries
    ]
    return json.dumps(doc)
