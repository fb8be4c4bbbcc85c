"""Sample truncated parallel surfaces on a square and write ASCII OBJ meshes."""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import PreconditionError
from .fukui import FrontalSpec, assemble
from .parallels import build_parallel

TRUST_BOUND = 1e-2
"""Largest accepted rho^(n+1), n being the order of the sampled jet."""


def _jet_grid(jet, grid: np.ndarray) -> np.ndarray:
    """Evaluate a float Jet2 on every (s, t) of a meshgrid via Horner in numpy."""
    s, t = grid
    return np.asarray(jet(s, t), dtype=float)


def sample_parallel(spec: FrontalSpec, eps: float = 0.0, rho: float = 0.1, n: int = 21,
                    trust: float = TRUST_BOUND):
    """Vertices (n*n, 3) of f^eps over [-rho, rho]^2, row-major in s, plus metadata."""
    if n < 2:
        raise PreconditionError("grid needs at least 2 points per side")
    if not rho > 0:
        raise PreconditionError("range must be positive")
    num = spec.to_numeric()
    g = assemble(num, num.order)
    ps = build_parallel(g, float(eps))
    f = ps.f_eps if eps else g.f
    lam = ps.lam
    bound = rho ** (f.order + 1)
    if bound > trust:
        raise PreconditionError(
            f"range {rho} too large for a jet of order {f.order}: truncation bound {bound:.3g} > {trust:.3g}"
        )
    axis = np.linspace(-rho, rho, n)
    grid = np.meshgrid(axis, axis, indexing="ij")
    verts = np.stack([_jet_grid(c, grid).ravel() for c in f], axis=1)
    meta = {
        "eps": float(eps),
        "range": rho,
        "grid": n,
        "jet_order": f.order,
        "truncation_bound": bound,
        "vertex_order": "row-major, s outer, t inner",
    }
    return verts, _jet_grid(lam, grid), meta


def grid_faces(n: int) -> np.ndarray:
    """Two triangles per grid quad, 1-based OBJ indices."""
    idx = np.arange(n * n).reshape(n, n) + 1
    a, b = idx[:-1, :-1].ravel(), idx[1:, :-1].ravel()
    c, d = idx[1:, 1:].ravel(), idx[:-1, 1:].ravel()
    return np.concatenate([np.stack([a, b, c], 1), np.stack([a, c, d], 1)])


def write_obj(path, verts: np.ndarray, faces: np.ndarray, meta: dict | None = None) -> None:
    if not np.all(np.isfinite(verts)):
        raise PreconditionError("non-finite vertex coordinates")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("# parallel surface sample\n")
        for v in verts:
            fh.write("v {:.12g} {:.12g} {:.12g}\n".format(*v))
        for f in faces:
            fh.write("f {} {} {}\n".format(*f))
    if meta is not None:
        with open(f"{path}.json", "w", encoding="utf-8") as fh:
            json.dump(meta, fh, indent=2)
            fh.write("\n")


def sign_crossings(lam: np.ndarray, axis_vals: np.ndarray) -> list:
    """For each t column, the s where the sampled lambda changes sign (linear interpolation)."""
    out = []
    for j in range(lam.shape[1]):
        col = lam[:, j]
        for i in range(len(col) - 1):
            if col[i] == 0 or col[i] * col[i + 1] < 0:
                a, b = col[i], col[i + 1]
                w = 0.0 if a == b else a / (a - b)
                out.append((axis_vals[i] + w * (axis_vals[i + 1] - axis_vals[i]), axis_vals[j]))
                break
    return out


def max_locus_gap(crossings: list, locus_s) -> float:
    """Largest |s_cross - sigma(t)| over the sampled crossings."""
    if not crossings:
        return math.inf
    return max(abs(s - float(locus_s(t))) for s, t in crossings)
