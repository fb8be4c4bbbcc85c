import json
import random

import numpy as np
import pytest

from frontal.errors import PreconditionError
from frontal.fukui import assemble
from frontal.mesh import grid_faces, max_locus_gap, sample_parallel, sign_crossings, write_obj
from frontal.parallels import build_parallel, singular_locus
from frontal.specio import random_spec
from frontal.unfolding import critical_distances

pytestmark = pytest.mark.filterwarnings("ignore::UserWarning")


@pytest.fixture(scope="module")
def spec():
    return random_spec(random.Random(31), "ccc", order=6, c2_root=True)


def test_origin_vertex(spec):
    n = 5
    for eps in (0.0, 0.3, -0.7):
        verts, _, _ = sample_parallel(spec, eps, 0.1, n)
        centre = verts[(n // 2) * n + n // 2]
        expect = -eps * np.array([0.0, float(spec.sin0), float(spec.cos0)])
        assert np.allclose(centre, expect, atol=1e-15)


def test_tiny_grid_is_finite(spec):
    verts, lam, meta = sample_parallel(spec, 0.0, 1e-9, 2)
    assert verts.shape == (4, 3) and np.all(np.isfinite(verts))
    assert lam.shape == (2, 2)
    assert meta["grid"] == 2


def test_faces_in_range():
    for n in (2, 3, 7):
        faces = grid_faces(n)
        assert faces.shape == (2 * (n - 1) ** 2, 3)
        assert faces.min() == 1 and faces.max() == n * n


def test_refuses_large_range(spec):
    with pytest.raises(PreconditionError, match="truncation bound"):
        sample_parallel(spec, 0.0, 0.9, 5)


def test_locus_matches_sign_change(spec):
    eps = float(critical_distances(spec).c2_roots[0])
    ps = build_parallel(assemble(spec.to_numeric()), eps)
    locus = singular_locus(ps, "s")
    for rho in (0.1, 0.05):
        _, lam, _ = sample_parallel(spec, eps, rho, 41, trust=1.0)
        crossings = sign_crossings(lam, np.linspace(-rho, rho, 41))
        assert len(crossings) == 41
        assert max_locus_gap(crossings, locus.s) < rho ** 2


def test_write_obj_with_sidecar(spec, tmp_path):
    n = 4
    verts, _, meta = sample_parallel(spec, 0.25, 0.1, n)
    path = tmp_path / "m.obj"
    write_obj(path, verts, grid_faces(n), meta)
    lines = path.read_text().splitlines()
    assert sum(l.startswith("v ") for l in lines) == n * n
    assert sum(l.startswith("f ") for l in lines) == 2 * (n - 1) ** 2
    side = json.loads((tmp_path / "m.obj.json").read_text())
    assert side["truncation_bound"] == pytest.approx(0.1 ** (side["jet_order"] + 1))


def test_write_obj_rejects_nan(tmp_path):
    verts = np.array([[0.0, 0.0, np.nan]] * 4)
    with pytest.raises(PreconditionError):
        write_obj(tmp_path / "bad.obj", verts, grid_faces(2))
