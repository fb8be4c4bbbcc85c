"""Walk a cuspidal cross cap's parallels through their degeneration distances.

Prints the critical distances, then for a few distances on either side of
each one the parallel class and the distance-squared singularity at the
focal point.  With --mesh DIR an OBJ mesh is written at each C2 root.

    python scripts/degeneration_sweep.py --seed 31 --mesh /tmp/meshes
"""

import argparse
import random
import warnings
from fractions import Fraction
from pathlib import Path

from frontal.mesh import grid_faces, sample_parallel, write_obj
from frontal.parallels import classify_parallel
from frontal.specio import random_spec
from frontal.unfolding import classify_at_distance, critical_distances


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=31)
    ap.add_argument("--mesh", type=Path, default=None, help="directory for OBJ meshes at the C2 roots")
    args = ap.parse_args()
    warnings.simplefilter("ignore", UserWarning)

    spec = random_spec(random.Random(args.seed), "ccc", order=8, c2_root=True)
    rep = critical_distances(spec)
    print(f"cross cap type: {rep.type.value}")
    for eps, tag in rep.ordering:
        print(f"  {tag:<4} at eps = {eps}")

    offset = Fraction(1, 50)
    print(f"\n{'eps':>14}  {'parallel':<22} distance squared")
    for eps, _ in rep.ordering:
        for e in (eps - offset, eps, eps + offset):
            par = classify_parallel(spec, e).label
            dsu = classify_at_distance(spec, e).label
            print(f"{str(e):>14}  {par:<22} {dsu}")

    if args.mesh:
        args.mesh.mkdir(parents=True, exist_ok=True)
        for k, eps in enumerate(rep.c2_roots):
            verts, _, meta = sample_parallel(spec, float(eps), 0.15, 31)
            path = args.mesh / f"root{k}.obj"
            write_obj(path, verts, grid_faces(31), meta)
            print(f"wrote {path}")


if __name__ == "__main__":
    main()
