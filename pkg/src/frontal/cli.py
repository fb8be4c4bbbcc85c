"""``frontal`` command line: analyze, classify-germ, mesh, verify, bifurcation."""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction

from .conventions import EpsConvention
from .errors import FrontalError, OrderTooLow, SpecValidationError
from .germlab import Family, classify
from .jets import Jet2
from .mesh import TRUST_BOUND, grid_faces, sample_parallel, write_obj
from .report import Check, analyze, bifurcation_dict, checks_for_spec, numeric_convergence, random_checks
from .specio import SpecDocument, spec_from_seed

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _number(text: str, exact: bool):
    try:
        q = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a number: {text!r}") from None
    return q if exact else float(q)


def _load(args) -> SpecDocument:
    if args.spec == "-":
        doc = SpecDocument.loads(sys.stdin.read())
    else:
        try:
            doc = SpecDocument.load(args.spec)
        except OSError as exc:
            raise InputError(f"{args.spec}: {exc.strerror}") from None
    spec = doc.spec
    if args.order is not None:
        spec = spec.with_order(args.order)
    if args.mode == "numeric":
        spec = spec.to_numeric()
    elif args.mode == "exact" and not spec.exact:
        raise InputError("a numeric document cannot be analysed in exact mode")
    conv = EpsConvention(args.convention) if args.convention else doc.convention
    return SpecDocument(spec, conv)


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _eps_list(args, exact: bool) -> list:
    out = []
    for chunk in args.eps or []:
        out.extend(_number(x, exact) for x in chunk.split(",") if x.strip())
    return out


def _probes(args, exact: bool) -> list:
    out = []
    for p in args.probe or []:
        vals = [_number(x, exact) for x in p.split(",")]
        if len(vals) != 4:
            raise InputError(f"--probe needs x,y,z,e; got {p!r}")
        out.append(vals)
    return out


def cmd_analyze(args) -> int:
    doc = _load(args)
    ex = doc.spec.exact
    _emit(args, analyze(doc, _eps_list(args, ex), _probes(args, ex)))
    return EXIT_OK


def cmd_bifurcation(args) -> int:
    doc = _load(args)
    _emit(args, bifurcation_dict(doc.spec, doc.convention))
    return EXIT_OK


def _germ_from_file(path: str, order: int | None, exact: bool) -> Jet2:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}: malformed JSON ({exc.msg})") from None
    if not isinstance(raw, dict):
        raise InputError("coefficient file must be an object like {\"c02\": 1, \"c30\": 1}")
    terms = {}
    for key, val in raw.items():
        if len(key) != 3 or key[0] != "c" or not key[1:].isdigit():
            raise InputError(f"bad coefficient name {key!r}; expected cIJ with single digits")
        terms[int(key[1]), int(key[2])] = _number(str(val), exact)
    top = max((i + j for i, j in terms), default=0)
    n = top if order is None else order
    terms = {k: v for k, v in terms.items() if sum(k) <= n}
    return Jet2.from_scaled(terms, n, exact)


def cmd_classify_germ(args) -> int:
    exact = args.mode != "numeric"
    g = _germ_from_file(args.coefficients, args.order, exact)
    try:
        cls = classify(g)
    except OrderTooLow as exc:
        print(str(exc))
        return EXIT_INPUT
    if cls.family is Family.BEYOND_SIMPLE and all(v == 0 for v in g.terms().values()):
        print("order too low / beyond scope")
        return EXIT_OK
    print(cls.family.value)
    if cls.sign is not None:
        print(f"  sign: {'+' if cls.sign > 0 else '-'}")
    if cls.kernel_direction is not None:
        print(f"  kernel: {tuple(str(x) for x in cls.kernel_direction)}")
    for k, v in cls.witness.items():
        print(f"  {k}: {v}")
    return EXIT_OK


def cmd_mesh(args) -> int:
    doc = _load(args)
    spec = doc.spec.to_numeric()
    eps = float(doc.convention.to_canonical(_number(args.eps or "0", False)))
    try:
        verts, _, meta = sample_parallel(spec, eps, args.range, args.grid, args.trust)
    except FrontalError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_INPUT
    meta["convention"] = doc.convention.value
    out = args.out or "surface.obj"
    write_obj(out, verts, grid_faces(args.grid), meta)
    print(f"wrote {out} ({len(verts)} vertices, truncation bound {meta['truncation_bound']:.3g})")
    return EXIT_OK


def cmd_verify(args) -> int:
    exact = args.mode != "numeric"
    if args.spec:
        doc = _load(args)
        checks = checks_for_spec(doc.spec)
        spec_for_fd = doc.spec
    else:
        count = args.random or 10
        checks = random_checks(count, args.seed, exact=exact, jobs=args.jobs)
        spec_for_fd = spec_from_seed(args.seed)
    if not exact:
        conv = numeric_convergence(spec_for_fd, order=4)
        need = 10.0 ** (conv["order"] - 1)
        for name, ratio in conv["ratios"].items():
            checks.append(Check(f"fd_convergence_{name}", ratio >= need, ratio, f"need >= {need:g}"))
    width = max(len(c.name) for c in checks)
    failed = 0
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        failed += not c.passed
        line = f"{c.name:<{width}}  {status}  residual={c.residual:.3g}"
        if c.detail:
            line += f"  ({c.detail})"
        print(line)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("exact", "numeric"), default=None)
    common.add_argument("--order", type=int, default=None, help="truncation order N")
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--convention", choices=[c.value for c in EpsConvention], default=None,
                        help="sign convention for distances (default: the document's)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)

    p = argparse.ArgumentParser(prog="frontal", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="full JSON report for a surface document")
    a.add_argument("spec")
    a.add_argument("--eps", action="append", help="distance(s), comma separated; repeatable")
    a.add_argument("--probe", action="append", help="DSU probe x,y,z,e; repeatable")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("classify-germ", parents=[common], help="classify a function germ from cIJ coefficients")
    g.add_argument("coefficients")
    g.set_defaults(func=cmd_classify_germ)

    m = sub.add_parser("mesh", parents=[common], help="OBJ mesh of a parallel surface")
    m.add_argument("spec")
    m.add_argument("--eps", default="0")
    m.add_argument("--range", type=float, default=0.2)
    m.add_argument("--grid", type=int, default=21)
    m.add_argument("--trust", type=float, default=TRUST_BOUND, help="largest accepted rho^(n+1)")
    m.set_defaults(func=cmd_mesh)

    v = sub.add_parser("verify", parents=[common], help="run identity checks on a document or random specs")
    v.add_argument("spec", nargs="?")
    v.add_argument("--random", type=int, default=None, metavar="K")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bifurcation", parents=[common], help="degeneration distances and adjacencies")
    b.add_argument("spec")
    b.set_defaults(func=cmd_bifurcation)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    warnings.simplefilter("ignore", UserWarning)
    try:
        return args.func(args)
    except (SpecValidationError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FrontalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
