"""Command line interface.

Exit codes: 0 success, 1 input or validation error, 2 failed mathematical
precondition (pair outside the normal neighbourhood, velocity outside the
injectivity domain).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import geodesy as geo
from . import io
from . import manifold as mf
from .errors import JBTripleError, NotInNormalNeighbourhoodError, PreconditionError, ValidationError
from .oracle.suite import format_reports, timed_suite
from .triple_core import default_tol


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _num(x) -> str:
    return repr(float(x))


def _nums(xs) -> str:
    return " ".join(_num(x) for x in xs)


def _projection(path, tol) -> mf.Projection:
    value = io.read_matrix(path, tol)
    if isinstance(value, mf.Projection):
        return value
    if isinstance(value, mf.TangentVector):
        raise ValidationError(f"{path}: expected a projection, got a tangent vector")
    return mf.make_projection(value, tol)


def _tangent(path, base: mf.Projection, tol) -> mf.TangentVector:
    if path == "0":
        return mf.zero_tangent(base)
    value = io.read_matrix(path, tol)
    if isinstance(value, mf.TangentVector):
        if not mf.same_point(value.base, base):
            raise ValidationError(f"{path}: tangent vector is attached to a different base")
        return mf.TangentVector(base, value.matrix)
    if isinstance(value, mf.Projection):
        value = value.matrix
    return mf.make_tangent(base, value, tol)


def cmd_gen(args, tol):
    p = mf.random_projection(args.n, args.rank, args.seed, tol)
    io.write_matrix(p, args.output)
    print(f"wrote {args.output}: n={p.n} rank={p.rank}")


def cmd_check(args, tol):
    value = io.read_matrix(args.file, tol=np.inf)
    matrix = getattr(value, "matrix", value)
    res = mf.projection_residuals(matrix)
    print(f"rank {res['rank']}")
    print(f"hermiticity_residual {_num(res['hermiticity'])}")
    print(f"idempotency_residual {_num(res['idempotency'])}")
    mf.make_projection(matrix, tol)
    print("valid projection")


def cmd_dist(args, tol):
    a, b = _projection(args.a, tol), _projection(args.b, tol)
    print(f"distance {_num(geo.distance(a, b))}")
    print(f"angles {_nums(geo.separation_angles(a, b))}")


def cmd_logmap(args, tol):
    a, b = _projection(args.a, tol), _projection(args.b, tol)
    u = geo.log_map(a, b)
    io.write_matrix(u, args.output)
    print(f"wrote {args.output}: |u|_a={_num(mf.tangent_norm(u))}")


def cmd_expmap(args, tol):
    a = _projection(args.a, tol)
    b = geo.exp_map(a, _tangent(args.u, a, tol))
    io.write_matrix(b, args.output)
    print(f"wrote {args.output}: rank={b.rank}")


def cmd_geodesic(args, tol):
    a = _projection(args.a, tol)
    if args.samples < 1:
        raise ValidationError("--samples must be at least 1")
    meta = {"source": a}
    if args.to is not None:
        b = _projection(args.to, tol)
        data = geo.connect(a, b)
        spec = data.geodesic
        meta.update(target=b, angles=data.angles, distance=geo.distance(a, b))
    else:
        u = _tangent(args.velocity, a, tol)
        spec = geo.geodesic_spec(a, u)
        meta.update(angles=spec.rates, distance=mf.tangent_norm(u) if spec.components else 0.0)
    ts = np.linspace(0.0, 1.0, args.samples + 1)
    samples = [(float(t), spec.point(float(t))) for t in ts]
    io.write_path(samples, meta, args.output)
    print(f"wrote {args.output}: {len(samples)} samples")


def cmd_midpoint(args, tol):
    c = geo.midpoint(_projection(args.a, tol), _projection(args.b, tol))
    io.write_matrix(c, args.output)
    print(f"wrote {args.output}: rank={c.rank}")


def cmd_symmetry(args, tol):
    c = _projection(args.center, tol)
    value = io.read_matrix(args.z, tol)
    if isinstance(value, mf.TangentVector):
        base = geo.peirce_symmetry(c, value.base)
        out = mf.make_tangent(base, geo.peirce_symmetry(c, value.matrix), tol)
    else:
        out = geo.peirce_symmetry(c, value)
    io.write_matrix(out, args.output)
    print(f"wrote {args.output}")


def _print_vectors(label, vectors):
    for k in range(vectors.shape[1]):
        pairs = [[float(z.real), float(z.imag)] for z in vectors[:, k]]
        print(f"{label}_{k + 1} {json.dumps(pairs)}")


def cmd_frame(args, tol):
    a = _projection(args.a, tol)
    if args.tangent is None:
        _print_vectors("alpha", mf.frame_for(a).vectors)
        return
    u = _tangent(args.tangent, a, tol)
    sd = mf.spectral_decompose(u)
    frame = mf.associated_frame(u, sd)
    _print_vectors("alpha", frame.vectors)
    _print_vectors("xi", sd.xis)
    print(f"rho {_nums(sd.singular_values)}")
    # along the geodesic with velocity u each atom turns at rate rho_k
    print(f"theta {_nums(sd.singular_values)}")


def cmd_selftest(args, tol):
    reports, elapsed = timed_suite(n=args.n, r=args.rank, trials=args.trials,
                                   seed=args.seed, tol=args.tol)
    print(format_reports(reports, elapsed))
    return 0 if all(rep.passed for rep in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jbgrassmann", description=__doc__.splitlines()[0])
    parser.add_argument("--tol", type=float, default=None,
                        help="validation tolerance (default: $JBT_TOL or 1e-10)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="random projection file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="validate a projection file")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("dist", help="Riemann distance and angles")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("logmap", help="logarithm Log_a(b)")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_logmap)

    p = sub.add_parser("expmap", help="exponential Exp_a(u)")
    p.add_argument("a")
    p.add_argument("u")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_expmap)

    p = sub.add_parser("geodesic", help="sample a geodesic on [0, 1]")
    p.add_argument("a")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--to")
    target.add_argument("--velocity", help="tangent file, or 0 for the zero vector")
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("midpoint", help="geodesic midpoint")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_midpoint)

    p = sub.add_parser("symmetry", help="Peirce symmetry with center C")
    p.add_argument("center")
    p.add_argument("z")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("frame", help="frame vectors and spectral data")
    p.add_argument("a")
    p.add_argument("--tangent")
    p.set_defaults(func=cmd_frame)

    p = sub.add_parser("selftest", help="run the oracle suite")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--rank", type=int, default=3)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    tol = args.tol if getattr(args, "tol", None) is not None else default_tol()
    try:
        code = args.func(args, tol)
    except NotInNormalNeighbourhoodError as exc:
        print(f"error: not in normal neighbourhood: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (JBTripleError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0 if code is None else code


if __name__ == "__main__":
    sys.exit(main())
