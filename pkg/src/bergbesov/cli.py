"""Command-line front end: classification, kernel evaluation, transforms,
norms, probes, and parameter sweeps with machine-readable output.

Output conventions: JSON on standard output with every float rendered at 17
significant digits (bit-faithful for fixtures; infinities as the Infinity
literal, which json.loads accepts), all inputs echoed back for
reproducibility.  Sweeps emit CSV with the fixed header
b,c,alpha,beta,p,q,target,dim,bounded,part,binding_slack.  Exit codes:
0 success, 2 malformed input, 1 I/O failure.
"""

import argparse
import itertools
import json
import math
import sys

import numpy as np

from . import _accel
from .classifier import ExtExponent, OperatorParams, Target, classify
from .kernel import KernelSpec, kernel_eval, truncation_degree
from .operators import apply_T_report, as_ball_function, besov_norm, bloch_norm, test_function_lp_norm
from .probe import finiteness_probe, kernel_floor_probe, ratio_probe
from .quadrature import (
    DEFAULT_MC_SAMPLES,
    DEFAULT_RADIAL_NODES,
    DEFAULT_SPHERE_NODES,
    BallQuadrature,
    lp_norm,
)

__all__ = ["main"]

CSV_HEADER = "b,c,alpha,beta,p,q,target,dim,bounded,part,binding_slack"


def _jfloat(x):
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return "%.17g" % x


def _emit(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [f'{pad}  {json.dumps(str(k))}: {_emit(v, indent + 1)}'
                for k, v in obj.items()]
        return "{\n" + ",\n".join(rows) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not len(obj):
            return "[]"
        rows = [f"{pad}  {_emit(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _jfloat(float(obj))
    if obj is None:
        return "null"
    return json.dumps(str(obj))


def _print_json(obj):
    sys.stdout.write(_emit(obj) + "\n")


def _parse_point(text):
    try:
        vals = [float(s) for s in str(text).split(",") if s.strip() != ""]
    except ValueError:
        raise ValueError(f"cannot parse point {text!r}") from None
    if len(vals) < 2:
        raise ValueError(f"points need at least 2 coordinates, got {text!r}")
    return np.asarray(vals, dtype=float)


def _parse_values(spec, allow_inf=False):
    vals = []
    for item in str(spec).split(","):
        item = item.strip()
        if not item:
            continue
        if ":" in item:
            parts = item.split(":")
            if len(parts) != 3:
                raise ValueError(f"range spec must be start:stop:count, got {item!r}")
            count = int(parts[2])
            if count < 1:
                raise ValueError(f"range count must be >= 1 in {item!r}")
            vals.extend(np.linspace(float(parts[0]), float(parts[1]), count).tolist())
        elif allow_inf and item.lower() in ("inf", "infinity", "oo"):
            vals.append(math.inf)
        else:
            vals.append(float(item))
    if not vals:
        raise ValueError(f"empty value spec {spec!r}")
    return vals


def _build_params(args):
    return OperatorParams(b=args.b, c=args.c, alpha=args.alpha, beta=args.beta,
                          p=ExtExponent.parse(args.p), q=ExtExponent.parse(args.q),
                          dim=args.dim)


def _build_rule(args, dim):
    return BallQuadrature(dim, radial_nodes=args.radial_nodes,
                          sphere_nodes=args.sphere_nodes,
                          mc_samples=args.mc_samples, seed=args.seed)


def _add_param_flags(sp):
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--c", type=float, required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--beta", type=float, default=0.0)
    sp.add_argument("--p", default="2")
    sp.add_argument("--q", default="2")
    sp.add_argument("--dim", type=int, default=2)


def _add_rule_flags(sp, radial=DEFAULT_RADIAL_NODES, sphere=DEFAULT_SPHERE_NODES):
    sp.add_argument("--radial-nodes", type=int, default=radial)
    sp.add_argument("--sphere-nodes", type=int, default=sphere)
    sp.add_argument("--mc-samples", type=int, default=DEFAULT_MC_SAMPLES)
    sp.add_argument("--seed", type=int, default=0)


def _cmd_classify(args):
    params = _build_params(args)
    target = Target.parse(args.target)
    verdict = classify(params, target)
    out = {"command": "classify", "params": params.to_dict(),
           "target": target.value}
    out.update(verdict.to_dict())
    _print_json(out)
    return 0


def _cmd_kernel(args):
    x = _parse_point(args.x)
    y = _parse_point(args.y)
    if x.size != y.size:
        raise ValueError(f"x has dim {x.size} but y has dim {y.size}")
    spec = KernelSpec(args.alpha, x.size, args.tol)
    value = kernel_eval(spec, x, y)
    rx = float(np.linalg.norm(x))
    ry = float(np.linalg.norm(y))
    degree = truncation_degree(spec, rx, ry) if rx * ry > 0.0 else 0
    _print_json({"command": "kernel", "alpha": spec.alpha, "dim": spec.dim,
                 "tol": spec.tol, "x": x.tolist(), "y": y.tolist(),
                 "value": value, "truncation_degree": degree,
                 "backend": _accel.backend()})
    return 0


def _cmd_apply(args):
    x = _parse_point(args.x)
    rule = _build_rule(args, x.size)
    report = apply_T_report(args.b, args.c, args.f, x, rule=rule)
    out = {"command": "apply", "b": args.b, "c": args.c, "f": args.f,
           "x": x.tolist(), "rule": rule.describe()}
    out.update(report.to_dict())
    _print_json(out)
    return 0


def _cmd_norm(args):
    dim = args.dim
    if (args.b is None) != (args.c is None):
        raise ValueError("--b and --c must be given together (transform-image mode)")
    if args.b is not None:
        rule = _build_rule(args, dim)
        target = args.target or ("besov" if args.q is not None else "bloch")
        g = (args.b, args.c, args.f)
        if target == "besov":
            if args.q is None:
                raise ValueError("besov norm needs --q")
            result = besov_norm(g, float(args.q), args.beta, rule=rule, dim=dim)
        elif target == "bloch":
            result = bloch_norm(g, args.beta, rule=rule, dim=dim)
        else:
            raise ValueError(f"norm target must be besov or bloch, got {target!r}")
        out = {"command": "norm", "mode": "transform-image", "target": target,
               "b": args.b, "c": args.c, "f": args.f, "beta": args.beta,
               "dim": dim, "rule": rule.describe()}
        if args.q is not None:
            out["q"] = float(args.q)
        out.update(result.to_dict())
        _print_json(out)
        return 0
    if args.p is None:
        raise ValueError("source-space mode needs --p (or give --b/--c)")
    p = ExtExponent.parse(args.p)
    p_raw = math.inf if p.is_inf else p.raw
    fvec, tf = as_ball_function(args.f, dim)
    if tf is not None:
        value = test_function_lp_norm(tf, p_raw, args.alpha, dim)
        method = "radial-adaptive"
        rule_echo = None
    else:
        rule = _build_rule(args, dim)
        value = lp_norm(fvec, p_raw, args.alpha, rule)
        method = "quadrature"
        rule_echo = rule.describe()
    _print_json({"command": "norm", "mode": "source-space", "f": args.f,
                 "p": math.inf if p.is_inf else p.raw, "alpha": args.alpha,
                 "dim": dim, "method": method, "rule": rule_echo,
                 "value": value, "finite": bool(math.isfinite(value))})
    return 0


def _cmd_probe(args):
    if args.kind == "floor":
        eps = kernel_floor_probe(args.alpha, args.dim)
        _print_json({"command": "probe", "kind": "floor", "alpha": args.alpha,
                     "dim": args.dim, "epsilon": eps})
        return 0
    params = _build_params(args)
    target = args.target
    if args.kind == "finiteness":
        report = finiteness_probe(params, target=target)
    else:
        report = ratio_probe(params, target=target)
    out = {"command": "probe", "kind": args.kind}
    out.update(report.to_dict())
    _print_json(out)
    return 0


def _cmd_sweep(args):
    target = Target.parse(args.target)
    grids = [
        _parse_values(args.b),
        _parse_values(args.c),
        _parse_values(args.alpha),
        _parse_values(args.beta),
        _parse_values(args.p, allow_inf=True),
        _parse_values(args.q, allow_inf=True),
    ]
    lines = [CSV_HEADER]
    for b, c, al, be, p, q in itertools.product(*grids):
        params = OperatorParams(b=b, c=c, alpha=al, beta=be, p=p, q=q, dim=args.dim)
        verdict = classify(params, target)
        fields = ["%.17g" % v for v in (b, c, al, be)]
        fields.append(str(params.p))
        fields.append(str(params.q))
        fields.append(target.value)
        fields.append(str(params.dim))
        fields.append("true" if verdict.bounded else "false")
        fields.append(verdict.part)
        fields.append("%.17g" % verdict.binding_slack)
        lines.append(",".join(fields))
    text = "\n".join(lines) + "\n"
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="bergbesov",
        description="Weighted harmonic kernel toolkit: classify operator "
                    "boundedness, evaluate kernels and transforms, compute "
                    "norms, and run numerical probes.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", help="exact boundedness verdict as JSON")
    _add_param_flags(sp)
    sp.add_argument("--target", required=True,
                    help="besov | bloch | hinf | lebesgue | wlinf")
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("kernel", help="evaluate the order-alpha kernel at (x, y)")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--x", required=True, help="comma-separated coordinates")
    sp.add_argument("--y", required=True)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.set_defaults(func=_cmd_kernel)

    sp = sub.add_parser("apply", help="transform value at x with divergence report")
    sp.add_argument("--b", type=float, required=True)
    sp.add_argument("--c", type=float, required=True)
    sp.add_argument("--f", required=True,
                    help="const1 | fuv:u,v | expansion JSON text")
    sp.add_argument("--x", required=True)
    _add_rule_flags(sp)
    sp.set_defaults(func=_cmd_apply)

    sp = sub.add_parser("norm", help="source-space norm of f, or a smoothness "
                                     "norm of the transform image (b,c,f)")
    sp.add_argument("--f", required=True)
    sp.add_argument("--p", default=None, help="source-space exponent (or inf)")
    sp.add_argument("--alpha", type=float, default=0.0)
    sp.add_argument("--b", type=float, default=None)
    sp.add_argument("--c", type=float, default=None)
    sp.add_argument("--q", type=float, default=None)
    sp.add_argument("--beta", type=float, default=0.0)
    sp.add_argument("--target", default=None, help="besov | bloch (image mode)")
    sp.add_argument("--dim", type=int, default=2)
    _add_rule_flags(sp, radial=48, sphere=48)
    sp.set_defaults(func=_cmd_norm)

    sp = sub.add_parser("probe", help="finiteness / ratio / kernel-floor probes")
    sp.add_argument("--kind", choices=("finiteness", "ratio", "floor"),
                    default="finiteness")
    sp.add_argument("--b", type=float, default=0.0)
    sp.add_argument("--c", type=float, default=0.0)
    sp.add_argument("--alpha", type=float, default=0.0)
    sp.add_argument("--beta", type=float, default=0.0)
    sp.add_argument("--p", default="2")
    sp.add_argument("--q", default="2")
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--target", default=None)
    sp.set_defaults(func=_cmd_probe)

    sp = sub.add_parser("sweep", help="classify a parameter grid to CSV")
    sp.add_argument("--b", default="0")
    sp.add_argument("--c", default="0")
    sp.add_argument("--alpha", default="0")
    sp.add_argument("--beta", default="0")
    sp.add_argument("--p", default="2")
    sp.add_argument("--q", default="2")
    sp.add_argument("--target", required=True)
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--out", default="-", help="output path, - for stdout")
    sp.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
