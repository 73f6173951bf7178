"""cobinv command line: JSON in, JSON out."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra_core import AlgebraError, GradedPoly, parse_partition
from .chow import from_descriptor
from .config import Config, WindowOverflow
from .equivariant import (
    catalog, decompose, fixture_from_json, fixture_to_json, is_normal_bundle_class, nu, canonical_form_checks,
)
from .lazard import c_alpha, class_of, generator, genus
from .mring import m_alph
from .verdicts import BoundReport, bound_suite, curve_class, curve_table, isolated_points_check

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_WINDOW = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


# ---- shipped corpus


def shipped_descriptors() -> dict:
    out = {}
    for n in range(0, 7):
        out["p%d" % n] = {"type": "Pn", "n": n}
    for m in range(1, 7):
        for n in range(m, 8 - m):
            out["h_%d_%d" % (m, n)] = {"type": "H", "m": m, "n": n}
    return out


def shipped_fixtures() -> dict:
    """name -> catalog spec."""
    out = {}
    for a in range(0, 6):
        for b in range(0, 6 - a):
            out["pab_%d_%d" % (a, b)] = ["Pab", a, b]
    for i in range(1, 5):
        for j in range(i, 6 - i):
            out["hij_%d_%d" % (i, j)] = ["Hij", i, j]
    for n in range(1, 8):
        out["x%d" % n] = ["Xn", n]
    out["p1xp1_swap"] = ["swap"]
    X = lambda j: ["Xn", j]
    prods = {
        "sharp_x3": [[X(3), 1]],
        "sharp_x1_x3": [[X(1), 1], [X(3), 1]],
        "sharp_x1_x3_2": [[X(1), 1], [X(3), 2]],
        "sharp_x1_2_x3_2": [[X(1), 2], [X(3), 2]],
        "sharp_x3_3": [[X(3), 3]],
        "sharp_x5": [[X(5), 1]],
        "sharp_x1_x5": [[X(1), 1], [X(5), 1]],
        "sharp_x1_3_x5": [[X(1), 3], [X(5), 1]],
        "sharp_x5_2": [[X(5), 2]],
        "sharp_x2_2": [[X(2), 2]],
        "sharp_x2_3": [[X(2), 3]],
        "sharp_x1_x2_2": [[X(1), 1], [X(2), 2]],
        "sharp_x1_x2_3": [[X(1), 1], [X(2), 3]],
        "sharp_x1_2_x4": [[X(1), 2], [X(4), 1]],
        "sharp_x1_x6": [[X(1), 1], [X(6), 1]],
        "sharp_x9": [[["Xn", 9], 1]],
        "x1_4": [[X(1), 4]],
    }
    for k, v in prods.items():
        out[k] = ["product"] + v
    return out


def shipped_fixture_objs() -> dict:
    out = {}
    for name, spec in shipped_fixtures().items():
        f = catalog(*spec)
        if spec[0] == "product":
            out[name] = {"name": name, "n": f.n, "catalog": spec}
        else:
            obj = fixture_to_json(f)
            obj["catalog"] = spec
            out[name] = obj
    return out


def write_corpus(directory: Path):
    directory.mkdir(parents=True, exist_ok=True)
    for name, d in shipped_descriptors().items():
        (directory / ("%s.json" % name)).write_text(json.dumps(d, sort_keys=True) + "\n")
    for name, obj in shipped_fixture_objs().items():
        (directory / ("%s.json" % name)).write_text(json.dumps(obj, sort_keys=True) + "\n")


# ---- input


def _load(path):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError("cannot read %s: %s" % (path, exc))


def _load_fixture(path):
    obj = _load(path)
    if "catalog" in obj:
        # compact form; the catalog keeps product structure
        return catalog(*obj["catalog"])
    return fixture_from_json(obj)


def _load_variety(path):
    obj = _load(path)
    if "components" in obj or "catalog" in obj:
        raise InputError("expected a variety descriptor, got a fixture")
    return from_descriptor(obj)


def _alpha_key(alpha):
    return ",".join(str(p) for p in alpha)


# ---- commands


def cmd_class(args, config):
    X = _load_variety(args.file)
    x = class_of(X, config)
    from .algebra_core import partitions
    table = {_alpha_key(a): c_alpha(x, a) for a in partitions(X.dim)}
    gens = [{"d": d, "sources": generator(d, config).sources, "coeffs": generator(d, config).coeffs}
            for d in range(1, X.dim + 1)]
    return {"dim": X.dim, "class": x.to_json_obj(), "chern_numbers": table, "generators": gens}, EXIT_OK


def cmd_chern(args, config):
    X = _load_variety(args.file)
    x = class_of(X, config)
    from .algebra_core import partitions
    if args.alpha:
        alpha = parse_partition(args.alpha)
        return {"alpha": list(alpha), "value": c_alpha(x, alpha) if sum(alpha) == X.dim else 0}, EXIT_OK
    return {_alpha_key(a): c_alpha(x, a) for a in partitions(X.dim)}, EXIT_OK


def cmd_bundle_class(args, config):
    f = _load_fixture(args.file)
    config.require(f.n, "fixture dimension")
    return {"n": f.n, "class": nu(f, config).to_json_obj()}, EXIT_OK


def cmd_decompose(args, config):
    f = _load_fixture(args.file)
    c = decompose(f, config)
    out = c.to_json_obj()
    out["pretty"] = c.pretty()
    out["checks"] = canonical_form_checks(c, f.d)
    return out, EXIT_OK


def cmd_realizable(args, config):
    m = GradedPoly.from_json_obj(_load(args.file))
    try:
        m = m.embed(m_alph(config))
    except AlgebraError as exc:
        raise InputError("class does not live in the M alphabet: %s" % exc)
    return is_normal_bundle_class(m, config).to_json_obj(), EXIT_OK


def cmd_genus(args, config):
    obj = _load(args.file)
    if "components" in obj or "catalog" in obj:
        f = _load_fixture(args.file)
        x = f.ambient_class(config.widened(f.n))
    elif "vars" in obj:
        x = GradedPoly.from_json_obj(obj)
    else:
        x = class_of(from_descriptor(obj), config)
    return {"which": args.which, "value": genus(x, args.which)}, EXIT_OK


def cmd_curve(args, config):
    yes = curve_table(args.n, args.a, args.b, args.c)
    out = {"n": args.n, "a": args.a, "b": args.b, "c": args.c, "verdict": "yes" if yes else "no"}
    if args.lattice:
        v = is_normal_bundle_class(curve_class(args.n, args.a, args.b, args.c, config), config)
        out["lattice_verdict"] = "yes" if v.realizable else "no"
    return out, EXIT_OK


def _examples_reports(f, config):
    c = decompose(f, config)
    checks = canonical_form_checks(c, f.d)
    reps = [BoundReport("canonical_form", {"n": f.n, "d": f.d, "check": k}, None, None, True,
                        status="satisfied" if ok else "violated") for k, ok in checks.items()]
    if f.d == 0 and all(not any(l for _, l in comp.normal.lines) for comp in f.components):
        r = isolated_points_check(f)
        reps.append(BoundReport("isolated_points", {"n": f.n, "points": r.points}, None, None, True,
                                status="satisfied" if r.ok else "violated"))
    return reps


def cmd_verify(args, config):
    if args.files:
        items = [(p, _load_fixture(p)) for p in args.files]
    else:
        items = [(name, catalog(*spec)) for name, spec in shipped_fixtures().items()]
    out = []
    code = EXIT_OK
    for name, f in items:
        # the window follows the fixture's own dimension
        cfg = config.widened(f.n)
        reps = []
        if args.suite in ("all", "bounds"):
            reps += bound_suite(f, cfg)
        if args.suite in ("all", "examples"):
            reps += _examples_reports(f, cfg)
        for r in reps:
            obj = r.to_json_obj()
            obj["fixture"] = str(name)
            out.append(obj)
            if r.status == "violated":
                code = EXIT_VIOLATED
    return out, code


def cmd_catalog(args, config):
    if args.write:
        write_corpus(Path(args.write))
        return {"written": str(args.write), "count": len(shipped_descriptors()) + len(shipped_fixtures())}, EXIT_OK
    if args.list or not args.kind:
        return {"descriptors": shipped_descriptors(), "fixtures": shipped_fixtures()}, EXIT_OK
    try:
        params = [int(p) for p in args.params]
    except ValueError:
        raise InputError("catalog parameters must be integers")
    return fixture_to_json(catalog(args.kind, *params)), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cobinv", description="Cobordism of involutions: classes, decompositions, verdicts.")
    p.add_argument("--degree", type=int, help="degree window D (overrides COBINV_DEGREE)")
    p.add_argument("--output", choices=["json", "table"], default="json")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("class", help="Lazard class and Chern numbers of a variety")
    s.add_argument("file")
    s.set_defaults(func=cmd_class)

    s = sub.add_parser("chern-numbers", help="Chern numbers of a variety")
    s.add_argument("file")
    s.add_argument("--alpha", help="partition such as 2,1")
    s.set_defaults(func=cmd_chern)

    s = sub.add_parser("bundle-class", help="normal-bundle class nu of a fixture")
    s.add_argument("file")
    s.set_defaults(func=cmd_bundle_class)

    s = sub.add_parser("decompose", help="t/x decomposition of a fixture")
    s.add_argument("file")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("realizable", help="decide whether a class is a normal-bundle class")
    s.add_argument("file")
    s.set_defaults(func=cmd_realizable)

    s = sub.add_parser("genus", help="Euler characteristic or psi genus")
    s.add_argument("file")
    s.add_argument("--which", choices=["euler", "psi"], required=True)
    s.set_defaults(func=cmd_genus)

    s = sub.add_parser("curve-check", help="closed-form realizability over a curve")
    for k in ("n", "a", "b", "c"):
        s.add_argument("--" + k, type=int, required=True)
    s.add_argument("--lattice", action="store_true", help="also run the lattice test")
    s.set_defaults(func=cmd_curve)

    s = sub.add_parser("verify", help="bound reports for fixtures (default: shipped corpus)")
    s.add_argument("files", nargs="*")
    s.add_argument("--suite", choices=["all", "bounds", "examples"], default="all")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("catalog", help="catalog fixtures")
    s.add_argument("kind", nargs="?", choices=["Pab", "Hij", "Xn", "swap"])
    s.add_argument("params", nargs="*")
    s.add_argument("--list", action="store_true")
    s.add_argument("--write", metavar="DIR", help="write the shipped corpus as JSON files")
    s.set_defaults(func=cmd_catalog)
    return p


def _table(payload) -> str:
    if isinstance(payload, list):
        return "\n".join(_table(x) for x in payload)
    if isinstance(payload, dict):
        return "  ".join("%s=%s" % (k, json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v)
                         for k, v in payload.items())
    return str(payload)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        config = Config(D=args.degree, output=args.output) if args.degree else Config.from_env(output=args.output)
        payload, code = args.func(args, config)
    except InputError as exc:
        return _fail(out, "input_error", str(exc), EXIT_INPUT)
    except WindowOverflow as exc:
        return _fail(out, "window_overflow", str(exc), EXIT_WINDOW)
    except (AlgebraError, ValueError) as exc:
        return _fail(out, "input_error", str(exc), EXIT_INPUT)
    if args.output == "table":
        out.write(_table(payload) + "\n")
    else:
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    return code


def _fail(out, code_name, message, code):
    out.write(json.dumps({"error": {"code": code_name, "message": message}}, sort_keys=True) + "\n")
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
