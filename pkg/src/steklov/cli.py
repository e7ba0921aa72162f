"""Command-line front end.

Commands: spectrum, family, clump, clump-cert, nodal, verify, sweep,
selftest. Reports go to stdout as JSON (CSV available for sweep tables);
logging goes to stderr. Exit codes: 0 ok/certified, 1 usage error,
2 assertion/bound failure, 3 rigidity mismatch, 4 unsupported range.
Floats are printed with 17 significant digits and exact rationals as
"p/q" alongside their decimal value, so identical inputs give
byte-identical reports regardless of --jobs.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import multiprocessing
import os
import sys
import time
from dataclasses import asdict, is_dataclass
from fractions import Fraction

import numpy as np

from . import __version__
from .errors import (
    CertificationError,
    OutOfSupportedRangeError,
    SteklovError,
)
from .families import (
    build_broom,
    build_comb,
    build_cycle,
    build_dumbbell,
    build_path,
    build_star_paths,
    comb_spectrum,
    lambda_value,
    rooted_path,
)
from .geometry import clump_number, verify_nodal_theorem
from .graph import graph_to_dict, load_graph, save_graph
from .spectral import dirichlet_steklov_spectrum, steklov_spectrum
from . import clumps as clumps_mod
from . import enumeration, extremal

log = logging.getLogger("steklov")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ASSERTION = 2
EXIT_RIGIDITY = 3
EXIT_RANGE = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage failures must exit 1, not argparse's 2
        raise UsageError(message)


# -- deterministic JSON with 17-significant-digit floats ---------------------------


def _fmt_float(x: float) -> str:
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if math.isnan(x):
        return '"nan"'
    return format(x, ".17g")


def _jsonify(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, Fraction):
        return _jsonify({"exact": str(obj), "value": float(obj)})
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, np.floating):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {_jsonify(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_jsonify(v) for v in obj) + "]"
    if is_dataclass(obj):
        return _jsonify(asdict(obj))
    return json.dumps(str(obj))


def _emit(report: dict, out_path: str | None = None) -> None:
    text = _jsonify(report) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(command: str, payload: dict) -> dict:
    return {"command": command, "version": __version__, "payload": payload}


def _number(value) -> object:
    """Rational -> {"exact", "value"}; everything else stays a float."""
    if isinstance(value, Fraction):
        return value
    return float(value)


# -- command handlers --------------------------------------------------------------


def _cmd_spectrum(args) -> int:
    g = load_graph(args.graph)
    if g.dirichlet:
        res = dirichlet_steklov_spectrum(g)
    else:
        res = steklov_spectrum(g)
    _emit(
        _report(
            "spectrum",
            {
                "kind": res.kind,
                "boundary": list(res.support),
                "eigenvalues": [float(v) for v in res.eigenvalues],
            },
        ),
        args.out,
    )
    return EXIT_OK


def _parse_base(spec: str):
    name, _, num = spec.partition(":")
    if name == "path":
        return build_path(int(num)).graph
    if name == "cycle":
        return build_cycle(int(num)).graph
    raise UsageError(f"unknown comb base {spec!r} (use path:N or cycle:N)")


def _parse_tooth(spec: str):
    if spec == "edge":
        return rooted_path(1)
    name, _, num = spec.partition(":")
    if name == "path":
        return rooted_path(int(num))
    raise UsageError(f"unknown tooth {spec!r} (use edge or path:N)")


def _cmd_family(args) -> int:
    if args.family == "broom":
        fam = build_broom(args.l, args.i, args.d)
        params = {"l": args.l, "i": args.i, "d": args.d}
    elif args.family == "dumbbell":
        fam = build_dumbbell(args.d0, args.i, args.d1)
        params = {"d0": args.d0, "i": args.i, "d1": args.d1}
    elif args.family == "star":
        fam = build_star_paths(args.r, args.arm_length)
        params = {"r": args.r, "l": args.arm_length}
    elif args.family == "comb":
        fam = build_comb(_parse_base(args.base), _parse_tooth(args.tooth))
        params = {"base": args.base, "tooth": args.tooth}
    elif args.family == "path":
        fam = build_path(args.n)
        params = {"n": args.n}
    elif args.family == "cycle":
        fam = build_cycle(args.n)
        params = {"n": args.n}
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown family {args.family!r}")
    if args.out:
        save_graph(fam.graph, args.out)
    payload = {
        "family": fam.family,
        "params": params,
        "landmarks": {k: v for k, v in fam.landmarks.items()},
        "graph": graph_to_dict(fam.graph),
    }
    if args.family == "comb":
        base = _parse_base(args.base)
        vals, _ = comb_spectrum(base, _parse_tooth(args.tooth))
        payload["closed_form_spectrum"] = [float(v) for v in vals]
    _emit(_report("family", payload))
    return EXIT_OK


def _cmd_clump(args) -> int:
    g = load_graph(args.graph)
    rep = clump_number(g)
    point = (
        {"vertex": rep.point.vertex}
        if rep.point.is_vertex
        else {"edge": list(rep.point.edge), "offset": _number(rep.point.offset)}
    )
    _emit(
        _report(
            "clump",
            {
                "clump_number": _number(rep.clump_number),
                "equilibrium_point": point,
                "clumps": [
                    {"length": _number(c.length), "vertices": list(c.vertices)}
                    for c in rep.clumps
                ],
            },
        ),
        args.out,
    )
    return EXIT_OK


def _certificate_payload(cert) -> dict:
    return {
        "removed_edges": [list(e) for e in cert.removed],
        "bound": None if cert.bound is None else _number(cert.bound),
        "components": [
            {
                "vertices": list(c.vertices),
                "clump_number": _number(c.clump_number),
                "sub_k": None if c.sub_k is None else c.sub_k.value,
            }
            for c in cert.components
        ],
    }


def _cmd_clump_cert(args) -> int:
    g = load_graph(args.graph)
    if args.sub_k:
        result = clumps_mod.find_removal_sub_k(g, args.r, args.k)
        if isinstance(result, clumps_mod.StarException):
            _emit(
                _report(
                    "clump-cert",
                    {"verdict": "star-exception", "center": result.center,
                     "r": result.r, "k": result.k},
                )
            )
            return EXIT_OK
        _emit(_report("clump-cert", {"verdict": "removal",
                                     "certificate": _certificate_payload(result)}))
        return EXIT_OK
    cert = clumps_mod.find_removal_for_clump(g, args.r, args.k, half=args.half)
    if cert is None:
        _emit(_report("clump-cert", {"verdict": "not-found"}))
        return EXIT_ASSERTION
    _emit(_report("clump-cert", {"verdict": "removal",
                                 "certificate": _certificate_payload(cert)}))
    return EXIT_OK


def _cmd_nodal(args) -> int:
    g = load_graph(args.graph)
    res = dirichlet_steklov_spectrum(g) if g.dirichlet else steklov_spectrum(g)
    sigma, f = res.eigenpair(args.eig)
    report = verify_nodal_theorem(g, sigma, f, tol=args.tol)
    domains = []
    for v in report.verdicts:
        domains.append(
            {
                "lambda1": v.lambda1,
                "sigma": v.sigma,
                "residual": v.residual,
                "one_signed": v.one_signed,
                "ok": v.ok,
            }
        )
    payload = {
        "eig_index": args.eig,
        "sigma": float(sigma),
        "degenerate_zero_set": report.degenerate,
        "domains": domains,
        "ok": report.ok,
    }
    _emit(_report("nodal", payload), args.out)
    return EXIT_OK if report.ok or report.degenerate else EXIT_ASSERTION


def _sweep_worker(task):
    kind, code, i = task
    if kind == "trees":
        g = enumeration.tree_from_code(code)
    else:
        g = enumeration.graph_from_code(code)
    # report under the canonical code (trees always get tree codes, even
    # when swept as part of the connected-graph class)
    return enumeration.canonical_code(g), extremal.sigma_value(g, i)


def _sweep_pairs(n: int, i: int, graph_class: str, jobs: int):
    if graph_class == "trees":
        if n > 12:
            raise OutOfSupportedRangeError("tree sweeps support n <= 12")
        stream = enumeration.enumerate_trees(n)
    elif graph_class == "connected":
        stream = enumeration.enumerate_connected_graphs(n)
    else:
        raise UsageError(f"unknown class {graph_class!r}")
    tasks = [(graph_class, code, i) for code in stream.codes]
    if jobs > 1:
        with multiprocessing.Pool(jobs) as pool:
            pairs = pool.map(_sweep_worker, tasks, chunksize=64)
    else:
        pairs = [_sweep_worker(t) for t in tasks]
    return pairs


def _cmd_verify(args) -> int:
    t0 = time.monotonic()
    pairs = _sweep_pairs(args.n, args.i, args.graph_class, args.jobs)
    report = extremal.verify_extremal(
        args.n, args.i, args.graph_class, tol=args.tol, pairs=pairs
    )
    payload = {
        "n": args.n,
        "i": args.i,
        "class": args.graph_class,
        "case": report.target.case,
        "bound": report.target.bound,
        "bound_exact": report.target.bound_str,
        "class_size": report.class_size,
        "minimum": report.minimum,
        "argmin": list(report.argmin_codes),
        "predicted": list(report.predicted_codes),
        "characterized": report.target.characterized,
        "bound_ok": report.bound_ok,
        "match": report.match,
        "seconds": round(time.monotonic() - t0, 3),
    }
    if args.format == "csv":
        lines = ["field,value"]
        for k, v in payload.items():
            if k == "seconds":
                continue
            lines.append(f"{k},{v}")
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        payload_out = dict(payload)
        payload_out["seconds"] = 0.0  # timestamp-normalized for reproducibility
        _emit(_report("verify", payload_out), args.out)
        log.info("verify finished in %.3fs", payload["seconds"])
    if not report.bound_ok:
        return EXIT_ASSERTION
    if not report.match:
        return EXIT_RIGIDITY
    return EXIT_OK


def _cmd_sweep(args) -> int:
    pairs = _sweep_pairs(args.n, args.i, args.graph_class, args.jobs)
    pairs.sort()
    if args.format == "csv":
        sys.stdout.write("code,sigma\n")
        for code, val in pairs:
            sval = "inf" if math.isinf(val) else format(val, ".17g")
            sys.stdout.write(f"{code},{sval}\n")
    else:
        _emit(
            _report(
                "sweep",
                {
                    "n": args.n,
                    "i": args.i,
                    "class": args.graph_class,
                    "rows": [{"code": c, "sigma": v} for c, v in pairs],
                },
            ),
            args.out,
        )
    return EXIT_OK


def _cmd_selftest(args) -> int:
    checks = []

    def check(name, fn):
        try:
            ok = bool(fn())
        except Exception as exc:  # noqa: BLE001 - report, do not crash
            log.warning("selftest %s raised: %s", name, exc)
            ok = False
        checks.append({"name": name, "ok": ok})

    check("lambda-spot-values", lambda: (
        lambda_value(2) == Fraction(1, 2)
        and lambda_value(3) == Fraction(1, 3)
        and lambda_value(4) == Fraction(1, 5)
        and lambda_value(Fraction(10, 3)) == Fraction(3, 11)
    ))
    check("sigma2-trees-n7", lambda: extremal.verify_extremal(7, 2, "trees").match)
    check("comb-anchor", lambda: abs(
        comb_spectrum(build_path(3).graph, rooted_path(1))[0][2] - 0.75
    ) <= 1e-9)
    check("clump-p4", lambda: clump_number(
        build_path(4).graph
    ).clump_number == Fraction(3, 2))
    check("typeAB-p4", lambda: clumps_mod.classify_type_AB(
        build_path(4).graph, 2
    ).verdict == "TypeA")
    ok = all(c["ok"] for c in checks)
    _emit(_report("selftest", {"checks": checks, "ok": ok}))
    return EXIT_OK if ok else EXIT_ASSERTION


# -- argument parsing ---------------------------------------------------------------


def _build_parser() -> _Parser:
    p = _Parser(prog="steklov", description=__doc__)
    p.add_argument("--cache-dir", help="override STEKLOV_CACHE_DIR")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="Steklov spectrum of a graph file")
    sp.add_argument("graph")
    sp.add_argument("--out")
    sp.set_defaults(func=_cmd_spectrum)

    fp = sub.add_parser("family", help="build a named family graph")
    fsub = fp.add_subparsers(dest="family", required=True)
    b = fsub.add_parser("broom")
    b.add_argument("--l", required=True)
    b.add_argument("--i", type=int, required=True)
    b.add_argument("--d", type=int, required=True)
    d = fsub.add_parser("dumbbell")
    d.add_argument("--d0", type=int, required=True)
    d.add_argument("--i", type=int, required=True)
    d.add_argument("--d1", type=int, required=True)
    s = fsub.add_parser("star")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--arm-length", type=int, required=True)
    c = fsub.add_parser("comb")
    c.add_argument("--base", required=True, help="path:N or cycle:N")
    c.add_argument("--tooth", required=True, help="edge or path:N")
    for name in ("path", "cycle"):
        q = fsub.add_parser(name)
        q.add_argument("--n", type=int, required=True)
    for q in fsub.choices.values():
        q.add_argument("--out")
    fp.set_defaults(func=_cmd_family)

    cp = sub.add_parser("clump", help="clump number and equilibrium point")
    cp.add_argument("graph")
    cp.add_argument("--out")
    cp.set_defaults(func=_cmd_clump)

    cc = sub.add_parser("clump-cert", help="edge-removal certificates")
    cc.add_argument("graph")
    cc.add_argument("--r", type=int, required=True)
    cc.add_argument("--k", type=int, required=True)
    cc.add_argument("--half", action="store_true")
    cc.add_argument("--sub-k", dest="sub_k", action="store_true")
    cc.set_defaults(func=_cmd_clump_cert)

    np_ = sub.add_parser("nodal", help="nodal-domain theorem for one eigenpair")
    np_.add_argument("graph")
    np_.add_argument("--eig", type=int, default=2)
    np_.add_argument("--tol", type=float, default=1e-8)
    np_.add_argument("--out")
    np_.set_defaults(func=_cmd_nodal)

    vp = sub.add_parser("verify", help="certify an extremal sweep")
    vp.add_argument("--n", type=int, required=True)
    vp.add_argument("--i", type=int, required=True)
    vp.add_argument("--class", dest="graph_class", default="trees",
                    choices=["trees", "connected"])
    vp.add_argument("--format", default="json", choices=["json", "csv"])
    vp.add_argument("--jobs", type=int, default=1)
    vp.add_argument("--tol", type=float, default=1e-9)
    vp.add_argument("--out")
    vp.set_defaults(func=_cmd_verify)

    wp = sub.add_parser("sweep", help="emit the per-class eigenvalue table")
    wp.add_argument("--n", type=int, required=True)
    wp.add_argument("--i", type=int, required=True)
    wp.add_argument("--class", dest="graph_class", default="trees",
                    choices=["trees", "connected"])
    wp.add_argument("--format", default="json", choices=["json", "csv"])
    wp.add_argument("--jobs", type=int, default=1)
    wp.add_argument("--out")
    wp.set_defaults(func=_cmd_sweep)

    st = sub.add_parser("selftest", help="quick battery of internal checks")
    st.set_defaults(func=_cmd_selftest)
    return p


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(message)s")
    try:
        parser = _build_parser()
        args = parser.parse_args(argv)
        if args.verbose:
            logging.getLogger().setLevel(logging.INFO)
        if args.cache_dir is not None:
            os.environ["STEKLOV_CACHE_DIR"] = args.cache_dir
        if getattr(args, "jobs", 1) < 1 or getattr(args, "tol", 1.0) <= 0:
            raise UsageError("--jobs must be >= 1 and --tol positive")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"ERROR {EXIT_USAGE}: {exc}\n")
        return EXIT_USAGE
    except OutOfSupportedRangeError as exc:
        sys.stderr.write(f"ERROR {EXIT_RANGE}: {exc}\n")
        return EXIT_RANGE
    except CertificationError as exc:
        sys.stderr.write(f"ERROR {EXIT_ASSERTION}: {exc}\n")
        return EXIT_ASSERTION
    except SteklovError as exc:
        sys.stderr.write(f"ERROR {EXIT_USAGE}: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"ERROR {EXIT_USAGE}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
