"""Command line front end: build, syzygy, iso, socle-equiv, verify-paper.

Exit codes: 0 success or ISO, 1 verified negative, 2 input error,
3 degree cap exceeded, 4 inconclusive.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__
from .corpus import SpecError, resolve
from .homology import period, projective_module, simple_module, syzygy_orbit
from .isocheck import default_budget, iso_search, socle_equivalent
from .rewrite import CapExceeded, cartan_matrix, radical_socle, symmetrizing_form
from .suites import SUITES, run_suite

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_CAP, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4


class _Report:
    def __init__(self, argv, timing):
        self.doc = {"schema": "surfalg-report/1", "tool": "surfalg", "version": __version__,
                    "command": list(argv), "inputs": [], "results": {}}
        self.timing = timing
        self.t0 = time.perf_counter()

    def add_input(self, spec):
        self.doc["inputs"].append({"path": spec.path, "sha256": spec.sha256, "field": spec.field_json()})

    def finish(self, code, out):
        self.doc["exit_code"] = code
        if self.timing:
            self.doc["timing"] = {"seconds": round(time.perf_counter() - self.t0, 3)}
        text = json.dumps(self.doc, indent=2, sort_keys=True) + "\n"
        if out:
            with open(out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return code


def _algebra_summary(A, spec):
    F = A.field
    R = radical_socle(A)
    phi = symmetrizing_form(A, R)
    socle = {A.vertex_names[v]: A.label_of(w) for v, w in sorted(R.omega.items())}
    return {
        "name": spec.name,
        "dimension": A.dim,
        "vertices": list(A.vertex_names),
        "basis": list(A.labels),
        "cartan": cartan_matrix(A).tolist(),
        "radical_layers": R.layer_dims(),
        "loewy_length": R.loewy_length,
        "socle": socle,
        "symmetric": phi is not None,
        "symmetrizing_form": None if phi is None else
        {A.labels[i]: F.format(phi[i]) for i in np.flatnonzero(np.asarray(phi) != 0)},
    }


def cmd_build(args, rep):
    spec = resolve(args.spec)
    rep.add_input(spec)
    A = spec.build()
    rep.doc["results"] = _algebra_summary(A, spec)
    return EXIT_OK


def _module(A, text):
    text = text.strip()
    if len(text) < 3 or text[0] not in "SP" or text[1] != "_":
        raise SpecError(f"module must look like S_<vertex> or P_<vertex>, got {text!r}")
    name = text[2:]
    if name not in A.vertex_names:
        raise SpecError(f"unknown vertex {name!r}")
    v = A.vertex_names.index(name)
    return simple_module(A, v) if text[0] == "S" else projective_module(A, v)


def cmd_syzygy(args, rep):
    spec = resolve(args.spec)
    rep.add_input(spec)
    A = spec.build()
    M = _module(A, args.module)
    orb = syzygy_orbit(A, M, max_steps=args.steps)
    per = period(orb)
    rep.doc["results"] = {
        "algebra": spec.name, "dimension": A.dim, "module": args.module, "module_dim": M.dim,
        "steps": [s.to_json() for s in orb],
        "period": per,
        "verdict": f"PERIOD {per}" if per else ("PROJECTIVE" if orb and orb[-1].dim == 0
                                                 else f"NO PERIOD WITHIN {args.steps} STEPS"),
        "probabilistic": any(s.method == "random" and not s.iso_to_start for s in orb),
    }
    return EXIT_OK


def _budget(args, spec_a, spec_b):
    if args.budget is not None:
        return args.budget
    for s in (spec_a, spec_b):
        if "budget" in s.options:
            return s.options["budget"]
    return default_budget()


def _cmd_pair(args, rep, fn):
    sa, sb = resolve(args.spec_a), resolve(args.spec_b)
    rep.add_input(sa)
    rep.add_input(sb)
    if sa.field.spec != sb.field.spec:
        raise SpecError("the two specs use different fields")
    A, B = sa.build(), sb.build()
    v = fn(A, B, _budget(args, sa, sb))
    res = v.to_json(A, B)
    res.update({"a": sa.name, "b": sb.name})
    rep.doc["results"] = res
    return {"ISO": EXIT_OK, "NOT-ISO": EXIT_NEGATIVE, "INCONCLUSIVE": EXIT_INCONCLUSIVE}[v.result]


def cmd_iso(args, rep):
    return _cmd_pair(args, rep, iso_search)


def cmd_socle_equiv(args, rep):
    return _cmd_pair(args, rep, socle_equivalent)


def cmd_verify_paper(args, rep):
    checks = run_suite(args.suite, budget=args.budget)
    failed = [c["check"] for c in checks if not c["ok"]]
    rep.doc["results"] = {"suite": args.suite, "checks": checks, "passed": len(checks) - len(failed),
                          "failed": failed}
    return EXIT_OK if not failed else EXIT_NEGATIVE


def make_parser():
    ap = argparse.ArgumentParser(prog="surfalg", description="Weighted surface algebras: "
                                 "build, syzygies, isomorphism and socle equivalence.")
    ap.add_argument("--version", action="version", version=f"surfalg {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the JSON report here instead of stdout")
        p.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")

    p = sub.add_parser("build", help="build an algebra and report its structure")
    p.add_argument("spec", help="spec file or corpus entry name")
    common(p)
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("syzygy", help="syzygy orbit of a simple or projective module")
    p.add_argument("spec")
    p.add_argument("--module", default="S_1", help="S_<vertex> or P_<vertex> (default S_1)")
    p.add_argument("--steps", type=int, default=8)
    common(p)
    p.set_defaults(fn=cmd_syzygy)

    for name, fn, hlp in (("iso", cmd_iso, "decide whether A and B are isomorphic"),
                          ("socle-equiv", cmd_socle_equiv, "decide whether A/soc A and B/soc B are isomorphic")):
        p = sub.add_parser(name, help=hlp)
        p.add_argument("spec_a")
        p.add_argument("spec_b")
        p.add_argument("--budget", type=int, default=None,
                       help="search node budget (default $SURFALG_BUDGET or 10^8)")
        common(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("verify-paper", help="run the bundled verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--budget", type=int, default=None)
    common(p)
    p.set_defaults(fn=cmd_verify_paper)
    return ap


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    if getattr(args, "steps", 1) < 1:
        sys.stderr.write("error: --steps must be at least 1\n")
        return EXIT_INPUT
    rep = _Report(["surfalg"] + argv, args.timing)
    try:
        code = args.fn(args, rep)
    except SpecError as e:
        rep.doc["results"] = {"error": str(e)}
        sys.stderr.write(f"error: {e}\n")
        return rep.finish(EXIT_INPUT, args.out)
    except CapExceeded as e:
        rep.doc["results"] = {"error": f"degree cap exceeded ({e.kind})", "detail": e.detail}
        sys.stderr.write(f"error: degree cap exceeded ({e.kind})\n")
        return rep.finish(EXIT_CAP, args.out)
    return rep.finish(code, args.out)


if __name__ == "__main__":
    sys.exit(main())
