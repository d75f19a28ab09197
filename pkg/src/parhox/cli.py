"""The parhox command line: declarative problem files in, reports out.

Subcommands: validate, validate-action, build-kpar, build-crossed,
hochschild, partial-homology, spectral, selfcheck.  Reports are JSON with
stable key order; given the same input file and flags the report is
byte-identical up to the timing field.
"""

import argparse
import hashlib
import json
import os
import sys
import time

from . import __version__
from .errors import ParhoxError
from .fields import field_from_json
from .algebras import ModuleData
from .factor_sets import PartialFactorSet
from .groups import FiniteGroup, enumerate_exel
from .homology import (hochschild_cohomology_bar, hochschild_homology_bar,
                       hochschild_homology_resolution, partial_homology_dims)
from .partial_actions import validate_twisted
from .partial_algebras import build_kpar, build_kpar_sigma
from .problems import build_instance, parse_spec_file
from .spectral import homology_module_tower, run_all_checks


def _canonical_digest(obj):
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _report(command, input_obj, result, ok, t0):
    return {
        "tool": "parhox",
        "version": __version__,
        "command": command,
        "input_digest": _canonical_digest(input_obj),
        "ok": ok,
        "result": result,
        "timing_seconds": round(time.monotonic() - t0, 3),
    }


def _emit(report, args):
    text = json.dumps(report, indent=1, sort_keys=True)
    if getattr(args, "json_out", None):
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if report["ok"] else 1


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _cap(args, spec_options=None):
    """Cap priority: PARHOX_CAP env > explicit flag > problem options."""
    env = os.environ.get("PARHOX_CAP")
    if env is not None:
        return int(env)
    if args.cap is not None:
        return args.cap
    if spec_options and "cap" in spec_options:
        return spec_options["cap"]
    return 200_000


def cmd_validate(args):
    t0 = time.monotonic()
    raw = _load_json(args.spec)
    spec = parse_spec_file(args.spec)
    stages = {"schema": "ok"}
    ok = True
    if spec.action is not None:
        rep = validate_twisted(spec.action, spec.group)
        stages["action"] = rep.to_json()
        ok = ok and rep.ok
    inst = build_instance(spec)
    stages["twisted_group_algebra"] = {"dim": inst.ks.dim,
                                       "vanished": len(inst.ks.vanished)}
    stages["crossed_product"] = {"dim": inst.lam.algebra.dim}
    stages["module"] = {"dim": inst.M.dim}
    return _emit(_report("validate", raw, stages, ok, t0), args)


def cmd_build_kpar(args):
    t0 = time.monotonic()
    raw = _load_json(args.spec)
    if "group" in raw:                       # a full problem file
        spec = parse_spec_file(args.spec)
        group, field, sigma = spec.group, spec.field, spec.sigma
    else:                                    # a bare group file
        group = FiniteGroup.from_json(raw)
        if args.field:
            try:
                fobj = json.loads(args.field)
            except json.JSONDecodeError:
                fobj = _load_json(args.field)
            field = field_from_json(fobj)
        else:
            field = field_from_json({"kind": "Q"})
        sigma = None
    if args.sigma:
        sigma = PartialFactorSet.from_json(group, field,
                                           _load_json(args.sigma))
    monoid = enumerate_exel(group, size_limit=_cap(args))
    if sigma is None:
        ktw = build_kpar(group, field, monoid=monoid)
    else:
        ktw = build_kpar_sigma(sigma, monoid=monoid)
    result = {
        "dim": ktw.dim,
        "basis": [ktw.monomial_label(p) for p in range(ktw.dim)],
        "sc": ktw.algebra.to_json()["sc"],
        "vanished": sorted(ktw.monoid.label(m) for m in ktw.vanished),
        "completion_log": [list(map(str, entry))
                           for entry in ktw.completion_log],
    }
    return _emit(_report("build-kpar", raw, result, True, t0), args)


def cmd_build_crossed(args):
    t0 = time.monotonic()
    raw = _load_json(args.spec)
    spec = parse_spec_file(args.spec)
    inst = build_instance(spec)
    lam = inst.lam
    result = {
        "dim": lam.algebra.dim,
        "basis": lam.algebra.labels,
        "sc": lam.algebra.to_json()["sc"],
        "ideal_dims": [len(b) for b in lam.dg_bases],
        "universal_base": inst.universal,
    }
    return _emit(_report("build-crossed", raw, result, True, t0), args)


def cmd_hochschild(args):
    t0 = time.monotonic()
    raw = _load_json(args.spec)
    spec = parse_spec_file(args.spec)
    inst = build_instance(spec)
    cap = _cap(args, spec.options)
    n = args.max_n
    bar = hochschild_homology_bar(inst.lam.algebra, inst.M, n, cap=cap)
    res = hochschild_homology_resolution(inst.lam.algebra, inst.M, n)
    agree = bar == res
    result = {
        "dims": {f"H{q}": bar[q] for q in range(n + 1)},
        "oracle_agreement": agree,
        "truncation": n,
    }
    if args.cohomology:
        barc = hochschild_cohomology_bar(inst.lam.algebra, inst.M, n, cap=cap)
        result["cohomology_dims"] = {f"H^{q}": barc[q] for q in range(n + 1)}
    return _emit(_report("hochschild", raw, result, agree, t0), args)


def cmd_partial_homology(args):
    t0 = time.monotonic()
    raw = _load_json(args.spec)
    spec = parse_spec_file(args.spec)
    inst = build_instance(spec)
    n = args.max_n
    # coefficients: H_0(A, M) = M/[A, M] with its kappa_par G-structure
    _, tower = homology_module_tower(inst, 0)
    hd0, mod0, _ = tower[0]
    X0 = ModuleData(inst.kpar.algebra, hd0.dim, left=mod0.left)
    dims = partial_homology_dims(inst.kpar.algebra, inst.b_right_over_kpar(),
                                 X0, n)
    result = {
        "coefficients": "H_0(A, M) = M/[A,M]",
        "coefficient_dim": hd0.dim,
        "dims": {f"H{q}": dims[q] for q in range(n + 1)},
        "truncation": n,
    }
    return _emit(_report("partial-homology", raw, result, True, t0), args)


def _page_table(page, max_p, max_q):
    lines = ["q\\p " + " ".join(f"{p:>4}" for p in range(max_p + 1))]
    for q in range(max_q, -1, -1):
        row = [f"{q:>3} "]
        for p in range(max_p + 1):
            e = page.entry(p, q)
            row.append("   ." if e is None else f"{e:>4}")
        lines.append(" ".join(row))
    return lines


def cmd_spectral(args):
    t0 = time.monotonic()
    raw = _load_json(args.spec)
    spec = parse_spec_file(args.spec)
    inst = build_instance(spec)
    inst._cache["chain_cap"] = _cap(args, spec.options)
    max_p = args.max_p if args.max_p is not None else spec.options["max_p"]
    max_q = args.max_q if args.max_q is not None else spec.options["max_q"]
    max_n = min(max_p, max_q)
    report, page, pagec = run_all_checks(inst, max_p=max_p, max_q=max_q,
                                         max_n=max_n)
    shown = pagec if args.cohomology else page
    result = {
        "E2": shown.to_json(),
        "E2_other_orientation": (page if args.cohomology else pagec).to_json(),
        "checks": report.to_json(),
    }
    doc = _report("spectral", raw, result, report.ok, t0)
    code = _emit(doc, args)
    for line in _page_table(shown, max_p, max_q):
        print(line)
    return code


def cmd_selfcheck(args):
    t0 = time.monotonic()
    from .problems import bundled_fixtures, fixture_dir
    from .selfcheck import run_selfcheck
    inputs = {f: _load_json(os.path.join(fixture_dir(), f))
              for f in bundled_fixtures()}
    doc, ok = run_selfcheck(verbose=True)
    return _emit(_report("selfcheck", inputs, doc, ok, t0), args)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="parhox",
        description="exact verification toolkit for twisted partial group "
                    "algebras and partial crossed products")
    parser.add_argument("--json-out", help="also write the report here")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a problem file end to end")
    p.add_argument("spec")
    p.set_defaults(fn=cmd_validate)
    p2 = sub.add_parser("validate-action",
                        help="alias of validate for action-bearing files")
    p2.add_argument("spec")
    p2.set_defaults(fn=cmd_validate)

    p = sub.add_parser("build-kpar",
                       help="build kappa_par G or kappa_par^sigma G")
    p.add_argument("spec", help="a group file or a problem file")
    p.add_argument("--sigma", help="JSON file with a sigma table")
    p.add_argument("--field",
                   help='field for bare group files: JSON text like '
                        '{"kind":"Fp","p":7} or a path to one')
    p.add_argument("--cap", type=int, default=512,
                   help="monoid size limit (PARHOX_CAP overrides)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_build_kpar)

    p = sub.add_parser("build-crossed", help="build the crossed product")
    p.add_argument("spec")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(fn=cmd_build_crossed)

    p = sub.add_parser("hochschild", help="Hochschild homology of Lambda")
    p.add_argument("spec")
    p.add_argument("--max-n", type=int, default=2)
    p.add_argument("--cohomology", action="store_true")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(fn=cmd_hochschild)

    p = sub.add_parser("partial-homology",
                       help="partial homology of G with coefficients M/[A,M]")
    p.add_argument("spec")
    p.add_argument("--max-n", type=int, default=2)
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(fn=cmd_partial_homology)

    p = sub.add_parser("spectral", help="E2 pages plus the verdict battery")
    p.add_argument("spec")
    p.add_argument("--max-p", type=int, default=None)
    p.add_argument("--max-q", type=int, default=None)
    p.add_argument("--cohomology", action="store_true")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_spectral)

    p = sub.add_parser("selfcheck",
                       help="run the full battery on all bundled fixtures")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(fn=cmd_selfcheck)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParhoxError as exc:
        report = {
            "tool": "parhox", "version": __version__,
            "command": args.command, "ok": False,
            "error": {"type": type(exc).__name__, "message": str(exc)},
        }
        print(json.dumps(report, indent=1, sort_keys=True))
        return 2
    except (FileNotFoundError, json.JSONDecodeError) as exc:
        print(json.dumps({"tool": "parhox", "ok": False,
                          "error": {"type": "IOError", "message": str(exc)}},
                         indent=1, sort_keys=True))
        return 2


if __name__ == "__main__":
    sys.exit(main())
