"""Command-line front end.

Exit codes: 0 all checks pass, 1 a formula or validation failure,
2 bad input, 3 internal inconsistency (e.g. two routes disagree).
"""

import argparse
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor

from .catalog import catalog, describe, examples
from .documents import load_json, parse_perm_arg
from .errors import ConsistencyError, InputError
from .fan import degree as fan_degree
from .framing import per_p_traces, resolution_check
from .intersection import compute_intersection
from .matroid import MAX_GROUND_SIZE, automorphism, fixed_flat_lattice, flat_lattice
from .poset import beta
from .verify import VerifyConfig, resolve_matroid, verify

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CONSISTENCY = 0, 1, 2, 3


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _config(args):
    cap = args.max_ground_size
    if cap is not None and cap > MAX_GROUND_SIZE and not args.i_know_this_is_slow:
        raise InputError("--max-ground-size above %d needs --i-know-this-is-slow" % MAX_GROUND_SIZE)
    return VerifyConfig(fast=getattr(args, "fast", False),
                        dump_cycles=getattr(args, "dump_cycles", False),
                        timing=getattr(args, "timing", False),
                        max_ground_size=cap or MAX_GROUND_SIZE)


def _source(text):
    """A catalog name or a path to a matroid JSON document."""
    if os.path.exists(text) or text.endswith(".json"):
        return load_json(text)
    return text


def _matroid(args):
    return resolve_matroid(_source(args.matroid), _config(args))


def _psi(M, args):
    return automorphism(M, parse_perm_arg(args.perm))


def cmd_verify(args):
    r = verify(_source(args.matroid), parse_perm_arg(args.perm), _config(args))
    _emit(args, r.to_dict(timing=args.timing), r.text())
    return EXIT_OK if r.passed else EXIT_VIOLATION


def cmd_catalog(args):
    M = catalog(args.name)
    ex = [list(p) for p in examples(args.name)]
    d = describe(M)
    d["automorphism_examples"] = ex
    counts = [len(layer) for layer in M.flats_by_rank]
    text = "%s: %d elements, rank %d, flats per rank %s\nexample automorphisms:\n%s" % (
        M.name, M.ground_size, M.rk, counts, "\n".join("  %s" % p for p in ex))
    _emit(args, d, text)
    return EXIT_OK


def cmd_beta(args):
    M = _matroid(args)
    if args.perm:
        L = fixed_flat_lattice(M, _psi(M, args))
    else:
        L = flat_lattice(M)
    b = beta(L)
    _emit(args, {"matroid": M.name, "n": L.n, "beta": b, "lattice_size": len(L)},
          "beta = %d  (lattice of %d elements, n = %d)" % (b, len(L), L.n))
    return EXIT_OK


def cmd_trace(args):
    M = _matroid(args)
    traces = per_p_traces(M, _psi(M, args))
    bad = [t for t in traces if t[1] != t[2]]
    total = sum((-1) ** p * a for p, a, _ in traces)
    _emit(args, {"matroid": M.name, "per_p_traces": [list(t) for t in traces],
                 "lefschetz_sum": total},
          "\n".join("p=%d  linear=%d  chains=%d" % t for t in traces)
          + "\nLefschetz sum = %d" % total)
    if bad:
        raise ConsistencyError("trace routes disagree at p=%s" % [t[0] for t in bad])
    return EXIT_OK


def cmd_degree(args):
    M = _matroid(args)
    psi = _psi(M, args)
    run = compute_intersection(M, psi, check_linearity=not args.fast)
    payload = {"matroid": M.name, "perm": list(psi.perm), "n": M.n,
               "intersection_degree": fan_degree(run.cycles[-1]),
               "facets_per_cycle": [len(X) for X in run.cycles]}
    text = "deg = %d  (facets per X_k: %s)" % (run.degree, payload["facets_per_cycle"])
    if args.dump_cycles:
        payload["cycles"] = [X.dump().splitlines() for X in run.cycles]
        text += "\n" + "\n".join("# X_%d\n%s" % (k, X.dump()) for k, X in enumerate(run.cycles))
    _emit(args, payload, text)
    return EXIT_OK


def cmd_resolution(args):
    M = _matroid(args)
    ps = [args.p] if args.p is not None else list(range(M.n + 1))
    reports = [resolution_check(M, p) for p in ps]
    text = "\n".join("p=%d dims=%s ranks=%s dim F_p=%d  %s" % (
        r["p"], r["dims"], r["boundary_ranks"], r["dim_F"], "ok" if r["ok"] else "FAIL")
        for r in reports)
    _emit(args, {"matroid": M.name, "reports": reports}, text)
    return EXIT_OK if all(r["ok"] for r in reports) else EXIT_VIOLATION


# -- batch ------------------------------------------------------------------


def read_manifest(path):
    """A list of pairs, or {"pairs": [...]}. Each pair has "matroid" (catalog
    name or document), "perm", and optionally "id" and "expect"."""
    doc = load_json(path)
    pairs = doc.get("pairs") if isinstance(doc, dict) else doc
    if not isinstance(pairs, list):
        raise InputError("manifest must be a list of pairs or {\"pairs\": [...]}")
    out = []
    for i, p in enumerate(pairs):
        if not isinstance(p, dict) or "matroid" not in p or "perm" not in p:
            raise InputError("manifest entry %d needs 'matroid' and 'perm'" % i)
        out.append(dict(p, id=str(p.get("id", "pair%03d" % i))))
    return out


def _write_atomic(path, text):
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".", suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def run_pair(pair, config):
    """One manifest entry -> (summary line dict, report json or None)."""
    base = {"id": pair["id"]}
    try:
        r = verify(pair["matroid"], parse_perm_arg(json.dumps(pair["perm"])), config,
                   expect=pair.get("expect"))
    except InputError as exc:
        return dict(base, status="input_error", error=str(exc), exit=EXIT_INPUT), None
    except ConsistencyError as exc:
        return dict(base, status="consistency_error", error=str(exc),
                    exit=EXIT_CONSISTENCY), None
    line = dict(base, status="pass" if r.passed else "fail",
                exit=EXIT_OK if r.passed else EXIT_VIOLATION, verdict=r.verdict,
                intersection_degree=r.intersection_degree, beta_fix=r.beta_fix,
                lefschetz_sum=r.lefschetz_sum)
    return line, r.to_json(timing=config.timing)


def cmd_batch(args):
    pairs = read_manifest(args.manifest)
    ids = [p["id"] for p in pairs]
    if len(set(ids)) != len(ids):
        raise InputError("duplicate ids in manifest")
    config = _config(args)
    os.makedirs(args.out, exist_ok=True)
    if args.jobs > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(run_pair, pairs, [config] * len(pairs)))
    else:
        results = [run_pair(p, config) for p in pairs]
    lines = []
    for line, report in results:
        if report is not None:
            _write_atomic(os.path.join(args.out, "%s.json" % line["id"]), report + "\n")
        lines.append(line)
    _write_atomic(os.path.join(args.out, "summary.jsonl"),
                  "".join(json.dumps(x, sort_keys=True) + "\n" for x in lines))
    worst = max((x["exit"] for x in lines), default=EXIT_OK)
    if args.json:
        print(json.dumps({"pairs": len(lines), "exit": worst, "summary": lines},
                         sort_keys=True, indent=2))
    else:
        for x in lines:
            print("%-24s %s%s" % (x["id"], x["status"],
                                  "  " + x["error"] if "error" in x else ""))
        print("%d pairs, %d passed" % (len(lines), sum(x["status"] == "pass" for x in lines)))
    return worst


# -- parser -----------------------------------------------------------------


def build_parser():
    ap = argparse.ArgumentParser(prog="tropical-trace", description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="structured output")
    ap.add_argument("--max-ground-size", type=int, default=None)
    ap.add_argument("--i-know-this-is-slow", action="store_true",
                    help="acknowledge raising --max-ground-size above the default cap")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_pair(p, perm_required=True):
        p.add_argument("matroid", help="catalog name (e.g. uniform:2:3) or JSON document path")
        p.add_argument("perm", nargs=None if perm_required else "?",
                       help='one-line image notation: "0,2,1", JSON, or a .json file')

    p = sub.add_parser("verify", help="all three sides plus structural validators")
    with_pair(p)
    p.add_argument("--fast", action="store_true", help="skip structural validators")
    p.add_argument("--dump-cycles", action="store_true", help="include every X_k")
    p.add_argument("--timing", action="store_true", help="include elapsed_ms in --json output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="describe a built-in matroid")
    p.add_argument("name")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("batch", help="verify every pair in a manifest")
    p.add_argument("manifest")
    p.add_argument("--out", default="reports")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--fast", action="store_true")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("beta", help="beta of L(M), or of Fix(L(M)) if perm is given")
    with_pair(p, perm_required=False)
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("trace", help="per-p traces on the framing groups")
    with_pair(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("degree", help="intersection degree by iterated divisors")
    with_pair(p)
    p.add_argument("--fast", action="store_true", help="skip the linearity guard")
    p.add_argument("--dump-cycles", action="store_true")
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("resolution", help="exactness of the chain resolution of F_p")
    p.add_argument("matroid")
    p.add_argument("-p", type=int, default=None)
    p.set_defaults(func=cmd_resolution)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as exc:
        print("consistency error: %s" % exc, file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
