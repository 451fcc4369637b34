"""Write a batch manifest with golden values for the CLI ``batch`` command.

Golden values come from the trace side (fixed-chain counts), so a batch run
re-derives them independently through the intersection product.

    python3 scripts/make_manifest.py uniform:2:3 graphic:K4 > manifest.json
    tropical-trace batch manifest.json --out reports --jobs 4
"""

import argparse
import json

from tropical_trace.catalog import examples
from tropical_trace.framing import per_p_traces
from tropical_trace.matroid import automorphism
from tropical_trace.verify import resolve_matroid


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("names", nargs="+")
    args = ap.parse_args()
    pairs = []
    for name in args.names:
        M = resolve_matroid(name)
        for i, perm in enumerate(examples(name)):
            traces = per_p_traces(M, automorphism(M, perm))
            total = sum((-1) ** p * b for p, _, b in traces)
            pairs.append({
                "id": "%s-%d" % (name.replace(":", "_"), i),
                "matroid": name,
                "perm": list(perm),
                "expect": {"intersection_degree": total, "lefschetz_sum": total},
            })
    print(json.dumps({"pairs": pairs}, indent=1))


if __name__ == "__main__":
    main()
