"""Run all three sides of the trace formula on one (matroid, automorphism) pair."""

import json
import time
from dataclasses import asdict, dataclass, field

from .catalog import catalog
from .documents import matroid_from_doc, perm_from_doc
from .errors import InputError
from .fan import hyperplane_section
from .framing import framing_hyperplane_check, lefschetz_sum, per_p_traces, resolution_check
from .intersection import (compute_intersection, validate_facet_weights,
                           validate_weight_table, validate_Xk_structure)
from .matroid import MAX_GROUND_SIZE, automorphism, fixed_flat_lattice
from .poset import beta
from .subsets import elements


@dataclass
class VerifyConfig:
    fast: bool = False  # skip structural validators and the linearity guard
    dump_cycles: bool = False
    timing: bool = False  # include elapsed_ms in structured output
    max_ground_size: int = MAX_GROUND_SIZE


@dataclass
class VerificationReport:
    matroid: str
    perm: list
    n: int
    beta_fix: int
    intersection_degree: int
    lefschetz_sum: int
    per_p_traces: list
    structural_validations: list = field(default_factory=list)
    expectations: list = field(default_factory=list)
    cycles: list = None
    elapsed_ms: float = 0.0

    @property
    def verdict(self):
        d = self.intersection_degree
        return d == (-1) ** self.n * self.beta_fix and d == self.lefschetz_sum

    @property
    def validations_ok(self):
        return all(v["ok"] for v in self.structural_validations)

    @property
    def expectations_ok(self):
        return all(e["ok"] for e in self.expectations)

    @property
    def passed(self):
        return self.verdict and self.validations_ok and self.expectations_ok

    def to_dict(self, timing=False):
        d = asdict(self)
        d["verdict"] = self.verdict
        d["passed"] = self.passed
        if self.cycles is None:
            del d["cycles"]
        if not timing:
            del d["elapsed_ms"]
        return d

    def to_json(self, timing=False):
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)

    def text(self):
        lines = [
            "matroid            %s" % self.matroid,
            "perm               %s" % self.perm,
            "n                  %d" % self.n,
            "(-1)^n beta(Fix)   %d" % ((-1) ** self.n * self.beta_fix),
            "deg(Gamma . Delta) %d" % self.intersection_degree,
            "Lefschetz sum      %d" % self.lefschetz_sum,
            "traces (p, linear, chains) %s" % ", ".join("(%d, %d, %d)" % tuple(t)
                                                       for t in self.per_p_traces),
        ]
        for v in self.structural_validations:
            lines.append("  %-28s %s  (%d checked)" % (v["name"], "ok" if v["ok"] else "FAIL",
                                                     v["checked"]))
            for bad in v.get("violations", [])[:5]:
                lines.append("      %s" % bad)
        for e in self.expectations:
            lines.append("  expect %-21s %s" % (e["key"], "ok" if e["ok"] else
                                                "FAIL (got %s, want %s)" % (e["got"], e["want"])))
        lines.append("verdict            %s" % ("PASS" if self.passed else "FAIL"))
        lines.append("elapsed            %.1f ms" % self.elapsed_ms)
        if self.cycles is not None:
            lines.append(self.cycles_text)
        return "\n".join(lines)

    @property
    def cycles_text(self):
        out = []
        for c in self.cycles:
            out.append("# X_%d dim=%d facets=%d" % (c["k"], c["dim"], len(c["weights"])))
            for chain, w in c["weights"]:
                out.append("%s\t%d" % (" ".join(str(F) for F in chain) or "[]", w))
        return "\n".join(out)


def resolve_matroid(source, config=None):
    """source: catalog name, or a matroid document (dict), or {"catalog": name}."""
    config = config or VerifyConfig()
    if isinstance(source, str):
        M = catalog(source)
        if M.ground_size > config.max_ground_size:
            raise InputError("ground set exceeds cap %d" % config.max_ground_size)
        return M
    if isinstance(source, dict) and "catalog" in source:
        return resolve_matroid(source["catalog"], config)
    return matroid_from_doc(source, max_ground_size=config.max_ground_size,
                            name=source.get("name") if isinstance(source, dict) else None)


def _cycles_payload(run):
    out = []
    for k, X in enumerate(run.cycles):
        out.append({"k": k, "dim": X.dim,
                    "weights": [[[elements(F) for F in chain], X.weights[chain]]
                                for chain in X.facets()]})
    return out


def _structural(M, psi, run):
    out = [validate_Xk_structure(run).summary(),
           validate_facet_weights(run).summary(),
           validate_weight_table(run).summary()]
    res = [resolution_check(M, p) for p in range(M.n + 1)]
    out.append({"name": "resolution", "checked": len(res),
                "ok": all(r["ok"] for r in res),
                "violations": ["p=%d %s" % (r["p"], sorted(k for k, v in r["positions"].items()
                                                           if not v))
                               for r in res if not r["ok"]]})
    fh = [p for p in range(M.n) if not framing_hyperplane_check(M, p)]
    out.append({"name": "framing_hyperplane", "checked": M.n, "ok": not fh,
                "violations": ["p=%d" % p for p in fh]})
    hs = []
    for i in range(M.n + 1):
        X, T = hyperplane_section(M, i)
        if X.weights != T.weights:
            hs.append("i=%d" % i)
    out.append({"name": "hyperplane_section", "checked": M.n + 1, "ok": not hs,
                "violations": hs})
    return out


def _expectations(report, expect):
    out = []
    got_all = report.to_dict()
    for key in sorted(expect):
        want = expect[key]
        if key == "cycles":
            got = {c["k"]: c["weights"] for c in _cycles_payload(report._run)}
            for c in want:
                g = got.get(c["k"])
                out.append({"key": "cycles[%d]" % c["k"], "want": c["weights"], "got": g,
                            "ok": _norm(g) == _norm(c["weights"])})
            continue
        if key not in got_all:
            raise InputError("unknown expectation key %r" % key)
        got = got_all[key]
        out.append({"key": key, "want": want, "got": got, "ok": _norm(got) == _norm(want)})
    return out


def _norm(x):
    return json.loads(json.dumps(x))


def verify(source, perm, config=None, expect=None):
    """Compute beta_fix, the intersection degree and the Lefschetz sum."""
    config = config or VerifyConfig()
    t0 = time.perf_counter()
    M = resolve_matroid(source, config)
    if isinstance(perm, dict):
        perm = perm_from_doc(perm)
    psi = automorphism(M, perm)
    K = fixed_flat_lattice(M, psi)
    b = beta(K)
    run = compute_intersection(M, psi, check_linearity=not config.fast)
    traces = per_p_traces(M, psi)
    L = lefschetz_sum(M, psi, traces)
    report = VerificationReport(
        matroid=M.name, perm=list(psi.perm), n=M.n, beta_fix=b,
        intersection_degree=run.degree, lefschetz_sum=L,
        per_p_traces=[list(t) for t in traces])
    if not config.fast:
        report.structural_validations = _structural(M, psi, run)
    if config.dump_cycles:
        report.cycles = _cycles_payload(run)
    report._run = run
    if expect:
        report.expectations = _expectations(report, expect)
    report.elapsed_ms = round((time.perf_counter() - t0) * 1000, 1)
    return report

