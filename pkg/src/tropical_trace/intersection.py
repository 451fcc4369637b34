"""The intersection side: deg(Gamma_psi . Delta) = deg(f_n ... f_1 . Sigma_M).

The diagonal of Sigma_M x Sigma_M is cut out by functions g_1..g_n on the
permutahedral fan of E u_0 E (two copies of E glued at 0). Pulling them back
along the graph x -> (x, Psi x) gives f_1..f_n; intersecting them one at a
time with Sigma_M yields the cycles X_0, ..., X_n.

Elements of E u_0 E are indexed 0 (shared), 1..N (first copy) and
N+1..2N (second copy).
"""

from collections import defaultdict
from dataclasses import dataclass, field

from .fan import (PLFunction, WeightedFan, chain_str, degree, dehomogenize, divisor,
                  eval_pl, gap_sequence, linearity_guard, matroid_fan, balancing_check)
from .framing import induced_map
from .matroid import contract_automorphism, contraction, fixed_flat_lattice, psi_closure
from .poset import beta
from .subsets import elements, fmt


def split_pair(mask, N):
    """Bitmask on E u_0 E -> (F, G) with F, G subsets of E."""
    zero = mask & 1
    low = (mask >> 1) & ((1 << N) - 1)
    high = mask >> (N + 1)
    return (low << 1) | zero, (high << 1) | zero


def join_pair(F, G, N):
    if (F & 1) != (G & 1):
        raise ValueError("invalid pair: 0 must lie in both or neither")
    return (F & 1) | ((F >> 1) << 1) | ((G >> 1) << (N + 1))


def g_value(M, i, F, G):
    """Value of the i-th diagonal-cutting function at the pair (F, G)."""
    if (F & 1) != (G & 1):
        raise ValueError("invalid pair: 0 must lie in both or neither")
    n = M.n
    if not 1 <= i <= n:
        raise ValueError("function index %d out of range 1..%d" % (i, n))
    lhs = M.rank(F) + M.rank(G)
    rhs = M.rank(F | G) + n + 1 - i
    if not F & 1:
        return -1 if lhs >= rhs else 0
    return 1 if lhs <= rhs else 0


def diagonal_function(M, i):
    N = M.ground_size - 1
    return PLFunction(2 * N + 1, lambda mask: g_value(M, i, *split_pair(mask, N)),
                      name="g_%d" % i)


class Pullback:
    """f_k = Gamma^* g_k, evaluated through the graph map on arbitrary points."""

    def __init__(self, M, psi, k):
        self.M = M
        self.psi = psi
        self.k = k
        self.ground_size = M.ground_size
        self.g = diagonal_function(M, k)
        self.A = induced_map(psi)
        self._at = {}
        self.name = "f_%d" % k

    def __call__(self, x):
        x = list(x)
        Ax = [sum(a * xi for a, xi in zip(row, x)) for row in self.A]
        return eval_pl(self.g, x + Ax)

    def at(self, S):
        v = self._at.get(S)
        if v is None:
            v = self._at[S] = self(dehomogenize(S, self.ground_size))
        return v

    def __repr__(self):
        return "Pullback(%s)" % self.name


def f_value_generic(M, psi, k, S):
    if not 1 <= k <= M.n:
        raise ValueError("function index out of range")
    if S == 0 or S == M.E:
        raise ValueError("S must be a proper nonempty subset")
    return Pullback(M, psi, k).at(S)


def f_value_closed(M, psi, k, S):
    """Case formula for f_k on a subset S (proper, nonempty)."""
    if S == 0 or S == M.E:
        raise ValueError("S must be a proper nonempty subset")
    n = M.n
    T = psi(S)
    r, ru = M.rank(S), M.rank(S | T)
    crit = n - k + 1
    in_s, in_t = S & 1, T & 1
    if not in_s and not in_t:
        return -1 if 2 * r >= ru + crit else 0
    if in_s and in_t:
        return 1 if 2 * r <= ru + crit else 0
    return 1 if r <= crit else 0


@dataclass(eq=False)
class IntersectionRun:
    matroid: object
    automorphism: object
    cycles: list
    functions: list
    degree: int


def compute_intersection(M, psi, check_linearity=True, check_balancing=True):
    X = matroid_fan(M)
    if check_balancing:
        ok, tau = balancing_check(X)
        assert ok, "matroid fan unbalanced at %s" % chain_str(tau)
    cycles = [X]
    functions = []
    for k in range(1, M.n + 1):
        f = Pullback(M, psi, k)
        X = divisor(f, X, check_linearity=check_linearity, check_balancing=check_balancing)
        cycles.append(X)
        functions.append(f)
    return IntersectionRun(M, psi, cycles, functions, degree(X))


def trace_dump(run):
    parts = []
    for k, X in enumerate(run.cycles):
        parts.append("# X_%d dim=%d facets=%d" % (k, X.dim, len(X)))
        for chain in X.facets():
            gap = ",".join(map(str, gap_sequence(chain, run.matroid)))
            links = " ".join("[" + ",".join(map(str, elements(F))) + "]" for F in chain)
            parts.append("%s\tgap=(%s)\t%d" % (links or "[]", gap, X.weights[chain]))
    return "\n".join(parts)


# -- validators -------------------------------------------------------------


@dataclass
class Validation:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def summary(self):
        return {"name": self.name, "checked": self.checked, "ok": self.ok,
                "violations": self.violations[:20]}


def _first_link(chain):
    # the trivial flag E > empty has F_1 = empty
    return chain[0] if chain else 0


def _second_link(chain):
    return chain[1] if len(chain) > 1 else 0


def _independent_pair_in(M, psi, G, H):
    """0 and psi^{-1}(0) lie in G and are independent in G/H."""
    z = psi.inverse.perm[0]
    if not (G & 1) or not (G >> z) & 1:
        return False
    return M.rank(H | 1 | (1 << z)) == M.rank(H) + 2


def gap_form(gap, k):
    """'A' for (r, s, 0, ..., 0) with r + s = k, ('B', j) for a single
    trailing 1 at position j >= 2 with r + s = k - 1, else None."""
    head = gap[0] + (gap[1] if len(gap) > 1 else 0)
    tail = gap[2:]
    if all(t == 0 for t in tail) and head == k:
        return "A"
    nonzero = [j for j, t in enumerate(tail) if t]
    if len(nonzero) == 1 and tail[nonzero[0]] == 1 and head == k - 1:
        return ("B", nonzero[0] + 2)
    return None


def validate_Xk_structure(run):
    M, psi = run.matroid, run.automorphism
    v = Validation("Xk_structure")
    for k, X in enumerate(run.cycles):
        ok, tau = balancing_check(X)
        if not ok:
            v.violations.append("X_%d unbalanced at %s" % (k, chain_str(tau)))
        if X.dim != M.n - k:
            v.violations.append("X_%d has dimension %d" % (k, X.dim))
        for chain in X.facets():
            v.checked += 1
            if not all(F in M.flat_set for F in chain):
                v.violations.append("X_%d facet %s has a non-flat link" % (k, chain_str(chain)))
                continue
            gap = gap_sequence(chain, M)
            form = gap_form(gap, k)
            where = "X_%d facet %s gap %s" % (k, chain_str(chain), gap)
            if form is None:
                v.violations.append(where + ": not of form (A) or (B)")
                continue
            F1, F2 = _first_link(chain), _second_link(chain)
            s = gap[1] if len(gap) > 1 else 0
            touches = bool((F1 | psi(F1)) & 1)
            fixed = psi(F1) == F1
            if form == "A":
                if not touches and s >= 1 and not fixed:
                    v.violations.append(where + ": (c) needs F_1 fixed")
                if touches and s >= 1:
                    if not _independent_pair_in(M, psi, F1, F2):
                        v.violations.append(where + ": (d) 0, psi^-1(0) dependent in F_1/F_2")
                    if s >= 2 and not fixed:
                        v.violations.append(where + ": (d) needs F_1 fixed")
            else:
                j = form[1]
                full = [M.E] + list(chain) + [0]
                G, H = full[j], full[j + 1]
                z = psi.inverse.perm[0]
                if not _independent_pair_in(M, psi, G, H):
                    v.violations.append(where + ": (e) 0, psi^-1(0) dependent in G/H")
                elif G != M.closure(H | 1 | (1 << z)):
                    v.violations.append(where + ": (e) G is not cl(H + 0 + psi^-1(0))")
                if s >= 1 and not fixed:
                    v.violations.append(where + ": (e) needs F_1 fixed")
            if k < M.n and not linearity_guard(run.functions[k], chain):
                v.violations.append(where + ": f_%d not linear" % (k + 1))
    return v


def fixed_contraction_beta(M, psi, F):
    """beta(Fix(M/F)) on the contracted matroid with the induced automorphism."""
    MF = contraction(M, F)
    return beta(fixed_flat_lattice(MF, contract_automorphism(M, psi, F)))


def validate_facet_weights(run):
    M, psi = run.matroid, run.automorphism
    n = M.n
    v = Validation("facet_weights")
    for k, X in enumerate(run.cycles):
        for chain in X.facets():
            w = X.weights[chain]
            gap = gap_sequence(chain, M)
            F1 = _first_link(chain)
            touches = bool((F1 | psi(F1)) & 1)
            fixed = psi(F1) == F1
            where = "X_%d facet %s weight %d" % (k, chain_str(chain), w)
            if gap[0] == k and all(t == 0 for t in gap[1:]) and touches:
                v.checked += 1
                if w != 1:
                    v.violations.append(where + ": (a) expected 1")
            # (k-1, 0, ..., 0, 1, 0, ..., 0): form (B) with s = 0
            if isinstance(gap_form(gap, k), tuple) and gap[0] == k - 1 and not fixed:
                v.checked += 1
                expect = M.rank(psi_closure(M, psi, F1)) - M.rank(F1)
                if w != expect:
                    v.violations.append(where + ": (b) expected %d" % expect)
            if not F1 & 1 and fixed:
                v.checked += 1
                expect = (-1) ** (n - M.rank(F1)) * fixed_contraction_beta(M, psi, F1)
                if w != expect:
                    v.violations.append(where + ": (c) expected %d" % expect)
    return v


# -- weight table (per-gap contributions in partition situations) ----------


def _table_cells():
    """Cells of the per-gap weight table.

    Each cell: (label, q-column, condition, expected f(G), filling pattern,
    expected f(H), contribution factor), with G=psi(G) subcases split out.
    Conditions take (rk G, n - kk, fixed G, G == E, filling ranks of
    0-free fillings, all filling ranks). Filling pattern 'touch' means 1 on
    fillings meeting {0, psi^-1(0)} and 0 elsewhere; 'zero' means all 0.
    """
    return [
        ("row1 q=0", "0", lambda c: c["rG"] < c["c"], 0, "zero", 0, 0),
        ("row1 q=1", "1", lambda c: c["rG"] <= c["c"], 1, "touch", 0, 0),
        ("row1 q=2", "2", lambda c: c["rG"] <= c["c"], 1, "touch", 0, 1),
        ("row1 q=m", "m", lambda c: c["rG"] <= c["c"], 1, "touch", 1, 0),
        ("row2 q=0 G=psiG", "0", lambda c: c["rG"] == c["c"] and c["fixed"], -1, "zero", 0, 1),
        ("row2 q=0 G!=psiG", "0", lambda c: c["rG"] == c["c"] and not c["fixed"], 0, "zero", 0, 0),
        ("row2 q=1 G=psiG", "1",
         lambda c: c["rG"] == c["c"] + 1 and c["fixed"] and all(r < c["c"] for r in c["free_ranks"]),
         0, "touch", 0, 1),
        ("row2 q=1 G!=psiG", "1",
         lambda c: c["rG"] == c["c"] + 1 and not c["fixed"] and all(r < c["c"] for r in c["free_ranks"]),
         1, "touch", 0, 0),
        ("row2 q=m G=psiG", "m", lambda c: c["rG"] == c["c"] + 1 and c["fixed"], 0, "touch", 1, 1),
        ("row2 q=m G!=psiG", "m", lambda c: c["rG"] == c["c"] + 1 and not c["fixed"], 1, "touch", 1, 0),
        ("row3 q=0", "0", lambda c: c["fixed"] and all(r == c["c"] - 1 for r in c["ranks"]),
         -1, "zero", 0, 1),
        ("row3 q=m", "m", lambda c: c["isE"] and all(r == c["c"] for r in c["ranks"]),
         0, "touch", 1, 1),
    ]


def validate_weight_table(run):
    """Check the per-gap weight rules on every partition-type gap met while
    computing f_{kk+1} . X_kk.

    Only gaps whose fillings F^i \\ H partition G \\ H and whose data
    matches a table cell are checked; the table never feeds the computation.
    """
    M, psi = run.matroid, run.automorphism
    n = M.n
    z = psi.inverse.perm[0]
    v = Validation("weight_table")
    cells = _table_cells()
    for kk in range(n):
        X = run.cycles[kk]
        f = run.functions[kk]
        for tau, fillings in X.faces().items():
            full = [M.E] + list(tau) + [0]
            by_gap = defaultdict(list)
            for S, w in fillings:
                for j in range(len(full) - 1):
                    if full[j + 1] & S == full[j + 1] and S & full[j] == S:
                        by_gap[j].append((S, w))
                        break
            for j, fl in sorted(by_gap.items()):
                G, H = full[j], full[j + 1]
                m = len(fl)
                parts = [S & ~H for S, _ in fl]
                union = 0
                disjoint = True
                for p in parts:
                    if union & p:
                        disjoint = False
                    union |= p
                if m < 2 or not disjoint or union != G & ~H:
                    continue
                weights = {w for _, w in fl}
                where = "kk=%d tau=%s gap %s>%s" % (kk, chain_str(tau), fmt(G), fmt(H))
                if len(weights) != 1:
                    v.violations.append(where + ": partition gap with unequal weights")
                    continue
                omega = weights.pop()
                touch = [bool(S & 1) or bool((S >> z) & 1) for S, _ in fl]
                q = sum(touch)
                if (H & 1) or (H >> z) & 1:
                    col = "m"
                elif q in (0, 1, 2):
                    col = str(q)
                else:
                    continue
                ctx = {"rG": M.rank(G), "c": n - kk, "fixed": psi(G) == G, "isE": G == M.E,
                       "ranks": [M.rank(S) for S, _ in fl],
                       "free_ranks": [M.rank(S) for (S, _), t in zip(fl, touch) if not t]}
                fG, fH = f.at(G), f.at(H)
                fF = [f.at(S) for S, _ in fl]
                contrib = omega * (sum(fF) - fG - (m - 1) * fH)
                for label, qc, cond, eG, pattern, eH, factor in cells:
                    if qc != col or not cond(ctx):
                        continue
                    v.checked += 1
                    eF = [int(t) for t in touch] if pattern == "touch" else [0] * m
                    if (fG, fF, fH) != (eG, eF, eH) or contrib != factor * omega:
                        v.violations.append(
                            "%s [%s]: f(G)=%s f(F)=%s f(H)=%s contribution %s, table %s/%s/%s/%s"
                            % (where, label, fG, fF, fH, contrib, eG, eF, eH, factor * omega))
    return v
