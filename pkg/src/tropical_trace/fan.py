"""Weighted subfans of the permutahedral fan and divisors of PL functions.

A cone is a chain of proper nonempty subsets F_1 > F_2 > ... > F_l, stored
as a tuple of bitmasks in decreasing order. Points live in the projective
space R^E / R1, identified with R^N by setting x_0 = 0.
"""

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import ConsistencyError
from .subsets import elements, fmt, full_mask

LINEARITY_SAMPLES = 16
LINEARITY_SEED = 20240601


def dehomogenize(S, ground_size):
    """Indicator vector of S in R^N (coordinate 0 dropped after shifting x_0 to 0)."""
    shift = S & 1
    return tuple(((S >> i) & 1) - shift for i in range(1, ground_size))


def is_chain(chain, ground_size):
    E = full_mask(ground_size)
    prev = E
    for F in chain:
        if F == 0 or F == E or F & prev != F or F == prev:
            return False
        prev = F
    return True


def chain_key(chain):
    return tuple(tuple(elements(F)) for F in chain)


def chain_str(chain):
    return " > ".join(fmt(F) for F in chain) if chain else "()"


class PLFunction:
    """Piecewise linear function on the permutahedral fan, given by values f(S).

    ``values`` is a callable on bitmasks and must be defined on E as well.
    The function is linear along R1 with slope f(E); ``at`` returns the
    value of the descended function f - f(E) x_0, which is what lives on
    R^E / R1. Subtracting a globally linear function leaves divisors
    unchanged.
    """

    def __init__(self, ground_size, values, name=""):
        self.ground_size = ground_size
        self._values = values
        self._at = {}
        self.name = name

    def value(self, S):
        return self._values(S)

    @property
    def top_value(self):
        return self._values(full_mask(self.ground_size))

    def at(self, S):
        v = self._at.get(S)
        if v is None:
            v = self._values(S) - (self.top_value if S & 1 else 0)
            self._at[S] = v
        return v

    def __call__(self, x):
        return eval_pl(self, x)

    def __repr__(self):
        return "PLFunction(%s)" % (self.name or "?")


def level_decomposition(x):
    """Write a point of R^N (x_0 = 0 implicit) as sum c_j v_{S_j}, c_j > 0.

    Returns the list of (c_j, S_j) along a chain of proper subsets, for the
    representative whose minimal coordinate is 0.
    """
    y = (0,) + tuple(x)
    levels = sorted(set(y), reverse=True)
    out = []
    S = 0
    for a, b in zip(levels, levels[1:]):
        for i, yi in enumerate(y):
            if yi == a:
                S |= 1 << i
        out.append((a - b, S))
    return out


def eval_pl(f, x):
    return sum((c * f.at(S) for c, S in level_decomposition(x)), 0)


def gap_sequence(chain, M):
    """r_i = rk(F_i) - rk(F_{i+1}) - 1 with F_0 = E and F_{l+1} = empty."""
    for F in chain:
        if not M.is_flat(F):
            raise ValueError("chain link %s is not a flat" % fmt(F))
    full = [M.E] + list(chain) + [0]
    return tuple(M.rank(a) - M.rank(b) - 1 for a, b in zip(full, full[1:]))


@dataclass(eq=False)
class WeightedFan:
    ground_size: int
    dim: int
    weights: dict = field(default_factory=dict)

    def __post_init__(self):
        for chain, w in self.weights.items():
            if len(chain) != self.dim:
                raise ValueError("cone %s has wrong dimension" % chain_str(chain))
            if not is_chain(chain, self.ground_size):
                raise ValueError("%s is not a chain of proper subsets" % chain_str(chain))
            if w == 0:
                raise ValueError("zero weights are not stored")

    def facets(self):
        return sorted(self.weights, key=chain_key)

    def __len__(self):
        return len(self.weights)

    def scaled(self, m):
        return WeightedFan(self.ground_size, self.dim,
                           {c: m * w for c, w in self.weights.items()} if m else {})

    def faces(self):
        """Codimension-one faces with their adjacent facets.

        Returns tau -> list of (filling S, facet weight), tau sorted by key.
        """
        adj = defaultdict(list)
        for chain in self.facets():
            w = self.weights[chain]
            for j in range(len(chain)):
                tau = chain[:j] + chain[j + 1:]
                adj[tau].append((chain[j], w))
        return dict(sorted(adj.items(), key=lambda kv: chain_key(kv[0])))

    def dump(self):
        """One line per cone, in a stable order: links then weight."""
        lines = []
        for chain in self.facets():
            links = " ".join("[" + ",".join(map(str, elements(F))) + "]" for F in chain)
            lines.append("%s\t%d" % (links or "[]", self.weights[chain]))
        return "\n".join(lines)


def _span_coefficients(tau, fillings, ground_size):
    """Express c = sum w v_S (over the fillings) in the span of tau mod R1.

    Returns the coefficients a_i with c = sum a_i v_{F_i} + b v_E, or None
    if c is not in that span. Works in homogeneous integer coordinates: c
    lies in the span iff it is constant on every layer F_i \\ F_{i+1}.
    """
    c = [0] * ground_size
    for S, w in fillings:
        for e in elements(S):
            c[e] += w
    full = [full_mask(ground_size)] + list(tau) + [0]
    layer_vals = []
    for a, b in zip(full, full[1:]):
        vals = {c[e] for e in elements(a & ~b)}
        if len(vals) != 1:
            return None
        layer_vals.append(vals.pop())
    return [layer_vals[i] - layer_vals[i - 1] for i in range(1, len(layer_vals))]


def balancing_check(X):
    """(True, None) if X is balanced, else (False, offending face)."""
    for tau, fillings in X.faces().items():
        if _span_coefficients(tau, fillings, X.ground_size) is None:
            return False, tau
    return True, None


def linearity_guard(f, chain, samples=LINEARITY_SAMPLES, seed=LINEARITY_SEED):
    """Sampled check that f agrees with its linear extension on the cone.

    Evaluates at pairwise sums of generators, at their total, and at
    ``samples`` random positive rational combinations.
    """
    m = f.ground_size
    gens = [dehomogenize(F, m) for F in chain]
    vals = [f.at(F) for F in chain]
    if not gens:
        return True
    rng = random.Random(seed)
    combos = []
    for i, j in combinations(range(len(gens)), 2):
        combos.append([1 if k in (i, j) else 0 for k in range(len(gens))])
    combos.append([1] * len(gens))
    for _ in range(samples):
        combos.append([Fraction(rng.randint(1, 97), rng.randint(1, 13)) for _ in gens])
    for coef in combos:
        x = [sum(a * g[t] for a, g in zip(coef, gens)) for t in range(m - 1)]
        if f(x) != sum(a * v for a, v in zip(coef, vals)):
            return False
    return True


def divisor(f, X, check_linearity=True, check_balancing=True):
    """The divisor f . X as a weighted fan of dimension dim X - 1.

    omega(tau) = sum_{sigma > tau} omega(sigma) f(S_sigma) - f_tau(c), where
    c = sum omega(sigma) v_{S_sigma} and f_tau is the linear extension of f
    from the generators of tau.
    """
    if X.dim == 0:
        raise ValueError("cannot cut a zero-dimensional fan")
    if check_linearity:
        for chain in X.facets():
            if not linearity_guard(f, chain):
                raise ConsistencyError("function not facet-linear on %s" % chain_str(chain))
    out = {}
    for tau, fillings in X.faces().items():
        coeffs = _span_coefficients(tau, fillings, X.ground_size)
        if coeffs is None:
            raise ConsistencyError("input fan not balanced at %s" % chain_str(tau))
        w = sum(wt * f.at(S) for S, wt in fillings)
        w -= sum(a * f.at(F) for a, F in zip(coeffs, tau))
        if w != int(w):
            raise ConsistencyError("non-integer weight at %s" % chain_str(tau))
        if w:
            out[tau] = int(w)
    Y = WeightedFan(X.ground_size, X.dim - 1, out)
    if check_balancing:
        ok, tau = balancing_check(Y)
        if not ok:
            raise ConsistencyError("divisor not balanced at %s" % chain_str(tau))
    return Y


def degree(X):
    if X.dim != 0:
        raise ValueError("degree needs a zero-dimensional fan")
    return X.weights.get((), 0)


def complete_flags(M):
    """Chains of flats with one flat in each rank n, n-1, ..., 1."""
    below = {}
    for r in range(2, M.rk):
        for F in M.flats_by_rank[r]:
            below[F] = [G for G in M.flats_by_rank[r - 1] if G & F == G]
    out = []

    def extend(chain):
        if M.rank(chain[-1]) == 1:
            out.append(tuple(chain))
            return
        for G in below[chain[-1]]:
            extend(chain + [G])

    if M.rk <= 1:
        return [()]
    for F in M.flats_by_rank[M.rk - 1]:
        extend([F])
    return out


def matroid_fan(M):
    """The fine subdivision of the projective matroid fan, unit weights."""
    return WeightedFan(M.ground_size, M.n, {c: 1 for c in complete_flags(M)})


def hyperplane_section(M, i, check=True):
    """Cut matroid_fan(M) by g'_1, ..., g'_{n-i} of the chain U_{1,m} < M.

    Returns (cut fan, matroid_fan of the truncation M^{<=i}) so callers can
    compare the two.
    """
    from .matroid import generic_chain, truncation, uniform

    if not 0 <= i <= M.n:
        raise ValueError("i=%d out of range 0..%d" % (i, M.n))
    chain = generic_chain(uniform(1, M.ground_size), M)
    X = matroid_fan(M)
    for g in chain.functions[:M.n - i]:
        X = divisor(g, X, check_linearity=check, check_balancing=check)
    return X, matroid_fan(truncation(M, i))
