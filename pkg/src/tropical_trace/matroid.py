"""Matroids as rank oracles on bitmask subsets, with their lattices of flats."""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .errors import InputError
from .poset import RankedLattice
from .subsets import elements, full_mask, image, mask_of, popcount

MAX_GROUND_SIZE = 21  # N <= 20
MAX_FLATS = 10 ** 5


class Matroid:
    """A matroid on {0, ..., m-1} given by a rank oracle.

    ``rank_fn`` takes a bitmask and returns its rank; values are memoized.
    ``labels`` records original element names when the matroid came from a
    contraction.
    """

    def __init__(self, ground_size, rank_fn, name="", labels=None,
                 max_ground_size=MAX_GROUND_SIZE):
        if ground_size > max_ground_size:
            raise InputError("ground set of size %d exceeds cap %d"
                             % (ground_size, max_ground_size))
        self.ground_size = ground_size
        self._rank_fn = rank_fn
        self._cache = {}
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(range(ground_size))

    def __repr__(self):
        return "Matroid(%s, m=%d, rank=%d)" % (self.name or "?", self.ground_size, self.rk)

    @property
    def E(self):
        return full_mask(self.ground_size)

    def rank(self, S):
        r = self._cache.get(S)
        if r is None:
            r = self._cache[S] = self._rank_fn(S)
        return r

    @cached_property
    def rk(self):
        return self.rank(self.E)

    @property
    def n(self):
        """Dimension of the projective matroid fan: rank - 1."""
        return self.rk - 1

    def closure(self, S):
        r = self.rank(S)
        out = S
        for e in range(self.ground_size):
            if not (S >> e) & 1 and self.rank(S | (1 << e)) == r:
                out |= 1 << e
        return out

    def is_flat(self, S):
        return self.closure(S) == S

    def is_loopless(self):
        return all(self.rank(1 << e) == 1 for e in range(self.ground_size))

    @cached_property
    def flats(self):
        """All flats, sorted by (rank, mask). Breadth-first over covers."""
        start = self.closure(0)
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for F in frontier:
                for e in range(self.ground_size):
                    if not (F >> e) & 1:
                        G = self.closure(F | (1 << e))
                        if G not in seen:
                            seen.add(G)
                            nxt.append(G)
                            if len(seen) > MAX_FLATS:
                                raise InputError("more than %d flats" % MAX_FLATS)
            frontier = nxt
        return sorted(seen, key=lambda F: (self.rank(F), F))

    @cached_property
    def flat_set(self):
        return frozenset(self.flats)

    @cached_property
    def flats_by_rank(self):
        out = [[] for _ in range(self.rk + 1)]
        for F in self.flats:
            out[self.rank(F)].append(F)
        return out

    def check_axioms(self):
        """Exhaustive rank-axiom check.

        Uses the local form of submodularity, r(S+a) + r(S+b) >= r(S+a+b) + r(S),
        which together with unit increase and r(0) = 0 is equivalent to full
        submodularity and monotonicity.
        """
        m = self.ground_size
        if self.rank(0) != 0:
            return False
        for S in range(1 << m):
            r = self.rank(S)
            outside = [e for e in range(m) if not (S >> e) & 1]
            for e in outside:
                if self.rank(S | (1 << e)) - r not in (0, 1):
                    return False
            for a, b in combinations(outside, 2):
                Sa, Sb = S | (1 << a), S | (1 << b)
                if self.rank(Sa) + self.rank(Sb) < self.rank(Sa | Sb) + r:
                    return False
        return True


# -- backends ---------------------------------------------------------------


def uniform(r, m, **kw):
    if not 0 <= r <= m:
        raise InputError("uniform matroid needs 0 <= r <= m")
    return Matroid(m, lambda S: min(popcount(S), r), name="U_%d,%d" % (r, m), **kw)


def boolean(m, **kw):
    M = uniform(m, m, **kw)
    M.name = "B_%d" % m
    return M


def graphic(n_vertices, edges, name="", **kw):
    """Cycle matroid of a multigraph; edge i is element i."""
    edges = [tuple(e) for e in edges]
    for u, v in edges:
        if not (0 <= u < n_vertices and 0 <= v < n_vertices):
            raise InputError("edge (%d, %d) out of range" % (u, v))

    def rank(S):
        parent = list(range(n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        r = 0
        for i in elements(S):
            a, b = find(edges[i][0]), find(edges[i][1])
            if a != b:
                parent[a] = b
                r += 1
        return r

    return Matroid(len(edges), rank, name=name or "graphic", **kw)


def from_bases(m, bases, name="", **kw):
    masks = sorted({mask_of(B) for B in bases})
    if not masks:
        raise InputError("a matroid needs at least one basis")
    if len({popcount(B) for B in masks}) != 1:
        raise InputError("bases of different sizes")
    return Matroid(m, lambda S: max(popcount(S & B) for B in masks),
                   name=name or "bases", **kw)


def from_flats(m, flats_by_rank, name="", **kw):
    """Matroid given by its flats grouped by rank; rank(S) = rank of its closure."""
    ranked = [(r, mask_of(F)) for r, layer in enumerate(flats_by_rank) for F in layer]
    E = full_mask(m)
    if not any(F == E for _, F in ranked):
        raise InputError("flat list must contain the full ground set")

    def rank(S):
        return min(r for r, F in ranked if F & S == S)

    M = Matroid(m, rank, name=name or "flats", **kw)
    listed = {F for _, F in ranked}
    if not all(M.is_flat(F) for F in listed):
        raise InputError("listed sets are not closed under the derived rank")
    return M


# -- automorphisms ----------------------------------------------------------


@dataclass(frozen=True)
class MatroidAutomorphism:
    perm: tuple

    @classmethod
    def identity(cls, m):
        return cls(tuple(range(m)))

    def __call__(self, S):
        return image(S, self.perm)

    @property
    def inverse(self):
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm):
            inv[j] = i
        return MatroidAutomorphism(tuple(inv))


def automorphism(M, perm):
    """Validate a permutation against M's flats; return the automorphism.

    Raises InputError naming a flat whose image is not a flat.
    """
    perm = tuple(int(x) for x in perm)
    if sorted(perm) != list(range(M.ground_size)):
        raise InputError("permutation %r is not a bijection of {0..%d}"
                         % (list(perm), M.ground_size - 1))
    psi = MatroidAutomorphism(perm)
    for F in M.flats:
        if psi(F) not in M.flat_set:
            raise InputError("flat %s maps to non-flat %s"
                             % (elements(F), elements(psi(F))))
    return psi


def is_automorphism(M, perm):
    try:
        automorphism(M, perm)
    except InputError:
        return False
    return True


# -- lattices ---------------------------------------------------------------


def flat_lattice(M):
    if M.closure(0) != 0:
        raise InputError("matroid has loops")
    return RankedLattice.from_closure_system(
        M.flats, M.rank, join_fn=lambda s, t: M.closure(s | t))


def fixed_flats(M, psi):
    return [F for F in M.flats if psi(F) == F]


def fixed_flat_lattice(M, psi):
    """Sublattice of flats fixed by psi, with M's rank restricted to it."""
    fixed = fixed_flats(M, psi)
    fixed_set = set(fixed)
    for F in fixed:
        for G in fixed:
            if F & G not in fixed_set or M.closure(F | G) not in fixed_set:
                raise AssertionError("fixed flats not closed under meet/join")
    return RankedLattice.from_closure_system(
        fixed, M.rank, join_fn=lambda s, t: M.closure(s | t))


def psi_closure(M, psi, F):
    """Smallest psi-fixed flat containing F."""
    out = M.E
    for G in M.flats:
        if G & F == F and psi(G) == G:
            out &= G
    return out


# -- constructions ----------------------------------------------------------


def truncation(M, i):
    """M^{<=i}: flats of M of rank at most i, plus E. Has rank i + 1."""
    if not 0 <= i <= M.rk:
        raise InputError("truncation index %d out of range 0..%d" % (i, M.rk))
    return Matroid(M.ground_size, lambda S: min(M.rank(S), i + 1) if S else 0,
                   name="%s^<=%d" % (M.name, i), labels=M.labels)


def contraction(M, F):
    """M/F on E \\ F, relabeled to 0..m'-1; ``labels`` keeps the old names."""
    if not M.is_flat(F):
        raise InputError("can only contract by a flat")
    keep = [e for e in range(M.ground_size) if not (F >> e) & 1]
    rF = M.rank(F)

    def rank(S):
        lifted = F
        for j in elements(S):
            lifted |= 1 << keep[j]
        return M.rank(lifted) - rF

    return Matroid(len(keep), rank, name="%s/%s" % (M.name, elements(F)),
                   labels=[M.labels[e] for e in keep])


def contract_automorphism(M, psi, F):
    """The automorphism psi induces on M/F (F must be psi-fixed)."""
    if psi(F) != F:
        raise InputError("flat is not fixed by the automorphism")
    keep = [e for e in range(M.ground_size) if not (F >> e) & 1]
    pos = {e: j for j, e in enumerate(keep)}
    return MatroidAutomorphism(tuple(pos[psi.perm[e]] for e in keep))


def diagonal_rank(M, F, G):
    """Rank of (F, G) in the diagonal matroid on E with 0 shared: rk(F | G)."""
    if (F & 1) != (G & 1):
        raise ValueError("invalid pair: 0 must lie in both or neither")
    return M.rank(F | G)


@dataclass(eq=False)
class GenericChain:
    sub: Matroid
    sup: Matroid
    s: int
    intermediates: list
    functions: list  # PLFunction g'_1..g'_s


def is_quotient(sub, sup):
    return sub.ground_size == sup.ground_size and sub.flat_set <= sup.flat_set


def generic_chain(sub, sup):
    """Intermediate matroids and the cutting functions g'_1..g'_s.

    rank_{M_i}(S) = min(rank_sub(S) + i, rank_sup(S));
    g'_i(S) = -1 if rank_sup(S) >= rank_sub(S) + s + 1 - i else 0.
    """
    from .fan import PLFunction

    if not is_quotient(sub, sup):
        raise InputError("sub is not a quotient of sup")
    s = sup.rk - sub.rk

    def intermediate(i):
        return Matroid(sup.ground_size, lambda S: min(sub.rank(S) + i, sup.rank(S)),
                       name="M_%d" % i, labels=sup.labels)

    def g(i):
        return PLFunction(
            sup.ground_size,
            lambda S: -1 if sup.rank(S) >= sub.rank(S) + s + 1 - i else 0,
            name="g'_%d" % i)

    inters = [sub] + [intermediate(i) for i in range(1, s)] + ([sup] if s > 0 else [])
    return GenericChain(sub, sup, s, inters, [g(i) for i in range(1, s + 1)])


def closure_of(M, S):
    return M.closure(S)
