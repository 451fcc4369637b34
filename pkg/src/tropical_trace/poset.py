"""Finite lattices with an arbitrary integer rank function.

Möbius functions, the generalized beta invariant and the identities relating
them. Elements are addressed by index; ``labels`` keeps whatever the caller
used to build the lattice (flats as bitmasks, usually).
"""

from dataclasses import dataclass, field

from .subsets import popcount


@dataclass(eq=False)
class RankedLattice:
    labels: list
    up: list  # up[a]: bitset of indices b with a <= b
    meet: list
    join: list
    rank: list
    bottom: int
    top: int
    _mu: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.labels)

    @property
    def n(self):
        return self.rank[self.top] - self.rank[self.bottom] - 1

    def leq(self, a, b):
        return (self.up[a] >> b) & 1 == 1

    def above(self, a):
        """Indices b >= a, in a linear extension of the order."""
        return [b for b in self.order if self.leq(a, b)]

    def index(self, label):
        return self._index[label]

    def __post_init__(self):
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        # linear extension: by size of down-set
        down = [0] * len(self.labels)
        for a in range(len(self.labels)):
            for b in range(len(self.labels)):
                if self.leq(b, a):
                    down[a] += 1
        self.order = sorted(range(len(self.labels)), key=lambda a: (down[a], a))

    # -- construction -----------------------------------------------------

    @classmethod
    def from_poset(cls, labels, leq, rank):
        """Build from an explicit order relation; meet and join by brute force.

        Raises ValueError if the poset is not a lattice.
        """
        k = len(labels)
        up = [0] * k
        for a in range(k):
            for b in range(k):
                if leq(labels[a], labels[b]):
                    up[a] |= 1 << b
        for a in range(k):
            for b in range(k):
                if a != b and (up[a] >> b) & 1 and (up[b] >> a) & 1:
                    raise ValueError("relation is not antisymmetric")
        meet = [[0] * k for _ in range(k)]
        join = [[0] * k for _ in range(k)]
        for a in range(k):
            for b in range(a, k):
                common_up = up[a] & up[b]
                common_down = [c for c in range(k) if (up[c] >> a) & 1 and (up[c] >> b) & 1]
                j = _least(common_up, up)
                m = _greatest(common_down, up)
                if j is None or m is None:
                    raise ValueError("not a lattice: %r, %r" % (labels[a], labels[b]))
                join[a][b] = join[b][a] = j
                meet[a][b] = meet[b][a] = m
        bottom = _least((1 << k) - 1, up)
        top = _greatest(list(range(k)), up)
        if bottom is None or top is None:
            raise ValueError("not a lattice: no bottom or top")
        return cls(list(labels), up, meet, join, [rank(lab) for lab in labels], bottom, top)

    @classmethod
    def from_closure_system(cls, masks, rank, join_fn=None):
        """Build from an intersection-closed family of bitmasks.

        The family must contain its own intersection (the bottom) and the
        union of everything (the top). Join is the smallest member above the
        union, computed by ``join_fn(s, t)`` if given, else by brute force.
        """
        masks = sorted(set(masks), key=lambda s: (popcount(s), s))
        k = len(masks)
        index = {s: i for i, s in enumerate(masks)}
        up = [0] * k
        for a, s in enumerate(masks):
            for b, t in enumerate(masks):
                if s & t == s:
                    up[a] |= 1 << b
        meet = [[0] * k for _ in range(k)]
        join = [[0] * k for _ in range(k)]
        for a, s in enumerate(masks):
            for b in range(a, k):
                t = masks[b]
                m = s & t
                if m not in index:
                    raise ValueError("family not closed under intersection")
                meet[a][b] = meet[b][a] = index[m]
                if join_fn is not None:
                    j = join_fn(s, t)
                else:
                    u = s | t
                    cands = [c for c in masks if c & u == u]
                    if not cands:
                        raise ValueError("family has no member above a union")
                    j = cands[0]
                    for c in cands[1:]:
                        j &= c
                if j not in index:
                    raise ValueError("family not closed under intersection")
                join[a][b] = join[b][a] = index[j]
        everything = 0
        for s in masks:
            everything |= s
        bottom_mask = masks[0]
        for s in masks:
            bottom_mask &= s
        if bottom_mask not in index or everything not in index:
            raise ValueError("family lacks bottom or top")
        return cls(masks, up, meet, join, [rank(s) for s in masks],
                   index[bottom_mask], index[everything])

    def with_rank(self, rank):
        """Same lattice, different rank function (given on labels)."""
        return RankedLattice(self.labels, self.up, self.meet, self.join,
                             [rank(lab) for lab in self.labels], self.bottom, self.top)

    def interval(self, a, b):
        """The interval [a, b] as a lattice with the restricted rank."""
        idx = [c for c in range(len(self)) if self.leq(a, c) and self.leq(c, b)]
        pos = {c: i for i, c in enumerate(idx)}
        up = []
        for c in idx:
            bits = 0
            for d in idx:
                if self.leq(c, d):
                    bits |= 1 << pos[d]
            up.append(bits)
        meet = [[pos[self.meet[c][d]] for d in idx] for c in idx]
        join = [[pos[self.join[c][d]] for d in idx] for c in idx]
        return RankedLattice([self.labels[c] for c in idx], up, meet, join,
                             [self.rank[c] for c in idx], pos[a], pos[b])

    def check_lattice(self):
        """Assert meet/join tables are glb/lub for the order."""
        k = len(self)
        for a in range(k):
            for b in range(k):
                m, j = self.meet[a][b], self.join[a][b]
                assert self.leq(m, a) and self.leq(m, b)
                assert self.leq(a, j) and self.leq(b, j)
                for c in range(k):
                    if self.leq(c, a) and self.leq(c, b):
                        assert self.leq(c, m)
                    if self.leq(a, c) and self.leq(b, c):
                        assert self.leq(j, c)
        return True


def _least(bits, up):
    # minimum of the index set encoded by ``bits``
    cands = [i for i in range(bits.bit_length()) if (bits >> i) & 1]
    for c in cands:
        if all((up[c] >> d) & 1 for d in cands):
            return c
    return None


def _greatest(cands, up):
    for c in cands:
        if all((up[d] >> c) & 1 for d in cands):
            return c
    return None


# -- Möbius function --------------------------------------------------------


def mobius_row(L, a):
    """Dict b -> mu(a, b) for all b >= a (memoized on the lattice)."""
    row = L._mu.get(a)
    if row is None:
        row = {}
        ups = L.above(a)
        for b in ups:
            if b == a:
                row[b] = 1
            else:
                row[b] = -sum(row[c] for c in ups if c != b and L.leq(c, b) and c in row)
        L._mu[a] = row
    return row


def mobius(L, a, b):
    if not L.leq(a, b):
        raise ValueError("mobius(a, b) needs a <= b")
    return mobius_row(L, a)[b]


def mobius_via_chains(L, a, b):
    """mu(a, b) as the signed count of chains in the open interval (a, b)."""
    if a == b or not L.leq(a, b):
        raise ValueError("mobius_via_chains needs a < b")
    inside = [c for c in L.order if c not in (a, b) and L.leq(a, c) and L.leq(c, b)]

    total = 0
    # chains c_1 < ... < c_j inside (a, b); the empty chain counts with j = 0
    stack = [(a, 0)]
    while stack:
        last, length = stack.pop()
        total += (-1) ** (length + 1)
        for c in inside:
            if c != last and L.leq(last, c):
                stack.append((c, length + 1))
    return total


# -- beta invariant ---------------------------------------------------------


def beta(L):
    row = mobius_row(L, L.bottom)
    s = sum(mu * L.rank[F] for F, mu in row.items())
    return (-1) ** (L.n + 1) * s


def beta_interval(L, F):
    """beta([F, top]) with the restricted rank function."""
    row = mobius_row(L, F)
    s = sum(mu * L.rank[G] for G, mu in row.items())
    return (-1) ** (L.rank[L.top] - L.rank[F]) * s


def check_mobius_inversion(L):
    """rk(F) = sum_{G >= F} (-1)^{rk(top) - rk(G)} beta(G) for every F."""
    betas = [beta_interval(L, G) for G in range(len(L))]
    rtop = L.rank[L.top]
    for F in range(len(L)):
        s = sum((-1) ** (rtop - L.rank[G]) * betas[G] for G in L.above(F))
        if s != L.rank[F]:
            return False
    return True


def check_recursive_beta(L, G):
    """The recursive beta identity at a fixed element G.

    Checks the unrearranged form

        rk bottom - rk G = sum_{F not >= G} (-1)^{rk top - rk F} beta(F)

    and, when G != bottom, also the form with the bottom term moved left:

        (-1)^n beta(L) = (rk G - rk bottom)
                         - sum_{bottom != F, F not >= G} (-1)^{rk top - rk F - 1} beta(F)

    At G = bottom nothing lies outside [G, top], so only the first form applies.
    """
    rtop = L.rank[L.top]
    outside = [F for F in range(len(L)) if not L.leq(G, F)]
    total = sum((-1) ** (rtop - L.rank[F]) * beta_interval(L, F) for F in outside)
    ok = L.rank[L.bottom] - L.rank[G] == total
    if G != L.bottom:
        s = sum((-1) ** (rtop - L.rank[F] - 1) * beta_interval(L, F)
                for F in outside if F != L.bottom)
        ok = ok and (-1) ** L.n * beta(L) == (L.rank[G] - L.rank[L.bottom]) - s
    return ok


def sublattice_mobius_check(L, K, cl):
    """Möbius function and beta of a sublattice K through the closure cl.

    ``cl`` maps an index of L to the index in K of the smallest K-element
    above it. K's labels must be a subset of L's labels with the same bottom
    and top. Checks

        mu_K(bottom, G) = sum_{F in L, cl(F) = G} mu_L(bottom, F)
        beta(K) = (-1)^{n+1} sum_{F in L} mu_L(bottom, F) rk(cl(F))
    """
    if L.labels[L.bottom] != K.labels[K.bottom] or L.labels[L.top] != K.labels[K.top]:
        raise ValueError("K must share bottom and top with L")
    for F in range(len(L)):
        G = cl(F)
        if not L.leq(F, L.index(K.labels[G])):
            raise ValueError("cl(F) is not above F")
        if F in [L.index(lab) for lab in K.labels] and K.labels[G] != L.labels[F]:
            raise ValueError("cl moves an element of K")
    muL = mobius_row(L, L.bottom)
    muK = mobius_row(K, K.bottom)
    pushed = {G: 0 for G in range(len(K))}
    for F, mu in muL.items():
        pushed[cl(F)] += mu
    if any(pushed[G] != muK.get(G, 0) for G in range(len(K))):
        return False
    alt = (-1) ** (K.n + 1) * sum(mu * K.rank[cl(F)] for F, mu in muL.items())
    return alt == beta(K)
