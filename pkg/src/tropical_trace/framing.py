"""Framing groups F_p(Sigma_M) inside the exterior powers of Q^N, and traces.

Exterior vectors are sparse maps from increasing index tuples (0-based
coordinates of R^N, i.e. elements 1..N of E shifted down by one) to
rationals.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConsistencyError
from .fan import dehomogenize
from .linalg import Echelon, rank
from .matroid import fixed_flat_lattice, flat_lattice
from .poset import mobius_row
from .subsets import elements


# -- exterior algebra -------------------------------------------------------


@dataclass(frozen=True)
class ExteriorVector:
    degree: int
    terms: tuple  # sorted ((i_1, ..., i_p), coeff), no zero coefficients

    @classmethod
    def from_dict(cls, degree, d):
        return cls(degree, tuple(sorted((k, v) for k, v in d.items() if v)))

    @classmethod
    def wedge(cls, vectors):
        """v_1 ^ ... ^ v_p for dense vectors."""
        cur = {(): 1}
        for vec in vectors:
            nxt = {}
            for idx, c in cur.items():
                for j, x in enumerate(vec):
                    if not x or j in idx:
                        continue
                    # moving e_j from the right end into sorted position
                    sign = -1 if sum(1 for i in idx if i > j) % 2 else 1
                    key = tuple(sorted(idx + (j,)))
                    nxt[key] = nxt.get(key, 0) + sign * c * x
            cur = {k: v for k, v in nxt.items() if v}
        return cls.from_dict(len(vectors), cur)

    def as_dict(self):
        return dict(self.terms)

    def __add__(self, other):
        d = self.as_dict()
        for k, v in other.terms:
            d[k] = d.get(k, 0) + v
        return ExteriorVector.from_dict(self.degree, d)

    def __bool__(self):
        return bool(self.terms)


def induced_map(psi):
    """N x N integer matrix A with A dehomogenize(S) = dehomogenize(psi(S)).

    Column i-1 is dehomogenize({psi(i)}).
    """
    m = len(psi.perm)
    cols = [dehomogenize(1 << psi.perm[i], m) for i in range(1, m)]
    return [[cols[c][r] for c in range(m - 1)] for r in range(m - 1)]


class WedgePower:
    """Lambda^p A applied term by term; images of basis tuples are cached."""

    def __init__(self, A):
        self.A = A
        self.cols = [tuple(row[j] for row in A) for j in range(len(A))]
        self._cache = {}

    def image_of(self, idx):
        out = self._cache.get(idx)
        if out is None:
            out = self._cache[idx] = ExteriorVector.wedge([self.cols[i] for i in idx]).as_dict()
        return out

    def apply(self, vec):
        """vec: dict tuple -> coeff."""
        out = {}
        for idx, c in vec.items():
            for k, v in self.image_of(idx).items():
                out[k] = out.get(k, 0) + c * v
        return {k: v for k, v in out.items() if v}


# -- chains of flats --------------------------------------------------------


def flat_chains(M, length, max_rank=None):
    """Chains E > F_1 > ... > F_length > empty of proper nonempty flats.

    With max_rank, only chains with rk(F_1) <= max_rank. The empty chain is
    the unique chain of length 0 (of rank 0).
    """
    proper = [F for F in M.flats if F not in (0, M.E)]
    if max_rank is not None:
        proper = [F for F in proper if M.rank(F) <= max_rank]
    out = []

    def extend(chain, remaining):
        if remaining == 0:
            out.append(tuple(chain))
            return
        last = chain[-1] if chain else M.E
        for F in proper:
            if F != last and F & last == F:
                extend(chain + [F], remaining - 1)

    extend([], length)
    return sorted(out, key=lambda c: tuple(tuple(elements(F)) for F in c))


def volume_element(chain, ground_size):
    return ExteriorVector.wedge([dehomogenize(F, ground_size) for F in chain])


# -- framing groups ---------------------------------------------------------


@dataclass(eq=False)
class FramingBasis:
    p: int
    echelon: Echelon
    generator_index: dict = field(default_factory=dict)

    @property
    def dim(self):
        return len(self.echelon)

    @property
    def basis(self):
        return [ExteriorVector.from_dict(self.p, self.echelon.rows[q])
                for q in self.echelon.pivots]


def framing_basis(M, p):
    if not 0 <= p <= M.n:
        raise ValueError("p=%d out of range 0..%d" % (p, M.n))
    ech = Echelon()
    gens = {}
    for chain in flat_chains(M, p):
        V = volume_element(chain, M.ground_size).as_dict()
        gens[chain] = V
        ech.add(V)
    index = {c: ech.coordinates(V) for c, V in gens.items()}
    return FramingBasis(p, ech, index)


def trace_linear(M, psi, p, basis=None, A=None):
    """Trace of Lambda^p Psi restricted to F_p, from the linear map itself."""
    B = basis if basis is not None else framing_basis(M, p)
    W = WedgePower(A if A is not None else induced_map(psi))
    tr = Fraction(0)
    for j, q in enumerate(B.echelon.pivots):
        img = W.apply(B.echelon.rows[q])
        coords = B.echelon.coordinates(img)
        if coords is None:
            raise ConsistencyError("F_%d is not invariant under the induced map" % p)
        tr += coords[j]
    if tr.denominator != 1:
        raise ConsistencyError("non-integer trace %s" % tr)
    return int(tr)


def fixed_chain_counts(M, psi, p):
    """|Fix(C^{<=p}_i)| for i = 0..p: psi-fixed flat chains of length i, rank <= p."""
    return [sum(1 for c in flat_chains(M, i, max_rank=p) if all(psi(F) == F for F in c))
            for i in range(p + 1)]


def trace_chains(M, psi, p, lattice=None):
    """Trace via fixed chains: (-1)^p sum_{F fixed, rk F <= p} mu_psi(empty, F).

    Also evaluates the fixed-chain count form and raises on disagreement.
    """
    K = lattice if lattice is not None else fixed_flat_lattice(M, psi)
    mu = mobius_row(K, K.bottom)
    via_mobius = sum(m for F, m in mu.items() if K.rank[F] <= p)
    counts = fixed_chain_counts(M, psi, p)
    via_counts = sum((-1) ** i * c for i, c in enumerate(counts))
    if via_mobius != via_counts:
        raise ConsistencyError("fixed-chain count %d != Möbius sum %d at p=%d"
                               % (via_counts, via_mobius, p))
    return (-1) ** p * via_mobius


def per_p_traces(M, psi):
    A = induced_map(psi)
    K = fixed_flat_lattice(M, psi)
    out = []
    for p in range(M.n + 1):
        out.append((p, trace_linear(M, psi, p, A=A), trace_chains(M, psi, p, lattice=K)))
    return out


def lefschetz_sum(M, psi, traces=None):
    traces = traces if traces is not None else per_p_traces(M, psi)
    for p, a, b in traces:
        if a != b:
            raise ConsistencyError("trace routes disagree at p=%d: %d vs %d" % (p, a, b))
    return sum((-1) ** p * a for p, a, _ in traces)


# -- resolution -------------------------------------------------------------


@dataclass(eq=False)
class ChainComplexRes:
    p: int
    chains: list  # chains[l]: list of chains of length l, rank <= p
    boundaries: list  # boundaries[l]: sparse matrix C_l -> C_{l+1} as list of dict rows
    augmentation: list  # V_F for each chain of length p

    @property
    def spaces(self):
        return [len(c) for c in self.chains]


def coboundary_sign(small, big):
    """(-1)^k where big[k-1] (1-based k from F_1) is the link missing from small."""
    for k, F in enumerate(big, start=1):
        if k > len(small) or small[k - 1] != F:
            return (-1) ** k
    raise ValueError("chains differ by more than one link")


def build_resolution(M, p):
    chains = [flat_chains(M, l, max_rank=p) for l in range(p + 1)]
    boundaries = []
    for l in range(p):
        pos = {c: j for j, c in enumerate(chains[l + 1])}
        rows = []
        for small in chains[l]:
            row = {}
            s = set(small)
            for big in chains[l + 1]:
                if s <= set(big):
                    row[pos[big]] = coboundary_sign(small, big)
            rows.append(row)
        boundaries.append(rows)
    aug = [volume_element(c, M.ground_size).as_dict() for c in chains[p]]
    return ChainComplexRes(p, chains, boundaries, aug)


def _compose(first, second):
    """Row-vector convention: x -> x first -> then second."""
    out = []
    for row in first:
        acc = {}
        for j, a in row.items():
            for k, b in second[j].items():
                acc[k] = acc.get(k, 0) + a * b
        out.append({k: v for k, v in acc.items() if v})
    return out


def resolution_check(M, p):
    """Exactness of 0 -> QC_0 -> ... -> QC_p -> F_p -> 0 (chains of rank <= p)."""
    if not 0 <= p <= M.n:
        raise ValueError("p out of range")
    R = build_resolution(M, p)
    dims = R.spaces
    ranks = [rank(b) for b in R.boundaries]
    dimF = framing_basis(M, p).dim
    report = {"p": p, "dims": dims, "boundary_ranks": ranks, "dim_F": dimF, "positions": {}}
    pos = report["positions"]
    pos["d_squared_zero"] = all(not r for l in range(p - 1)
                                for r in _compose(R.boundaries[l], R.boundaries[l + 1]))
    if p >= 1:
        aug_rows = [{k: v for k, v in V.items()} for V in R.augmentation]
        composed = _compose(R.boundaries[p - 1], [dict(r) for r in aug_rows])
        pos["augmentation_d_zero"] = all(not r for r in composed)
        pos["injective_0"] = ranks[0] == dims[0]
        for l in range(1, p):
            pos["exact_%d" % l] = ranks[l] + ranks[l - 1] == dims[l]
        pos["exact_%d" % p] = dimF == dims[p] - ranks[p - 1]
    else:
        pos["exact_0"] = dims[0] == 1 == dimF
    pos["surjective"] = rank(R.augmentation) == dimF if p >= 1 else True
    L = flat_lattice(M)
    mu = mobius_row(L, L.bottom)
    report["mobius_dim"] = (-1) ** p * sum(m for F, m in mu.items() if L.rank[F] <= p)
    pos["dim_equals_mobius"] = report["mobius_dim"] == dimF
    report["ok"] = all(pos.values())
    return report


def framing_hyperplane_check(M, p):
    """Span of V_F over chains of rank <= p equals span over all length-p chains."""
    if p >= M.n:
        raise ValueError("hyperplane property needs p < n")
    low = [volume_element(c, M.ground_size).as_dict() for c in flat_chains(M, p, max_rank=p)]
    every = [volume_element(c, M.ground_size).as_dict() for c in flat_chains(M, p)]
    r_low, r_all = rank(low), rank(every)
    return r_low == r_all == rank(low + every)
