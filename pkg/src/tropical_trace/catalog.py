"""Named matroids, automorphism enumeration and the verification corpus."""

import random
from itertools import combinations, permutations

from .errors import InputError
from .matroid import boolean, from_bases, graphic, is_automorphism, uniform
from .subsets import elements, image

# lines of the Fano plane on points 0..6
FANO_LINES = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]
K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
K33_EDGES = [(a, b) for a in range(3) for b in range(3, 6)]

NAMES = ("uniform:r:m", "boolean:m", "graphic:K4", "graphic:K33", "fano", "nonfano")


def _rank3_without_lines(lines, name):
    bases = [B for B in combinations(range(7), 3) if B not in lines]
    return from_bases(7, bases, name=name)


def fano():
    return _rank3_without_lines(FANO_LINES, "fano")


def nonfano():
    # the Fano plane with the line {2, 4, 5} relaxed to a basis
    return _rank3_without_lines(FANO_LINES[:-1], "nonfano")


def catalog(name):
    parts = name.split(":")
    try:
        if parts[0] == "uniform" and len(parts) == 3:
            M = uniform(int(parts[1]), int(parts[2]))
        elif parts[0] == "boolean" and len(parts) == 2:
            M = boolean(int(parts[1]))
        elif name == "graphic:K4":
            M = graphic(4, K4_EDGES, name="K4")
        elif name == "graphic:K33":
            M = graphic(6, K33_EDGES, name="K33")
        elif name == "fano":
            M = fano()
        elif name == "nonfano":
            M = nonfano()
        else:
            raise InputError("unknown catalog matroid %r (known: %s)" % (name, ", ".join(NAMES)))
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError("bad catalog name %r: %s" % (name, exc))
    M.name = name
    return M


def vertex_to_edge_perm(edges, vperm):
    index = {frozenset(e): i for i, e in enumerate(edges)}
    return tuple(index[frozenset((vperm[u], vperm[v]))] for u, v in edges)


def graph_automorphisms(n_vertices, edges):
    """Vertex permutations preserving the edge multiset (brute force)."""
    target = sorted(tuple(sorted(e)) for e in edges)
    out = []
    for vp in permutations(range(n_vertices)):
        if sorted(tuple(sorted((vp[u], vp[v]))) for u, v in edges) == target:
            out.append(vp)
    return out


def automorphisms(M, limit=5040):
    """All element permutations that are automorphisms (brute force, small m)."""
    m = M.ground_size
    out = []
    for count, perm in enumerate(permutations(range(m))):
        if count >= limit:
            raise InputError("too many permutations to enumerate")
        if _preserves_flats(M, perm):
            out.append(perm)
    return out


def _preserves_flats(M, perm):
    return all(image(F, perm) in M.flat_set for F in M.flats)


def examples(name):
    """A few documented automorphisms bundled with each catalog entry."""
    M = catalog(name)
    m = M.ground_size
    ident = tuple(range(m))
    if name == "graphic:K4":
        vps = [(0, 1, 2, 3), (1, 0, 2, 3), (1, 2, 0, 3), (1, 2, 3, 0), (1, 0, 3, 2)]
        return [vertex_to_edge_perm(K4_EDGES, vp) for vp in vps]
    if name == "graphic:K33":
        vps = [(0, 1, 2, 3, 4, 5), (1, 0, 2, 3, 4, 5), (3, 4, 5, 0, 1, 2), (1, 2, 0, 4, 5, 3)]
        return [vertex_to_edge_perm(K33_EDGES, vp) for vp in vps]
    if name in ("fano", "nonfano"):
        auts = automorphisms(M)
        return [ident] + random.Random(7).sample([a for a in auts if a != ident],
                                                 min(4, len(auts) - 1))
    cyc = tuple(list(range(1, m)) + [0])
    swap = tuple([1, 0] + list(range(2, m))) if m >= 2 else ident
    out = [ident]
    for p in (swap, cyc):
        if p not in out and is_automorphism(M, p):
            out.append(p)
    return out


def corpus(sample_seed=0):
    """(id, matroid, perm) triples used by the acceptance suite.

    All 6 permutations of U_{2,3}; all 24 automorphisms of U_{2,4}, U_{3,4}
    and B_4; all 6 of B_3; the 24 edge permutations of M(K_4) induced by
    vertex permutations; 10 sampled automorphisms of the Fano plane.
    """
    out = []
    for name in ("uniform:2:3", "uniform:2:4", "uniform:3:4", "boolean:3", "boolean:4"):
        M = catalog(name)
        for perm in permutations(range(M.ground_size)):
            out.append((name, M, perm))
    K4 = catalog("graphic:K4")
    for vp in graph_automorphisms(4, K4_EDGES):
        out.append(("graphic:K4", K4, vertex_to_edge_perm(K4_EDGES, vp)))
    F = catalog("fano")
    auts = automorphisms(F)
    for perm in random.Random(sample_seed).sample(auts, 10):
        out.append(("fano", F, perm))
    return out


def corpus_matroids():
    return [catalog(n) for n in ("uniform:2:3", "uniform:2:4", "uniform:3:4", "boolean:3",
                                 "boolean:4", "graphic:K4", "fano")]


def describe(M):
    return {
        "name": M.name,
        "ground_size": M.ground_size,
        "rank": M.rk,
        "n": M.n,
        "flats_by_rank": [[elements(F) for F in layer] for layer in M.flats_by_rank],
    }
