"""Subsets of a ground set {0, ..., m-1} encoded as int bitmasks."""

from itertools import combinations


def full_mask(m):
    return (1 << m) - 1


def mask_of(elements):
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def elements(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask):
    return bin(mask).count("1")


def contains(mask, e):
    return (mask >> e) & 1 == 1


def image(mask, perm):
    """Image of a subset under a permutation given in one-line notation."""
    out = 0
    for e in elements(mask):
        out |= 1 << perm[e]
    return out


def all_masks(m):
    return range(1 << m)


def masks_of_size(m, k):
    for c in combinations(range(m), k):
        yield mask_of(c)


def fmt(mask):
    return "{" + ",".join(str(e) for e in elements(mask)) + "}"
