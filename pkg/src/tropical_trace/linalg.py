"""Exact row reduction over the rationals on sparse rows (dict column -> value)."""

from fractions import Fraction


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Rows are dicts keyed by any sortable column labels. Every stored row has
    a pivot entry 1 and zeros in all other pivot columns, so the coordinates
    of a vector in the span are its entries at the pivots.
    """

    def __init__(self):
        self.rows = {}  # pivot column -> row

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def reduce(self, vec):
        v = {k: Fraction(x) for k, x in vec.items() if x}
        for p, row in self.rows.items():
            c = v.get(p)
            if c:
                for k, x in row.items():
                    y = v.get(k, 0) - c * x
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
        return v

    def add(self, vec):
        """Add a vector; return True if it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        c = v[p]
        v = {k: x / c for k, x in v.items()}
        for q, row in self.rows.items():
            a = row.get(p)
            if a:
                for k, x in v.items():
                    y = row.get(k, 0) - a * x
                    if y:
                        row[k] = y
                    else:
                        row.pop(k, None)
        self.rows[p] = v
        return True

    def contains(self, vec):
        return not self.reduce(vec)

    def coordinates(self, vec):
        """Coordinates of vec against the rows (ordered by pivot); None if outside."""
        if self.reduce(vec):
            return None
        return [Fraction(vec.get(p, 0)) for p in self.pivots]


def rank(rows):
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return len(ech)


def matrix_rank(matrix):
    """Rank of a dense list-of-lists matrix."""
    return rank({j: x for j, x in enumerate(row) if x} for row in matrix)
