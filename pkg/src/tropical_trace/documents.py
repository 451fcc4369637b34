"""JSON input documents for matroids and automorphisms."""

import json

from .errors import InputError
from .matroid import MAX_GROUND_SIZE, from_bases, from_flats, graphic, uniform


def _need(doc, *keys):
    missing = [k for k in keys if k not in doc]
    if missing:
        raise InputError("matroid document of type %r lacks %s"
                         % (doc.get("type"), ", ".join(missing)))


def _int_lists(rows, what):
    try:
        return [[int(x) for x in row] for row in rows]
    except (TypeError, ValueError):
        raise InputError("%s must be lists of integers" % what)


def matroid_from_doc(doc, max_ground_size=MAX_GROUND_SIZE, name=None):
    """Build a matroid from a parsed document.

    Types: uniform {r, n_elements}; graphic {n_vertices, edges};
    bases {n_elements, bases}; flats {n_elements, flats_by_rank}.
    The result must be loopless.
    """
    if not isinstance(doc, dict):
        raise InputError("matroid document must be a JSON object")
    kind = doc.get("type")
    kw = {"max_ground_size": max_ground_size}
    if kind == "uniform":
        _need(doc, "r", "n_elements")
        M = uniform(int(doc["r"]), int(doc["n_elements"]), **kw)
    elif kind == "graphic":
        _need(doc, "n_vertices", "edges")
        edges = _int_lists(doc["edges"], "edges")
        if any(len(e) != 2 for e in edges):
            raise InputError("each edge needs two endpoints")
        M = graphic(int(doc["n_vertices"]), edges, **kw)
    elif kind == "bases":
        _need(doc, "n_elements", "bases")
        m = int(doc["n_elements"])
        bases = _int_lists(doc["bases"], "bases")
        _in_range(bases, m)
        M = from_bases(m, bases, **kw)
    elif kind == "flats":
        _need(doc, "n_elements", "flats_by_rank")
        m = int(doc["n_elements"])
        layers = [_int_lists(layer, "flats") for layer in doc["flats_by_rank"]]
        for layer in layers:
            _in_range(layer, m)
        M = from_flats(m, layers, **kw)
    else:
        raise InputError("unknown matroid type %r" % (kind,))
    if M.ground_size < 1:
        raise InputError("empty ground set")
    if not M.is_loopless():
        loops = [e for e in range(M.ground_size) if M.rank(1 << e) == 0]
        raise InputError("matroid has loops: %s" % loops)
    if M.rk < 1:
        raise InputError("matroid has rank 0")
    if name:
        M.name = name
    return M


def _in_range(sets, m):
    for S in sets:
        for x in S:
            if not 0 <= x < m:
                raise InputError("element %d out of range 0..%d" % (x, m - 1))


def perm_from_doc(doc):
    if isinstance(doc, list):
        perm = doc
    elif isinstance(doc, dict) and "perm" in doc:
        perm = doc["perm"]
    else:
        raise InputError('automorphism document must be {"perm": [...]}')
    try:
        return tuple(int(x) for x in perm)
    except (TypeError, ValueError):
        raise InputError("permutation entries must be integers")


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror))
    except json.JSONDecodeError as exc:
        raise InputError("%s is not valid JSON: %s" % (path, exc))


def parse_perm_arg(text):
    """A permutation given on the command line: JSON, a file path, or '0,2,1'."""
    text = text.strip()
    if text.startswith("[") or text.startswith("{"):
        try:
            return perm_from_doc(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError("bad permutation JSON: %s" % exc)
    if text.endswith(".json"):
        return perm_from_doc(load_json(text))
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise InputError("cannot parse permutation %r" % text)
