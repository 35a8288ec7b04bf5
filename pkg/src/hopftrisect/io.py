"""Reading and writing the JSON file formats.

Groups travel as their Cayley table, homomorphisms as image lists next to
paths of group files, Hopf structures as dense entry arrays keyed by
grading, diagrams as curve sequences plus a crossing list, and colorings
as an element-index array.  Exact entries are [numerator, denominator]
integer pairs and float entries are [re, im] pairs, so files are
readable without Python and round-trip without losing precision.

Everything wrong with a file surfaces as ParseError; mathematical
defects in well-formed files (a failing axiom, say) are left for the
checkers to find.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .diagrams import (
    Coloring,
    Curve,
    DiagCrossing,
    HeegaardDiagram,
    TrisectionDiagram,
    validate,
)
from .errors import HopfTrisectError, ParseError
from .groups import FiniteGroup, GroupHom, group_from_cayley, hom_from_map
from .hopf import HopfGAlgebra, HopfGCoalgebra
from .scalars import EXACT, FLOAT, zeros

__all__ = [
    "group_to_dict",
    "group_from_dict",
    "save_group",
    "load_group",
    "save_hom",
    "load_hom",
    "structure_to_dict",
    "structure_from_dict",
    "save_structure",
    "load_structure",
    "diagram_to_dict",
    "diagram_from_dict",
    "save_diagram",
    "load_diagram",
    "coloring_to_dict",
    "coloring_from_dict",
    "save_coloring",
    "load_coloring",
    "report_rows",
    "scalar_to_json",
]


# ---------------------------------------------------------------------------
# scalars and matrices


def scalar_to_json(x, field: str):
    """One scalar as its JSON form.

    Exact values become {"num": ..., "den": ...} with string payloads so
    consumers without big integers keep every digit; float values become
    [re, im].
    """
    if field == EXACT:
        q = Fraction(x)
        return {"num": str(q.numerator), "den": str(q.denominator)}
    z = complex(x)
    return [z.real, z.imag]


def _entry_to_pair(x, field: str):
    if field == EXACT:
        q = Fraction(x)
        return [q.numerator, q.denominator]
    z = complex(x)
    return [z.real, z.imag]


def _entry_from_pair(pair, field: str, label: str):
    if (
        not isinstance(pair, (list, tuple))
        or len(pair) != 2
    ):
        raise ParseError(f"{label}: entry {pair!r} is not a two-element pair")
    a, b = pair
    if field == EXACT:
        if not isinstance(a, int) or not isinstance(b, int):
            raise ParseError(f"{label}: exact entries need integer pairs")
        if b == 0:
            raise ParseError(f"{label}: zero denominator")
        return Fraction(a, b)
    if isinstance(a, bool) or isinstance(b, bool):
        raise ParseError(f"{label}: float entries need numbers")
    if not isinstance(a, (int, float)) or not isinstance(b, (int, float)):
        raise ParseError(f"{label}: float entries need numbers")
    return complex(a, b)


def _matrix_to_lists(mat: np.ndarray, field: str) -> list:
    return [
        [_entry_to_pair(mat[r, c], field) for c in range(mat.shape[1])]
        for r in range(mat.shape[0])
    ]


def _matrix_from_lists(rows, shape, field: str, label: str) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != shape[0]:
        raise ParseError(f"{label}: expected {shape[0]} rows")
    out = zeros(shape, field)
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != shape[1]:
            raise ParseError(f"{label}: row {r} should have {shape[1]} entries")
        for c, pair in enumerate(row):
            out[r, c] = _entry_from_pair(pair, field, label)
    return out


def _want(payload: dict, key: str, label: str):
    if not isinstance(payload, dict) or key not in payload:
        raise ParseError(f"{label}: missing key {key!r}")
    return payload[key]


def _read_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err}") from err
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"{path} is not valid JSON: {err}") from err
    if not isinstance(payload, dict):
        raise ParseError(f"{path}: top level must be a JSON object")
    return payload


def _write_json(path, payload: dict):
    Path(path).write_text(json.dumps(payload, indent=1) + "\n")


# ---------------------------------------------------------------------------
# groups and homomorphisms


def group_to_dict(G: FiniteGroup) -> dict:
    return {
        "order": G.order,
        "cayley": [list(row) for row in G.cayley],
        "names": list(G.element_names),
    }


def group_from_dict(payload, label: str = "group") -> FiniteGroup:
    order = _want(payload, "order", label)
    cayley = _want(payload, "cayley", label)
    names = _want(payload, "names", label)
    if not isinstance(order, int) or order < 1:
        raise ParseError(f"{label}: order must be a positive integer")
    if not isinstance(cayley, list) or len(cayley) != order:
        raise ParseError(f"{label}: cayley table must have {order} rows")
    if not isinstance(names, list) or len(names) != order:
        raise ParseError(f"{label}: expected {order} names")
    try:
        return group_from_cayley(
            [tuple(row) for row in cayley], names=[str(x) for x in names]
        )
    except (HopfTrisectError, TypeError, ValueError) as err:
        raise ParseError(f"{label}: {err}") from err


def save_group(G: FiniteGroup, path):
    _write_json(path, group_to_dict(G))


def load_group(path) -> FiniteGroup:
    return group_from_dict(_read_json(path), label=str(path))


def save_hom(h: GroupHom, path, source_path, target_path):
    """Write a hom file; the two group files are written alongside it.

    The hom file stores the group locations relative to its own directory
    whenever possible, so the trio can move together.
    """
    save_group(h.source, source_path)
    save_group(h.target, target_path)
    base = Path(path).parent

    def rel(p):
        try:
            return str(Path(p).relative_to(base))
        except ValueError:
            return str(p)

    _write_json(
        path,
        {
            "source": rel(source_path),
            "target": rel(target_path),
            "images": [h.image_of[x] for x in h.source.elements()],
        },
    )


def load_hom(path) -> GroupHom:
    payload = _read_json(path)
    label = str(path)
    base = Path(path).parent
    source = load_group(base / str(_want(payload, "source", label)))
    target = load_group(base / str(_want(payload, "target", label)))
    images = _want(payload, "images", label)
    if not isinstance(images, list):
        raise ParseError(f"{label}: images must be a list of indices")
    try:
        return hom_from_map(source, target, images)
    except (HopfTrisectError, TypeError, ValueError) as err:
        raise ParseError(f"{label}: {err}") from err


# ---------------------------------------------------------------------------
# Hopf structures


def _key_str(key) -> str:
    if isinstance(key, tuple):
        return ",".join(str(k) for k in key)
    return str(key)


def _keyed_to_dict(entries: dict, field: str) -> dict:
    return {
        _key_str(key): _matrix_to_lists(entries[key], field)
        for key in sorted(entries)
    }


def structure_to_dict(H) -> dict:
    """A Hopf structure of either kind as a self-contained JSON object."""
    if isinstance(H, HopfGAlgebra):
        kind = "algebra"
    elif isinstance(H, HopfGCoalgebra):
        kind = "coalgebra"
    else:
        raise TypeError(f"cannot serialize {type(H).__name__}")
    f = H.field
    out = {
        "kind": kind,
        "field": f,
        "group": group_to_dict(H.group),
        "dims": list(H.dims),
        "M": _keyed_to_dict(H.M, f),
        "Delta": _keyed_to_dict(H.Delta, f),
        "S": _keyed_to_dict(H.S, f),
    }
    if kind == "coalgebra":
        out["i"] = _keyed_to_dict(H.i, f)
        out["epsilon"] = _matrix_to_lists(H.epsilon, f)
    else:
        out["i"] = _matrix_to_lists(H.i, f)
        out["epsilon"] = _keyed_to_dict(H.epsilon, f)
    return out


def _keyed_from_dict(payload, shapes: dict, field: str, label: str) -> dict:
    block = _want(payload, label.split(".")[-1], label)
    out = {}
    for key, shape in shapes.items():
        name = _key_str(key)
        if name not in block:
            raise ParseError(f"{label}: missing grading {name}")
        out[key] = _matrix_from_lists(
            block[name], shape, field, f"{label}[{name}]"
        )
    extras = set(block) - {_key_str(k) for k in shapes}
    if extras:
        raise ParseError(f"{label}: unknown grading {sorted(extras)[0]}")
    return out


def structure_from_dict(payload, label: str = "structure"):
    kind = _want(payload, "kind", label)
    field = _want(payload, "field", label)
    if kind not in ("algebra", "coalgebra"):
        raise ParseError(f"{label}: kind must be algebra or coalgebra")
    if field not in (EXACT, FLOAT):
        raise ParseError(f"{label}: field must be {EXACT} or {FLOAT}")
    G = group_from_dict(_want(payload, "group", label), f"{label}.group")
    dims = _want(payload, "dims", label)
    if (
        not isinstance(dims, list)
        or len(dims) != G.order
        or not all(isinstance(d, int) and d >= 0 for d in dims)
    ):
        raise ParseError(f"{label}: dims must list {G.order} sector sizes")
    d = tuple(dims)
    els = list(G.elements())
    pairs = [(g, h) for g in els for h in els]
    if kind == "coalgebra":
        parts = {
            "M": {g: (d[g], d[g] * d[g]) for g in els},
            "i": {g: (d[g], 1) for g in els},
            "Delta": {(g, h): (d[g] * d[h], d[G.mul(g, h)]) for g, h in pairs},
            "S": {g: (d[G.inv(g)], d[g]) for g in els},
        }
    else:
        parts = {
            "M": {(g, h): (d[G.mul(g, h)], d[g] * d[h]) for g, h in pairs},
            "Delta": {g: (d[g] * d[g], d[g]) for g in els},
            "epsilon": {g: (1, d[g]) for g in els},
            "S": {g: (d[G.inv(g)], d[g]) for g in els},
        }
    blocks = {
        name: _keyed_from_dict(payload, shapes, field, f"{label}.{name}")
        for name, shapes in parts.items()
    }
    try:
        if kind == "coalgebra":
            return HopfGCoalgebra(
                group=G,
                dims=d,
                M=blocks["M"],
                i=blocks["i"],
                Delta=blocks["Delta"],
                epsilon=_matrix_from_lists(
                    _want(payload, "epsilon", label),
                    (1, d[G.identity]),
                    field,
                    f"{label}.epsilon",
                ),
                S=blocks["S"],
                field=field,
            )
        return HopfGAlgebra(
            group=G,
            dims=d,
            M=blocks["M"],
            i=_matrix_from_lists(
                _want(payload, "i", label),
                (d[G.identity], 1),
                field,
                f"{label}.i",
            ),
            Delta=blocks["Delta"],
            epsilon=blocks["epsilon"],
            S=blocks["S"],
            field=field,
        )
    except ValueError as err:
        raise ParseError(f"{label}: {err}") from err


def save_structure(H, path):
    _write_json(path, structure_to_dict(H))


def load_structure(path):
    return structure_from_dict(_read_json(path), label=str(path))


# ---------------------------------------------------------------------------
# diagrams and colorings


def diagram_to_dict(d) -> dict:
    """Curve sequences plus a crossing list with slot positions.

    Each crossing endpoint is written as [family, curve index, slot],
    the slot being where the crossing sits in that curve's cyclic
    sequence; readers verify the slots against the sequences.
    """
    curves = {
        name: [list(c.crossing_sequence) for c in d.family(name)]
        for name in d.families()
    }

    def endpoint(ref, xid):
        seq = d.curve(ref).crossing_sequence
        return [ref[0], ref[1], seq.index(xid)]

    out = {
        "genus": d.genus,
        "curves": curves,
        "crossings": [
            {
                "id": x.id,
                "a": endpoint(x.curve_a, x.id),
                "b": endpoint(x.curve_b, x.id),
                "sign": x.sign,
            }
            for x in d.crossings
        ],
    }
    if isinstance(d, HeegaardDiagram) and d.coloring is not None:
        out["coloring"] = coloring_to_dict(d.coloring)
    return out


def diagram_from_dict(payload, label: str = "diagram"):
    genus = _want(payload, "genus", label)
    if not isinstance(genus, int) or genus < 0:
        raise ParseError(f"{label}: genus must be a nonnegative integer")
    curves_block = _want(payload, "curves", label)
    if not isinstance(curves_block, dict):
        raise ParseError(f"{label}: curves must map family names to lists")
    families = ("alpha", "beta", "kappa")
    if "kappa" not in curves_block:
        families = ("alpha", "beta")
    if set(curves_block) != set(families):
        raise ParseError(f"{label}: curve families {sorted(curves_block)}")

    built = {}
    for name in families:
        seqs = curves_block[name]
        if not isinstance(seqs, list):
            raise ParseError(f"{label}: {name} curves must be a list")
        family = []
        for k, seq in enumerate(seqs):
            if not isinstance(seq, list) or not all(
                isinstance(x, int) for x in seq
            ):
                raise ParseError(f"{label}: {name}[{k}] must list crossing ids")
            family.append(Curve(name, k, tuple(seq)))
        built[name] = tuple(family)

    def endpoint(raw, xid):
        if (
            not isinstance(raw, list)
            or len(raw) != 3
            or raw[0] not in families
            or not isinstance(raw[1], int)
            or not isinstance(raw[2], int)
        ):
            raise ParseError(f"{label}: crossing {xid} endpoint {raw!r}")
        name, idx, slot = raw
        if not 0 <= idx < len(built[name]):
            raise ParseError(f"{label}: crossing {xid} references {name}[{idx}]")
        seq = built[name][idx].crossing_sequence
        if not 0 <= slot < len(seq) or seq[slot] != xid:
            raise ParseError(
                f"{label}: crossing {xid} slot {slot} disagrees with "
                f"the {name}[{idx}] sequence"
            )
        return (name, idx)

    raw_crossings = _want(payload, "crossings", label)
    if not isinstance(raw_crossings, list):
        raise ParseError(f"{label}: crossings must be a list")
    crossings = []
    for raw in raw_crossings:
        xid = _want(raw, "id", f"{label}.crossings")
        if not isinstance(xid, int):
            raise ParseError(f"{label}: crossing id {xid!r}")
        sign = _want(raw, "sign", f"{label}.crossings")
        crossings.append(
            DiagCrossing(
                id=xid,
                curve_a=endpoint(_want(raw, "a", label), xid),
                curve_b=endpoint(_want(raw, "b", label), xid),
                sign=sign,
            )
        )

    if "kappa" in families:
        d = TrisectionDiagram(
            genus=genus,
            alpha=built["alpha"],
            beta=built["beta"],
            kappa=built["kappa"],
            crossings=tuple(crossings),
        )
    else:
        coloring = None
        if "coloring" in payload:
            coloring = coloring_from_dict(
                payload["coloring"], f"{label}.coloring"
            )
        d = HeegaardDiagram(
            genus=genus,
            alpha=built["alpha"],
            beta=built["beta"],
            crossings=tuple(crossings),
            coloring=coloring,
        )
    report = validate(d)
    if not report.ok:
        first = report.failures()[0]
        raise ParseError(f"{label}: inconsistent diagram: {first}")
    return d


def save_diagram(d, path):
    _write_json(path, diagram_to_dict(d))


def load_diagram(path):
    return diagram_from_dict(_read_json(path), label=str(path))


def coloring_to_dict(c: Coloring) -> dict:
    return {"group": group_to_dict(c.group), "colors": list(c.colors)}


def coloring_from_dict(payload, label: str = "coloring") -> Coloring:
    G = group_from_dict(_want(payload, "group", label), f"{label}.group")
    colors = _want(payload, "colors", label)
    if not isinstance(colors, list) or not all(
        isinstance(a, int) and 0 <= a < G.order for a in colors
    ):
        raise ParseError(f"{label}: colors must be element indices")
    return Coloring(G, tuple(colors))


def save_coloring(c: Coloring, path):
    _write_json(path, coloring_to_dict(c))


def load_coloring(path) -> Coloring:
    return coloring_from_dict(_read_json(path), label=str(path))


# ---------------------------------------------------------------------------
# check reports


def report_rows(report) -> list:
    """A check report flattened to [axiom, grading, ok, witness, residual]
    rows, ready for JSON."""
    rows = []
    for e in report.entries:
        witness = e.witness
        if isinstance(witness, tuple):
            witness = list(witness)
        residual = e.residual
        if residual is not None and not isinstance(residual, (int, float, str)):
            residual = float(abs(residual))
        rows.append([e.axiom, list(e.grading), e.ok, witness, residual])
    return rows
