"""File format round-trips and rejection of malformed payloads.

Serialization must preserve structures bit for bit: exact entries travel
as integer pairs and float entries as re/im pairs, so equality after a
round trip is literal, not approximate.
"""

import json
from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from hopftrisect.diagrams import Coloring, builtin
from hopftrisect.errors import ParseError
from hopftrisect.examples import function_coalgebra, group_algebra
from hopftrisect.groups import (
    cyclic_group,
    dihedral_group,
    hom_from_map,
    trivial_group,
)
from hopftrisect.io import (
    coloring_from_dict,
    coloring_to_dict,
    diagram_from_dict,
    diagram_to_dict,
    group_from_dict,
    group_to_dict,
    load_diagram,
    load_hom,
    load_structure,
    report_rows,
    save_diagram,
    save_hom,
    save_structure,
    scalar_to_json,
    structure_from_dict,
    structure_to_dict,
)
from hopftrisect.hopf import HopfGAlgebra, dualize
from hopftrisect.scalars import FLOAT


def parity_grading():
    d4 = dihedral_group(2)
    z2 = cyclic_group(2)
    return hom_from_map(d4, z2, [b % 2 for a in (0, 1) for b in range(2)])


def entries_equal(a, b):
    if a.size == 0 and b.size == 0:
        return a.shape == b.shape
    return a.shape == b.shape and bool((a == b).all())


def structures_equal(H1, H2):
    if H1.group != H2.group or H1.dims != H2.dims or H1.field != H2.field:
        return False
    for name in ("M", "Delta", "S"):
        b1, b2 = getattr(H1, name), getattr(H2, name)
        if set(b1) != set(b2):
            return False
        if not all(entries_equal(b1[k], b2[k]) for k in b1):
            return False
    for name in ("i", "epsilon"):
        b1, b2 = getattr(H1, name), getattr(H2, name)
        if isinstance(b1, dict):
            if not all(entries_equal(b1[k], b2[k]) for k in b1):
                return False
        elif not entries_equal(b1, b2):
            return False
    return True


# ---------------------------------------------------------------------------
# groups and homs


def test_group_round_trip():
    G = dihedral_group(4)
    back = group_from_dict(json.loads(json.dumps(group_to_dict(G))))
    assert back == G


def test_group_dict_rejects_bad_shapes():
    G = cyclic_group(3)
    good = group_to_dict(G)
    for mangle in (
        lambda d: d.pop("order"),
        lambda d: d.update(order=4),
        lambda d: d["cayley"][0].append(0),
        lambda d: d["cayley"][0].__setitem__(0, 9),
        lambda d: d.update(names=["a"]),
    ):
        payload = json.loads(json.dumps(good))
        mangle(payload)
        with pytest.raises(ParseError):
            group_from_dict(payload)


def test_hom_files_round_trip(tmp_path):
    phi = parity_grading()
    save_hom(
        phi,
        tmp_path / "phi.json",
        tmp_path / "src.json",
        tmp_path / "dst.json",
    )
    back = load_hom(tmp_path / "phi.json")
    assert back == phi


def test_hom_file_rejects_non_homomorphism(tmp_path):
    phi = parity_grading()
    save_hom(
        phi,
        tmp_path / "phi.json",
        tmp_path / "src.json",
        tmp_path / "dst.json",
    )
    payload = json.loads((tmp_path / "phi.json").read_text())
    payload["images"] = [1, 0, 0, 0]
    (tmp_path / "phi.json").write_text(json.dumps(payload))
    with pytest.raises(ParseError):
        load_hom(tmp_path / "phi.json")


# ---------------------------------------------------------------------------
# structures


def test_coalgebra_round_trip_exact(tmp_path):
    H = function_coalgebra(parity_grading())
    save_structure(H, tmp_path / "h.json")
    assert structures_equal(load_structure(tmp_path / "h.json"), H)


def test_algebra_round_trip_float(tmp_path):
    H = dualize(group_algebra(cyclic_group(3), FLOAT))
    save_structure(H, tmp_path / "h.json")
    back = load_structure(tmp_path / "h.json")
    assert back.field == FLOAT
    assert isinstance(back, HopfGAlgebra)
    assert structures_equal(back, H)


def test_structure_dict_rejects_malformed_payloads():
    good = structure_to_dict(function_coalgebra(parity_grading()))
    for mangle in (
        lambda d: d.update(kind="bialgebra"),
        lambda d: d.update(field="decimal"),
        lambda d: d.pop("Delta"),
        lambda d: d["dims"].append(1),
        lambda d: d["M"].pop("0"),
        lambda d: d["M"].update(extra=[]),
        lambda d: d["epsilon"][0].__setitem__(0, [1, 0]),
        lambda d: d["S"]["0"][0].__setitem__(0, [0.5, 0.0]),
        lambda d: d["i"]["0"][0].__setitem__(0, [1]),
    ):
        payload = json.loads(json.dumps(good))
        mangle(payload)
        with pytest.raises(ParseError):
            structure_from_dict(payload)


def test_structure_entries_keep_big_rationals(tmp_path):
    H = group_algebra(cyclic_group(2))
    scale = Fraction(10**40 + 1, 3)
    H = replace(H, S={g: m * scale for g, m in H.S.items()})
    save_structure(H, tmp_path / "h.json")
    back = load_structure(tmp_path / "h.json")
    assert back.S[0][0, 0] == scale


# ---------------------------------------------------------------------------
# diagrams and colorings


def test_trisection_round_trip(tmp_path):
    d = builtin("t_st")
    save_diagram(d, tmp_path / "d.json")
    assert load_diagram(tmp_path / "d.json") == d


def test_heegaard_round_trip_keeps_coloring(tmp_path):
    h = builtin("heegaard_lens(3,1)")
    h = replace(h, coloring=Coloring(cyclic_group(3), (2,)))
    save_diagram(h, tmp_path / "h.json")
    back = load_diagram(tmp_path / "h.json")
    assert back == h
    assert back.coloring.colors == (2,)


def test_diagram_slots_are_verified():
    payload = diagram_to_dict(builtin("t_st"))
    payload["crossings"][0]["a"][2] += 1
    with pytest.raises(ParseError, match="slot"):
        diagram_from_dict(payload)


def test_diagram_consistency_is_checked():
    payload = diagram_to_dict(builtin("t_st"))
    # drop a crossing from its curve sequence but keep the crossing record
    payload["curves"]["alpha"][0] = payload["curves"]["alpha"][0][:1]
    with pytest.raises(ParseError):
        diagram_from_dict(payload)


def test_coloring_round_trip_and_range_check():
    c = Coloring(dihedral_group(3), (1, 5, 0))
    back = coloring_from_dict(json.loads(json.dumps(coloring_to_dict(c))))
    assert back == c
    payload = coloring_to_dict(c)
    payload["colors"] = [1, 9, 0]
    with pytest.raises(ParseError):
        coloring_from_dict(payload)


# ---------------------------------------------------------------------------
# scalar and report emission


def test_scalar_json_forms():
    assert scalar_to_json(Fraction(-7, 3), "exact") == {
        "num": "-7",
        "den": "3",
    }
    assert scalar_to_json(1.5 + 2j, "float") == [1.5, 2.0]


def test_report_rows_flatten():
    from hopftrisect.hopf import check_hopf_g_coalgebra

    H = group_algebra(trivial_group())
    rows = report_rows(check_hopf_g_coalgebra(H))
    assert rows and all(len(r) == 5 for r in rows)
    assert all(r[2] is True for r in rows)
    assert json.dumps(rows)
