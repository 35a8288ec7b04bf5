"""Command line front end.

Six subcommands cover the day-to-day operations: ``check-hopf`` and
``find-integrals`` audit a structure file, ``invariant`` evaluates one
colored diagram, ``verify-moves`` stress-tests invariance under random
diagram moves, ``sum-bundles`` tabulates every coloring, and ``demo``
prints the worked dihedral example.

Exit codes are part of the contract: 0 on success, 1 when the
mathematics rejects the input (an axiom fails, a coloring does not
validate, a value changes under a move), 2 when a file or the command
line cannot be understood.  Domain failures print the error class name
on stderr so scripts can branch on it without scraping prose.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from . import io
from .diagrams import (
    Coloring,
    HeegaardDiagram,
    NotAStabilization,
    NotCancellablePair,
    NoTriangle,
    UnknownName,
    apply_handle_slide,
    apply_three_point,
    apply_two_point,
    builtin,
    destabilize,
    insert_two_point,
    move_basepoint,
    reverse_orientation,
    stabilize,
    trisection_of_heegaard,
    validate_coloring,
)
from .errors import HopfTrisectError, ParseError
from .examples import d8_demo, d8_homs, example_triplet, group_algebra
from .groups import cyclic_group
from .hopf import (
    HopfGAlgebra,
    HopfGCoalgebra,
    check_hopf_g_algebra,
    check_hopf_g_coalgebra,
    dualize,
    normalize_pair,
    solve_cointegral,
    solve_g_integral,
)
from .invariants import (
    ColoringInvalid,
    bundle_invariant,
    bundle_table,
    normalized_invariant,
    solve_bundle,
)
from .pairings import RMatrix, quasitriangular_triplet
from .scalars import DEFAULT_TOL, EXACT, FLOAT

__all__ = ["InvarianceViolation", "RunConfig", "main"]


class InvarianceViolation(HopfTrisectError):
    """A diagram move changed the computed invariant."""


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by every subcommand."""

    backend: str = FLOAT
    tolerance: float = DEFAULT_TOL
    root_branch: str = "principal"
    output: str = "text"
    seed: int = 0

    def __post_init__(self):
        if self.backend not in (EXACT, FLOAT):
            raise ValueError(f"unknown backend {self.backend!r}")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.root_branch not in ("principal", "real"):
            raise ValueError(f"unknown root branch {self.root_branch!r}")
        if self.output not in ("text", "json"):
            raise ValueError(f"unknown output mode {self.output!r}")


# ---------------------------------------------------------------------------
# shared plumbing


def _config(args, fallback_backend: str) -> RunConfig:
    return RunConfig(
        backend=args.backend or fallback_backend,
        tolerance=args.tolerance,
        root_branch=args.root_branch,
        output=args.output,
        seed=args.seed,
    )


def _fmt(x) -> str:
    if isinstance(x, (int, Fraction)):
        return str(x)
    z = complex(x)
    if z.imag == 0 or abs(z.imag) <= 1e-15 * (1 + abs(z.real)):
        return repr(z.real)
    return repr(z)


def _emit(cfg: RunConfig, lines, payload) -> None:
    if cfg.output == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _structure_to_float(H):
    """Widen an exact structure to the float backend entry by entry."""

    def widen(mat: np.ndarray) -> np.ndarray:
        out = np.zeros(mat.shape, dtype=complex)
        for idx, value in np.ndenumerate(mat):
            out[idx] = complex(value)
        return out

    def widen_all(block: dict) -> dict:
        return {key: widen(mat) for key, mat in block.items()}

    if isinstance(H, HopfGCoalgebra):
        return replace(
            H,
            M=widen_all(H.M),
            i=widen_all(H.i),
            Delta=widen_all(H.Delta),
            epsilon=widen(H.epsilon),
            S=widen_all(H.S),
            field=FLOAT,
        )
    return replace(
        H,
        M=widen_all(H.M),
        i=widen(H.i),
        Delta=widen_all(H.Delta),
        epsilon=widen_all(H.epsilon),
        S=widen_all(H.S),
        field=FLOAT,
    )


def _retarget(H, backend: str):
    if H.field == backend:
        return H
    if backend == FLOAT:
        return _structure_to_float(H)
    raise HopfTrisectError(
        "float entries cannot be promoted to the exact backend"
    )


_DEMO_FIELDS = {"d8": FLOAT, "z2": EXACT, "z2-broken": EXACT}


def _demo_triplet(name: str, backend: str, tol: float):
    """One of the built-in triplets, with its integral bundle.

    ``d8`` is the dihedral flat-bundle example (irrational stabilizer
    root, so float by default), ``z2`` the quasitriangular functions on
    Z/2 with the trivial R-matrix, and ``z2-broken`` the same triplet
    with its alpha-side forms rescaled so two-point cancellations fail;
    it exists to demonstrate the verify-moves violation path.
    """
    if name == "d8":
        t = example_triplet(*d8_homs(), field=backend)
    elif name in ("z2", "z2-broken"):
        H = dualize(group_algebra(cyclic_group(2), backend))
        unit_pair = np.kron(H.i, H.i)
        t = quasitriangular_triplet(H, RMatrix(unit_pair, unit_pair), tol)
        if name == "z2-broken":
            two = Fraction(2) if backend == EXACT else complex(2)
            t = replace(
                t,
                form_ab={g: m * two for g, m in t.form_ab.items()},
                form_ak={g: m / two for g, m in t.form_ak.items()},
            )
    else:
        raise UnknownName(f"no demo triplet named {name!r}")
    return t, solve_bundle(t, tol)


def _load_trisection(args):
    """The requested diagram, converted to a trisection if Heegaard."""
    if args.builtin is not None:
        d = builtin(args.builtin)
    else:
        d = io.load_diagram(args.diagram)
    if isinstance(d, HeegaardDiagram):
        d = trisection_of_heegaard(d)
    return d


def _parse_colors(spec: str, G) -> tuple:
    """Element indices for comma-separated names.

    Caret-free spellings are accepted too (r2 for r^2), since carets are
    awkward in some shells.
    """
    plain = {}
    for a in G.elements():
        plain.setdefault(G.name(a).replace("^", ""), a)
    images = []
    for raw in spec.split(","):
        name = raw.strip()
        if not name:
            continue
        try:
            images.append(G.index_of(name))
        except ValueError:
            stripped = name.replace("^", "")
            if stripped in plain:
                images.append(plain[stripped])
            else:
                raise ColoringInvalid(
                    f"{name!r} is not an element of the grading group"
                ) from None
    return tuple(images)


def _file_coloring(path, d, G) -> Coloring:
    c = io.load_coloring(path)
    if c.group != G:
        raise ColoringInvalid("coloring group differs from the grading group")
    if len(c.colors) != d.genus:
        raise ColoringInvalid(
            f"expected {d.genus} colors, got {len(c.colors)}"
        )
    if not validate_coloring(d, c):
        raise ColoringInvalid("colors do not satisfy the curve words")
    return c


def _trivial_coloring(d, G) -> Coloring:
    return Coloring(G, (G.identity,) * d.genus)


# ---------------------------------------------------------------------------
# check-hopf


def cmd_check_hopf(args) -> int:
    H = io.load_structure(args.file)
    cfg = _config(args, H.field)
    H = _retarget(H, cfg.backend)
    if isinstance(H, HopfGAlgebra):
        kind = "algebra"
        report = check_hopf_g_algebra(H, cfg.tolerance)
    else:
        kind = "coalgebra"
        report = check_hopf_g_coalgebra(H, cfg.tolerance)
    payload = {
        "ok": report.ok,
        "kind": kind,
        "checks": io.report_rows(report),
    }
    lines = [str(report)]
    _emit(cfg, lines, payload)
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# find-integrals


def _vector_json(mat: np.ndarray, field: str) -> list:
    return [io.scalar_to_json(x, field) for x in mat.reshape(-1)] if mat.size else []


def _vector_text(mat: np.ndarray) -> str:
    return "[" + ", ".join(_fmt(x) for x in mat.reshape(-1)) + "]" if mat.size else "[]"


def cmd_find_integrals(args) -> int:
    H = io.load_structure(args.file)
    cfg = _config(args, H.field)
    H = _retarget(H, cfg.backend)
    dualized = isinstance(H, HopfGAlgebra)
    C = dualize(H) if dualized else H
    mu = solve_g_integral(C, side="right", tol=cfg.tolerance)
    e = solve_cointegral(C, side="right", tol=cfg.tolerance)
    mu, e = normalize_pair(C, mu, e, cfg.tolerance)
    G, f = C.group, C.field

    # For an algebra file the solved quantities live on the dual: the
    # integral form family transposes to the cointegral elements e_g and
    # the dual cointegral transposes to the integral on the 1-sector.
    if dualized:
        payload = {
            "kind": "algebra",
            "mu": _vector_json(e.element, f),
            "e": {str(g): _vector_json(mu.forms[g], f) for g in G.elements()},
            "normalization": "mu(e_1) = 1",
        }
        lines = [f"integral mu on the 1-sector: {_vector_text(e.element)}",
                 "G-cointegral family e (right):"]
        lines += [
            f"  e[{G.name(g)}] = {_vector_text(mu.forms[g])}"
            for g in G.elements()
        ]
    else:
        payload = {
            "kind": "coalgebra",
            "mu": {str(g): _vector_json(mu.forms[g], f) for g in G.elements()},
            "e": _vector_json(e.element, f),
            "normalization": "mu_1(e) = 1",
        }
        lines = ["G-integral mu (right, normalized so mu_1(e) = 1):"]
        lines += [
            f"  mu[{G.name(g)}] = {_vector_text(mu.forms[g])}"
            for g in G.elements()
        ]
        lines.append(f"cointegral e (right): {_vector_text(e.element)}")
    _emit(cfg, lines, payload)
    return 0


# ---------------------------------------------------------------------------
# invariant


def cmd_invariant(args) -> int:
    cfg = _config(args, _DEMO_FIELDS[args.demo_triplet])
    d = _load_trisection(args)
    t, e = _demo_triplet(args.demo_triplet, cfg.backend, cfg.tolerance)
    G = t.alpha.group
    if args.color is not None:
        images = _parse_colors(args.color, G)
        res = bundle_invariant(
            d, images, t, e, cfg.root_branch, cfg.tolerance
        )
    else:
        if args.coloring is not None:
            c = _file_coloring(args.coloring, d, G)
        else:
            c = _trivial_coloring(d, G)
        res = normalized_invariant(d, c, t, e, cfg.root_branch, cfg.tolerance)
    f = t.alpha.field
    payload = {
        "bracket": io.scalar_to_json(res.bracket, f),
        "zeta": io.scalar_to_json(res.zeta, f),
        "genus": res.genus,
        "Z": io.scalar_to_json(res.value, f),
        "root": res.root_choice,
    }
    lines = [
        f"bracket {_fmt(res.bracket)}",
        f"zeta    {_fmt(res.zeta)} ({res.root_choice})",
        f"genus   {res.genus}",
        f"Z       {_fmt(res.value)}",
    ]
    _emit(cfg, lines, payload)
    return 0


# ---------------------------------------------------------------------------
# verify-moves


_MAX_CROSSINGS = 90


def _sequence(d, ref) -> tuple:
    return d.curve(ref).crossing_sequence


def _all_refs(d) -> list:
    return [
        (name, k) for name in d.families() for k in range(d.genus)
    ]


def _try_insert(rng, d, c):
    if d.genus == 0 or len(d.crossings) + 2 > _MAX_CROSSINGS:
        return None
    fam_x, fam_y = rng.sample(list(d.families()), 2)
    rx = (fam_x, rng.randrange(d.genus))
    ry = (fam_y, rng.randrange(d.genus))
    px = rng.randint(0, len(_sequence(d, rx)))
    py = rng.randint(0, len(_sequence(d, ry)))
    sign = rng.choice((1, -1))
    d2 = insert_two_point(d, rx, px, ry, py, sign)
    desc = (
        f"insert-two-point {rx[0]}[{rx[1]}]@{px} {ry[0]}[{ry[1]}]@{py} "
        f"sign {sign:+d}"
    )
    return desc, d2, c


def _try_cancel(rng, d, c):
    by_pair = {}
    for x in d.crossings:
        by_pair.setdefault(frozenset((x.curve_a, x.curve_b)), []).append(x)
    candidates = []
    for members in by_pair.values():
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                if a.sign == -b.sign:
                    candidates.append((a.id, b.id))
    rng.shuffle(candidates)
    for first, second in candidates:
        try:
            d2 = apply_two_point(d, first, second)
        except NotCancellablePair:
            continue
        return f"two-point-cancel {first} {second}", d2, c
    return None


def _try_triangle(rng, d, c):
    neighbors = {}
    for ref in _all_refs(d):
        seq = _sequence(d, ref)
        n = len(seq)
        if n < 2:
            continue
        for k in range(n):
            p, q = seq[k], seq[(k + 1) % n]
            if p != q:
                neighbors.setdefault(p, set()).add(q)
                neighbors.setdefault(q, set()).add(p)
    candidates = []
    for x, near in neighbors.items():
        for y in near:
            if y <= x:
                continue
            for z in near & neighbors.get(y, set()):
                if z > y:
                    candidates.append((x, y, z))
    rng.shuffle(candidates)
    for x, y, z in candidates:
        try:
            d2 = apply_three_point(d, x, y, z)
        except NoTriangle:
            continue
        return f"three-point {x} {y} {z}", d2, c
    return None


def _try_slide(rng, d, c):
    if d.genus < 2:
        return None
    fam = rng.choice(list(d.families()))
    idx_m, idx_o = rng.sample(range(d.genus), 2)
    template = len(_sequence(d, (fam, idx_o)))
    if template == 0 or template > 6:
        return None
    if len(d.crossings) + template > _MAX_CROSSINGS:
        return None
    attach = rng.randint(0, len(_sequence(d, (fam, idx_m))))
    d2, c2 = apply_handle_slide(d, c, (fam, idx_m), (fam, idx_o), attach)
    desc = f"handle-slide {fam}[{idx_m}] over {fam}[{idx_o}] attach {attach}"
    return desc, d2, c2


def _try_reverse(rng, d, c):
    if d.genus == 0:
        return None
    ref = rng.choice(_all_refs(d))
    d2, c2 = reverse_orientation(d, c, ref)
    return f"reverse-orientation {ref[0]}[{ref[1]}]", d2, c2


def _try_basepoint(rng, d, c):
    options = [ref for ref in _all_refs(d) if len(_sequence(d, ref)) >= 2]
    if not options:
        return None
    ref = rng.choice(options)
    offset = rng.randrange(1, len(_sequence(d, ref)))
    d2 = move_basepoint(d, ref, offset)
    return f"move-basepoint {ref[0]}[{ref[1]}] offset {offset}", d2, c


def _try_stabilize(rng, d, c):
    if len(d.crossings) + 6 > _MAX_CROSSINGS:
        return None
    d2, c2 = stabilize(d, c)
    return "stabilize", d2, c2


def _try_destabilize(rng, d, c):
    try:
        d2, c2 = destabilize(d, c)
    except NotAStabilization:
        return None
    return "destabilize", d2, c2


_MOVE_KINDS = (
    _try_insert,
    _try_cancel,
    _try_triangle,
    _try_slide,
    _try_reverse,
    _try_basepoint,
    _try_stabilize,
    _try_destabilize,
)


def _random_move(rng, d, c):
    kinds = list(_MOVE_KINDS)
    rng.shuffle(kinds)
    for kind in kinds:
        out = kind(rng, d, c)
        if out is not None:
            return out
    raise InvarianceViolation("no applicable move on this diagram")


def _values_match(a, b, field: str, tol: float) -> bool:
    if field == EXACT:
        return a == b
    return abs(a - b) <= tol * (1 + abs(b))


def cmd_verify_moves(args) -> int:
    cfg = _config(args, _DEMO_FIELDS[args.demo_triplet])
    d = _load_trisection(args)
    t, e = _demo_triplet(args.demo_triplet, cfg.backend, cfg.tolerance)
    G = t.alpha.group
    if args.color is not None:
        c = Coloring(G, _parse_colors(args.color, G))
        if len(c.colors) != d.genus or not validate_coloring(d, c):
            raise ColoringInvalid("colors do not satisfy the curve words")
    elif args.coloring is not None:
        c = _file_coloring(args.coloring, d, G)
    else:
        c = _trivial_coloring(d, G)

    reference = normalized_invariant(
        d, c, t, e, cfg.root_branch, cfg.tolerance
    ).value
    rng = random.Random(cfg.seed)
    trace = []
    field = t.alpha.field
    for step in range(args.trials):
        desc, d, c = _random_move(rng, d, c)
        trace.append(desc)
        value = normalized_invariant(
            d, c, t, e, cfg.root_branch, cfg.tolerance
        ).value
        if not _values_match(value, reference, field, cfg.tolerance):
            payload = {
                "ok": False,
                "failed_at": step + 1,
                "expected": io.scalar_to_json(reference, field),
                "got": io.scalar_to_json(value, field),
                "trace": trace,
            }
            lines = [
                f"move {k + 1}: {line}" for k, line in enumerate(trace)
            ]
            _emit(cfg, lines, payload)
            raise InvarianceViolation(
                f"Z changed after move {step + 1} ({desc}): "
                f"{_fmt(value)}, expected {_fmt(reference)}"
            )
    payload = {
        "ok": True,
        "trials": args.trials,
        "Z": io.scalar_to_json(reference, field),
        "trace": trace,
    }
    _emit(
        cfg,
        [f"{args.trials} random moves preserved Z = {_fmt(reference)}"],
        payload,
    )
    return 0


# ---------------------------------------------------------------------------
# sum-bundles


def cmd_sum_bundles(args) -> int:
    cfg = _config(args, _DEMO_FIELDS[args.demo_triplet])
    d = _load_trisection(args)
    t, e = _demo_triplet(args.demo_triplet, cfg.backend, cfg.tolerance)
    G = t.alpha.group
    if args.group is not None:
        wanted = io.load_group(args.group)
        if wanted != G:
            raise ColoringInvalid(
                "summation group differs from the grading group"
            )
    rows = bundle_table(d, G, t, e, cfg.root_branch, cfg.tolerance)
    field = t.alpha.field
    total = sum((v for _, v in rows), start=Fraction(0) if field == EXACT else 0j)

    def label(c: Coloring) -> str:
        return ",".join(G.name(a) for a in c.colors) if c.colors else "()"

    width = max([len(label(c)) for c, _ in rows] + [len("coloring")])
    lines = [f"{'coloring':<{width}}  Z"]
    lines += [f"{label(c):<{width}}  {_fmt(v)}" for c, v in rows]
    lines.append(f"{'sum':<{width}}  {_fmt(total)}")
    payload = {
        "entries": [
            {
                "coloring": [G.name(a) for a in c.colors],
                "value": io.scalar_to_json(v, field),
            }
            for c, v in rows
        ],
        "sum": io.scalar_to_json(total, field),
    }
    _emit(cfg, lines, payload)
    return 0


# ---------------------------------------------------------------------------
# demo


def cmd_demo(args) -> int:
    cfg = _config(args, FLOAT)
    if args.name != "d8":
        raise UnknownName(f"no demo named {args.name!r}")
    rep = d8_demo()
    G = rep.group
    lines = [
        "flat circle-bundle invariants over the dihedral group of order 16,",
        "graded through the order-halving map from the dihedral group of",
        "order 8; the value detects which monodromies lift.",
        f"zeta = {_fmt(rep.zeta)} (cube root of the stabilizer bracket)",
        f"{'alpha':<6} {'fiber':>5}  Z",
    ]
    for a in G.elements():
        lines.append(
            f"{G.name(a):<6} {rep.fiber_sizes[a]:>5}  {_fmt(rep.values[a])}"
        )
    payload = {
        "zeta": io.scalar_to_json(rep.zeta, FLOAT),
        "image": [G.name(a) for a in rep.image],
        "entries": [
            {
                "alpha": G.name(a),
                "fiber": rep.fiber_sizes[a],
                "value": io.scalar_to_json(rep.values[a], FLOAT),
            }
            for a in G.elements()
        ],
    }
    _emit(cfg, lines, payload)
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _add_common(sub) -> None:
    sub.add_argument(
        "--backend",
        choices=(EXACT, FLOAT),
        default=None,
        help="scalar backend; defaults to the file's field or the "
        "demo triplet's natural choice",
    )
    sub.add_argument(
        "--tolerance", type=_positive_float, default=DEFAULT_TOL,
        help="float comparison tolerance",
    )
    sub.add_argument(
        "--root-branch",
        choices=("principal", "real"),
        default="principal",
        dest="root_branch",
        help="cube root branch for the float normalizer",
    )
    sub.add_argument("--seed", type=int, default=0, help="randomness seed")
    sub.add_argument(
        "--output", choices=("text", "json"), default="text",
        help="output format",
    )


def _add_diagram_source(sub) -> None:
    grp = sub.add_mutually_exclusive_group(required=True)
    grp.add_argument(
        "--builtin", metavar="NAME",
        help="built-in diagram, e.g. t_st, s1_x_s3, heegaard_lens(5,1)",
    )
    grp.add_argument("--diagram", metavar="FILE", help="diagram file")


def _add_coloring_source(sub) -> None:
    grp = sub.add_mutually_exclusive_group()
    grp.add_argument(
        "--color", metavar="NAMES",
        help="comma-separated element names, one per alpha curve",
    )
    grp.add_argument("--coloring", metavar="FILE", help="coloring file")


def _add_triplet(sub) -> None:
    sub.add_argument(
        "--demo-triplet",
        choices=sorted(_DEMO_FIELDS),
        required=True,
        dest="demo_triplet",
        help="built-in structure triplet",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopftrisect",
        description="Trisection invariants of closed 4-manifolds from "
        "group-graded Hopf structures.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser(
        "check-hopf", help="run the axiom suite on a structure file"
    )
    sub.add_argument("file", help="Hopf structure file (JSON)")
    _add_common(sub)
    sub.set_defaults(handler=cmd_check_hopf)

    sub = subs.add_parser(
        "find-integrals",
        help="solve and normalize the integral and cointegral",
    )
    sub.add_argument("file", help="Hopf structure file (JSON)")
    _add_common(sub)
    sub.set_defaults(handler=cmd_find_integrals)

    sub = subs.add_parser(
        "invariant", help="evaluate one colored diagram"
    )
    _add_diagram_source(sub)
    _add_coloring_source(sub)
    _add_triplet(sub)
    _add_common(sub)
    sub.set_defaults(handler=cmd_invariant)

    sub = subs.add_parser(
        "verify-moves",
        help="apply random moves and confirm the invariant is unchanged",
    )
    _add_diagram_source(sub)
    _add_coloring_source(sub)
    _add_triplet(sub)
    sub.add_argument(
        "--trials", type=_positive_int, default=50,
        help="number of random moves",
    )
    _add_common(sub)
    sub.set_defaults(handler=cmd_verify_moves)

    sub = subs.add_parser(
        "sum-bundles",
        help="tabulate the invariant over every coloring and sum",
    )
    _add_diagram_source(sub)
    _add_triplet(sub)
    sub.add_argument(
        "--group", metavar="FILE",
        help="group file; must match the triplet's grading group",
    )
    _add_common(sub)
    sub.set_defaults(handler=cmd_sum_bundles)

    sub = subs.add_parser("demo", help="print a worked example")
    sub.add_argument("name", help="demo name (d8)")
    _add_common(sub)
    sub.set_defaults(handler=cmd_demo)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as err:
        print(f"ParseError: {err}", file=sys.stderr)
        return 2
    except HopfTrisectError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
