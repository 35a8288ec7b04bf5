"""Bracket contraction for colored diagrams and the normalized invariants.

The bracket of a colored trisection diagram is the full contraction of a
tensor network with one node per curve and one per crossing.  A curve node
is the iterated coproduct of a cointegral with one outgoing leg per
crossing visit; a crossing node is the evaluation form between the two
families involved, composed with an antipode when the crossing is
negative.  Dividing by a cube root of the standard summand's bracket, one
factor per handle, makes the value stable under every diagram move.

Heegaard diagrams get the same treatment with the kappa family absent and
an evaluation doublet in place of the triplet.  At the trivial grading
group this is the involutory-Hopf-algebra 3-manifold invariant of
Kuperberg; with a grading group it is Virelizier's flat-bundle refinement.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .diagrams import (
    Coloring,
    builtin,
    enumerate_colorings,
    evaluate_word,
    pi1_presentation,
    validate_coloring,
    word_str,
)
from .errors import HopfTrisectError
from .hopf import (
    Cointegral,
    GCointegral,
    solve_cointegral,
    solve_g_cointegral,
)
from .pairings import HopfGDoublet, HopfGTriplet
from .scalars import DEFAULT_TOL, EXACT, as_scalar
from .tensors import TensorNetwork, contract, tensor_from_matrix


class ColoringInvalid(HopfTrisectError):
    """The coloring breaks a word constraint or names the wrong group."""


class GradingClash(HopfTrisectError):
    """Sector bookkeeping inside a node contradicts the coloring; the
    diagram data is corrupt."""


class NoRoot(HopfTrisectError):
    """The stabilizer bracket has no cube root on the requested branch."""


class ZeroStabilizer(HopfTrisectError):
    """The standard summand contracts to zero; nothing can be normalized."""


class NotAMonodromy(HopfTrisectError):
    """Generator images fail a relator of the fundamental group."""


class DegenerateNormalizer(HopfTrisectError):
    """The cointegral pairing used for normalization vanishes."""


@dataclass(frozen=True)
class IntegralBundle:
    """The cointegral choices feeding a bracket.

    ``alpha`` is a G-cointegral for the algebra side of a triplet; ``beta``
    and ``kappa`` are cointegrals of the identity-sector Hopf algebras
    inside the two coalgebra sides.  Brackets scale monomially in these
    choices and the normalized invariant does not depend on them, but a
    bundle must be fixed once and used consistently.
    """

    alpha: GCointegral
    beta: Cointegral
    kappa: Cointegral


@dataclass(frozen=True)
class CointegralPair:
    """Cointegrals for the two members of a doublet (Heegaard brackets)."""

    alpha: GCointegral
    beta: Cointegral


def solve_bundle(t: HopfGTriplet, tol: float = DEFAULT_TOL) -> IntegralBundle:
    """Solve the three cointegrals of a triplet, two-sided.

    Each solver scales its solution so the leading entry is 1, which is the
    normalization all bracket examples in this package are quoted in.
    """
    return IntegralBundle(
        alpha=solve_g_cointegral(t.alpha, side="two-sided", tol=tol),
        beta=solve_cointegral(t.beta, side="two-sided", tol=tol),
        kappa=solve_cointegral(t.kappa, side="two-sided", tol=tol),
    )


def solve_pair(p: HopfGDoublet, tol: float = DEFAULT_TOL) -> CointegralPair:
    """Two-sided cointegrals for both members of a doublet."""
    return CointegralPair(
        alpha=solve_g_cointegral(p.first, side="two-sided", tol=tol),
        beta=solve_cointegral(p.second, side="two-sided", tol=tol),
    )


@dataclass(frozen=True)
class BracketAssignment:
    """A ready-to-contract network plus a recipe note per node.

    ``provenance`` maps each node id (``"alpha:0"``, ``"x:3"``, ...) to a
    short description of the tensor placed there.
    """

    network: TensorNetwork
    provenance: dict


@dataclass(frozen=True)
class InvariantResult:
    """A bracket together with its normalization data.

    ``value`` is ``bracket / zeta**genus``; ``root_choice`` names the cube
    root branch ζ was taken on ("exact-rational", "principal", or "real").
    """

    bracket: object
    genus: int
    zeta: object
    value: object
    root_choice: str


_SPACES = {"alpha": "Ha", "beta": "Hb", "kappa": "Hk"}


class _Engine:
    """Memoized node and crossing tensors for one structure/cointegral pair.

    Node vectors are built by iterating the coproduct on the cointegral
    directly, splitting one tensor factor per step, so the cost stays
    linear in the number of legs.  Crossing tensors are bilinear forms,
    possibly composed with an antipode on the coalgebra-side leg.  Caches
    are only ever extended, never rewritten, so concurrent lookups at worst
    recompute a value.
    """

    def __init__(self, alpha, coalgebras, e_alpha, cointegrals, forms, kb):
        self.alpha = alpha
        self.group = alpha.group
        self.field = alpha.field
        self.coalgebras = coalgebras
        self.e_alpha = e_alpha
        self.cointegrals = cointegrals
        self.forms = forms
        self.kb = kb
        self._nodes = {}
        self._crossings = {}
        self.stabilizer = None
        self.roots = {}

    def alpha_node(self, color: int, n: int):
        key = ("alpha", color, n)
        hit = self._nodes.get(key)
        if hit is not None:
            return hit
        A = self.alpha
        d = A.dims[color]
        if n == 0:
            node = tensor_from_matrix(
                np.dot(A.epsilon[color], self.e_alpha.elements[color]), (), ()
            )
        else:
            v = self.e_alpha.elements[color]
            if d:
                for _ in range(n - 1):
                    v = np.dot(A.Delta[color], v.reshape(d, v.size // d))
            node = tensor_from_matrix(v, tuple(("Ha", color, d) for _ in range(n)), ())
        self._nodes[key] = node
        return node

    def graded_node(self, family: str, grading: tuple):
        key = (family, grading)
        hit = self._nodes.get(key)
        if hit is not None:
            return hit
        B = self.coalgebras[family]
        e = self.cointegrals[family]
        G = self.group
        n = len(grading)
        if n == 0:
            node = tensor_from_matrix(np.dot(B.epsilon, e.element), (), ())
        else:
            suffix = [G.identity] * n
            suffix[n - 1] = grading[n - 1]
            for k in range(n - 2, -1, -1):
                suffix[k] = G.mul(grading[k], suffix[k + 1])
            if suffix[0] != G.identity:
                raise GradingClash(
                    f"{family} legs grade to a non-identity product")
            v = e.element
            prefix = 1
            for k in range(n - 1):
                delta = B.Delta[grading[k], suffix[k + 1]]
                v = np.dot(v.reshape(prefix, B.dims[suffix[k]]), delta.T)
                prefix *= B.dims[grading[k]]
            space = _SPACES[family]
            node = tensor_from_matrix(
                v, tuple((space, b, B.dims[b]) for b in grading), ()
            )
        self._nodes[key] = node
        return node

    def crossing_node(self, kind: str, color: int, sign: int):
        key = (kind, color, sign)
        hit = self._crossings.get(key)
        if hit is not None:
            return hit
        G = self.group
        one = G.identity
        if kind == "kb":
            beta = self.coalgebras["beta"]
            mat = self.kb
            if sign == -1:
                mat = np.dot(mat, beta.S[one])
            row = ("Hk", one, self.coalgebras["kappa"].dims[one])
            col = ("Hb", one, beta.dims[one])
        else:
            family = "beta" if kind == "ab" else "kappa"
            B = self.coalgebras[family]
            mat = self.forms[kind][color]
            if sign == -1:
                other = G.inv(color)
                mat = np.dot(mat, B.S[other])
            else:
                other = color
            row = ("Ha", color, self.alpha.dims[color])
            col = (_SPACES[family], other, B.dims[other])
        node = tensor_from_matrix(mat, (), (row, col))
        self._crossings[key] = node
        return node


_ENGINES: dict = {}
_PINNED: list = []


def _engine(structure, e) -> _Engine:
    """The memo engine for this structure/cointegral pair, by identity.

    The inputs hold numpy arrays, so they cannot be hashed; keying by id
    and pinning a reference keeps the key valid for the process lifetime.
    """
    key = (id(structure), id(e))
    eng = _ENGINES.get(key)
    if eng is None:
        if isinstance(structure, HopfGTriplet):
            eng = _Engine(
                alpha=structure.alpha,
                coalgebras={"beta": structure.beta, "kappa": structure.kappa},
                e_alpha=e.alpha,
                cointegrals={"beta": e.beta, "kappa": e.kappa},
                forms={"ab": structure.form_ab, "ak": structure.form_ak},
                kb=structure.form_kb,
            )
        elif isinstance(structure, HopfGDoublet):
            eng = _Engine(
                alpha=structure.first,
                coalgebras={"beta": structure.second},
                e_alpha=e.alpha,
                cointegrals={"beta": e.beta},
                forms={"ab": structure.forms},
                kb=None,
            )
        else:
            raise TypeError(f"no bracket engine for {type(structure).__name__}")
        _ENGINES[key] = eng
        _PINNED.append((structure, e))
    return eng


def _crossing_kind(x):
    families = {x.curve_a[0], x.curve_b[0]}
    if families == {"alpha", "beta"}:
        return "ab"
    if families == {"alpha", "kappa"}:
        return "ak"
    return "kb"


def _assemble(d, c: Coloring, eng: _Engine) -> BracketAssignment:
    """Build the bracket network of a colored diagram over an engine."""
    G = eng.group
    xmap = d.crossing_map()
    nodes, provenance, edges = {}, {}, []

    for family in d.families():
        for curve in d.family(family):
            nid = f"{family}:{curve.index}"
            seq = curve.crossing_sequence
            if family == "alpha":
                color = c.colors[curve.index]
                nodes[nid] = eng.alpha_node(color, len(seq))
                what = "counit of" if not seq else f"{len(seq)}-fold coproduct of"
                provenance[nid] = f"{what} e_alpha at color {color}"
            else:
                grading = []
                for xid in seq:
                    partner = xmap[xid].other((family, curve.index))
                    if partner[0] == "alpha":
                        a = c.colors[partner[1]]
                        grading.append(a if xmap[xid].sign == 1 else G.inv(a))
                    else:
                        grading.append(G.identity)
                grading = tuple(grading)
                nodes[nid] = eng.graded_node(family, grading)
                what = (
                    "counit of"
                    if not grading
                    else f"coproduct into sectors {grading} of"
                )
                provenance[nid] = f"{what} e_{family}"

    for xid in sorted(xmap):
        x = xmap[xid]
        kind = _crossing_kind(x)
        if kind == "kb":
            row = x.curve_a if x.curve_a[0] == "kappa" else x.curve_b
            col = x.other(row)
            color = G.identity
            label = "kappa-beta pairing"
        else:
            row = x.curve_a if x.curve_a[0] == "alpha" else x.curve_b
            col = x.other(row)
            color = c.colors[row[1]]
            label = f"alpha-{col[0]} pairing at color {color}"
        nid = f"x:{xid}"
        nodes[nid] = eng.crossing_node(kind, color, x.sign)
        if x.sign == -1:
            label += " after the antipode"
        provenance[nid] = label
        for leg, ref in ((0, row), (1, col)):
            pos = d.curve(ref).crossing_sequence.index(xid)
            edges.append(((f"{ref[0]}:{ref[1]}", pos), (nid, leg)))

    return BracketAssignment(TensorNetwork.build(nodes, edges), provenance)


def assign_bracket_network(
    d, c: Coloring, t: HopfGTriplet, e: IntegralBundle
) -> BracketAssignment:
    """The bracket network of a colored trisection diagram.

    The network has one node per curve and one per crossing; contracting
    it yields the bracket.  Raises ColoringInvalid unless the coloring is
    over the triplet's grading group and closes every curve word.
    """
    G = t.alpha.group
    if c.group != G:
        raise ColoringInvalid("coloring group differs from the grading group")
    if len(c.colors) != d.genus:
        raise ColoringInvalid("expected one color per alpha curve")
    if not validate_coloring(d, c):
        raise ColoringInvalid("curve words do not close up at these colors")
    return _assemble(d, c, _engine(t, e))


def _contract_value(net: TensorNetwork, field: str):
    if not net.nodes:
        return as_scalar(1, field)
    return contract(net).scalar()


def trisection_bracket(d, c: Coloring, t: HopfGTriplet, e: IntegralBundle):
    """Contract the bracket network to a scalar.

    Multiplicative under connected sum, and the empty (genus-0) diagram
    gives 1.
    """
    assignment = assign_bracket_network(d, c, t, e)
    return _contract_value(assignment.network, t.alpha.field)


def _integer_cuberoot(m: int):
    """The integer r with r**3 == m for m >= 0, or None."""
    if m == 0:
        return 0
    r = 1 << ((m.bit_length() + 2) // 3)
    while True:
        n = (2 * r + m // (r * r)) // 3
        if n >= r:
            break
        r = n
    while r**3 > m:
        r -= 1
    while (r + 1) ** 3 <= m:
        r += 1
    return r if r**3 == m else None


def _stabilizer_root(t, e, root_branch: str, tol: float):
    """ζ with ζ³ = bracket of the standard summand, cached per (t, e)."""
    if root_branch not in ("principal", "real"):
        raise ValueError(f"unknown root branch {root_branch!r}")
    eng = _engine(t, e)
    branch = "exact-rational" if eng.field == EXACT else root_branch
    hit = eng.roots.get(branch)
    if hit is not None:
        return hit

    st = eng.stabilizer
    if st is None:
        G = eng.group
        ident = Coloring(G, (G.identity,) * 3)
        st = trisection_bracket(builtin("t_st"), ident, t, e)
        eng.stabilizer = st

    if eng.field == EXACT:
        if st == 0:
            raise ZeroStabilizer("the standard summand has bracket 0")
        st = Fraction(st)
        num = _integer_cuberoot(abs(st.numerator))
        den = _integer_cuberoot(st.denominator)
        if num is None or den is None:
            raise NoRoot(f"{st} is not the cube of a rational")
        zeta = Fraction(-num if st.numerator < 0 else num, den)
    else:
        if abs(st) <= tol:
            raise ZeroStabilizer("the standard summand has bracket 0")
        if branch == "real":
            if abs(st.imag) > tol * (1 + abs(st)):
                raise NoRoot("the stabilizer bracket is not real")
            zeta = complex(math.copysign(abs(st.real) ** (1 / 3), st.real))
        else:
            zeta = cmath.exp(cmath.log(st) / 3)
    hit = (zeta, branch)
    eng.roots[branch] = hit
    return hit


def normalized_invariant(
    d,
    c: Coloring,
    t: HopfGTriplet,
    e: IntegralBundle,
    root_branch: str = "principal",
    tol: float = DEFAULT_TOL,
) -> InvariantResult:
    """The bracket divided by ζ^genus, with ζ³ the standard summand's bracket.

    ζ is computed once per (t, e) and cached.  On the exact backend the
    root must be rational (NoRoot otherwise) and root_branch is ignored; on
    the float backend "principal" takes the principal complex root and
    "real" insists on a real bracket and preserves its sign.
    """
    bracket = trisection_bracket(d, c, t, e)
    zeta, choice = _stabilizer_root(t, e, root_branch, tol)
    return InvariantResult(
        bracket=bracket,
        genus=d.genus,
        zeta=zeta,
        value=bracket / zeta**d.genus,
        root_choice=choice,
    )


def bundle_invariant(
    d,
    images,
    t: HopfGTriplet,
    e: IntegralBundle,
    root_branch: str = "principal",
    tol: float = DEFAULT_TOL,
) -> InvariantResult:
    """The invariant of the flat bundle with the given monodromy images.

    ``images`` lists one grading-group element per alpha curve; they must
    satisfy every relator of the diagram's fundamental group (checked, as
    NotAMonodromy) and then serve directly as the coloring.
    """
    G = t.alpha.group
    images = tuple(images)
    pres = pi1_presentation(d)
    if len(images) != len(pres.generators):
        raise NotAMonodromy("expected one image per generator")
    if not all(0 <= a < G.order for a in images):
        raise NotAMonodromy("images must be elements of the grading group")
    for w in pres.relators:
        if evaluate_word(G, w, images) != G.identity:
            raise NotAMonodromy(
                f"images violate the relator {word_str(w, pres.generators)}")
    return normalized_invariant(d, Coloring(G, images), t, e, root_branch, tol)


def _thread_count() -> int:
    raw = os.environ.get("HOPF_TRISECT_THREADS", "")
    try:
        return max(int(raw), 1)
    except ValueError:
        return 1


def bundle_table(
    d,
    G,
    t: HopfGTriplet,
    e: IntegralBundle,
    root_branch: str = "principal",
    tol: float = DEFAULT_TOL,
):
    """Normalized invariant of every coloring of d by G, as (coloring,
    value) rows in enumeration order.

    Honors HOPF_TRISECT_THREADS: with more than one thread the colorings
    are contracted concurrently after ζ (and hence the shared caches'
    single mandatory entry) is computed up front.
    """
    if G != t.alpha.group:
        raise ColoringInvalid("summation group differs from the grading group")
    colorings = enumerate_colorings(d, G)
    _stabilizer_root(t, e, root_branch, tol)

    def value(c: Coloring):
        return normalized_invariant(d, c, t, e, root_branch, tol).value

    workers = _thread_count()
    if workers > 1 and len(colorings) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(value, colorings))
    else:
        values = [value(c) for c in colorings]
    return list(zip(colorings, values))


def bundle_sum(
    d,
    G,
    t: HopfGTriplet,
    e: IntegralBundle,
    root_branch: str = "principal",
    tol: float = DEFAULT_TOL,
):
    """Sum of the normalized invariant over every coloring of d by G."""
    total = as_scalar(0, t.alpha.field)
    for _, v in bundle_table(d, G, t, e, root_branch, tol):
        total = total + v
    return total


def _doublet_normalizer(p: HopfGDoublet, e: CointegralPair, tol: float):
    one = p.first.group.identity
    val = np.dot(
        np.dot(e.alpha.elements[one].T, p.forms[one]), e.beta.element
    )[0, 0]
    degenerate = val == 0 if p.first.field == EXACT else abs(val) <= tol
    if degenerate:
        raise DegenerateNormalizer(
            "the cointegral pairing at the identity sector vanishes")
    return val


def _heegaard_value(hd, c: Coloring, p: HopfGDoublet, e: CointegralPair,
                    tol: float):
    assignment = _assemble(hd, c, _engine(p, e))
    bracket = _contract_value(assignment.network, p.first.field)
    return bracket / _doublet_normalizer(p, e, tol) ** hd.genus


def heegaard_kuperberg(hd, p: HopfGDoublet, e: CointegralPair,
                       tol: float = DEFAULT_TOL):
    """Kuperberg's involutory-Hopf-algebra invariant of a Heegaard diagram.

    The doublet must live over the trivial grading group; the network is
    the two-family bracket with every sector at the identity, scaled by
    ⟨e_alpha, e_beta⟩ to the power -genus.
    """
    G = p.first.group
    if G.order != 1:
        raise ValueError(
            "the ungraded invariant needs a doublet over the trivial group")
    return _heegaard_value(hd, Coloring(G, (G.identity,) * hd.genus), p, e, tol)


def heegaard_virelizier(hd, p: HopfGDoublet, e: CointegralPair,
                        tol: float = DEFAULT_TOL):
    """Virelizier's flat-bundle invariant of a colored Heegaard diagram.

    The diagram must carry a valid coloring over the doublet's grading
    group; beta legs are graded by the crossing colors and the normalizer
    pairs the identity-sector cointegrals.  Over the trivial group this
    reproduces heegaard_kuperberg exactly.
    """
    c = hd.coloring
    if c is None:
        raise ColoringInvalid("the diagram carries no coloring")
    if c.group != p.first.group:
        raise ColoringInvalid("coloring group differs from the grading group")
    if len(c.colors) != hd.genus:
        raise ColoringInvalid("expected one color per alpha curve")
    if not validate_coloring(hd, c):
        raise ColoringInvalid("curve words do not close up at these colors")
    return _heegaard_value(hd, c, p, e, tol)
