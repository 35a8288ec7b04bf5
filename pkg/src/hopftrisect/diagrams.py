"""Combinatorial trisection and Heegaard diagrams with their move engine.

A diagram here is pure combinatorics: curves are cyclic sequences of
crossing ids, crossings record their two curves and a sign, and the surface
is never represented.  Signs are input data with the convention that a
crossing's sign is the exponent its alpha letter receives in a curve word;
whether a given sign assignment is realizable by an embedding is the data
producer's concern.

Moves return new diagrams (everything is immutable), and the ones that
touch colors return the updated coloring alongside.  Curve indices are
0-based throughout.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

from .errors import HopfTrisectError
from .groups import FiniteGroup
from .hopf import CheckEntry, CheckReport

FAMILIES = ("alpha", "beta", "kappa")
HEEGAARD_FAMILIES = ("alpha", "beta")


class NotCancellablePair(HopfTrisectError):
    """The two crossings do not bound a removable bigon."""


class NoTriangle(HopfTrisectError):
    """The three crossings do not form a slideable triangle."""


class InvalidSlide(HopfTrisectError):
    """The handle-slide specification is not applicable."""


class NotAStabilization(HopfTrisectError):
    """The diagram does not end in a standard stabilization summand."""


class UnknownName(HopfTrisectError):
    """No built-in diagram under the requested name."""


@dataclass(frozen=True)
class Curve:
    """One curve: its family, its index within the family, and the cyclic
    sequence of crossing ids met when traversing from the base point in the
    orientation direction."""

    family: str
    index: int
    crossing_sequence: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "crossing_sequence", tuple(self.crossing_sequence)
        )


@dataclass(frozen=True)
class DiagCrossing:
    """A transverse intersection of two curves from different families.

    ``sign`` is the letter exponent for word extraction; it flips whenever
    either participating curve reverses orientation.
    """

    id: int
    curve_a: tuple
    curve_b: tuple
    sign: int

    def other(self, curve: tuple) -> tuple:
        if curve == self.curve_a:
            return self.curve_b
        if curve == self.curve_b:
            return self.curve_a
        raise HopfTrisectError(f"curve {curve} is not part of crossing {self.id}")


@dataclass(frozen=True)
class Coloring:
    """Group elements attached to the alpha curves, one per curve."""

    group: FiniteGroup
    colors: tuple

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))


@dataclass(frozen=True)
class Presentation:
    """A finite presentation: one generator per alpha curve, one relator per
    beta and kappa word."""

    generators: tuple
    relators: tuple

    def __str__(self) -> str:
        rels = ", ".join(word_str(w, self.generators) for w in self.relators)
        return f"<{', '.join(self.generators)} | {rels}>"


@dataclass(frozen=True)
class TrisectionDiagram:
    """Three families of genus-many curves on an implicit genus-g surface."""

    genus: int
    alpha: tuple
    beta: tuple
    kappa: tuple
    crossings: tuple

    def family(self, name: str) -> tuple:
        if name not in FAMILIES:
            raise HopfTrisectError(f"unknown curve family {name!r}")
        return getattr(self, name)

    def families(self) -> tuple:
        return FAMILIES

    def curve(self, ref: tuple) -> Curve:
        family, index = ref
        curves = self.family(family)
        if not 0 <= index < len(curves):
            raise HopfTrisectError(f"no curve {ref}")
        return curves[index]

    def crossing_map(self) -> dict:
        return {x.id: x for x in self.crossings}


@dataclass(frozen=True)
class HeegaardDiagram:
    """Two curve families on a genus-g surface, optionally colored."""

    genus: int
    alpha: tuple
    beta: tuple
    crossings: tuple
    coloring: Coloring | None = None

    def family(self, name: str) -> tuple:
        if name not in HEEGAARD_FAMILIES:
            raise HopfTrisectError(f"unknown curve family {name!r}")
        return getattr(self, name)

    def families(self) -> tuple:
        return HEEGAARD_FAMILIES

    def curve(self, ref: tuple) -> Curve:
        family, index = ref
        curves = self.family(family)
        if not 0 <= index < len(curves):
            raise HopfTrisectError(f"no curve {ref}")
        return curves[index]

    def crossing_map(self) -> dict:
        return {x.id: x for x in self.crossings}


# ---------------------------------------------------------------------------
# validation and words


def validate(d) -> CheckReport:
    """Structural checks: family sizes, distinct-family crossings, and
    exact agreement between crossing incidences and curve sequences."""
    entries = []
    xmap = {}
    ids_unique = True
    for x in d.crossings:
        if x.id in xmap:
            ids_unique = False
        xmap[x.id] = x
    entries.append(
        CheckEntry("crossing-ids-unique", (), ids_unique,
                   None if ids_unique else "duplicate id")
    )

    for name in d.families():
        curves = d.family(name)
        ok = len(curves) == d.genus
        entries.append(
            CheckEntry("family-size", (name,), ok,
                       None if ok else f"{len(curves)} curves, genus {d.genus}")
        )
        for k, c in enumerate(curves):
            ok = c.family == name and c.index == k
            entries.append(
                CheckEntry("curve-labels", (name, k), ok,
                           None if ok else f"{c.family}[{c.index}]")
            )

    known = {(name, k) for name in d.families() for k in range(len(d.family(name)))}
    for x in d.crossings:
        fam_a, fam_b = x.curve_a[0], x.curve_b[0]
        distinct = fam_a != fam_b
        entries.append(
            CheckEntry("crossing-families-distinct", (x.id,), distinct,
                       None if distinct else f"{fam_a} meets itself")
        )
        resolvable = x.curve_a in known and x.curve_b in known
        entries.append(
            CheckEntry("crossing-endpoints-exist", (x.id,), resolvable,
                       None if resolvable else f"{x.curve_a} or {x.curve_b}")
        )
        sign_ok = x.sign in (1, -1)
        entries.append(
            CheckEntry("crossing-sign", (x.id,), sign_ok,
                       None if sign_ok else repr(x.sign))
        )

    # every incidence appears in the curve's sequence exactly once and
    # sequences contain nothing else
    for name in d.families():
        for k, c in enumerate(d.family(name)):
            incident = sorted(
                x.id for x in d.crossings if (name, k) in (x.curve_a, x.curve_b)
            )
            listed = sorted(c.crossing_sequence)
            ok = incident == listed
            entries.append(
                CheckEntry(
                    "sequence-matches-incidences", (name, k), ok,
                    None if ok else f"sequence {listed} vs incident {incident}",
                )
            )
    return CheckReport(tuple(entries))


def words(d):
    """Curve words over the alpha letters.

    For each beta curve (and each kappa curve, when the diagram has that
    family) the word lists (alpha index, exponent) pairs in traversal
    order; crossings with non-alpha partners contribute nothing.  Returns
    (beta words, kappa words), the latter empty for Heegaard diagrams.
    """
    xmap = d.crossing_map()

    def word_of(c: Curve) -> tuple:
        letters = []
        for xid in c.crossing_sequence:
            partner = xmap[xid].other((c.family, c.index))
            if partner[0] == "alpha":
                letters.append((partner[1], xmap[xid].sign))
        return tuple(letters)

    beta_words = tuple(word_of(c) for c in d.family("beta"))
    if "kappa" in d.families():
        kappa_words = tuple(word_of(c) for c in d.family("kappa"))
    else:
        kappa_words = ()
    return beta_words, kappa_words


def evaluate_word(G: FiniteGroup, word, colors) -> int:
    """Substitute colors into a word of (index, exponent) letters."""
    value = G.identity
    for idx, exp in word:
        letter = colors[idx] if exp == 1 else G.inv(colors[idx])
        value = G.mul(value, letter)
    return value


def free_reduce(word) -> tuple:
    """Cancel adjacent inverse letters until none remain (not cyclically)."""
    out = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def word_str(word, generators) -> str:
    if not word:
        return "1"
    return " ".join(
        generators[i] if e == 1 else f"{generators[i]}^-1" for i, e in word
    )


def validate_coloring(d, c: Coloring) -> bool:
    """True when every curve word evaluates to the identity at the colors."""
    G = c.group
    beta_words, kappa_words = words(d)
    return all(
        evaluate_word(G, w, c.colors) == G.identity
        for w in beta_words + kappa_words
    )


def pi1_presentation(d) -> Presentation:
    """Generators from the alpha curves, relators from the curve words."""
    generators = tuple(f"a{k + 1}" for k in range(d.genus))
    beta_words, kappa_words = words(d)
    return Presentation(generators, beta_words + kappa_words)


def enumerate_colorings(d, G: FiniteGroup):
    """All colorings valid over G, by exhaustive filter of G^genus.

    The result is in bijection with the homomorphisms from the presented
    fundamental group to G, ordered lexicographically by color tuple.
    """
    beta_words, kappa_words = words(d)
    relators = beta_words + kappa_words
    found = []
    for colors in itertools.product(G.elements(), repeat=d.genus):
        if all(evaluate_word(G, w, colors) == G.identity for w in relators):
            found.append(Coloring(G, colors))
    return found


# ---------------------------------------------------------------------------
# moves


def _replace_curve(d, ref: tuple, sequence: tuple):
    family, index = ref
    curves = list(d.family(family))
    curves[index] = replace(curves[index], crossing_sequence=tuple(sequence))
    return replace(d, **{family: tuple(curves)})


def _fresh_ids(d, count: int):
    taken = [x.id for x in d.crossings]
    start = max(taken) + 1 if taken else 0
    return list(range(start, start + count))


def _adjacent(seq: tuple, first, second) -> bool:
    n = len(seq)
    if n < 2:
        return False
    for k in range(n):
        here, there = seq[k], seq[(k + 1) % n]
        if {here, there} == {first, second}:
            return True
    return False


def insert_two_point(d, curve_x, pos_x, curve_y, pos_y, sign: int):
    """Introduce a cancelling pair of crossings between two curves.

    The new crossings land consecutively at ``pos_x`` in the first curve's
    sequence and at ``pos_y`` in the second's, with signs (sign, -sign);
    apply_two_point on the new pair restores the original diagram.
    """
    if curve_x[0] == curve_y[0]:
        raise NotCancellablePair("both curves belong to the same family")
    if sign not in (1, -1):
        raise NotCancellablePair(f"sign must be +1 or -1, got {sign!r}")
    cx, cy = d.curve(curve_x), d.curve(curve_y)
    if not 0 <= pos_x <= len(cx.crossing_sequence):
        raise NotCancellablePair(f"position {pos_x} outside {curve_x}")
    if not 0 <= pos_y <= len(cy.crossing_sequence):
        raise NotCancellablePair(f"position {pos_y} outside {curve_y}")
    id1, id2 = _fresh_ids(d, 2)
    pair = (
        DiagCrossing(id1, curve_x, curve_y, sign),
        DiagCrossing(id2, curve_x, curve_y, -sign),
    )
    sx = cx.crossing_sequence
    sy = cy.crossing_sequence
    d = replace(d, crossings=d.crossings + pair)
    d = _replace_curve(d, curve_x, sx[:pos_x] + (id1, id2) + sx[pos_x:])
    d = _replace_curve(d, curve_y, sy[:pos_y] + (id1, id2) + sy[pos_y:])
    return d


def apply_two_point(d, first: int, second: int):
    """Remove a cancelling pair: two crossings of the same two curves,
    adjacent in both cyclic sequences, with opposite signs."""
    xmap = d.crossing_map()
    if first not in xmap or second not in xmap:
        raise NotCancellablePair("no such crossing")
    a, b = xmap[first], xmap[second]
    if {a.curve_a, a.curve_b} != {b.curve_a, b.curve_b}:
        raise NotCancellablePair("crossings join different curve pairs")
    if a.sign != -b.sign:
        raise NotCancellablePair("signs do not cancel")
    for ref in (a.curve_a, a.curve_b):
        if not _adjacent(d.curve(ref).crossing_sequence, first, second):
            raise NotCancellablePair(f"pair not adjacent along {ref}")
    gone = {first, second}
    for ref in (a.curve_a, a.curve_b):
        seq = tuple(x for x in d.curve(ref).crossing_sequence if x not in gone)
        d = _replace_curve(d, ref, seq)
    return replace(d, crossings=tuple(x for x in d.crossings if x.id not in gone))


def apply_three_point(d, x: int, y: int, z: int):
    """Slide a curve past a crossing of the other two.

    The three crossings must pairwise share a curve and be adjacent in each
    shared curve's sequence; the move swaps each adjacent pair, and applying
    it twice restores the diagram.
    """
    xmap = d.crossing_map()
    for xid in (x, y, z):
        if xid not in xmap:
            raise NoTriangle(f"no crossing {xid}")
    pairs = [(x, y), (x, z), (y, z)]
    shared = []
    for p, q in pairs:
        a, b = xmap[p], xmap[q]
        common = {a.curve_a, a.curve_b} & {b.curve_a, b.curve_b}
        if len(common) != 1:
            raise NoTriangle(f"crossings {p} and {q} share {len(common)} curves")
        shared.append(common.pop())
    if len(set(shared)) != 3:
        raise NoTriangle("the three crossings do not involve three curves")
    for (p, q), ref in zip(pairs, shared):
        if not _adjacent(d.curve(ref).crossing_sequence, p, q):
            raise NoTriangle(f"crossings {p}, {q} not adjacent along {ref}")
    for (p, q), ref in zip(pairs, shared):
        seq = list(d.curve(ref).crossing_sequence)
        i, j = seq.index(p), seq.index(q)
        seq[i], seq[j] = seq[j], seq[i]
        d = _replace_curve(d, ref, tuple(seq))
    return d


def apply_handle_slide(d, c, moving: tuple, over: tuple, attach: int = 0):
    """Slide one curve over another in the same family.

    The moving curve gains a parallel copy of the other's crossings,
    spliced into its sequence at ``attach``; each copied crossing lands
    next to its original on the partner curve, on the side that keeps the
    curve words consistent.  For alpha slides the slid-over curve's color
    changes to moving^-1 * over; other families leave colors alone.
    """
    family, idx_m = moving
    family_o, idx_o = over
    if family not in d.families() or family_o not in d.families():
        raise InvalidSlide(f"unknown family in {moving} or {over}")
    if family != family_o:
        raise InvalidSlide("slides only combine curves of one family")
    if moving == over:
        raise InvalidSlide("a curve cannot slide over itself")
    count = len(d.family(family))
    if not (0 <= idx_m < count and 0 <= idx_o < count):
        raise InvalidSlide(f"curve index outside 0..{count - 1}")
    mover_ref, over_ref = moving, over
    mover_seq = d.curve(mover_ref).crossing_sequence
    if not 0 <= attach <= len(mover_seq):
        raise InvalidSlide(f"attach point {attach} outside the moving curve")

    xmap = d.crossing_map()
    template = d.curve(over_ref).crossing_sequence
    new_ids = _fresh_ids(d, len(template))
    copies = []
    for xid, new_id in zip(template, new_ids):
        x = xmap[xid]
        if x.curve_a == over_ref:
            copy = DiagCrossing(new_id, mover_ref, x.curve_b, x.sign)
        else:
            copy = DiagCrossing(new_id, x.curve_a, mover_ref, x.sign)
        copies.append(copy)
    d = replace(d, crossings=d.crossings + tuple(copies))

    # partner side: the copy sits before the original for positive
    # crossings and after it for negative ones, so every word rewrites
    # letters of the slid-over curve by the same two-letter substitution
    for xid, copy in zip(template, copies):
        partner = copy.other(mover_ref)
        seq = list(d.curve(partner).crossing_sequence)
        at = seq.index(xid)
        seq.insert(at if copy.sign == 1 else at + 1, copy.id)
        d = _replace_curve(d, partner, tuple(seq))

    mover_seq = d.curve(mover_ref).crossing_sequence
    block = tuple(new_ids)
    d = _replace_curve(d, mover_ref, mover_seq[:attach] + block + mover_seq[attach:])

    if c is not None and family == "alpha":
        G = c.group
        colors = list(c.colors)
        colors[idx_o] = G.mul(G.inv(colors[idx_m]), colors[idx_o])
        c = Coloring(G, tuple(colors))
        if not validate_coloring(d, c):
            raise HopfTrisectError("slide produced an invalid coloring")
    return d, c


def reverse_orientation(d, c, curve: tuple):
    """Reverse one curve: its sequence runs backward from the same base
    point, all its crossing signs flip, and an alpha curve's color inverts."""
    target = d.curve(curve)
    seq = target.crossing_sequence
    if seq:
        d = _replace_curve(d, curve, (seq[0],) + tuple(reversed(seq[1:])))
    flipped = tuple(
        replace(x, sign=-x.sign) if curve in (x.curve_a, x.curve_b) else x
        for x in d.crossings
    )
    d = replace(d, crossings=flipped)
    if c is not None and curve[0] == "alpha":
        colors = list(c.colors)
        colors[curve[1]] = c.group.inv(colors[curve[1]])
        c = Coloring(c.group, tuple(colors))
    return d, c


def conjugate_coloring(c: Coloring, b: int) -> Coloring:
    """Conjugate every color by one group element."""
    G = c.group
    return Coloring(G, tuple(G.conj(b, a) for a in c.colors))


def move_basepoint(d, curve: tuple, offset: int):
    """Rotate a curve's cyclic sequence so traversal starts further along."""
    seq = d.curve(curve).crossing_sequence
    if seq and not 0 <= offset < len(seq):
        raise HopfTrisectError(f"offset {offset} outside sequence of {curve}")
    if not seq or offset == 0:
        return d
    return _replace_curve(d, curve, seq[offset:] + seq[:offset])


def connected_sum(d1: TrisectionDiagram, d2: TrisectionDiagram) -> TrisectionDiagram:
    """Disjoint union of curve data; genus adds, crossing ids reallocate."""
    offset = len(d1.alpha)
    taken = [x.id for x in d1.crossings]
    id_base = max(taken) + 1 if taken else 0
    id_map = {x.id: id_base + k for k, x in enumerate(d2.crossings)}

    def shift_ref(ref):
        return (ref[0], ref[1] + offset)

    new_crossings = tuple(
        DiagCrossing(id_map[x.id], shift_ref(x.curve_a), shift_ref(x.curve_b), x.sign)
        for x in d2.crossings
    )

    def shift_curves(ours, theirs):
        moved = tuple(
            Curve(c.family, c.index + offset, tuple(id_map[i] for i in c.crossing_sequence))
            for c in theirs
        )
        return ours + moved

    return TrisectionDiagram(
        genus=d1.genus + d2.genus,
        alpha=shift_curves(d1.alpha, d2.alpha),
        beta=shift_curves(d1.beta, d2.beta),
        kappa=shift_curves(d1.kappa, d2.kappa),
        crossings=d1.crossings + new_crossings,
    )


def stabilize(d: TrisectionDiagram, c):
    """Connected sum with the standard genus-3 summand; its three new alpha
    curves are colored with the identity."""
    out = connected_sum(d, builtin("t_st"))
    if c is not None:
        one = c.group.identity
        c = Coloring(c.group, c.colors + (one, one, one))
    return out, c


def destabilize(d: TrisectionDiagram, c):
    """Undo a stabilization: the diagram must end, positionally, in the
    standard summand stabilize appends (trailing three curves per family,
    self-contained crossings, the standard pattern, identity colors)."""
    if d.genus < 3:
        raise NotAStabilization("genus below 3")
    cut = d.genus - 3

    block_refs = {
        (name, k) for name in FAMILIES for k in range(cut, d.genus)
    }
    block = [
        x for x in d.crossings
        if x.curve_a in block_refs or x.curve_b in block_refs
    ]
    if any(
        x.curve_a not in block_refs or x.curve_b not in block_refs for x in block
    ):
        raise NotAStabilization("trailing curves cross the rest of the diagram")

    # compare the trailing block against the standard summand, with both
    # sides relabelled by first appearance so id offsets wash out
    def fingerprint(diagram, base):
        order = []
        for name in FAMILIES:
            for k in range(base, base + 3):
                for xid in diagram.curve((name, k)).crossing_sequence:
                    if xid not in order:
                        order.append(xid)
        relabel = {xid: n for n, xid in enumerate(order)}
        seqs = tuple(
            tuple(relabel[x] for x in diagram.curve((name, base + k)).crossing_sequence)
            for name in FAMILIES
            for k in range(3)
        )
        xmap = diagram.crossing_map()
        shape = tuple(
            (
                frozenset(
                    (ref[0], ref[1] - base)
                    for ref in (xmap[xid].curve_a, xmap[xid].curve_b)
                ),
                xmap[xid].sign,
            )
            for xid in order
        )
        return seqs, shape

    model = builtin("t_st")
    if len(block) != len(model.crossings):
        raise NotAStabilization("trailing block has the wrong crossing count")
    if fingerprint(d, cut) != fingerprint(model, 0):
        raise NotAStabilization("trailing block differs from the standard summand")

    if c is not None:
        one = c.group.identity
        if tuple(c.colors[cut:]) != (one, one, one):
            raise NotAStabilization("summand colors are not the identity")
        c = Coloring(c.group, c.colors[:cut])
    block_ids = {x.id for x in block}
    out = TrisectionDiagram(
        genus=cut,
        alpha=d.alpha[:cut],
        beta=d.beta[:cut],
        kappa=d.kappa[:cut],
        crossings=tuple(x for x in d.crossings if x.id not in block_ids),
    )
    return out, c


# ---------------------------------------------------------------------------
# built-in diagrams


def _curves(family: str, sequences) -> tuple:
    return tuple(
        Curve(family, k, tuple(seq)) for k, seq in enumerate(sequences)
    )


def _standard_summand() -> TrisectionDiagram:
    """Genus-3 diagram of three tori; on torus j one family is the meridian
    of the other two, which run parallel.  Its six words are four single
    letters and two empty words, so the only coloring is all-identity."""
    crossings = (
        DiagCrossing(0, ("beta", 0), ("alpha", 0), 1),
        DiagCrossing(1, ("kappa", 0), ("alpha", 0), 1),
        DiagCrossing(2, ("beta", 1), ("alpha", 1), 1),
        DiagCrossing(3, ("beta", 1), ("kappa", 1), 1),
        DiagCrossing(4, ("kappa", 2), ("alpha", 2), 1),
        DiagCrossing(5, ("kappa", 2), ("beta", 2), 1),
    )
    return TrisectionDiagram(
        genus=3,
        alpha=_curves("alpha", [(0, 1), (2,), (4,)]),
        beta=_curves("beta", [(0,), (2, 3), (5,)]),
        kappa=_curves("kappa", [(1,), (3,), (4, 5)]),
        crossings=crossings,
    )


def _one_handle_sphere() -> TrisectionDiagram:
    return TrisectionDiagram(0, (), (), (), ())


def _product_of_circle() -> TrisectionDiagram:
    """Genus 1, all three curves parallel: no crossings, free words."""
    return TrisectionDiagram(
        genus=1,
        alpha=_curves("alpha", [()]),
        beta=_curves("beta", [()]),
        kappa=_curves("kappa", [()]),
        crossings=(),
    )


def _heegaard_sphere() -> HeegaardDiagram:
    return HeegaardDiagram(
        genus=1,
        alpha=_curves("alpha", [(0,)]),
        beta=_curves("beta", [(0,)]),
        crossings=(DiagCrossing(0, ("beta", 0), ("alpha", 0), 1),),
    )


def _heegaard_lens(p: int, q: int) -> HeegaardDiagram:
    """Genus-1 diagram whose beta word is alpha_1^p.

    The torus framing parameter q is validated (coprime to p) but leaves no
    combinatorial trace: the diagram records crossing sequences only, and
    those depend only on p.
    """
    if p < 1:
        raise UnknownName(f"lens parameter p must be positive, got {p}")
    if math.gcd(p, q) != 1:
        raise UnknownName(f"lens parameters must be coprime, got ({p}, {q})")
    ids = tuple(range(p))
    return HeegaardDiagram(
        genus=1,
        alpha=_curves("alpha", [ids]),
        beta=_curves("beta", [ids]),
        crossings=tuple(DiagCrossing(i, ("beta", 0), ("alpha", 0), 1) for i in ids),
    )


def _heegaard_handle() -> HeegaardDiagram:
    return HeegaardDiagram(
        genus=1,
        alpha=_curves("alpha", [()]),
        beta=_curves("beta", [()]),
        crossings=(),
    )


def builtin(name: str, *params):
    """Look up a built-in diagram by name.

    Parameterized names accept either call-style strings such as
    "heegaard_lens(3,1)" or separate arguments: builtin("heegaard_lens", 3, 1).
    """
    text = name.strip()
    if "(" in text and text.endswith(")"):
        base, inner = text[:-1].split("(", 1)
        try:
            params = tuple(int(v) for v in inner.split(",")) if inner else ()
        except ValueError:
            raise UnknownName(f"bad parameters in {name!r}") from None
        text = base.strip()
    plain = {
        "s4_genus0": _one_handle_sphere,
        "t_st": _standard_summand,
        "s1_x_s3": _product_of_circle,
        "heegaard_s3": _heegaard_sphere,
        "heegaard_s1xs2": _heegaard_handle,
    }
    if text in plain:
        if params:
            raise UnknownName(f"{text} takes no parameters")
        return plain[text]()
    if text == "heegaard_lens":
        if len(params) != 2:
            raise UnknownName("heegaard_lens takes parameters (p, q)")
        return _heegaard_lens(*params)
    raise UnknownName(f"no built-in diagram named {name!r}")


def trisection_of_heegaard(h: HeegaardDiagram) -> TrisectionDiagram:
    """The trisection diagram with kappa curves parallel to the beta curves.

    Each kappa curve copies its beta curve's crossings with the alpha
    family (fresh ids, same partners, same signs, inserted next to the
    originals), so both word families coincide and colorings carry over.
    """
    next_id = max((x.id for x in h.crossings), default=-1) + 1
    xmap = {x.id: x for x in h.crossings}
    kappa = []
    crossings = list(h.crossings)
    alpha_seqs = {k: list(c.crossing_sequence) for k, c in enumerate(h.alpha)}
    for k, b in enumerate(h.beta):
        seq = []
        for xid in b.crossing_sequence:
            x = xmap[xid]
            partner = x.other(("beta", k))
            copy = DiagCrossing(next_id, ("kappa", k), partner, x.sign)
            crossings.append(copy)
            seq.append(copy.id)
            pos = alpha_seqs[partner[1]].index(xid)
            alpha_seqs[partner[1]].insert(pos + 1, copy.id)
            next_id += 1
        kappa.append(Curve("kappa", k, tuple(seq)))
    return TrisectionDiagram(
        genus=h.genus,
        alpha=tuple(
            Curve("alpha", k, tuple(alpha_seqs[k])) for k in range(h.genus)
        ),
        beta=h.beta,
        kappa=tuple(kappa),
        crossings=tuple(crossings),
    )
