"""Duality pairings between the graded Hopf families.

A bilinear form between two structures induces a map from the first into the
dual of the second, with the comultiplication reversed on the dual side; the
checks here verify that this induced map respects the Hopf operations.  Three
layers build on that idea:

* a pair ties two Hopf G-coalgebras by a form on their identity sectors, a
  doublet ties a Hopf G-algebra to a Hopf G-coalgebra sector by sector;
* every pair carries braiding tensors T, U, V on second_g (x) first_h, and a
  twisted product built from U turns the sectorwise tensor product of a pair
  into a new Hopf G-coalgebra, the double;
* a triplet pairs one algebra-family member against two coalgebra-family
  members so that the double of the latter two maps into the dual of the
  first.

Form matrices always have one row per basis element of the first slot and one
column per basis element of the second, so ``form[i, j]`` is the value on
basis_i (x) basis_j.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import HopfTrisectError
from .hopf import (
    CheckEntry,
    CheckReport,
    HopfGAlgebra,
    HopfGCoalgebra,
    _Collector,
    _expect,
    _id_kron,
    _kron_id,
    coopposite,
    dualize,
    opposite,
)
from .scalars import DEFAULT_TOL, eye, kron, swap_matrix, zeros


class InvalidRMatrix(HopfTrisectError):
    """The candidate R-matrix fails invertibility or the braiding identity."""


# ---------------------------------------------------------------------------
# structures


@dataclass(frozen=True)
class HopfPair:
    """Two Hopf G-coalgebras tied by a form on their identity sectors.

    The induced map sends x in the first structure to the functional
    <x, -> on the second, landing in the dual with reversed
    comultiplication.  check_hopf_pair verifies it is a Hopf algebra
    morphism there.
    """

    first: HopfGCoalgebra
    second: HopfGCoalgebra
    form: np.ndarray

    def __post_init__(self):
        if self.first.group != self.second.group:
            raise ValueError("paired structures must share a grading group")
        if self.first.field != self.second.field:
            raise ValueError("paired structures must share a scalar backend")
        one = self.first.group.identity
        _expect(
            self.form.shape,
            (self.first.dims[one], self.second.dims[one]),
            "pair form",
        )


@dataclass(frozen=True)
class HopfGDoublet:
    """A Hopf G-algebra paired sector by sector with a Hopf G-coalgebra."""

    first: HopfGAlgebra
    second: HopfGCoalgebra
    forms: dict

    def __post_init__(self):
        if self.first.group != self.second.group:
            raise ValueError("paired structures must share a grading group")
        if self.first.field != self.second.field:
            raise ValueError("paired structures must share a scalar backend")
        for g in self.first.group.elements():
            _expect(
                self.forms[g].shape,
                (self.first.dims[g], self.second.dims[g]),
                f"doublet form[{g}]",
            )


@dataclass(frozen=True)
class TUVTensors:
    """Braiding tensors of a pair, keyed by sector pairs (g, h).

    Every tensor acts on second_g (x) first_h; V sends the bottom leg to the
    inverse sector, the others preserve both legs.  Keys exist wherever the
    legs involved are nonzero, so U and V can be missing at sector pairs
    whose inverse sectors are empty.
    """

    pair: HopfPair
    T: dict
    T_inv: dict
    U: dict
    V: dict


@dataclass(frozen=True)
class HopfGTriplet:
    """One Hopf G-algebra paired against two Hopf G-coalgebras.

    ``form_kb`` ties the identity sectors of kappa and beta as a pair;
    ``form_ab`` and ``form_ak`` tie alpha to beta and kappa sector by sector
    as doublets.
    """

    alpha: HopfGAlgebra
    beta: HopfGCoalgebra
    kappa: HopfGCoalgebra
    form_kb: np.ndarray
    form_ab: dict
    form_ak: dict

    def __post_init__(self):
        G = self.alpha.group
        if self.beta.group != G or self.kappa.group != G:
            raise ValueError("triplet members must share a grading group")
        if len({self.alpha.field, self.beta.field, self.kappa.field}) != 1:
            raise ValueError("triplet members must share a scalar backend")
        one = G.identity
        _expect(
            self.form_kb.shape,
            (self.kappa.dims[one], self.beta.dims[one]),
            "form_kb",
        )
        for g in G.elements():
            _expect(
                self.form_ab[g].shape,
                (self.alpha.dims[g], self.beta.dims[g]),
                f"form_ab[{g}]",
            )
            _expect(
                self.form_ak[g].shape,
                (self.alpha.dims[g], self.kappa.dims[g]),
                f"form_ak[{g}]",
            )


@dataclass(frozen=True)
class RMatrix:
    """An element of H_1 (x) H_1 with its antipode-flipped inverse.

    Both fields are columns in the tensor-product basis, first leg first.
    """

    element: np.ndarray
    inverse: np.ndarray


# ---------------------------------------------------------------------------
# pair and doublet checks


def check_hopf_pair(p: HopfPair, tol: float = DEFAULT_TOL) -> CheckReport:
    """Morphism laws for the map induced by the identity-sector form.

    Five entries, one per Hopf operation the induced map must intertwine.
    Because the dual carries the reversed comultiplication, the
    comultiplication law pairs against the product taken in swapped order,
    and the antipode law reads <S x, S y> = <x, y>.
    """
    A, B, F = p.first, p.second, p.form
    f = A.field
    one = A.group.identity
    dB = B.dims[one]
    at = (one,)
    c = _Collector(f, tol)
    c.compare(
        "pair-multiplication",
        at,
        np.dot(A.M[one].T, F),
        np.dot(kron(F, F), B.Delta[one, one]),
    )
    c.compare("pair-unit", at, np.dot(A.i[one].T, F), B.epsilon)
    c.compare(
        "pair-comultiplication",
        at,
        np.dot(F, np.dot(B.M[one], swap_matrix(dB, dB, f))),
        np.dot(A.Delta[one, one].T, kron(F, F)),
    )
    c.compare("pair-counit", at, np.dot(F, B.i[one]), A.epsilon.T)
    c.compare(
        "pair-antipode",
        at,
        np.dot(A.S[one].T, np.dot(F, B.S[one])),
        F,
    )
    return c.report()


def check_doublet(d: HopfGDoublet, tol: float = DEFAULT_TOL) -> CheckReport:
    """Sectorwise morphism laws for the forms of a doublet.

    The graded product of the first member pairs against the graded
    comultiplication of the second, and the in-sector comultiplication
    against the in-sector product; units, counits and antipodes match up
    the same way as in the pair check.
    """
    Ha, Hc, forms = d.first, d.second, d.forms
    G, f = Ha.group, Ha.field
    one = G.identity
    da, dc = Ha.dims, Hc.dims
    c = _Collector(f, tol)
    c.compare("doublet-unit", (one,), np.dot(Ha.i.T, forms[one]), Hc.epsilon)
    for g in G.elements():
        if da[g] == 0 and dc[g] == 0:
            continue
        gi = G.inv(g)
        c.compare(
            "doublet-comultiplication",
            (g,),
            np.dot(forms[g], np.dot(Hc.M[g], swap_matrix(dc[g], dc[g], f))),
            np.dot(Ha.Delta[g].T, kron(forms[g], forms[g])),
        )
        c.compare("doublet-counit", (g,), np.dot(forms[g], Hc.i[g]), Ha.epsilon[g].T)
        c.compare(
            "doublet-antipode",
            (g,),
            np.dot(Ha.S[g].T, np.dot(forms[gi], Hc.S[g])),
            forms[g],
        )
        for h in G.elements():
            if da[g] * da[h] == 0 and dc[g] * dc[h] == 0:
                continue
            gh = G.mul(g, h)
            c.compare(
                "doublet-multiplication",
                (g, h),
                np.dot(Ha.M[g, h].T, forms[gh]),
                np.dot(kron(forms[g], forms[h]), Hc.Delta[g, h]),
            )
    return c.report()


def standard_doublet(H: HopfGCoalgebra) -> HopfGDoublet:
    """The evaluation doublet of the comultiplication-reversed dual against H.

    Its induced map is the identity, so it passes check_doublet for every
    valid involutory H; it is also the degenerate case other doublets are
    measured against.
    """
    f = H.field
    forms = {g: eye(H.dims[g], f) for g in H.group.elements()}
    return HopfGDoublet(coopposite(dualize(H)), H, forms)


def derived_pairs(p):
    """Opposite and co-opposite companions of a pair or doublet.

    A pair yields four variants, a doublet the first two; each passes its
    own check exactly when the input does.  The doublet variant that
    reverses both structures reads its forms at inverted sectors.
    """
    if isinstance(p, HopfPair):
        return [
            HopfPair(opposite(p.first), coopposite(p.second), p.form),
            HopfPair(coopposite(p.first), opposite(p.second), p.form),
            HopfPair(coopposite(opposite(p.first)), p.second, p.form),
            HopfPair(p.first, coopposite(opposite(p.second)), p.form),
        ]
    if isinstance(p, HopfGDoublet):
        G = p.first.group
        flipped = {g: p.forms[G.inv(g)] for g in G.elements()}
        return [
            HopfGDoublet(opposite(p.first), coopposite(p.second), flipped),
            HopfGDoublet(coopposite(p.first), opposite(p.second), dict(p.forms)),
        ]
    raise TypeError(f"no derived pairs for {type(p).__name__}")


# ---------------------------------------------------------------------------
# braiding tensors


def _form_row(F: np.ndarray) -> np.ndarray:
    """The form as a row consuming second-slot (x) first-slot legs."""
    return F.T.reshape(1, -1)


def build_tuv(p: HopfPair) -> TUVTensors:
    """Assemble the braiding tensors of a pair on every populated sector pair.

    T_{g,h} splits both legs toward the identity sector and pairs the two
    inner halves; T_inv is the same network with the antipode inserted on
    the inner leg of the first structure.  U and V are the antipode-dressed
    compositions of T and T_inv at related sector pairs:

        U_{g,h} = (id (x) S_{h^-1}) T_{g,h^-1} (S_{g^-1} (x) S_h)
                  T_inv_{g^-1,h} (S_g (x) id)
        V_{g,h} = (S_{g^-1} (x) id) T_{g^-1,h^-1} (S_g (x) S_h)

    with top-leg antipodes from the second structure and bottom-leg ones
    from the first.  T_inv is a genuine two-sided inverse of T exactly when
    the pair is valid; that judgement is left to check_tuv_relations so an
    invalid pair can still be probed.
    """
    A, B, F = p.first, p.second, p.form
    G, f = A.group, A.field
    one = G.identity
    dA, dB = A.dims, B.dims

    pair_row = _form_row(F)
    pair_row_s = _form_row(np.dot(A.S[one].T, F))

    T: dict = {}
    T_inv: dict = {}
    for g in G.elements():
        for h in G.elements():
            if dB[g] * dA[h] == 0:
                continue
            split = kron(B.Delta[g, one], A.Delta[one, h])
            plain = kron(eye(dB[g], f), kron(pair_row, eye(dA[h], f)))
            dressed = kron(eye(dB[g], f), kron(pair_row_s, eye(dA[h], f)))
            T[g, h] = np.dot(plain, split)
            T_inv[g, h] = np.dot(dressed, split)

    U: dict = {}
    V: dict = {}
    for g in G.elements():
        for h in G.elements():
            if dB[g] * dA[h] == 0:
                continue
            gi, hi = G.inv(g), G.inv(h)
            if (g, hi) in T and (gi, h) in T_inv:
                chain = np.dot(T_inv[gi, h], _kron_id(B.S[g], dA[h]))
                chain = np.dot(kron(B.S[gi], A.S[h]), chain)
                chain = np.dot(T[g, hi], chain)
                U[g, h] = np.dot(_id_kron(dB[g], A.S[hi]), chain)
            if (gi, hi) in T:
                V[g, h] = np.dot(
                    _kron_id(B.S[gi], dA[hi]),
                    np.dot(T[gi, hi], kron(B.S[g], A.S[h])),
                )
    return TUVTensors(pair=p, T=T, T_inv=T_inv, U=U, V=V)


def check_tuv_relations(t: TUVTensors, tol: float = DEFAULT_TOL) -> CheckReport:
    """Invertibility of T and the two exchange relations tying T, U and V.

    The first relation factors (id (x) S) T through U and V; the second says
    T commutes with its own antipode sandwich.  Entries appear for every
    sector pair whose partner tensors exist.
    """
    A, B = t.pair.first, t.pair.second
    G, f = A.group, A.field
    dA, dB = A.dims, B.dims
    c = _Collector(f, tol)
    for (g, h), Tgh in sorted(t.T.items()):
        ident = eye(dB[g] * dA[h], f)
        c.compare("t-inverse-left", (g, h), np.dot(t.T_inv[g, h], Tgh), ident)
        c.compare("t-inverse-right", (g, h), np.dot(Tgh, t.T_inv[g, h]), ident)
        gi, hi = G.inv(g), G.inv(h)
        if (g, h) in t.V and (g, hi) in t.U:
            c.compare(
                "uv-composition",
                (g, h),
                np.dot(t.U[g, hi], t.V[g, h]),
                np.dot(_id_kron(dB[g], A.S[h]), Tgh),
            )
        if (gi, hi) in t.T_inv:
            w = np.dot(
                kron(B.S[gi], A.S[hi]),
                np.dot(t.T_inv[gi, hi], kron(B.S[g], A.S[h])),
            )
            c.compare("antipode-sandwich", (g, h), np.dot(w, Tgh), np.dot(Tgh, w))
    return c.report()


# ---------------------------------------------------------------------------
# the double


def drinfeld_double(p: HopfPair) -> HopfGCoalgebra:
    """The double of a pair: sectorwise tensor products, U-twisted product.

    Sector g of the result is first_g (x) second_g.  Comultiplication,
    counit and unit are componentwise with the middle legs exchanged; the
    product routes the inner two factors through U_{g,g} before multiplying
    componentwise, and the antipode conjugates U at the inverse sector by
    the leg swap and the componentwise antipodes.
    """
    A, B = p.first, p.second
    G, f = A.group, A.field
    dA, dB = A.dims, B.dims
    tuv = build_tuv(p)

    dims = tuple(dA[g] * dB[g] for g in G.elements())
    M: dict = {}
    i: dict = {}
    Delta: dict = {}
    S: dict = {}
    for g in G.elements():
        dg = dims[g]
        gi = G.inv(g)
        i[g] = kron(A.i[g], B.i[g])
        if dg == 0:
            M[g] = zeros((0, 0), f)
            S[g] = zeros((dims[gi], 0), f)
        else:
            if (g, g) not in tuv.U or (gi, gi) not in tuv.U:
                raise HopfTrisectError(
                    f"double undefined at sector {g}: an inverse-sector leg is empty"
                )
            # componentwise product after routing the inner two factors
            # through U; a column pick reorders the middle legs and a
            # tensordot applies U, skipping two dense permutation matmuls
            cw = kron(A.M[g], B.M[g])
            colmap = (
                np.arange(dg * dg)
                .reshape(dA[g], dA[g], dB[g], dB[g])
                .transpose(0, 2, 1, 3)
                .ravel()
            )
            crossed = cw[:, colmap].reshape(dg, dA[g], dB[g] * dA[g], dB[g])
            core = np.tensordot(crossed, tuv.U[g, g], axes=([2], [0]))
            M[g] = core.transpose(0, 1, 3, 2).reshape(dg, dg * dg)
            S[g] = np.dot(
                swap_matrix(dB[gi], dA[gi], f),
                np.dot(
                    tuv.U[gi, gi],
                    np.dot(kron(B.S[g], A.S[g]), swap_matrix(dA[g], dB[g], f)),
                ),
            )
        for h in G.elements():
            # middle-leg exchange applied as a row pick
            cw = kron(A.Delta[g, h], B.Delta[g, h])
            rowsel = (
                np.arange(cw.shape[0])
                .reshape(dA[g], dA[h], dB[g], dB[h])
                .transpose(0, 2, 1, 3)
                .ravel()
            )
            Delta[g, h] = cw[rowsel, :]
    return HopfGCoalgebra(
        group=G,
        dims=dims,
        M=M,
        i=i,
        Delta=Delta,
        epsilon=kron(A.epsilon, B.epsilon),
        S=S,
        field=f,
    )


# ---------------------------------------------------------------------------
# triplets


def _double_map(t: HopfGTriplet) -> dict:
    """Per-sector maps from the beta/kappa double into the dual of alpha.

    b (x) k goes to the functional a -> sum <a_(2), b>_ab <a_(1), k>_ak,
    splitting a with alpha's in-sector comultiplication; the two output
    legs of the split cross before they meet the forms.
    """
    G = t.alpha.group
    db, dk = t.beta.dims, t.kappa.dims
    out = {}
    for g in G.elements():
        z = kron(t.form_ak[g], t.form_ab[g])
        # reorder form columns from (k, b) to the double's (b, k) leg order
        perm = np.arange(dk[g] * db[g]).reshape(dk[g], db[g]).T.ravel()
        out[g] = np.dot(t.alpha.Delta[g].T, z[:, perm])
    return out


def _check_double_map(t: HopfGTriplet, tol: float) -> CheckReport:
    """Morphism laws for the double-to-dual map family of a triplet."""
    G, f = t.alpha.group, t.alpha.field
    one = G.identity
    dbl = drinfeld_double(HopfPair(t.beta, t.kappa, t.form_kb.T))
    target = dualize(t.alpha)
    phi = _double_map(t)
    dD, dT = dbl.dims, target.dims
    c = _Collector(f, tol)
    c.compare(
        "double-map-counit",
        (one,),
        np.dot(target.epsilon, phi[one]),
        dbl.epsilon,
    )
    for g in G.elements():
        if dD[g] == 0 and dT[g] == 0:
            continue
        gi = G.inv(g)
        c.compare(
            "double-map-multiplicative",
            (g,),
            np.dot(phi[g], dbl.M[g]),
            np.dot(target.M[g], kron(phi[g], phi[g])),
        )
        c.compare("double-map-unital", (g,), np.dot(phi[g], dbl.i[g]), target.i[g])
        c.compare(
            "double-map-antipode",
            (g,),
            np.dot(phi[gi], dbl.S[g]),
            np.dot(target.S[g], phi[g]),
        )
        for h in G.elements():
            if dD[h] == 0 and dT[h] == 0:
                continue
            gh = G.mul(g, h)
            c.compare(
                "double-map-comultiplication",
                (g, h),
                np.dot(target.Delta[g, h], phi[gh]),
                np.dot(kron(phi[g], phi[h]), dbl.Delta[g, h]),
            )
    return c.report()


def _relabel(entries, old: str, new: str):
    return [
        CheckEntry(e.axiom.replace(old, new, 1), e.grading, e.ok, e.witness, e.residual)
        for e in entries
    ]


def check_triplet(t: HopfGTriplet, tol: float = DEFAULT_TOL) -> CheckReport:
    """Full validation of a triplet.

    Runs the identity-sector pair check on (kappa, beta), both sectorwise
    doublet checks against alpha, and the morphism laws for the induced map
    from the beta/kappa double into the dual of alpha.  Doublet entries are
    relabelled alpha-beta-* and alpha-kappa-* so the two families stay
    distinguishable in one report.
    """
    entries = list(check_hopf_pair(HopfPair(t.kappa, t.beta, t.form_kb), tol).entries)
    ab = check_doublet(HopfGDoublet(t.alpha, t.beta, t.form_ab), tol)
    entries.extend(_relabel(ab.entries, "doublet-", "alpha-beta-"))
    ak = check_doublet(HopfGDoublet(t.alpha, t.kappa, t.form_ak), tol)
    entries.extend(_relabel(ak.entries, "doublet-", "alpha-kappa-"))
    entries.extend(_check_double_map(t, tol).entries)
    return CheckReport(tuple(entries))


# ---------------------------------------------------------------------------
# the closed three-form identities


def _triple_row(k_split, b_split, a_split, w_ak, w_kb, w_ab) -> np.ndarray:
    """Row of the closed contraction of three split inputs against three forms.

    Consumes (k, b, a); each input splits into two legs and the forms
    consume (a1, k1), (k2, b1) and (a2, b2) respectively.
    """
    w = np.multiply.outer(np.multiply.outer(w_ak, w_kb), w_ab)
    # outer layout (a1, k1, k2, b1, a2, b2) -> contraction order (k1..a2)
    w = w.transpose(1, 2, 3, 5, 0, 4).reshape(1, -1)
    return np.dot(w, kron(k_split, kron(b_split, a_split)))


def _fl_core_b(t: HopfGTriplet, g: int) -> np.ndarray:
    """First closed identity's core at sector g, consuming kappa_g (x)
    beta_{g^-1} (x) alpha_g; the beta leg meets its form through the
    antipode at the inverse sector."""
    G = t.alpha.group
    one, gi = G.identity, G.inv(g)
    return _triple_row(
        t.kappa.Delta[g, one],
        t.beta.Delta[one, gi],
        t.alpha.Delta[g],
        t.form_ak[g],
        t.form_kb,
        np.dot(t.form_ab[g], t.beta.S[gi]),
    )


def _fl_core_c(t: HopfGTriplet, g: int) -> np.ndarray:
    """Second closed identity's core at sector g, consuming kappa_{g^-1} (x)
    beta_g (x) alpha_g; here the kappa leg and the identity-sector beta leg
    pass through antipodes instead."""
    G = t.alpha.group
    one, gi = G.identity, G.inv(g)
    return _triple_row(
        t.kappa.Delta[gi, one],
        t.beta.Delta[one, g],
        t.alpha.Delta[g],
        np.dot(t.form_ak[g], t.kappa.S[gi]),
        np.dot(t.form_kb, t.beta.S[one]),
        t.form_ab[g],
    )


@dataclass(frozen=True)
class FundamentalLemmaReport:
    """Three routes to one verdict, with the per-sector evidence.

    ``double_map_ok`` is the morphism-law verdict for the double-to-dual
    map; the other two flags evaluate the closed three-form identities.
    The lemma is the statement that, whenever the pair and doublet
    conditions hold, the three agree.
    """

    entries: tuple
    double_map_ok: bool
    equation_b_ok: bool
    equation_c_ok: bool

    @property
    def verdicts(self) -> tuple:
        return (self.double_map_ok, self.equation_b_ok, self.equation_c_ok)

    @property
    def agree(self) -> bool:
        return len(set(self.verdicts)) == 1

    @property
    def ok(self) -> bool:
        return self.agree

    def __str__(self) -> str:
        names = ("double-map", "identity-b", "identity-c")
        word = {True: "pass", False: "fail"}
        body = ", ".join(f"{n}={word[v]}" for n, v in zip(names, self.verdicts))
        return body + (" (agree)" if self.agree else " (DISAGREE)")


def check_fundamental_lemma(
    t: HopfGTriplet, tol: float = DEFAULT_TOL
) -> FundamentalLemmaReport:
    """Evaluate the two closed identities and compare with the morphism laws.

    Each identity equates its core at g with the core at g^-1 precomposed
    with all three antipodes.  The pair and doublet conditions of the
    triplet are assumed; under them the two identities and the
    double-to-dual morphism verdict stand or fall together.
    """
    G, f = t.alpha.group, t.alpha.field
    da, db, dk = t.alpha.dims, t.beta.dims, t.kappa.dims
    dm = _check_double_map(t, tol)

    cb = _Collector(f, tol)
    for g in G.elements():
        gi = G.inv(g)
        if dk[g] * db[gi] * da[g] == 0:
            continue
        cb.compare(
            "identity-b",
            (g,),
            _fl_core_b(t, g),
            np.dot(
                _fl_core_b(t, gi),
                kron(t.kappa.S[g], kron(t.beta.S[gi], t.alpha.S[g])),
            ),
        )
    eq_b = cb.report()

    cc = _Collector(f, tol)
    for g in G.elements():
        gi = G.inv(g)
        if dk[gi] * db[g] * da[g] == 0:
            continue
        cc.compare(
            "identity-c",
            (g,),
            _fl_core_c(t, g),
            np.dot(
                _fl_core_c(t, gi),
                kron(t.kappa.S[gi], kron(t.beta.S[g], t.alpha.S[g])),
            ),
        )
    eq_c = cc.report()

    return FundamentalLemmaReport(
        entries=tuple(dm.entries) + eq_b.entries + eq_c.entries,
        double_map_ok=dm.ok,
        equation_b_ok=eq_b.ok,
        equation_c_ok=eq_c.ok,
    )


# ---------------------------------------------------------------------------
# quasitriangular structures


def r_matrix(H: HopfGAlgebra, element: np.ndarray) -> RMatrix:
    """Package an element of H_1 (x) H_1 with its antipode-flipped inverse.

    ``element`` may be a (d, d) coefficient matrix or a flat (d*d, 1)
    column in the product basis; the inverse is the antipode applied to the
    first leg.
    """
    one = H.group.identity
    d1 = H.dims[one]
    el = np.asarray(element)
    if el.shape == (d1, d1):
        el = el.reshape(d1 * d1, 1)
    _expect(el.shape, (d1 * d1, 1), "r-matrix element")
    return RMatrix(element=el, inverse=np.dot(_kron_id(H.S[one], d1), el))


def quasitriangular_triplet(
    H: HopfGAlgebra, R: RMatrix, tol: float = DEFAULT_TOL
) -> HopfGTriplet:
    """Triplet built from a Hopf G-algebra with an R-matrix.

    alpha is H with reversed comultiplication; beta and kappa are the dual
    of H.  The evaluation forms tie alpha to both duals, and R itself,
    read leg by leg, ties the duals to each other.  Raises InvalidRMatrix
    unless R times its antipode-flipped partner is the unit both ways and R
    exchanges the two antipode-dressed routes around the comultiplication
    in every sector.
    """
    G, f = H.group, H.field
    one = G.identity
    d = H.dims
    d1 = d[one]
    _expect(R.element.shape, (d1 * d1, 1), "r-matrix element")
    _expect(R.inverse.shape, (d1 * d1, 1), "r-matrix inverse")

    c = _Collector(f, tol)
    # product of two elements of H_1 (x) H_1: middle-leg flip, then
    # componentwise multiplication, with the flip done as a column pick
    cols = (
        np.arange((d1 * d1) ** 2)
        .reshape(d1, d1, d1, d1)
        .transpose(0, 2, 1, 3)
        .ravel()
    )
    mul2 = kron(H.M[one, one], H.M[one, one])[:, cols]
    unit2 = kron(H.i, H.i)
    c.compare(
        "r-invertible-right", (one,), np.dot(mul2, kron(R.element, R.inverse)), unit2
    )
    c.compare(
        "r-invertible-left", (one,), np.dot(mul2, kron(R.inverse, R.element)), unit2
    )
    for g in H.support():
        gi = G.inv(g)
        split = kron(H.Delta[g], R.element)
        # both routes consume the legs (a1, a2, s, t) laid out by the split
        m_top = H.M[g, one]
        m_bot = np.dot(H.M[one, gi], _id_kron(d1, H.S[g]))
        sel = (
            np.arange(d[g] * d1 * d1 * d[g])
            .reshape(d[g], d1, d1, d[g])
            .transpose(3, 0, 1, 2)
            .ravel()
        )
        lhs = np.dot(kron(m_top, m_bot)[:, sel], split)
        m_top2 = H.M[one, g]
        m_bot2 = np.dot(H.M[gi, one], _kron_id(H.S[g], d1))
        sel2 = (
            np.arange(d1 * d[g] * d[g] * d1)
            .reshape(d1, d[g], d[g], d1)
            .transpose(1, 2, 0, 3)
            .ravel()
        )
        rhs = np.dot(kron(m_top2, m_bot2)[:, sel2], split)
        c.compare("r-braiding", (g,), lhs, rhs)
    rep = c.report()
    if not rep.ok:
        raise InvalidRMatrix(str(rep))

    dual = dualize(H)
    return HopfGTriplet(
        alpha=coopposite(H),
        beta=dual,
        kappa=dualize(H),
        form_kb=np.asarray(R.element).reshape(d1, d1).T.copy(),
        form_ab={g: eye(d[g], f) for g in G.elements()},
        form_ak={g: eye(d[g], f) for g in G.elements()},
    )
