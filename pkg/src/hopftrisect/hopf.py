"""Hopf G-coalgebras and Hopf G-algebras as families of structure matrices.

Every structure map is stored as a dense matrix (codomain x domain) over one
scalar backend, with tensor products flattened in kron (row-major) order.
Sector g of a family has dimension dims[g]; zero sectors carry empty matrices
of the right shape and are skipped by the checkers.

Conventions fixed here and used by the rest of the package:

  * "right" G-integral:   (id_g (x) mu_h) . Delta_{g,h} = mu_{gh} . i_g
    "left"  G-integral:   (mu_g (x) id_h) . Delta_{g,h} = mu_{gh} . i_h
  * "right" cointegral:   M_1(x (x) e) = eps(x) e
    "left"  cointegral:   M_1(e (x) x) = eps(x) e
  * dual structures transpose entrywise; the antipode of the dual at g is the
    transpose of the original antipode at g^{-1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import HopfTrisectError
from .groups import FiniteGroup
from .linalg import inverse, nullspace
from .scalars import (
    DEFAULT_TOL,
    EXACT,
    FLOAT,
    as_scalar,
    eye,
    kron,
    swap_matrix,
    tensor_eq,
    to_float_array,
    zeros,
)


class NoIntegral(HopfTrisectError):
    pass


class AmbiguousIntegral(HopfTrisectError):
    pass


class NoCointegral(HopfTrisectError):
    pass


class AmbiguousCointegral(HopfTrisectError):
    pass


class DegeneratePairing(HopfTrisectError):
    pass


# ---------------------------------------------------------------------------
# check reports


@dataclass(frozen=True)
class CheckEntry:
    axiom: str
    grading: tuple
    ok: bool
    witness: tuple | None = None
    residual: object = None

    def __str__(self) -> str:
        if self.ok:
            return f"PASS {self.axiom} @ {self.grading}"
        return (
            f"FAIL {self.axiom} @ {self.grading}: "
            f"index {self.witness}, residual {self.residual}"
        )


@dataclass(frozen=True)
class CheckReport:
    entries: tuple[CheckEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if not e.ok]

    def __str__(self) -> str:
        bad = self.failures()
        if not bad:
            return f"all {len(self.entries)} checks pass"
        return "\n".join(str(e) for e in bad)


def _first_mismatch(a: np.ndarray, b: np.ndarray, field: str, tol: float):
    """None when equal up to the backend tolerance, else (index, residual)."""
    if a.shape != b.shape:
        return ((), f"shape {a.shape} vs {b.shape}")
    if a.size == 0:
        return None
    if field == EXACT:
        neq = a != b
        if not neq.any():
            return None
        idx = tuple(int(k[0]) for k in np.nonzero(neq))
        return (idx, a[idx] - b[idx])
    fa, fb = to_float_array(a), to_float_array(b)
    diff = np.abs(fa - fb)
    scale = 1 + max(np.abs(fa).max(), np.abs(fb).max())
    if (diff <= tol * scale).all():
        return None
    idx = tuple(int(k) for k in np.unravel_index(int(diff.argmax()), diff.shape))
    return (idx, float(diff.max()))


class _Collector:
    def __init__(self, field: str, tol: float):
        self.field = field
        self.tol = tol
        self.entries: list[CheckEntry] = []

    def compare(self, axiom: str, grading: tuple, lhs: np.ndarray, rhs: np.ndarray):
        bad = _first_mismatch(lhs, rhs, self.field, self.tol)
        if bad is None:
            self.entries.append(CheckEntry(axiom, grading, True))
        else:
            self.entries.append(CheckEntry(axiom, grading, False, bad[0], bad[1]))

    def record(self, axiom: str, grading: tuple, ok: bool, note=None):
        self.entries.append(CheckEntry(axiom, grading, ok, None, note))

    def report(self) -> CheckReport:
        return CheckReport(tuple(self.entries))


# ---------------------------------------------------------------------------
# the two structure families


def _expect(shape, want, label):
    if tuple(shape) != tuple(want):
        raise ValueError(f"{label}: shape {tuple(shape)}, expected {tuple(want)}")


@dataclass(frozen=True)
class HopfGCoalgebra:
    """Family of algebras (H_g, M_g, i_g) tied by Delta_{g,h}, epsilon, S_g."""

    group: FiniteGroup
    dims: tuple[int, ...]
    M: dict
    i: dict
    Delta: dict
    epsilon: np.ndarray
    S: dict
    field: str

    def __post_init__(self):
        G, d = self.group, self.dims
        if len(d) != G.order:
            raise ValueError("dims must cover every group element")
        for g in G.elements():
            _expect(self.M[g].shape, (d[g], d[g] * d[g]), f"M[{g}]")
            _expect(self.i[g].shape, (d[g], 1), f"i[{g}]")
            _expect(self.S[g].shape, (d[G.inv(g)], d[g]), f"S[{g}]")
            for h in G.elements():
                _expect(
                    self.Delta[g, h].shape,
                    (d[g] * d[h], d[G.mul(g, h)]),
                    f"Delta[{g},{h}]",
                )
        _expect(self.epsilon.shape, (1, d[G.identity]), "epsilon")

    def dim(self, g: int) -> int:
        return self.dims[g]

    def support(self) -> list[int]:
        return [g for g in self.group.elements() if self.dims[g] > 0]

    def total_dim(self) -> int:
        return sum(self.dims)


@dataclass(frozen=True)
class HopfGAlgebra:
    """Mirror family: coalgebras (H_g, Delta_g, eps_g) tied by M_{g,h}, i, S_g."""

    group: FiniteGroup
    dims: tuple[int, ...]
    M: dict
    i: np.ndarray
    Delta: dict
    epsilon: dict
    S: dict
    field: str

    def __post_init__(self):
        G, d = self.group, self.dims
        if len(d) != G.order:
            raise ValueError("dims must cover every group element")
        for g in G.elements():
            _expect(self.Delta[g].shape, (d[g] * d[g], d[g]), f"Delta[{g}]")
            _expect(self.epsilon[g].shape, (1, d[g]), f"epsilon[{g}]")
            _expect(self.S[g].shape, (d[G.inv(g)], d[g]), f"S[{g}]")
            for h in G.elements():
                _expect(
                    self.M[g, h].shape,
                    (d[G.mul(g, h)], d[g] * d[h]),
                    f"M[{g},{h}]",
                )
        _expect(self.i.shape, (d[G.identity], 1), "i")

    def dim(self, g: int) -> int:
        return self.dims[g]

    def support(self) -> list[int]:
        return [g for g in self.group.elements() if self.dims[g] > 0]

    def total_dim(self) -> int:
        return sum(self.dims)


@dataclass(frozen=True)
class GIntegral:
    """Family of forms mu_g on the sectors of a Hopf G-coalgebra."""

    forms: dict
    side: str

    def __call__(self, g: int) -> np.ndarray:
        return self.forms[g]


@dataclass(frozen=True)
class Cointegral:
    """Cointegral of the 1-sector Hopf algebra, stored as a column vector."""

    element: np.ndarray
    side: str


@dataclass(frozen=True)
class GCointegral:
    """Family of cointegral elements e_g for a Hopf G-algebra."""

    elements: dict
    side: str

    def __call__(self, g: int) -> np.ndarray:
        return self.elements[g]


@dataclass(frozen=True)
class Crossing:
    """Family phi[(g, h)]: H_g -> H_{hgh^{-1}}, possibly partial in h."""

    phi: dict

    def acting_elements(self) -> list[int]:
        return sorted({h for _, h in self.phi})


# ---------------------------------------------------------------------------
# iterated (co)multiplication


def _field_of(mat: np.ndarray) -> str:
    return EXACT if mat.dtype == object else FLOAT


def _kron_id(mat: np.ndarray, right_dim: int) -> np.ndarray:
    return kron(mat, eye(right_dim, _field_of(mat)))


def _id_kron(left_dim: int, mat: np.ndarray) -> np.ndarray:
    return kron(eye(left_dim, _field_of(mat)), mat)


def iterated_delta(H: HopfGCoalgebra, signature) -> np.ndarray:
    """Delta_{g_1,...,g_n}: H_{g_1...g_n} -> H_{g_1} (x) ... (x) H_{g_n}.

    n = 1 gives the identity and n = 0 the counit, so the usual abbreviation
    for repeated comultiplication is total.  Any bracketing agrees once the
    structure is coassociative; this one peels factors off the left.
    """
    signature = tuple(signature)
    G = H.group
    if not signature:
        return H.epsilon
    if len(signature) == 1:
        return eye(H.dims[signature[0]], H.field)
    head, last = signature[:-1], signature[-1]
    prod_head = reduce(G.mul, head)
    rec = iterated_delta(H, head)
    return np.dot(_kron_id(rec, H.dims[last]), H.Delta[prod_head, last])


def iterated_m(H: HopfGCoalgebra, g: int, n: int) -> np.ndarray:
    """M_g^(n): H_g^(x n) -> H_g; n = 1 is the identity, n = 0 the unit."""
    if n == 0:
        return H.i[g]
    d = H.dims[g]
    out = eye(d, H.field)
    for _ in range(n - 1):
        out = np.dot(H.M[g], _kron_id(out, d))
    return out


def iterated_m_family(H: HopfGAlgebra, signature) -> np.ndarray:
    """M_{g_1,...,g_n}: H_{g_1} (x) ... (x) H_{g_n} -> H_{g_1...g_n}."""
    signature = tuple(signature)
    G = H.group
    if not signature:
        return H.i
    if len(signature) == 1:
        return eye(H.dims[signature[0]], H.field)
    head, last = signature[:-1], signature[-1]
    prod_head = reduce(G.mul, head)
    rec = iterated_m_family(H, head)
    return np.dot(H.M[prod_head, last], _kron_id(rec, H.dims[last]))


def iterated_delta_sector(H: HopfGAlgebra, g: int, n: int) -> np.ndarray:
    """Delta_g^(n): H_g -> H_g^(x n); n = 1 is the identity, n = 0 is eps_g."""
    if n == 0:
        return H.epsilon[g]
    d = H.dims[g]
    out = eye(d, H.field)
    for _ in range(n - 1):
        out = np.dot(_kron_id(out, d), H.Delta[g])
    return out


# ---------------------------------------------------------------------------
# axiom checking


def check_hopf_g_coalgebra(H: HopfGCoalgebra, tol: float = DEFAULT_TOL) -> CheckReport:
    """Run every defining axiom; failing entries carry a witness index."""
    G, d, f = H.group, H.dims, H.field
    c = _Collector(f, tol)
    one = G.identity

    for g in H.support():
        m, unit = H.M[g], H.i[g]
        idg = eye(d[g], f)
        c.compare("associativity", (g,),
                  np.dot(m, _kron_id(m, d[g])), np.dot(m, _id_kron(d[g], m)))
        c.compare("unit-left", (g,), np.dot(m, _kron_id(unit, d[g])), idg)
        c.compare("unit-right", (g,), np.dot(m, _id_kron(d[g], unit)), idg)

    for g in G.elements():
        for h in G.elements():
            for k in G.elements():
                ghk = G.mul(G.mul(g, h), k)
                if d[ghk] == 0 or d[g] * d[h] * d[k] == 0:
                    continue
                lhs = np.dot(_kron_id(H.Delta[g, h], d[k]), H.Delta[G.mul(g, h), k])
                rhs = np.dot(_id_kron(d[g], H.Delta[h, k]), H.Delta[g, G.mul(h, k)])
                c.compare("coassociativity", (g, h, k), lhs, rhs)

    for g in H.support():
        idg = eye(d[g], f)
        c.compare("counit-left", (g,),
                  np.dot(_kron_id(H.epsilon, d[g]), H.Delta[one, g]), idg)
        c.compare("counit-right", (g,),
                  np.dot(_id_kron(d[g], H.epsilon), H.Delta[g, one]), idg)

    for g in H.support():
        gi = G.inv(g)
        target = np.dot(H.i[g], H.epsilon)
        lhs1 = np.dot(H.M[g], np.dot(_kron_id(H.S[gi], d[g]), H.Delta[gi, g]))
        lhs2 = np.dot(H.M[g], np.dot(_id_kron(d[g], H.S[gi]), H.Delta[g, gi]))
        c.compare("antipode-left", (g,), lhs1, target)
        c.compare("antipode-right", (g,), lhs2, target)

    for g in G.elements():
        for h in G.elements():
            gh = G.mul(g, h)
            if d[gh] == 0 or d[g] * d[h] == 0:
                continue
            delta = H.Delta[g, h]
            lhs = np.dot(delta, H.M[gh])
            # (M_g (x) M_h) composed with the middle-two-factor flip; the flip
            # is a basis permutation, so apply it as a column pick instead of
            # multiplying by a (d_g d_h)^2 square matrix
            cols = np.arange(d[g] * d[g] * d[h] * d[h]).reshape(
                d[g], d[g], d[h], d[h]).transpose(0, 2, 1, 3).ravel()
            rhs = np.dot(kron(H.M[g], H.M[h])[:, cols], kron(delta, delta))
            c.compare("comultiplication-multiplicative", (g, h), lhs, rhs)
            c.compare("comultiplication-unital", (g, h),
                      np.dot(delta, H.i[gh]), kron(H.i[g], H.i[h]))

    if d[one] > 0:
        c.compare("counit-multiplicative", (one,),
                  np.dot(H.epsilon, H.M[one]), kron(H.epsilon, H.epsilon))
        c.compare("counit-unital", (one,), np.dot(H.epsilon, H.i[one]), eye(1, f))

    return c.report()


def check_hopf_g_algebra(H: HopfGAlgebra, tol: float = DEFAULT_TOL) -> CheckReport:
    """Axiom suite for the mirror family, run through the duality."""
    return check_hopf_g_coalgebra(dualize(H), tol)


def check_involutory(H, tol: float = DEFAULT_TOL) -> bool:
    """S_{g^{-1}} . S_g = id on every nonzero sector."""
    G = H.group
    for g in H.support():
        comp = np.dot(H.S[G.inv(g)], H.S[g])
        if not tensor_eq(comp, eye(H.dims[g], H.field), H.field, tol):
            return False
    return True


def check_antipode_antimorphism(H: HopfGCoalgebra, tol: float = DEFAULT_TOL) -> bool:
    """S reverses products, maps units to units, and co-reverses comultiplication.

    The coalgebra half is the law
    Delta_{h^{-1},g^{-1}} . S_{gh} = (S_h (x) S_g) . swap . Delta_{g,h}.
    """
    G, d, f = H.group, H.dims, H.field
    for g in H.support():
        gi = G.inv(g)
        lhs = np.dot(H.S[g], H.M[g])
        rhs = np.dot(H.M[gi],
                     np.dot(swap_matrix(d[gi], d[gi], f), kron(H.S[g], H.S[g])))
        if not tensor_eq(lhs, rhs, f, tol):
            return False
        if not tensor_eq(np.dot(H.S[g], H.i[g]), H.i[gi], f, tol):
            return False
    for g in G.elements():
        for h in G.elements():
            gh = G.mul(g, h)
            if d[gh] == 0:
                continue
            gi, hi = G.inv(g), G.inv(h)
            lhs = np.dot(H.Delta[hi, gi], H.S[gh])
            rhs = np.dot(kron(H.S[h], H.S[g]),
                         np.dot(swap_matrix(d[g], d[h], f), H.Delta[g, h]))
            if not tensor_eq(lhs, rhs, f, tol):
                return False
    return True


# ---------------------------------------------------------------------------
# ladders

_LADDER_IDS = ("A1", "A2", "A3", "A4", "B1", "B2", "B3", "B4")


def _ladder_spec(G: FiniteGroup, name: str, g: int, h: int):
    """(domain sector, comultiplication split, antipode on rung, crossed)."""
    gi = G.inv(g)
    if name in ("A1", "B1"):
        return G.mul(g, h), (g, h), False, False
    if name in ("A2", "B2"):
        return G.mul(gi, h), (gi, h), True, False
    if name in ("A3", "B3"):
        return G.mul(h, g), (h, g), False, True
    return G.mul(h, gi), (h, gi), True, True


def ladder(H: HopfGCoalgebra, name: str, g: int, h: int) -> np.ndarray:
    """One of the eight ladder maps H_g (x) H_dom -> H_g (x) H_h.

    The A family multiplies one comultiplication leg into M_g from the right,
    the B family from the left; variants 2 and 4 pass the rung through the
    antipode, and variants 3 and 4 read the legs in crossed order.
    """
    G, d, f = H.group, H.dims, H.field
    gi = G.inv(g)
    _, split, use_s, crossed = _ladder_spec(G, name, g, h)
    delta = H.Delta[split]
    da, db = d[split[0]], d[split[1]]
    if crossed:
        rung = np.dot(_id_kron(da, H.S[gi]), delta) if use_s else delta
        rung = np.dot(swap_matrix(da, d[g], f), rung)
    else:
        rung = np.dot(_kron_id(H.S[gi], db), delta) if use_s else delta
    # rung: H_dom -> H_g (x) H_h, with the H_g factor feeding M_g
    body = _id_kron(d[g], rung)
    mul = _kron_id(H.M[g], d[h])
    if name.startswith("B"):
        mul = np.dot(mul, _kron_id(swap_matrix(d[g], d[g], f), d[h]))
    return np.dot(mul, body)


def _ladder_partner(G: FiniteGroup, name: str, g: int, h: int):
    """(partner name, partner h-index) giving the two-sided inverse ladder."""
    if name in ("A1", "B1"):
        return name[0] + "2", G.mul(g, h)
    if name in ("A2", "B2"):
        return name[0] + "1", G.mul(G.inv(g), h)
    if name in ("A3", "B3"):
        return name[0] + "4", G.mul(h, g)
    return name[0] + "3", G.mul(h, G.inv(g))


def check_ladders(H: HopfGCoalgebra, tol: float = DEFAULT_TOL) -> CheckReport:
    """Certify each ladder invertible by composing with its partner ladder.

    Gradings touching a zero sector are skipped; a nonzero ladder between
    sectors of different dimension is reported as a failure outright.
    """
    G, d, f = H.group, H.dims, H.field
    c = _Collector(f, tol)
    for name in _LADDER_IDS:
        for g in G.elements():
            for h in G.elements():
                dom, _, _, _ = _ladder_spec(G, name, g, h)
                if d[g] == 0 or d[h] == 0 or d[dom] == 0:
                    continue
                if d[dom] != d[h]:
                    c.record(f"ladder-{name}", (g, h), False, "not square")
                    continue
                lad = ladder(H, name, g, h)
                pname, ph = _ladder_partner(G, name, g, h)
                inv = ladder(H, pname, g, ph)
                ident = eye(d[g] * d[h], f)
                c.compare(f"ladder-{name}-left-inverse", (g, h),
                          np.dot(inv, lad), ident)
                c.compare(f"ladder-{name}-right-inverse", (g, h),
                          np.dot(lad, inv), ident)
    return c.report()


# ---------------------------------------------------------------------------
# duals and opposites


def dualize(H):
    """Transpose a Hopf G-algebra into a Hopf G-coalgebra, or back."""
    G = H.group
    if isinstance(H, HopfGAlgebra):
        return HopfGCoalgebra(
            group=G,
            dims=H.dims,
            M={g: H.Delta[g].T.copy() for g in G.elements()},
            i={g: H.epsilon[g].T.copy() for g in G.elements()},
            Delta={(g, h): H.M[g, h].T.copy()
                   for g in G.elements() for h in G.elements()},
            epsilon=H.i.T.copy(),
            S={g: H.S[G.inv(g)].T.copy() for g in G.elements()},
            field=H.field,
        )
    return HopfGAlgebra(
        group=G,
        dims=H.dims,
        M={(g, h): H.Delta[g, h].T.copy()
           for g in G.elements() for h in G.elements()},
        i=H.epsilon.T.copy(),
        Delta={g: H.M[g].T.copy() for g in G.elements()},
        epsilon={g: H.i[g].T.copy() for g in G.elements()},
        S={g: H.S[G.inv(g)].T.copy() for g in G.elements()},
        field=H.field,
    )


def _inverted_antipode(entry: np.ndarray, field: str) -> np.ndarray:
    if entry.shape[0] != entry.shape[1]:
        raise HopfTrisectError("antipode is not invertible between these sectors")
    try:
        return inverse(entry, field)
    except (ValueError, np.linalg.LinAlgError) as exc:
        raise HopfTrisectError("antipode is not invertible") from exc


def opposite(H):
    """Reverse multiplication.

    On the coalgebra family the sectors stay put and the new antipode at g is
    the inverse of S_{g^{-1}}.  On the algebra family reversing the product
    flips the grading, so the g-sector of the result is the old g^{-1}-sector
    and the new antipode at g is the inverse of S_g.
    """
    G, d, f = H.group, H.dims, H.field
    if isinstance(H, HopfGCoalgebra):
        return HopfGCoalgebra(
            group=G,
            dims=d,
            M={g: np.dot(H.M[g], swap_matrix(d[g], d[g], f)) for g in G.elements()},
            i=dict(H.i),
            Delta=dict(H.Delta),
            epsilon=H.epsilon,
            S={g: _inverted_antipode(H.S[G.inv(g)], f) for g in G.elements()},
            field=f,
        )
    inv_dims = tuple(d[G.inv(g)] for g in G.elements())
    return HopfGAlgebra(
        group=G,
        dims=inv_dims,
        M={(g, h): np.dot(H.M[G.inv(h), G.inv(g)],
                          swap_matrix(d[G.inv(g)], d[G.inv(h)], f))
           for g in G.elements() for h in G.elements()},
        i=H.i,
        Delta={g: H.Delta[G.inv(g)] for g in G.elements()},
        epsilon={g: H.epsilon[G.inv(g)] for g in G.elements()},
        S={g: _inverted_antipode(H.S[g], f) for g in G.elements()},
        field=f,
    )


def coopposite(H):
    """Reverse comultiplication.

    On the coalgebra family this flips the grading (sector g of the result is
    the old g^{-1}-sector) with new antipode (S_g)^{-1}; on the algebra
    family the sectors stay put with new antipode (S_{g^{-1}})^{-1}.
    """
    G, d, f = H.group, H.dims, H.field
    if isinstance(H, HopfGCoalgebra):
        inv_dims = tuple(d[G.inv(g)] for g in G.elements())
        return HopfGCoalgebra(
            group=G,
            dims=inv_dims,
            M={g: H.M[G.inv(g)] for g in G.elements()},
            i={g: H.i[G.inv(g)] for g in G.elements()},
            Delta={(g, h): np.dot(swap_matrix(d[G.inv(h)], d[G.inv(g)], f),
                                  H.Delta[G.inv(h), G.inv(g)])
                   for g in G.elements() for h in G.elements()},
            epsilon=H.epsilon,
            S={g: _inverted_antipode(H.S[g], f) for g in G.elements()},
            field=f,
        )
    return HopfGAlgebra(
        group=G,
        dims=d,
        M=dict(H.M),
        i=H.i,
        Delta={g: np.dot(swap_matrix(d[g], d[g], f), H.Delta[g])
               for g in G.elements()},
        epsilon=dict(H.epsilon),
        S={g: _inverted_antipode(H.S[G.inv(g)], f) for g in G.elements()},
        field=f,
    )


# ---------------------------------------------------------------------------
# integrals and cointegrals


def _stack_offsets(dims, sel):
    offsets, total = {}, 0
    for g in sel:
        offsets[g] = total
        total += dims[g]
    return offsets, total


def _rescale_leading(vec: np.ndarray, field: str) -> np.ndarray:
    """Divide by the leading (exact) or largest-modulus (float) entry."""
    if field == EXACT:
        lead = next((x for x in vec if x != 0), None)
    else:
        idx = int(np.abs(vec).argmax())
        lead = vec[idx] if abs(vec[idx]) > 0 else None
    if lead is None:
        raise NoIntegral("nullspace produced the zero vector")
    return vec / lead


def solve_g_integral(H: HopfGCoalgebra, side: str = "right",
                     tol: float = DEFAULT_TOL) -> GIntegral:
    """Nonzero solution of the G-integral equations, solved globally.

    All sectors are unknowns of one homogeneous system over the stacked dual
    spaces, and the solution space must be exactly one-dimensional.  Asking
    for a two-sided integral solves the right equations and then certifies
    the left ones on the solution.
    """
    if side not in ("left", "right", "two-sided"):
        raise ValueError(f"unknown side {side!r}")
    G, d, f = H.group, H.dims, H.field
    primary = "left" if side == "left" else "right"
    sol = _integral_nullspace(H, primary, tol)
    offsets, _ = _stack_offsets(d, G.elements())
    forms = {}
    for g in G.elements():
        row = zeros((1, d[g]), f)
        for b in range(d[g]):
            row[0, b] = sol[offsets[g] + b]
        forms[g] = row
    if side == "two-sided" and not _integral_satisfies(H, forms, "left", tol):
        raise NoIntegral("the right G-integral is not left; no two-sided G-integral")
    return GIntegral(forms=forms, side=side)


def _integral_nullspace(H: HopfGCoalgebra, side: str, tol: float) -> np.ndarray:
    G, d, f = H.group, H.dims, H.field
    offsets, total = _stack_offsets(d, G.elements())
    if total == 0:
        raise NoIntegral("empty structure has no nonzero G-integral")
    rows = []
    for g in G.elements():
        for h in G.elements():
            gh = G.mul(g, h)
            delta = H.Delta[g, h]
            if side == "right":
                # (id_g (x) mu_h) . Delta_{g,h} = mu_{gh} . i_g
                for p in range(d[g]):
                    for q in range(d[gh]):
                        row = zeros((total,), f)
                        for b in range(d[h]):
                            row[offsets[h] + b] += delta[p * d[h] + b, q]
                        row[offsets[gh] + q] -= H.i[g][p, 0]
                        rows.append(row)
            else:
                # (mu_g (x) id_h) . Delta_{g,h} = mu_{gh} . i_h
                for p in range(d[h]):
                    for q in range(d[gh]):
                        row = zeros((total,), f)
                        for a in range(d[g]):
                            row[offsets[g] + a] += delta[a * d[h] + p, q]
                        row[offsets[gh] + q] -= H.i[h][p, 0]
                        rows.append(row)
    if not rows:
        raise NoIntegral("no constraints could be formed")
    basis = nullspace(np.stack(rows), f, tol)
    if len(basis) == 0:
        raise NoIntegral(f"no nonzero {side} G-integral")
    if len(basis) > 1:
        raise AmbiguousIntegral(
            f"{side} G-integral space has dimension {len(basis)}, expected 1")
    return _rescale_leading(basis[0], f)


def _integral_satisfies(H: HopfGCoalgebra, forms: dict, side: str, tol: float) -> bool:
    G, d, f = H.group, H.dims, H.field
    for g in G.elements():
        for h in G.elements():
            gh = G.mul(g, h)
            if side == "right":
                lhs = np.dot(_id_kron(d[g], forms[h]), H.Delta[g, h])
                rhs = np.dot(H.i[g], forms[gh])
            else:
                lhs = np.dot(_kron_id(forms[g], d[h]), H.Delta[g, h])
                rhs = np.dot(H.i[h], forms[gh])
            if not tensor_eq(lhs, rhs, f, tol):
                return False
    return True


def solve_cointegral(H: HopfGCoalgebra, side: str = "right",
                     tol: float = DEFAULT_TOL) -> Cointegral:
    """Cointegral of the 1-sector Hopf algebra inside H."""
    if side not in ("left", "right", "two-sided"):
        raise ValueError(f"unknown side {side!r}")
    G, f = H.group, H.field
    one = G.identity
    d1 = H.dims[one]
    if d1 == 0:
        raise NoCointegral("the 1-sector is zero")
    m, eps = H.M[one], H.epsilon
    primary = "left" if side == "left" else "right"
    rows = []
    for p in range(d1):
        for a in range(d1):
            row = zeros((d1,), f)
            for b in range(d1):
                if primary == "right":
                    row[b] += m[p, a * d1 + b]  # M(x_a (x) e)
                else:
                    row[b] += m[p, b * d1 + a]  # M(e (x) x_a)
            row[p] -= eps[0, a]
            rows.append(row)
    basis = nullspace(np.stack(rows), f, tol)
    if len(basis) == 0:
        raise NoCointegral(f"no nonzero {primary} cointegral")
    if len(basis) > 1:
        raise AmbiguousCointegral(
            f"{primary} cointegral space has dimension {len(basis)}, expected 1")
    e = _rescale_leading(basis[0], f).reshape(d1, 1)
    if side == "two-sided" and not _cointegral_satisfies(H, e, "left", tol):
        raise NoCointegral("the right cointegral is not left; no two-sided cointegral")
    return Cointegral(element=e, side=side)


def _cointegral_satisfies(H: HopfGCoalgebra, e: np.ndarray, side: str, tol: float) -> bool:
    G, f = H.group, H.field
    d1 = H.dims[G.identity]
    m, eps = H.M[G.identity], H.epsilon
    if side == "right":
        lhs = np.dot(m, _id_kron(d1, e))  # x -> M(x (x) e)
    else:
        lhs = np.dot(m, _kron_id(e, d1))  # x -> M(e (x) x)
    return tensor_eq(lhs, np.dot(e, eps), f, tol)


def solve_g_cointegral(H: HopfGAlgebra, side: str = "right",
                       tol: float = DEFAULT_TOL) -> GCointegral:
    """Cointegral family for a Hopf G-algebra, via the dual G-integral."""
    mu = solve_g_integral(dualize(H), side=side, tol=tol)
    elements = {g: mu.forms[g].T.copy() for g in H.group.elements()}
    return GCointegral(elements=elements, side=side)


def normalize_pair(H: HopfGCoalgebra, mu: GIntegral, e: Cointegral,
                   tol: float = DEFAULT_TOL):
    """Rescale mu so that mu_1(e) = 1; the cointegral keeps its scale."""
    one = H.group.identity
    val = np.dot(mu.forms[one], e.element)[0, 0]
    degenerate = val == 0 if H.field == EXACT else abs(val) <= tol
    if degenerate:
        raise DegeneratePairing("mu_1(e) = 0; the pair cannot be normalized")
    forms = {g: row / val for g, row in mu.forms.items()}
    return GIntegral(forms=forms, side=mu.side), e


def check_cosemisimple(H: HopfGCoalgebra, mu: GIntegral | None = None,
                       tol: float = DEFAULT_TOL) -> bool:
    """True iff some right G-integral takes value 1 on every nonzero unit.

    The solved integral is determined up to one global scalar, so this holds
    exactly when the values mu_g(i_g) agree and are nonzero across the
    support.
    """
    if mu is None:
        try:
            mu = solve_g_integral(H, side="right", tol=tol)
        except (NoIntegral, AmbiguousIntegral):
            return False
    vals = [np.dot(mu.forms[g], H.i[g])[0, 0] for g in H.support()]
    if not vals:
        return False
    ref = vals[0]
    if H.field == EXACT:
        return ref != 0 and all(v == ref for v in vals)
    if abs(ref) <= tol:
        return False
    return all(abs(v - ref) <= tol * (1 + abs(ref)) for v in vals)


def check_cyclicity(H: HopfGCoalgebra, mu: GIntegral, e: Cointegral,
                    tol: float = DEFAULT_TOL) -> CheckReport:
    """Trace-like properties of an integral/cointegral pair.

    Covers the antipode-from-pairing formula
    mu_1(e) S_g(x) = sum mu_g(e_(1) x) e_(2), with e split along
    Delta_{g,g^{-1}}, its corollaries mu_{g^{-1}} . S_g = mu_g and
    S_1(e) = e, and cyclic invariance of the closed words mu_g . M_g^(n)
    and Delta_{g_1,...,g_n}(e).
    """
    G, d, f = H.group, H.dims, H.field
    c = _Collector(f, tol)
    one = G.identity
    mu1e = np.dot(mu.forms[one], e.element)[0, 0]

    for g in H.support():
        gi = G.inv(g)
        if d[gi] == 0:
            continue
        split = np.dot(H.Delta[g, gi], e.element).reshape(d[g], d[gi])
        pairing = np.dot(mu.forms[g], H.M[g]).reshape(d[g], d[g])
        rhs = np.dot(split.T, pairing)  # [p, q] = sum_a e2[a, p] mu(M(a (x) q))
        c.compare("cointegral-antipode-formula", (g,), H.S[g] * mu1e, rhs)

    for g in H.support():
        gi = G.inv(g)
        c.compare("integral-antipode", (g,),
                  np.dot(mu.forms[gi], H.S[g]), mu.forms[g])
    if d[one] > 0:
        c.compare("cointegral-antipode", (one,),
                  np.dot(H.S[one], e.element), e.element)

    for g in H.support():
        for n in (2, 3):
            word = np.dot(mu.forms[g], iterated_m(H, g, n))
            rot = _rotation_matrix([d[g]] * n, f)
            c.compare("trace-cyclic", (g, n), word, np.dot(word, rot))

    support = set(H.support())
    for n in (2, 3):
        for sig in _unit_signatures(G, support, n):
            v = np.dot(iterated_delta(H, sig), e.element)
            w = np.dot(iterated_delta(H, sig[1:] + sig[:1]), e.element)
            rot = _rotation_matrix([d[g] for g in sig], f)
            c.compare("cointegral-cyclic", sig, np.dot(rot, v), w)
    return c.report()


def _rotation_matrix(dims, field) -> np.ndarray:
    """Permutation matrix sending V_1 (x) ... (x) V_n to V_2 (x) ... (x) V_1."""
    total = 1
    for d in dims:
        total *= d
    out = zeros((total, total), field)
    rot_dims = list(dims[1:]) + list(dims[:1])
    for idx in np.ndindex(*tuple(dims)):
        src = 0
        for d, k in zip(dims, idx):
            src = src * d + k
        dst = 0
        for d, k in zip(rot_dims, idx[1:] + idx[:1]):
            dst = dst * d + k
        out[dst, src] = as_scalar(1, field)
    return out


def _unit_signatures(G: FiniteGroup, support, n: int):
    """All tuples (g_1, ..., g_n) of support elements with product 1."""
    sigs = []

    def go(prefix, prod):
        if len(prefix) == n - 1:
            last = G.inv(prod)
            if last in support:
                sigs.append(tuple(prefix) + (last,))
            return
        for g in sorted(support):
            go(prefix + [g], G.mul(prod, g))

    go([], G.identity)
    return sigs


# ---------------------------------------------------------------------------
# crossings


def check_crossing(H, crossing: Crossing, tol: float = DEFAULT_TOL) -> CheckReport:
    """Crossing axioms on whichever family H belongs to.

    The family may be partial in the acting element; laws quantified over two
    acting elements run only where every map involved is present.  When the
    structure is cosemisimple, the induced action on the solved integral
    family (or cointegral family, on the algebra side) is verified too.
    """
    if isinstance(H, HopfGCoalgebra):
        return _check_crossing_coalgebra(H, crossing, tol)
    return _check_crossing_algebra(H, crossing, tol)


def _check_iso(c: _Collector, phi: np.ndarray, g: int, h: int, field: str) -> bool:
    if phi.shape[0] != phi.shape[1]:
        c.record("crossing-iso", (g, h), False, "dimension clash")
        return False
    try:
        inverse(phi, field)
        c.record("crossing-iso", (g, h), True)
    except (ValueError, np.linalg.LinAlgError):
        c.record("crossing-iso", (g, h), False, "singular")
    return True


def _check_crossing_coalgebra(H: HopfGCoalgebra, crossing: Crossing,
                              tol: float) -> CheckReport:
    G, d, f = H.group, H.dims, H.field
    c = _Collector(f, tol)
    one = G.identity
    acting = crossing.acting_elements()

    for (g, h), phi in sorted(crossing.phi.items()):
        tg = G.conj(h, g)
        _expect(phi.shape, (d[tg], d[g]), f"phi[{g},{h}]")
        if d[g] == 0:
            continue
        if not _check_iso(c, phi, g, h, f):
            continue
        c.compare("crossing-multiplicative", (g, h),
                  np.dot(phi, H.M[g]), np.dot(H.M[tg], kron(phi, phi)))
        c.compare("crossing-unital", (g, h), np.dot(phi, H.i[g]), H.i[tg])
        gi = G.inv(g)
        if (gi, h) in crossing.phi:
            c.compare("crossing-antipode", (g, h),
                      np.dot(crossing.phi[gi, h], H.S[g]), np.dot(H.S[tg], phi))

    for h in acting:
        for g in G.elements():
            for k in G.elements():
                gk = G.mul(g, k)
                if ((g, h) not in crossing.phi or (k, h) not in crossing.phi
                        or (gk, h) not in crossing.phi or d[gk] == 0):
                    continue
                tg, tk = G.conj(h, g), G.conj(h, k)
                lhs = np.dot(kron(crossing.phi[g, h], crossing.phi[k, h]),
                             H.Delta[g, k])
                rhs = np.dot(H.Delta[tg, tk], crossing.phi[gk, h])
                c.compare("crossing-comultiplication", (g, k, h), lhs, rhs)
        if (one, h) in crossing.phi and d[one] > 0:
            c.compare("crossing-counit", (h,),
                      np.dot(H.epsilon, crossing.phi[one, h]), H.epsilon)

    for a in acting:
        for b in acting:
            ab = G.mul(a, b)
            for g in G.elements():
                mid = G.conj(b, g)
                if ((g, b) not in crossing.phi or (g, ab) not in crossing.phi
                        or (mid, a) not in crossing.phi):
                    continue
                lhs = np.dot(crossing.phi[mid, a], crossing.phi[g, b])
                c.compare("crossing-homomorphism", (g, a, b),
                          lhs, crossing.phi[g, ab])

    if check_cosemisimple(H, tol=tol):
        mu = solve_g_integral(H, side="right", tol=tol)
        for (g, h), phi in sorted(crossing.phi.items()):
            if d[g] == 0:
                continue
            tg = G.conj(h, g)
            c.compare("crossing-integral", (g, h),
                      np.dot(mu.forms[tg], phi), mu.forms[g])
    return c.report()


def _check_crossing_algebra(H: HopfGAlgebra, crossing: Crossing,
                            tol: float) -> CheckReport:
    G, d, f = H.group, H.dims, H.field
    c = _Collector(f, tol)
    one = G.identity
    acting = crossing.acting_elements()

    for (g, h), phi in sorted(crossing.phi.items()):
        tg = G.conj(h, g)
        _expect(phi.shape, (d[tg], d[g]), f"phi[{g},{h}]")
        if d[g] == 0:
            continue
        if not _check_iso(c, phi, g, h, f):
            continue
        c.compare("crossing-comultiplicative", (g, h),
                  np.dot(H.Delta[tg], phi), np.dot(kron(phi, phi), H.Delta[g]))
        c.compare("crossing-counital", (g, h),
                  np.dot(H.epsilon[tg], phi), H.epsilon[g])
        gi = G.inv(g)
        if (gi, h) in crossing.phi:
            c.compare("crossing-antipode", (g, h),
                      np.dot(crossing.phi[gi, h], H.S[g]), np.dot(H.S[tg], phi))

    for h in acting:
        for g in G.elements():
            for k in G.elements():
                gk = G.mul(g, k)
                if ((g, h) not in crossing.phi or (k, h) not in crossing.phi
                        or (gk, h) not in crossing.phi or d[g] * d[k] == 0):
                    continue
                tg, tk = G.conj(h, g), G.conj(h, k)
                lhs = np.dot(crossing.phi[gk, h], H.M[g, k])
                rhs = np.dot(H.M[tg, tk],
                             kron(crossing.phi[g, h], crossing.phi[k, h]))
                c.compare("crossing-multiplication", (g, k, h), lhs, rhs)
        if (one, h) in crossing.phi and d[one] > 0:
            c.compare("crossing-unit", (h,),
                      np.dot(crossing.phi[one, h], H.i), H.i)

    for a in acting:
        for b in acting:
            ab = G.mul(a, b)
            for g in G.elements():
                mid = G.conj(b, g)
                if ((g, b) not in crossing.phi or (g, ab) not in crossing.phi
                        or (mid, a) not in crossing.phi):
                    continue
                lhs = np.dot(crossing.phi[mid, a], crossing.phi[g, b])
                c.compare("crossing-homomorphism", (g, a, b),
                          lhs, crossing.phi[g, ab])

    if check_cosemisimple(dualize(H), tol=tol):
        ec = solve_g_cointegral(H, side="right", tol=tol)
        for (g, h), phi in sorted(crossing.phi.items()):
            if d[g] == 0:
                continue
            tg = G.conj(h, g)
            c.compare("crossing-cointegral", (g, h),
                      np.dot(phi, ec.elements[g]), ec.elements[tg])
    return c.report()
