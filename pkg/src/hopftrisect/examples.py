"""Ready-made structures: function coalgebras, group algebras, and friends.

These are the workhorse examples for the whole package.  Any homomorphism
phi: K -> G of finite groups (onto or not) turns the functions on K into a
Hopf G-coalgebra graded by the fibers of phi; the g-sector has the delta
functions on the fiber over g as its basis, ordered by element index.  Group
algebras appear as the one-sector family over the trivial group.

A web of compatible homomorphisms upgrades three such coalgebras to a full
triplet: Kronecker deltas pair the dual of one grading against the other two,
and a discrete Fourier transform couples the kernels.  d8_demo runs the
resulting invariant over every monodromy of a flat bundle with dihedral
structure group.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .diagrams import builtin
from .errors import HopfTrisectError
from .groups import (
    FiniteGroup,
    GroupHom,
    cyclic_group,
    dihedral_group,
    hom_from_map,
    identity_hom,
    trivial_group,
)
from .hopf import Cointegral, Crossing, GIntegral, HopfGCoalgebra, coopposite, dualize
from .invariants import bundle_invariant, solve_bundle
from .pairings import HopfGTriplet
from .scalars import EXACT, FLOAT, as_scalar, zeros


class CompatibilityFailure(HopfTrisectError):
    """The connecting map does not intertwine the two gradings."""


class HypothesisViolated(HopfTrisectError):
    """A kernel element breaks the order-dividing-2-and-central requirement."""


class NotCyclic(HopfTrisectError):
    """The declared generator does not enumerate the row-side kernel."""


def trivial_hom(source: FiniteGroup) -> GroupHom:
    """The collapse of a group onto the trivial group."""
    return hom_from_map(source, trivial_group(), [0] * source.order)


def function_coalgebra(phi: GroupHom, field: str = EXACT) -> HopfGCoalgebra:
    """Functions on the source of phi, graded over the target by fibers.

    The g-sector is spanned by the delta functions on the fiber over g, so
    its dimension is the fiber size (zero off the image of phi).
    Multiplication is pointwise, comultiplication is dual to the source
    group's product, and the antipode is pullback along inversion.
    """
    K, G = phi.source, phi.target
    fibers = {g: phi.preimage(g) for g in G.elements()}
    index = {}
    for g in G.elements():
        for pos, x in enumerate(fibers[g]):
            index[x] = (g, pos)
    dims = tuple(len(fibers[g]) for g in G.elements())

    one_scalar = as_scalar(1, field)
    M, i, S, Delta = {}, {}, {}, {}
    for g in G.elements():
        d = dims[g]
        m = zeros((d, d * d), field)
        for p in range(d):
            m[p, p * d + p] = one_scalar
        M[g] = m
        unit = zeros((d, 1), field)
        for p in range(d):
            unit[p, 0] = one_scalar
        i[g] = unit
        s = zeros((dims[G.inv(g)], d), field)
        for pos, x in enumerate(fibers[g]):
            s[index[K.inv(x)][1], pos] = one_scalar
        S[g] = s

    for g in G.elements():
        for h in G.elements():
            gh = G.mul(g, h)
            delta = zeros((dims[g] * dims[h], dims[gh]), field)
            for a_pos, a in enumerate(fibers[g]):
                for b_pos, b in enumerate(fibers[h]):
                    delta[a_pos * dims[h] + b_pos, index[K.mul(a, b)][1]] = one_scalar
            Delta[g, h] = delta

    eps = zeros((1, dims[G.identity]), field)
    eps[0, index[K.identity][1]] = one_scalar

    return HopfGCoalgebra(
        group=G, dims=dims, M=M, i=i, Delta=Delta, epsilon=eps, S=S, field=field,
    )


def function_coalgebra_integral(phi: GroupHom, field: str = EXACT) -> GIntegral:
    """The two-sided G-integral of function_coalgebra(phi): mu_g sums the
    coordinates over the fiber, so it is 1 on every delta function."""
    G = phi.target
    forms = {}
    for g in G.elements():
        fiber = phi.preimage(g)
        row = zeros((1, len(fiber)), field)
        for pos in range(len(fiber)):
            row[0, pos] = as_scalar(1, field)
        forms[g] = row
    return GIntegral(forms=forms, side="two-sided")


def function_coalgebra_cointegral(phi: GroupHom, field: str = EXACT) -> Cointegral:
    """The two-sided cointegral of function_coalgebra(phi): the delta
    function at the source identity."""
    K, G = phi.source, phi.target
    fiber = phi.preimage(G.identity)
    e = zeros((len(fiber), 1), field)
    e[fiber.index(K.identity), 0] = as_scalar(1, field)
    return Cointegral(element=e, side="two-sided")


def function_coalgebra_crossing(phi: GroupHom, field: str = EXACT) -> Crossing:
    """Conjugation crossing on function_coalgebra(phi), where it exists.

    For h in the image of phi, pick any lift and pull functions back along
    conjugation by it.  Acting elements whose lifts disagree on some fiber
    (the lift ambiguity is the kernel) are left out of the family, as are
    elements outside the image, where no lift exists at all.
    """
    K, G = phi.source, phi.target
    fibers = {g: phi.preimage(g) for g in G.elements()}
    maps = {}
    for h in G.elements():
        lifts = phi.preimage(h)
        if not lifts:
            continue
        consistent = all(
            K.conj(lift, x) == K.conj(lifts[0], x)
            for lift in lifts[1:]
            for x in K.elements()
        )
        if not consistent:
            continue
        lift = lifts[0]
        for g in G.elements():
            tg = G.conj(h, g)
            mat = zeros((len(fibers[tg]), len(fibers[g])), field)
            for pos, x in enumerate(fibers[g]):
                mat[fibers[tg].index(K.conj(lift, x)), pos] = as_scalar(1, field)
            maps[g, h] = mat
    return Crossing(phi=maps)


def group_algebra(K: FiniteGroup, field: str = EXACT) -> HopfGCoalgebra:
    """The group algebra k[K] as a one-sector family over the trivial group."""
    n = K.order
    one = as_scalar(1, field)
    m = zeros((n, n * n), field)
    for a in K.elements():
        for b in K.elements():
            m[K.mul(a, b), a * n + b] = one
    unit = zeros((n, 1), field)
    unit[K.identity, 0] = one
    delta = zeros((n * n, n), field)
    for a in K.elements():
        delta[a * n + a, a] = one
    eps = zeros((1, n), field)
    for a in K.elements():
        eps[0, a] = one
    s = zeros((n, n), field)
    for a in K.elements():
        s[K.inv(a), a] = one
    return HopfGCoalgebra(
        group=trivial_group(),
        dims=(n,),
        M={0: m},
        i={0: unit},
        Delta={(0, 0): delta},
        epsilon=eps,
        S={0: s},
        field=field,
    )


# ---------------------------------------------------------------------------
# pairings from homomorphism data


def kronecker_pairing(psi: GroupHom, phi: GroupHom, phi1: GroupHom, field: str = EXACT) -> dict:
    """Sector forms <x, e'_y> = 1 when psi(x) = y, else 0.

    Rows run over the fiber of phi, columns over the fiber of phi1, both in
    element order, so forms[g] has one 1 per row and plugs straight into a
    doublet whose first structure is the dual of function_coalgebra(phi) and
    whose second is function_coalgebra(phi1).  phi = phi1 o psi is required:
    without it psi would carry basis elements across sectors and the form
    would not respect the grading.
    """
    if psi.source != phi.source:
        raise ValueError("psi must start at the source of phi")
    if psi.target != phi1.source:
        raise ValueError("psi must land in the source of phi1")
    if phi.target != phi1.target:
        raise ValueError("gradings must share a target group")
    for x in phi.source.elements():
        if phi(x) != phi1(psi(x)):
            raise CompatibilityFailure(
                f"phi and phi1 o psi disagree at {phi.source.name(x)}: "
                f"{phi.target.name(phi(x))} vs {phi.target.name(phi1(psi(x)))}"
            )
    G = phi.target
    one = as_scalar(1, field)
    forms = {}
    for g in G.elements():
        rows = phi.preimage(g)
        cols = phi1.preimage(g)
        mat = zeros((len(rows), len(cols)), field)
        for pos, x in enumerate(rows):
            mat[pos, cols.index(psi(x))] = one
        forms[g] = mat
    return forms


@dataclass(frozen=True)
class FourierPairingSpec:
    """Data for the kernel Fourier form between two graded function coalgebras.

    ``generator`` is the element of ker(phi2) whose powers enumerate that
    kernel; ``rho`` carries the cyclic group of order ``n`` into the source
    of phi1 by p |-> rho(generator^p), and its images must lie in ker(phi1).
    """

    phi2: GroupHom
    phi1: GroupHom
    rho: GroupHom
    n: int
    generator: int


def fourier_pairing(spec: FourierPairingSpec, field: str | None = None) -> np.ndarray:
    """The identity-sector form F[x, y] = (1/n) sum over rho(a^p) = y of w^{mp}.

    Rows are the kernel of spec.phi2 with x = a^m (a the generator), columns
    the kernel of spec.phi1, both in element order; w = exp(2 pi i / n).
    Left to choose, n <= 2 builds exact entries (w is a sign there) and
    larger n falls back to the float backend, whose entries carry phase
    error on the order of 1e-15; asking for the exact backend with n > 2 is
    refused since w is irrational.
    """
    K2, K1 = spec.phi2.source, spec.phi1.source
    if spec.phi2.target != spec.phi1.target:
        raise ValueError("gradings must share a target group")
    if not 0 <= spec.generator < K2.order:
        raise ValueError(f"generator {spec.generator} is not an element of the source")
    kernel2 = spec.phi2.kernel()
    kernel1 = spec.phi1.kernel()
    if spec.n != len(kernel2):
        raise NotCyclic(f"kernel of phi2 has order {len(kernel2)}, spec says {spec.n}")
    powers, x = [], K2.identity
    for _ in range(spec.n):
        powers.append(x)
        x = K2.mul(x, spec.generator)
    if x != K2.identity or sorted(powers) != kernel2:
        raise NotCyclic(
            f"powers of {K2.name(spec.generator)} do not enumerate the kernel of phi2"
        )
    if spec.rho.source != cyclic_group(spec.n):
        raise ValueError("rho must be defined on the cyclic group of order n")
    if spec.rho.target != K1:
        raise ValueError("rho must land in the source of phi1")
    for p in range(spec.n):
        if spec.rho(p) not in kernel1:
            raise ValueError(
                f"rho sends power {p} to {K1.name(spec.rho(p))}, "
                "outside the kernel of phi1"
            )
    if field is None:
        field = EXACT if spec.n <= 2 else FLOAT
    if field == EXACT and spec.n > 2:
        raise ValueError(
            "a primitive root of unity of order > 2 is irrational; "
            "build this form on the float backend"
        )
    mat = zeros((spec.n, len(kernel1)), field)
    for m in range(spec.n):
        row = kernel2.index(powers[m])
        for p in range(spec.n):
            col = kernel1.index(spec.rho(p))
            if field == EXACT:
                w = Fraction(-1 if (m * p) % 2 else 1, spec.n)
            else:
                w = cmath.exp(2j * cmath.pi * m * p / spec.n) / spec.n
            mat[row, col] += w
    return mat


def example_triplet(
    phi: GroupHom,
    phi1: GroupHom,
    phi2: GroupHom,
    psi: GroupHom,
    psi1: GroupHom,
    rho: GroupHom,
    field: str = EXACT,
) -> HopfGTriplet:
    """Triplet built from a compatible web of homomorphisms over one target.

    phi, phi1, phi2 grade three function coalgebras; the alpha slot is the
    dual of the first with reversed comultiplication.  psi (into the source
    of phi1) and psi1 (into the source of phi2) induce the Kronecker forms
    and must cover the gradings, rho the kernel Fourier form.  Every element
    of ker(phi1) and ker(phi2) has to be central of order dividing 2; that
    is exactly what makes the closed three-form identities hold, and the
    offending element is named when the requirement fails.
    """
    for ker_hom, label in ((phi1, "phi1"), (phi2, "phi2")):
        K = ker_hom.source
        for z in ker_hom.kernel():
            if z != K.identity and K.mul(z, z) != K.identity:
                raise HypothesisViolated(
                    f"kernel element {K.name(z)} of {label} has order "
                    f"{K.element_order(z)}, not dividing 2"
                )
            if not K.is_central(z):
                raise HypothesisViolated(
                    f"kernel element {K.name(z)} of {label} is not central"
                )
    form_ab = kronecker_pairing(psi, phi, phi1, field)
    form_ak = kronecker_pairing(psi1, phi, phi2, field)
    K2 = phi2.source
    kernel2 = phi2.kernel()
    generator = next((z for z in kernel2 if z != K2.identity), K2.identity)
    form_kb = fourier_pairing(
        FourierPairingSpec(phi2, phi1, rho, len(kernel2), generator), field
    )
    return HopfGTriplet(
        alpha=coopposite(dualize(function_coalgebra(phi, field))),
        beta=function_coalgebra(phi1, field),
        kappa=function_coalgebra(phi2, field),
        form_kb=form_kb,
        form_ab=form_ab,
        form_ak=form_ak,
    )


# ---------------------------------------------------------------------------
# the dihedral web and its flat-bundle demonstration


def d8_homs() -> tuple:
    """The dihedral web (phi, phi1, phi2, psi, psi1, rho) feeding example_triplet.

    Target D8 of order 16, all three sources D4 of order 8.  phi = phi1
    sends (s, r) to (s, r^4), so its image is the four elements 1, r^4, s,
    sr^4 and its kernel the central <r^2>; phi2 sends (s, r) to (s, r^2)
    and is injective.  psi is the identity, psi1 squares the rotation, and
    rho is the only map out of the trivial kernel of phi2.
    """
    d4, d8 = dihedral_group(4), dihedral_group(8)

    def twist(group, k):
        # s^a r^b |-> s^a r^{kb}, in the r-block/sr-block index layout
        half = group.order // 2
        return [(half if a else 0) + (k * b) % half for a in (0, 1) for b in range(4)]

    phi = hom_from_map(d4, d8, twist(d8, 4))
    phi2 = hom_from_map(d4, d8, twist(d8, 2))
    psi1 = hom_from_map(d4, d4, twist(d4, 2))
    rho = hom_from_map(cyclic_group(1), d4, [d4.identity])
    return phi, phi, phi2, identity_hom(d4), psi1, rho


@dataclass(frozen=True)
class FlatBundleReport:
    """Invariant of the circle-times-sphere bundle, one entry per monodromy.

    values and fiber_sizes are indexed by the element index in group;
    image lists the elements with nonzero fiber, and zeta is the cube root
    of the stabilizer bracket used to normalize.
    """

    group: FiniteGroup
    values: tuple
    fiber_sizes: tuple
    image: tuple
    zeta: complex


def d8_demo() -> FlatBundleReport:
    """Evaluate every flat S1 x S3 bundle with structure group D8.

    The bracket at monodromy alpha counts the fiber of phi over alpha, so
    the normalized value is 2/zeta on the four-element image of phi and 0
    elsewhere: the invariant detects which monodromies lift through phi.
    The stabilizer bracket is 2, whose cube root is irrational, hence the
    float backend.
    """
    homs = d8_homs()
    phi = homs[0]
    t = example_triplet(*homs, field=FLOAT)
    e = solve_bundle(t)
    d = builtin("s1_x_s3")
    values, fibers = [], []
    zeta = None
    for a in phi.target.elements():
        res = bundle_invariant(d, (a,), t, e)
        values.append(res.value)
        fibers.append(len(phi.preimage(a)))
        zeta = res.zeta
    return FlatBundleReport(
        group=phi.target,
        values=tuple(values),
        fiber_sizes=tuple(fibers),
        image=tuple(phi.image()),
        zeta=zeta,
    )
