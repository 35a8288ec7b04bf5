"""Graded tensors and a small contraction engine.

A tensor leg carries (space_id, group_element, direction).  Edges join an
out-leg to an in-leg with equal dimension and equal group element; anything
else is a DimensionMismatch / GradingMismatch.  Contraction is a plain
index sum, so the result never depends on the order; the planner only
controls intermediate sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import HopfTrisectError

IN = "in"
OUT = "out"


class Leg(NamedTuple):
    space: str
    element: int
    direction: str


class DimensionMismatch(HopfTrisectError):
    pass


class GradingMismatch(HopfTrisectError):
    pass


@dataclass(frozen=True)
class GradedTensor:
    legs: tuple[Leg, ...]
    dims: tuple[int, ...]
    entries: np.ndarray

    def __post_init__(self):
        if len(self.legs) != len(self.dims):
            raise ValueError("legs and dims disagree")
        if tuple(self.entries.shape) != tuple(self.dims):
            raise ValueError(f"entry shape {self.entries.shape} != dims {self.dims}")

    def permute(self, perm) -> "GradedTensor":
        perm = tuple(perm)
        if sorted(perm) != list(range(len(self.legs))):
            raise ValueError(f"bad permutation {perm}")
        return GradedTensor(
            tuple(self.legs[p] for p in perm),
            tuple(self.dims[p] for p in perm),
            np.transpose(self.entries, perm),
        )

    def scalar(self):
        if self.legs:
            raise ValueError("tensor still has open legs")
        return self.entries.item()


def tensor_from_matrix(mat: np.ndarray, out_legs, in_legs) -> GradedTensor:
    """Reshape a (prod out_dims) x (prod in_dims) matrix into a node.

    out_legs / in_legs are sequences of (space, element, dim); the result
    carries the outgoing legs first, then the incoming ones, with the same
    kron (row-major) index convention used for structure matrices.
    """
    legs = tuple(Leg(s, e, OUT) for s, e, _ in out_legs) + tuple(
        Leg(s, e, IN) for s, e, _ in in_legs
    )
    dims = tuple(d for _, _, d in out_legs) + tuple(d for _, _, d in in_legs)
    return GradedTensor(legs, dims, mat.reshape(dims))


Endpoint = tuple[str, int]  # (node id, leg index)


@dataclass(frozen=True)
class TensorNetwork:
    nodes: dict
    edges: tuple[tuple[Endpoint, Endpoint], ...]
    open_legs: tuple[Endpoint, ...]

    @classmethod
    def build(cls, nodes, edges, open_legs=None) -> "TensorNetwork":
        """Normalize edge order; derive open legs (sorted) when not given."""
        edges = tuple(sorted((tuple(a), tuple(b)) for a, b in edges))
        if open_legs is None:
            used = {ep for e in edges for ep in e}
            free = [
                (nid, i)
                for nid, t in nodes.items()
                for i in range(len(t.legs))
                if (nid, i) not in used
            ]
            open_legs = tuple(sorted(free, key=lambda ep: (str(ep[0]), ep[1])))
        else:
            open_legs = tuple(tuple(ep) for ep in open_legs)
        return cls(dict(nodes), edges, open_legs)


def validate_network(net: TensorNetwork) -> None:
    def leg_at(ep: Endpoint) -> Leg:
        nid, i = ep
        if nid not in net.nodes:
            raise ValueError(f"edge references unknown node {nid!r}")
        t = net.nodes[nid]
        if not 0 <= i < len(t.legs):
            raise ValueError(f"edge references leg {i} of node {nid!r}")
        return t.legs[i]

    seen: set[Endpoint] = set()
    for out_ep, in_ep in net.edges:
        lo, li = leg_at(out_ep), leg_at(in_ep)
        if lo.direction != OUT or li.direction != IN:
            raise ValueError(f"edge {out_ep}->{in_ep} must join an out-leg to an in-leg")
        do = net.nodes[out_ep[0]].dims[out_ep[1]]
        di = net.nodes[in_ep[0]].dims[in_ep[1]]
        if do != di:
            raise DimensionMismatch(f"edge {out_ep}->{in_ep}: dims {do} vs {di}")
        if lo.element != li.element:
            raise GradingMismatch(
                f"edge {out_ep}->{in_ep}: grading {lo.element} vs {li.element}"
            )
        for ep in (out_ep, in_ep):
            if ep in seen:
                raise ValueError(f"leg {ep} appears in more than one edge")
            seen.add(ep)

    for ep in net.open_legs:
        leg_at(ep)
        if ep in seen:
            raise ValueError(f"open leg {ep} is also contracted")
        seen.add(ep)

    total = sum(len(t.legs) for t in net.nodes.values())
    if len(seen) != total:
        dangling = [
            (nid, i)
            for nid, t in net.nodes.items()
            for i in range(len(t.legs))
            if (nid, i) not in seen
        ]
        raise ValueError(f"legs neither contracted nor open: {dangling}")


def _peer_map(net: TensorNetwork) -> dict:
    peer = {}
    for a, b in net.edges:
        peer[a] = b
        peer[b] = a
    return peer


def _result_size(members, net: TensorNetwork, peer) -> int:
    """Size of the tensor left after contracting the given node set."""
    size = 1
    for nid in members:
        t = net.nodes[nid]
        for i, d in enumerate(t.dims):
            p = peer.get((nid, i))
            if p is None or p[0] not in members:
                size *= d
    return size


def plan_contraction(net: TensorNetwork):
    """Pairwise contraction schedule; exact search up to 8 nodes, greedy above.

    Each plan entry (a, b) merges live tensors a and b; the result lives on
    under id a.  Deterministic for a fixed network.
    """
    ids = sorted(net.nodes, key=str)
    if len(ids) <= 1:
        return ()
    peer = _peer_map(net)
    if len(ids) <= 8:
        return _plan_exhaustive(ids, net, peer)
    return _plan_greedy(ids, net, peer)


def _plan_greedy(ids, net, peer):
    live = {nid: frozenset([nid]) for nid in ids}

    def connected(a, b):
        return any(
            peer.get((nid, i), (None,))[0] in live[b]
            for nid in live[a]
            for i in range(len(net.nodes[nid].legs))
        )

    plan = []
    while len(live) > 1:
        names = sorted(live, key=str)
        candidates = []
        for x in range(len(names)):
            for y in range(x + 1, len(names)):
                a, b = names[x], names[y]
                size = _result_size(live[a] | live[b], net, peer)
                candidates.append((size, not connected(a, b), a, b))
        size, _, a, b = min(candidates, key=lambda c: (c[0], c[1], str(c[2]), str(c[3])))
        plan.append((a, b))
        live[a] = live[a] | live[b]
        del live[b]
    return tuple(plan)


def _plan_exhaustive(ids, net, peer):
    """Subset DP minimizing the summed size of every intermediate tensor."""
    n = len(ids)

    def members(mask):
        return [ids[i] for i in range(n) if mask >> i & 1]

    weight = {}
    for mask in range(1, 1 << n):
        weight[mask] = _result_size(frozenset(members(mask)), net, peer)

    best: dict[int, tuple[int, int | None]] = {}
    for i in range(n):
        best[1 << i] = (0, None)
    for mask in range(1, 1 << n):
        if mask & (mask - 1) == 0:
            continue
        low = mask & -mask
        sub = (mask - 1) & mask
        choice = None
        while sub:
            if sub & low:
                rest = mask ^ sub
                cost = best[sub][0] + best[rest][0] + weight[mask]
                if choice is None or cost < choice[0]:
                    choice = (cost, sub)
            sub = (sub - 1) & mask
        best[mask] = choice

    plan = []

    def emit(mask) -> str:
        if mask & (mask - 1) == 0:
            return ids[mask.bit_length() - 1]
        sub = best[mask][1]
        a = emit(sub)
        b = emit(mask ^ sub)
        a, b = sorted((a, b), key=str)
        plan.append((a, b))
        return a

    emit((1 << n) - 1)
    return tuple(plan)


def contract(net: TensorNetwork, plan=None) -> GradedTensor:
    """Contract the whole network down to a tensor on its open legs."""
    validate_network(net)
    if not net.nodes:
        raise ValueError("cannot contract an empty network")
    if plan is None:
        plan = plan_contraction(net)
    peer = _peer_map(net)

    # live id -> (tags, array); tags name each axis by its original endpoint
    live = {
        nid: ([(nid, i) for i in range(len(t.legs))], t.entries)
        for nid, t in net.nodes.items()
    }

    def trace_loops(key):
        tags, arr = live[key]
        while True:
            hit = None
            for i, tg in enumerate(tags):
                p = peer.get(tg)
                if p is not None and p in tags[i + 1 :]:
                    hit = (i, tags.index(p, i + 1))
                    break
            if hit is None:
                break
            i, j = hit
            arr = np.asarray(np.trace(arr, axis1=i, axis2=j))
            tags = [t for k, t in enumerate(tags) if k not in (i, j)]
        live[key] = (tags, arr)

    for key in list(live):
        trace_loops(key)

    for a, b in plan:
        ta, arr_a = live[a]
        tb, arr_b = live[b]
        ax_a, ax_b = [], []
        for i, tg in enumerate(ta):
            p = peer.get(tg)
            if p is not None and p in tb:
                ax_a.append(i)
                ax_b.append(tb.index(p))
        merged = np.asarray(np.tensordot(arr_a, arr_b, axes=(ax_a, ax_b)))
        tags = [t for i, t in enumerate(ta) if i not in ax_a] + [
            t for i, t in enumerate(tb) if i not in ax_b
        ]
        del live[b]
        live[a] = (tags, merged)
        trace_loops(a)

    if len(live) != 1:
        raise ValueError(f"plan leaves {len(live)} disconnected pieces")
    (tags, arr), = live.values()

    if sorted(map(tuple, tags)) != sorted(map(tuple, net.open_legs)):
        raise ValueError("contracted result does not match declared open legs")
    perm = [tags.index(tuple(ep)) for ep in net.open_legs]
    arr = np.transpose(arr, perm) if perm else arr.reshape(())
    legs = tuple(net.nodes[nid].legs[i] for nid, i in net.open_legs)
    dims = tuple(net.nodes[nid].dims[i] for nid, i in net.open_legs)
    return GradedTensor(legs, dims, arr.reshape(dims))
