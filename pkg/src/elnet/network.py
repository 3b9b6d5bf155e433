"""Electrical networks in a disk: Kirchhoff and response matrices, local moves.

Boundary vertices are the ints ``1..n+1`` in circular order; interior
vertices are opaque strings. Edge weights are conductances and must be
positive. Planarity is assumed, never checked.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence, Union

import networkx as nx

from .errors import (
    IndexOutOfRange,
    MoveNotApplicable,
    ParseError,
    ValidationError,
)
from .exact import Mat, ZERO, rat, rat_str, schur_complement

Vertex = Union[int, str]
Edge = tuple  # (u, v, weight)

MOVE_KINDS = ("series", "parallel", "loop", "pendant", "y_to_delta", "delta_to_y")


@dataclass(frozen=True)
class Network:
    boundary_count: int
    interior: tuple = ()
    edges: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "interior", tuple(self.interior))
        object.__setattr__(
            self, "edges", tuple((u, v, rat(w)) for u, v, w in self.edges)
        )
        if self.boundary_count < 1:
            raise ValidationError("a network needs at least one boundary vertex")
        seen = set()
        for name in self.interior:
            if not isinstance(name, str) or not name:
                raise ValidationError(f"interior id must be a non-empty string: {name!r}")
            if name in seen:
                raise ValidationError(f"duplicate interior id {name!r}")
            if name.isdecimal() and 1 <= int(name) <= self.boundary_count:
                raise ValidationError(f"interior id {name!r} collides with a boundary label")
            seen.add(name)
        for idx, (u, v, w) in enumerate(self.edges):
            for x in (u, v):
                if not self.has_vertex(x):
                    raise ValidationError(f"edge {idx}: unknown endpoint {x!r}")
            if w <= 0:
                raise ValidationError(
                    f"edge {idx}: weight {rat_str(w)} is not positive "
                    "(a 0-weighted edge is the same as no edge)"
                )

    @classmethod
    def empty(cls, boundary_count: int) -> "Network":
        return cls(boundary_count)

    @property
    def n(self) -> int:
        return self.boundary_count - 1

    @property
    def boundary(self) -> tuple:
        return tuple(range(1, self.boundary_count + 1))

    @property
    def vertices(self) -> tuple:
        return self.boundary + self.interior

    def has_vertex(self, x) -> bool:
        if isinstance(x, bool):
            return False
        if isinstance(x, int):
            return 1 <= x <= self.boundary_count
        return x in self.interior

    def is_interior(self, x) -> bool:
        return isinstance(x, str) and x in self.interior

    def incident(self, x) -> list:
        """Indices of edges touching ``x`` (a self-loop is listed once)."""
        return [i for i, (u, v, _) in enumerate(self.edges) if u == x or v == x]

    def degree(self, x) -> int:
        return sum((u == x) + (v == x) for u, v, _ in self.edges)

    def fresh_id(self, prefix: str = "v") -> str:
        taken = set(self.interior)
        k = len(taken) + 1
        while f"{prefix}{k}" in taken:
            k += 1
        return f"{prefix}{k}"

    def replace(self, interior=None, edges=None) -> "Network":
        return Network(
            self.boundary_count,
            self.interior if interior is None else interior,
            self.edges if edges is None else edges,
        )

    def without_loops(self) -> "Network":
        return self.replace(edges=[e for e in self.edges if e[0] != e[1]])

    def to_json(self) -> dict:
        return {
            "boundary": self.boundary_count,
            "interior": list(self.interior),
            "edges": [
                {"u": str(u), "v": str(v), "w": rat_str(w)} for u, v, w in self.edges
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "Network":
        if not isinstance(obj, dict):
            raise ParseError("network JSON must be an object")
        try:
            count = obj["boundary"]
        except KeyError:
            raise ParseError("network JSON is missing 'boundary'") from None
        if not isinstance(count, int) or isinstance(count, bool):
            raise ParseError("'boundary' must be an integer")
        interior = obj.get("interior", [])
        if not isinstance(interior, list):
            raise ParseError("'interior' must be a list of strings")
        names = set(interior)
        edges = []
        for idx, e in enumerate(obj.get("edges", [])):
            try:
                u, v, w = e["u"], e["v"], e["w"]
            except (KeyError, TypeError):
                raise ParseError(f"edges[{idx}]: needs 'u', 'v' and 'w'") from None
            ends = []
            for field, x in (("u", u), ("v", v)):
                ends.append(_parse_vertex(str(x), count, names, f"edges[{idx}].{field}"))
            try:
                weight = rat(str(w))
            except ParseError:
                raise ParseError(f"edges[{idx}].w: not a rational: {w!r}") from None
            edges.append((ends[0], ends[1], weight))
        return cls(count, interior, edges)


def _parse_vertex(text: str, count: int, names: set, where: str) -> Vertex:
    if text.isdecimal() and 1 <= int(text) <= count:
        return int(text)
    if text in names:
        return text
    raise ValidationError(
        f"{where}: {text!r} is neither a boundary label 1..{count} nor an interior id"
    )


def kirchhoff(net: Network) -> Mat:
    """Weighted Laplacian over all vertices, boundary first.

    A self-loop adds its weight to the diagonal once and nothing off it.
    """
    order = {x: i for i, x in enumerate(net.vertices)}
    size = len(order)
    grid = [[ZERO] * size for _ in range(size)]
    for u, v, w in net.edges:
        i, j = order[u], order[v]
        if i == j:
            grid[i][i] += w
            continue
        grid[i][j] -= w
        grid[j][i] -= w
        grid[i][i] += w
        grid[j][j] += w
    return Mat(grid, size)


def response(net: Network) -> Mat:
    """Response matrix ``K / K_I``; self-loops carry no current and are dropped."""
    k = kirchhoff(net.without_loops())
    b = net.boundary_count
    return schur_complement(k, range(b, b + len(net.interior)))


@dataclass(frozen=True)
class LocalMove:
    """``site`` is an interior id for series/pendant/y_to_delta, one edge index
    for loop, two for parallel and three (a triangle) for delta_to_y."""

    kind: str
    site: object

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise MoveNotApplicable(f"unknown move kind {self.kind!r}")


def parse_site(kind: str, text: str):
    if kind not in MOVE_KINDS:
        raise MoveNotApplicable(f"unknown move kind {kind!r}")
    if kind in ("series", "pendant", "y_to_delta"):
        return text.strip()
    try:
        idx = tuple(int(s) for s in text.split(","))
    except ValueError:
        raise ParseError(f"site for {kind} must be comma-separated edge indices") from None
    want = {"loop": 1, "parallel": 2, "delta_to_y": 3}[kind]
    if len(idx) != want:
        raise ParseError(f"site for {kind} needs {want} edge indices")
    return idx[0] if kind == "loop" else idx


def _edge_at(net: Network, i) -> Edge:
    if not isinstance(i, int) or not 0 <= i < len(net.edges):
        raise MoveNotApplicable(f"no edge with index {i!r}")
    return net.edges[i]


def _drop(edges: Sequence, indices) -> list:
    gone = set(indices)
    return [e for i, e in enumerate(edges) if i not in gone]


def _other(edge: Edge, x) -> Vertex:
    u, v, _ = edge
    return v if u == x else u


def _interior_site(net: Network, x, kind: str):
    if not net.is_interior(x):
        raise MoveNotApplicable(f"{kind}: {x!r} is not an interior vertex")
    inc = net.incident(x)
    if any(net.edges[i][0] == net.edges[i][1] for i in inc):
        raise MoveNotApplicable(f"{kind}: {x!r} carries a self-loop; remove it first")
    return inc


def apply_local_move(net: Network, move: LocalMove) -> Network:
    kind, site = move.kind, move.site
    if kind == "loop":
        u, v, _ = _edge_at(net, site)
        if u != v:
            raise MoveNotApplicable(f"loop: edge {site} joins {u!r} and {v!r}, not a self-loop")
        return net.replace(edges=_drop(net.edges, [site]))

    if kind == "parallel":
        i, j = site
        if i == j:
            raise MoveNotApplicable("parallel: the two edge indices must differ")
        (u1, v1, w1), (u2, v2, w2) = _edge_at(net, i), _edge_at(net, j)
        if {u1, v1} != {u2, v2}:
            raise MoveNotApplicable(f"parallel: edges {i} and {j} have different endpoints")
        edges = _drop(net.edges, [i, j])
        edges.append((u1, v1, w1 + w2))
        return net.replace(edges=edges)

    if kind == "pendant":
        inc = _interior_site(net, site, kind)
        if len(inc) != 1:
            raise MoveNotApplicable(f"pendant: {site!r} has degree {len(inc)}, expected 1")
        return net.replace(
            interior=[x for x in net.interior if x != site], edges=_drop(net.edges, inc)
        )

    if kind == "series":
        inc = _interior_site(net, site, kind)
        if len(inc) != 2:
            raise MoveNotApplicable(f"series: {site!r} has degree {len(inc)}, expected 2")
        e1, e2 = (net.edges[i] for i in inc)
        p, q = _other(e1, site), _other(e2, site)
        if p == q:
            raise MoveNotApplicable(
                f"series: both edges at {site!r} lead to {p!r}; merge them with 'parallel' first"
            )
        a, b = e1[2], e2[2]
        edges = _drop(net.edges, inc)
        edges.append((p, q, a * b / (a + b)))
        return net.replace(interior=[x for x in net.interior if x != site], edges=edges)

    if kind == "y_to_delta":
        inc = _interior_site(net, site, kind)
        if len(inc) != 3:
            raise MoveNotApplicable(f"y_to_delta: {site!r} has degree {len(inc)}, expected 3")
        legs = [(_other(net.edges[i], site), net.edges[i][2]) for i in inc]
        ends = [p for p, _ in legs]
        if len(set(ends)) != 3:
            raise MoveNotApplicable(f"y_to_delta: neighbours of {site!r} are not distinct")
        (p, a), (q, b), (r, c) = legs
        s = a + b + c
        edges = _drop(net.edges, inc)
        # the triangle side opposite a leg of weight x gets (product of the other two) / s
        edges += [(q, r, b * c / s), (p, r, a * c / s), (p, q, a * b / s)]
        return net.replace(interior=[x for x in net.interior if x != site], edges=edges)

    if kind == "delta_to_y":
        idx = tuple(site)
        if len(set(idx)) != 3:
            raise MoveNotApplicable("delta_to_y: need three distinct edge indices")
        sides = [_edge_at(net, i) for i in idx]
        verts = {x for u, v, _ in sides for x in (u, v)}
        if len(verts) != 3 or any(u == v for u, v, _ in sides):
            raise MoveNotApplicable("delta_to_y: edges do not form a triangle")
        if len({frozenset((u, v)) for u, v, _ in sides}) != 3:
            raise MoveNotApplicable("delta_to_y: edges do not form a triangle")
        s = sum(
            sides[i][2] * sides[j][2] for i in range(3) for j in range(i + 1, 3)
        )
        center = net.fresh_id("y")
        edges = _drop(net.edges, idx)
        for x in sorted(verts, key=_vertex_key):
            # the side opposite x is the one not touching it
            opposite = next(w for u, v, w in sides if x not in (u, v))
            edges.append((center, x, s / opposite))
        return net.replace(interior=list(net.interior) + [center], edges=edges)

    raise MoveNotApplicable(f"unknown move kind {kind!r}")


def _vertex_key(x):
    return (0, x, "") if isinstance(x, int) else (1, 0, x)


def applicable_moves(net: Network) -> Iterator[LocalMove]:
    """Every (kind, site) at which apply_local_move succeeds."""
    edges = net.edges
    for i, (u, v, _) in enumerate(edges):
        if u == v:
            yield LocalMove("loop", i)
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            a, b = edges[i], edges[j]
            if a[0] != a[1] and {a[0], a[1]} == {b[0], b[1]}:
                yield LocalMove("parallel", (i, j))
    for x in net.interior:
        inc = net.incident(x)
        if any(edges[i][0] == edges[i][1] for i in inc):
            continue
        ends = [_other(edges[i], x) for i in inc]
        if len(inc) == 1:
            yield LocalMove("pendant", x)
        elif len(inc) == 2 and ends[0] != ends[1]:
            yield LocalMove("series", x)
        elif len(inc) == 3 and len(set(ends)) == 3:
            yield LocalMove("y_to_delta", x)
    simple = [(i, e) for i, e in enumerate(edges) if e[0] != e[1]]
    for a in range(len(simple)):
        for b in range(a + 1, len(simple)):
            for c in range(b + 1, len(simple)):
                trio = (simple[a], simple[b], simple[c])
                pairs = {frozenset((e[0], e[1])) for _, e in trio}
                verts = {x for _, e in trio for x in e[:2]}
                if len(pairs) == 3 and len(verts) == 3:
                    yield LocalMove("delta_to_y", tuple(i for i, _ in trio))


def is_ij_connected(net: Network, i: int, j: int) -> bool:
    """Whether boundary ``i+k-1`` can be joined to ``j-k+1`` for every
    ``k <= (j-i+1)//2`` by vertex-disjoint paths avoiding other boundary vertices.

    Max-flow with unit vertex capacities between the two boundary groups;
    in a planar network the nested pairing is then forced.
    """
    b = net.boundary_count
    if not 1 <= i < j <= b:
        raise IndexOutOfRange(f"need 1 <= i < j <= {b}, got ({i}, {j})")
    m = (j - i + 1) // 2
    sources = set(range(i, i + m))
    sinks = set(range(j - m + 1, j + 1))
    blocked = set(net.boundary) - sources - sinks
    g = nx.DiGraph()
    for x in net.vertices:
        if x not in blocked:
            g.add_edge(("in", x), ("out", x), capacity=1)
    for u, v, _ in net.edges:
        if u == v or u in blocked or v in blocked:
            continue
        g.add_edge(("out", u), ("in", v), capacity=1)
        g.add_edge(("out", v), ("in", u), capacity=1)
    for s in sources:
        g.add_edge("S", ("in", s), capacity=1)
    for t in sinks:
        g.add_edge(("out", t), "T", capacity=1)
    return nx.maximum_flow_value(g, "S", "T") == m


def random_rat(rng: random.Random, lo: int = 1, hi: int = 9) -> Fraction:
    """A positive rational p/q with p, q drawn from [lo, hi]."""
    return Fraction(rng.randint(lo, hi), rng.randint(lo, hi))


def random_network(
    rng: random.Random, max_boundary: int = 6, max_interior: int = 6, extra_edges: int = 4
) -> Network:
    """Random loop-free network whose interior block is invertible.

    Every interior vertex gets an edge to an earlier vertex, so each interior
    component reaches the boundary.
    """
    nb = rng.randint(2, max_boundary)
    ni = rng.randint(0, max_interior)
    interior = [f"i{k}" for k in range(1, ni + 1)]
    verts: list = list(range(1, nb + 1))
    edges = []
    for name in interior:
        edges.append((rng.choice(verts), name, random_rat(rng)))
        verts.append(name)
    for _ in range(rng.randint(0, extra_edges)):
        u, v = rng.sample(verts, 2)
        edges.append((u, v, random_rat(rng)))
    return Network(nb, interior, edges)
