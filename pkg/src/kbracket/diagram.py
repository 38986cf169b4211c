"""Marked diagrams and their combinatorial operations.

A marked diagram is a 4-valent combinatorial diagram on a supported
surface: crossings with four ports, edges joining crossing ports (or
boundary points on the disk), crossingless free loops carried as homology
classes, and a distinguished subset of "marked" crossings that resolution
operators are allowed to smooth.  A diagram is *real* when every crossing
is marked.

Conventions (frozen project-wide):

* The four ports of a crossing are numbered 0, 1, 2, 3 in counterclockwise
  cyclic order, with the over-strand occupying ports 0 and 2.
* A 0-smoothing joins the port pairs (0, 1) and (2, 3); an infinity
  smoothing joins (0, 3) and (1, 2).

Any globally consistent choice validates every identity computed here;
flipping the chirality of the convention exchanges ``t`` and ``t^-1``, so
comparisons against external bracket tables may differ by that involution.

Diagram equality is by exact structure (ids, labels), never by isotopy;
semantic comparisons happen after projection to skein vectors, or between
descendants of a common parent under the deterministic smoothing below.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import (
    BadGenerator,
    MalformedDiagram,
    NonPrimitiveClass,
    NotUnimodular,
    StateOutsideMarkedSet,
    SurfaceMismatch,
    UnsupportedSuperposition,
)
from .surface import (
    ANNULUS,
    DISK,
    TORUS,
    CurveClass,
    SurfaceSpec,
    canonical_class,
    classify_components,
    disk_matching,
    disk_surface,
    empty_class,
    zero_class,
)
from math import gcd

# State markers.
SM0 = 0
SMINF = 1

# Port partner tables for the two smoothings: 0 joins (0,1),(2,3);
# infinity joins (0,3),(1,2).
PARTNER = ((1, 0, 3, 2), (3, 2, 1, 0))

Endpoint = Tuple  # ("c", crossing_id, port) or ("b", boundary_index)


def crossing_port(cid: int, port: int) -> Endpoint:
    return ("c", cid, port)


def boundary_point(k: int) -> Endpoint:
    return ("b", k)


def _vec(surface: SurfaceSpec, label) -> Tuple[int, int]:
    if surface.kind == DISK:
        return (0, 0)
    if surface.kind == ANNULUS:
        return (int(label), 0)
    a, b = label
    return (int(a), int(b))


def _unvec(surface: SurfaceSpec, v: Tuple[int, int]):
    if surface.kind == DISK:
        return None
    if surface.kind == ANNULUS:
        return v[0]
    return (v[0], v[1])


def _label_neg(surface: SurfaceSpec, label):
    if surface.kind == DISK:
        return None
    if surface.kind == ANNULUS:
        return -label
    return (-label[0], -label[1])


@dataclass(frozen=True)
class Edge:
    """An edge of a diagram; the homology label is measured tail -> head."""

    id: int
    tail: Endpoint
    head: Endpoint
    label: object = None


def make_edge(eid: int, a: Endpoint, b: Endpoint, label, surface: SurfaceSpec) -> Edge:
    """Edge with canonical orientation: tail is the smaller endpoint key."""
    if b < a:
        a, b = b, a
        label = _label_neg(surface, label)
    return Edge(eid, a, b, label)


def _sorted_loops(loops: Iterable) -> Tuple:
    return tuple(sorted(loops, key=repr))


@dataclass(frozen=True)
class MarkedDiagram:
    surface: SurfaceSpec
    crossings: frozenset
    edges: Tuple[Edge, ...]
    free_loops: Tuple
    marked: frozenset
    geometry: object = field(default=None, compare=False, repr=False)

    def is_real(self) -> bool:
        return self.marked == self.crossings

    def num_crossings(self) -> int:
        return len(self.crossings)


def build_diagram(
    surface: SurfaceSpec,
    crossings: Iterable[int],
    edges: Iterable[Edge],
    free_loops: Iterable = (),
    marked="all",
    geometry=None,
) -> MarkedDiagram:
    crossings = frozenset(crossings)
    if marked == "all":
        marked = crossings
    loops = _sorted_loops(canonical_class(surface, h) for h in free_loops)
    d = MarkedDiagram(
        surface,
        crossings,
        tuple(sorted(edges, key=lambda e: e.id)),
        loops,
        frozenset(marked),
        geometry,
    )
    validate(d)
    return d


def empty_diagram(surface: SurfaceSpec) -> MarkedDiagram:
    return MarkedDiagram(surface, frozenset(), (), (), frozenset())


def validate(d: MarkedDiagram) -> None:
    """Check all structural invariants; raises MalformedDiagram."""
    if not d.marked <= d.crossings:
        raise MalformedDiagram("marked set is not a subset of the crossings")
    m = d.surface.boundary_points if d.surface.kind == DISK else 0
    used: Dict[Endpoint, int] = {}
    ids = set()
    for e in d.edges:
        if e.id in ids:
            raise MalformedDiagram(f"duplicate edge id {e.id}")
        ids.add(e.id)
        if e.tail == e.head:
            raise MalformedDiagram(f"edge {e.id} attaches twice to the same slot")
        for ep in (e.tail, e.head):
            if ep in used:
                raise MalformedDiagram(f"endpoint {ep} used twice")
            used[ep] = e.id
            if ep[0] == "c":
                _, cid, port = ep
                if cid not in d.crossings:
                    raise MalformedDiagram(f"edge {e.id} references missing crossing {cid}")
                if port not in (0, 1, 2, 3):
                    raise MalformedDiagram(f"bad port {port}")
            elif ep[0] == "b":
                if d.surface.kind != DISK:
                    raise MalformedDiagram("boundary endpoints only on the disk")
                if not 1 <= ep[1] <= m:
                    raise MalformedDiagram(f"boundary point {ep[1]} outside 1..{m}")
            else:
                raise MalformedDiagram(f"bad endpoint {ep}")
        _vec(d.surface, e.label)  # type check
    for cid in d.crossings:
        for port in range(4):
            if ("c", cid, port) not in used:
                raise MalformedDiagram(f"port {port} of crossing {cid} is unattached")
    for k in range(1, m + 1):
        if ("b", k) not in used:
            raise MalformedDiagram(f"boundary point {k} is unattached")
    for h in d.free_loops:
        _vec(d.surface, h)


def smooth(d: MarkedDiagram, state: Dict[int, int]) -> MarkedDiagram:
    """Delete the crossings in the state's domain and reconnect their ports.

    Merged edge chains get the minimal constituent edge id and the signed
    sum of homology labels; chains that close up move to the free loops.
    Deterministic: equal inputs give identical outputs, and smoothing
    disjoint states in sequence equals smoothing their union.
    """
    if not state:
        return d
    t = set(state)
    if not t <= d.marked:
        raise StateOutsideMarkedSet(f"state domain {t} outside marked set")
    surface = d.surface
    conn: Dict[Endpoint, Endpoint] = {}
    for cid, marker in state.items():
        part = PARTNER[marker]
        for p in range(4):
            conn[("c", cid, p)] = ("c", cid, part[p])
    attach: Dict[Endpoint, Tuple[Edge, int]] = {}
    for e in d.edges:
        attach[e.tail] = (e, 0)
        attach[e.head] = (e, 1)

    visited = set()
    new_edges: List[Edge] = []
    new_loops = list(d.free_loops)

    def walk(e: Edge, end: int):
        """Follow the chain entering edge e at the given end; returns
        (edge ids, accumulated label vector, final endpoint or None if closed)."""
        start_id = e.id
        la = lb = 0
        ids = []
        while True:
            visited.add(e.id)
            ids.append(e.id)
            va, vb = _vec(surface, e.label)
            if end == 0:
                la += va
                lb += vb
                nxt = e.head
            else:
                la -= va
                lb -= vb
                nxt = e.tail
            if nxt not in conn:
                return ids, (la, lb), nxt
            hop = conn[nxt]
            e, end = attach[hop]
            if e.id == start_id:
                return ids, (la, lb), None

    terminals = sorted(ep for ep in attach if ep not in conn)
    for start in terminals:
        e, end = attach[start]
        if e.id in visited:
            continue
        ids, vec, finish = walk(e, end)
        label = _unvec(surface, vec)
        new_edges.append(make_edge(min(ids), start, finish, label, surface))
    for e in d.edges:
        if e.id in visited:
            continue
        _, vec, finish = walk(e, 0)
        if finish is not None:
            raise MalformedDiagram("open chain found while tracing closed components")
        new_loops.append(canonical_class(surface, _unvec(surface, vec)))

    return MarkedDiagram(
        surface,
        d.crossings - t,
        tuple(sorted(new_edges, key=lambda e: e.id)),
        _sorted_loops(new_loops),
        d.marked - t,
    )


def resolve(d: MarkedDiagram, state: Dict[int, int]) -> Tuple[int, int, int, CurveClass]:
    """Fully resolve a real diagram with a total state.

    Returns (zeta, iota, mu, essential): the 0- and infinity-marker counts,
    the number of trivial circles, and the essential curve class (on the
    disk, the induced boundary matching).
    """
    from .errors import NotRealDiagram

    if not d.is_real():
        raise NotRealDiagram("resolve requires the marked set to be all crossings")
    if set(state) != set(d.crossings):
        raise StateOutsideMarkedSet("state must be total on the crossings")
    iota = sum(1 for v in state.values() if v == SMINF)
    zeta = len(state) - iota
    s = smooth(d, state)
    if d.surface.kind == DISK:
        m = d.surface.boundary_points
        pairs = []
        for e in s.edges:
            if e.tail[0] != "b" or e.head[0] != "b":
                raise MalformedDiagram("non-boundary edge left after full resolution")
            pairs.append((e.tail[1], e.head[1]))
        essential = disk_matching(pairs, m)
        mu = len(s.free_loops)
        return zeta, iota, mu, essential
    if s.edges:
        raise MalformedDiagram("edges left after full resolution of a closed diagram")
    mu, essential = classify_components(d.surface, s.free_loops)
    return zeta, iota, mu, essential


def tau(d: MarkedDiagram) -> MarkedDiagram:
    """Swap over/under at every marked crossing (port relabeling by one step)."""

    def mp(ep: Endpoint) -> Endpoint:
        if ep[0] == "c" and ep[1] in d.marked:
            return ("c", ep[1], (ep[2] + 1) % 4)
        return ep

    edges = tuple(
        sorted(
            (make_edge(e.id, mp(e.tail), mp(e.head), e.label, d.surface) for e in d.edges),
            key=lambda e: e.id,
        )
    )
    return MarkedDiagram(d.surface, d.crossings, edges, d.free_loops, d.marked)


def promote_real(d: MarkedDiagram) -> MarkedDiagram:
    """Mark every crossing."""
    if d.is_real():
        return d
    return MarkedDiagram(d.surface, d.crossings, d.edges, d.free_loops, d.crossings, d.geometry)


def from_braid(strands: int, word: Iterable[int]) -> MarkedDiagram:
    """The annulus closure of a braid word.

    Generator ``i`` (1-based) crosses strand ``i`` over strand ``i+1``;
    negative indices give the inverse crossing.  Closure arcs carry winding
    number 1; all other edges carry 0.
    """
    word = list(word)
    if strands < 1:
        raise BadGenerator("braid needs at least one strand")
    for g in word:
        if not 1 <= abs(g) <= strands - 1:
            raise BadGenerator(f"generator {g} out of range for {strands} strands")
    surface = SurfaceSpec(ANNULUS)
    # Geometric slots of a crossing in the braid (strands travel upward):
    # bottom-left, bottom-right, top-right, top-left.  For a positive
    # generator the over-strand runs bottom-left -> top-right, so those
    # slots take ports 0 and 2; for a negative generator the over-strand
    # runs bottom-right -> top-left.
    POS = {"bl": 0, "br": 1, "tr": 2, "tl": 3}
    NEG = {"br": 0, "tr": 1, "tl": 2, "bl": 3}
    pending: List[Optional[Endpoint]] = [None] * (strands + 1)  # 1-based positions
    start: List[Optional[Endpoint]] = [None] * (strands + 1)
    edges: List[Edge] = []
    eid = 0
    for cid, g in enumerate(word):
        i = abs(g)
        ports = POS if g > 0 else NEG
        bl = ("c", cid, ports["bl"])
        br = ("c", cid, ports["br"])
        tr = ("c", cid, ports["tr"])
        tl = ("c", cid, ports["tl"])
        for pos, bottom in ((i, bl), (i + 1, br)):
            if pending[pos] is None:
                start[pos] = bottom
            else:
                edges.append(make_edge(eid, pending[pos], bottom, 0, surface))
                eid += 1
        pending[i] = tl
        pending[i + 1] = tr
    free_loops = []
    for pos in range(1, strands + 1):
        if pending[pos] is None:
            free_loops.append(1)
        else:
            edges.append(make_edge(eid, pending[pos], start[pos], 1, surface))
            eid += 1
    return build_diagram(surface, range(len(word)), edges, free_loops)


def kink_chain(i: int) -> MarkedDiagram:
    """A single circle on the disk with ``i`` chained kinks.

    Each infinity marker splits off one trivial circle, so a full state
    with ``l`` infinity markers resolves to ``l + 1`` circles.
    """
    if i < 0:
        raise ValueError("kink count must be >= 0")
    surface = disk_surface(0)
    if i == 0:
        return build_diagram(surface, (), (), [None])
    edges = []
    for k in range(i):
        # small kink loop between ports 1 and 2; main strand uses 0 and 3
        edges.append(make_edge(2 * k, ("c", k, 1), ("c", k, 2), None, surface))
        edges.append(make_edge(2 * k + 1, ("c", k, 3), ("c", (k + 1) % i, 0), None, surface))
    return build_diagram(surface, range(i), edges)


def torus_multicurve(n: int, p: int, q: int, offsets=None) -> MarkedDiagram:
    """``n`` parallel free loops of the primitive class ``(p, q)`` on the
    torus, realized as geodesics with the given (or default) rational
    offsets."""
    from .torusgeom import multicurve_arrangement

    if n < 0:
        raise ValueError("multiplicity must be >= 0")
    if n > 0 and gcd(p, q) != 1:
        raise NonPrimitiveClass(f"class {(p, q)} is not primitive")
    geometry = multicurve_arrangement(n, p, q, offsets)
    cls = canonical_class(SurfaceSpec(TORUS), (p, q)) if n else None
    loops = [cls] * n
    return build_diagram(SurfaceSpec(TORUS), (), (), loops, geometry=geometry)


def sl2z_act(matrix, d: MarkedDiagram) -> MarkedDiagram:
    """Transform every homology label of a torus diagram by a matrix in
    SL(2, Z); the combinatorial structure is unchanged."""
    (a, b), (c, dd) = matrix
    if a * dd - b * c != 1:
        raise NotUnimodular(f"matrix {matrix} has determinant != 1")
    if d.surface.kind != TORUS:
        raise SurfaceMismatch("SL(2,Z) acts on torus diagrams")

    def act(label):
        x, y = label
        return (a * x + b * y, c * x + dd * y)

    edges = tuple(
        Edge(e.id, e.tail, e.head, act(e.label)) for e in d.edges
    )
    loops = _sorted_loops(canonical_class(d.surface, act(h)) for h in d.free_loops)
    return MarkedDiagram(d.surface, d.crossings, edges, loops, d.marked)


def superpose(d1: MarkedDiagram, d2: MarkedDiagram, mode: str = "strong") -> MarkedDiagram:
    """Superimpose ``d1`` entirely over ``d2``.

    Mode ``"strong"`` marks the new crossings, ``"weak"`` leaves them
    unmarked.  On the torus both operands must carry (or admit) geodesic
    position data; on the annulus both must be crossingless.
    """
    if mode not in ("weak", "strong"):
        raise ValueError(f"bad mode {mode!r}")
    if d1.surface != d2.surface:
        raise SurfaceMismatch(f"{d1.surface} vs {d2.surface}")
    surface = d1.surface
    if _is_empty(d2):
        return d1
    if _is_empty(d1):
        return d2
    if surface.kind == ANNULUS:
        if d1.crossings or d2.crossings:
            raise UnsupportedSuperposition("annulus superposition needs crossingless inputs")
        return build_diagram(surface, (), (), d1.free_loops + d2.free_loops)
    if surface.kind == TORUS:
        from .torusgeom import superpose_torus

        return superpose_torus(d1, d2, mode)
    raise UnsupportedSuperposition("superposition on the disk is not supported")


def _is_empty(d: MarkedDiagram) -> bool:
    return not d.crossings and not d.edges and not d.free_loops


# ---------------------------------------------------------------------------
# JSON diagram format


def _label_to_json(surface: SurfaceSpec, label):
    if surface.kind == DISK:
        return None
    if surface.kind == ANNULUS:
        return label
    return list(label)


def _label_from_json(surface: SurfaceSpec, v):
    if surface.kind == DISK:
        if v is not None:
            raise MalformedDiagram("disk labels must be null")
        return None
    if surface.kind == ANNULUS:
        if not isinstance(v, int):
            raise MalformedDiagram("annulus labels must be integers")
        return v
    if not (isinstance(v, list) and len(v) == 2 and all(isinstance(x, int) for x in v)):
        raise MalformedDiagram("torus labels must be integer pairs")
    return (v[0], v[1])


def _endpoint_to_json(ep: Endpoint):
    if ep[0] == "b":
        return ["bnd", ep[1]]
    return [ep[1], ep[2]]


def _endpoint_from_json(v) -> Endpoint:
    if not (isinstance(v, list) and len(v) == 2):
        raise MalformedDiagram(f"bad endpoint {v!r}")
    if v[0] == "bnd":
        return ("b", int(v[1]))
    return ("c", int(v[0]), int(v[1]))


def diagram_to_json(d: MarkedDiagram) -> dict:
    if d.surface.kind == DISK:
        skind = {"disk": d.surface.boundary_points}
    else:
        skind = d.surface.kind
    return {
        "surface": {"kind": skind},
        "crossings": [{"id": c} for c in sorted(d.crossings)],
        "edges": [
            {
                "id": e.id,
                "tail": _endpoint_to_json(e.tail),
                "head": _endpoint_to_json(e.head),
                "h": _label_to_json(d.surface, e.label),
            }
            for e in d.edges
        ],
        "free_loops": [_label_to_json(d.surface, h) for h in d.free_loops],
        "marked": "all" if d.is_real() else sorted(d.marked),
    }


def diagram_from_json(data: dict) -> MarkedDiagram:
    try:
        skind = data["surface"]["kind"]
        if isinstance(skind, dict):
            surface = disk_surface(int(skind["disk"]))
        elif skind in (ANNULUS, TORUS):
            surface = SurfaceSpec(skind)
        else:
            raise MalformedDiagram(f"unknown surface {skind!r}")
        crossings = [int(c["id"]) for c in data.get("crossings", [])]
        edges = [
            make_edge(
                int(e["id"]),
                _endpoint_from_json(e["tail"]),
                _endpoint_from_json(e["head"]),
                _label_from_json(surface, e.get("h")),
                surface,
            )
            for e in data.get("edges", [])
        ]
        loops = [_label_from_json(surface, h) for h in data.get("free_loops", [])]
        marked = data.get("marked", "all")
        if marked != "all":
            marked = [int(c) for c in marked]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDiagram(f"bad diagram file: {exc}") from exc
    return build_diagram(surface, crossings, edges, loops, marked)


def save_diagram(d: MarkedDiagram, path) -> None:
    with open(path, "w") as fh:
        json.dump(diagram_to_json(d), fh, indent=1)
        fh.write("\n")


def load_diagram(path) -> MarkedDiagram:
    with open(path) as fh:
        return diagram_from_json(json.load(fh))
