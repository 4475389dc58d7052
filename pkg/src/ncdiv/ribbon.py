"""Ribbon graphs and their operations on cyclic words.

A labelled directed ribbon graph is stored as

* ``vertices``: one tuple per vertex label ``1..n``, listing its half-edges in
  the cyclic order of ``tau0`` (``tau0(h)`` is the next entry); an empty tuple
  is an isolated vertex;
* ``edges``: one pair ``(h, h')`` per edge label, oriented from ``h`` to ``h'``;
* ``boundaries``: one representative per boundary label, either a half-edge
  or ``("v", i)`` for the isolated vertex with label ``i``.

A boundary component is an orbit of ``h -> tau1(tau0(h))``.  Walking it, the
corner from ``h`` to ``tau0(h)`` picks up the letters strictly between the
positions of ``h`` and ``tau0(h)`` in the cyclic word at that vertex.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ncdiv.algebra import AlgebraError, TraceElement, TraceTensor, Word
from ncdiv.brackets import PairingTable


class RibbonGraph:
    def __init__(self, vertices: Sequence[Sequence[int]], edges: Sequence[Tuple[int, int]],
                 boundaries: Optional[Sequence] = None, name: str = ""):
        self.vertices = [tuple(v) for v in vertices]
        self.edges = [tuple(e) for e in edges]
        self.name = name
        self.tau0: Dict[int, int] = {}
        self.vertex_of: Dict[int, int] = {}
        for i, cyc in enumerate(self.vertices):
            for k, h in enumerate(cyc):
                self.tau0[h] = cyc[(k + 1) % len(cyc)]
                self.vertex_of[h] = i
        self.tau1: Dict[int, int] = {}
        for e in self.edges:
            if len(e) == 2:
                self.tau1[e[0]] = e[1]
                self.tau1[e[1]] = e[0]
        if boundaries is None:
            boundaries = self.default_boundaries()
        self.boundaries = [tuple(b) if isinstance(b, (list, tuple)) else b for b in boundaries]

    # -- structure -------------------------------------------------------
    @property
    def half_edges(self) -> List[int]:
        return sorted(self.tau0)

    def boundary_step(self, h: int) -> int:
        return self.tau1[self.tau0[h]]

    def boundary_orbit(self, h: int) -> List[int]:
        orbit = [h]
        x = self.boundary_step(h)
        while x != h:
            orbit.append(x)
            if len(orbit) > len(self.tau0):
                raise KeyError(h)
            x = self.boundary_step(x)
        return orbit

    def default_boundaries(self) -> list:
        seen = set()
        out = []
        for h in sorted(self.tau0):
            if h in seen or h not in self.tau1:
                continue
            try:
                orbit = self.boundary_orbit(h)
            except KeyError:
                continue
            seen.update(orbit)
            out.append(h)
        for i, cyc in enumerate(self.vertices):
            if not cyc:
                out.append(("v", i + 1))
        return out

    def boundary_of(self, rep) -> Optional[frozenset]:
        if isinstance(rep, tuple):
            return frozenset([rep])
        return frozenset(self.boundary_orbit(rep))

    def valency(self, i: int) -> int:
        return len(self.vertices[i - 1])

    def counts(self) -> Tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.boundaries)

    def copy(self, **kw) -> "RibbonGraph":
        args = dict(vertices=self.vertices, edges=self.edges, boundaries=self.boundaries,
                    name=self.name)
        args.update(kw)
        return RibbonGraph(**args)

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        bnd = [list(b) if isinstance(b, tuple) else b for b in self.boundaries]
        return {"vertices": [list(v) for v in self.vertices],
                "edges": [list(e) for e in self.edges], "boundaries": bnd,
                "name": self.name}

    @classmethod
    def from_json(cls, data) -> "RibbonGraph":
        """Accepts the compact layout of :meth:`to_json` or the half-edge layout

        ``{"half_edges": [...], "tau1": [[h, h'], ...], "tau0": [cycles],
        "isolated": [...], "directions": [[from, to], ...], "labels": {...}}``
        where ``labels`` may list ``"vertices"`` (a half-edge or isolated name
        per vertex label), ``"edges"`` (a half-edge per edge label) and
        ``"boundaries"`` (a half-edge or isolated name per boundary label).
        """
        if "vertices" in data:
            bnd = data.get("boundaries")
            if bnd is not None:
                bnd = [tuple(b) if isinstance(b, list) else b for b in bnd]
            return cls(data["vertices"], data["edges"], bnd, data.get("name", ""))
        return _from_half_edge_json(data)


def _from_half_edge_json(data) -> RibbonGraph:
    names = list(data.get("half_edges", []))
    idx = {n: i for i, n in enumerate(names)}
    if len(idx) != len(names):
        raise AlgebraError("duplicate half-edge names")

    def h(n):
        if n not in idx:
            raise AlgebraError(f"unknown half-edge {n!r}")
        return idx[n]

    cycles = [tuple(h(x) for x in c) for c in data.get("tau0", [])]
    isolated = list(data.get("isolated", []))
    pairs = [tuple(h(x) for x in p) for p in data.get("tau1", [])]
    directed = {frozenset(p): p for p in pairs}
    for d in data.get("directions", []):
        d = tuple(h(x) for x in d)
        if frozenset(d) not in directed:
            raise AlgebraError(f"direction {d} is not an edge")
        directed[frozenset(d)] = d
    labels = data.get("labels", {})
    vertex_keys = [("h", c[0]) for c in cycles] + [("i", n) for n in isolated]
    by_key = {k: c for k, c in zip(vertex_keys, cycles + [() for _ in isolated])}
    if "vertices" in labels:
        order = []
        for v in labels["vertices"]:
            if v in isolated:
                order.append(("i", v))
            else:
                hv = h(v)
                order.append(next(("h", c[0]) for c in cycles if hv in c))
        vertex_keys = order
    vertices = [by_key[k] for k in vertex_keys]
    edges = [directed[frozenset(p)] for p in pairs]
    if "edges" in labels:
        edges = [next(directed[k] for k in directed if h(x) in k) for x in labels["edges"]]
    bnd = None
    if "boundaries" in labels:
        iso_label = {k[1]: i + 1 for i, k in enumerate(vertex_keys) if k[0] == "i"}
        bnd = [("v", iso_label[b]) if b in iso_label else h(b) for b in labels["boundaries"]]
    return RibbonGraph(vertices, edges, bnd, data.get("name", ""))


def graph_validate(g: RibbonGraph) -> dict:
    """Check the ribbon graph axioms; never raises on bad combinatorics."""
    errors = []
    hs = [h for cyc in g.vertices for h in cyc]
    if len(set(hs)) != len(hs):
        errors.append("a half-edge appears in more than one tau0 cycle")
    hset = set(hs)
    ends = [h for e in g.edges for h in e]
    for e in g.edges:
        if len(e) != 2:
            errors.append(f"edge {e} does not have two ends")
        elif e[0] == e[1]:
            errors.append(f"tau1 fixes half-edge {e[0]}")
    if len(set(ends)) != len(ends):
        errors.append("tau1 is not an involution: a half-edge lies on two edges")
    missing = hset - set(ends)
    if missing:
        errors.append(f"tau1 has fixed points {sorted(missing)}")
    extra = set(ends) - hset
    if extra:
        errors.append(f"edges use unknown half-edges {sorted(extra)}")
    orbits = []
    if not errors:
        seen = set()
        for h in sorted(hset):
            if h not in seen:
                orb = g.boundary_orbit(h)
                seen.update(orb)
                orbits.append(frozenset(orb))
        isolated = [("v", i + 1) for i, c in enumerate(g.vertices) if not c]
        expected = set(orbits) | {frozenset([x]) for x in isolated}
        try:
            labelled = [g.boundary_of(b) for b in g.boundaries]
        except KeyError as exc:
            labelled = []
            errors.append(f"boundary label refers to unknown half-edge {exc}")
        if labelled and (len(set(labelled)) != len(labelled) or set(labelled) != expected):
            errors.append("boundary labels are not a bijection onto the boundary components")
    n_b = len(orbits) + sum(1 for c in g.vertices if not c)
    return {
        "valid": not errors,
        "errors": errors,
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "boundaries": n_b if not errors else None,
        "valency": [len(c) for c in g.vertices],
        "note": "" if hset else "no half-edges: only isolated vertices",
    }


def make_Lk(k: int) -> RibbonGraph:
    """The bivalent ribbon graph with ``k`` vertices on a cycle.

    Vertex ``i`` carries ``s_i = 2(i-1)`` and ``t_i = 2(i-1)+1``; the edge
    ``i -> i+1`` runs from ``s_i`` to ``t_{i+1}``.  Boundary 1 is the orbit of
    the ``s`` half-edges, boundary 2 that of the ``t`` half-edges.
    """
    if k < 1:
        raise AlgebraError("L_k needs k >= 1")
    vertices = [(2 * i, 2 * i + 1) for i in range(k)]
    edges = [(2 * i, 2 * ((i + 1) % k) + 1) for i in range(k)]
    return RibbonGraph(vertices, edges, [0, 1], name=f"L{k}")


def bar_graph() -> RibbonGraph:
    """Two univalent vertices joined by one edge from vertex 1 to vertex 2."""
    return RibbonGraph([(0,), (1,)], [(0, 1)], [0], name="bar")


def tadpole() -> RibbonGraph:
    return make_Lk(1)


def graph_normalize(g: RibbonGraph) -> Tuple[RibbonGraph, int]:
    """Orient every edge from its smaller half-edge and number edges by it."""
    sign = 1
    edges = []
    for a, b in g.edges:
        if a > b:
            sign = -sign
            a, b = b, a
        edges.append((a, b))
    edges.sort()
    return g.copy(edges=edges), sign


def cyclic_injections(d: int, r: int):
    """Cyclic-order preserving injections of ``d`` cyclically ordered points into ``Z/r``."""
    if d == 0:
        yield ()
        return
    for subset in itertools.combinations(range(r), d):
        for j in range(d):
            yield subset[j:] + subset[:j]


def _operate_words(g: RibbonGraph, p: PairingTable, words: Sequence[Word],
                   out: Dict, coeff: Fraction):
    per_vertex = []
    for cyc, w in zip(g.vertices, words):
        if len(cyc) > len(w):
            return
        per_vertex.append(list(cyclic_injections(len(cyc), len(w))))
    reps = [g.boundary_orbit(b) if not isinstance(b, tuple) else None
            for b in g.boundaries]
    for choice in itertools.product(*per_vertex):
        q = {}
        for cyc, pos in zip(g.vertices, choice):
            for h, x in zip(cyc, pos):
                q[h] = x
        lam = coeff
        for a, b in g.edges:
            va = words[g.vertex_of[a]][q[a]]
            vb = words[g.vertex_of[b]][q[b]]
            lam *= p(va, vb)
            if not lam:
                break
        if not lam:
            continue
        key = []
        for b, orbit in zip(g.boundaries, reps):
            if orbit is None:
                key.append(words[b[1] - 1])
                continue
            letters = []
            for h in orbit:
                w = words[g.vertex_of[h]]
                r = len(w)
                x, stop = (q[h] + 1) % r, q[g.tau0[h]]
                while x != stop:
                    letters.append(w[x])
                    x = (x + 1) % r
            key.append(tuple(letters))
        key = tuple(key)
        out[key] = out.get(key, 0) + lam


def graph_operate(g: RibbonGraph, p: PairingTable, ws: Sequence[TraceElement]) -> TraceTensor:
    """Apply the ribbon graph operation to ``n`` cyclic-word operands."""
    if len(ws) != len(g.vertices):
        raise AlgebraError(f"graph has {len(g.vertices)} vertices but got {len(ws)} operands")
    alg = p.algebra
    out: Dict = {}
    for combo in itertools.product(*[sorted(w.terms.items()) for w in ws]):
        coeff = Fraction(1)
        for _, c in combo:
            coeff *= c
        _operate_words(g, p, [w for w, _ in combo], out, coeff)
    return TraceTensor(alg, out, len(g.boundaries))


def lk_closed_form(p: PairingTable, ws: Sequence[TraceElement]) -> TraceTensor:
    """Double sum for ``L_k`` written out directly, one ``(s_i, t_i)`` pair per word."""
    k = len(ws)
    alg = p.algebra
    out: Dict = {}
    for combo in itertools.product(*[sorted(w.terms.items()) for w in ws]):
        words = [w for w, _ in combo]
        coeff = Fraction(1)
        for _, c in combo:
            coeff *= c
        choices = [[(s, t) for s in range(len(w)) for t in range(len(w)) if s != t]
                   for w in words]
        for st in itertools.product(*choices):
            lam = coeff
            for i in range(k):
                s = st[i][0]
                t = st[(i + 1) % k][1]
                lam *= p(words[i][s], words[(i + 1) % k][t])
            if not lam:
                continue
            first: List[int] = []
            second: List[int] = []
            for i in reversed(range(k)):
                first += _arc(words[i], st[i][0], st[i][1])
            for i in range(k):
                second += _arc(words[i], st[i][1], st[i][0])
            key = (tuple(first), tuple(second))
            out[key] = out.get(key, 0) + lam
    return TraceTensor(alg, out, 2)


def _arc(w: Word, a: int, b: int) -> List[int]:
    """Letters strictly between positions ``a`` and ``b`` going forward cyclically."""
    r = len(w)
    out = []
    x = (a + 1) % r
    while x != b:
        out.append(w[x])
        x = (x + 1) % r
    return out
