"""Square-tiled surfaces carrying two multicurves with a prescribed intersection matrix.

Each rectangle is a crossing of D_i (vertical through the middle) with C_j
(horizontal through the middle). Strip j is the cyclic row of rectangles
along C_j; right sides are glued to left sides within a strip. D_i walks
through its Q_ij crossings with each C_j in the order given by the routing, and
the bottom of one rectangle is glued to the top of the next.

Analysis works only from the gluing data: curves are re-traced through the
gluings, vertices are found both by union-find on corners and by walking
around each corner, and orientability is a 2-colouring of the rectangles.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .errors import PreconditionError, VerificationError
from .exact.linalg import det, to_matrix

SIDES = ("B", "R", "T", "L")
# corners: 0 bottom-left, 1 bottom-right, 2 top-right, 3 top-left; listed in reading order
SIDE_CORNERS = {"B": (0, 1), "T": (3, 2), "L": (0, 3), "R": (1, 2)}
CCW = {"B": 1, "R": 1, "T": -1, "L": -1}      # boundary orientation relative to reading order
CORNER_SIDES = {0: ("B", "L"), 1: ("B", "R"), 2: ("T", "R"), 3: ("T", "L")}
OPPOSITE = {"B": "T", "T": "B", "L": "R", "R": "L"}


@dataclass(frozen=True)
class Rectangle:
    strip: int       # j: the C curve through it
    label: int       # i: the D curve through it
    position: int    # index along strip j


@dataclass(frozen=True)
class Gluing:
    a: tuple           # (rectangle, side)
    b: tuple
    reversed: bool     # False: reading order of a's side matches b's

    @property
    def twisted(self):
        """True when the identification reverses orientation of standard-oriented rectangles."""
        s = CCW[self.a[1]] * CCW[self.b[1]] * (-1 if self.reversed else 1)
        return s == 1


@dataclass(frozen=True)
class RoutingPlan:
    """strips[j]: D-labels left to right; routes[i]: (strip, occurrence) visited by D_i in order.

    ``directions[i][t]`` is +1 when D_i crosses its t-th rectangle top to bottom
    and -1 otherwise; ``twists[i][t]`` forces an orientation-reversing gluing
    between the t-th and (t+1)-th rectangles. Both default to the plain choice.
    """

    strips: tuple
    routes: tuple
    directions: Optional[tuple] = None
    twists: Optional[tuple] = None

    @classmethod
    def canonical(cls, Q):
        n, m = len(Q), len(Q[0])
        strips = tuple(tuple(i for i in range(n) for _ in range(int(Q[i][j]))) for j in range(m))
        routes = tuple(tuple((j, o) for j in range(m) for o in range(int(Q[i][j]))) for i in range(n))
        return cls(strips, routes)

    def validate(self, Q):
        n, m = len(Q), len(Q[0])
        if len(self.strips) != m or len(self.routes) != n:
            raise PreconditionError("routing plan shape does not match the matrix")
        for j, s in enumerate(self.strips):
            counts = Counter(s)
            if any(counts.get(i, 0) != Q[i][j] for i in range(n)) or set(counts) - set(range(n)):
                raise PreconditionError(f"strip {j} label multiplicities do not match column {j}")
        for i, r in enumerate(self.routes):
            want = {(j, o) for j in range(m) for o in range(int(Q[i][j]))}
            if len(r) != len(want) or set(map(tuple, r)) != want:
                raise PreconditionError(f"route of D_{i} must visit each of its rectangles exactly once")
        for name, seq in (("directions", self.directions), ("twists", self.twists)):
            if seq is not None and [len(x) for x in seq] != [len(r) for r in self.routes]:
                raise PreconditionError(f"{name} must parallel the routes")

    def direction(self, i, t):
        return 1 if self.directions is None else self.directions[i][t]

    def twist(self, i, t):
        return False if self.twists is None else bool(self.twists[i][t])

    def to_json(self):
        doc = {"strips": [list(s) for s in self.strips], "routes": [[list(x) for x in r] for r in self.routes]}
        if self.directions is not None:
            doc["directions"] = [list(d) for d in self.directions]
        if self.twists is not None:
            doc["twists"] = [list(map(bool, t)) for t in self.twists]
        return doc

    @classmethod
    def from_json(cls, doc):
        try:
            strips = tuple(tuple(int(x) for x in s) for s in doc["strips"])
            routes = tuple(tuple((int(j), int(o)) for j, o in r) for r in doc["routes"])
            dirs = doc.get("directions")
            tw = doc.get("twists")
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"malformed routing plan: {exc}") from None
        if dirs is not None:
            dirs = tuple(tuple(int(d) for d in x) for x in dirs)
            if any(d not in (1, -1) for x in dirs for d in x):
                raise PreconditionError("directions must be +1 or -1")
        if tw is not None:
            tw = tuple(tuple(bool(t) for t in x) for x in tw)
        return cls(strips, routes, dirs, tw)


@dataclass(frozen=True)
class CombinatorialSurface:
    Q: tuple
    rectangles: tuple
    gluings: tuple
    c_curves: tuple      # per strip: exit slots (rect, side) in order
    d_curves: tuple      # per D label: exit slots in order

    @property
    def partner(self):
        out = {}
        for g in self.gluings:
            out[g.a] = (g.b, g.reversed)
            out[g.b] = (g.a, g.reversed)
        return out

    def to_json(self):
        return {
            "matrix": [[int(x) for x in r] for r in self.Q],
            "rectangles": [{"strip": r.strip, "label": r.label, "position": r.position} for r in self.rectangles],
            "gluings": [[list(g.a), list(g.b), g.reversed] for g in self.gluings],
            "c_curves": [[list(s) for s in c] for c in self.c_curves],
            "d_curves": [[list(s) for s in d] for d in self.d_curves],
        }

    def dump_text(self):
        """Flat adjacency listing: one rectangle or gluing per line."""
        lines = [f"# rectangles {len(self.rectangles)} gluings {len(self.gluings)}"]
        for k, r in enumerate(self.rectangles):
            lines.append(f"rect {k} strip {r.strip} label {r.label} position {r.position}")
        for g in self.gluings:
            lines.append(f"glue {g.a[0]}:{g.a[1]} {g.b[0]}:{g.b[1]} {'rev' if g.reversed else 'fwd'}")
        return "\n".join(lines) + "\n"


def _check_matrix(Q):
    Q = to_matrix(Q)
    if not Q or any(len(r) != len(Q) for r in Q):
        raise PreconditionError("matrix must be square")
    if any(x.denominator != 1 or x < 1 for r in Q for x in r):
        raise PreconditionError("entries must be positive integers")
    if det(Q) == 0:
        raise PreconditionError("nonsingular required")
    return tuple(tuple(int(x) for x in r) for r in Q)


def build_surface(Q, plan: RoutingPlan | None = None) -> CombinatorialSurface:
    Q = _check_matrix(Q)
    n = len(Q)
    plan = plan or RoutingPlan.canonical(Q)
    plan.validate(Q)
    rects, where = [], {}
    for j, labels in enumerate(plan.strips):
        seen = Counter()
        for pos, i in enumerate(labels):
            where[(i, j, seen[i])] = len(rects)
            seen[i] += 1
            rects.append(Rectangle(j, i, pos))
    gluings, c_curves, d_curves = [], [], []
    for j, labels in enumerate(plan.strips):
        ids = [where_k for where_k in range(len(rects)) if rects[where_k].strip == j]
        ids.sort(key=lambda k: rects[k].position)
        for a, b in zip(ids, ids[1:] + ids[:1]):
            gluings.append(Gluing((a, "R"), (b, "L"), False))
        c_curves.append(tuple((k, "R") for k in ids))
    for i in range(n):
        route = [where[(i, j, o)] for j, o in plan.routes[i]]
        L = len(route)
        slots = []
        for t in range(L):
            a, b = route[t], route[(t + 1) % L]
            d_out, d_in = plan.direction(i, t), plan.direction(i, (t + 1) % L)
            exit_side = "B" if d_out > 0 else "T"
            entry_side = "T" if d_in > 0 else "B"
            rev = exit_side == entry_side       # same-type sides: half-turn keeps orientation
            if plan.twist(i, t):
                rev = not rev
            gluings.append(Gluing((a, exit_side), (b, entry_side), rev))
            slots.append((a, exit_side))
        d_curves.append(tuple(slots))
    S = CombinatorialSurface(Q, tuple(rects), tuple(gluings), tuple(c_curves), tuple(d_curves))
    _check_involution(S)
    return S


def _check_involution(S):
    seen = Counter()
    for g in S.gluings:
        if g.a == g.b:
            raise VerificationError(f"slot {g.a} glued to itself")
        seen[g.a] += 1
        seen[g.b] += 1
    all_slots = {(k, s) for k in range(len(S.rectangles)) for s in SIDES}
    if set(seen) != all_slots or any(v != 1 for v in seen.values()):
        raise VerificationError("gluing is not a fixed-point-free involution on all slots")


@dataclass(frozen=True)
class SurfaceReport:
    V: int
    E: int
    F: int
    euler: int
    genus: Optional[int]
    orientable: bool
    connected: bool
    components: tuple
    intersection: tuple
    tight: bool
    filling: bool
    vertex_degrees: tuple = ()
    crossing_signs: tuple = ()

    def to_json(self):
        return {
            "V": self.V, "E": self.E, "F": self.F, "euler": self.euler, "genus": self.genus,
            "orientable": self.orientable, "connected": self.connected,
            "components": [dict(c) for c in self.components],
            "intersection": [list(r) for r in self.intersection],
            "tight": self.tight, "filling": self.filling,
            "vertex_degrees": list(self.vertex_degrees),
        }


class _UF:
    def __init__(self, items):
        self.p = {x: x for x in items}

    def find(self, x):
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.p[max(a, b)] = min(a, b)


def _across(partner, rect, side, corner):
    """The corner matched with ``corner`` of (rect, side) under the gluing."""
    (r2, s2), rev = partner[(rect, side)]
    pos = SIDE_CORNERS[side].index(corner)
    return r2, s2, SIDE_CORNERS[s2][1 - pos if rev else pos]


def _corner_cycles(S, partner):
    """Walk the link of every vertex; returns the list of corner cycles."""
    seen, cycles = set(), []
    for k in range(len(S.rectangles)):
        for c in range(4):
            if (k, c) in seen:
                continue
            cycle, r, cc, out = [], k, c, CORNER_SIDES[c][0]
            while True:
                cycle.append((r, cc))
                seen.add((r, cc))
                r, s_in, cc = _across(partner, r, out, cc)
                a, b = CORNER_SIDES[cc]
                out = b if s_in == a else a
                if (r, cc) == (k, c):
                    break
                if (r, cc) in seen:
                    raise VerificationError("corner walk re-entered a cycle: link is not a circle")
            cycles.append(cycle)
    return cycles


def _trace(S, partner, start, vertical):
    """Follow a curve from exit slot ``start``; returns [(rect, exit side)] until it closes."""
    path, (r, side) = [], start
    while True:
        path.append((r, side))
        (r, s_in), _ = partner[(r, side)]
        if (s_in in ("T", "B")) != vertical:
            raise VerificationError("curve turned a corner")
        side = OPPOSITE[s_in]
        if (r, side) == start:
            return path
        if len(path) > 4 * len(S.rectangles):
            raise VerificationError("curve does not close")


def analyze(S: CombinatorialSurface) -> SurfaceReport:
    partner = S.partner
    N = len(S.rectangles)
    # orientation: eps[a] == eps[b] unless the gluing is twisted
    eps = {}
    orientable = True
    comp = _UF(range(N))
    adj = {k: [] for k in range(N)}
    for g in S.gluings:
        adj[g.a[0]].append((g.b[0], g.twisted))
        adj[g.b[0]].append((g.a[0], g.twisted))
        comp.union(g.a[0], g.b[0])
    for root in range(N):
        if root in eps:
            continue
        eps[root] = 1
        stack = [root]
        while stack:
            a = stack.pop()
            for b, tw in adj[a]:
                want = -eps[a] if tw else eps[a]
                if b not in eps:
                    eps[b] = want
                    stack.append(b)
                elif eps[b] != want:
                    orientable = False
    # vertices, two ways
    corners = [(k, c) for k in range(N) for c in range(4)]
    uf = _UF(corners)
    for g in S.gluings:
        for pos in (0, 1):
            ca = SIDE_CORNERS[g.a[1]][pos]
            cb = SIDE_CORNERS[g.b[1]][1 - pos if g.reversed else pos]
            uf.union((g.a[0], ca), (g.b[0], cb))
    classes = Counter(uf.find(x) for x in corners)
    cycles = _corner_cycles(S, partner)
    if len(cycles) != len(classes) or sorted(len(c) for c in cycles) != sorted(classes.values()):
        raise VerificationError("corner walk and union-find disagree")
    # cells of the curve graph: crossings (one per rectangle), arcs, and the
    # complementary disks, one around each vertex of the square tiling
    F = len(cycles)
    V, E = N, 2 * N
    euler = V - E + F
    # components
    comps = {}
    for k in range(N):
        comps.setdefault(comp.find(k), []).append(k)
    comp_rows = []
    for members in comps.values():
        mset = set(members)
        f = sum(1 for c in cycles if c[0][0] in mset)
        chi = f - len(members)
        comp_rows.append(tuple(sorted({"rectangles": len(members), "euler": chi,
                                       "genus": (2 - chi) // 2 if orientable else None}.items())))
    connected = len(comps) == 1
    genus = (2 - euler) // 2 if (orientable and connected and euler % 2 == 0) else None
    # curves re-traced through the gluing
    d_paths = [_trace(S, partner, d[0], True) for d in S.d_curves]
    c_paths = [_trace(S, partner, c[0], False) for c in S.c_curves]
    if [len(p) for p in d_paths] != [len(d) for d in S.d_curves] or [len(p) for p in c_paths] != [len(c) for c in S.c_curves]:
        raise VerificationError("traced curves differ from the recorded curves")
    d_of, c_of = {}, {}
    for i, p in enumerate(d_paths):
        for r, side in p:
            if r in d_of:
                raise VerificationError("two D passes through one rectangle")
            d_of[r] = (i, 1 if side == "B" else -1)
    for j, p in enumerate(c_paths):
        for r, side in p:
            if r in c_of:
                raise VerificationError("two C passes through one rectangle")
            c_of[r] = (j, 1 if side == "R" else -1)
    filling = set(d_of) == set(range(N)) == set(c_of) and all(len(c) >= 1 for c in cycles)
    n, m = len(d_paths), len(c_paths)
    inter = [[0] * m for _ in range(n)]
    signs = {}
    for r in range(N):
        (i, dd), (j, dc) = d_of[r], c_of[r]
        inter[i][j] += 1
        if orientable:
            signs.setdefault((i, j), set()).add(eps[r] * dd * dc)
    tight = orientable and all(len(s) == 1 for s in signs.values())
    return SurfaceReport(
        V, E, F, euler, genus, orientable, connected, tuple(sorted(comp_rows)),
        tuple(tuple(r) for r in inter), tight, filling,
        tuple(sorted(len(c) for c in cycles)),
        tuple(sorted((i, j, min(s)) for (i, j), s in signs.items() if len(s) == 1)),
    )


def expected_genus(n):
    return n * n - n + 1


def genus_formula_check(Q) -> bool:
    Q = _check_matrix(Q)
    if any(x < 2 for r in Q for x in r):
        raise PreconditionError("formula out of scope: entries must be >= 2")
    rep = analyze(build_surface(Q))
    return rep.orientable and rep.connected and rep.genus == expected_genus(len(Q))


__all__ = [
    "CombinatorialSurface",
    "Gluing",
    "Rectangle",
    "RoutingPlan",
    "SurfaceReport",
    "analyze",
    "build_surface",
    "expected_genus",
    "genus_formula_check",
]
