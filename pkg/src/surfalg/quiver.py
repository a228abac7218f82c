"""Quivers, triangulation quivers (Q, f) and weight data (m, c, b)."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .field import Field, FieldElement


class QuiverError(ValueError):
    pass


class Quiver:
    """Finite quiver with vertex and arrow ids given by input order."""

    def __init__(self, vertices, arrows):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex names")
        vidx = {v: i for i, v in enumerate(self.vertices)}
        names, src, tgt = [], [], []
        for a in arrows:
            name, s, t = a
            s, t = str(s), str(t)
            if s not in vidx or t not in vidx:
                raise QuiverError(f"arrow {name} uses an unknown vertex")
            names.append(str(name))
            src.append(vidx[s])
            tgt.append(vidx[t])
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow names")
        self.arrow_names = tuple(names)
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self._vidx = vidx
        self._aidx = {n: i for i, n in enumerate(names)}

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_arrows(self) -> int:
        return len(self.arrow_names)

    def vertex(self, name) -> int:
        try:
            return self._vidx[str(name)]
        except KeyError:
            raise QuiverError(f"unknown vertex {name!r}") from None

    def arrow(self, name) -> int:
        if isinstance(name, int):
            return name
        try:
            return self._aidx[str(name)]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def out_arrows(self, v: int):
        return [a for a in range(self.n_arrows) if self.src[a] == v]

    def in_arrows(self, v: int):
        return [a for a in range(self.n_arrows) if self.tgt[a] == v]

    def is_loop(self, a: int) -> bool:
        return self.src[a] == self.tgt[a]

    def is_connected(self) -> bool:
        if self.n_vertices == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for a in range(self.n_arrows):
                for x, y in ((self.src[a], self.tgt[a]), (self.tgt[a], self.src[a])):
                    if x == v and y not in seen:
                        seen.add(y)
                        stack.append(y)
        return len(seen) == self.n_vertices

    def is_2_regular(self) -> bool:
        return all(len(self.out_arrows(v)) == 2 and len(self.in_arrows(v)) == 2
                   for v in range(self.n_vertices))

    def subquiver(self, keep_arrows):
        keep = sorted(keep_arrows)
        return Quiver(self.vertices, [(self.arrow_names[a], self.vertices[self.src[a]],
                                       self.vertices[self.tgt[a]]) for a in keep])

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "arrows": [[self.arrow_names[a], self.vertices[self.src[a]], self.vertices[self.tgt[a]]]
                           for a in range(self.n_arrows)]}

    def __repr__(self):
        return f"Quiver({self.n_vertices} vertices, {self.n_arrows} arrows)"


def _cycles(perm):
    seen = set()
    out = []
    for a in range(len(perm)):
        if a in seen:
            continue
        cyc = []
        x = a
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x]
        out.append(tuple(cyc))
    return out


class TriangulationQuiver:
    """A 2-regular quiver with a permutation f, f^3 = 1, t(a) = s(f(a))."""

    def __init__(self, quiver: Quiver, f):
        Q = quiver
        if Q.n_vertices < 2:
            raise QuiverError("a triangulation quiver needs at least two vertices")
        if not Q.is_connected():
            raise QuiverError("quiver is not connected")
        if not Q.is_2_regular():
            raise QuiverError("quiver is not 2-regular")
        f = [Q.arrow(x) for x in f] if not isinstance(f, dict) else \
            [Q.arrow(f[Q.arrow_names[a]]) for a in range(Q.n_arrows)]
        if sorted(f) != list(range(Q.n_arrows)):
            raise QuiverError("f is not a permutation of the arrows")
        for a in range(Q.n_arrows):
            if Q.tgt[a] != Q.src[f[a]]:
                raise QuiverError(f"t({Q.arrow_names[a]}) != s(f({Q.arrow_names[a]}))")
            if f[f[f[a]]] != a:
                raise QuiverError("f^3 is not the identity")
        self.quiver = Q
        self.f = tuple(f)
        bar = []
        for a in range(Q.n_arrows):
            other = [x for x in Q.out_arrows(Q.src[a]) if x != a]
            bar.append(other[0])
        self.bar = tuple(bar)
        self.g = tuple(bar[f[a]] for a in range(Q.n_arrows))
        self.orbits = _cycles(self.g)
        orbit_of = [0] * Q.n_arrows
        for k, orb in enumerate(self.orbits):
            for a in orb:
                orbit_of[a] = k
        self.orbit_of = tuple(orbit_of)
        self.f_orbits = _cycles(self.f)
        self.border = tuple(sorted({Q.src[a] for a in range(Q.n_arrows)
                                    if f[a] == a and Q.is_loop(a)}))

    @staticmethod
    def from_f_cycles(quiver: Quiver, cycles):
        """Build from f written as cycles of arrow names, e.g. [["a","x","d"], ["g"]]."""
        f = list(range(quiver.n_arrows))
        seen = set()
        for cyc in cycles:
            ids = [quiver.arrow(x) for x in cyc]
            for i, a in enumerate(ids):
                if a in seen:
                    raise QuiverError("arrow repeated in f cycles")
                seen.add(a)
                f[a] = ids[(i + 1) % len(ids)]
        return TriangulationQuiver(quiver, f)

    def n(self, a: int) -> int:
        return len(self.orbits[self.orbit_of[a]])

    def is_border_loop(self, a: int) -> bool:
        return self.f[a] == a and self.quiver.is_loop(a)

    def border_loop_at(self, v: int):
        for a in self.quiver.out_arrows(v):
            if self.is_border_loop(a):
                return a
        return None

    def orbit_index(self, key) -> int:
        """Orbit index from an int index or any arrow name in the orbit."""
        if isinstance(key, int):
            return key
        return self.orbit_of[self.quiver.arrow(key)]

    def name(self, a: int) -> str:
        return self.quiver.arrow_names[a]

    def cycles_json(self):
        return [[self.name(a) for a in cyc] for cyc in self.f_orbits]


def triangulation_quiver_make(quiver: Quiver, f) -> TriangulationQuiver:
    return TriangulationQuiver(quiver, f)


@dataclass
class WeightData:
    """Weights m and parameters c per g-orbit, border function b per border vertex.

    ``c`` and ``b`` hold field codes.
    """
    tq: TriangulationQuiver
    field: Field
    m: tuple
    c: tuple
    b: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        tq, F = self.tq, self.field
        if len(self.m) != len(tq.orbits) or len(self.c) != len(tq.orbits):
            raise QuiverError("m and c need one value per g-orbit")
        for mm in self.m:
            if int(mm) < 1:
                raise QuiverError("weights must be positive integers")
        self.m = tuple(int(x) for x in self.m)
        self.c = tuple(F.coerce(x) for x in self.c)
        for x in self.c:
            if x == 0:
                raise QuiverError("parameters c must be nonzero")
        b = {}
        for v, val in self.b.items():
            vi = v if isinstance(v, int) else tq.quiver.vertex(v)
            if vi not in tq.border:
                raise QuiverError(f"border function given at non-border vertex {tq.quiver.vertices[vi]}")
            b[vi] = F.coerce(val)
        for v in tq.border:
            b.setdefault(v, F.zero)
        self.b = b
        self._check_weight_conditions()
        self._check_singular_disc()

    @staticmethod
    def make(tq: TriangulationQuiver, F: Field, m, c=None, b=None) -> "WeightData":
        """m, c: dicts keyed by arrow name (any arrow in the orbit) or orbit index, or lists."""
        def per_orbit(d, default):
            if d is None:
                return [default] * len(tq.orbits)
            if isinstance(d, (list, tuple)):
                return list(d)
            out = [None] * len(tq.orbits)
            for k, v in d.items():
                out[tq.orbit_index(k)] = v
            return [default if v is None else v for v in out]
        mm = per_orbit(m, None)
        if any(x is None for x in mm):
            raise QuiverError("a weight is missing for some g-orbit")
        return WeightData(tq, F, tuple(mm), tuple(per_orbit(c, FieldElement(F, F.one))), dict(b or {}))

    def m_of(self, a: int) -> int:
        return self.m[self.tq.orbit_of[a]]

    def c_of(self, a: int):
        return self.c[self.tq.orbit_of[a]]

    def mn(self, a: int) -> int:
        return self.m_of(a) * self.tq.n(a)

    def is_virtual(self, a: int) -> bool:
        return self.mn(a) == 2

    def _check_weight_conditions(self):
        tq = self.tq
        Q = tq.quiver
        for a in range(Q.n_arrows):
            mn = self.mn(a)
            nm = Q.arrow_names[a]
            if mn < 2:
                raise QuiverError(f"weight condition m*n >= 2 fails at {nm}")
            ab = tq.bar[a]
            if self.is_virtual(ab):
                if Q.is_loop(ab) and mn < 4:
                    raise QuiverError(f"weight condition m*n >= 4 fails at {nm} (virtual loop beside it)")
                if not Q.is_loop(ab) and mn < 3:
                    raise QuiverError(f"weight condition m*n >= 3 fails at {nm} (virtual arrow beside it)")

    def _check_singular_disc(self):
        # two-vertex quiver: border loop at one vertex, orbits of sizes 3 and 1
        tq, F = self.tq, self.field
        Q = tq.quiver
        if Q.n_vertices != 2 or len(tq.border) != 1 or len(tq.orbits) != 2:
            return
        sizes = sorted(len(o) for o in tq.orbits)
        if sizes != [1, 3]:
            return
        big = [k for k, o in enumerate(tq.orbits) if len(o) == 3][0]
        small = 1 - big
        if self.m[big] == 1 and self.m[small] == 3:
            a = F.mul(self.c[small], F.pow(self.c[big], 3))
            if a == F.one:
                raise QuiverError("parameters give the singular disc algebra D(1)")

    def normalized(self) -> "WeightData":
        """Copy with c = 1 on every orbit of virtual arrows."""
        F = self.field
        c = [FieldElement(F, x) for x in self.c]
        for k, orb in enumerate(self.tq.orbits):
            if self.is_virtual(orb[0]):
                c[k] = FieldElement(F, F.one)
        b = {v: FieldElement(F, x) for v, x in self.b.items()}
        return WeightData(self.tq, F, self.m, tuple(c), b)

    def to_json(self) -> dict:
        tq, F = self.tq, self.field
        return {"m": {tq.name(o[0]): mm for o, mm in zip(tq.orbits, self.m)},
                "c": {tq.name(o[0]): F.format(cc) for o, cc in zip(tq.orbits, self.c)},
                "b": {tq.quiver.vertices[v]: F.format(x) for v, x in sorted(self.b.items())}}


def virtual_arrows(tq: TriangulationQuiver, w: WeightData) -> set:
    return {a for a in range(tq.quiver.n_arrows) if w.is_virtual(a)}


def expected_dimension(tq: TriangulationQuiver, w: WeightData) -> int:
    return sum(mm * len(orb) ** 2 for orb, mm in zip(tq.orbits, w.m))
