"""Path-algebra elements, relation generation for weighted surface algebras,
and removal of virtual arrows."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .field import Field, FieldElement
from .quiver import Quiver, QuiverError, TriangulationQuiver, WeightData


class PresentationError(ValueError):
    pass


class InternalConsistencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class Path:
    source: int
    target: int
    arrows: tuple = ()

    def __len__(self):
        return len(self.arrows)

    def compose(self, other: "Path"):
        """Concatenation, or None when the paths do not compose."""
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def label(self, Q: Quiver) -> str:
        if not self.arrows:
            return "e" + Q.vertices[self.source]
        return "*".join(Q.arrow_names[a] for a in self.arrows)


def path_of_arrows(Q: Quiver, arrows) -> Path:
    arrows = tuple(arrows)
    if not arrows:
        raise PresentationError("use stationary() for empty paths")
    for x, y in zip(arrows, arrows[1:]):
        if Q.tgt[x] != Q.src[y]:
            raise PresentationError("arrows do not compose: "
                                    f"{Q.arrow_names[x]} then {Q.arrow_names[y]}")
    return Path(Q.src[arrows[0]], Q.tgt[arrows[-1]], arrows)


def stationary(v: int) -> Path:
    return Path(v, v, ())


def parse_path(Q: Quiver, s: str) -> Path:
    s = s.strip()
    names = [x.strip() for x in s.split("*") if x.strip()]
    if len(names) == 1 and names[0] not in Q.arrow_names and names[0].startswith("e"):
        return stationary(Q.vertex(names[0][1:]))
    try:
        return path_of_arrows(Q, [Q.arrow(n) for n in names])
    except QuiverError as exc:
        raise PresentationError(str(exc)) from None


class AlgebraElement:
    """Finite linear combination of paths with field-code coefficients."""

    __slots__ = ("quiver", "field", "terms")

    def __init__(self, quiver: Quiver, field: Field, terms=None):
        self.quiver = quiver
        self.field = field
        self.terms = {}
        if terms:
            for p, c in terms.items():
                if c != 0:
                    self.terms[p] = c

    # constructors
    @staticmethod
    def of_path(Q, F, p: Path, coeff=None):
        return AlgebraElement(Q, F, {p: F.one if coeff is None else coeff})

    def _coerce_scalar(self, x):
        if isinstance(x, FieldElement):
            return self.field.coerce(x)
        if isinstance(x, int):
            return self.field.from_int(x)
        return self.field.coerce(x)

    def scale(self, code) -> "AlgebraElement":
        F = self.field
        return AlgebraElement(self.quiver, F, {p: F.mul(c, code) for p, c in self.terms.items()})

    def __add__(self, o):
        F = self.field
        out = dict(self.terms)
        for p, c in o.terms.items():
            out[p] = F.add(out.get(p, F.zero), c)
        return AlgebraElement(self.quiver, F, out)

    def __neg__(self):
        return self.scale(self.field.neg(self.field.one))

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if not isinstance(o, AlgebraElement):
            return self.scale(self._coerce_scalar(o))
        F = self.field
        out = {}
        for p, c in self.terms.items():
            for q, d in o.terms.items():
                r = p.compose(q)
                if r is not None:
                    out[r] = F.add(out.get(r, F.zero), F.mul(c, d))
        return AlgebraElement(self.quiver, F, out)

    def __rmul__(self, o):
        return self.scale(self._coerce_scalar(o))

    def __pow__(self, n: int):
        if n < 1:
            raise ValueError("only positive powers of path-algebra elements")
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, o):
        return isinstance(o, AlgebraElement) and self.terms == o.terms and self.field is o.field

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda pc: (len(pc[0].arrows), pc[0].arrows, pc[0].source))

    def to_json(self):
        return [[self.field.format(c), p.label(self.quiver)] for p, c in self.sorted_terms()]

    @staticmethod
    def from_json(Q: Quiver, F: Field, data) -> "AlgebraElement":
        terms = {}
        for item in data:
            if isinstance(item, str):
                coeff, ps = "1", item
            else:
                coeff, ps = item
            p = parse_path(Q, ps)
            c = F.parse(coeff)
            terms[p] = F.add(terms.get(p, F.zero), c)
        return AlgebraElement(Q, F, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for p, c in self.sorted_terms():
            lab = p.label(self.quiver)
            parts.append(lab if c == self.field.one else f"({self.field.format(c)})*{lab}")
        return " + ".join(parts)


class PathAlgebra:
    """Convenience factory for elements of KQ."""

    def __init__(self, quiver: Quiver, field: Field):
        self.Q = quiver
        self.F = field

    def zero(self):
        return AlgebraElement(self.Q, self.F)

    def e(self, v):
        vi = v if isinstance(v, int) else self.Q.vertex(v)
        return AlgebraElement.of_path(self.Q, self.F, stationary(vi))

    def a(self, name):
        return AlgebraElement.of_path(self.Q, self.F, path_of_arrows(self.Q, [self.Q.arrow(name)]))

    def w(self, spec: str):
        """Path from a space- or star-separated list of arrow names."""
        names = spec.replace("*", " ").split()
        return AlgebraElement.of_path(self.Q, self.F, path_of_arrows(self.Q, [self.Q.arrow(n) for n in names]))

    def path(self, p: Path, coeff=None):
        return AlgebraElement.of_path(self.Q, self.F, p, coeff)


@dataclass
class Presentation:
    quiver: Quiver
    field: Field
    generators: list
    meta: dict = dc_field(default_factory=dict)
    tq: TriangulationQuiver | None = None
    weights: WeightData | None = None
    substitution: dict | None = None  # virtual arrow name -> element of the smaller quiver

    def __post_init__(self):
        for r in self.generators:
            ends = {(p.source, p.target) for p in r.terms}
            if len(ends) > 1:
                raise PresentationError(f"relation {r!r} mixes vertex pairs")

    def to_json(self) -> dict:
        return {"quiver": self.quiver.to_json(),
                "relations": [r.to_json() for r in self.generators],
                "meta": {k: v for k, v in self.meta.items() if isinstance(v, (str, int, float, list, dict))}}


def A_path(a: int, tq: TriangulationQuiver, w: WeightData) -> Path:
    """a g(a) ... of length m_a n_a - 1 (stationary at s(a) if that length is 0)."""
    L = w.mn(a) - 1
    arrows = []
    x = a
    for _ in range(L):
        arrows.append(x)
        x = tq.g[x]
    if not arrows:
        return stationary(tq.quiver.src[a])
    return path_of_arrows(tq.quiver, arrows)


def B_path(a: int, tq: TriangulationQuiver, w: WeightData) -> Path:
    arrows = []
    x = a
    for _ in range(w.mn(a)):
        arrows.append(x)
        x = tq.g[x]
    return path_of_arrows(tq.quiver, arrows)


def weighted_surface_relations(tq: TriangulationQuiver, w: WeightData) -> Presentation:
    """Ideal generators of the (socle deformed) weighted surface algebra."""
    if w.tq is not tq:
        raise PresentationError("weight data belongs to another triangulation quiver")
    w = w.normalized()
    Q, F = tq.quiver, w.field
    P = PathAlgebra(Q, F)
    f, g, bar = tq.f, tq.g, tq.bar

    def word(*arrows):
        return P.path(path_of_arrows(Q, arrows))

    commut, zero3, zero4 = [], [], []
    for a in range(Q.n_arrows):
        ab = bar[a]
        A = P.path(A_path(ab, tq, w))
        if tq.is_border_loop(a):
            rel = word(a, a) - A.scale(w.c_of(ab)) - P.path(B_path(ab, tq, w)).scale(w.b[Q.src[a]])
        else:
            rel = word(a, f[a]) - A.scale(w.c_of(ab))
        commut.append(rel)
    for a in range(Q.n_arrows):
        ab = bar[a]
        skip = w.is_virtual(f[f[a]]) or (w.is_virtual(f[ab]) and w.m_of(ab) == 1 and tq.n(ab) == 3)
        if not skip:
            zero3.append(word(a, f[a], g[f[a]]))
    for a in range(Q.n_arrows):
        fa = f[a]
        skip = w.is_virtual(fa) or (w.is_virtual(f[fa]) and w.m_of(fa) == 1 and tq.n(fa) == 3)
        if not skip:
            zero4.append(word(a, g[a], f[g[a]]))
    gens = [r for r in commut + zero3 + zero4 if not r.is_zero()]
    return Presentation(Q, F, gens, {"kind": "weighted_surface"}, tq, w)


def gabriel_presentation(p: Presentation, tq: TriangulationQuiver, w: WeightData) -> Presentation:
    """Same algebra on the quiver without virtual arrows."""
    w = w.normalized()
    Q, F = tq.quiver, w.field
    virtual = [a for a in range(Q.n_arrows) if w.is_virtual(a)]
    if not virtual:
        return Presentation(Q, F, list(p.generators), dict(p.meta, gabriel=True), tq, w)
    for a in range(Q.n_arrows):
        if w.is_virtual(a) and w.is_virtual(tq.f[a]):
            raise InternalConsistencyError(
                f"arrows {Q.arrow_names[a]} and f({Q.arrow_names[a]}) are both virtual")
    keep = [a for a in range(Q.n_arrows) if a not in set(virtual)]
    newQ = Q.subquiver(keep)
    new_id = {a: i for i, a in enumerate(keep)}
    NP = PathAlgebra(newQ, F)

    def expand_arrow(a, depth=0):
        if depth > Q.n_arrows:
            raise InternalConsistencyError("virtual substitution does not terminate")
        if a in new_id:
            return NP.path(path_of_arrows(newQ, [new_id[a]]))
        x = tq.bar[a]
        # a = c_a^{-1} * bar(a) f(bar(a)), from the commutativity relation at bar(a)
        return (expand_arrow(x, depth + 1) * expand_arrow(tq.f[x], depth + 1)).scale(F.inv(w.c_of(a)))

    cache = {}

    def expand(el: AlgebraElement) -> AlgebraElement:
        out = NP.zero()
        for path, coef in el.terms.items():
            if not path.arrows:
                out = out + NP.e(path.source).scale(coef)
                continue
            term = None
            for a in path.arrows:
                if a not in cache:
                    cache[a] = expand_arrow(a)
                term = cache[a] if term is None else term * cache[a]
            out = out + term.scale(coef)
        return out

    gens = []
    for r in p.generators:
        e = expand(r)
        if not e.is_zero():
            gens.append(e)
    subst = {Q.arrow_names[a]: expand_arrow(a) for a in virtual}
    return Presentation(newQ, F, gens, dict(p.meta, gabriel=True), tq, w, subst)
