"""Named algebra families built from their defining relations, plus the
triangulation-quiver data behind them."""
from __future__ import annotations

from .field import Field
from .presentation import PathAlgebra, Presentation, PresentationError, weighted_surface_relations
from .quiver import Quiver, TriangulationQuiver, WeightData


def _c(F: Field, x):
    return F.coerce(x)


def family_A(m: int, c, b, F: Field) -> Presentation:
    """Local algebra on loops X, Y of dimension 4m."""
    if m < 2:
        raise PresentationError("A(m,c,b) needs m >= 2")
    c, b = _c(F, c), _c(F, b)
    if c == 0:
        raise PresentationError("A(m,c,b) needs c != 0")
    Q = Quiver(["1"], [("X", "1", "1"), ("Y", "1", "1")])
    P = PathAlgebra(Q, F)
    X, Y = P.a("X"), P.a("Y")
    XY, YX = X * Y, Y * X
    rels = [
        X * X - (YX ** (m - 1) * Y).scale(c) - (YX ** m).scale(b),
        Y * Y,
        XY ** m - YX ** m,
        XY ** m * X,
        YX ** m * Y,
    ]
    return Presentation(Q, F, rels, {"kind": "A", "m": m, "c": F.format(c), "b": F.format(b)})


def family_B(r: int, c, b, F: Field) -> Presentation:
    """Two-vertex algebra of dimension r + 9."""
    if r < 1:
        raise PresentationError("B(r,c,b) needs r >= 1")
    c, b = _c(F, c), _c(F, b)
    if c == 0:
        raise PresentationError("B(r,c,b) needs c != 0")
    Q = Quiver(["1", "2"], [("alpha", "1", "1"), ("beta", "1", "2"),
                            ("omega", "2", "1"), ("rho", "2", "2")])
    P = PathAlgebra(Q, F)
    al, be, om, rh = (P.a(n) for n in ("alpha", "beta", "omega", "rho"))
    rels = [
        al * al - (be * om).scale(c) - (be * om * al).scale(b),
        al * be * om - be * om * al,
        om * al * be - rh ** r,
        om * be,
        be * rh,
        rh * om,
    ]
    return Presentation(Q, F, rels, {"kind": "B", "r": r, "c": F.format(c), "b": F.format(b)})


def family_D(b, c, F: Field, link=None) -> Presentation:
    """Three-vertex algebra of dimension 36 on the quiver with loops alpha, eta, mu.

    ``b`` and ``c`` are triples.  With ``link=None`` the i-th block of
    relations uses c_i throughout.  Passing ``link`` puts that scalar in the
    three relations beta*gamma, gamma*sigma and sigma*beta instead, keeping
    c_2, c_3 only in the loop squares (the shape produced by corner algebras
    e*L*e).
    """
    b1, b2, b3 = (_c(F, x) for x in b)
    c1, c2, c3 = (_c(F, x) for x in c)
    if c1 == 0:
        raise PresentationError("D needs c_1 != 0")
    if link is None:
        if c2 == 0 or c3 == 0:
            raise PresentationError("D needs nonzero c_2, c_3")
        l1, l2, l3 = c1, c2, c3
    else:
        l1 = l2 = l3 = _c(F, link)
        if l1 == 0:
            raise PresentationError("link parameter must be nonzero")
    Q = Quiver(["1", "2", "3"], [("alpha", "1", "1"), ("beta", "1", "2"), ("eta", "2", "2"),
                                 ("gamma", "2", "3"), ("mu", "3", "3"), ("sigma", "3", "1")])
    P = PathAlgebra(Q, F)
    w = P.w
    rels = [
        w("beta gamma") - w("alpha beta eta gamma mu").scale(l1),
        w("alpha beta eta gamma mu sigma") - w("beta eta gamma mu sigma alpha"),
        w("alpha alpha") - w("beta eta gamma mu sigma").scale(c1) - w("beta eta gamma mu sigma alpha").scale(b1),
        w("beta gamma mu"),
        w("mu sigma beta"),
        w("gamma sigma alpha"),
        w("gamma sigma") - w("eta gamma mu sigma alpha").scale(l2),
        w("eta gamma mu sigma alpha beta") - w("gamma mu sigma alpha beta eta"),
        w("eta eta") - w("gamma mu sigma alpha beta").scale(c2) - w("gamma mu sigma alpha beta eta").scale(b2),
        w("alpha beta gamma"),
        w("sigma beta eta"),
        w("eta gamma sigma"),
        w("sigma beta") - w("mu sigma alpha beta eta").scale(l3),
        w("mu sigma alpha beta eta gamma") - w("sigma alpha beta eta gamma mu"),
        w("mu mu") - w("sigma alpha beta eta gamma").scale(c3) - w("sigma alpha beta eta gamma mu").scale(b3),
        w("alpha alpha beta"),
        w("sigma alpha alpha"),
    ]
    meta = {"kind": "D", "b": [F.format(x) for x in (b1, b2, b3)], "c": [F.format(x) for x in (c1, c2, c3)]}
    if link is not None:
        meta["link"] = F.format(l1)
    return Presentation(Q, F, [r for r in rels if not r.is_zero()], meta)


def _two_vertex_quiver(loop2="eta") -> Quiver:
    return Quiver(["1", "2"], [("alpha", "1", "1"), ("beta", "1", "2"),
                               ("gamma", "2", "1"), (loop2, "2", "2")])


def family_Q2A(k: int, b, F: Field) -> Presentation:
    """Two-vertex algebra of dimension 9k + 2 (quiver alpha, beta, gamma)."""
    if k < 2:
        raise PresentationError("Q(2A)^k(b) needs k >= 2")
    b = _c(F, b)
    Q = Quiver(["1", "2"], [("alpha", "1", "1"), ("beta", "1", "2"), ("gamma", "2", "1")])
    P = PathAlgebra(Q, F)
    al, be, ga = P.a("alpha"), P.a("beta"), P.a("gamma")
    bga = be * ga * al
    abg = al * be * ga
    gab = ga * al * be
    rels = [
        al * al - bga ** (k - 1) * be * ga - (bga ** k).scale(b),
        be * ga * be - abg ** (k - 1) * al * be,
        ga * be * ga - gab ** (k - 1) * ga * al,
        al * al * be,
    ]
    return Presentation(Q, F, rels, {"kind": "Q2A", "k": k, "b": F.format(b)})


def family_Q2B3(t: int, a, b, F: Field) -> Presentation:
    """Two-vertex algebra of dimension 9 + t (quiver alpha, beta, gamma, eta)."""
    if t < 3:
        raise PresentationError("Q(2B)_3^t(a,b) needs t >= 3")
    a, b = _c(F, a), _c(F, b)
    if a == 0:
        raise PresentationError("Q(2B)_3^t(a,b) needs a != 0")
    if t == 3 and a == F.one:
        raise PresentationError("t = 3 with a = 1 is the singular disc algebra")
    Q = _two_vertex_quiver()
    P = PathAlgebra(Q, F)
    al, be, ga, et = (P.a(n) for n in ("alpha", "beta", "gamma", "eta"))
    rels = [
        al * be - be * et,
        et * ga - ga * al,
        al * al - be * ga - (al ** 3).scale(b),
        ga * be - (et ** (t - 1)).scale(a),
        al ** 4,
        et ** (t + 1),
        ga * al * al,
        al * al * be,
    ]
    return Presentation(Q, F, rels, {"kind": "Q2B3", "t": t, "a": F.format(a), "b": F.format(b)})


# ---- triangulation-quiver data ------------------------------------------------------

def disc_quiver() -> TriangulationQuiver:
    """Four vertices, border {3, 4}; f = (alpha xi delta)(beta nu eta)(rho)(gamma)."""
    Q = Quiver(["1", "2", "3", "4"], [
        ("alpha", "3", "1"), ("beta", "1", "4"), ("gamma", "4", "4"), ("nu", "4", "2"),
        ("delta", "2", "3"), ("rho", "3", "3"), ("xi", "1", "2"), ("eta", "2", "1")])
    return TriangulationQuiver.from_f_cycles(
        Q, [["alpha", "xi", "delta"], ["beta", "nu", "eta"], ["rho"], ["gamma"]])


def disc_weights(tq: TriangulationQuiver, F: Field, c=1, b3=0, b4=0, m_big=3, m_small=1) -> WeightData:
    return WeightData.make(tq, F, {"alpha": m_big, "xi": m_small}, {"alpha": c, "xi": 1},
                           {"3": b3, "4": b4})


def family_disc_2_2(c, b3, b4, F: Field) -> Presentation:
    """The 112-dimensional disc algebra (weights 3 and 1)."""
    tq = disc_quiver()
    p = weighted_surface_relations(tq, disc_weights(tq, F, c, b3, b4))
    p.meta.update({"kind": "disc", "c": F.format(F.coerce(c)),
                   "b3": F.format(F.coerce(b3)), "b4": F.format(F.coerce(b4))})
    return p


def two_vertex_quiver() -> TriangulationQuiver:
    """alpha loop at 1 (border), beta: 1->2, gamma: 2->1, eta loop at 2; f = (alpha)(beta eta gamma)."""
    return TriangulationQuiver.from_f_cycles(_two_vertex_quiver(), [["alpha"], ["beta", "eta", "gamma"]])


def two_vertex_weights(tq, F: Field, m_alpha, m_eta, c_alpha=1, c_eta=1, b1=0) -> WeightData:
    return WeightData.make(tq, F, {"alpha": m_alpha, "eta": m_eta},
                           {"alpha": c_alpha, "eta": c_eta}, {"1": b1})


def triangle_quiver() -> TriangulationQuiver:
    """Three border loops alpha, eta, mu joined by beta: 1->2, gamma: 2->3, sigma: 3->1."""
    Q = Quiver(["1", "2", "3"], [("alpha", "1", "1"), ("beta", "1", "2"), ("eta", "2", "2"),
                                 ("gamma", "2", "3"), ("mu", "3", "3"), ("sigma", "3", "1")])
    return TriangulationQuiver.from_f_cycles(Q, [["alpha"], ["eta"], ["mu"], ["beta", "gamma", "sigma"]])


def four_vertex_link_quiver() -> TriangulationQuiver:
    """Border loops at 1 and 3 with a two-cycle through vertex 4; the g-orbit of the
    loop at 1 also contains f of its neighbour."""
    Q = Quiver(["1", "2", "3", "4"], [
        ("alpha", "1", "1"), ("beta", "1", "2"), ("gamma", "2", "3"), ("sigma", "3", "1"),
        ("delta", "2", "4"), ("rho", "4", "4"), ("xi", "4", "2"), ("mu", "3", "3")])
    return TriangulationQuiver.from_f_cycles(
        Q, [["alpha"], ["mu"], ["beta", "gamma", "sigma"], ["delta", "rho", "xi"]])
