"""Verification suites over the bundled corpus.

Each suite yields check records {"suite", "check", "ok", "detail"}; the list
order is fixed so reports are reproducible.
"""
from __future__ import annotations

import numpy as np

from .bimodule import verify_bimodule_period4
from .corpus import corpus, corpus_spec
from .families import family_B, family_Q2A
from .field import GF
from .homology import period, simple_module, syzygy, syzygy_orbit
from .isocheck import (candidate_from_elements, classify_family, iso_search, iso_witness_check,
                       socle_equivalent)
from .presentation import PathAlgebra, Presentation
from .quiver import Quiver
from .rewrite import normal_form, quotient_algebra, symmetrizing_form

SUITES = ("dims", "relations", "symmetry", "periods", "bimodule", "iso")


def _rec(suite, check, ok, **detail):
    return {"suite": suite, "check": check, "ok": bool(ok), "detail": detail}


_CACHE = {}


def build(name):
    if name not in _CACHE:
        _CACHE[name] = corpus_spec(name).build()
    return _CACHE[name]


# ---- dims ---------------------------------------------------------------------------------

def suite_dims(progress=None):
    out = []
    for s in corpus("dims"):
        A = build(s.name)
        want = s.expect["dimension"]
        out.append(_rec("dims", s.name, A.dim == want, dimension=A.dim, expected=want))
    return out


# ---- relations ----------------------------------------------------------------------------

def _nf_zero(A, x):
    return not np.any(np.asarray(normal_form(A, x)) != 0)


def _nf_equal(A, x, y):
    return np.array_equal(np.asarray(normal_form(A, x)), np.asarray(normal_form(A, y)))


def suite_relations(progress=None):
    out = []
    F = GF(2)
    for r in (1, 2, 5):
        for b in ("0", "1"):
            p = family_B(r, "1", b, F)
            A = quotient_algebra(p)
            w = PathAlgebra(p.quiver, F).w
            tag = f"B({r},1,{b})"
            out.append(_rec("relations", f"{tag}: beta omega alpha beta = 0",
                            _nf_zero(A, w("beta omega alpha beta"))))
            out.append(_rec("relations", f"{tag}: beta rho^r = 0",
                            _nf_zero(A, w(" ".join(["beta"] + ["rho"] * r)))))
            out.append(_rec("relations", f"{tag}: alpha^2 beta = 0", _nf_zero(A, w("alpha alpha beta"))))
            out.append(_rec("relations", f"{tag}: omega alpha^2 = 0", _nf_zero(A, w("omega alpha alpha"))))
            out.append(_rec("relations", f"{tag}: alpha beta omega alpha = 0",
                            _nf_zero(A, w("alpha beta omega alpha"))))
            out.append(_rec("relations", f"{tag}: c beta omega alpha = alpha^3",
                            _nf_equal(A, w("beta omega alpha"), w("alpha alpha alpha"))))
            out.append(_rec("relations", f"{tag}: alpha^3 = c alpha beta omega",
                            _nf_equal(A, w("alpha alpha alpha"), w("alpha beta omega"))))
    for k in (2, 3):
        for b in ("0", "1"):
            p = family_Q2A(k, b, F)
            A = quotient_algebra(p)
            w = PathAlgebra(p.quiver, F).w
            tag = f"Q2A^{k}({b})"
            bga = " ".join(["beta gamma alpha"] * k)
            abg = " ".join(["alpha beta gamma"] * k)
            out.append(_rec("relations", f"{tag}: alpha^2 beta = 0", _nf_zero(A, w("alpha alpha beta"))))
            out.append(_rec("relations", f"{tag}: gamma alpha^2 = 0", _nf_zero(A, w("gamma alpha alpha"))))
            out.append(_rec("relations", f"{tag}: alpha^3 = (beta gamma alpha)^k",
                            _nf_equal(A, w("alpha alpha alpha"), w(bga))))
            out.append(_rec("relations", f"{tag}: alpha^3 = (alpha beta gamma)^k",
                            _nf_equal(A, w("alpha alpha alpha"), w(abg))))
            out.append(_rec("relations", f"{tag}: alpha^3 != 0",
                            not _nf_zero(A, w("alpha alpha alpha"))))
    return out


# ---- symmetry -----------------------------------------------------------------------------

def nonsymmetric_control():
    """Path algebra of 1 -> 2 (no relations): not symmetric."""
    F = GF(2)
    Q = Quiver(["1", "2"], [("a", "1", "2")])
    return quotient_algebra(Presentation(Q, F, [], {"kind": "control"}), 4)


def suite_symmetry(progress=None):
    out = []
    for s in corpus("symmetric"):
        A = build(s.name)
        phi = symmetrizing_form(A)
        out.append(_rec("symmetry", s.name, phi is not None))
    out.append(_rec("symmetry", "control A2 path algebra has no symmetrizing form",
                    symmetrizing_form(nonsymmetric_control()) is None))
    return out


# ---- periods ------------------------------------------------------------------------------

def suite_periods(progress=None):
    out = []
    for s in corpus("periodic"):
        A = build(s.name)
        for v in range(A.n_vertices):
            orb = syzygy_orbit(A, simple_module(A, v), max_steps=4)
            dims = [st.dim for st in orb]
            ok = period(orb) == 4 and len(orb) == 4
            out.append(_rec("periods", f"{s.name}: S_{A.vertex_names[v]}", ok,
                            dims=dims, period=period(orb), methods=[st.method for st in orb]))
        if "omega2_S1" in s.expect:
            M = syzygy(syzygy(simple_module(A, 0)))
            out.append(_rec("periods", f"{s.name}: dim Omega^2(S_1)", M.dim == s.expect["omega2_S1"],
                            dim=M.dim, expected=s.expect["omega2_S1"]))
    return out


# ---- bimodule -----------------------------------------------------------------------------

def suite_bimodule(progress=None):
    out = []
    for s in corpus("bimodule"):
        A = build(s.name)
        rep = verify_bimodule_period4(A)
        out.append(_rec("bimodule", s.name, rep.verdict == "PERIOD-4 CONFIRMED",
                        verdict=rep.verdict, dimension=A.dim,
                        checks={c.name: c.passed for c in rep.checks}))
    return out


# ---- iso ----------------------------------------------------------------------------------

NOT_ISO_PAIRS = [("A_2_1_0", "A_2_1_1"), ("A_3_1_0", "A_3_1_1"), ("B_1_1_0", "B_1_1_1"),
                 ("B_2_1_0", "B_2_1_1"), ("D_b000", "D_b100"), ("Q2B3_3_w_0", "Q2B3_3_w_1")]

CLASSIFY = [
    ("Q2A^2(b) over GF(4)", ["Q2A_2_0_gf4", "Q2A_2_1_gf4", "Q2A_2_w_gf4", "Q2A_2_wp1_gf4"], 4),
    ("Q2B3_3^4(b) over GF(2)", ["Q2B3_4_1_0", "Q2B3_4_1_1"], 1),
    ("Q2B3_3^5(b) over GF(4)", ["Q2B3_5_1_0_gf4", "Q2B3_5_1_1_gf4", "Q2B3_5_1_w_gf4",
                                "Q2B3_5_1_wp1_gf4"], 4),
    ("Q2B3_3^3(w,b), b != 0 over GF(4)", ["Q2B3_3_w_1", "Q2B3_3_w_w", "Q2B3_3_w_wp1"], 1),
]

ISO_PAIRS = [("A_2_1_1_gf3", "A_2_1_0_gf3")]
SOCLE_PAIRS = [("A_2_1_1", "A_2_1_0"), ("A_3_1_1", "A_3_1_0"), ("D_b100", "D_b000")]


def doubling_map_q2a(A, B):
    """alpha -> d^2 alpha, beta -> beta, gamma -> d^3 gamma with d^2 = c / b."""
    F = B.field
    b = F.parse(A.presentation.meta["b"])
    c = F.parse(B.presentation.meta["b"])
    q = F.mul(c, F.inv(b))
    d = next(x for x in F.elements() if F.mul(x, x) == q)
    P = PathAlgebra(B.presentation.quiver, F)
    imgs = {"alpha": P.a("alpha").scale(F.pow(d, 2)), "beta": P.a("beta"),
            "gamma": P.a("gamma").scale(F.pow(d, 3))}
    return candidate_from_elements(A, B, [0, 1], imgs)


def shear_map_q2b(A, B):
    """gamma -> gamma + b gamma alpha, eta -> eta + b eta^2 (even t)."""
    F = B.field
    b = F.parse(A.presentation.meta["b"])
    P = PathAlgebra(B.presentation.quiver, F)
    w = P.w
    imgs = {"alpha": w("alpha"), "beta": w("beta"),
            "gamma": w("gamma") + w("gamma alpha").scale(b), "eta": w("eta") + w("eta eta").scale(b)}
    return candidate_from_elements(A, B, [0, 1], imgs)


def suite_iso(budget=None, progress=None):
    out = []
    for a, b in NOT_ISO_PAIRS:
        v = iso_search(build(a), build(b), budget)
        out.append(_rec("iso", f"{a} vs {b}: NOT-ISO", v.result == "NOT-ISO", result=v.result,
                        certificate=v.certificate))
    for a, b in ISO_PAIRS:
        v = iso_search(build(a), build(b), budget)
        out.append(_rec("iso", f"{a} vs {b}: ISO", v.result == "ISO", result=v.result))
    for a, b, maker in (("Q2A_4_1_gf8", "Q2A_4_w_gf8", doubling_map_q2a),
                        ("Q2B3_4_1_1", "Q2B3_4_1_0", shear_map_q2b)):
        A, B = build(a), build(b)
        cand = maker(A, B)
        ok = iso_witness_check(A, B, cand)
        out.append(_rec("iso", f"witness {a} -> {b}", ok, witness=cand.to_json(A, B)))
    for title, names, nclasses in CLASSIFY:
        classes, inconclusive, _ = classify_family({n: build(n) for n in names}, budget)
        ok = len(classes) == nclasses and not inconclusive
        out.append(_rec("iso", f"classify {title}: {nclasses} classes", ok, classes=classes,
                        inconclusive=[list(p) for p in inconclusive]))
    for a, b in SOCLE_PAIRS:
        v = socle_equivalent(build(a), build(b), budget)
        out.append(_rec("iso", f"{a} vs {b}: socle equivalent", v.result == "ISO", result=v.result))
    for s in corpus("corner"):
        target = s.expect["iso_to"]
        v = iso_search(build(s.name), build(target), budget)
        out.append(_rec("iso", f"{s.name} ~ {target}", v.result == "ISO", result=v.result))
    return out


def run_suite(name, budget=None, progress=None):
    if name == "all":
        out = []
        for n in SUITES:
            out.extend(run_suite(n, budget, progress))
        return out
    fn = {"dims": suite_dims, "relations": suite_relations, "symmetry": suite_symmetry,
          "periods": suite_periods, "bimodule": suite_bimodule}.get(name)
    if name == "iso":
        return suite_iso(budget, progress)
    if fn is None:
        raise ValueError(f"unknown suite {name}")
    return fn(progress)
