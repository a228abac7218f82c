"""Acceptance criteria 1-9, one test each.  Every test prints a PASS/FAIL line
with its wall-clock time against the pinned limit; the lines are repeated in the
terminal summary."""
import copy
import time
from contextlib import contextmanager

import numpy as np
import pytest

from conftest import CRITERIA
from surfalg.bimodule import verify_bimodule_period4
from surfalg.corpus import corpus, corpus_spec, load_doc
from surfalg.families import family_A, family_B, family_D, family_disc_2_2, family_Q2A, family_Q2B3
from surfalg.field import GF
from surfalg.homology import simple_module, syzygy, syzygy_orbit
from surfalg.isocheck import classify_family, iso_search, iso_witness_check, socle_equivalent
from surfalg.linalg import rank
from surfalg.rewrite import quotient_algebra, symmetrizing_form
from surfalg.suites import doubling_map_q2a, nonsymmetric_control, shear_map_q2b, suite_relations

F2, F3, F4, F8 = GF(2), GF(3), GF(4), GF(8)

LIMITS = {1: 10, 2: 5, 3: 10, 4: 60, 5: 15 * 60, 6: 10 * 60, 7: 10 * 60, 8: 2 * 60, 9: 10 * 60}


@contextmanager
def criterion(n, title):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        late = dt >= LIMITS[n]
        verdict = "PASS" if ok and not late else "FAIL"
        line = f"criterion {n}: {verdict}  {dt:7.1f}s / {LIMITS[n]}s  {title}" + ("  (over time)" if late else "")
        print("\n" + line)
        CRITERIA[n] = line
    assert dt < LIMITS[n], f"criterion {n} took {dt:.1f}s, limit {LIMITS[n]}s"


def dim(p):
    return quotient_algebra(p).dim


def test_criterion_1_dimensions():
    with criterion(1, "dimension suite"):
        assert dim(family_disc_2_2(1, 1, 0, F2)) == 112
        for m in (2, 3, 4):
            assert dim(family_A(m, 1, 1, F2)) == 4 * m
        for r in (1, 2, 5):
            assert dim(family_B(r, 1, 1, F2)) == r + 9
        assert dim(family_D((1, 0, 0), (1, 1, 1), F2)) == 36
        for k in (2, 3):
            assert dim(family_Q2A(k, 1, F2)) == 9 * k + 2
        assert dim(family_Q2B3(3, "w", 1, F4)) == 12
        for t in (4, 5):
            assert dim(family_Q2B3(t, 1, 1, F2)) == 9 + t


def test_criterion_2_redundant_relations():
    with criterion(2, "redundant-relation suite"):
        checks = suite_relations()
        assert len(checks) == 62
        bad = [c["check"] for c in checks if not c["ok"]]
        assert not bad, bad


def test_criterion_3_symmetry():
    with criterion(3, "symmetry suite"):
        specs = corpus()
        assert len(specs) >= 50
        for s in specs:
            A = s.build()
            phi = symmetrizing_form(A)
            assert phi is not None, s.name
            n, F = A.dim, A.field
            G = F.matmul(A.table.reshape(n * n, n), phi).reshape(n, n)
            assert np.array_equal(G, G.T) and rank(F, G) == n, s.name
        assert symmetrizing_form(nonsymmetric_control()) is None


# Corpus entries with >= 2 vertices over GF(2) that lie outside the socle deformed
# weighted surface class: idempotent reductions B(r,c,b), the link-shaped D with
# c_2 = 0 and the corners producing them.  They are not periodic of period 4.
OUTSIDE_SURFACE_CLASS = {"B_1_1_0", "B_1_1_1", "B_2_1_0", "B_2_1_1", "B_3_1_0", "B_3_1_1", "B_5_1_1",
                         "D_link_b100", "corner_disc_vertices31", "corner_four_vertex"}


def test_criterion_4_simple_periodicity():
    with criterion(4, "simple-module periodicity"):
        binary = [s for s in corpus() if s.field_json() == {"kind": "prime", "characteristic": 2, "degree": 1}]
        multi = [s for s in binary if len(s.presentation().quiver.vertices) >= 2 or s.doc.get("corner")]
        multi = [s for s in multi if s.build().n_vertices >= 2]
        periodic = [s for s in multi if "periodic" in s.tags]
        assert {s.name for s in multi} - {s.name for s in periodic} == OUTSIDE_SURFACE_CLASS
        assert len(periodic) >= 15
        border = 0
        for s in periodic:
            A = s.build()
            for v in range(A.n_vertices):
                orb = syzygy_orbit(A, simple_module(A, v), max_steps=4)
                assert len(orb) == 4, (s.name, v)
                assert [st.iso_to_start for st in orb] == [False, False, False, True], (s.name, v)
            if "two_vertex_border" in s.tags:
                m = s.doc["weights"]["m"]
                assert syzygy(syzygy(simple_module(A, 0))).dim == 3 * m["alpha"] + m["eta"] + 1
                border += 1
        assert border >= 5


def test_criterion_5_bimodule_period_four():
    with criterion(5, "bimodule period 4"):
        cases = [("surface_2v_2_2_b1", family_Q2A(2, 1, F2), 20),
                 ("surface_2v_1_5_b1", family_Q2B3(5, 1, 1, F2), 14),
                 ("disc_2_2", family_disc_2_2(1, 1, 0, F2), 112)]
        for name, fam, n in cases:
            A = corpus_spec(name).build()
            assert A.dim == n
            # the surface presentation is the named algebra
            assert iso_search(A, quotient_algebra(fam)).result == "ISO", name
            rep = verify_bimodule_period4(A)
            passed = {c.name: c.passed for c in rep.checks}
            for key in ("Im R in Ker d", "S(xi_t) = 0", "Ker S = Im theta"):
                assert passed[key], (name, key)
            assert rep.verdict == "PERIOD-4 CONFIRMED", (name, rep.verdict)


def test_criterion_6_non_isomorphism():
    with criterion(6, "non-isomorphism suite"):
        pairs = [(family_A(2, 1, 0, F2), family_A(2, 1, 1, F2)),
                 (family_A(3, 1, 0, F2), family_A(3, 1, 1, F2)),
                 (family_B(1, 1, 0, F2), family_B(1, 1, 1, F2)),
                 (family_B(2, 1, 0, F2), family_B(2, 1, 1, F2)),
                 (family_D((0, 0, 0), (1, 1, 1), F2), family_D((1, 0, 0), (1, 1, 1), F2)),
                 (family_Q2B3(3, "w", 0, F4), family_Q2B3(3, "w", 1, F4))]
        for p, q in pairs:
            v = iso_search(quotient_algebra(p), quotient_algebra(q))
            assert v.result == "NOT-ISO", p.meta
            assert v.certificate["reason"] == "exhausted"
            assert len(v.certificate["log_sha256"]) == 64


def test_criterion_7_isomorphism_and_classes():
    with criterion(7, "isomorphism suite"):
        A, B = quotient_algebra(family_Q2A(4, 1, F8)), quotient_algebra(family_Q2A(4, "w", F8))
        assert iso_witness_check(A, B, doubling_map_q2a(A, B))
        for F in (F2, F4):
            A, B = quotient_algebra(family_Q2B3(4, 1, 1, F)), quotient_algebra(family_Q2B3(4, 1, 0, F))
            assert iso_witness_check(A, B, shear_map_q2b(A, B))
        elems = ["0", "1", "w", "w+1"]
        families = [
            ({b: family_Q2A(2, b, F4) for b in elems}, 4),
            ({b: family_Q2B3(4, 1, b, F2) for b in ("0", "1")}, 1),
            ({b: family_Q2B3(5, 1, b, F4) for b in elems}, 4),
            ({b: family_Q2B3(3, "w", b, F4) for b in elems[1:]}, 1),
        ]
        for fam, want in families:
            classes, inconclusive, _ = classify_family({k: quotient_algebra(p) for k, p in fam.items()})
            assert not inconclusive
            assert len(classes) == want, classes
            if want == len(fam):
                assert all(len(c) == 1 for c in classes)


def test_criterion_8_socle_equivalence():
    with criterion(8, "socle equivalence and char != 2 collapse"):
        base = quotient_algebra(family_A(2, 1, 0, F2))
        for b in (0, 1):
            assert socle_equivalent(quotient_algebra(family_A(2, 1, b, F2)), base).result == "ISO"
        v = iso_search(quotient_algebra(family_A(2, 1, 1, F3)), quotient_algebra(family_A(2, 1, 0, F3)))
        assert v.result == "ISO" and v.witness is not None


def _corner(name, b=None, field=None, weights=None):
    doc = copy.deepcopy(corpus_spec(name).doc)
    if b is not None:
        doc["weights"]["b"] = b
    if weights is not None:
        doc["weights"].update(weights)
    if field is not None:
        doc["field"] = field
    return load_doc(doc).build()


def test_criterion_9_idempotent_reduction():
    with criterion(9, "idempotent-reduction suite"):
        for b in (0, 1):
            E = _corner("corner_disc_vertex3", {"3": str(b), "4": "0"})
            assert iso_search(E, quotient_algebra(family_A(3, 1, b, F2))).result == "ISO"
            assert iso_search(E, quotient_algebra(family_A(3, 1, 1 - b, F2))).result == "NOT-ISO"
            E = _corner("corner_disc_vertices31", {"3": str(b), "4": "0"})
            assert iso_search(E, quotient_algebra(family_B(3, 1, b, F2))).result == "ISO"
            assert iso_search(E, quotient_algebra(family_B(3, 1, 1 - b, F2))).result == "NOT-ISO"
        for bs in ((1, 0, 1), (0, 1, 1)):
            E = _corner("corner_triangle", {str(i + 1): str(x) for i, x in enumerate(bs)})
            assert iso_search(E, quotient_algebra(family_D(bs, (1, 1, 1), F2))).result == "ISO"
        E = _corner("corner_four_vertex")
        assert iso_search(E, quotient_algebra(family_D((1, 0, 0), (1, 0, 1), F2, link=1))).result == "ISO"
        assert iso_search(E, quotient_algebra(family_D((0, 0, 0), (1, 0, 1), F2, link=1))).result == "NOT-ISO"
        E = _corner("corner_four_vertex_gf4")
        D = family_D(("w", 0, 1), ("w", 0, "w"), F4, link="w")
        assert iso_search(E, quotient_algebra(D)).result == "ISO"
