import copy
import re

import numpy as np
import pytest

from surfalg.corpus import corpus_spec, load_doc
from surfalg.families import family_A, family_Q2B3
from surfalg.field import GF
from surfalg.isocheck import (MorphismCandidate, admissible_permutations, brute_force_iso, classify_family,
                              default_budget, generator_presentation, iso_search, iso_witness_check,
                              socle_equivalent, vertex_profile)
from surfalg.presentation import PathAlgebra
from surfalg.rewrite import quotient_algebra
from surfalg.suites import shear_map_q2b


def build(name):
    return corpus_spec(name).build()


def identity_candidate(A):
    return MorphismCandidate(list(range(A.n_vertices)),
                             {g: A.basis_vector(g) for g in generator_presentation(A).gens})


def test_not_iso_certificate_is_reproducible():
    A, B = build("A_2_1_0"), build("A_2_1_1")
    v1, v2 = iso_search(A, B), iso_search(A, B)
    assert v1.result == "NOT-ISO" and v1.witness is None
    c = v1.certificate
    assert c["reason"] == "exhausted"
    assert re.fullmatch(r"[0-9a-f]{64}", c["log_sha256"])
    assert c == v2.certificate
    assert c["permutations"] == [[0]]


@pytest.mark.parametrize("a,b", [("A_2_1_0", "A_2_1_1"), ("A_2_1_0", "A_2_1_0"), ("B_1_1_0", "B_1_1_1"),
                                 ("B_1_1_1", "B_1_1_1")])
def test_search_agrees_with_brute_force(a, b):
    A, B = build(a), build(b)
    assert (iso_search(A, B).result == "ISO") == brute_force_iso(A, B)


def test_gf3_collapse_matches_brute_force_on_socle_quotient():
    A, B = build("A_2_1_1_gf3"), build("A_2_1_0_gf3")
    v = iso_search(A, B)
    assert v.result == "ISO"
    assert iso_witness_check(A, B, v.witness)


def test_witness_checks():
    A = build("Q2B3_4_1_1")
    assert iso_witness_check(A, A, identity_candidate(A))
    zero = MorphismCandidate([0, 1], {g: A.field.zeros(A.dim) for g in generator_presentation(A).gens})
    assert not iso_witness_check(A, A, zero)
    B = build("Q2B3_4_1_0")
    assert iso_witness_check(A, B, shear_map_q2b(A, B))
    assert not iso_witness_check(A, B, identity_candidate(A))     # b is not preserved by the identity


def test_wrong_shear_fails():
    F = GF(2)
    A = quotient_algebra(family_Q2B3(5, 1, 1, F))
    B = quotient_algebra(family_Q2B3(5, 1, 0, F))
    P = PathAlgebra(B.presentation.quiver, F)
    w = P.w
    from surfalg.isocheck import candidate_from_elements
    cand = candidate_from_elements(A, B, [0, 1], {"alpha": w("alpha"), "beta": w("beta"),
                                                  "gamma": w("gamma") + w("gamma alpha"),
                                                  "eta": w("eta") + w("eta eta")})
    assert not iso_witness_check(A, B, cand)                     # odd t needs a different map
    assert iso_search(A, B).result == "NOT-ISO"


def test_budget_and_env(monkeypatch):
    A, B = build("Q2B3_4_1_1"), build("Q2B3_4_1_0")
    v = iso_search(A, B, budget=3)
    assert v.result == "INCONCLUSIVE" and v.certificate["reason"] == "budget"
    monkeypatch.setenv("SURFALG_BUDGET", "2")
    assert default_budget() == 2
    assert iso_search(A, B).result == "INCONCLUSIVE"
    monkeypatch.delenv("SURFALG_BUDGET")
    assert iso_search(A, B).result == "ISO"


def test_vertex_relabeling_is_found():
    s = corpus_spec("surface_2v_2_2_b1")
    doc = copy.deepcopy(s.doc)
    doc["quiver"]["vertices"] = ["2", "1"]
    A, B = s.build(), load_doc(doc).build()
    assert A.vertex_names != B.vertex_names
    assert [vertex_profile(A, v) for v in range(2)] == [vertex_profile(B, v) for v in (1, 0)]
    assert admissible_permutations(A, B) == [[1, 0]]
    v = iso_search(A, B)
    assert v.result == "ISO" and v.witness.sigma == [1, 0]


def test_prefilters():
    v = iso_search(build("A_2_1_0"), build("A_3_1_0"))
    assert v.certificate["reason"] == "dimension"
    v = iso_search(build("Q2A_2_1"), build("surface_2v_1_4_b0"))
    assert v.result == "NOT-ISO"


def test_socle_equivalence_and_classify():
    F = GF(2)
    algs = {b: quotient_algebra(family_A(2, 1, b, F)) for b in (0, 1)}
    assert socle_equivalent(algs[0], algs[1]).result == "ISO"
    classes, inconclusive, verdicts = classify_family(algs)
    assert classes == [[0], [1]] and not inconclusive
    assert verdicts[(0, 1)] == "NOT-ISO"


def test_mismatched_fields_rejected():
    with pytest.raises(ValueError):
        iso_search(build("A_2_1_0"), build("A_2_1_0_gf3"))
