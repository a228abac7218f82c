import pytest

from surfalg import bimodule
from surfalg.corpus import corpus_spec
from surfalg.bimodule import verify_bimodule_period4

EXPECTED_CHECKS = {"d0 surjective", "d0 d = 0", "Im d = Ker d0", "Im R in Ker d", "Im R = Ker d",
                   "Im S in Ker R", "Im S = Ker R", "S(xi_t) = 0", "theta injective", "Ker S = Im theta"}


@pytest.mark.parametrize("name,dim", [("surface_2v_2_2_b1", 20), ("surface_2v_1_5_b1", 14)])
def test_small_surfaces_confirm(name, dim):
    A = corpus_spec(name).build()
    rep = verify_bimodule_period4(A)
    assert A.dim == dim
    assert rep.verdict == "PERIOD-4 CONFIRMED"
    names = {c.name for c in rep.checks}
    assert EXPECTED_CHECKS <= names
    # ranks along the exact sequence add up
    d = rep.dims
    assert rep.ranks["d0"] == A.dim
    assert rep.ranks["d"] + rep.ranks["d0"] == d["P0"]
    assert rep.ranks["theta"] + rep.ranks["S"] == d["P3"]


def test_dropping_border_corrections_breaks_the_complex(monkeypatch):
    A = corpus_spec("surface_2v_2_2_b1").build()
    orig = bimodule.psi_terms

    def without_border(D, i):
        saved = D.w.b
        object.__setattr__(D.w, "b", {})
        try:
            return orig(D, i)
        finally:
            object.__setattr__(D.w, "b", saved)

    monkeypatch.setattr(bimodule, "psi_terms", without_border)
    rep = verify_bimodule_period4(A)
    assert rep.verdict == "FAILED: Im S in Ker R"


def test_rejects_non_surface_algebra():
    A = corpus_spec("B_1_1_0").build()
    with pytest.raises(ValueError):
        verify_bimodule_period4(A)
