import pytest

from surfalg.families import disc_quiver, disc_weights, four_vertex_link_quiver, two_vertex_quiver
from surfalg.field import GF
from surfalg.quiver import Quiver, QuiverError, TriangulationQuiver, WeightData, expected_dimension, virtual_arrows


def _names(tq, orb):
    return [tq.quiver.arrow_names[a] for a in orb]


def test_disc_orbits_and_dimension():
    tq = disc_quiver()
    sizes = sorted(len(o) for o in tq.orbits)
    assert sizes == [2, 6]
    assert [tq.quiver.vertices[v] for v in tq.border] == ["3", "4"]
    w = disc_weights(tq, GF(2))
    assert expected_dimension(tq, w) == 3 * 36 + 1 * 4 == 112
    assert {tq.quiver.arrow_names[a] for a in virtual_arrows(tq, w)} == {"xi", "eta"}


def test_g_is_bar_of_f():
    tq = two_vertex_quiver()
    Q = tq.quiver
    for a in range(Q.n_arrows):
        assert tq.g[a] == tq.bar[tq.f[a]]
        assert Q.src[tq.bar[a]] == Q.src[a] and tq.bar[a] != a
    orbits = sorted(_names(tq, o) for o in tq.orbits)
    assert ["eta"] in orbits and any(set(o) == {"alpha", "beta", "gamma"} for o in orbits)


def test_rejects_bad_quivers():
    Q = Quiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    with pytest.raises(QuiverError):
        TriangulationQuiver(Q, ["b", "a"])          # not 2-regular
    Q2 = Quiver(["1", "2"], [("alpha", "1", "1"), ("beta", "1", "2"), ("gamma", "2", "1"), ("eta", "2", "2")])
    with pytest.raises(QuiverError):
        TriangulationQuiver.from_f_cycles(Q2, [["alpha"], ["beta", "gamma", "eta"]])   # t(gamma) != s(eta)
    with pytest.raises(QuiverError):
        Quiver(["1"], [("a", "1", "9")])


def test_weight_conditions():
    tq = two_vertex_quiver()
    F = GF(2)
    with pytest.raises(QuiverError):
        WeightData.make(tq, F, {"alpha": 1, "eta": 1})          # m*n = 1 on eta
    with pytest.raises(QuiverError):
        WeightData.make(tq, F, {"alpha": 1, "eta": 3}, {"alpha": 1, "eta": 1})   # singular disc D(1)
    with pytest.raises(QuiverError):
        WeightData.make(tq, F, {"alpha": 2, "eta": 2}, {"alpha": 0})
    with pytest.raises(QuiverError):
        WeightData.make(tq, F, {"alpha": 2, "eta": 2}, None, {"2": 1})     # 2 is not a border vertex
    # c_eta * c_alpha^3 = w is not 1, so this disc is fine over GF(4)
    w = WeightData.make(tq, GF(4), {"alpha": 1, "eta": 3}, {"alpha": "1", "eta": "w"})
    assert w.m == (1, 3) or w.m == (3, 1)


def test_normalized_keeps_extension_parameters():
    tq = four_vertex_link_quiver()
    F = GF(4)
    w = WeightData.make(tq, F, {"alpha": 1, "rho": 2}, {"alpha": "w", "rho": "w+1"}, {"1": "w"})
    n = w.normalized()
    k_alpha = tq.orbit_index("alpha")
    assert n.c[k_alpha] == F.parse("w")
    assert n.c[tq.orbit_index("rho")] == F.one       # virtual orbit set to 1
    assert n.b[tq.quiver.vertex("1")] == F.parse("w")
