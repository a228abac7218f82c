import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from surfalg.corpus import corpus_spec
from surfalg.families import family_B, family_Q2A, two_vertex_quiver, two_vertex_weights
from surfalg.field import GF
from surfalg.homology import (RightModule, cyclic_module, hom_space, module_iso, period, projective_cover,
                              projective_module, simple_module, syzygy, syzygy_orbit, top_multiplicities)
from surfalg.linalg import inverse, rank
from surfalg.presentation import weighted_surface_relations
from surfalg.rewrite import cartan_matrix, quotient_algebra

F2 = GF(2)


@pytest.fixture(scope="module")
def q2a():
    return quotient_algebra(family_Q2A(2, 1, F2))


def test_module_axioms(q2a):
    for v in range(2):
        for M in (simple_module(q2a, v), projective_module(q2a, v), syzygy(simple_module(q2a, v))):
            assert M.check_axioms()
    P = projective_module(q2a, 0)
    assert P.dim == int(cartan_matrix(q2a)[0].sum())
    assert top_multiplicities(P) == [1, 0]


def test_cover_is_minimal_and_onto(q2a):
    step = projective_cover(simple_module(q2a, 1))
    assert step.minimal and step.surjective
    assert step.multiplicities == [0, 1]
    assert step.kernel.dim == projective_module(q2a, 1).dim - 1


@pytest.mark.parametrize("name", ["Q2A_2_1", "Q2B3_5_1_1", "D_b100", "surface_triangle_b101"])
def test_period_four_shape(name):
    # for a symmetric algebra with simple socles and period 4:
    # dim Omega(S) = dim Omega^3(S) = dim P - 1, and Omega^4(S) = S
    A = corpus_spec(name).build()
    for v in range(A.n_vertices):
        orb = syzygy_orbit(A, simple_module(A, v), max_steps=8)
        d = projective_module(A, v).dim
        assert [s.dim for s in orb[:4:2]] == [d - 1, d - 1]
        assert orb[3].dim == 1 and period(orb) == 4
        assert not any(s.iso_to_start for s in orb[:3])


@pytest.mark.parametrize("ma,me,b", [(1, 4, 0), (2, 3, 1), (3, 2, 1), (1, 6, 1)])
def test_second_syzygy_dimension(ma, me, b):
    tq = two_vertex_quiver()
    A = quotient_algebra(weighted_surface_relations(tq, two_vertex_weights(tq, F2, ma, me, 1, 1, b)))
    assert syzygy(syzygy(simple_module(A, 0))).dim == 3 * ma + me + 1


def test_B_is_not_period_four():
    # B(1) has simple period 3; for r >= 2 the orbit grows
    A = quotient_algebra(family_B(1, 1, 0, F2))
    assert [period(syzygy_orbit(A, simple_module(A, v), 8)) for v in range(2)] == [3, 3]
    A = quotient_algebra(family_B(2, 1, 0, F2))
    orb = syzygy_orbit(A, simple_module(A, 0), 6)
    assert period(orb) is None
    assert orb[-1].dim > orb[1].dim


def test_module_iso_negatives(q2a):
    S0, S1 = simple_module(q2a, 0), simple_module(q2a, 1)
    assert not module_iso(S0, S1).isomorphic
    assert module_iso(S0, S0).isomorphic
    P0 = projective_module(q2a, 0)
    assert len(hom_space(S0, P0)) == 1                     # one-dimensional socle
    assert len(hom_space(P0, S0)) == 1 and hom_space(P0, S1) == []


def test_cyclic_module(q2a):
    x = q2a.basis_vector(q2a.idempotents[0])
    M = cyclic_module(q2a, x)
    assert module_iso(M, projective_module(q2a, 0)).isomorphic


def _twist(M, T):
    F = M.A.field
    Ti = inverse(F, T)
    act = np.stack([F.matmul(F.matmul(Ti, M.action[i]), T) for i in range(M.A.dim)])
    return RightModule(M.A, act, M.weights, "twist")


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 1), st.integers(0, 2**31 - 1))
def test_module_iso_detects_base_change(v, seed):
    A = quotient_algebra(family_Q2A(2, 1, F2))
    M = syzygy(simple_module(A, v))
    rng = np.random.default_rng(seed)
    T = F2.zeros((M.dim, M.dim))
    for w in range(A.n_vertices):              # weight-preserving invertible base change
        ids = np.flatnonzero(M.weights == w)
        while True:
            blk = rng.integers(0, 2, (len(ids), len(ids)))
            if rank(F2, blk) == len(ids):
                break
        T[np.ix_(ids, ids)] = blk
    N = _twist(M, T)
    assert N.check_axioms()
    assert module_iso(M, N).isomorphic
