"""The first four terms of the bimodule resolution of a weighted surface algebra
and the check that its fourth syzygy is the algebra again.

A sum of projective bimodules  (+)_s  L e_i (x) e_j L  is flattened to a vector
space with basis pairs (p, q), p in L e_i, q in e_j L, row-major per summand.
Elements are kept symbolically as lists of terms (coeff, u, s, v) meaning
coeff * u (x) v in summand s, with u and v algebra vectors.  A bimodule map
is determined by the images of the summand generators e_i (x) e_j.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .linalg import rank
from .presentation import A_path, B_path, Presentation
from .rewrite import FiniteDimAlgebra, dual_basis, radical_socle, symmetrizing_form


class ProjectiveSum:
    def __init__(self, A: FiniteDimAlgebra, summands, labels=None):
        self.A = A
        self.summands = [(int(i), int(j)) for i, j in summands]
        self.labels = list(labels) if labels is not None else [f"{i}|{j}" for i, j in self.summands]
        self.left = [np.flatnonzero(A.tgt == i) for i, _ in self.summands]     # L e_i
        self.right = [np.flatnonzero(A.src == j) for _, j in self.summands]    # e_j L
        sizes = [len(l) * len(r) for l, r in zip(self.left, self.right)]
        self.offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(np.int64)
        self.dim = int(self.offsets[-1])

    def block(self, s):
        return slice(int(self.offsets[s]), int(self.offsets[s + 1]))

    def generator_positions(self):
        A = self.A
        out = []
        for s, (i, j) in enumerate(self.summands):
            p = int(np.flatnonzero(self.left[s] == A.idempotents[i])[0])
            q = int(np.flatnonzero(self.right[s] == A.idempotents[j])[0])
            out.append(int(self.offsets[s]) + p * len(self.right[s]) + q)
        return out

    def vector(self, terms):
        F = self.A.field
        out = F.zeros(self.dim)
        for c, u, s, v in terms:
            blk = _kron(F, np.asarray(u)[self.left[s]][None, :], np.asarray(v)[self.right[s]][None, :])[0]
            out[self.block(s)] = F.vadd(out[self.block(s)], F.vmul(blk, c))
        return out


def _kron(F, a, b):
    if F.kind == "prime" and F.p == 2:
        return np.kron(a.astype(np.uint8), b.astype(np.uint8)).astype(np.int64)
    if F.kind == "prime":
        return np.kron(a, b) % F.p
    prod = F.vmul(np.asarray(a)[:, None, :, None], np.asarray(b)[None, :, None, :])
    return prod.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


@dataclass
class BimoduleMap:
    source: object
    target: object
    matrix: object   # rows: source basis, columns: target basis
    name: str = ""


def _storage(F, shape):
    if F.kind == "prime" and F.p == 2:
        return np.zeros(shape, dtype=np.uint8)
    return F.zeros(shape)


def map_from_generators(src: ProjectiveSum, tgt: ProjectiveSum, images, name="") -> BimoduleMap:
    """images[s] is a term list in tgt for the generator of summand s of src."""
    A, F = src.A, src.A.field
    M = _storage(F, (src.dim, tgt.dim))
    cache_r, cache_l = {}, {}
    for s, terms in enumerate(images):
        rows = src.block(s)
        for c, u, t, v in terms:
            ku = u.tobytes()
            if ku not in cache_r:
                cache_r[ku] = A.rmul_matrix(u)
            kv = v.tobytes()
            if kv not in cache_l:
                cache_l[kv] = A.lmul_matrix(v)
            Ru = cache_r[ku][np.ix_(src.left[s], tgt.left[t])]
            Lv = cache_l[kv][np.ix_(src.right[s], tgt.right[t])]
            blk = _kron(F, Ru, Lv)
            if c != F.one:
                blk = F.vmul(blk, c)
            cols = tgt.block(t)
            if M.dtype == np.uint8:
                M[rows, cols] ^= blk.astype(np.uint8)
            else:
                M[rows, cols] = F.vadd(M[rows, cols], blk)
    return BimoduleMap(src, tgt, M, name)


def _rank(F, M):
    return rank(F, M)


# ---- the algebra data -----------------------------------------------------------------

class SurfaceData:
    """Vectors of arrows and paths of a weighted surface algebra built from the
    full quiver presentation (virtual arrows included)."""

    def __init__(self, A: FiniteDimAlgebra):
        p: Presentation = A.presentation
        if p is None or p.tq is None or p.weights is None:
            raise ValueError("algebra must come from a weighted surface presentation")
        self.A = A
        self.tq = p.tq
        self.w = p.weights.normalized()
        self.Q = p.tq.quiver
        self.F = A.field
        if A.presentation.quiver is not self.Q:
            raise ValueError("algebra must be built on the full quiver")
        self.gabriel = [a for a in range(self.Q.n_arrows) if not self.w.is_virtual(a)]

    def e(self, v):
        return self.A.e(v)

    def arrow(self, a):
        return self.A.arrow_vector(self.Q.arrow_names[a])

    def path(self, arrows, start=None):
        A, F = self.A, self.F
        v = A.e(self.Q.src[arrows[0]] if arrows else start)
        for a in arrows:
            v = F.matmul(v, A.arrow_matrices[a])
        return v

    def expand(self, a):
        """Arrow as a list of Gabriel arrows (single element unless virtual)."""
        tq, w = self.tq, self.w
        if not w.is_virtual(a):
            return [a]
        x = tq.bar[a]
        return self.expand(x) + self.expand(tq.f[x])


def _split(D: SurfaceData, word, coeff, gen_index):
    """rho(word) as a term list in P1: sum_k a_1..a_{k-1} (x) a_{k+1}..a_r."""
    F = D.F
    out = []
    for k, a in enumerate(word):
        u = D.path(word[:k], start=D.Q.src[word[0]])
        v = D.path(word[k + 1:], start=D.Q.tgt[a])
        out.append((coeff, u, gen_index[a], v))
    return out


def _expand_path(D: SurfaceData, arrows):
    out = []
    for a in arrows:
        out.extend(D.expand(a))
    return out


# ---- the maps -------------------------------------------------------------------------

def bimodule_terms(A: FiniteDimAlgebra):
    D = SurfaceData(A)
    nv = A.n_vertices
    Q, tq = D.Q, D.tq
    P0 = ProjectiveSum(A, [(i, i) for i in range(nv)], [f"e{Q.vertices[i]}" for i in range(nv)])
    P1 = ProjectiveSum(A, [(Q.src[a], Q.tgt[a]) for a in D.gabriel], [Q.arrow_names[a] for a in D.gabriel])
    P2 = ProjectiveSum(A, [(Q.src[tq.bar[a]], Q.tgt[tq.f[tq.bar[a]]]) for a in D.gabriel],
                       [Q.arrow_names[a] for a in D.gabriel])
    P3 = ProjectiveSum(A, [(i, i) for i in range(nv)], [f"e{Q.vertices[i]}" for i in range(nv)])
    return D, P0, P1, P2, P3


def bimodule_cover_d0(A: FiniteDimAlgebra, P0: ProjectiveSum):
    """Matrix of d0: P0 -> A, (p, q) in summand i maps to p*q."""
    F, n = A.field, A.dim
    M = _storage(F, (P0.dim, n))
    for s in range(len(P0.summands)):
        blk = A.table[np.ix_(P0.left[s], P0.right[s])].reshape(-1, n)
        M[P0.block(s)] = blk.astype(M.dtype)
    return BimoduleMap(P0, "algebra", M, "d0")


def bimodule_map_d(D: SurfaceData, P1, P0) -> BimoduleMap:
    F, Q = D.F, D.Q
    minus = F.neg(F.one)
    images = []
    for a in D.gabriel:
        s, t = Q.src[a], Q.tgt[a]
        x = D.arrow(a)
        images.append([(F.one, x, t, D.e(t)), (minus, D.e(s), s, x)])
    return map_from_generators(P1, P0, images, "d")


def mu_word_terms(D: SurfaceData, a):
    """mu_a as a list of (coeff, Gabriel word)."""
    F, tq, w, Q = D.F, D.tq, D.w, D.Q
    ab = tq.bar[a]
    minus = F.neg(F.one)
    terms = []
    if tq.is_border_loop(ab):
        terms.append((F.one, _expand_path(D, [ab, ab])))
        i = Q.src[a]
        if w.b.get(i, F.zero) != 0:
            terms.append((F.mul(minus, w.b[i]), _expand_path(D, B_path(a, tq, w).arrows)))
    else:
        terms.append((F.one, _expand_path(D, [ab, tq.f[ab]])))
    terms.append((F.mul(minus, w.c_of(a)), _expand_path(D, A_path(a, tq, w).arrows)))
    return terms


def bimodule_map_R(D: SurfaceData, P2, P1) -> BimoduleMap:
    gen_index = {a: k for k, a in enumerate(D.gabriel)}
    images = []
    for a in D.gabriel:
        terms = []
        for c, word in mu_word_terms(D, a):
            terms.extend(_split(D, word, c, gen_index))
        images.append(terms)
    return map_from_generators(P2, P1, images, "R")


def psi_terms(D: SurfaceData, i):
    """bar-psi_i as a term list in P2."""
    F, tq, w, Q = D.F, D.tq, D.w, D.Q
    gen_index = {a: k for k, a in enumerate(D.gabriel)}
    minus = F.neg(F.one)
    a, ab = Q.out_arrows(i)
    f = tq.f
    ei = D.e(i)
    terms = []
    for x, y in ((a, ab), (ab, a)):
        # (e_i (x) e_{t(f(x))}) f^2(x) lives in the summand of bar(x) = y
        if not w.is_virtual(y) and not w.is_virtual(f[f[x]]):
            terms.append((F.one, ei, gen_index[y], D.arrow(f[f[x]])))
        # - x (e_{t(x)} (x) e_i) lives in the summand of g(x)
        g = tq.g[x]
        if not w.is_virtual(x) and not w.is_virtual(g):
            terms.append((minus, D.arrow(x), gen_index[g], ei))
    loop = tq.border_loop_at(i)
    if loop is not None:
        bi = w.b.get(i, F.zero)
        if bi != 0:
            lam = F.mul(bi, F.inv(w.c_of(loop)))
            s = gen_index[tq.bar[loop]]
            al = D.arrow(loop)
            powers = [ei, al]
            for _ in range(3):
                powers.append(F.matmul(powers[-1], D.A.arrow_matrices[loop]))
            for k in (1, 2, 3):
                coef = F.pow(lam, k)
                terms.append((coef, al, s, powers[k]))
                if k < 3:
                    terms.append((coef, ei, s, powers[k + 1]))
    return terms


def bimodule_map_S(D: SurfaceData, P3, P2) -> BimoduleMap:
    images = [psi_terms(D, i) for i in range(D.A.n_vertices)]
    return map_from_generators(P3, P2, images, "S")


def theta_injection(A: FiniteDimAlgebra, P3: ProjectiveSum, phi=None) -> BimoduleMap:
    """x -> x * xi with xi = sum_b b (x) b*, the Casimir element of phi."""
    F, n = A.field, A.dim
    if phi is None:
        phi = symmetrizing_form(A)
        if phi is None:
            raise ValueError("algebra has no symmetrizing form")
    Dual = dual_basis(A, phi)
    M = _storage(F, (n, P3.dim))
    for s, (j, _) in enumerate(P3.summands):
        Bj = np.flatnonzero(A.tgt == j)   # b in L e_j, paired with b* in e_j L
        left, right = P3.left[s], P3.right[s]
        Dj = Dual[np.ix_(Bj, right)]
        for k in range(n):
            U = A.table[k][np.ix_(Bj, left)]            # rows: b, cols: p   (b_k * b)
            blk = F.matmul(U.T, Dj).reshape(-1)
            M[k, P3.block(s)] = blk.astype(M.dtype)
    return BimoduleMap(A, P3, M, "theta")


# ---- verification ---------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class BimoduleReport:
    checks: list = dc_field(default_factory=list)
    dims: dict = dc_field(default_factory=dict)
    ranks: dict = dc_field(default_factory=dict)

    @property
    def verdict(self) -> str:
        for c in self.checks:
            if not c.passed:
                return f"FAILED: {c.name}"
        return "PERIOD-4 CONFIRMED"

    def to_json(self):
        return {"verdict": self.verdict, "dims": self.dims, "ranks": self.ranks,
                "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks]}


def _is_zero(M):
    return not np.any(np.asarray(M) != 0)


def _compose_rows(F, rows, M):
    return F.matmul(np.asarray(rows, dtype=np.int64), np.asarray(M, dtype=np.int64))


def verify_bimodule_period4(A: FiniteDimAlgebra, progress=None) -> BimoduleReport:
    F = A.field
    rep = BimoduleReport()
    say = progress or (lambda msg: None)
    D, P0, P1, P2, P3 = bimodule_terms(A)
    rep.dims = {"algebra": A.dim, "P0": P0.dim, "P1": P1.dim, "P2": P2.dim, "P3": P3.dim}

    def check(name, ok, detail=""):
        rep.checks.append(CheckResult(name, bool(ok), detail))
        return ok

    def minimal(name, M, P: ProjectiveSum, full_rank):
        gens = set(P.generator_positions())
        rad_rows = [r for r in range(P.dim) if r not in gens]
        r_rad = _rank(F, M[rad_rows])
        return check(f"{name} minimal", r_rad == full_rank - len(gens),
                     f"rank on radical {r_rad}, full {full_rank}, generators {len(gens)}")

    say("d0")
    d0 = bimodule_cover_d0(A, P0).matrix
    r0 = _rank(F, d0)
    rep.ranks["d0"] = r0
    check("d0 surjective", r0 == A.dim, f"rank {r0}")
    minimal("d0", d0, P0, r0)

    say("d")
    d = bimodule_map_d(D, P1, P0).matrix
    check("d0 d = 0", _is_zero(_compose_rows(F, d[P1.generator_positions()], d0)))
    r1 = _rank(F, d)
    rep.ranks["d"] = r1
    check("Im d = Ker d0", r1 == P0.dim - r0, f"rank {r1}, kernel {P0.dim - r0}")
    minimal("d", d, P1, r1)
    del d0

    say("R")
    R = bimodule_map_R(D, P2, P1).matrix
    check("Im R in Ker d", _is_zero(_compose_rows(F, R[P2.generator_positions()], d)))
    del d
    r2 = _rank(F, R)
    rep.ranks["R"] = r2
    check("Im R = Ker d", r2 == P1.dim - r1, f"rank {r2}, kernel {P1.dim - r1}")
    minimal("R", R, P2, r2)

    say("S")
    S = bimodule_map_S(D, P3, P2).matrix
    check("Im S in Ker R", _is_zero(_compose_rows(F, S[P3.generator_positions()], R)))
    del R
    r3 = _rank(F, S)
    rep.ranks["S"] = r3
    check("Im S = Ker R", r3 == P2.dim - r2, f"rank {r3}, kernel {P2.dim - r2}")
    minimal("S", S, P3, r3)

    say("theta")
    phi = symmetrizing_form(A)
    if not check("symmetrizing form", phi is not None):
        return rep
    th = theta_injection(A, P3, phi).matrix
    xi_rows = th[A.idempotents]
    check("S(xi_t) = 0", _is_zero(_compose_rows(F, xi_rows, S)))
    rt = _rank(F, th)
    rep.ranks["theta"] = rt
    check("theta injective", rt == A.dim, f"rank {rt}")
    check("Ker S = Im theta", rt == P3.dim - r3, f"kernel {P3.dim - r3}, image {rt}")
    return rep
