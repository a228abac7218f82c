"""Isomorphism search between basic algebras over a finite field.

Every isomorphism can be moved, by an inner automorphism, to one sending the
vertex idempotents of A to those of B up to a permutation sigma.  For each
admissible sigma the images of A's arrow generators are searched layer by
layer along the radical filtration of B:

* layer 1 (the leading matrices) runs over invertible blocks, up to rescaling
  by diagonal units;
* each middle layer j solves the affine condition "relations vanish modulo
  rad^(j+2)" and enumerates the solutions modulo commutators with layer j-1
  elements of the vertex corners (conjugation by 1 + z);
* from layer J = ceil(LL/2) on, the relations are affine in all remaining
  coordinates jointly, so one linear solve finishes the branch.

An exhausted search is a proof of non-isomorphism over the given field.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import math
import os
from dataclasses import dataclass, field as dc_field

import numpy as np

from .linalg import Subspace, inverse, left_kernel, rank, rref, solve_left
from .rewrite import FiniteDimAlgebra, cartan_matrix, quotient_by_socle, radical_socle

DEFAULT_BUDGET = 10 ** 8


def default_budget() -> int:
    env = os.environ.get("SURFALG_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class BudgetExceeded(Exception):
    pass


# ---- presentation of an algebra on its own arrow generators ---------------------------

@dataclass
class GeneratorPresentation:
    gens: list               # basis indices of the generators
    words: list              # tuples of generator positions, shortlex, spanning rad
    parents: list            # for each word: (index of prefix word or -1, last generator)
    relations: list          # (word index or -1, generator position, coefficient vector over words)
    coords: object           # matrix turning basis coordinates into word coordinates (+ idempotents)
    loewy: int


def generator_presentation(A: FiniteDimAlgebra) -> GeneratorPresentation:
    F, n = A.field, A.dim
    R = radical_socle(A)
    gens = list(R.generators)
    rad = A.radical_indices()
    words, parents, vecs = [], [], []
    span = Subspace(F, n)
    frontier = []
    for p, g in enumerate(gens):
        v = A.basis_vector(g)
        span.add(v)
        words.append((p,))
        parents.append((-1, p))
        vecs.append(v)
        frontier.append(len(words) - 1)
    pending = []
    while frontier:
        nxt = []
        for wi in frontier:
            t = A.tgt[gens[words[wi][-1]]]
            for p, g in enumerate(gens):
                if A.src[g] != t:
                    continue
                v = A.mul(vecs[wi], A.basis_vector(g))
                if span.add(v):
                    words.append(words[wi] + (p,))
                    parents.append((wi, p))
                    vecs.append(v)
                    nxt.append(len(words) - 1)
                else:
                    pending.append((wi, p, v))
        frontier = nxt
    if len(words) != len(rad):
        raise ValueError("generators do not span the radical")
    W = np.array(vecs)
    Winv = inverse(F, W[:, rad])
    relations = [(wi, p, F.matmul(v[rad], Winv)) for wi, p, v in pending]
    return GeneratorPresentation(gens, words, parents, relations, (rad, Winv), R.loewy_length)


# ---- filtration-adapted basis ----------------------------------------------------------

@dataclass
class AdaptedBasis:
    P: object            # rows: new basis in old coordinates
    Pinv: object
    table: object        # structure constants in the new basis
    grade: list          # (src, tgt) per new basis vector
    layer: list          # radical layer per new basis vector (0 for idempotents)
    idempotents: list
    loewy: int

    def coords(self, grade, layer_lo, layer_hi=None):
        out = []
        for k, (g, l) in enumerate(zip(self.grade, self.layer)):
            if g == grade and l >= layer_lo and (layer_hi is None or l <= layer_hi):
                out.append(k)
        return out


def adapted_basis(B: FiniteDimAlgebra) -> AdaptedBasis:
    F, n = B.field, B.dim
    R = radical_socle(B)
    LL = R.loewy_length
    rows, grade, layer = [], [], []
    for v, i in enumerate(B.idempotents):
        rows.append(B.basis_vector(i))
        grade.append((v, v))
        layer.append(0)
    for i in range(B.n_vertices):
        for j in range(B.n_vertices):
            cols = np.flatnonzero((B.src == i) & (B.tgt == j))
            if cols.size == 0:
                continue
            for k in range(1, LL):
                Rk = R.powers[k].R
                Rk1 = R.powers[k + 1].R if k + 1 < len(R.powers) else F.zeros((0, n))
                lower = Subspace(F, n, _project(F, Rk1, cols))
                for r in _project(F, Rk, cols):
                    if lower.add(r):
                        rows.append(r)
                        grade.append((i, j))
                        layer.append(k)
    P = np.array(rows)
    if P.shape[0] != n:
        raise ValueError("radical filtration basis is incomplete")
    Pinv = inverse(F, P)
    T = B.table
    X = F.matmul(P, T.reshape(n, n * n)).reshape(n, n, n)       # X[i, b, c] = sum_a P[i,a] T[a,b,c]
    new = F.zeros((n, n, n))
    for i in range(n):
        Y = F.matmul(P, X[i])                                   # Y[j, c]
        new[i] = F.matmul(Y, Pinv)
    return AdaptedBasis(P, Pinv, new, grade, layer, list(range(B.n_vertices)), LL)


def _project(F, rows, cols):
    out = F.zeros(rows.shape)
    if rows.shape[0]:
        out[:, cols] = rows[:, cols]
    return out[np.any(out != 0, axis=1)] if rows.shape[0] else out


# ---- verdicts ---------------------------------------------------------------------------

@dataclass
class MorphismCandidate:
    sigma: list
    images: dict             # key -> vector in B's basis coordinates
    keys: str = "generators" # "generators" (A basis indices) or "arrows" (presentation names)
    respects_relations: bool | None = None
    bijective: bool | None = None

    def to_json(self, A, B):
        F = B.field
        out = {}
        for k, v in self.images.items():
            name = A.labels[k] if self.keys == "generators" else k
            out[name] = [[F.format(v[i]), B.labels[i]] for i in np.flatnonzero(np.asarray(v) != 0)]
        return {"sigma": [B.vertex_names[s] for s in self.sigma], "images": out,
                "respects_relations": self.respects_relations, "bijective": self.bijective}


@dataclass
class IsoVerdict:
    result: str                          # "ISO" | "NOT-ISO" | "INCONCLUSIVE"
    witness: MorphismCandidate | None = None
    certificate: dict | None = None
    stats: dict = dc_field(default_factory=dict)

    def to_json(self, A=None, B=None):
        d = {"result": self.result, "stats": self.stats}
        if self.witness is not None and A is not None:
            d["witness"] = self.witness.to_json(A, B)
        if self.certificate is not None:
            d["certificate"] = self.certificate
        return d


class _Log:
    def __init__(self):
        self.h = hashlib.sha256()
        self.nodes = 0
        self.pruned = {}

    def event(self, *items):
        self.h.update(json.dumps(items, default=str).encode())

    def prune(self, key):
        self.pruned[key] = self.pruned.get(key, 0) + 1


# ---- profiles and vertex permutations --------------------------------------------------

def vertex_profile(A: FiniteDimAlgebra, v: int):
    R = radical_socle(A)
    F = A.field
    cols = np.flatnonzero(A.src == v)
    layers = []
    for Pk in R.powers:
        sub = Pk.R[:, cols] if Pk.rank else F.zeros((0, len(cols)))
        layers.append(rank(F, sub) if sub.size else 0)
    return (tuple(layers), R.socle_dims.get(v, 0))


def admissible_permutations(A: FiniteDimAlgebra, B: FiniteDimAlgebra):
    CA, CB = cartan_matrix(A), cartan_matrix(B)
    nv = A.n_vertices
    pa = [vertex_profile(A, v) for v in range(nv)]
    pb = [vertex_profile(B, v) for v in range(nv)]
    out = []
    for perm in itertools.permutations(range(nv)):
        if any(pa[v] != pb[perm[v]] for v in range(nv)):
            continue
        if all(CA[i, j] == CB[perm[i], perm[j]] for i in range(nv) for j in range(nv)):
            out.append(list(perm))
    return out


# ---- the search -------------------------------------------------------------------------

class _Search:
    def __init__(self, A, B, budget, log):
        self.A, self.B = A, B
        self.F = B.field
        self.gp = generator_presentation(A)
        self.ab = adapted_basis(B)
        self.budget = budget
        self.log = log
        self.n = B.dim
        self.LL = self.ab.loewy
        self.J = max(2, math.ceil(self.LL / 2))

    # products in B's adapted basis
    def _mul(self, x, y):
        F, n = self.F, self.n
        L = F.matmul(x, self.ab.table.reshape(n, n * n)).reshape(n, n)   # L[b, c] = sum_a x_a T[a,b,c]
        return F.matmul(y, L)

    def residuals(self, images):
        """All relation residuals (stacked) for generator images in adapted coordinates."""
        F, gp = self.F, self.gp
        wv = []
        for (parent, p) in gp.parents:
            if parent < 0:
                wv.append(images[p])
            else:
                wv.append(self._mul(wv[parent], images[p]))
        W = np.array(wv)
        res = []
        for wi, p, coeff in gp.relations:
            lhs = self._mul(wv[wi], images[p])
            rhs = F.matmul(coeff, W)
            res.append(F.vsub(lhs, rhs))
        return np.array(res) if res else F.zeros((0, self.n)), W

    def tick(self):
        self.log.nodes += 1
        if self.log.nodes > self.budget:
            raise BudgetExceeded()

    def run_sigma(self, sigma):
        A, F, ab, gp = self.A, self.F, self.ab, self.gp
        gens = gp.gens
        self.sigma = sigma
        gr = [(sigma[A.src[g]], sigma[A.tgt[g]]) for g in gens]
        self.grade_of_gen = gr
        # layer-1 blocks per grade
        blocks = {}
        for p, g in enumerate(gr):
            blocks.setdefault(g, []).append(p)
        cols1 = {g: ab.coords(g, 1, 1) for g in blocks}
        for g, ps in blocks.items():
            if len(cols1[g]) != len(ps):
                self.log.prune("layer1-shape")
                return None
        # spanning forest for the diagonal-unit gauge
        parent = list(range(A.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x
        gauge = set()
        for g in sorted(blocks):
            i, j = g
            if i != j and find(i) != find(j):
                parent[find(i)] = find(j)
                gauge.add(g)
        block_choices = []
        keys = sorted(blocks)
        for g in keys:
            k = len(blocks[g])
            block_choices.append(list(_invertible_matrices(F, k, normalize=(g in gauge))))
        self.log.event("sigma", sigma, [len(c) for c in block_choices])
        for combo in itertools.product(*block_choices):
            self.tick()
            images = [F.zeros(self.n) for _ in gens]
            for g, M in zip(keys, combo):
                for r, p in enumerate(blocks[g]):
                    images[p][cols1[g]] = M[r]
            res, _ = self.residuals(images)
            if not self._vanish_upto(res, 2):
                self.log.prune("layer1")
                continue
            found = self.descend(images, 2)
            if found is not None:
                return found
        return None

    def _vanish_upto(self, res, layer):
        if res.shape[0] == 0:
            return True
        cols = [k for k, l in enumerate(self.ab.layer) if l <= layer]
        return not np.any(np.asarray(res[:, cols]) != 0)

    def _unknowns(self, lo, hi=None):
        out = []
        for p, g in enumerate(self.grade_of_gen):
            for c in self.ab.coords(g, lo, hi):
                out.append((p, c))
        return out

    def _affine(self, images, unknowns, layer_cols):
        """Residual restricted to layer_cols as r0 + t @ M in the unknowns."""
        F = self.F
        r0, _ = self.residuals(images)
        r0 = r0[:, layer_cols].reshape(-1)
        rows = []
        for p, c in unknowns:
            trial = [x.copy() for x in images]
            trial[p][c] = F.add(trial[p][c], F.one)
            r, _ = self.residuals(trial)
            rows.append(F.vsub(r[:, layer_cols].reshape(-1), r0))
        M = np.array(rows) if rows else F.zeros((0, r0.size))
        return r0, M

    def descend(self, images, j):
        F = self.F
        self.tick()
        if j >= self.J:
            unknowns = self._unknowns(j)
            cols = list(range(self.n))
            r0, M = self._affine(images, unknowns, cols)
            if not unknowns:
                ok = not np.any(np.asarray(r0) != 0)
                t = F.zeros(0)
            else:
                t = solve_left(F, M, F.vneg(r0))
                ok = t is not None
            if not ok:
                self.log.prune(f"linear>={j}")
                return None
            out = [x.copy() for x in images]
            for (p, c), val in zip(unknowns, t):
                out[p][c] = val
            return out
        unknowns = self._unknowns(j, j)
        cols = [k for k, l in enumerate(self.ab.layer) if l == j + 1]
        r0, M = self._affine(images, unknowns, cols)
        if unknowns:
            t0 = solve_left(F, M, F.vneg(r0))
        else:
            t0 = F.zeros(0) if not np.any(np.asarray(r0) != 0) else None
        if t0 is None:
            self.log.prune(f"layer{j}")
            return None
        K = left_kernel(F, M) if unknowns else F.zeros((0, 0))
        reps = self._coset_reps(images, unknowns, K, j)
        self.log.event("layer", j, len(unknowns), K.shape[0], len(reps))
        for t in reps:
            out = [x.copy() for x in images]
            vals = F.vadd(t0, t) if len(t0) else t0
            for (p, c), val in zip(unknowns, vals):
                out[p][c] = val
            found = self.descend(out, j + 1)
            if found is not None:
                return found
        return None

    def _coset_reps(self, images, unknowns, K, j):
        """Representatives of span(K) modulo the conjugation directions V_j."""
        F, ab = self.F, self.ab
        if K.shape[0] == 0:
            return [F.zeros(len(unknowns))]
        pos = {u: k for k, u in enumerate(unknowns)}
        V = []
        for v in range(self.B.n_vertices):
            for c in ab.coords((v, v), j - 1, j - 1):
                z = F.zeros(self.n)
                z[c] = F.one
                vec = F.zeros(len(unknowns))
                for p, x in enumerate(images):
                    x1 = x.copy()
                    x1[[k for k, l in enumerate(ab.layer) if l != 1]] = 0
                    comm = F.vsub(self._mul(z, x1), self._mul(x1, z))
                    for c2 in np.flatnonzero(np.asarray(comm) != 0):
                        if ab.layer[c2] == j and (p, c2) in pos:
                            vec[pos[(p, c2)]] = comm[c2]
                V.append(vec)
        S = Subspace(F, len(unknowns), np.array(V) if V else None)
        comp = []
        for row in K:
            if S.add(row):
                comp.append(row)
        if not comp:
            return [F.zeros(len(unknowns))]
        out = []
        for coeffs in itertools.product(F.elements(), repeat=len(comp)):
            t = F.zeros(len(unknowns))
            for c, row in zip(coeffs, comp):
                if c:
                    t = F.vadd(t, F.vmul(row, c))
            out.append(t)
        return out


def _invertible_matrices(F, k, normalize=False):
    elems = F.elements()
    for entries in itertools.product(elems, repeat=k * k):
        M = np.array(entries, dtype=np.int64).reshape(k, k)
        if normalize:
            nz = np.flatnonzero(M.reshape(-1) != 0)
            if nz.size == 0 or M.reshape(-1)[nz[0]] != F.one:
                continue
        if rank(F, M) == k:
            yield M


def _finite(F):
    return F.kind != "rational"


def iso_search(A: FiniteDimAlgebra, B: FiniteDimAlgebra, budget: int | None = None) -> IsoVerdict:
    F = A.field
    if B.field is not F:
        raise ValueError("algebras are over different fields")
    if not _finite(F):
        raise ValueError("isomorphism search needs a finite field")
    budget = default_budget() if budget is None else int(budget)
    log = _Log()

    def not_iso(reason, **extra):
        cert = {"reason": reason, "nodes": log.nodes, "pruned": dict(sorted(log.pruned.items())),
                "log_sha256": log.h.hexdigest()}
        cert.update(extra)
        return IsoVerdict("NOT-ISO", None, cert, {"nodes": log.nodes})

    if A.dim != B.dim:
        return not_iso("dimension", dims=[A.dim, B.dim])
    if A.n_vertices != B.n_vertices:
        return not_iso("vertex count")
    perms = admissible_permutations(A, B)
    if not perms:
        return not_iso("no vertex permutation matches Cartan matrix and profiles")
    RA, RB = radical_socle(A), radical_socle(B)
    if RA.layer_dims() != RB.layer_dims():
        return not_iso("radical layers", layers=[RA.layer_dims(), RB.layer_dims()])
    s = _Search(A, B, budget, log)
    try:
        for sigma in perms:
            found = s.run_sigma(sigma)
            if found is not None:
                images = {g: F.matmul(x, s.ab.P) for g, x in zip(s.gp.gens, found)}
                cand = MorphismCandidate(sigma, images, "generators")
                ok = iso_witness_check(A, B, cand)
                if not ok:
                    raise RuntimeError("search produced a witness that fails verification")
                return IsoVerdict("ISO", cand, None, {"nodes": log.nodes, "permutations": len(perms)})
    except BudgetExceeded:
        return IsoVerdict("INCONCLUSIVE", None, {"reason": "budget", "budget": budget,
                                                 "log_sha256": log.h.hexdigest()},
                          {"nodes": log.nodes})
    return not_iso("exhausted", permutations=[list(p) for p in perms], layers_enumerated=s.J - 1,
                   loewy_length=s.LL)


# ---- witness verification ---------------------------------------------------------------

def linear_map_of(A: FiniteDimAlgebra, B: FiniteDimAlgebra, cand: MorphismCandidate):
    """Matrix (rows: A basis) of the linear map induced by a candidate, or None."""
    F = B.field
    Phi = F.zeros((A.dim, B.dim))
    for v, i in enumerate(A.idempotents):
        Phi[i] = B.e(cand.sigma[v])
    if cand.keys == "arrows":
        p = A.presentation
        Q = p.quiver
        img = {Q.arrow(k): np.asarray(v) for k, v in cand.images.items()}
        if A.words is None or set(img) != set(range(Q.n_arrows)):
            return None
        for k, w in enumerate(A.words):
            x = img[w[0]]
            for a in w[1:]:
                x = B.mul(x, img[a])
            Phi[A.n_vertices + k] = x
        return Phi
    gp = generator_presentation(A)
    pos = {g: p for p, g in enumerate(gp.gens)}
    if set(cand.images) != set(gp.gens):
        return None
    wv = []
    for parent, p in gp.parents:
        x = np.asarray(cand.images[gp.gens[p]])
        wv.append(x if parent < 0 else B.mul(wv[parent], x))
    rad, Winv = gp.coords
    # basis element b_r (radical) = sum_w Winv[r, w] * word_w
    Wimg = np.array(wv)
    Phi[rad] = F.matmul(Winv, Wimg)
    return Phi


def iso_witness_check(A: FiniteDimAlgebra, B: FiniteDimAlgebra, cand: MorphismCandidate) -> bool:
    """Grading, relations (full multiplicativity on the basis) and bijectivity."""
    F = B.field
    if A.dim != B.dim or sorted(cand.sigma) != list(range(B.n_vertices)):
        cand.respects_relations, cand.bijective = False, False
        return False
    # grading of images
    for key, v in cand.images.items():
        if cand.keys == "arrows":
            a = A.presentation.quiver.arrow(key)
            s, t = A.presentation.quiver.src[a], A.presentation.quiver.tgt[a]
        else:
            s, t = A.src[key], A.tgt[key]
        nz = np.flatnonzero(np.asarray(v) != 0)
        if np.any(B.src[nz] != cand.sigma[s]) or np.any(B.tgt[nz] != cand.sigma[t]):
            cand.respects_relations, cand.bijective = False, False
            return False
    if cand.keys == "arrows":
        ok = _presentation_relations_vanish(A, B, cand)
        Phi = linear_map_of(A, B, cand)
        if Phi is None:
            cand.respects_relations, cand.bijective = ok, False
            return False
    else:
        Phi = linear_map_of(A, B, cand)
        if Phi is None:
            cand.respects_relations, cand.bijective = False, False
            return False
        ok = True
    ok = ok and _multiplicative(A, B, Phi)
    bij = rank(F, Phi) == A.dim
    cand.respects_relations, cand.bijective = bool(ok), bool(bij)
    return bool(ok and bij)


def _presentation_relations_vanish(A, B, cand) -> bool:
    p = A.presentation
    Q = p.quiver
    F = B.field
    img = {Q.arrow(k): np.asarray(v) for k, v in cand.images.items()}
    for r in p.generators:
        total = F.zeros(B.dim)
        for path, c in r.terms.items():
            if not path.arrows:
                x = B.e(cand.sigma[path.source])
            else:
                x = img[path.arrows[0]]
                for a in path.arrows[1:]:
                    x = B.mul(x, img[a])
            total = F.vadd(total, F.vmul(x, c))
        if np.any(np.asarray(total) != 0):
            return False
    return True


def _multiplicative(A, B, Phi) -> bool:
    F, n = A.field, A.dim
    # Phi(b_i b_j) = Phi(b_i) Phi(b_j) for all i, j
    left = F.matmul(A.table.reshape(n * n, n), Phi)                     # (n*n, m)
    m = B.dim
    LB = F.matmul(Phi, B.table.reshape(m, m * m)).reshape(n, m, m)      # LB[i] = Lmul-ish
    right = np.stack([F.matmul(Phi, LB[i]) for i in range(n)]).reshape(n * n, m)
    return np.array_equal(np.asarray(left), np.asarray(right))


def candidate_from_elements(A: FiniteDimAlgebra, B: FiniteDimAlgebra, sigma, images) -> MorphismCandidate:
    """Candidate keyed by presentation arrow names, images given as path-algebra
    elements of B's presentation (or vectors)."""
    from .rewrite import normal_form
    vecs = {}
    for name, x in images.items():
        vecs[name] = normal_form(B, x) if hasattr(x, "terms") else np.asarray(x)
    return MorphismCandidate(list(sigma), vecs, "arrows")


# ---- derived operations -------------------------------------------------------------------

def socle_equivalent(A: FiniteDimAlgebra, B: FiniteDimAlgebra, budget: int | None = None) -> IsoVerdict:
    return iso_search(quotient_by_socle(A), quotient_by_socle(B), budget)


def brute_force_iso(A: FiniteDimAlgebra, B: FiniteDimAlgebra, limit: int = 1 << 22) -> bool:
    """Unpruned referee: every graded assignment of generator images, every sigma."""
    F = A.field
    if A.dim != B.dim or A.n_vertices != B.n_vertices:
        return False
    gp = generator_presentation(A)
    RB = radical_socle(B)
    radB = set(B.radical_indices())
    for sigma in itertools.permutations(range(A.n_vertices)):
        spaces = []
        for g in gp.gens:
            cols = [k for k in np.flatnonzero((B.src == sigma[A.src[g]]) & (B.tgt == sigma[A.tgt[g]]))
                    if k in radB]
            spaces.append(cols)
        total = 1
        for c in spaces:
            total *= F.order ** len(c)
        if total > limit:
            raise ValueError("search space too large for the referee")
        for assign in itertools.product(*[itertools.product(F.elements(), repeat=len(c)) for c in spaces]):
            images = {}
            for g, cols, vals in zip(gp.gens, spaces, assign):
                v = F.zeros(B.dim)
                v[cols] = vals
                images[g] = v
            if iso_witness_check(A, B, MorphismCandidate(list(sigma), images, "generators")):
                return True
    return False


def classify_family(algebras: dict, budget: int | None = None):
    """Partition {label: algebra} into isomorphism classes.

    Returns (classes, inconclusive_pairs, verdicts)."""
    labels = list(algebras)
    classes = []
    inconclusive = []
    verdicts = {}
    for lab in labels:
        placed = False
        for cls in classes:
            v = iso_search(algebras[cls[0]], algebras[lab], budget)
            verdicts[(cls[0], lab)] = v.result
            if v.result == "ISO":
                cls.append(lab)
                placed = True
                break
            if v.result == "INCONCLUSIVE":
                inconclusive.append((cls[0], lab))
        if not placed:
            classes.append([lab])
    return classes, inconclusive, verdicts
