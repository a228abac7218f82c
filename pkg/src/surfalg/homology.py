"""Right modules, minimal projective covers and syzygy orbits.

Modules use row vectors: m . b_k = m @ action[k].  Every module basis vector
is homogeneous, i.e. m . e_v = m for a single vertex v (its weight).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .linalg import Subspace, left_kernel, rank, rref
from .rewrite import FiniteDimAlgebra, radical_socle

EXHAUSTIVE_HOM_POINTS = 1 << 16
RANDOM_HOM_TRIES = 64


class RightModule:
    def __init__(self, A: FiniteDimAlgebra, action, weights, name: str = ""):
        self.A = A
        self.action = action
        self.weights = np.array(weights, dtype=np.int64)
        self.dim = len(self.weights)
        self.name = name

    def dimension_vector(self):
        return [int(np.sum(self.weights == v)) for v in range(self.A.n_vertices)]

    def generator_actions(self):
        return [self.action[g] for g in radical_socle(self.A).generators]

    def check_axioms(self) -> bool:
        """Unit, idempotent grading and compatibility with the multiplication table."""
        A, F, d = self.A, self.A.field, self.dim
        unit = F.zeros((d, d))
        for i in A.idempotents:
            unit = F.vadd(unit, self.action[i])
        if not np.array_equal(np.asarray(unit), np.asarray(F.eye(d))):
            return False
        for v, i in enumerate(A.idempotents):
            expect = F.zeros((d, d))
            for k in np.flatnonzero(self.weights == v):
                expect[k, k] = F.one
            if not np.array_equal(np.asarray(self.action[i]), np.asarray(expect)):
                return False
        n = A.dim
        flat = self.action.reshape(n, d * d)
        for i in range(n):
            prod = np.stack([F.matmul(self.action[i], self.action[j]) for j in range(n)])
            rhs = F.matmul(A.table[i], flat).reshape(n, d, d)
            if not np.array_equal(np.asarray(prod), np.asarray(rhs)):
                return False
        return True

    def __repr__(self):
        return f"RightModule({self.name or '?'}, dim={self.dim}, dimvec={self.dimension_vector()})"


def simple_module(A: FiniteDimAlgebra, i: int) -> RightModule:
    F = A.field
    act = F.zeros((A.dim, 1, 1))
    act[A.idempotents[i], 0, 0] = F.one
    return RightModule(A, act, [i], f"S{A.vertex_names[i]}")


def _projective_sum(A: FiniteDimAlgebra, vertices):
    """Action and weights of the direct sum of e_v A over the listed vertices."""
    F = A.field
    blocks = [np.flatnonzero(A.src == v) for v in vertices]
    d = sum(len(b) for b in blocks)
    act = F.zeros((A.dim, d, d))
    weights = []
    off = 0
    tops = []
    for v, idx in zip(vertices, blocks):
        m = len(idx)
        sub = A.table[np.ix_(idx, np.arange(A.dim), idx)]  # (m, n, m)
        act[:, off:off + m, off:off + m] = sub.transpose(1, 0, 2)
        weights.extend(int(x) for x in A.tgt[idx])
        tops.append(off + int(np.flatnonzero(idx == A.idempotents[v])[0]))
        off += m
    return act, weights, blocks, tops


def projective_module(A: FiniteDimAlgebra, i: int) -> RightModule:
    act, weights, _, _ = _projective_sum(A, [i])
    return RightModule(A, act, weights, f"P{A.vertex_names[i]}")


def submodule(M: RightModule, rows, name: str = "") -> RightModule:
    """Submodule spanned by homogeneous rows closed under the action."""
    F = M.A.field
    pieces, weights = [], []
    for v in range(M.A.n_vertices):
        sel = [r for r in rows if np.any(np.asarray(r) != 0) and _weight_of(M, r) == v]
        if not sel:
            continue
        R, _ = rref(F, np.array(sel))
        pieces.append(R)
        weights.extend([v] * R.shape[0])
    return _module_on_rows(M, np.vstack(pieces) if pieces else F.zeros((0, M.dim)), weights, name)


def _weight_of(M, r):
    nz = np.flatnonzero(np.asarray(r) != 0)
    ws = set(int(x) for x in M.weights[nz])
    if len(ws) != 1:
        raise ValueError("vector is not homogeneous")
    return ws.pop()


def _module_on_rows(M: RightModule, B, weights, name=""):
    """Module structure on the span of B, which must be closed and whose rows
    have identity columns at their pivots (block reduced echelon form)."""
    F = M.A.field
    k = B.shape[0]
    if k == 0:
        return RightModule(M.A, F.zeros((M.A.dim, 0, 0)), [], name)
    piv = []
    for r in range(k):
        nz = np.flatnonzero(np.asarray(B[r]) != 0)
        piv.append(int(nz[0]))
    n = M.A.dim
    img = F.matmul(B, M.action.transpose(1, 0, 2).reshape(M.dim, n * M.dim)).reshape(k, n, M.dim)
    act = np.ascontiguousarray(img[:, :, piv].transpose(1, 0, 2))
    return RightModule(M.A, act, weights, name)


def cyclic_module(A: FiniteDimAlgebra, x, name: str = "") -> RightModule:
    """The right ideal xA inside e_v A for a vector x in e_v A."""
    F = A.field
    nz = np.flatnonzero(np.asarray(x) != 0)
    srcs = set(int(s) for s in A.src[nz])
    if len(srcs) != 1:
        raise ValueError("element must lie in a single e_v A")
    v = srcs.pop()
    P = projective_module(A, v)
    idx = np.flatnonzero(A.src == v)
    xv = np.asarray(x)[idx]
    rows = [F.matmul(xv, P.action[k]) for k in range(A.dim)]
    return submodule(P, rows, name)


@dataclass
class ResolutionStep:
    cover: RightModule
    map: object                      # rows: cover basis, columns: module basis
    kernel: RightModule
    multiplicities: list             # cover multiplicities per vertex
    top_vertices: list = dc_field(default_factory=list)
    minimal: bool = True
    surjective: bool = True


def projective_cover(M: RightModule) -> ResolutionStep:
    A, F = M.A, M.A.field
    if M.dim == 0:
        empty = RightModule(A, F.zeros((A.dim, 0, 0)), [])
        return ResolutionStep(empty, F.zeros((0, 0)), empty, [0] * A.n_vertices)
    gens = radical_socle(A).generators
    rad_rows = np.vstack([M.action[g] for g in gens]) if gens else F.zeros((0, M.dim))
    tops = []
    for v in range(A.n_vertices):
        ids = np.flatnonzero(M.weights == v)
        if ids.size == 0:
            continue
        S = Subspace(F, M.dim, rad_rows)
        for t in ids:
            e = F.zeros(M.dim)
            e[t] = F.one
            if S.add(e):
                tops.append((v, int(t)))
    verts = [v for v, _ in tops]
    act, weights, blocks, top_pos = _projective_sum(A, verts)
    P = RightModule(A, act, weights, "P(" + (M.name or "M") + ")")
    pi = np.vstack([M.action[idx, t, :] for (v, t), idx in zip(tops, blocks)])
    K_rows, K_w = [], []
    for v in range(A.n_vertices):
        ids = np.flatnonzero(P.weights == v)
        if ids.size == 0:
            continue
        Kv = left_kernel(F, pi[ids])
        if Kv.shape[0]:
            rows = F.zeros((Kv.shape[0], P.dim))
            rows[:, ids] = Kv
            R, _ = rref(F, rows)
            K_rows.append(R)
            K_w.extend([v] * R.shape[0])
    B = np.vstack(K_rows) if K_rows else F.zeros((0, P.dim))
    K = _module_on_rows(P, B, K_w, "Omega(" + (M.name or "M") + ")")
    minimal = not (B.shape[0] and np.any(np.asarray(B[:, top_pos]) != 0))
    surjective = rank(F, pi) == M.dim
    mult = [verts.count(v) for v in range(A.n_vertices)]
    return ResolutionStep(P, pi, K, mult, verts, minimal, surjective)


def syzygy(M: RightModule) -> RightModule:
    return projective_cover(M).kernel


def top_multiplicities(M: RightModule):
    A, F = M.A, M.A.field
    gens = radical_socle(A).generators
    rad_rows = np.vstack([M.action[g] for g in gens]) if gens else F.zeros((0, M.dim))
    out = []
    for v in range(A.n_vertices):
        ids = np.flatnonzero(M.weights == v)
        sub = rad_rows[:, ids] if ids.size else F.zeros((0, 0))
        out.append(int(ids.size - (rank(F, sub) if sub.size else 0)))
    return out


# ---- module isomorphism ---------------------------------------------------------------

def hom_space(M: RightModule, N: RightModule):
    """Basis of Hom_A(M, N) as a list of dM x dN matrices."""
    F = M.A.field
    pairs = [(i, j) for i in range(M.dim) for j in range(N.dim) if M.weights[i] == N.weights[j]]
    if not pairs:
        return []
    gens = radical_socle(M.A).generators
    cols = []
    for g in gens:
        RM, RN = M.action[g], N.action[g]
        # coefficient of unknown X[i,j] in (RM X - X RN)[a, b]
        C = F.zeros((len(pairs), M.dim * N.dim))
        for u, (i, j) in enumerate(pairs):
            blk = F.zeros((M.dim, N.dim))
            blk[:, j] = F.vadd(blk[:, j], RM[:, i])
            blk[i, :] = F.vsub(blk[i, :], RN[j, :])
            C[u] = blk.reshape(-1)
        cols.append(C)
    if cols:
        K = left_kernel(F, np.concatenate(cols, axis=1))
    else:
        K = F.eye(len(pairs))
    out = []
    for row in K:
        X = F.zeros((M.dim, N.dim))
        for u, (i, j) in enumerate(pairs):
            X[i, j] = row[u]
        out.append(X)
    return out


@dataclass
class ModuleIsoResult:
    isomorphic: bool
    method: str           # "invariants" | "exhaustive" | "random"
    witness: object = None


def module_iso(M: RightModule, N: RightModule, seed: int = 0) -> ModuleIsoResult:
    F = M.A.field
    if M.dim != N.dim or M.dimension_vector() != N.dimension_vector():
        return ModuleIsoResult(False, "invariants")
    if M.dim == 0:
        return ModuleIsoResult(True, "invariants", F.zeros((0, 0)))
    if top_multiplicities(M) != top_multiplicities(N):
        return ModuleIsoResult(False, "invariants")
    H = hom_space(M, N)
    if not H:
        return ModuleIsoResult(False, "exhaustive")
    d = M.dim
    if F.kind != "rational" and F.order ** len(H) <= EXHAUSTIVE_HOM_POINTS:
        for coeffs in itertools.product(F.elements(), repeat=len(H)):
            if not any(coeffs):
                continue
            X = _combo(F, H, coeffs)
            if rank(F, X) == d:
                return ModuleIsoResult(True, "exhaustive", X)
        return ModuleIsoResult(False, "exhaustive")
    rng = np.random.default_rng(seed)
    for _ in range(RANDOM_HOM_TRIES):
        if F.kind == "rational":
            coeffs = [F.coerce(int(x)) for x in rng.integers(-3, 4, len(H))]
        else:
            coeffs = [int(x) for x in rng.integers(0, F.order, len(H))]
        X = _combo(F, H, coeffs)
        if rank(F, X) == d:
            return ModuleIsoResult(True, "random", X)
    return ModuleIsoResult(False, "random")


def _combo(F, H, coeffs):
    X = F.zeros(H[0].shape)
    for c, h in zip(coeffs, H):
        if c != 0:
            X = F.vadd(X, F.vmul(h, c))
    return X


# ---- syzygy orbits --------------------------------------------------------------------

@dataclass
class OrbitStep:
    step: int
    dim: int
    cover: list           # multiplicities of the cover of the previous term
    iso_to_start: bool
    method: str = ""

    def to_json(self):
        return {"step": self.step, "dim": self.dim, "cover": list(self.cover),
                "iso_to_start": self.iso_to_start, "method": self.method}


def syzygy_orbit(A: FiniteDimAlgebra, M: RightModule, max_steps: int = 8):
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    out = []
    cur = M
    for n in range(1, max_steps + 1):
        step = projective_cover(cur)
        if not (step.minimal and step.surjective):
            raise RuntimeError("projective cover failed its minimality or surjectivity check")
        cur = step.kernel
        res = module_iso(cur, M)
        out.append(OrbitStep(n, cur.dim, step.multiplicities, res.isomorphic, res.method))
        if cur.dim == 0:
            break
    return out


def period(orbit) -> int | None:
    for s in orbit:
        if s.iso_to_start:
            return s.step
    return None
