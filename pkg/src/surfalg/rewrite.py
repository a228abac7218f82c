"""From a presentation to an explicit finite-dimensional algebra.

The ideal is completed to a rewriting system under the length-then-arrow-id
order (longer paths are larger), so normal words are the least paths that
span the quotient.  Completion never truncates, which means the resulting
basis is the true quotient whenever completion finishes and the set of normal
words is finite.  The degree cap bounds the overlap words examined and the
length of normal words.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass

import numpy as np

from .field import Field
from .linalg import Subspace, left_kernel, row_basis, rref, solve_left
from .presentation import AlgebraElement, Path, Presentation, PresentationError
from .quiver import Quiver

MAX_NORMAL_WORDS = 200_000


class CapExceeded(RuntimeError):
    def __init__(self, kind: str, detail: str = ""):
        self.detail = detail
        self.kind = kind  # "not stabilized" | "stabilized at cap boundary"
        super().__init__(f"degree cap exceeded ({kind}){': ' + detail if detail else ''}")


def _key(w):
    return (len(w), w)


def _neg_key(w):
    return (-len(w), tuple(-x for x in w))


class RewritingSystem:
    """Completion of a set of relations in KQ under deglex order."""

    def __init__(self, Q: Quiver, F: Field, relations, cap: int):
        self.Q = Q
        self.F = F
        self.cap = cap
        self.polys = {}
        self.lm_of = {}
        self.by_lm = {}
        self.lengths = []
        self._len_count = {}
        self._next = 0
        self._pairs = []
        self._seq = 0
        self.stats = {"pairs": 0, "added": 0}
        for r in relations:
            poly = {}
            for p, c in r.terms.items():
                if not p.arrows:
                    raise PresentationError("relations must not contain stationary paths")
                poly[p.arrows] = c
            if poly and max(len(w) for w in poly) > cap:
                raise CapExceeded("not stabilized", "a relation is longer than the cap")
            self._add(poly)
        self._complete()

    # -- reduction ------------------------------------------------------------------

    def _find(self, w):
        by_lm = self.by_lm
        n = len(w)
        for i in range(n):
            for L in self.lengths:
                if i + L > n:
                    break
                gid = by_lm.get(w[i:i + L])
                if gid is not None:
                    return i, L, gid
        return None

    def reduce(self, poly: dict) -> dict:
        F = self.F
        work = {w: c for w, c in poly.items() if c != 0}
        heap = [(_neg_key(w), w) for w in work]
        heapq.heapify(heap)
        out = {}
        while heap:
            _, w = heapq.heappop(heap)
            c = work.pop(w, None)
            if c is None or c == 0:
                continue
            hit = self._find(w)
            if hit is None:
                out[w] = c
                continue
            i, L, gid = hit
            pre, post = w[:i], w[i + L:]
            lm = self.lm_of[gid]
            for x, cx in self.polys[gid].items():
                if x == lm:
                    continue
                nw = pre + x + post
                old = work.get(nw)
                val = F.sub(F.zero if old is None else old, F.mul(c, cx))
                if old is None:
                    heapq.heappush(heap, (_neg_key(nw), nw))
                work[nw] = val
        return out

    # -- completion -----------------------------------------------------------------

    def _register_len(self, L, delta):
        cnt = self._len_count.get(L, 0) + delta
        if cnt:
            self._len_count[L] = cnt
        else:
            self._len_count.pop(L, None)
        self.lengths = sorted(self._len_count)

    def _remove(self, gid):
        lm = self.lm_of.pop(gid)
        del self.by_lm[lm]
        self._register_len(len(lm), -1)
        return self.polys.pop(gid)

    def _add(self, poly: dict):
        F = self.F
        r = self.reduce(poly)
        if not r:
            return
        lm = max(r, key=_key)
        if len(lm) > self.cap:
            raise CapExceeded("not stabilized", f"leading word of length {len(lm)}")
        inv = F.inv(r[lm])
        if inv != F.one:
            r = {w: F.mul(c, inv) for w, c in r.items()}
        gid = self._next
        self._next += 1
        L = len(lm)
        displaced = [g for g, u in self.lm_of.items() if len(u) >= L and _contains(u, lm)]
        old = [self._remove(g) for g in displaced]
        self.polys[gid] = r
        self.lm_of[gid] = lm
        self.by_lm[lm] = gid
        self._register_len(L, +1)
        self.stats["added"] += 1
        for other, u in list(self.lm_of.items()):
            self._push_overlaps(gid, lm, other, u)
            if other != gid:
                self._push_overlaps(other, u, gid, lm)
        for p in old:
            self._add(p)

    def _push_overlaps(self, i, u, j, v):
        for k in range(1, min(len(u), len(v))):
            if u[-k:] == v[:k]:
                length = len(u) + len(v) - k
                self._seq += 1
                heapq.heappush(self._pairs, (length, self._seq, i, j, k))

    def _complete(self):
        F = self.F
        while self._pairs:
            length, _, i, j, k = heapq.heappop(self._pairs)
            if i not in self.polys or j not in self.polys:
                continue
            if length > self.cap:
                raise CapExceeded("not stabilized", f"overlap of length {length}")
            self.stats["pairs"] += 1
            u, v = self.lm_of[i], self.lm_of[j]
            left, right = u[:-k], v[k:]
            s = {}
            for w, c in self.polys[i].items():
                s[w + right] = c
            for w, c in self.polys[j].items():
                nw = left + w
                s[nw] = F.sub(s.get(nw, F.zero), c)
            self._add(s)

    # -- normal words ---------------------------------------------------------------

    def normal_words(self):
        Q = self.Q
        words = []
        stack = [(a,) for a in range(Q.n_arrows)]
        stack.reverse()
        by_lm = self.by_lm
        while stack:
            w = stack.pop()
            n = len(w)
            if any(by_lm.get(w[n - L:]) is not None for L in self.lengths if L <= n):
                continue
            if n >= self.cap:
                raise CapExceeded("stabilized at cap boundary", f"normal word of length {n}")
            words.append(w)
            if len(words) > MAX_NORMAL_WORDS:
                raise CapExceeded("stabilized at cap boundary", "too many normal words")
            t = Q.tgt[w[-1]]
            for a in reversed(Q.out_arrows(t)):
                stack.append(w + (a,))
        words.sort(key=_key)
        return words


def _contains(u, v):
    L = len(v)
    for i in range(len(u) - L + 1):
        if u[i:i + L] == v:
            return True
    return False


class FiniteDimAlgebra:
    """Basic algebra given by a graded basis and structure constants.

    ``table[i, j]`` is the coordinate vector of b_i * b_j.  Basis element i
    lies in e_{src[i]} A e_{tgt[i]}.  ``idempotents[v]`` is the index of e_v.
    """

    def __init__(self, field: Field, labels, src, tgt, table, idempotents, vertex_names,
                 presentation: Presentation | None = None, arrow_matrices=None, words=None):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.src = np.array(src, dtype=np.int64)
        self.tgt = np.array(tgt, dtype=np.int64)
        self.table = table
        self.idempotents = list(idempotents)
        self.vertex_names = list(vertex_names)
        self.presentation = presentation
        self.arrow_matrices = arrow_matrices
        self.words = words
        self.unit = field.zeros(self.dim)
        for i in self.idempotents:
            self.unit[i] = field.one
        self._rad = None

    @property
    def n_vertices(self) -> int:
        return len(self.idempotents)

    def basis_vector(self, i):
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    def e(self, v: int):
        return self.basis_vector(self.idempotents[v])

    def rmul_matrix(self, y):
        """Matrix R with x @ R = x * y."""
        F, n = self.field, self.dim
        T = self.table.transpose(0, 2, 1).reshape(n * n, n)
        return F.matmul(T, y).reshape(n, n)

    def lmul_matrix(self, x):
        """Matrix L with y @ L = x * y."""
        F, n = self.field, self.dim
        return F.matmul(x, self.table.reshape(n, n * n)).reshape(n, n)

    def mul(self, x, y):
        return self.field.matmul(x, self.rmul_matrix(y))

    def is_zero(self, x) -> bool:
        return not np.any(np.asarray(x) != 0)

    def grade_mask(self, i=None, j=None):
        m = np.ones(self.dim, dtype=bool)
        if i is not None:
            m &= self.src == i
        if j is not None:
            m &= self.tgt == j
        return m

    def radical_indices(self):
        return [k for k in range(self.dim) if k not in set(self.idempotents)]

    def arrow_vector(self, name):
        """Coordinates of a presentation arrow."""
        Q = self.presentation.quiver
        a = Q.arrow(name)
        return self.field.matmul(self.e(Q.src[a]), self.arrow_matrices[a])

    def element(self, x: AlgebraElement):
        return normal_form(self, x)

    def label_of(self, vec) -> str:
        F = self.field
        parts = []
        for k in np.flatnonzero(np.asarray(vec) != 0):
            c = vec[k]
            parts.append(self.labels[k] if c == F.one else f"({F.format(c)})*{self.labels[k]}")
        return " + ".join(parts) if parts else "0"

    def check_axioms(self) -> bool:
        """Exhaustive associativity, unit and grading checks."""
        F, n, T = self.field, self.dim, self.table
        flat = T.reshape(n * n, n)
        for i in range(n):
            lhs = F.matmul(T[i], T.reshape(n, n * n)).reshape(n, n, n)  # (b_i b_j) b_k
            rhs = F.matmul(flat, T[i]).reshape(n, n, n)                  # b_i (b_j b_k)
            if not np.array_equal(np.asarray(lhs), np.asarray(rhs)):
                return False
        u = self.unit
        for i in range(n):
            b = self.basis_vector(i)
            if not np.array_equal(self.mul(u, b), b) or not np.array_equal(self.mul(b, u), b):
                return False
        for i in range(n):
            for j in range(n):
                v = T[i, j]
                nz = np.flatnonzero(np.asarray(v) != 0)
                if nz.size == 0:
                    continue
                if self.tgt[i] != self.src[j]:
                    return False
                if np.any(self.src[nz] != self.src[i]) or np.any(self.tgt[nz] != self.tgt[j]):
                    return False
        return True

    def __repr__(self):
        return f"FiniteDimAlgebra(dim={self.dim}, vertices={self.n_vertices}, field={self.field.name()})"


def default_cap(p: Presentation) -> int:
    if p.tq is not None and p.weights is not None:
        w = p.weights
        return 2 * max(w.mn(a) for a in range(p.tq.quiver.n_arrows)) + 4
    longest = max((len(q) for r in p.generators for q in r.terms), default=1)
    return 2 * longest + 4


def quotient_algebra(p: Presentation, degree_cap: int | None = None) -> FiniteDimAlgebra:
    cap = default_cap(p) if degree_cap is None else int(degree_cap)
    if cap < 2:
        raise ValueError("degree cap must be at least 2")
    Q, F = p.quiver, p.field
    rs = RewritingSystem(Q, F, p.generators, cap)
    words = rs.normal_words()
    nv = Q.n_vertices
    labels = ["e" + Q.vertices[v] for v in range(nv)] + ["*".join(Q.arrow_names[a] for a in w) for w in words]
    src = list(range(nv)) + [Q.src[w[0]] for w in words]
    tgt = list(range(nv)) + [Q.tgt[w[-1]] for w in words]
    index = {w: nv + k for k, w in enumerate(words)}
    n = nv + len(words)

    def vec(poly):
        v = F.zeros(n)
        for w, c in poly.items():
            v[index[w]] = c
        return v

    # right multiplication by each arrow
    M = []
    for a in range(Q.n_arrows):
        Ma = F.zeros((n, n))
        for i in range(n):
            if tgt[i] != Q.src[a]:
                continue
            base = () if i < nv else words[i - nv]
            Ma[i] = vec(rs.reduce({base + (a,): F.one}))
        M.append(Ma)
    T = F.zeros((n, n, n))
    for v in range(nv):
        for i in range(n):
            if tgt[i] == v:
                T[i, v, i] = F.one
    for k, w in enumerate(words):
        prefix = index[w[:-1]] if len(w) > 1 else Q.src[w[0]]
        T[:, nv + k, :] = F.matmul(T[:, prefix, :], M[w[-1]])
    A = FiniteDimAlgebra(F, labels, src, tgt, T, list(range(nv)), Q.vertices, p, M, words)
    A.rewriting_stats = dict(rs.stats, cap=cap, rules=len(rs.polys))
    return A


def normal_form(A: FiniteDimAlgebra, x: AlgebraElement):
    F = A.field
    out = F.zeros(A.dim)
    for path, c in x.terms.items():
        v = A.e(path.source)
        for a in path.arrows:
            v = F.matmul(v, A.arrow_matrices[a])
        out = F.vadd(out, F.vmul(v, c))
    return out


# ---- radical, socle, forms --------------------------------------------------------

@dataclass
class RadicalData:
    powers: list          # Subspace for rad^0 = A, rad^1, ..., last is 0
    socle: Subspace
    omega: dict           # vertex -> socle vector of e_v A (only when 1-dimensional)
    socle_dims: dict      # vertex -> dim soc(e_v A)
    generators: list      # basis indices of chosen arrow generators (complement of rad^2 in rad)

    @property
    def loewy_length(self) -> int:
        return len(self.powers) - 1

    def layer_dims(self):
        return [self.powers[k].rank - self.powers[k + 1].rank for k in range(len(self.powers) - 1)]


def _span_blocks(F, n, blocks):
    S = Subspace(F, n)
    for blk in blocks:
        blk = np.asarray(blk).reshape(-1, n)
        if blk.size == 0:
            continue
        rows = blk[np.any(blk != 0, axis=1)]
        if rows.shape[0] == 0:
            continue
        S.R, S.pivots = rref(F, np.vstack([S.R, rows]))
    return S


def radical_socle(A: FiniteDimAlgebra) -> RadicalData:
    if A._rad is not None:
        return A._rad
    F, n, T = A.field, A.dim, A.table
    rad = A.radical_indices()
    radset = set(rad)
    rad1 = Subspace(F, n, F.eye(n)[rad]) if rad else Subspace(F, n)
    # rad^2 from products of radical basis elements
    rad2 = _span_blocks(F, n, (T[i, rad, :] for i in rad))
    # generators: radical basis elements independent modulo rad^2, in basis order
    gens = []
    span = Subspace(F, n, rad2.R)
    for k in rad:
        if span.add(A.basis_vector(k)):
            gens.append(k)
    if span.rank != len(rad):
        raise ValueError("radical is not spanned by the chosen basis elements")
    powers = [Subspace(F, n, F.eye(n)), rad1]
    cur = rad1
    nxt = rad2
    while True:
        if nxt.rank == cur.rank and cur.rank > 0:
            raise ValueError("radical is not nilpotent")
        powers.append(nxt)
        if nxt.rank == 0:
            break
        cur = nxt
        nxt = _span_blocks(F, n, (F.matmul(cur.R, T[:, g, :]) for g in gens))
    if rad1.rank == 0:
        powers = [powers[0], rad1]
    # right socle: x with x * g = 0 for all generators
    if gens:
        big = np.concatenate([T[:, g, :] for g in gens], axis=1)
        soc_rows = left_kernel(F, big)
    else:
        soc_rows = F.eye(n)
    socle = Subspace(F, n, soc_rows)
    omega, dims = {}, {}
    for v in range(A.n_vertices):
        idx = np.flatnonzero(A.src == v)
        if gens:
            sub = np.concatenate([T[idx][:, g, :] for g in gens], axis=1)
            K = left_kernel(F, sub)
        else:
            K = F.eye(len(idx))
        dims[v] = K.shape[0]
        if K.shape[0] == 1:
            vecf = F.zeros(n)
            vecf[idx] = K[0]
            omega[v] = vecf
    data = RadicalData(powers, socle, omega, dims, gens)
    A._rad = data
    return data


def symmetrizing_form(A: FiniteDimAlgebra, R: RadicalData | None = None):
    """A symmetric nondegenerate form phi, or None.

    phi annihilates all commutators.  When possible phi(omega_v) = 1 for every
    vertex; otherwise the socle values are the first all-nonzero vector the
    commutator conditions allow (they can tie omega_u to omega_v by a scalar).
    """
    F, n, T = A.field, A.dim, A.table
    R = R or radical_socle(A)
    if len(R.omega) != A.n_vertices:
        return None
    comm = _span_blocks(F, n, (F.vsub(T[i, i + 1:, :], T[i + 1:, i, :]) for i in range(n)))
    Om = np.array([R.omega[v] for v in range(A.n_vertices)])
    M = np.concatenate([comm.R.T, Om.T], axis=1)
    zero = F.zeros(comm.rank)
    phi = solve_left(F, M, np.concatenate([zero, F.array([F.one] * A.n_vertices)]))
    if phi is None:
        L = left_kernel(F, comm.R.T) if comm.rank else F.eye(n)
        U = row_basis(F, F.matmul(L, Om.T))
        for t in _nonzero_combinations(F, U):
            phi = solve_left(F, M, np.concatenate([zero, t]))
            break
    if phi is None:
        return None
    G = gram_matrix(A, phi)
    if len(rref(F, G)[1]) != n:
        return None
    if not np.array_equal(np.asarray(G), np.asarray(G.T)):
        return None
    return phi


def _nonzero_combinations(F, U):
    """Combinations of the rows of U with every entry nonzero."""
    if U.shape[0] == 0:
        return
    if F.kind == "rational":
        coeffs = itertools.product(range(1, 6), repeat=U.shape[0])
    else:
        coeffs = itertools.product(F.elements(), repeat=U.shape[0])
    for c in coeffs:
        cv = np.array([F.coerce(x) for x in c] if F.kind == "rational" else list(c), dtype=F.dtype)
        t = F.matmul(cv.reshape(1, -1), U).reshape(-1)
        if all(x != 0 for x in t):
            yield t


def gram_matrix(A: FiniteDimAlgebra, phi):
    n = A.dim
    return A.field.matmul(A.table.reshape(n * n, n), phi).reshape(n, n)


def dual_basis(A: FiniteDimAlgebra, phi):
    """Rows D with phi(b_i * D_j) = delta_ij."""
    from .linalg import inverse
    Ginv = inverse(A.field, gram_matrix(A, phi))
    if Ginv is None:
        raise ValueError("degenerate form")
    return np.array(Ginv.T, copy=True)


def cartan_matrix(A: FiniteDimAlgebra):
    nv = A.n_vertices
    C = np.zeros((nv, nv), dtype=np.int64)
    for k in range(A.dim):
        C[A.src[k], A.tgt[k]] += 1
    return C


def quotient_by_socle(A: FiniteDimAlgebra, R: RadicalData | None = None) -> FiniteDimAlgebra:
    R = R or radical_socle(A)
    return quotient_by_ideal(A, R.socle)


def quotient_by_ideal(A: FiniteDimAlgebra, ideal: Subspace) -> FiniteDimAlgebra:
    F, n, T = A.field, A.dim, A.table
    piv = list(ideal.pivots)
    keep = [k for k in range(n) if k not in set(piv)]
    m = len(keep)
    V = np.array(T[np.ix_(keep, keep)].reshape(m * m, n), copy=True)
    for r, p in enumerate(piv):
        col = V[:, p].copy()
        if np.any(col != 0):
            V = F.vsub(V, F.vmul(col[:, None], ideal.R[r][None, :]))
    V = V[:, keep].reshape(m, m, m)
    pos = {k: i for i, k in enumerate(keep)}
    idem = [pos[i] for i in A.idempotents if i in pos]
    verts = [v for v, i in enumerate(A.idempotents) if i in pos]
    src = [verts.index(A.src[k]) if A.src[k] in verts else -1 for k in keep]
    tgt = [verts.index(A.tgt[k]) if A.tgt[k] in verts else -1 for k in keep]
    B = FiniteDimAlgebra(F, [A.labels[k] for k in keep], src, tgt, V, idem,
                         [A.vertex_names[v] for v in verts])
    B.parent_indices = keep
    return B


def idempotent_algebra(A: FiniteDimAlgebra, vertices) -> FiniteDimAlgebra:
    vs = sorted(set(int(v) for v in vertices))
    if not vs:
        raise ValueError("vertex subset must be nonempty")
    keep = [k for k in range(A.dim) if A.src[k] in vs and A.tgt[k] in vs]
    pos = {v: i for i, v in enumerate(vs)}
    T = A.table[np.ix_(keep, keep, keep)]
    idx = {k: i for i, k in enumerate(keep)}
    B = FiniteDimAlgebra(A.field, [A.labels[k] for k in keep], [pos[A.src[k]] for k in keep],
                         [pos[A.tgt[k]] for k in keep], np.array(T, copy=True),
                         [idx[A.idempotents[v]] for v in vs], [A.vertex_names[v] for v in vs])
    B.parent_indices = keep
    return B
