"""Dense linear algebra over GF(p^n) on encoded integer arrays.

Products go through floating-point BLAS on coefficient planes; the plane
products are exact as long as every partial sum stays below the mantissa
limit, which is checked before choosing float32 or float64.  Row reduction is
blocked by column panels so that almost all work is a matrix product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import FieldCtx

PANEL = 256
MIN_PANEL = 16


def zeros(rows, cols):
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n):
    return np.eye(n, dtype=np.int64)


def _float_dtype(bound):
    if bound < 2**24:
        return np.float32
    if bound < 2**53:
        return np.float64
    return None


def _int_matmul_mod(a, b, p, k):
    """Exact (a @ b) mod p for non-negative integer matrices with entries < p."""
    dt = _float_dtype((p - 1) ** 2 * max(k, 1))
    if dt is None:
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        step = 2**52 // ((p - 1) ** 2)
        for s in range(0, k, step):
            out = (out + _int_matmul_mod(a[:, s:s + step], b[s:s + step], p, min(step, k - s))) % p
        return out
    c = a.astype(dt) @ b.astype(dt)
    return np.fmod(c, p).astype(np.int64)


def matmul(F: FieldCtx, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    m, k = a.shape
    n = b.shape[1]
    if m == 0 or n == 0 or k == 0:
        return zeros(m, n)
    if F.n == 1:
        return _int_matmul_mod(a, b, F.p, k)
    # out_i = sum_a A_a @ C_{a,i} with C_{a,i} = sum_b red[i, a+b] B_b, which
    # folds the reduction modulo the defining polynomial into one product
    nn, p = F.n, F.p
    dt = _float_dtype(nn * (p - 1) ** 2 * k) or np.float64
    red = F.reduction_matrix
    pb = F.planes(b)
    blocks = np.empty((nn * k, nn * n), dtype=dt)
    for a_ in range(nn):
        for i in range(nn):
            acc = np.zeros((k, n), dtype=np.int64)
            for b_ in range(nn):
                if red[i, a_ + b_]:
                    acc += red[i, a_ + b_] * pb[b_]
            blocks[a_ * k:(a_ + 1) * k, i * n:(i + 1) * n] = acc % p
    left = np.concatenate(F.float_planes(a, dt), axis=1)
    prod = np.fmod(left @ blocks, p)
    out = np.zeros((m, n), dtype=dt)
    for i in reversed(range(nn)):
        out *= p
        out += prod[:, i * n:(i + 1) * n]
    return out.astype(np.int64)


def matvec(F, a, v):
    return matmul(F, a, np.asarray(v, dtype=np.int64).reshape(-1, 1)).ravel()


def add(F, a, b):
    return F.add(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))


def sub(F, a, b):
    return F.sub(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))


def scale(F, c, a):
    return F.mul(np.asarray(a, dtype=np.int64), int(c))


def kron(F, a, b):
    """Kronecker product; basis vector i (x) j sits at flat index i*dim(b) + j."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = F.mul(a[:, None, :, None], b[None, :, None, :])
    return out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


def block_diag(mats):
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    out = zeros(rows, cols)
    r = c = 0
    for m in mats:
        out[r:r + m.shape[0], c:c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def mat_power(F, a, e):
    result = identity(a.shape[0])
    base = a
    while e > 0:
        if e & 1:
            result = matmul(F, result, base)
        e >>= 1
        if e:
            base = matmul(F, base, base)
    return result


# --- row reduction ----------------------------------------------------------

def _panel_pivots(F, panel):
    """Pivot rows/cols of a tall panel by plain elimination (panel is consumed)."""
    h, w = panel.shape
    used = np.zeros(h, dtype=bool)
    prow, pcol = [], []
    for c in range(w):
        col = panel[:, c]
        cand = np.nonzero((col != 0) & ~used)[0]
        if cand.size == 0:
            continue
        r = cand[0]
        used[r] = True
        prow.append(int(r))
        pcol.append(c)
        if c + 1 == w:
            break
        rest = np.nonzero(~used & (col != 0))[0]
        if rest.size:
            piv = panel[r, c + 1:]
            f = F.mul(col[rest], int(F.inv(int(col[r]))))
            panel[np.ix_(rest, np.arange(c + 1, w))] = F.sub(
                panel[rest, c + 1:], F.mul(f[:, None], piv[None, :]))
            panel[rest, c] = 0
    return prow, pcol


def _small_inverse(F, s):
    """Inverse of an invertible pivot block by Gauss-Jordan."""
    k = s.shape[0]
    if k > 2 * MIN_PANEL:
        aug = np.concatenate([s, identity(k)], axis=1)
        piv, _ = _eliminate(F, aug, max(MIN_PANEL, k // 4), True)
        if len(piv) < k or piv[-1] >= k:
            raise ZeroDivisionError("singular pivot block")
        return aug[:, k:]
    aug = np.concatenate([s.copy(), identity(k)], axis=1)
    for c in range(k):
        nz = np.nonzero(aug[c:, c])[0]
        if nz.size == 0:
            raise ZeroDivisionError("singular pivot block")
        r = c + nz[0]
        if r != c:
            aug[[c, r]] = aug[[r, c]]
        aug[c] = F.mul(aug[c], int(F.inv(int(aug[c, c]))))
        others = np.nonzero(aug[:, c])[0]
        others = others[others != c]
        if others.size:
            aug[others] = F.sub(aug[others], F.mul(aug[others, c][:, None], aug[c][None, :]))
    return aug[:, k:]


def _eliminate(F, M, panel, reduced):
    """In-place blocked elimination; returns (pivot columns, row order)."""
    rows, cols = M.shape
    order = np.arange(rows)
    pivots: list[int] = []
    top = 0
    for c0 in range(0, cols, panel):
        if top == rows:
            break
        c1 = min(cols, c0 + panel)
        block = M[top:, c0:c1].copy()
        if c1 - c0 > 2 * MIN_PANEL:
            sub_piv, sub_order = _eliminate(F, block, max(MIN_PANEL, (c1 - c0) // 4), False)
            prow, pcol = list(sub_order[:len(sub_piv)]), sub_piv
        else:
            prow, pcol = _panel_pivots(F, block)
        if not prow:
            continue
        k = len(prow)
        chosen = top + np.array(prow)
        rest = np.setdiff1d(np.arange(top, rows), chosen, assume_unique=True)
        new = np.concatenate([chosen, rest])
        M[top:] = M[new]
        order[top:] = order[new]
        pc = c0 + np.array(pcol)
        sinv = _small_inverse(F, M[top:top + k][:, pc])
        M[top:top + k, c0:] = matmul(F, sinv, M[top:top + k, c0:])
        below = np.arange(top + k, rows)
        others = np.concatenate([np.arange(0, top), below]) if reduced else below
        if others.size:
            coef = M[np.ix_(others, pc)]
            nz = np.nonzero(coef.any(axis=1))[0]
            if nz.size:
                sel = others[nz]
                M[sel, c0:] = F.sub(M[sel, c0:], matmul(F, coef[nz], M[top:top + k, c0:]))
        pivots.extend(int(c) for c in pc)
        top += k
    return pivots, order


def rref(F: FieldCtx, m: np.ndarray, panel: int = PANEL):
    """Reduced row echelon form and pivot columns (first nonzero in scan order)."""
    M = np.array(m, dtype=np.int64, copy=True)
    pivots, _ = _eliminate(F, M, panel, True)
    return M, pivots


def rank(F, m) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    if m.shape[0] > m.shape[1]:
        m = m.T
    M = np.array(m, dtype=np.int64, copy=True)
    return len(_eliminate(F, M, PANEL, False)[0])


def kernel_basis(F, m) -> np.ndarray:
    """Columns spanning the right null space, one per free column."""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1]
    R, piv = rref(F, m)
    free = [c for c in range(cols) if c not in set(piv)]
    K = zeros(cols, len(free))
    if not free:
        return K
    K[free, np.arange(len(free))] = 1
    if piv:
        K[piv, :] = F.neg(R[:len(piv)][:, free])
    return K


def image_basis(F, m):
    """Column basis of the image in reduced form.

    Returns (B, rows) where B has identity at the listed rows, so the
    coordinates of any image vector v are simply v[rows].
    """
    m = np.asarray(m, dtype=np.int64)
    if m.shape[1] == 0:
        return zeros(m.shape[0], 0), []
    R, piv = rref(F, m.T)
    return R[:len(piv)].T.copy(), piv


def row_space(F, m):
    R, piv = rref(F, m)
    return R[:len(piv)], piv


def solve(F, a, b):
    """One solution x of a @ x = b (b vector or matrix) or None."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vec = b.ndim == 1
    B = b.reshape(-1, 1) if vec else b
    n = a.shape[1]
    R, piv = rref(F, np.concatenate([a, B], axis=1))
    if piv and piv[-1] >= n:
        return None
    X = zeros(n, B.shape[1])
    if piv:
        X[piv, :] = R[:len(piv), n:]
    return X.ravel() if vec else X


def inverse(F, a):
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    R, piv = rref(F, np.concatenate([a, identity(n)], axis=1))
    if len(piv) < n or piv[n - 1] >= n:
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:].copy()


def is_invertible(F, a) -> bool:
    a = np.asarray(a)
    return a.shape[0] == a.shape[1] and rank(F, a) == a.shape[0]


def kron_sum_is_zero(F, terms) -> bool:
    """Decide sum_k kron(A_k, B_k) == 0 without forming the Kronecker products.

    Uses the rearrangement kron(A, B) <-> vec(A) vec(B)^T, which is a linear
    bijection, so the sum vanishes iff sum_k vec(A_k) vec(B_k)^T does.
    """
    if not terms:
        return True
    left = np.stack([np.asarray(a, dtype=np.int64).ravel() for a, _ in terms], axis=1)
    right = np.stack([np.asarray(b, dtype=np.int64).ravel() for _, b in terms], axis=0)
    return not matmul(F, left, right).any()


@dataclass(frozen=True)
class MatrixGF:
    """Immutable matrix over a finite field; entries are encoded elements."""

    data: np.ndarray
    ctx: FieldCtx

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= self.ctx.q):
            raise ValueError("entries out of range for " + repr(self.ctx))
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_coeff_rows(cls, rows, ctx):
        data = [[ctx.encode(e) for e in row] for row in rows]
        return cls(np.array(data, dtype=np.int64).reshape(len(rows), -1), ctx)

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    def _same(self, other):
        if other.ctx != self.ctx:
            raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __matmul__(self, other):
        self._same(other)
        return MatrixGF(matmul(self.ctx, self.data, other.data), self.ctx)

    def __add__(self, other):
        self._same(other)
        return MatrixGF(add(self.ctx, self.data, other.data), self.ctx)

    def __sub__(self, other):
        self._same(other)
        return MatrixGF(sub(self.ctx, self.data, other.data), self.ctx)

    def __eq__(self, other):
        return (isinstance(other, MatrixGF) and self.ctx == other.ctx
                and self.data.shape == other.data.shape and bool((self.data == other.data).all()))

    def __hash__(self):
        return hash((self.ctx, self.data.shape, self.data.tobytes()))

    def kron(self, other):
        self._same(other)
        return MatrixGF(kron(self.ctx, self.data, other.data), self.ctx)

    def rref(self):
        R, piv = rref(self.ctx, self.data)
        return MatrixGF(R, self.ctx), piv

    def rank(self):
        return rank(self.ctx, self.data)

    def kernel_basis(self):
        return MatrixGF(kernel_basis(self.ctx, self.data), self.ctx)

    def image_basis(self):
        return MatrixGF(image_basis(self.ctx, self.data)[0], self.ctx)

    def solve(self, b):
        x = solve(self.ctx, self.data, b.data if isinstance(b, MatrixGF) else b)
        if x is None:
            return None
        return MatrixGF(x.reshape(self.cols, -1), self.ctx)

    def to_coeff_rows(self):
        return [[self.ctx.decode(v) for v in row] for row in self.data]
