"""Dense exact linear algebra over any of the scalar domains.

Matrices are lists of lists of scalars, vectors are lists.  Everything here
is plain Gaussian elimination; sizes stay small (tens), exactness is what
matters.  ``Echelon`` keeps a reduced row-echelon basis of a growing
subspace and can express new vectors in that basis, which is the whole
engine behind minimizing linear representations.
"""

from __future__ import annotations


def mat_vec(m, v, zero):
    return [sum((r[j] * v[j] for j in range(len(v)) if v[j]), zero) for r in m]


def vec_mat(v, m, zero, ncols=None):
    if ncols is None:
        ncols = len(m[0]) if m else 0
    out = [zero] * ncols
    for i, vi in enumerate(v):
        if not vi:
            continue
        row = m[i]
        for j in range(ncols):
            if row[j]:
                out[j] = out[j] + vi * row[j]
    return out


def mat_mul(a, b, zero):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = [[zero] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for l in range(k):
            c = ai[l]
            if not c:
                continue
            bl = b[l]
            for j in range(m):
                if bl[j]:
                    oi[j] = oi[j] + c * bl[j]
    return out


def identity(n, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(r) for r in zip(*m)] if m else []


def dot(u, v, zero):
    return sum((u[i] * v[i] for i in range(len(u)) if u[i] and v[i]), zero)


class Echelon:
    """Reduced row-echelon basis of a subspace of F^n, grown one vector at a time."""

    def __init__(self, n: int, zero, one) -> None:
        self.n = n
        self.zero = zero
        self.one = one
        self.rows: list = []
        self.pivots: list = []

    def _reduce(self, v):
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                for j in range(self.n):
                    if row[j]:
                        v[j] = v[j] - c * row[j]
        return v

    def add(self, v) -> bool:
        """Insert v; returns True if it enlarged the span."""
        v = self._reduce(v)
        p = next((j for j in range(self.n) if v[j]), None)
        if p is None:
            return False
        inv = self.one / v[p]
        v = [x * inv if x else x for x in v]
        # keep the basis fully reduced so express() reads off coordinates
        for row in self.rows:
            c = row[p]
            if c:
                for j in range(self.n):
                    if v[j]:
                        row[j] = row[j] - c * v[j]
        k = next((i for i, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(k, v)
        self.pivots.insert(k, p)
        return True

    def express(self, v):
        """Coordinates of v in the basis rows, or None if v is outside the span."""
        v = list(v)
        coords = [self.zero] * len(self.rows)
        for i, (row, p) in enumerate(zip(self.rows, self.pivots)):
            c = v[p]
            if c:
                coords[i] = c
                for j in range(self.n):
                    if row[j]:
                        v[j] = v[j] - c * row[j]
        if any(v):
            return None
        return coords

    def dim(self) -> int:
        return len(self.rows)


def solve(a, b, zero, one):
    """One solution x of a @ x = b, or None.  a is n x m, b length n."""
    n = len(a)
    m = len(a[0]) if a else 0
    aug = [list(a[i]) + [b[i]] for i in range(n)]
    piv_cols = []
    r = 0
    for c in range(m):
        pr = next((i for i in range(r, n) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = one / aug[r][c]
        aug[r] = [x * inv if x else x for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                ci = aug[i][c]
                aug[i] = [aug[i][j] - ci * aug[r][j] for j in range(m + 1)]
        piv_cols.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if aug[i][m]:
            return None
    x = [zero] * m
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][m]
    return x


def invert_matrix(a, zero, one):
    """Field inverse of a square matrix, or None if singular."""
    n = len(a)
    aug = [list(a[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    for c in range(n):
        pr = next((i for i in range(c, n) if aug[i][c]), None)
        if pr is None:
            return None
        aug[c], aug[pr] = aug[pr], aug[c]
        inv = one / aug[c][c]
        aug[c] = [x * inv if x else x for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                ci = aug[i][c]
                aug[i] = [aug[i][j] - ci * aug[c][j] for j in range(2 * n)]
    return [row[n:] for row in aug]
