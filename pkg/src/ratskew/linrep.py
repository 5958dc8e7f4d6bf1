"""Rational power series in noncommuting variables, as linear representations.

A series is stored as a triple (lam, mu, gamma): a row vector, a matrix per
letter, and a column vector, with the coefficient of a word w1..wk equal to
lam * mu(w1) * ... * mu(wk) * gamma.  The letter matrices live in a dict, so
letters that never occur cost nothing and alphabets may grow on demand.

Every public operation returns a *reduced* representation: the forward and
backward basis closures cut the state space down to minimal dimension.  That
makes the zero test trivial (dim == 0), keeps arithmetic from snowballing,
and turns exact equality into reduction of a difference.

:class:`SeriesMatrix` packs a whole matrix of series into one representation
with block entry/exit vectors, which is what the star-based matrix inversion
works on.
"""

from __future__ import annotations

from .fields import Field, scalar_from_json, scalar_to_json
from .freealg import FreeElem
from .la import Echelon, dot, identity, invert_matrix, mat_mul, vec_mat
from .words import word_key


class LinRep:
    __slots__ = ("field", "dim", "lam", "mu", "gamma")

    def __init__(self, field: Field, dim: int, lam, mu, gamma) -> None:
        self.field = field
        self.dim = dim
        self.lam = lam
        self.mu = mu  # letter index -> dim x dim matrix; absent letters act as zero
        self.gamma = gamma

    # -- constructors (all reduced by construction) -------------------------

    @staticmethod
    def zero(field: Field) -> "LinRep":
        return LinRep(field, 0, [], {}, [])

    @staticmethod
    def scalar(field: Field, c) -> "LinRep":
        if not c:
            return LinRep.zero(field)
        return LinRep(field, 1, [field.one()], {}, [c])

    @staticmethod
    def one(field: Field) -> "LinRep":
        return LinRep.scalar(field, field.one())

    @staticmethod
    def letter(field: Field, i: int) -> "LinRep":
        return LinRep.word(field, (i,))

    @staticmethod
    def word(field: Field, w, c=None) -> "LinRep":
        """The single-word series c*w as a path representation."""
        if c is None:
            c = field.one()
        if not c:
            return LinRep.zero(field)
        w = tuple(w)
        if not w:
            return LinRep.scalar(field, c)
        z, o = field.zero(), field.one()
        d = len(w) + 1
        mu: dict = {}
        for k, i in enumerate(w):
            m = mu.setdefault(i, [[z] * d for _ in range(d)])
            m[k][k + 1] = o
        lam = [o] + [z] * (len(w))
        gamma = [z] * len(w) + [c]
        return LinRep(field, d, lam, mu, gamma)

    @staticmethod
    def from_free(p: FreeElem) -> "LinRep":
        """Promote a polynomial: states are the prefixes of its support."""
        if not p.coeffs:
            return LinRep.zero(p.field)
        field = p.field
        z, o = field.zero(), field.one()
        prefixes = {(): 0}
        for w in sorted(p.coeffs, key=word_key):
            for k in range(1, len(w) + 1):
                prefixes.setdefault(w[:k], len(prefixes))
        d = len(prefixes)
        mu: dict = {}
        for w, idx in prefixes.items():
            if not w:
                continue
            src = prefixes[w[:-1]]
            m = mu.setdefault(w[-1], [[z] * d for _ in range(d)])
            m[src][idx] = o
        lam = [z] * d
        lam[0] = o
        gamma = [z] * d
        for w, c in p.coeffs.items():
            gamma[prefixes[w]] = c
        return LinRep(field, d, lam, mu, gamma).reduce()

    # -- reduction ----------------------------------------------------------

    def _forward(self) -> "LinRep":
        field = self.field
        z, o = field.zero(), field.one()
        if self.dim == 0:
            return self
        ech = Echelon(self.dim, z, o)
        queue = []
        if ech.add(self.lam):
            queue.append(list(self.lam))
        letters = sorted(self.mu)
        while queue:
            v = queue.pop(0)
            for x in letters:
                w = vec_mat(v, self.mu[x], z, self.dim)
                if ech.add(w):
                    queue.append(w)
        d = ech.dim()
        if d == 0:
            return LinRep.zero(field)
        basis = [list(r) for r in ech.rows]
        lam = ech.express(self.lam)
        mu = {}
        for x in letters:
            rows = [ech.express(vec_mat(b, self.mu[x], z, self.dim)) for b in basis]
            if any(any(c for c in r) for r in rows):
                mu[x] = rows
        gamma = [dot(b, self.gamma, z) for b in basis]
        return LinRep(field, d, lam, mu, gamma)

    def _transpose(self) -> "LinRep":
        mu = {x: [list(r) for r in zip(*m)] for x, m in self.mu.items()}
        return LinRep(self.field, self.dim, list(self.gamma), mu, list(self.lam))

    def reduce(self) -> "LinRep":
        return self._forward()._transpose()._forward()._transpose()

    # -- coefficients --------------------------------------------------------

    def coeff(self, w):
        z = self.field.zero()
        if self.dim == 0:
            return z
        v = self.lam
        for i in w:
            m = self.mu.get(i)
            if m is None:
                return z
            v = vec_mat(v, m, z, self.dim)
            if not any(v):
                return z
        return dot(v, self.gamma, z)

    def tau(self):
        """Constant term (the augmentation of the series)."""
        if self.dim == 0:
            return self.field.zero()
        return dot(self.lam, self.gamma, self.field.zero())

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "LinRep") -> None:
        if self.field != other.field:
            raise ValueError("mixed scalar fields %s vs %s" % (self.field, other.field))

    def __add__(self, other: "LinRep") -> "LinRep":
        self._check(other)
        if self.dim == 0:
            return other
        if other.dim == 0:
            return self
        z = self.field.zero()
        d = self.dim + other.dim
        lam = list(self.lam) + list(other.lam)
        gamma = list(self.gamma) + list(other.gamma)
        mu = {}
        for x in set(self.mu) | set(other.mu):
            m = [[z] * d for _ in range(d)]
            a = self.mu.get(x)
            if a:
                for i in range(self.dim):
                    m[i][: self.dim] = a[i]
            b = other.mu.get(x)
            if b:
                for i in range(other.dim):
                    m[self.dim + i][self.dim :] = b[i]
            mu[x] = m
        return LinRep(self.field, d, lam, mu, gamma).reduce()

    def __neg__(self) -> "LinRep":
        return self.scale(-self.field.one())

    def __sub__(self, other: "LinRep") -> "LinRep":
        return self + (-other)

    def scale(self, c) -> "LinRep":
        if not c or self.dim == 0:
            return LinRep.zero(self.field)
        return LinRep(self.field, self.dim, [c * v for v in self.lam], self.mu, self.gamma)

    def __mul__(self, other: "LinRep") -> "LinRep":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return LinRep.zero(self.field)
        z = self.field.zero()
        d1, d2 = self.dim, other.dim
        d = d1 + d2
        c2 = dot(other.lam, other.gamma, z)
        lam = list(self.lam) + [z] * d2
        gamma = [g * c2 for g in self.gamma] + list(other.gamma)
        mu = {}
        for x in set(self.mu) | set(other.mu):
            m = [[z] * d for _ in range(d)]
            a = self.mu.get(x)
            if a:
                for i in range(d1):
                    m[i][:d1] = a[i]
            b = other.mu.get(x)
            if b:
                # bridge: finish the left factor (gamma), start the right (lam*mu)
                lm = vec_mat(other.lam, b, z, d2)
                for i in range(d1):
                    gi = self.gamma[i]
                    if gi:
                        m[i][d1:] = [gi * lm[j] for j in range(d2)]
                for i in range(d2):
                    m[d1 + i][d1:] = b[i]
            mu[x] = m
        return LinRep(self.field, d, lam, mu, gamma).reduce()

    def star(self) -> "LinRep":
        """(1 - a)^(-1) for a proper series a (zero constant term)."""
        if self.tau():
            raise ValueError("star needs a zero constant term")
        field = self.field
        if self.dim == 0:
            return LinRep.one(field)
        z, o = field.zero(), field.one()
        d = self.dim + 1
        lam = [o] + [z] * self.dim
        gamma = [o] + list(self.gamma)
        mu = {}
        for x, m in self.mu.items():
            top = vec_mat(self.lam, m, z, self.dim)
            big = [[z] + list(top)]
            for i in range(self.dim):
                row = m[i]
                gi = self.gamma[i]
                big.append([z] + [row[j] + gi * top[j] for j in range(self.dim)])
            mu[x] = big
        return LinRep(field, d, lam, mu, gamma).reduce()

    def inv(self) -> "LinRep":
        """Multiplicative inverse; requires a nonzero constant term."""
        c = self.tau()
        if not c:
            raise ValueError("series with zero constant term has no inverse")
        one = LinRep.one(self.field)
        proper = one - self.scale(self.field.one() / c)
        return proper.star().scale(self.field.one() / c)

    def delta(self, i: int) -> "LinRep":
        """Right transduction by letter i: new gamma is mu(i) * gamma."""
        m = self.mu.get(i)
        if self.dim == 0 or m is None:
            return LinRep.zero(self.field)
        gamma = mat_vec_local(m, self.gamma, self.field.zero())
        return LinRep(self.field, self.dim, self.lam, self.mu, gamma).reduce()

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        # valid because every public constructor reduces
        return self.dim == 0

    def __eq__(self, other):
        if not isinstance(other, LinRep):
            return NotImplemented
        return (self - other).dim == 0

    def __bool__(self) -> bool:
        return self.dim != 0

    def order(self) -> int | None:
        """Length of the shortest word with nonzero coefficient, None if zero.

        Level k of the search spans {lam*mu(w) : |w| = k}; some word of
        length k has a nonzero coefficient iff that span is not orthogonal
        to gamma.  A nonzero reduced series hits one within 2*dim levels.
        """
        if self.dim == 0:
            return None
        z, o = self.field.zero(), self.field.one()
        letters = sorted(self.mu)
        ech = Echelon(self.dim, z, o)
        ech.add(self.lam)
        for k in range(2 * self.dim + 1):
            if any(dot(b, self.gamma, z) for b in ech.rows):
                return k
            nxt = Echelon(self.dim, z, o)
            for b in ech.rows:
                for x in letters:
                    nxt.add(vec_mat(b, self.mu[x], z, self.dim))
            ech = nxt
            if ech.dim() == 0:
                break
        raise AssertionError("reduced nonzero series with no word within 2*dim")

    def min_word(self):
        """Length-lex least word of the support, None for the zero series."""
        k = self.order()
        if k is None:
            return None
        z = self.field.zero()
        letters = sorted(self.mu)

        def dfs(v, depth):
            if depth == k:
                return () if dot(v, self.gamma, z) else None
            for x in letters:
                w = vec_mat(v, self.mu[x], z, self.dim)
                if any(w):
                    found = dfs(w, depth + 1)
                    if found is not None:
                        return (x,) + found
            return None

        found = dfs(self.lam, 0)
        if found is None:
            raise AssertionError("order level did not contain a word")
        return found

    # -- presentation ---------------------------------------------------------

    def render(self, window: int = 5) -> str:
        """Expansion up to ``window``; the tail marker is dropped exactly
        when the window already captures the whole series."""
        from .freealg import FreeElem
        from .truncated import TruncSeries

        ts = TruncSeries.from_linrep(self, window)
        poly = FreeElem(self.field, dict(ts.coeffs))
        body = poly.render()
        if LinRep.from_free(poly) == self:
            return body
        return body + " + ..."

    def __repr__(self):
        return "LinRep(dim=%d, letters=%s)" % (self.dim, sorted(self.mu))

    def to_json(self):
        enc = lambda c: scalar_to_json(self.field, c)
        return {
            "field": self.field.name,
            "dim": self.dim,
            "lam": [enc(c) for c in self.lam],
            "mu": {str(x): [[enc(c) for c in row] for row in m] for x, m in sorted(self.mu.items())},
            "gamma": [enc(c) for c in self.gamma],
        }

    @staticmethod
    def from_json(field: Field, obj) -> "LinRep":
        if obj["field"] != field.name:
            raise ValueError("field mismatch: %s vs %s" % (obj["field"], field.name))
        dec = lambda c: scalar_from_json(field, c)
        return LinRep(
            field,
            obj["dim"],
            [dec(c) for c in obj["lam"]],
            {int(x): [[dec(c) for c in row] for row in m] for x, m in obj["mu"].items()},
            [dec(c) for c in obj["gamma"]],
        )


def mat_vec_local(m, v, zero):
    return [sum((row[j] * v[j] for j in range(len(v)) if v[j]), zero) for row in m]


# ---------------------------------------------------------------------------
# matrices of rational series sharing one state space
# ---------------------------------------------------------------------------

class SeriesMatrix:
    """An nrows x ncols matrix of rational series as one block representation.

    Entry (i, j) of the coefficient of w is Lam[i] * mu(w) * (column j of Gam).
    """

    __slots__ = ("field", "nrows", "ncols", "dim", "Lam", "mu", "Gam")

    def __init__(self, field, nrows, ncols, dim, Lam, mu, Gam) -> None:
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.dim = dim
        self.Lam = Lam  # nrows x dim
        self.mu = mu
        self.Gam = Gam  # dim x ncols

    @staticmethod
    def constant(field: Field, mat) -> "SeriesMatrix":
        nrows, ncols = len(mat), len(mat[0]) if mat else 0
        z, o = field.zero(), field.one()
        return SeriesMatrix(
            field, nrows, ncols, nrows, identity(nrows, z, o), {}, [list(r) for r in mat]
        )

    @staticmethod
    def identity(field: Field, s: int) -> "SeriesMatrix":
        z, o = field.zero(), field.one()
        return SeriesMatrix.constant(field, identity(s, z, o))

    @staticmethod
    def from_entries(field: Field, entries) -> "SeriesMatrix":
        nrows = len(entries)
        ncols = len(entries[0]) if nrows else 0
        z = field.zero()
        dims = [[e.dim for e in row] for row in entries]
        d = sum(sum(r) for r in dims)
        Lam = [[z] * d for _ in range(nrows)]
        Gam = [[z] * ncols for _ in range(d)]
        mu: dict = {}
        off = 0
        for i in range(nrows):
            for j in range(ncols):
                e = entries[i][j]
                if e.field != field:
                    raise ValueError("entry field mismatch")
                for k in range(e.dim):
                    Lam[i][off + k] = e.lam[k]
                    Gam[off + k][j] = e.gamma[k]
                for x, m in e.mu.items():
                    big = mu.setdefault(x, [[z] * d for _ in range(d)])
                    for a in range(e.dim):
                        for b in range(e.dim):
                            if m[a][b]:
                                big[off + a][off + b] = m[a][b]
                off += e.dim
        return SeriesMatrix(field, nrows, ncols, d, Lam, mu, Gam).reduce()

    def entry(self, i: int, j: int) -> LinRep:
        gamma = [self.Gam[k][j] for k in range(self.dim)]
        return LinRep(self.field, self.dim, list(self.Lam[i]), self.mu, gamma).reduce()

    def entries(self):
        return [[self.entry(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def aug(self):
        """Entrywise constant terms, a plain field matrix."""
        return mat_mul(self.Lam, self.Gam, self.field.zero()) if self.dim else [
            [self.field.zero()] * self.ncols for _ in range(self.nrows)
        ]

    # -- reduction: the scalar procedure run on all rows/columns at once -----

    def _forward(self) -> "SeriesMatrix":
        field = self.field
        z, o = field.zero(), field.one()
        if self.dim == 0:
            return self
        ech = Echelon(self.dim, z, o)
        queue = []
        for row in self.Lam:
            if ech.add(row):
                queue.append(list(row))
        letters = sorted(self.mu)
        while queue:
            v = queue.pop(0)
            for x in letters:
                w = vec_mat(v, self.mu[x], z, self.dim)
                if ech.add(w):
                    queue.append(w)
        d = ech.dim()
        if d == 0:
            return SeriesMatrix(field, self.nrows, self.ncols, 0, [[] for _ in range(self.nrows)], {}, [])
        basis = [list(r) for r in ech.rows]
        Lam = [ech.express(row) for row in self.Lam]
        mu = {}
        for x in letters:
            rows = [ech.express(vec_mat(b, self.mu[x], z, self.dim)) for b in basis]
            if any(any(c for c in r) for r in rows):
                mu[x] = rows
        Gam = [[dot(b, [self.Gam[k][j] for k in range(self.dim)], z) for j in range(self.ncols)] for b in basis]
        return SeriesMatrix(field, self.nrows, self.ncols, d, Lam, mu, Gam)

    def _transpose(self) -> "SeriesMatrix":
        mu = {x: [list(r) for r in zip(*m)] for x, m in self.mu.items()}
        Lam = [list(r) for r in zip(*self.Gam)] if self.dim else [[] for _ in range(self.ncols)]
        Gam = [list(r) for r in zip(*self.Lam)] if self.dim else []
        return SeriesMatrix(self.field, self.ncols, self.nrows, self.dim, Lam, mu, Gam)

    def reduce(self) -> "SeriesMatrix":
        return self._forward()._transpose()._forward()._transpose()

    def is_zero(self) -> bool:
        return self.reduce().dim == 0

    # -- arithmetic -----------------------------------------------------------

    def _check_shape(self, other, same=True):
        if self.field != other.field:
            raise ValueError("mixed scalar fields")
        if same and (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")

    def __add__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        self._check_shape(other)
        z = self.field.zero()
        d = self.dim + other.dim
        Lam = [list(a) + list(b) for a, b in zip(self.Lam, other.Lam)]
        Gam = [list(r) for r in self.Gam] + [list(r) for r in other.Gam]
        mu = {}
        for x in set(self.mu) | set(other.mu):
            m = [[z] * d for _ in range(d)]
            a = self.mu.get(x)
            if a:
                for i in range(self.dim):
                    m[i][: self.dim] = a[i]
            b = other.mu.get(x)
            if b:
                for i in range(other.dim):
                    m[self.dim + i][self.dim :] = b[i]
            mu[x] = m
        return SeriesMatrix(self.field, self.nrows, self.ncols, d, Lam, mu, Gam).reduce()

    def scale(self, c) -> "SeriesMatrix":
        return SeriesMatrix(
            self.field, self.nrows, self.ncols, self.dim,
            [[c * v for v in row] for row in self.Lam], self.mu, self.Gam,
        )

    def __neg__(self):
        return self.scale(-self.field.one())

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        self._check_shape(other, same=False)
        if self.ncols != other.nrows:
            raise ValueError("inner dimension mismatch")
        z = self.field.zero()
        d1, d2 = self.dim, other.dim
        d = d1 + d2
        c2 = other.aug()  # inner x q constant terms
        Lam = [list(r) + [z] * d2 for r in self.Lam]
        Gam = [list(r) for r in other.Gam]
        if d1:
            Gam = mat_mul(self.Gam, c2, z) + Gam
        mu = {}
        for x in set(self.mu) | set(other.mu):
            m = [[z] * d for _ in range(d)]
            a = self.mu.get(x)
            if a:
                for i in range(d1):
                    m[i][:d1] = a[i]
            b = other.mu.get(x)
            if b:
                lm = mat_mul(other.Lam, b, z)  # inner x d2
                br = mat_mul(self.Gam, lm, z)  # d1 x d2
                for i in range(d1):
                    m[i][d1:] = br[i]
                for i in range(d2):
                    m[d1 + i][d1:] = b[i]
            mu[x] = m
        return SeriesMatrix(self.field, self.nrows, other.ncols, d, Lam, mu, Gam).reduce()

    def left_mul_const(self, C) -> "SeriesMatrix":
        Lam = mat_mul(C, self.Lam, self.field.zero()) if self.dim else [[] for _ in C]
        return SeriesMatrix(self.field, len(C), self.ncols, self.dim, Lam, self.mu, self.Gam)

    def right_mul_const(self, C) -> "SeriesMatrix":
        ncols = len(C[0]) if C else 0
        Gam = mat_mul(self.Gam, C, self.field.zero()) if self.dim else []
        return SeriesMatrix(self.field, self.nrows, ncols, self.dim, Lam=self.Lam, mu=self.mu, Gam=Gam)

    def star(self) -> "SeriesMatrix":
        """(I - P)^(-1) for a square P with zero augmentation."""
        if self.nrows != self.ncols:
            raise ValueError("star needs a square matrix")
        if any(any(c for c in row) for row in self.aug()):
            raise ValueError("star needs zero augmentation")
        field = self.field
        s = self.nrows
        z, o = field.zero(), field.one()
        d = s + self.dim
        Lam = [[o if i == j else z for j in range(s)] + [z] * self.dim for i in range(s)]
        Gam = [[o if i == j else z for j in range(s)] for i in range(s)] + [list(r) for r in self.Gam]
        mu = {}
        for x, m in self.mu.items():
            top = mat_mul(self.Lam, m, z)  # s x dim
            gl = mat_mul(self.Gam, top, z) if self.dim else []  # dim x dim
            big = []
            for i in range(s):
                big.append([z] * s + list(top[i]))
            for i in range(self.dim):
                big.append([z] * s + [m[i][j] + gl[i][j] for j in range(self.dim)])
            mu[x] = big
        return SeriesMatrix(field, s, s, d, Lam, mu, Gam).reduce()

    def __repr__(self):
        return "SeriesMatrix(%dx%d, dim=%d)" % (self.nrows, self.ncols, self.dim)

    def to_json(self):
        return {
            "field": self.field.name,
            "nrows": self.nrows,
            "ncols": self.ncols,
            "entries": [[self.entry(i, j).to_json() for j in range(self.ncols)] for i in range(self.nrows)],
        }

    @staticmethod
    def from_json(field: Field, obj) -> "SeriesMatrix":
        entries = [[LinRep.from_json(field, e) for e in row] for row in obj["entries"]]
        return SeriesMatrix.from_entries(field, entries)


class NotInvertible(ValueError):
    pass


def invert_matrix_series(m: SeriesMatrix):
    """Two-sided inverse of a square series matrix whose augmentation is invertible.

    Writes m = C(I - P) with C the lifted augmentation and P proper, inverts
    the proper part with the matrix star, and verifies the product both ways.
    Returns (inverse, ok_right, ok_left).
    """
    if m.nrows != m.ncols:
        raise NotInvertible("matrix is not square")
    field = m.field
    caug = m.aug()
    cinv = invert_matrix(caug, field.zero(), field.one())
    if cinv is None:
        raise NotInvertible("augmentation matrix is singular")
    p = SeriesMatrix.identity(field, m.nrows) - m.left_mul_const(cinv)
    n = p.star().right_mul_const(cinv)
    ident = SeriesMatrix.identity(field, m.nrows)
    ok_right = (m * n - ident).is_zero()
    ok_left = (n * m - ident).is_zero()
    return n, ok_right, ok_left
