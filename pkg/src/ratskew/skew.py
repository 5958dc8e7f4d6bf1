"""The skew extension S = R<Y> of a series ring R by a family of y letters.

Elements are finite sums  sum_I y_I r_I  with y-words I and coefficients r_I
drawn from a backend ring over the x letters.  Moving a coefficient across a
y letter follows

    r * y_i  =  y_i * tau(r) + delta_i(r)

with tau the augmentation (constant term) and delta_i the right transduction
by x_i.  Concretely x_i * y_j = delta_ij, so the x letters act as left
inverses of the y letters.

Three coefficient backends satisfy the same small protocol (tau, delta,
order, min_word, inv, arithmetic): polynomials (:class:`FreeElem`), rational
series (:class:`LinRep`), and truncated series (:class:`TruncSeries`).  The
first two are exact; the truncated backend tags every verdict with the
precision that supported it.

With a fixed alphabet x_0..x_n, the two-sided ideal generated by
e = 1 - sum y_i x_i supports a terminating membership test: an element of
positive y-degree lies in the ideal iff all its left letter sections
x_i * a do, and a coefficient lies in it iff it is zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fields import Field, scalar_to_json
from .freealg import FreeElem
from .linrep import LinRep
from .truncated import DEFAULT_PRECISION, TruncSeries
from .words import word_key


class CoeffDomain:
    """Factory for one of the three coefficient backends."""

    KINDS = ("free", "rat", "trunc")

    def __init__(self, kind: str, field: Field, precision: int = DEFAULT_PRECISION) -> None:
        if kind not in self.KINDS:
            raise ValueError("unknown backend %r" % kind)
        self.kind = kind
        self.field = field
        self.precision = precision if kind == "trunc" else None

    @property
    def exact(self) -> bool:
        return self.kind != "trunc"

    def zero(self):
        return self._make(FreeElem.zero, LinRep.zero, TruncSeries.zero)

    def one(self):
        return self._make(FreeElem.one, LinRep.one, TruncSeries.one)

    def scalar(self, c):
        return self._make(
            lambda f: FreeElem.scalar(f, c),
            lambda f: LinRep.scalar(f, c),
            lambda f, precision: TruncSeries.scalar(f, c, precision),
        )

    def letter(self, i: int):
        return self._make(
            lambda f: FreeElem.letter(f, i),
            lambda f: LinRep.letter(f, i),
            lambda f, precision: TruncSeries.letter(f, i, precision),
        )

    def word(self, w, c=None):
        return self._make(
            lambda f: FreeElem.word(f, w, c),
            lambda f: LinRep.word(f, w, c),
            lambda f, precision: TruncSeries.word(f, w, c, precision),
        )

    def from_free(self, p: FreeElem):
        if p.field != self.field:
            raise ValueError("field mismatch")
        if self.kind == "free":
            return p
        if self.kind == "rat":
            return LinRep.from_free(p)
        return TruncSeries.from_free(p, self.precision)

    def _make(self, mk_free, mk_rat, mk_trunc):
        if self.kind == "free":
            return mk_free(self.field)
        if self.kind == "rat":
            return mk_rat(self.field)
        return mk_trunc(self.field, self.precision)

    def coeff_to_json(self, r):
        return r.to_json() if self.kind != "trunc" else {
            "field": self.field.name,
            "precision": r.precision,
            "terms": [[list(w), scalar_to_json(self.field, c)] for w, c in sorted(r.coeffs.items(), key=lambda t: word_key(t[0]))],
        }

    def __eq__(self, other):
        return (
            isinstance(other, CoeffDomain)
            and (self.kind, self.field, self.precision) == (other.kind, other.field, other.precision)
        )

    def __hash__(self):
        return hash((self.kind, self.field, self.precision))

    def __repr__(self):
        return "CoeffDomain(%s, %s)" % (self.kind, self.field.name)


@dataclass(frozen=True)
class Verdict:
    """A boolean whose justification may be only finite-precision."""

    value: bool
    precision: int | None = None  # None = exact

    def __bool__(self) -> bool:
        return self.value

    def __and__(self, other: "Verdict") -> "Verdict":
        return Verdict(self.value and other.value, _min_prec(self.precision, other.precision))


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class SkewRing:
    """Context object: a coefficient backend plus the y alphabet bound.

    ``n`` is the top letter index (letters 0..n on both sides); ``None``
    means the alphabet grows on demand, in which case there is no ideal and
    equality is plain coefficientwise equality.
    """

    def __init__(self, domain: CoeffDomain, n: int | None = None) -> None:
        if n is not None and n < 0:
            raise ValueError("top letter index must be >= 0")
        self.domain = domain
        self.n = n
        self._letters: dict = {}

    def _check_letter(self, i: int) -> None:
        if i < 0 or (self.n is not None and i > self.n):
            raise ValueError("letter index %d outside 0..%s" % (i, self.n))

    def zero(self) -> "SkewElem":
        return SkewElem(self, {})

    def one(self) -> "SkewElem":
        return SkewElem(self, {(): self.domain.one()})

    def scalar(self, c) -> "SkewElem":
        return SkewElem(self, {(): self.domain.scalar(c)})

    def embed(self, r) -> "SkewElem":
        """A backend coefficient as a y-degree-0 element."""
        return SkewElem(self, {(): r})

    def x(self, i: int) -> "SkewElem":
        self._check_letter(i)
        if i not in self._letters:
            self._letters[i] = self.domain.letter(i)
        return SkewElem(self, {(): self._letters[i]})

    def x_word(self, w) -> "SkewElem":
        for i in w:
            self._check_letter(i)
        return SkewElem(self, {(): self.domain.word(w)})

    def y(self, i: int) -> "SkewElem":
        self._check_letter(i)
        return SkewElem(self, {(i,): self.domain.one()})

    def yword(self, w) -> "SkewElem":
        w = tuple(w)
        for i in w:
            self._check_letter(i)
        return SkewElem(self, {w: self.domain.one()})

    def e(self, top: int | None = None) -> "SkewElem":
        """The idempotent 1 - sum_{i=0}^{top} y_i x_i (top defaults to n)."""
        if top is None:
            top = self.n
        if top is None:
            raise ValueError("dynamic alphabet needs an explicit top index for e")
        data = {(): self.domain.one()}
        for i in range(top + 1):
            self._check_letter(i)
            data[(i,)] = self.domain.letter(i).scale(-self.domain.field.one())
        return SkewElem(self, data)

    def __eq__(self, other):
        return isinstance(other, SkewRing) and (self.domain, self.n) == (other.domain, other.n)

    def __hash__(self):
        return hash((self.domain, self.n))

    def __repr__(self):
        return "SkewRing(%r, n=%s)" % (self.domain, self.n)


class SkewElem:
    __slots__ = ("ring", "data")

    def __init__(self, ring: SkewRing, data: dict) -> None:
        self.ring = ring
        self.data = {w: r for w, r in data.items() if r}

    def _check(self, other: "SkewElem") -> None:
        if self.ring != other.ring:
            raise ValueError("elements of different skew rings")

    def __add__(self, other: "SkewElem") -> "SkewElem":
        self._check(other)
        t = dict(self.data)
        for w, r in other.data.items():
            s = t.get(w)
            s = r if s is None else s + r
            if s:
                t[w] = s
            else:
                del t[w]
        return SkewElem(self.ring, t)

    def __neg__(self) -> "SkewElem":
        one = self.ring.domain.field.one()
        return self.scale(-one)

    def __sub__(self, other: "SkewElem") -> "SkewElem":
        return self + (-other)

    def scale(self, c) -> "SkewElem":
        if not c:
            return SkewElem(self.ring, {})
        return SkewElem(self.ring, {w: r.scale(c) for w, r in self.data.items()})

    def __mul__(self, other: "SkewElem") -> "SkewElem":
        """Push every left coefficient across the right factor's y-words."""
        self._check(other)
        out: dict = {}

        def acc(w, term):
            if not term:
                return
            s = out.get(w)
            s = term if s is None else s + term
            if s:
                out[w] = s
            else:
                del out[w]

        for I, r in self.data.items():
            for J, s in other.data.items():
                cur = r
                alive = True
                for k in range(len(J)):
                    t = cur.tau()
                    if t:
                        acc(I + J[k:], s.scale(t))
                    cur = cur.delta(J[k])
                    if not cur:
                        alive = False
                        break
                if alive:
                    acc(I, cur * s)
        return SkewElem(self.ring, out)

    def __pow__(self, k: int) -> "SkewElem":
        if k < 0:
            raise ValueError("no general inverses in the skew ring")
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, SkewElem):
            return NotImplemented
        self._check(other)
        if set(self.data) != set(other.data):
            return False
        return all(self.data[w] == other.data[w] for w in self.data)

    def __bool__(self) -> bool:
        return bool(self.data)

    def y_degree(self) -> int:
        return max((len(w) for w in self.data), default=0)

    def coeff(self, w):
        return self.data.get(tuple(w), self.ring.domain.zero())

    def support(self):
        return sorted(self.data, key=word_key)

    def letters_used(self):
        out = set()
        for I, r in self.data.items():
            out.update(I)
            if hasattr(r, "mu"):
                out.update(r.mu)
            elif hasattr(r, "coeffs"):
                for w in r.coeffs:
                    out.update(w)
        return out

    def __repr__(self):
        return "SkewElem(%d terms, y-degree %d)" % (len(self.data), self.y_degree())

    def render(self) -> str:
        """Readable form; faithful for polynomial and truncated coefficients."""
        if not self.data:
            return "0"
        parts = []
        for w in self.support():
            r = self.data[w]
            if hasattr(r, "render"):
                cs = r.render()
            else:
                cs = repr(r)
            if len(cs.split()) > 1 or "+" in cs or "-" in cs[1:]:
                cs = "(%s)" % cs
            ws = "*".join("y%d" % i for i in w)
            if not w:
                parts.append(cs)
            elif cs == "1":
                parts.append(ws)
            else:
                parts.append("%s*%s" % (ws, cs))
        return " + ".join(parts)

    def to_json(self):
        dom = self.ring.domain
        return {
            "backend": dom.kind,
            "field": dom.field.name,
            "n": self.ring.n,
            "terms": [[list(w), dom.coeff_to_json(self.data[w])] for w in self.support()],
        }

    @staticmethod
    def from_json(ring: SkewRing, obj) -> "SkewElem":
        dom = ring.domain
        if obj["backend"] != dom.kind or obj["field"] != dom.field.name:
            raise ValueError("backend mismatch in serialized element")
        data = {}
        for w, cj in obj["terms"]:
            if dom.kind == "rat":
                r = LinRep.from_json(dom.field, cj)
            elif dom.kind == "free":
                r = FreeElem.from_json(dom.field, cj)
            else:
                from .fields import scalar_from_json
                r = TruncSeries(dom.field, cj["precision"], {tuple(u): scalar_from_json(dom.field, c) for u, c in cj["terms"]})
            data[tuple(w)] = r
        return SkewElem(ring, data)


def skew_mul(a: SkewElem, b: SkewElem) -> SkewElem:
    """Product in the extension ring; see ``SkewElem.__mul__``."""
    return a * b


# ---------------------------------------------------------------------------
# the ideal generated by e and the quotient's equality
# ---------------------------------------------------------------------------

def ideal_member(a: SkewElem) -> Verdict:
    """Does a lie in the two-sided ideal generated by e = 1 - sum y_i x_i?

    Recursive section test: a coefficient is in the ideal iff it is zero,
    and an element of positive y-degree is in iff every x_i * a is.  Each
    section strictly drops the y-degree, so the recursion terminates.
    """
    ring = a.ring
    if ring.n is None:
        raise ValueError("ideal membership needs a fixed alphabet bound")
    letters = [ring.x(i) for i in range(ring.n + 1)]
    # Truncated inputs can cancel structurally, which still only certifies
    # the window they were computed in.
    base_prec = None
    if not ring.domain.exact:
        base_prec = min(
            (r.precision for r in a.data.values()), default=ring.domain.precision
        )

    def rec(b: SkewElem) -> Verdict:
        if b.y_degree() == 0:
            r = b.data.get(())
            if r is None:
                return Verdict(True, base_prec)
            prec = _min_prec(getattr(r, "precision", None), base_prec)
            return Verdict(not r, prec)
        out = Verdict(True)
        for xi in letters:
            v = rec(xi * b)
            out = out & v
            if not v:
                return out
        return out

    return rec(a)


def t_equal(a: SkewElem, b: SkewElem) -> Verdict:
    """Equality in the quotient by the ideal of e."""
    return ideal_member(a - b)


# ---------------------------------------------------------------------------
# finding units: the minimal-monomial trick and the two-sided witness
# ---------------------------------------------------------------------------

def lemma51_word(rs) -> tuple:
    """A y-word w such that r_j * w lands in the coefficient ring for all j,
    with the product of minimal order acquiring a nonzero constant term.

    Input: nonzero backend coefficients.  Take an element of minimal order,
    its length-lex least support word x_I, and return the reversed word on
    the y side.  Every r_j * w then collapses into the coefficient ring
    because all lower transduction layers of every r_j vanish.
    """
    if not rs:
        raise ValueError("need at least one coefficient")
    orders = []
    for r in rs:
        o = r.order()
        if o is None:
            raise ValueError("coefficients must be nonzero")
        orders.append(o)
    i = orders.index(min(orders))
    return rs[i].min_word()[::-1]


@dataclass
class TWitness:
    m_word: tuple  # x-monomial applied on the left
    g: SkewElem  # right factor
    unit: object  # the coefficient-ring unit m*a*w before inversion
    check: Verdict  # m*a*g = 1 in the quotient
    input: SkewElem  # the element witnessed, kept so the certificate re-checks

    def to_json(self):
        ring = self.g.ring
        return {
            "kind": "skew_witness",
            "input": self.input.to_json(),
            "m": list(self.m_word),
            "g": self.g.to_json(),
            "unit": ring.domain.coeff_to_json(self.unit),
            "check": self.check.value,
            "precision": self.check.precision,
        }


def t_witness(a: SkewElem) -> TWitness:
    """For a outside the ideal, produce m (x-word) and g with m*a*g = 1.

    Left letter sections shrink the y-degree while staying outside the
    ideal; once in the coefficient ring, the minimal-monomial word makes the
    product a unit there, and g divides it back out.
    """
    ring = a.ring
    if ideal_member(a):
        raise ValueError("element lies in the ideal; no witness exists")
    m: list = []
    b = a
    while b.y_degree() > 0:
        for i in range(ring.n + 1):
            c = ring.x(i) * b
            if not ideal_member(c):
                b = c
                m.append(i)
                break
        else:
            raise AssertionError("no letter section escapes the ideal")
    m_word = tuple(reversed(m))
    r = b.data[()]
    w = lemma51_word([r])
    p_elem = b * ring.yword(w)
    if set(p_elem.data) - {()}:
        raise AssertionError("minimal-monomial product left the coefficient ring")
    p = p_elem.data[()]
    g = SkewElem(ring, {w: p.inv()})
    check = t_equal((ring.x_word(m_word) * a) * g, ring.one())
    return TWitness(m_word, g, p, check, a)


# ---------------------------------------------------------------------------
# word systems: verified recursion behind the index congruence
# ---------------------------------------------------------------------------

@dataclass
class WordSystemReport:
    ok: bool
    s: int
    n: int
    s_mod: int | None
    violations: list = dc_field(default_factory=list)
    trace: list = dc_field(default_factory=list)
    precision: int | None = None
    words: list = dc_field(default_factory=list)
    qs: list = dc_field(default_factory=list)  # SkewElems, kept for re-checking

    def to_json(self):
        return {
            "kind": "word_system",
            "ok": self.ok,
            "s": self.s,
            "n": self.n,
            "s_mod": self.s_mod,
            "violations": list(self.violations),
            "trace": list(self.trace),
            "precision": self.precision,
            "words": [list(w) for w in self.words],
            "qs": [q.to_json() for q in self.qs],
        }


def verify_word_system(ring: SkewRing, words, qs, n: int | None = None) -> WordSystemReport:
    """Check the hypotheses  sum w_i q_i = 1,  q_i w_j = 0 (i != j),
    q_i w_i != 0  in the quotient, then recurse into the first-letter
    partition, re-checking the same hypotheses for every derived system.

    A passing run certifies s = 1 (mod n): each sub-system count is 1 mod n
    by induction and the counts add up over the n+1 branches.
    """
    if ring.n is None or ring.n < 1:
        raise ValueError("word systems need a fixed alphabet with n >= 1")
    if n is not None and n != ring.n:
        raise ValueError("alphabet mismatch: ring has n=%d, caller said n=%d" % (ring.n, n))
    n = ring.n
    words = [tuple(w) for w in words]
    if len(words) != len(qs) or not words:
        raise ValueError("need matching nonempty word and coefficient lists")
    violations: list = []
    trace: list = []
    precs: list = []

    def note(v: Verdict):
        if v.precision is not None:
            precs.append(v.precision)

    def level(ws, qlist, depth, label) -> bool:
        s = len(ws)
        if s == 0:
            violations.append("%s: empty branch (sum is 0, not 1)" % label)
            return False
        tot = ring.zero()
        for w, q in zip(ws, qlist):
            tot = tot + ring.yword(w) * q
        v = t_equal(tot, ring.one())
        note(v)
        bad = False
        if not v:
            violations.append("%s: sum w_i*q_i != 1" % label)
            bad = True
        for i in range(s):
            for j in range(s):
                v = ideal_member(qlist[i] * ring.yword(ws[j]))
                note(v)
                if i == j and v:
                    violations.append("%s: q_%d*w_%d = 0" % (label, i + 1, i + 1))
                    bad = True
                elif i != j and not v:
                    violations.append("%s: q_%d*w_%d != 0" % (label, i + 1, j + 1))
                    bad = True
        if bad:
            return False
        if max(len(w) for w in ws) == 0:
            trace.append({"label": label, "depth": depth, "s": s, "leaf": True})
            return True  # passing checks with all words empty forces s = 1
        if any(len(w) == 0 for w in ws):
            violations.append("%s: empty word in a system of size %d" % (label, s))
            return False
        part: dict = {}
        for idx, w in enumerate(ws):
            part.setdefault(w[0], []).append(idx)
        trace.append({
            "label": label,
            "depth": depth,
            "s": s,
            "partition": {l: [i + 1 for i in part[l]] for l in sorted(part)},
        })
        for l in range(n + 1):
            sub = part.get(l, [])
            sub_ws = [ws[i][1:] for i in sub]
            sub_qs = [qlist[i] * ring.y(l) for i in sub]
            if not level(sub_ws, sub_qs, depth + 1, "%s.%d" % (label, l)):
                return False
        return True

    ok = level(words, list(qs), 0, "top")
    s = len(words)
    if ok and (s - 1) % n != 0:
        raise AssertionError("verified system with s != 1 mod n")
    return WordSystemReport(
        ok=ok,
        s=s,
        n=n,
        s_mod=(s % n) if ok else None,
        violations=violations,
        trace=trace,
        precision=min(precs) if precs else None,
        words=words,
        qs=list(qs),
    )
