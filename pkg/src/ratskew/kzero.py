"""Finitely presented commutative monoids and their universal groups.

A presentation lists generators and relations between nonnegative integer
combinations of them.  Two computations matter here:

* the universal enveloping group (free abelian group modulo the relation
  differences), returned in invariant-factor form with the image of every
  generator — this is the K-theory side;
* direct enumeration of the monoid itself by closing the generators under
  addition modulo the relations, which exposes the shape (conical? does the
  set of nonzero elements form a group?) that characterizes the monoids of
  purely infinite simple rings.

Enumeration rewrites with a single oriented relation, which is confluent
because each step is determined by the unique rule; richer presentations
are refused rather than half-supported.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field


@dataclass(frozen=True)
class MonoidPresentation:
    gens: tuple
    relations: tuple  # pairs of exponent vectors (left, right)

    def __post_init__(self):
        k = len(self.gens)
        if k == 0:
            raise ValueError("need at least one generator")
        if len(set(self.gens)) != k:
            raise ValueError("duplicate generator names")
        rels = []
        for l, r in self.relations:
            if len(l) != k or len(r) != k:
                raise ValueError("relation arity mismatch")
            rels.append((tuple(l), tuple(r)))
        # canonical storage order so equal presentations compare equal
        object.__setattr__(self, "relations", tuple(sorted(rels)))

    def render(self) -> str:
        def side(v):
            parts = []
            for g, e in zip(self.gens, v):
                if e == 0:
                    continue
                parts.append(g if e == 1 else "%d%s" % (e, g))
            return "+".join(parts) if parts else "0"

        rels = ", ".join("%s=%s" % (side(l), side(r)) for l, r in self.relations)
        return "%s | %s" % (",".join(self.gens), rels)


_TERM = re.compile(r"^(\d*)\s*([A-Za-z_][A-Za-z_0-9']*)$")


def parse_presentation(text: str) -> MonoidPresentation:
    """Parse ``"I,P | I=2I+P, P=2P"`` style presentations.

    Sides are sums of ``<coeff><gen>`` terms; a bare ``0`` denotes the
    identity.  Raises ValueError with the offending fragment on bad input.
    """
    if "|" not in text:
        raise ValueError("expected 'gens | relations'")
    gpart, rpart = text.split("|", 1)
    gens = tuple(g.strip() for g in gpart.split(",") if g.strip())
    if not gens:
        raise ValueError("no generators in %r" % gpart)
    index = {g: i for i, g in enumerate(gens)}

    def parse_side(s: str):
        v = [0] * len(gens)
        s = s.strip()
        if s == "0":
            return tuple(v)
        for term in s.split("+"):
            term = term.strip()
            m = _TERM.match(term)
            if not m:
                raise ValueError("bad term %r" % term)
            c = int(m.group(1)) if m.group(1) else 1
            g = m.group(2)
            if g not in index:
                raise ValueError("unknown generator %r" % g)
            v[index[g]] += c
        return tuple(v)

    relations = []
    rpart = rpart.strip()
    if rpart:
        for rel in rpart.split(","):
            rel = rel.strip()
            if not rel:
                continue
            if "=" not in rel:
                raise ValueError("relation %r needs '='" % rel)
            lhs, rhs = rel.split("=", 1)
            relations.append((parse_side(lhs), parse_side(rhs)))
    return MonoidPresentation(gens, tuple(relations))


# ---------------------------------------------------------------------------
# Smith normal form over the integers
# ---------------------------------------------------------------------------

def smith_normal_form(a):
    """D, U, V with U*a*V = D, U and V unimodular, D diagonal with
    d_1 | d_2 | ... and nonnegative entries."""
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(row) for row in a]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        d[dst] = [x + c * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in d:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # pick the smallest nonzero pivot in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            # clear the pivot column, then row, iterating while remainders appear
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    add_row(i, t, -q)
                    if d[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    add_col(j, t, -q)
                    if d[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty and all(d[i][t] == 0 for i in range(t + 1, m)) and all(
                d[t][j] == 0 for j in range(t + 1, n)
            ):
                break
        # divisibility: fold any bad entry into the pivot's row and repeat
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % d[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(t, bad, 1)
            continue
        if d[t][t] < 0:
            negate_row(t)
        t += 1
    return d, u, v


@dataclass(frozen=True)
class AbGroup:
    """Invariant-factor description: factors (each 0 or >= 2, finite parts
    in divisibility order, zeros last) plus the image of each generator."""

    factors: tuple
    images: dict  # generator name -> coordinate tuple

    def order(self):
        n = 1
        for f in self.factors:
            if f == 0:
                return None
            n *= f
        return n

    def element_order(self, coords):
        from math import gcd
        o = 1
        for c, f in zip(coords, self.factors):
            if f == 0:
                if c != 0:
                    return None
                continue
            c %= f
            o_here = f // gcd(f, c) if c else 1
            o = o * o_here // gcd(o, o_here)
        return o

    def render(self) -> str:
        if not self.factors:
            return "0"
        return " x ".join("Z" if f == 0 else "Z/%d" % f for f in self.factors)

    def to_json(self):
        return {
            "factors": list(self.factors),
            "images": {g: list(c) for g, c in self.images.items()},
        }


def grothendieck_group(p: MonoidPresentation) -> AbGroup:
    """Universal group of the monoid: free abelian on the generators modulo
    the relation differences, in invariant-factor coordinates."""
    k = len(p.gens)
    rows = [[l[i] - r[i] for i in range(k)] for l, r in p.relations]
    if not rows:
        d = []
        vmat = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    else:
        d, _, vmat = smith_normal_form(rows)
    diag = [d[i][i] if i < len(d) and i < len(d[0]) else 0 for i in range(k)] if rows else [0] * k
    # coordinates of generator j in the new basis: row j of V
    raw = [[vmat[j][i] for i in range(k)] for j in range(k)]
    keep = [i for i in range(k) if diag[i] != 1]
    # finite factors first (SNF order), then the free ones
    keep.sort(key=lambda i: (diag[i] == 0, i))
    factors = []
    images = {g: [] for g in p.gens}
    for i in keep:
        f = diag[i]
        factors.append(f)
        for j, g in enumerate(p.gens):
            c = raw[j][i]
            images[g].append(c % f if f else c)
    # normalize free coordinates so the first generator hitting one is positive
    for pos, f in enumerate(factors):
        if f != 0:
            continue
        for g in p.gens:
            c = images[g][pos]
            if c:
                if c < 0:
                    for h in p.gens:
                        images[h][pos] = -images[h][pos]
                break
    return AbGroup(tuple(factors), {g: tuple(c) for g, c in images.items()})


# ---------------------------------------------------------------------------
# direct enumeration
# ---------------------------------------------------------------------------

class UnsupportedPresentation(ValueError):
    pass


@dataclass
class MonoidTable:
    elements: list  # normal-form exponent vectors; index 0 is the identity
    table: list  # table[i][j] = index of elements[i]+elements[j], or None
    complete: bool
    overflow: bool
    bound: int

    def size(self) -> int:
        return len(self.elements)

    def add(self, i: int, j: int):
        return self.table[i][j]


def _orient(relations):
    """Single-relation rewriting: orient the relation so rewriting strictly
    decreases (total degree, lex)."""
    rules = [(l, r) for l, r in relations if l != r]
    if len(rules) > 1:
        raise UnsupportedPresentation(
            "enumeration handles at most one nontrivial relation; got %d" % len(rules)
        )
    if not rules:
        return None
    l, r = rules[0]
    if (sum(l), l) < (sum(r), r):
        l, r = r, l
    return l, r


def monoid_enumerate(p: MonoidPresentation, bound: int = 512) -> MonoidTable:
    """Close the generators under addition, reducing every sum to its normal
    form.  Stops with ``overflow`` once more than ``bound`` elements appear;
    the partial table keeps None for sums that left the enumerated set."""
    k = len(p.gens)
    rule = _orient(p.relations)

    def nf(v):
        v = list(v)
        if rule is not None:
            big, small = rule
            while all(a >= b for a, b in zip(v, big)):
                v = [a - b + c for a, b, c in zip(v, big, small)]
        return tuple(v)

    zero = nf((0,) * k)
    elems = [zero]
    index = {zero: 0}
    gens = []
    for j in range(k):
        v = nf(tuple(1 if i == j else 0 for i in range(k)))
        if v not in index:
            index[v] = len(elems)
            elems.append(v)
        gens.append(index[v])

    overflow = False
    frontier = list(range(len(elems)))
    while frontier and not overflow:
        new = []
        for i in frontier:
            for g in gens:
                s = nf(tuple(a + b for a, b in zip(elems[i], elems[g])))
                if s not in index:
                    if len(elems) >= bound:
                        overflow = True
                        break
                    index[s] = len(elems)
                    elems.append(s)
                    new.append(index[s])
            if overflow:
                break
        frontier = new

    table = []
    for i in range(len(elems)):
        row = []
        for j in range(len(elems)):
            s = nf(tuple(a + b for a, b in zip(elems[i], elems[j])))
            row.append(index.get(s))
        table.append(row)
    complete = not overflow and all(all(e is not None for e in row) for row in table)
    return MonoidTable(elems, table, complete, overflow, bound)


@dataclass
class MonoidShapeReport:
    """What the addition table says about the monoid, with ``complete``
    telling whether the verdicts cover the whole monoid or only the
    enumerated fragment."""

    size: int
    complete: bool
    conical: bool
    nonzero_closed: bool
    simple: bool
    nonzero_is_group: bool
    group: AbGroup | None
    generator_orders_match: bool | None
    matches_group_side: bool | None
    notes: list = dc_field(default_factory=list)

    def to_json(self):
        return {
            "size": self.size,
            "complete": self.complete,
            "conical": self.conical,
            "nonzero_closed": self.nonzero_closed,
            "simple": self.simple,
            "nonzero_is_group": self.nonzero_is_group,
            "group": self.group.to_json() if self.group else None,
            "generator_orders_match": self.generator_orders_match,
            "matches_group_side": self.matches_group_side,
            "notes": list(self.notes),
        }


def analyze_pisr_shape(p: MonoidPresentation, bound: int = 512) -> MonoidShapeReport:
    """Shape flags for the enumerated monoid and, when the nonzero part is a
    group, its invariant factors compared against the universal group."""
    tbl = monoid_enumerate(p, bound)
    N = tbl.size()
    notes = []
    if tbl.overflow:
        notes.append("enumeration stopped at bound %d; verdicts cover the fragment only" % tbl.bound)
    nz = [i for i in range(N) if i != 0]

    conical = True
    for i in nz:
        for j in nz:
            if tbl.table[i][j] == 0:
                conical = False
    nonzero_closed = conical  # a+b = 0 with a,b nonzero is the only way out

    # simple: every nonzero y lies below some positive multiple of every
    # nonzero x, i.e. some n*x equals y plus something (within the table)
    rows = []
    for j in range(N):
        s = set(tbl.table[j])
        s.discard(None)
        rows.append(s)
    simple = True
    for i in nz:
        mults = set()
        cur = i
        while cur is not None and cur not in mults:
            mults.add(cur)
            cur = tbl.table[cur][i]
        for j in nz:
            if mults.isdisjoint(rows[j]):
                simple = False
                break
        if not simple:
            break

    ident = None
    for e in nz:
        if all(tbl.table[e][x] in (x, None) for x in nz) and any(
            tbl.table[e][x] == x for x in nz
        ):
            # candidate; confirm on every defined entry
            if all(tbl.table[e][x] == x for x in nz if tbl.table[e][x] is not None):
                ident = e
                break
    nonzero_is_group = False
    group = None
    gen_match = None
    matches = None
    if ident is not None and not tbl.overflow and conical:
        has_inv = all(
            any(tbl.table[x][y] == ident for y in nz) for x in nz
        )
        if has_inv and len(nz) > 64:
            nonzero_is_group = True
            notes.append("nonzero part is a group of order %d; too large to re-present, comparison skipped" % len(nz))
        elif has_inv:
            nonzero_is_group = True
            # present the group on all nonzero elements and read off factors
            names = tuple("e%d" % i for i in nz)
            pos = {x: t for t, x in enumerate(nz)}
            rels = []
            for x in nz:
                for y in nz:
                    z = tbl.table[x][y]
                    lv = [0] * len(nz)
                    lv[pos[x]] += 1
                    lv[pos[y]] += 1
                    rv = [0] * len(nz)
                    rv[pos[z]] += 1
                    rels.append((tuple(lv), tuple(rv)))
            iv = [0] * len(nz)
            iv[pos[ident]] = 1
            rels.append((tuple(iv), tuple([0] * len(nz))))
            group = grothendieck_group(MonoidPresentation(names, tuple(rels)))
            # compare generator orders with the universal-group images
            ug = grothendieck_group(p)
            matches = group.factors == ug.factors
            gen_match = True
            for j, g in enumerate(p.gens):
                v = tuple(1 if i == j else 0 for i in range(len(p.gens)))
                # normal form of the generator inside the table
                gi = None
                for idx, el in enumerate(tbl.elements):
                    if el == _nf_of(p, v):
                        gi = idx
                        break
                if gi is None or gi == 0:
                    continue
                o_tab = group.element_order(group.images["e%d" % gi])
                o_grp = ug.element_order(ug.images[g])
                if o_tab != o_grp:
                    gen_match = False
            matches = matches and gen_match
    return MonoidShapeReport(
        size=N,
        complete=tbl.complete,
        conical=conical,
        nonzero_closed=nonzero_closed,
        simple=simple,
        nonzero_is_group=nonzero_is_group,
        group=group,
        generator_orders_match=gen_match,
        matches_group_side=matches,
        notes=notes,
    )


def _nf_of(p: MonoidPresentation, v):
    rule = _orient(p.relations)
    v = list(v)
    if rule is not None:
        big, small = rule
        while all(a >= b for a, b in zip(v, big)):
            v = [a - b + c for a, b, c in zip(v, big, small)]
    return tuple(v)
