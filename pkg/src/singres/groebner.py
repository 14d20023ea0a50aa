"""Reduced Groebner bases with cofactor tracking, and Krull dimension.

Buchberger's algorithm with Gebauer-Moeller pair elimination (the
product and chain criteria) and normal-strategy selection.  Basis
elements are kept with coprime integer coefficients internally and made
monic only in the canonical reduced output, which is sorted descending
by leading monomial so reruns are byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

from .errors import RingMismatchError
from .rings import MonomialOrder, Polynomial

# ---------------------------------------------------------------------------
# raw term-dict helpers


def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _shift(terms, m, factor):
    return {_mono_mul(t, m): c * factor for t, c in terms.items()}


def _add_into(acc, terms, factor=1):
    for m, c in terms.items():
        s = acc.get(m, 0) + c * factor
        if s:
            acc[m] = s
        else:
            del acc[m]


def _content(terms):
    num = 0
    den = 1
    for c in terms.values():
        num = gcd(num, abs(c.numerator))
        den = lcm(den, c.denominator)
    return Fraction(num, den) if num else Fraction(1)


def _scale(terms, factor):
    if factor == 1:
        return terms
    return {m: c * factor for m, c in terms.items()}


def _reduce_full(f_terms, reducers, keyfn, track=False):
    """Canonical remainder of f modulo reducers (list of (lm, lc, terms)).

    With track=True also returns the quotient term-dicts, one per
    reducer, satisfying f = sum(q_i * g_i) + remainder exactly.
    """
    work = dict(f_terms)
    remainder = {}
    quotients = [dict() for _ in reducers] if track else None
    while work:
        m = max(work, key=keyfn)
        c = work.pop(m)
        for idx, (lm, lc, terms) in enumerate(reducers):
            if _divides(lm, m):
                factor = c / lc
                shift = tuple(a - b for a, b in zip(m, lm))
                for m2, c2 in terms.items():
                    if m2 == lm:
                        continue
                    mm = _mono_mul(m2, shift)
                    s = work.get(mm, 0) - factor * c2
                    if s:
                        work[mm] = s
                    else:
                        work.pop(mm, None)
                if track:
                    q = quotients[idx]
                    q[shift] = q.get(shift, 0) + factor
                break
        else:
            remainder[m] = c
    return remainder, quotients


# ---------------------------------------------------------------------------
# public basis object


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis in canonical form.

    cofactors, when present, is a matrix C with gens[i] == sum_j
    C[i][j] * inputs[j] over the ring.
    """

    ring: object
    order: MonomialOrder
    generators: tuple
    reduced: bool = True
    cofactors: tuple = None

    def _reducers(self):
        key = self.order.key
        return [
            (g.leading_monomial(self.order), g.leading_coefficient(self.order), g.terms)
            for g in self.generators
        ]

    def is_unit_ideal(self):
        return len(self.generators) == 1 and self.generators[0].is_constant() and not (
            self.generators[0].is_zero()
        )

    def is_zero_ideal(self):
        return not self.generators

    def leading_monomials(self):
        return [g.leading_monomial(self.order) for g in self.generators]


def normal_form(f, basis, track=False):
    """Unique remainder of f modulo a Groebner basis under its order."""
    if f.ring != basis.ring:
        raise RingMismatchError(f"{f.ring} vs {basis.ring}")
    rem, quot = _reduce_full(f.terms, basis._reducers(), basis.order.key, track=track)
    r = Polynomial(f.ring, rem, _clean=True)
    if track:
        return r, [Polynomial(f.ring, q, _clean=True) for q in quot]
    return r


def s_polynomial(f, g, order=None):
    """The S-polynomial of f and g (both made monic first)."""
    order = order or f.ring.order
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    L = _mono_lcm(lf, lg)
    uf = tuple(a - b for a, b in zip(L, lf))
    ug = tuple(a - b for a, b in zip(L, lg))
    sf = _shift(f.terms, uf, 1 / f.leading_coefficient(order))
    _add_into(sf, _shift(g.terms, ug, -1 / g.leading_coefficient(order)))
    return Polynomial(f.ring, sf, _clean=True)


# ---------------------------------------------------------------------------
# Buchberger


class _Elem:
    __slots__ = ("lm", "lc", "terms", "rep")

    def __init__(self, terms, keyfn, rep=None):
        self.terms = terms
        self.lm = max(terms, key=keyfn)
        self.lc = terms[self.lm]
        self.rep = rep


def _gm_update(G, P, h):
    """Gebauer-Moeller pair update when h is appended to G."""
    t = len(G)
    lmh = h.lm
    kept = set()
    for (i, j) in P:
        L = _mono_lcm(G[i].lm, G[j].lm)
        if (
            not _divides(lmh, L)
            or L == _mono_lcm(G[i].lm, lmh)
            or L == _mono_lcm(G[j].lm, lmh)
        ):
            kept.add((i, j))
    by_lcm = {}
    for i in range(t):
        by_lcm.setdefault(_mono_lcm(G[i].lm, lmh), []).append(i)
    minimal = []
    for L in sorted(by_lcm):
        if all(not _divides(M, L) for M in minimal):
            minimal.append(L)
    for L in minimal:
        if any(_mono_lcm(G[i].lm, lmh) == _mono_mul(G[i].lm, lmh) for i in by_lcm[L]):
            continue  # product criterion: coprime leading terms
        kept.add((min(by_lcm[L]), t))
    G.append(h)
    return kept


def _strip(terms, rep):
    c = _content(terms)
    if terms[max(terms)] < 0:  # sign-normalize on an arbitrary stable pick
        c = -c
    if c != 1:
        terms = _scale(terms, 1 / c)
        if rep is not None:
            rep = [_scale(r, 1 / c) for r in rep]
    return terms, rep


def groebner_basis(gens, order=None, with_cofactors=False):
    """Reduced Groebner basis of the ideal generated by gens.

    Zero generators are permitted and ignored (their cofactor columns
    stay zero).  The empty or all-zero input yields the empty basis.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("groebner_basis needs a ring context; got no generators")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError("generators live in different rings")
    order = order or ring.order
    keyfn = order.key
    n_in = len(gens)

    G = []
    P = set()
    for idx, g in enumerate(gens):
        if g.is_zero():
            continue
        rep = None
        if with_cofactors:
            rep = [dict() for _ in range(n_in)]
            rep[idx] = {(0,) * ring.arity: Fraction(1)}
        terms, rep = _strip(dict(g.terms), rep)
        P = _gm_update(G, P, _Elem(terms, keyfn, rep))

    while P:
        i, j = min(
            P, key=lambda p: (keyfn(_mono_lcm(G[p[0]].lm, G[p[1]].lm)), p)
        )
        P.remove((i, j))
        gi, gj = G[i], G[j]
        L = _mono_lcm(gi.lm, gj.lm)
        ui = tuple(a - b for a, b in zip(L, gi.lm))
        uj = tuple(a - b for a, b in zip(L, gj.lm))
        s = _shift(gi.terms, ui, Fraction(1) / gi.lc)
        _add_into(s, _shift(gj.terms, uj, Fraction(-1) / gj.lc))
        if with_cofactors:
            srep = [dict(r and _shift(r, ui, Fraction(1) / gi.lc)) for r in gi.rep]
            for k, r in enumerate(gj.rep):
                if r:
                    _add_into(srep[k], _shift(r, uj, Fraction(-1) / gj.lc))
        reducers = [(e.lm, e.lc, e.terms) for e in G]
        rem, quot = _reduce_full(s, reducers, keyfn, track=with_cofactors)
        if not rem:
            continue
        rep = None
        if with_cofactors:
            rep = srep
            for k, q in enumerate(quot):
                if not q:
                    continue
                for col, r in enumerate(G[k].rep):
                    if r:
                        for mq, cq in q.items():
                            _add_into(rep[col], _shift(r, mq, -cq))
        rem, rep = _strip(rem, rep)
        P = _gm_update(G, P, _Elem(rem, keyfn, rep))

    # minimalize
    G.sort(key=lambda e: keyfn(e.lm))
    minimal = []
    for e in G:
        if all(not _divides(m.lm, e.lm) for m in minimal):
            minimal.append(e)

    # interreduce tails, then make monic
    for pos, e in enumerate(minimal):
        others = [(m.lm, m.lc, m.terms) for k, m in enumerate(minimal) if k != pos]
        rem, quot = _reduce_full(e.terms, others, keyfn, track=with_cofactors)
        if with_cofactors and quot:
            rep = [dict(r) for r in e.rep]
            idx = 0
            for k, m in enumerate(minimal):
                if k == pos:
                    continue
                q = quot[idx]
                idx += 1
                if q:
                    for col, r in enumerate(m.rep):
                        if r:
                            for mq, cq in q.items():
                                _add_into(rep[col], _shift(r, mq, -cq))
            e.rep = rep
        e.terms = rem
        e.lm = max(rem, key=keyfn)
        e.lc = rem[e.lm]

    minimal.sort(key=lambda e: keyfn(e.lm), reverse=True)
    out = []
    cof = [] if with_cofactors else None
    for e in minimal:
        inv = Fraction(1) / e.lc
        out.append(Polynomial(ring, _scale(e.terms, inv), _clean=True))
        if with_cofactors:
            cof.append(
                tuple(Polynomial(ring, _scale(r, inv), _clean=True) for r in e.rep)
            )
    return GroebnerBasis(
        ring=ring,
        order=order,
        generators=tuple(out),
        reduced=True,
        cofactors=tuple(cof) if cof is not None else None,
    )


def lift_combination(target, gens, basis=None):
    """Coefficients c with target == sum(c_i * gens_i), or None.

    None signals that target is not in the ideal; the identity is exact
    and checked by the caller's tests, not unique.
    """
    gens = list(gens)
    ring = target.ring
    if basis is None or basis.cofactors is None:
        basis = groebner_basis(gens if gens else [target.ring.zero()], with_cofactors=True)
    if target.is_zero():
        return [ring.zero() for _ in gens]
    if basis.is_zero_ideal():
        return None
    r, quot = normal_form(target, basis, track=True)
    if not r.is_zero():
        return None
    out = [ring.zero() for _ in gens]
    for q, row in zip(quot, basis.cofactors):
        if q.is_zero():
            continue
        for j, c in enumerate(row):
            if not c.is_zero():
                out[j] = out[j] + q * c
    return out


# ---------------------------------------------------------------------------
# dimension


def krull_dimension(gens, ring=None):
    """Dimension of k[x]/(gens); None for the unit ideal.

    Measured as the largest variable subset independent modulo the
    leading-term ideal of a degrevlex basis.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("need a ring when no generators are given")
        ring = gens[0].ring
    nonzero = [g for g in gens if not g.is_zero()]
    if not nonzero:
        return ring.arity
    gb = groebner_basis(nonzero, order=MonomialOrder())
    if gb.is_unit_ideal():
        return None
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in gb.leading_monomials()]
    n = ring.arity
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            s = set(subset)
            if all(not sup <= s for sup in supports):
                return size
    return 0
