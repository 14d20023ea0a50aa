"""Sparse multivariate polynomial arithmetic over exact rationals.

Polynomials are immutable after construction: term maps send exponent
tuples to nonzero ``Fraction`` coefficients, and the zero polynomial is
the empty map.  All coefficient arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import RingMismatchError

LEX = "lex"
DEGREVLEX = "degrevlex"
BLOCK = "block"


@dataclass(frozen=True)
class MonomialOrder:
    """A multiplicative well-order on exponent vectors.

    ``block(k)`` is the elimination order killing the first ``k``
    variables: degrevlex on the first block, ties broken by degrevlex
    on the rest.
    """

    tag: str = DEGREVLEX
    block: int = 0

    def __post_init__(self):
        if self.tag not in (LEX, DEGREVLEX, BLOCK):
            raise ValueError(f"unknown monomial order tag {self.tag!r}")
        if self.tag == BLOCK and self.block < 1:
            raise ValueError("block order needs a positive block size")

    def key(self, exps):
        """Sort key: bigger key means bigger monomial."""
        if self.tag == LEX:
            return exps
        if self.tag == DEGREVLEX:
            return _drl_key(exps)
        k = self.block
        return (_drl_key(exps[:k]), _drl_key(exps[k:]))

    def __str__(self):
        return f"block({self.block})" if self.tag == BLOCK else self.tag


def _drl_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


@dataclass(frozen=True)
class PolyRing:
    """A named polynomial ring Q[x1,...,xN] with a default monomial order."""

    variables: tuple
    order: MonomialOrder = MonomialOrder()

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        object.__setattr__(self, "variables", tuple(self.variables))

    @property
    def arity(self):
        return len(self.variables)

    def var_index(self, name):
        return self.variables.index(name)

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def const(self, value):
        c = Fraction(value)
        if c == 0:
            return self.zero()
        return Polynomial(self, {(0,) * self.arity: c})

    def gen(self, name):
        i = self.var_index(name)
        e = [0] * self.arity
        e[i] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self):
        return [self.gen(v) for v in self.variables]

    def __str__(self):
        return "Q[" + ",".join(self.variables) + "]"


def ring(names, order=None):
    """Build a PolyRing from 'x,y,z' or an iterable of names."""
    if isinstance(names, str):
        names = [v.strip() for v in names.split(",") if v.strip()]
    return PolyRing(tuple(names), order or MonomialOrder())


class Polynomial:
    """A sparse polynomial attached to its ring."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms, _clean=False):
        self.ring = ring
        if _clean:
            self.terms = terms
        else:
            self.terms = {tuple(m): Fraction(c) for m, c in terms.items() if c != 0}
        self._hash = None

    # -- basic queries -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(m) == 0 for m in self.terms)

    def is_one(self):
        z = (0,) * self.ring.arity
        return len(self.terms) == 1 and self.terms.get(z) == 1

    def constant_value(self):
        return self.terms.get((0,) * self.ring.arity, Fraction(0))

    def total_degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, i):
        return max((m[i] for m in self.terms), default=-1)

    def variables_used(self):
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    def leading_monomial(self, order=None):
        order = order or self.ring.order
        if not self.terms:
            return None
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order=None):
        m = self.leading_monomial(order)
        return Fraction(0) if m is None else self.terms[m]

    def sorted_terms(self, order=None):
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def sort_key(self, order=None):
        """A total-order key on polynomials, used for deterministic output."""
        order = order or self.ring.order
        return tuple((order.key(m), c) for m, c in self.sorted_terms(order))

    # -- arithmetic ----------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero()
            return Polynomial(
                self.ring, {m: co * c for m, co in self.terms.items()}, _clean=True
            )
        self._check(other)
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        out = {}
        for m1, c1 in small.items():
            for m2, c2 in big.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(self.ring, out, _clean=True)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n > 1
            n >>= 1
            if base_needed:
                base = base * base
        return result

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        from .parsing import format_polynomial

        return format_polynomial(self)

    # -- calculus and maps ----------------------------------------------

    def derivative(self, var):
        """Partial derivative with respect to a variable name or index."""
        i = var if isinstance(var, int) else self.ring.var_index(var)
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            m2 = m[:i] + (e - 1,) + m[i + 1 :]
            s = out.get(m2, 0) + c * e
            if s:
                out[m2] = s
            else:
                del out[m2]
        return Polynomial(self.ring, out, _clean=True)

    def substitute(self, target_ring, images):
        """Evaluate under x_i -> images[i], landing in target_ring."""
        if len(images) != self.ring.arity:
            raise RingMismatchError("one image required per variable")
        out = target_ring.zero()
        powers = [{} for _ in images]
        for m, c in self.terms.items():
            term = target_ring.const(c)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                cache = powers[i]
                if e not in cache:
                    cache[e] = images[i] ** e
                term = term * cache[e]
            out = out + term
        return out

    def content(self):
        """Positive rational c such that self/c has coprime integer coefficients."""
        if not self.terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, abs(c.numerator))
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self):
        """Integer-coprime rescaling with positive leading coefficient."""
        if not self.terms:
            return self
        p = self * (1 / self.content())
        if p.leading_coefficient() < 0:
            p = -p
        return p

    def monic(self, order=None):
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))


def rename_ring(ring_, names):
    """Same polynomials, new variable names (arity preserved)."""
    return PolyRing(tuple(names), ring_.order)


def into_ring(poly, target, var_map=None):
    """Re-home a polynomial into target by variable-name lookup.

    var_map optionally overrides name lookup with source-index ->
    target-index.  Variables not present in target must be unused.
    """
    if var_map is None:
        var_map = {}
        for i, name in enumerate(poly.ring.variables):
            if name in target.variables:
                var_map[i] = target.var_index(name)
    out = {}
    for m, c in poly.terms.items():
        e = [0] * target.arity
        for i, exp in enumerate(m):
            if exp == 0:
                continue
            if i not in var_map:
                raise RingMismatchError(
                    f"variable {poly.ring.variables[i]} has no home in {target}"
                )
            e[var_map[i]] = exp
        key = tuple(e)
        s = out.get(key, 0) + c
        if s:
            out[key] = s
        else:
            del out[key]
    return Polynomial(target, out, _clean=True)


def fresh_names(base_names, taken, count=None):
    """Collision-avoiding variable names: each base gets a numeric suffix if taken."""
    taken = set(taken)
    out = []
    for base in base_names:
        name = base
        suffix = 0
        while name in taken:
            suffix += 1
            name = f"{base}_{suffix}"
        taken.add(name)
        out.append(name)
    if count is not None and len(out) != count:
        raise ValueError("name count mismatch")
    return out
