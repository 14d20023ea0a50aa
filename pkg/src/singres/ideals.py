"""Ideal-theoretic operations: equality, sum/product/power, intersection,
quotient, saturation, elimination, ring-map image and preimage, and gluing.

Every presentation is a finite generator list in a named ring; equality
always means mutual membership, never generator-list identity.  Reduced
Groebner bases are cached per monomial order on the presentation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PartitionFailureError, RingMismatchError, WorkLimitError
from .groebner import (
    GroebnerBasis,
    groebner_basis,
    krull_dimension,
    lift_combination,
    normal_form,
)
from .parsing import parse_polynomial
from .rings import MonomialOrder, PolyRing, Polynomial, fresh_names, into_ring

EQUAL = "EQUAL"
SUBSET = "SUBSET"  # first contained in second
SUPERSET = "SUPERSET"
INCOMPARABLE = "INCOMPARABLE"

DEFAULT_WORK_LIMIT = 100_000


@dataclass(eq=False)
class IdealPresentation:
    """A generator list in a named ambient ring, with cached bases."""

    ring: PolyRing
    gens: tuple
    cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        gens = []
        for g in self.gens:
            if isinstance(g, str):
                g = parse_polynomial(g, self.ring)
            if g.ring != self.ring:
                raise RingMismatchError("generator outside the ambient ring")
            gens.append(g)
        self.gens = tuple(gens)

    def groebner(self, order=None, with_cofactors=False):
        order = order or self.ring.order
        key = (order, with_cofactors)
        if key not in self.cache:
            nonzero = [g for g in self.gens if not g.is_zero()]
            if not nonzero:
                self.cache[key] = GroebnerBasis(
                    ring=self.ring,
                    order=order,
                    generators=(),
                    cofactors=tuple(tuple(self.ring.zero() for _ in self.gens) for _ in ())
                    if with_cofactors
                    else None,
                )
            else:
                gb = groebner_basis(self.gens, order=order, with_cofactors=with_cofactors)
                self.cache[key] = gb
        return self.cache[key]

    def contains(self, f):
        return normal_form(f, self.groebner()).is_zero()

    def is_unit(self):
        return self.groebner().is_unit_ideal()

    def is_zero(self):
        return self.groebner().is_zero_ideal()

    def canonical(self):
        """Presentation whose generators are the reduced basis itself."""
        gb = self.groebner()
        out = IdealPresentation(self.ring, gb.generators)
        out.cache[(gb.order, False)] = gb
        return out

    def nonbase_gens(self, base_gb):
        """Generators surviving reduction modulo a base ideal's basis."""
        out = []
        seen = set()
        for g in self.gens:
            r = normal_form(g, base_gb)
            if not r.is_zero() and r not in seen:
                seen.add(r)
                out.append(r)
        return out

    def dimension(self):
        return krull_dimension(self.gens, ring=self.ring)

    def __repr__(self):
        from .parsing import format_gens

        return f"IdealPresentation{format_gens(self.gens)}"


def ideal(ring_, gens):
    return IdealPresentation(ring_, tuple(gens))


def _same_ring(I, J):
    if I.ring != J.ring:
        raise RingMismatchError(f"{I.ring} vs {J.ring}")


def ideal_compare(I, J):
    """EQUAL / SUBSET (I in J) / SUPERSET / INCOMPARABLE by mutual membership."""
    _same_ring(I, J)
    gbI, gbJ = I.groebner(), J.groebner()
    i_in_j = all(normal_form(g, gbJ).is_zero() for g in I.gens)
    j_in_i = all(normal_form(g, gbI).is_zero() for g in J.gens)
    if i_in_j and j_in_i:
        return EQUAL
    if i_in_j:
        return SUBSET
    if j_in_i:
        return SUPERSET
    return INCOMPARABLE


def ideal_sum(*ideals):
    ring_ = ideals[0].ring
    gens = []
    for I in ideals:
        if I.ring != ring_:
            raise RingMismatchError("summands in different rings")
        gens.extend(I.gens)
    return IdealPresentation(ring_, tuple(gens))


def ideal_product(I, J):
    _same_ring(I, J)
    gens = []
    seen = set()
    for g in I.gens:
        for h in J.gens:
            p = g * h
            if not p.is_zero() and p not in seen:
                seen.add(p)
                gens.append(p)
    return IdealPresentation(I.ring, tuple(gens))


def power_generators(gens, n, modulo_gb=None, work_limit=DEFAULT_WORK_LIMIT):
    """Generators of (gens)^n, optionally reduced modulo a quotient basis.

    Intermediate products are interreduced through Groebner bases to
    keep generator counts small; a work limit guards runaway growth.
    """
    if n == 0:
        raise ValueError("power_generators needs n >= 1")

    def clean(polys):
        out = []
        seen = set()
        for p in polys:
            if modulo_gb is not None:
                p = normal_form(p, modulo_gb)
            if p.is_zero() or p in seen:
                continue
            if p.is_constant():
                return [p.ring.one()]
            seen.add(p)
            out.append(p)
        return out

    base = clean(gens)
    if not base:
        return []
    if base == [base[0].ring.one()]:
        return base

    def shrink(polys):
        if len(polys) <= 1:
            return polys
        if modulo_gb is not None and modulo_gb.generators:
            gb = groebner_basis(list(polys) + list(modulo_gb.generators))
        else:
            gb = groebner_basis(polys)
        kept = clean(gb.generators)
        return kept if kept else []

    def mul(A, B):
        out = []
        seen = set()
        total = 0
        for a in A:
            for b in B:
                p = a * b
                if modulo_gb is not None:
                    p = normal_form(p, modulo_gb)
                if p.is_zero() or p in seen:
                    continue
                if p.is_constant():
                    return [p.ring.one()]
                seen.add(p)
                total += len(p.terms)
                if total > work_limit:
                    raise WorkLimitError(
                        f"ideal power exceeded {work_limit} intermediate terms"
                    )
                out.append(p)
        return shrink(out)

    if len(base) == 1:
        g = base[0]

        def mulred(a, b):
            p = a * b
            if modulo_gb is not None:
                p = normal_form(p, modulo_gb)
            if len(p.terms) > work_limit:
                raise WorkLimitError(
                    f"ideal power exceeded {work_limit} intermediate terms"
                )
            return p

        result = None
        square = g
        bits = n
        while bits:
            if bits & 1:
                result = square if result is None else mulred(result, square)
                if result.is_zero():
                    return []
            bits >>= 1
            if bits:
                square = mulred(square, square)
                if square.is_zero():
                    # a remaining set bit multiplies in a zero factor
                    return []
        return [result] if not result.is_constant() else [result.ring.one()]

    result = None
    square = base
    bits = n
    while bits:
        if bits & 1:
            result = square if result is None else mul(result, square)
            if not result:
                return []
        bits >>= 1
        if bits:
            square = mul(square, square)
            if not square:
                return []
    return result


def ideal_power(I, n):
    """I^n, generated by n-fold products; I^0 is the unit ideal."""
    if n < 0:
        raise ValueError("negative ideal power")
    if n == 0:
        return IdealPresentation(I.ring, (I.ring.one(),))
    nonzero = [g for g in I.gens if not g.is_zero()]
    if not nonzero:
        return IdealPresentation(I.ring, ())
    gens = power_generators(nonzero, n)
    return IdealPresentation(I.ring, tuple(gens))


# ---------------------------------------------------------------------------
# elimination and the operations built on it


def eliminate(I, kill, result_ring=None):
    """Generators of I intersected with the subring omitting `kill`.

    `kill` is an iterable of variable names; the result lives in the
    ring on the remaining variables (original relative order).
    """
    kill = set(kill)
    unknown = kill - set(I.ring.variables)
    if unknown:
        raise RingMismatchError(f"cannot eliminate absent variables {sorted(unknown)}")
    first = [v for v in I.ring.variables if v in kill]
    rest = [v for v in I.ring.variables if v not in kill]
    if result_ring is None:
        result_ring = PolyRing(tuple(rest), MonomialOrder())
    if not first:
        return IdealPresentation(result_ring, tuple(into_ring(g, result_ring) for g in I.gens))
    k = len(first)
    elim_ring = PolyRing(tuple(first + rest), MonomialOrder("block", k))
    moved = [into_ring(g, elim_ring) for g in I.gens if not g.is_zero()]
    if not moved:
        return IdealPresentation(result_ring, ())
    gb = groebner_basis(moved, order=elim_ring.order)
    kept = [
        g
        for g in gb.generators
        if all(all(m[i] == 0 for i in range(k)) for m in g.terms)
    ]
    return IdealPresentation(result_ring, tuple(into_ring(g, result_ring) for g in kept))


def intersect(I, J):
    """I intersected with J via the auxiliary-variable trick."""
    _same_ring(I, J)
    if I.is_unit():
        return J.canonical()
    if J.is_unit():
        return I.canonical()
    if I.is_zero() or J.is_zero():
        return IdealPresentation(I.ring, ())
    (t,) = fresh_names(["t"], I.ring.variables)
    ext = PolyRing((t,) + I.ring.variables, MonomialOrder("block", 1))
    tpoly = ext.gen(t)
    gens = [tpoly * into_ring(g, ext) for g in I.gens if not g.is_zero()]
    gens += [(ext.one() - tpoly) * into_ring(g, ext) for g in J.gens if not g.is_zero()]
    return eliminate(IdealPresentation(ext, tuple(gens)), {t}, result_ring=I.ring)


def _exact_divide(p, g):
    """p / g for an exact single-divisor multiple; raises if not divisible."""
    order = p.ring.order
    basis = GroebnerBasis(ring=p.ring, order=order, generators=(g.monic(order),), reduced=False)
    r, quot = normal_form(p, basis, track=True)
    if not r.is_zero():
        raise ArithmeticError("exact division failed")
    return quot[0] * (1 / g.leading_coefficient(order))


def quotient(I, J):
    """The ideal quotient (I : J)."""
    _same_ring(I, J)
    if I.is_unit():
        return IdealPresentation(I.ring, (I.ring.one(),))
    gens = [g for g in J.gens if not g.is_zero()]
    if not gens:
        return IdealPresentation(I.ring, (I.ring.one(),))
    acc = None
    for g in gens:
        cap = intersect(I, IdealPresentation(I.ring, (g,)))
        part = IdealPresentation(
            I.ring, tuple(_exact_divide(p, g) for p in cap.gens if not p.is_zero())
        )
        acc = part if acc is None else intersect(acc, part)
    return acc.canonical()


def saturate(I, J):
    """(I : J^infinity), by iterated quotient to the fixpoint."""
    _same_ring(I, J)
    current = I
    while True:
        nxt = quotient(current, J)
        if ideal_compare(nxt, current) == EQUAL:
            return current.canonical()
        current = nxt


def saturate_element(I, h):
    return saturate(I, IdealPresentation(I.ring, (h,)))


def glue_ideals(pieces, modulo=None):
    """The unique ideal agreeing with each I_i on the locus h_i != 0.

    pieces is a list of (IdealPresentation, Polynomial h).  The h_i must
    generate the unit ideal in the working (quotient) ring; `modulo`
    supplies that quotient's defining generators when present.
    """
    if not pieces:
        raise ValueError("glue_ideals needs at least one piece")
    ring_ = pieces[0][0].ring
    hs = [h for _, h in pieces]
    extra = list(modulo.gens) if modulo is not None else []
    if lift_combination(ring_.one(), hs + extra) is None:
        raise PartitionFailureError("local pieces do not cover: (h_i) != (1)")
    acc = None
    for I, h in pieces:
        part = saturate_element(I, h)
        acc = part if acc is None else intersect(acc, part)
    return acc.canonical()


# ---------------------------------------------------------------------------
# ring maps


@dataclass(frozen=True)
class RingMap:
    """A k-algebra map source -> target/targetQuotient given on variables."""

    source: PolyRing
    target: PolyRing
    images: tuple
    target_quotient: IdealPresentation = None

    def __post_init__(self):
        if len(self.images) != self.source.arity:
            raise RingMismatchError("one image per source variable required")
        for img in self.images:
            if img.ring != self.target:
                raise RingMismatchError("image outside the target ring")
        if self.target_quotient is not None and self.target_quotient.ring != self.target:
            raise RingMismatchError("target quotient outside the target ring")

    def apply(self, p):
        if p.ring != self.source:
            raise RingMismatchError("polynomial outside the source ring")
        return p.substitute(self.target, list(self.images))

    def is_identity_on(self, i):
        """True when source variable i maps to the same-named target variable."""
        name = self.source.variables[i]
        return name in self.target.variables and self.images[i] == self.target.gen(name)


def identity_map(ring_):
    return RingMap(ring_, ring_, tuple(ring_.gens()))


def compose_maps(parent, child):
    """Variable-wise substitution composition (parent then child)."""
    if parent.target != child.source:
        raise RingMismatchError("parent target must equal child source")
    return RingMap(
        parent.source,
        child.target,
        tuple(child.apply(img) for img in parent.images),
        target_quotient=child.target_quotient,
    )


def map_image(phi, I):
    """The ideal generated by the images of the generators."""
    if I.ring != phi.source:
        raise RingMismatchError("ideal outside the map's source ring")
    return IdealPresentation(phi.target, tuple(phi.apply(g) for g in I.gens))


def map_preimage(phi, I):
    """phi^{-1}(I + targetQuotient), presented canonically in the source.

    Computed in a joint ring by eliminating the target variables from
    I + targetQuotient + (s - phi(s)); source variables mapped
    identically onto same-named target variables are shared rather than
    duplicated, which changes nothing about the resulting ideal.
    """
    if I.ring != phi.target:
        raise RingMismatchError("ideal outside the map's target ring")
    src, tgt = phi.source, phi.target
    shared = [i for i in range(src.arity) if phi.is_identity_on(i)]
    shared_names = {src.variables[i] for i in shared}
    elim_targets = [v for v in tgt.variables if v not in shared_names]

    taken = set(tgt.variables) | set(src.variables)
    unshared = [i for i in range(src.arity) if i not in shared]
    tags = fresh_names([src.variables[i] for i in unshared], taken)
    tag_of = dict(zip(unshared, tags))

    tail = [tag_of.get(i, src.variables[i]) for i in range(src.arity)]
    k = len(elim_targets)
    joint = PolyRing(tuple(elim_targets) + tuple(tail), MonomialOrder("block", k) if k else MonomialOrder())

    def from_target(p):
        return into_ring(p, joint)

    def from_source(p):
        vmap = {i: joint.var_index(tail[i]) for i in range(src.arity)}
        return into_ring(p, joint, var_map=vmap)

    gens = [from_target(g) for g in I.gens]
    if phi.target_quotient is not None:
        gens += [from_target(g) for g in phi.target_quotient.gens]
    for i in unshared:
        gens.append(joint.gen(tag_of[i]) - from_target(phi.images[i]))

    inside = eliminate(IdealPresentation(joint, tuple(gens)), set(elim_targets))
    back = {inside.ring.var_index(tail[i]): i for i in range(src.arity)}
    result = IdealPresentation(
        src, tuple(into_ring(g, src, var_map=back) for g in inside.gens)
    )
    return result.canonical()
