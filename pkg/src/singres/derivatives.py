"""First and iterated derivative ideals, maximal order of vanishing, and
the locus of points of vanishing order at least b.

All derivative ideals are stored in the ambient polynomial ring with the
presentation's base ideal among the generators, so saturation and
intersection in quotient rings reduce to the polynomial-ring operations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PreconditionError
from .geometry import jacobian_minors_cover, vanishes_on_component
from .ideals import IdealPresentation, intersect, saturate_element
from .rings import Polynomial

INFINITE = math.inf


@dataclass(frozen=True)
class DerivativeResult:
    ideal: IdealPresentation
    order: int


def diff(pres, I):
    """The first derivative ideal of I on the smooth presentation.

    Per minor chart, adjoin the tangent-derivation images of the
    generators and saturate away the locus where the minor vanishes;
    the chart results glue by intersection.
    """
    if I.ring != pres.ring:
        raise PreconditionError("ideal outside the presentation ring")
    cover = jacobian_minors_cover(pres)
    gens_I = [g for g in I.gens if not g.is_zero()]
    acc = None
    for datum in cover:
        dgens = []
        for g in gens_I:
            dgens.extend(p for p in datum.apply_all(g) if not p.is_zero())
        piece = IdealPresentation(
            pres.ring, tuple(pres.base.gens) + tuple(gens_I) + tuple(dgens)
        )
        if not datum.h.is_constant():
            piece = saturate_element(piece, datum.h)
        if piece.is_unit():
            continue  # neutral for the intersection
        acc = piece if acc is None else intersect(acc, piece)
    if acc is None:
        acc = IdealPresentation(pres.ring, (pres.ring.one(),))
    return DerivativeResult(acc.canonical(), 1)


def diff_iterated(pres, I, n):
    """n-fold derivative; n = 0 returns I together with the base ideal."""
    if n < 0:
        raise PreconditionError("negative derivative order")
    current = IdealPresentation(pres.ring, tuple(I.gens) + tuple(pres.base.gens)).canonical()
    for _ in range(n):
        if current.is_unit():
            return DerivativeResult(current, n)
        current = diff(pres, current).ideal
    return DerivativeResult(current, n)


def derivative_chain(pres, I, limit=None):
    """(b, [D^0 I, D^1 I, ...]) with b the maximal order of vanishing.

    b is math.inf exactly when I vanishes on an irreducible component,
    in which case the chain holds only D^0.  With a finite `limit` the
    chain stops after that many derivative steps and b is still exact
    when reached within the limit, else None.
    """
    if vanishes_on_component(pres, I):
        base = IdealPresentation(pres.ring, tuple(I.gens) + tuple(pres.base.gens))
        return INFINITE, [base.canonical()]
    chain = [
        IdealPresentation(pres.ring, tuple(I.gens) + tuple(pres.base.gens)).canonical()
    ]
    while not chain[-1].is_unit():
        if limit is not None and len(chain) > limit:
            return None, chain
        chain.append(diff(pres, chain[-1]).ideal)
    return len(chain) - 1, chain


def maximal_order_of_vanishing(pres, I):
    """The largest local vanishing order of I on Spec A; math.inf when I
    vanishes on an irreducible component."""
    b, _ = derivative_chain(pres, I)
    return b


def b_singular_locus(pres, I, b):
    """Defining ideal of the locus of points of order >= b (b >= 1)."""
    if b < 1:
        raise PreconditionError("b-singular locus needs b >= 1")
    return diff_iterated(pres, I, b - 1).ideal
