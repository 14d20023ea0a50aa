"""The lexicographic order invariant and its associated center.

Sequences compare lexicographically with truncated sequences considered
larger, making the empty sequence the maximum.  The competition in
prepare_center descends through maximal contact hypersurfaces,
replacing the working ideal by a coefficient ideal restricted to each
new hypersurface, until the working ideal vanishes somewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from math import factorial

from .contact import lift_maximal_contact
from .derivatives import derivative_chain
from .errors import NonterminationGuardError, PreconditionError
from .geometry import SmoothAffinePresentation
from .ideals import DEFAULT_WORK_LIMIT, IdealPresentation, power_generators
from .parsing import format_rationals
from .rings import into_ring

LESS = -1
EQUAL = 0
GREATER = 1


@total_ordering
class Invariant:
    """Element of Q_{>=0}^{<=n} under the truncated-is-larger order."""

    __slots__ = ("entries",)

    def __init__(self, entries=()):
        self.entries = tuple(Fraction(e) for e in entries)
        if any(e < 0 for e in self.entries):
            raise ValueError("invariant entries must be nonnegative")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        return isinstance(other, Invariant) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __lt__(self, other):
        return compare_invariant(self, other) == LESS

    def is_all_ones(self, length):
        return self.entries == (Fraction(1),) * length

    def __repr__(self):
        return format_rationals(self.entries)


def compare_invariant(a, b):
    """LESS/EQUAL/GREATER; lexicographic, shorter sequences are larger."""
    for x, y in zip(a.entries, b.entries):
        if x < y:
            return LESS
        if x > y:
            return GREATER
    if len(a.entries) == len(b.entries):
        return EQUAL
    return GREATER if len(a.entries) < len(b.entries) else LESS


def b_to_a(bseq):
    """Rescale a sequence of positive integer orders into the invariant.

    The first entry passes through; the tail is the rescaled image of
    the remaining sequence divided by (b1 - 1)!.
    """
    entries = []
    scale = 1
    for b in bseq:
        b = int(b)
        if b < 1:
            raise ValueError("orders must be positive integers")
        entries.append(Fraction(b, scale))
        scale *= factorial(b - 1)
    return Invariant(entries)


def reduced_center_weights(maxinv):
    """Integer weights w_i of the reduced center for a given invariant.

    With a_i = n_i/m_i in lowest terms and d the product of the m_i,
    w_i = lcm(d*a_1, ..., d*a_r)/(d*a_i).
    """
    entries = list(maxinv)
    if not entries:
        return []
    if any(e <= 0 for e in entries):
        raise PreconditionError("center weights need positive invariant entries")
    d = 1
    for a in entries:
        d *= a.denominator
    da = [int(a * d) for a in entries]
    L = math.lcm(*da)
    return [L // x for x in da]


def coefficient_ideal(pres, I, b, restrict=(), chain=None, work_limit=DEFAULT_WORK_LIMIT):
    """Sum over i < b of (D^i I)^{b!/(b-i)}, restricted to V(restrict).

    Restriction happens before powering: each derivative ideal is
    reduced modulo the base ideal plus the restriction parameters, then
    raised; the result is ideal-equal to powering first and extension
    commutes with the sum.  The output presentation includes the
    restriction ideal.
    """
    if not (isinstance(b, int) and b >= 1):
        raise PreconditionError(f"coefficient ideal needs 1 <= b < infinity, got {b}")
    ring_ = pres.ring
    if chain is None:
        _, chain = derivative_chain(pres, I, limit=b - 1)
    if len(chain) < b:
        raise PreconditionError("derivative chain shorter than requested order")
    Q = IdealPresentation(ring_, tuple(pres.base.gens) + tuple(restrict))
    gbQ = Q.groebner()
    total = factorial(b)
    parts = []
    seen = set()
    for i in range(b):
        gens_i = chain[i].nonbase_gens(gbQ)
        if not gens_i:
            continue
        power = total // (b - i)
        for p in power_generators(gens_i, power, modulo_gb=gbQ, work_limit=work_limit):
            if p not in seen:
                seen.add(p)
                parts.append(p)
    return IdealPresentation(ring_, tuple(Q.gens) + tuple(parts)).canonical()


# ---------------------------------------------------------------------------
# the competition


@dataclass(eq=False)
class ContenderState:
    """One open piece still in the running, with its descent data."""

    pres: SmoothAffinePresentation
    params: list
    ideal: IdealPresentation
    origin: int
    maxord: object = None
    chain: list = None

    def z_presentation(self):
        return SmoothAffinePresentation(
            self.pres.ring,
            IdealPresentation(
                self.pres.ring, tuple(self.pres.base.gens) + tuple(self.params)
            ),
            dim=self.pres.dim - len(self.params),
            irreducible_certified=self.pres.irreducible_certified and not self.params,
        )

    def measure(self):
        if self.maxord is None:
            z = self.z_presentation() if self.params else self.pres
            self.maxord, self.chain = derivative_chain(z, self.ideal)
        return self.maxord


@dataclass(eq=False)
class CenterData:
    maxinv: Invariant
    winners: list  # (piece presentation, params, origin chart index)
    losers: list  # (piece presentation, origin chart index)


def prepare_center(charts, work_limit=DEFAULT_WORK_LIMIT):
    """The maximal invariant with winner and loser pieces over all charts.

    charts is a list of (SmoothAffinePresentation, IdealPresentation).
    Rounds compute the largest order of vanishing across the surviving
    pieces, drop the rest as losers, and descend the survivors through
    lifted maximal contact; the competition ends when some survivor's
    working ideal vanishes along its parameter locus.
    """
    if not charts:
        raise PreconditionError("prepare_center needs at least one chart")
    contenders = []
    for origin, (pres, I) in enumerate(charts):
        ideal_full = IdealPresentation(
            pres.ring, tuple(I.gens) + tuple(pres.base.gens)
        ).canonical()
        contenders.append(ContenderState(pres, [], ideal_full, origin))
    winners = []
    losers = []
    maxbinv = []
    guard = max((pres.dim for pres, _ in charts), default=0) + 2
    rounds = 0
    while True:
        rounds += 1
        if rounds > guard:
            raise NonterminationGuardError(
                "competition exceeded the ambient dimension; preconditions violated"
            )
        b_max = -math.inf
        for c in contenders:
            b_max = max(b_max, c.measure())
        survivors = []
        for c in contenders:
            if c.measure() == b_max:
                survivors.append(c)
            else:
                losers.append((c.pres, c.origin))
        if b_max == math.inf:
            winners = [(c.pres, list(c.params), c.origin) for c in survivors]
            break
        if b_max < 1:
            raise PreconditionError(
                "every piece carries the unit ideal; nothing to blow up"
            )
        maxbinv.append(int(b_max))
        next_contenders = []
        for c in survivors:
            z = c.z_presentation() if c.params else c.pres
            mc = lift_maximal_contact(
                c.pres, c.params, c.ideal, maxord=c.maxord, chain=c.chain
            )
            restricted = {}
            for G, F in mc:
                if F.is_one():
                    piece = c.pres if G.is_one() else c.pres.localize(G)
                    losers.append((piece, c.origin))
                    continue
                if F not in restricted:
                    restricted[F] = coefficient_ideal(
                        z, c.ideal, int(b_max), restrict=[F], chain=c.chain,
                        work_limit=work_limit,
                    )
                new_ideal = restricted[F]
                piece = c.pres if G.is_one() else c.pres.localize(G)
                ring_p = piece.ring
                moved = IdealPresentation(
                    ring_p, tuple(into_ring(g, ring_p) for g in new_ideal.gens)
                )
                params_p = [into_ring(p, ring_p) for p in c.params] + [
                    into_ring(F, ring_p)
                ]
                next_contenders.append(
                    ContenderState(piece, params_p, moved, c.origin)
                )
        contenders = next_contenders
    return CenterData(b_to_a(maxbinv), winners, losers)
