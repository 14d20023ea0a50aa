"""Covers by distinguished opens carrying local maximal contact
hypersurfaces, and their lifts through a smooth subvariety.

Localizations are realized with the Rabinowitsch trick (a fresh inverse
variable and the relation 1 - t*G) so every check stays inside the
Groebner toolbox.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PreconditionError
from .geometry import (
    SmoothAffinePresentation,
    is_smooth_hypersurface,
    jacobian_minors_cover,
    orthogonal_idempotents,
)
from .groebner import groebner_basis, lift_combination, normal_form
from .derivatives import derivative_chain
from .ideals import IdealPresentation, ideal_compare, EQUAL, saturate_element
from .rings import PolyRing, fresh_names, into_ring


@dataclass(frozen=True)
class ContactCover:
    """Entries (G, F): on the piece where G is invertible, F cuts a local
    maximal contact hypersurface; F = 1 flags pieces missing the
    b-singular locus.  A singleton list iff some G = 1."""

    entries: tuple

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def _is_invertible(pres, g):
    """g is a unit of A iff 1 lies in I_Y + (g)."""
    if g.is_constant():
        return not g.is_zero()
    return groebner_basis(list(pres.base.gens) + [g]).is_unit_ideal()


def _piece_nonempty(pres, g):
    """Spec A[g^{-1}] is nonempty iff (I_Y, 1 - t*g) stays proper."""
    if g.is_constant():
        return not g.is_zero()
    loc = pres.localize(g)
    return not loc.base.is_unit()


def _dedup_and_merge(pres, entries):
    """Drop exact duplicates, then merge entries with ideal-equal
    localization loci and equal contact equation."""
    seen = set()
    unique = []
    for G, F in entries:
        if (G, F) in seen:
            continue
        seen.add((G, F))
        unique.append((G, F))
    kept = []
    kept_loci = []
    for G, F in unique:
        locus = saturate_element(pres.base, G)
        duplicate = any(
            F == F2 and ideal_compare(locus, locus2) == EQUAL
            for (G2, F2), locus2 in zip(kept, kept_loci)
        )
        if not duplicate:
            kept.append((G, F))
            kept_loci.append(locus)
    return kept


def _sorted_entries(entries):
    return tuple(sorted(entries, key=lambda e: (e[0].sort_key(), e[1].sort_key())))


def maximal_contact(pres, I, maxord=None, chain=None, component_primes=None):
    """Cover of Spec A by pieces carrying maximal contact for I.

    Requires 0 < max-ord I < infinity.  The general (non-global) path
    needs the presentation certified irreducible or caller-supplied
    component ideals for the orthogonal idempotents.
    """
    one = pres.ring.one()
    if maxord is None or chain is None:
        maxord, chain = derivative_chain(pres, I)
    if not (isinstance(maxord, int) and maxord > 0):
        raise PreconditionError(f"maximal contact needs 0 < max-ord < infinity, got {maxord}")
    b = maxord
    base_gb = pres.base_gb()
    d_ideal = chain[b - 1]
    hs = [g for g in d_ideal.gens if not normal_form(g, base_gb).is_zero()]

    # global shortcut: a generator that already cuts a smooth hypersurface
    for h in hs:
        if is_smooth_hypersurface(pres, h):
            return ContactCover(((one, h),))

    if component_primes is not None:
        idems = orthogonal_idempotents(pres, component_primes)
    elif pres.irreducible_certified:
        idems = [one]
    else:
        raise PreconditionError(
            "general maximal contact needs an irreducible certificate or component ideals"
        )

    cover = jacobian_minors_cover(pres)
    entries = []
    for datum in cover:
        applied = {}
        for i, h_i in enumerate(hs):
            for jp in sorted(datum.derivations):
                applied[(i, jp)] = datum.apply(jp, h_i)
        for e_t in idems:
            g0 = datum.h * e_t
            loc = pres.localize(g0)
            if loc.base.is_unit():
                continue  # empty piece
            loc_gb = loc.base.groebner()
            zero_locus = saturate_element(pres.base, g0).groebner()
            h_zero = [normal_form(h_i, zero_locus).is_zero() for h_i in hs]
            family = [into_ring(h_i, loc.ring) for h_i in hs]
            keys = sorted(applied)
            family += [into_ring(applied[k], loc.ring) for k in keys]
            family += [into_ring(g, loc.ring) for g in pres.base.gens]
            family += [loc.base.gens[-1]]  # the relation 1 - t*g0
            cof = lift_combination(loc.ring.one(), family)
            if cof is None:
                raise PreconditionError(
                    "internal: derivative ideal fails to localize to the unit ideal"
                )
            m = len(hs)
            for i, h_i in enumerate(hs):
                if h_zero[i]:
                    continue
                if normal_form(cof[i], loc_gb).is_zero():
                    continue
                entries.append((g0 * h_i, one))
            for pos, (i, jp) in enumerate(keys):
                dh = applied[(i, jp)]
                if normal_form(dh, zero_locus).is_zero():
                    continue
                if normal_form(cof[m + pos], loc_gb).is_zero():
                    continue
                g = g0 * dh
                piece = pres.localize(g)
                stacked = [into_ring(p, piece.ring) for p in hs] + list(piece.base.gens)
                if groebner_basis(stacked).is_unit_ideal():
                    entries.append((g, one))  # piece misses the b-singular locus
                else:
                    entries.append((g, hs[i]))

    entries = _dedup_and_merge(pres, entries)
    for G, F in entries:
        if _is_invertible(pres, G):
            return ContactCover(((one, F),))
    return ContactCover(_sorted_entries(entries))


def lift_maximal_contact(pres, prior_params, I_Z, maxord=None, chain=None, component_primes=None):
    """Maximal contact for an ideal on Z = V(prior_params), lifted to
    pieces of the ambient chart; complement pieces carry F = 1."""
    prior_params = list(prior_params)
    z_base = IdealPresentation(
        pres.ring, tuple(pres.base.gens) + tuple(prior_params)
    )
    if z_base.is_unit():
        raise PreconditionError("prior parameters cut out the empty subvariety")
    z_pres = SmoothAffinePresentation(
        pres.ring,
        z_base,
        dim=pres.dim - len(prior_params),
        irreducible_certified=False,
    )
    mc = maximal_contact(
        z_pres, I_Z, maxord=maxord, chain=chain, component_primes=component_primes
    )
    one = pres.ring.one()
    entries = list(mc.entries)
    for p in prior_params:
        if _piece_nonempty(pres, p):
            entries.append((p, one))
    for G, F in entries:
        if _is_invertible(z_pres, G):
            return ContactCover(((one, F),))
    return ContactCover(_sorted_entries(tuple(entries)))
