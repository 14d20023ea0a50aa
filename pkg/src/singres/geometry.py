"""Jacobian machinery for smooth affine presentations.

Covers by distinguished opens where a maximal minor of the Jacobian is
invertible, the tangent derivations attached to each minor, smoothness
tests, orthogonal idempotents, and the saturation-based component test
that stands in for associated primes on reduced rings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import NotCoprimeError, NotSmoothError, PreconditionError
from .groebner import groebner_basis, krull_dimension, lift_combination, normal_form
from .ideals import EQUAL, IdealPresentation, ideal_compare, saturate
from .rings import MonomialOrder, PolyRing, Polynomial, fresh_names, into_ring


@dataclass(eq=False)
class SmoothAffinePresentation:
    """A smooth affine variety Spec k[x]/I_Y of pure dimension.

    Smoothness and pure dimension are the caller's promise; the
    jacobian criterion can verify it.  irreducible_certified marks
    presentations produced by the irreducibility-preserving pipeline
    (affine spaces, blow-up charts, and their localizations).
    """

    ring: PolyRing
    base: IdealPresentation
    dim: int = None
    irreducible_certified: bool = False
    _minors: list = field(default=None, repr=False)

    def __post_init__(self):
        if self.base.ring != self.ring:
            raise PreconditionError("base ideal outside the presentation ring")
        if self.dim is None:
            d = krull_dimension(self.base.gens, ring=self.ring)
            if d is None:
                raise PreconditionError("presentation of the empty variety")
            self.dim = d

    def base_gb(self):
        return self.base.groebner()

    def localize(self, g, var_base="t"):
        """The distinguished open where g is invertible, via a fresh inverse variable."""
        (t,) = fresh_names([var_base], self.ring.variables)
        ext = PolyRing(self.ring.variables + (t,), self.ring.order)
        rel = ext.one() - ext.gen(t) * into_ring(g, ext)
        gens = tuple(into_ring(p, ext) for p in self.base.gens) + (rel,)
        return SmoothAffinePresentation(
            ext,
            IdealPresentation(ext, gens),
            dim=self.dim,
            irreducible_certified=self.irreducible_certified,
        )


def affine_space(ring_):
    return SmoothAffinePresentation(
        ring_, IdealPresentation(ring_, ()), dim=ring_.arity, irreducible_certified=True
    )


def presentation(ring_, gens, dim=None, certified=False):
    return SmoothAffinePresentation(
        ring_, IdealPresentation(ring_, tuple(gens)), dim=dim, irreducible_certified=certified
    )


@dataclass(eq=False)
class MinorChartDatum:
    """One maximal minor of the Jacobian with its tangent derivations.

    derivations maps each column index j' outside COL to the coefficient
    vector of h*d/dx_{j'} - sum_{i,j} (df_i/dx_{j'}) C_ij d/dx_j, a
    basis element of the derivations on the locus where h is invertible.
    """

    rows: tuple
    cols: tuple
    h: Polynomial
    cofactors: dict
    derivations: dict

    def apply(self, j_prime, g):
        out = g.ring.zero()
        for j, coeff in self.derivations[j_prime].items():
            out = out + coeff * g.derivative(j)
        return out

    def apply_all(self, g):
        return [self.apply(jp, g) for jp in sorted(self.derivations)]


def _det(matrix):
    n = len(matrix)
    if n == 0:
        return None  # caller substitutes the ring's one
    if n == 1:
        return matrix[0][0]
    total = None
    for j in range(n):
        entry = matrix[0][j]
        if entry.is_zero():
            continue
        sub = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        minor = _det(sub)
        term = entry if minor is None else entry * minor
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else matrix[0][0].ring.zero()


def jacobian_minors_cover(pres):
    """Pruned list of minor data whose determinants cover Spec A.

    Iterates minors row-major over index subsets and keeps them until
    I_Y together with the kept determinants reaches the unit ideal;
    raises NOT-SMOOTH when no such cover exists.
    """
    if pres._minors is not None:
        return pres._minors
    ring_ = pres.ring
    N = ring_.arity
    fs = [g for g in pres.base.gens if not g.is_zero()]
    r = len(fs)
    m = N - pres.dim
    base_gb = pres.base_gb()
    one = ring_.one()

    jac = [[f.derivative(j) for j in range(N)] for f in fs]

    kept = []
    covered = False
    if m > r:
        raise NotSmoothError("too few equations for the expected codimension")
    for rows in combinations(range(r), m):
        for cols in combinations(range(N), m):
            M = [[jac[i][j] for j in cols] for i in rows]
            h = _det(M)
            h = one if h is None else h
            if normal_form(h, base_gb).is_zero():
                continue
            cof = {}
            for a in range(m):
                for b in range(m):
                    sub = [
                        [M[i][j] for j in range(m) if j != b]
                        for i in range(m)
                        if i != a
                    ]
                    minor = _det(sub)
                    minor = one if minor is None else minor
                    cof[(a, b)] = -minor if (a + b) % 2 else minor
            derivs = {}
            for jp in range(N):
                if jp in cols:
                    continue
                vec = {jp: h}
                for b, j in enumerate(cols):
                    coeff = ring_.zero()
                    for a, i in enumerate(rows):
                        coeff = coeff - jac[i][jp] * cof[(a, b)]
                    if not coeff.is_zero():
                        vec[j] = coeff
                derivs[jp] = vec
            kept.append(MinorChartDatum(rows, cols, h, cof, derivs))
            cover_gens = [g for g in pres.base.gens if not g.is_zero()]
            cover_gens += [d.h for d in kept]
            if groebner_basis(cover_gens).is_unit_ideal():
                covered = True
                break
        if covered:
            break
    if not covered:
        raise NotSmoothError("jacobian minors do not cover: presentation is not smooth of pure dimension")
    pres._minors = kept
    return kept


def vanishes_on_component(pres, J):
    """True iff V(J) contains an irreducible component of Spec A.

    Valid on reduced rings: saturating I_Y by J strips exactly the
    components where J vanishes identically.
    """
    if J.ring != pres.ring:
        raise PreconditionError("ideal outside the presentation ring")
    sat = saturate(pres.base, J)
    return ideal_compare(sat, pres.base) != EQUAL


def nonsmooth_locus(ring_, gens, expected_dim):
    """Ideal of the points where V(gens) fails the jacobian criterion
    at the expected dimension (perfect ground field)."""
    nonzero = [g for g in gens if not g.is_zero()]
    c = ring_.arity - expected_dim
    if not nonzero:
        # V(0) is all of affine space: empty nonsmooth locus iff full-dimensional
        return IdealPresentation(ring_, (ring_.one(),) if c == 0 else (ring_.zero(),))
    out = list(nonzero)
    if 0 < c <= len(nonzero):
        jac = [[f.derivative(j) for j in range(ring_.arity)] for f in nonzero]
        one = ring_.one()
        for rows in combinations(range(len(nonzero)), c):
            for cols in combinations(range(ring_.arity), c):
                M = [[jac[i][j] for j in cols] for i in rows]
                h = _det(M)
                out.append(one if h is None else h)
    return IdealPresentation(ring_, tuple(out))


def is_smooth_hypersurface(pres, h):
    """Whether V(h) is a (possibly empty) smooth pure-codimension-one
    subvariety of Spec A."""
    if vanishes_on_component(pres, IdealPresentation(pres.ring, (h,))):
        return False
    combined = tuple(pres.base.gens) + (h,)
    locus = nonsmooth_locus(pres.ring, combined, pres.dim - 1)
    return locus.is_unit()


def orthogonal_idempotents(pres, component_primes):
    """Polynomials e_i with e_i = 1 on the i-th component and 0 on the rest.

    component_primes must be pairwise-coprime ideals modulo I_Y whose
    intersection is I_Y; this is the caller's promise.
    """
    d = len(component_primes)
    if d == 1:
        return [pres.ring.one()]
    one = pres.ring.one()
    out = []
    for i in range(d):
        e = one
        for j in range(d):
            if j == i:
                continue
            pj = list(component_primes[j].gens)
            pi = list(component_primes[i].gens)
            cof = lift_combination(one, pj + pi)
            if cof is None:
                raise NotCoprimeError(f"components {i} and {j} are not coprime")
            f = pres.ring.zero()
            for c, g in zip(cof[: len(pj)], pj):
                f = f + c * g
            e = e * f
        out.append(e)
    return out


def is_regular_parameters(pres, params):
    """Whether params cut a nonempty smooth pure-codimension subvariety."""
    params = list(params)
    if not params:
        raise PreconditionError("empty parameter list")
    r = len(params)
    full = IdealPresentation(pres.ring, tuple(pres.base.gens) + tuple(params))
    if full.is_unit():
        return False
    if full.dimension() != pres.dim - r:
        return False
    current = pres.base
    for p in params:
        step = IdealPresentation(pres.ring, (p,))
        if ideal_compare(saturate(current, step), current.canonical()) != EQUAL:
            return False
        current = IdealPresentation(pres.ring, tuple(current.gens) + (p,)).canonical()
    locus = nonsmooth_locus(pres.ring, tuple(pres.base.gens) + tuple(params), pres.dim - r)
    return locus.is_unit()


def validate_smooth(pres):
    """Jacobian verification of the smooth/pure-dimension promise."""
    try:
        jacobian_minors_cover(pres)
    except NotSmoothError:
        return False
    return nonsmooth_locus(pres.ring, pres.base.gens, pres.dim).is_unit()
