"""Charts of the stack-theoretic weighted blow-up along regular
parameters with reciprocal-integer weights, with grading records and
total/proper/weak transforms.

Chart i presents the localization of the extended degree-graded algebra
where the i-th parameter section is invertible; its cyclic grading is
recorded as per-variable integer degrees together with the group order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotRegularParametersError, PreconditionError
from .geometry import SmoothAffinePresentation, is_regular_parameters
from .groebner import groebner_basis
from .ideals import (
    IdealPresentation,
    RingMap,
    ideal_sum,
    map_image,
    map_preimage,
    quotient,
    saturate_element,
)
from .rings import MonomialOrder, PolyRing, fresh_names, into_ring


@dataclass(eq=False)
class BlowUpChart:
    """One affine chart of the weighted blow-up.

    relations cut the chart out of its polynomial ring; transform is the
    proper transform (the u-saturation of the total transform); the map
    sends the parent's variables into the chart and induces the blow-up
    morphism; grading holds the cyclic degrees (ambient 0, y_j -> -w_j,
    u -> 1) with group_order w_i.
    """

    ring: PolyRing
    relations: IdealPresentation
    transform: IdealPresentation
    total_transform: IdealPresentation
    map: RingMap
    grading: dict
    group_order: int
    exceptional: str
    center_index: int
    weights: tuple

    def presentation(self, parent_dim):
        return SmoothAffinePresentation(
            self.ring, self.relations, dim=parent_dim, irreducible_certified=True
        )

    def exceptional_poly(self):
        return self.ring.gen(self.exceptional)


def blowup_algebra_ideal(pres, params, weights, names=None):
    """Presentation ideal of the blow-up's total coordinate algebra.

    Returns (I_phi, blow_ring, y_names, u_name): in blow_ring the chart
    algebra before localization is k[x, y, u]/I_phi, with y_i the degree
    w_i section over the i-th parameter and u the exceptional inverse.
    """
    ring_ = pres.ring
    r = len(params)
    if names is None:
        taken = set(ring_.variables)
        y_names = fresh_names([f"y{i + 1}" for i in range(r)], taken)
        (u_name,) = fresh_names(["u"], taken)
        (t_name,) = fresh_names(["T"], taken)
    else:
        y_names, u_name, t_name = names
    blow_ring = PolyRing(ring_.variables + tuple(y_names) + (u_name,), MonomialOrder())
    target = PolyRing(ring_.variables + (t_name, u_name), MonomialOrder())
    T = target.gen(t_name)
    u_t = target.gen(u_name)
    images = [target.gen(v) for v in ring_.variables]
    images += [into_ring(f, target) * T ** w for f, w in zip(params, weights)]
    images.append(u_t)
    quotient_gens = tuple(into_ring(g, target) for g in pres.base.gens) + (
        T * u_t - target.one(),
    )
    phi = RingMap(
        blow_ring,
        target,
        tuple(images),
        target_quotient=IdealPresentation(target, quotient_gens),
    )
    I_phi = map_preimage(phi, IdealPresentation(target, ()))
    return I_phi, blow_ring, y_names, u_name


def _eliminable_relation(gens, ring_, var):
    """The reduced relation var - g with g free of var, if the ideal has one."""
    others = [v for v in ring_.variables if v != var]
    elim_ring = PolyRing((var,) + tuple(others), MonomialOrder("block", 1))
    moved = [into_ring(g, elim_ring) for g in gens if not g.is_zero()]
    if not moved:
        return None
    gb = groebner_basis(moved, order=elim_ring.order)
    unit = (1,) + (0,) * (elim_ring.arity - 1)
    for g in gb.generators:
        if g.leading_monomial(elim_ring.order) == unit:
            rest = g - elim_ring.gen(var)
            return -rest  # g = var - (-rest)
    return None


def weighted_blow_up(pres, I, params, weights, validate=False):
    """The r charts of the weighted blow-up of Spec A along the center
    given by params with weights, carrying the transforms of I.

    Chart presentations are canonicalized by a deterministic elimination
    fixpoint: ambient variables by index, then the chart's own section
    variable, are substituted away whenever the chart ideal provides a
    relation expressing them in the surviving variables.
    """
    params = list(params)
    weights = list(weights)
    r = len(params)
    if r < 1 or len(weights) != r:
        raise PreconditionError("need matching nonempty parameters and weights")
    if any((not isinstance(w, int)) or w < 1 for w in weights):
        raise PreconditionError("weights must be positive integers")
    if validate and not is_regular_parameters(pres, params):
        raise NotRegularParametersError(
            "parameters do not cut a nonempty smooth pure-codimension subvariety"
        )
    I_phi, blow_ring, y_names, u_name = blowup_algebra_ideal(pres, params, weights)
    charts = []
    for i in range(r):
        gens = list(I_phi.gens) + [blow_ring.gen(y_names[i]) - blow_ring.one()]
        current_ring = blow_ring
        substitutions = {}  # original blow_ring variable -> image in current ring
        candidates = list(pres.ring.variables) + [y_names[i]]
        while True:
            for var in candidates:
                if var not in current_ring.variables:
                    continue
                g = _eliminable_relation(gens, current_ring, var)
                if g is None:
                    continue
                smaller = PolyRing(
                    tuple(v for v in current_ring.variables if v != var),
                    MonomialOrder(),
                )
                img = [
                    into_ring(g, smaller) if v == var else smaller.gen(v)
                    for v in current_ring.variables
                ]
                gens = [
                    p
                    for p in (q.substitute(smaller, img) for q in gens)
                    if not p.is_zero()
                ]
                for key in substitutions:
                    substitutions[key] = substitutions[key].substitute(smaller, img)
                substitutions[var] = into_ring(g, smaller)
                current_ring = smaller
                break
            else:
                break
        chart_ring = current_ring
        relations = IdealPresentation(chart_ring, tuple(gens)).canonical()
        images = []
        for v in pres.ring.variables:
            if v in substitutions:
                images.append(substitutions[v])
            else:
                images.append(chart_ring.gen(v))
        phi_i = RingMap(pres.ring, chart_ring, tuple(images))
        total = ideal_sum(map_image(phi_i, I), relations).canonical()
        u_poly = chart_ring.gen(u_name)
        transform = saturate_element(total, u_poly)
        grading = {v: 0 for v in pres.ring.variables if v in chart_ring.variables}
        for j, yn in enumerate(y_names):
            if yn in chart_ring.variables:
                grading[yn] = -weights[j]
        grading[u_name] = 1
        charts.append(
            BlowUpChart(
                ring=chart_ring,
                relations=relations,
                transform=transform,
                total_transform=total,
                map=phi_i,
                grading=grading,
                group_order=weights[i],
                exceptional=u_name,
                center_index=i,
                weights=tuple(weights),
            )
        )
    return charts


def weak_transform(chart, power):
    """Quotient (not saturation) of the total transform by u^power."""
    if power < 0:
        raise PreconditionError("weak transform needs a nonnegative power")
    u = chart.exceptional_poly()
    return quotient(
        chart.total_transform, IdealPresentation(chart.ring, (u ** power,))
    )


def is_chart_grading_homogeneous(chart):
    """Every canonical relation is homogeneous modulo the group order."""
    w = chart.group_order
    degrees = [chart.grading[v] for v in chart.ring.variables]
    for g in chart.relations.canonical().gens:
        classes = set()
        for m in g.terms:
            d = sum(e * dv for e, dv in zip(m, degrees))
            classes.add(d % w if w > 1 else 0)
        if len(classes) > 1:
            return False
    return True
