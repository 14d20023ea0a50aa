"""The history-free resolution loop.

Each round computes the center from the current charts alone, blows up
every winner piece along the reduced center, passes loser pieces
through unchanged, and recurses on proper transforms until the maximal
invariant is the all-ones sequence of length equal to the codimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .blowup import weighted_blow_up
from .center import Invariant, compare_invariant, LESS, prepare_center, reduced_center_weights
from .errors import EngineError, PreconditionError, StepLimitError
from .geometry import SmoothAffinePresentation
from .groebner import krull_dimension
from .ideals import IdealPresentation
from .rings import into_ring


@dataclass(eq=False)
class ResolutionProblem:
    """Charts (presentation, subvariety ideal) of pure codimension codim."""

    charts: list
    codim: int = None

    def __post_init__(self):
        if not self.charts:
            raise PreconditionError("resolution problem needs at least one chart")
        if self.codim is None:
            pres, I = self.charts[0]
            full = IdealPresentation(
                pres.ring, tuple(I.gens) + tuple(pres.base.gens)
            )
            d = full.dimension()
            if d is None:
                raise PreconditionError("subvariety is empty on the first chart")
            self.codim = pres.dim - d
        for pres, I in self.charts:
            full = IdealPresentation(pres.ring, tuple(I.gens) + tuple(pres.base.gens))
            d = full.dimension()
            if d is not None and pres.dim - d != self.codim:
                raise PreconditionError(
                    f"chart has codimension {pres.dim - d}, expected {self.codim}"
                )


@dataclass(eq=False)
class ChartNode:
    """One chart in the resolution tree."""

    id: str
    pres: SmoothAffinePresentation
    ideal: IdealPresentation
    parent: str = None
    role: str = "input"
    blow: object = None  # BlowUpChart for blow-up charts


@dataclass(eq=False)
class ResolutionStep:
    maxinv: Invariant
    weights: list
    blow_up_count: int
    charts: list


@dataclass(eq=False)
class ResolutionTree:
    codim: int
    initial: list
    steps: list = field(default_factory=list)
    final_maxinv: Invariant = None

    @property
    def final_charts(self):
        return self.steps[-1].charts if self.steps else self.initial


def is_resolved(maxinv, codim):
    """True iff maxinv is the all-ones sequence of length codim."""
    return len(maxinv) == codim and maxinv.is_all_ones(codim)


def count_statistics(tree):
    """(number of winner blow-ups performed, final chart count)."""
    blow_ups = sum(step.blow_up_count for step in tree.steps)
    return blow_ups, len(tree.final_charts)


def _restrict_ideal(I, piece):
    ring_ = piece.ring
    gens = tuple(into_ring(g, ring_) for g in I.gens) + tuple(piece.base.gens)
    return IdealPresentation(ring_, gens).canonical()


def weighted_resolution(problem, max_steps=None):
    """Run the resolution loop; the tree is empty when the input is
    already smooth of the expected codimension."""
    if max_steps is None:
        max_steps = 10 * max(pres.dim for pres, _ in problem.charts)
    current = []
    for k, (pres, I) in enumerate(problem.charts):
        full = IdealPresentation(
            pres.ring, tuple(I.gens) + tuple(pres.base.gens)
        ).canonical()
        node = ChartNode(id=f"c{k}", pres=pres, ideal=full)
        if not full.is_unit():
            current.append(node)
    tree = ResolutionTree(codim=problem.codim, initial=list(current))
    previous = None
    step_no = 0
    while current:
        center = prepare_center([(n.pres, n.ideal) for n in current])
        if previous is not None and compare_invariant(center.maxinv, previous) != LESS:
            raise EngineError(
                f"invariant failed to descend: {previous} then {center.maxinv}"
            )
        previous = center.maxinv
        if is_resolved(center.maxinv, problem.codim):
            tree.final_maxinv = center.maxinv
            break
        step_no += 1
        if step_no > max_steps:
            raise StepLimitError(f"resolution exceeded {max_steps} rounds")
        weights = reduced_center_weights(center.maxinv)
        new_nodes = []
        for w_idx, (piece, params, origin) in enumerate(center.winners):
            parent = current[origin]
            ideal_piece = _restrict_ideal(parent.ideal, piece)
            charts = weighted_blow_up(piece, ideal_piece, params, weights)
            for chart in charts:
                if chart.transform.is_unit():
                    continue  # the transform misses this chart
                new_nodes.append(
                    ChartNode(
                        id=f"s{step_no}.w{w_idx}.{chart.center_index}",
                        pres=chart.presentation(piece.dim),
                        ideal=chart.transform,
                        parent=parent.id,
                        role=f"blowup[{chart.center_index}]",
                        blow=chart,
                    )
                )
        for l_idx, (piece, origin) in enumerate(center.losers):
            parent = current[origin]
            ideal_piece = _restrict_ideal(parent.ideal, piece)
            if ideal_piece.is_unit():
                continue
            new_nodes.append(
                ChartNode(
                    id=f"s{step_no}.l{l_idx}",
                    pres=piece,
                    ideal=ideal_piece,
                    parent=parent.id,
                    role="passthrough",
                )
            )
        tree.steps.append(
            ResolutionStep(
                maxinv=center.maxinv,
                weights=weights,
                blow_up_count=len(center.winners),
                charts=new_nodes,
            )
        )
        current = new_nodes
    if tree.final_maxinv is None and not current:
        tree.final_maxinv = Invariant((1,) * problem.codim) if tree.steps else None
    return tree
