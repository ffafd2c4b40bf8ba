"""Joint-probability existence over the 16 behavior classes.

A joint probability here is a single distribution over the behavior
quadruples that reproduces all four pairwise correlations and all four
marginals at once. ``jp_feasible`` decides existence by solving the
linear feasibility problem over the 16 class vertices; ``chsh_criterion``
evaluates the eight CHSH facet expressions instead. The two routes are
independent implementations of the same boundary and the test suite
checks that they agree.

Rational inputs are decided in exact arithmetic (an integer phase-1
simplex); float inputs fall back to an LP solve with a 1e-9 tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any, Mapping

import numpy as np

from .core import ALL_BEHAVIORS, SETTING_PAIRS, Behavior, CorrelationTable, LhvModel
from .engine import exact_class_weights, validate_weights
from .simplex import solve_equality_feasibility

_FLOAT_TOL = 1e-9

# Statistics map: rows are the four correlations, the four marginals and
# normalization; columns follow ALL_BEHAVIORS (code order).
_CORR_ROWS = [
    [beh.alice(i) * beh.bob(k) for beh in ALL_BEHAVIORS] for i, k in SETTING_PAIRS
]
_MARGINAL_ROWS = [
    [beh.a1 for beh in ALL_BEHAVIORS],
    [beh.a2 for beh in ALL_BEHAVIORS],
    [beh.b1 for beh in ALL_BEHAVIORS],
    [beh.b2 for beh in ALL_BEHAVIORS],
]
STATS_MATRIX: list[list[int]] = _CORR_ROWS + _MARGINAL_ROWS + [[1] * 16]


@dataclass(frozen=True)
class BehaviorStatistics:
    """Four correlations plus the four single-party means.

    Construction checks that every setting pair admits a valid 4-cell
    outcome table: (1 + A*m_a + B*m_b + A*B*E) / 4 must be nonnegative
    for all sign choices. Statistics violating that cannot come from any
    experiment, CHSH or otherwise.
    """

    correlations: CorrelationTable
    m_a1: Any = 0
    m_a2: Any = 0
    m_b1: Any = 0
    m_b2: Any = 0

    def __post_init__(self):
        for name, v in zip(("m_a1", "m_a2", "m_b1", "m_b2"), self.marginals()):
            if isinstance(v, Rational):
                if not -1 <= v <= 1:
                    raise ValueError(f"{name} must lie in [-1, 1], got {v}")
            elif not -1.0 - 1e-12 <= float(v) <= 1.0 + 1e-12:
                raise ValueError(f"{name} must lie in [-1, 1], got {v}")
        slack = 0 if self.is_exact else 1e-12
        for i, k in SETTING_PAIRS:
            e = self.correlations.value((i, k))
            m_a = self.marginal_alice(i)
            m_b = self.marginal_bob(k)
            for alpha in (-1, 1):
                for beta in (-1, 1):
                    cell = 1 + alpha * m_a + beta * m_b + alpha * beta * e
                    if cell < -slack:
                        raise ValueError(
                            f"pair ({i},{k}) admits no outcome table: cell "
                            f"({alpha:+d},{beta:+d}) has weight {cell}/4 < 0"
                        )

    def marginals(self) -> tuple:
        return (self.m_a1, self.m_a2, self.m_b1, self.m_b2)

    def marginal_alice(self, index: int):
        return self.m_a1 if index == 1 else self.m_a2

    def marginal_bob(self, index: int):
        return self.m_b1 if index == 1 else self.m_b2

    @property
    def is_exact(self) -> bool:
        return self.correlations.is_exact and all(
            isinstance(v, Rational) for v in self.marginals()
        )

    def vector(self) -> list:
        """The nine stats in STATS_MATRIX row order (normalization last)."""
        return list(self.correlations.as_tuple()) + list(self.marginals()) + [1]


@dataclass(frozen=True)
class JointProbability:
    """A distribution over the 16 behavior classes."""

    weights: Mapping[Behavior, Any]

    def __post_init__(self):
        validate_weights(self.weights)

    def weight(self, beh: Behavior):
        return self.weights.get(beh, 0)

    def as_array(self) -> np.ndarray:
        return np.array([float(self.weight(b)) for b in ALL_BEHAVIORS])

    @property
    def is_exact(self) -> bool:
        return all(isinstance(w, Rational) for w in self.weights.values())


@dataclass(frozen=True)
class ViolatedFacet:
    """A CHSH facet expression whose value exceeds 2: the signs applied
    to (e11, e12, e21, e22) and the value reached."""

    signs: tuple[int, int, int, int]
    value: Any


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: JointProbability | None
    certificate: ViolatedFacet | None


def jp_from_lhv(
    model: LhvModel, class_weights: Mapping[Behavior, Any] | None = None
) -> JointProbability:
    """The joint probability an LHV model induces: exactly its class-
    weight distribution. With no explicit weights, the model's declared
    tag distribution (at pair (1,1)) is enumerated."""
    if class_weights is None:
        class_weights = exact_class_weights(model, (1, 1))
    return JointProbability(weights=dict(class_weights))


def statistics_of(jp: JointProbability) -> BehaviorStatistics:
    """Marginalize a joint probability down to correlations and means."""
    items = list(jp.weights.items())
    es = [sum(w * (b.alice(i) * b.bob(k)) for b, w in items) for i, k in SETTING_PAIRS]
    ms = [
        sum(w * b.a1 for b, w in items),
        sum(w * b.a2 for b, w in items),
        sum(w * b.b1 for b, w in items),
        sum(w * b.b2 for b, w in items),
    ]
    return BehaviorStatistics(CorrelationTable(*es), *ms)


def _facet_values(table: CorrelationTable):
    """The eight facet expressions: negate one term, either overall sign."""
    es = table.as_tuple()
    for neg in range(4):
        signs = tuple(-1 if j == neg else 1 for j in range(4))
        value = sum(s * e for s, e in zip(signs, es))
        yield signs, value
        yield tuple(-s for s in signs), -value


def chsh_criterion(table: CorrelationTable) -> tuple[bool, Any]:
    """Evaluate all eight CHSH facets; pass means none exceeds 2."""
    best_value = None
    for _, value in _facet_values(table):
        if best_value is None or value > best_value:
            best_value = value
    limit = 2 if table.is_exact else 2.0 + _FLOAT_TOL
    return best_value <= limit, best_value


def _violated_facet(table: CorrelationTable) -> ViolatedFacet | None:
    best = None
    for signs, value in _facet_values(table):
        if best is None or value > best[1]:
            best = (signs, value)
    limit = 2 if table.is_exact else 2.0 + _FLOAT_TOL
    if best is not None and best[1] > limit:
        return ViolatedFacet(signs=best[0], value=best[1])
    return None


def jp_feasible(stats: BehaviorStatistics) -> FeasibilityResult:
    """Decide whether any joint probability reproduces the statistics.

    Sixteen nonnegative weights, nine equality constraints (eight stats
    plus normalization). Exact inputs get the exact solver and an exact
    witness; float inputs go through scipy's LP with a 1e-9 tolerance.
    An infeasible verdict is accompanied by a violated CHSH facet when
    one exists (with nonzero marginals the obstruction can instead be a
    pairwise-table condition, in which case there is no facet to blame).
    """
    if stats.is_exact:
        feasible, x = solve_equality_feasibility(
            STATS_MATRIX, [Fraction(v) for v in stats.vector()]
        )
        if feasible:
            weights = {b: w for b, w in zip(ALL_BEHAVIORS, x) if w != 0}
            return FeasibilityResult(True, JointProbability(weights), None)
        return FeasibilityResult(False, None, _violated_facet(stats.correlations))

    from scipy.optimize import linprog

    res = linprog(
        c=np.zeros(16),
        A_eq=np.array(STATS_MATRIX, dtype=float),
        b_eq=np.array([float(v) for v in stats.vector()]),
        bounds=[(0, None)] * 16,
        method="highs",
        options={"primal_feasibility_tolerance": _FLOAT_TOL},
    )
    if res.status == 0:
        raw = np.clip(res.x, 0.0, None)
        raw /= raw.sum()
        weights = {b: float(w) for b, w in zip(ALL_BEHAVIORS, raw) if w > 0.0}
        return FeasibilityResult(True, JointProbability(weights), None)
    if res.status == 2:
        return FeasibilityResult(False, None, _violated_facet(stats.correlations))
    raise RuntimeError(f"LP solver failed with status {res.status}: {res.message}")
