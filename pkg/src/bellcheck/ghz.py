"""Four-party perfect-correlation constraints and their satisfiability.

The quantum prediction for the four-particle parity experiment is
<ABCD> = -cos(a + b - c - d), so certain angle combinations force the
product ABCD with certainty. Deterministic one-party response values
would then have to satisfy every forced product simultaneously;
``check_satisfiable`` settles that question by brute force over all +-1
assignments to the distinct (party, angle) response variables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .core import validate_outcome
from .errors import ResourceLimitError

PARTIES = ("A", "B", "C", "D")

#: Variable count above which exhaustive enumeration is refused.
MAX_VARIABLES = 24

_ANGLE_RESOLUTION = 1e-12
_TWO_PI = 2 * math.pi


def canonical_angle(theta: float) -> float:
    """Reduce an angle to [0, 2*pi) on a 1e-12 grid.

    Variable identity in the enumeration is decided by this canonical
    form, so angles closer than the resolution name the same variable.
    """
    if not math.isfinite(theta):
        raise ValueError("angle must be finite")
    r = math.fmod(theta, _TWO_PI)
    if r < 0:
        r += _TWO_PI
    q = round(r / _ANGLE_RESOLUTION)
    if q >= round(_TWO_PI / _ANGLE_RESOLUTION):
        q = 0
    return q * _ANGLE_RESOLUTION


@dataclass(frozen=True)
class ProductConstraint:
    """Requires the product of the named response variables to equal
    target. A factor may repeat; repeated factors square away to +1."""

    factors: tuple[tuple[str, float], ...]
    target: int

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a product constraint needs at least one factor")
        validate_outcome(self.target)
        for party, angle in self.factors:
            if party not in PARTIES:
                raise ValueError(f"unknown party {party!r}, expected one of {PARTIES}")
            if not math.isfinite(angle):
                raise ValueError("factor angle must be finite")

    def canonical_factors(self) -> tuple[tuple[str, float], ...]:
        return tuple((p, canonical_angle(a)) for p, a in self.factors)


@dataclass(frozen=True)
class SatResult:
    """Outcome of exhaustive constraint checking.

    ``assignments_checked`` is 2**(number of distinct variables): the
    checker always sweeps the full assignment space, so an unsatisfiable
    verdict is a proof of exhaustion and a witness is the one with the
    lowest assignment index.
    """

    satisfiable: bool
    witness: Mapping[tuple[str, float], int] | None
    assignments_checked: int


def ghz_correlation(a: float, b: float, c: float, d: float) -> float:
    """<ABCD> = -cos(a + b - c - d)."""
    for v in (a, b, c, d):
        if not math.isfinite(v):
            raise ValueError("angles must be finite")
    return -math.cos(a + b - c - d)


def ghz_constraint_system(phi: float, include_fifth: bool = False) -> list[ProductConstraint]:
    """The four perfect-correlation constraints at angle step phi, plus
    optionally the canonical fifth that makes the system contradictory.

    The four base rows all satisfy a + b - c - d = 0 and hence force
    ABCD = -1. The fifth instantiates a + b - c - d = pi (forcing +1) as
    A(2*phi)*B(0)*C(0)*D(0) = +1, which needs 2*phi = pi; other
    instantiations can be built directly from ProductConstraint.
    """
    if not math.isfinite(phi):
        raise ValueError("phi must be finite")
    residue = canonical_angle(phi) % math.pi
    if min(residue, abs(residue - math.pi)) < _ANGLE_RESOLUTION * 2:
        raise ValueError("phi must not be 0 modulo pi; the variables collapse")

    constraints = [
        ProductConstraint((("A", 0.0), ("B", 0.0), ("C", 0.0), ("D", 0.0)), -1),
        ProductConstraint((("A", phi), ("B", 0.0), ("C", phi), ("D", 0.0)), -1),
        ProductConstraint((("A", phi), ("B", 0.0), ("C", 0.0), ("D", phi)), -1),
        ProductConstraint((("A", 2 * phi), ("B", 0.0), ("C", phi), ("D", phi)), -1),
    ]
    if include_fifth:
        if abs(canonical_angle(phi) - math.pi / 2) > _ANGLE_RESOLUTION * 2:
            raise ValueError(
                "the canonical fifth constraint is defined only at phi = pi/2 "
                "(it instantiates the +1 case at angle sum pi)"
            )
        constraints.append(
            ProductConstraint((("A", 2 * phi), ("B", 0.0), ("C", 0.0), ("D", 0.0)), +1)
        )
    return constraints


def _collect_variables(constraints: Iterable[ProductConstraint]):
    variables: set[tuple[str, float]] = set()
    canon = []
    for c in constraints:
        fs = c.canonical_factors()
        canon.append((fs, c.target))
        variables.update(fs)
    ordered = sorted(variables)
    index = {v: i for i, v in enumerate(ordered)}
    return ordered, index, canon


def check_satisfiable(constraints: list[ProductConstraint]) -> SatResult:
    """Enumerate every +-1 assignment to the distinct (party, angle)
    variables; bit v of the assignment index gives variable v's value
    (0 -> -1, 1 -> +1), so index 0 is the all-minus assignment."""
    ordered, index, canon = _collect_variables(constraints)
    n_vars = len(ordered)
    if n_vars > MAX_VARIABLES:
        raise ResourceLimitError(
            f"{n_vars} distinct variables exceed the enumeration guard of {MAX_VARIABLES}"
        )
    total = 1 << n_vars

    # Per constraint: the set of variables appearing an odd number of
    # times (even repeats contribute +1), and whether the product of the
    # all-minus assignment already matches the target.
    masks = []
    for fs, target in canon:
        odd: set[int] = set()
        for v in fs:
            odd.symmetric_difference_update({index[v]})
        mask = 0
        for i in odd:
            mask |= 1 << i
        # product = (-1)^(number of odd-multiplicity vars assigned -1)
        masks.append((mask, len(odd), target))

    witness_index = -1
    chunk = 1 << 20
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.uint64)
        ok = np.ones(stop - start, dtype=bool)
        for mask, n_odd, target in masks:
            ones = _popcount64(idx & np.uint64(mask))
            minus_count = n_odd - ones  # odd-multiplicity vars set to -1
            product = np.where(minus_count % 2 == 0, 1, -1)
            ok &= product == target
        if witness_index < 0 and ok.any():
            witness_index = start + int(np.argmax(ok))
    if witness_index < 0:
        return SatResult(satisfiable=False, witness=None, assignments_checked=total)
    witness = {
        v: (1 if witness_index & (1 << i) else -1) for i, v in enumerate(ordered)
    }
    return SatResult(satisfiable=True, witness=witness, assignments_checked=total)


def _popcount64(arr: np.ndarray) -> np.ndarray:
    x = arr.copy()
    count = np.zeros_like(x)
    while x.any():
        count += x & np.uint64(1)
        x >>= np.uint64(1)
    return count.astype(np.int64)


def evaluate_constraint(
    constraint: ProductConstraint, assignment: Mapping[tuple[str, float], int]
) -> int:
    """Product of the assigned values over the constraint's factors."""
    product = 1
    for key in constraint.canonical_factors():
        product *= assignment[key]
    return product
