"""Why no single operator can stand for the variance of a spin component.

The per-state construction (S_x - <S_x>)^2 reproduces each state's variance,
but the operator it yields depends on the state it was built from: the members
built from the two x eigenstates annihilate their sources, while the member
built from a z eigenstate is the identity. A state-independent observable with
both behaviors cannot exist, and the least-squares fit below quantifies how
far any fixed candidate must miss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qcore import HermitianOp, Spinor, apply, expectation
from .spin import SpinOutcome, X, Z, eigenstate, spin_operator

__all__ = [
    "PseudoOperatorReport",
    "variance_pseudo_operator",
    "annihilation_residual",
    "null_operator_contradiction",
    "fixed_operator_infeasibility",
]

_ANNIHILATION_TOL = 1e-12


@dataclass(frozen=True)
class PseudoOperatorReport:
    """One member of the state-indexed family, evaluated on its source state.

    ``annihilates_sx_eigenstates`` is a family-level fact shared by every
    report: each x eigenstate is annihilated by the member built from it, so
    any single fixed operator honoring that would be the null operator. A
    report with this flag set and a nonzero ``expectation_on_source`` is the
    contradiction in one object.
    """

    source_state: Spinor
    operator: HermitianOp
    annihilates_sx_eigenstates: bool
    expectation_on_source: float

    def __post_init__(self) -> None:
        if self.expectation_on_source < -1e-12:
            raise ValueError("a squared Hermitian operator cannot have negative expectation")


def variance_pseudo_operator(beta: Spinor) -> HermitianOp:
    """(S_x - E I)^2 with E = <beta|S_x|beta>, in half-quantum units.

    Its expectation on ``beta`` equals the per-particle variance of the x spin
    on that state; on any other state it has no such meaning.
    """
    sx = spin_operator(X)
    e_val = expectation(sx, beta)
    return (sx - e_val * HermitianOp.identity()).square()


def annihilation_residual(beta: Spinor) -> float:
    """Norm of ``variance_pseudo_operator(beta)`` applied to its own source."""
    v0, v1 = apply(variance_pseudo_operator(beta), beta)
    return math.hypot(abs(v0), abs(v1))


def null_operator_contradiction() -> tuple[PseudoOperatorReport, PseudoOperatorReport]:
    """Witness pair showing the family cannot be one fixed operator.

    Each member built from an x eigenstate annihilates its source (so a fixed
    operator with those eigenstates would be the null operator), yet the
    member built from the +z eigenstate has expectation 1 there. Both facts
    are verified numerically; failing to produce them is a bug, not an error
    state.
    """
    x_plus = eigenstate(X, SpinOutcome.PLUS)
    x_minus = eigenstate(X, SpinOutcome.MINUS)
    z_plus = eigenstate(Z, SpinOutcome.PLUS)

    annihilates = all(
        annihilation_residual(s) < _ANNIHILATION_TOL for s in (x_plus, x_minus)
    )
    if not annihilates:
        raise RuntimeError("x eigenstates were not annihilated; numerical kernel is broken")

    zero_report = PseudoOperatorReport(
        source_state=x_plus,
        operator=variance_pseudo_operator(x_plus),
        annihilates_sx_eigenstates=True,
        expectation_on_source=expectation(variance_pseudo_operator(x_plus), x_plus),
    )
    z_op = variance_pseudo_operator(z_plus)
    nonzero_report = PseudoOperatorReport(
        source_state=z_plus,
        operator=z_op,
        annihilates_sx_eigenstates=True,
        expectation_on_source=expectation(z_op, z_plus),
    )
    if abs(nonzero_report.expectation_on_source - 1.0) > _ANNIHILATION_TOL:
        raise RuntimeError("z eigenstate expectation drifted from 1; numerical kernel is broken")
    return zero_report, nonzero_report


def _best_affine_fit(bloch: np.ndarray, targets: np.ndarray) -> tuple[float, float]:
    """Least-squares residuals of the best fixed observable against targets.

    The expectation of any 2x2 Hermitian O on a state with Bloch vector m is
    affine in m, so fitting over [1, m_x, m_y, m_z] searches all of them.
    """
    design = np.column_stack([np.ones(len(bloch)), bloch])
    coef, *_ = np.linalg.lstsq(design, targets, rcond=None)
    residuals = design @ coef - targets
    rms = float(np.sqrt(np.mean(residuals**2)))
    return rms, float(np.max(np.abs(residuals)))


def fixed_operator_infeasibility(samples: int, seed: int) -> tuple[float, float]:
    """How badly the best state-independent observable misses the variance.

    States are drawn uniformly on the Bloch sphere; the target is each state's
    x-spin variance 1 - m_x^2. Returns (rms_residual, max_residual) of the
    optimal fit, which converge to sqrt(4/45) and 2/3 as samples grow.
    """
    if samples < 100:
        raise ValueError("need at least 100 samples for a meaningful fit")
    rng = np.random.default_rng(seed)
    z = rng.uniform(-1.0, 1.0, samples)
    phi = rng.uniform(0.0, 2.0 * math.pi, samples)
    sin_t = np.sqrt(1.0 - z**2)
    bloch = np.column_stack([sin_t * np.cos(phi), sin_t * np.sin(phi), z])
    targets = 1.0 - bloch[:, 0] ** 2
    return _best_affine_fit(bloch, targets)
