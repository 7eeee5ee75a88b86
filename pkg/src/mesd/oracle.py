"""Direct numerical maximization of discrimination success over measurements.

The analytic optima in `analytic` are verified here by brute force: build a
parametrized family of candidate measurements, evaluate the success
functional sum_i p_i <psi_i| E_i |psi_i> through the Born rule, and climb.

For two hypotheses the candidates are projective two-outcome measurements
fixed by one angle.  For three hypotheses the candidates are in-plane
weighted rank-1 triples a_i |phi(alpha_i)><phi(alpha_i)|: given the three
angles, completeness (sum of effects = identity) is a 3x3 linear system for
the weights, so the search space is just the angle triple.  Extremal qubit
POVMs have rank-1 elements, so this family contains a global optimum for
in-plane pure-state ensembles; two-outcome degenerate candidates (one weight
exactly zero) are enumerated explicitly because boundary optima are easy for
an interior search to miss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .analytic import MirrorEnsemble
from .qcore import (
    Effect,
    Povm,
    PriorDistribution,
    PureState,
    born_probability,
    identity_matrix,
    make_state,
    validate_povm,
)

TWO_PI = 2.0 * math.pi
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0

# Completeness solve below this determinant magnitude is ill-conditioned.
_DET_TOL = 1e-9
_WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class MeasurementParams2:
    """Orientation of a projective two-outcome measurement in the plane."""

    angle: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.angle):
            raise ValueError(f"measurement angle must be finite, got {self.angle!r}")
        object.__setattr__(self, "angle", self.angle % TWO_PI)


@dataclass(frozen=True)
class MeasurementParams3:
    """In-plane three-outcome POVM a_i |phi(alpha_i)><phi(alpha_i)|.

    weights are the effect traces (a_1, a_2, a_3) and angles the projector
    directions.  Completeness requires sum a_i = 2 and the weighted
    double-angle directions sum a_i (cos 2a_i, sin 2a_i) to cancel; both are
    checked to 1e-9.  Positivity is automatic from a_i >= 0.
    """

    weights: tuple[float, float, float]
    angles: tuple[float, float, float]

    def __post_init__(self) -> None:
        w = tuple(float(x) for x in self.weights)
        a = tuple(float(x) for x in self.angles)
        if len(w) != 3 or len(a) != 3:
            raise ValueError("three weights and three angles required")
        if any(x < -_WEIGHT_TOL for x in w):
            raise ValueError(f"weights must be nonnegative, got {w}")
        w = tuple(max(0.0, x) for x in w)
        if abs(sum(w) - 2.0) > 1e-9:
            raise ValueError(f"weights must sum to 2, got sum {sum(w)!r}")
        bx = sum(wi * math.cos(2.0 * ai) for wi, ai in zip(w, a))
        by = sum(wi * math.sin(2.0 * ai) for wi, ai in zip(w, a))
        if abs(bx) > 1e-9 or abs(by) > 1e-9:
            raise ValueError(
                f"weighted directions must cancel for completeness, got ({bx!r}, {by!r})"
            )
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "angles", a)

    def to_povm(self) -> Povm:
        effects = [
            Effect.scaled_projector(wi, make_state(ai))
            for wi, ai in zip(self.weights, self.angles)
        ]
        return validate_povm(effects)


@dataclass(frozen=True)
class OracleResult:
    """Best success found, the measurement achieving it, and the number of
    objective evaluations spent."""

    success: float
    params: MeasurementParams2 | MeasurementParams3
    evaluations: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.success <= 1.0:
            raise ValueError(f"success out of [0, 1]: {self.success!r}")


def discrimination_success(
    states: Sequence[PureState], priors: PriorDistribution, povm: Povm
) -> float:
    """Born-rule success functional sum_i p_i <psi_i| E_i |psi_i| for a
    hypothesis-indexed POVM (effect i means "guess state i")."""
    if len(states) != len(priors) or len(povm) != len(states):
        raise ValueError("states, priors and POVM outcomes must align")
    return sum(
        p * born_probability(s, e)
        for p, s, e in zip(priors.probabilities, states, povm.effects)
    )


def success_two(
    s1: PureState, s2: PureState, p: float, m: MeasurementParams2
) -> float:
    """Two-state success p <psi2|E2|psi2> + (1-p) <psi1|E1|psi1> where E1 is
    the projector at m.angle (outcome 1 guesses psi1) and E2 = I - E1."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"prior must lie in [0, 1], got {p!r}")
    e1 = Effect.projector(make_state(m.angle))
    e2 = Effect(identity_matrix() - e1.matrix)
    return p * born_probability(s2, e2) + (1.0 - p) * born_probability(s1, e1)


def _golden_max(
    f: Callable[[float], float], lo: float, hi: float, iters: int
) -> tuple[float, float, int]:
    """Golden-section maximization on [lo, hi]; returns (x, f(x), evals)."""
    a, b = lo, hi
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    evals = 2
    for _ in range(iters):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = f(x1)
        evals += 1
    if f1 >= f2:
        return x1, f1, evals
    return x2, f2, evals


def optimize_two(
    s1: PureState,
    s2: PureState,
    p: float,
    grid_n: int = 1024,
    refine_iters: int = 60,
) -> OracleResult:
    """Maximize success_two over the measurement angle.

    Uniform grid of grid_n angles over one projector period [0, pi),
    followed by golden-section refinement in the bracket around the best
    grid point.  The objective is a single harmonic in 2*angle, so the
    refined value is the global maximum.
    """
    if grid_n < 64:
        raise ValueError(f"grid_n must be >= 64, got {grid_n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"prior must lie in [0, 1], got {p!r}")
    t1, t2 = s1.angle, s2.angle

    def objective(alpha: float) -> float:
        return p * math.sin(t2 - alpha) ** 2 + (1.0 - p) * math.cos(t1 - alpha) ** 2

    alphas = np.linspace(0.0, math.pi, grid_n, endpoint=False)
    values = p * np.sin(t2 - alphas) ** 2 + (1.0 - p) * np.cos(t1 - alphas) ** 2
    best = int(np.argmax(values))
    spacing = math.pi / grid_n
    evals = grid_n

    x, _, used = _golden_max(
        objective, alphas[best] - spacing, alphas[best] + spacing, refine_iters
    )
    evals += used
    if objective(x) < values[best]:
        x = float(alphas[best])
    params = MeasurementParams2(x)
    return OracleResult(
        success=success_two(s1, s2, p, params), params=params, evaluations=evals
    )


def _solve_weights(angles: Sequence[float]) -> tuple[float, float, float] | None:
    """Weights making the three projectors at `angles` a complete POVM, or
    None when the linear system is singular or a weight is negative."""
    a1, a2, a3 = (2.0 * x for x in angles)
    det = math.sin(a3 - a2) - math.sin(a3 - a1) + math.sin(a2 - a1)
    if abs(det) < _DET_TOL:
        return None
    w1 = 2.0 * math.sin(a3 - a2) / det
    w2 = -2.0 * math.sin(a3 - a1) / det
    w3 = 2.0 * math.sin(a2 - a1) / det
    if w1 < -_WEIGHT_TOL or w2 < -_WEIGHT_TOL or w3 < -_WEIGHT_TOL:
        return None
    # Completeness caps every weight at 1 (the other two effects must absorb
    # the rest of the identity), so values outside [0, 1] are solver noise.
    return tuple(min(1.0, max(0.0, w)) for w in (w1, w2, w3))


def _three_objective(
    ensemble: MirrorEnsemble, angles: Sequence[float]
) -> tuple[float, tuple[float, float, float]] | None:
    """Success of the solved-weight POVM at `angles`, or None if infeasible."""
    weights = _solve_weights(angles)
    if weights is None:
        return None
    t, p = ensemble.theta, ensemble.prior_p
    state_angles = (t, -t, 0.0)
    prior_vec = (p, p, 1.0 - 2.0 * p)
    value = sum(
        pr * w * math.cos(sa - al) ** 2
        for pr, w, sa, al in zip(prior_vec, weights, state_angles, angles)
    )
    return value, weights


def _coordinate_descent(
    ensemble: MirrorEnsemble,
    start: tuple[float, float, float],
    start_value: float,
    step0: float,
    refine_iters: int,
) -> tuple[float, tuple[float, float, float], int]:
    """Greedy per-coordinate climb with shrinking step; infeasible moves are
    simply rejected, which keeps the walk inside the weight-feasible region."""
    angles = list(start)
    best = start_value
    step = step0
    evals = 0
    for _ in range(refine_iters):
        improved = False
        for i in range(3):
            for delta in (step, -step):
                trial = list(angles)
                trial[i] = (trial[i] + delta) % math.pi
                result = _three_objective(ensemble, trial)
                evals += 1
                if result is not None and result[0] > best:
                    best, angles = result[0], trial
                    improved = True
        if not improved:
            step *= 0.6
            if step < 1e-13:
                break
    return best, (angles[0], angles[1], angles[2]), evals


def _degenerate_candidates(
    ensemble: MirrorEnsemble, grid_n: int, refine_iters: int
) -> tuple[list[tuple[float, tuple[float, float, float], tuple[float, float, float]]], int]:
    """Two-outcome projective candidates: outcome i at phi(alpha), outcome j
    at phi(alpha + pi/2), the third effect zero.  All six (i, j) assignments
    are scanned since the optimal low-prior strategy may ignore a state."""
    t, p = ensemble.theta, ensemble.prior_p
    state_angles = (t, -t, 0.0)
    prior_vec = (p, p, 1.0 - 2.0 * p)
    n_1d = max(grid_n * grid_n, 512)
    out = []
    evals = 0
    for i in range(3):
        for j in range(3):
            if i == j:
                continue

            def objective(alpha: float, i: int = i, j: int = j) -> float:
                return (
                    prior_vec[i] * math.cos(state_angles[i] - alpha) ** 2
                    + prior_vec[j] * math.sin(state_angles[j] - alpha) ** 2
                )

            alphas = np.linspace(0.0, math.pi, n_1d, endpoint=False)
            values = prior_vec[i] * np.cos(state_angles[i] - alphas) ** 2 + prior_vec[
                j
            ] * np.sin(state_angles[j] - alphas) ** 2
            best = int(np.argmax(values))
            spacing = math.pi / n_1d
            evals += n_1d
            x, fx, used = _golden_max(
                objective, alphas[best] - spacing, alphas[best] + spacing, refine_iters
            )
            evals += used
            if fx < values[best]:
                x, fx = float(alphas[best]), float(values[best])
            weights = [0.0, 0.0, 0.0]
            angles = [0.0, 0.0, 0.0]
            weights[i] = 1.0
            weights[j] = 1.0
            angles[i] = x % math.pi
            angles[j] = (x + math.pi / 2.0) % math.pi
            out.append((fx, tuple(weights), tuple(angles)))
    return out, evals


def success_three(ensemble: MirrorEnsemble, m: MeasurementParams3) -> float:
    """Three-state success for an in-plane weighted-projector POVM, computed
    through the Born rule (effect i guesses state i)."""
    return discrimination_success(ensemble.states(), ensemble.priors(), m.to_povm())


def optimize_three(
    ensemble: MirrorEnsemble,
    grid_n: int = 64,
    refine_iters: int = 200,
    seed: int = 0,
    restarts: int = 8,
) -> OracleResult:
    """Maximize success_three over the in-plane rank-1 POVM family.

    Stages: a vectorized grid_n^3 scan over angle triples (weights solved
    from completeness, infeasible combinations discarded), coordinate
    descent with shrinking step from the best grid point and from
    seed-chosen random restarts, and the explicit two-outcome degenerate
    family.  Exact ties are broken toward the lexicographically smallest
    angle triple, so results are reproducible for a given seed.
    """
    if grid_n < 16:
        raise ValueError(f"grid_n must be >= 16 per angle, got {grid_n}")
    t, p = ensemble.theta, ensemble.prior_p

    alphas = np.linspace(0.0, math.pi, grid_n, endpoint=False)
    # sin(2a_k - 2a_j) table drives the Cramer solution of the completeness system
    sin_kj = np.sin(2.0 * (alphas[None, :] - alphas[:, None]))  # [j, k] = sin(2a_k-2a_j)
    det = sin_kj[None, :, :] - sin_kj[:, None, :] + sin_kj[:, :, None]
    w1 = 2.0 * sin_kj[None, :, :]
    w2 = -2.0 * sin_kj[:, None, :]
    w3 = 2.0 * sin_kj[:, :, None]
    feasible = np.abs(det) >= _DET_TOL
    safe_det = np.where(feasible, det, 1.0)
    w1 = w1 / safe_det
    w2 = w2 / safe_det
    w3 = w3 / safe_det
    feasible &= (w1 >= -_WEIGHT_TOL) & (w2 >= -_WEIGHT_TOL) & (w3 >= -_WEIGHT_TOL)

    g1 = p * np.cos(t - alphas) ** 2
    g2 = p * np.cos(-t - alphas) ** 2
    g3 = (1.0 - 2.0 * p) * np.cos(0.0 - alphas) ** 2
    values = (
        w1 * g1[:, None, None] + w2 * g2[None, :, None] + w3 * g3[None, None, :]
    )
    values = np.where(feasible, values, -np.inf)
    evals = values.size

    candidates: list[tuple[float, tuple[float, float, float], tuple[float, float, float]]] = []

    if np.any(feasible):
        flat_best = int(np.argmax(values))  # first max in C order = lexicographic min
        i, j, k = np.unravel_index(flat_best, values.shape)
        start = (float(alphas[i]), float(alphas[j]), float(alphas[k]))
        spacing = math.pi / grid_n
        start_result = _three_objective(ensemble, start)
        evals += 1
        if start_result is not None:
            best_value, best_angles, used = _coordinate_descent(
                ensemble, start, start_result[0], spacing, refine_iters
            )
            evals += used
            solved = _solve_weights(best_angles)
            if solved is not None:
                candidates.append((best_value, solved, best_angles))

        rng = np.random.default_rng(seed)
        for _ in range(restarts):
            trial = tuple(float(x) for x in rng.uniform(0.0, math.pi, size=3))
            result = _three_objective(ensemble, trial)
            evals += 1
            if result is None:
                continue
            value, angles, used = _coordinate_descent(
                ensemble, trial, result[0], spacing, refine_iters
            )
            evals += used
            solved = _solve_weights(angles)
            if solved is not None:
                candidates.append((value, solved, angles))

    degenerate, used = _degenerate_candidates(ensemble, grid_n, refine_iters)
    evals += used
    candidates.extend(degenerate)

    # The degenerate projective family is always feasible, so candidates is
    # never empty.
    _, best_weights, best_angles = max(
        candidates, key=lambda cand: (cand[0], tuple(-a for a in cand[2]))
    )
    params = MeasurementParams3(weights=best_weights, angles=best_angles)
    return OracleResult(
        success=success_three(ensemble, params), params=params, evaluations=evals
    )
