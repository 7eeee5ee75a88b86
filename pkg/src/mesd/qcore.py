"""Minimal qubit linear algebra for in-plane pure states.

States live on the great circle of the Bloch sphere spanned by the real
combinations of |0> and |1>, so a single angle fixes a state.  Effects and
POVMs are kept as full 2x2 complex matrices so the Born rule stays generic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

TWO_PI = 2.0 * math.pi

# Exact-arithmetic constructions (projectors, hand-built matrices).
HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-12
# Completeness sums coming out of optimization carry more float noise.
COMPLETENESS_TOL = 1e-9

_IDENTITY = np.eye(2, dtype=complex)


def identity_matrix() -> np.ndarray:
    """2x2 identity, the unit effect of every POVM."""
    return _IDENTITY.copy()


@dataclass(frozen=True)
class PureState:
    """A qubit pure state cos(angle)|0> + sin(angle)|1>.

    The angle is normalized into [0, 2*pi) at construction so states compare
    by a unique representative.
    """

    angle: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.angle):
            raise ValueError(f"state angle must be finite, got {self.angle!r}")
        normalized = self.angle % TWO_PI
        if normalized >= TWO_PI:  # tiny negatives can round the modulo up to 2*pi
            normalized = 0.0
        object.__setattr__(self, "angle", normalized)

    @property
    def amplitudes(self) -> tuple[float, float]:
        return (math.cos(self.angle), math.sin(self.angle))

    @property
    def ket(self) -> np.ndarray:
        return np.array(self.amplitudes, dtype=float)

    def projector(self) -> np.ndarray:
        """Rank-1 projector |psi><psi| as a complex 2x2 matrix."""
        k = self.ket.astype(complex)
        return np.outer(k, k.conj())

    def orthogonal(self) -> "PureState":
        """The orthogonal-complement state (angle shifted by pi/2)."""
        return PureState(self.angle + math.pi / 2.0)


def make_state(angle: float) -> PureState:
    """Build the pure state at `angle` radians from |0> on the great circle."""
    return PureState(float(angle))


def confusability(a: PureState, b: PureState) -> float:
    """Squared overlap |<a|b>|^2: the probability of mistaking one state
    for the other under a projective test.  Always in [0, 1]."""
    inner = float(np.dot(a.ket, b.ket))
    return min(1.0, max(0.0, inner * inner))


@dataclass(frozen=True)
class Effect:
    """A positive semidefinite 2x2 measurement effect.

    Hermiticity and positivity are enforced at construction; the matrix is
    copied and frozen so shared references cannot mutate it.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"effect must be a 2x2 matrix, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
            raise ValueError("non-Hermitian effect")
        if np.min(np.linalg.eigvalsh(m)) < -PSD_TOL:
            raise ValueError("non-positive effect")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @classmethod
    def projector(cls, state: PureState) -> "Effect":
        return cls(state.projector())

    @classmethod
    def scaled_projector(cls, weight: float, state: PureState) -> "Effect":
        """weight * |psi><psi| with weight >= 0 (rank-1 POVM building block)."""
        if weight < 0.0:
            raise ValueError("non-positive effect")
        return cls(weight * state.projector())

    @classmethod
    def identity(cls) -> "Effect":
        return cls(identity_matrix())


def born_probability(state: PureState, effect: Effect) -> float:
    """Born-rule outcome probability Tr[|psi><psi| E] = <psi|E|psi>.

    The raw trace must already be a probability up to 1e-12 of float noise;
    anything farther out means the effect is not part of a measurement and
    is rejected.  The returned value is clamped into [0, 1].
    """
    k = state.ket.astype(complex)
    value = float(np.real(k.conj() @ effect.matrix @ k))
    if value < -1e-12 or value > 1.0 + 1e-12:
        raise ValueError(
            f"effect gives Born weight {value!r} outside [0, 1]: invalid effect"
        )
    return min(1.0, max(0.0, value))


def mirror_reflect(state: PureState) -> PureState:
    """Reflection |0> -> |0>, |1> -> -|1>; sends angle to -angle."""
    return PureState(-state.angle)


@dataclass(frozen=True)
class Povm:
    """An ordered list of effects summing to the identity, one per outcome."""

    effects: tuple[Effect, ...]
    labels: tuple[object, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.effects:
            raise ValueError("POVM needs at least one effect")
        labels = self.labels if self.labels else tuple(range(len(self.effects)))
        if len(labels) != len(self.effects):
            raise ValueError("one label per effect required")
        total = sum(e.matrix for e in self.effects)
        if np.max(np.abs(total - _IDENTITY)) > COMPLETENESS_TOL:
            raise ValueError("incomplete POVM")
        object.__setattr__(self, "effects", tuple(self.effects))
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.effects)

    def outcome_probabilities(self, state: PureState) -> list[float]:
        return [born_probability(state, e) for e in self.effects]


def validate_povm(
    effects: Sequence[Effect | np.ndarray], labels: Sequence[object] | None = None
) -> Povm:
    """Validate a list of effects (or raw 2x2 matrices) as a POVM.

    Raises ValueError("non-positive effect") for a negative eigenvalue and
    ValueError("incomplete POVM") when the effects do not sum to identity
    within 1e-9.
    """
    if len(effects) == 0:
        raise ValueError("POVM needs at least one effect")
    wrapped = tuple(e if isinstance(e, Effect) else Effect(np.asarray(e)) for e in effects)
    return Povm(wrapped, tuple(labels) if labels is not None else ())


@dataclass(frozen=True)
class PriorDistribution:
    """Prior probabilities over the discrimination hypotheses."""

    probabilities: tuple[float, ...]

    def __post_init__(self) -> None:
        probs = tuple(float(p) for p in self.probabilities)
        if any(p < 0.0 or p > 1.0 for p in probs):
            raise ValueError(f"prior entries must lie in [0, 1], got {probs}")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise ValueError(f"priors must sum to 1, got sum {sum(probs)!r}")
        object.__setattr__(self, "probabilities", probs)

    def __len__(self) -> int:
        return len(self.probabilities)

    def __getitem__(self, i: int) -> float:
        return self.probabilities[i]
