"""
Named bounded profiles for β-symbols.

A profile f acts on the coordinate vector (a_1, ..., a_m). Every named
profile here is a function of the single linear combination
t = <weights, a>, which keeps CLI runs reproducible from a name and a
short parameter vector.
"""

from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Sequence

import numpy as np


class Profile(ABC):
    """
    Abstract base class for named profiles.

    Instances are callables mapping arrays of shape (..., m) to shape (...).
    """

    def __init__(self, weights: Optional[Sequence[float]] = None):
        self.weights = None if weights is None else np.asarray(weights, dtype=float)

    @property
    @abstractmethod
    def name(self) -> str:
        """Registry key."""
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        pass

    @property
    def bounds(self) -> tuple:
        """Closed interval containing the range of the profile."""
        return (0.0, 1.0)

    @abstractmethod
    def shape(self, t: np.ndarray) -> np.ndarray:
        """The scalar function applied to t = <weights, a>."""
        pass

    def combine(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=float)
        if self.weights is None:
            return np.sum(a, axis=-1)
        if a.shape[-1] != self.weights.shape[0]:
            raise ValueError(
                f"Profile '{self.name}' has {self.weights.shape[0]} weights but received "
                f"{a.shape[-1]} coordinates"
            )
        return a @ self.weights

    def __call__(self, a: np.ndarray) -> np.ndarray:
        return self.shape(self.combine(a))

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "weights": None if self.weights is None else self.weights.tolist(),
        }


class ConstProfile(Profile):
    """f ≡ c; the normalization check of every γ formula."""

    def __init__(self, weights: Optional[Sequence[float]] = None, value: float = 1.0):
        super().__init__(weights)
        self.value = float(value)

    @property
    def name(self) -> str:
        return "const"

    @property
    def description(self) -> str:
        return "Constant profile"

    @property
    def bounds(self) -> tuple:
        return (self.value, self.value)

    def shape(self, t):
        return np.full(np.shape(t), self.value)


class RatioProfile(Profile):
    """|t|/(1+|t|); equals t/(1+t) for the nonnegative elliptic coordinates."""

    @property
    def name(self) -> str:
        return "ratio"

    @property
    def description(self) -> str:
        return "Saturating ratio |t|/(1+|t|)"

    def shape(self, t):
        at = np.abs(t)
        return at / (1.0 + at)


class ReciprocalProfile(Profile):
    """1/(1+|t|); for E(n) with β = {1_n} this is the symbol 1 - |z|^2."""

    @property
    def name(self) -> str:
        return "reciprocal"

    @property
    def description(self) -> str:
        return "Reciprocal 1/(1+|t|)"

    def shape(self, t):
        return 1.0 / (1.0 + np.abs(t))


class GaussianProfile(Profile):

    @property
    def name(self) -> str:
        return "gaussian"

    @property
    def description(self) -> str:
        return "Gaussian bump exp(-t^2)"

    def shape(self, t):
        return np.exp(-np.square(t))


class SigmoidProfile(Profile):
    """Smoothed indicator of t > center, with the given steepness."""

    def __init__(
        self,
        weights: Optional[Sequence[float]] = None,
        center: float = 1.0,
        steepness: float = 4.0,
    ):
        super().__init__(weights)
        self.center = float(center)
        self.steepness = float(steepness)

    @property
    def name(self) -> str:
        return "sigmoid"

    @property
    def description(self) -> str:
        return "Logistic step 1/(1+exp(-s(t-c)))"

    def shape(self, t):
        # tanh form avoids overflow in exp for large |t|
        return 0.5 * (1.0 + np.tanh(0.5 * self.steepness * (np.asarray(t) - self.center)))

    def to_dict(self) -> Dict:
        out = super().to_dict()
        out.update({"center": self.center, "steepness": self.steepness})
        return out


PROFILE_CLASSES = {
    "const": ConstProfile,
    "ratio": RatioProfile,
    "reciprocal": ReciprocalProfile,
    "gaussian": GaussianProfile,
    "sigmoid": SigmoidProfile,
}


def available_profiles() -> List[str]:
    return sorted(PROFILE_CLASSES)


# Shape parameters each profile accepts, in positional order
PROFILE_PARAMS = {
    "const": ("value",),
    "sigmoid": ("center", "steepness"),
}


def create_profile(
    name: str,
    weights: Optional[Sequence[float]] = None,
    params: Optional[Sequence[float]] = None,
) -> Profile:
    """
    Build a named profile.

    Args:
        name: Registry key (see available_profiles)
        weights: Combination weights, one per coordinate; None sums them
        params: Shape parameters, see PROFILE_PARAMS (`sigmoid` takes
            center and steepness, `const` its value, the rest none)

    Returns:
        Profile instance
    """
    key = name.lower()
    if key not in PROFILE_CLASSES:
        supported = ", ".join(f"'{p}'" for p in available_profiles())
        raise ValueError(f"Unknown profile: '{name}'. Supported: {supported}")
    params = [] if params is None else [float(x) for x in params]
    accepted = PROFILE_PARAMS.get(key, ())
    if len(params) > len(accepted):
        raise ValueError(
            f"Profile '{key}' takes at most {len(accepted)} parameter(s) {list(accepted)}, got {params}"
        )
    weights = None if weights is None else [float(x) for x in weights]
    return PROFILE_CLASSES[key](weights, **dict(zip(accepted, params)))


def parse_profile_args(text: Optional[str]) -> List[float]:
    """Parse "--profile-args" text: comma-separated floats."""
    if not text:
        return []
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ValueError(f"Cannot parse profile arguments '{text}': {exc}") from exc
