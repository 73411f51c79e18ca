"""Exact amplitude polynomials in the injection parameters.

A weight-``w`` basis string of ``|chi>^N`` carries ``alpha**(N-w) * beta**w``;
an ``AmplitudePoly`` stores the integer multiplicity of each weight.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from typing import Any, Sequence


class ZeroProbabilityTrajectory(ArithmeticError):
    """The trajectory cannot occur for the given injection state."""


@dataclass(frozen=True)
class InjectionState:
    alpha: complex
    beta: complex

    def __post_init__(self):
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"injection state not normalised: |a|^2+|b|^2 = {norm!r}")

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "InjectionState":
        return cls(complex(math.cos(theta / 2)), cmath.exp(1j * phi) * math.sin(theta / 2))

    @classmethod
    def from_amplitudes(cls, alpha: complex, beta: complex, normalize: bool = False) -> "InjectionState":
        if normalize:
            norm = math.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
            if norm == 0:
                raise ValueError("zero vector is not a state")
            alpha, beta = alpha / norm, beta / norm
        return cls(complex(alpha), complex(beta))


class AmplitudePoly:
    """sum_w coeffs[w] * alpha**(N-w) * beta**w with exact integer coefficients."""

    __slots__ = ("num_data", "coeffs")

    def __init__(self, num_data: int, coeffs: Sequence[int] | None = None):
        self.num_data = num_data
        if coeffs is None:
            self.coeffs = [0] * (num_data + 1)
        else:
            if len(coeffs) != num_data + 1:
                raise ValueError(f"expected {num_data + 1} coefficients, got {len(coeffs)}")
            self.coeffs = [int(c) for c in coeffs]

    def add_term(self, weight: int, sign: int = 1) -> "AmplitudePoly":
        if not 0 <= weight <= self.num_data:
            raise ValueError(f"weight {weight} outside 0..{self.num_data}")
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        out = self.copy()
        out.coeffs[weight] += sign
        return out

    def copy(self) -> "AmplitudePoly":
        return AmplitudePoly(self.num_data, self.coeffs)

    def __add__(self, other: "AmplitudePoly") -> "AmplitudePoly":
        if other.num_data != self.num_data:
            raise ValueError("polynomials of different N")
        return AmplitudePoly(self.num_data, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "AmplitudePoly":
        return AmplitudePoly(self.num_data, [-c for c in self.coeffs])

    def __sub__(self, other: "AmplitudePoly") -> "AmplitudePoly":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AmplitudePoly):
            return NotImplemented
        return self.num_data == other.num_data and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.num_data, tuple(self.coeffs)))

    def __repr__(self):
        return f"AmplitudePoly({self.num_data}, {self.coeffs})"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def evaluate(self, chi: InjectionState) -> complex:
        n = self.num_data
        a, b = complex(chi.alpha), complex(chi.beta)
        a_pow = [complex(1)] * (n + 1)
        b_pow = [complex(1)] * (n + 1)
        for k in range(1, n + 1):
            a_pow[k] = a_pow[k - 1] * a
            b_pow[k] = b_pow[k - 1] * b
        return sum(
            (c * a_pow[n - w] * b_pow[w] for w, c in enumerate(self.coeffs) if c),
            complex(0),
        )

    def to_json(self) -> dict[str, Any]:
        return {"N": self.num_data, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "AmplitudePoly":
        return cls(obj["N"], obj["coeffs"])

    def format(self, a: str = "a", b: str = "b") -> str:
        """Human-readable form, e.g. ``a^4*b + a^3*b^2 - a^2*b^3``."""
        n = self.num_data
        parts = []
        for w, c in enumerate(self.coeffs):
            if not c:
                continue
            factors = []
            for sym, exp in ((a, n - w), (b, w)):
                if exp == 1:
                    factors.append(sym)
                elif exp > 1:
                    factors.append(f"{sym}^{exp}")
            mono = "*".join(factors) or "1"
            mag = abs(c)
            body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        if not parts:
            return "0"
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def poly_add_term(p: AmplitudePoly, weight: int, sign: int = 1) -> AmplitudePoly:
    return p.add_term(weight, sign)


def evaluate(p: AmplitudePoly, chi: InjectionState) -> complex:
    return p.evaluate(chi)


@dataclass(frozen=True)
class LogicalState:
    """Unnormalised logical amplitudes: A on |0>_L, B on |1>_L."""

    A: AmplitudePoly
    B: AmplitudePoly

    def __post_init__(self):
        if self.A.num_data != self.B.num_data:
            raise ValueError("A and B must share N")

    @property
    def num_data(self) -> int:
        return self.A.num_data

    def sign_normalized(self) -> "LogicalState":
        """Flip the common sign so the first nonzero coefficient is positive."""
        for c in self.A.coeffs + self.B.coeffs:
            if c:
                return self if c > 0 else LogicalState(-self.A, -self.B)
        return self


def normalize(state: LogicalState, chi: InjectionState) -> tuple[tuple[complex, complex], float]:
    """Return the unit logical pair and the pre-normalisation squared norm."""
    a = state.A.evaluate(chi)
    b = state.B.evaluate(chi)
    norm2 = abs(a) ** 2 + abs(b) ** 2
    if norm2 == 0.0:
        raise ZeroProbabilityTrajectory("both logical amplitudes vanish")
    norm = math.sqrt(norm2)
    return (a / norm, b / norm), norm2


def bloch(alpha_l: complex, beta_l: complex) -> tuple[float, float, float]:
    norm2 = abs(alpha_l) ** 2 + abs(beta_l) ** 2
    if abs(norm2 - 1.0) > 1e-9:
        raise ValueError(f"state not normalised: {norm2!r}")
    cross = alpha_l.conjugate() * beta_l
    return (2 * cross.real, 2 * cross.imag, abs(alpha_l) ** 2 - abs(beta_l) ** 2)


def random_chi(rng: random.Random) -> InjectionState:
    """Haar-random single-qubit state."""
    theta = math.acos(1 - 2 * rng.random())
    return InjectionState.from_angles(theta, 2 * math.pi * rng.random())
