"""Finite-range symmetric potentials on the half-line x0 >= 0.

All potentials are expressed in reduced units, U(x0) = 2mV(x0)/hbar^2, and
vanish identically beyond ``effective_range_R``.
"""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, ValidationError


def _check_half_line(x):
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(np.isnan(x)):
        raise DomainError("potential is defined on x0 >= 0 only")
    return x


def _as_output(x, values):
    if np.ndim(x) == 0:
        return float(values)
    return values


@dataclass(frozen=True)
class SquareWell:
    """U = -beta0^2 for x0 <= R, zero beyond.

    The value exactly at x0 = R is the interior one.
    """

    beta0: float
    R: float

    def __post_init__(self):
        if not (self.beta0 > 0 and math.isfinite(self.beta0)):
            raise ValidationError(f"beta0 must be positive, got {self.beta0}")
        if not (self.R > 0 and math.isfinite(self.R)):
            raise ValidationError(f"square-well range must be positive, got {self.R}")

    @property
    def depth(self):
        return self.beta0**2

    @property
    def effective_range_R(self):
        return self.R

    def __call__(self, x):
        x = _check_half_line(x)
        return _as_output(x, np.where(x <= self.R, -self.depth, 0.0))


@dataclass(frozen=True)
class Tabulated:
    """Piecewise-linear potential through ``nodes`` [(x0, U), ...].

    Nodes must be strictly increasing in x0 and start at 0. The last node
    fixes the range; U is zero beyond it.
    """

    nodes: tuple

    def __post_init__(self):
        nodes = tuple((float(x), float(u)) for x, u in self.nodes)
        if len(nodes) < 2:
            raise ValidationError("tabulated potential needs at least two nodes")
        xs = np.array([n[0] for n in nodes])
        us = np.array([n[1] for n in nodes])
        if xs[0] != 0.0:
            raise ValidationError("first tabulated node must sit at x0 = 0")
        if np.any(np.diff(xs) <= 0):
            raise ValidationError("tabulated nodes must be strictly increasing in x0")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(us))):
            raise ValidationError("tabulated nodes must be finite")
        object.__setattr__(self, "nodes", nodes)

    @property
    def effective_range_R(self):
        return self.nodes[-1][0]

    def __call__(self, x):
        x = _check_half_line(x)
        xs = [n[0] for n in self.nodes]
        us = [n[1] for n in self.nodes]
        values = np.interp(x, xs, us)
        return _as_output(x, np.where(x <= self.effective_range_R, values, 0.0))


@dataclass(frozen=True)
class AnalyticWindowed:
    """A smooth potential ``func`` truncated to zero beyond ``cutoff``."""

    func: Callable = field(compare=False)
    cutoff: float
    label: str = "analytic"

    def __post_init__(self):
        if not (self.cutoff > 0 and math.isfinite(self.cutoff)):
            raise ValidationError(f"cutoff must be positive and finite, got {self.cutoff}")

    @property
    def effective_range_R(self):
        return self.cutoff

    def __call__(self, x):
        x = _check_half_line(x)
        inside = x <= self.cutoff
        values = np.zeros_like(x)
        if np.any(inside):
            values[inside] = np.asarray(self.func(x[inside]), dtype=float)
        return _as_output(x, values)


def evaluate(spec, x):
    """Return U(x0) for scalar or array ``x``; zero beyond the range."""
    return spec(x)


def make_square_well(beta0, R):
    return SquareWell(beta0=float(beta0), R=float(R))


def free_potential(R=1.0):
    """U identically zero, written as a tabulated potential of range ``R``."""
    return Tabulated(((0.0, 0.0), (float(R), 0.0)))


def make_truncated_gaussian(depth, width, cutoff):
    """U = -depth * exp(-(x0/width)^2), truncated at ``cutoff``."""
    if not (depth > 0 and width > 0):
        raise ValidationError("gaussian depth and width must be positive")
    return AnalyticWindowed(
        func=lambda x: -depth * np.exp(-((x / width) ** 2)),
        cutoff=float(cutoff),
        label=f"gaussian(depth={depth}, width={width})",
    )


def potential_from_json(obj):
    """Build a potential from its JSON form.

    Accepts ``{"kind": "square_well", "beta0": .., "R": ..}`` or
    ``{"kind": "tabulated", "nodes": [[x, U], ...]}``.
    """
    if not isinstance(obj, dict):
        raise ValidationError("potential must be a JSON object")
    kind = obj.get("kind")
    if kind == "square_well":
        return make_square_well(obj["beta0"], obj["R"])
    if kind == "tabulated":
        return Tabulated(tuple(tuple(n) for n in obj["nodes"]))
    raise ValidationError(f"unknown potential kind {kind!r}")


def potential_to_json(spec):
    if isinstance(spec, SquareWell):
        return {"kind": "square_well", "beta0": spec.beta0, "R": spec.R}
    if isinstance(spec, Tabulated):
        return {"kind": "tabulated", "nodes": [list(n) for n in spec.nodes]}
    raise ValidationError(f"{type(spec).__name__} has no JSON form")
