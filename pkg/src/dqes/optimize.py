"""
Derivative-free minimizer in the COBYLA family: a linear model of the cost on
a coordinate probe stencil drives normalized descent steps of trust-radius
length, and the radius halves whenever neither the step nor the stencil finds
an improvement.

Evaluation schedule, relied on by callers: evaluation 1 is theta0 itself and
evaluations 2 .. dim+1 probe theta0 with coordinate j-1 offset by +rho_init.
Every cost evaluation lands in the trace; the reported final energy is the
trace minimum, so reporting is monotone even though the walk is not.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class OptimizerConfig:
    rho_init: float = 0.5
    tol: float = 1e-6
    max_evals: int = 500
    threshold: float | None = None

    def __post_init__(self):
        if self.rho_init <= 0:
            raise ValueError(f"rho_init must be positive, got {self.rho_init}")
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_evals < 2:
            raise ValueError(f"max_evals must be at least 2, got {self.max_evals}")


@dataclass(frozen=True)
class TraceEntry:
    index: int  # 1-based evaluation number
    params: tuple[float, ...]
    energy: float


@dataclass(frozen=True)
class OptimizationTrace:
    entries: tuple[TraceEntry, ...]
    termination: str  # "converged" | "max-evals" | "threshold"

    @property
    def evaluations(self) -> int:
        return len(self.entries)

    @property
    def best_entry(self) -> TraceEntry:
        return min(self.entries, key=lambda e: e.energy)

    @property
    def final_energy(self) -> float:
        return self.best_entry.energy

    @property
    def best_params(self) -> tuple[float, ...]:
        return self.best_entry.params


class _Stop(Exception):
    def __init__(self, reason: str):
        self.reason = reason


def minimize(cost, theta0, config: OptimizerConfig | None = None) -> OptimizationTrace:
    """Minimize a scalar cost over R^dim starting from theta0.

    Stops when the trust radius shrinks below tol ("converged"), when a cost
    value reaches config.threshold ("threshold"), or when max_evals cost
    calls have been spent ("max-evals").
    """
    if config is None:
        config = OptimizerConfig()
    x = np.array(theta0, dtype=float).reshape(-1)
    dim = len(x)
    if dim == 0:
        raise ValueError("theta0 must have at least one parameter")
    if config.max_evals < dim + 2:
        raise ValueError(
            f"max_evals must be at least dim + 2 = {dim + 2}, got {config.max_evals}")
    entries: list[TraceEntry] = []

    def evaluate(point: np.ndarray) -> float:
        if len(entries) >= config.max_evals:
            raise _Stop("max-evals")
        value = float(cost(point))
        if not np.isfinite(value):
            raise ValueError(f"cost returned a non-finite value {value!r} at {point!r}")
        entries.append(TraceEntry(index=len(entries) + 1,
                                  params=tuple(float(v) for v in point),
                                  energy=value))
        if config.threshold is not None and value <= config.threshold:
            raise _Stop("threshold")
        return value

    termination = "converged"
    try:
        fx = evaluate(x)
        rho = config.rho_init
        while rho >= config.tol:
            # forward-difference stencil; the very first pass is the documented
            # probe pattern at rho_init
            stencil = np.empty(dim)
            for j in range(dim):
                probe = x.copy()
                probe[j] += rho
                stencil[j] = evaluate(probe)
            gradient = (stencil - fx) / rho
            norm = float(np.linalg.norm(gradient))
            moved = False
            if norm > 0:
                direction = -gradient / norm
                while True:
                    candidate = x + rho * direction
                    fc = evaluate(candidate)
                    if fc < fx - 1e-15 * (1 + abs(fx)):
                        x, fx = candidate, fc
                        moved = True
                    else:
                        break
            if not moved:
                j_best = int(np.argmin(stencil))
                if stencil[j_best] < fx - 1e-15 * (1 + abs(fx)):
                    best = x.copy()
                    best[j_best] += rho
                    x, fx = best, stencil[j_best]
                else:
                    rho /= 2
    except _Stop as stop:
        termination = stop.reason
    return OptimizationTrace(entries=tuple(entries), termination=termination)
