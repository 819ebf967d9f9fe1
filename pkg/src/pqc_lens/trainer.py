"""Gradient-based training of circuit costs.

Gradients come from the parameter-shift rule, applied per gate occurrence:
a rotation with angle s * theta_v contributes
(s/2) * [C(occurrence at +pi/2) - C(occurrence at -pi/2)] to component v,
where the shift moves only that one gate's angle by +-pi/2. Summing
occurrences implements the chain rule for parameters shared across gates
(QAOA reuses each gamma on every edge). For this gate set the rule is
exact, not a finite-difference approximation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .circuit import BoundCircuit, BoundGate, CircuitDescriptor, ParamRef, bind
from .simulator import expectation, simulate


class DivergenceError(RuntimeError):
    """Training produced a non-finite loss or parameter vector."""


@dataclass(frozen=True)
class OptimizerConfig:
    method: str = "adam"  # "gd" or "adam"
    learning_rate: float = 0.05
    steps: int = 100
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    init: object = "uniform"  # "uniform", "zeros", or an explicit vector
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.method not in ("gd", "adam"):
            raise ValueError(f"unknown optimizer method {self.method!r}")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.steps < 0:
            raise ValueError("steps must be non-negative")


@dataclass(frozen=True)
class TrainingTrace:
    """Per-step parameter vectors and losses, including the initial point."""

    restart_id: int
    thetas: np.ndarray  # (steps + 1, n_params)
    losses: np.ndarray  # (steps + 1,)

    def table(self) -> tuple[list[str], list[list[float]]]:
        """Header and rows for tabular serialization: step, loss, theta_i."""
        n_params = self.thetas.shape[1]
        header = ["step", "loss"] + [f"theta_{i}" for i in range(n_params)]
        rows = []
        for step in range(self.losses.shape[0]):
            rows.append([step, float(self.losses[step])] +
                        [float(v) for v in self.thetas[step]])
        return header, rows


def evaluate_cost(circuit: CircuitDescriptor, theta) -> float:
    """C(theta) = <psi(theta)| cost |psi(theta)>."""
    if circuit.cost is None:
        raise ValueError("circuit has no cost observable attached")
    return expectation(simulate(bind(circuit, theta)), circuit.cost)


def _occurrences(circuit: CircuitDescriptor):
    """(gate position, parameter index, prefactor) for every symbolic angle."""
    index = {p.name: p.index for p in circuit.parameters}
    occ = []
    for pos, g in enumerate(circuit.gates):
        if isinstance(g.angle, ParamRef):
            occ.append((pos, index[g.angle.name], g.angle.prefactor))
    return occ


def _cost_with_shift(bound: BoundCircuit, gate_pos: int, delta: float, cost) -> float:
    gates = list(bound.gates)
    g = gates[gate_pos]
    gates[gate_pos] = BoundGate(g.kind, g.targets, g.angle + delta)
    shifted = BoundCircuit(bound.n_qubits, tuple(gates))
    return expectation(simulate(shifted), cost)


def gradient(circuit: CircuitDescriptor, theta) -> np.ndarray:
    """Parameter-shift gradient of the attached cost at theta."""
    if circuit.cost is None:
        raise ValueError("circuit has no cost observable attached")
    theta = np.asarray(theta, dtype=float).reshape(-1)
    bound = bind(circuit, theta)
    grad = np.zeros(circuit.n_params)
    for pos, param_index, s in _occurrences(circuit):
        plus = _cost_with_shift(bound, pos, +math.pi / 2.0, circuit.cost)
        minus = _cost_with_shift(bound, pos, -math.pi / 2.0, circuit.cost)
        grad[param_index] += (s / 2.0) * (plus - minus)
    return grad


def _initial_theta(circuit: CircuitDescriptor, config: OptimizerConfig,
                   rng: np.random.Generator) -> np.ndarray:
    init = config.init
    if isinstance(init, str):
        if init == "uniform":
            return rng.uniform(0.0, 2.0 * math.pi, circuit.n_params)
        if init == "zeros":
            return np.zeros(circuit.n_params)
        raise ValueError(f"unknown init mode {init!r}")
    theta = np.asarray(init, dtype=float).reshape(-1)
    if theta.shape[0] != circuit.n_params:
        raise ValueError(
            f"init vector has length {theta.shape[0]}, "
            f"circuit declares {circuit.n_params}"
        )
    return theta.copy()


def _checked_cost(circuit: CircuitDescriptor, theta, step: int) -> float:
    if not np.all(np.isfinite(theta)):
        raise DivergenceError(f"parameters became non-finite at step {step}")
    loss = evaluate_cost(circuit, theta)
    if not math.isfinite(loss):
        raise DivergenceError(f"loss became non-finite at step {step}")
    return loss


def train(circuit: CircuitDescriptor, config: OptimizerConfig,
          observers=(), restart_id: int = 0) -> TrainingTrace:
    """Minimize the circuit cost with GD or Adam.

    Observers are called as observer(step, theta, loss) for the initial
    point and after every update, in step order. Non-finite losses abort
    with DivergenceError; convergence itself is not guaranteed on these
    non-convex surfaces.
    """
    rng = np.random.default_rng(config.seed)
    theta = _initial_theta(circuit, config, rng)

    thetas = np.empty((config.steps + 1, circuit.n_params))
    losses = np.empty(config.steps + 1)
    thetas[0] = theta
    losses[0] = _checked_cost(circuit, theta, 0)
    for obs in observers:
        obs(0, thetas[0].copy(), float(losses[0]))

    m = np.zeros(circuit.n_params)
    v = np.zeros(circuit.n_params)
    for step in range(1, config.steps + 1):
        g = gradient(circuit, theta)
        if config.method == "gd":
            theta = theta - config.learning_rate * g
        else:
            m = config.beta1 * m + (1.0 - config.beta1) * g
            v = config.beta2 * v + (1.0 - config.beta2) * g * g
            m_hat = m / (1.0 - config.beta1**step)
            v_hat = v / (1.0 - config.beta2**step)
            theta = theta - config.learning_rate * m_hat / (np.sqrt(v_hat) + config.epsilon)
        thetas[step] = theta
        losses[step] = _checked_cost(circuit, theta, step)
        for obs in observers:
            obs(step, thetas[step].copy(), float(losses[step]))

    return TrainingTrace(restart_id, thetas, losses)


def ensemble_train(circuit: CircuitDescriptor, config: OptimizerConfig,
                   restarts: int) -> list[TrainingTrace]:
    """Independent restarts seeded base + r so runs are reproducible."""
    if restarts < 1:
        raise ValueError("restarts must be positive")
    base = config.seed
    if base is None:
        base = int(np.random.default_rng().integers(2**31))
    traces = []
    for r in range(restarts):
        cfg = replace(config, seed=base + r)
        traces.append(train(circuit, cfg, restart_id=r))
    return traces
