"""Ready-made circuit templates, cost observables, and small graph helpers.

Everything here is a plain CircuitDescriptor builder; nothing is special to
the analyzers. Parameter names follow the theta_{i} convention so tabular
output stays aligned with parameter indices.
"""
from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from .circuit import (
    CircuitDescriptor,
    Gate,
    ParamRef,
    PauliSum,
    make_circuit,
)

ENTANGLER_STYLES = ("chain", "full", "none")


def _rotation_block(qubit: int, names: list[str], gates: list[Gate]) -> None:
    for kind in ("RX", "RZ", "RX"):
        name = f"theta_{len(names)}"
        names.append(name)
        gates.append(Gate(kind, (qubit,), ParamRef(name)))


def layered_ansatz(n_qubits: int, layers: int,
                   entangler: str = "chain") -> CircuitDescriptor:
    """L layers of per-qubit RX,RZ,RX rotations plus an entangling block.

    entangler selects the block: "chain" couples neighbours with
    CX(i, i+1), "full" couples every pair CX(i, j) with i < j, "none"
    leaves the layer as bare rotations. Every rotation gets its own fresh
    parameter, 3 * n_qubits * layers in total.
    """
    if entangler not in ENTANGLER_STYLES:
        raise ValueError(f"entangler must be one of {ENTANGLER_STYLES}")
    if layers < 1:
        raise ValueError("layers must be positive")
    names: list[str] = []
    gates: list[Gate] = []
    for _ in range(layers):
        for q in range(n_qubits):
            _rotation_block(q, names, gates)
        if entangler == "chain":
            for q in range(n_qubits - 1):
                gates.append(Gate("CX", (q, q + 1)))
        elif entangler == "full":
            for i, j in combinations(range(n_qubits), 2):
                gates.append(Gate("CX", (i, j)))
    return make_circuit(n_qubits, gates, names)


def rotation_ansatz(n_qubits: int) -> CircuitDescriptor:
    """Single layer of RX,RZ,RX per qubit with no entanglers at all."""
    return layered_ansatz(n_qubits, 1, entangler="none")


def append_pairwise_cx(circuit: CircuitDescriptor, count: int) -> CircuitDescriptor:
    """Append the first `count` CX(i, j) gates, pairs ordered i < j.

    The pair sequence for n qubits is (0,1), (0,2), ..., (n-2,n-1); count
    may run up to n*(n-1)/2.
    """
    pairs = list(combinations(range(circuit.n_qubits), 2))
    if not 0 <= count <= len(pairs):
        raise ValueError(
            f"count must be in [0, {len(pairs)}] for {circuit.n_qubits} qubits"
        )
    gates = list(circuit.gates) + [Gate("CX", pair) for pair in pairs[:count]]
    return make_circuit(circuit.n_qubits, gates,
                        [p.name for p in circuit.parameters], circuit.cost)


def idle_circuit(n_qubits: int = 1) -> CircuitDescriptor:
    """No gates, no parameters; always prepares |0...0>."""
    return make_circuit(n_qubits, [], [])


def single_qubit_chain(rotations) -> CircuitDescriptor:
    """H followed by the given rotation kinds, one fresh parameter each.

    single_qubit_chain(["RZ", "RX"]) builds H, RZ(theta_0), RX(theta_1).
    """
    names: list[str] = []
    gates: list[Gate] = [Gate("H", (0,))]
    for kind in rotations:
        if kind not in ("RX", "RY", "RZ"):
            raise ValueError(f"rotation kind {kind!r} not supported here")
        name = f"theta_{len(names)}"
        names.append(name)
        gates.append(Gate(kind, (0,), ParamRef(name)))
    return make_circuit(1, gates, names)


def bell_circuit() -> CircuitDescriptor:
    """H(0), CX(0,1): parameter-free maximally entangled pair."""
    return make_circuit(2, [Gate("H", (0,)), Gate("CX", (0, 1))], [])


def paired_blocks_circuit() -> CircuitDescriptor:
    """Two independent entangled pairs on 4 qubits.

    RX, RZ on qubits 0 and 2, then CX(0,1) and CX(2,3), so qubits {0,1}
    and {2,3} each form their own block with no correlation across blocks.
    """
    gates = [
        Gate("RX", (0,), ParamRef("theta_0")),
        Gate("RZ", (0,), ParamRef("theta_1")),
        Gate("RX", (2,), ParamRef("theta_2")),
        Gate("RZ", (2,), ParamRef("theta_3")),
        Gate("CX", (0, 1)),
        Gate("CX", (2, 3)),
    ]
    return make_circuit(4, gates, [f"theta_{i}" for i in range(4)])


def identity_learning_ansatz(n_qubits: int = 2) -> CircuitDescriptor:
    """Two-parameter ansatz whose target is to do nothing to |0...0>.

    RX(theta_0) on qubit 0, RX(theta_1) on qubit 1, then a CZ chain.
    With n_qubits=2 this is exactly RX(0), RX(1), CZ(0,1). Larger n adds
    qubits carrying a fixed RX(pi/2), the halfway angle, so each one
    damps the all-zeros overlap by its average factor of 1/2 while the
    parameter count stays 2. That keeps a (theta_0, theta_1) grid scan
    meaningful and lets the global cost flatten with width where the
    local cost does not.
    """
    if n_qubits < 2:
        raise ValueError("need at least 2 qubits")
    gates = [Gate("RX", (0,), ParamRef("theta_0")),
             Gate("RX", (1,), ParamRef("theta_1"))]
    for q in range(2, n_qubits):
        gates.append(Gate("RX", (q,), math.pi / 2))
    for q in range(n_qubits - 1):
        gates.append(Gate("CZ", (q, q + 1)))
    return make_circuit(n_qubits, gates, ["theta_0", "theta_1"])


def all_zeros_infidelity_cost(n_qubits: int) -> PauliSum:
    """1 - p(every qubit reads 0): the projector onto |0...0> expanded
    into 2^n Pauli-Z terms, subtracted from the identity."""
    if n_qubits < 1:
        raise ValueError("need at least 1 qubit")
    scale = 1.0 / 2**n_qubits
    terms = [(1.0 - scale, {})]
    for size in range(1, n_qubits + 1):
        for subset in combinations(range(n_qubits), size):
            terms.append((-scale, {q: "Z" for q in subset}))
    return PauliSum.from_terms(terms)


def mean_excitation_cost(n_qubits: int) -> PauliSum:
    """1 - mean over qubits of p(qubit reads 0), i.e. the average
    excitation probability: 1/2 - (1/2n) sum_j Z_j."""
    if n_qubits < 1:
        raise ValueError("need at least 1 qubit")
    terms = [(0.5, {})]
    terms += [(-0.5 / n_qubits, {q: "Z"}) for q in range(n_qubits)]
    return PauliSum.from_terms(terms)


def random_gnm_edges(n_nodes: int, n_edges: int, seed=None) -> tuple:
    """Uniform simple graph with exactly n_edges edges."""
    pairs = list(combinations(range(n_nodes), 2))
    if not 1 <= n_edges <= len(pairs):
        raise ValueError(
            f"n_edges must be in [1, {len(pairs)}] for {n_nodes} nodes"
        )
    rng = np.random.default_rng(seed)
    chosen = rng.choice(len(pairs), size=n_edges, replace=False)
    return tuple(pairs[i] for i in sorted(chosen))


def cut_size(edges, bits) -> int:
    """Edges crossing the partition encoded by 0/1 node labels."""
    bits = np.asarray(bits)
    return int(sum(1 for u, v in edges if bits[u] != bits[v]))


def max_cut_size(edges, n_nodes: int) -> int:
    """Brute-force MaxCut value; fine for the desk-scale graphs here."""
    if n_nodes > 20:
        raise ValueError("brute force capped at 20 nodes")
    best = 0
    for assignment in range(2**n_nodes):
        bits = [(assignment >> (n_nodes - 1 - q)) & 1 for q in range(n_nodes)]
        best = max(best, cut_size(edges, bits))
    return best


def mean_cut_scorer(edges):
    """Scoring rule for sampled bitstring ensembles: mean cut size.

    Returns a callable taking a (shots, n_qubits) 0/1 matrix, as produced
    by ShotCounts.bit_matrix, and averaging the cut over rows.
    """
    edge_list = tuple(edges)

    def score(bit_matrix) -> float:
        bits = np.asarray(bit_matrix)
        if bits.ndim != 2:
            raise ValueError("expected a (shots, n_qubits) matrix")
        crossings = np.zeros(bits.shape[0])
        for u, v in edge_list:
            crossings += bits[:, u] != bits[:, v]
        return float(crossings.mean())

    return score
