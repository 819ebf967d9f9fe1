"""Dense statevector simulation.

Amplitudes are stored as a complex vector of length 2**n where qubit 0 is
the most significant bit of the basis index, so |q0 q1 ... q_{n-1}> lives at
index q0*2**(n-1) + ... + q_{n-1}. Gates are applied by pairwise amplitude
updates on the state reshaped to a rank-n tensor, never by building the
2**n x 2**n unitary.

Sampling and the stochastic Pauli noise channel take explicit seeds; a
trajectory average over seeds estimates the channel output.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuit import BoundCircuit, PauliSum

_NORM_TOL = 1e-10

_SQ2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "amplitudes", amps)
        if self.n_qubits < 1:
            raise ValueError("state needs at least one qubit")
        if amps.shape[0] != 2**self.n_qubits:
            raise ValueError(
                f"amplitude vector has length {amps.shape[0]}, "
                f"expected {2 ** self.n_qubits}"
            )
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm}")

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class DensityMatrix:
    n_qubits: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        d = 2**self.n_qubits
        if m.shape != (d, d):
            raise ValueError(f"density matrix shape {m.shape}, expected {(d, d)}")
        if np.max(np.abs(m - m.conj().T)) > _NORM_TOL:
            raise ValueError("density matrix is not Hermitian")
        tr = float(np.trace(m).real)
        if abs(tr - 1.0) > _NORM_TOL:
            raise ValueError(f"density matrix trace is {tr}, expected 1")

    def eigenvalues(self) -> np.ndarray:
        """Real spectrum in ascending order."""
        return np.linalg.eigvalsh(self.matrix)

    def purity(self) -> float:
        return float(np.sum(np.abs(self.matrix) ** 2))


@dataclass(frozen=True)
class NoiseModel:
    """Stochastic Pauli insertion rates plus a readout bit-flip probability."""

    p1: float = 0.0
    p2: float = 0.0
    readout_flip_prob: float = 0.0

    def __post_init__(self) -> None:
        for name in ("p1", "p2", "readout_flip_prob"):
            v = float(getattr(self, name))
            object.__setattr__(self, name, v)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")


@dataclass(frozen=True)
class ShotCounts:
    """Measurement outcome histogram: bitstring (qubit 0 leftmost) to count."""

    counts: dict[str, int]
    shots: int

    def __post_init__(self) -> None:
        if self.shots < 1:
            raise ValueError("shots must be positive")
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts do not sum to the shot total")
        lengths = {len(k) for k in self.counts}
        if len(lengths) > 1:
            raise ValueError("bitstrings have inconsistent lengths")

    def n_qubits(self) -> int:
        return len(next(iter(self.counts)))

    def bit_matrix(self) -> np.ndarray:
        """Expand to a (shots, n) 0/1 array, bitstrings in sorted order."""
        rows = []
        for key in sorted(self.counts):
            row = np.fromiter((int(c) for c in key), dtype=np.uint8)
            rows.append(np.tile(row, (self.counts[key], 1)))
        return np.concatenate(rows, axis=0)


def _basis_state(n_qubits: int) -> np.ndarray:
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[0] = 1.0
    return amps


def _axis_slices(n: int, qubit: int):
    lo = [slice(None)] * n
    hi = [slice(None)] * n
    lo[qubit] = 0
    hi[qubit] = 1
    return tuple(lo), tuple(hi)


def _apply_gate(psi: np.ndarray, kind: str, targets: tuple[int, ...],
                angle: float | None, n: int) -> None:
    """Update the rank-n amplitude tensor in place."""
    if kind == "H":
        lo, hi = _axis_slices(n, targets[0])
        a = psi[lo].copy()
        b = psi[hi]
        psi[lo] = _SQ2 * (a + b)
        psi[hi] = _SQ2 * (a - b)
    elif kind == "X":
        lo, hi = _axis_slices(n, targets[0])
        a = psi[lo].copy()
        psi[lo] = psi[hi]
        psi[hi] = a
    elif kind == "Y":
        lo, hi = _axis_slices(n, targets[0])
        a = psi[lo].copy()
        psi[lo] = -1j * psi[hi]
        psi[hi] = 1j * a
    elif kind == "Z":
        _, hi = _axis_slices(n, targets[0])
        psi[hi] *= -1.0
    elif kind == "RX":
        lo, hi = _axis_slices(n, targets[0])
        c = math.cos(angle / 2.0)
        s = -1j * math.sin(angle / 2.0)
        a = psi[lo].copy()
        b = psi[hi]
        psi[lo] = c * a + s * b
        psi[hi] = s * a + c * b
    elif kind == "RY":
        lo, hi = _axis_slices(n, targets[0])
        c = math.cos(angle / 2.0)
        s = math.sin(angle / 2.0)
        a = psi[lo].copy()
        b = psi[hi]
        psi[lo] = c * a - s * b
        psi[hi] = s * a + c * b
    elif kind == "RZ":
        lo, hi = _axis_slices(n, targets[0])
        phase = np.exp(-0.5j * angle)
        psi[lo] *= phase
        psi[hi] *= np.conj(phase)
    elif kind == "CX":
        ctrl, tgt = targets
        sel_lo = [slice(None)] * n
        sel_lo[ctrl] = 1
        sel_hi = list(sel_lo)
        sel_lo[tgt] = 0
        sel_hi[tgt] = 1
        sel_lo, sel_hi = tuple(sel_lo), tuple(sel_hi)
        a = psi[sel_lo].copy()
        psi[sel_lo] = psi[sel_hi]
        psi[sel_hi] = a
    elif kind == "CZ":
        sel = [slice(None)] * n
        sel[targets[0]] = 1
        sel[targets[1]] = 1
        psi[tuple(sel)] *= -1.0
    else:  # pragma: no cover - descriptors validate kinds up front
        raise ValueError(f"unknown gate kind {kind!r}")


def simulate(bound: BoundCircuit, initial: StateVector | None = None) -> StateVector:
    """Run the bound circuit and return the final state.

    Starts from |0...0> unless an initial state on the same register is
    given. Norm preservation is asserted after every gate (stripped under
    python -O).
    """
    n = bound.n_qubits
    if initial is not None:
        if initial.n_qubits != n:
            raise ValueError(
                f"initial state has {initial.n_qubits} qubit(s), circuit has {n}"
            )
        amps = initial.amplitudes.astype(complex, copy=True)
    else:
        amps = _basis_state(n)
    psi = amps.reshape([2] * n)
    for g in bound.gates:
        _apply_gate(psi, g.kind, g.targets, g.angle, n)
        assert abs(float(np.vdot(psi, psi).real) - 1.0) < 1e-9, "norm drifted"
    return StateVector(n, psi.reshape(-1))


def _apply_pauli_string(amps: np.ndarray, paulis, n: int) -> np.ndarray:
    out = amps.reshape([2] * n).copy()
    for q, axis in paulis:
        _apply_gate(out, axis, (q,), None, n)
    return out.reshape(-1)


def expectation(state: StateVector, obs: PauliSum) -> float:
    """<psi|O|psi> for a Hermitian Pauli sum; always real."""
    if obs.max_qubit() >= state.n_qubits:
        raise ValueError(
            f"observable touches qubit {obs.max_qubit()}, "
            f"state has {state.n_qubits}"
        )
    total = 0.0
    for term in obs.terms:
        if term.coeff == 0.0:
            continue
        transformed = _apply_pauli_string(state.amplitudes, term.paulis, state.n_qubits)
        total += term.coeff * float(np.vdot(state.amplitudes, transformed).real)
    return total


def sample(state: StateVector, shots: int = 1024, seed=None,
           readout_flip_prob: float = 0.0) -> ShotCounts:
    """Draw measurement outcomes in the computational basis.

    Readout error, when nonzero, flips each measured bit independently
    after the ideal outcome is drawn.
    """
    if shots < 1:
        raise ValueError("shots must be positive")
    rng = np.random.default_rng(seed)
    n = state.n_qubits
    probs = state.probabilities()
    probs = probs / probs.sum()
    outcomes = rng.choice(len(probs), size=shots, p=probs)
    if readout_flip_prob > 0.0:
        flips = rng.random((shots, n)) < readout_flip_prob
        weights = 1 << np.arange(n - 1, -1, -1)
        outcomes = outcomes ^ (flips @ weights)
    counts: dict[str, int] = {}
    for v in outcomes:
        key = format(int(v), f"0{n}b")
        counts[key] = counts.get(key, 0) + 1
    return ShotCounts(counts, shots)


_PAULI_LETTERS = ("I", "X", "Y", "Z")


def simulate_noisy(bound: BoundCircuit, noise: NoiseModel, seed=None,
                   initial: StateVector | None = None) -> StateVector:
    """One stochastic Pauli trajectory of the circuit.

    After each single-qubit gate a uniformly chosen non-identity Pauli is
    inserted on its target with probability p1; after each two-qubit gate,
    with probability p2, one of the 15 non-identity two-qubit Paulis lands
    on the gate's targets. Averaging expectations over many seeds converges
    to the corresponding mixing channel.
    """
    rng = np.random.default_rng(seed)
    n = bound.n_qubits
    if initial is not None:
        if initial.n_qubits != n:
            raise ValueError(
                f"initial state has {initial.n_qubits} qubit(s), circuit has {n}"
            )
        amps = initial.amplitudes.astype(complex, copy=True)
    else:
        amps = _basis_state(n)
    psi = amps.reshape([2] * n)
    for g in bound.gates:
        _apply_gate(psi, g.kind, g.targets, g.angle, n)
        if len(g.targets) == 1:
            if noise.p1 > 0.0 and rng.random() < noise.p1:
                letter = _PAULI_LETTERS[rng.integers(1, 4)]
                _apply_gate(psi, letter, g.targets, None, n)
        else:
            if noise.p2 > 0.0 and rng.random() < noise.p2:
                pair = int(rng.integers(1, 16))
                a, b = divmod(pair, 4)
                if a:
                    _apply_gate(psi, _PAULI_LETTERS[a], (g.targets[0],), None, n)
                if b:
                    _apply_gate(psi, _PAULI_LETTERS[b], (g.targets[1],), None, n)
    return StateVector(n, psi.reshape(-1))


def reduced_density_matrix(state: StateVector, keep) -> DensityMatrix:
    """Trace out everything but ``keep`` (ascending qubit order on output)."""
    keep = tuple(sorted(int(q) for q in keep))
    if not keep:
        raise ValueError("keep must name at least one qubit")
    if len(set(keep)) != len(keep):
        raise ValueError(f"keep has repeated qubits: {keep}")
    n = state.n_qubits
    if keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"keep {keep} out of range for {n} qubit(s)")
    k = len(keep)
    tensor = state.amplitudes.reshape([2] * n)
    tensor = np.moveaxis(tensor, keep, range(k))
    m = tensor.reshape(2**k, -1)
    rho = m @ m.conj().T
    # symmetrize away the last-bit rounding so the Hermiticity check is exact
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(k, rho)


def subsystem_purity(state: StateVector, keep) -> float:
    """Tr[rho_keep^2] without materializing a validated DensityMatrix."""
    keep = tuple(sorted(int(q) for q in keep))
    n = state.n_qubits
    tensor = state.amplitudes.reshape([2] * n)
    tensor = np.moveaxis(tensor, keep, range(len(keep)))
    m = tensor.reshape(2 ** len(keep), -1)
    g = m @ m.conj().T
    return float(np.sum(np.abs(g) ** 2))
