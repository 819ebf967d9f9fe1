"""Finite shots and stochastic Pauli noise on a Bell pair.

The ideal Bell state puts mass 1/2 on 00 and 11. Sampling it with a
finite shot budget scatters the empirical distribution around that
target; the total variation distance shrinks roughly like 1/sqrt(shots).
A readout flip probability then leaks mass into 01 and 10 even though
the state itself is unchanged.

The noise section runs many stochastic Pauli trajectories per two-qubit
error rate and averages the overlap with the ideal state. Each
trajectory is a pure state; the average over seeds is what converges to
the mixed-channel fidelity, dropping from 1 as the rate grows.
"""

from pathlib import Path

import numpy as np

from pqc_lens import NoiseModel, bell_circuit, bind, sample, simulate, simulate_noisy
from pqc_lens import svg

OUT = Path(__file__).parent / "out" / "noise_and_shots"
SEED = 11
KEYS = ("00", "01", "10", "11")


def shot_convergence() -> None:
    state = simulate(bind(bell_circuit(), []))
    ideal = {"00": 0.5, "01": 0.0, "10": 0.0, "11": 0.5}
    budgets = [128, 1024, 8192]
    print("empirical Bell distribution vs shots")
    tvds = []
    for shots in budgets:
        counts = sample(state, shots=shots, seed=SEED)
        freq = {k: counts.counts.get(k, 0) / shots for k in KEYS}
        tvd = 0.5 * sum(abs(freq[k] - ideal[k]) for k in KEYS)
        tvds.append(tvd)
        row = "  ".join(f"{k}:{freq[k]:.3f}" for k in KEYS)
        print(f"  shots = {shots:>5}  {row}  tvd = {tvd:.4f}")

    flipped = sample(state, shots=8192, seed=SEED, readout_flip_prob=0.05)
    freq = {k: flipped.counts.get(k, 0) / 8192 for k in KEYS}
    row = "  ".join(f"{k}:{freq[k]:.3f}" for k in KEYS)
    print(f"  5% readout flips at 8192 shots: {row}")

    doc = svg.line_plot([("tvd", budgets, tvds)],
                        title="Sampling error vs shot budget",
                        xlabel="shots", ylabel="total variation distance")
    (OUT / "tvd_vs_shots.svg").write_text(doc)


def noisy_trajectories() -> None:
    bound = bind(bell_circuit(), [])
    ideal = simulate(bound).amplitudes
    rates = [0.0, 0.02, 0.05, 0.1, 0.2]
    trajectories = 300
    print(f"\nmean fidelity to the ideal Bell state over {trajectories}"
          " trajectories")
    fidelities = []
    for p2 in rates:
        noise = NoiseModel(p1=p2 / 2, p2=p2)
        overlaps = []
        for k in range(trajectories):
            psi = simulate_noisy(bound, noise, seed=SEED + k)
            overlaps.append(abs(np.vdot(ideal, psi.amplitudes)) ** 2)
        fidelities.append(float(np.mean(overlaps)))
        print(f"  p2 = {p2:.2f}  fidelity = {fidelities[-1]:.4f}")

    doc = svg.line_plot([("fidelity", rates, fidelities)],
                        title="Channel fidelity vs two-qubit error rate",
                        xlabel="p2", ylabel="mean fidelity")
    (OUT / "fidelity_vs_noise.svg").write_text(doc)


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    shot_convergence()
    noisy_trajectories()
    print(f"\nwrote plots to {OUT}")


if __name__ == "__main__":
    main()
