"""Cost locality and gradient flatness on an identity-learning task.

The task: make the circuit act as the identity on |0...0>. Two costs
vanish at the same optimum but differ away from it. The global cost
1 - p(all zeros) multiplies every qubit's survival probability together,
so each extra qubit scales the gradient signal down; the local cost
averages per-qubit excitation probabilities and keeps its slope.

The scan grids the two trainable angles over [-pi, pi] and records the
parameter-shift derivative at every node. Printed per width: the mean
absolute gradient under each cost and their ratio, which grows past 2
as fixed spectator qubits damp the global signal. Heatmaps of the two
loss surfaces at n = 4 make the flattening visible.
"""

from pathlib import Path

from pqc_lens import barren_plateau_scan, identity_learning_ansatz
from pqc_lens import svg

OUT = Path(__file__).parent / "out" / "barren_plateaus"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    print("mean |d loss / d theta_1| over a 21 x 21 grid")
    print(f"  {'qubits':<8}{'global':>10}{'local':>10}{'local/global':>14}")
    for n in (2, 3, 4, 6):
        scans = {kind: barren_plateau_scan(identity_learning_ansatz(n), kind)
                 for kind in ("global", "local")}
        g = scans["global"].mean_abs_grad
        l = scans["local"].mean_abs_grad
        print(f"  {n:<8}{g:>10.4f}{l:>10.4f}{l / g:>14.4f}")
        if n == 4:
            for kind, scan in scans.items():
                doc = svg.heatmap(scan.theta1_values, scan.theta2_values,
                                  scan.loss,
                                  title=f"{kind} cost, 4 qubits",
                                  xlabel="theta 0", ylabel="theta 1")
                (OUT / f"loss_{kind}_4q.svg").write_text(doc)

    print("\nthe global cost flattens with width; the local cost does not.")
    print(f"wrote plots to {OUT}")


if __name__ == "__main__":
    main()
