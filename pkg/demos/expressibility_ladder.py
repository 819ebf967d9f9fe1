"""Expressibility ladder: divergence from Haar drops as circuits grow.

Two sweeps, both against the exact Haar fidelity baseline:

1. Single-qubit chains. Starting from an idle wire, each added rotation
   (H-RZ, H-RZ-RX, H-RZ-RX-RZ) lets the ensemble reach more of the Bloch
   sphere, so the fidelity histogram marches toward the Haar curve and
   the KL divergence falls by orders of magnitude.
2. Layered 5-qubit ansatz. One to four layers of RX-RZ-RX rotations with
   all-pairs CX entanglers, scored with the bounded JS divergence.

Writes fidelity-histogram and divergence-vs-depth plots to out/.
"""

from pathlib import Path

from pqc_lens import expressibility, idle_circuit, layered_ansatz, single_qubit_chain
from pqc_lens import svg

OUT = Path(__file__).parent / "out" / "expressibility_ladder"
SEED = 1


def single_qubit_sweep() -> None:
    battery = [
        ("idle", idle_circuit(1)),
        ("H-RZ", single_qubit_chain(["RZ"])),
        ("H-RZ-RX", single_qubit_chain(["RZ", "RX"])),
        ("H-RZ-RX-RZ", single_qubit_chain(["RZ", "RX", "RZ"])),
    ]
    print("single-qubit chains, KL divergence vs Haar (5000 fidelity pairs)")
    layers = []
    reports = []
    for label, circuit in battery:
        report = expressibility(circuit, samples=5000, measure="kld", seed=SEED)
        reports.append((label, report))
        print(f"  {label:<12} kld = {report.value:.4f}")

    baseline = reports[0][1].baseline
    layers.append(("Haar", baseline.bin_edges, baseline.masses, "line"))
    for label, report in reports:
        h = report.fidelity_histogram
        layers.append((label, h.bin_edges, h.masses, "bar"))
    doc = svg.histogram_plot(layers, title="Fidelity distributions vs Haar",
                             xlabel="fidelity")
    (OUT / "single_qubit_histograms.svg").write_text(doc)


def layered_sweep() -> None:
    depths = [1, 2, 3, 4]
    print("\n5-qubit layered ansatz (all-pairs CX), JS divergence vs Haar"
          " (1000 pairs)")
    values = []
    for depth in depths:
        circuit = layered_ansatz(5, depth, entangler="full")
        report = expressibility(circuit, samples=1000, measure="jsd", seed=SEED)
        values.append(report.value)
        print(f"  layers = {depth}  jsd = {report.value:.4f}")

    doc = svg.line_plot([("jsd", depths, values)],
                        title="Divergence from Haar vs circuit depth",
                        xlabel="layers", ylabel="jsd")
    (OUT / "divergence_vs_depth.svg").write_text(doc)


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    single_qubit_sweep()
    layered_sweep()
    print(f"\nwrote plots to {OUT}")


if __name__ == "__main__":
    main()
