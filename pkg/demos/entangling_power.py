"""Entangling capability: single-qubit vs block measures, and a CX sweep.

Part one runs the two-pairs circuit (independent entangled pairs on
qubits {0,1} and {2,3}). The single-qubit measure sees each wire as
entangled with its partner; the block measure at m=2 is lower because
the size-2 blocks that coincide with the pairs are exactly pure, which
is the kind of structure the block sizes are there to expose.

Part two starts from a rotation-only 5-qubit ansatz (zero entangling
power) and appends CX gates one pair at a time, tracking the mean
single-qubit entanglement of the parameter ensemble as the circuit
fills in its pairwise connections.
"""

from pathlib import Path

from pqc_lens import (
    append_pairwise_cx,
    entanglement_capability,
    paired_blocks_circuit,
    rotation_ansatz,
)
from pqc_lens import svg

OUT = Path(__file__).parent / "out" / "entangling_power"
SEED = 6


def block_structure() -> None:
    circuit = paired_blocks_circuit()
    mw = entanglement_capability(circuit, samples=1000, measure="meyer-wallach",
                                 seed=SEED)
    scott = entanglement_capability(circuit, samples=1000, measure="scott",
                                    seed=SEED)
    print("two independent entangled pairs on 4 qubits (1000 samples)")
    print(f"  single-qubit measure        Q   = {mw.q:.4f}")
    print(f"  block measure, m = 1        Q_1 = {scott.q[0]:.4f}")
    print(f"  block measure, m = 2        Q_2 = {scott.q[1]:.4f}")
    print("  m = 2 is lower: the size-2 blocks that line up with the pairs")
    print("  are exactly pure and drag the average down, even though every")
    print("  wire is entangled with its partner.")


def cx_sweep() -> None:
    base = rotation_ansatz(5)
    counts = list(range(11))
    values = []
    print("\nmean single-qubit entanglement vs appended CX pairs (5 qubits,"
          " 500 samples)")
    for count in counts:
        circuit = append_pairwise_cx(base, count)
        report = entanglement_capability(circuit, samples=500,
                                         measure="meyer-wallach", seed=SEED)
        values.append(report.q)
        print(f"  cx pairs = {count:>2}  Q = {report.q:.4f}")

    doc = svg.line_plot([("Q", counts, values)],
                        title="Entangling capability vs CX count",
                        xlabel="appended CX gates", ylabel="Q")
    (OUT / "q_vs_cx_count.svg").write_text(doc)


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    block_structure()
    cx_sweep()
    print(f"\nwrote plots to {OUT}")


if __name__ == "__main__":
    main()
