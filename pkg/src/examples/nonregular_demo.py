from src.main.geometry.complex_structures import (build_nonregular_q, h_regularity_check,
                                                  nonregularity_certificate, skt_subframe)
from src.main.geometry.forms import Coframe, partial, partial_bar, structure_equations, wedge
from src.main.geometry.metrics import balanced_basis_sl2m1, obstructed_set, obstruction_scan
from src.main.lie.real_forms import build_involutions


def main():
    """Demonstrate the non-regular structure on sl(5,R)."""
    forms = build_involutions(3)
    q = build_nonregular_q(3, forms)
    print(f"q has dimension {q.dim} with generators {q.labels}")
    print(f"ad(h)-stable? {h_regularity_check(q).ad_stable}")
    print(f"Non-regular? {nonregularity_certificate(q)}")

    # Balanced metric
    frame = balanced_basis_sl2m1(3, forms)
    corrections = {k: str(v) for k, v in sorted(frame.corrections.items())}
    print(f"Balanced frame corrections: {corrections}")
    print(f"Residual: {frame.residual()}")

    # The sl(3) block and its structure equations
    vectors, labels = skt_subframe(q, forms)
    block = Coframe(forms.algebra, vectors, forms.sigma, names=["0", "1", "2", "3"])
    for label, eq in zip(labels, structure_equations(block)):
        print(f"d eta[{label}] = {eq}")

    # ∂∂̄ of i η^1 ∧ conj(η^1) and the pluriclosed obstructions
    print(f"ddbar(eta^11) = {partial(partial_bar(wedge(block.eta(1), block.eta_bar(1))))}")
    records = obstruction_scan(block, candidates=[])
    print(f"Obstructed p: {obstructed_set(records)}")


if __name__ == "__main__":
    main()
