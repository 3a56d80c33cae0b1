from src.main.geometry.flag_bundles import (astheno_c2, parse_weight_combo, power_report,
                                            scan_summary, semidef_scan)
from src.main.visualization.plot import visualize_scan


def main():
    """Demonstrate the SU(5)/T computations."""
    pairs = [("a1", "a1-a2"), ("a1-3a4", "a2-a3")]
    for first, second in pairs:
        beta1, beta2 = parse_weight_combo(first), parse_weight_combo(second)
        print(f"c^2 for ({beta1}, {beta2}) = {astheno_c2(beta1, beta2)}")

        records = semidef_scan(beta1, beta2, bound=10)
        summary = scan_summary(records)
        print(f"Semi-definite combinations: {summary['semidefinite_count']}, "
              f"max rank {summary['max_semidefinite_rank']} at {summary['max_semidefinite_at']}")
        print(f"Obstructed p by forms: {summary['obstructed_by_forms']}, "
              f"by powers: {summary['obstructed_by_powers']}")
        visualize_scan(records, title=f"d(A {beta1} + C {beta2})")

    print(f"(d a1-3a4)^7 is {power_report(parse_weight_combo('a1-3a4'), 7).classification.value}")
    print(f"(d a2-a3)^4 is {power_report(parse_weight_combo('a2-a3'), 4).classification.value}")


if __name__ == "__main__":
    main()
