from src.main.geometry.reductive import (compact_dxi, compact_structure, ddc_degenerate_form,
                                         j_invariant_cartan_form, sl2_product_check)


def main():
    """Demonstrate the computations on compact forms and on sl(2,R) x R^3."""
    for n in (3, 4):
        result = compact_dxi(n)
        print(f"d(i rho) on sl({n}): rank {result.report.rank}, "
              f"{result.report.classification.value}, obstructs {result.record.obstructed}")

    su3 = compact_structure(3)
    rs = su3.sl.root_system
    h = j_invariant_cartan_form(su3, rs.simple_root(1), rs.simple_root(2))
    table = ddc_degenerate_form(su3, h)
    for entry in table.entries:
        print(f"ddc omega(E_{entry['alpha']}, E_-{entry['alpha']}, E_{entry['beta']}, E_-{entry['beta']})"
              f" = {entry['value']}")

    report = sl2_product_check(3)
    print(f"sl(2,R) x R^3: {report.metric.flags()}, Kähler {report.kahler.verdict}, "
          f"obstructed {report.obstructed}")


if __name__ == "__main__":
    main()
