from src.main.lie.real_forms import build_involutions, sigma_constants, sigma_root_image


def main():
    """Demonstrate the split real form of sl(5) and its σ-constants."""
    forms = build_involutions(3)
    print(f"Killing signature of the σ-fixed form: {forms.signature}")

    rs = forms.algebra.root_system
    for root in rs.positive_roots:
        print(f"σ maps {root.label()} to {sigma_root_image(forms, root).label()}")

    consts = sigma_constants(forms)
    for (j, k), value in sorted(consts.table.items()):
        print(f"B_{j}^{k} = {value}")
    print(f"Killing-sum sign: {consts.killingsum_sign}")


if __name__ == "__main__":
    main()
