from src.main.lie.roots import RootSystem, dynkin_diagram
from src.main.lie.sl import build_sl
from src.main.visualization.plot import visualize_root_poset


def main():
    """Demonstrate root systems and the Chevalley basis."""
    # Root system of sl(4)
    rs = RootSystem(4)
    print(f"{rs}: {[r.label() for r in rs.positive_roots]}")
    print(f"Cartan matrix: {rs.cartan_matrix}")
    print(f"Dynkin diagram edges: {list(dynkin_diagram(rs).edges())}")

    # Chevalley basis and Killing form
    sl3 = build_sl(3)
    print(f"Basis of {sl3.name}: {sl3.labels}")
    print(f"[e1, e2] = {sl3.bracket(sl3.e(1), sl3.e(2))}")
    print(f"B(h1, h1) = {sl3.killing(sl3.h(1), sl3.h(1))}")

    # Highlight the highest root
    visualize_root_poset(rs, highlight=[rs.root(1, 3)], title="Positive Roots of sl(4)")


if __name__ == "__main__":
    main()
