import matplotlib.pyplot as plt
import networkx as nx
from typing import Dict, List, Optional, Sequence, Tuple

from src.main.geometry.flag_bundles import ScanRecord
from src.main.lie.roots import Root, RootSystem, root_poset


def _finish(title: str, save_path: Optional[str]) -> None:
    plt.title(title, pad=20)
    plt.tight_layout()
    if save_path:
        plt.savefig(save_path)
        plt.close()
    else:
        plt.show()


def visualize_root_poset(root_system: RootSystem,
                         highlight: Optional[Sequence[Root]] = None,
                         title: str = "Positive Roots",
                         highlight_color: str = 'lightgreen',
                         node_color: str = 'lightblue',
                         node_size: int = 700,
                         figsize: tuple = (10, 8),
                         save_path: Optional[str] = None) -> nx.DiGraph:
    """
    Draw the positive root poset of sl(N), one row per height.

    Args:
        root_system: The root system to draw
        highlight: Roots to draw in the highlight color
        title: Title of the plot
        highlight_color: Color for highlighted roots
        node_color: Color for the remaining roots
        node_size: Size of the nodes
        figsize: Figure size as (width, height)
        save_path: Write the figure here instead of showing it

    Returns:
        The poset graph that was drawn
    """
    g = root_poset(root_system)
    # a root a_j^k sits above the middle of the simple roots it spans
    pos: Dict[Root, Tuple[float, float]] = {
        root: (root.start + (root.length - 1) / 2, root.height) for root in g.nodes}
    marked = set(highlight or [])

    plt.figure(figsize=figsize)
    nx.draw_networkx_edges(g, pos, edge_color='gray', arrows=True)
    nx.draw_networkx_nodes(g, pos, nodelist=[r for r in g.nodes if r not in marked],
                           node_color=node_color, node_size=node_size)
    if marked:
        nx.draw_networkx_nodes(g, pos, nodelist=[r for r in g.nodes if r in marked],
                               node_color=highlight_color, node_size=node_size)
    nx.draw_networkx_labels(g, pos, labels={r: r.label() for r in g.nodes}, font_size=9)
    plt.axis('off')
    _finish(title, save_path)
    return g


def visualize_scan(records: Sequence[ScanRecord],
                   title: str = "Semi-definiteness Scan",
                   figsize: tuple = (8, 8),
                   save_path: Optional[str] = None) -> None:
    """
    Plot the (A, C) grid of a scan: semi-definite combinations sized by rank,
    combinations with a semi-definite power in a second color.

    Args:
        records: Output of semidef_scan
        title: Title of the plot
        figsize: Figure size as (width, height)
        save_path: Write the figure here instead of showing it
    """
    if not records:
        raise ValueError("Scan has no records to plot")
    groups: Dict[str, List[ScanRecord]] = {"semi-definite": [], "semi-definite power": [], "other": []}
    for r in records:
        if r.classification.semidefinite:
            groups["semi-definite"].append(r)
        elif r.powers:
            groups["semi-definite power"].append(r)
        else:
            groups["other"].append(r)
    colors = {"semi-definite": 'red', "semi-definite power": 'orange', "other": 'lightgray'}

    plt.figure(figsize=figsize)
    for name, group in groups.items():
        if not group:
            continue
        plt.scatter([r.a for r in group], [r.c for r in group],
                    s=[20 + 10 * r.rank for r in group] if name == "semi-definite" else 20,
                    c=colors[name], label=name)
    plt.xlabel("A")
    plt.ylabel("C")
    plt.legend()
    _finish(title, save_path)
