import networkx as nx
import pytest

from src.main.errors import InvalidRank
from src.main.lie.roots import Root, RootSystem, dynkin_diagram, root_poset


def test_positive_roots_of_sl3():
    rs = RootSystem(3)
    assert rs.positive_roots == [rs.simple_root(1), rs.simple_root(2), rs.root(1, 2)]
    assert rs.root(1, 2) == rs.simple_root(1) + rs.simple_root(2)


def test_root_counts():
    assert len(RootSystem(5)) == 10
    assert len(RootSystem(9).positive_roots) == 36


def test_cartan_matrix():
    assert RootSystem(3).cartan_matrix == [[2, -1], [-1, 2]]
    assert RootSystem(3).cartan_matrix[0][1] == -1


def test_invalid_rank():
    with pytest.raises(InvalidRank):
        RootSystem(1)
    with pytest.raises(ValueError):
        RootSystem(3).root(2, 2)


def test_root_labels_and_heights():
    rs = RootSystem(5)
    gamma = rs.root(2, 3)
    assert gamma.label() == "a2^3"
    assert (-gamma).label() == "-a2^3"
    assert gamma.height == 3
    assert gamma.start == 2 and gamma.length == 3
    assert not Root((1, 0, 1, 0)).is_valid()


def test_pairing_with_coroots():
    rs = RootSystem(4)
    assert rs.pairing(rs.simple_root(2), 1) == -1
    assert rs.pairing(rs.simple_root(2), 2) == 2
    # the highest root pairs to 1 with the end coroots and 0 inside
    assert [rs.pairing(rs.root(1, 3), j) for j in (1, 2, 3)] == [1, 0, 1]


def test_dynkin_diagram_is_a_path():
    g = dynkin_diagram(RootSystem(6))
    assert nx.is_isomorphic(g, nx.path_graph(5))


def test_root_poset():
    rs = RootSystem(4)
    poset = root_poset(rs)
    assert poset.number_of_nodes() == 6
    assert poset.has_edge(rs.simple_root(1), rs.root(1, 2))
    assert not poset.has_edge(rs.simple_root(1), rs.root(1, 3))
    assert nx.is_directed_acyclic_graph(poset)
    # every non-simple root is reached from a simple root
    assert all(poset.in_degree(r) > 0 for r in rs.positive_roots if r.height > 1)
