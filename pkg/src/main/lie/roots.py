from dataclasses import dataclass
from typing import List, Tuple

import networkx as nx

from src.main.errors import InvalidRank


@dataclass(frozen=True, order=True)
class Root:
    """A root of type A, stored by its coefficients over the simple roots."""
    coeffs: Tuple[int, ...]

    @classmethod
    def from_run(cls, start: int, length: int, rank: int) -> "Root":
        """The root α_start^length = α_start + ... + α_{start+length-1} (1-based)."""
        if start < 1 or length < 1 or start + length - 1 > rank:
            raise ValueError(f"No root α_{start}^{length} in rank {rank}")
        return cls(tuple(1 if start <= i < start + length else 0 for i in range(1, rank + 1)))

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coeffs) and any(self.coeffs)

    def is_valid(self) -> bool:
        """True for a consecutive run of 1s or of -1s."""
        support = [i for i, c in enumerate(self.coeffs) if c]
        if not support:
            return False
        sign = self.coeffs[support[0]]
        return (sign in (1, -1) and support == list(range(support[0], support[-1] + 1))
                and all(self.coeffs[i] == sign for i in support))

    @property
    def start(self) -> int:
        return next(i for i, c in enumerate(self.coeffs) if c) + 1

    @property
    def length(self) -> int:
        return abs(self.height)

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coeffs))

    def label(self) -> str:
        sign = "" if self.is_positive() else "-"
        return f"{sign}a{self.start}^{self.length}"

    def __str__(self) -> str:
        return self.label()


class RootSystem:
    """The root system of sl(N), positive roots ordered by height then start."""

    def __init__(self, n: int):
        if n < 2:
            raise InvalidRank(f"sl(N) needs N >= 2, got {n}")
        self._n = n
        rank = n - 1
        self._positive = [Root.from_run(j, k, rank)
                          for k in range(1, n) for j in range(1, n - k + 1)]
        self._cartan = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(rank)]
                        for i in range(rank)]

    @property
    def n(self) -> int:
        return self._n

    @property
    def rank(self) -> int:
        return self._n - 1

    @property
    def positive_roots(self) -> List[Root]:
        return list(self._positive)

    @property
    def cartan_matrix(self) -> List[List[int]]:
        return [list(row) for row in self._cartan]

    def simple_root(self, j: int) -> Root:
        return Root.from_run(j, 1, self.rank)

    def root(self, start: int, length: int) -> Root:
        return Root.from_run(start, length, self.rank)

    def is_root(self, root: Root) -> bool:
        return root.rank == self.rank and root.is_valid()

    def pairing(self, root: Root, j: int) -> int:
        """Value α(h_j) of a root on the j-th simple coroot (1-based)."""
        return sum(c * self._cartan[j - 1][i] for i, c in enumerate(root.coeffs))

    def __len__(self) -> int:
        return len(self._positive)

    def __repr__(self) -> str:
        return f"RootSystem(A{self.rank}, {len(self)} positive roots)"


def root_data(n: int) -> RootSystem:
    return RootSystem(n)


def dynkin_diagram(rs: RootSystem) -> nx.Graph:
    """Simple roots joined where the Cartan matrix has a -1."""
    g = nx.Graph()
    g.add_nodes_from(range(1, rs.rank + 1))
    cartan = rs.cartan_matrix
    for i in range(rs.rank):
        for j in range(i + 1, rs.rank):
            if cartan[i][j]:
                g.add_edge(i + 1, j + 1)
    return g


def root_poset(rs: RootSystem) -> nx.DiGraph:
    """Positive roots with an edge α -> α + α_i whenever the sum is a root."""
    g = nx.DiGraph()
    roots = set(rs.positive_roots)
    for root in rs.positive_roots:
        g.add_node(root, height=root.height)
    for root in rs.positive_roots:
        for i in range(1, rs.rank + 1):
            target = root + rs.simple_root(i)
            if target in roots:
                g.add_edge(root, target, simple=i)
    return g
