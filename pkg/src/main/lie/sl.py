import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from src.main.errors import DegenerateKilling
from src.main.lie.algebra import BracketTable, LieAlgebra
from src.main.lie.roots import Root, RootSystem, root_data
from src.main.numeric.gaussian import GaussRational
from src.main.numeric.matrix import ExactMatrix, solve_linear
from src.main.numeric.vectors import Vector

log = logging.getLogger(__name__)

Unit = Tuple[int, int]


@dataclass(frozen=True)
class CoVector:
    """An element of the algebra tied to the algebra it lives in (e.g. H_α)."""
    algebra: "ChevalleyAlgebra"
    coeffs: Tuple[Tuple[int, GaussRational], ...]

    @property
    def vector(self) -> Vector:
        return dict(self.coeffs)


class ChevalleyAlgebra(LieAlgebra):
    """
    sl(N, C) in the basis h_1..h_{N-1}, e_α (α > 0), f_α = e_{-α}.

    h_j = E_jj - E_{j+1,j+1}, e_{α_j^k} = E_{j,j+k} and f_{α_j^k} = E_{j+k,j}; the
    matrix units only label basis vectors, the brackets are combinatorial.
    """

    def __init__(self, n: int, verify: bool = True):
        rs = root_data(n)
        self._root_system = rs
        rank = rs.rank
        labels = [f"H{j}" for j in range(1, rank + 1)]
        self._unit_index: Dict[Unit, int] = {}
        self._root_index: Dict[Root, int] = {}
        for sign, prefix in ((1, "e"), (-1, "f")):
            for root in rs.positive_roots:
                a, b = root.start, root.start + root.length
                unit = (a, b) if sign > 0 else (b, a)
                self._unit_index[unit] = len(labels)
                self._root_index[root if sign > 0 else -root] = len(labels)
                labels.append(f"{prefix}{root.start}^{root.length}")
        super().__init__(labels, self._build_table(n), name=f"sl({n},C)", verify=verify)
        log.debug("Chevalley basis of sl(%d) ready", n)

    def _coroot_of_diagonal(self, a: int, b: int) -> Vector:
        """E_aa - E_bb as a combination of the h_j."""
        if a < b:
            return {j - 1: GaussRational(1) for j in range(a, b)}
        return {j - 1: GaussRational(-1) for j in range(b, a)}

    def _build_table(self, n: int) -> BracketTable:
        table: BracketTable = {}
        units = sorted(self._unit_index)
        for j in range(1, n):
            for (a, b) in units:
                weight = ((a == j) - (a == j + 1)) - ((b == j) - (b == j + 1))
                if weight:
                    table[(j - 1, self._unit_index[(a, b)])] = {
                        self._unit_index[(a, b)]: GaussRational(weight)}
        for (a, b) in units:
            for (c, d) in units:
                i, k = self._unit_index[(a, b)], self._unit_index[(c, d)]
                if i >= k:
                    continue
                # [E_ab, E_cd] = δ_bc E_ad - δ_da E_cb
                value: Vector = {}
                if b == c and a == d:
                    value = self._coroot_of_diagonal(a, b)
                elif b == c:
                    value = {self._unit_index[(a, d)]: GaussRational(1)}
                elif d == a:
                    value = {self._unit_index[(c, b)]: GaussRational(-1)}
                if value:
                    table[(i, k)] = value
        return table

    @property
    def root_system(self) -> RootSystem:
        return self._root_system

    @property
    def n(self) -> int:
        return self._root_system.n

    @property
    def rank(self) -> int:
        return self._root_system.rank

    def h_index(self, j: int) -> int:
        return j - 1

    def cartan_indices(self) -> List[int]:
        return list(range(self.rank))

    def cartan_basis(self) -> List[Vector]:
        return [self.basis_vector(k) for k in self.cartan_indices()]

    def root_index(self, root: Root) -> int:
        """Basis index of e_root (positive) or f_{-root} (negative)."""
        try:
            return self._root_index[root]
        except KeyError:
            raise KeyError(f"Root {root} not found in sl({self.n})")

    def e(self, start: int, length: int = 1) -> Vector:
        return self.basis_vector(self.root_index(self._root_system.root(start, length)))

    def f(self, start: int, length: int = 1) -> Vector:
        return self.basis_vector(self.root_index(-self._root_system.root(start, length)))

    def h(self, j: int) -> Vector:
        return self.basis_vector(self.h_index(j))

    def root_of(self, index: int) -> Root:
        for root, i in self._root_index.items():
            if i == index:
                return root
        raise KeyError(f"Basis index {index} is not a root vector")

    def coroot(self, root: Root) -> Vector:
        """[e_α, e_{-α}] for a positive or negative root α."""
        return self.bracket(self.basis_vector(self.root_index(root)),
                            self.basis_vector(self.root_index(-root)))

    def evaluate_root(self, root: Root, h: Vector) -> GaussRational:
        """α(H) for H in the Cartan subalgebra, in coroot coordinates."""
        total = GaussRational(0)
        for k, c in h.items():
            if k >= self.rank:
                raise ValueError(f"Vector component {k} lies outside the Cartan subalgebra")
            total = total + c * self._root_system.pairing(root, k + 1)
        return total

    def cartan_killing(self) -> ExactMatrix:
        b = self.killing_form()
        r = self.rank
        return ExactMatrix([[b[i, j] for j in range(r)] for i in range(r)])

    def dual_vector(self, root: Root) -> CoVector:
        """H_α with B(H, H_α) = α(H) for every H in the Cartan subalgebra."""
        gram = self.cartan_killing()
        if gram.rank() < self.rank:
            raise DegenerateKilling("Killing form is degenerate on the Cartan subalgebra")
        rhs = ExactMatrix.column([self._root_system.pairing(root, j) for j in range(1, self.rank + 1)])
        solution = solve_linear(gram, rhs)
        coeffs = tuple((k, solution.particular[k, 0]) for k in range(self.rank)
                       if solution.particular[k, 0])
        return CoVector(self, coeffs)

    def trace_form_shortcut(self, i: int, j: int) -> Fraction:
        """2N tr(E E') on two basis matrices; used to cross-check the Killing form."""
        def matrix(index: int) -> Dict[Unit, int]:
            if index < self.rank:
                return {(index + 1, index + 1): 1, (index + 2, index + 2): -1}
            unit = next(u for u, k in self._unit_index.items() if k == index)
            return {unit: 1}
        x, y = matrix(i), matrix(j)
        trace = sum(cx * cy for (a, b), cx in x.items() for (c, d), cy in y.items()
                    if b == c and a == d)
        return Fraction(2 * self.n * trace)


def build_sl(n: int, verify: bool = True) -> ChevalleyAlgebra:
    return ChevalleyAlgebra(n, verify=verify)
