import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from src.main.errors import DegenerateKilling, DimensionMismatch, StructureError
from src.main.numeric.gaussian import GaussRational, ZERO
from src.main.numeric.matrix import ExactMatrix
from src.main.numeric.vectors import Vector, vec_add, vec_combine, vec_is_zero, vec_scale

log = logging.getLogger(__name__)

BracketTable = Dict[Tuple[int, int], Vector]


class LieAlgebra:
    """
    A finite-dimensional complex Lie algebra given by a labeled basis and exact
    structure constants.

    The bracket table stores [x_i, x_j] for i < j only; the rest follows from
    antisymmetry. Vectors are sparse dicts from basis index to GaussRational.
    """

    def __init__(self, labels: Sequence[str], brackets: BracketTable, name: str = "",
                 verify: bool = True):
        self._labels: List[str] = list(labels)
        self._dim = len(self._labels)
        self._name = name
        self._table: BracketTable = {}
        for (i, j), value in brackets.items():
            self._check_index(i)
            self._check_index(j)
            value = {k: v for k, v in value.items() if v}
            for k in value:
                self._check_index(k)
            if i == j:
                if value:
                    raise StructureError(f"[x_{i}, x_{i}] must vanish")
                continue
            key, signed = ((i, j), value) if i < j else ((j, i), vec_scale(value, -1))
            if key in self._table and self._table[key] != signed:
                raise StructureError(f"Inconsistent brackets given for pair {key}")
            if signed:
                self._table[key] = signed
        self._killing: Optional[ExactMatrix] = None
        if verify:
            failure = self.check_jacobi()
            if failure is not None:
                raise StructureError(f"Jacobi identity fails on basis triple {failure}")
            log.debug("Built %s of dimension %d with %d nonzero brackets",
                      self.name, self._dim, len(self._table))

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self._dim:
            raise DimensionMismatch(f"Basis index {i} outside algebra of dimension {self._dim}")

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def labels(self) -> List[str]:
        return list(self._labels)

    @property
    def name(self) -> str:
        return self._name or f"Lie algebra of dimension {self._dim}"

    def __len__(self) -> int:
        return self._dim

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name!r}, dim={self._dim})"

    def index(self, label: str) -> int:
        try:
            return self._labels.index(label)
        except ValueError:
            raise KeyError(f"Basis label {label} not found in algebra")

    def basis_vector(self, i: int) -> Vector:
        self._check_index(i)
        return {i: GaussRational(1)}

    def vector(self, label: str) -> Vector:
        return self.basis_vector(self.index(label))

    def bracket_basis(self, i: int, j: int) -> Vector:
        """[x_i, x_j] as a fresh sparse vector."""
        if i == j:
            return {}
        if i < j:
            return dict(self._table.get((i, j), {}))
        return vec_scale(self._table.get((j, i), {}), -1)

    def bracket(self, x: Vector, y: Vector) -> Vector:
        """Bilinear extension of the structure constants."""
        for k in list(x) + list(y):
            self._check_index(k)
        result: Vector = {}
        for i, a in x.items():
            for j, b in y.items():
                if i == j:
                    continue
                if i < j:
                    value = self._table.get((i, j))
                    coeff = a * b
                else:
                    value = self._table.get((j, i))
                    coeff = -(a * b)
                if value:
                    for k, c in value.items():
                        total = result.get(k, ZERO) + coeff * c
                        if total:
                            result[k] = total
                        else:
                            result.pop(k, None)
        return result

    def brackets(self) -> Iterator[Tuple[int, int, int, GaussRational]]:
        """Nonzero structure constants c_ij^k with i < j, in sorted order."""
        for (i, j) in sorted(self._table):
            value = self._table[(i, j)]
            for k in sorted(value):
                yield i, j, k, value[k]

    def is_abelian(self) -> bool:
        return not self._table

    def is_unimodular(self) -> bool:
        """tr(ad x_i) = 0 for every basis vector."""
        traces = [ZERO] * self._dim
        for (i, j), value in self._table.items():
            # [x_i, x_j] contributes to tr ad x_i through its x_j component and to tr ad x_j through x_i
            traces[i] = traces[i] + value.get(j, ZERO)
            traces[j] = traces[j] - value.get(i, ZERO)
        return not any(traces)

    def check_jacobi(self) -> Optional[Tuple[int, int, int]]:
        """Return the first basis triple violating Jacobi, or None."""
        n = self._dim
        for i in range(n):
            for j in range(i + 1, n):
                xy = self.bracket_basis(i, j)
                for k in range(j + 1, n):
                    yz = self.bracket_basis(j, k)
                    zx = self.bracket_basis(k, i)
                    if not (xy or yz or zx):
                        continue
                    total = vec_add(vec_add(self.bracket(xy, {k: GaussRational(1)}),
                                            self.bracket(yz, {i: GaussRational(1)})),
                                    self.bracket(zx, {j: GaussRational(1)}))
                    if not vec_is_zero(total):
                        return i, j, k
        return None

    def ad(self, x: Vector) -> ExactMatrix:
        """Matrix of ad x; column k is [x, x_k]."""
        columns = [self.bracket(x, {k: GaussRational(1)}) for k in range(self._dim)]
        return ExactMatrix([[columns[k].get(r, ZERO) for k in range(self._dim)]
                            for r in range(self._dim)])

    def _ad_maps(self) -> List[Dict[int, Vector]]:
        maps: List[Dict[int, Vector]] = [dict() for _ in range(self._dim)]
        for (i, j), value in self._table.items():
            maps[i][j] = value
            maps[j][i] = vec_scale(value, -1)
        return maps

    def killing_form(self) -> ExactMatrix:
        """B(x_i, x_j) = trace(ad x_i ∘ ad x_j), computed from the sparse table."""
        if self._killing is None:
            ad = self._ad_maps()
            n = self._dim
            rows = [[ZERO] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    total = ZERO
                    # trace = sum_k sum_l (ad_i)_{lk} (ad_j)_{kl}
                    for k, image in ad[i].items():
                        for l, c in image.items():
                            d = ad[j].get(l, {}).get(k)
                            if d:
                                total = total + c * d
                    rows[i][j] = total
                    rows[j][i] = total
            self._killing = ExactMatrix(rows)
        return self._killing

    def killing(self, x: Vector, y: Vector) -> GaussRational:
        b = self.killing_form()
        total = ZERO
        for i, a in x.items():
            for j, c in y.items():
                entry = b[i, j]
                if entry:
                    total = total + a * c * entry
        return total

    def is_semisimple(self) -> bool:
        return self.killing_form().rank() == self._dim

    def require_semisimple(self) -> None:
        if not self.is_semisimple():
            raise DegenerateKilling(f"Killing form of {self.name} is degenerate")

    def check_killing_invariance(self) -> bool:
        """B([z,x],y) + B(x,[z,y]) = 0 over all basis triples."""
        n = self._dim
        for z in range(n):
            for x in range(n):
                zx = self.bracket_basis(z, x)
                for y in range(n):
                    zy = self.bracket_basis(z, y)
                    if self.killing(zx, {y: GaussRational(1)}) + self.killing({x: GaussRational(1)}, zy):
                        return False
        return True

    def direct_sum(self, other: "LieAlgebra", name: str = "") -> "LieAlgebra":
        """Direct sum; the other algebra's basis is shifted after this one."""
        shift = self._dim
        table = dict(self._table)
        for (i, j), value in other._table.items():
            table[(i + shift, j + shift)] = {k + shift: c for k, c in value.items()}
        return LieAlgebra(self._labels + other._labels, table,
                          name=name or f"{self.name} + {other.name}", verify=False)

    @classmethod
    def abelian(cls, n: int, prefix: str = "c") -> "LieAlgebra":
        return cls([f"{prefix}{k + 1}" for k in range(n)], {}, name=f"abelian({n})")

    def to_json(self) -> dict:
        return {
            "dim": self._dim,
            "labels": self.labels,
            "brackets": [dict(i=i, j=j, k=k, **c.to_json()) for i, j, k, c in self.brackets()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LieAlgebra":
        table: BracketTable = {}
        for entry in data["brackets"]:
            key = (entry["i"], entry["j"])
            value = GaussRational(entry["re"], entry["im"])
            table[key] = vec_combine([(1, table.get(key, {})), (value, {entry["k"]: GaussRational(1)})])
        return cls(data["labels"], table)
