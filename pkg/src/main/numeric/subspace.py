from typing import Dict, Iterable, List, Optional, Tuple

from src.main.numeric.gaussian import GaussRational, ZERO
from src.main.numeric.matrix import ExactMatrix
from src.main.numeric.vectors import Vector, from_dense, to_dense, vec_combine, vec_scale


def _axpy(target: Vector, c: GaussRational, row: Vector) -> None:
    """target -= c * row, in place."""
    for k, x in row.items():
        value = target.get(k, ZERO) - c * x
        if value:
            target[k] = value
        else:
            target.pop(k, None)


class Subspace:
    """
    A subspace of a coordinate space held as sparse echelon rows.

    Every row has its smallest key as pivot and remembers, through a tag, which
    combination of the inserted vectors produced it. The tags give exact
    coordinates and linear relations without forming dense matrices.
    """

    def __init__(self, dim: int, vectors: Iterable[Vector] = ()):
        self._dim = dim
        self._rows: Dict[int, Tuple[Vector, Vector]] = {}
        self._count = 0
        for v in vectors:
            self.add(v)

    @property
    def ambient_dimension(self) -> int:
        return self._dim

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return self.dim

    def _reduce(self, vector: Vector) -> Tuple[Vector, Vector]:
        residual = dict(vector)
        used: Vector = {}
        while True:
            hits = [k for k in residual if k in self._rows]
            if not hits:
                return residual, used
            p = min(hits)
            c = residual[p]
            row, tag = self._rows[p]
            _axpy(residual, c, row)
            _axpy(used, -c, tag)

    def reduce(self, vector: Vector) -> Vector:
        """Return the residual of the vector modulo the subspace."""
        return self._reduce(vector)[0]

    def contains(self, vector: Vector) -> bool:
        return not self._reduce(vector)[0]

    def express(self, vector: Vector) -> Optional[Vector]:
        """Coordinates of the vector in terms of the inserted vectors, or None."""
        residual, used = self._reduce(vector)
        if residual:
            return None
        return used

    def add(self, vector: Vector) -> Optional[Vector]:
        """
        Insert a vector.

        Returns:
            None when the vector was independent, otherwise the linear relation
            (coefficients over inserted vectors, summing to zero) it satisfies.
        """
        index = self._count
        self._count += 1
        residual, used = self._reduce(vector)
        tag = {k: -c for k, c in used.items()}
        tag[index] = GaussRational(1)
        if not residual:
            return tag
        p = min(residual)
        inv = residual[p].inverse()
        self._rows[p] = (vec_scale(residual, inv), vec_scale(tag, inv))
        return None

    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def basis(self) -> List[Vector]:
        """Echelon basis rows, ordered by pivot."""
        return [dict(self._rows[p][0]) for p in self.pivots()]


def kernel(images: List[Vector], dim: int) -> List[Vector]:
    """
    Kernel of the linear map sending basis vector k to images[k].

    Args:
        images: image of each source basis vector, as sparse vectors
        dim: ambient dimension of the target (only used for bookkeeping)

    Returns:
        Kernel basis in reduced echelon form over the source coordinates.
    """
    space = Subspace(dim)
    relations = []
    for image in images:
        relation = space.add(image)
        if relation is not None:
            relations.append(relation)
    if not relations:
        return []
    n = len(images)
    reduced, pivots = ExactMatrix([to_dense(r, n) for r in relations]).row_echelon()
    return [from_dense(reduced.row(i)) for i in range(len(pivots))]


def intersection(dim: int, first: List[Vector], second: List[Vector]) -> List[Vector]:
    """Basis of span(first) ∩ span(second)."""
    relations = kernel(first + second, dim)
    result = Subspace(dim)
    for rel in relations:
        v = vec_combine((rel.get(i, ZERO), first[i]) for i in range(len(first)))
        if v:
            result.add(v)
    return result.basis()
