from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from src.main.errors import DimensionMismatch, NoSolution
from src.main.numeric.gaussian import GaussRational, Scalar, ZERO, ONE


class ExactMatrix:
    """
    A dense matrix of GaussRational entries.

    Matrices are treated as immutable values: every operation returns a new matrix.
    """

    def __init__(self, rows: Sequence[Sequence[Scalar]]):
        self._rows: Tuple[Tuple[GaussRational, ...], ...] = tuple(
            tuple(GaussRational.coerce(x) for x in row) for row in rows)
        widths = {len(row) for row in self._rows}
        if len(widths) > 1:
            raise DimensionMismatch("All rows must have the same length")
        self._cols = widths.pop() if widths else 0

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence[Scalar]) -> "ExactMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, entries: Sequence[Scalar]) -> "ExactMatrix":
        return cls([[x] for x in entries])

    @property
    def rows(self) -> int:
        return len(self._rows)

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, index: Tuple[int, int]) -> GaussRational:
        i, j = index
        return self._rows[i][j]

    def row(self, i: int) -> List[GaussRational]:
        return list(self._rows[i])

    def to_lists(self) -> List[List[GaussRational]]:
        return [list(row) for row in self._rows]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([[self._rows[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def conj(self) -> "ExactMatrix":
        return ExactMatrix([[x.conj() for x in row] for row in self._rows])

    def adjoint(self) -> "ExactMatrix":
        return self.conj().transpose()

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise DimensionMismatch(f"Cannot add {self.shape} and {other.shape} matrices")
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def scale(self, c: Scalar) -> "ExactMatrix":
        c = GaussRational.coerce(c)
        return ExactMatrix([[c * x for x in row] for row in self._rows])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"Cannot multiply {self.shape} by {other.shape}")
        result = []
        for row in self._rows:
            out = []
            for j in range(other.cols):
                total = ZERO
                for k, x in enumerate(row):
                    if x:
                        y = other._rows[k][j]
                        if y:
                            total = total + x * y
                out.append(total)
            result.append(out)
        return ExactMatrix(result)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_hermitian(self) -> bool:
        return self.is_square() and self == self.adjoint()

    def row_echelon(self) -> Tuple["ExactMatrix", List[int]]:
        """
        Return the reduced row echelon form and its pivot columns.

        Pivoting is deterministic: columns are scanned left to right and the first
        nonzero entry at or below the current row (smallest row index) is used.
        """
        m = [list(row) for row in self._rows]
        pivots: List[int] = []
        r = 0
        for c in range(self.cols):
            if r >= self.rows:
                break
            pivot_row = next((i for i in range(r, self.rows) if m[i][c]), None)
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            inv = m[r][c].inverse()
            m[r] = [x * inv if x else x for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    factor = m[i][c]
                    m[i] = [x - factor * y if y else x for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return ExactMatrix(m), pivots

    def rank(self) -> int:
        return len(self.row_echelon()[1])

    def nullspace(self) -> List[List[GaussRational]]:
        """Kernel basis, itself returned in reduced echelon form."""
        rref, pivots = self.row_echelon()
        return _kernel_from_rref(rref, pivots, self.cols)

    def determinant(self) -> GaussRational:
        if not self.is_square():
            raise DimensionMismatch("Determinant needs a square matrix")
        m = [list(row) for row in self._rows]
        n = self.rows
        det = ONE
        for c in range(n):
            pivot_row = next((i for i in range(c, n) if m[i][c]), None)
            if pivot_row is None:
                return ZERO
            if pivot_row != c:
                m[c], m[pivot_row] = m[pivot_row], m[c]
                det = -det
            det = det * m[c][c]
            inv = m[c][c].inverse()
            for i in range(c + 1, n):
                if m[i][c]:
                    factor = m[i][c] * inv
                    m[i] = [x - factor * y for x, y in zip(m[i], m[c])]
        return det

    def inverse(self) -> "ExactMatrix":
        if not self.is_square():
            raise DimensionMismatch("Only square matrices can be inverted")
        solution = solve_linear(self, ExactMatrix.identity(self.rows))
        if solution.kernel:
            raise NoSolution("Matrix is singular")
        return solution.particular

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._rows)

    def __repr__(self) -> str:
        return f"ExactMatrix({self.rows}x{self.cols})"

    def to_json(self) -> List[List[dict]]:
        return [[x.to_json() for x in row] for row in self._rows]


@dataclass(frozen=True)
class LinearSolution:
    """A particular solution (one column per right-hand side) plus a kernel basis."""
    particular: ExactMatrix
    kernel: List[List[GaussRational]]

    @property
    def kernel_dimension(self) -> int:
        return len(self.kernel)


def _kernel_from_rref(rref: ExactMatrix, pivots: List[int], cols: int) -> List[List[GaussRational]]:
    free = [c for c in range(cols) if c not in pivots]
    vectors = []
    for f in free:
        v = [ZERO] * cols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -rref[i, f]
        vectors.append(v)
    if not vectors:
        return []
    reduced, _ = ExactMatrix(vectors).row_echelon()
    return [reduced.row(i) for i in range(len(vectors))]


def solve_linear(a: ExactMatrix, b: Optional[ExactMatrix] = None) -> LinearSolution:
    """
    Solve A X = B exactly.

    Args:
        a: coefficient matrix
        b: right-hand sides, one per column; None means the homogeneous system

    Raises:
        DimensionMismatch: if the row counts differ
        NoSolution: if some right-hand side is inconsistent
    """
    if b is None:
        b = ExactMatrix.zeros(a.rows, 1)
    if a.rows != b.rows:
        raise DimensionMismatch(f"A has {a.rows} rows but B has {b.rows}")
    augmented = ExactMatrix([a.row(i) + b.row(i) for i in range(a.rows)])
    rref, pivots = augmented.row_echelon()
    if any(p >= a.cols for p in pivots):
        raise NoSolution("Linear system is inconsistent")
    particular = [[ZERO] * b.cols for _ in range(a.cols)]
    for i, p in enumerate(pivots):
        for t in range(b.cols):
            particular[p][t] = rref[i, a.cols + t]
    a_rref = ExactMatrix([rref.row(i)[:a.cols] for i in range(rref.rows)])
    return LinearSolution(ExactMatrix(particular) if a.cols else ExactMatrix([]),
                          _kernel_from_rref(a_rref, pivots, a.cols))


def hermitian_signature(matrix: ExactMatrix) -> Tuple[int, int, int]:
    """
    Return (pos, neg, zero) for a conjugate-symmetric matrix by exact congruence.

    Raises:
        ValueError: if the matrix is not Hermitian
    """
    if not matrix.is_hermitian():
        raise ValueError("Signature requires a Hermitian matrix")
    n = matrix.rows
    m = matrix.to_lists()
    active = list(range(n))
    pos = neg = 0
    while active:
        k = next((i for i in active if m[i][i]), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if i != j and m[i][j]), None)
            if pair is None:
                break
            k, l = pair
            c = m[k][l].conj()
            # e_k <- e_k + c e_l makes the diagonal entry 2|m_kl|^2
            for i in range(n):
                m[i][k] = m[i][k] + c * m[i][l]
            cc = c.conj()
            m[k] = [x + cc * y for x, y in zip(m[k], m[l])]
        d = m[k][k]
        if d.re > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        for j in active:
            if m[j][k]:
                factor = m[j][k] / d
                m[j] = [x - factor * y for x, y in zip(m[j], m[k])]
                fc = factor.conj()
                for i in range(n):
                    m[i][j] = m[i][j] - fc * m[i][k]
    return pos, neg, n - pos - neg


def iter_rows(matrix: ExactMatrix) -> Iterable[List[GaussRational]]:
    for i in range(matrix.rows):
        yield matrix.row(i)
