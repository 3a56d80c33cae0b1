"""
Left-invariant exterior forms over a complex coframe.

A Coframe is dual to a frame X_0..X_{n-1} of (1,0)-vectors together with their
conjugates σ(X_0)..σ(X_{n-1}); index j < n stands for η^j and index n + j for
conj(η^j). Forms are sparse maps from strictly increasing index tuples to
GaussRational coefficients, so unbarred indices always come first.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.main.errors import (CoframeMismatch, DegreeMismatch, NotAFrame, NotType11,
                             StructureError)
from src.main.lie.algebra import LieAlgebra
from src.main.lie.real_forms import Involution
from src.main.numeric.gaussian import GaussRational, I, ONE, Scalar, ZERO
from src.main.numeric.matrix import ExactMatrix
from src.main.numeric.subspace import Subspace
from src.main.numeric.vectors import Vector

log = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


def _merge(a: Monomial, b: Monomial) -> Optional[Tuple[int, Monomial]]:
    """Sign and sorted indices of η^a ∧ η^b, or None when they share an index."""
    if set(a) & set(b):
        return None
    swaps = sum(1 for x in a for y in b if y < x)
    return (-1 if swaps % 2 else 1), tuple(sorted(a + b))


def _sort_signed(indices: Sequence[int]) -> Optional[Tuple[int, Monomial]]:
    if len(set(indices)) != len(indices):
        return None
    swaps = sum(1 for p, q in itertools.combinations(indices, 2) if p > q)
    return (-1 if swaps % 2 else 1), tuple(sorted(indices))


class Coframe:
    """
    Coframe dual to (X_0..X_{n-1}, σX_0..σX_{n-1}).

    The frame may span a proper subalgebra of the ambient algebra; brackets of
    frame vectors must then stay inside the span.
    """

    def __init__(self, algebra: LieAlgebra, vectors: List[Vector], conjugation: Involution,
                 names: Optional[Sequence[str]] = None):
        self._algebra = algebra
        self._n = len(vectors)
        self._frame = [dict(v) for v in vectors] + [conjugation.apply(v) for v in vectors]
        self._conjugation = conjugation
        self._names = list(names) if names is not None else [str(j) for j in range(self._n)]
        if len(self._names) != self._n:
            raise ValueError(f"Need {self._n} names, got {len(self._names)}")
        self._span = Subspace(algebra.dim)
        for v in self._frame:
            if self._span.add(v) is not None:
                raise NotAFrame("Frame vectors and their conjugates are linearly dependent")
        self._constants: Dict[Tuple[int, int], Vector] = {}
        self._d_cache: Dict[int, "ExtForm"] = {}

    @classmethod
    def from_structure(cls, structure, vectors: Optional[List[Vector]] = None,
                       names: Optional[Sequence[str]] = None) -> "Coframe":
        """Coframe of a ComplexStructure, dual to its q-basis unless another frame is given."""
        vectors = structure.q_basis if vectors is None else vectors
        return cls(structure.algebra, vectors, structure.conjugation, names)

    @classmethod
    def abelian(cls, n: int) -> "Coframe":
        algebra = LieAlgebra([f"z{j}" for j in range(n)] + [f"z{j}bar" for j in range(n)], {},
                             name=f"abelian({2 * n})")
        swap = [{(k + n) % (2 * n): ONE} for k in range(2 * n)]
        sigma = Involution(algebra, swap, antilinear=True, name="conjugation")
        return cls(algebra, [{j: ONE} for j in range(n)], sigma)

    @property
    def algebra(self) -> LieAlgebra:
        return self._algebra

    @property
    def conjugation(self) -> Involution:
        return self._conjugation

    @property
    def n(self) -> int:
        return self._n

    @property
    def dim(self) -> int:
        return 2 * self._n

    @property
    def names(self) -> List[str]:
        return list(self._names)

    def frame(self) -> List[Vector]:
        return [dict(v) for v in self._frame]

    def label(self, index: int) -> str:
        if index < self._n:
            return self._names[index]
        return self._names[index - self._n] + "bar"

    def index(self, label: str) -> int:
        if label.endswith("bar"):
            return self._names.index(label[:-3]) + self._n
        return self._names.index(label)

    def conj_index(self, index: int) -> int:
        return (index + self._n) % (2 * self._n)

    def coordinates(self, x: Vector) -> Vector:
        """η-coordinates of an algebra vector lying in the span of the frame."""
        coords = self._span.express(x)
        if coords is None:
            raise NotAFrame("Vector lies outside the span of the frame")
        return coords

    def structure_constant(self, a: int, b: int) -> Vector:
        """[X_a, X_b] in frame coordinates."""
        key = (a, b)
        if key not in self._constants:
            value = self._algebra.bracket(self._frame[a], self._frame[b])
            coords = self._span.express(value)
            if coords is None:
                raise StructureError(f"Frame is not closed: [{self.label(a)}, {self.label(b)}] leaves its span")
            self._constants[key] = coords
        return self._constants[key]

    def basis(self, index: int) -> "ExtForm":
        return ExtForm(self, {(index,): ONE})

    def eta(self, j: int) -> "ExtForm":
        return self.basis(j)

    def eta_bar(self, j: int) -> "ExtForm":
        return self.basis(j + self._n)

    def d_basis(self, index: int) -> "ExtForm":
        """dη^c = -Σ_{a<b} c_ab^c η^a ∧ η^b."""
        if index not in self._d_cache:
            terms: Dict[Monomial, GaussRational] = {}
            for a in range(self.dim):
                for b in range(a + 1, self.dim):
                    c = self.structure_constant(a, b).get(index)
                    if c:
                        terms[(a, b)] = -c
            self._d_cache[index] = ExtForm(self, terms)
        return self._d_cache[index]

    def monomial(self, *labels: str, coeff: Scalar = 1) -> "ExtForm":
        """Monomial from labels such as ("1", "0bar"), reordered with its sign."""
        signed = _sort_signed([self.index(label) for label in labels])
        if signed is None:
            return ExtForm(self, {})
        sign, key = signed
        return ExtForm(self, {key: GaussRational.coerce(coeff) * sign})

    def from_table(self, table: Mapping[str, Scalar]) -> "ExtForm":
        """Form from entries like {"1 0bar": -3, "3 1bar": "-1"}."""
        result = ExtForm(self, {})
        for labels, coeff in table.items():
            result = result + self.monomial(*labels.split(), coeff=coeff)
        return result

    def __repr__(self) -> str:
        return f"Coframe({self._algebra.name}, n={self._n}, names={self._names})"


class ExtForm:
    """An immutable homogeneous exterior form over a Coframe."""

    __slots__ = ("_coframe", "_terms", "_degree")

    def __init__(self, coframe: Coframe, terms: Mapping[Monomial, Scalar]):
        self._coframe = coframe
        clean: Dict[Monomial, GaussRational] = {}
        degree = None
        for key, value in terms.items():
            value = GaussRational.coerce(value)
            if not value:
                continue
            if any(b <= a for a, b in zip(key, key[1:])) or any(not 0 <= k < coframe.dim for k in key):
                raise ValueError(f"Monomial {key} is not a strictly increasing index tuple")
            if degree is None:
                degree = len(key)
            elif len(key) != degree:
                raise DegreeMismatch(f"Mixed degrees {degree} and {len(key)} in one form")
            clean[key] = value
        self._terms = clean
        self._degree = degree or 0

    @property
    def coframe(self) -> Coframe:
        return self._coframe

    @property
    def terms(self) -> Dict[Monomial, GaussRational]:
        return dict(self._terms)

    @property
    def degree(self) -> int:
        return self._degree

    def bidegrees(self) -> List[Tuple[int, int]]:
        n = self._coframe.n
        return sorted({(sum(1 for k in key if k < n), sum(1 for k in key if k >= n))
                       for key in self._terms})

    @property
    def bidegree(self) -> Optional[Tuple[int, int]]:
        """(p, q) when the form is pure, otherwise None."""
        found = self.bidegrees()
        return found[0] if len(found) == 1 else None

    def coefficient(self, key: Monomial) -> GaussRational:
        return self._terms.get(tuple(key), ZERO)

    def _check(self, other: "ExtForm") -> None:
        if other._coframe is not self._coframe:
            raise CoframeMismatch("Forms live on different coframes")

    def __add__(self, other: "ExtForm") -> "ExtForm":
        self._check(other)
        if self and other and self._degree != other._degree:
            raise DegreeMismatch(f"Cannot add forms of degree {self._degree} and {other._degree}")
        terms = dict(self._terms)
        for key, value in other._terms.items():
            terms[key] = terms.get(key, ZERO) + value
        return ExtForm(self._coframe, terms)

    def __neg__(self) -> "ExtForm":
        return self.scale(-1)

    def __sub__(self, other: "ExtForm") -> "ExtForm":
        return self + (-other)

    def scale(self, c: Scalar) -> "ExtForm":
        c = GaussRational.coerce(c)
        return ExtForm(self._coframe, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, c: Scalar) -> "ExtForm":
        return self.scale(c)

    __rmul__ = __mul__

    def wedge(self, other: "ExtForm") -> "ExtForm":
        return wedge(self, other)

    def __xor__(self, other: "ExtForm") -> "ExtForm":
        return wedge(self, other)

    def power(self, k: int) -> "ExtForm":
        """k-fold wedge power; the 0th power is the constant 1."""
        if k < 0:
            raise ValueError(f"Negative power {k}")
        result = ExtForm(self._coframe, {(): ONE})
        for _ in range(k):
            result = wedge(result, self)
        return result

    def conj(self) -> "ExtForm":
        terms: Dict[Monomial, GaussRational] = {}
        for key, value in self._terms.items():
            sign, image = _sort_signed([self._coframe.conj_index(k) for k in key])
            terms[image] = terms.get(image, ZERO) + value.conj() * sign
        return ExtForm(self._coframe, terms)

    def is_real(self) -> bool:
        return self.conj() == self

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExtForm):
            return NotImplemented
        return self._coframe is other._coframe and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for key in sorted(self._terms):
            labels = " ".join(self._coframe.label(k) for k in key)
            parts.append(f"({self._terms[key]}) a^[{labels}]")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ExtForm(degree={self._degree}, terms={len(self._terms)})"

    def to_json(self) -> List[dict]:
        return [dict(indices=[self._coframe.label(k) for k in key], **self._terms[key].to_json())
                for key in sorted(self._terms)]


def wedge(a: ExtForm, b: ExtForm) -> ExtForm:
    """
    Raises:
        CoframeMismatch: if a and b live on different coframes
    """
    a._check(b)
    terms: Dict[Monomial, GaussRational] = {}
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            merged = _merge(ka, kb)
            if merged is None:
                continue
            sign, key = merged
            terms[key] = terms.get(key, ZERO) + va * vb * sign
    return ExtForm(a.coframe, terms)


def ce_d(form: ExtForm) -> ExtForm:
    """Chevalley-Eilenberg differential, extended from 1-forms as an antiderivation."""
    coframe = form.coframe
    terms: Dict[Monomial, GaussRational] = {}
    for key, value in form.terms.items():
        for r, index in enumerate(key):
            sign = -1 if r % 2 else 1
            for dkey, dvalue in coframe.d_basis(index).terms.items():
                signed = _sort_signed(key[:r] + dkey + key[r + 1:])
                if signed is None:
                    continue
                s, image = signed
                terms[image] = terms.get(image, ZERO) + value * dvalue * (sign * s)
    return ExtForm(coframe, terms)


def bidegree_decompose(form: ExtForm) -> Dict[Tuple[int, int], ExtForm]:
    n = form.coframe.n
    parts: Dict[Tuple[int, int], Dict[Monomial, GaussRational]] = {}
    for key, value in form.terms.items():
        p = sum(1 for k in key if k < n)
        parts.setdefault((p, len(key) - p), {})[key] = value
    return {bd: ExtForm(form.coframe, parts[bd]) for bd in sorted(parts)}


def _shifted(form: ExtForm, dp: int, dq: int) -> ExtForm:
    result = ExtForm(form.coframe, {})
    for (p, q), part in bidegree_decompose(form).items():
        pieces = bidegree_decompose(ce_d(part))
        if (p + dp, q + dq) in pieces:
            result = result + pieces[(p + dp, q + dq)]
    return result


def partial(form: ExtForm) -> ExtForm:
    return _shifted(form, 1, 0)


def partial_bar(form: ExtForm) -> ExtForm:
    return _shifted(form, 0, 1)


def dc(form: ExtForm) -> ExtForm:
    """d^c = i(∂̄ - ∂)."""
    return (partial_bar(form) - partial(form)).scale(I)


def ddc(form: ExtForm) -> ExtForm:
    return ce_d(dc(form))


@dataclass
class DolbeaultParts:
    partial: ExtForm
    partial_bar: ExtForm
    dc: ExtForm
    ddc: ExtForm
    ddbar: ExtForm

    def to_json(self) -> dict:
        return {name: getattr(self, name).to_json()
                for name in ("partial", "partial_bar", "dc", "ddc", "ddbar")}


def del_delbar(form: ExtForm) -> DolbeaultParts:
    """∂f, ∂̄f, d^c f, dd^c f and ∂∂̄f."""
    return DolbeaultParts(partial(form), partial_bar(form), dc(form), ddc(form),
                          partial(partial_bar(form)))


def structure_equations(coframe: Coframe) -> List[ExtForm]:
    """dη^0, ..., dη^{n-1}."""
    return [coframe.d_basis(j) for j in range(coframe.n)]


def equations_table(equations: Sequence[ExtForm]) -> List[dict]:
    return [{"lhs": f"d{eq.coframe.label(j)}", "terms": eq.to_json()} for j, eq in enumerate(equations)]


def match_up_to_rescaling(computed: Sequence[ExtForm], target: Sequence[ExtForm],
                          units: Optional[Sequence[Scalar]] = None,
                          magnitudes: Iterable[Scalar] = ("1",)) -> Optional[List[GaussRational]]:
    """
    Scalings s_j with X_j -> s_j X_j taking computed structure equations to target.

    Under that rescaling the coefficient c of monomial M in dη^e becomes
    c Π_{a∈M} s_a / s_e, barred indices contributing conj(s_a). Candidates for
    each s_j are unit times magnitude. Returns None when no assignment matches.
    """
    if len(computed) != len(target):
        return None
    for got, want in zip(computed, target):
        if set(got.terms) != set(want.terms):
            return None
    units = [GaussRational.coerce(u) for u in (units or (1, -1, I, -I))]
    candidates = [u * GaussRational.coerce(m) for m in magnitudes for u in units]
    n = len(computed)
    assigned: List[Optional[GaussRational]] = [None] * n

    def scale_of(index: int) -> Optional[GaussRational]:
        s = assigned[index % n]
        if s is None:
            return None
        return s if index < n else s.conj()

    def consistent() -> bool:
        for e in range(n):
            if assigned[e] is None:
                continue
            for key, c in computed[e].terms.items():
                factors = [scale_of(a) for a in key]
                if any(f is None for f in factors):
                    continue
                value = c / assigned[e]
                for f in factors:
                    value = value * f
                if value != target[e].terms[key]:
                    return False
        return True

    def search(j: int) -> bool:
        if j == n:
            return True
        for s in candidates:
            assigned[j] = s
            if consistent() and search(j + 1):
                return True
        assigned[j] = None
        return False

    return list(assigned) if search(0) else None


def evaluate(form: ExtForm, vectors: Sequence[Vector]) -> GaussRational:
    """f(X_1, ..., X_k) with (η^{i_1} ∧ ... ∧ η^{i_k})(X_1..X_k) = det[η^{i_r}(X_s)]."""
    if len(vectors) != form.degree and form:
        raise DegreeMismatch(f"Form of degree {form.degree} evaluated on {len(vectors)} vectors")
    coords = [form.coframe.coordinates(v) for v in vectors]
    total = ZERO
    for key, value in form.terms.items():
        if not key:
            total = total + value
            continue
        matrix = ExactMatrix([[c.get(i, ZERO) for c in coords] for i in key])
        total = total + value * matrix.determinant()
    return total


def apply_j(form: ExtForm) -> ExtForm:
    """(Jα)(X) = -α(JX) on 1-forms, so Jη = -iη and Jη̄ = iη̄."""
    if form and form.degree != 1:
        raise DegreeMismatch(f"J acts on 1-forms, got degree {form.degree}")
    n = form.coframe.n
    return ExtForm(form.coframe, {key: value * (-I if key[0] < n else I)
                                  for key, value in form.terms.items()})


def ddc_convention_check(coframe: Coframe, a: int) -> bool:
    """
    Check -dd^c(β ∧ Jβ) = (dβ)^2 + (dJβ)^2 for β = η^a + conj(η^a).

    Raises:
        NotType11: if dη^a is not of pure type (1,1)
    """
    d_eta = coframe.d_basis(a)
    if d_eta and d_eta.bidegree != (1, 1):
        raise NotType11(f"d of {coframe.label(a)} has bidegrees {d_eta.bidegrees()}")
    beta = coframe.eta(a) + coframe.eta_bar(a)
    j_beta = apply_j(beta)
    lhs = -ddc(wedge(beta, j_beta))
    d_beta, d_j_beta = ce_d(beta), ce_d(j_beta)
    rhs = wedge(d_beta, d_beta) + wedge(d_j_beta, d_j_beta)
    return lhs == rhs
