import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from src.main.errors import InvalidParameter, NotCartan, StructureError
from src.main.lie.algebra import BracketTable, LieAlgebra
from src.main.lie.real_forms import Involution, RealForms, build_involutions
from src.main.numeric.gaussian import GaussRational, I, Scalar
from src.main.numeric.subspace import Subspace, intersection, kernel
from src.main.numeric.vectors import (Vector, vec_add, vec_combine, vec_conj, vec_scale,
                                      vec_sub, vec_to_json)

log = logging.getLogger(__name__)


@dataclass
class ComplexStructure:
    """
    A complex subalgebra q of the complexified algebra with g = q ⊕ σ(q).

    `cartan`, when set, is the Cartan subalgebra the structure is measured against.
    """
    algebra: LieAlgebra
    conjugation: Involution
    q_basis: List[Vector]
    labels: List[str]
    cartan: Optional[List[Vector]] = None
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.q_basis)

    def subspace(self) -> Subspace:
        return Subspace(self.algebra.dim, self.q_basis)

    def conj_basis(self) -> List[Vector]:
        return [self.conjugation.apply(v) for v in self.q_basis]

    def vector(self, label: str) -> Vector:
        try:
            return dict(self.q_basis[self.labels.index(label)])
        except ValueError:
            raise KeyError(f"Generator {label} not found in {self.name or 'structure'}")

    def validate(self) -> None:
        """Raise StructureError unless q is a subalgebra complementary to σ(q)."""
        result = subalgebra_complement_check(self.algebra, self.q_basis, self.conjugation)
        if not (result.closed and result.complement):
            raise StructureError(f"{self.name or 'q'} fails verification: {result.witness}")

    def to_json(self) -> dict:
        return {"name": self.name, "labels": list(self.labels),
                "q_basis": [vec_to_json(v) for v in self.q_basis],
                "algebra": self.algebra.to_json()}


@dataclass
class CheckResult:
    closed: bool
    complement: bool
    witness: Dict[str, Any] = field(default_factory=dict)


@dataclass
class RegularityResult:
    ad_stable: bool
    splits: bool
    witness: Dict[str, Any] = field(default_factory=dict)


def subalgebra_complement_check(algebra: LieAlgebra, vectors: List[Vector],
                                conjugation: Involution) -> CheckResult:
    """
    Decide whether span(vectors) is closed and complementary to its conjugate.

    Dependent spanning sets are echelonized first.
    """
    space = Subspace(algebra.dim, vectors)
    basis = space.basis()
    witness: Dict[str, Any] = {}
    closed = True
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            residual = space.reduce(algebra.bracket(basis[a], basis[b]))
            if residual:
                closed = False
                witness["bracket"] = {"pair": [a, b], "residual": residual}
                break
        if not closed:
            break
    conj = [conjugation.apply(v) for v in basis]
    relations = kernel(basis + conj, algebra.dim)
    complement = not relations and 2 * len(basis) == algebra.dim
    if relations:
        rel = relations[0]
        witness["intersection"] = vec_combine((rel.get(i, 0), basis[i]) for i in range(len(basis)))
    elif not complement:
        witness["deficit"] = algebra.dim - 2 * len(basis)
    return CheckResult(closed, complement, witness)


def tilde_h(forms: RealForms) -> List[Vector]:
    """The Cartan generators H̃_1..H̃_{m-1} of the non-regular structure, on which α_{m-1} vanishes."""
    alg, m = forms.algebra, forms.m
    n = alg.n
    result = []
    for k in range(1, m):
        if k == m - 1:
            vec = vec_add(alg.h(m - 1), vec_scale(alg.h(m), 2))
        elif k == m - 2:
            vec = vec_add(vec_scale(alg.h(m - 2), 2), alg.h(m - 1))
        else:
            vec = vec_sub(alg.h(k), vec_scale(alg.h(n - k), 2))
        result.append(vec)
    return result


def e_zero(forms: RealForms) -> Vector:
    """e₀ = e_{α_{m-1}} + σ(e_{α_m})."""
    alg, m = forms.algebra, forms.m
    return vec_add(alg.e(m - 1), forms.sigma.apply(alg.e(m)))


def build_nonregular_q(m: int, forms: Optional[RealForms] = None) -> ComplexStructure:
    """
    q = span(H̃_k) ⊕ span(e_α, α ≠ α_{m-1}) ⊕ C e₀ on sl(2m-1).

    Raises:
        StructureError: if closure or complementarity fails
    """
    forms = forms or build_involutions(m)
    alg = forms.algebra
    rs = alg.root_system
    basis = tilde_h(forms)
    labels = [f"Ht{k}" for k in range(1, m)]
    skipped = rs.simple_root(m - 1)
    for root in rs.positive_roots:
        if root == skipped:
            continue
        basis.append(alg.basis_vector(alg.root_index(root)))
        labels.append(alg.labels[alg.root_index(root)])
    basis.append(e_zero(forms))
    labels.append("e0")
    structure = ComplexStructure(alg, forms.sigma, basis, labels, alg.cartan_basis(),
                                 name=f"non-regular q on sl({alg.n},R)")
    structure.validate()
    log.info("Non-regular structure for m=%d verified, dim %d", m, structure.dim)
    return structure


def build_regular_morimoto(m: int, forms: Optional[RealForms] = None) -> ComplexStructure:
    """H̃_k together with every positive root space."""
    forms = forms or build_involutions(m)
    alg = forms.algebra
    basis = tilde_h(forms)
    labels = [f"Ht{k}" for k in range(1, m)]
    for root in alg.root_system.positive_roots:
        basis.append(alg.basis_vector(alg.root_index(root)))
        labels.append(alg.labels[alg.root_index(root)])
    structure = ComplexStructure(alg, forms.sigma, basis, labels, alg.cartan_basis(),
                                 name=f"regular structure on sl({alg.n},R)")
    structure.validate()
    return structure


def skt_subframe(structure: ComplexStructure, forms: RealForms) -> Tuple[List[Vector], List[str]]:
    """The generators H̃_{m-1}, e₀, e_{α_m}, e_{γ_{m-1}} of the sl(3)-type block."""
    alg, m = forms.algebra, forms.m
    vectors = [structure.vector(f"Ht{m - 1}"), structure.vector("e0"), alg.e(m), alg.e(m - 1, 2)]
    return vectors, [f"Ht{m - 1}", "e0", f"e{m}^1", f"e{m - 1}^2"]


def _check_cartan(algebra: LieAlgebra, h: List[Vector]) -> Subspace:
    hspace = Subspace(algebra.dim, h)
    for a in range(len(h)):
        for b in range(a + 1, len(h)):
            if algebra.bracket(h[a], h[b]):
                raise NotCartan("Candidate Cartan subalgebra is not abelian")
    n = algebra.dim
    images = []
    for k in range(n):
        image: Vector = {}
        for i, hv in enumerate(h):
            for key, c in hspace.reduce(algebra.bracket(hv, {k: GaussRational(1)})).items():
                image[i * n + key] = c
        images.append(image)
    normalizer = kernel(images, n * len(h))
    if len(normalizer) != hspace.dim:
        raise NotCartan(f"Candidate Cartan subalgebra has a normalizer of dimension {len(normalizer)}")
    return hspace


def h_regularity_check(structure: ComplexStructure, h: Optional[List[Vector]] = None) -> RegularityResult:
    """
    Test ad(h)-stability of q and the splitting h = (h∩q) + σ(h∩q).

    Raises:
        NotCartan: if h is not abelian and self-normalizing
    """
    h = h if h is not None else structure.cartan
    if not h:
        raise NotCartan("No Cartan subalgebra given")
    alg = structure.algebra
    hspace = _check_cartan(alg, h)
    qspace = structure.subspace()
    witness: Dict[str, Any] = {}
    ad_stable = True
    for i, hv in enumerate(h):
        for j, w in enumerate(structure.q_basis):
            value = alg.bracket(hv, w)
            if not qspace.contains(value):
                ad_stable = False
                witness = {"h": i, "q": structure.labels[j], "bracket": value}
                break
        if not ad_stable:
            break
    meet = intersection(alg.dim, h, structure.q_basis)
    both = Subspace(alg.dim, meet + [structure.conjugation.apply(v) for v in meet])
    splits = both.dim == hspace.dim and all(both.contains(v) for v in h)
    return RegularityResult(ad_stable, splits, witness)


def sigma_normalizer(structure: ComplexStructure) -> List[Vector]:
    """
    Basis of {W ∈ q : [σW, q] ⊆ q}.

    Writing W = Σ c_i w_i, σW = Σ conj(c_i) σ(w_i) is linear in d = conj(c), so the
    condition is solved for d and conjugated back.
    """
    alg = structure.algebra
    qspace = structure.subspace()
    n = alg.dim
    images = []
    for w in structure.q_basis:
        sw = structure.conjugation.apply(w)
        image: Vector = {}
        for j, v in enumerate(structure.q_basis):
            for key, c in qspace.reduce(alg.bracket(sw, v)).items():
                image[j * n + key] = c
        images.append(image)
    result = []
    for d in kernel(images, n * structure.dim):
        coeffs = vec_conj(d)
        result.append(vec_combine((coeffs[i], structure.q_basis[i]) for i in coeffs))
    return result


def nonregularity_certificate(structure: ComplexStructure, cartan: Optional[List[Vector]] = None) -> bool:
    """True iff the σ-normalizer lies in the Cartan subalgebra and q is not ad-stable under it."""
    cartan = cartan if cartan is not None else structure.cartan
    hspace = Subspace(structure.algebra.dim, cartan)
    inside = all(hspace.contains(w) for w in sigma_normalizer(structure))
    return inside and not h_regularity_check(structure, cartan).ad_stable


_FAMILY_LABELS = ["u", "x", "y", "z", "ub", "xb", "yb", "zb"]


def build_sl3_family(lam: Scalar) -> ComplexStructure:
    """
    The family of complex structures on sl(3,R) given by brackets in u, x, y, z
    and their conjugates.

    Raises:
        InvalidParameter: if |λ|^2 >= 1
    """
    lam = GaussRational.coerce(lam)
    if lam.norm2() >= 1:
        raise InvalidParameter(f"|lambda|^2 must be < 1, got {lam.norm2()}")
    denom = GaussRational(1 - lam.norm2())
    u, x, y, z, ub, xb, yb, zb = range(8)

    def v(*terms: Tuple[Scalar, int]) -> Vector:
        return vec_combine((c, {k: GaussRational(1)}) for c, k in terms)

    one = GaussRational(1)
    listed: BracketTable = {
        (u, x): v((2 - lam, x)),
        (u, y): v((2 * lam - 1, y)),
        (u, z): v((lam + 1, z)),
        (x, y): v((one, z)),
        (u, xb): v((1 - 2 * lam, xb)),
        (u, yb): v((lam - 2, yb)),
        (u, zb): v((-(lam + 1), zb)),
        (x, yb): v((one / denom, u), (lam / denom, ub)),
        (x, zb): v((-one, xb)),
        (y, zb): v((one, yb)),
        (z, zb): v(((1 - lam.conj()) / denom, u), (-(1 - lam) / denom, ub)),
    }

    def bar(k: int) -> int:
        return (k + 4) % 8

    table: BracketTable = {}
    for (i, j), value in listed.items():
        table[(i, j)] = value
        conj_value = {bar(k): c.conj() for k, c in value.items()}
        ci, cj = bar(i), bar(j)
        key, signed = ((ci, cj), conj_value) if ci < cj else ((cj, ci), vec_scale(conj_value, -1))
        if key in table and table[key] != signed:
            raise StructureError(f"Conjugate brackets disagree at {key}")
        table.setdefault(key, signed)
    algebra = LieAlgebra(_FAMILY_LABELS, table, name=f"I_lambda (lambda={lam})")
    conj = Involution(algebra, [{bar(k): GaussRational(1)} for k in range(8)], antilinear=True,
                      name="conjugation")
    if not conj.is_automorphism():
        raise StructureError("Conjugation is not an automorphism of the family")
    structure = ComplexStructure(algebra, conj, [{k: GaussRational(1)} for k in range(4)],
                                 _FAMILY_LABELS[:4], [{u: one}, {ub: one}],
                                 name=f"I_lambda(lambda={lam})")
    structure.validate()
    return structure


@dataclass
class JOperator:
    """The complex-linear extension of the almost complex structure: i on q, -i on σ(q)."""
    structure: ComplexStructure
    images: List[Vector]

    def apply(self, x: Vector) -> Vector:
        return vec_combine((c, self.images[k]) for k, c in x.items())

    def square_is_minus_identity(self) -> bool:
        return all(self.apply(self.images[k]) == {k: GaussRational(-1)} for k in range(len(self.images)))

    def commutes_with_conjugation(self) -> bool:
        sigma = self.structure.conjugation
        return all(sigma.apply(self.images[k]) == self.apply(sigma.image(k))
                   for k in range(len(self.images)))

    def nijenhuis(self, x: Vector, y: Vector) -> Vector:
        alg = self.structure.algebra
        jx, jy = self.apply(x), self.apply(y)
        return vec_combine([(1, alg.bracket(jx, jy)),
                            (-1, self.apply(alg.bracket(jx, y))),
                            (-1, self.apply(alg.bracket(x, jy))),
                            (-1, alg.bracket(x, y))])

    def plus_i_eigenspace(self) -> List[Vector]:
        n = len(self.images)
        images = [vec_sub(self.images[k], {k: I}) for k in range(n)]
        return kernel(images, n)


def induced_J(structure: ComplexStructure) -> JOperator:
    """
    Raises:
        StructureError: if J^2 != -1 or the Nijenhuis tensor is nonzero on a basis pair
    """
    alg = structure.algebra
    frame = structure.q_basis + structure.conj_basis()
    space = Subspace(alg.dim, frame)
    n = structure.dim
    images = []
    for k in range(alg.dim):
        coords = space.express({k: GaussRational(1)})
        if coords is None:
            raise StructureError("q and its conjugate do not span the algebra")
        images.append(vec_combine(((c * I if j < n else -(c * I)), frame[j]) for j, c in coords.items()))
    j_op = JOperator(structure, images)
    if not j_op.square_is_minus_identity():
        raise StructureError("J^2 != -1")
    for a in range(alg.dim):
        for b in range(a + 1, alg.dim):
            if j_op.nijenhuis({a: GaussRational(1)}, {b: GaussRational(1)}):
                raise StructureError(f"Nijenhuis tensor does not vanish on ({a}, {b})")
    return j_op
