import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import networkx as nx

from src.main.errors import ConstructionFailure, InvalidRank, StructureError
from src.main.lie.algebra import LieAlgebra
from src.main.lie.roots import Root, root_poset
from src.main.lie.sl import ChevalleyAlgebra, build_sl
from src.main.numeric.gaussian import GaussRational, I
from src.main.numeric.matrix import ExactMatrix, hermitian_signature
from src.main.numeric.subspace import Subspace
from src.main.numeric.vectors import Vector, vec_add, vec_combine, vec_scale, vec_sub, vec_to_json

log = logging.getLogger(__name__)


class Involution:
    """
    A linear or antilinear map on a Lie algebra, stored by the images of the basis.

    Antilinear maps conjugate the coefficients of their argument before applying
    the basis images.
    """

    def __init__(self, algebra: LieAlgebra, images: List[Vector], antilinear: bool, name: str = ""):
        if len(images) != algebra.dim:
            raise ValueError(f"Need {algebra.dim} basis images, got {len(images)}")
        self._algebra = algebra
        self._images = [dict(v) for v in images]
        self._antilinear = antilinear
        self._name = name

    @property
    def algebra(self) -> LieAlgebra:
        return self._algebra

    @property
    def antilinear(self) -> bool:
        return self._antilinear

    @property
    def name(self) -> str:
        return self._name

    def image(self, i: int) -> Vector:
        return dict(self._images[i])

    def apply(self, x: Vector) -> Vector:
        terms = []
        for i, c in x.items():
            terms.append((c.conj() if self._antilinear else c, self._images[i]))
        return vec_combine(terms)

    def __call__(self, x: Vector) -> Vector:
        return self.apply(x)

    def compose(self, other: "Involution", name: str = "") -> "Involution":
        """self ∘ other."""
        if other.algebra is not self._algebra:
            raise ValueError("Cannot compose maps on different algebras")
        return Involution(self._algebra, [self.apply(other.image(i)) for i in range(self._algebra.dim)],
                          self._antilinear != other.antilinear, name=name)

    def is_involution(self) -> bool:
        return all(self.apply(self._images[i]) == {i: GaussRational(1)}
                   for i in range(self._algebra.dim))

    def is_automorphism(self) -> bool:
        """φ([x_i, x_j]) = [φx_i, φx_j] on every basis pair."""
        alg = self._algebra
        for i in range(alg.dim):
            for j in range(i + 1, alg.dim):
                lhs = self.apply(alg.bracket_basis(i, j))
                rhs = alg.bracket(self._images[i], self._images[j])
                if lhs != rhs:
                    return False
        return True

    def commutes_with(self, other: "Involution") -> bool:
        return all(self.apply(other.image(i)) == other.apply(self._images[i])
                   for i in range(self._algebra.dim))

    def __repr__(self) -> str:
        kind = "antilinear" if self._antilinear else "linear"
        return f"Involution({self._name or '?'}, {kind}, dim={self._algebra.dim})"

    def to_json(self) -> dict:
        return {"name": self._name, "antilinear": self._antilinear,
                "images": [vec_to_json(v) for v in self._images]}


@dataclass
class RealForms:
    """θ, τ and σ = τθ on sl(2m-1, C), with the Killing signature of the σ-fixed form."""
    m: int
    algebra: ChevalleyAlgebra
    theta: Involution
    tau: Involution
    sigma: Involution
    signature: Optional[Tuple[int, int, int]] = None


def _propagate_theta(alg: ChevalleyAlgebra) -> List[Vector]:
    """Extend the diagram flip to all root vectors by bracketing along the root poset."""
    rs = alg.root_system
    r = rs.rank
    images: List[Optional[Vector]] = [None] * alg.dim
    for j in range(1, r + 1):
        images[alg.h_index(j)] = alg.h(r + 1 - j)
        images[alg.root_index(rs.simple_root(j))] = alg.e(r + 1 - j)
        images[alg.root_index(-rs.simple_root(j))] = alg.f(r + 1 - j)
    poset = root_poset(rs)
    source = "simple"
    poset.add_edges_from((source, rs.simple_root(j)) for j in range(1, r + 1))
    for parent, child in nx.bfs_edges(poset, source):
        if parent == source:
            continue
        simple = child + (-parent)
        for sign in (1, -1):
            a = alg.root_index(simple if sign > 0 else -simple)
            b = alg.root_index(parent if sign > 0 else -parent)
            target = alg.root_index(child if sign > 0 else -child)
            if images[target] is not None:
                continue
            product = alg.bracket_basis(a, b)
            c = product.get(target)
            if not c:
                raise ConstructionFailure(f"Bracket does not reach root {child}")
            images[target] = vec_scale(alg.bracket(images[a], images[b]), c.inverse())
    if any(v is None for v in images):
        raise ConstructionFailure("Root poset traversal left basis vectors without an image")
    return images


def build_theta(alg: ChevalleyAlgebra) -> Involution:
    theta = Involution(alg, _propagate_theta(alg), antilinear=False, name="theta")
    if not theta.is_involution():
        raise ConstructionFailure("theta^2 != id after propagation")
    return theta


def build_tau(alg: LieAlgebra, cartan: List[int], pairs: List[Tuple[int, int]]) -> Involution:
    """Compact conjugation: τ(h) = -h on the Cartan part, τ(e_α) = -e_{-α}."""
    images: List[Vector] = [{} for _ in range(alg.dim)]
    for k in cartan:
        images[k] = {k: GaussRational(-1)}
    for a, b in pairs:
        images[a] = {b: GaussRational(-1)}
        images[b] = {a: GaussRational(-1)}
    return Involution(alg, images, antilinear=True, name="tau")


def compact_tau(alg: ChevalleyAlgebra) -> Involution:
    rs = alg.root_system
    pairs = [(alg.root_index(a), alg.root_index(-a)) for a in rs.positive_roots]
    return build_tau(alg, alg.cartan_indices(), pairs)


def build_involutions(m: int, verify: bool = True) -> RealForms:
    """
    θ, τ and σ = τθ on sl(2m-1, C).

    Raises:
        InvalidRank: if m < 2
        ConstructionFailure: if θ cannot be extended to an involution
        StructureError: if a verification fails
    """
    if m < 2:
        raise InvalidRank(f"m must be at least 2, got {m}")
    alg = build_sl(2 * m - 1)
    theta = build_theta(alg)
    tau = compact_tau(alg)
    sigma = tau.compose(theta, name="sigma")
    forms = RealForms(m, alg, theta, tau, sigma)
    if verify:
        for phi in (theta, tau, sigma):
            if not phi.is_involution():
                raise StructureError(f"{phi.name} is not an involution")
            if not phi.is_automorphism():
                raise StructureError(f"{phi.name} is not bracket-compatible")
        if not theta.commutes_with(tau):
            raise StructureError("theta and tau do not commute")
        forms.signature = killing_signature(alg, sigma)
        n = alg.n
        expected = (n * (n + 1) // 2 - 1, n * (n - 1) // 2, 0)
        if forms.signature != expected:
            raise StructureError(f"Killing signature {forms.signature} is not split, expected {expected}")
        log.info("Involutions for m=%d verified; split signature %s", m, forms.signature)
    return forms


def real_basis(alg: LieAlgebra, conjugation: Involution) -> List[Vector]:
    """A basis of the fixed-point real form built from x + σx and i(x - σx)."""
    space = Subspace(alg.dim)
    basis: List[Vector] = []
    for i in range(alg.dim):
        x = alg.basis_vector(i)
        sx = conjugation.apply(x)
        for v in (vec_add(x, sx), vec_scale(vec_sub(x, sx), I)):
            if v and space.add(v) is None:
                basis.append(v)
        if len(basis) == alg.dim:
            break
    return basis


def killing_signature(alg: LieAlgebra, conjugation: Involution) -> Tuple[int, int, int]:
    basis = real_basis(alg, conjugation)
    gram = ExactMatrix([[alg.killing(u, v) for v in basis] for u in basis])
    return hermitian_signature(gram)


@dataclass
class SigmaConstants:
    """B_j^k = B(e_{α_j^k}, σ(e_{α_{2m-k-j}^k})) for every positive root α_j^k."""
    m: int
    table: Dict[Tuple[int, int], GaussRational] = field(default_factory=dict)
    killingsum_sign: Optional[GaussRational] = None

    def __getitem__(self, key: Tuple[int, int]) -> GaussRational:
        return self.table[key]

    def partner(self, j: int, k: int) -> Tuple[int, int]:
        return 2 * self.m - k - j, k

    def gamma(self, j: int) -> GaussRational:
        """B_{γ_j} with γ_j = α_j^{2(m-j)}."""
        return self.table[(j, 2 * (self.m - j))]

    def to_json(self) -> dict:
        return {"m": self.m,
                "table": [dict(j=j, k=k, **self.table[(j, k)].to_json()) for j, k in sorted(self.table)],
                "killingsum_sign": str(self.killingsum_sign)}


def sigma_constants(forms: RealForms) -> SigmaConstants:
    """
    Tabulate the σ-constants and assert their identities.

    Raises:
        StructureError: if conjugation symmetry, reality of B_{γ_j} or the
            Killing-sum relation fails
    """
    alg, sigma, m = forms.algebra, forms.sigma, forms.m
    rs = alg.root_system
    consts = SigmaConstants(m)
    for root in rs.positive_roots:
        j, k = root.start, root.length
        partner = rs.root(2 * m - k - j, k)
        consts.table[(j, k)] = alg.killing(alg.basis_vector(alg.root_index(root)),
                                           sigma.apply(alg.basis_vector(alg.root_index(partner))))
    for (j, k), value in consts.table.items():
        if value.conj() != consts.table[consts.partner(j, k)]:
            raise StructureError(f"Conjugation symmetry fails for B_{j}^{k}")
    for j in range(1, m):
        if not consts.gamma(j).is_real():
            raise StructureError(f"B_gamma_{j} is not real")
    consts.killingsum_sign = killingsum_sign(alg, consts)
    log.info("Sigma constants for m=%d verified (Killing-sum sign %s)", m, consts.killingsum_sign)
    return consts


def killingsum_sign(alg: ChevalleyAlgebra, consts: SigmaConstants) -> GaussRational:
    """
    The constant s with B_{α+β} = s B_α B_β B(H_α, H_β) over all composable pairs,
    α ending where β starts.

    Raises:
        StructureError: if the ratio is not the same for every pair
    """
    rs = alg.root_system
    duals: Dict[Root, Vector] = {r: alg.dual_vector(r).vector for r in rs.positive_roots}
    sign: Optional[GaussRational] = None
    for alpha in rs.positive_roots:
        for beta in rs.positive_roots:
            if beta.start != alpha.start + alpha.length:
                continue
            total = (alpha.start, alpha.length + beta.length)
            product = (consts[(alpha.start, alpha.length)] * consts[(beta.start, beta.length)]
                       * alg.killing(duals[alpha], duals[beta]))
            ratio = consts[total] / product
            if sign is None:
                sign = ratio
            elif ratio != sign:
                raise StructureError(f"Killing-sum ratio varies: {sign} vs {ratio} at ({alpha}, {beta})")
    if sign is None:
        raise StructureError("No composable pairs of roots")
    return sign


def sigma_root_image(forms: RealForms, root: Root) -> Root:
    """The root space that σ(e_root) lands in."""
    alg = forms.algebra
    image = forms.sigma.apply(alg.basis_vector(alg.root_index(root)))
    (index,) = image.keys()
    return alg.root_of(index)
