import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Union

from src.main.errors import InvalidParameter, NotRegularStructure
from src.main.geometry.complex_structures import ComplexStructure, h_regularity_check
from src.main.geometry.forms import Coframe, ExtForm, ce_d, ddc, evaluate
from src.main.geometry.metrics import (HermMetric, KahlerFeasibility, MetricReport, ObstructionRecord,
                                       diagonal_decomposition, kahler_feasibility, metric_report,
                                       obstructed_range, obstructed_set, obstruction_scan)
from src.main.geometry.positivity import Definiteness, Form11Report, herm_rep
from src.main.lie.algebra import LieAlgebra
from src.main.lie.real_forms import Involution, build_tau
from src.main.lie.roots import Root
from src.main.lie.sl import ChevalleyAlgebra, build_sl
from src.main.numeric.gaussian import GaussRational, I, ONE, Scalar, ZERO
from src.main.numeric.subspace import Subspace
from src.main.numeric.vectors import Vector, vec_add, vec_scale

log = logging.getLogger(__name__)

DEFAULT_LAMBDA = GaussRational(-1, 1)


@dataclass
class CompactForm:
    """The τ-fixed form of sl(N,C) ⊕ C^center with a regular complex structure."""
    sl: ChevalleyAlgebra
    center: int
    structure: ComplexStructure
    pairs: List[Vector]

    @property
    def algebra(self) -> LieAlgebra:
        return self.structure.algebra

    def cartan(self) -> List[Vector]:
        return [{k: ONE} for k in self.cartan_indices()]

    def cartan_indices(self) -> List[int]:
        return self.sl.cartan_indices() + [self.sl.dim + c for c in range(self.center)]

    def root_frame_index(self, root: Root) -> int:
        """Position of e_root (root > 0) in the q-basis."""
        return self.structure.labels.index(self.sl.labels[self.sl.root_index(root)])


def compact_structure(n: int, center: Optional[int] = None, lam: Scalar = DEFAULT_LAMBDA) -> CompactForm:
    """
    q = span{w_k = H_{2k-1} + λ H_{2k}} ⊕ positive root spaces over the Cartan
    directions of sl(n) followed by the center.

    Raises:
        InvalidParameter: if λ is real or the Cartan dimension is odd
    """
    lam = GaussRational.coerce(lam)
    if lam.is_real():
        raise InvalidParameter(f"lambda must have nonzero imaginary part, got {lam}")
    sl = build_sl(n)
    center = (n - 1) % 2 if center is None else center
    if (sl.rank + center) % 2:
        raise InvalidParameter(f"Cartan dimension {sl.rank + center} must be even")
    algebra: LieAlgebra = sl
    if center:
        algebra = sl.direct_sum(LieAlgebra.abelian(center), name=f"sl({n},C) + C^{center}")
    cartan = sl.cartan_indices() + [sl.dim + c for c in range(center)]
    pairs = [(sl.root_index(a), sl.root_index(-a)) for a in sl.root_system.positive_roots]
    tau = build_tau(algebra, cartan, pairs)
    ws = [{cartan[2 * k]: ONE, cartan[2 * k + 1]: lam} for k in range(len(cartan) // 2)]
    basis = list(ws)
    labels = [f"w{k + 1}" for k in range(len(ws))]
    for root in sl.root_system.positive_roots:
        index = sl.root_index(root)
        basis.append({index: ONE})
        labels.append(sl.labels[index])
    structure = ComplexStructure(algebra, tau, basis, labels, [{k: ONE} for k in cartan],
                                 name=f"regular structure on the compact form of {algebra.name}")
    structure.validate()
    return CompactForm(sl, center, structure, ws)


@dataclass
class CompactDxi:
    weight: List[GaussRational]
    form: ExtForm
    report: Form11Report
    formula_holds: bool
    record: Optional[ObstructionRecord]

    def to_json(self) -> dict:
        return {"weight": [str(w) for w in self.weight], "form": self.form.to_json(),
                "report": self.report.to_json(), "formula_holds": self.formula_holds,
                "record": None if self.record is None else self.record.to_json()}


def weight_values(sl: ChevalleyAlgebra, weight: Union[str, Sequence[Scalar]]) -> List[GaussRational]:
    """ξ(h_k) for ξ = "rho", "highest" (the highest root) or explicit values."""
    if weight == "rho":
        return [ONE] * sl.rank
    if weight == "highest":
        top = sl.root_system.root(1, sl.rank)
        return [GaussRational(sl.root_system.pairing(top, k)) for k in range(1, sl.rank + 1)]
    values = [GaussRational.coerce(v) for v in weight]
    if len(values) != sl.rank:
        raise InvalidParameter(f"Need {sl.rank} weight values, got {len(values)}")
    return values


def compact_dxi(n: int, weight: Union[str, Sequence[Scalar]] = "rho", center: Optional[int] = None,
                compact: Optional[CompactForm] = None) -> CompactDxi:
    """
    d(iξ) for ξ ∈ h* vanishing on root spaces, checked against
    i Σ_{β>0} ξ(H_β) η^β ∧ conj(η^β) with H_β = [E_β, E_{-β}].
    """
    compact = compact or compact_structure(n, center)
    sl = compact.sl
    values = weight_values(sl, weight)
    coframe = Coframe.from_structure(compact.structure, names=compact.structure.labels)

    def xi(x: Vector) -> GaussRational:
        return sum((c * values[k] for k, c in x.items() if k < sl.rank), ZERO)

    one_form = ExtForm(coframe, {(a,): xi(v) for a, v in enumerate(coframe.frame())})
    form = ce_d(one_form.scale(I))
    expected = ExtForm(coframe, {})
    for root in sl.root_system.positive_roots:
        a = compact.root_frame_index(root)
        value = xi(sl.coroot(root))
        expected = expected + ExtForm(coframe, {(a, a + coframe.n): value * I})
    report = herm_rep(form)
    record = None
    if report.classification.semidefinite:
        record = ObstructionRecord(f"xi={[str(v) for v in values]}", form, "exact",
                                   report.classification, report.rank,
                                   obstructed_range(coframe.n, report.rank))
    log.info("d(i xi) on %s has rank %d", compact.algebra.name, report.rank)
    return CompactDxi(values, form, report, form == expected, record)


def j_invariant_cartan_form(compact: CompactForm, alpha: Root, beta: Root,
                            pair: int = 0) -> Dict[tuple, GaussRational]:
    """
    Symmetric J-invariant h on the Cartan directions supported on one pair (w, τw),
    scaled so that h(H_α, H_β) = 1, and zero on every other Cartan direction.

    Returns h as a table over Cartan basis indices.
    """
    structure = compact.structure
    tau = structure.conjugation
    indices = compact.cartan_indices()
    basis = [dict(v) for v in compact.pairs] + [tau.apply(v) for v in compact.pairs]
    space = Subspace(structure.algebra.dim, basis)
    p = len(compact.pairs)

    def raw(x: Vector, y: Vector) -> GaussRational:
        cx, cy = space.express(x), space.express(y)
        return cx.get(pair, ZERO) * cy.get(pair + p, ZERO) + cx.get(pair + p, ZERO) * cy.get(pair, ZERO)

    scale = raw(compact.sl.coroot(alpha), compact.sl.coroot(beta))
    if not scale:
        raise InvalidParameter(f"h vanishes on (H_{alpha}, H_{beta}) for pair {pair}")
    return {(a, b): raw({a: ONE}, {b: ONE}) / scale for a in indices for b in indices
            if raw({a: ONE}, {b: ONE})}


def _h_value(h: Dict[tuple, GaussRational], x: Vector, y: Vector) -> GaussRational:
    total = ZERO
    for (a, b), value in h.items():
        total = total + x.get(a, ZERO) * y.get(b, ZERO) * value
    return total


def _fundamental_form(compact: CompactForm, coframe: Coframe, h: Dict[tuple, GaussRational]) -> ExtForm:
    """ω(X, Y) = h(JX, Y) with J = i on q and -i on τ(q)."""
    n = coframe.n
    frame = coframe.frame()
    terms = {}
    for a in range(2 * n):
        for b in range(a + 1, 2 * n):
            jx = vec_scale(frame[a], I if a < n else -I)
            value = _h_value(h, jx, frame[b])
            if value:
                terms[(a, b)] = value
    return ExtForm(coframe, terms)


@dataclass
class DdcTable:
    entries: List[dict]
    other_components_vanish: bool
    all_match: bool
    form: ExtForm
    record: Optional[ObstructionRecord] = None

    def value(self, alpha: Root, beta: Root) -> GaussRational:
        for entry in self.entries:
            if entry["alpha"] == alpha and entry["beta"] == beta:
                return entry["value"]
        raise KeyError(f"No entry for ({alpha}, {beta})")

    def to_json(self) -> dict:
        return {"entries": [{"alpha": e["alpha"].label(), "beta": e["beta"].label(),
                             "value": str(e["value"]), "expected": str(e["expected"])}
                            for e in self.entries],
                "other_components_vanish": self.other_components_vanish, "all_match": self.all_match,
                "form": self.form.to_json(),
                "record": None if self.record is None else self.record.to_json()}


def ddc_degenerate_form(compact: CompactForm, h: Dict[tuple, GaussRational]) -> DdcTable:
    """
    Tabulate dd^c ω(E_α, E_{-α}, E_β, E_{-β}) for positive α != β against
    -2 h(H_α, H_β), where ω(X, Y) = h(JX, Y) and h vanishes on root vectors.

    Raises:
        NotRegularStructure: if q is not regular with respect to its Cartan subalgebra
    """
    structure = compact.structure
    regularity = h_regularity_check(structure, compact.cartan())
    if not (regularity.ad_stable and regularity.splits):
        raise NotRegularStructure("Structure is not regular with respect to its Cartan subalgebra")
    sl = compact.sl
    coframe = Coframe.from_structure(structure, names=structure.labels)
    form = ddc(_fundamental_form(compact, coframe, h))
    n = coframe.n
    roots = sl.root_system.positive_roots
    root_slots = {compact.root_frame_index(r) for r in roots}
    entries = []
    for alpha in roots:
        for beta in roots:
            if alpha == beta:
                continue
            vectors = [sl.e(alpha.start, alpha.length), sl.f(alpha.start, alpha.length),
                       sl.e(beta.start, beta.length), sl.f(beta.start, beta.length)]
            value = evaluate(form, vectors)
            expected = _h_value(h, sl.coroot(alpha), sl.coroot(beta)) * -2
            entries.append({"alpha": alpha, "beta": beta, "value": value, "expected": expected})
    other_vanish = True
    for key in form.terms:
        unbarred = {k for k in key if k < n}
        barred = {k - n for k in key if k >= n}
        if unbarred != barred or len(unbarred) != 2 or not unbarred <= root_slots:
            other_vanish = False
    table = DdcTable(entries, other_vanish, all(e["value"] == e["expected"] for e in entries), form)
    decomposition = diagonal_decomposition(form) if form else None
    if decomposition:
        signs = {c.re > 0 for c in decomposition.values()}
        if len(signs) == 1:
            kind = Definiteness.POSITIVE_SEMIDEF
            record_form = form if signs == {True} else -form
            table.record = ObstructionRecord("ddc(omega_h)", record_form, "ddc", kind,
                                             len(decomposition), [n - 2])
    return table


def sl2_product_structure(n: int) -> ComplexStructure:
    """
    sl(2,R) ⊕ R^{2n-3} with q = span{Z, k + i c_1, c_2 + i c_3, ...}, where
    k = e - f is the compact Cartan and Z = H + i(e + f).
    """
    if n < 2:
        raise InvalidParameter(f"n must be at least 2, got {n}")
    sl = build_sl(2)
    algebra = sl.direct_sum(LieAlgebra.abelian(2 * n - 3), name=f"sl(2,C) + C^{2 * n - 3}")
    sigma = Involution(algebra, [{k: ONE} for k in range(algebra.dim)], antilinear=True,
                       name="real conjugation")
    h, e, f = sl.h(1), sl.e(1), sl.f(1)
    k = vec_add(e, vec_scale(f, -1))
    z = vec_add(h, vec_scale(vec_add(e, f), I))
    c = [{sl.dim + j: ONE} for j in range(2 * n - 3)]
    basis = [z, vec_add(k, vec_scale(c[0], I))]
    labels = ["Z", "k+ic1"]
    for j in range(1, 2 * n - 3, 2):
        basis.append(vec_add(c[j], vec_scale(c[j + 1], I)))
        labels.append(f"c{j + 1}+ic{j + 2}")
    structure = ComplexStructure(algebra, sigma, basis, labels,
                                 [k] + c, name=f"product structure on sl(2,R) x R^{2 * n - 3}")
    structure.validate()
    return structure


@dataclass
class Sl2ProductReport:
    n: int
    metric: MetricReport
    kahler: KahlerFeasibility
    records: List[ObstructionRecord] = field(default_factory=list)

    @property
    def obstructed(self) -> List[int]:
        return obstructed_set(self.records, "exact")

    def to_json(self) -> dict:
        return {"n": self.n, "metric": self.metric.to_json(), "kahler": self.kahler.to_json(),
                "obstructed": self.obstructed, "records": [r.to_json() for r in self.records]}


def sl2_product_check(n: int) -> Sl2ProductReport:
    """
    Raises:
        InvalidParameter: unless n is 2 or 3
    """
    if n not in (2, 3):
        raise InvalidParameter(f"n must be 2 or 3, got {n}")
    structure = sl2_product_structure(n)
    coframe = Coframe.from_structure(structure)
    report = metric_report(HermMetric.identity(coframe))
    feasibility = kahler_feasibility(coframe)
    records = obstruction_scan(coframe, pluriclosed=False)
    return Sl2ProductReport(n, report, feasibility, records)
