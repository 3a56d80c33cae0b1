import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from src.main.errors import (ConstructionFailure, NotAFrame, NotPositiveDefinite, StructureError)
from src.main.geometry.complex_structures import (ComplexStructure, build_nonregular_q, e_zero,
                                                  tilde_h)
from src.main.geometry.forms import Coframe, ExtForm, ce_d, partial, partial_bar, wedge
from src.main.geometry.positivity import (Definiteness, herm_rep, hermitian_form)
from src.main.lie.real_forms import RealForms, SigmaConstants, build_involutions, sigma_constants
from src.main.numeric.gaussian import GaussRational, I, ONE, Scalar, ZERO
from src.main.numeric.matrix import ExactMatrix, hermitian_signature
from src.main.numeric.subspace import Subspace, kernel
from src.main.numeric.vectors import Vector, vec_add, vec_combine, vec_scale, vec_to_json

log = logging.getLogger(__name__)


class HermMetric:
    """A Hermitian metric given by a positive-definite matrix over a (1,0)-coframe."""

    def __init__(self, coframe: Coframe, matrix: ExactMatrix):
        n = coframe.n
        if matrix.shape != (n, n):
            raise ValueError(f"Metric matrix must be {n}x{n}, got {matrix.shape}")
        if not matrix.is_hermitian() or hermitian_signature(matrix) != (n, 0, 0):
            raise NotPositiveDefinite("Metric matrix is not positive definite")
        self._coframe = coframe
        self._matrix = matrix

    @classmethod
    def identity(cls, coframe: Coframe) -> "HermMetric":
        return cls(coframe, ExactMatrix.identity(coframe.n))

    @classmethod
    def diagonal(cls, coframe: Coframe, entries: Sequence[Scalar]) -> "HermMetric":
        return cls(coframe, ExactMatrix.diagonal(entries))

    @property
    def coframe(self) -> Coframe:
        return self._coframe

    @property
    def matrix(self) -> ExactMatrix:
        return self._matrix

    def omega(self) -> ExtForm:
        """Fundamental form ω = i Σ h_jk η^j ∧ conj(η^k)."""
        return hermitian_form(self._coframe, self._matrix)

    def __repr__(self) -> str:
        return f"HermMetric(n={self._coframe.n})"


@dataclass
class MetricReport:
    kahler: bool
    pluriclosed: bool
    balanced: bool
    gauduchon: bool
    astheno: bool
    residuals: Dict[str, ExtForm] = field(default_factory=dict)

    def implications_hold(self, n: int) -> bool:
        chain = [(self.kahler, self.pluriclosed), (self.kahler, self.balanced),
                 (self.balanced, self.gauduchon)]
        if n == 2:
            chain.append((self.pluriclosed, self.gauduchon))
        return all(b for a, b in chain if a)

    def flags(self) -> Dict[str, bool]:
        return {"kahler": self.kahler, "pluriclosed": self.pluriclosed, "balanced": self.balanced,
                "gauduchon": self.gauduchon, "astheno": self.astheno}

    def to_json(self) -> dict:
        return {**self.flags(), "residuals": {k: v.to_json() for k, v in sorted(self.residuals.items())}}


def metric_report(metric: HermMetric) -> MetricReport:
    """
    Decide the five metric types by exact vanishing of dω, ∂∂̄ω, dω^{n-1},
    ∂∂̄ω^{n-1} and ∂∂̄ω^{n-2}. For n <= 2, ω^{n-2} is constant and the
    astheno-Kähler condition holds trivially.

    Raises:
        StructureError: if the implication chain between the flags breaks
    """
    n = metric.coframe.n
    omega = metric.omega()
    top = omega.power(n - 1)
    checks = {
        "kahler": ce_d(omega),
        "pluriclosed": partial(partial_bar(omega)),
        "balanced": ce_d(top),
        "gauduchon": partial(partial_bar(top)),
        "astheno": partial(partial_bar(omega.power(n - 2))) if n > 2 else ExtForm(metric.coframe, {}),
    }
    report = MetricReport(**{k: not v for k, v in checks.items()},
                          residuals={k: v for k, v in checks.items() if v})
    if not report.implications_hold(n):
        raise StructureError(f"Metric flags violate the implication chain: {report.flags()}")
    log.debug("Metric report: %s", report.flags())
    return report


def balanced_frame_criterion(structure: ComplexStructure, frame: Sequence[Vector]) -> Vector:
    """
    Σ_j [v_j, σ(v_j)] for a unitary (1,0)-frame; zero iff the metric is balanced
    on a unimodular algebra.

    Raises:
        NotAFrame: if the vectors do not form a basis of q
    """
    if len(frame) != structure.dim:
        raise NotAFrame(f"Need {structure.dim} frame vectors, got {len(frame)}")
    qspace = structure.subspace()
    span = Subspace(structure.algebra.dim, frame)
    if span.dim != structure.dim or not all(qspace.contains(v) for v in frame):
        raise NotAFrame("Frame does not span q")
    sigma = structure.conjugation
    return vec_combine((1, structure.algebra.bracket(v, sigma.apply(v))) for v in frame)


@dataclass
class BalancedFrame:
    m: int
    structure: ComplexStructure
    vectors: List[Vector]
    labels: List[str]
    corrections: Dict[str, GaussRational]
    cartan_correction: Vector = field(default_factory=dict)
    e0_coefficient: GaussRational = ZERO

    def residual(self) -> Vector:
        return balanced_frame_criterion(self.structure, self.vectors)

    def normalized(self) -> Dict[str, object]:
        """Corrections in the H_j basis and the root-vector coefficient of e₀, -B_{m-1}^1."""
        labels = self.structure.algebra.labels
        return {"cartan_correction": {labels[k]: str(v) for k, v in sorted(self.cartan_correction.items())},
                "e0_coefficient": str(self.e0_coefficient)}

    def to_json(self) -> dict:
        return {"m": self.m, "labels": list(self.labels),
                "corrections": {k: str(v) for k, v in sorted(self.corrections.items())},
                "normalized": self.normalized(),
                "vectors": [vec_to_json(v) for v in self.vectors]}


def _frame_vectors(forms: RealForms, structure: ComplexStructure,
                   corrections: Dict[str, GaussRational]) -> Tuple[List[Vector], List[str]]:
    alg, m = forms.algebra, forms.m
    rs = alg.root_system
    tilde = tilde_h(forms)
    vectors = list(tilde)
    labels = [f"Ht{k}" for k in range(1, m)]
    gamma = rs.root(m - 1, 2)
    for root in rs.positive_roots:
        if root == rs.simple_root(m - 1):
            continue
        vec = alg.basis_vector(alg.root_index(root))
        j, k = root.start, root.length
        if root == gamma:
            vec = vec_add(vec, vec_scale(tilde[m - 2], corrections["c"]))
        elif j < m - 1 and k == m - j:
            vec = vec_add(vec, vec_scale(alg.e(m, m - j), corrections[f"kappa{j}"]))
        vectors.append(vec)
        labels.append(f"f{j}^{k}")
    vectors.append(vec_add(e_zero(forms), vec_scale(alg.e(m), corrections[f"kappa{m - 1}"])))
    labels.append(f"f{m - 1}^1")
    return vectors, labels


def _with_normalization(frame: BalancedFrame, forms: RealForms,
                        consts: Optional[SigmaConstants] = None) -> BalancedFrame:
    consts = consts or sigma_constants(forms)
    frame.cartan_correction = vec_scale(tilde_h(forms)[frame.m - 2], frame.corrections.get("c", ZERO))
    frame.e0_coefficient = -consts[(frame.m - 1, 1)]
    return frame


def balanced_basis_sl2m1(m: int, forms: Optional[RealForms] = None,
                         corrections: Optional[Dict[str, Scalar]] = None) -> BalancedFrame:
    """
    Unitary frame of the non-regular structure whose metric is balanced.

    The root-vector corrections κ_j = -B_{γ_j} / B_j^{m-j} come from the
    σ-constants and the Cartan correction c of f_{γ_{m-1}} is solved from the
    residual. Passing `corrections` skips both and the verification.

    Raises:
        ConstructionFailure: if the computed frame has a nonzero residual
    """
    forms = forms or build_involutions(m)
    structure = build_nonregular_q(m, forms)
    if corrections is not None:
        given = {k: GaussRational.coerce(v) for k, v in corrections.items()}
        vectors, labels = _frame_vectors(forms, structure, given)
        return _with_normalization(BalancedFrame(m, structure, vectors, labels, given), forms)
    consts = sigma_constants(forms)
    values = {f"kappa{j}": -consts.gamma(j) / consts[(j, m - j)] for j in range(1, m)}
    values["c"] = ZERO
    base_vectors, _ = _frame_vectors(forms, structure, values)
    base = balanced_frame_criterion(structure, base_vectors)
    values["c"] = ONE
    unit_vectors, _ = _frame_vectors(forms, structure, values)
    slope = vec_combine([(1, balanced_frame_criterion(structure, unit_vectors)), (-1, base)])
    # residual(c) = base + c * slope for real c, since [H̃, σH̃] = 0
    pivot = next((k for k in sorted(slope) if slope[k]), None)
    values["c"] = ZERO if pivot is None else -base.get(pivot, ZERO) / slope[pivot]
    vectors, labels = _frame_vectors(forms, structure, values)
    frame = _with_normalization(BalancedFrame(m, structure, vectors, labels, values), forms, consts)
    if not values["c"].is_real() or frame.residual():
        raise ConstructionFailure(f"No balanced correction found for m={m}")
    log.info("Balanced frame for m=%d built with corrections %s", m,
             {k: str(v) for k, v in sorted(values.items())})
    return frame


@dataclass
class ObstructionRecord:
    """An exact (or ∂∂̄-exact) semi-positive form and the p it rules out."""
    generator: str
    form: ExtForm
    kind: str
    classification: Definiteness
    rank: int
    obstructed: List[int]

    def to_json(self) -> dict:
        return {"generator": self.generator, "form": self.form.to_json(), "kind": self.kind,
                "classification": self.classification.value, "rank": self.rank,
                "obstructed": list(self.obstructed)}


def obstructed_range(n: int, rank: int) -> List[int]:
    """{n-k, ..., n-1} ∩ [1, n-1] for a semi-positive exact (1,1)-form of rank k."""
    return [p for p in range(n - rank, n) if 1 <= p <= n - 1]


def diagonal_decomposition(form: ExtForm) -> Optional[Dict[Tuple[int, ...], GaussRational]]:
    """
    Write a (k,k)-form as Σ c_S Π_{j∈S} (i η^j ∧ conj(η^j)) with real c_S, or None.
    """
    coframe = form.coframe
    n = coframe.n
    result: Dict[Tuple[int, ...], GaussRational] = {}
    for key, value in form.terms.items():
        subset = tuple(k for k in key if k < n)
        if tuple(k - n for k in key if k >= n) != subset:
            return None
        unit = ExtForm(coframe, {(): ONE})
        for j in subset:
            unit = wedge(unit, wedge(coframe.eta(j), coframe.eta_bar(j)).scale(I))
        c = value / unit.coefficient(key)
        if not c.is_real():
            return None
        result[subset] = c
    return result


def _sign_class(coeffs: Sequence[GaussRational]) -> Definiteness:
    signs = {c.re > 0 for c in coeffs}
    if signs == {True}:
        return Definiteness.POSITIVE_SEMIDEF
    if signs == {False}:
        return Definiteness.NEGATIVE_SEMIDEF
    return Definiteness.INDEFINITE if signs else Definiteness.ZERO


def real_one_forms(coframe: Coframe) -> List[Tuple[str, ExtForm]]:
    """η^j + conj(η^j) and i(η^j - conj(η^j))."""
    result = []
    for j in range(coframe.n):
        eta, bar = coframe.eta(j), coframe.eta_bar(j)
        result.append((f"re{coframe.label(j)}", eta + bar))
        result.append((f"im{coframe.label(j)}", (eta - bar).scale(I)))
    return result


def obstruction_scan(coframe: Coframe, candidates: Optional[List[Tuple[str, ExtForm]]] = None,
                     bound: int = 1, pluriclosed: bool = True) -> List[ObstructionRecord]:
    """
    Search for semi-definite exact (1,1)-forms dβ over integer combinations of
    real 1-forms with coefficients in [-bound, bound], and for diagonal
    strongly positive i∂∂̄γ with γ a product of the i η^j ∧ conj(η^j).

    Only unimodular algebras are scanned.
    """
    if not coframe.algebra.is_unimodular():
        log.warning("Skipping obstruction scan on non-unimodular %s", coframe.algebra.name)
        return []
    n = coframe.n
    records: List[ObstructionRecord] = []
    seen = set()
    if candidates is None:
        basis = real_one_forms(coframe)
        candidates = []
        for coeffs in itertools.product(range(-bound, bound + 1), repeat=len(basis)):
            first = next((c for c in coeffs if c), 0)
            if first <= 0:
                continue
            name = " + ".join(f"{c}*{label}" for c, (label, _) in zip(coeffs, basis) if c)
            form = ExtForm(coframe, {})
            for c, (_, b) in zip(coeffs, basis):
                if c:
                    form = form + b.scale(c)
            candidates.append((name, form))
    for name, beta in candidates:
        d_beta = ce_d(beta)
        if not d_beta or d_beta.bidegree != (1, 1) or d_beta in seen:
            continue
        report = herm_rep(d_beta)
        kind = report.classification
        if not kind.semidefinite:
            continue
        seen.add(d_beta)
        if kind in (Definiteness.NEGATIVE_SEMIDEF, Definiteness.NEGATIVE_DEFINITE):
            d_beta, name, kind = -d_beta, f"-({name})", kind.flipped()
        records.append(ObstructionRecord(name, d_beta, "exact", kind, report.rank,
                                         obstructed_range(n, report.rank)))
    if pluriclosed:
        for size in range(1, n - 1):
            for subset in itertools.combinations(range(n), size):
                gamma = ExtForm(coframe, {(): ONE})
                for j in subset:
                    gamma = wedge(gamma, wedge(coframe.eta(j), coframe.eta_bar(j)).scale(I))
                ddbar = partial(partial_bar(gamma)).scale(I)
                decomposition = diagonal_decomposition(ddbar) if ddbar else None
                if not decomposition:
                    continue
                kind = _sign_class(list(decomposition.values()))
                if not kind.semidefinite:
                    continue
                name = "i" + "".join(f"[{coframe.label(j)}]" for j in subset)
                if kind == Definiteness.NEGATIVE_SEMIDEF:
                    ddbar, name, kind = -ddbar, f"-{name}", kind.flipped()
                p = n - ddbar.degree // 2
                records.append(ObstructionRecord(name, ddbar, "ddbar", kind, len(decomposition), [p]))
    log.info("Obstruction scan on %s found %d records", coframe.algebra.name, len(records))
    return records


def obstructed_set(records: Sequence[ObstructionRecord], kind: Optional[str] = None) -> List[int]:
    return sorted({p for r in records if kind is None or r.kind == kind for p in r.obstructed})


def real_11_basis(coframe: Coframe) -> List[Tuple[ExtForm, ExactMatrix]]:
    """Real (1,1)-forms iη^{jj̄}, i(η^{jk̄} + η^{kj̄}), η^{jk̄} - η^{kj̄} with their Hermitian matrices."""
    n = coframe.n
    result = []

    def matrix(entries: Dict[Tuple[int, int], GaussRational]) -> ExactMatrix:
        return ExactMatrix([[entries.get((a, b), ZERO) for b in range(n)] for a in range(n)])

    for j in range(n):
        result.append(matrix({(j, j): ONE}))
    for j in range(n):
        for k in range(j + 1, n):
            result.append(matrix({(j, k): ONE, (k, j): ONE}))
            result.append(matrix({(j, k): -I, (k, j): I}))
    return [(hermitian_form(coframe, h), h) for h in result]


@dataclass
class KahlerFeasibility:
    verdict: str
    kernel_dimension: int
    witness: Optional[ExactMatrix] = None
    zero_diagonal: Optional[int] = None

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "kernel_dimension": self.kernel_dimension,
                "witness": None if self.witness is None else self.witness.to_json(),
                "zero_diagonal": self.zero_diagonal}


def kahler_feasibility(coframe: Coframe, grid: Sequence[int] = (-2, -1, 0, 1, 2),
                       max_samples: int = 20000) -> KahlerFeasibility:
    """
    Decide whether some closed real (1,1)-form is positive definite.

    The closed forms are the kernel of d on the real (1,1) basis. A diagonal entry
    vanishing on the whole kernel certifies infeasibility; otherwise integer grid
    points of the kernel are searched for a positive-definite witness.
    """
    n = coframe.n
    basis = real_11_basis(coframe)
    keys: Dict[Tuple[int, ...], int] = {}
    images = []
    for form, _ in basis:
        image: Vector = {}
        for key, value in ce_d(form).terms.items():
            image[keys.setdefault(key, len(keys))] = value
        images.append(image)
    closed = kernel(images, len(keys))
    matrices = []
    for vec in closed:
        total = ExactMatrix.zeros(n, n)
        for i, c in vec.items():
            total = total + basis[i][1].scale(c)
        matrices.append(total)
    if not matrices:
        return KahlerFeasibility("infeasible", 0)
    for j in range(n):
        if all(not h[j, j] for h in matrices):
            return KahlerFeasibility("infeasible", len(matrices), zero_diagonal=j)
    for count, point in enumerate(itertools.product(grid, repeat=len(matrices))):
        if count >= max_samples:
            break
        h = ExactMatrix.zeros(n, n)
        for c, m in zip(point, matrices):
            if c:
                h = h + m.scale(c)
        if h.is_hermitian() and hermitian_signature(h) == (n, 0, 0):
            return KahlerFeasibility("feasible", len(matrices), witness=h)
    return KahlerFeasibility("undetermined", len(matrices))
