"""
Named, reproducible scenarios tying each computation of the engine to a report.

A scenario takes string parameters (integers, exact rationals such as "1/2" or
"i/2", weight combinations such as "a1-3a4") and produces a Report of named
verdicts, exact values and serialized witnesses. Reports serialize to
byte-identical JSON for identical parameters.
"""
import json
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from src.main.config import EngineConfig
from src.main.errors import (BadParameter, DegenerateDenominator, NoPositiveSolution,
                             UnknownScenario)
from src.main.geometry.complex_structures import (build_nonregular_q, build_sl3_family,
                                                  h_regularity_check, nonregularity_certificate,
                                                  sigma_normalizer, skt_subframe,
                                                  subalgebra_complement_check)
from src.main.geometry.flag_bundles import (WeightCombo, astheno_c2,
                                            parse_weight_combo, power_report, scan_summary,
                                            semidef_scan)
from src.main.geometry.forms import (Coframe, equations_table, match_up_to_rescaling,
                                     partial, partial_bar, structure_equations, wedge)
from src.main.geometry.metrics import (HermMetric, balanced_basis_sl2m1, balanced_frame_criterion,
                                       obstructed_set, obstruction_scan)
from src.main.geometry.positivity import transversality_falsifier
from src.main.geometry.reductive import (compact_dxi, compact_structure, ddc_degenerate_form,
                                         j_invariant_cartan_form, sl2_product_check)
from src.main.lie.real_forms import RealForms, build_involutions
from src.main.numeric.gaussian import GaussRational
from src.main.numeric.subspace import Subspace
from src.main.numeric.vectors import vec_sub, vec_to_json

log = logging.getLogger(__name__)

EXPECTATIONS_PATH = Path(__file__).parent / "data" / "expectations.json"

# Displayed structure equations of the sl(3,R) block, coframe (H̃, e0, e_{α2}, e_γ)
SL3_TARGET = [
    {"1 2bar": "1/3", "2 1bar": "-2/3", "3 3bar": "-1/3"},
    {"1 0bar": -3, "3 1bar": -1},
    {"0 2": -3, "1 3": -1, "0 1bar": -6, "1 3bar": -1, "3 2bar": 1},
    {"0 3": -3, "1 2": -1, "1 1bar": -1, "3 0bar": -3},
]


@dataclass
class Scenario:
    name: str
    params: Dict[str, str] = field(default_factory=dict)


@dataclass
class Report:
    scenario: str
    params: Dict[str, str]
    verdicts: Dict[str, bool] = field(default_factory=dict)
    values: Dict[str, Any] = field(default_factory=dict)
    witnesses: Dict[str, Any] = field(default_factory=dict)
    elapsed: float = field(default=0.0, compare=False)
    artifacts: Dict[str, Any] = field(default_factory=dict, repr=False, compare=False)

    def to_json(self) -> dict:
        """Canonical content; timing is left out so reruns are byte-identical."""
        return {"scenario": self.scenario, "params": dict(self.params),
                "verdicts": dict(self.verdicts), "values": _plain(self.values),
                "witnesses": _plain(self.witnesses)}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    def summary(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        lines = [f"{self.scenario} {params}".rstrip() + f" ({self.elapsed:.2f}s)"]
        for name, verdict in sorted(self.verdicts.items()):
            lines.append(f"  [{'x' if verdict else ' '}] {name}")
        for name, value in sorted(self.values.items()):
            if isinstance(value, (str, int, bool)):
                lines.append(f"  {name} = {value}")
        return "\n".join(lines)


def _plain(value: Any) -> Any:
    """JSON-ready copy: exact scalars become strings, mapping keys strings."""
    if hasattr(value, "to_json"):
        return _plain(value.to_json())
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Fraction):
        return str(value)
    return value


# -- parameters ---------------------------------------------------------------

@dataclass(frozen=True)
class Param:
    default: str
    parse: Callable[[str, str], Any]
    help: str = ""


def integer(low: int, high: Optional[int] = None) -> Callable[[str, str], int]:
    def parse(key: str, text: str) -> int:
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise BadParameter(key, f"expected an integer, got {text!r}")
        if value.denominator != 1:
            raise BadParameter(key, f"expected an integer, got {text}")
        value = int(value)
        if value < low or (high is not None and value > high):
            bound = f"{low}..{high}" if high is not None else f">= {low}"
            raise BadParameter(key, f"{value} outside {bound}")
        return value
    return parse


def gaussian(max_norm2: Optional[Fraction] = None) -> Callable[[str, str], GaussRational]:
    def parse(key: str, text: str) -> GaussRational:
        try:
            value = GaussRational.parse(text)
        except (ValueError, ZeroDivisionError):
            raise BadParameter(key, f"expected an exact Gaussian rational, got {text!r}")
        if max_norm2 is not None and value.norm2() >= max_norm2:
            raise BadParameter(key, f"|{value}|^2 must be below {max_norm2}")
        return value
    return parse


def weight_combo(n: int = 5) -> Callable[[str, str], WeightCombo]:
    def parse(key: str, text: str) -> WeightCombo:
        try:
            return parse_weight_combo(text, n)
        except ValueError as exc:
            raise BadParameter(key, str(exc))
    return parse


def weight_choice(key: str, text: str):
    if text in ("rho", "highest"):
        return text
    try:
        return [GaussRational.parse(part) for part in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise BadParameter(key, f"expected rho, highest or comma separated values, got {text!r}")


@dataclass(frozen=True)
class ScenarioInfo:
    name: str
    description: str
    params: Dict[str, Param]
    runner: Callable[[Report, Dict[str, Any], EngineConfig], None]

    def to_json(self) -> dict:
        return {"name": self.name, "description": self.description,
                "params": {k: p.default for k, p in self.params.items()}}


_REGISTRY: Dict[str, ScenarioInfo] = {}


def scenario(name: str, description: str, **params: Param):
    def register(runner):
        _REGISTRY[name] = ScenarioInfo(name, description, params, runner)
        return runner
    return register


def list_scenarios() -> List[ScenarioInfo]:
    """Registered scenarios in catalog order."""
    return list(_REGISTRY.values())


def get_scenario(name: str) -> ScenarioInfo:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownScenario(f"Scenario {name} not found; known: {', '.join(_REGISTRY)}")


def resolve_params(info: ScenarioInfo, raw: Dict[str, str]) -> Dict[str, Any]:
    """
    Parse raw string parameters, filling defaults.

    Raises:
        BadParameter: for a key the scenario does not accept or a value that does not parse
    """
    for key in raw:
        if key not in info.params:
            accepted = ", ".join(info.params) or "none"
            raise BadParameter(key, f"not accepted by {info.name} (accepted: {accepted})")
    return {key: p.parse(key, str(raw.get(key, p.default))) for key, p in info.params.items()}


def canonical_params(args: Dict[str, Any]) -> Dict[str, str]:
    result = {}
    for key, value in args.items():
        if isinstance(value, list):
            result[key] = ",".join(str(v) for v in value)
        else:
            result[key] = str(value)
    return result


def run_scenario(s: Scenario, config: Optional[EngineConfig] = None) -> Report:
    """
    Raises:
        UnknownScenario: if the name is not registered
        BadParameter: with the offending key
    """
    config = config or EngineConfig()
    info = get_scenario(s.name)
    args = resolve_params(info, s.params)
    report = Report(info.name, canonical_params(args))
    start = time.perf_counter()
    info.runner(report, args, config)
    report.elapsed = time.perf_counter() - start
    log.info("Scenario %s finished in %.2fs", info.name, report.elapsed)
    return report


# -- expectations -------------------------------------------------------------

def load_expectations(path: Optional[Path] = None) -> List[dict]:
    with open(path or EXPECTATIONS_PATH, encoding="utf-8") as handle:
        return json.load(handle)


def find_expectation(report: Report, catalog: Sequence[dict]) -> Optional[dict]:
    """The catalog entry whose scenario and resolved params equal the report's."""
    for entry in catalog:
        if entry.get("scenario") != report.scenario:
            continue
        info = get_scenario(entry["scenario"])
        if canonical_params(resolve_params(info, entry.get("params", {}))) == report.params:
            return entry
    return None


def compare_expectation(report: Report, expected: dict) -> List[str]:
    """Human-readable mismatches between a report and its catalog entry; empty if none."""
    mismatches = []
    actual_values = _plain(report.values)
    for name, value in sorted(expected.get("verdicts", {}).items()):
        if report.verdicts.get(name) != value:
            mismatches.append(f"verdict {name}: expected {value}, got {report.verdicts.get(name)}")
    for name, value in sorted(expected.get("values", {}).items()):
        if actual_values.get(name) != value:
            mismatches.append(f"value {name}: expected {value!r}, got {actual_values.get(name)!r}")
    return mismatches


# -- scenarios ----------------------------------------------------------------

def _sl3_block(forms: RealForms) -> Coframe:
    """Coframe dual to (H̃_{m-1}, e0, e_{α_m}, e_{γ_{m-1}}) and their conjugates."""
    structure = build_nonregular_q(forms.m, forms)
    vectors, _ = skt_subframe(structure, forms)
    return Coframe(forms.algebra, vectors, forms.sigma, names=["0", "1", "2", "3"])


def _ddbar_pattern(report: Report, coframe: Coframe) -> None:
    one_one = wedge(coframe.eta(1), coframe.eta_bar(1))
    first = partial(partial_bar(one_one))
    second = partial(partial_bar(wedge(wedge(coframe.eta(0), coframe.eta_bar(0)), one_one)))
    near, far = (0, 1, 4, 5), (1, 3, 5, 7)
    two_terms = set(first.terms) == {near, far}
    ratio = first.coefficient(near) / first.coefficient(far) if two_terms else None
    report.verdicts["ddbar_11_two_monomials"] = two_terms
    report.verdicts["ddbar_11_same_sign"] = bool(two_terms and ratio.is_real() and ratio.re > 0)
    report.verdicts["ddbar_0011_single_monomial"] = len(second.terms) == 1
    report.values["ddbar_11_ratio"] = None if ratio is None else str(ratio)
    report.witnesses["ddbar_11"] = first
    report.witnesses["ddbar_0011"] = second


def _pluriclosed_flags(report: Report, coframe: Coframe, config: EngineConfig) -> None:
    records = obstruction_scan(coframe, bound=config.obstruction_bound)
    ddbar = obstructed_set(records, "ddbar")
    report.verdicts["not_1_pluriclosed"] = 1 in ddbar
    report.verdicts["not_2_pluriclosed"] = 2 in ddbar
    report.values["ddbar_obstructed_p"] = ddbar
    report.values["exact_obstructed_p"] = obstructed_set(records, "exact")


@scenario("sl2m1-nonregular", "Non-regular invariant complex structure on sl(2m-1,R)",
          m=Param("2", integer(2, 5), "m with the algebra sl(2m-1)"))
def _nonregular(report: Report, args: Dict[str, Any], config: EngineConfig) -> None:
    forms = build_involutions(args["m"])
    structure = build_nonregular_q(args["m"], forms)
    check = subalgebra_complement_check(forms.algebra, structure.q_basis, forms.sigma)
    regularity = h_regularity_check(structure)
    cartan = Subspace(forms.algebra.dim, structure.cartan)
    normalizer = sigma_normalizer(structure)
    report.verdicts["subalgebra"] = check.closed
    report.verdicts["complement"] = check.complement
    report.verdicts["h_stable"] = regularity.ad_stable
    report.verdicts["normalizer_in_cartan"] = all(cartan.contains(w) for w in normalizer)
    report.verdicts["nonregular"] = nonregularity_certificate(structure)
    report.values["dim_q"] = structure.dim
    report.values["killing_signature"] = list(forms.signature)
    report.values["normalizer_dim"] = len(normalizer)
    witness = dict(regularity.witness)
    if "bracket" in witness:
        witness["bracket"] = vec_to_json(witness["bracket"])
    report.witnesses["regularity"] = witness
    report.witnesses["q_labels"] = structure.labels


@scenario("sl2m1-balanced", "Balanced unitary frame of the non-regular structure",
          m=Param("3", integer(2, 5), "m with the algebra sl(2m-1)"))
def _balanced(report: Report, args: Dict[str, Any], config: EngineConfig) -> None:
    m = args["m"]
    forms = build_involutions(m)
    frame = balanced_basis_sl2m1(m, forms)
    report.verdicts["residual_zero"] = not frame.residual()
    sensitive = True
    for key in sorted(frame.corrections):
        perturbed = dict(frame.corrections)
        perturbed[key] = perturbed[key] + Fraction(1, 7)
        if not balanced_basis_sl2m1(m, forms, corrections=perturbed).residual():
            sensitive = False
            report.witnesses["insensitive_correction"] = key
    report.verdicts["perturbation_breaks_balance"] = sensitive
    report.values["corrections"] = {k: str(v) for k, v in sorted(frame.corrections.items())}
    report.values["normalized"] = frame.normalized()
    report.witnesses["frame_labels"] = frame.labels


@scenario("sl2m1-skt", "sl(3)-type block obstructing pluriclosed metrics",
          m=Param("3", integer(2, 5), "m with the algebra sl(2m-1)"))
def _skt(report: Report, args: Dict[str, Any], config: EngineConfig) -> None:
    m = args["m"]
    forms = build_involutions(m)
    coframe = _sl3_block(forms)
    span = coframe.frame()
    report.verdicts["block_closed"] = subalgebra_complement_check(forms.algebra, span, forms.sigma).closed
    _ddbar_pattern(report, coframe)
    _pluriclosed_flags(report, coframe, config)
    report.verdicts["no_pluriclosed_metric"] = report.verdicts["not_1_pluriclosed"]
    block = structure_equations(coframe)
    reference = structure_equations(_sl3_block(build_involutions(2)))
    scaling = match_up_to_rescaling(block, reference, magnitudes=config.rescale_magnitudes)
    report.verdicts["matches_sl3_equations"] = scaling is not None
    report.witnesses["structure_equations"] = equations_table(block)


@scenario("sl3-structure-eqs", "Structure equations and ∂∂̄ computations on sl(3,R)")
def _sl3_equations(report: Report, args: Dict[str, Any], config: EngineConfig) -> None:
    forms = build_involutions(2)
    coframe = _sl3_block(forms)
    computed = structure_equations(coframe)
    target = [coframe.from_table(table) for table in SL3_TARGET]
    scaling = match_up_to_rescaling(computed, target, magnitudes=config.rescale_magnitudes)
    report.verdicts["matches_up_to_rescaling"] = scaling is not None
    report.values["rescaling"] = None if scaling is None else [str(s) for s in scaling]
    report.witnesses["structure_equations"] = equations_table(computed)
    _ddbar_pattern(report, coframe)
    _pluriclosed_flags(report, coframe, config)
    omega = HermMetric.identity(coframe).omega()
    falsifier = transversality_falsifier(omega, trials=config.trials, seed=config.seed)
    report.verdicts["omega_transverse_on_samples"] = not falsifier.falsified
    report.values["falsifier_samples"] = falsifier.samples


@scenario("sl3-Ilambda", "Balanced metrics on the family I_lambda",
          **{"lambda": Param("0", gaussian(Fraction(1)), "complex parameter with |lambda| < 1")})
def _ilambda(report: Report, args: Dict[str, Any], config: EngineConfig) -> None:
    lam = args["lambda"]
    structure = build_sl3_family(lam)
    u, x, y, z = (structure.vector(label) for label in ("u", "x", "y", "z"))
    residual = balanced_frame_criterion(structure, [u, x, vec_sub(x, y), z])
    report.verdicts["residual_zero"] = not residual
    report.verdicts["jacobi"] = structure.algebra.check_jacobi() is None
    coframe = Coframe.from_structure(structure, names=structure.labels)
    equations = structure_equations(coframe)
    expected = {1: 2 - lam, 2: lam * 2 - 1, 3: lam + 1}
    pattern = all(equations[k].coefficient((0, k)) == -c for k, c in expected.items())
    report.verdicts["coefficient_pattern"] = pattern
    report.values["coefficients"] = {coframe.label(k): str(-equations[k].coefficient((0, k)))
                                     for k in expected}
    report.witnesses["residual"] = vec_to_json(residual)
    report.witnesses["structure_equations"] = equations_table(equations)


@scenario("su5-t2-astheno", "Astheno-Kähler constant c^2 on a T^2-bundle over SU(5)/T",
          beta1=Param("a1", weight_combo()), beta2=Param("a1-a2", weight_combo()),
          kahler=Param("a1+a2+a3+a4", weight_combo()))
def _astheno(report: Report, args: Dict[str, Any], config: EngineConfig) -> None:
    try:
        value = astheno_c2(args["beta1"], args["beta2"], args["kahler"])
        report.verdicts["positive_solution"] = True
    except NoPositiveSolution as exc:
        value = exc.value
        report.verdicts["positive_solution"] = False
    except DegenerateDenominator:
        report.verdicts["positive_solution"] = False
        report.values["c2"] = None
        return
    report.values["c2"] = str(value)


@scenario("su5-t2-scan", "Semi-definiteness scan of d(A beta1 + C beta2) on SU(5)/T",
          beta1=Param("a1", weight_combo()), beta2=Param("a1-a2", weight_combo()),
          range=Param("0", integer(0), "bound on |A| and |C|; 0 uses the configured scan range"),
          power1=Param("7", integer(1, 10), "wedge power checked for d beta1"),
          power2=Param("4", integer(1, 10), "wedge power checked for d beta2"))
def _scan(report: Report, args: Dict[str, Any], config: EngineConfig) -> None:
    beta1, beta2 = args["beta1"], args["beta2"]
    records = semidef_scan(beta1, beta2, args["range"] or config.scan_range, jobs=config.jobs)
    summary = scan_summary(records)
    report.verdicts["has_semidefinite"] = summary["semidefinite_count"] > 0
    first = power_report(beta1, args["power1"])
    second = power_report(beta2, args["power2"])
    report.verdicts["beta1_power_single_sign"] = first.classification.semidefinite
    report.verdicts["beta2_power_single_sign"] = second.classification.semidefinite
    report.values.update(summary)
    report.values["beta1_power"] = first.classification.value
    report.values["beta2_power"] = second.classification.value
    report.witnesses["table"] = [{"A": r.a, "C": r.c, "classification": r.classification.value,
                                  "rank": r.rank, "obstructed": r.obstructed} for r in records]
    report.artifacts["records"] = records


@scenario("compact-dxi", "d(i xi) on the compact form of sl(N,C) plus center",
          n=Param("3", integer(2, 6), "N"),
          weight=Param("rho", weight_choice, "rho, highest or values on h_1..h_{N-1}"),
          center=Param("-1", integer(-1), "center dimension; -1 picks the smallest even total"))
def _compact_dxi(report: Report, args: Dict[str, Any], config: EngineConfig) -> None:
    center = None if args["center"] < 0 else args["center"]
    result = compact_dxi(args["n"], args["weight"], center)
    positive_roots = args["n"] * (args["n"] - 1) // 2
    report.verdicts["formula_holds"] = result.formula_holds
    report.verdicts["semidefinite"] = result.report.classification.semidefinite
    report.verdicts["rank_is_full"] = result.report.rank == positive_roots
    report.values["rank"] = result.report.rank
    report.values["positive_roots"] = positive_roots
    report.values["classification"] = result.report.classification.value
    report.values["obstructed_p"] = [] if result.record is None else result.record.obstructed
    report.witnesses["form"] = result.form


@scenario("reductive-ddc", "dd^c of the degenerate J-invariant metric on a compact form",
          n=Param("3", integer(3, 6), "N"),
          center=Param("-1", integer(-1), "center dimension; -1 picks the smallest even total"))
def _reductive_ddc(report: Report, args: Dict[str, Any], config: EngineConfig) -> None:
    center = None if args["center"] < 0 else args["center"]
    compact = compact_structure(args["n"], center)
    rs = compact.sl.root_system
    h = j_invariant_cartan_form(compact, rs.simple_root(1), rs.simple_root(2))
    table = ddc_degenerate_form(compact, h)
    report.verdicts["all_match"] = table.all_match
    report.verdicts["other_components_vanish"] = table.other_components_vanish
    report.verdicts["obstruction_found"] = table.record is not None
    report.verdicts["zero_h_gives_zero"] = not ddc_degenerate_form(compact, {}).form
    report.values["table"] = [{"alpha": e["alpha"].label(), "beta": e["beta"].label(),
                               "value": str(e["value"])} for e in table.entries]
    report.values["obstructed_p"] = [] if table.record is None else table.record.obstructed


@scenario("sl2-product", "Metrics on sl(2,R) x R^{2n-3}",
          n=Param("3", integer(2, 3), "complex dimension"))
def _sl2_product(report: Report, args: Dict[str, Any], config: EngineConfig) -> None:
    n = args["n"]
    result = sl2_product_check(n)
    report.verdicts["kahler_infeasible"] = result.kahler.verdict == "infeasible"
    report.verdicts["pluriclosed"] = result.metric.pluriclosed
    report.verdicts["gauduchon"] = result.metric.gauduchon
    report.verdicts["balanced_obstructed"] = (n - 1) in result.obstructed
    report.values["obstructed_p"] = result.obstructed
    report.values["kahler_verdict"] = result.kahler.verdict
    report.witnesses["metric"] = result.metric.flags()
