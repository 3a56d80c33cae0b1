"""
Weight calculus on the full flag manifold SU(N)/T.

Invariant 2-forms are combinations of the commuting, square-zero generators
ω_{j,l} (1 <= j < l <= N), ordered lexicographically; the fundamental weights
ᾱ_j = e_1 + ... + e_j give 1-forms whose differentials are diagonal in them.
"""
import csv
import io
import json
import logging
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, TextIO, Tuple

from joblib import Parallel, delayed

from src.main.errors import (DegenerateDenominator, DegreeMismatch, InvalidParameter,
                             NoPositiveSolution, StructureError)
from src.main.geometry.metrics import obstructed_range
from src.main.geometry.positivity import (Definiteness, PowerSignReport, diagonal_report,
                                          power_semidefiniteness)
from src.main.lie.sl import build_sl

log = logging.getLogger(__name__)

_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*a(\d+)")


@dataclass(frozen=True)
class WeightCombo:
    """β = Σ B_j ᾱ_j on SU(N)/T."""
    n: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n - 1:
            raise InvalidParameter(f"Need {self.n - 1} coefficients for N={self.n}, got {len(self.coeffs)}")

    @classmethod
    def of(cls, *coeffs) -> "WeightCombo":
        return cls(len(coeffs) + 1, tuple(Fraction(c) for c in coeffs))

    def partial_sums(self) -> List[Fraction]:
        """B̃_0 = 0, B̃_1, ..., B̃_{N-1}."""
        sums = [Fraction(0)]
        for c in self.coeffs:
            sums.append(sums[-1] + c)
        return sums

    def __add__(self, other: "WeightCombo") -> "WeightCombo":
        if other.n != self.n:
            raise InvalidParameter(f"Cannot add combos for N={self.n} and N={other.n}")
        return WeightCombo(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "WeightCombo":
        return WeightCombo(self.n, tuple(Fraction(c) * x for x in self.coeffs))

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs, start=1):
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{mag}a{j}")
        text = "".join(parts).lstrip("+")
        return text or "0"


def parse_weight_combo(text: str, n: int = 5) -> WeightCombo:
    """
    Parse "a1-3a4", "a2 - a3" or "1/2a1+a2" into a WeightCombo; "0" is the zero combo.

    Raises:
        InvalidParameter: if the text is malformed or names a weight outside 1..N-1
    """
    compact = text.replace(" ", "")
    coeffs = [Fraction(0)] * (n - 1)
    if compact == "0":
        return WeightCombo(n, tuple(coeffs))
    position = 0
    for match in _TERM.finditer(compact):
        if match.start() != position or (position and not match.group(1)):
            raise InvalidParameter(f"Malformed weight combination '{text}'")
        sign, mag, index = match.groups()
        j = int(index)
        if not 1 <= j <= n - 1:
            raise InvalidParameter(f"Weight a{j} outside 1..{n - 1}")
        value = Fraction(mag) if mag else Fraction(1)
        coeffs[j - 1] += -value if sign == "-" else value
        position = match.end()
    if position != len(compact) or not compact:
        raise InvalidParameter(f"Malformed weight combination '{text}'")
    return WeightCombo(n, tuple(coeffs))


def fundamental_weights(n: int, verify: bool = True) -> List[Tuple[int, ...]]:
    """
    ᾱ_j = e_1 + ... + e_j in the coordinates e_1..e_N.

    With verify, checks 2(ᾱ_j, α_l)/(α_l, α_l) = δ_jl for the pairing induced by
    the Killing form, i.e. evaluation on the B-duals H_{α_l}.

    Raises:
        StructureError: if the pairing test fails
    """
    weights = [tuple(1 if k < j else 0 for k in range(n)) for j in range(1, n)]
    if verify:
        sl = build_sl(n)
        rs = sl.root_system
        for l in range(1, n):
            dual = sl.dual_vector(rs.simple_root(l)).vector
            norm = sl.evaluate_root(rs.simple_root(l), dual)
            for j, w in enumerate(weights, start=1):
                # a weight in e-coordinates takes w_k - w_{k+1} on h_k
                value = sum((c * (w[k] - w[k + 1]) for k, c in dual.items()), Fraction(0))
                if 2 * value / norm != (1 if j == l else 0):
                    raise StructureError(f"Fundamental weight a{j} fails the pairing with alpha_{l}")
    return weights


def generator_pairs(n: int) -> List[Tuple[int, int]]:
    return [(j, l) for j in range(1, n + 1) for l in range(j + 1, n + 1)]


@dataclass(frozen=True)
class DiagTwoForm:
    """Σ c_{j,l} ω_{j,l} over the lexicographically ordered generators."""
    n: int
    coeffs: Tuple[Fraction, ...]

    def coefficient(self, j: int, l: int) -> Fraction:
        return self.coeffs[generator_pairs(self.n).index((j, l))]

    @property
    def rank(self) -> int:
        return sum(1 for c in self.coeffs if c)

    def __add__(self, other: "DiagTwoForm") -> "DiagTwoForm":
        return DiagTwoForm(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "DiagTwoForm":
        return DiagTwoForm(self.n, tuple(Fraction(c) * x for x in self.coeffs))

    def classification(self) -> Definiteness:
        return diagonal_report(self.coeffs).classification

    def to_json(self) -> dict:
        return {f"{j},{l}": str(c) for (j, l), c in zip(generator_pairs(self.n), self.coeffs)}


def dbeta(beta: WeightCombo) -> DiagTwoForm:
    """Coefficient of ω_{j,l} is B̃_{l-1} - B̃_{j-1}."""
    sums = beta.partial_sums()
    return DiagTwoForm(beta.n, tuple(sums[l - 1] - sums[j - 1] for j, l in generator_pairs(beta.n)))


def wedge_power_topform(forms: Sequence[Tuple[DiagTwoForm, int]]) -> Fraction:
    """
    Coefficient of Π ω_{j,l} in Π_i (form_i)^{e_i}.

    Each generator goes to exactly one factor; the sum over assignments is
    weighted by Π e_i! from expanding the powers.

    Raises:
        DegreeMismatch: if the exponents do not add up to the number of generators
    """
    if not forms:
        raise DegreeMismatch("No forms given")
    size = len(forms[0][0].coeffs)
    if sum(e for _, e in forms) != size or any(len(f.coeffs) != size for f, _ in forms):
        raise DegreeMismatch(f"Exponents must add up to {size}")
    states: Dict[Tuple[int, ...], Fraction] = {tuple(e for _, e in forms): Fraction(1)}
    for g in range(size):
        following: Dict[Tuple[int, ...], Fraction] = {}
        for remaining, value in states.items():
            for i, (form, _) in enumerate(forms):
                c = form.coeffs[g]
                if not remaining[i] or not c:
                    continue
                key = remaining[:i] + (remaining[i] - 1,) + remaining[i + 1:]
                following[key] = following.get(key, Fraction(0)) + value * c
        states = following
    total = states.get(tuple(0 for _ in forms), Fraction(0))
    for _, e in forms:
        total *= math.factorial(e)
    return total


def kahler_class(n: int) -> WeightCombo:
    """ω_K = d(ᾱ_1 + ... + ᾱ_{N-1})."""
    return WeightCombo(n, tuple(Fraction(1) for _ in range(n - 1)))


def astheno_c2(beta1: WeightCombo, beta2: WeightCombo, omega_k: Optional[WeightCombo] = None) -> Fraction:
    """
    c^2 = -[(dβ_1)^2 ∧ ω_K^{G-2}] / [(dβ_2)^2 ∧ ω_K^{G-2}], G the number of generators.

    Raises:
        DegenerateDenominator: if the denominator vanishes
        NoPositiveSolution: if c^2 <= 0
    """
    omega_k = omega_k or kahler_class(beta1.n)
    dk = dbeta(omega_k)
    rest = len(dk.coeffs) - 2
    denominator = wedge_power_topform([(dbeta(beta2), 2), (dk, rest)])
    if not denominator:
        raise DegenerateDenominator(f"(d{beta2})^2 pairs to zero with the Kahler class")
    numerator = wedge_power_topform([(dbeta(beta1), 2), (dk, rest)])
    value = -numerator / denominator
    if value <= 0:
        raise NoPositiveSolution(value)
    return value


@dataclass
class ScanRecord:
    a: int
    c: int
    entries: Tuple[Fraction, ...]
    classification: Definiteness
    rank: int
    obstructed: List[int] = field(default_factory=list)
    powers: Dict[int, Definiteness] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"A": self.a, "C": self.c, "entries": [str(e) for e in self.entries],
                "classification": self.classification.value, "rank": self.rank,
                "obstructed": list(self.obstructed),
                "powers": {str(j): kind.value for j, kind in sorted(self.powers.items())}}


def classify_combo(beta: WeightCombo, a: int = 0, c: int = 0) -> ScanRecord:
    """
    Classify dβ; semi-definite forms of rank k obstruct p in {n-k..n-1}, and for
    indefinite forms every semi-definite power j obstructs p = n - j, where
    n = G + 1 counts the generators plus the fiber direction.
    """
    form = dbeta(beta)
    n = len(form.coeffs) + 1
    report = diagonal_report(form.coeffs)
    kind = report.classification
    record = ScanRecord(a, c, form.coeffs, kind, report.rank)
    if kind.semidefinite:
        record.obstructed = obstructed_range(n, report.rank)
    elif kind == Definiteness.INDEFINITE:
        for j in range(2, len(form.coeffs) + 1):
            power = power_semidefiniteness(form.coeffs, j)
            if power.classification.semidefinite:
                record.powers[j] = power.classification
        record.obstructed = sorted(n - j for j in record.powers)
    return record


def _scan_row(beta1: WeightCombo, beta2: WeightCombo, a: int, bound: int) -> List[ScanRecord]:
    return [classify_combo(beta1.scale(a) + beta2.scale(c), a, c)
            for c in range(-bound, bound + 1) if a or c]


def semidef_scan(beta1: WeightCombo, beta2: WeightCombo, bound: int = 10, jobs: int = 1) -> List[ScanRecord]:
    """
    Classify d(Aβ_1 + Cβ_2) for all integers |A|, |C| <= bound, not both zero,
    in (A, C) order.

    Raises:
        InvalidParameter: if bound < 1
    """
    if bound < 1:
        raise InvalidParameter(f"Scan range must be at least 1, got {bound}")
    chunks = Parallel(n_jobs=jobs)(delayed(_scan_row)(beta1, beta2, a, bound)
                                   for a in range(-bound, bound + 1))
    records = [r for chunk in chunks for r in chunk]
    log.info("Scanned %d combinations of %s and %s", len(records), beta1, beta2)
    return records


def scan_summary(records: Sequence[ScanRecord]) -> dict:
    semidefinite = [r for r in records if r.classification.semidefinite]
    best = max(semidefinite, key=lambda r: (r.rank, -abs(r.a) - abs(r.c)), default=None)
    return {
        "count": len(records),
        "semidefinite_count": len(semidefinite),
        "max_semidefinite_rank": best.rank if best else 0,
        "max_semidefinite_at": [best.a, best.c] if best else None,
        "obstructed_by_forms": sorted({p for r in semidefinite for p in r.obstructed}),
        "obstructed_by_powers": sorted({p for r in records if r.powers for p in r.obstructed}),
    }


def power_report(beta: WeightCombo, j: int) -> PowerSignReport:
    return power_semidefiniteness(dbeta(beta).coeffs, j)


def scan_to_csv(records: Sequence[ScanRecord], stream: Optional[TextIO] = None) -> str:
    """Write A, C, classification, rank, obstructed_p rows; returns the CSV text."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["A", "C", "classification", "rank", "obstructed_p"])
    for r in records:
        writer.writerow([r.a, r.c, r.classification.value, r.rank, ";".join(str(p) for p in r.obstructed)])
    text = buffer.getvalue()
    if stream is not None:
        stream.write(text)
    return text


def scan_to_json(records: Sequence[ScanRecord]) -> str:
    return json.dumps([r.to_json() for r in records], sort_keys=True, indent=2)
