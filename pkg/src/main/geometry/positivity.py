import itertools
import logging
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from src.main.errors import InvalidExponent, NotRealForm, NotType11
from src.main.geometry.forms import Coframe, ExtForm, wedge
from src.main.numeric.gaussian import GaussRational, I, ONE, Scalar, ZERO
from src.main.numeric.matrix import ExactMatrix, hermitian_signature

log = logging.getLogger(__name__)


class Definiteness(Enum):
    POSITIVE_DEFINITE = "PositiveDefinite"
    NEGATIVE_DEFINITE = "NegativeDefinite"
    POSITIVE_SEMIDEF = "PositiveSemiDef"
    NEGATIVE_SEMIDEF = "NegativeSemiDef"
    ZERO = "Zero"
    INDEFINITE = "Indefinite"

    @property
    def semidefinite(self) -> bool:
        """True for every single-sign class except Zero."""
        return self not in (Definiteness.ZERO, Definiteness.INDEFINITE)

    def flipped(self) -> "Definiteness":
        swap = {
            Definiteness.POSITIVE_DEFINITE: Definiteness.NEGATIVE_DEFINITE,
            Definiteness.NEGATIVE_DEFINITE: Definiteness.POSITIVE_DEFINITE,
            Definiteness.POSITIVE_SEMIDEF: Definiteness.NEGATIVE_SEMIDEF,
            Definiteness.NEGATIVE_SEMIDEF: Definiteness.POSITIVE_SEMIDEF,
        }
        return swap.get(self, self)


def classify_signature(signature: Tuple[int, int, int]) -> Definiteness:
    pos, neg, zero = signature
    if pos and neg:
        return Definiteness.INDEFINITE
    if pos:
        return Definiteness.POSITIVE_SEMIDEF if zero else Definiteness.POSITIVE_DEFINITE
    if neg:
        return Definiteness.NEGATIVE_SEMIDEF if zero else Definiteness.NEGATIVE_DEFINITE
    return Definiteness.ZERO


@dataclass
class Form11Report:
    """f = i Σ h_jk η^j ∧ conj(η^k) with h conjugate-symmetric."""
    matrix: ExactMatrix
    rank: int
    signature: Tuple[int, int, int]

    @property
    def classification(self) -> Definiteness:
        return classify_signature(self.signature)

    def to_json(self) -> dict:
        return {"matrix": self.matrix.to_json(), "rank": self.rank,
                "signature": list(self.signature), "classification": self.classification.value}


def report_from_matrix(matrix: ExactMatrix) -> Form11Report:
    if not matrix.is_hermitian():
        raise NotRealForm("Matrix is not conjugate-symmetric")
    signature = hermitian_signature(matrix)
    return Form11Report(matrix, signature[0] + signature[1], signature)


def diagonal_report(entries: Sequence[Scalar]) -> Form11Report:
    return report_from_matrix(ExactMatrix.diagonal(entries))


def herm_rep(form: ExtForm) -> Form11Report:
    """
    Raises:
        NotType11: if the form is not of pure type (1,1)
        NotRealForm: if conj(form) != form
    """
    n = form.coframe.n
    if form and form.bidegree != (1, 1):
        raise NotType11(f"Expected a (1,1)-form, got bidegrees {form.bidegrees()}")
    if not form.is_real():
        raise NotRealForm("Form is not real")
    rows = [[ZERO] * n for _ in range(n)]
    for (j, kbar), value in form.terms.items():
        rows[j][kbar - n] = value * (-I)
    return report_from_matrix(ExactMatrix(rows))


def hermitian_form(coframe: Coframe, matrix: ExactMatrix) -> ExtForm:
    """i Σ h_jk η^j ∧ conj(η^k)."""
    n = coframe.n
    terms = {}
    for j in range(n):
        for k in range(n):
            if matrix[j, k]:
                terms[(j, k + n)] = matrix[j, k] * I
    return ExtForm(coframe, terms)


@dataclass
class PowerSignReport:
    entries: List[GaussRational]
    exponent: int
    classification: Definiteness
    nonzero_subset_count: int
    positive_count: int = 0
    negative_count: int = 0

    def to_json(self) -> dict:
        return {"entries": [str(e) for e in self.entries], "exponent": self.exponent,
                "classification": self.classification.value,
                "nonzero_subset_count": self.nonzero_subset_count,
                "positive_count": self.positive_count, "negative_count": self.negative_count}


def power_semidefiniteness(diag: Sequence[Scalar], j: int) -> PowerSignReport:
    """
    Classify the j-th wedge power of a diagonal real (1,1)-form by the signs of
    all size-j products of its nonzero diagonal entries.

    Raises:
        InvalidExponent: unless 1 <= j <= len(diag)
    """
    entries = [GaussRational.coerce(x) for x in diag]
    if not 1 <= j <= len(entries):
        raise InvalidExponent(f"Exponent {j} outside 1..{len(entries)}")
    if any(not e.is_real() for e in entries):
        raise NotRealForm("Diagonal entries must be real")
    nonzero = [e.re for e in entries if e]
    positive = negative = 0
    for subset in itertools.combinations(nonzero, j):
        product = Fraction(1)
        for x in subset:
            product *= x
        if product > 0:
            positive += 1
        else:
            negative += 1
    if positive and negative:
        kind = Definiteness.INDEFINITE
    elif positive:
        kind = Definiteness.POSITIVE_SEMIDEF
    elif negative:
        kind = Definiteness.NEGATIVE_SEMIDEF
    else:
        kind = Definiteness.ZERO
    return PowerSignReport(entries, j, kind, positive + negative, positive, negative)


@dataclass
class FalsifierResult:
    verdict: str
    samples: int
    witness: Optional[List[List[GaussRational]]] = None
    pairing: Optional[GaussRational] = None

    @property
    def falsified(self) -> bool:
        return self.verdict == "Falsified"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "samples": self.samples,
                "witness": None if self.witness is None else [[str(c) for c in w] for w in self.witness],
                "pairing": None if self.pairing is None else str(self.pairing)}


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 4))


def _random_covector(rng: random.Random, n: int) -> List[GaussRational]:
    return [GaussRational(_random_rational(rng), _random_rational(rng)) for _ in range(n)]


def _decomposable(coframe: Coframe, covectors: List[List[GaussRational]]) -> ExtForm:
    """Π_r i γ_r ∧ conj(γ_r) for (1,0)-covectors γ_r given by coefficients."""
    n = coframe.n
    result = ExtForm(coframe, {(): ONE})
    for coeffs in covectors:
        gamma = ExtForm(coframe, {(j,): c for j, c in enumerate(coeffs)})
        result = wedge(result, wedge(gamma, gamma.conj()).scale(I))
    return result


def volume_form(coframe: Coframe) -> ExtForm:
    return _decomposable(coframe, [[ONE if j == k else ZERO for j in range(coframe.n)]
                                   for k in range(coframe.n)])


def transversality_falsifier(form: ExtForm, trials: int = 32, seed: int = 0) -> FalsifierResult:
    """
    Pair a real (p,p)-form with decomposable strongly positive complementary forms.

    Coordinate-aligned samples come first, then `trials` random ones. Any nonzero
    sample pairing to a non-positive multiple of the volume falsifies
    transversality.

    Raises:
        NotType11: if the form is not of pure type (p,p)
        NotRealForm: if the form is not real
    """
    coframe = form.coframe
    n = coframe.n
    bidegree = form.bidegree
    if bidegree is None or bidegree[0] != bidegree[1]:
        raise NotType11(f"Expected a (p,p)-form, got bidegrees {form.bidegrees()}")
    if not form.is_real():
        raise NotRealForm("Form is not real")
    p = bidegree[0]
    vol = volume_form(coframe).coefficient(tuple(range(2 * n)))
    rng = random.Random(seed)
    aligned = [[[ONE if j == k else ZERO for j in range(n)] for k in subset]
               for subset in itertools.combinations(range(n), n - p)]
    randoms = ([_random_covector(rng, n) for _ in range(n - p)] for _ in range(trials))
    samples = 0
    for covectors in itertools.chain(aligned, randoms):
        theta = _decomposable(coframe, covectors)
        if not theta:
            continue
        samples += 1
        pairing = wedge(form, theta).coefficient(tuple(range(2 * n))) / vol
        if not pairing.is_real() or pairing.re <= 0:
            log.debug("Transversality falsified after %d samples", samples)
            return FalsifierResult("Falsified", samples, covectors, pairing)
    return FalsifierResult("Undetermined", samples)
