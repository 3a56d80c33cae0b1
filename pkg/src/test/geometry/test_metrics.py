import random
from fractions import Fraction

import pytest

from src.main.errors import NotAFrame, NotPositiveDefinite
from src.main.geometry.complex_structures import build_nonregular_q, build_sl3_family
from src.main.geometry.forms import Coframe
from src.main.geometry.metrics import (HermMetric, balanced_basis_sl2m1, balanced_frame_criterion,
                                       kahler_feasibility, metric_report, obstructed_range,
                                       obstructed_set, obstruction_scan, real_11_basis)
from src.main.geometry.positivity import Definiteness
from src.main.geometry.reductive import sl2_product_structure
from src.main.lie.algebra import LieAlgebra
from src.main.lie.real_forms import Involution
from src.main.numeric.gaussian import GaussRational, ONE
from src.main.numeric.matrix import ExactMatrix
from src.main.numeric.vectors import vec_scale, vec_sub


def test_metric_must_be_positive_definite(sl3_block):
    with pytest.raises(NotPositiveDefinite):
        HermMetric.diagonal(sl3_block, [1, 1, 0, 1])
    with pytest.raises(NotPositiveDefinite):
        HermMetric(sl3_block, ExactMatrix([[1, 2, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    with pytest.raises(ValueError):
        HermMetric(sl3_block, ExactMatrix.identity(2))


def test_flat_metric_has_every_property():
    report = metric_report(HermMetric.identity(Coframe.abelian(3)))
    assert all(report.flags().values())
    assert not report.residuals


def test_implication_chain_on_random_diagonal_metrics():
    coframe = Coframe.from_structure(sl2_product_structure(3))
    rng = random.Random(43)
    for _ in range(50):
        entries = [Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(coframe.n)]
        report = metric_report(HermMetric.diagonal(coframe, entries))
        assert report.implications_hold(coframe.n)
        assert not report.kahler


def test_sl3_block_metric_is_not_kahler(sl3_block):
    report = metric_report(HermMetric.identity(sl3_block))
    assert not report.kahler
    assert not report.pluriclosed
    assert "kahler" in report.residuals


@pytest.mark.parametrize("m", [2, 3, 4])
def test_balanced_frame(m, request):
    frame = balanced_basis_sl2m1(m, request.getfixturevalue(f"forms{m}"))
    assert not frame.residual()
    assert set(frame.corrections) == {f"kappa{j}" for j in range(1, m)} | {"c"}
    assert len(frame.vectors) == frame.structure.dim


@pytest.mark.parametrize("m", [2, 3, 4])
def test_balanced_frame_breaks_under_perturbation(m, request):
    forms = request.getfixturevalue(f"forms{m}")
    frame = balanced_basis_sl2m1(m, forms)
    for key in frame.corrections:
        perturbed = dict(frame.corrections)
        perturbed[key] = perturbed[key] + Fraction(1, 7)
        assert balanced_basis_sl2m1(m, forms, corrections=perturbed).residual(), key


def test_balanced_frame_normalization(forms2):
    frame = balanced_basis_sl2m1(2, forms2)
    # c(H1 + 2H2) with c = -1/3, and e0 + 6 e_{α2}
    assert frame.normalized() == {"cartan_correction": {"H1": "-1/3", "H2": "-2/3"},
                                  "e0_coefficient": "6"}
    assert frame.to_json()["normalized"] == frame.normalized()


def test_balanced_criterion_agrees_with_metric_report(forms2):
    frame = balanced_basis_sl2m1(2, forms2)
    rng = random.Random(11)
    for _ in range(20):
        scales = [Fraction(rng.randint(1, 3), rng.randint(1, 3)) for _ in frame.vectors]
        vectors = [vec_scale(v, s) for v, s in zip(frame.vectors, scales)]
        balanced = not balanced_frame_criterion(frame.structure, vectors)
        coframe = Coframe.from_structure(frame.structure, vectors)
        assert metric_report(HermMetric.identity(coframe)).balanced == balanced
    coframe = Coframe.from_structure(frame.structure, frame.vectors)
    assert metric_report(HermMetric.identity(coframe)).balanced
    perturbed = dict(frame.corrections)
    perturbed["c"] = perturbed["c"] + Fraction(1, 7)
    broken = balanced_basis_sl2m1(2, forms2, corrections=perturbed)
    assert broken.residual()
    coframe = Coframe.from_structure(broken.structure, broken.vectors)
    assert not metric_report(HermMetric.identity(coframe)).balanced


def test_balanced_frame_criterion_needs_a_basis(forms2):
    q = build_nonregular_q(2, forms2)
    with pytest.raises(NotAFrame):
        balanced_frame_criterion(q, q.q_basis[:3])
    with pytest.raises(NotAFrame):
        balanced_frame_criterion(q, [q.q_basis[0]] * 4)


@pytest.mark.parametrize("lam", ["0", "1/2", "i/2"])
def test_family_frame_is_balanced(lam):
    structure = build_sl3_family(GaussRational.parse(lam))
    u, x, y, z = (structure.vector(label) for label in ("u", "x", "y", "z"))
    assert not balanced_frame_criterion(structure, [u, x, vec_sub(x, y), z])


def test_obstructed_range():
    assert obstructed_range(11, 7) == [4, 5, 6, 7, 8, 9, 10]
    assert obstructed_range(4, 6) == [1, 2, 3]
    assert obstructed_range(5, 1) == [4]


def test_pluriclosed_obstructions_on_sl3_block(sl3_block):
    records = obstruction_scan(sl3_block, candidates=[])
    ddbar = obstructed_set(records, "ddbar")
    assert 1 in ddbar and 2 in ddbar
    assert all(r.classification == Definiteness.POSITIVE_SEMIDEF for r in records)


def test_scan_skips_non_unimodular_algebras():
    # [x, y] = y and its conjugate copy
    algebra = LieAlgebra(["x", "y", "xb", "yb"], {(0, 1): {1: ONE}, (2, 3): {3: ONE}})
    swap = Involution(algebra, [{2: ONE}, {3: ONE}, {0: ONE}, {1: ONE}], antilinear=True)
    coframe = Coframe(algebra, [{0: ONE}, {1: ONE}], swap)
    assert obstruction_scan(coframe) == []


def test_real_11_basis_is_real():
    coframe = Coframe.abelian(2)
    basis = real_11_basis(coframe)
    assert len(basis) == 4
    assert all(form.is_real() and h.is_hermitian() for form, h in basis)


def test_kahler_feasibility():
    assert kahler_feasibility(Coframe.abelian(2)).verdict == "feasible"
    product = Coframe.from_structure(sl2_product_structure(2))
    assert kahler_feasibility(product).verdict == "infeasible"


def _random_metric(rng, coframe):
    # diagonally dominant, hence positive definite
    n = coframe.n
    rows = [[GaussRational(0)] * n for _ in range(n)]
    for j in range(n):
        rows[j][j] = GaussRational(Fraction(rng.randint(2 * n, 2 * n + 9), 1))
        for k in range(j + 1, n):
            z = GaussRational(rng.randint(-1, 1), rng.randint(-1, 1))
            rows[j][k], rows[k][j] = z, z.conj()
    return HermMetric(coframe, ExactMatrix(rows))


def _refuted_flags(record, n):
    flags = set()
    for p in record.obstructed:
        if record.kind == "exact":
            if p == 1:
                flags.add("kahler")
            if p == n - 1:
                flags.add("balanced")
        else:
            if p == 1:
                flags.add("pluriclosed")
            if n > 2 and p == n - 2:
                flags.add("astheno")
    return flags


@pytest.mark.parametrize("name", ["sl3_block", "sl2_product"])
def test_obstructions_hold_on_random_metrics(name, request):
    if name == "sl3_block":
        coframe = request.getfixturevalue("sl3_block")
    else:
        coframe = Coframe.from_structure(sl2_product_structure(3))
    refuted = set()
    for record in obstruction_scan(coframe):
        refuted |= _refuted_flags(record, coframe.n)
    assert refuted
    rng = random.Random(2024)
    for _ in range(50):
        flags = metric_report(_random_metric(rng, coframe)).flags()
        assert not any(flags[f] for f in refuted), refuted
