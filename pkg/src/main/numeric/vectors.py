"""Sparse vectors over the Gaussian rationals, keyed by basis index."""
from typing import Dict, Iterable, List, Tuple

from src.main.numeric.gaussian import GaussRational, Scalar, ZERO

Vector = Dict[int, GaussRational]


def basis_vector(index: int) -> Vector:
    return {index: GaussRational(1)}


def vec_add(a: Vector, b: Vector) -> Vector:
    result = dict(a)
    for k, c in b.items():
        value = result.get(k, ZERO) + c
        if value:
            result[k] = value
        else:
            result.pop(k, None)
    return result


def vec_scale(a: Vector, c: Scalar) -> Vector:
    c = GaussRational.coerce(c)
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def vec_sub(a: Vector, b: Vector) -> Vector:
    return vec_add(a, vec_scale(b, -1))


def vec_combine(terms: Iterable[Tuple[Scalar, Vector]]) -> Vector:
    """Return sum c_i v_i."""
    result: Vector = {}
    for c, v in terms:
        c = GaussRational.coerce(c)
        if not c:
            continue
        for k, x in v.items():
            value = result.get(k, ZERO) + c * x
            if value:
                result[k] = value
            else:
                result.pop(k, None)
    return result


def vec_conj(a: Vector) -> Vector:
    """Conjugate the coefficients only (the basis is left alone)."""
    return {k: v.conj() for k, v in a.items()}


def vec_is_zero(a: Vector) -> bool:
    return not any(a.values())


def to_dense(a: Vector, n: int) -> List[GaussRational]:
    return [a.get(k, ZERO) for k in range(n)]


def from_dense(values: Iterable[Scalar]) -> Vector:
    result: Vector = {}
    for k, v in enumerate(values):
        v = GaussRational.coerce(v)
        if v:
            result[k] = v
    return result


def vec_to_json(a: Vector) -> List[dict]:
    return [dict(index=k, **a[k].to_json()) for k in sorted(a)]
