"""p-vectors as coefficient maps, wedge construction and simplicity tests.

A p-vector is stored as a sparse map from size-p multi-indices to scalars.
Three scalar fields are supported: exact rationals ("Q", the default,
``fractions.Fraction``), exact Gaussian rationals ("Q_i",
:class:`GaussianRational`) and binary floats ("f64").  Exact fields compare
to zero exactly; the float field uses a relative tolerance: an equation
counts as violated when ``|value| > tol * max_term`` where ``max_term`` is
the largest term magnitude met while evaluating it.  The default ``tol`` is
1e-9.  For coefficients carrying relative noise of size eps, a tolerance of
``32 * eps`` is enough to keep a simple vector violation-free: the relative
form absorbs the quadratic scale of the equations, a T-term equation can
drift by at most ``2*T*eps`` relative to its largest term (T <= 10 here),
and the measured factor at the reference test point is 8.

The identities evaluated here relate basis coefficients only; no inner
product on the underlying space is involved, so no orthonormality
assumption enters the code.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .equations import EquationSystem, Label, QuadraticEquation, gen_generalized
from .multiindex import GrassmannParams, MultiIndex, as_multiindex

FIELDS = ("Q", "Q_i", "f64")

__all__ = [
    "FIELDS",
    "GaussianRational",
    "PVector",
    "Residual",
    "pvector",
    "scaled",
    "wedge",
    "evaluate",
    "residual",
    "is_simple",
    "random_pvector",
    "random_simple",
    "pvector_to_dict",
    "pvector_from_dict",
    "pvector_to_json",
    "pvector_from_json",
]


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex scalar ``re + im*i`` with rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def _coerce(value) -> "GaussianRational | None":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(Fraction(value))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        norm = other.norm_sq()
        if not norm:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def norm_sq(self) -> Fraction:
        """Exact squared modulus ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im


Scalar = Union[Fraction, GaussianRational, float]


@dataclass(frozen=True, eq=True)
class PVector:
    """Sparse coefficients of a p-vector; absent multi-indices are zero."""

    params: GrassmannParams
    coeffs: Mapping[MultiIndex, Scalar]
    field: str = "Q"

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, idx: Iterable[int]) -> Scalar:
        return self.coeffs.get(tuple(idx), _zero(self.field))


def _zero(field: str) -> Scalar:
    if field == "Q":
        return Fraction(0)
    if field == "Q_i":
        return GaussianRational(Fraction(0))
    return 0.0


def _coerce_scalar(value, field: str) -> Scalar:
    if field == "Q":
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise ValueError(f"field Q needs int/Fraction coefficients, got {type(value).__name__}")
    if field == "Q_i":
        coerced = GaussianRational._coerce(value)
        if coerced is None:
            raise ValueError(f"field Q_i cannot hold {type(value).__name__}")
        return coerced
    return float(value)


def pvector(params: GrassmannParams, coeffs: Mapping, field: str = "Q") -> PVector:
    """Validated constructor: checks key shapes, prunes stored zeros."""
    if field not in FIELDS:
        raise ValueError(f"field must be one of {FIELDS}, got {field!r}")
    cleaned: dict[MultiIndex, Scalar] = {}
    for raw_idx, value in coeffs.items():
        idx = as_multiindex(raw_idx)
        if len(idx) != params.p:
            raise ValueError(f"coefficient index {idx} must have {params.p} entries")
        if idx and idx[-1] > params.n:
            raise ValueError(f"coefficient index {idx} exceeds n={params.n}")
        scalar = _coerce_scalar(value, field)
        if scalar:
            cleaned[idx] = scalar
    return PVector(params, cleaned, field)


def scaled(h: PVector, factor) -> PVector:
    """The p-vector ``factor * h`` in the same field."""
    factor = _coerce_scalar(factor, h.field)
    if not factor:
        return PVector(h.params, {}, h.field)
    return PVector(h.params, {idx: factor * v for idx, v in h.coeffs.items()}, h.field)


def _det(rows: list[list[Scalar]]) -> Scalar:
    """Exact determinant by Gaussian elimination (partial pivoting for floats)."""
    size = len(rows)
    work = [list(r) for r in rows]
    use_abs = size and isinstance(work[0][0], float)
    sign = 1
    for col in range(size):
        pivot_row = None
        if use_abs:
            best = 0.0
            for r in range(col, size):
                if abs(work[r][col]) > best:
                    best = abs(work[r][col])
                    pivot_row = r
        else:
            for r in range(col, size):
                if work[r][col]:
                    pivot_row = r
                    break
        if pivot_row is None:
            return work[0][0] * 0 if size else 1
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            sign = -sign
        pivot = work[col][col]
        for r in range(col + 1, size):
            if not work[r][col]:
                continue
            factor = work[r][col] / pivot
            for c in range(col, size):
                work[r][c] = work[r][c] - factor * work[col][c]
    det = work[0][0]
    for d in range(1, size):
        det = det * work[d][d]
    return sign * det if sign < 0 else det


def wedge(vectors: Sequence[Sequence], n: int | None = None) -> PVector:
    """Wedge together ``p`` coordinate vectors of length ``n``.

    The coefficient at multi-index ``i`` is the p x p minor of the stacked
    vectors selecting columns ``i``; the result is simple by construction.
    The scalar field is inferred from the entries (float wins over Gaussian
    rational wins over rational).
    """
    rows = [list(v) for v in vectors]
    if not rows:
        raise ValueError("wedge needs at least one vector")
    if n is None:
        n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise ValueError(f"all vectors must have length {n}")
    p = len(rows)
    params = GrassmannParams(n, p)
    entries = [v for r in rows for v in r]
    if any(isinstance(v, float) for v in entries):
        field = "f64"
    elif any(isinstance(v, (complex, GaussianRational)) for v in entries):
        field = "Q_i"
    else:
        field = "Q"
    coerced = [[_coerce_scalar(v, field) for v in r] for r in rows]
    coeffs: dict[MultiIndex, Scalar] = {}
    for cols in combinations(range(1, n + 1), p):
        minor = _det([[row[c - 1] for c in cols] for row in coerced])
        if minor:
            coeffs[cols] = minor
    return PVector(params, coeffs, field)


def evaluate(eq: QuadraticEquation, h: PVector) -> Scalar:
    """Exact (or float) value of one equation at ``h``."""
    if eq.params != h.params:
        raise ValueError(f"equation is for {eq.params}, p-vector for {h.params}")
    total = None
    for term in eq.terms:
        a = h.coeffs.get(term.left)
        if not a:
            continue
        b = h.coeffs.get(term.right)
        if not b:
            continue
        contribution = term.coefficient * a * b
        total = contribution if total is None else total + contribution
    return total if total is not None else _zero(h.field)


class Residual(NamedTuple):
    """Largest violation magnitude plus every violated label with its value.

    The magnitude is ``abs(value)`` for rational and float fields and the
    exact squared modulus for Gaussian rationals.
    """

    max_violation: Scalar
    violations: list[tuple[Label, Scalar]]


def _scaled_int_coeffs(h: PVector) -> tuple[dict[MultiIndex, int], int]:
    # Clearing denominators keeps the zero set intact (terms are degree-2
    # homogeneous) and lets the hot loop run on machine integers.
    denominator = lcm(*(v.denominator for v in h.coeffs.values())) if h.coeffs else 1
    scaled_coeffs = {
        idx: v.numerator * (denominator // v.denominator) for idx, v in h.coeffs.items()
    }
    return scaled_coeffs, denominator


def residual(system: EquationSystem, h: PVector, tolerance: float | None = None) -> Residual:
    """Evaluate every equation of ``system`` at ``h`` and report violations.

    Exact fields report every label with a non-zero value; the float field
    reports values exceeding the relative tolerance (default 1e-9).
    """
    if system.params != h.params:
        raise ValueError(f"system is for {system.params}, p-vector for {h.params}")
    violations: list[tuple[Label, Scalar]] = []
    if h.field == "Q":
        coeffs, denominator = _scaled_int_coeffs(h)
        square = denominator * denominator
        for eq in system.equations:
            value = 0
            for term in eq.terms:
                a = coeffs.get(term.left)
                if not a:
                    continue
                b = coeffs.get(term.right)
                if not b:
                    continue
                value += term.coefficient * a * b
            if value:
                violations.append((eq.label, Fraction(value, square)))
        worst = max((abs(v) for _, v in violations), default=Fraction(0))
        return Residual(worst, violations)
    if h.field == "Q_i":
        for eq in system.equations:
            value = evaluate(eq, h)
            if value:
                violations.append((eq.label, value))
        worst = max((v.norm_sq() for _, v in violations), default=Fraction(0))
        return Residual(worst, violations)
    tol = 1e-9 if tolerance is None else float(tolerance)
    worst = 0.0
    for eq in system.equations:
        value = 0.0
        max_term = 0.0
        for term in eq.terms:
            a = h.coeffs.get(term.left)
            if not a:
                continue
            b = h.coeffs.get(term.right)
            if not b:
                continue
            contribution = term.coefficient * a * b
            value += contribution
            max_term = max(max_term, abs(contribution))
        if abs(value) > tol * max_term:
            violations.append((eq.label, value))
            worst = max(worst, abs(value))
    return Residual(worst, violations)


@lru_cache(maxsize=None)
def _cached_system(n: int, p: int, m: int) -> EquationSystem:
    return gen_generalized(GrassmannParams(n, p), m)


def _normalize_choice(system_choice: str) -> str:
    choice = system_choice.replace("-", "_").lower()
    if choice not in ("plucker", "plucker_like"):
        raise ValueError(f"system choice must be 'plucker' or 'plucker_like', got {system_choice!r}")
    return choice


def is_simple(h: PVector, system_choice: str = "plucker", tolerance: float | None = None) -> bool:
    """Decide decomposability of ``h`` under the chosen equation system.

    For the two-index system with p outside 2..n-2 the system is trivial and
    every vector passes.  The zero vector is reported simple by convention.
    """
    choice = _normalize_choice(system_choice)
    n, p = h.params.n, h.params.p
    if choice == "plucker_like":
        if not 2 <= p <= n - 2:
            return True
        m = 2
    else:
        if not 1 <= p <= n - 1:
            raise ValueError(f"one-index system needs 1 <= p <= n-1, got p={p}, n={n}")
        m = 1
    system = _cached_system(n, p, m)
    if h.field == "Q":
        coeffs, _ = _scaled_int_coeffs(h)
        for eq in system.equations:
            value = 0
            for term in eq.terms:
                a = coeffs.get(term.left)
                if not a:
                    continue
                b = coeffs.get(term.right)
                if not b:
                    continue
                value += term.coefficient * a * b
            if value:
                return False
        return True
    if h.field == "Q_i":
        return all(not evaluate(eq, h) for eq in system.equations)
    return not residual(system, h, tolerance).violations


def random_pvector(params: GrassmannParams, seed: int) -> PVector:
    """Independent small rational coefficients per multi-index; seeded."""
    rng = random.Random(seed)
    coeffs: dict[MultiIndex, Scalar] = {}
    for idx in combinations(params.indices, params.p):
        value = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if value:
            coeffs[idx] = value
    return PVector(params, coeffs, "Q")


def random_simple(params: GrassmannParams, seed: int) -> PVector:
    """Wedge of p random vectors with small rational entries; seeded."""
    rng = random.Random(seed)
    vectors = [
        [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(params.n)]
        for _ in range(params.p)
    ]
    return wedge(vectors)


def _fraction_from_text(text) -> Fraction:
    if not isinstance(text, str):
        raise ValueError(f"exact coefficients must be 'num/den' strings, got {text!r}")
    return Fraction(text)


def pvector_to_dict(h: PVector) -> dict:
    entries = []
    for idx in sorted(h.coeffs):
        value = h.coeffs[idx]
        entry: dict = {"idx": list(idx)}
        if h.field == "Q":
            entry["re"] = str(value)
        elif h.field == "Q_i":
            entry["re"] = str(value.re)
            if value.im:
                entry["im"] = str(value.im)
        else:
            entry["re"] = float(value)
        entries.append(entry)
    return {"n": h.params.n, "p": h.params.p, "field": h.field, "coeffs": entries}


def pvector_from_dict(data: dict) -> PVector:
    try:
        params = GrassmannParams(int(data["n"]), int(data["p"]))
        field = data["field"]
        entries = data["coeffs"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed p-vector JSON: {exc}") from exc
    if field not in FIELDS:
        raise ValueError(f"field must be one of {FIELDS}, got {field!r}")
    coeffs: dict[MultiIndex, Scalar] = {}
    for entry in entries:
        idx = as_multiindex(entry["idx"])
        if idx in coeffs:
            raise ValueError(f"duplicate coefficient index {idx}")
        if field == "Q":
            value: Scalar = _fraction_from_text(entry["re"])
        elif field == "Q_i":
            value = GaussianRational(
                _fraction_from_text(entry["re"]),
                _fraction_from_text(entry["im"]) if "im" in entry else Fraction(0),
            )
        else:
            value = float(entry["re"])
        if value:
            coeffs[idx] = value
    return pvector(params, coeffs, field)


def pvector_to_json(h: PVector) -> str:
    import json

    return json.dumps(pvector_to_dict(h), indent=2) + "\n"


def pvector_from_json(text: str) -> PVector:
    import json

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON: {exc}") from exc
    return pvector_from_dict(data)
