"""Dense polynomials over GF(q): Horner evaluation and Lagrange interpolation.

Coefficients are stored lowest degree first as canonical ``int`` residues.
Interpolation goes through barycentric weights, which are cached per
abscissa set because every scheme evaluates at the fixed points 1..n.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import lru_cache

from .errors import DuplicateAbscissa, IncompleteTail, ModulusMismatch
from .gf import FieldElement, check_prime, inv_int


@dataclass(frozen=True)
class DensePolynomial:
    """``coeffs[i]`` is the coefficient of ``x**i``; the zero polynomial is ``()``."""

    coeffs: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        check_prime(self.modulus)
        c = [v % self.modulus for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_elements(cls, coeffs: Sequence[FieldElement]) -> DensePolynomial:
        if not coeffs:
            raise ValueError("cannot infer the modulus of an empty coefficient list")
        q = coeffs[0].modulus
        if any(c.modulus != q for c in coeffs):
            raise ModulusMismatch("coefficients from different fields")
        return cls(tuple(c.value for c in coeffs), q)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> FieldElement:
        v = self.coeffs[i] if i < len(self.coeffs) else 0
        return FieldElement(v, self.modulus)

    def padded(self, length: int) -> tuple[int, ...]:
        """Coefficient tuple zero-extended (never truncated) to ``length``."""
        return self.coeffs + (0,) * max(0, length - len(self.coeffs))

    def __call__(self, x: FieldElement | int) -> FieldElement:
        return evaluate(self, x)


def horner(coeffs: Sequence[int], x: int, q: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % q
    return acc


def evaluate(p: DensePolynomial, x: FieldElement | int) -> FieldElement:
    if isinstance(x, FieldElement):
        if x.modulus != p.modulus:
            raise ModulusMismatch(f"GF({p.modulus}) polynomial at GF({x.modulus}) point")
        x = x.value
    return FieldElement(horner(p.coeffs, x, p.modulus), p.modulus)


@lru_cache(maxsize=1024)
def barycentric_weights(xs: tuple[int, ...], q: int) -> tuple[int, ...]:
    """``w_i = 1 / prod_{j != i} (x_i - x_j)``; raises on repeated abscissas."""
    if len(set(xs)) != len(xs):
        raise DuplicateAbscissa(f"abscissas {xs} are not distinct mod {q}")
    weights = []
    for i, xi in enumerate(xs):
        denom = 1
        for j, xj in enumerate(xs):
            if i != j:
                denom = denom * (xi - xj) % q
        weights.append(inv_int(denom, q))
    return tuple(weights)


@lru_cache(maxsize=1024)
def _master(xs: tuple[int, ...], q: int) -> tuple[int, ...]:
    # coefficients of prod (x - x_i), lowest degree first
    m = [1]
    for xi in xs:
        nxt = [0] * (len(m) + 1)
        for i, c in enumerate(m):
            nxt[i] = (nxt[i] - xi * c) % q
            nxt[i + 1] = (nxt[i + 1] + c) % q
        m = nxt
    return tuple(m)


def interpolate_ints(xs: Sequence[int], ys: Sequence[int], q: int) -> list[int]:
    """Coefficients (length ``len(xs)``) of the unique fitting polynomial."""
    t = len(xs)
    if t == 0:
        raise ValueError("need at least one point")
    xs = tuple(x % q for x in xs)
    weights = barycentric_weights(xs, q)
    master = _master(xs, q)
    out = [0] * t
    for xi, yi, wi in zip(xs, ys, weights):
        scale = yi * wi % q
        if scale == 0:
            continue
        # synthetic division of the master polynomial by (x - xi)
        carry = 0
        for deg in range(t, 0, -1):
            carry = (master[deg] + carry * xi) % q
            out[deg - 1] = (out[deg - 1] + scale * carry) % q
    return out


def _split_points(points) -> tuple[list[int], list[int], int]:
    xs, ys, moduli = [], [], set()
    for x, y in points:
        moduli.add(x.modulus)
        moduli.add(y.modulus)
        xs.append(x.value)
        ys.append(y.value)
    if len(moduli) != 1:
        raise ModulusMismatch(f"points span fields {sorted(moduli)}")
    return xs, ys, moduli.pop()


def interpolate(points: Iterable[tuple[FieldElement, FieldElement]]) -> DensePolynomial:
    """Lagrange interpolation through ``(x, y)`` pairs of field elements."""
    points = list(points)
    if not points:
        raise ValueError("need at least one point")
    xs, ys, q = _split_points(points)
    return DensePolynomial(tuple(interpolate_ints(xs, ys, q)), q)


def interpolate_tail_ints(
    xs: Sequence[int], ys: Sequence[int], tail: Mapping[int, int], t: int, q: int
) -> list[int]:
    """Recover a polynomial whose coefficients of degree >= ``t`` are given.

    The tail's contribution is subtracted from every ``y`` and the residual,
    of degree below ``t``, is interpolated from exactly ``t`` points.
    """
    if len(xs) != t:
        raise ValueError(f"expected exactly {t} points, got {len(xs)}")
    if any(x % q == 0 for x in xs):
        raise ValueError("evaluation points must be nonzero")
    if any(e < t for e in tail):
        raise IncompleteTail(f"tail degrees {sorted(tail)} overlap the unknown range 0..{t - 1}")
    top = max(tail, default=t - 1)
    missing = [e for e in range(t, top + 1) if e not in tail]
    if missing:
        raise IncompleteTail(f"tail lacks degrees {missing}")
    high = [0] * t + [tail[e] % q for e in range(t, top + 1)]
    residual = [(y - horner(high, x, q)) % q for x, y in zip(xs, ys)]
    low = interpolate_ints(xs, residual, q)
    return low + high[t:]


def interpolate_with_known_tail(
    points: Sequence[tuple[FieldElement, FieldElement]],
    tail: Mapping[int, FieldElement],
    t: int,
) -> DensePolynomial:
    xs, ys, q = _split_points(points)
    for v in tail.values():
        if v.modulus != q:
            raise ModulusMismatch("tail coefficient from a different field")
    coeffs = interpolate_tail_ints(xs, ys, {e: v.value for e, v in tail.items()}, t, q)
    return DensePolynomial(tuple(coeffs), q)
