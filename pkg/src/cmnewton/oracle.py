"""Point counting on CM elliptic curves, used to cross-check the g = 1 case.

For a curve with CM by an imaginary quadratic field, reduction at a good
prime ``p`` is supersingular exactly when ``p`` does not split in that
field.  :func:`deuring_agreement` compares brute-force point counts with the
prediction made by the group-theoretic engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from sympy import isprime, primefactors, primerange, totient

from .cm import enumerate_cm_types, validate_cm_field
from .cyclotomic import decomposition_and_inertia, unit_group
from .errors import BadReductionPrime, NotPrime, PrimeOutOfRange, ValidationError
from .groups import trivial_subgroup
from .newton import (
    ORDINARY,
    SUPERSINGULAR,
    NewtonPolygon,
    SlopeBlock,
    classify,
    newton_polygon,
    prime_context,
)

MIN_PRIME = 5
MAX_PRIME = 100_000


@dataclass(frozen=True)
class ShortWeierstrassCurve:
    """``y^2 = x^3 + a x + b`` with CM by an imaginary quadratic subfield of
    ``Q(zeta_n)``, ``n = cm_conductor``."""

    a: int
    b: int
    cm_conductor: int
    name: str = ""

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValidationError(f"singular curve y^2 = x^3 + {self.a}x + {self.b}")

    @property
    def discriminant(self) -> int:
        return -16 * (4 * self.a ** 3 + 27 * self.b ** 2)

    @property
    def bad_primes(self) -> frozenset[int]:
        return frozenset(primefactors(self.discriminant))


CURVES = {
    "i": ShortWeierstrassCurve(-1, 0, 4, "y^2 = x^3 - x"),
    "zeta3": ShortWeierstrassCurve(0, 1, 3, "y^2 = x^3 + 1"),
}


@dataclass(frozen=True)
class ECReduction:
    p: int
    point_count: int
    trace: int
    label: str


def _check_prime(curve: ShortWeierstrassCurve, p: int):
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if not MIN_PRIME <= p <= MAX_PRIME:
        raise PrimeOutOfRange(f"p = {p} outside {MIN_PRIME}..{MAX_PRIME}")
    if p in curve.bad_primes:
        raise BadReductionPrime(f"curve has bad reduction at {p}")


def count_points(curve: ShortWeierstrassCurve, p: int) -> ECReduction:
    """``#E(F_p)`` by summing the quadratic character over all ``x``."""
    _check_prime(curve, p)
    xs = np.arange(p, dtype=np.int64)
    chi = np.full(p, -1, dtype=np.int64)
    chi[(xs * xs) % p] = 1
    chi[0] = 0
    rhs = ((xs * xs % p) * xs + curve.a * xs + curve.b) % p
    count = 1 + int(np.sum(1 + chi[rhs]))
    trace = p + 1 - count
    if trace * trace > 4 * p:
        raise AssertionError(f"Hasse bound violated at p = {p}: a_p = {trace}")
    label = SUPERSINGULAR if trace % p == 0 else ORDINARY
    return ECReduction(p, count, trace, label)


def newton_from_trace(red: ECReduction) -> NewtonPolygon:
    """Slopes of ``T^2 - a_p T + p``: both 1/2 if ``p | a_p``, else 0 and 1."""
    if red.trace % red.p == 0:
        return NewtonPolygon((SlopeBlock(Fraction(1, 2), 2),))
    return NewtonPolygon((SlopeBlock(Fraction(0), 1), SlopeBlock(Fraction(1), 1)))


def predicted_label(conductor: int, p: int) -> str:
    """Reduction type predicted from the decomposition group of ``p`` in
    the imaginary quadratic field ``Q(zeta_n)`` (``phi(n) = 2``)."""
    if totient(conductor) != 2:
        raise ValidationError(f"cm_conductor {conductor} does not give an imaginary quadratic field")
    U = unit_group(conductor)
    fld = validate_cm_field(U.group, trivial_subgroup(U.group), U.conjugation)
    cm_type = enumerate_cm_types(fld)[0]
    D, I = decomposition_and_inertia(U, p)
    return classify(newton_polygon(cm_type, prime_context(fld, D, I)))


@dataclass
class AgreementReport:
    curve: ShortWeierstrassCurve
    bound: int
    rows: list[tuple[int, int, str, str]] = field(default_factory=list)

    @property
    def mismatches(self) -> list[tuple[int, int, str, str]]:
        return [r for r in self.rows if r[2] != r[3]]

    def counts(self) -> dict[str, int]:
        out = {ORDINARY: 0, SUPERSINGULAR: 0}
        for _, _, observed, _ in self.rows:
            out[observed] += 1
        return out


def deuring_agreement(curve: ShortWeierstrassCurve, prime_bound: int) -> AgreementReport:
    """Rows ``(p, a_p, observed, predicted)`` for good primes ``5 <= p <= bound``."""
    if prime_bound > MAX_PRIME:
        raise PrimeOutOfRange(f"bound {prime_bound} > {MAX_PRIME}")
    report = AgreementReport(curve, prime_bound)
    for p in primerange(MIN_PRIME, prime_bound + 1):
        if p in curve.bad_primes:
            continue
        red = count_points(curve, p)
        report.rows.append((p, red.trace, red.label, predicted_label(curve.cm_conductor, p)))
    return report
