"""Topological invariants of smooth complete intersections X_n(d_1, ..., d_k).

All quantities are read off two generating functions evaluated against the
hyperplane class h, whose top power integrates to the degree prod(d_i):

  total Chern class  (1+h)^(n+k+1) * prod (1 + d_i h)^-1
  L-class            (h/tanh h)^(n+k+1) * prod tanh(d_i h)/(d_i h)

Betti numbers away from the middle agree with CP^n, so the middle one is
recovered from the Euler characteristic.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Optional

from joblib import Parallel, delayed

from .errors import DimensionMismatch, BadLength, NegativeBetti, OddDimension, ParityViolation, PreconditionError
from .series import TruncatedSeries, int_pow, mul, scale_variable, tanh_x_over_x, x_over_tanh_x

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Multidegree:
    """Complex dimension plus the sorted degrees, with linear sections dropped."""
    n: int
    degrees: tuple = field(default=())

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise PreconditionError(f"dimension must be a positive integer, got {self.n!r}")
        degrees = tuple(self.degrees)
        for d in degrees:
            if isinstance(d, bool) or not isinstance(d, int) or d < 1:
                raise PreconditionError(f"degrees must be integers >= 1, got {d!r}")
        object.__setattr__(self, "degrees", tuple(sorted(d for d in degrees if d != 1)))

    @classmethod
    def of(cls, n: int, degrees=()) -> "Multidegree":
        return cls(n, tuple(degrees))

    @classmethod
    def parse(cls, n: int, text: str) -> "Multidegree":
        """Read a comma separated degree list such as "2,2"; "" and "1" mean CP^n."""
        text = text.strip()
        if not text:
            return cls(n)
        try:
            degrees = [int(part) for part in text.split(",")]
        except ValueError:
            raise PreconditionError(f"degrees must be a comma separated list of integers, got {text!r}")
        return cls(n, tuple(degrees))

    @property
    def codim(self) -> int:
        return len(self.degrees)

    @property
    def degree(self) -> int:
        return prod(self.degrees)

    def label(self) -> str:
        inner = ",".join(str(d) for d in self.degrees) if self.degrees else "1"
        return f"X_{self.n}({inner})"

    def __str__(self):
        return self.label()


@dataclass(frozen=True)
class InvariantReport:
    multidegree: Multidegree
    euler: int
    betti: tuple
    signature: int
    b_plus: Optional[int]
    b_minus: Optional[int]
    i_jr: int
    c1_cnm1: Optional[int]
    c2_squared: Optional[int]
    canonical_class: str

    def to_dict(self) -> dict:
        return {
            "multidegree": {"n": self.multidegree.n, "degrees": list(self.multidegree.degrees)},
            "label": self.multidegree.label(),
            "euler": self.euler,
            "betti": list(self.betti),
            "signature": self.signature,
            "b_plus": self.b_plus,
            "b_minus": self.b_minus,
            "i_jr": self.i_jr,
            "c1_cnm1": self.c1_cnm1,
            "c2_squared": self.c2_squared,
            "canonical_class": self.canonical_class,
        }


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ParityViolation(f"{what} came out non-integral: {value}")
    return value.numerator


def _hyperplane(order: int, d: int = 1) -> TruncatedSeries:
    return TruncatedSeries.from_coeffs([1, d], order)


@lru_cache(maxsize=None)
def total_chern_series(md: Multidegree) -> TruncatedSeries:
    n = md.n
    chern = int_pow(_hyperplane(n), n + md.codim + 1)
    for d in md.degrees:
        chern = mul(chern, int_pow(_hyperplane(n, d), -1))
    return chern


def chern_coefficient(md: Multidegree, i: int) -> int:
    return _as_int(total_chern_series(md).coefficient(i), f"c_{i} of {md}")


def euler_characteristic(md: Multidegree) -> int:
    return md.degree * chern_coefficient(md, md.n)


def betti_numbers(md: Multidegree) -> list:
    n = md.n
    chi = euler_characteristic(md)
    betti = [1 if i % 2 == 0 else 0 for i in range(2 * n + 1)]
    betti[n] = chi - n if n % 2 == 0 else (n + 1) - chi
    if betti[n] < 0:
        raise NegativeBetti(f"b_{n}({md}) = {betti[n]} from euler characteristic {chi}")
    return betti


@lru_cache(maxsize=None)
def signature(md: Multidegree) -> int:
    n = md.n
    if n % 2:
        return 0
    genus = int_pow(x_over_tanh_x(n), n + md.codim + 1)
    base = tanh_x_over_x(n)
    for d in md.degrees:
        genus = mul(genus, scale_variable(base, d))
    return _as_int(md.degree * genus.coefficient(n), f"signature of {md}")


def i_jr(md: Multidegree) -> int:
    """sigma - sum (b_4i - b_4i+2), using that every even Betti number but the middle is 1."""
    n = md.n
    if n % 2:
        return 0
    b_mid = betti_numbers(md)[n]
    sign = -1 if (n // 2) % 2 else 1
    alternating = 1 + sign * (b_mid - 1)
    return signature(md) - alternating


def b_plus_minus(md: Multidegree) -> tuple:
    n = md.n
    if n % 2:
        raise OddDimension(f"{md} has odd complex dimension; the middle form is skew")
    b_mid = betti_numbers(md)[n]
    sigma = signature(md)
    if (b_mid + sigma) % 2:
        raise ParityViolation(f"b_{n} = {b_mid} and signature {sigma} differ in parity for {md}")
    b_plus, b_minus = (b_mid + sigma) // 2, (b_mid - sigma) // 2
    if b_plus < 0 or b_minus < 0:
        raise NegativeBetti(f"{md}: b+ = {b_plus}, b- = {b_minus}")
    return b_plus, b_minus


def is_positive_definite(md: Multidegree) -> bool:
    return md.n % 2 == 0 and b_plus_minus(md)[1] == 0


def c1_cnm1(md: Multidegree) -> int:
    if md.n < 2:
        raise DimensionMismatch(f"c1 c_(n-1) needs n >= 2, got {md.n}")
    return md.degree * chern_coefficient(md, 1) * chern_coefficient(md, md.n - 1)


def c2_squared(md: Multidegree) -> int:
    if md.n != 4:
        raise DimensionMismatch(f"c2^2 is a top-degree number only for n = 4, got {md.n}")
    return md.degree * chern_coefficient(md, 2) ** 2


def gs_chern_sum(betti) -> Fraction:
    """sum_p b_2p (6p(p-1) + (5n - 3n^2)/2) for a Betti list b_0..b_2n."""
    betti = list(betti)
    if len(betti) % 2 == 0:
        raise BadLength(f"a Betti list b_0..b_2n has odd length, got {len(betti)}")
    if any(b < 0 for b in betti):
        raise NegativeBetti(f"Betti numbers must be non-negative: {betti}")
    n = (len(betti) - 1) // 2
    offset = Fraction(5 * n - 3 * n * n, 2)
    return sum((betti[2 * p] * (6 * p * (p - 1) + offset) for p in range(n + 1)), Fraction(0))


def canonical_class_type(md: Multidegree) -> str:
    """Sign of K = O(sum d_i - n - k - 1), by adjunction in CP^(n+k)."""
    total, threshold = sum(md.degrees), md.n + md.codim + 1
    if total < threshold:
        return "fano"
    if total == threshold:
        return "calabi-yau"
    return "general-type"


def invariant_report(md: Multidegree) -> InvariantReport:
    betti = betti_numbers(md)
    b_plus = b_minus = None
    if md.n % 2 == 0:
        b_plus, b_minus = b_plus_minus(md)
    return InvariantReport(
        multidegree=md,
        euler=euler_characteristic(md),
        betti=tuple(betti),
        signature=signature(md),
        b_plus=b_plus,
        b_minus=b_minus,
        i_jr=i_jr(md),
        c1_cnm1=c1_cnm1(md) if md.n >= 2 else None,
        c2_squared=c2_squared(md) if md.n == 4 else None,
        canonical_class=canonical_class_type(md),
    )


def _partitions(remaining: int, smallest: int):
    yield ()
    for d in range(smallest, remaining + 1):
        for rest in _partitions(remaining - d, d):
            yield (d,) + rest


def enumerate_multidegrees(n: int, max_degree_sum: int) -> list:
    """Normalized multidegrees with every degree >= 2 and sum <= max_degree_sum, lexicographic."""
    if max_degree_sum < 0:
        raise PreconditionError(f"degree sum bound must be non-negative, got {max_degree_sum}")
    return [Multidegree(n, degrees) for degrees in sorted(_partitions(max_degree_sum, 2))]


def _scan(n: int, max_degree_sum: int, measure, target: int, workers: int) -> list:
    candidates = enumerate_multidegrees(n, max_degree_sum)
    logger.info("Scanning %d multidegrees in dimension %d (degree sum <= %d)", len(candidates), n, max_degree_sum)
    values = Parallel(n_jobs=workers)(delayed(measure)(md) for md in candidates)
    hits = []
    for md, value in zip(candidates, values):
        logger.debug("%s -> %s", md, value)
        if value == target:
            hits.append(md)
    return sorted(hits, key=lambda md: md.degrees)


def scan_jr_null(n: int, max_degree_sum: int, workers: int = 1) -> list:
    if n % 2:
        raise DimensionMismatch(f"the JR scan runs in even complex dimension, got {n}")
    return _scan(n, max_degree_sum, i_jr, 0, workers)


def scan_chi_linear(n: int, max_degree_sum: int, workers: int = 1) -> list:
    if n % 2 == 0:
        raise DimensionMismatch(f"the euler characteristic scan runs in odd complex dimension, got {n}")
    return _scan(n, max_degree_sum, euler_characteristic, n + 1, workers)


def scan_circle_candidates(n: int, max_degree_sum: int, workers: int = 1) -> list:
    """Multidegrees that survive the circle-action obstruction for actions without
    fixed components of positive dimension congruent to dim M mod 4."""
    if n % 2:
        return scan_chi_linear(n, max_degree_sum, workers)
    return scan_jr_null(n, max_degree_sum, workers)
