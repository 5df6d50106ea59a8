"""Fixed point data of Hamiltonian circle actions and the identities it must satisfy.

A dataset lists the connected fixed components of a circle action on a closed
symplectic 2n-manifold M. Each component carries its own Betti numbers and
signature plus `lam`, HALF the Morse-Bott index of the Hamiltonian along it
(equivalently the number of negative normal weights). From these the Betti
numbers and signature of M localize:

  b_i(M)   = sum_F b_(i - 2 lam_F)(F)
  sigma(M) = sum_F (-1)^lam_F sigma(F)

and so does I_JR = sigma - sum (b_4i - b_4i+2), over the components whose
dimension is a positive multiple of 4.
"""

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import prod
from typing import Optional

from .errors import BadLength, DimensionMismatch, NonPositiveLevel, NonPositiveWeight, ParityViolation, PreconditionError

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass(frozen=True)
class FixedComponent:
    dim: int
    betti: tuple
    signature: int
    lam: int
    moment_value: Optional[Fraction] = None
    weights: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "betti", tuple(self.betti))
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(self.weights))
        if self.moment_value is not None:
            object.__setattr__(self, "moment_value", Fraction(self.moment_value))

    def normal_rank(self, half_dim: int) -> int:
        """Complex rank of the normal bundle, the largest admissible lam."""
        return half_dim - self.dim // 2

    def euler(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.betti))

    def i_jr(self) -> int:
        return i_jr_direct(self.betti, self.signature)


@dataclass(frozen=True)
class FixedPointData:
    half_dim: int
    components: tuple
    monotone: bool = False
    spin: Optional[bool] = None

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: str
    components: tuple = ()

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail,
                "components": list(self.components)}


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple = field(default=())

    @property
    def ok(self) -> bool:
        return not any(check.failed for check in self.checks)

    def get(self, name: str) -> CheckResult:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def failed_names(self) -> list:
        return [check.name for check in self.checks if check.failed]

    def extend(self, checks) -> "ValidationReport":
        return ValidationReport(self.checks + tuple(checks))

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": [check.to_dict() for check in self.checks]}


def localize_betti(fpd: FixedPointData) -> list:
    top = 2 * fpd.half_dim
    betti = [0] * (top + 1)
    for component in fpd.components:
        shift = 2 * component.lam
        for j, b in enumerate(component.betti):
            if 0 <= j + shift <= top:
                betti[j + shift] += b
    return betti


def localize_signature(fpd: FixedPointData) -> int:
    return sum((-1) ** component.lam * component.signature for component in fpd.components)


def euler_characteristic(fpd: FixedPointData) -> int:
    return sum(component.euler() for component in fpd.components)


def _even_alternating_sum(betti) -> int:
    return sum((-1) ** j * b for j, b in enumerate(betti[0::2]))


def i_jr_direct(betti, signature: int) -> int:
    betti = list(betti)
    if len(betti) % 2 == 0:
        raise BadLength(f"a Betti list b_0..b_2n has odd length, got {len(betti)}")
    return signature - _even_alternating_sum(betti)


def i_jr_localized(fpd: FixedPointData) -> int:
    # points and components of dimension 2 mod 4 contribute zero
    return sum((-1) ** component.lam * component.i_jr()
               for component in fpd.components
               if component.dim > 0 and component.dim % 4 == 0)


def dlemma_value(b2_plus: int) -> int:
    if b2_plus < 0:
        raise PreconditionError(f"b2+ must be non-negative, got {b2_plus}")
    return 2 * b2_plus - 2


def dlemma_component(component: FixedComponent) -> int:
    """I_JR of a 4-dimensional component through its positive part b2+ = (b2 + sigma)/2."""
    if component.dim != 4:
        raise DimensionMismatch(f"expected a 4-dimensional component, got dimension {component.dim}")
    b2 = component.betti[2]
    if (b2 + component.signature) % 2:
        raise ParityViolation(f"b2 = {b2} and signature {component.signature} differ in parity")
    return dlemma_value((b2 + component.signature) // 2)


def reverse(fpd: FixedPointData) -> FixedPointData:
    """The same data for the inverse circle: indices complement, weights and moment flip sign."""
    n = fpd.half_dim
    flipped = []
    for component in fpd.components:
        flipped.append(replace(
            component,
            lam=component.normal_rank(n) - component.lam,
            moment_value=None if component.moment_value is None else -component.moment_value,
            weights=None if component.weights is None else tuple(-w for w in component.weights),
        ))
    return replace(fpd, components=tuple(flipped))


def _component_problems(component: FixedComponent, n: int) -> list:
    problems = []
    dim = component.dim
    if dim < 0 or dim % 2:
        return [f"dimension {dim} is not a non-negative even integer"]
    if dim > 2 * n:
        problems.append(f"dimension {dim} exceeds ambient dimension {2 * n}")
    betti = component.betti
    if len(betti) != dim + 1:
        return problems + [f"expected {dim + 1} Betti numbers, got {len(betti)}"]
    if any(b < 0 for b in betti):
        problems.append("negative Betti number")
    if betti[0] != 1:
        problems.append(f"b_0 = {betti[0]}, a component is connected")
    if any(betti[i] != betti[dim - i] for i in range(dim + 1)):
        problems.append("Betti numbers violate Poincare duality")
    sigma = component.signature
    if dim == 0:
        if sigma != 1:
            problems.append(f"a point has signature 1, got {sigma}")
    elif dim % 4:
        if sigma != 0:
            problems.append(f"signature must vanish in dimension {dim}, got {sigma}")
    elif abs(sigma) > betti[dim // 2]:
        problems.append(f"|signature| = {abs(sigma)} exceeds middle Betti number {betti[dim // 2]}")
    rank = component.normal_rank(n)
    if not 0 <= component.lam <= rank:
        problems.append(f"lambda = {component.lam} outside 0..{rank}")
    if component.weights is not None:
        weights = component.weights
        if len(weights) != rank:
            problems.append(f"expected {rank} normal weights, got {len(weights)}")
        if any(w == 0 for w in weights):
            problems.append("zero normal weight")
        negatives = sum(1 for w in weights if w < 0)
        if negatives != component.lam:
            problems.append(f"{negatives} negative weights but lambda = {component.lam}")
    return problems


def _check_components(fpd):
    n = fpd.half_dim
    details, bad = [], []
    for index, component in enumerate(fpd.components):
        problems = _component_problems(component, n)
        if problems:
            bad.append(index)
            details.append(f"component {index}: " + ", ".join(problems))
    if bad:
        return CheckResult("component-invariants", FAIL, "; ".join(details), tuple(bad))
    return CheckResult("component-invariants", PASS, f"{len(fpd.components)} components consistent")


def _check_ambient_duality(fpd):
    betti = localize_betti(fpd)
    top = len(betti) - 1
    broken = [i for i in range(top + 1) if betti[i] != betti[top - i]]
    if broken:
        return CheckResult("ambient-duality", FAIL,
                           f"localized Betti numbers {betti} are not symmetric in degrees {broken}")
    return CheckResult("ambient-duality", PASS, f"localized Betti numbers {betti}")


def _check_unique_extrema(fpd):
    n = fpd.half_dim
    minima = [i for i, c in enumerate(fpd.components) if c.lam == 0]
    maxima = [i for i, c in enumerate(fpd.components) if c.lam == c.normal_rank(n)]
    if len(minima) == 1 and len(maxima) == 1:
        return CheckResult("unique-extrema", PASS, f"minimum is component {minima[0]}, maximum is component {maxima[0]}")
    detail = f"{len(minima)} components with lambda = 0 and {len(maxima)} with lambda = n - dim/2"
    offending = sorted(set(minima if len(minima) != 1 else []) | set(maxima if len(maxima) != 1 else []))
    return CheckResult("unique-extrema", FAIL, detail, tuple(offending))


def _has_moments(fpd) -> bool:
    return all(c.moment_value is not None for c in fpd.components)


def _check_morse_bound(fpd):
    if not _has_moments(fpd):
        return CheckResult("morse-bound", SKIPPED, "moment values missing")
    details, bad = [], []
    for index, component in enumerate(fpd.components):
        bound = sum(other.dim // 2 + 1 for other in fpd.components
                    if other.moment_value < component.moment_value)
        if component.lam > bound:
            bad.append(index)
            details.append(f"component {index}: lambda = {component.lam} > {bound}")
    if bad:
        return CheckResult("morse-bound", FAIL, "; ".join(details), tuple(bad))
    return CheckResult("morse-bound", PASS, "every lambda bounded by the components below it")


def _check_extremal_neighbours(fpd):
    if not _has_moments(fpd):
        return CheckResult("extremal-neighbours", SKIPPED, "moment values missing")
    n = fpd.half_dim
    components = fpd.components
    values = [c.moment_value for c in components]
    low, high = min(values), max(values)
    bottom = [i for i, v in enumerate(values) if v == low]
    top = [i for i, v in enumerate(values) if v == high]
    isolated = (len(bottom) == 1 and components[bottom[0]].dim == 0
                and len(top) == 1 and components[top[0]].dim == 0)
    if not isolated:
        return CheckResult("extremal-neighbours", PASS, "vacuous: an extremum is not an isolated point")
    internal = [i for i, v in enumerate(values) if low < v < high]
    if not internal:
        return CheckResult("extremal-neighbours", PASS, "vacuous: no internal components")
    lowest = min(values[i] for i in internal)
    highest = max(values[i] for i in internal)
    details, bad = [], []
    for i in internal:
        component = components[i]
        if values[i] == lowest and component.lam != 1:
            bad.append(i)
            details.append(f"component {i} is lowest internal with lambda = {component.lam}, expected 1")
        expected = component.normal_rank(n) - 1
        if values[i] == highest and component.lam != expected:
            bad.append(i)
            details.append(f"component {i} is highest internal with lambda = {component.lam}, expected {expected}")
    if bad:
        return CheckResult("extremal-neighbours", FAIL, "; ".join(details), tuple(sorted(set(bad))))
    return CheckResult("extremal-neighbours", PASS, "lowest and highest internal components have the forced indices")


def _check_weight_sum(fpd):
    if not fpd.monotone:
        return CheckResult("weight-sum-normalization", SKIPPED, "data not flagged monotone")
    if not _has_moments(fpd) or any(c.weights is None for c in fpd.components):
        return CheckResult("weight-sum-normalization", SKIPPED, "weights or moment values missing")
    constants = [c.moment_value + sum(c.weights) for c in fpd.components]
    if len(set(constants)) == 1:
        return CheckResult("weight-sum-normalization", PASS, f"H(F) + sum of weights = {constants[0]} on every component")
    reference = constants[0]
    bad = tuple(i for i, value in enumerate(constants) if value != reference)
    listing = ", ".join(str(value) for value in constants)
    return CheckResult("weight-sum-normalization", FAIL, f"H(F) + sum of weights varies: {listing}", bad)


def _check_extremal_weight_signs(fpd):
    n = fpd.half_dim
    minima = [i for i, c in enumerate(fpd.components) if c.lam == 0 and c.weights is not None]
    maxima = [i for i, c in enumerate(fpd.components) if c.lam == c.normal_rank(n) and c.weights is not None]
    if not minima and not maxima:
        return CheckResult("extremal-weight-signs", SKIPPED, "no weights at the extrema")
    bad = [i for i in minima if any(w <= 0 for w in fpd.components[i].weights)]
    bad += [i for i in maxima if any(w >= 0 for w in fpd.components[i].weights)]
    if bad:
        return CheckResult("extremal-weight-signs", FAIL,
                           "weights must be positive at the minimum and negative at the maximum",
                           tuple(sorted(set(bad))))
    return CheckResult("extremal-weight-signs", PASS, "weights point up at the minimum and down at the maximum")


_CHECKS = (
    _check_components,
    _check_ambient_duality,
    _check_unique_extrema,
    _check_morse_bound,
    _check_extremal_neighbours,
    _check_weight_sum,
    _check_extremal_weight_signs,
)


def validate(fpd: FixedPointData) -> ValidationReport:
    checks = tuple(check(fpd) for check in _CHECKS)
    for check in checks:
        if check.failed:
            logger.warning("Check %s failed: %s", check.name, check.detail)
    return ValidationReport(checks)


def check_unimodal_8(fpd: FixedPointData) -> CheckResult:
    if fpd.half_dim != 4:
        raise DimensionMismatch(f"the b2 <= b4 check is for 8-manifolds, got dimension {2 * fpd.half_dim}")
    four = [i for i, c in enumerate(fpd.components) if c.dim == 4]
    extremal = [i for i in four if fpd.components[i].lam != 1]
    if extremal:
        return CheckResult("unimodal-8", SKIPPED, "a 4-dimensional component is extremal", tuple(extremal))
    betti = localize_betti(fpd)
    if betti[2] <= betti[4]:
        return CheckResult("unimodal-8", PASS, f"b2 = {betti[2]} <= b4 = {betti[4]}")
    return CheckResult("unimodal-8", FAIL, f"b2 = {betti[2]} > b4 = {betti[4]}")


def check_positive_definite_8(fpd: FixedPointData) -> CheckResult:
    """With b2 = 1 in dimension 8 every 4-dimensional component has b2+ = 1,
    so I_JR vanishes and the intersection form is positive definite."""
    if fpd.half_dim != 4:
        raise DimensionMismatch(f"the positive definiteness check is for 8-manifolds, got dimension {2 * fpd.half_dim}")
    betti = localize_betti(fpd)
    if betti[2] != 1:
        return CheckResult("positive-definite-8", SKIPPED, f"b2 = {betti[2]}, not 1")
    bad = [i for i, c in enumerate(fpd.components) if c.dim == 4 and c.i_jr() != 0]
    if bad:
        return CheckResult("positive-definite-8", FAIL, "4-dimensional components with nonzero I_JR", tuple(bad))
    sigma = localize_signature(fpd)
    if sigma != betti[4]:
        return CheckResult("positive-definite-8", FAIL, f"signature {sigma} differs from b4 = {betti[4]}")
    return CheckResult("positive-definite-8", PASS, f"signature {sigma} = b4, intersection form positive definite")


def check_inequalities(fpd: FixedPointData) -> list:
    n = fpd.half_dim
    betti = localize_betti(fpd)
    four_k = tuple(i for i, c in enumerate(fpd.components) if c.dim > 0 and c.dim % 4 == 0)
    return [_betti_inequality(n, betti, four_k), _unimodal_12(fpd, betti), _signature_mod_16(fpd, betti, four_k)]


def _betti_inequality(n, betti, four_k):
    name = "betti-inequality"
    if four_k:
        return CheckResult(name, SKIPPED, "fixed components of positive dimension divisible by 4", four_k)
    if n % 2:
        return CheckResult(name, SKIPPED, "dimension not divisible by 4")
    total = _even_alternating_sum(betti[:n + 1])
    if n % 4 == 0:
        status = PASS if total > 0 else FAIL
        return CheckResult(name, status, f"1 - b2 + b4 - ... + b{n} = {total}, must be > 0")
    status = PASS if total <= 0 else FAIL
    return CheckResult(name, status, f"1 - b2 + b4 - ... - b{n} = {total}, must be <= 0")


def _unimodal_12(fpd, betti):
    name = "unimodal-12"
    if fpd.half_dim != 6:
        return CheckResult(name, SKIPPED, "not a 12-manifold")
    if betti[2] != 1:
        return CheckResult(name, SKIPPED, f"b2 = {betti[2]}, not 1")
    blocking = tuple(i for i, c in enumerate(fpd.components) if c.dim in (4, 8))
    if blocking:
        return CheckResult(name, SKIPPED, "4- or 8-dimensional fixed components", blocking)
    evens = betti[0:7:2]
    status = PASS if all(a <= b for a, b in zip(evens, evens[1:])) else FAIL
    return CheckResult(name, status, "b0 <= b2 <= b4 <= b6: " + " <= ".join(str(b) for b in evens))


def _signature_mod_16(fpd, betti, four_k):
    name = "signature-mod-16"
    n = fpd.half_dim
    if n % 4 != 2:
        return CheckResult(name, SKIPPED, "complex dimension not 2 mod 4")
    if not fpd.spin:
        return CheckResult(name, SKIPPED, "not flagged spin")
    if four_k:
        return CheckResult(name, SKIPPED, "fixed components of positive dimension divisible by 4", four_k)
    if any(betti[i] != 1 for i in range(0, 2 * n + 1, 2) if i != n):
        return CheckResult(name, SKIPPED, "off-middle even Betti numbers are not all 1")
    status = PASS if betti[n] % 16 == 2 else FAIL
    return CheckResult(name, status, f"b{n} = {betti[n]} = {betti[n] % 16} mod 16, must be 2")


def reduced_volume_linear(weights, x) -> Fraction:
    """Volume x^(n-1) / prod(w) of the level-x reduced space of C^n with positive weights."""
    weights = list(weights)
    if not weights:
        raise PreconditionError("the linear model needs at least one weight")
    if any(w <= 0 for w in weights):
        raise NonPositiveWeight(f"weights must be positive, got {weights}")
    x = Fraction(x)
    if x <= 0:
        raise NonPositiveLevel(f"level must be positive, got {x}")
    return x ** (len(weights) - 1) / prod(weights)


def reduced_volume_near_minimum(fpd: FixedPointData, level) -> Fraction:
    minima = [c for c in fpd.components if c.lam == 0]
    if len(minima) != 1 or minima[0].dim != 0:
        raise PreconditionError("the minimum must be a single isolated fixed point")
    minimum = minima[0]
    if minimum.weights is None or minimum.moment_value is None:
        raise PreconditionError("the minimum needs weights and a moment value")
    return reduced_volume_linear(minimum.weights, Fraction(level) - minimum.moment_value)
