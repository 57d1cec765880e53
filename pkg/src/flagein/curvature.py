"""Ricci curvature of invariant metrics on K/T and the Kaehler-Einstein metric.

An invariant metric is one positive scale per isotropy summand (per positive
root).  The Ricci component on the summand of alpha is

    r_alpha = 1/(2 x_alpha)
              + (1/8) sum_{beta,gamma} (x_alpha / (x_beta x_gamma)) c[alpha; beta gamma]
              - (1/4) sum_{beta,gamma} (x_gamma / (x_alpha x_beta)) c[gamma; alpha beta]

with both sums over ordered pairs of positive roots, so each stored unordered
triple contributes two ordered terms to each sum.  One evaluation routine
serves exact rationals, binary64 floats, and symbolic Laurent entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import DomainError
from .isotropy import TripleTensor, triple_tensor
from .polyalg.poly import LaurentPoly
from .rootsys import (
    RootSystemSpec,
    delta_weight,
    killing_form,
    pair_weight_root,
    positive_roots,
    weyl_orbit_permutations,
)

Scalar = Fraction | float


@dataclass(frozen=True)
class InvariantMetric:
    """Positive scale x_alpha per positive root, exact or float."""

    x: tuple[Scalar, ...]

    def __post_init__(self):
        if not self.x:
            raise DomainError("metric needs at least one summand")

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.x)

    def require_positive(self):
        if not all(v > 0 for v in self.x):
            raise DomainError(f"metric entries must be positive: {self.x}")

    @classmethod
    def exact(cls, values) -> "InvariantMetric":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def floating(cls, values) -> "InvariantMetric":
        return cls(tuple(float(v) for v in values))


@dataclass(frozen=True)
class RicciComponents:
    """Per-summand Ricci values and the scalar curvature 2 * sum r_i."""

    r: tuple[Scalar, ...]
    scalar_curvature: Scalar


@dataclass(frozen=True)
class EinsteinSolution:
    """A candidate Einstein metric with its classification data."""

    metric: InvariantMetric
    k: Scalar
    kaehler: bool
    isometry_class: str
    provenance: str  # "algebraic" | "numeric"
    residual: Scalar


def _ricci_values(x, triples: TripleTensor):
    """Shared evaluation core; x entries may be Fraction, float, or LaurentPoly."""
    s = len(x)
    r = [Fraction(1, 2) / x[i] for i in range(s)]
    eighth = Fraction(1, 8)
    quarter = Fraction(1, 4)
    for (i, j, k), c in triples.entries:
        for a, b, d in ((i, j, k), (j, i, k), (k, i, j)):
            # ordered pairs (b, d) and (d, b) contribute equally to both sums
            r[a] = r[a] + 2 * eighth * c * (x[a] / (x[b] * x[d]))
            r[a] = r[a] - quarter * c * (x[d] / (x[a] * x[b]) + x[b] / (x[a] * x[d]))
    return r


def ricci(metric: InvariantMetric, triples: TripleTensor) -> RicciComponents:
    """Ricci components of an invariant metric; exactness follows the input."""
    metric.require_positive()
    if len(metric.x) != len(triples.dims):
        raise DomainError("metric length does not match the isotropy decomposition")
    values = _ricci_values(list(metric.x), triples)
    scalar = sum(2 * v for v in values)
    return RicciComponents(r=tuple(values), scalar_curvature=scalar)


def ricci_symbolic(spec: RootSystemSpec, variables: tuple[str, ...] | None = None) -> list[LaurentPoly]:
    """Ricci components with the metric entries as symbols x1..xs."""
    s = len(positive_roots(spec))
    variables = variables or tuple(f"x{i + 1}" for i in range(s))
    if len(variables) != s:
        raise DomainError("need one variable per positive root")
    xs = [LaurentPoly.variable(v, variables) for v in variables]
    return _ricci_values(xs, triple_tensor(spec))


def einstein_residual(metric: InvariantMetric, triples: TripleTensor) -> tuple[Scalar, Scalar]:
    """(k estimate, residual): k is the mean Ricci component, the residual is
    the worst spread max r_i - min r_i (zero exactly when Einstein)."""
    components = ricci(metric, triples)
    s = len(components.r)
    k = sum(components.r) / s
    residual = max(components.r) - min(components.r)
    return k, residual


@lru_cache(maxsize=None)
def kaehler_einstein_metric(spec: RootSystemSpec) -> InvariantMetric:
    """The metric with components 2 (delta, alpha), rescaled to coprime integers."""
    form = killing_form(spec)
    delta = delta_weight(spec)
    raw = [2 * pair_weight_root(delta, alpha, form) for alpha in positive_roots(spec)]
    denominator_lcm = 1
    for v in raw:
        denominator_lcm = denominator_lcm * v.denominator // gcd(denominator_lcm, v.denominator)
    ints = [v * denominator_lcm for v in raw]
    shared = 0
    for v in ints:
        shared = gcd(shared, v.numerator)
    return InvariantMetric.exact([v / shared for v in ints])


def is_kaehler(
    metric: InvariantMetric,
    spec: RootSystemSpec,
    tol: float = 1e-8,
) -> tuple[bool, tuple[int, ...] | None]:
    """Whether some Weyl-induced permutation of the metric is proportional to
    the Kaehler-Einstein metric; returns the witnessing permutation."""
    metric.require_positive()
    reference = kaehler_einstein_metric(spec).x
    exact = metric.is_exact
    for sigma in weyl_orbit_permutations(spec):
        permuted = [metric.x[sigma[i]] for i in range(len(sigma))]
        ratios = [p / q for p, q in zip(permuted, reference)]
        if exact:
            if all(v == ratios[0] for v in ratios):
                return True, sigma
        else:
            base = float(ratios[0])
            if all(abs(float(v) - base) <= tol * abs(base) for v in ratios):
                return True, sigma
    return False, None


def apply_permutation(sigma: tuple[int, ...], values: tuple) -> tuple:
    """Transport a coordinate vector along an index permutation."""
    return tuple(values[sigma[i]] for i in range(len(sigma)))
