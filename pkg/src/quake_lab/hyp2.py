"""Numerically robust isometries of the hyperbolic plane (upper half-plane model).

An orientation-preserving isometry is held as a scaled projective matrix
``e**log_scale * [[m11, m12], [m21, m22]]``.  The stored entries are kept at
unit max-magnitude and the represented matrix at unit determinant, so the
log-scale channel absorbs entry growth that would otherwise overflow doubles
(compositions whose honest entries reach e**10000 stay exact projectively).

Near-parabolic elements carry their trace excess ``|tr| - 2`` through a
dedicated channel: lengths of order 1e-150 survive with full relative
precision, which the plain matrix entries cannot deliver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ConstructionError, DomainError

INF = math.inf

# |tr| within this of 2 is classified parabolic (deterministic under roundoff)
PARABOLIC_TRACE_TOL = 1e-12


def arccosh_excess(u: float) -> float:
    """arccosh(1 + u) evaluated without cancellation for tiny u >= 0."""
    if u < 0.0:
        raise DomainError(f"arccosh argument below 1: excess {u}")
    return math.log1p(u + math.sqrt(u * (2.0 + u)))


@dataclass(frozen=True)
class TranslationLength:
    """Length of a hyperbolic translation with a high-precision excess channel.

    ``excess`` stores |tr| - 2; ``value`` always equals
    2*arccosh(1 + excess/2) when excess is the authoritative channel.
    """

    value: float
    excess: float

    @classmethod
    def from_excess(cls, excess: float) -> "TranslationLength":
        if excess < 0.0:
            if excess < -PARABOLIC_TRACE_TOL:
                raise DomainError(f"negative trace excess {excess}: elliptic element")
            excess = 0.0
        return cls(value=2.0 * arccosh_excess(excess / 2.0), excess=excess)

    @classmethod
    def from_value(cls, value: float) -> "TranslationLength":
        if value < 0.0:
            raise DomainError(f"negative translation length {value}")
        # 2 cosh(v/2) - 2 = 4 sinh(v/4)^2
        return cls(value=value, excess=4.0 * math.sinh(value / 4.0) ** 2)


@dataclass(frozen=True)
class Geodesic:
    """Oriented geodesic by boundary endpoints, from k1 toward k2.

    Endpoints are extended reals; optional log-magnitude fields carry exact
    scale information when the float endpoints are at the edge of (or beyond)
    double range.
    """

    k1: float
    k2: float
    log_neg_k1: float | None = None
    log_k2: float | None = None

    def __post_init__(self):
        if self.k1 == self.k2:
            raise DomainError(f"geodesic endpoints coincide: {self.k1}")

    def crosses_vertical(self) -> bool:
        return self.k1 < 0.0 < self.k2

    def height(self) -> float:
        """Height at which the geodesic crosses the vertical axis: sqrt(-k1*k2)."""
        if not self.crosses_vertical():
            raise DomainError(f"geodesic ({self.k1}, {self.k2}) does not cross the vertical")
        return math.sqrt(-self.k1 * self.k2)


@dataclass(frozen=True)
class Isometry:
    """Scaled projective 2x2 matrix; see module docstring.

    ``trace_excess`` optionally caches |tr| - 2 with full precision when the
    constructor knows it exactly (e.g. translations built from a length).
    """

    m11: float
    m12: float
    m21: float
    m22: float
    log_scale: float
    trace_excess: float | None = None

    @property
    def entries(self) -> tuple[float, float, float, float]:
        return (self.m11, self.m12, self.m21, self.m22)

    def trace_magnitude_log(self) -> float:
        """log(|trace|) of the represented matrix; -inf for traceless."""
        t = abs(self.m11 + self.m22)
        if t == 0.0:
            return -INF
        return self.log_scale + math.log(t)


IDENTITY = Isometry(1.0, 0.0, 0.0, 1.0, 0.0)


def isometry(m11: float, m12: float, m21: float, m22: float,
             trace_excess: float | None = None) -> Isometry:
    """Normalize raw entries into the scaled representation.

    The input matrix must have positive determinant (orientation preserving);
    its overall scale is projectively irrelevant.  Stored entries come out
    with max magnitude 1 and the represented matrix e**s * M has unit
    determinant, i.e. det(M) * e**(2s) == 1.
    """
    entries = (m11, m12, m21, m22)
    c = max(abs(v) for v in entries)
    if c == 0.0 or not math.isfinite(c):
        raise ConstructionError(f"degenerate matrix entries {entries}")
    m = [m11 / c, m12 / c, m21 / c, m22 / c]
    det = m[0] * m[3] - m[1] * m[2]
    if det <= 0.0:
        raise ConstructionError(
            f"matrix with non-positive determinant is not an "
            f"orientation-preserving isometry: entries {entries}")
    s = -0.5 * math.log(det)
    peak = max(range(4), key=lambda i: abs(m[i]))
    if m[peak] < 0.0:
        m = [-v for v in m]
    return Isometry(m[0], m[1], m[2], m[3], s, trace_excess)


def compose(a: Isometry, b: Isometry) -> Isometry:
    """Isometry acting as a applied after b (matrix product, renormalized)."""
    m11 = a.m11 * b.m11 + a.m12 * b.m21
    m12 = a.m11 * b.m12 + a.m12 * b.m22
    m21 = a.m21 * b.m11 + a.m22 * b.m21
    m22 = a.m21 * b.m12 + a.m22 * b.m22
    c = max(abs(m11), abs(m12), abs(m21), abs(m22))
    if c == 0.0 or not math.isfinite(c):
        raise ConstructionError("composition produced a degenerate matrix")
    return Isometry(m11 / c, m12 / c, m21 / c, m22 / c,
                    a.log_scale + b.log_scale + math.log(c))


def inverse(t: Isometry) -> Isometry:
    """Inverse via the adjugate.

    Uses the maintained invariant det(M) * e**(2s) = 1, so no determinant is
    computed; this stays exact even when det(M) underflows for huge scales.
    """
    return Isometry(t.m22, -t.m12, -t.m21, t.m11, t.log_scale, t.trace_excess)


def apply_boundary(t: Isometry, x: float) -> float:
    """Projective action on the boundary line (extended reals)."""
    if x == INF or x == -INF:
        if t.m21 == 0.0:
            return INF
        return t.m11 / t.m21
    num = t.m11 * x + t.m12
    den = t.m21 * x + t.m22
    if den == 0.0:
        return INF
    return num / den


def apply_interior(t: Isometry, z: complex) -> complex:
    """Moebius action on an interior point of the upper half-plane."""
    return (t.m11 * z + t.m12) / (t.m21 * z + t.m22)


def _matrix_excess(t: Isometry) -> float:
    """|tr| - 2 of the represented matrix, from the entry channel."""
    tm = abs(t.m11 + t.m22)
    if tm == 0.0:
        return -2.0
    # e**s * tm - 2 == 2 * expm1(s + log(tm / 2))
    e = t.log_scale + math.log(tm / 2.0)
    if e > 700.0:
        return INF
    return 2.0 * math.expm1(e)


def trace_excess(t: Isometry) -> float:
    """Authoritative |tr| - 2: the cached channel when present, else entries."""
    if t.trace_excess is not None:
        return t.trace_excess
    return _matrix_excess(t)


def classify(t: Isometry) -> str:
    """'hyperbolic', 'parabolic' (within tolerance), or 'elliptic'."""
    u = trace_excess(t)
    if u > 0.0:
        return "hyperbolic"
    if u >= -PARABOLIC_TRACE_TOL:
        return "parabolic"
    return "elliptic"


def translation_length(t: Isometry) -> TranslationLength:
    """Translation length 2*arccosh(|tr|/2) through the excess channel."""
    u = trace_excess(t)
    if u == INF:
        # far beyond double range for cosh: 2 arccosh(T/2) -> 2 log T
        return TranslationLength(value=2.0 * t.trace_magnitude_log(), excess=INF)
    if u < -PARABOLIC_TRACE_TOL:
        raise DomainError(f"elliptic isometry (|tr| - 2 = {u}) has no translation length")
    if u < 0.0:
        u = 0.0
    return TranslationLength.from_excess(u)


def axis_endpoints(t: Isometry) -> Geodesic:
    """Repelling and attracting fixed points of a hyperbolic isometry.

    The larger-magnitude root comes from the explicit quadratic formula and
    the smaller from the product of roots, which keeps tiny endpoints at full
    relative precision.
    """
    kind = classify(t)
    if kind != "hyperbolic":
        raise DomainError(f"axis endpoints undefined for {kind} isometry")
    a, b, c, d = t.m11, t.m12, t.m21, t.m22
    det = math.exp(-2.0 * t.log_scale)
    if c == 0.0:
        if a == d:
            raise DomainError("no finite axis data for this normal form")
        fixed = [b / (d - a), INF]
    else:
        # fixed points solve c k^2 + (d - a) k - b = 0
        bb = d - a
        disc = (a + d) ** 2 - 4.0 * det
        if disc <= 0.0:
            raise DomainError("fixed-point discriminant not positive")
        sq = math.sqrt(disc)
        if bb >= 0.0:
            big = (-bb - sq) / (2.0 * c)
        else:
            big = (-bb + sq) / (2.0 * c)
        if big == 0.0:
            raise DomainError("degenerate fixed-point configuration")
        small = (-b / c) / big
        fixed = [big, small]

    def log_abs_derivative(k: float) -> float:
        # Moebius derivative at fixed point k: det(M) / (c k + d)^2
        if k == INF:
            base = abs(a)
            if base == 0.0:
                return INF
            return -2.0 * t.log_scale - 2.0 * math.log(base)
        base = abs(c * k + d)
        if base == 0.0:
            return INF
        return -2.0 * t.log_scale - 2.0 * math.log(base)

    k_a, k_b = fixed
    # attracting fixed point has |derivative| < 1
    if log_abs_derivative(k_a) < 0.0:
        attracting, repelling = k_a, k_b
    else:
        attracting, repelling = k_b, k_a
    return Geodesic(k1=repelling, k2=attracting)


def translation_along(g: Geodesic, m: float) -> Isometry:
    """Hyperbolic translation with axis g, attracting endpoint k2, length m >= 0."""
    if m < 0.0:
        raise DomainError(f"translation length must be nonnegative, got {m}")
    return _translation_signed(g, m)


def _translation_signed(g: Geodesic, m: float) -> Isometry:
    """Translation along g by signed length m (negative moves toward k1)."""
    lam = math.exp(m / 2.0)
    excess = 4.0 * math.sinh(m / 4.0) ** 2
    p, q = g.k1, g.k2
    if p == INF or p == -INF:
        # repelling at infinity: z -> z/lam^2 + q (1 - 1/lam^2)-style affine map
        return isometry(1.0 / lam, q * (lam - 1.0 / lam), 0.0, lam,
                        trace_excess=excess)
    if q == INF or q == -INF:
        return isometry(lam, -p * (lam - 1.0 / lam), 0.0, 1.0 / lam,
                        trace_excess=excess)
    den = q - p
    return isometry((q * lam - p / lam) / den, -p * q * (lam - 1.0 / lam) / den,
                    (lam - 1.0 / lam) / den, (q / lam - p * lam) / den,
                    trace_excess=excess)


def angle_with_vertical(g: Geodesic) -> float:
    """Angle in (0, pi) between the upward vertical and g oriented k1 -> k2.

    cos(theta) = (k1 + k2) / (k2 - k1); theta == pi/2 exactly when the
    crossing is orthogonal (k1 + k2 == 0).
    """
    if not (g.k1 < 0.0 < g.k2) or g.k2 == INF or g.k1 == -INF:
        raise DomainError(
            f"angle with the vertical needs finite endpoints k1 < 0 < k2, got ({g.k1}, {g.k2})")
    c = (g.k1 + g.k2) / (g.k2 - g.k1)
    c = min(1.0, max(-1.0, c))
    return math.acos(c)


def half_turn(x: float, y: float) -> Isometry:
    """Rotation by pi about the interior point x + iy."""
    if y <= 0.0:
        raise DomainError(f"half-turn center must be interior, got y={y}")
    return isometry(x / y, -(x * x + y * y) / y, 1.0 / y, -x / y)


def rotation_at_i(theta: float) -> Isometry:
    """Rotation by theta about the point i (counterclockwise positive)."""
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return isometry(c, s, -s, c)


def vertical_translation(t: float) -> Isometry:
    """Translation by t along the vertical axis: z -> e**t z."""
    half = t / 2.0
    if abs(half) > 350.0:
        # keep entries in range; the scale channel carries the size
        return Isometry(1.0, 0.0, 0.0, math.exp(-2.0 * abs(half)), abs(half),
                        trace_excess=INF) if t > 0 else Isometry(
                            math.exp(-2.0 * abs(half)), 0.0, 0.0, 1.0, abs(half),
                            trace_excess=INF)
    return isometry(math.exp(half), 0.0, 0.0, math.exp(-half),
                    trace_excess=4.0 * math.sinh(t / 4.0) ** 2)
