"""Points, domains and charge configurations.

The supported domains are normalized: the unit disk, the annulus
{mu < |z| < 1} and the unit ball in R^d.  Configurations place charges at
the intersections of axis-centered circles with half-planes through the
rotation axis; ``realize`` produces the point set and charge vector,
``symmetrize`` replaces the half-plane angles by the equally spaced ones.

All value types are immutable and safe to share across threads.
"""

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, DomainError

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# Cylindrical coordinates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CylPoint:
    """Point (r, theta, x') with r the distance to the rotation axis and x'
    the d-2 coordinates along it; theta is normalized into [0, 2 pi)."""

    r: float
    theta: float
    x_prime: tuple = ()

    def __post_init__(self):
        if self.r < 0.0:
            raise DomainError("cylindrical radius must be >= 0, got %r" % (self.r,))
        object.__setattr__(self, "theta", self.theta % TWO_PI)
        object.__setattr__(self, "x_prime", tuple(float(v) for v in self.x_prime))


def cyl_to_cartesian(p: CylPoint, d: int) -> np.ndarray:
    """(r, theta, x') -> (r cos theta, r sin theta, x')."""
    if len(p.x_prime) != d - 2:
        raise DomainError(
            "x_prime has %d coordinates, expected d-2 = %d" % (len(p.x_prime), d - 2))
    out = np.empty(d)
    out[0] = p.r * math.cos(p.theta)
    out[1] = p.r * math.sin(p.theta)
    out[2:] = p.x_prime
    return out


def cartesian_to_cyl(x) -> CylPoint:
    x = np.asarray(x, dtype=float)
    return CylPoint(math.hypot(x[0], x[1]), math.atan2(x[1], x[0]) % TWO_PI,
                    tuple(x[2:]))


# ---------------------------------------------------------------------------
# Domains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Disk:
    """Unit disk {|z| < 1}."""

    @property
    def dim(self):
        return 2

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return float(x @ x) < 1.0

    def describe(self):
        return {"kind": "disk"}


@dataclass(frozen=True)
class Annulus:
    """Annulus {mu < |z| < 1}; mu doubles as the theta-series nome."""

    mu: float

    def __post_init__(self):
        if not 0.0 < self.mu < 1.0:
            raise DomainError("annulus inner radius must lie in (0, 1), got %r" % (self.mu,))

    @property
    def dim(self):
        return 2

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        r2 = float(x @ x)
        return self.mu * self.mu < r2 < 1.0

    def describe(self):
        return {"kind": "annulus", "mu": self.mu}


@dataclass(frozen=True)
class Ball:
    """Unit ball {|x| < 1} in R^d, d >= 3."""

    d: int

    def __post_init__(self):
        if self.d < 3:
            raise DomainError("ball dimension must be >= 3, got %r" % (self.d,))

    @property
    def dim(self):
        return self.d

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return float(x @ x) < 1.0

    def describe(self):
        return {"kind": "ball", "d": self.d}


def domain_from_dict(obj) -> "Domain":
    kind = obj.get("kind")
    if kind == "disk":
        return Disk()
    if kind == "annulus":
        return Annulus(float(obj["mu"]))
    if kind == "ball":
        return Ball(int(obj["d"]))
    raise ConfigurationError("unknown domain kind %r" % (kind,))


def parse_domain(token: str) -> "Domain":
    """Compact CLI tokens: 'disk', 'ball3' .. 'ballN', 'annulus0.3' or
    'annulus:0.3'."""
    token = token.strip().lower()
    if token == "disk":
        return Disk()
    if token.startswith("ball"):
        try:
            return Ball(int(token[4:]))
        except ValueError:
            raise ConfigurationError("cannot parse ball dimension from %r" % token)
    if token.startswith("annulus"):
        rest = token[7:].lstrip(":")
        try:
            return Annulus(float(rest))
        except ValueError:
            raise ConfigurationError("cannot parse annulus radius from %r" % token)
    raise ConfigurationError("unknown domain token %r" % token)


Domain = Disk | Annulus | Ball


# ---------------------------------------------------------------------------
# Circles, schemes and configurations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Circle:
    """Axis-centered circle of radius r0 at axis offset x'0 carrying a
    per-circle charge magnitude."""

    r0: float
    x_prime0: tuple = ()
    magnitude: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "x_prime0", tuple(float(v) for v in self.x_prime0))
        if not self.r0 > 0.0:
            raise ConfigurationError("circle radius must be positive, got %r" % (self.r0,))
        if self.magnitude == 0.0:
            raise ConfigurationError("circle charge magnitude must be nonzero")


class Scheme(enum.Enum):
    """Charge assignment rule.

    EQUAL: every point of a circle carries that circle's magnitude and the
    magnitudes must sum to zero across circles.
    ALTERNATING: the point on half-plane j carries (-1)^j times the circle
    magnitude; requires an even number of half-planes.
    """

    EQUAL = "equal"
    ALTERNATING = "alternating"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower()
        aliases = {
            "equal": cls.EQUAL,
            "theorem1": cls.EQUAL,
            "alternating": cls.ALTERNATING,
            "theorem2": cls.ALTERNATING,
        }
        if key not in aliases:
            raise ConfigurationError("unknown scheme %r" % (name,))
        return aliases[key]


_MAG_TOL = 1e-12


@dataclass(frozen=True)
class Configuration:
    """A domain, a family of distinct circles, an ordered angle set and a
    charge scheme."""

    domain: Domain
    circles: tuple
    angles: tuple
    scheme: Scheme

    def __post_init__(self):
        object.__setattr__(self, "circles", tuple(self.circles))
        object.__setattr__(self, "angles", tuple(float(a) for a in self.angles))
        object.__setattr__(self, "scheme", Scheme.parse(self.scheme))
        self.validate()

    @property
    def m(self):
        return len(self.angles)

    @property
    def n_points(self):
        return len(self.circles) * len(self.angles)

    def validate(self):
        if not self.circles:
            raise ConfigurationError("configuration needs at least one circle")
        if len(self.angles) < 1:
            raise ConfigurationError("configuration needs at least one angle")
        prev = None
        for a in self.angles:
            if not 0.0 <= a < TWO_PI:
                raise ConfigurationError(
                    "angles must lie in [0, 2 pi), got %r" % (a,))
            if prev is not None and not a > prev:
                raise ConfigurationError(
                    "angles must be strictly increasing, got %r after %r" % (a, prev))
            prev = a
        seen = set()
        for c in self.circles:
            key = (c.r0, c.x_prime0)
            if key in seen:
                raise ConfigurationError(
                    "duplicate circle (r0=%r, x_prime0=%r)" % (c.r0, c.x_prime0))
            seen.add(key)
            if len(c.x_prime0) != self.domain.dim - 2:
                raise ConfigurationError(
                    "circle axis offset has %d coordinates, expected %d for this domain"
                    % (len(c.x_prime0), self.domain.dim - 2))
            rim = math.sqrt(c.r0 ** 2 + sum(v * v for v in c.x_prime0))
            if isinstance(self.domain, Annulus):
                if not self.domain.mu < c.r0 < 1.0:
                    raise ConfigurationError(
                        "circle radius %r outside the open annulus (%r, 1)"
                        % (c.r0, self.domain.mu))
            elif not rim < 1.0:
                raise ConfigurationError(
                    "circle (r0=%r, x_prime0=%r) does not lie strictly inside the domain"
                    % (c.r0, c.x_prime0))
        if self.scheme is Scheme.EQUAL:
            total = sum(c.magnitude for c in self.circles)
            scale = sum(abs(c.magnitude) for c in self.circles)
            if abs(total) > _MAG_TOL * scale:
                raise ConfigurationError(
                    "equal-charge scheme requires circle magnitudes summing to zero, "
                    "got %r" % (total,))
        else:
            if len(self.angles) % 2 != 0:
                raise ConfigurationError(
                    "alternating scheme requires an even number of half-planes, "
                    "got m=%d" % len(self.angles))

    def to_dict(self):
        return {
            "domain": self.domain.describe(),
            "circles": [
                {"r0": c.r0, "x_prime0": list(c.x_prime0), "magnitude": c.magnitude}
                for c in self.circles
            ],
            "angles": list(self.angles),
            "scheme": self.scheme.value,
        }

    @classmethod
    def from_dict(cls, obj):
        try:
            domain = domain_from_dict(obj["domain"])
            circles = tuple(
                Circle(float(c["r0"]), tuple(c.get("x_prime0", ())),
                       float(c.get("magnitude", 1.0)))
                for c in obj["circles"]
            )
            angles = tuple(float(a) for a in obj["angles"])
            scheme = Scheme.parse(obj["scheme"])
        except KeyError as exc:
            raise ConfigurationError("configuration is missing field %s" % exc)
        return cls(domain, circles, angles, scheme)

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), sort_keys=True, **kwargs)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def realize(config: Configuration):
    """Return (points, charges): the n = m * |circles| intersection points
    ordered by (circle index, angle index) and their charges.

    Charges sum to zero under both schemes (validated)."""
    dim = config.domain.dim
    n = config.n_points
    pts = np.empty((n, dim))
    charges = np.empty(n)
    row = 0
    for circle in config.circles:
        for j, a in enumerate(config.angles):
            pts[row, 0] = circle.r0 * math.cos(a)
            pts[row, 1] = circle.r0 * math.sin(a)
            if dim > 2:
                pts[row, 2:] = circle.x_prime0
            if config.scheme is Scheme.EQUAL:
                charges[row] = circle.magnitude
            else:
                charges[row] = circle.magnitude * (1.0 if j % 2 == 0 else -1.0)
            row += 1
    return pts, charges


def symmetrize(config: Configuration) -> Configuration:
    """Replace the angles by the equally spaced set 2 pi j / m, keeping the
    circles, scheme and the (circle, half-plane) indexing of points."""
    m = config.m
    return Configuration(
        config.domain,
        config.circles,
        tuple(TWO_PI * j / m for j in range(m)),
        config.scheme,
    )


def sample_random_angles(m: int, min_gap: float, seed: int) -> np.ndarray:
    """m strictly increasing angles in [0, 2 pi) whose circular gaps
    (including the wrap-around one) are all >= min_gap; deterministic for a
    fixed seed."""
    if m < 2:
        raise ConfigurationError("need at least 2 angles, got m=%r" % (m,))
    if min_gap < 0.0:
        raise ConfigurationError("min_gap must be >= 0, got %r" % (min_gap,))
    budget = TWO_PI - m * min_gap
    if budget <= 0.0:
        raise ConfigurationError(
            "infeasible min_gap: m * min_gap = %r >= 2 pi" % (m * min_gap,))
    rng = np.random.default_rng(seed)
    gaps = min_gap + budget * rng.dirichlet(np.ones(m))
    offset = rng.uniform(0.0, TWO_PI)
    raw = offset + np.concatenate(([0.0], np.cumsum(gaps[:-1])))
    angles = np.sort(raw % TWO_PI)
    return angles
