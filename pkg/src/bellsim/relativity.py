"""One-dimensional Lorentz kinematics and causal ordering of two events.

Coordinates are meters and seconds. Boost velocities are given as
``beta = v/c`` and describe the primed frame's velocity along +x as seen
from the unprimed frame.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

# Unit choice that makes c exactly 3e8 m/s; keeps hand-worked examples exact.
C_EXACT = 3.0e8
C_SI = 299_792_458.0

LIGHTLIKE_RTOL = 1e-12


@dataclass(frozen=True)
class SpacetimeEvent:
    x: float
    t: float
    label: str = ""

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.t)):
            raise ValueError(f"event coordinates must be finite, got x={self.x}, t={self.t}")


@dataclass(frozen=True)
class InertialFrame:
    beta: float

    def __post_init__(self):
        if not abs(self.beta) < 1.0:
            raise ValueError(f"frame speed must satisfy |beta| < 1, got {self.beta}")

    @property
    def gamma(self) -> float:
        return 1.0 / math.sqrt(1.0 - self.beta * self.beta)


def compose_boosts(beta1: float, beta2: float) -> float:
    """Relativistic velocity addition of two collinear boosts."""
    return (beta1 + beta2) / (1.0 + beta1 * beta2)


def lorentz_transform(event: SpacetimeEvent, frame: InertialFrame, c: float = C_EXACT) -> SpacetimeEvent:
    v = frame.beta * c
    g = frame.gamma
    return SpacetimeEvent(g * (event.x - v * event.t), g * (event.t - v * event.x / c**2), event.label)


@dataclass(frozen=True)
class SignalLink:
    """A signal of speed ``u_over_c * c`` covering ``delta_x`` in ``delta_t``.

    An infinite speed means ``delta_t == 0``.
    """

    u_over_c: float
    delta_x: float
    delta_t: float

    @classmethod
    def from_distance(cls, u_over_c: float, delta_x: float, c: float = C_EXACT) -> "SignalLink":
        if u_over_c == 0:
            raise ValueError("signal speed must be nonzero")
        delta_t = 0.0 if math.isinf(u_over_c) else delta_x / (u_over_c * c)
        return cls(u_over_c, delta_x, delta_t)

    def check(self, c: float = C_EXACT) -> None:
        if math.isinf(self.u_over_c):
            if self.delta_t != 0.0 or self.delta_x == 0.0:
                raise ValueError("an infinite-speed link needs delta_t == 0 and delta_x != 0")
        elif not math.isclose(self.delta_x, self.u_over_c * c * self.delta_t, rel_tol=1e-12, abs_tol=1e-300):
            raise ValueError("delta_x must equal u * delta_t")


def delta_t_prime(link: SignalLink, frame: InertialFrame, c: float = C_EXACT) -> float:
    """Time between sending and receiving the signal as measured in ``frame``."""
    link.check(c)
    if math.isinf(link.u_over_c):
        return -frame.gamma * frame.beta * link.delta_x / c
    return frame.gamma * link.delta_t * (1.0 - link.u_over_c * frame.beta)


def reversal_threshold_beta(event1: SpacetimeEvent, event2: SpacetimeEvent, c: float = C_EXACT) -> float:
    """Signed boundary ``c (t2 - t1) / (x1 - x2)`` for reversing the events' time order.

    With the returned value ``tau``, a boost ``beta`` reverses the order iff
    ``-beta / tau > 1``; for ``x1 > x2`` and ``t2 > t1`` that reads
    ``-beta > tau``. At ``-beta == tau`` the events become simultaneous.
    ``|tau| > 1`` means no physical frame reverses them (timelike pair).
    """
    dx = event1.x - event2.x
    if dx == 0.0:
        raise ValueError("reversal threshold is undefined for events at the same x")
    return c * (event2.t - event1.t) / dx


class Ordering(str, enum.Enum):
    EVENT1_FIRST = "event1_first"
    EVENT2_FIRST = "event2_first"
    SIMULTANEOUS = "simultaneous"


def ordering(event1: SpacetimeEvent, event2: SpacetimeEvent) -> Ordering:
    if event1.t < event2.t:
        return Ordering.EVENT1_FIRST
    if event2.t < event1.t:
        return Ordering.EVENT2_FIRST
    return Ordering.SIMULTANEOUS


def reverses_order(event1: SpacetimeEvent, event2: SpacetimeEvent, frame: InertialFrame,
                   c: float = C_EXACT) -> bool:
    """True when the two events occur in strictly opposite order in ``frame``."""
    dt = event2.t - event1.t
    dt_prime = frame.gamma * (dt - frame.beta * (event2.x - event1.x) / c)
    return dt * dt_prime < 0.0


class IntervalClass(str, enum.Enum):
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    SPACELIKE = "spacelike"


def interval_squared(event1: SpacetimeEvent, event2: SpacetimeEvent, c: float = C_EXACT) -> float:
    """``c²Δt² - Δx²`` (positive for timelike separation)."""
    return (c * (event2.t - event1.t)) ** 2 - (event2.x - event1.x) ** 2


def classify_interval(event1: SpacetimeEvent, event2: SpacetimeEvent, c: float = C_EXACT) -> IntervalClass:
    ct2 = (c * (event2.t - event1.t)) ** 2
    dx2 = (event2.x - event1.x) ** 2
    s = ct2 - dx2
    if abs(s) <= LIGHTLIKE_RTOL * max(ct2, dx2):
        return IntervalClass.LIGHTLIKE
    return IntervalClass.TIMELIKE if s > 0 else IntervalClass.SPACELIKE


class CausalRelation(str, enum.Enum):
    EVENT1_CAUSES_EVENT2 = "event1_causes_event2"
    EVENT2_CAUSES_EVENT1 = "event2_causes_event1"
    UNRELATED = "unrelated"
    SYMMETRIC_ENTANGLED = "symmetric_entangled"


def classify_causal_relation(event1: SpacetimeEvent, event2: SpacetimeEvent, entangled: bool,
                             frame: InertialFrame | None = None,
                             c: float = C_EXACT) -> tuple[CausalRelation, Ordering]:
    """Causal relation of two events and their time order as seen from ``frame``.

    Inside or on the light cone the earlier event is the cause in every
    frame. Spacelike pairs flagged as entangled are symmetric: whichever
    event comes first in the observer's frame plays the cause. Spacelike
    pairs without that flag are causally unrelated. ``entangled`` is the
    caller's declaration; coordinates alone cannot reveal it.
    """
    frame = frame or InertialFrame(0.0)
    seen = ordering(lorentz_transform(event1, frame, c), lorentz_transform(event2, frame, c))
    kind = classify_interval(event1, event2, c)
    if kind is IntervalClass.SPACELIKE:
        return (CausalRelation.SYMMETRIC_ENTANGLED if entangled else CausalRelation.UNRELATED), seen

    rest = ordering(event1, event2)
    if rest is Ordering.EVENT1_FIRST:
        return CausalRelation.EVENT1_CAUSES_EVENT2, seen
    if rest is Ordering.EVENT2_FIRST:
        return CausalRelation.EVENT2_CAUSES_EVENT1, seen
    # coincident events
    return CausalRelation.UNRELATED, seen
