"""Exact finite probability spaces.

A space is a list of weighted atoms plus events given as atom subsets.
Weights are exact rationals, so union probabilities, occupancy profiles and
per-event moments come out exact; these feed the bound computations and act
as the ground-truth oracle in tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from ._numeric import Number, integral_value, rpow
from .bounds import ExponentParams, MomentVector


@dataclass(frozen=True)
class EventSystem:
    """N events over weighted atoms.

    weights[j] is the probability of atom j; events[k] lists the atoms of
    event k in increasing order. Events may be empty. Use build_system for a
    validated constructor.
    """

    weights: tuple[Fraction, ...]
    events: tuple[tuple[int, ...], ...]

    @property
    def n_atoms(self) -> int:
        return len(self.weights)

    @property
    def n_events(self) -> int:
        return len(self.events)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Events as atom bitmasks."""
        out = []
        for event in self.events:
            mask = 0
            for atom in event:
                mask |= 1 << atom
            out.append(mask)
        return tuple(out)

    @cached_property
    def occupancy_counts(self) -> tuple[int, ...]:
        """How many events cover each atom."""
        counts = [0] * self.n_atoms
        for event in self.events:
            for atom in event:
                counts[atom] += 1
        return tuple(counts)

    def event_probability(self, k: int) -> Fraction:
        """P(A_k) for the 0-based event position k."""
        return sum((self.weights[atom] for atom in self.events[k]), Fraction(0))

    def mask_probability(self, mask: int) -> Fraction:
        total = Fraction(0)
        while mask:
            low = mask & -mask
            total += self.weights[low.bit_length() - 1]
            mask ^= low
        return total

    def intersection_probability(self, positions: Iterable[int]) -> Fraction:
        """P of the intersection of the listed events (Omega if empty)."""
        mask = (1 << self.n_atoms) - 1
        for k in positions:
            mask &= self.masks[k]
        return self.mask_probability(mask)

    def prefix(self, n: int) -> "EventSystem":
        """The subsystem keeping only the first n events."""
        if not 0 <= n <= self.n_events:
            raise ValueError(f"prefix length {n} outside 0..{self.n_events}")
        return EventSystem(self.weights, self.events[:n])


def build_system(
    weights: Iterable[object], events: Iterable[Iterable[int]]
) -> EventSystem:
    """Validated constructor.

    Weights parse through Fraction, so "1/10", "0.25", ints, floats and
    Fractions all work; they must be non-negative and sum to one exactly.
    Event atom lists are deduplicated, sorted and range-checked.
    """
    parsed = []
    for pos, raw in enumerate(weights):
        try:
            value = Fraction(raw)  # type: ignore[arg-type]
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise ValueError(f"weight {pos}: cannot parse {raw!r}") from exc
        if value < 0:
            raise ValueError(f"weight {pos} is negative: {value}")
        parsed.append(value)
    total = sum(parsed, Fraction(0))
    if total != 1:
        raise ValueError(f"weights sum {total} != 1")
    n_atoms = len(parsed)
    cleaned = []
    for pos, event in enumerate(events):
        atoms = sorted({int(atom) for atom in event})
        if atoms and (atoms[0] < 0 or atoms[-1] >= n_atoms):
            raise ValueError(
                f"event {pos} references an atom outside 0..{n_atoms - 1}"
            )
        cleaned.append(tuple(atoms))
    return EventSystem(tuple(parsed), tuple(cleaned))


def exact_union_probability(system: EventSystem) -> Fraction:
    """P(A_1 u ... u A_N), summed over atoms covered at least once."""
    return sum(
        (
            weight
            for weight, count in zip(system.weights, system.occupancy_counts)
            if count
        ),
        Fraction(0),
    )


@dataclass(frozen=True)
class OccupancyProfile:
    """p[i] = P(exactly i of the events occur), i = 0..N."""

    p: tuple[Fraction, ...]

    @property
    def n_events(self) -> int:
        return len(self.p) - 1


def occupancy_profile(system: EventSystem) -> OccupancyProfile:
    levels = [Fraction(0)] * (system.n_events + 1)
    for weight, count in zip(system.weights, system.occupancy_counts):
        levels[count] += weight
    return OccupancyProfile(tuple(levels))


@dataclass(frozen=True)
class JointOccupancy:
    """p[i-1][k] = P(exactly i events occur and event k occurs)."""

    p: tuple[tuple[Fraction, ...], ...]


def joint_occupancy(system: EventSystem) -> JointOccupancy:
    n = system.n_events
    counts = system.occupancy_counts
    rows = [[Fraction(0)] * n for _ in range(n)]
    for k, event in enumerate(system.events):
        for atom in event:
            rows[counts[atom] - 1][k] += system.weights[atom]
    return JointOccupancy(tuple(tuple(row) for row in rows))


def power_moments(system: EventSystem, k: int) -> Fraction:
    """alpha_k = E xi**k where xi counts how many events occur."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("k must be a positive integer")
    return sum(
        (
            weight * count**k
            for weight, count in zip(system.weights, system.occupancy_counts)
            if count
        ),
        Fraction(0),
    )


@dataclass(frozen=True)
class PerEventMoments:
    """Per-event moments of the occupancy-deflated masses.

    sbar[j][k] = sum_i i**(a + j*rho - 1) * P(xi = i, A_k), the j+1-th power
    moment of the vector r_i(k) = P(xi = i, A_k) / i whose total recovers the
    union probability when summed over k. For ell >= 3 the residuals feeding
    the three-moment bounds are precomputed per event.
    """

    a: Number
    rho: Number
    n_events: int
    sbar: tuple[tuple[Number, ...], ...]
    bar_delta1: tuple[Number, ...] | None = None
    bar_delta2: tuple[Number, ...] | None = None
    hat_delta1: tuple[Number, ...] | None = None
    hat_delta2: tuple[Number, ...] | None = None

    @property
    def ell(self) -> int:
        return len(self.sbar)

    def vector(self, k: int) -> MomentVector:
        """Moment vector of event k over occupancy levels 1..N."""
        params = ExponentParams(self.a, self.rho, self.ell, max(self.n_events, 1))
        return MomentVector(tuple(row[k] for row in self.sbar), params)


def per_event_moments(
    system: EventSystem, a: Number = 1, rho: Number = 1, ell: int = 3
) -> PerEventMoments:
    """Compute sbar_j(k) for every event, exactly when a and rho are integers."""
    if ell < 2:
        raise ValueError("ell must be at least 2")
    n = system.n_events
    counts = system.occupancy_counts
    exact = integral_value(a) is not None and integral_value(rho) is not None
    zero: Number = Fraction(0) if exact else 0.0
    sbar = [[zero] * n for _ in range(ell)]
    exponents = [a + j * rho for j in range(ell)]
    for k, event in enumerate(system.events):
        for atom in event:
            count = counts[atom]
            weight = system.weights[atom]
            for j, e in enumerate(exponents):
                sbar[j][k] = sbar[j][k] + rpow(count, e - 1) * weight
    rows = tuple(tuple(row) for row in sbar)
    if ell < 3:
        return PerEventMoments(a, rho, n, rows)
    n_rho = rpow(n, rho) if n else zero
    bar1 = tuple(n_rho * rows[0][k] - rows[1][k] for k in range(n))
    bar2 = tuple(n_rho * rows[1][k] - rows[2][k] for k in range(n))
    hat1 = tuple(rows[1][k] - rows[0][k] for k in range(n))
    hat2 = tuple(rows[2][k] - rows[1][k] for k in range(n))
    return PerEventMoments(a, rho, n, rows, bar1, bar2, hat1, hat2)


def random_system(
    seed: int, n_events: int, n_atoms: int, profile: str = "dense"
) -> EventSystem:
    """Deterministic pseudo-random system: same arguments, same system.

    Profiles: "dense" puts each atom in each event with chance 1/2; "sparse"
    keeps expected event sizes near two atoms; "disjoint-ish" deals the atoms
    into nearly disjoint blocks with light leakage.
    """
    if n_events < 1:
        raise ValueError("n_events must be at least 1")
    if n_atoms < 1:
        raise ValueError("n_atoms must be at least 1")
    rng = random.Random(seed)
    raw = [rng.randint(0, 9) for _ in range(n_atoms)]
    if not any(raw):
        raw[rng.randrange(n_atoms)] = 1
    total = sum(raw)
    weights = [Fraction(value, total) for value in raw]
    events: list[list[int]]
    if profile == "dense":
        events = [
            [atom for atom in range(n_atoms) if rng.random() < 0.5]
            for _ in range(n_events)
        ]
    elif profile == "sparse":
        chance = min(0.5, 2.0 / n_atoms)
        events = [
            [atom for atom in range(n_atoms) if rng.random() < chance]
            for _ in range(n_events)
        ]
    elif profile == "disjoint-ish":
        order = list(range(n_atoms))
        rng.shuffle(order)
        events = [list(order[k::n_events]) for k in range(n_events)]
        for event in events:
            if rng.random() < 0.25:
                event.append(rng.randrange(n_atoms))
    else:
        raise ValueError(f"unknown profile {profile!r}")
    return build_system(weights, events)
