"""Random-direction parking on a circle of n+1 spots.

Put n cars on a ring with one extra spot and the failure mode disappears: a
blocked car scans forward or backward around the ring and always finds a
spot, leaving exactly one spot empty at the end. The distribution of that
empty spot is the object of interest; summing its entries over all shifted
copies of a tuple is what makes the expected-count argument for the linear
model work. Preferences live in {1, ..., n+1} here, one more value than the
linear model allows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .census import CheckResult, VerificationReport
from .core import check_choice_bits, check_preferences
from .exact import Poly, _weight_poly, prob_random_direction


@dataclass(frozen=True)
class EmptySpotDistribution:
    """Exact distribution of the one empty spot on the (n+1)-ring.

    probs[i] is the probability (a polynomial in p) that spot i + 1 is the
    empty one; the entries sum to the constant polynomial 1.
    """

    n: int
    probs: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.probs) != self.n + 1:
            raise ValueError(
                f"need {self.n + 1} entries for {self.n} cars, got {len(self.probs)}"
            )
        total = Poly.zero()
        for q in self.probs:
            total = total + q
        if total != Poly.one():
            raise ValueError("empty-spot probabilities do not sum to 1")

    def prob_for_spot(self, spot: int) -> Poly:
        if not 1 <= spot <= self.n + 1:
            raise ValueError(f"spot must lie in 1..{self.n + 1}, got {spot}")
        return self.probs[spot - 1]

    def rotated(self) -> "EmptySpotDistribution":
        """Distribution after every preference is shifted one spot clockwise."""
        ring = self.n + 1
        return EmptySpotDistribution(
            self.n, tuple(self.probs[(i - 1) % ring] for i in range(ring))
        )


def shift_preferences(prefs: Sequence[int]) -> tuple[int, ...]:
    """Add 1 to every preference, wrapping n+1 around to 1."""
    ring = len(prefs) + 1
    return tuple(a % ring + 1 for a in prefs)


def _scan(occ: int, start: int, step: int, ring: int) -> int:
    """First free spot at or cyclically after start, walking by step (+1/-1)."""
    s = start
    for _ in range(ring):
        if not occ & (1 << (s - 1)):
            return s
        s = (s - 1 + step) % ring + 1
    raise AssertionError("a full ring has no free spot; caller broke the invariant")


def circular_park(prefs: Sequence[int], beta: int) -> int:
    """Park n cars on the (n+1)-ring under fixed choices; return the empty spot.

    A blocked car with choice bit 1 scans forward around the ring, with bit 0
    backward; either way it parks, so the run never fails.
    """
    n = len(prefs)
    ring = n + 1
    check_preferences(prefs, ring)
    check_choice_bits(beta, n)
    occ = 0
    for i, a in enumerate(prefs, start=1):
        bit = 1 << (a - 1)
        if not occ & bit:
            occ |= bit
            continue
        step = 1 if beta >> (i - 2) & 1 else -1
        s = _scan(occ, (a - 1 + step) % ring + 1, step, ring)
        occ |= 1 << (s - 1)
    empty = (~occ & ((1 << ring) - 1)).bit_length()
    return empty


def empty_spot_distribution(prefs: Sequence[int]) -> EmptySpotDistribution:
    """Exact empty-spot distribution with forward weight p, backward 1 - p.

    Walks the shared-prefix tree of choice vectors, branching only at
    conflicted cars, and pools leaves by (empty spot, forward flips,
    backward flips) before expanding weights into polynomials.
    """
    n = len(prefs)
    ring = n + 1
    check_preferences(prefs, ring)
    counts: dict[tuple[int, int, int], int] = {}

    def walk(i: int, occ: int, fwd: int, bwd: int) -> None:
        if i == n:
            empty = (~occ & ((1 << ring) - 1)).bit_length()
            key = (empty, fwd, bwd)
            counts[key] = counts.get(key, 0) + 1
            return
        a = prefs[i]
        bit = 1 << (a - 1)
        if not occ & bit:
            walk(i + 1, occ | bit, fwd, bwd)
            return
        s = _scan(occ, a % ring + 1, 1, ring)
        walk(i + 1, occ | 1 << (s - 1), fwd + 1, bwd)
        s = _scan(occ, (a - 2) % ring + 1, -1, ring)
        walk(i + 1, occ | 1 << (s - 1), fwd, bwd + 1)

    walk(0, 0, 0, 0)
    per_spot = [Poly.zero()] * ring
    for (empty, f, b), c in counts.items():
        per_spot[empty - 1] = per_spot[empty - 1] + _weight_poly(f, b).scale(c)
    return EmptySpotDistribution(n, tuple(per_spot))


CIRCULAR_SWEEP_MAX_N = 4


def verify_circular(n: int) -> VerificationReport:
    """Sweep all (n+1)^n ring tuples and check the structural properties.

    Asserted: every distribution sums to 1; tuples naming spot n+1 never
    leave it empty; shifting a tuple rotates its distribution; each spot's
    probability summed over all tuples is the constant (n+1)^(n-1). Also
    reported, but never failed on: for linear-range tuples, whether the
    probability that spot n+1 stays empty equals the linear model's parking
    probability (the two scan rules part ways once a backward search wraps).
    """
    if not 1 <= n <= CIRCULAR_SWEEP_MAX_N:
        raise ValueError(
            f"the circular sweep supports 1 <= n <= {CIRCULAR_SWEEP_MAX_N}, got {n}"
        )
    ring = n + 1
    column_sums = [Poly.zero()] * ring
    shift_bad = 0
    naming_bad = 0
    agree = 0
    disagree = 0
    disagree_example = ""
    dists: dict[tuple[int, ...], EmptySpotDistribution] = {}

    for idx in range(ring**n):
        prefs = []
        x = idx
        for _ in range(n):
            prefs.append(x % ring + 1)
            x //= ring
        prefs = tuple(prefs)
        dist = empty_spot_distribution(prefs)
        dists[prefs] = dist
        for i in range(ring):
            column_sums[i] = column_sums[i] + dist.probs[i]
        if ring in prefs and dist.probs[ring - 1] != Poly.zero():
            naming_bad += 1

    for prefs, dist in dists.items():
        if dists[shift_preferences(prefs)] != dist.rotated():
            shift_bad += 1

    for prefs, dist in dists.items():
        if any(a > n for a in prefs):
            continue
        if dist.probs[ring - 1] == prob_random_direction(prefs):
            agree += 1
        else:
            disagree += 1
            if not disagree_example:
                disagree_example = (
                    f"first mismatch {prefs}: ring gives {dist.probs[ring - 1]}, "
                    f"line gives {prob_random_direction(prefs)}"
                )

    uniform = Poly.constant((n + 1) ** (n - 1))
    columns_ok = all(col == uniform for col in column_sums)
    checks = (
        CheckResult(
            "distributions normalized",
            True,
            f"{ring**n} tuples swept; construction asserts the sum is 1",
        ),
        CheckResult(
            "spot n+1 never empty when named",
            naming_bad == 0,
            f"{naming_bad} offending tuples",
        ),
        CheckResult(
            "shift rotates the distribution",
            shift_bad == 0,
            f"{shift_bad} offending tuples",
        ),
        CheckResult(
            "per-spot column sums uniform",
            columns_ok,
            f"target {uniform}",
        ),
        CheckResult(
            "linear agreement (informational)",
            True,
            f"{agree} of {agree + disagree} linear-range tuples match the "
            f"linear parking probability"
            + (f"; {disagree_example}" if disagree_example else ""),
        ),
    )
    findings = {
        "linear_agree": agree,
        "linear_disagree": disagree,
    }
    return VerificationReport("circular-shift", checks, findings)
