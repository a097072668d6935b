"""Deterministic parking-lot semantics shared by both randomized models.

Spots are numbered 1..n from the entrance. Cars arrive in index order; car i
drives to its preferred spot and parks there when it is free. What a blocked
car does next depends on the rule in force:

* forward-only search (the classic rule),
* back up as many as k spots first, then search forward (the Naples rule),
* or, in the choice-driven replay, whatever its decision bit says.

Decision bits derandomize the two coin-flip models: bit value 1 always means
"search forward only", bit value 0 takes the backward branch of the model at
hand.  Car 1 never finds its spot taken, so a choice vector for n cars has
n-1 bits; bit j (0-based) of the integer belongs to car j+2.  Bits of cars
whose preferred spot is free are simply ignored.

Occupancy is a plain int bitmask: bit (s-1) set means spot s is taken.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence


class NaplesSemantics(Enum):
    """How a blocked Naples car spends its backward allowance of k spots."""

    JUMP_BACK_THEN_FORWARD = "jump"
    FIRST_FIT_BACKWARD = "firstfit"


class RandomModel(Enum):
    """Which randomized rule a decision bit stands in for."""

    DIRECTION = "direction"
    NAPLES = "naples"


@dataclass(frozen=True)
class ParkingResult:
    """Outcome of one parking run.

    ``assignment`` maps car i to ``assignment[i-1]`` and is present exactly
    when every car parked; otherwise ``first_failed_car`` holds the 1-based
    index of the first car that could not park (the run stops there).
    """

    parked_all: bool
    assignment: Optional[tuple[int, ...]] = None
    first_failed_car: Optional[int] = None


def check_preferences(prefs: Sequence[int], capacity: int) -> None:
    """Raise ValueError unless every preference lies in 1..capacity."""
    if len(prefs) == 0:
        raise ValueError("preference tuple must have at least one car")
    for i, a in enumerate(prefs, start=1):
        if not isinstance(a, int) or isinstance(a, bool):
            raise ValueError(f"preference of car {i} is not an integer: {a!r}")
        if not 1 <= a <= capacity:
            raise ValueError(
                f"preference of car {i} is {a}, outside 1..{capacity}"
            )


def check_choice_bits(beta: int, n: int) -> None:
    """Raise ValueError unless beta is a valid (n-1)-bit choice vector."""
    if not isinstance(beta, int) or isinstance(beta, bool):
        raise ValueError(f"choice vector must be an int bitmask, got {beta!r}")
    if beta < 0 or beta >= 1 << (n - 1):
        raise ValueError(
            f"choice vector {beta} does not fit in {n - 1} bits for {n} cars"
        )


def _lowest_free_from(free: int, spot: int) -> int:
    """First free spot >= spot, or 0 when there is none."""
    m = free & ~((1 << (spot - 1)) - 1)
    return (m & -m).bit_length()


def _highest_free_upto(free: int, spot: int) -> int:
    """First free spot encountered scanning spot, spot-1, ..., 1; 0 if none."""
    m = free & ((1 << spot) - 1)
    return m.bit_length()


def _naples_branch_spot(free: int, a: int, k: int, firstfit: bool) -> int:
    """Landing spot of the backward branch of a Naples car blocked at a.

    Jump semantics: move to max(a-k, 1) and search forward from there.
    First-fit semantics: try a-1, a-2, ..., max(a-k, 1) one at a time and
    fall back to a forward search past a.  Returns 0 when the car fails.
    """
    start = a - k if a - k > 1 else 1
    if firstfit:
        if a > 1:
            window = free & ((1 << (a - 1)) - 1) & ~((1 << (start - 1)) - 1)
            if window:
                return window.bit_length()
        return _lowest_free_from(free, a + 1)
    return _lowest_free_from(free, start)


def _parks(prefs, beta, naples, k, firstfit, full):
    """Allocation-free replay; True iff every car parks. Inputs unvalidated."""
    occ = 0
    for i, a in enumerate(prefs):
        bit = 1 << (a - 1)
        if not occ & bit:
            occ |= bit
            continue
        free = ~occ & full
        if beta >> (i - 1) & 1:
            s = _lowest_free_from(free, a + 1)
        elif naples:
            s = _naples_branch_spot(free, a, k, firstfit)
        else:
            s = _highest_free_upto(free, a - 1) if a > 1 else 0
        if not s:
            return False
        occ |= 1 << (s - 1)
    return True


def park_forward(prefs: Sequence[int]) -> ParkingResult:
    """Classic rule: each car takes the first free spot at or past its preference."""
    n = len(prefs)
    check_preferences(prefs, n)
    full = (1 << n) - 1
    occ = 0
    spots = []
    for i, a in enumerate(prefs, start=1):
        s = _lowest_free_from(~occ & full, a)
        if not s:
            return ParkingResult(False, first_failed_car=i)
        occ |= 1 << (s - 1)
        spots.append(s)
    return ParkingResult(True, assignment=tuple(spots))


def park_naples_det(
    prefs: Sequence[int],
    k: int,
    semantics: NaplesSemantics = NaplesSemantics.JUMP_BACK_THEN_FORWARD,
) -> ParkingResult:
    """Naples rule with every blocked car taking the backward branch.

    k = 0 degenerates to the classic forward-only rule.
    """
    n = len(prefs)
    check_preferences(prefs, n)
    if k < 0:
        raise ValueError(f"backward allowance k must be >= 0, got {k}")
    firstfit = semantics is NaplesSemantics.FIRST_FIT_BACKWARD
    full = (1 << n) - 1
    occ = 0
    spots = []
    for i, a in enumerate(prefs, start=1):
        bit = 1 << (a - 1)
        if not occ & bit:
            occ |= bit
            spots.append(a)
            continue
        s = _naples_branch_spot(~occ & full, a, k, firstfit)
        if not s:
            return ParkingResult(False, first_failed_car=i)
        occ |= 1 << (s - 1)
        spots.append(s)
    return ParkingResult(True, assignment=tuple(spots))


def park_with_choices(
    prefs: Sequence[int],
    beta: int,
    model: RandomModel,
    k: int = 1,
    semantics: NaplesSemantics = NaplesSemantics.JUMP_BACK_THEN_FORWARD,
) -> ParkingResult:
    """Deterministic replay of either random model under a fixed choice vector.

    A blocked car with bit 1 searches forward only.  With bit 0 it takes the
    model's backward branch: under DIRECTION a backward-only search that fails
    below spot 1 without retrying forward, under NAPLES the k-spot backup.
    """
    n = len(prefs)
    check_preferences(prefs, n)
    check_choice_bits(beta, n)
    if k < 0:
        raise ValueError(f"backward allowance k must be >= 0, got {k}")
    naples = model is RandomModel.NAPLES
    firstfit = semantics is NaplesSemantics.FIRST_FIT_BACKWARD
    full = (1 << n) - 1
    occ = 0
    spots = []
    for i, a in enumerate(prefs, start=1):
        bit = 1 << (a - 1)
        if not occ & bit:
            occ |= bit
            spots.append(a)
            continue
        free = ~occ & full
        if beta >> (i - 2) & 1:
            s = _lowest_free_from(free, a + 1)
        elif naples:
            s = _naples_branch_spot(free, a, k, firstfit)
        else:
            s = _highest_free_upto(free, a - 1) if a > 1 else 0
        if not s:
            return ParkingResult(False, first_failed_car=i)
        occ |= 1 << (s - 1)
        spots.append(s)
    return ParkingResult(True, assignment=tuple(spots))


def parks_under_choices(
    prefs: Sequence[int],
    beta: int,
    model: RandomModel,
    k: int = 1,
    semantics: NaplesSemantics = NaplesSemantics.JUMP_BACK_THEN_FORWARD,
) -> bool:
    """Boolean fast path of park_with_choices (no assignment bookkeeping)."""
    n = len(prefs)
    check_preferences(prefs, n)
    check_choice_bits(beta, n)
    if k < 0:
        raise ValueError(f"backward allowance k must be >= 0, got {k}")
    return _parks(
        prefs,
        beta,
        model is RandomModel.NAPLES,
        k,
        semantics is NaplesSemantics.FIRST_FIT_BACKWARD,
        (1 << n) - 1,
    )
