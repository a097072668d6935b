"""Exact parking probabilities as integer-coefficient polynomials in p.

Both randomized rules flip one coin per blocked car, so the probability that
a fixed preference tuple parks is a sum, over the successful choice vectors,
of monomials p^a (1-p)^b.  Expanding each monomial keeps everything in exact
integer arithmetic; evaluation takes a Fraction and returns a Fraction.

The coin is oriented per model: under the random-direction rule p is the
probability of the forward branch (bit 1), under the random Naples rule p is
the probability of the backward branch (bit 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .core import (
    NaplesSemantics,
    RandomModel,
    _naples_branch_spot,
    _highest_free_upto,
    _lowest_free_from,
    check_preferences,
)


@dataclass(frozen=True)
class Poly:
    """Polynomial in one variable with integer coefficients.

    ``coeffs[i]`` multiplies p**i; the tuple is canonical (no trailing zeros,
    and the zero polynomial is the empty tuple).
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = self.coeffs
        if c and c[-1] == 0:
            while c and c[-1] == 0:
                c = c[:-1]
            object.__setattr__(self, "coeffs", tuple(c))

    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def one() -> "Poly":
        return Poly((1,))

    @staticmethod
    def constant(c: int) -> "Poly":
        return Poly((c,)) if c else Poly(())

    @property
    def degree(self) -> int:
        """Degree, with the convention that the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(tuple(out))

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly(tuple(out))

    def scale(self, c: int) -> "Poly":
        return Poly(tuple(c * x for x in self.coeffs))

    def evaluate(self, p: Fraction) -> Fraction:
        """Evaluate at an exact rational point.

        Floats are rejected on purpose: the whole module exists to avoid
        rounding, and 0.1 is not 1/10.
        """
        if isinstance(p, float):
            raise TypeError("evaluate wants a Fraction or int, not a float")
        if isinstance(p, int) and not isinstance(p, bool):
            p = Fraction(p)
        if not isinstance(p, Fraction):
            raise TypeError(f"cannot evaluate at {p!r}")
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * p + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                var = "p" if i == 1 else f"p^{i}"
                if c == 1:
                    parts.append(var)
                elif c == -1:
                    parts.append(f"-{var}")
                else:
                    parts.append(f"{c}*{var}")
        out = parts[0]
        for t in parts[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


@lru_cache(maxsize=None)
def _weight_poly(p_exp: int, q_exp: int) -> Poly:
    """p**p_exp * (1-p)**q_exp expanded into the monomial basis."""
    out = [0] * (p_exp + q_exp + 1)
    for j in range(q_exp + 1):
        out[p_exp + j] = (-1) ** j * comb(q_exp, j)
    return Poly(tuple(out))


def _success_branch_counts(prefs, backward_spot) -> dict[tuple[int, int], int]:
    """Count successful choice vectors by (forward flips, backward flips).

    Walks the shared-prefix tree of choice vectors instead of replaying each
    of the 2**(n-1) vectors separately: unconsulted bits never branch, so the
    tree is much smaller than the hypercube whenever conflicts are scarce.
    ``backward_spot(free, a)`` maps the blocked car's view to a landing spot
    (0 = the branch fails).
    """
    n = len(prefs)
    full = (1 << n) - 1
    counts: dict[tuple[int, int], int] = {}

    def walk(i: int, occ: int, fwd: int, bwd: int) -> None:
        if i == n:
            key = (fwd, bwd)
            counts[key] = counts.get(key, 0) + 1
            return
        a = prefs[i]
        bit = 1 << (a - 1)
        if not occ & bit:
            walk(i + 1, occ | bit, fwd, bwd)
            return
        free = ~occ & full
        s = _lowest_free_from(free, a + 1)
        if s:
            walk(i + 1, occ | 1 << (s - 1), fwd + 1, bwd)
        s = backward_spot(free, a)
        if s:
            walk(i + 1, occ | 1 << (s - 1), fwd, bwd + 1)

    walk(0, 0, 0, 0)
    return counts


def _branch_counts_to_poly(counts, p_is_backward: bool) -> Poly:
    total = Poly.zero()
    for (fwd, bwd), mult in counts.items():
        if p_is_backward:
            w = _weight_poly(bwd, fwd)
        else:
            w = _weight_poly(fwd, bwd)
        total = total + w.scale(mult)
    return total


def prob_random_direction(prefs: Sequence[int]) -> Poly:
    """Parking probability under the random-direction rule, exact in p.

    A blocked car searches forward with probability p and backward-only with
    probability 1-p; the backward search fails below spot 1.
    """
    n = len(prefs)
    check_preferences(prefs, n)

    def backward(free: int, a: int) -> int:
        return _highest_free_upto(free, a - 1) if a > 1 else 0

    counts = _success_branch_counts(tuple(prefs), backward)
    return _branch_counts_to_poly(counts, p_is_backward=False)


def prob_random_naples(
    prefs: Sequence[int],
    k: int = 1,
    semantics: NaplesSemantics = NaplesSemantics.JUMP_BACK_THEN_FORWARD,
) -> Poly:
    """Parking probability under the random k-Naples rule, exact in p.

    A blocked car takes the k-spot backup branch with probability p and a
    plain forward search with probability 1-p.
    """
    n = len(prefs)
    check_preferences(prefs, n)
    if k < 0:
        raise ValueError(f"backward allowance k must be >= 0, got {k}")
    firstfit = semantics is NaplesSemantics.FIRST_FIT_BACKWARD

    def backward(free: int, a: int) -> int:
        return _naples_branch_spot(free, a, k, firstfit)

    counts = _success_branch_counts(tuple(prefs), backward)
    return _branch_counts_to_poly(counts, p_is_backward=True)


def prob_of_model(
    prefs: Sequence[int],
    model: RandomModel,
    k: int = 1,
    semantics: NaplesSemantics = NaplesSemantics.JUMP_BACK_THEN_FORWARD,
) -> Poly:
    if model is RandomModel.DIRECTION:
        return prob_random_direction(prefs)
    return prob_random_naples(prefs, k=k, semantics=semantics)


def parking_choice_count(
    prefs: Sequence[int],
    k: int = 1,
    semantics: NaplesSemantics = NaplesSemantics.JUMP_BACK_THEN_FORWARD,
) -> int:
    """Number of the 2**(n-1) choice vectors that park prefs (Naples branch).

    Equals 2**(n-1) times the Naples parking probability at p = 1/2.
    """
    n = len(prefs)
    poly = prob_random_naples(prefs, k=k, semantics=semantics)
    val = poly.evaluate(Fraction(1, 2)) * (1 << (n - 1))
    assert val.denominator == 1
    return val.numerator
