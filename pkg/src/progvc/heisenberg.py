"""The discrete Heisenberg group and its two-sided generalized progressions.

Points are integer triples with the product
``(x, y, z) * (x', y', z') = (x + x', y + y', z + z' + x*y')``,
the group of unitriangular 3x3 integer matrices in coordinates. The two
generators are A = (1, 0, 0) and B = (0, 1, 0); their commutator
C = (0, 0, 1) is central.

Words over {A, A^-1, B, B^-1} are plain strings over the alphabet "AaBb"
with lowercase meaning inverse, so "ABab" is the commutator word. The
progression P(N1, N2) is the set of values of all words using at most N1
letters from {A, A^-1} and at most N2 from {B, B^-1}. Membership in
P(N1, N2) is decided by an exact four-case inequality on (a, b, c); an
independent breadth-first enumeration is provided as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections import deque
from typing import Iterator, NamedTuple, Optional, Sequence

from .errors import DomainError, ResourceLimitError

_ALPHABET = set("AaBb")
_A_TYPE = set("Aa")
_B_TYPE = set("Bb")

DEFAULT_ENUM_CAP = 12


class HPoint(NamedTuple):
    a: int
    b: int
    c: int


IDENTITY = HPoint(0, 0, 0)
GEN_A = HPoint(1, 0, 0)
GEN_B = HPoint(0, 1, 0)
GEN_C = HPoint(0, 0, 1)


def h_mul(p: Sequence[int], q: Sequence[int]) -> HPoint:
    return HPoint(p[0] + q[0], p[1] + q[1], p[2] + q[2] + p[0] * q[1])


def h_inv(p: Sequence[int]) -> HPoint:
    return HPoint(-p[0], -p[1], -p[2] + p[0] * p[1])


def h_pow(p: Sequence[int], n: int) -> HPoint:
    if n < 0:
        return h_pow(h_inv(p), -n)
    out = IDENTITY
    for _ in range(n):
        out = h_mul(out, p)
    return out


def parse_point(text: str) -> HPoint:
    parts = text.split(",")
    if len(parts) != 3:
        raise DomainError(f"point must be 'a,b,c', got {text!r}")
    try:
        return HPoint(*(int(s.strip()) for s in parts))
    except ValueError as exc:
        raise DomainError(f"point coordinates must be integers: {text!r}") from exc


def format_point(p: Sequence[int]) -> str:
    return f"{p[0]},{p[1]},{p[2]}"


def validate_word(word: str) -> str:
    bad = set(word) - _ALPHABET
    if bad:
        raise DomainError(f"word letters must be from 'AaBb', got {sorted(bad)}")
    return word


def word_eval(word: str) -> HPoint:
    """Value of a word in one pass.

    Equivalent to folding h_mul over the letters: a and b are the signed
    letter counts, and c sums eps_i * eps_j over pairs of an A-type letter
    at position i before a B-type letter at position j.
    """
    validate_word(word)
    a = b = c = 0
    for letter in word:
        if letter == "A":
            a += 1
        elif letter == "a":
            a -= 1
        elif letter == "B":
            b += 1
            c += a
        else:
            b -= 1
            c -= a
    return HPoint(a, b, c)


def word_counts(word: str) -> tuple[int, int]:
    """Number of A-type and B-type letters, inverses included."""
    validate_word(word)
    n_a = sum(1 for ch in word if ch in _A_TYPE)
    return n_a, len(word) - n_a


def flip_a(word: str) -> str:
    """Swap A with its inverse; negates the a and c coordinates of the value."""
    return word.translate(str.maketrans("Aa", "aA"))


def flip_b(word: str) -> str:
    """Swap B with its inverse; negates the b and c coordinates of the value."""
    return word.translate(str.maketrans("Bb", "bB"))


def _trace_steps(word: str) -> Iterator[tuple[str, int]]:
    letters = list(word)
    n_a, n_b = word_counts(word)
    j = 0
    yield word, j
    # Each swap moves one B-type letter left past one A-type letter, so the
    # count of (A-type, B-type) inversions drops by exactly 1 per step and
    # the loop runs at most n_a * n_b times.
    for _ in range(n_a * n_b):
        pivot = -1
        for i in range(len(letters) - 2, -1, -1):
            if letters[i] in _A_TYPE and letters[i + 1] in _B_TYPE:
                pivot = i
                break
        if pivot < 0:
            return
        delta = 1 if letters[pivot] == "A" else -1
        eps = 1 if letters[pivot + 1] == "B" else -1
        letters[pivot], letters[pivot + 1] = letters[pivot + 1], letters[pivot]
        j += delta * eps
        yield "".join(letters), j
    if any(x in _A_TYPE and y in _B_TYPE for x, y in zip(letters, letters[1:])):
        raise RuntimeError("sorting exceeded its inversion-count step bound")


@dataclass(frozen=True)
class ReductionTrace:
    """Steps of sorting a word into B-block-then-A-block form.

    Each step swaps the rightmost adjacent pair (A-type, B-type) and adds
    the product of their signs to the running commutator exponent j. Every
    intermediate pair (word_i, j_i) satisfies value(word_i) * C**j_i ==
    value(original), so the final j equals the c coordinate of the value.
    """

    steps: tuple[tuple[str, int], ...]

    @property
    def word(self) -> str:
        return self.steps[0][0]

    @property
    def final(self) -> tuple[str, int]:
        return self.steps[-1]


def reduction_trace(word: str) -> ReductionTrace:
    return ReductionTrace(steps=tuple(_trace_steps(word)))


@dataclass(frozen=True)
class HProgressionSpec:
    """Left translate of P(n1, n2) by the point ``translate``."""

    n1: int
    n2: int
    translate: HPoint = IDENTITY

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0:
            raise DomainError(f"budgets must be nonnegative, got ({self.n1}, {self.n2})")


def max_central(a: int, b: int, n1: int, n2: int) -> int:
    """Largest c with (a, b, c) in P(n1, n2), for 0 <= a <= n1, 0 <= b <= n2.

    Equals floor((n1+a)/2) * floor((n2+b)/2): a word can use at most that
    many positive A and positive B letters, which caps the commutator count.
    """
    if not (0 <= a <= n1 and 0 <= b <= n2):
        raise DomainError(f"need 0 <= a <= n1 and 0 <= b <= n2, got a={a}, b={b}, n1={n1}, n2={n2}")
    return ((n1 + a) // 2) * ((n2 + b) // 2)


def membership(spec: HProgressionSpec, p: Sequence[int]) -> bool:
    """Exact membership test for a translated progression."""
    q = h_mul(h_inv(spec.translate), HPoint(*p))
    a, b, c = q
    n1, n2 = spec.n1, spec.n2
    if abs(a) > n1 or abs(b) > n2:
        return False
    if a >= 0 and b >= 0:
        m = ((n1 + a) // 2) * ((n2 + b) // 2)
        return a * b - m <= c <= m
    if a < 0 and b < 0:
        m = ((n1 - a) // 2) * ((n2 - b) // 2)
        return a * b - m <= c <= m
    if a >= 0:
        m = ((n1 + a) // 2) * ((n2 - b) // 2)
        return -m <= c <= a * b + m
    m = ((n1 - a) // 2) * ((n2 + b) // 2)
    return -m <= c <= a * b + m


def enumerate_progression(n1: int, n2: int, cap: int = DEFAULT_ENUM_CAP) -> frozenset:
    """All points of P(n1, n2) by breadth-first search over letter budgets.

    States are (point, used A letters, used B letters); a point is kept
    once any state reaches it. Exponential in n1 + n2, hence the cap.
    """
    if n1 < 0 or n2 < 0:
        raise DomainError(f"budgets must be nonnegative, got ({n1}, {n2})")
    if n1 + n2 > cap:
        raise ResourceLimitError(f"enumeration budget {n1}+{n2} exceeds cap {cap}")
    start = (IDENTITY, 0, 0)
    seen = {start}
    points = {IDENTITY}
    queue = deque([start])
    while queue:
        point, used_a, used_b = queue.popleft()
        moves = []
        if used_a < n1:
            moves.append((h_mul(point, GEN_A), used_a + 1, used_b))
            moves.append((h_mul(point, h_inv(GEN_A)), used_a + 1, used_b))
        if used_b < n2:
            moves.append((h_mul(point, GEN_B), used_a, used_b + 1))
            moves.append((h_mul(point, h_inv(GEN_B)), used_a, used_b + 1))
        for state in moves:
            if state not in seen:
                seen.add(state)
                points.add(state[0])
                queue.append(state)
    return frozenset(points)


def witness_word(p: Sequence[int], n1: int, n2: int) -> str:
    """A word within the letter budgets whose value is p.

    Builds the extremal word for the sign-normalized point, then walks its
    sorting trace to the intermediate word with the required commutator
    count, and finally undoes the sign normalization letterwise.
    """
    p = HPoint(*p)
    if not membership(HProgressionSpec(n1, n2), p):
        raise DomainError(f"{tuple(p)} is not in P({n1}, {n2})")
    if p == IDENTITY:
        return ""
    a, b, c = p
    neg_a = a < 0
    if neg_a:
        a, c = -a, -c
    neg_b = b < 0
    if neg_b:
        b, c = -b, -c
    q1 = (n1 + a) // 2
    q2 = (n2 + b) // 2
    # Value (a, b, q1*q2), the largest central coordinate over this (a, b).
    top = "b" * (q2 - b) + "A" * q1 + "B" * q2 + "a" * (q1 - a)
    if c >= 0:
        start, c0 = top, q1 * q2
    else:
        # Reversing a word sends its value (a, b, c') to (a, b, a*b - c'),
        # so the reversed extremal word has the smallest central coordinate.
        start, c0 = top[::-1], a * b - q1 * q2
    word = None
    for step_word, j in _trace_steps(start):
        # value(step_word) == (a, b, c0 - j), so hit j == c0 - c.
        if j == c0 - c:
            word = step_word
            break
    if word is None:
        raise RuntimeError(f"trace walk missed target for {tuple(p)} in P({n1}, {n2})")
    if neg_b:
        word = flip_b(word)
    if neg_a:
        word = flip_a(word)
    return word


def verify_cells(nmax: int, cap: int = DEFAULT_ENUM_CAP, inject_fault: bool = False) -> dict:
    """Compare the membership formula with enumeration for all budgets <= nmax.

    Scans the box |a| <= n1, |b| <= n2, |c| <= n1*n2 + 1 for each cell;
    both the formula and the enumeration are confined to it. The fault
    injection flips one verdict in the last cell as a negative control.
    """
    if nmax < 0:
        raise DomainError("nmax must be nonnegative")
    cells = []
    total_mismatches = 0
    for n1 in range(nmax + 1):
        for n2 in range(nmax + 1):
            spec = HProgressionSpec(n1, n2)
            points = enumerate_progression(n1, n2, cap=cap)
            mismatches = []
            for a in range(-n1, n1 + 1):
                for b in range(-n2, n2 + 1):
                    for c in range(-(n1 * n2 + 1), n1 * n2 + 2):
                        p = HPoint(a, b, c)
                        verdict = membership(spec, p)
                        if inject_fault and (n1, n2) == (nmax, nmax) and p == IDENTITY:
                            verdict = not verdict
                        if verdict != (p in points):
                            mismatches.append(p)
            stray = [p for p in points if abs(p.c) > n1 * n2 + 1]
            mismatches.extend(stray)
            total_mismatches += len(mismatches)
            cells.append(
                {
                    "n1": n1,
                    "n2": n2,
                    "size": len(points),
                    "mismatches": [list(p) for p in sorted(mismatches)],
                }
            )
    return {"nmax": nmax, "cells": cells, "mismatch_count": total_mismatches}
