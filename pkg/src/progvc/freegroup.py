"""Free groups of finite rank, their Cayley trees, and generalized progressions.

Elements are reduced words stored as tuples of nonzero signed generator
indices: 2 means the second generator, -2 its inverse, so ``(2, 2, -1)``
is a2 * a2 * a1^-1. Text form uses tokens ``i^e`` joined by ``*`` (``e``
alone is the identity), e.g. ``"2^5*1^3"``.

The progression P(N1, ..., Nk) consists of the points whose reduced word
uses at most Ni letters from {a_i, a_i^-1} for each i; a left translate
g * P(Nbar) is then exactly the set of x with d_i(g, x) <= N_i, where d_i
counts occurrences of a_i and its inverse in the reduced word of g^-1 x.
Everything here leans on the Cayley graph being a tree: geodesics are
unique, the d_i add along paths, and translated progressions are connected
subtrees.

Shattering questions for these translates are decided exactly: any cutting
translate can be slid to an entry vertex h of the minimal tree of X without
changing its trace, and at h only the componentwise-minimal bounds matter,
so scanning (vertex, minimal bounds) pairs is a complete search.
"""

from __future__ import annotations

import random
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import DomainError, ResourceLimitError
from .setsystem import ShatterReport

DEFAULT_SET_CAP = 14


@dataclass(frozen=True)
class FWord:
    """A reduced word in the free group of the given rank.

    Input letters may be unreduced; adjacent inverse pairs are cancelled
    on construction.
    """

    rank: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise DomainError(f"rank must be at least 1, got {self.rank}")
        stack: list[int] = []
        for x in self.letters:
            if not isinstance(x, int) or x == 0 or abs(x) > self.rank:
                raise DomainError(f"letter {x!r} is not a signed index in 1..{self.rank}")
            if stack and stack[-1] == -x:
                stack.pop()
            else:
                stack.append(x)
        object.__setattr__(self, "letters", tuple(stack))

    def __mul__(self, other: "FWord") -> "FWord":
        return multiply(self, other)

    def inverse(self) -> "FWord":
        return invert(self)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"FWord({self.rank}, {format_word(self)!r})"


def identity(rank: int) -> FWord:
    return FWord(rank, ())


def generator(rank: int, i: int) -> FWord:
    if not 1 <= i <= rank:
        raise DomainError(f"generator index {i} out of range 1..{rank}")
    return FWord(rank, (i,))


def _same_rank(u: FWord, v: FWord) -> int:
    if u.rank != v.rank:
        raise DomainError(f"mixed ranks {u.rank} and {v.rank}")
    return u.rank


def multiply(u: FWord, v: FWord) -> FWord:
    return FWord(_same_rank(u, v), u.letters + v.letters)


def invert(u: FWord) -> FWord:
    return FWord(u.rank, tuple(-x for x in reversed(u.letters)))


def power(u: FWord, n: int) -> FWord:
    base = u if n >= 0 else invert(u)
    return FWord(u.rank, base.letters * abs(n))


def _letter_key(x: int) -> tuple[int, int]:
    return (abs(x), 0 if x > 0 else 1)


def word_key(u: FWord) -> tuple:
    """Length-then-lexicographic sort key; a_i sorts before a_i^-1."""
    return (len(u.letters), tuple(_letter_key(x) for x in u.letters))


_TOKEN = re.compile(r"(\d+)(?:\^(-?\d+))?$")


def parse_word(rank: int, text: str) -> FWord:
    text = text.strip()
    if text == "e":
        return identity(rank)
    if not text:
        raise DomainError("empty word text; use 'e' for the identity")
    letters: list[int] = []
    for token in text.split("*"):
        m = _TOKEN.match(token.strip())
        if not m:
            raise DomainError(f"bad word token {token!r}; expected forms like '2^5' or '1^-3'")
        i = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) is not None else 1
        if not 1 <= i <= rank:
            raise DomainError(f"generator index {i} out of range 1..{rank}")
        letters.extend([i if exp > 0 else -i] * abs(exp))
    return FWord(rank, tuple(letters))


def format_word(u: FWord) -> str:
    if not u.letters:
        return "e"
    tokens = []
    run_letter, run = u.letters[0], 0
    for x in u.letters + (0,):
        if x == run_letter:
            run += 1
        else:
            tokens.append(f"{abs(run_letter)}^{run if run_letter > 0 else -run}")
            run_letter, run = x, 1
    return "*".join(tokens)


def dist_i(i: int, x: FWord, y: FWord) -> int:
    """Occurrences of a_i or its inverse in the reduced word of x^-1 y."""
    k = _same_rank(x, y)
    if not 1 <= i <= k:
        raise DomainError(f"coordinate {i} out of range 1..{k}")
    return sum(1 for v in multiply(invert(x), y).letters if abs(v) == i)


def dist_vector(x: FWord, y: FWord) -> tuple[int, ...]:
    counts = [0] * _same_rank(x, y)
    for v in multiply(invert(x), y).letters:
        counts[abs(v) - 1] += 1
    return tuple(counts)


def dist(x: FWord, y: FWord) -> int:
    """Word metric: the length of the reduced word of x^-1 y."""
    _same_rank(x, y)
    return len(multiply(invert(x), y).letters)


def path(v: FWord, w: FWord) -> list[FWord]:
    """Vertices of the geodesic from v to w, endpoints included."""
    k = _same_rank(v, w)
    out = [v]
    cur = list(v.letters)
    for step in multiply(invert(v), w).letters:
        if cur and cur[-1] == -step:
            cur.pop()
        else:
            cur.append(step)
        out.append(FWord(k, tuple(cur)))
    return out


class TreeSlice:
    """A finite vertex set of the Cayley tree with its induced adjacency."""

    def __init__(self, rank: int, vertices: Iterable[FWord], adjacency: Optional[dict] = None):
        self.rank = rank
        self.vertices = frozenset(vertices)
        if adjacency is None:
            adjacency = {v: set() for v in self.vertices}
            for v in self.vertices:
                for i in range(1, rank + 1):
                    for sign in (1, -1):
                        w = multiply(v, FWord(rank, (sign * i,)))
                        if w in self.vertices:
                            adjacency[v].add(w)
        self._adj = adjacency

    def __contains__(self, v: FWord) -> bool:
        return v in self.vertices

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def neighbors(self, v: FWord) -> frozenset:
        return frozenset(self._adj[v])

    def degree(self, v: FWord) -> int:
        return len(self._adj[v])


def _common_rank(points: Iterable[FWord]) -> int:
    ranks = {p.rank for p in points}
    if not ranks:
        raise DomainError("need at least one point")
    if len(ranks) > 1:
        raise DomainError(f"mixed ranks {sorted(ranks)}")
    return ranks.pop()


def minimal_tree(points: Iterable[FWord]) -> TreeSlice:
    """Smallest subtree containing the points: the union of geodesics from
    one fixed member to the rest (geodesics in a tree are unique, so any
    connected superset contains all of them)."""
    pts = set(points)
    rank = _common_rank(pts)
    base = min(pts, key=word_key)
    vertices = {base}
    adjacency: dict[FWord, set] = {base: set()}
    for p in pts:
        walk = path(base, p)
        for u, v in zip(walk, walk[1:]):
            if v not in adjacency:
                adjacency[v] = set()
                vertices.add(v)
            adjacency[u].add(v)
            adjacency[v].add(u)
    return TreeSlice(rank, vertices, adjacency)


def leaves(tree: TreeSlice) -> frozenset:
    """Vertices of degree at most 1."""
    return frozenset(v for v in tree.vertices if tree.degree(v) <= 1)


def branches(tree: TreeSlice, p: FWord) -> tuple[frozenset, ...]:
    """Connected components of the tree with p removed, in canonical order."""
    if p not in tree.vertices:
        raise DomainError(f"{p} is not a vertex of the tree")
    remaining = set(tree.vertices) - {p}
    parts = []
    while remaining:
        seed = min(remaining, key=word_key)
        comp = {seed}
        frontier = [seed]
        while frontier:
            v = frontier.pop()
            for w in tree.neighbors(v):
                if w in remaining and w not in comp:
                    comp.add(w)
                    frontier.append(w)
        remaining -= comp
        parts.append(frozenset(comp))
    return tuple(sorted(parts, key=lambda c: word_key(min(c, key=word_key))))


def branches_star(tree: TreeSlice, p: FWord) -> tuple[frozenset, ...]:
    """Branches at p followed by the singleton {p}; a partition of the tree."""
    return branches(tree, p) + (frozenset([p]),)


@dataclass(frozen=True)
class DominatingSequence:
    """For each part B of the partition at the center, a choice function
    picking, per coordinate i, a point of X outside B whose d_i-distance
    to the center dominates all of X outside B.

    ``parts`` lists the branches at the center followed by the singleton
    part; ``choices[j][i-1]`` is the pick for part j and coordinate i.
    """

    center: FWord
    parts: tuple[frozenset, ...]
    choices: tuple[tuple[FWord, ...], ...]

    def image(self) -> frozenset:
        return frozenset(p for row in self.choices for p in row)


def dominating_sequence(points: Iterable[FWord], p: FWord) -> DominatingSequence:
    """Greedy construction: pick the d_i-farthest point from p globally,
    and fall back to the farthest point outside B only when the global
    pick lands inside B. Ties go to the smallest word in length-then-lex
    order. The image never exceeds 2k points: for each coordinate the
    global pick lies in a single branch, so at most one fallback appears.
    """
    pts = set(points)
    rank = _common_rank(pts)
    tree = minimal_tree(pts)
    if p not in tree.vertices or p in pts:
        raise DomainError("center must be a vertex of the minimal tree outside the point set")
    parts = branches_star(tree, p)
    dists = {x: dist_vector(p, x) for x in pts}

    # Deterministic argmax: largest distance, then smallest word.
    def pick(i: int, pool: set) -> FWord:
        best = max(dists[x][i - 1] for x in pool)
        return min((x for x in pool if dists[x][i - 1] == best), key=word_key)

    global_row = tuple(pick(i, pts) for i in range(1, rank + 1))
    choices = []
    for part in parts:
        pool = pts - part
        if not pool:
            raise DomainError("every part must leave some point of X outside it")
        row = tuple(
            global_row[i - 1] if global_row[i - 1] in pool else pick(i, pool)
            for i in range(1, rank + 1)
        )
        choices.append(row)
    # The singleton part {p} excludes nothing from X, so its row is the
    # global one; keep parts and choices aligned regardless.
    return DominatingSequence(center=p, parts=parts, choices=tuple(choices))


@dataclass(frozen=True)
class FProgressionSpec:
    """Left translate of P(bounds) by ``translate``."""

    bounds: tuple[int, ...]
    translate: FWord

    def __post_init__(self):
        object.__setattr__(self, "bounds", tuple(self.bounds))
        if len(self.bounds) != self.translate.rank:
            raise DomainError(
                f"{len(self.bounds)} bounds for rank {self.translate.rank}"
            )
        if any(n < 0 for n in self.bounds):
            raise DomainError(f"bounds must be nonnegative, got {self.bounds}")

    def __str__(self) -> str:
        return f"{format_word(self.translate)}*P({', '.join(map(str, self.bounds))})"


def progression_contains(spec: FProgressionSpec, x: FWord) -> bool:
    dv = dist_vector(spec.translate, x)
    return all(d <= n for d, n in zip(dv, spec.bounds))


def progression_trace(spec: FProgressionSpec, points: Iterable[FWord]) -> frozenset:
    return frozenset(x for x in points if progression_contains(spec, x))


def normalize_entry_point(
    connected_points: Iterable[FWord], spec: FProgressionSpec
) -> Optional[FProgressionSpec]:
    """Slide a translate to its entry vertex in a connected set.

    For connected X, the point h of X closest to g lies on every geodesic
    from g into X, so d_i(g, x) = d_i(g, h) + d_i(h, x) for all x in X and
    the trace of g*P(Nbar) on X equals that of h*P(Nbar - dists(g, h)).
    Returns None when some reduced bound would be negative, i.e. the
    translate misses X entirely.
    """
    pts = set(connected_points)
    rank = _common_rank(pts)
    if len(spec.bounds) != rank:
        raise DomainError("spec rank does not match the point set")
    tree = TreeSlice(rank, pts)
    seed = next(iter(pts))
    seen = {seed}
    frontier = [seed]
    while frontier:
        v = frontier.pop()
        for w in tree.neighbors(v):
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    if seen != pts:
        raise DomainError("point set is not connected")
    g = spec.translate
    h = min(pts, key=lambda x: (dist(g, x),) + word_key(x))
    drop = dist_vector(g, h)
    if any(d > n for d, n in zip(drop, spec.bounds)):
        return None
    return FProgressionSpec(tuple(n - d for n, d in zip(spec.bounds, drop)), h)


def _empty_trace_spec(points_sorted: Sequence[FWord]) -> FProgressionSpec:
    # Zero bounds and a translate strictly farther out along a_1 than any
    # point: the only candidate member is the translate itself, which by
    # construction is not one of the points.
    rank = points_sorted[0].rank
    top = max(sum(1 for v in x.letters if abs(v) == 1) for x in points_sorted)
    g = FWord(rank, (1,) * (top + 1))
    return FProgressionSpec((0,) * rank, g)


def _witness_scan(
    verts: Sequence[FWord],
    rows: Sequence[Sequence[tuple[int, ...]]],
    want: int,
    npoints: int,
    rank: int,
) -> Optional[tuple[int, tuple[int, ...]]]:
    # Complete search for a translate cutting out the subset encoded by the
    # bitmask ``want`` (bit j = point j). Any cutting translate g*P(Nbar)
    # with nonempty trace slides to its entry vertex h of the minimal tree
    # with the same trace, and at h the componentwise-minimal bounds (the
    # max distance to the kept points, per coordinate) give the smallest
    # trace containing them. Larger bounds only add points, so checking the
    # minimal bounds at every vertex decides the subset exactly.
    for hi, row in enumerate(rows):
        bounds = [0] * rank
        for j in range(npoints):
            if want >> j & 1:
                dv = row[j]
                for i in range(rank):
                    if dv[i] > bounds[i]:
                        bounds[i] = dv[i]
        ok = True
        for j in range(npoints):
            dv = row[j]
            inside = True
            for i in range(rank):
                if dv[i] > bounds[i]:
                    inside = False
                    break
            if inside != bool(want >> j & 1):
                ok = False
                break
        if ok:
            return hi, tuple(bounds)
    return None


def _search_tables(points_sorted: Sequence[FWord]):
    tree = minimal_tree(points_sorted)
    verts = sorted(tree.vertices, key=word_key)
    rows = [[dist_vector(h, x) for x in points_sorted] for h in verts]
    return verts, rows


def cuts_out_free(
    points: Iterable[FWord], subset: Iterable[FWord], cap: int = DEFAULT_SET_CAP
) -> Optional[FProgressionSpec]:
    """A translated progression whose trace on the points is exactly the
    subset, or None if no translate achieves it."""
    pts = sorted(set(points), key=word_key)
    rank = _common_rank(pts)
    if len(pts) > cap:
        raise ResourceLimitError(f"point set of size {len(pts)} exceeds cap {cap}")
    sub = set(subset)
    if not sub <= set(pts):
        raise DomainError("subset must be contained in the point set")
    if not sub:
        return _empty_trace_spec(pts)
    want = 0
    for j, x in enumerate(pts):
        if x in sub:
            want |= 1 << j
    verts, rows = _search_tables(pts)
    hit = _witness_scan(verts, rows, want, len(pts), rank)
    if hit is None:
        return None
    hi, bounds = hit
    return FProgressionSpec(bounds, verts[hi])


def is_shattered_free(points: Iterable[FWord], cap: int = DEFAULT_SET_CAP) -> ShatterReport:
    """Exhaustive shattering check against all translated progressions."""
    pts = sorted(set(points), key=word_key)
    rank = _common_rank(pts)
    if len(pts) > cap:
        raise ResourceLimitError(f"point set of size {len(pts)} exceeds cap {cap}")
    verts, rows = _search_tables(pts)
    n = len(pts)
    witnesses = {}
    missing = []
    for want in range(1 << n):
        sub = frozenset(pts[j] for j in range(n) if want >> j & 1)
        if want == 0:
            witnesses[sub] = _empty_trace_spec(pts)
            continue
        hit = _witness_scan(verts, rows, want, n, rank)
        if hit is None:
            missing.append(sub)
        else:
            witnesses[sub] = FProgressionSpec(hit[1], verts[hit[0]])
    return ShatterReport(
        target=frozenset(pts),
        shattered=not missing,
        missing=tuple(missing),
        witnesses=witnesses,
    )


def _tripod_search(tree: TreeSlice, pts: set, arm: int):
    for p in sorted(tree.vertices - pts, key=word_key):
        if tree.degree(p) != 3:
            continue
        parts = branches(tree, p)
        if len(parts) == 3 and all(len(part & pts) == arm for part in parts):
            return p, parts
    return None


def tripod_profile(points: Iterable[FWord]) -> Optional[tuple[FWord, tuple[frozenset, ...]]]:
    """A vertex of the minimal tree, outside the points, with exactly three
    branches each containing a third of the points; None if there is none.

    For a set of size 3k shattered by translated progressions such a vertex
    must exist, so absence certifies non-shattering for those sets.
    """
    pts = set(points)
    _common_rank(pts)
    if not pts or len(pts) % 3:
        raise DomainError(f"point count {len(pts)} is not a positive multiple of 3")
    tree = minimal_tree(pts)
    return _tripod_search(tree, pts, len(pts) // 3)


def _decide_shattered(points_sorted: Sequence[FWord]) -> str:
    """Verdict for one candidate set, cheapest certificates first.

    Returns one of "rejected-leaf", "rejected-tripod", "rejected-scan",
    "shattered". The two filters are sound: translated progressions are
    connected, so a shattered set consists of leaves of its minimal tree;
    and a shattered set of size 3k admits a tripod vertex.
    """
    pts = set(points_sorted)
    rank = points_sorted[0].rank
    tree = minimal_tree(pts)
    if frozenset(pts) != leaves(tree):
        return "rejected-leaf"
    if len(pts) == 3 * rank and _tripod_search(tree, pts, rank) is None:
        return "rejected-tripod"
    verts = sorted(tree.vertices, key=word_key)
    rows = [[dist_vector(h, x) for x in points_sorted] for h in verts]
    n = len(points_sorted)
    for want in range(1, 1 << n):
        if _witness_scan(verts, rows, want, n, rank) is None:
            return "rejected-scan"
    return "shattered"


def sample_word(rng: random.Random, rank: int, max_len: int) -> FWord:
    """Uniform length in 0..max_len, then uniform reduced letters."""
    length = rng.randint(0, max_len)
    letters: list[int] = []
    pool = [s * i for i in range(1, rank + 1) for s in (1, -1)]
    for _ in range(length):
        choices = [x for x in pool if not letters or x != -letters[-1]]
        letters.append(rng.choice(choices))
    return FWord(rank, tuple(letters))


def sample_point_set(rng: random.Random, rank: int, size: int, max_len: int) -> frozenset:
    pts: set[FWord] = set()
    attempts = 0
    while len(pts) < size:
        pts.add(sample_word(rng, rank, max_len))
        attempts += 1
        if attempts > 1000 * size:
            raise ResourceLimitError(
                f"could not sample {size} distinct words of length <= {max_len}"
            )
    return frozenset(pts)


def search_shattered_sets(
    rank: int,
    size: int,
    samples: int,
    seed: int,
    max_len: int = 12,
    cap: int = DEFAULT_SET_CAP,
    threads: int = 1,
) -> dict:
    """Sample random point sets and decide shattering for each.

    Sampling is sequential from one seeded generator and verdicts are
    merged in sample order, so the report is identical for any thread
    count. ``shattered`` lists any shattered sets found, as word texts.
    """
    if size < 1 or samples < 0 or max_len < 0:
        raise DomainError("size must be >= 1 and samples, max_len >= 0")
    if size > cap:
        raise ResourceLimitError(f"set size {size} exceeds cap {cap}")
    rng = random.Random(seed)
    sets = [
        sorted(sample_point_set(rng, rank, size, max_len), key=word_key)
        for _ in range(samples)
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            verdicts = list(pool.map(_decide_shattered, sets))
    else:
        verdicts = [_decide_shattered(pts) for pts in sets]
    tally = {"rejected-leaf": 0, "rejected-tripod": 0, "rejected-scan": 0, "shattered": 0}
    shattered = []
    for pts, verdict in zip(sets, verdicts):
        tally[verdict] += 1
        if verdict == "shattered":
            shattered.append([format_word(x) for x in pts])
    return {
        "rank": rank,
        "size": size,
        "samples": samples,
        "seed": seed,
        "max_len": max_len,
        "threads": threads,
        "verdicts": tally,
        "shattered": shattered,
    }


def generator_shatter_witness(
    rank: int, bounds: Sequence[int], subset: Iterable[int]
) -> FProgressionSpec:
    """A translate of P(bounds) whose trace on {a_1, ..., a_k} is exactly
    the generators indexed by ``subset``; requires every bound >= 1.

    For empty subsets the translate a_1^(N_1 + 2) is far enough out to
    miss every generator. Otherwise, with j the least chosen index, the
    translate a_j * a_{i_1}^{N_{i_1}} * ... over the complement indices
    i_1 < i_2 < ... spends the full budget of each excluded generator.
    """
    bounds = tuple(bounds)
    if len(bounds) != rank:
        raise DomainError(f"{len(bounds)} bounds for rank {rank}")
    if any(n < 1 for n in bounds):
        raise DomainError(f"bounds must all be at least 1, got {bounds}")
    chosen = sorted(set(subset))
    if chosen and not (1 <= chosen[0] and chosen[-1] <= rank):
        raise DomainError(f"subset indices {chosen} out of range 1..{rank}")
    if not chosen:
        g = power(generator(rank, 1), bounds[0] + 2)
    else:
        j = chosen[0]
        letters = [j]
        for i in range(1, rank + 1):
            if i not in chosen:
                letters.extend([i] * bounds[i - 1])
        g = FWord(rank, tuple(letters))
    spec = FProgressionSpec(bounds, g)
    got = {i for i in range(1, rank + 1) if progression_contains(spec, generator(rank, i))}
    if got != set(chosen):
        raise RuntimeError(f"witness traced {sorted(got)} instead of {chosen}")
    return spec
