"""Tests for free-group words, tree geometry, and progression shattering.

The complete cut-out search is validated against an independent oracle in
rank 1, where translated progressions are exactly the integer intervals
[g - N, g + N] and existence of a cutting interval can be decided by a
direct window scan.
"""

import random

import pytest
from hypothesis import given, settings, strategies as st

from progvc.errors import DomainError, ResourceLimitError
from progvc.freegroup import (
    DominatingSequence,
    FProgressionSpec,
    FWord,
    branches,
    branches_star,
    cuts_out_free,
    dist,
    dist_i,
    dist_vector,
    dominating_sequence,
    format_word,
    generator,
    generator_shatter_witness,
    identity,
    invert,
    is_shattered_free,
    leaves,
    minimal_tree,
    multiply,
    normalize_entry_point,
    parse_word,
    path,
    power,
    progression_contains,
    progression_trace,
    sample_point_set,
    sample_word,
    search_shattered_sets,
    tripod_profile,
    word_key,
)


def w2(text):
    return parse_word(2, text)


def w1(value):
    return power(generator(1, 1), value)


def fwords(rank=2, max_len=8):
    letter = st.sampled_from([s * i for i in range(1, rank + 1) for s in (1, -1)])
    return st.lists(letter, max_size=max_len).map(lambda ls: FWord(rank, tuple(ls)))


def reference_four_set():
    return [w2("1^10"), w2("2^-10"), w2("1^-5"), w2("2^5*1^3")]


# ------------------------------------------------------------------ words


def test_construction_reduces():
    assert FWord(1, (1, -1)).letters == ()
    assert FWord(2, (1, 2, -2, -1, 2)).letters == (2,)


def test_construction_rejects_bad_letters():
    with pytest.raises(DomainError):
        FWord(2, (0,))
    with pytest.raises(DomainError):
        FWord(2, (3,))
    with pytest.raises(DomainError):
        FWord(0, ())


def test_multiply_and_invert_examples():
    assert multiply(w2("1^1*2^1"), w2("2^-1*1^1")) == w2("1^2")
    assert invert(w2("2^5*1^3")) == w2("1^-3*2^-5")
    assert str(invert(w2("2^5*1^3"))) == "1^-3*2^-5"


@given(fwords(), fwords(), fwords())
def test_group_axioms(u, v, w):
    assert multiply(multiply(u, v), w) == multiply(u, multiply(v, w))
    e = identity(2)
    assert multiply(u, e) == u == multiply(e, u)
    assert multiply(u, invert(u)) == e


def test_parse_and_format():
    assert w2("e") == identity(2)
    assert parse_word(1, "1^0") == identity(1)
    assert w2("2^5*1^3").letters == (2, 2, 2, 2, 2, 1, 1, 1)
    assert w2("1^-5").letters == (-1,) * 5
    assert format_word(w2("2^5*1^3")) == "2^5*1^3"
    assert format_word(FWord(2, (1, 1, 1, -2, -2))) == "1^3*2^-2"
    assert format_word(identity(2)) == "e"
    for bad in ("0^2", "3^1", "1^", "x", ""):
        with pytest.raises(DomainError):
            w2(bad)


@given(fwords())
def test_text_round_trip(u):
    assert parse_word(2, format_word(u)) == u


def test_word_key_orders_by_length_then_letters():
    words = [w2(t) for t in ("1^-1", "e", "2^1", "1^2", "1^1", "2^-1")]
    assert sorted(words, key=word_key) == [
        w2(t) for t in ("e", "1^1", "1^-1", "2^1", "2^-1", "1^2")
    ]


# ----------------------------------------------------------------- metrics


def test_distance_examples():
    assert dist_vector(w2("1^10"), w2("2^-10")) == (10, 10)
    assert dist_vector(identity(2), w2("2^5*1^3")) == (3, 5)
    assert dist_i(1, w2("1^4*2^2"), w2("1^4*2^2")) == 0
    with pytest.raises(DomainError):
        dist_i(3, identity(2), identity(2))
    with pytest.raises(DomainError):
        dist(identity(1), identity(2))


@given(fwords(), fwords(), fwords())
def test_pseudometric_axioms(x, y, z):
    for i in (1, 2):
        assert dist_i(i, x, y) == dist_i(i, y, x)
        assert dist_i(i, x, y) <= dist_i(i, x, z) + dist_i(i, z, y)
    assert dist(x, y) == sum(dist_vector(x, y))
    if dist(x, y) == 0:
        assert x == y


@given(fwords(), fwords(), fwords())
def test_left_invariance(g, x, y):
    assert dist_vector(multiply(g, x), multiply(g, y)) == dist_vector(x, y)


def test_path_examples():
    e = identity(2)
    assert path(e, w2("1^1*2^1")) == [e, w2("1^1"), w2("1^1*2^1")]
    assert path(w2("2^3"), w2("2^3")) == [w2("2^3")]


@given(fwords(), fwords())
def test_path_shape(v, w):
    walk = path(v, w)
    assert walk[0] == v and walk[-1] == w
    assert len(walk) == dist(v, w) + 1
    for a, b in zip(walk, walk[1:]):
        assert dist(a, b) == 1


@given(fwords(), fwords(), st.data())
def test_distances_add_along_paths(x, y, data):
    walk = path(x, y)
    z = data.draw(st.sampled_from(walk))
    for i in (1, 2):
        assert dist_i(i, x, y) == dist_i(i, x, z) + dist_i(i, z, y)


# ------------------------------------------------------------------- trees


def test_minimal_tree_examples():
    e = identity(2)
    a1, a2 = generator(2, 1), generator(2, 2)
    tree = minimal_tree([e, a1, a2])
    assert tree.vertices == {e, a1, a2}
    assert leaves(tree) == {a1, a2}

    single = minimal_tree([w2("1^2*2^1")])
    assert single.vertices == {w2("1^2*2^1")}
    assert leaves(single) == single.vertices

    through_origin = minimal_tree([a1, invert(a1)])
    assert through_origin.vertices == {a1, e, invert(a1)}
    assert leaves(through_origin) == {a1, invert(a1)}


@given(st.lists(fwords(max_len=6), min_size=1, max_size=5))
def test_minimal_tree_is_a_tree_containing_the_points(points):
    tree = minimal_tree(points)
    assert set(points) <= tree.vertices
    edges = sum(tree.degree(v) for v in tree.vertices)
    assert edges == 2 * (len(tree.vertices) - 1)
    seen = set()
    frontier = [next(iter(tree.vertices))]
    while frontier:
        v = frontier.pop()
        if v in seen:
            continue
        seen.add(v)
        frontier.extend(tree.neighbors(v))
    assert seen == tree.vertices


def test_branches_examples():
    a1 = generator(2, 1)
    e = identity(2)
    tree = minimal_tree([a1, invert(a1)])
    parts = branches(tree, e)
    assert parts == (frozenset({a1}), frozenset({invert(a1)}))

    three = minimal_tree([a1, generator(2, 2), invert(a1)])
    assert len(branches(three, e)) == 3
    # At a leaf the rest of the tree is one component.
    assert len(branches(three, a1)) == 1

    star = branches_star(three, e)
    assert star[-1] == frozenset({e})
    assert frozenset().union(*star) == three.vertices

    with pytest.raises(DomainError):
        branches(tree, w2("2^2"))


def test_dominating_sequence_rank_one_example():
    pts = [w1(2), w1(-2)]
    seq = dominating_sequence(pts, identity(1))
    assert seq.center == identity(1)
    # The singleton part comes last; its pick is the global one, with the
    # tie between the two points broken to the length-lex smaller a_1^2.
    assert seq.parts[-1] == frozenset({identity(1)})
    assert seq.choices[-1] == (w1(2),)
    assert seq.image() == {w1(2), w1(-2)}


def test_dominating_sequence_requires_interior_center():
    pts = [w1(2), w1(-2)]
    with pytest.raises(DomainError):
        dominating_sequence(pts, w1(2))
    with pytest.raises(DomainError):
        dominating_sequence(pts, w1(9))


@given(st.sets(fwords(max_len=5), min_size=3, max_size=5))
def test_dominating_sequence_properties(points):
    tree = minimal_tree(points)
    interior = sorted(tree.vertices - set(points), key=word_key)
    if not interior:
        return
    p = interior[0]
    seq = dominating_sequence(points, p)
    assert len(seq.image()) <= 2 * 2
    global_row = seq.choices[-1]
    for part, row in zip(seq.parts, seq.choices):
        outside = set(points) - part
        for i in (1, 2):
            choice = row[i - 1]
            assert choice in outside
            assert all(dist_i(i, choice, p) >= dist_i(i, x, p) for x in outside)
            if global_row[i - 1] not in part:
                assert choice == global_row[i - 1]


# ----------------------------------------------------------- progressions


def test_progression_contains_examples():
    e = identity(2)
    wide = FProgressionSpec((10, 10), e)
    for x in (w2("1^10"), w2("2^-10"), e):
        assert progression_contains(wide, x)
    tight = FProgressionSpec((0, 0), e)
    assert progression_contains(tight, e)
    assert not progression_contains(tight, w2("1^1"))
    shifted = FProgressionSpec((10, 1), w2("1^10"))
    assert progression_contains(shifted, w2("1^10"))
    assert not progression_contains(shifted, w2("1^-5"))


def test_spec_validation_and_text():
    with pytest.raises(DomainError):
        FProgressionSpec((1,), identity(2))
    with pytest.raises(DomainError):
        FProgressionSpec((1, -1), identity(2))
    assert str(FProgressionSpec((10, 1), w2("1^10"))) == "1^10*P(10, 1)"


def members_of(spec):
    # Independent enumeration: the members are exactly translate * u over
    # reduced words u whose per-generator letter counts stay within bounds.
    rank = spec.translate.rank
    out = set()

    def walk(letters, budgets):
        out.add(multiply(spec.translate, FWord(rank, tuple(letters))))
        for i in range(1, rank + 1):
            if not budgets[i - 1]:
                continue
            for s in (1, -1):
                if letters and letters[-1] == -s * i:
                    continue
                budgets[i - 1] -= 1
                letters.append(s * i)
                walk(letters, budgets)
                letters.pop()
                budgets[i - 1] += 1

    walk([], list(spec.bounds))
    return out


@given(fwords(max_len=4), st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_progression_members_enumerate_exactly(g, bounds):
    spec = FProgressionSpec(bounds, g)
    members = members_of(spec)
    for x in members:
        assert progression_contains(spec, x)
    # Boundary probe: one step past any member in a fresh direction must
    # leave the progression when that coordinate's budget is exhausted.
    for x in members:
        for i in (1, 2):
            if dist_i(i, g, x) == bounds[i - 1]:
                for s in (1, -1):
                    y = multiply(x, FWord(2, (s * i,)))
                    if dist_i(i, g, y) > bounds[i - 1]:
                        assert y not in members
                        assert not progression_contains(spec, y)


@settings(max_examples=40)
@given(fwords(max_len=3), st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_progressions_are_connected(g, bounds):
    members = members_of(FProgressionSpec(bounds, g))
    seen = {g}
    frontier = [g]
    while frontier:
        v = frontier.pop()
        for i in (1, 2):
            for s in (1, -1):
                nxt = multiply(v, FWord(2, (s * i,)))
                if nxt in members and nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
    assert seen == members


@settings(max_examples=40)
@given(fwords(max_len=3), st.tuples(st.integers(0, 2), st.integers(0, 2)), fwords(max_len=5))
def test_fork_criterion_implies_membership(g, bounds, x):
    # If for every coordinate some member y and some p on the geodesic
    # from g to y satisfy d_i(p, x) <= d_i(p, y), then x is a member.
    spec = FProgressionSpec(bounds, g)
    members = members_of(spec)
    for i in (1, 2):
        if not any(
            dist_i(i, p, x) <= dist_i(i, p, y) for y in members for p in path(g, y)
        ):
            return
    assert progression_contains(spec, x)


def test_normalize_entry_point_examples():
    verts = path(identity(1), w1(3))
    spec = FProgressionSpec((3,), w1(5))
    res = normalize_entry_point(verts, spec)
    assert res == FProgressionSpec((1,), w1(3))

    inside = FProgressionSpec((2,), w1(1))
    assert normalize_entry_point(verts, inside) == inside

    assert normalize_entry_point(verts, FProgressionSpec((1,), w1(5))) is None

    with pytest.raises(DomainError):
        normalize_entry_point([identity(1), w1(2)], FProgressionSpec((1,), w1(0)))


@settings(max_examples=60)
@given(st.sets(fwords(max_len=4), min_size=1, max_size=4), fwords(max_len=5), st.tuples(st.integers(0, 3), st.integers(0, 3)))
def test_normalize_entry_point_preserves_traces(points, g, bounds):
    verts = minimal_tree(points).vertices
    spec = FProgressionSpec(bounds, g)
    before = progression_trace(spec, verts)
    res = normalize_entry_point(verts, spec)
    if res is None:
        assert before == frozenset()
        return
    assert res.translate in verts
    drop = dist_vector(g, res.translate)
    assert res.bounds == tuple(n - d for n, d in zip(bounds, drop))
    assert progression_trace(res, verts) == before


# -------------------------------------------------------------- shattering


def interval_cut_exists(values, subset):
    # Rank-1 oracle. Any cutting interval [l, u] (l, u of equal parity,
    # since l = g - N and u = g + N) can be shrunk to l in {m-1, m} and
    # grown to u in {M, M+1} around the kept extremes m, M without
    # changing its trace, so scanning centers and radii near the value
    # range decides existence.
    if not subset:
        probe = max(values) + 2
        return all(v != probe for v in values)
    lo, hi = min(values), max(values)
    for g in range(lo - 1, hi + 2):
        for n in range(hi - lo + 3):
            if {v for v in values if g - n <= v <= g + n} == subset:
                return True
    return False


@settings(max_examples=60)
@given(st.sets(st.integers(-8, 8), min_size=1, max_size=5))
def test_cut_out_matches_interval_oracle_in_rank_one(values):
    points = {v: w1(v) for v in values}
    ordered = sorted(values)
    for mask in range(1 << len(ordered)):
        chosen = {ordered[i] for i in range(len(ordered)) if mask >> i & 1}
        spec = cuts_out_free(points.values(), {points[v] for v in chosen})
        found = spec is not None
        assert found == interval_cut_exists(values, chosen)
        if found:
            assert progression_trace(spec, points.values()) == {points[v] for v in chosen}


def test_cut_out_parity_obstruction():
    # {1, 2} cannot be cut from {0, 1, 2, 3}: an interval containing 1, 2
    # but neither 0 nor 3 would need endpoints 1 and 2, whose midpoint is
    # not an integer.
    pts = [w1(v) for v in range(4)]
    assert cuts_out_free(pts, [w1(1), w1(2)]) is None
    assert cuts_out_free(pts, [w1(1), w1(2), w1(3)]) is not None


def test_cut_out_examples():
    four = reference_four_set()
    w, z = w2("1^10"), w2("2^5*1^3")
    spec = cuts_out_free(four, [w, z])
    assert spec is not None
    assert progression_trace(spec, four) == {w, z}
    # A known witness for the same subset.
    assert progression_trace(FProgressionSpec((13, 5), w), four) == {w, z}

    everything = cuts_out_free(four, four)
    assert progression_trace(everything, four) == set(four)

    line = [w1(0), w1(5), w1(10)]
    assert cuts_out_free(line, [w1(0), w1(10)]) is None

    with pytest.raises(DomainError):
        cuts_out_free(four, [identity(2)])
    with pytest.raises(ResourceLimitError):
        cuts_out_free([w1(v) for v in range(15)], [])


@settings(max_examples=30)
@given(st.sets(fwords(max_len=5), min_size=2, max_size=4), st.data())
def test_cut_out_negatives_resist_random_specs(points, data):
    # When the complete search says no translate cuts a subset, random
    # probing must not find one either.
    pts = sorted(points, key=word_key)
    mask = data.draw(st.integers(0, (1 << len(pts)) - 1))
    chosen = {pts[i] for i in range(len(pts)) if mask >> i & 1}
    if cuts_out_free(pts, chosen) is not None:
        return
    rng = random.Random(99)
    verts = sorted(minimal_tree(pts).vertices, key=word_key)
    top = max(dist(u, v) for u in pts for v in pts)
    for _ in range(60):
        g = multiply(
            verts[rng.randrange(len(verts))],
            sample_word(rng, 2, rng.randint(0, 2)),
        )
        bounds = (rng.randint(0, top), rng.randint(0, top))
        assert progression_trace(FProgressionSpec(bounds, g), pts) != chosen


def test_reference_four_set_is_shattered():
    report = is_shattered_free(reference_four_set())
    assert report.shattered
    assert report.missing == ()
    assert len(report.witnesses) == 16
    for sub, spec in report.witnesses.items():
        assert progression_trace(spec, reference_four_set()) == sub


def test_generator_sets_are_shattered():
    for k in (2, 3):
        gens = [generator(k, i) for i in range(1, k + 1)]
        assert is_shattered_free(gens).shattered


def test_intervals_on_a_line_are_not_shattered():
    report = is_shattered_free([w1(0), w1(5), w1(10)])
    assert not report.shattered
    assert frozenset({w1(0), w1(10)}) in report.missing


def test_is_shattered_cap():
    with pytest.raises(ResourceLimitError):
        is_shattered_free([w1(v) for v in range(15)])


@settings(max_examples=40)
@given(st.sets(fwords(max_len=5), min_size=1, max_size=4))
def test_shattered_sets_are_leaf_sets(points):
    report = is_shattered_free(points)
    if report.shattered:
        assert leaves(minimal_tree(points)) == frozenset(points)


def test_tripod_profile_examples():
    a1, a2 = generator(2, 1), generator(2, 2)
    hit = tripod_profile([a1, a2, invert(a1)])
    assert hit is not None
    center, parts = hit
    assert center == identity(2)
    assert set(parts) == {frozenset({a1}), frozenset({invert(a1)}), frozenset({a2})}

    assert tripod_profile([w1(0), w1(1), w1(2)]) is None

    six = [w2(t) for t in ("1^1", "1^2", "2^1", "2^2", "1^-1", "1^-2")]
    hit = tripod_profile(six)
    assert hit is not None
    assert hit[0] == identity(2)
    assert all(len(part & set(six)) == 2 for part in hit[1])

    with pytest.raises(DomainError):
        tripod_profile([a1, a2])


def test_generator_witness_examples():
    spec = generator_shatter_witness(2, (1, 1), [1])
    assert str(spec.translate) == "1^1*2^1"
    assert spec.bounds == (1, 1)

    full = generator_shatter_witness(2, (1, 1), [1, 2])
    assert full.translate == generator(2, 1)

    empty = generator_shatter_witness(2, (1, 1), [])
    assert empty.translate == w2("1^3")
    gens = [generator(2, 1), generator(2, 2)]
    assert progression_trace(empty, gens) == frozenset()


def test_generator_witness_cuts_every_subset():
    for k in (2, 3):
        gens = {i: generator(k, i) for i in range(1, k + 1)}
        for bounds_mask in range(1 << k):
            bounds = tuple(1 + (bounds_mask >> i & 1) for i in range(k))
            for mask in range(1 << k):
                chosen = [i for i in range(1, k + 1) if mask >> (i - 1) & 1]
                spec = generator_shatter_witness(k, bounds, chosen)
                got = progression_trace(spec, gens.values())
                assert got == {gens[i] for i in chosen}


def test_generator_witness_validation():
    with pytest.raises(DomainError):
        generator_shatter_witness(2, (1, 0), [1])
    with pytest.raises(DomainError):
        generator_shatter_witness(2, (1,), [1])
    with pytest.raises(DomainError):
        generator_shatter_witness(2, (1, 1), [3])


# ------------------------------------------------------------------ search


def test_sample_word_respects_bounds():
    rng = random.Random(5)
    for _ in range(200):
        u = sample_word(rng, 2, 6)
        assert len(u) <= 6
        assert all(1 <= abs(x) <= 2 for x in u.letters)
    pts = sample_point_set(rng, 2, 5, 6)
    assert len(pts) == 5


def test_search_is_deterministic_and_thread_independent():
    one = search_shattered_sets(2, 6, 30, seed=7)
    two = search_shattered_sets(2, 6, 30, seed=7)
    threaded = search_shattered_sets(2, 6, 30, seed=7, threads=3)
    assert one == two
    assert {k: v for k, v in threaded.items() if k != "threads"} == {
        k: v for k, v in one.items() if k != "threads"
    }
    assert sum(one["verdicts"].values()) == 30
    assert one["shattered"] == []


def test_search_validation():
    with pytest.raises(ResourceLimitError):
        search_shattered_sets(2, 20, 1, seed=0)
    with pytest.raises(DomainError):
        search_shattered_sets(2, 0, 1, seed=0)
