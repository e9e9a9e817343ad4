"""Fixed-point partition posets, interval posets, and order-complex homology."""

import itertools

import pytest

from spq import (
    GSet,
    NotASubgroupInclusion,
    SizeCapExceeded,
    all_subgroups,
    builtin,
    check_transitive_iso,
    conjugacy_classes_of_subgroups,
    fixed_partition_poset,
    interval_poset,
    invariant_partitions,
    poset_isomorphic,
    reduced_betti_of_order_complex,
    subgroup_conjugation_action,
)
from spq.partition import _reduced_betti_augmented


def naive_invariant_partitions(M):
    """Oracle: filter every set partition for invariance (sizes <= 8)."""
    points = range(M.size)
    out = []

    def partitions(items):
        if not items:
            yield []
            return
        first, rest = items[0], items[1:]
        for sub in partitions(rest):
            for i in range(len(sub)):
                yield sub[:i] + [[first] + sub[i]] + sub[i + 1:]
            yield [[first]] + sub

    perms = [M.action[g] for g in M.group.elements()]
    for part in partitions(list(points)):
        canon = {frozenset(b) for b in part}
        if all({frozenset(p[x] for x in b) for b in canon} == canon for p in perms):
            out.append(tuple(sorted(tuple(sorted(b)) for b in canon)))
    return sorted(set(out))


def sub_of_order(G, order):
    return next(s for s in all_subgroups(G) if s.order == order)


def test_gset_validation():
    C2 = builtin("C2")
    with pytest.raises(ValueError):
        GSet(C2, 2, ((0, 1), (0, 1), (1, 0)))
    with pytest.raises(ValueError):
        GSet(C2, 2, ((1, 0), (0, 1)))  # identity must act trivially
    M = GSet.regular(C2)
    assert M.orbits == ((0, 1),)
    assert M.stabilizer(0).order == 1
    assert M.is_isotypical


def test_regular_s3_poset_is_antichain():
    P = fixed_partition_poset(GSet.regular(builtin("S3")))
    assert len(P) == 4
    assert all(m == 0 for m in P.lt_masks)


def test_mixed_gset_single_partition():
    C2 = builtin("C2")
    M = GSet.disjoint_union([GSet.trivial(C2, 1), GSet.regular(C2)])
    P = fixed_partition_poset(M)
    assert P.elements == (((0,), (1, 2)),)
    assert not M.is_isotypical


def test_two_point_trivial_poset_empty():
    P = fixed_partition_poset(GSet.trivial(builtin("C1"), 2))
    assert len(P) == 0


def test_size_cap():
    with pytest.raises(SizeCapExceeded):
        fixed_partition_poset(GSet.trivial(builtin("C1"), 5), size_cap=4)
    G = builtin("D16")
    with pytest.raises(SizeCapExceeded):
        check_transitive_iso(G, G.trivial_subgroup, size_cap=8)


def _mixed_c4():
    G = builtin("C4")
    return GSet.disjoint_union([GSet.trivial(G, 2), GSet.regular(G)])


def _double_c2():
    G = builtin("C2")
    return GSet.disjoint_union([GSet.regular(G), GSet.regular(G),
                                GSet.trivial(G, 2)])


def _d8_cosets():
    G = builtin("D8")
    return GSet.from_cosets(G, sub_of_order(G, 2))


@pytest.mark.parametrize("build", [
    lambda: GSet.regular(builtin("S3")),
    lambda: GSet.regular(builtin("C4")),
    _mixed_c4,
    _double_c2,
    _d8_cosets,
])
def test_invariant_partitions_match_naive_filter(build):
    M = build()
    assert M.size <= 8
    assert invariant_partitions(M) == naive_invariant_partitions(M)


def test_interval_posets():
    S3 = builtin("S3")
    P = interval_poset(S3, S3.trivial_subgroup)
    assert len(P) == 4 and all(m == 0 for m in P.lt_masks)
    C4 = builtin("C4")
    assert len(interval_poset(C4, C4.trivial_subgroup)) == 1
    C2 = builtin("C2")
    assert len(interval_poset(C2, C2.trivial_subgroup)) == 0
    closed = interval_poset(C4, C4.trivial_subgroup,
                            lower_closed=True, upper_closed=True)
    assert len(closed) == 3
    with pytest.raises(NotASubgroupInclusion):
        interval_poset(S3, C4.trivial_subgroup)


def test_poset_isomorphism_search():
    C4 = builtin("C4")
    S3 = builtin("S3")
    chain3 = interval_poset(C4, C4.trivial_subgroup,
                            lower_closed=True, upper_closed=True)
    anti4 = interval_poset(S3, S3.trivial_subgroup)
    assert not poset_isomorphic(chain3, anti4)
    assert poset_isomorphic(anti4, anti4)


@pytest.mark.parametrize("spec", ["S3", "C4", "C2xC2", "Q8"])
def test_transitive_iso_roster(spec):
    G = builtin(spec)
    for rep, _ in conjugacy_classes_of_subgroups(G):
        if G.order // rep.order <= 8:
            assert check_transitive_iso(G, rep), (spec, rep.order)


def test_transitive_iso_degenerate():
    G = builtin("S3")
    assert check_transitive_iso(G, G.full_subgroup)  # both sides empty


def test_nonisotypical_gsets_are_acyclic():
    for spec in ("C2", "C3", "C4", "S3", "C2xC2"):
        G = builtin(spec)
        reps = [rep for rep, _ in conjugacy_classes_of_subgroups(G)]
        for H1, H2 in itertools.combinations(reps, 2):
            if G.order // H1.order + G.order // H2.order > 8:
                continue
            M = GSet.disjoint_union([GSet.from_cosets(G, H1),
                                     GSet.from_cosets(G, H2)])
            if M.is_isotypical:
                continue
            bm1, betti = _reduced_betti_augmented(fixed_partition_poset(M))
            assert bm1 == 0 and not any(betti), (spec, H1.order, H2.order)


@pytest.mark.parametrize("spec,expected", [
    ("EA(2,2)", [2]),
    ("EA(3,2)", [3]),
    ("EA(2,3)", [0, 8]),
])
def test_steinberg_via_order_complex(spec, expected):
    G = builtin(spec)
    P = interval_poset(G, G.trivial_subgroup)
    assert reduced_betti_of_order_complex(P) == expected


def test_single_point_poset_contractible():
    C2 = builtin("C2")
    M = GSet.disjoint_union([GSet.trivial(C2, 1), GSet.regular(C2)])
    assert reduced_betti_of_order_complex(fixed_partition_poset(M)) == [0]


def test_suspension_relation():
    # the top filtration step is the unreduced suspension of the proper part,
    # taken compatibly with conjugation on both sides
    from spq import compute_report
    for spec in ("C2", "C4", "C6", "S3", "D8", "Q8", "A4", "SL2F3"):
        G = builtin(spec)
        proper = interval_poset(G, G.trivial_subgroup)
        action = subgroup_conjugation_action(G, proper)
        bm1, betti = _reduced_betti_augmented(proper, action)
        pi = compute_report(G, G.order - 1).pi
        expected = [1 + bm1] + list(betti)
        length = max(len(pi), len(expected))
        assert tuple(expected + [0] * (length - len(expected))) == \
            tuple(list(pi) + [0] * (length - len(pi))), spec


def test_order_complex_chain_cap():
    G = builtin("EA(2,3)")
    P = interval_poset(G, G.trivial_subgroup)
    with pytest.raises(SizeCapExceeded):
        reduced_betti_of_order_complex(P, chain_cap=5)
