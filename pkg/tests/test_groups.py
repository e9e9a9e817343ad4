"""Group construction, subgroup enumeration, quotients and hom search."""

import itertools

import pytest

from spq import (
    GroupHom,
    InvalidPermutation,
    NotAGroup,
    NotASubgroupInclusion,
    NotNormal,
    OrderCapExceeded,
    ProductCapExceeded,
    Subgroup,
    UnknownSpec,
    all_subgroups,
    builtin,
    conjugacy_classes_of_subgroups,
    core_in,
    enumerate_homomorphisms,
    from_cayley_table,
    from_permutation_generators,
    index,
    normalizer,
    quotient,
)


def brute_force_subgroups(G, max_generators):
    """Independent oracle: close every generator set of bounded size.

    Every subgroup of order m needs at most log2(m) generators (each new
    generator at least doubles the subgroup), so max_generators =
    floor(log2(|G|)) is exhaustive.
    """
    masks = {1}
    for size in range(1, max_generators + 1):
        for combo in itertools.combinations(range(1, G.order), size):
            masks.add(G.generated_mask(combo))
    return sorted(masks)


def exhaustive_nonassociative_triples(table):
    n = len(table)
    bad = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    bad.append((a, b, c))
    return bad


def test_trivial_and_c2_tables():
    one = from_cayley_table([[0]], "triv")
    assert one.order == 1
    c2 = from_cayley_table([[0, 1], [1, 0]], "C2")
    assert c2.order == 2
    assert c2.inv == (0, 1)


def test_identity_reindexed():
    # C3 with the identity placed at index 1
    table = [[2, 0, 1], [0, 1, 2], [1, 2, 0]]
    G = from_cayley_table(table, "C3-shifted")
    assert G.mul[0][0] == 0
    assert sorted(G.element_orders) == [1, 3, 3]


def test_perturbed_c6_reports_witness():
    c6 = [[(i + j) % 6 for j in range(6)] for i in range(6)]
    c6[2][3] = 0  # break one entry away from the identity row/column
    bad = exhaustive_nonassociative_triples(c6)
    assert bad, "perturbation must break associativity"
    with pytest.raises(NotAGroup) as info:
        from_cayley_table(c6, "broken")
    assert info.value.witness in bad


def test_order_cap():
    table = [[(i + j) % 8 for j in range(8)] for i in range(8)]
    with pytest.raises(OrderCapExceeded):
        from_cayley_table(table, "C8", order_cap=4)
    with pytest.raises(OrderCapExceeded):
        builtin("C30", order_cap=16)
    with pytest.raises(OrderCapExceeded):
        from_permutation_generators(5, [(1, 2, 3, 4, 0)], "C5", order_cap=3)


def test_permutation_closure():
    s3 = from_permutation_generators(3, [(1, 2, 0), (1, 0, 2)], "S3")
    assert s3.order == 6
    c4 = from_permutation_generators(4, [(1, 2, 3, 0)], "C4")
    assert c4.order == 4
    assert c4.is_abelian
    triv = from_permutation_generators(2, [], "triv")
    assert triv.order == 1
    with pytest.raises(InvalidPermutation):
        from_permutation_generators(3, [(0, 0, 1)], "bad")
    with pytest.raises(InvalidPermutation):
        from_permutation_generators(0, [], "bad")


@pytest.mark.parametrize("spec,order,abelian", [
    ("C1", 1, True),
    ("C30", 30, True),
    ("D16", 16, False),
    ("SL2F3", 24, False),
    ("Q8", 8, False),
    ("Q16", 16, False),
    ("S4", 24, False),
    ("A4", 12, False),
    ("A5", 60, False),
    ("EA(2,3)", 8, True),
    ("C2xC6", 12, True),
    ("C2xC3", 6, True),
])
def test_builtin_catalog(spec, order, abelian):
    G = builtin(spec)
    assert G.order == order
    assert G.is_abelian == abelian
    assert G.label == spec


def test_builtin_specials():
    q8 = builtin("Q8")
    # exactly one element of order 2 in the quaternion group
    assert sum(1 for k in q8.element_orders if k == 2) == 1
    ea = builtin("EA(2,3)")
    assert all(k in (1, 2) for k in ea.element_orders)
    d4 = builtin("D4")  # Klein four group
    assert d4.is_abelian


@pytest.mark.parametrize("spec", ["C0", "D7", "S7", "A9", "Q32", "EA(4,2)", "foo", ""])
def test_unknown_specs(spec):
    with pytest.raises(UnknownSpec):
        builtin(spec)


@pytest.mark.parametrize("spec,count", [
    ("C6", 4),        # divisors of 6
    ("S3", 6),
    ("EA(2,2)", 5),   # 1 + 3 lines + 1
])
def test_subgroup_counts(spec, count):
    assert len(all_subgroups(builtin(spec))) == count


@pytest.mark.parametrize("spec", ["C6", "S3", "D8", "Q8", "EA(2,2)", "A4",
                                  "D16", "SL2F3"])
def test_subgroups_against_brute_force(spec):
    G = builtin(spec)
    max_gens = G.order.bit_length() - 1
    oracle = brute_force_subgroups(G, max_gens)
    computed = sorted(s.members for s in all_subgroups(G))
    assert computed == oracle


def test_subgroup_invariants():
    G = builtin("S3")
    for sub in all_subgroups(G):
        assert 0 in sub
        assert G.order % sub.order == 0
        for a in sub.elements:
            assert G.inv[a] in sub
            for b in sub.elements:
                assert G.mul[a][b] in sub
    with pytest.raises(NotASubgroupInclusion):
        Subgroup(G, 0b000110, 2)  # {1, 2} misses the identity


@pytest.mark.parametrize("spec,count", [
    ("S3", 4), ("D16", 11), ("SL2F3", 7), ("S4", 11), ("A4", 5),
])
def test_conjugacy_class_counts(spec, count):
    assert len(conjugacy_classes_of_subgroups(builtin(spec))) == count


@pytest.mark.parametrize("spec", ["S3", "D8", "Q8", "A4", "SL2F3"])
def test_orbit_sizes_match_normalizer_index(spec):
    G = builtin(spec)
    for rep, orbit in conjugacy_classes_of_subgroups(G):
        assert len(orbit) == G.order // normalizer(rep).order
        assert rep.key == min(s.key for s in orbit)


def test_index_and_errors():
    G = builtin("S3")
    subs = all_subgroups(G)
    triv = G.trivial_subgroup
    full = G.full_subgroup
    a3 = next(s for s in subs if s.order == 3)
    s2 = next(s for s in subs if s.order == 2)
    assert index(triv, triv) == 1
    assert index(triv, full) == 6
    assert index(a3, full) == 2
    with pytest.raises(NotASubgroupInclusion):
        index(a3, s2)
    with pytest.raises(NotASubgroupInclusion):
        index(full, a3)


def test_normalizer_and_core():
    S3 = builtin("S3")
    a3 = next(s for s in all_subgroups(S3) if s.order == 3)
    s2 = next(s for s in all_subgroups(S3) if s.order == 2)
    assert normalizer(a3).order == 6      # index-2 subgroups are normal
    assert normalizer(s2).order == 2
    # oracle: intersect the conjugates exhaustively
    conjugates = {S3.conjugate_mask(s2.members, g) for g in S3.elements()}
    expected = (1 << 6) - 1
    for m in conjugates:
        expected &= m
    assert core_in(s2, S3.full_subgroup).members == expected == 1

    C4 = builtin("C4")
    c2 = next(s for s in all_subgroups(C4) if s.order == 2)
    assert core_in(c2, C4.full_subgroup).members == c2.members


def test_quotient():
    C4 = builtin("C4")
    c2 = next(s for s in all_subgroups(C4) if s.order == 2)
    Q, proj = quotient(C4, c2)
    assert Q.order == 2 and proj.surjective

    S3 = builtin("S3")
    a3 = next(s for s in all_subgroups(S3) if s.order == 3)
    Q, proj = quotient(S3, a3)
    assert Q.order == 2
    # oracle: coset multiplication by brute force
    for a in S3.elements():
        for b in S3.elements():
            assert proj(S3.mul[a][b]) == Q.mul[proj(a)][proj(b)]
    s2 = next(s for s in all_subgroups(S3) if s.order == 2)
    with pytest.raises(NotNormal):
        quotient(S3, s2)
    Q, proj = quotient(S3, S3.trivial_subgroup)
    assert Q.order == 6 and proj.kernel.order == 1


def test_hom_validation():
    C4 = builtin("C4")
    C2 = builtin("C2")
    GroupHom(C4, C2, (0, 1, 0, 1))
    with pytest.raises(ValueError):
        GroupHom(C4, C2, (0, 1, 1, 0))


@pytest.mark.parametrize("gspec,kspec,surj,count", [
    ("C2", "C2", False, 2),   # trivial map and identity
    ("C4", "C2", True, 1),
    ("S3", "C2", True, 1),    # the sign map
    ("S3", "C3", True, 0),
    ("C2", "C4", False, 2),
])
def test_hom_class_counts(gspec, kspec, surj, count):
    classes = enumerate_homomorphisms(builtin(gspec), builtin(kspec),
                                      surjective_only=surj)
    assert len(classes) == count


def test_hom_search_matches_exhaustive():
    # oracle: filter all set maps S3 -> C2 for the homomorphism property
    S3, C2 = builtin("S3"), builtin("C2")
    homs = []
    for img in itertools.product(range(2), repeat=6):
        if img[0] != 0:
            continue
        if all(img[S3.mul[a][b]] == C2.mul[img[a]][img[b]]
               for a in range(6) for b in range(6)):
            homs.append(img)
    classes = enumerate_homomorphisms(S3, C2)
    assert len(homs) == 2  # trivial and sign; C2 abelian, classes = maps
    assert len(classes) == 2
    assert sorted(c.representative.image_of for c in classes) == sorted(homs)


def test_hom_classes_relabel_invariant():
    for target in ("C2", "C4", "C6", "S3"):
        K = builtin(target)
        a = enumerate_homomorphisms(builtin("C6"), K)
        b = enumerate_homomorphisms(builtin("C2xC3"), K)
        assert len(a) == len(b)


def test_product_cap():
    with pytest.raises(ProductCapExceeded):
        enumerate_homomorphisms(builtin("S3"), builtin("C2"), product_cap=10)


def test_builtin_generators_generate():
    for spec in ("S3", "S4", "S5", "A4", "A5", "D16", "Q16", "SL2F3",
                 "C2xC6", "EA(3,2)"):
        G = builtin(spec)
        assert len(G.closure_set(G.generators)) == G.order


def test_light_associativity_path():
    # tables above 64 elements go through the generating-set test
    n = 100
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    G = from_cayley_table(table, "C100")
    assert G.order == n and G.is_abelian
    table[7][13] = 14
    with pytest.raises(NotAGroup) as info:
        from_cayley_table(table, "broken")
    witness = info.value.witness
    if isinstance(witness, tuple):
        a, b, c = witness
        assert table[table[a][b]][c] != table[a][table[b][c]]


def test_hom_search_with_greedy_generators():
    # a table-built group exposes no generators; the greedy fallback kicks in
    table = [[(i + j) % 6 for j in range(6)] for i in range(6)]
    G = from_cayley_table(table, "C6-table")
    assert G.generators is None
    from spq import greedy_generators
    gens = greedy_generators(G)
    assert len(G.closure_set(gens)) == 6
    classes = enumerate_homomorphisms(G, builtin("C2"))
    assert len(classes) == 2


def test_kernel_and_composition():
    S3, C2 = builtin("S3"), builtin("C2")
    sign = enumerate_homomorphisms(S3, C2, surjective_only=True)[0].representative
    assert sign.kernel.order == 3
    doubled = sign.then(GroupHom.identity(C2))
    assert doubled.image_of == sign.image_of
    conj = GroupHom.conjugation(S3, 1)
    assert conj.surjective and conj.kernel.order == 1
