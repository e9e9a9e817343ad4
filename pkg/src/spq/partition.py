"""Fixed-point partition posets of finite G-sets and subgroup interval posets.

For a transitive G-set G/H the invariant proper nontrivial partitions are
exactly the coset partitions of the subgroups strictly between H and G, so
the fixed-point poset recovers the open subgroup interval (H, G).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import NotASubgroupInclusion, SizeCapExceeded
from .groups import FiniteGroup, Subgroup, all_subgroups
from .intmatrix import SparseIntMatrix, rank_exact

DEFAULT_SIZE_CAP = 12
DEFAULT_CHAIN_CAP = 20000

Partition = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class GSet:
    """Finite set with a group action, given per element as a point permutation."""

    group: FiniteGroup
    size: int
    action: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("a G-set needs at least one point")
        G = self.group
        if len(self.action) != G.order:
            raise ValueError("action table length disagrees with the group order")
        ident = tuple(range(self.size))
        if self.action[0] != ident:
            raise ValueError("identity must act trivially")
        for g in G.elements():
            if sorted(self.action[g]) != list(ident):
                raise ValueError(f"element {g} does not act by a permutation")
            for h in G.elements():
                gh = G.mul[g][h]
                if any(self.action[gh][x] != self.action[g][self.action[h][x]]
                       for x in range(self.size)):
                    raise ValueError("action is not a homomorphism")

    @staticmethod
    def regular(G: FiniteGroup) -> GSet:
        action = tuple(tuple(G.mul[g][x] for x in G.elements()) for g in G.elements())
        return GSet(G, G.order, action)

    @staticmethod
    def trivial(G: FiniteGroup, size: int) -> GSet:
        ident = tuple(range(size))
        return GSet(G, size, tuple(ident for _ in G.elements()))

    @staticmethod
    def from_cosets(G: FiniteGroup, H: Subgroup) -> GSet:
        """Left translation on the cosets gH, with least-element representatives."""
        if H.parent is not G:
            raise NotASubgroupInclusion("subgroup lives in a different group")
        coset_rep = [-1] * G.order
        reps = []
        for g in G.elements():
            if coset_rep[g] >= 0:
                continue
            for h in H.elements:
                coset_rep[G.mul[g][h]] = g
            reps.append(g)
        pos = {r: i for i, r in enumerate(reps)}
        action = tuple(tuple(pos[coset_rep[G.mul[g][r]]] for r in reps)
                       for g in G.elements())
        return GSet(G, len(reps), action)

    @staticmethod
    def disjoint_union(parts: list[GSet]) -> GSet:
        if not parts:
            raise ValueError("disjoint union of no parts")
        G = parts[0].group
        if any(p.group is not G for p in parts):
            raise ValueError("all parts must share one group")
        size = sum(p.size for p in parts)
        action = []
        for g in G.elements():
            perm = []
            offset = 0
            for p in parts:
                perm.extend(offset + x for x in p.action[g])
                offset += p.size
            action.append(tuple(perm))
        return GSet(G, size, tuple(action))

    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.size
        out = []
        for x in range(self.size):
            if seen[x]:
                continue
            orbit = sorted({self.action[g][x] for g in self.group.elements()})
            for y in orbit:
                seen[y] = True
            out.append(tuple(orbit))
        return tuple(out)

    def stabilizer(self, point: int) -> Subgroup:
        mask = 0
        for g in self.group.elements():
            if self.action[g][point] == point:
                mask |= 1 << g
        return Subgroup(self.group, mask, mask.bit_count())

    @cached_property
    def is_isotypical(self) -> bool:
        """True when all point stabilizers are conjugate."""
        G = self.group
        reference = None
        for x in range(self.size):
            stab = self.stabilizer(x).members
            canon = min(G.conjugate_mask(stab, g) for g in G.elements())
            if reference is None:
                reference = canon
            elif canon != reference:
                return False
        return True


class Poset:
    """Finite poset on opaque payloads with a precomputed strict order."""

    def __init__(self, elements, lt_masks: tuple[int, ...]):
        self.elements = tuple(elements)
        self.lt_masks = lt_masks

    @staticmethod
    def from_predicate(elements, is_lt) -> Poset:
        elems = tuple(elements)
        masks = []
        for i, a in enumerate(elems):
            m = 0
            for j, b in enumerate(elems):
                if i != j and is_lt(a, b):
                    m |= 1 << j
            masks.append(m)
        return Poset(elems, tuple(masks))

    def __len__(self) -> int:
        return len(self.elements)

    def lt(self, i: int, j: int) -> bool:
        return bool(self.lt_masks[i] >> j & 1)

    def above(self, i: int) -> list[int]:
        out = []
        m = self.lt_masks[i]
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out


class PartitionPoset(Poset):
    """Poset of invariant proper nontrivial partitions, ordered by refinement."""

    def __init__(self, gset: GSet, elements, lt_masks):
        super().__init__(elements, lt_masks)
        self.gset = gset


def _refines(p: Partition, q: Partition) -> bool:
    containing = {}
    for block in q:
        for x in block:
            containing[x] = block
    return all(set(block) <= set(containing[block[0]]) for block in p)


def invariant_partitions(M: GSet) -> list[Partition]:
    """All G-invariant partitions of the point set, including the trivial two.

    Builds the block of the least unassigned point, closes it under the
    action, and recurses; each invariant partition is produced exactly once.
    """
    perms = sorted({M.action[g] for g in M.group.elements()} - {tuple(range(M.size))})
    out: list[Partition] = []

    def blocks_of(base: frozenset[int]) -> set[frozenset[int]] | None:
        orbit = {base}
        for perm in perms:
            orbit.add(frozenset(perm[x] for x in base))
        total = set()
        for block in orbit:
            if total & block:
                return None
            total |= block
        return orbit

    def recurse(remaining: tuple[int, ...], prefix: list[frozenset[int]]) -> None:
        if not remaining:
            out.append(tuple(sorted(tuple(sorted(b)) for b in prefix)))
            return
        p = remaining[0]
        rest = remaining[1:]
        pool = set(remaining)
        for sub in range(1 << len(rest)):
            base = frozenset((p,) + tuple(rest[i] for i in range(len(rest))
                                          if sub >> i & 1))
            orbit = blocks_of(base)
            if orbit is None:
                continue
            union = frozenset().union(*orbit)
            if not union <= pool:
                continue
            recurse(tuple(x for x in remaining if x not in union),
                    prefix + list(orbit))

    recurse(tuple(range(M.size)), [])
    return sorted(out)


def fixed_partition_poset(M: GSet, size_cap: int = DEFAULT_SIZE_CAP) -> PartitionPoset:
    """Invariant proper nontrivial partitions of M, ordered by refinement."""
    if M.size > size_cap:
        raise SizeCapExceeded(f"G-set of size {M.size} above the cap {size_cap}")
    discrete = tuple((x,) for x in range(M.size))
    indiscrete = (tuple(range(M.size)),)
    elems = [p for p in invariant_partitions(M) if p not in (discrete, indiscrete)]
    masks = []
    for a in elems:
        m = 0
        for j, b in enumerate(elems):
            if a != b and _refines(a, b):
                m |= 1 << j
        masks.append(m)
    return PartitionPoset(M, elems, tuple(masks))


def interval_poset(G: FiniteGroup, H: Subgroup, lower_closed: bool = False,
                   upper_closed: bool = False) -> Poset:
    """Subgroups between H and G ordered by inclusion; open bounds by default."""
    if H.parent is not G:
        raise NotASubgroupInclusion("subgroup lives in a different group")
    full = (1 << G.order) - 1
    elems = []
    for sub in all_subgroups(G):
        if H.members & sub.members != H.members:
            continue
        if sub.members == H.members and not lower_closed:
            continue
        if sub.members == full and not upper_closed:
            continue
        elems.append(sub)
    return Poset.from_predicate(
        elems, lambda a, b: a.members != b.members
        and a.members & b.members == a.members)


def poset_isomorphic(P: Poset, Q: Poset) -> bool:
    """Backtracking isomorphism search with degree-profile pruning."""
    if len(P) != len(Q):
        return False

    def profile(poset: Poset, i: int) -> tuple[int, int]:
        below = sum(1 for j in range(len(poset)) if poset.lt(j, i))
        above = sum(1 for j in range(len(poset)) if poset.lt(i, j))
        return (below, above)

    p_prof = [profile(P, i) for i in range(len(P))]
    q_prof = [profile(Q, i) for i in range(len(Q))]
    if sorted(p_prof) != sorted(q_prof):
        return False
    order = sorted(range(len(P)), key=lambda i: (p_prof[i], i))
    assigned: dict[int, int] = {}
    used: set[int] = set()

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        i = order[pos]
        for j in range(len(Q)):
            if j in used or q_prof[j] != p_prof[i]:
                continue
            ok = True
            for i2, j2 in assigned.items():
                if P.lt(i, i2) != Q.lt(j, j2) or P.lt(i2, i) != Q.lt(j2, j):
                    ok = False
                    break
            if ok:
                assigned[i] = j
                used.add(j)
                if extend(pos + 1):
                    return True
                del assigned[i]
                used.discard(j)
        return False

    return extend(0)


def check_transitive_iso(G: FiniteGroup, H: Subgroup,
                         size_cap: int = DEFAULT_SIZE_CAP) -> bool:
    """Compare the fixed-point partition poset of G/H with the interval (H, G)."""
    if H.parent is not G:
        raise NotASubgroupInclusion("subgroup lives in a different group")
    if G.order // H.order > size_cap:
        raise SizeCapExceeded(
            f"index {G.order // H.order} above the cap {size_cap}")
    fixed = fixed_partition_poset(GSet.from_cosets(G, H), size_cap)
    interval = interval_poset(G, H)
    return poset_isomorphic(fixed, interval)


def subgroup_conjugation_action(G: FiniteGroup, P: Poset) -> tuple[tuple[int, ...], ...]:
    """Distinct permutations that conjugation by G induces on a poset of subgroups."""
    pos = {sub.members: i for i, sub in enumerate(P.elements)}
    perms = {tuple(pos[G.conjugate_mask(sub.members, g)] for sub in P.elements)
             for g in G.elements()}
    perms.discard(tuple(range(len(P))))
    return tuple(sorted(perms))


def _order_complex_classes(P: Poset, action, chain_cap: int):
    """Chains of the poset grouped by degree, modulo the optional action."""
    chains: list[tuple[int, ...]] = []

    def extend(path: list[int]) -> None:
        chains.append(tuple(path))
        if len(chains) > chain_cap:
            raise SizeCapExceeded(f"order complex above the chain cap {chain_cap}")
        for j in P.above(path[-1]):
            path.append(j)
            extend(path)
            path.pop()

    for i in range(len(P)):
        extend([i])
    perms = tuple(action or ())

    def canonical(chain: tuple[int, ...]) -> tuple[int, ...]:
        best = chain
        for perm in perms:
            cand = tuple(perm[i] for i in chain)
            if cand < best:
                best = cand
        return best

    by_degree: dict[int, dict[tuple[int, ...], None]] = {}
    for chain in chains:
        canon = canonical(chain)
        by_degree.setdefault(len(chain) - 1, {})[canon] = None
    return {k: sorted(v) for k, v in by_degree.items()}, canonical


def _reduced_betti_augmented(P: Poset, action=None,
                             chain_cap: int = DEFAULT_CHAIN_CAP) -> tuple[int, list[int]]:
    """Reduced Betti numbers of the order complex, with the degree -1 value.

    Returns (b_{-1}, [b_0, b_1, ...]); the empty poset gives (1, []).
    """
    if len(P) == 0:
        return 1, []
    classes, canonical = _order_complex_classes(P, action, chain_cap)
    top = max(classes)
    bases = [classes.get(k, []) for k in range(top + 1)]
    index_of = [{c: i for i, c in enumerate(level)} for level in bases]
    ranks = [0] * (top + 2)
    # augmentation: every vertex class hits the empty simplex once
    aug = SparseIntMatrix.from_dict(1, len(bases[0]),
                                    {(0, j): 1 for j in range(len(bases[0]))})
    ranks[0] = rank_exact(aug)
    for k in range(1, top + 1):
        data: dict[tuple[int, int], int] = {}
        for col, chain in enumerate(bases[k]):
            for i in range(k + 1):
                face = canonical(chain[:i] + chain[i + 1:])
                key = (index_of[k - 1][face], col)
                data[key] = data.get(key, 0) + (1 if i % 2 == 0 else -1)
        ranks[k] = rank_exact(SparseIntMatrix.from_dict(len(bases[k - 1]),
                                                        len(bases[k]), data))
    betti = [len(bases[k]) - ranks[k] - ranks[k + 1] for k in range(top + 1)]
    return 1 - ranks[0], betti


def reduced_betti_of_order_complex(P: Poset, action=None,
                                   chain_cap: int = DEFAULT_CHAIN_CAP) -> list[int]:
    """Reduced rational Betti numbers of the order complex, degrees 0 and up."""
    return _reduced_betti_augmented(P, action, chain_cap)[1]
