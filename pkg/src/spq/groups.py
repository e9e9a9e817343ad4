"""Finite groups as explicit multiplication tables, with subgroup machinery.

Elements of a group of order m are the indices 0..m-1 and index 0 is always
the identity. All types are immutable once constructed; derived data
(subgroup inventory, conjugacy classes, embedded subgroup groups) is cached
lazily on the group object.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    InvalidPermutation,
    NotAGroup,
    NotASubgroupInclusion,
    NotNormal,
    OrderCapExceeded,
    ProductCapExceeded,
    UnknownSpec,
)

DEFAULT_ORDER_CAP = 512
DEFAULT_PRODUCT_CAP = 1 << 16


class FiniteGroup:
    """A finite group given by its full multiplication table.

    ``mul[a][b]`` is the index of the product, ``inv[a]`` the inverse.
    Construction checks identity and inverse axioms; associativity is the
    caller's responsibility (``from_cayley_table`` verifies it for untrusted
    tables, the builtin constructors guarantee it).
    """

    identity = 0

    def __init__(self, mul: Sequence[Sequence[int]], label: str,
                 generators: Iterable[int] | None = None):
        table = tuple(tuple(int(x) for x in row) for row in mul)
        n = len(table)
        if n == 0:
            raise NotAGroup("empty multiplication table")
        for row in table:
            if len(row) != n:
                raise NotAGroup("multiplication table is not square")
            for x in row:
                if not 0 <= x < n:
                    raise NotAGroup(f"table entry {x} out of range 0..{n - 1}")
        for g in range(n):
            if table[0][g] != g or table[g][0] != g:
                raise NotAGroup("element 0 is not a two-sided identity", witness=g)
        inv = [0] * n
        for g in range(n):
            row = table[g]
            try:
                h = row.index(0)
            except ValueError:
                raise NotAGroup("element has no right inverse", witness=g) from None
            if table[h][g] != 0:
                raise NotAGroup("right inverse is not a left inverse", witness=g)
            inv[g] = h
        self.order = n
        self.mul = table
        self.inv = tuple(inv)
        self.label = str(label)
        self.generators = None if generators is None else tuple(generators)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label!r}, order={self.order})"

    def __getstate__(self):
        # drop lazy caches; they are rebuilt on demand after unpickling
        return {"order": self.order, "mul": self.mul, "inv": self.inv,
                "label": self.label, "generators": self.generators}

    def __setstate__(self, state):
        self.__dict__.update(state)

    def elements(self) -> range:
        return range(self.order)

    def conjugate(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    @cached_property
    def is_abelian(self) -> bool:
        mul = self.mul
        return all(mul[a][b] == mul[b][a]
                   for a in range(self.order) for b in range(a + 1, self.order))

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = self.mul[x][g]
                k += 1
            out.append(k)
        return tuple(out)

    def closure_set(self, seed: Iterable[int]) -> set[int]:
        """Smallest subset containing ``seed`` closed under multiplication."""
        members = set(seed)
        members.add(0)
        queue = list(members)
        mul = self.mul
        while queue:
            x = queue.pop()
            for y in tuple(members):
                for z in (mul[x][y], mul[y][x]):
                    if z not in members:
                        members.add(z)
                        queue.append(z)
        return members

    def generated_mask(self, seed: Iterable[int]) -> int:
        mask = 0
        for g in self.closure_set(seed):
            mask |= 1 << g
        return mask

    def subgroup(self, elements: Iterable[int]) -> Subgroup:
        mask = 0
        for g in elements:
            mask |= 1 << int(g)
        mask |= 1
        return Subgroup(self, mask, mask.bit_count())

    @cached_property
    def trivial_subgroup(self) -> Subgroup:
        return Subgroup(self, 1, 1)

    @cached_property
    def full_subgroup(self) -> Subgroup:
        return Subgroup(self, (1 << self.order) - 1, self.order)

    def conjugate_mask(self, mask: int, g: int) -> int:
        out = 0
        x = mask
        while x:
            low = x & -x
            out |= 1 << self.conjugate(g, low.bit_length() - 1)
            x ^= low
        return out

    def embedded_subgroup(self, mask: int) -> EmbeddedSubgroup:
        """The subgroup with the given member mask, as a group in its own right.

        Cached per mask so that repeated calls return the identical object
        (the full-group mask returns the parent itself).
        """
        cache = self.__dict__.setdefault("_embedded_cache", {})
        found = cache.get(mask)
        if found is not None:
            return found
        if mask == (1 << self.order) - 1:
            ident = tuple(range(self.order))
            emb = EmbeddedSubgroup(self, ident, dict(enumerate(ident)))
        else:
            elems = _mask_bits(mask)
            pos = {g: i for i, g in enumerate(elems)}
            table = [[pos[self.mul[a][b]] for b in elems] for a in elems]
            sub = FiniteGroup(table, f"{self.label}:{mask:x}")
            emb = EmbeddedSubgroup(sub, tuple(elems), pos)
        # setdefault keeps one winner if two threads build concurrently
        return cache.setdefault(mask, emb)


class EmbeddedSubgroup(NamedTuple):
    """A subgroup realized as a standalone group plus its element embedding."""

    group: FiniteGroup
    to_ambient: tuple[int, ...]
    from_ambient: dict[int, int]


def _mask_bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of a FiniteGroup, stored as a bitmask over element indices."""

    parent: FiniteGroup
    members: int
    order: int

    def __post_init__(self):
        if self.members & 1 == 0:
            raise NotASubgroupInclusion("subgroup does not contain the identity")
        if self.members.bit_count() != self.order:
            raise NotASubgroupInclusion("stated order disagrees with member count")
        mul, inv, mask = self.parent.mul, self.parent.inv, self.members
        elems = _mask_bits(mask)
        for a in elems:
            if not mask >> inv[a] & 1:
                raise NotASubgroupInclusion(f"not closed under inversion at {a}")
            row = mul[a]
            for b in elems:
                if not mask >> row[b] & 1:
                    raise NotASubgroupInclusion(f"not closed under product at ({a},{b})")
        if self.parent.order % self.order:
            raise NotASubgroupInclusion("order does not divide the parent order")

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return tuple(_mask_bits(self.members))

    @cached_property
    def key(self) -> tuple[int, tuple[int, ...]]:
        """Canonical sort key: order first, then the member list."""
        return (self.order, self.elements)

    def __contains__(self, g: int) -> bool:
        return bool(self.members >> g & 1)

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, members={list(self.elements)})"

    def is_subgroup_of(self, other: Subgroup) -> bool:
        return (self.parent is other.parent
                and self.members & other.members == self.members)

    def conjugate_by(self, g: int) -> Subgroup:
        return Subgroup(self.parent, self.parent.conjugate_mask(self.members, g),
                        self.order)

    @property
    def as_group(self) -> EmbeddedSubgroup:
        return self.parent.embedded_subgroup(self.members)


@dataclass(frozen=True)
class GroupHom:
    """Group homomorphism, stored as the image of every source element."""

    source: FiniteGroup
    target: FiniteGroup
    image_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "image_of", tuple(int(x) for x in self.image_of))
        img = self.image_of
        if len(img) != self.source.order:
            raise ValueError("image table length does not match the source order")
        if img and img[0] != 0:
            raise ValueError("homomorphism must send identity to identity")
        smul, tmul = self.source.mul, self.target.mul
        for a in range(self.source.order):
            ia = img[a]
            row = smul[a]
            for b in range(self.source.order):
                if img[row[b]] != tmul[ia][img[b]]:
                    raise ValueError(f"not a homomorphism at pair ({a},{b})")

    def __call__(self, g: int) -> int:
        return self.image_of[g]

    @cached_property
    def image_mask(self) -> int:
        mask = 0
        for x in self.image_of:
            mask |= 1 << x
        return mask

    @cached_property
    def surjective(self) -> bool:
        return self.image_mask.bit_count() == self.target.order

    @cached_property
    def kernel(self) -> Subgroup:
        mask = 0
        for g, img in enumerate(self.image_of):
            if img == 0:
                mask |= 1 << g
        return Subgroup(self.source, mask, mask.bit_count())

    def preimage_mask(self, target_mask: int) -> int:
        mask = 0
        for g, img in enumerate(self.image_of):
            if target_mask >> img & 1:
                mask |= 1 << g
        return mask

    def preimage(self, sub: Subgroup) -> Subgroup:
        if sub.parent is not self.target:
            raise NotASubgroupInclusion("subgroup does not live in the target group")
        mask = self.preimage_mask(sub.members)
        return Subgroup(self.source, mask, mask.bit_count())

    def image_subgroup(self, sub: Subgroup) -> Subgroup:
        if sub.parent is not self.source:
            raise NotASubgroupInclusion("subgroup does not live in the source group")
        mask = 0
        for g in sub.elements:
            mask |= 1 << self.image_of[g]
        return Subgroup(self.target, mask, mask.bit_count())

    def then(self, nxt: GroupHom) -> GroupHom:
        """Composite ``nxt o self`` (apply self first)."""
        if nxt.source is not self.target:
            raise ValueError("homomorphisms are not composable")
        return GroupHom(self.source, nxt.target,
                        tuple(nxt.image_of[x] for x in self.image_of))

    @staticmethod
    def identity(G: FiniteGroup) -> GroupHom:
        return GroupHom(G, G, tuple(range(G.order)))

    @staticmethod
    def conjugation(G: FiniteGroup, g: int) -> GroupHom:
        return GroupHom(G, G, tuple(G.conjugate(g, x) for x in G.elements()))


@dataclass(frozen=True)
class HomClass:
    """Conjugacy class of homomorphisms.

    Two homomorphisms are identified when one equals the other followed by an
    inner automorphism of the target. The stored representative is the class
    member with the smallest image tuple.
    """

    representative: GroupHom

    @staticmethod
    def of(hom: GroupHom) -> HomClass:
        K = hom.target
        best = hom.image_of
        for k in range(1, K.order):
            cand = tuple(K.conjugate(k, x) for x in hom.image_of)
            if cand < best:
                best = cand
        if best == hom.image_of:
            return HomClass(hom)
        return HomClass(GroupHom(hom.source, hom.target, best))


# ---------------------------------------------------------------------------
# constructors


def _associativity_witness(table: Sequence[Sequence[int]]) -> tuple[int, int, int] | None:
    """First failing triple ((a*b)*c != a*(b*c)), or None.

    Exhaustive for small tables; Light's test against a generating set above
    that (checking a*(t*b) == (a*t)*b for generators t suffices, because the
    set of t satisfying it is closed under multiplication).
    """
    n = len(table)
    if n <= 64:
        rng = range(n)
        for a in rng:
            row_a = table[a]
            for b in rng:
                ab = row_a[b]
                row_b = table[b]
                for c in rng:
                    if table[ab][c] != row_a[row_b[c]]:
                        return (a, b, c)
        return None
    gens: list[int] = []
    covered = {0}
    for g in range(n):
        if g in covered:
            continue
        gens.append(g)
        queue = [g]
        covered.add(g)
        while queue:
            x = queue.pop()
            for y in tuple(covered):
                for z in (table[x][y], table[y][x]):
                    if z not in covered:
                        covered.add(z)
                        queue.append(z)
    for t in gens:
        for a in range(n):
            at = table[a][t]
            row_a = table[a]
            row_at = table[at]
            row_t = table[t]
            for b in range(n):
                if row_at[b] != row_a[row_t[b]]:
                    return (a, t, b)
    return None


def from_cayley_table(table: Sequence[Sequence[int]], label: str,
                      order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Validate an untrusted multiplication table and wrap it as a group.

    The identity may sit at any index in the input; the result is reindexed
    so that it lands at 0. Axiom failures raise NotAGroup with a witness in
    the input numbering.
    """
    rows = [tuple(int(x) for x in row) for row in table]
    n = len(rows)
    if n == 0:
        raise NotAGroup("empty multiplication table")
    if n > order_cap:
        raise OrderCapExceeded(f"table side {n} exceeds the order cap {order_cap}")
    for row in rows:
        if len(row) != n:
            raise NotAGroup("multiplication table is not square")
        for x in row:
            if not 0 <= x < n:
                raise NotAGroup(f"table entry {x} out of range 0..{n - 1}")
    ident = None
    for e in range(n):
        if all(rows[e][g] == g and rows[g][e] == g for g in range(n)):
            ident = e
            break
    if ident is None:
        raise NotAGroup("no two-sided identity element")
    if ident != 0:
        swap = list(range(n))
        swap[0], swap[ident] = ident, 0
        rows = [tuple(swap[rows[swap[i]][swap[j]]] for j in range(n)) for i in range(n)]

    def back(x: int) -> int:
        if ident == 0:
            return x
        return {0: ident, ident: 0}.get(x, x)

    witness = _associativity_witness(rows)
    if witness is not None:
        raise NotAGroup("multiplication is not associative",
                        witness=tuple(back(x) for x in witness))
    return FiniteGroup(rows, label)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """(p o q)(i) = p[q[i]]."""
    return tuple(p[i] for i in q)


def from_permutation_generators(degree: int, gens: Sequence[Sequence[int]], label: str,
                                order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Close a set of permutations under composition and build the group.

    Element order is first occurrence in a breadth-first closure from the
    identity, applying the generators in the given order.
    """
    if degree < 1:
        raise InvalidPermutation("degree must be a positive integer")
    norm: list[tuple[int, ...]] = []
    for g in gens:
        p = tuple(int(x) for x in g)
        if len(p) != degree or sorted(p) != list(range(degree)):
            raise InvalidPermutation(f"{list(g)} is not a permutation of 0..{degree - 1}")
        norm.append(p)
    ident = tuple(range(degree))
    elems = [ident]
    pos = {ident: 0}
    queue = [ident]
    while queue:
        cur = queue.pop(0)
        for p in norm:
            nxt = _compose(cur, p)
            if nxt not in pos:
                if len(elems) >= order_cap:
                    raise OrderCapExceeded(
                        f"closure exceeds the order cap {order_cap}")
                pos[nxt] = len(elems)
                elems.append(nxt)
                queue.append(nxt)
    table = [[pos[_compose(a, b)] for b in elems] for a in elems]
    gen_ids = []
    for p in norm:
        i = pos[p]
        if i not in gen_ids:
            gen_ids.append(i)
    return FiniteGroup(table, label, generators=gen_ids)


def direct_product(A: FiniteGroup, B: FiniteGroup,
                   label: str | None = None) -> FiniteGroup:
    """Direct product with pairs (a, b) encoded as a*|B| + b."""
    nb = B.order
    table = [[(A.mul[a1][a2]) * nb + B.mul[b1][b2]
              for a2 in A.elements() for b2 in B.elements()]
             for a1 in A.elements() for b1 in B.elements()]
    gens = None
    if A.generators is not None and B.generators is not None:
        gens = tuple(g * nb for g in A.generators) + tuple(B.generators)
    return FiniteGroup(table, label or f"{A.label}x{B.label}", generators=gens)


def _cyclic(n: int) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, f"C{n}", generators=(1,) if n > 1 else ())


def _dihedral(m: int) -> FiniteGroup:
    # order m = 2k; elements (i, e) = rotation^i * flip^e, index i + k*e
    k = m // 2
    table = [[0] * m for _ in range(m)]
    for i in range(k):
        for e in (0, 1):
            for j in range(k):
                for f in (0, 1):
                    r = (i + (j if e == 0 else -j)) % k
                    table[i + k * e][j + k * f] = r + k * (e ^ f)
    gens = (k,) if k == 1 else (1, k)
    return FiniteGroup(table, f"D{m}", generators=gens)


def _dicyclic(k: int, label: str) -> FiniteGroup:
    # order 4k: a of order 2k, b with b^2 = a^k and b a b^-1 = a^-1
    n = 4 * k
    table = [[0] * n for _ in range(n)]
    for i in range(2 * k):
        for e in (0, 1):
            for j in range(2 * k):
                for f in (0, 1):
                    r = (i + (j if e == 0 else -j) + (k if e and f else 0)) % (2 * k)
                    table[i + 2 * k * e][j + 2 * k * f] = r + 2 * k * (e ^ f)
    return FiniteGroup(table, label, generators=(1, 2 * k))


def _permutation_parity(p: tuple[int, ...]) -> int:
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p))
                     if p[i] > p[j])
    return inversions & 1


def _symmetric_or_alternating(n: int, alternating: bool) -> FiniteGroup:
    perms = [p for p in itertools.permutations(range(n))
             if not alternating or _permutation_parity(p) == 0]
    pos = {p: i for i, p in enumerate(perms)}
    table = [[pos[_compose(a, b)] for b in perms] for a in perms]
    label = ("A" if alternating else "S") + str(n)
    gen_perms: list[tuple[int, ...]] = []
    if not alternating and n >= 2:
        gen_perms.append((1, 0) + tuple(range(2, n)))
        if n >= 3:
            gen_perms.append(tuple(range(1, n)) + (0,))
    elif alternating and n >= 3:
        gen_perms.append((1, 2, 0) + tuple(range(3, n)))
        if n >= 4:
            if n % 2:
                gen_perms.append(tuple(range(1, n)) + (0,))
            else:
                gen_perms.append((0,) + tuple(range(2, n)) + (1,))
    gens = tuple(pos[p] for p in gen_perms)
    return FiniteGroup(table, label, generators=gens)


def _sl2f3() -> FiniteGroup:
    ident = (1, 0, 0, 1)
    mats = [m for m in itertools.product(range(3), repeat=4)
            if (m[0] * m[3] - m[1] * m[2]) % 3 == 1]
    mats.remove(ident)
    mats = [ident] + sorted(mats)
    pos = {m: i for i, m in enumerate(mats)}

    def mm(x, y):
        return ((x[0] * y[0] + x[1] * y[2]) % 3, (x[0] * y[1] + x[1] * y[3]) % 3,
                (x[2] * y[0] + x[3] * y[2]) % 3, (x[2] * y[1] + x[3] * y[3]) % 3)

    table = [[pos[mm(a, b)] for b in mats] for a in mats]
    gens = (pos[(1, 1, 0, 1)], pos[(0, 2, 1, 0)])
    return FiniteGroup(table, "SL2F3", generators=gens)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


_ATOM_RE = re.compile(
    r"^(?:C(?P<c>\d+)|D(?P<d>\d+)|S(?P<s>\d)|A(?P<a>\d)|Q(?P<q>8|16)"
    r"|EA\((?P<p>\d+),(?P<k>\d+)\)|(?P<sl>SL2F3))$")


def _atom_order(m: re.Match) -> int:
    """Order of the atom spec, validating the grammar constraints."""
    if m["c"]:
        n = int(m["c"])
        if n < 1:
            raise UnknownSpec("cyclic order must be at least 1")
        return n
    if m["d"]:
        order = int(m["d"])
        if order < 2 or order % 2:
            raise UnknownSpec(f"D{order}: dihedral spec takes an even order >= 2")
        return order
    if m["s"] or m["a"]:
        n = int(m["s"] or m["a"])
        if not 1 <= n <= 6:
            raise UnknownSpec("symmetric/alternating degrees run from 1 to 6")
        return _factorial(n) if m["s"] else max(_factorial(n) // 2, 1)
    if m["q"]:
        return int(m["q"])
    if m["p"]:
        p, k = int(m["p"]), int(m["k"])
        if not _is_prime(p) or k < 1:
            raise UnknownSpec(f"EA({p},{k}): need a prime p and k >= 1")
        return p ** k
    return 24


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def _build_atom(m: re.Match) -> FiniteGroup:
    if m["c"]:
        n = int(m["c"])
        if n < 1:
            raise UnknownSpec("cyclic order must be at least 1")
        return _cyclic(n)
    if m["d"]:
        order = int(m["d"])
        if order < 2 or order % 2:
            raise UnknownSpec(f"D{order}: dihedral spec takes an even order >= 2")
        return _dihedral(order)
    if m["s"]:
        n = int(m["s"])
        if not 1 <= n <= 6:
            raise UnknownSpec("symmetric groups are supported for degree 1..6")
        return _symmetric_or_alternating(n, alternating=False)
    if m["a"]:
        n = int(m["a"])
        if not 1 <= n <= 6:
            raise UnknownSpec("alternating groups are supported for degree 1..6")
        return _symmetric_or_alternating(n, alternating=True)
    if m["q"]:
        return _dicyclic(int(m["q"]) // 4, f"Q{m['q']}")
    if m["p"]:
        p, k = int(m["p"]), int(m["k"])
        if not _is_prime(p) or k < 1:
            raise UnknownSpec(f"EA({p},{k}): need a prime p and k >= 1")
        G = _cyclic(p)
        for _ in range(k - 1):
            G = direct_product(G, _cyclic(p))
        return FiniteGroup(G.mul, f"EA({p},{k})", generators=G.generators)
    return _sl2f3()


def builtin(spec: str, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build a group from the catalog grammar.

    ``C<n>`` cyclic, ``D<m>`` dihedral of order m (m even), ``S<n>``/``A<n>``
    symmetric/alternating (n <= 6), ``Q8``/``Q16`` quaternion, ``EA(<p>,<k>)``
    elementary abelian, ``SL2F3``, and ``x``-separated direct products.
    """
    text = spec.replace(" ", "")
    if not text:
        raise UnknownSpec("empty group spec")
    parts = text.split("x")
    matches = []
    for part in parts:
        m = _ATOM_RE.match(part)
        if m is None:
            raise UnknownSpec(f"unrecognized group spec {part!r}")
        matches.append(m)
    total = 1
    for m in matches:
        total *= _atom_order(m)
    if total > order_cap:
        raise OrderCapExceeded(
            f"spec {spec!r} has order {total}, above the cap {order_cap}")
    group = _build_atom(matches[0])
    for m in matches[1:]:
        group = direct_product(group, _build_atom(m))
    if group.label != text:
        group = FiniteGroup(group.mul, text, generators=group.generators)
    return group


def group_from_json(data: dict, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build a group from the JSON input format.

    Expected keys: ``label``, ``kind`` in {"cayley", "permutation", "builtin"}
    and, by kind, ``table``, ``degree``+``generators``, or ``spec``.
    """
    kind = data.get("kind")
    label = data.get("label", "G")
    if kind == "cayley":
        return from_cayley_table(data["table"], label, order_cap=order_cap)
    if kind == "permutation":
        return from_permutation_generators(data["degree"], data.get("generators", []),
                                           label, order_cap=order_cap)
    if kind == "builtin":
        return builtin(data["spec"], order_cap=order_cap)
    raise UnknownSpec(f"unknown group input kind {kind!r}")


# ---------------------------------------------------------------------------
# subgroup machinery


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup exactly once, sorted by (order, member list).

    Seeds with the cyclic subgroups, then repeatedly closes known subgroups
    against adjoined elements until nothing new appears.
    """
    cached = G.__dict__.get("_all_subgroups")
    if cached is not None:
        return list(cached)
    masks: set[int] = set()
    for g in G.elements():
        masks.add(G.generated_mask((g,)))
    frontier = sorted(masks)
    while frontier:
        fresh = []
        for mask in frontier:
            for g in G.elements():
                if mask >> g & 1:
                    continue
                grown = G.generated_mask(_mask_bits(mask | (1 << g)))
                if grown not in masks:
                    masks.add(grown)
                    fresh.append(grown)
        frontier = fresh
    subs = sorted((Subgroup(G, m, m.bit_count()) for m in masks),
                  key=lambda s: s.key)
    return list(G.__dict__.setdefault("_all_subgroups", tuple(subs)))


def conjugacy_classes_of_subgroups(
        G: FiniteGroup) -> list[tuple[Subgroup, list[Subgroup]]]:
    """Conjugation orbits on the subgroup list.

    Each entry is (canonically least representative, orbit sorted by key);
    classes are sorted by the representative's key.
    """
    cached = G.__dict__.get("_subgroup_classes")
    if cached is not None:
        return [(rep, list(orbit)) for rep, orbit in cached]
    subs = all_subgroups(G)
    by_mask = {s.members: s for s in subs}
    seen: set[int] = set()
    classes = []
    for sub in subs:
        if sub.members in seen:
            continue
        orbit_masks = {G.conjugate_mask(sub.members, g) for g in G.elements()}
        seen |= orbit_masks
        orbit = sorted((by_mask[m] for m in orbit_masks), key=lambda s: s.key)
        classes.append((orbit[0], orbit))
    classes.sort(key=lambda pair: pair[0].key)
    stored = G.__dict__.setdefault(
        "_subgroup_classes", tuple((rep, tuple(orb)) for rep, orb in classes))
    return [(rep, list(orbit)) for rep, orbit in stored]


def index(H: Subgroup, K: Subgroup) -> int:
    """[K : H] for H <= K in the same parent group."""
    if not H.is_subgroup_of(K):
        raise NotASubgroupInclusion("index requires H <= K in one parent group")
    return K.order // H.order


def normalizer(H: Subgroup) -> Subgroup:
    G = H.parent
    mask = 0
    for g in G.elements():
        if G.conjugate_mask(H.members, g) == H.members:
            mask |= 1 << g
    return Subgroup(G, mask, mask.bit_count())


def core_in(H: Subgroup, K: Subgroup) -> Subgroup:
    """Largest subgroup of H normal in K: the intersection of K-conjugates of H."""
    if not H.is_subgroup_of(K):
        raise NotASubgroupInclusion("core_in requires H <= K")
    G = H.parent
    mask = H.members
    for k in K.elements:
        mask &= G.conjugate_mask(H.members, k)
        if mask == 1:
            break
    return Subgroup(G, mask, mask.bit_count())


def is_normal(N: Subgroup) -> bool:
    G = N.parent
    return all(G.conjugate_mask(N.members, g) == N.members for g in G.elements())


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """The quotient group on least coset representatives plus the projection."""
    if N.parent is not G:
        raise NotASubgroupInclusion("subgroup does not live in the given group")
    if not is_normal(N):
        raise NotNormal("quotient by a non-normal subgroup")
    coset_rep = [-1] * G.order
    reps = []
    for g in G.elements():
        if coset_rep[g] >= 0:
            continue
        for h in N.elements:
            coset_rep[G.mul[g][h]] = g
        reps.append(g)
    rep_index = {r: i for i, r in enumerate(reps)}
    table = [[rep_index[coset_rep[G.mul[a][b]]] for b in reps] for a in reps]
    Q = FiniteGroup(table, f"{G.label}/{N.order}")
    proj = GroupHom(G, Q, tuple(rep_index[coset_rep[g]] for g in G.elements()))
    return Q, proj


def greedy_generators(G: FiniteGroup) -> tuple[int, ...]:
    """A small generating set: repeatedly adjoin the element whose closure grows most."""
    chosen: list[int] = []
    closed = {0}
    while len(closed) < G.order:
        best_g, best_size = -1, -1
        for g in G.elements():
            if g in closed:
                continue
            size = len(G.closure_set(closed | {g}))
            if size > best_size:
                best_g, best_size = g, size
        chosen.append(best_g)
        closed = G.closure_set(closed | {best_g})
    return tuple(chosen)


def enumerate_homomorphisms(G: FiniteGroup, K: FiniteGroup,
                            surjective_only: bool = False,
                            product_cap: int = DEFAULT_PRODUCT_CAP) -> list[HomClass]:
    """All homomorphisms G -> K up to conjugacy in K.

    Backtracks over generator images, closing the partial map after each
    assignment and pruning on conflicts and on element-order divisibility.
    """
    if G.order * K.order > product_cap:
        raise ProductCapExceeded(
            f"|G|*|K| = {G.order * K.order} exceeds the cap {product_cap}")
    gens = G.generators if G.generators is not None else greedy_generators(G)
    gens = tuple(g for g in gens if g != 0)
    g_orders = G.element_orders
    k_orders = K.element_orders
    images: list[tuple[int, ...]] = []

    def close(mapping: dict[int, int], g: int, y: int) -> dict[int, int] | None:
        out = dict(mapping)
        stack = [(g, y)]
        while stack:
            a, ia = stack.pop()
            known = out.get(a)
            if known is not None:
                if known != ia:
                    return None
                continue
            out[a] = ia
            for b, ib in list(out.items()):
                stack.append((G.mul[a][b], K.mul[ia][ib]))
                stack.append((G.mul[b][a], K.mul[ib][ia]))
        return out

    def search(mapping: dict[int, int], idx: int) -> None:
        if idx == len(gens):
            if len(mapping) == G.order:
                images.append(tuple(mapping[g] for g in G.elements()))
            return
        g = gens[idx]
        if g in mapping:
            search(mapping, idx + 1)
            return
        for y in K.elements():
            if g_orders[g] % k_orders[y]:
                continue
            grown = close(mapping, g, y)
            if grown is not None:
                search(grown, idx + 1)

    search({0: 0}, 0)
    classes: dict[tuple[int, ...], None] = {}
    for img in images:
        if surjective_only and len(set(img)) != K.order:
            continue
        best = img
        for k in range(1, K.order):
            cand = tuple(K.conjugate(k, x) for x in img)
            if cand < best:
                best = cand
        classes[best] = None
    return [HomClass(GroupHom(G, K, img)) for img in sorted(classes)]
