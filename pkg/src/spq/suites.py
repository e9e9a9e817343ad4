"""Self-verification suites: known dimension tables and structural identities.

The ``tables`` checks reproduce independently known homotopy dimension
tables for a fixed roster of small groups; the ``properties`` checks
exercise internal identities (boundary squares to zero, semisimplicity
cross-check, face compatibility of restrictions, decomposition counts,
partition-poset facts). The CLI exposes them as the ``paper`` and
``properties`` suites.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .global_functor import (
    ChainVector,
    basis_vector,
    boundary,
    double_coset_decomposition,
    restrict,
    transfer,
    verify_d0_compatibility,
    verify_projective_decomposition,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    builtin,
    conjugacy_classes_of_subgroups,
    enumerate_homomorphisms,
)
from .homology import betti_numbers, coinvariants_of_homology_oracle
from .lattice import COINVARIANT, REDUCED, build_complex, chain_classes, \
    filtration_levels, subgroup_lattice
from .partition import (
    GSet,
    _reduced_betti_augmented,
    check_transitive_iso,
    fixed_partition_poset,
    interval_poset,
    subgroup_conjugation_action,
)
from .reports import compute_report, padded, profile_report, same_report

CATALOG: tuple[str, ...] = (
    "C1", "C2", "C3", "C4", "C6", "C8", "C9", "C27", "C30",
    "C2xC2", "C2xC6", "S3", "D8", "D16", "Q8", "Q16",
    "EA(3,2)", "EA(2,3)", "SL2F3", "A4")

CYCLIC_PRIME_POWERS: tuple[str, ...] = ("C2", "C3", "C4", "C8", "C9", "C27")

# published profile rows: (range start, range end or None, pi vector)
EXPECTED_TABLES: dict[str, list[tuple[int, int | None, tuple[int, ...]]]] = {
    "S3": [(1, 1, (4,)), (2, 2, (2,)), (3, 5, (1, 1)), (6, None, (1,))],
    "D16": [(1, 1, (11,)), (2, 3, (1, 6)), (4, None, (1,))],
    "SL2F3": [(1, 1, (7,)), (2, 2, (3,)), (3, 3, (1, 1)), (4, 5, (1, 2)),
              (6, 11, (1, 1)), (12, None, (1,))],
    "C30": [(1, 1, (8,)), (2, 2, (4,)), (3, 4, (2, 2)), (5, 5, (1, 5)),
            (6, 9, (1, 3)), (10, 14, (1, 1)), (15, 29, (1, 0, 1)),
            (30, None, (1,))],
}

STEINBERG_CASES: tuple[tuple[int, int, int], ...] = ((2, 2, 2), (3, 2, 3), (2, 3, 8))

_GROUP_CACHE: dict[str, FiniteGroup] = {}


def catalog_group(spec: str) -> FiniteGroup:
    if spec not in _GROUP_CACHE:
        _GROUP_CACHE[spec] = builtin(spec)
    return _GROUP_CACHE[spec]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    expected: str
    computed: str


def _pad_eq(a, b) -> bool:
    length = max(len(a), len(b))
    return padded(a, length) == padded(b, length)


def _result(name: str, passed: bool, expected, computed) -> CheckResult:
    return CheckResult(name, passed, str(expected), str(computed))


# ---------------------------------------------------------------------------
# known-values suite


def _check_table(spec: str) -> CheckResult:
    expected = EXPECTED_TABLES[spec]
    prof = profile_report(catalog_group(spec))
    got = [(r.start, r.end, r.report.pi) for r in prof.ranges]
    ok = len(got) == len(expected) and all(
        gs == es and ge == ee and _pad_eq(gpi, epi)
        for (gs, ge, gpi), (es, ee, epi) in zip(got, expected))
    return _result(f"table:{spec}", ok, expected,
                   [(s, e, tuple(pi)) for s, e, pi in got])


def _check_steinberg() -> list[CheckResult]:
    out = []
    for p, k, expected in STEINBERG_CASES:
        G = catalog_group(f"EA({p},{k})")
        rep = compute_report(G, p ** k - 1)
        got = rep.pi[k - 1] if k - 1 < len(rep.pi) else 0
        out.append(_result(f"steinberg:p={p},k={k}", got == expected,
                           expected, got))
    return out


def _check_boundary_cases() -> list[CheckResult]:
    out = []
    for spec in CATALOG:
        G = catalog_group(spec)
        classes = len(conjugacy_classes_of_subgroups(G))
        at_one = compute_report(G, 1)
        ok_one = at_one.pi == (classes,)
        at_top = compute_report(G, G.order)
        beyond = compute_report(G, G.order + 7)
        contractible = (at_top.pi[0] == 1 and all(x == 0 for x in at_top.pi[1:])
                        and same_report(at_top, beyond)
                        and beyond.n_effective == G.order)
        out.append(_result(f"boundary:{spec}", ok_one and contractible,
                           f"pi(1)=[{classes}], pi(>=|G|)=[1,0,...]",
                           f"pi(1)={list(at_one.pi)}, pi(|G|)={list(at_top.pi)}"))
    return out


def _check_divisor_jump() -> list[CheckResult]:
    out = []
    for spec in CATALOG:
        G = catalog_group(spec)
        levels = filtration_levels(G)
        at_level = {n: compute_report(G, n) for n in levels}
        bad = None
        for n in range(1, G.order + 2):
            floor_level = max(l for l in levels if l <= n)
            if not same_report(compute_report(G, n), at_level[floor_level]):
                bad = n
                break
        out.append(_result(f"divisor-jump:{spec}", bad is None,
                           "constant between realized levels",
                           "ok" if bad is None else f"jump at n={bad}"))
    return out


def _check_cyclic_prime_power() -> list[CheckResult]:
    out = []
    for spec in CYCLIC_PRIME_POWERS:
        G = catalog_group(spec)
        bad = None
        for n in range(1, G.order + 2):
            rep = compute_report(G, n)
            if any(x != 0 for x in rep.pi[1:]):
                bad = n
                break
        out.append(_result(f"degree-zero:{spec}", bad is None,
                           "pi concentrated in degree 0",
                           "ok" if bad is None else f"higher pi at n={bad}"))
    non_cpp = [s for s in CATALOG
               if s not in CYCLIC_PRIME_POWERS and s != "C1"
               and catalog_group(s).order <= 24]
    for spec in non_cpp:
        G = catalog_group(spec)
        found = any(len(compute_report(G, n).pi) > 1
                    and compute_report(G, n).pi[1] > 0
                    for n in filtration_levels(G))
        out.append(_result(f"nonvanishing-pi1:{spec}", found,
                           "some pi_1 > 0", "found" if found else "all zero"))
    return out


def known_values_suite() -> list[CheckResult]:
    results = [_check_table(spec) for spec in EXPECTED_TABLES]
    results += _check_steinberg()
    results += _check_boundary_cases()
    results += _check_divisor_jump()
    results += _check_cyclic_prime_power()
    return results


# ---------------------------------------------------------------------------
# properties suite


def _check_complex_identities() -> list[CheckResult]:
    out = []
    for spec in CATALOG:
        G = catalog_group(spec)
        runs = 0
        for n in filtration_levels(G):
            for flavor in (COINVARIANT, REDUCED):
                result = betti_numbers(build_complex(G, n, flavor))
                alternating = sum(d if k % 2 == 0 else -d
                                  for k, d in enumerate(result.dims))
                assert result.euler == alternating
                runs += 1
        out.append(_result(f"complex-identities:{spec}", True,
                           "d2=0 and Euler identity", f"{runs} complexes OK"))
    return out


def _check_semisimplicity() -> list[CheckResult]:
    out = []
    for spec in CATALOG:
        G = catalog_group(spec)
        if G.order > 24:
            continue
        bad = None
        for n in filtration_levels(G):
            oracle = coinvariants_of_homology_oracle(G, n)
            direct = betti_numbers(build_complex(G, n, COINVARIANT)).betti
            if not _pad_eq(oracle, direct):
                bad = (n, oracle, list(direct))
                break
        out.append(_result(f"semisimplicity:{spec}", bad is None,
                           "oracle matches coinvariant homology",
                           "ok" if bad is None else str(bad)))
    return out


def _surjection_pairs(max_order: int):
    specs = [s for s in CATALOG if catalog_group(s).order <= max_order]
    for gspec in specs:
        G = catalog_group(gspec)
        for kspec in specs:
            K = catalog_group(kspec)
            if G.order % K.order:
                continue
            classes = enumerate_homomorphisms(G, K, surjective_only=True)
            for cls in classes:
                yield gspec, kspec, cls.representative


def _check_d0_identity() -> list[CheckResult]:
    checked = 0
    failures = []
    for gspec, kspec, psi in _surjection_pairs(16):
        K = psi.target
        lat = subgroup_lattice(K)
        classes = chain_classes(K, K.order, COINVARIANT)
        for level in classes[1:3]:
            for cls in level:
                masks = lat.masks(cls.representative.subgroup_ids)
                checked += 1
                if not verify_d0_compatibility(psi, masks, psi.source.order):
                    failures.append((gspec, kspec, masks))
    return [_result("d0-identity:surjections<=16", not failures,
                    "restriction commutes with d0",
                    f"{checked} checks OK" if not failures else str(failures[:3]))]


def _all_class_vector(G: FiniteGroup, n: int, degree: int):
    """Sum of every degree-``degree`` class of the coinvariant basis, or None."""
    classes = chain_classes(G, n, COINVARIANT)
    if degree >= len(classes) or not classes[degree]:
        return None
    lat = subgroup_lattice(G)
    coeffs = {lat.masks(cls.representative.subgroup_ids): Fraction(1)
              for cls in classes[degree]}
    return ChainVector(G, n, degree, coeffs)


def _check_transfer_boundary() -> list[CheckResult]:
    checked = 0
    failures = []
    for spec in ("C4", "S3", "D8", "Q8", "C2xC6"):
        G = catalog_group(spec)
        for rep, _ in conjugacy_classes_of_subgroups(G):
            if rep.order == 1:
                continue
            H = rep
            sub = H.as_group.group
            for degree in (1, 2):
                v = _all_class_vector(sub, G.order, degree)
                if v is None:
                    continue
                checked += 1
                lhs = boundary(transfer(H, v))
                rhs = transfer(H, boundary(v))
                if lhs != rhs:
                    failures.append((spec, H.order, degree))
    return [_result("transfer-boundary", not failures,
                    "d(tr v) = tr(d v)",
                    f"{checked} checks OK" if not failures else str(failures))]


def _sample_homs() -> list[GroupHom]:
    homs = []
    for gspec, kspec in (("C4", "C2"), ("S3", "C2"), ("C8", "C4"),
                         ("D8", "C2xC2"), ("Q8", "C2xC2"), ("C2xC6", "C6")):
        G, K = catalog_group(gspec), catalog_group(kspec)
        homs.extend(c.representative
                    for c in enumerate_homomorphisms(G, K, surjective_only=True))
    for gspec, order in (("C4", 2), ("S3", 2), ("S3", 3), ("Q8", 4)):
        G = catalog_group(gspec)
        for rep, _ in conjugacy_classes_of_subgroups(G):
            if rep.order == order:
                emb = rep.as_group
                homs.append(GroupHom(emb.group, G, emb.to_ambient))
                break
    return homs


def _check_restrict_boundary() -> list[CheckResult]:
    checked = 0
    failures = []
    for psi in _sample_homs():
        K = psi.target
        n = max(psi.source.order, K.order)
        for degree in (1, 2):
            v = _all_class_vector(K, n, degree)
            if v is None:
                continue
            checked += 1
            if boundary(restrict(psi, v)) != restrict(psi, boundary(v)):
                failures.append((psi.source.label, K.label, degree))
    return [_result("restrict-boundary", not failures,
                    "d(psi* v) = psi*(d v)",
                    f"{checked} checks OK" if not failures else str(failures))]


def _check_inner_automorphisms() -> list[CheckResult]:
    failures = []
    checked = 0
    for spec in ("S3", "D8", "Q8"):
        G = catalog_group(spec)
        v = _all_class_vector(G, G.order, 1)
        for g in G.elements():
            checked += 1
            if restrict(GroupHom.conjugation(G, g), v) != v:
                failures.append((spec, g))
    return [_result("inner-automorphism", not failures,
                    "conjugation restricts to the identity",
                    f"{checked} checks OK" if not failures else str(failures))]


def _check_functoriality() -> list[CheckResult]:
    failures = []
    checked = 0
    pairs = []
    c8, c4, c2 = catalog_group("C8"), catalog_group("C4"), catalog_group("C2")
    s3 = catalog_group("S3")
    proj84 = enumerate_homomorphisms(c8, c4, True)[0].representative
    proj42 = enumerate_homomorphisms(c4, c2, True)[0].representative
    pairs.append((proj84, proj42))
    sign = enumerate_homomorphisms(s3, c2, True)[0].representative
    for rep, _ in conjugacy_classes_of_subgroups(s3):
        if rep.order == 3:
            emb = rep.as_group
            pairs.append((GroupHom(emb.group, s3, emb.to_ambient), sign))
            break
    for phi, psi in pairs:
        K = psi.target
        n = max(phi.source.order, psi.source.order, K.order)
        for degree in (0, 1):
            v = _all_class_vector(K, n, degree)
            if v is None:
                continue
            checked += 1
            if restrict(phi.then(psi), v) != restrict(phi, restrict(psi, v)):
                failures.append((phi.source.label, psi.source.label, K.label))
    return [_result("restriction-functoriality", not failures,
                    "(psi o phi)* = phi* o psi*",
                    f"{checked} checks OK" if not failures else str(failures))]


def _check_double_cosets() -> list[CheckResult]:
    failures = []
    checked = 0
    for psi in _sample_homs():
        K = psi.target
        G = psi.source
        for sub, _ in conjugacy_classes_of_subgroups(K):
            dec = double_coset_decomposition(psi, sub)
            total = 0
            for rep, orbit in zip(dec.representatives, dec.orbits):
                conj = K.conjugate_mask(sub.members, rep)
                pre = psi.preimage_mask(conj).bit_count()
                checked += 1
                if len(orbit) != G.order * sub.order // pre:
                    failures.append((G.label, K.label, rep))
                total += len(orbit)
            if total != K.order:
                failures.append((G.label, K.label, "total"))
    return [_result("double-coset-counting", not failures,
                    "orbit sizes |G||H0|/|preimage| summing to |K|",
                    f"{checked} orbits OK" if not failures else str(failures))]


def _check_tau_realization() -> list[CheckResult]:
    """Classes not ending at G are transfers from their own top subgroup."""
    failures = []
    checked = 0
    for spec in ("C4", "S3", "D8", "Q8", "C2xC2"):
        G = catalog_group(spec)
        lat = subgroup_lattice(G)
        full = (1 << G.order) - 1
        for level in chain_classes(G, G.order, COINVARIANT):
            for cls in level:
                masks = lat.masks(cls.representative.subgroup_ids)
                if masks[-1] == full:
                    continue
                top = Subgroup(G, masks[-1], masks[-1].bit_count())
                emb = top.as_group
                sub_masks = tuple(
                    sum(1 << emb.from_ambient[b]
                        for b in range(G.order) if m >> b & 1)
                    for m in masks)
                v = basis_vector(emb.group, G.order, sub_masks)
                image = transfer(top, v)
                expected = basis_vector(G, G.order, masks,
                                        G.order // top.order)
                checked += 1
                if image != expected:
                    failures.append((spec, masks))
    return [_result("tau-as-transfer-quotient", not failures,
                    "proper-top classes are transfers from their top",
                    f"{checked} classes OK" if not failures else str(failures))]


def _check_projective_decomposition() -> list[CheckResult]:
    out = []
    for spec in ("C4", "C2xC2", "S3", "D8"):
        G = catalog_group(spec)
        bad = None
        for n in filtration_levels(G):
            top = len(chain_classes(G, n, REDUCED))
            for k in range(top):
                if not verify_projective_decomposition(G, n, k):
                    bad = (n, k)
                    break
            if bad:
                break
        out.append(_result(f"simple-chain-fibers:{spec}", bad is None,
                           "chain classes match (core, simple class) pairs",
                           "ok" if bad is None else f"failed at (n,k)={bad}"))
    return out


def _check_partition_iso() -> list[CheckResult]:
    out = []
    for spec in ("S3", "C4", "C2xC2", "Q8"):
        G = catalog_group(spec)
        bad = None
        checked = 0
        for rep, _ in conjugacy_classes_of_subgroups(G):
            if G.order // rep.order > 8:
                continue
            checked += 1
            if not check_transitive_iso(G, rep):
                bad = rep.order
                break
        out.append(_result(f"partition-iso:{spec}", bad is None,
                           "fixed partition poset = open subgroup interval",
                           f"{checked} subgroups OK" if bad is None
                           else f"failed at |H|={bad}"))
    return out


def _check_nonisotypical() -> list[CheckResult]:
    failures = []
    checked = 0
    for spec in ("C2", "C3", "C4", "S3", "C2xC2"):
        G = catalog_group(spec)
        reps = [rep for rep, _ in conjugacy_classes_of_subgroups(G)]
        for i, H1 in enumerate(reps):
            for H2 in reps[i + 1:]:
                size = G.order // H1.order + G.order // H2.order
                if size > 8:
                    continue
                M = GSet.disjoint_union([GSet.from_cosets(G, H1),
                                         GSet.from_cosets(G, H2)])
                if M.is_isotypical:
                    continue
                poset = fixed_partition_poset(M)
                bm1, betti = _reduced_betti_augmented(poset)
                checked += 1
                if bm1 != 0 or any(betti):
                    failures.append((spec, H1.order, H2.order))
    return [_result("nonisotypical-acyclic", not failures,
                    "reduced homology vanishes",
                    f"{checked} G-sets OK" if not failures else str(failures))]


def _check_suspension() -> list[CheckResult]:
    out = []
    for spec in CATALOG:
        G = catalog_group(spec)
        if G.order < 2 or G.order > 24:
            continue
        proper = interval_poset(G, G.trivial_subgroup)
        action = subgroup_conjugation_action(G, proper)
        bm1, betti = _reduced_betti_augmented(proper, action)
        pi = compute_report(G, G.order - 1).pi
        expected = [1 + bm1] + list(betti)
        ok = _pad_eq(pi, expected)
        out.append(_result(f"suspension:{spec}", ok, expected, list(pi)))
    return out


def properties_suite() -> list[CheckResult]:
    results = _check_complex_identities()
    results += _check_semisimplicity()
    results += _check_d0_identity()
    results += _check_transfer_boundary()
    results += _check_restrict_boundary()
    results += _check_inner_automorphisms()
    results += _check_functoriality()
    results += _check_double_cosets()
    results += _check_tau_realization()
    results += _check_projective_decomposition()
    results += _check_partition_iso()
    results += _check_nonisotypical()
    results += _check_suspension()
    return results


SUITES = {
    "paper": known_values_suite,
    "properties": properties_suite,
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        out = []
        for key in SUITES:
            out.extend(SUITES[key]())
        return out
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]()
