"""Computation and profile reports over the whole symmetric-product filtration.

Dimension vectors are reported densely up to the degree bound
floor(log2(min(n, |G|))): a chain of degree k has total index at least 2^k,
so nothing lives above that bound and trailing zeros are printed rather
than omitted.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .groups import FiniteGroup
from .homology import betti_numbers
from .lattice import COINVARIANT, REDUCED, build_complex, filtration_levels


def report_length(order: int, n: int) -> int:
    n_eff = max(1, min(n, order))
    return n_eff.bit_length()  # floor(log2(n_eff)) + 1


def padded(values, length: int) -> tuple[int, ...]:
    out = list(values) + [0] * (length - len(values))
    return tuple(out[:length])


@dataclass
class ComputationReport:
    """Homotopy dimensions of one group at one filtration level.

    ``pi`` are the coinvariant homology dimensions, ``phi`` the reduced
    (collapsed-quotient) ones, ``chains`` the per-degree class counts of the
    coinvariant complex. Wall time is informational and excluded from
    equality and JSON output.
    """

    group: str
    order: int
    n: int
    n_effective: int
    pi: tuple[int, ...]
    phi: tuple[int, ...]
    chains: tuple[int, ...]
    euler: int
    wall_ms: float = field(default=0.0, compare=False)

    def to_json_dict(self) -> dict:
        return {
            "group": self.group,
            "order": self.order,
            "n": self.n,
            "n_effective": self.n_effective,
            "pi": list(self.pi),
            "phi": list(self.phi),
            "chains": list(self.chains),
            "euler": self.euler,
        }

    @staticmethod
    def from_json_dict(data: dict) -> ComputationReport:
        return ComputationReport(
            group=data["group"], order=data["order"], n=data["n"],
            n_effective=data["n_effective"], pi=tuple(data["pi"]),
            phi=tuple(data["phi"]), chains=tuple(data["chains"]),
            euler=data["euler"])


def compute_report(G: FiniteGroup, n: int) -> ComputationReport:
    """Build both complexes at level n and package their homology."""
    start = time.perf_counter()
    coinv = build_complex(G, n, COINVARIANT)
    reduced = build_complex(G, n, REDUCED)
    pi = betti_numbers(coinv)
    phi = betti_numbers(reduced)
    length = report_length(G.order, n)
    return ComputationReport(
        group=G.label, order=G.order, n=n, n_effective=coinv.n_effective,
        pi=padded(pi.betti, length), phi=padded(phi.betti, length),
        chains=padded(coinv.dims, length), euler=pi.euler,
        wall_ms=(time.perf_counter() - start) * 1000.0)


def same_homotopy(a: ComputationReport, b: ComputationReport) -> bool:
    """Equal pi and phi vectors after padding to a common length."""
    length = max(len(a.pi), len(b.pi))
    return (padded(a.pi, length) == padded(b.pi, length)
            and padded(a.phi, length) == padded(b.phi, length))


def same_report(a: ComputationReport, b: ComputationReport) -> bool:
    """Equal homotopy, chain counts and Euler characteristic (n fields aside)."""
    length = max(len(a.pi), len(b.pi))
    return (same_homotopy(a, b) and a.euler == b.euler
            and padded(a.chains, length) == padded(b.chains, length))


@dataclass
class ProfileRange:
    """Maximal run [start, end] of levels with one homotopy type; end None = infinity."""

    start: int
    end: int | None
    report: ComputationReport


@dataclass
class ProfileReport:
    """Reports at every realized filtration level, with constancy certification.

    ``gap_checks`` counts the intermediate levels that were recomputed to
    certify that nothing changes strictly between realized levels.
    """

    group: str
    order: int
    levels: tuple[int, ...]
    reports: tuple[ComputationReport, ...]
    ranges: tuple[ProfileRange, ...]
    gap_checks: int

    def to_json_dict(self) -> dict:
        return {
            "group": self.group,
            "order": self.order,
            "levels": list(self.levels),
            "reports": [r.to_json_dict() for r in self.reports],
            "ranges": [{"start": r.start, "end": r.end,
                        "pi": list(r.report.pi), "phi": list(r.report.phi)}
                       for r in self.ranges],
            "gap_checks": self.gap_checks,
        }


def _report_for_pickled(args) -> ComputationReport:
    mul, label, n = args
    return compute_report(FiniteGroup(mul, label), n)


def profile_report(G: FiniteGroup, threads: int = 1) -> ProfileReport:
    """Compute at every realized level and certify constancy in between.

    One intermediate n per gap between consecutive realized levels is
    recomputed and must reproduce the lower level's report; the same check
    covers one n beyond the group order.
    """
    levels = filtration_levels(G)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(_report_for_pickled,
                                    [(G.mul, G.label, n) for n in levels]))
    else:
        reports = [compute_report(G, n) for n in levels]
    gap_checks = 0
    probes = [(levels[i] + 1, reports[i])
              for i in range(len(levels) - 1) if levels[i] + 1 < levels[i + 1]]
    probes.append((G.order + 1, reports[-1]))
    for mid, expected in probes:
        probe = compute_report(G, mid)
        if not same_report(probe, expected):
            raise AssertionError(
                f"filtration level jumped at non-divisor n={mid} of {G.label}")
        gap_checks += 1
    ranges: list[ProfileRange] = []
    for level, report in zip(levels, reports):
        if ranges and same_homotopy(ranges[-1].report, report):
            continue
        ranges.append(ProfileRange(start=level, end=None, report=report))
    for cur, nxt in zip(ranges, ranges[1:]):
        cur.end = nxt.start - 1
    return ProfileReport(group=G.label, order=G.order, levels=tuple(levels),
                         reports=tuple(reports), ranges=tuple(ranges),
                         gap_checks=gap_checks)
