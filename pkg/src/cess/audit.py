"""Exhaustive secrecy and reliability checks, plus bandwidth accounting.

Secrecy is checked by exact counting: for each message, tabulate how often
every observation of a ``z``-node coalition occurs over all key draws and
require identical tables.  ``messages="span"`` restricts the message loop
to zero and the unit vectors; for a linear encoder this is still exact,
because each table is the key-only table shifted by the message's
contribution, and the set of messages with an unshifted table is a subspace.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    Scheme,
    bandwidth_bound_symbols,
    co_lower_bound,
    retrieve,
)
from .errors import BudgetExceeded, CessError

DEFAULT_BUDGET = 10**7


@dataclass
class LeakWitness:
    message_a: tuple[int, ...]
    message_b: tuple[int, ...]
    table_a: dict[tuple[int, ...], int]
    table_b: dict[tuple[int, ...], int]


@dataclass
class SecrecyVerdict:
    subset: tuple[int, ...]
    independent: bool
    witness: LeakWitness | None = None
    mode: str = "all"

    @property
    def label(self) -> str:
        return "independent" if self.independent else "LEAK"


@dataclass
class ReliabilityVerdict:
    subset: tuple[int, ...]
    ok: bool
    symbols_downloaded: int = 0
    symbols_read_from_disk: int = 0
    error: str = ""


@dataclass
class BandwidthRow:
    d: int
    measured: int
    bound: Fraction
    supported: bool
    symbols_read_from_disk: int
    measured_co: Fraction
    bound_co: Fraction

    @property
    def tight(self) -> bool:
        return self.measured_co == self.bound_co


@dataclass
class AuditReport:
    scheme: str
    params: dict
    secrecy: list[SecrecyVerdict] | None = None
    secrecy_note: str = ""
    reliability: list[ReliabilityVerdict] = field(default_factory=list)
    bandwidth: list[BandwidthRow] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        checks = [v.independent for v in self.secrecy or []]
        checks += [v.ok for v in self.reliability]
        checks += [row.tight and row.measured == row.symbols_read_from_disk
                   for row in self.bandwidth if row.supported]
        return all(checks)

    def rows(self) -> list[dict]:
        """One record per verdict, for delimited output."""
        out = []
        for v in self.secrecy or []:
            out.append({"check": "secrecy", "subset": _fmt(v.subset), "d": len(v.subset),
                        "verdict": v.label, "measured": "", "bound": "", "detail": v.mode})
        for v in self.reliability:
            out.append({"check": "reliability", "subset": _fmt(v.subset), "d": len(v.subset),
                        "verdict": "ok" if v.ok else "fail", "measured": v.symbols_downloaded,
                        "bound": "", "detail": v.error})
        for row in self.bandwidth:
            verdict = "tight" if row.tight else ("loose" if row.supported else "unsupported")
            out.append({"check": "bandwidth", "subset": "", "d": row.d, "verdict": verdict,
                        "measured": row.measured, "bound": str(row.bound),
                        "detail": f"co={row.measured_co} bound_co={row.bound_co} reads={row.symbols_read_from_disk}"})
        return out

    def render(self) -> str:
        p = self.params
        lines = [f"{self.scheme}  n={p['n']} r={p['r']} z={p['z']} k={p['k']} q={p['q']}"]
        if self.secrecy is None:
            lines.append(f"secrecy: skipped ({self.secrecy_note})")
        else:
            leaks = [v for v in self.secrecy if not v.independent]
            lines.append(f"secrecy: {len(self.secrecy) - len(leaks)}/{len(self.secrecy)} coalitions independent"
                         + (f" [{self.secrecy_note}]" if self.secrecy_note else ""))
            for v in leaks:
                w = v.witness
                lines.append(f"  LEAK {_fmt(v.subset)}: messages {w.message_a} vs {w.message_b}")
        bad = [v for v in self.reliability if not v.ok]
        lines.append(f"reliability: {len(self.reliability) - len(bad)}/{len(self.reliability)} subsets decode")
        for v in bad:
            lines.append(f"  FAIL {_fmt(v.subset)}: {v.error}")
        lines.append(f"{'d':>4} {'measured':>9} {'bound':>9} {'CO':>8} {'CO bound':>9}  verdict")
        for row in self.bandwidth:
            verdict = "tight" if row.tight else ("LOOSE" if row.supported else "(unsupported)")
            lines.append(f"{row.d:>4} {row.measured:>9} {str(row.bound):>9} {str(row.measured_co):>8} "
                         f"{str(row.bound_co):>9}  {verdict}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def _fmt(subset: Sequence[int]) -> str:
    return "{" + ",".join(map(str, subset)) + "}"


def _observe(shares, subset) -> tuple[int, ...]:
    return tuple(v for j in subset for v in shares[j - 1].symbols)


def check_linear(scheme: Scheme, trials: int = 8, rng=None) -> bool:
    """Spot-check that encoding is additive in (message, keys)."""
    rng = rng or random.Random(0)
    q = scheme.q
    for _ in range(trials):
        m1 = [rng.randrange(q) for _ in range(scheme.message_length)]
        m2 = [rng.randrange(q) for _ in range(scheme.message_length)]
        k1, k2 = scheme.draw_keys(rng), scheme.draw_keys(rng)
        s1 = scheme.encode_with_keys(m1, k1)
        s2 = scheme.encode_with_keys(m2, k2)
        s3 = scheme.encode_with_keys([(a + b) % q for a, b in zip(m1, m2)],
                                     [(a + b) % q for a, b in zip(k1, k2)])
        for a, b, c in zip(s1, s2, s3):
            if [(x + y) % q for x, y in zip(a.symbols, b.symbols)] != list(c.symbols):
                return False
    return True


def secrecy_cost(scheme: Scheme, messages: str = "all") -> int:
    q = scheme.q
    keys = q**scheme.key_length
    if messages == "all":
        return q**scheme.message_length * keys
    return (scheme.message_length + 1) * keys


def secrecy_exhaustive(scheme: Scheme, budget: int = DEFAULT_BUDGET, messages: str = "all",
                       subsets: Sequence[tuple[int, ...]] | None = None) -> list[SecrecyVerdict]:
    """Exact observation tables for every ``z``-coalition; see the module docstring."""
    if messages not in ("all", "span"):
        raise ValueError(f"messages must be 'all' or 'span', not {messages!r}")
    cost = secrecy_cost(scheme, messages)
    if cost > budget:
        raise BudgetExceeded(f"{cost} encodings exceed the budget of {budget}")
    if messages == "span" and not check_linear(scheme):
        raise CessError("encoder is not linear; span reduction does not apply")

    q, L = scheme.q, scheme.message_length
    if subsets is None:
        subsets = list(itertools.combinations(range(1, scheme.params.n + 1), scheme.params.z))
    if messages == "all":
        message_iter = itertools.product(range(q), repeat=L)
    else:
        message_iter = [tuple(int(i == j) for j in range(L)) for i in range(-1, L)]
    key_space = list(itertools.product(range(q), repeat=scheme.key_length))

    reference: dict[tuple, Counter] = {}
    ref_message = None
    verdicts = {s: SecrecyVerdict(s, True, mode=messages) for s in subsets}
    for m in message_iter:
        tables = {s: Counter() for s in subsets}
        for keys in key_space:
            shares = scheme.encode_with_keys(m, keys)
            for s in subsets:
                tables[s][_observe(shares, s)] += 1
        if ref_message is None:
            ref_message, reference = m, tables
            continue
        for s in subsets:
            v = verdicts[s]
            if v.independent and tables[s] != reference[s]:
                v.independent = False
                v.witness = LeakWitness(ref_message, m, dict(reference[s]), dict(tables[s]))
    return [verdicts[s] for s in subsets]


def reliability_exhaustive(scheme: Scheme, rng=None, message: Sequence[int] | None = None,
                           sizes: Sequence[int] | None = None) -> list[ReliabilityVerdict]:
    """Decode from every authorized subset of each size in ``sizes``."""
    rng = rng or random.Random(0)
    if message is None:
        message = [rng.randrange(scheme.q) for _ in range(scheme.message_length)]
    message = list(message)
    shares = scheme.encode(message, rng)
    n = scheme.params.n
    out = []
    for size in sizes or scheme.reliability_sizes():
        if size < n - scheme.params.r:
            continue
        for subset in itertools.combinations(range(1, n + 1), size):
            try:
                got, ledger = retrieve(scheme, shares, subset)
            except CessError as exc:
                out.append(ReliabilityVerdict(subset, False, error=f"{type(exc).__name__}: {exc}"))
                continue
            ok = got == message
            out.append(ReliabilityVerdict(subset, ok, ledger.symbols_downloaded,
                                          ledger.symbols_read_from_disk,
                                          "" if ok else "decoded a different message"))
    return out


def bandwidth_audit(scheme: Scheme, rng=None, sizes: Sequence[int] | None = None) -> list[BandwidthRow]:
    """Measure the download for ``d`` available nodes and compare with the lower bound."""
    rng = rng or random.Random(0)
    p = scheme.params
    width = scheme.unit_width
    message = [rng.randrange(scheme.q) for _ in range(scheme.message_length)]
    shares = scheme.encode(message, rng)
    supported = set(scheme.supported_d())
    rows = []
    for d in sizes or range(p.n - p.r, p.n + 1):
        got, ledger = retrieve(scheme, shares, range(1, d + 1))
        if got != message:
            raise CessError(f"decode at d={d} returned the wrong message")
        rows.append(BandwidthRow(
            d=d,
            measured=ledger.symbols_downloaded,
            bound=bandwidth_bound_symbols(p.k, p.z, d, width),
            supported=d in supported,
            symbols_read_from_disk=ledger.symbols_read_from_disk,
            measured_co=Fraction(ledger.symbols_downloaded - p.k * width, width),
            bound_co=co_lower_bound(p.k, p.z, d),
        ))
    return rows


def run_audit(scheme: Scheme, *, secrecy: str = "auto", budget: int = DEFAULT_BUDGET, rng=None) -> AuditReport:
    """All three audits.  ``secrecy`` is ``all``, ``span``, ``skip`` or ``auto``
    (full enumeration if affordable, else the span reduction, else skipped)."""
    rng = rng or random.Random(0)
    p = scheme.params
    report = AuditReport(scheme.scheme_id.label, {"n": p.n, "r": p.r, "z": p.z, "k": p.k, "q": p.q})
    mode = secrecy
    if secrecy == "auto":
        if secrecy_cost(scheme, "all") <= budget:
            mode = "all"
        elif secrecy_cost(scheme, "span") <= budget:
            mode = "span"
        else:
            mode = "skip"
            report.secrecy_note = f"state space exceeds budget {budget}"
    if mode != "skip":
        report.secrecy = secrecy_exhaustive(scheme, budget, mode)
        report.secrecy_note = "" if mode == "all" else "linear span reduction"
    elif not report.secrecy_note:
        report.secrecy_note = "requested"
    report.reliability = reliability_exhaustive(scheme, rng)
    report.bandwidth = bandwidth_audit(scheme, rng)
    return report
