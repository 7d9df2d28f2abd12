"""Universal bandwidth-optimal scheme built from a ladder of Shamir polynomials.

For a set ``D`` of decoder sizes with ``n - r`` in ``D``, the dealer builds
``p_i`` polynomials of degree ``d_i - 1`` for each ``d_i`` in ``D`` (largest
first).  The ``z`` lowest coefficients of every polynomial are keys.  The
top tier carries the message; each lower tier carries the degree
``d_i .. d_{i-1} - 1`` coefficients of all higher polynomials.  A decoder
with ``d`` nodes downloads only the polynomials of degree ``>= d - 1`` and
peels the tiers from the bottom up.

Example (the seven-node ladder, ``D = {3, 4, 7}``, one key each)::

    f = k1 + m1 x + m2 x^2 + m3 x^3 + m4 x^4 + m5 x^5 + m6 x^6
    g = k2 + m4 x + m5 x^2 + m6 x^3
    h = k3 + m3 x + m6 x^2
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from math import lcm

from .core import PreprocessedShare, Scheme, SchemeId, SchemeParams, ShareBundle
from .errors import (
    DuplicateNode,
    InconsistentShares,
    InvalidD,
    InvalidParams,
    MissingMinimalD,
    NotAuthorized,
    UnsupportedD,
)
from .poly import horner, interpolate_tail_ints

Slot = tuple[int, int]  # (polynomial index, degree)


@dataclass(frozen=True)
class LayoutPlan:
    n: int
    r: int
    z: int
    D: tuple[int, ...]  # strictly decreasing, ends at n - r
    m_len: int
    b: int
    p: tuple[int, ...]
    poly_degrees: tuple[int, ...]
    poly_tier: tuple[int, ...]
    # non-key slot -> ("msg", index) for the top tier, ("coef", (poly, degree)) below it
    coeff_map: dict[Slot, tuple[str, object]] = field(repr=False)
    # (poly, degree) of a carried coefficient -> the lower-tier slot holding it
    carrier: dict[Slot, Slot] = field(repr=False)
    # every slot resolved to ("key", index) or ("msg", index)
    source: dict[Slot, tuple[str, int]] = field(repr=False)

    @property
    def k(self) -> int:
        return self.n - self.r - self.z

    @property
    def key_positions(self) -> tuple[int, ...]:
        return tuple(range(self.z))

    def tier_of(self, d: int) -> int:
        try:
            return self.D.index(d)
        except ValueError:
            raise UnsupportedD(f"d={d} not in {sorted(self.D)}") from None

    def prefix_length(self, d: int) -> int:
        """Polynomials a node sends when ``d`` nodes decode: those of degree >= d - 1."""
        return sum(self.p[: self.tier_of(d) + 1])

    def polys_in_tier(self, tier: int) -> range:
        start = sum(self.p[:tier])
        return range(start, start + self.p[tier])


def plan(n: int, r: int, z: int, D: Iterable[int]) -> LayoutPlan:
    if n <= r + z:
        raise InvalidParams(f"need n > r + z, got n={n}, r={r}, z={z}")
    ds = tuple(sorted(set(D), reverse=True))
    if not ds or any(not n - r <= d <= n for d in ds):
        raise InvalidD(f"D={sorted(ds)} must lie within {n - r}..{n}")
    if ds[-1] != n - r:
        raise MissingMinimalD(f"D must contain n - r = {n - r}")
    k = n - r - z
    m_len = lcm(*(d - z for d in ds))
    b = m_len // k
    p = tuple(m_len // (d - z) - (m_len // (ds[i - 1] - z) if i else 0) for i, d in enumerate(ds))
    assert sum(p) == b

    degrees, tiers = [], []
    for tier, (d, count) in enumerate(zip(ds, p)):
        degrees += [d - 1] * count
        tiers += [tier] * count

    coeff_map: dict[Slot, tuple[str, object]] = {}
    carrier: dict[Slot, Slot] = {}
    source: dict[Slot, tuple[str, int]] = {}
    for poly in range(b):
        for e in range(z):
            source[poly, e] = ("key", poly * z + e)

    top = range(p[0])
    msg = 0
    for poly in top:
        for e in range(z, ds[0]):
            coeff_map[poly, e] = ("msg", msg)
            source[poly, e] = ("msg", msg)
            msg += 1

    first = p[0]
    for tier in range(1, len(ds)):
        lo, hi = ds[tier], ds[tier - 1]
        load = [(poly, e) for poly in range(first) for e in range(lo, hi)]
        slots = [(poly, e) for poly in range(first, first + p[tier]) for e in range(z, lo)]
        assert len(load) == len(slots), (tier, len(load), len(slots))
        for slot, carried in zip(slots, load):
            coeff_map[slot] = ("coef", carried)
            carrier[carried] = slot
            source[slot] = source[carried]
        first += p[tier]

    return LayoutPlan(
        n=n, r=r, z=z, D=ds, m_len=m_len, b=b, p=p,
        poly_degrees=tuple(degrees), poly_tier=tuple(tiers),
        coeff_map=coeff_map, carrier=carrier, source=source,
    )


@dataclass
class DecodeTrace:
    """Instrumentation of one decode: which polynomials were interpolated, in order,
    and how many distinct message symbols were known after each step."""

    d: int
    interpolated: list[int] = field(default_factory=list)
    message_symbols_known: list[int] = field(default_factory=list)


class CeShamir(Scheme):
    scheme_id = SchemeId.CE_SHAMIR

    def __init__(self, params: SchemeParams, D: Iterable[int] | None = None):
        if D is None:
            D = range(params.n - params.r, params.n + 1)
        self.params = params
        self.layout = plan(params.n, params.r, params.z, D)
        self.share_width = self.layout.b
        self.message_length = self.layout.m_len
        self.key_length = params.z * self.layout.b

    @property
    def meta(self) -> bytes:
        D = sorted(self.layout.D)
        return len(D).to_bytes(2, "little") + b"".join(d.to_bytes(2, "little") for d in D)

    @classmethod
    def from_meta(cls, params: SchemeParams, meta: bytes) -> CeShamir:
        count = int.from_bytes(meta[:2], "little")
        D = [int.from_bytes(meta[2 + 2 * i : 4 + 2 * i], "little") for i in range(count)]
        return cls(params, D)

    def supported_d(self) -> tuple[int, ...]:
        return tuple(sorted(self.layout.D))

    def reliability_sizes(self) -> tuple[int, ...]:
        return self.supported_d()

    def polynomials(self, message, keys) -> list[list[int]]:
        """Coefficient lists of all ``b`` polynomials, in construction order."""
        message, keys = self._check_message(message, keys)
        out = []
        for poly, deg in enumerate(self.layout.poly_degrees):
            coeffs = []
            for e in range(deg + 1):
                kind, idx = self.layout.source[poly, e]
                coeffs.append(keys[idx] if kind == "key" else message[idx])
            out.append(coeffs)
        return out

    def encode_with_keys(self, message, keys) -> list[ShareBundle]:
        q = self.q
        polys = self.polynomials(message, keys)
        return [
            self._bundle(j, [horner(c, j, q) for c in polys])
            for j in range(1, self.params.n + 1)
        ]

    def plan(self, available: Iterable[int]) -> tuple[tuple[int, ...], int]:
        available = sorted(set(available))
        self._check_authorized(len(available))
        d = max(x for x in self.layout.D if x <= len(available))
        return tuple(available[:d]), d

    def preprocess(self, share: ShareBundle, d: int) -> PreprocessedShare:
        t = self.layout.prefix_length(d)
        return PreprocessedShare(share.node_index, d, tuple(share.symbols[:t]))

    def decode(self, pre: Sequence[PreprocessedShare]) -> list[int]:
        return self.decode_traced(pre)[0]

    def decode_traced(self, pre: Sequence[PreprocessedShare]) -> tuple[list[int], DecodeTrace]:
        layout, q = self.layout, self.q
        d = len(pre)
        self._check_authorized(d)
        tier = layout.tier_of(d)
        nodes = [s.node_index for s in pre]
        if len(set(nodes)) != d:
            raise DuplicateNode(f"repeated node in {nodes}")
        if any(not 1 <= j <= layout.n for j in nodes):
            raise InconsistentShares(f"node indices {nodes} outside 1..{layout.n}")
        width = layout.prefix_length(d)
        for s in pre:
            if s.d_context != d:
                raise InconsistentShares(f"node {s.node_index} prepared for d={s.d_context}, decoding with {d}")
            if len(s.symbols) != width:
                raise InconsistentShares(f"node {s.node_index} sent {len(s.symbols)} symbols, expected {width}")

        trace = DecodeTrace(d)
        known: dict[Slot, int] = {}
        revealed: set[int] = set()
        for t in range(tier, -1, -1):
            for poly in layout.polys_in_tier(t):
                deg = layout.poly_degrees[poly]
                tail = {e: known[layout.carrier[poly, e]] for e in range(d, deg + 1)}
                ys = [s.symbols[poly] for s in pre]
                coeffs = interpolate_tail_ints(nodes, ys, tail, d, q)
                for e, c in enumerate(coeffs):
                    known[poly, e] = c
                    kind, idx = layout.source[poly, e]
                    if kind == "msg":
                        revealed.add(idx)
                trace.interpolated.append(poly)
                trace.message_symbols_known.append(len(revealed))

        message = [0] * layout.m_len
        for poly in layout.polys_in_tier(0):
            for e in range(layout.z, layout.D[0]):
                message[layout.source[poly, e][1]] = known[poly, e]
        return message, trace

    def decode_flexible(self, shares: Sequence[ShareBundle]) -> list[int]:
        """Decode from any ``d >= n - r`` full shares, using the largest supported ``d' <= d``."""
        if len(shares) < self.params.n - self.params.r:
            raise NotAuthorized(f"{len(shares)} shares, need {self.params.n - self.params.r}")
        contacted, d = self.plan(s.node_index for s in shares)
        by_node = {s.node_index: s for s in shares}
        return self.decode([self.preprocess(by_node[j], d) for j in contacted])
