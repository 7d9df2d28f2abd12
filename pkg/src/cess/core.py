"""Parameters, share containers and bandwidth accounting common to all schemes.

Every scheme implements the same four steps: ``encode`` a message into n
shares, ``plan`` which nodes to contact for an available set, ``preprocess``
a share into the prefix a node transmits, and ``decode`` the prefixes.
:func:`retrieve` strings these together and fills a :class:`BandwidthLedger`.
"""

from __future__ import annotations

import enum
import math
import secrets
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import InvalidD, InvalidParams, LengthMismatch, ModulusMismatch, NotAuthorized
from .gf import FieldElement, is_prime


class SchemeId(enum.IntEnum):
    CE_SHAMIR = 1
    CE_RS = 2
    CE_RANDOM = 3

    @property
    def label(self) -> str:
        return self.name.lower().replace("_", "-")

    @classmethod
    def from_label(cls, label: str) -> SchemeId:
        return cls[label.upper().replace("-", "_")]


@dataclass(frozen=True)
class SchemeParams:
    """``n`` nodes, any ``n - r`` decode, any ``z`` learn nothing, over GF(q).

    Only rate-optimal parameters are accepted, so ``k`` is always ``n - r - z``.
    """

    n: int
    r: int
    z: int
    q: int
    k: int | None = None

    def __post_init__(self):
        if min(self.n, self.r, self.z) < 0:
            raise InvalidParams("n, r and z must be non-negative")
        k = rate_capacity(self.n, self.r, self.z)
        if self.k is not None and self.k != k:
            raise InvalidParams(f"k={self.k} is not rate-optimal; expected n - r - z = {k}")
        object.__setattr__(self, "k", k)
        if not is_prime(self.q):
            raise InvalidParams(f"q={self.q} is not prime")
        if self.q <= self.n:
            raise InvalidParams(f"need q > n, got q={self.q}, n={self.n}")

    @property
    def authorized_size(self) -> int:
        return self.n - self.r


@dataclass(frozen=True)
class ShareBundle:
    node_index: int
    symbols: tuple[int, ...]
    scheme_id: SchemeId
    params: SchemeParams
    scheme_meta: bytes = b""


@dataclass(frozen=True)
class PreprocessedShare:
    """What a node transmits: a prefix of its share whose length depends only on ``d_context``."""

    node_index: int
    d_context: int
    symbols: tuple[int, ...]


@dataclass
class BandwidthLedger:
    subset: tuple[int, ...]
    contacted: tuple[int, ...] = ()
    symbols_downloaded: int = 0
    symbols_read_from_disk: int = 0
    d_context: int = 0


class CountingSymbols(Sequence):
    """Read-only view of a share payload that tallies every symbol read."""

    def __init__(self, symbols: Sequence[int], ledger: BandwidthLedger):
        self._symbols = tuple(symbols)
        self._ledger = ledger

    def __len__(self) -> int:
        return len(self._symbols)

    def __getitem__(self, item):
        out = self._symbols[item]
        self._ledger.symbols_read_from_disk += len(out) if isinstance(item, slice) else 1
        return out


def rate_capacity(n: int, r: int, z: int) -> int:
    if n <= r + z:
        raise InvalidParams(f"need n > r + z, got n={n}, r={r}, z={z}")
    return n - r - z


def co_lower_bound(k: int, z: int, d: int) -> Fraction:
    """Minimum communication overhead ``kz / (d - z)`` in units of whole shares."""
    if d <= z:
        raise InvalidD(f"need d > z, got d={d}, z={z}")
    return Fraction(k * z, d - z)


def co_bound_symbols(k: int, z: int, d: int, width: int) -> Fraction:
    """The same bound counted in GF(q) symbols for shares of ``width`` symbols."""
    return co_lower_bound(k, z, d) * width


def bandwidth_bound_symbols(k: int, z: int, d: int, width: int) -> Fraction:
    return k * width + co_bound_symbols(k, z, d, width)


def validate_access(subset: Iterable[int], params: SchemeParams) -> str:
    subset = set(subset)
    if not subset <= set(range(1, params.n + 1)):
        raise InvalidParams(f"nodes {sorted(subset)} not within 1..{params.n}")
    if len(subset) >= params.n - params.r:
        return "authorized"
    if len(subset) <= params.z:
        return "blocked"
    return "intermediate"


def residues(values: Sequence[int | FieldElement], q: int) -> list[int]:
    out = []
    for v in values:
        if isinstance(v, FieldElement):
            if v.modulus != q:
                raise ModulusMismatch(f"GF({v.modulus}) value for a GF({q}) scheme")
            v = v.value
        out.append(int(v) % q)
    return out


def default_rng():
    return secrets.SystemRandom()


class Scheme:
    """Shared plumbing; subclasses fill in the encoder and decoder."""

    scheme_id: SchemeId
    params: SchemeParams
    share_width: int
    message_length: int
    key_length: int

    @property
    def q(self) -> int:
        return self.params.q

    @property
    def unit_width(self) -> int:
        """GF(q) symbols per share-alphabet symbol; one message unit is ``k`` of these."""
        return self.share_width

    @property
    def meta(self) -> bytes:
        return b""

    def supported_d(self) -> tuple[int, ...]:
        raise NotImplementedError

    def reliability_sizes(self) -> tuple[int, ...]:
        return tuple(range(self.params.n - self.params.r, self.params.n + 1))

    def draw_keys(self, rng=None) -> list[int]:
        rng = rng or default_rng()
        return [rng.randrange(self.q) for _ in range(self.key_length)]

    def encode(self, message: Sequence[int | FieldElement], rng=None) -> list[ShareBundle]:
        return self.encode_with_keys(message, self.draw_keys(rng))

    def encode_with_keys(self, message, keys) -> list[ShareBundle]:
        raise NotImplementedError

    def plan(self, available: Iterable[int]) -> tuple[tuple[int, ...], int]:
        """Nodes to contact and the ``d`` they are told, for an available set."""
        raise NotImplementedError

    def preprocess(self, share: ShareBundle, d: int) -> PreprocessedShare:
        raise NotImplementedError

    def decode(self, pre: Sequence[PreprocessedShare]) -> list[int]:
        raise NotImplementedError

    def _check_message(self, message, keys) -> tuple[list[int], list[int]]:
        message = residues(message, self.q)
        keys = residues(keys, self.q)
        if len(message) != self.message_length:
            raise LengthMismatch(f"message has {len(message)} symbols, expected {self.message_length}")
        if len(keys) != self.key_length:
            raise LengthMismatch(f"got {len(keys)} keys, expected {self.key_length}")
        return message, keys

    def _bundle(self, j: int, symbols: Sequence[int]) -> ShareBundle:
        return ShareBundle(j, tuple(symbols), self.scheme_id, self.params, self.meta)

    def _check_authorized(self, count: int) -> None:
        if count < self.params.n - self.params.r:
            raise NotAuthorized(
                f"{count} nodes available, need at least n - r = {self.params.n - self.params.r}"
            )


def retrieve(
    scheme: Scheme,
    shares: Mapping[int, ShareBundle] | Sequence[ShareBundle],
    available: Iterable[int] | None = None,
) -> tuple[list[int], BandwidthLedger]:
    """Decode from the available nodes, tallying disk reads and transmitted symbols."""
    if not isinstance(shares, Mapping):
        shares = {s.node_index: s for s in shares}
    subset = tuple(sorted(shares if available is None else available))
    contacted, d = scheme.plan(subset)
    ledger = BandwidthLedger(subset=subset, contacted=tuple(contacted), d_context=d)
    pre = []
    for j in contacted:
        disk_view = replace(shares[j], symbols=CountingSymbols(shares[j].symbols, ledger))
        p = scheme.preprocess(disk_view, d)
        ledger.symbols_downloaded += len(p.symbols)
        pre.append(p)
    return scheme.decode(pre), ledger


def lcm_all(values: Iterable[int]) -> int:
    return math.lcm(*values)


__all__ = [
    "BandwidthLedger",
    "CountingSymbols",
    "PreprocessedShare",
    "Scheme",
    "SchemeId",
    "SchemeParams",
    "ShareBundle",
    "bandwidth_bound_symbols",
    "co_bound_symbols",
    "co_lower_bound",
    "rate_capacity",
    "retrieve",
    "validate_access",
]
