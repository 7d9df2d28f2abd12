"""Universal bandwidth-optimal scheme from random linear codes.

Each share holds ``N (k + r)`` symbols with ``N = lcm(k, ..., k + r)``.
Row ``i`` of the share array is ``(message, keys, extra_keys) @ G_i`` where
``G_i`` stacks a random block, a Vandermonde block and zeros.  A decoder
with ``s`` available nodes reads the first ``N k + d`` rows, where
``d = N k (n - s) / (s - z)``, and solves a square linear system.

Random blocks are expanded deterministically from a 32-byte seed with
SHAKE-256, so only the seed has to travel with the shares.
"""

from __future__ import annotations

import hashlib
import itertools
import secrets
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from math import comb, lcm

from .core import PreprocessedShare, Scheme, SchemeId, SchemeParams, ShareBundle
from .errors import DuplicateNode, FieldTooSmall, InconsistentShares, InvalidParams, SingularSystem
from .gf import symbol_bytes
from .matrix import FieldMatrix, hstack, rank, solve_right, submatrix, vec_mat

SEED_BYTES = 32


def uniform_stream(seed: bytes, label: int, q: int) -> Iterator[int]:
    """Uniform residues mod ``q`` by rejection sampling a SHAKE-256 stream."""
    width = symbol_bytes(q) + 1
    limit = (256**width // q) * q
    for block in itertools.count():
        buf = hashlib.shake_256(seed + label.to_bytes(4, "little") + block.to_bytes(4, "little")).digest(
            width * 64
        )
        for off in range(0, len(buf), width):
            v = int.from_bytes(buf[off : off + width], "little")
            if v < limit:
                yield v % q


@dataclass(frozen=True)
class RandomGeneratorSet:
    params: SchemeParams
    N: int
    matrix_seed: bytes
    Gs: tuple[FieldMatrix, ...] = field(repr=False)
    alphas: tuple[tuple[int, ...], ...] = field(repr=False)  # alphas[i][v]

    @property
    def width(self) -> int:
        return self.N * (self.params.k + self.params.r)

    @property
    def total_rows(self) -> int:
        p = self.params
        return self.N * (p.k * p.n + p.r * p.z)


def block_count(params: SchemeParams) -> int:
    k, r = params.k, params.r
    return lcm(*range(k, k + r + 1))


def sample_scheme(params: SchemeParams, seed: bytes | None = None, zero_random: bool = False) -> RandomGeneratorSet:
    """Expand ``seed`` into every ``G_i``.  ``zero_random`` blanks the random blocks (test fixture)."""
    n, r, z, k, q = params.n, params.r, params.z, params.k, params.q
    N = block_count(params)
    width = N * (k + r)
    if q <= n * width:
        raise FieldTooSmall(f"need q > n N (k + r) = {n * width}, got q={q}")
    if seed is None:
        seed = secrets.token_bytes(SEED_BYTES)
    if len(seed) != SEED_BYTES:
        raise InvalidParams(f"matrix seed must be {SEED_BYTES} bytes")

    total = N * (k * n + r * z)
    Nk = N * k
    gs, alphas = [], []
    for i in range(width):
        alpha = tuple(i * n + v for v in range(1, n + 1))
        if i < Nk:
            n_rand, n_vand = Nk * (k + r), Nk * z
        else:
            n_rand, n_vand = Nk * n + (i - Nk) * z, z
        stream = uniform_stream(seed, i, q)
        rows = [[0 if zero_random else next(stream) for _ in range(n)] for _ in range(n_rand)]
        rows += [[pow(a, u, q) for a in alpha] for u in range(n_vand)]
        rows += [[0] * n for _ in range(total - n_rand - n_vand)]
        gs.append(FieldMatrix.from_rows(rows, q, n))
        alphas.append(alpha)
    return RandomGeneratorSet(params, N, seed, tuple(gs), tuple(alphas))


def rows_to_read(params: SchemeParams, N: int, available: int) -> int:
    """Extra rows ``d`` beyond ``N k`` for ``available`` nodes; solves ``(Nk + d) s = Nkn + dz``."""
    n, z, k = params.n, params.z, params.k
    num, den = N * k * (n - available), available - z
    if num % den:
        raise InvalidParams(f"d = {num}/{den} is not an integer")
    return num // den


def trimmed_matrix(gens: RandomGeneratorSet, subset: Sequence[int]) -> FieldMatrix:
    """``(G*_{1,I} .. G*_{Nk+d,I})``: the read rows restricted to ``subset``, zero rows dropped."""
    p = gens.params
    d = rows_to_read(p, gens.N, len(subset))
    keep = range(gens.N * p.k * p.n + d * p.z)
    cols = [j - 1 for j in subset]
    return hstack([submatrix(g, keep, cols) for g in gens.Gs[: gens.N * p.k + d]])


@dataclass
class SchemeVerdict:
    passed: bool
    checked: int
    failures: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def failing_subset(self) -> tuple[int, ...] | None:
        return self.failures[0] if self.failures else None


def authorized_subsets(params: SchemeParams, limit: int | None = None, rng=None) -> Iterator[tuple[int, ...]]:
    """All authorized subsets, or ``limit`` random ones per size when there are more."""
    n = params.n
    for s in range(n - params.r, n + 1):
        if limit is None or comb(n, s) <= limit:
            yield from itertools.combinations(range(1, n + 1), s)
        else:
            for _ in range(limit):
                yield tuple(sorted(rng.sample(range(1, n + 1), s)))


def verify_scheme(gens: RandomGeneratorSet, params: SchemeParams | None = None, *,
                  limit: int | None = 10_000, rng=None, stop_early: bool = False) -> SchemeVerdict:
    """Check that every authorized subset yields a full-rank decoding matrix."""
    import random

    params = params or gens.params
    rng = rng or random.Random(0)
    verdict = SchemeVerdict(True, 0)
    for subset in authorized_subsets(params, limit, rng):
        a = trimmed_matrix(gens, subset)
        verdict.checked += 1
        if rank(a) < a.rows:
            verdict.passed = False
            verdict.failures.append(subset)
            if stop_early:
                break
    return verdict


class CeRandom(Scheme):
    scheme_id = SchemeId.CE_RANDOM

    def __init__(self, params: SchemeParams, seed: bytes | None = None, gens: RandomGeneratorSet | None = None):
        self.params = params
        self.gens = gens if gens is not None else sample_scheme(params, seed)
        self.N = self.gens.N
        k, r, z = params.k, params.r, params.z
        self.share_width = self.N * (k + r)
        self.message_length = self.N * k * (k + r)
        self.key_length = self.N * (k + r) * z

    @property
    def meta(self) -> bytes:
        return self.gens.matrix_seed

    @classmethod
    def from_meta(cls, params: SchemeParams, meta: bytes) -> CeRandom:
        return cls(params, bytes(meta))

    def supported_d(self) -> tuple[int, ...]:
        return tuple(range(self.params.n - self.params.r, self.params.n + 1))

    def encode_with_keys(self, message, keys) -> list[ShareBundle]:
        message, keys = self._check_message(message, keys)
        x = message + keys
        rows = [vec_mat(x, g) for g in self.gens.Gs]
        return [self._bundle(j, [row[j - 1] for row in rows]) for j in range(1, self.params.n + 1)]

    def plan(self, available: Iterable[int]) -> tuple[tuple[int, ...], int]:
        available = tuple(sorted(set(available)))
        self._check_authorized(len(available))
        return available, len(available)

    def prefix_length(self, d: int) -> int:
        return self.N * self.params.k + rows_to_read(self.params, self.N, d)

    def preprocess(self, share: ShareBundle, d: int) -> PreprocessedShare:
        t = self.prefix_length(d)
        return PreprocessedShare(share.node_index, d, tuple(share.symbols[:t]))

    def decode(self, pre: Sequence[PreprocessedShare]) -> list[int]:
        s = len(pre)
        self._check_authorized(s)
        pre = sorted(pre, key=lambda p: p.node_index)
        subset = tuple(p.node_index for p in pre)
        if len(set(subset)) != s:
            raise DuplicateNode(f"repeated node in {subset}")
        t = self.prefix_length(s)
        if any(p.d_context != s or len(p.symbols) != t for p in pre):
            raise InconsistentShares(f"every node must send its first {t} symbols")
        e = [p.symbols[i] for i in range(t) for p in pre]
        a = trimmed_matrix(self.gens, subset)
        try:
            x = solve_right(a, e)
        except SingularSystem as exc:
            raise SingularSystem(f"decoding matrix for nodes {subset} is rank deficient; resample the scheme") from exc
        return x[: self.message_length]
