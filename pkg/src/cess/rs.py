"""Secret sharing with a single Reed-Solomon generator matrix ``G = T V``.

The flat codeword ``(c_11..c_1n, c_21..c_2n, ...)`` equals
``(message, keys, extra_keys) @ G``; node ``j`` holds every ``n``-th symbol
starting at ``j``.  ``V`` is Vandermonde on the points ``1 .. n*w`` and ``T``
changes basis so that the rows multiplying the extra keys vanish on the
first ``k*n`` points.  With all ``n`` nodes present the decoder reads only
the first ``k`` symbols per node; otherwise it reads ``n - r`` whole shares.

``beta`` (a common divisor of ``k`` and ``r``) shrinks the share width to
``(k + r) / beta`` and the field requirement to ``q > n (k + r) / beta``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from math import gcd

from .core import PreprocessedShare, Scheme, SchemeId, SchemeParams, ShareBundle
from .errors import (
    DuplicateNode,
    FieldTooSmall,
    InconsistentShares,
    InvalidBeta,
    LengthMismatch,
    SingularMatrix,
    SingularSystem,
    TooManyErasures,
)
from .matrix import FieldMatrix, invert, matmul, solve_right, submatrix, vandermonde, vec_mat


def _poly_mul_linear(coeffs: list[int], root: int, q: int) -> list[int]:
    out = [0] * (len(coeffs) + 1)
    for i, c in enumerate(coeffs):
        out[i] = (out[i] - root * c) % q
        out[i + 1] = (out[i + 1] + c) % q
    return out


class RsGenerator:
    """``G``, its factors ``T`` and ``V``, and the block sizes of ``G``."""

    def __init__(self, params: SchemeParams, beta: int = 1):
        n, r, z, k, q = params.n, params.r, params.z, params.k, params.q
        if beta < 1 or k % beta or r % beta:
            raise InvalidBeta(f"beta={beta} must divide gcd(k, r) = {gcd(k, r)}")
        self.params, self.beta = params, beta
        self.kb, self.rb = k // beta, r // beta
        self.width = self.kb + self.rb
        self.top = self.kb * n  # rows/cols of G11
        self.low = self.rb * z  # rows multiplying the extra keys
        size = self.top + self.low
        cols = n * self.width
        if q <= cols:
            raise FieldTooSmall(f"need q > n (k + r) / beta = {cols}, got q={q}")
        self.alphas = tuple(range(1, cols + 1))

        trows = []
        for i in range(self.top):
            trows.append([int(e == i) for e in range(size)])
        root = [1]
        for a in self.alphas[: self.top]:
            root = _poly_mul_linear(root, a, q)
        for i in range(self.low):
            f = [0] * i + root
            trows.append(f + [0] * (size - len(f)))
        self.T = FieldMatrix.from_rows(trows, q, size)
        self.V = vandermonde(self.alphas, size, q)
        self.G = matmul(self.T, self.V)

    @property
    def message_length(self) -> int:
        return self.kb * (self.params.k + self.params.r)

    @property
    def key_length(self) -> int:
        return self.top + self.low - self.message_length

    def flat_position(self, row: int, node: int) -> int:
        """Codeword index of symbol ``row`` (0-based) of node ``node`` (1-based)."""
        return row * self.params.n + node - 1

    def blocks(self) -> dict[str, FieldMatrix]:
        G, t = self.G, self.top
        rows_top, rows_low = range(t), range(t, G.rows)
        cols_left, cols_right = range(t), range(t, G.cols)
        return {
            "G11": submatrix(G, rows_top, cols_left),
            "G12": submatrix(G, rows_top, cols_right),
            "G21": submatrix(G, rows_low, cols_left),
            "G22": submatrix(G, rows_low, cols_right),
        }


def build_generator(params: SchemeParams, beta: int = 1) -> RsGenerator:
    return RsGenerator(params, beta)


class CeRs(Scheme):
    scheme_id = SchemeId.CE_RS

    def __init__(self, params: SchemeParams, beta: int = 1):
        self.params = params
        self.gen = RsGenerator(params, beta)
        self.share_width = self.gen.width
        self.message_length = self.gen.message_length
        self.key_length = self.gen.key_length
        self._g11_inv = None

    @property
    def beta(self) -> int:
        return self.gen.beta

    @property
    def meta(self) -> bytes:
        return self.beta.to_bytes(2, "little")

    @classmethod
    def from_meta(cls, params: SchemeParams, meta: bytes) -> CeRs:
        return cls(params, int.from_bytes(meta[:2], "little") or 1)

    def supported_d(self) -> tuple[int, ...]:
        return tuple(sorted({self.params.n - self.params.r, self.params.n}))

    def codeword(self, message, keys) -> list[int]:
        message, keys = self._check_message(message, keys)
        return vec_mat(message + keys, self.gen.G)

    def encode_with_keys(self, message, keys) -> list[ShareBundle]:
        flat = self.codeword(message, keys)
        n = self.params.n
        return [self._bundle(j, flat[j - 1 :: n]) for j in range(1, n + 1)]

    def plan(self, available: Iterable[int]) -> tuple[tuple[int, ...], int]:
        available = sorted(set(available))
        self._check_authorized(len(available))
        n = self.params.n
        if len(available) == n:
            return tuple(available), n
        return tuple(available[: n - self.params.r]), n - self.params.r

    def preprocess(self, share: ShareBundle, d: int) -> PreprocessedShare:
        t = self.gen.kb if d == self.params.n else self.share_width
        return PreprocessedShare(share.node_index, d, tuple(share.symbols[:t]))

    def decode(self, pre: Sequence[PreprocessedShare]) -> list[int]:
        n = self.params.n
        nodes = [p.node_index for p in pre]
        if len(set(nodes)) != len(nodes):
            raise DuplicateNode(f"repeated node in {nodes}")
        if len(pre) == n and all(p.d_context == n for p in pre):
            by_node = {p.node_index: p.symbols for p in pre}
            return self.decode_all([by_node[j] for j in range(1, n + 1)])
        if any(len(p.symbols) != self.share_width for p in pre):
            raise InconsistentShares("partial shares are only usable when all n nodes respond")
        return self.decode_subset({p.node_index: p.symbols for p in pre})

    def decode_all(self, prefixes: Sequence[Sequence[int]]) -> list[int]:
        """Recover the message from the first ``k`` symbols of each of the ``n`` shares."""
        gen, n = self.gen, self.params.n
        if len(prefixes) != n or any(len(p) < gen.kb for p in prefixes):
            raise LengthMismatch(f"need the first {gen.kb} symbols of all {n} shares")
        e = [prefixes[j][i] for i in range(gen.kb) for j in range(n)]
        if self._g11_inv is None:
            self._g11_inv = invert(gen.blocks()["G11"])
        return vec_mat(e, self._g11_inv)[: self.message_length]

    def decode_subset(self, shares: dict[int, Sequence[int]]) -> list[int]:
        """Recover the message from ``n - r`` complete shares (extra ones are ignored)."""
        gen = self.gen
        self._check_authorized(len(shares))
        chosen = sorted(shares)[: self.params.n - self.params.r]
        cols, e = [], []
        for row in range(gen.width):
            for j in chosen:
                cols.append(gen.flat_position(row, j))
                e.append(shares[j][row])
        a = submatrix(gen.G, range(gen.G.rows), cols)
        try:
            x = solve_right(a, e)
        except SingularSystem as exc:  # excluded by the MDS property of G
            raise SingularMatrix(f"generator columns {cols} are dependent") from exc
        return x[: self.message_length]

    def decode_erasures(self, available: Sequence[tuple[int, int]]) -> list[int]:
        """Recover the message from any surviving flat codeword positions."""
        gen = self.gen
        need = (self.params.n - self.params.r) * gen.width
        positions = [p for p, _ in available]
        if len(set(positions)) != len(positions):
            raise DuplicateNode("repeated codeword position")
        if len(available) < need:
            raise TooManyErasures(f"{len(available)} positions survive, need {need}")
        a = submatrix(gen.G, range(gen.G.rows), positions)
        return solve_right(a, [v for _, v in available])[: self.message_length]
