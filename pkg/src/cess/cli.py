"""Command line interface: ``cess split | reconstruct | bound | audit | bench``.

Set ``CESS_SEED`` to an integer to make key draws (and ce-random matrix
seeds) reproducible.  Only do that for test fixtures.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import random
import sys
import time
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path

from . import plotting
from .audit import DEFAULT_BUDGET, run_audit
from .core import (
    Scheme,
    SchemeParams,
    ShareBundle,
    bandwidth_bound_symbols,
    co_lower_bound,
    default_rng,
    rate_capacity,
    retrieve,
)
from .errors import CessError, HeaderMismatch, InputTooLarge, InvalidParams, NotAuthorized
from .gf import next_prime
from .random_code import SEED_BYTES, CeRandom, block_count, verify_scheme
from .rs import CeRs
from .shamir import CeShamir
from .sharefile import ShareFile, ShareHeader, read_share, scheme_from_header, write_share

BYTE_MODE_MIN_Q = 257


def _min_q(name: str, n: int, r: int, z: int, beta: int) -> int:
    """Smallest admissible modulus, minus one."""
    k = rate_capacity(n, r, z)
    if name == "ce-rs":
        return n * (k + r) // beta
    if name == "ce-random":
        return n * block_count(SchemeParams(n, r, z, next_prime(n + 1))) * (k + r)
    return n


def _build_shamir(params, args, rng):
    return CeShamir(params, args.D)


def _build_rs(params, args, rng):
    return CeRs(params, args.beta)


def _build_random(params, args, rng, attempts: int = 64):
    """Use ``--seed`` as given; otherwise draw seeds until every authorized subset decodes."""
    if args.seed:
        return CeRandom(params, bytes.fromhex(args.seed))
    for _ in range(attempts):
        scheme = CeRandom(params, rng.getrandbits(8 * SEED_BYTES).to_bytes(SEED_BYTES, "little"))
        if verify_scheme(scheme.gens, rng=rng, stop_early=True).passed:
            return scheme
    raise CessError(f"no full-rank generator set in {attempts} draws; use a larger q")


SCHEMES = {
    "ce-shamir": _build_shamir,
    "ce-rs": _build_rs,
    "ce-random": _build_random,
}


def _rng():
    seed = os.environ.get("CESS_SEED")
    return random.Random(int(seed)) if seed is not None else default_rng()


def _parse_d_list(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out += list(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _make_scheme(args, rng) -> Scheme:
    name = args.scheme
    if name not in SCHEMES:
        raise InvalidParams(f"unknown scheme {name!r}")
    q = args.q or next_prime(max(BYTE_MODE_MIN_Q, _min_q(name, args.n, args.r, args.z, args.beta) + 1))
    params = SchemeParams(args.n, args.r, args.z, q)
    return SCHEMES[name](params, args, rng)


def _download_size(scheme: Scheme, d: int) -> int:
    contacted, dd = scheme.plan(range(1, d + 1))
    zero = ShareBundle(1, (0,) * scheme.share_width, scheme.scheme_id, scheme.params, scheme.meta)
    return len(contacted) * len(scheme.preprocess(zero, dd).symbols)


def _bandwidth_table(scheme: Scheme) -> list[str]:
    p = scheme.params
    lines = [f"{'d':>4} {'download':>9} {'bound':>9}  verdict"]
    for d in range(p.n - p.r, p.n + 1):
        got = _download_size(scheme, d)
        bound = bandwidth_bound_symbols(p.k, p.z, d, scheme.unit_width)
        lines.append(f"{d:>4} {got:>9} {str(bound):>9}  {'tight' if got == bound else 'above bound'}")
    return lines


def _read_secret(path: str, q: int) -> list[int]:
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    if q >= BYTE_MODE_MIN_Q:
        return list(data)
    text = data.decode("ascii").replace(",", " ").split()
    symbols = [int(t) for t in text]
    if any(not 0 <= s < q for s in symbols):
        raise InvalidParams(f"symbols must lie in 0..{q - 1}")
    return symbols


def _write_secret(symbols: Sequence[int], q: int, out: str | None) -> None:
    data = bytes(symbols) if q >= BYTE_MODE_MIN_Q else (",".join(map(str, symbols)) + "\n").encode()
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(out).write_bytes(data)


def cmd_split(args) -> int:
    rng = _rng()
    scheme = _make_scheme(args, rng)
    q, L = scheme.q, scheme.message_length
    secret = _read_secret(args.secret, q)
    if not secret:
        raise InvalidParams("secret is empty")
    if args.single_block and len(secret) > L:
        raise InputTooLarge(f"secret has {len(secret)} symbols, one block holds {L}")
    blocks = math.ceil(len(secret) / L)
    padded = secret + [0] * (blocks * L - len(secret))

    payloads: dict[int, list[int]] = {j: [] for j in range(1, scheme.params.n + 1)}
    for b in range(blocks):
        for share in scheme.encode(padded[b * L:(b + 1) * L], rng):
            payloads[share.node_index].extend(share.symbols)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    p = scheme.params
    for j, payload in payloads.items():
        header = ShareHeader(scheme.scheme_id, p.n, p.r, p.z, j, q, len(secret), scheme.meta)
        write_share(out_dir / f"{args.prefix}{j}.cess", ShareFile(header, tuple(payload)))

    print(f"{scheme.scheme_id.label}: n={p.n} r={p.r} z={p.z} k={p.k} q={q}")
    print(f"wrote {p.n} shares of {scheme.share_width} symbols x {blocks} block(s) to {out_dir}")
    print("per-block decoding bandwidth (GF(q) symbols):")
    print("\n".join(_bandwidth_table(scheme)))
    return 0


def load_shares(paths: Sequence[str]) -> tuple[ShareHeader, dict[int, ShareFile]]:
    files = [read_share(pth) for pth in paths]
    if not files:
        raise NotAuthorized("no share files given")
    ident = files[0].header.identity()
    shares: dict[int, ShareFile] = {}
    for f in files:
        if f.header.identity() != ident:
            raise HeaderMismatch(f"share {f.header.node_index} belongs to a different secret or scheme")
        shares[f.header.node_index] = f
    return files[0].header, shares


def reconstruct(paths: Sequence[str], d_hint: int | None = None):
    """Decode a secret from share files; returns ``(symbols, q, totals)``."""
    header, files = load_shares(paths)
    scheme = scheme_from_header(header)
    p = scheme.params
    available = sorted(files)
    if len(available) < p.n - p.r:
        raise NotAuthorized(f"{len(available)} shares given, need at least n - r = {p.n - p.r}")
    if d_hint is not None:
        if d_hint < p.n - p.r or d_hint > len(available):
            raise InvalidParams(f"d must lie in {p.n - p.r}..{len(available)}")
        available = available[:d_hint]

    width, L = scheme.share_width, scheme.message_length
    per_node = {j: files[j].blocks(width) for j in available}
    blocks = len(next(iter(per_node.values())))
    secret: list[int] = []
    downloaded = read = 0
    for b in range(blocks):
        bundles = {j: ShareBundle(j, per_node[j][b], scheme.scheme_id, p, header.meta) for j in available}
        msg, ledger = retrieve(scheme, bundles)
        secret.extend(msg)
        downloaded += ledger.symbols_downloaded
        read += ledger.symbols_read_from_disk
    bound = blocks * bandwidth_bound_symbols(p.k, p.z, len(available), scheme.unit_width)
    totals = {"blocks": blocks, "downloaded": downloaded, "read": read, "bound": bound,
              "d": len(available), "tight": downloaded == bound}
    assert len(secret) == blocks * L
    return secret[:header.length], header.q, totals


def cmd_reconstruct(args) -> int:
    secret, q, t = reconstruct(args.shares, args.d)
    _write_secret(secret, q, args.output)
    verdict = "tight" if t["tight"] else "above bound"
    print(f"ledger: d={t['d']}, {t['downloaded']} symbols downloaded, {t['read']} read from disk, "
          f"bound {t['bound']}, {verdict} ({t['blocks']} block(s))", file=sys.stderr)
    return 0


def _write_csv(path: Path, rows: list[dict]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        if not rows:
            return
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)


def cmd_bound(args) -> int:
    k = rate_capacity(args.n, args.r, args.z)
    ds = _parse_d_list(args.d) if args.d else list(range(args.n - args.r, args.n + 1))
    rows = []
    for d in ds:
        co = co_lower_bound(k, args.z, d)
        rows.append({"d": d, "overhead": str(co), "bandwidth": str(k + co), "overhead_float": float(co)})
    print(f"n={args.n} r={args.r} z={args.z} k={k}  (units: shares)")
    print(f"{'d':>4} {'overhead':>9} {'bandwidth':>10}")
    for row in rows:
        print(f"{row['d']:>4} {row['overhead']:>9} {row['bandwidth']:>10}")
    if args.report:
        out = Path(args.report)
        _write_csv(out / "bound.csv", rows)
        plotting.plot_overhead(ds, [r["overhead_float"] for r in rows], out / "bound.png",
                               f"n={args.n}, r={args.r}, z={args.z}")
    return 0


def cmd_audit(args) -> int:
    rng = random.Random(args.rng_seed)
    scheme = _make_scheme(args, rng)
    if isinstance(scheme, CeRandom):
        verdict = verify_scheme(scheme.gens)
        status = "full rank" if verdict.passed else f"rank deficient at {verdict.failing_subset}"
        print(f"matrix seed {scheme.gens.matrix_seed.hex()}: {verdict.checked} subsets checked, {status}")
    report = run_audit(scheme, secrecy=args.secrecy, budget=args.budget, rng=rng)
    print(report.render())
    if args.report:
        out = Path(args.report)
        _write_csv(out / "audit.csv", report.rows())
        bw = report.bandwidth
        plotting.plot_bandwidth([r.d for r in bw], [r.measured for r in bw], [float(r.bound) for r in bw],
                                out / "audit.png", report.scheme, [r.supported for r in bw])
    return 0 if report.passed else 1


def cmd_bench(args) -> int:
    if args.repetitions < 1:
        raise InvalidParams("repetitions must be at least 1")
    rng = random.Random(args.rng_seed)
    scheme = _make_scheme(args, rng)
    p = scheme.params
    message = [rng.randrange(scheme.q) for _ in range(scheme.message_length)]
    t0 = time.perf_counter()
    for _ in range(args.repetitions):
        shares = scheme.encode(message, rng)
    encode_ms = (time.perf_counter() - t0) * 1e3 / args.repetitions

    rows = []
    for d in range(p.n - p.r, p.n + 1):
        t0 = time.perf_counter()
        for _ in range(args.repetitions):
            got, ledger = retrieve(scheme, shares, range(1, d + 1))
        decode_ms = (time.perf_counter() - t0) * 1e3 / args.repetitions
        if got != message:
            raise CessError(f"bench decode at d={d} returned the wrong message")
        bound = bandwidth_bound_symbols(p.k, p.z, d, scheme.unit_width)
        rows.append({"d": d, "symbols": ledger.symbols_downloaded, "reads": ledger.symbols_read_from_disk,
                     "bound": str(bound), "tight": ledger.symbols_downloaded == bound,
                     "encode_ms": round(encode_ms, 4), "decode_ms": round(decode_ms, 4)})
    print(f"{scheme.scheme_id.label}: n={p.n} r={p.r} z={p.z} k={p.k} q={p.q} reps={args.repetitions}")
    print(f"{'d':>4} {'symbols':>8} {'bound':>8} {'tight':>6} {'encode ms':>10} {'decode ms':>10}")
    for row in rows:
        print(f"{row['d']:>4} {row['symbols']:>8} {row['bound']:>8} {str(row['tight']):>6} "
              f"{row['encode_ms']:>10.3f} {row['decode_ms']:>10.3f}")
    if args.report:
        out = Path(args.report)
        _write_csv(out / "bench.csv", rows)
        ds = [r["d"] for r in rows]
        plotting.plot_bandwidth(ds, [r["symbols"] for r in rows], [float(Fraction(r["bound"])) for r in rows],
                                out / "bench_bandwidth.png", scheme.scheme_id.label)
        plotting.plot_timings(ds, [r["encode_ms"] for r in rows], [r["decode_ms"] for r in rows],
                              out / "bench_time.png", scheme.scheme_id.label)
    return 0


def _scheme_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scheme", required=True, help="ce-shamir, ce-rs or ce-random")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-z", type=int, required=True)
    p.add_argument("-q", type=int, default=None, help="prime field modulus")
    p.add_argument("-D", type=_parse_d_list, default=None, help="decoder sizes for ce-shamir, e.g. 3,4,7")
    p.add_argument("--beta", type=int, default=1, help="ce-rs width divisor of gcd(k, r)")
    p.add_argument("--seed", default=None, help="ce-random matrix seed, 64 hex digits")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cess", description="Communication-efficient secret sharing")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("split", help="split a secret into share files")
    p.add_argument("secret", help="input file ('-' for stdin); a symbol list such as '1,2,3' when q < 257")
    _scheme_args(p)
    p.add_argument("--out-dir", default=".")
    p.add_argument("--prefix", default="share_")
    p.add_argument("--single-block", action="store_true", help="refuse secrets longer than one message block")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("reconstruct", help="recover a secret from share files")
    p.add_argument("shares", nargs="+")
    p.add_argument("-d", type=int, default=None, help="use only this many of the given shares")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("bound", help="print the decoding bandwidth lower bound")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-z", type=int, required=True)
    p.add_argument("-d", default=None, help="decoder sizes, e.g. 3..7 or 3,5")
    p.add_argument("--report", default=None, help="directory for bound.csv and bound.png")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("audit", help="exhaustive secrecy, reliability and bandwidth checks")
    _scheme_args(p)
    p.add_argument("--secrecy", choices=["auto", "all", "span", "skip"], default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--report", default=None, help="directory for audit.csv and audit.png")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("bench", help="time encode/decode and count transferred symbols")
    _scheme_args(p)
    p.add_argument("--repetitions", type=int, default=10)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--report", default=None, help="directory for bench.csv and figures")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CessError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
