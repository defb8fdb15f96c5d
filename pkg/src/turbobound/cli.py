"""Command-line front end.

Subcommands: bound (CSV union-bound curves), patterns (pattern report),
search (exhaustive period-M pattern ranking), verify (oracle
cross-check grid).  Every run is deterministic; report headers carry
enough '#' metadata to reproduce the run byte for byte.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations
from math import comb

from . import __version__
from .cwef import cwef_w2_punctured, min_weights
from .oracle import run_verification
from .pccc import (DEFAULT_D_MAX, DEFAULT_W_MAX, BoundCurve, BoundPoint,
                   PcccConfig, free_effective_distance, p2_approximation,
                   p2_slice, truncated_union_bound, union_bound_term)
from .puncture import (PcccPunctureSet, classify, code_rate, probe_length,
                       pseudo_random_pattern, punctured_core_weights,
                       row_from_string, row_to_string)
from .rsc import RscCode

MAX_BLOCK = 10**6
SEARCH_CANDIDATE_LIMIT = 1_000_000
_PROB = "{:.11e}"  # 12 significant digits, fixed width

# metadata keys that map straight back onto command-line flags
_METADATA_FLAGS = ("gr1", "gf1", "gr2", "gf2", "sys", "par1", "par2",
                   "n", "snr", "wmax", "dmax", "rate", "period", "top")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage problems; this tool reserves 2 for
    # domain errors, so remap to 1
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_snr(text: str) -> tuple[float, ...]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return (float(parts[0]),)
        if len(parts) != 3:
            raise ValueError
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise ValueError(
            f"--snr wants START:STOP:STEP or a single value, got {text!r}") from None
    if step <= 0:
        raise ValueError("--snr step must be positive")
    if stop < start:
        raise ValueError("--snr stop must not precede start")
    count = int((stop - start) / step + 1e-9) + 1
    return tuple(start + i * step for i in range(count))


def _snr_text(grid: tuple[float, ...]) -> str:
    if len(grid) == 1:
        return repr(grid[0])
    return f"{grid[0]!r}:{grid[-1]!r}:{grid[1] - grid[0]!r}"


def _parse_rate(text: str) -> Fraction:
    try:
        num, _, den = text.partition("/")
        rate = Fraction(int(num), int(den)) if den else Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"--rate wants P/Q, got {text!r}") from None
    if not 0 < rate < 1:
        raise ValueError(f"--rate must lie in (0, 1), got {rate}")
    return rate


def _codes(args) -> tuple[RscCode, RscCode]:
    code1 = RscCode.from_octals(args.gr1, args.gf1)
    code2 = RscCode.from_octals(args.gr2 or args.gr1, args.gf2 or args.gf1)
    return code1, code2


def _resolve_rows(args, code1: RscCode) -> PcccPunctureSet:
    explicit = (args.sys, args.par1, args.par2)
    if args.pseudo:
        if any(r is not None for r in explicit):
            raise ValueError("give either --pseudo or explicit rows, not both")
        if args.pseudo == "A" and args.keep_zero is not None:
            raise ValueError("--keep-zero only applies to --pseudo B")
        return pseudo_random_pattern(code1, args.pseudo, args.keep_zero)
    if args.keep_zero is not None:
        raise ValueError("--keep-zero only applies to --pseudo B")
    if all(r is None for r in explicit):
        # no puncturing at all: the rate-1/3 base code
        return PcccPunctureSet((1,), (1,), (1,))
    if any(r is None for r in explicit):
        raise ValueError("explicit patterns need all three of --sys --par1 --par2")
    return PcccPunctureSet(row_from_string(args.sys),
                           row_from_string(args.par1),
                           row_from_string(args.par2))


def _check_block(n: int, code1: RscCode, code2: RscCode) -> None:
    floor = max(code1.period, code2.period) + 1
    if not floor <= n <= MAX_BLOCK:
        raise ValueError(f"--n must lie in [{floor}, {MAX_BLOCK}]")


def _metadata(subcommand: str, entries: dict) -> list[str]:
    lines = [f"# turbobound {__version__}", f"# subcommand = {subcommand}"]
    lines.extend(f"# {key} = {value}" for key, value in entries.items())
    return lines


def argv_from_metadata(text: str) -> list[str]:
    """Rebuild an equivalent command line from a report header."""
    sub = None
    flags: list[str] = []
    for line in text.splitlines():
        if not line.startswith("#"):
            break
        body = line[1:].strip()
        if "=" not in body:
            continue
        key, _, value = (part.strip() for part in body.partition("="))
        if key == "subcommand":
            sub = value
        elif key in _METADATA_FLAGS:
            flags += [f"--{key}", value]
    if sub is None:
        raise ValueError("no subcommand recorded in the metadata header")
    return [sub] + flags


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".tb-")
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def cmd_bound(args) -> int:
    code1, code2 = _codes(args)
    pset = _resolve_rows(args, code1)
    _check_block(args.n, code1, code2)
    if not 2 <= args.wmax <= 6:
        raise ValueError("--wmax must lie in [2, 6]")
    if not 1 <= args.dmax <= 512:
        raise ValueError("--dmax must lie in [1, 512]")
    grid = _parse_snr(args.snr)
    config = PcccConfig(code1, code2, pset, args.n)
    dfree = free_effective_distance(config)
    sl = p2_slice(config)

    def term(db: float) -> float:
        return union_bound_term(sl, config.n, config.rate, db)

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            raw = list(pool.map(term, grid))
    else:
        raw = [term(db) for db in grid]
    p2_points = tuple(BoundPoint(db, min(v, 1.0), v > 1.0, v)
                      for db, v in zip(grid, raw))
    p2_curve = BoundCurve(p2_points, "p2")

    entries = {
        "gr1": code1.feedback.to_octal(), "gf1": code1.feedforward.to_octal(),
        "gr2": code2.feedback.to_octal(), "gf2": code2.feedforward.to_octal(),
        "sys": row_to_string(pset.sys), "par1": row_to_string(pset.par1),
        "par2": row_to_string(pset.par2), "n": args.n,
        "snr": _snr_text(grid), "wmax": args.wmax, "dmax": args.dmax,
        "code_rate": config.rate, "d_free_eff": dfree,
    }
    rows = []
    if args.wmax > 2:
        tb = truncated_union_bound(config, args.wmax, args.dmax, grid)
        entries["terms_dropped"] = int(tb.truncated)
        header = "ebn0_db,p2,truncated_bound,ratio,p2_clamped,bound_clamped"
        for p2p, tbp in zip(p2_curve.points, tb.curve.points):
            # ratio of unclamped sums; 1 when the bound underflows to 0
            ratio = 1.0 if tbp.raw == 0.0 else p2p.raw / tbp.raw
            rows.append(",".join((
                f"{p2p.ebn0_db:g}", _PROB.format(p2p.value),
                _PROB.format(tbp.value), _PROB.format(ratio),
                str(int(p2p.clamped)), str(int(tbp.clamped)))))
    else:
        header = "ebn0_db,p2,p2_clamped"
        for p2p in p2_curve.points:
            rows.append(",".join((
                f"{p2p.ebn0_db:g}", _PROB.format(p2p.value),
                str(int(p2p.clamped)))))
    text = "\n".join(_metadata("bound", entries) + [header] + rows) + "\n"
    _write_text(args.out, text)
    return 0


def cmd_patterns(args) -> int:
    code1, code2 = _codes(args)
    pset = _resolve_rows(args, code1)
    c1 = pset.constituent1()
    c2 = pset.constituent2()
    n1 = probe_length(code1, c1.period)
    n2 = probe_length(code2, c2.period)
    a1 = cwef_w2_punctured(code1, c1.p_u, c1.p_z, n1)
    a2 = cwef_w2_punctured(code2, c2.p_u, c2.p_z, n2)
    d1, z1 = min_weights(a1)
    _, z2 = min_weights(a2)
    dfree = 0 if d1 == 0 or z2 == 0 else d1 + z2
    entries = {
        "gr1": code1.feedback.to_octal(), "gf1": code1.feedforward.to_octal(),
        "gr2": code2.feedback.to_octal(), "gf2": code2.feedforward.to_octal(),
        "sys": row_to_string(pset.sys), "par1": row_to_string(pset.par1),
        "par2": row_to_string(pset.par2),
        "n_probe": max(n1, n2),
    }
    try:
        rate = str(code_rate(pset))
    except ValueError:
        # every output punctured; still report the classification
        rate = "undefined"
    body = [
        f"sys  = [{row_to_string(pset.sys)}]",
        f"par1 = [{row_to_string(pset.par1)}]",
        f"par2 = [{row_to_string(pset.par2)}]",
        f"period = {pset.period}",
        f"rate = {rate}",
        f"constituent 1 ({code1.label()}): {classify(code1, c1.p_u, c1.p_z)}",
        f"  core_weights = {punctured_core_weights(code1, c1.p_z)}",
        f"  d_min = {d1}, z_min = {z1}",
        f"constituent 2 ({code2.label()}): {classify(code2, c2.p_u, c2.p_z)}",
        f"  core_weights = {punctured_core_weights(code2, c2.p_z)}",
        f"  z_min = {z2}",
        f"d_free_eff = {dfree}",
    ]
    text = "\n".join(_metadata("patterns", entries) + body) + "\n"
    _write_text(args.out, text)
    return 0


def _search_metrics(payload):
    """Cheap screening pass: effective free distance or -1 if catastrophic."""
    gr1, gf1, gr2, gf2, chunk, n1, n2 = payload
    code1 = RscCode.from_octals(gr1, gf1)
    code2 = RscCode.from_octals(gr2, gf2)
    out = []
    for sys_row, par1_row, par2_row in chunk:
        a1 = cwef_w2_punctured(code1, sys_row, par1_row, n1)
        d1 = min(u + z for u, z in a1.terms)
        a2 = cwef_w2_punctured(code2, (0,) * len(par2_row), par2_row, n2)
        z2 = min(z for _, z in a2.terms)
        out.append(-1 if d1 == 0 or z2 == 0 else d1 + z2)
    return out


def _search_p2(payload):
    gr1, gf1, gr2, gf2, chunk, n, db = payload
    code1 = RscCode.from_octals(gr1, gf1)
    code2 = RscCode.from_octals(gr2, gf2)
    out = []
    for sys_row, par1_row, par2_row in chunk:
        config = PcccConfig(code1, code2,
                            PcccPunctureSet(sys_row, par1_row, par2_row), n)
        out.append(p2_approximation(config, (db,)).points[0].raw)
    return out


def _chunked(seq, size):
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def _pool_map(fn, payloads, jobs):
    if jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, payloads))
    return [fn(p) for p in payloads]


def cmd_search(args) -> int:
    code1, code2 = _codes(args)
    rate = _parse_rate(args.rate)
    m = args.period
    if not 1 <= m <= 12:
        raise ValueError("--period must lie in [1, 12]")
    _check_block(args.n, code1, code2)
    grid = _parse_snr(args.snr)
    if len(grid) != 1:
        raise ValueError("search ranks at a single --snr value")
    if args.top < 1:
        raise ValueError("--top must be positive")
    kept, rem = divmod(m * rate.denominator, rate.numerator)
    if rem or not m <= kept <= 3 * m:
        print(f"no pattern of period {m} meets rate {rate}", file=sys.stderr)
        return 2
    count = comb(3 * m, kept)
    if count > SEARCH_CANDIDATE_LIMIT:
        raise ValueError(
            f"search space C({3 * m},{kept}) = {count} exceeds "
            f"{SEARCH_CANDIDATE_LIMIT}; reduce --period")

    candidates = []
    for pos in combinations(range(3 * m), kept):
        bits = [0] * (3 * m)
        for p in pos:
            bits[p] = 1
        candidates.append((tuple(bits[:m]), tuple(bits[m:2 * m]),
                           tuple(bits[2 * m:])))

    octals = (code1.feedback.to_octal(), code1.feedforward.to_octal(),
              code2.feedback.to_octal(), code2.feedforward.to_octal())
    n1 = probe_length(code1, m)
    n2 = probe_length(code2, m)
    payloads = [octals + (chunk, n1, n2) for chunk in _chunked(candidates, 2048)]
    dfree = [d for block in _pool_map(_search_metrics, payloads, args.jobs)
             for d in block]
    survivors = [(d, rows) for d, rows in zip(dfree, candidates) if d > 0]
    if not survivors:
        print(f"no non-catastrophic pattern of period {m} at rate {rate}",
              file=sys.stderr)
        return 2

    # P(2) is only needed for distance classes that can reach the top-K cut
    survivors.sort(key=lambda item: -item[0])
    threshold = survivors[min(args.top, len(survivors)) - 1][0]
    contenders = [rows for d, rows in survivors if d >= threshold]
    payloads = [octals + (chunk, args.n, grid[0])
                for chunk in _chunked(contenders, 256)]
    p2_values = [v for block in _pool_map(_search_p2, payloads, args.jobs)
                 for v in block]
    dist_of = {rows: d for d, rows in survivors}
    ranked = sorted(
        ((dist_of[rows], p2, rows) for rows, p2 in zip(contenders, p2_values)),
        key=lambda item: (-item[0], item[1],
                          tuple(row_to_string(r) for r in item[2])))

    entries = {
        "gr1": octals[0], "gf1": octals[1], "gr2": octals[2], "gf2": octals[3],
        "rate": rate, "period": m, "n": args.n, "snr": _snr_text(grid),
        "top": args.top, "candidates": count, "feasible": len(survivors),
    }
    header = "rank,sys,par1,par2,d_free_eff,p2"
    rows_out = [
        ",".join((str(i + 1), row_to_string(sys_row), row_to_string(par1_row),
                  row_to_string(par2_row), str(d), _PROB.format(p2)))
        for i, (d, p2, (sys_row, par1_row, par2_row))
        in enumerate(ranked[:args.top])
    ]
    text = "\n".join(_metadata("search", entries) + [header] + rows_out) + "\n"
    _write_text(args.out, text)
    return 0


def cmd_verify(args) -> int:
    report = run_verification(jobs=args.jobs)
    text = report.summary()
    _write_text(args.out, text)
    if args.out is not None:
        sys.stdout.write(text.splitlines()[-1] + "\n")
    return 0 if report.all_ok else 3


def _add_code_flags(p) -> None:
    p.add_argument("--gr1", required=True, metavar="OCT",
                   help="encoder 1 feedback polynomial, octal, lsb first")
    p.add_argument("--gf1", required=True, metavar="OCT",
                   help="encoder 1 feedforward polynomial, octal")
    p.add_argument("--gr2", metavar="OCT",
                   help="encoder 2 feedback (default: same as encoder 1)")
    p.add_argument("--gf2", metavar="OCT",
                   help="encoder 2 feedforward (default: same as encoder 1)")


def _add_pattern_flags(p) -> None:
    p.add_argument("--sys", metavar="BITS", help="systematic keep/drop row")
    p.add_argument("--par1", metavar="BITS", help="first parity keep/drop row")
    p.add_argument("--par2", metavar="BITS", help="second parity keep/drop row")
    p.add_argument("--pseudo", choices=("A", "B"),
                   help="derive a rate-1/2 pattern from the feedback m-sequence "
                        "(needs a primitive feedback polynomial)")
    p.add_argument("--keep-zero", type=int, metavar="COL",
                   help="variant B: 1-based column of the single kept "
                        "systematic zero (default: the last zero column)")


def _add_out_flag(p) -> None:
    p.add_argument("--out", metavar="PATH",
                   help="write the report here (default: stdout); the file is "
                        "replaced atomically")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="turbobound",
        description="Union-bound analysis of punctured parallel turbo codes.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser(
        "bound", help="dominant-term and truncated union-bound curves as CSV",
        description="Emit CSV bound curves. Columns: ebn0_db, p2 and, when "
                    "--wmax exceeds 2, the truncated union bound plus the "
                    "ratio p2/bound taken before clamping to 1.")
    _add_code_flags(p)
    _add_pattern_flags(p)
    p.add_argument("--n", type=int, required=True, help="interleaver size")
    p.add_argument("--snr", default="0:8:0.5", metavar="GRID",
                   help="Eb/N0 grid in dB, START:STOP:STEP or one value "
                        "(default %(default)s)")
    p.add_argument("--wmax", type=int, default=DEFAULT_W_MAX,
                   help="largest input weight in the truncated bound "
                        "(default %(default)s)")
    p.add_argument("--dmax", type=int, default=DEFAULT_D_MAX,
                   help="largest retained distance (default %(default)s)")
    p.add_argument("--jobs", type=int, default=1, help="worker pool size")
    _add_out_flag(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser(
        "patterns", help="report rows, rate, classification and distances",
        description="Resolve a puncturing pattern and report its rows, rate, "
                    "classification, core parity weights and minimum "
                    "distances.")
    _add_code_flags(p)
    _add_pattern_flags(p)
    _add_out_flag(p)
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser(
        "search", help="exhaustively rank period-M patterns at a target rate",
        description="Enumerate every (sys, par1, par2) row triple of the "
                    "given period meeting the target rate exactly, discard "
                    "catastrophic ones, and rank the rest: effective free "
                    "distance descending, then P(2) at --snr ascending, then "
                    "lexicographic row order.")
    _add_code_flags(p)
    p.add_argument("--rate", required=True, metavar="P/Q", help="target code rate")
    p.add_argument("--period", type=int, required=True, metavar="M",
                   help="puncturing period")
    p.add_argument("--n", type=int, default=1000,
                   help="interleaver size for the P(2) tie-break "
                        "(default %(default)s)")
    p.add_argument("--snr", default="6", metavar="DB",
                   help="single Eb/N0 in dB for the tie-break (default %(default)s)")
    p.add_argument("--top", type=int, default=20,
                   help="how many patterns to emit (default %(default)s)")
    p.add_argument("--jobs", type=int, default=1, help="worker pool size")
    _add_out_flag(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser(
        "verify", help="cross-check closed forms against both oracles",
        description="Run the fixed verification grid: closed-form weight-2 "
                    "enumerators against the trellis dynamic program and "
                    "brute force. Exits 3 on any mismatch.")
    p.add_argument("--jobs", type=int, default=1, help="worker pool size")
    _add_out_flag(p)
    p.set_defaults(func=cmd_verify)
    return parser


def entrypoint(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"turbobound: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(entrypoint())
