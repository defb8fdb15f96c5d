"""Exact enumerators computed two independent ways: a forward trellis
dynamic program over (state, input weight, systematic weight, parity
weight), and plain brute force over every weight-w input.  Both follow
the terminated-path convention of the closed forms: a path counts only
if it ends the block in the zero state, with no tail appended.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, islice
from math import comb

import numpy as np

from .cwef import Cwef, cwef_w2_punctured, path_weights
from .gf2 import is_primitive
from .puncture import (Classification, as_row, classify, pseudo_random_pattern,
                       row_from_string, row_to_string)
from .rsc import RscCode, step

BRUTE_FORCE_LIMIT = 10**7
DP_W_LIMIT = 6
DP_D_LIMIT = 512
# without a parity cap the z axis spans the whole block
DP_UNCAPPED_N_LIMIT = 2048
_BATCH = 100_000


@lru_cache(maxsize=None)
def _transition_tables(code: RscCode) -> tuple[np.ndarray, np.ndarray]:
    n_states = code.n_states
    nxt = np.zeros((n_states, 2), dtype=np.int64)
    par = np.zeros((n_states, 2), dtype=np.int64)
    for s in range(n_states):
        for b in (0, 1):
            nxt[s, b], _, par[s, b] = step(code, s, b)
    return nxt, par


@dataclass(frozen=True)
class DpResult:
    by_weight: dict[int, Cwef]
    truncated: bool
    # prefix-path mass over every state at the final step; with no cap
    # this equals sum_{w <= w_max} C(n, w)
    total_paths: int

    def for_weight(self, w: int) -> Cwef:
        if w not in self.by_weight:
            raise ValueError(f"weight {w} was not enumerated")
        return self.by_weight[w]


def exact_cwef_dp(code: RscCode, p_u, p_z, n: int, w_max: int,
                  d_max: int | None = None, include_w0: bool = False) -> DpResult:
    """Enumerate {(u, z): count} for every input weight up to w_max by a
    forward pass over the punctured trellis.

    With d_max set, paths whose transmitted weight u + z exceeds it are
    dropped and the result is flagged truncated; counts for u + z <= d_max
    stay exact because transmitted weight never decreases along a path.
    """
    p_u, p_z = as_row(p_u), as_row(p_z)
    if n < 1:
        raise ValueError("block length must be positive")
    if not 1 <= w_max <= DP_W_LIMIT:
        raise ValueError(f"w_max must be in [1, {DP_W_LIMIT}]")
    if d_max is None:
        if n > DP_UNCAPPED_N_LIMIT:
            raise ValueError(
                f"uncapped enumeration only supported for n <= {DP_UNCAPPED_N_LIMIT}; "
                "pass d_max")
        d_cap = n + w_max
    else:
        if not 1 <= d_max <= DP_D_LIMIT:
            raise ValueError(f"d_max must be in [1, {DP_D_LIMIT}]")
        d_cap = d_max
    if sum(comb(n, w) for w in range(w_max + 1)) >= 2**62:
        raise ValueError("path counts would overflow 64-bit accumulation")
    return _dp_cached(code, p_u, p_z, n, w_max, d_cap, include_w0)


@lru_cache(maxsize=32)
def _dp_cached(code: RscCode, p_u: tuple, p_z: tuple, n: int, w_max: int,
               d_cap: int, include_w0: bool) -> DpResult:
    nxt, par = _transition_tables(code)
    n_states = code.n_states
    # axes: state, input weight, systematic weight u, transmitted weight d=u+z
    dims = (n_states, w_max + 1, w_max + 1, d_cap + 1)
    cur = np.zeros(dims, dtype=np.int64)
    cur[0, 0, 0, 0] = 1
    new = np.zeros_like(cur)
    truncated = False
    mu, mz = len(p_u), len(p_z)
    for i in range(n):
        pu_i, pz_i = p_u[i % mu], p_z[i % mz]
        new[:] = 0
        for s in range(n_states):
            for b in (0, 1):
                du = b & pu_i
                dd = du + (int(par[s, b]) & pz_i)
                if dd and not truncated and cur[s, :, :, d_cap + 1 - dd:].any():
                    truncated = True
                new[nxt[s, b], b:, du:, dd:] += \
                    cur[s, :w_max + 1 - b, :w_max + 1 - du, :d_cap + 1 - dd]
        cur, new = new, cur
    total_paths = int(cur.sum())
    final = cur[0]
    by_weight: dict[int, Cwef] = {}
    for w in range(0 if include_w0 else 1, w_max + 1):
        us, ds = np.nonzero(final[w])
        terms = {(int(u), int(d - u)): int(final[w, u, d])
                 for u, d in zip(us, ds)}
        by_weight[w] = Cwef(w, n, terms)
    return DpResult(by_weight, truncated, total_paths)


def _batched(iterable, size):
    it = iter(iterable)
    while chunk := tuple(islice(it, size)):
        yield chunk


def brute_force_cwef(code: RscCode, p_u, p_z, n: int, w: int) -> Cwef:
    """Encode every weight-w input of length n and tally the punctured
    weights of those ending in the zero state."""
    p_u, p_z = as_row(p_u), as_row(p_z)
    if w < 0 or n < 1:
        raise ValueError("need w >= 0 and n >= 1")
    if w == 0:
        return Cwef(0, n, {(0, 0): 1})
    if comb(n, w) > BRUTE_FORCE_LIMIT:
        raise ValueError(f"C({n},{w}) exceeds the brute-force limit {BRUTE_FORCE_LIMIT}")
    nxt, par = _transition_tables(code)
    pu_arr = np.array([p_u[i % len(p_u)] for i in range(n)], dtype=np.int64)
    pz_arr = np.array([p_z[i % len(p_z)] for i in range(n)], dtype=np.int64)
    terms: dict[tuple[int, int], int] = {}
    for batch in _batched(combinations(range(n), w), _BATCH):
        pos = np.array(batch, dtype=np.int64)
        rows = pos.shape[0]
        bits = np.zeros((rows, n), dtype=np.int64)
        bits[np.arange(rows)[:, None], pos] = 1
        state = np.zeros(rows, dtype=np.int64)
        z = np.zeros(rows, dtype=np.int64)
        for i in range(n):
            col = bits[:, i]
            z += par[state, col] * pz_arr[i]
            state = nxt[state, col]
        ok = state == 0
        if w == 2:
            # remerge happens exactly at separations that are multiples
            # of the feedback period, never anywhere else
            remerge = (pos[:, 1] - pos[:, 0]) % code.period == 0
            if not np.array_equal(ok, remerge):
                raise AssertionError("weight-2 remerge structure violated")
        u = bits @ pu_arr
        for uu, zz in zip(u[ok].tolist(), z[ok].tolist()):
            terms[(uu, zz)] = terms.get((uu, zz), 0) + 1
    return Cwef(w, n, terms)


def diff_cwefs(a: Cwef, b: Cwef, limit: int = 6) -> str | None:
    """None when equal, else a short per-key account of the mismatch."""
    if a.terms == b.terms:
        return None
    parts = []
    for key in sorted(set(a.terms) | set(b.terms)):
        ca, cb = a.terms.get(key, 0), b.terms.get(key, 0)
        if ca != cb:
            parts.append(f"(u={key[0]},z={key[1]}): {ca} vs {cb}")
    shown = "; ".join(parts[:limit])
    if len(parts) > limit:
        shown += f"; ... {len(parts) - limit} more"
    return shown


@dataclass(frozen=True)
class GridCase:
    feedback: str
    feedforward: str
    p_u: str
    p_z: str
    n: int

    def label(self) -> str:
        return (f"{self.feedback}/{self.feedforward} "
                f"pu={self.p_u} pz={self.p_z} n={self.n}")


@dataclass(frozen=True)
class CaseResult:
    case: GridCase
    ok: bool
    brute_checked: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    results: tuple[CaseResult, ...]

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def passed(self) -> int:
        return sum(r.ok for r in self.results)

    def summary(self) -> str:
        lines = []
        for r in self.results:
            coverage = "" if r.brute_checked else " [dp-only]"
            if r.ok:
                lines.append(f"PASS {r.case.label()}{coverage}")
            else:
                lines.append(f"FAIL {r.case.label()}{coverage} :: {r.detail}")
        lines.append(f"# result = {'PASS' if self.all_ok else 'FAIL'} "
                     f"({self.passed}/{len(self.results)})")
        return "\n".join(lines) + "\n"


GRID_CODES = (("5", "7"), ("7", "5"), ("15", "17"), ("17", "15"), ("23", "35"))
_GRID_PATTERN_TARGET = 29


def _grid_patterns(code: RscCode) -> list[tuple[str, str]]:
    pats: list[tuple[str, str]] = [("1", "1")]
    if code.nu >= 2 and is_primitive(code.feedback):
        for variant in ("A", "B"):
            pset = pseudo_random_pattern(code, variant)
            pats.append((row_to_string(pset.sys), row_to_string(pset.par1)))
            pats.append(("0" * len(pset.par2), row_to_string(pset.par2)))
    else:
        # reuse the published length-7 rows as plain fixed patterns
        pats += [("1000101", "0111010"), ("1111101", "0111010"),
                 ("0" * 7, "0111010")]
    pats += [("0010", "1101"), ("0000", "1111"), ("11", "10"), ("00", "01")]
    seen = set(pats)
    rng = random.Random(0x5EED ^ (code.feedback.bits << 8) ^ code.feedforward.bits)
    while len(pats) < _GRID_PATTERN_TARGET:
        period = rng.randint(1, 8)
        pu = tuple(rng.randint(0, 1) for _ in range(period))
        pz = tuple(rng.randint(0, 1) for _ in range(period))
        pair = (row_to_string(pu), row_to_string(pz))
        if pair in seen:
            continue
        if classify(code, pu, pz) is Classification.CATASTROPHIC:
            continue
        seen.add(pair)
        pats.append(pair)
    return pats


def default_verification_grid() -> tuple[GridCase, ...]:
    """Five codes x >= 25 patterns x five block lengths up to n = 200."""
    cases = []
    for gr, gf in GRID_CODES:
        code = RscCode.from_octals(gr, gf)
        sizes = sorted({code.period + 1, 2 * code.period, 50, 113, 200})
        for pu, pz in _grid_patterns(code):
            for n in sizes:
                cases.append(GridCase(gr, gf, pu, pz, n))
    return tuple(cases)


def _attribute_mismatch(code, p_u, p_z, n, bad_keys, limit=4):
    found = []
    for k in range(1, (n - 1) // code.period + 1):
        for m in range(1, len(p_z) * len(p_u) + 1):
            if path_weights(code, p_u, p_z, k, m) in bad_keys:
                found.append(f"(k={k},m={m})")
                if len(found) >= limit:
                    return " from " + ",".join(found)
    return " from " + ",".join(found) if found else ""


def run_case(case: GridCase, brute_limit: int = BRUTE_FORCE_LIMIT) -> CaseResult:
    code = RscCode.from_octals(case.feedback, case.feedforward)
    p_u = row_from_string(case.p_u)
    p_z = row_from_string(case.p_z)
    closed = cwef_w2_punctured(code, p_u, p_z, case.n)
    trellis = exact_cwef_dp(code, p_u, p_z, case.n, w_max=2).for_weight(2)
    problems = []
    mismatch = diff_cwefs(closed, trellis)
    if mismatch:
        bad = {k for k in set(closed.terms) | set(trellis.terms)
               if closed.terms.get(k, 0) != trellis.terms.get(k, 0)}
        mismatch += _attribute_mismatch(code, p_u, p_z, case.n, bad)
        problems.append(f"closed vs trellis: {mismatch}")
    brute_checked = comb(case.n, 2) <= brute_limit
    if brute_checked:
        brute = brute_force_cwef(code, p_u, p_z, case.n, 2)
        mismatch = diff_cwefs(closed, brute)
        if mismatch:
            problems.append(f"closed vs brute force: {mismatch}")
    return CaseResult(case, not problems, brute_checked, "; ".join(problems))


def run_verification(cases=None, jobs: int = 1,
                     brute_limit: int = BRUTE_FORCE_LIMIT) -> VerificationReport:
    if cases is None:
        cases = default_verification_grid()
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = tuple(pool.map(run_case, cases, chunksize=16))
    else:
        results = tuple(run_case(c, brute_limit) for c in cases)
    return VerificationReport(results)
