"""Exhaustive ground truth for bounds and characteristics.

Everything here recomputes results from raw definitions by enumeration:
extrema of constraint results over every series of a given shape, overlap
by scanning every candidate gluing word letter by letter, variation by
walking every overlapping pair.  The bounded searches in the main modules
must agree with these; the sharpness report certifies the bound formulas
against them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable, Optional, Sequence

from . import bounds as bounds_mod
from .bounds import BoundError, BoundResult, Side
from .characteristics import CharValue, default_cap, shift
from .series import (
    Aggregator,
    DEFAULT_POLICY,
    DefaultPolicy,
    Domain,
    ExtendedInt,
    Feature,
    MINUS_INF,
    PLUS_INF,
    PatternSpec,
    TimeSeries,
    enumerate_series,
    feature_of,
    maximal_occurrences,
    signature,
    word_height,
)
from .sigregex import ALPHABET, word_key

DEFAULT_BUDGET = 5_000_000

GF_SUPPORTED = (
    (Aggregator.SUM, Feature.ONE, Side.LOWER),
    (Aggregator.SUM, Feature.ONE, Side.UPPER),
    (Aggregator.MAX, Feature.WIDTH, Side.UPPER),
    (Aggregator.SUM, Feature.WIDTH, Side.UPPER),
    (Aggregator.MIN, Feature.WIDTH, Side.LOWER),
)


class BudgetExceededError(Exception):
    pass


def _spend(counter: list[int], amount: int = 1) -> None:
    counter[0] -= amount
    if counter[0] < 0:
        raise BudgetExceededError("enumeration budget exhausted")


def _aggregate(
    spec: PatternSpec,
    f: Feature,
    g: Aggregator,
    t: TimeSeries,
    occs,
    policy: DefaultPolicy,
) -> ExtendedInt:
    if not occs:
        return policy.default(g)
    vals = [feature_of(spec, f, t, o) for o in occs]
    if g is Aggregator.SUM:
        return sum(vals)
    if g is Aggregator.MAX:
        return max(vals)
    return min(vals)


# --------------------------------------------------------------------------
# Extrema over all series

@dataclass
class ExtremaResult:
    """Exact extrema of a constraint result over one series shape.

    ``min_all``/``max_all`` range over every series with the policy
    default for pattern-free ones; ``min_occ``/``max_occ`` restrict to
    series having at least one occurrence and degenerate to +inf/-inf
    when no such series exists.
    """

    n: int
    domain: Domain
    count: int = 0
    min_all: ExtendedInt = PLUS_INF
    max_all: ExtendedInt = MINUS_INF
    min_occ: ExtendedInt = PLUS_INF
    max_occ: ExtendedInt = MINUS_INF
    witness_min: Optional[TimeSeries] = None
    witness_max: Optional[TimeSeries] = None

    def update(self, t: TimeSeries, val: ExtendedInt, has_occ: bool) -> None:
        self.count += 1
        if val < self.min_all:
            self.min_all = val
            self.witness_min = t
        if val > self.max_all:
            self.max_all = val
            self.witness_max = t
        if has_occ:
            self.min_occ = min(self.min_occ, val)
            self.max_occ = max(self.max_occ, val)

    def to_json(self):
        from .series import ext_to_json

        return {
            "n": self.n,
            "domain": str(self.domain),
            "count": self.count,
            "min_all": ext_to_json(self.min_all),
            "max_all": ext_to_json(self.max_all),
            "min_occ": ext_to_json(self.min_occ),
            "max_occ": ext_to_json(self.max_occ),
            "witness_min": (
                None if self.witness_min is None else str(self.witness_min)
            ),
            "witness_max": (
                None if self.witness_max is None else str(self.witness_max)
            ),
        }


def check_budget(n: int, d: Domain, budget: int = DEFAULT_BUDGET) -> int:
    total = (d.span + 1) ** n
    if total > budget:
        raise BudgetExceededError(
            f"{total} series of length {n} over {d} exceed budget {budget}"
        )
    return total


def brute_extrema(
    spec: PatternSpec,
    f: Feature,
    g: Aggregator,
    n: int,
    d: Domain,
    budget: int = DEFAULT_BUDGET,
    policy: DefaultPolicy = DEFAULT_POLICY,
) -> ExtremaResult:
    """Exact result extrema by full enumeration in lexicographic order."""
    check_budget(n, d, budget)
    out = ExtremaResult(n, d)
    for t in enumerate_series(n, d):
        occs = maximal_occurrences(spec, signature(t))
        out.update(t, _aggregate(spec, f, g, t, occs, policy), bool(occs))
    return out


# --------------------------------------------------------------------------
# Overlap and variation from raw definitions

def _anchored_candidates(v: str, w: str, length: int):
    """Words of the given length with prefix v and suffix w.

    Anchors the longer word and enumerates the free letters, rejecting
    candidates that miss the other anchor.
    """
    if len(v) >= len(w):
        for fill in product(ALPHABET, repeat=length - len(v)):
            z = v + "".join(fill)
            if z.endswith(w):
                yield z
    else:
        for fill in product(ALPHABET, repeat=length - len(w)):
            z = "".join(fill) + w
            if z.startswith(v):
                yield z


def _raw_pair_overlap(
    spec: PatternSpec,
    v: str,
    w: str,
    span: int,
    floor: int,
    counter: list[int],
) -> int:
    """Best overlap of one pair by scanning gluing candidates short-first.

    Only lengths that would beat ``floor`` are visited; the first valid
    candidate wins since shorter gluings share more variables.
    """
    lo = max(len(v), len(w))
    hi = len(v) + len(w) - floor
    for length in range(lo, hi + 1):
        for z in _anchored_candidates(v, w, length):
            _spend(counter)
            if spec.aut.accepts(z):
                continue
            if word_height(z) > span:
                continue
            return len(v) + len(w) - length + 1
    return 0


def _raw_max_overlap(
    spec: PatternSpec, d: Domain, cap: int, counter: list[int]
) -> int:
    words = [u for u in spec.aut.words_up_to(cap) if u]
    best = 0
    for v, w in product(words, words):
        if min(len(v), len(w)) + 1 <= best:
            continue
        got = _raw_pair_overlap(spec, v, w, d.span, best, counter)
        if got > best:
            best = got
    return best


def _probe(measure: Callable[[int], int], cap: int) -> CharValue:
    v0 = measure(cap)
    v2 = measure(cap + 2)
    if v0 == v2:
        return CharValue.defined(v0)
    v1 = measure(cap + 1)
    if v0 < v1 < v2:
        return CharValue.unbounded(cap + 2)
    return CharValue.cap_limited(v2, cap + 2)


def brute_overlap(
    spec: PatternSpec,
    d: Domain,
    cap: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
) -> CharValue:
    """Overlap recomputed from the raw definition, cap-stabilized."""
    if cap is None:
        cap = default_cap(spec)
    counter = [budget]
    return _probe(lambda c: _raw_max_overlap(spec, d, c, counter), cap)


def _raw_superpositions(
    spec: PatternSpec, v: str, w: str, span: int, counter: list[int]
) -> list[str]:
    out = []
    lo = max(len(v), len(w))
    for length in range(lo, len(v) + len(w) + 1):
        for z in _anchored_candidates(v, w, length):
            _spend(counter)
            if spec.aut.accepts(z):
                continue
            if word_height(z) > span:
                continue
            out.append(z)
    out.sort(key=word_key)
    return out


class _BruteMixed(Exception):
    pass


def _raw_variation(
    spec: PatternSpec, d: Domain, cap: int, counter: list[int]
) -> int:
    words = [u for u in spec.aut.words_up_to(cap) if u]
    pair_vals = []
    for v, w in product(words, words):
        zs = _raw_superpositions(spec, v, w, d.span, counter)
        if not zs:
            continue
        diffs = []
        for z in zs:
            s1 = shift(spec, z, v, 1)
            s2 = shift(spec, z, w, 1) if v != w else shift(spec, z, v, 2)
            if s1 is None or s2 is None:
                continue
            diffs.append(s1 - s2)
        if diffs:
            pair_vals.append(min(diffs, key=lambda x: (abs(x), x)))
        else:
            pair_vals.append(0)
    if not pair_vals:
        return 0
    if any(x > 0 for x in pair_vals) and any(x < 0 for x in pair_vals):
        raise _BruteMixed
    return min(pair_vals, key=lambda x: (abs(x), x))


def brute_variation(
    spec: PatternSpec,
    d: Domain,
    cap: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
) -> CharValue:
    """Smallest variation over every overlapping pair, cap-stabilized."""
    if cap is None:
        cap = default_cap(spec)
    counter = [budget]
    try:
        return _probe(lambda c: _raw_variation(spec, d, c, counter), cap)
    except _BruteMixed:
        return CharValue.undefined()


# --------------------------------------------------------------------------
# Sharpness certification

@dataclass(frozen=True)
class SweepRow:
    pattern: str
    g: Aggregator
    f: Feature
    side: Side
    n: int
    domain: Domain
    bound: Optional[ExtendedInt] = None
    sharp_claimed: bool = False
    source: Optional[str] = None
    brute_min: Optional[ExtendedInt] = None
    brute_max: Optional[ExtendedInt] = None
    valid: Optional[bool] = None
    attained: Optional[bool] = None
    skip: Optional[str] = None
    counterexample: Optional[TimeSeries] = None

    @property
    def failed(self) -> bool:
        if self.skip is not None:
            return False
        if self.valid is False:
            return True
        return self.sharp_claimed and self.attained is False

    def to_json(self):
        from .series import ext_to_json

        def opt(v):
            return None if v is None else ext_to_json(v)

        return {
            "pattern": self.pattern,
            "g": self.g.value,
            "f": self.f.value,
            "side": self.side.value,
            "n": self.n,
            "domain": str(self.domain),
            "bound": opt(self.bound),
            "sharp_claimed": self.sharp_claimed,
            "source": self.source,
            "brute_min": opt(self.brute_min),
            "brute_max": opt(self.brute_max),
            "valid": self.valid,
            "attained": self.attained,
            "skip": self.skip,
            "counterexample": (
                None if self.counterexample is None
                else str(self.counterexample)
            ),
        }


@dataclass
class SweepReport:
    rows: list[SweepRow] = field(default_factory=list)

    @property
    def failures(self) -> list[SweepRow]:
        return [r for r in self.rows if r.failed]

    @property
    def skips(self) -> list[SweepRow]:
        return [r for r in self.rows if r.skip is not None]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        checked = [r for r in self.rows if r.skip is None]
        return {
            "rows": len(self.rows),
            "checked": len(checked),
            "skipped": len(self.skips),
            "failed": len(self.failures),
            "sharp_confirmed": sum(
                1 for r in checked if r.sharp_claimed and r.attained
            ),
        }

    def to_json(self):
        return {
            "summary": self.summary(),
            "rows": [r.to_json() for r in self.rows],
        }


def _cell_extrema(
    spec: PatternSpec,
    n: int,
    d: Domain,
    gfs: Iterable[tuple[Aggregator, Feature]],
    policy: DefaultPolicy,
) -> dict[tuple[Aggregator, Feature], ExtremaResult]:
    """One enumeration pass serving several aggregator/feature pairs."""
    trackers = {gf: ExtremaResult(n, d) for gf in set(gfs)}
    for t in enumerate_series(n, d):
        occs = maximal_occurrences(spec, signature(t))
        feats: dict[Feature, list[int]] = {}
        for (g, f), tracker in trackers.items():
            if occs:
                vals = feats.get(f)
                if vals is None:
                    vals = [feature_of(spec, f, t, o) for o in occs]
                    feats[f] = vals
                if g is Aggregator.SUM:
                    val: ExtendedInt = sum(vals)
                elif g is Aggregator.MAX:
                    val = max(vals)
                else:
                    val = min(vals)
            else:
                val = policy.default(g)
            tracker.update(t, val, bool(occs))
    return trackers


def sharpness_report(
    specs: Sequence[PatternSpec],
    gf_list: Sequence[tuple[Aggregator, Feature, Side]] = GF_SUPPORTED,
    n_range: Iterable[int] = range(2, 8),
    domains: Sequence[Domain] = (Domain(0, 1), Domain(0, 2), Domain(0, 3)),
    policy: DefaultPolicy = DEFAULT_POLICY,
    budget: int = DEFAULT_BUDGET,
    bound_fn: Optional[Callable[..., BoundResult]] = None,
) -> SweepReport:
    """Certify every requested bound against full enumeration.

    Eight outcomes per combination: a bound may be skipped with the error
    message of the rule that refused, or checked for validity against
    every series and, when flagged sharp, for attainment.  Budget
    overruns abort rather than truncate.
    """
    if bound_fn is None:
        bound_fn = bounds_mod.bound
    report = SweepReport()
    ns = list(n_range)
    # reject oversized requests before touching any cell
    for d in domains:
        for n in ns:
            check_budget(n, d, budget)
    for spec in specs:
        for d in domains:
            for n in ns:
                got: dict = {}
                for g, f, side in gf_list:
                    try:
                        got[(g, f, side)] = bound_fn(g, f, side, spec, n, d)
                    except BoundError as e:
                        report.rows.append(SweepRow(
                            spec.name, g, f, side, n, d,
                            skip=f"{type(e).__name__}: {e}",
                        ))
                if not got:
                    continue
                cells = _cell_extrema(
                    spec, n, d, [(g, f) for g, f, _ in got], policy
                )
                for (g, f, side), br in got.items():
                    ex = cells[(g, f)]
                    if side is Side.UPPER:
                        valid = ex.max_all <= br.value
                        attained = ex.max_all == br.value
                        witness = ex.witness_max
                    else:
                        valid = br.value <= ex.min_all
                        ref = ex.min_occ if f is Feature.WIDTH else ex.min_all
                        attained = ref == br.value
                        witness = ex.witness_min
                    report.rows.append(SweepRow(
                        spec.name, g, f, side, n, d,
                        bound=br.value,
                        sharp_claimed=br.sharp,
                        source=br.source,
                        brute_min=ex.min_all,
                        brute_max=ex.max_all,
                        valid=valid,
                        attained=attained,
                        counterexample=None if valid else witness,
                    ))
    return report
