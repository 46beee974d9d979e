"""Finite-horizon dynamics evidence over shift-space models.

Everything here is sampled and says so: a space is presented as finitely
many generator points plus declared limit points, membership sets are
scanned up to an orbit depth, and every report carries the sampling
parameters that produced it. Positive verdicts are exact statements about
the sample; negative verdicts come with concrete witnesses that can be
replayed by direct symbol queries.

Time convention: hitting, sensitivity, and splitting times range over
t >= 1. First-entry searches in the construction module count from 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from . import construction as con
from .points import (
    BlockFamilyResolver,
    Cylinder,
    SpikeTrainResolver,
    SymbolicPoint,
    constant_point,
    ev_periodic_point,
)
from .words import (
    RleWord,
    make_word,
    occurrence_intervals,
    power,
    word_from_symbols,
)

DEFAULT_ORBIT_DEPTH = 10**4
DEFAULT_HORIZON = 10**4
DEFAULT_SAMPLE_CAP = 64
MAX_REPORT_HORIZON = 2**31


class HorizonTooLarge(Exception):
    """Report horizons are capped so times always fit plain JSON ints."""


@dataclass(frozen=True)
class SpaceModel:
    """A shift space presented by finitely many addressable points."""

    name: str
    alphabet_size: int
    generators: tuple[tuple[str, SymbolicPoint], ...]
    limit_points: tuple[tuple[str, SymbolicPoint], ...]
    orbit_depth: int = DEFAULT_ORBIT_DEPTH
    metadata: dict = field(default_factory=dict)

    def named_points(self) -> dict[str, SymbolicPoint]:
        points = dict(self.generators)
        points.update(dict(self.limit_points))
        return points

    def resolve(self, name: str) -> SymbolicPoint:
        points = self.named_points()
        if name in points:
            return points[name]
        if self.name == "s7" and name.startswith("closing:"):
            return con.closing_point(int(name.split(":", 1)[1]))
        raise KeyError(f"model {self.name} has no point named {name!r}")


def recursive_word_model(orbit_depth: int = DEFAULT_ORBIT_DEPTH) -> SpaceModel:
    """The closure of the two-generator system built in construction.py."""
    one_zero = ev_periodic_point(
        make_word([(1, 1)]), make_word([(0, 1)])
    )
    return SpaceModel(
        name="s7",
        alphabet_size=2,
        generators=(("x", con.point_x()), ("y", con.point_y())),
        limit_points=(
            ("zero", constant_point(0)),
            ("one", constant_point(1)),
            ("one_zero", one_zero),
        ),
        orbit_depth=orbit_depth,
    )


def example_family_model(
    m: int = 2,
    count: int = 2,
    orbit_depth: int = DEFAULT_ORBIT_DEPTH,
    chooser: Callable[[int, int], Sequence[int]] | None = None,
) -> SpaceModel:
    """Members of the block family over symbols 1..m with shared zero blocks.

    Member j's words default to the deterministic rule
    word_k[i] = 1 + ((i + j + k) mod m); pass `chooser(j, k)` to override.
    The k-th zero block occupies positions [k*k, k*k + k) for every member,
    which is what makes zero-block membership member independent.
    """
    if m < 1 or count < 1:
        raise ValueError("need m >= 1 and count >= 1")
    gens = []
    for j in range(count):
        member_chooser = None
        if chooser is not None:
            bound = chooser

            def member_chooser(k: int, _j: int = j) -> tuple[int, ...]:
                return tuple(bound(_j, k))

        resolver = BlockFamilyResolver(m + 1, salt=j, chooser=member_chooser)
        gens.append((f"member:{j}", SymbolicPoint(resolver)))
    return SpaceModel(
        name="ex2",
        alphabet_size=m + 1,
        generators=tuple(gens),
        limit_points=(("zero", constant_point(0, m + 1)),),
        orbit_depth=orbit_depth,
        metadata={"m": m, "count": count},
    )


def zero_block_schedule(limit: int) -> list[tuple[int, int]]:
    """Intervals [k*k, k*k + k - 1] guaranteed all-zero for every family
    member, for starts up to the limit."""
    out = []
    k = 1
    while k * k <= limit:
        out.append((k * k, k * k + k - 1))
        k += 1
    return out


def spike_train_model(
    tail_count: int = 4, orbit_depth: int = DEFAULT_ORBIT_DEPTH
) -> SpaceModel:
    """The spike-train point together with its truncated companions.

    Companion z:n agrees with the spike train through its n-th block and is
    all zeros afterwards. Declared limit points are 0^inf and the single
    spikes 0^k 1 0^inf.
    """
    x = SymbolicPoint(SpikeTrainResolver())
    gens: list[tuple[str, SymbolicPoint]] = [("x", x)]
    for n in range(1, tail_count + 1):
        prefix = x.prefix(SpikeTrainResolver.block_start(n + 1))
        gens.append((f"z:{n}", ev_periodic_point(prefix, make_word([(0, 1)]))))
    limits: list[tuple[str, SymbolicPoint]] = [("zero", constant_point(0))]
    for k in range(tail_count + 1):
        runs = [(1, 1)] if k == 0 else [(0, k), (1, 1)]
        limits.append(
            (f"spike:{k}", ev_periodic_point(make_word(runs), make_word([(0, 1)])))
        )
    return SpaceModel(
        name="ex3",
        alphabet_size=2,
        generators=tuple(gens),
        limit_points=tuple(limits),
        orbit_depth=orbit_depth,
        metadata={"tail_count": tail_count},
    )


MODEL_BUILDERS: dict[str, Callable[..., SpaceModel]] = {
    "s7": recursive_word_model,
    "ex2": example_family_model,
    "ex3": spike_train_model,
}


# ---------------------------------------------------------------------------
# Bitmask scans
# ---------------------------------------------------------------------------


def _occurrence_mask(point: SymbolicPoint, word: RleWord, max_start: int) -> int:
    mask = 0
    for lo, hi in occurrence_intervals(point.run_stream(), word, max_start):
        mask |= ((1 << (hi - lo + 1)) - 1) << lo
    return mask


def _difference_mask(p: SymbolicPoint, q: SymbolicPoint, bound: int) -> int:
    """Bit t set (t <= bound) when p and q disagree at position t."""
    mask = 0
    pos = 0
    while pos <= bound:
        s1, _a1, e1 = p._run_at(pos)
        s2, _a2, e2 = q._run_at(pos)
        stop1 = bound if e1 is None else min(e1, bound)
        stop2 = bound if e2 is None else min(e2, bound)
        stop = min(stop1, stop2)
        if s1 != s2:
            mask |= ((1 << (stop - pos + 1)) - 1) << pos
        pos = stop + 1
    return mask


def _mask_positions(mask: int, lo: int, hi: int) -> list[int]:
    window = (mask >> lo) & ((1 << (hi - lo + 1)) - 1)
    bits = bin(window)[2:][::-1]
    return [lo + i for i, ch in enumerate(bits) if ch == "1"]


def _clip(mask: int, lo: int, hi: int) -> int:
    return mask & (((1 << (hi - lo + 1)) - 1) << lo)


# ---------------------------------------------------------------------------
# Sample pools
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SamplePool:
    """Shifted generator points inside a cylinder, plus member limit points.

    origins records, for each entry, which generator it is a shift of (index
    plus offset), or None for limit points; mask scans use this to walk each
    generator once instead of once per entry.
    """

    cyl: Cylinder
    entries: tuple[tuple[str, SymbolicPoint], ...]
    origins: tuple[tuple[int, int] | None, ...]
    generators: tuple[SymbolicPoint, ...]
    orbit_depth: int
    cap: int
    truncated: bool

    def params(self) -> dict:
        return {
            "orbit_depth": self.orbit_depth,
            "sample_cap": self.cap,
            "truncated": self.truncated,
            "size": len(self.entries),
        }


def sample_pool(
    model: SpaceModel,
    cyl: Cylinder,
    orbit_depth: int | None = None,
    cap: int = DEFAULT_SAMPLE_CAP,
) -> SamplePool:
    """Deterministic sample of the cylinder: earliest orbit entries per
    generator (up to cap positions each) plus any limit points inside."""
    depth = model.orbit_depth if orbit_depth is None else orbit_depth
    entries: list[tuple[str, SymbolicPoint]] = []
    origins: list[tuple[int, int] | None] = []
    truncated = False
    for g, (name, gen) in enumerate(model.generators):
        taken = 0
        over = False
        # walk one position past the cap so exact-fit pools are not
        # mislabeled as truncated and overfull ones are
        for lo, hi in occurrence_intervals(gen.run_stream(), cyl.word, depth):
            for j in range(lo, hi + 1):
                if taken >= cap:
                    over = True
                    break
                entries.append((f"{name}+{j}" if j else name, gen.shift(j)))
                origins.append((g, j))
                taken += 1
            if over:
                break
        truncated = truncated or over
    for name, pt in model.limit_points:
        if pt.in_cylinder(cyl):
            entries.append((name, pt))
            origins.append(None)
    return SamplePool(
        cyl,
        tuple(entries),
        tuple(origins),
        tuple(pt for _name, pt in model.generators),
        depth,
        cap,
        truncated,
    )


def _pool_masks(pool: SamplePool, word: RleWord, bound: int) -> list[int]:
    """Occurrence-start masks (starts <= bound) for every pool entry.

    An occurrence at time t in shift(g, off) is one at t + off in g, so all
    entries originating from one generator share a single deeper scan.
    """
    deepest: dict[int, int] = {}
    for origin in pool.origins:
        if origin is not None:
            g, off = origin
            deepest[g] = max(deepest.get(g, 0), off)
    base = {
        g: _occurrence_mask(pool.generators[g], word, bound + off)
        for g, off in deepest.items()
    }
    keep = (1 << (bound + 1)) - 1
    masks = []
    for origin, (_name, pt) in zip(pool.origins, pool.entries):
        if origin is None:
            masks.append(_occurrence_mask(pt, word, bound) & keep)
        else:
            g, off = origin
            masks.append((base[g] >> off) & keep)
    return masks


# ---------------------------------------------------------------------------
# Hitting / sensitivity / splitting reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HittingReport:
    kind: str
    times: tuple[int, ...]
    horizon: int
    max_gap: int
    longest_run: int
    complement_count: int
    sampled: dict

    def to_obj(self) -> dict:
        return {
            "kind": self.kind,
            "times": list(self.times),
            "horizon": self.horizon,
            "max_gap": self.max_gap,
            "longest_run": self.longest_run,
            "complement_count": self.complement_count,
            "sampled": self.sampled,
        }


def gap_stats(times: Sequence[int], horizon: int) -> dict:
    """Gap statistics over [1, horizon]: the largest gap between consecutive
    times (bounded by the window edges), the longest streak of consecutive
    times, and the size of the complement."""
    times = sorted(times)
    if not times:
        return {"max_gap": horizon, "longest_run": 0, "complement_count": horizon}
    gaps = [times[0] - 0]
    gaps.extend(b - a for a, b in zip(times, times[1:]))
    gaps.append(horizon - times[-1])
    longest = best = 1
    for a, b in zip(times, times[1:]):
        best = best + 1 if b == a + 1 else 1
        longest = max(longest, best)
    return {
        "max_gap": max(gaps),
        "longest_run": longest,
        "complement_count": horizon - len(times),
    }


def classify(report: HittingReport) -> dict:
    """Evidence triple for the three recurrence strengths over the sampled
    window: a small largest gap points at syndetic, a long consecutive
    streak at thick, a small complement at cofinite. Statistics about
    [1, horizon] only, never a proof of the infinite-set property."""
    return {
        "syndetic_evidence": report.max_gap,
        "thick_evidence": report.longest_run,
        "cofinite_evidence": report.complement_count,
    }


def _check_horizon(horizon: int) -> None:
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    if horizon > MAX_REPORT_HORIZON:
        raise HorizonTooLarge(f"horizon {horizon} exceeds {MAX_REPORT_HORIZON}")


def _report(kind: str, mask: int, horizon: int, sampled: dict) -> HittingReport:
    times = tuple(_mask_positions(mask, 1, horizon))
    stats = gap_stats(times, horizon)
    return HittingReport(
        kind,
        times,
        horizon,
        stats["max_gap"],
        stats["longest_run"],
        stats["complement_count"],
        sampled,
    )


def _hitting_mask(
    model: SpaceModel, u: Cylinder, v: Cylinder, horizon: int, pool: SamplePool
) -> int:
    mask = 0
    for m in _pool_masks(pool, v.word, horizon):
        mask |= m
    return _clip(mask, 1, horizon)


def hitting_times(
    model: SpaceModel,
    u: Cylinder,
    v: Cylinder,
    horizon: int,
    orbit_depth: int | None = None,
    sample_cap: int = DEFAULT_SAMPLE_CAP,
) -> HittingReport:
    """Times t in [1, horizon] with some sampled point of U landing in V."""
    _check_horizon(horizon)
    pool = sample_pool(model, u, orbit_depth, sample_cap)
    mask = _hitting_mask(model, u, v, horizon, pool)
    return _report("hitting", mask, horizon, pool.params())


def _sensitivity_mask(
    pool: SamplePool, entourage_depth: int, horizon: int
) -> int:
    if entourage_depth < 1:
        raise ValueError("entourage depth must be >= 1")
    bound = horizon + entourage_depth - 1
    mask = 0
    pts = pool.entries
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            dm = _difference_mask(pts[i][1], pts[j][1], bound)
            if not dm:
                continue
            spread = dm
            for back in range(1, entourage_depth):
                spread |= dm >> back
            mask |= spread
    return _clip(mask, 1, horizon)


def sensitivity_times(
    model: SpaceModel,
    u: Cylinder,
    entourage_depth: int,
    horizon: int,
    orbit_depth: int | None = None,
    sample_cap: int = DEFAULT_SAMPLE_CAP,
) -> HittingReport:
    """Times t in [1, horizon] at which two sampled points of U disagree
    somewhere in their first entourage_depth symbols after shifting by t."""
    _check_horizon(horizon)
    pool = sample_pool(model, u, orbit_depth, sample_cap)
    mask = _sensitivity_mask(pool, entourage_depth, horizon)
    params = pool.params()
    params["entourage_depth"] = entourage_depth
    return _report("sensitivity", mask, horizon, params)


def splitting_times(
    model: SpaceModel,
    u: Cylinder,
    v: Cylinder,
    entourage_depth: int,
    horizon: int,
    orbit_depth: int | None = None,
    sample_cap: int = DEFAULT_SAMPLE_CAP,
) -> HittingReport:
    """Times realizing both a V-visit and an entourage escape from the same
    sampled pool: exactly the intersection of the two time sets."""
    _check_horizon(horizon)
    pool = sample_pool(model, u, orbit_depth, sample_cap)
    mask = _hitting_mask(model, u, v, horizon, pool) & _sensitivity_mask(
        pool, entourage_depth, horizon
    )
    params = pool.params()
    params["entourage_depth"] = entourage_depth
    return _report("splitting", mask, horizon, params)


def trivial_pair_scan(
    model: SpaceModel,
    x_point: SymbolicPoint,
    y_point: SymbolicPoint,
    depth: int,
    horizon: int,
    orbit_depth: int | None = None,
) -> dict:
    """Hitting evidence for the pair's own depth-cylinders, plus whether the
    hit set looks eventually empty inside the horizon."""
    _check_horizon(horizon)
    u = Cylinder(x_point.prefix(depth))
    v = Cylinder(y_point.prefix(depth))
    report = hitting_times(model, u, v, horizon, orbit_depth)
    last = report.times[-1] if report.times else None
    return {
        "depth": depth,
        "times": list(report.times),
        "last_hit": last,
        "eventually_empty_evidence": last is None or last <= horizon // 2,
        "sampled": report.sampled,
    }


def omega_membership_evidence(
    point: SymbolicPoint, candidate: SymbolicPoint, depth: int, horizon: int
) -> dict:
    """Recurrence evidence that the candidate is a limit of the point's orbit.

    The candidate's depth-prefix must keep occurring: evidence is true when
    some occurrence starts after every decade step horizon // 10**i, which
    amounts to the last occurrence landing in (horizon // 10, horizon].
    Occurrence gaps in these systems grow geometrically, so any fixed-width
    window test would eventually report false for genuine limit points.
    """
    _check_horizon(horizon)
    word = candidate.prefix(depth)
    intervals = occurrence_intervals(point.run_stream(1), word, horizon - 1)
    last = intervals[-1][1] + 1 if intervals else None
    return {
        "depth": depth,
        "last_occurrence": last,
        "evidence": last is not None and last > horizon // 10,
        "horizon": horizon,
    }


# ---------------------------------------------------------------------------
# Pair checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PairVerdict:
    status: str  # satisfied | violated | inconclusive
    kind: str
    u_depth: int | None
    v_depth: int | None
    o_depth: int
    horizon: int
    depths_tried: tuple[tuple[int, int], ...]
    witnesses: tuple[dict, ...]
    sampled: dict

    def to_obj(self) -> dict:
        return {
            "status": self.status,
            "kind": self.kind,
            "u_depth": self.u_depth,
            "v_depth": self.v_depth,
            "o_depth": self.o_depth,
            "horizon": self.horizon,
            "depths_tried": [list(p) for p in self.depths_tried],
            "witnesses": list(self.witnesses),
            "sampled": self.sampled,
        }


def _ladder(point: SymbolicPoint, rungs: int) -> list[int]:
    out: list[int] = []
    it = point.depth_ladder()
    while len(out) < rungs:
        out.append(next(it))
    return out


def check_pair(
    model: SpaceModel,
    kind: str,
    x_point: SymbolicPoint,
    y_point: SymbolicPoint,
    o_depth: int,
    max_uv_depth: int = 4,
    horizon: int = DEFAULT_HORIZON,
    orbit_depth: int | None = None,
    sample_cap: int = DEFAULT_SAMPLE_CAP,
) -> PairVerdict:
    """Search structured cylinder pairs (U around x, V around y) for one that
    passes the pair condition at every time t in [1, horizon]:

      eqp: some sampled U-point lands in V  =>  all sampled U-points in O
      evp: x itself lands in V              =>  all sampled U-points in O

    where O is y's prefix cylinder at o_depth. Candidate depths come from
    each point's structural ladder; pairs are tried in increasing max-rung
    order and the first pass wins, so results are deterministic. A pool that
    samples nobody makes the check inconclusive rather than vacuous.
    """
    if kind not in ("eqp", "evp"):
        raise ValueError(f"kind must be eqp or evp, got {kind!r}")
    _check_horizon(horizon)
    o_word = y_point.prefix(o_depth)
    o_cyl = Cylinder(o_word)
    u_ladder = _ladder(x_point, max_uv_depth)
    v_ladder = _ladder(y_point, max_uv_depth)
    order = sorted(
        ((iu, iv) for iu in range(max_uv_depth) for iv in range(max_uv_depth)),
        key=lambda p: (max(p), p[0], p[1]),
    )
    tried: list[tuple[int, int]] = []
    witnesses: list[dict] = []
    last_pool_params: dict = {}
    for iu, iv in order:
        u_depth, v_depth = u_ladder[iu], v_ladder[iv]
        u_cyl = Cylinder(x_point.prefix(u_depth))
        v_cyl = Cylinder(y_point.prefix(v_depth))
        tried.append((u_depth, v_depth))
        pool = sample_pool(model, u_cyl, orbit_depth, sample_cap)
        last_pool_params = pool.params()
        if not pool.entries:
            continue
        if kind == "evp":
            trigger = _occurrence_mask(x_point, v_cyl.word, horizon)
        else:
            trigger = 0
            for m in _pool_masks(pool, v_cyl.word, horizon):
                trigger |= m
        trigger = _clip(trigger, 1, horizon)
        if trigger == 0:
            return PairVerdict(
                "satisfied",
                kind,
                u_depth,
                v_depth,
                o_depth,
                horizon,
                tuple(tried),
                (),
                pool.params(),
            )
        ok = ~0
        for m in _pool_masks(pool, o_cyl.word, horizon):
            ok &= m
        bad = trigger & ~ok
        if bad == 0:
            return PairVerdict(
                "satisfied",
                kind,
                u_depth,
                v_depth,
                o_depth,
                horizon,
                tuple(tried),
                (),
                pool.params(),
            )
        t = _mask_positions(bad, 1, horizon)[0]
        culprit = None
        for name, pt in pool.entries:
            if not pt.shift(t).in_cylinder(o_cyl):
                culprit = (name, pt)
                break
        assert culprit is not None
        observed = culprit[1].shift(t).prefix(o_depth)
        witnesses.append(
            {
                "u_depth": u_depth,
                "v_depth": v_depth,
                "time": t,
                "point": culprit[0],
                "observed_prefix": observed.to_obj(),
                "expected_prefix": o_word.to_obj(),
            }
        )
    status = "violated" if witnesses else "inconclusive"
    return PairVerdict(
        status,
        kind,
        None,
        None,
        o_depth,
        horizon,
        tuple(tried),
        tuple(witnesses),
        last_pool_params,
    )


def zero_block_independence(model: SpaceModel, n: int, horizon: int) -> bool:
    """Do all family members agree, at every t <= horizon, on membership of
    their shift in [0^n]? Exact interval scan per member."""
    _check_horizon(horizon)
    word = make_word([(0, n)], model.alphabet_size)
    masks = []
    for _name, gen in model.generators:
        masks.append(_clip(_occurrence_mask(gen, word, horizon), 0, horizon))
    return all(m == masks[0] for m in masks[1:])


def spike_train_eqp_refutation(
    model: SpaceModel, u_depth_blocks: int, v_depth: int = 1
) -> dict:
    """Witness against the equicontinuity condition for the spike train and
    0^inf: the truncated companion sits inside V at a time when the spike
    train shows a 1, for any base cylinder of u_depth_blocks blocks.

    The returned facts are replayed with direct queries before returning.
    """
    if u_depth_blocks < 1:
        raise ValueError("need at least one block")
    x = model.resolve("x")
    z = model.resolve(f"z:{u_depth_blocks}")
    u = Cylinder(x.prefix(SpikeTrainResolver.block_start(u_depth_blocks + 1)))
    v = Cylinder(make_word([(0, v_depth)]))
    o = Cylinder(make_word([(0, 1)]))
    t = SpikeTrainResolver.block_start(u_depth_blocks + 1)
    facts = {
        "z_in_u": z.in_cylinder(u),
        "x_in_u": x.in_cylinder(u),
        "z_visits_v": z.shift(t).in_cylinder(v),
        "x_escapes_o": not x.shift(t).in_cylinder(o),
    }
    if not all(facts.values()):
        raise AssertionError(f"refutation facts failed: {facts}")
    return {
        "time": t,
        "u_depth": u.depth(),
        "v_depth": v_depth,
        "o_depth": 1,
        "companion": f"z:{u_depth_blocks}",
        "facts": facts,
    }


# ---------------------------------------------------------------------------
# Periodic point scan
# ---------------------------------------------------------------------------


def _primitive_words(alphabet_size: int, max_period: int) -> Iterator[RleWord]:
    def words(length: int) -> Iterator[tuple[int, ...]]:
        if length == 0:
            yield ()
            return
        for rest in words(length - 1):
            for s in range(alphabet_size):
                yield rest + (s,)

    for length in range(1, max_period + 1):
        for tup in words(length):
            primitive = True
            for d in range(1, length):
                if length % d == 0 and tup == tup[:d] * (length // d):
                    primitive = False
                    break
            if primitive:
                yield word_from_symbols(tup, alphabet_size)


def periodic_scan(model: SpaceModel, max_period: int, horizon: int) -> dict:
    """Which candidate periods survive a factor test against the generators?

    The candidate w^inf survives when w^j occurs (starting within the
    horizon) in some generator for every j up to the repetition cap
    max(8, horizon // len(w)); since w^j is a prefix of the largest power,
    testing the largest power alone is equivalent and that is what runs.
    """
    _check_horizon(horizon)
    if max_period < 1:
        raise ValueError("max_period must be >= 1")
    survivors = []
    checked = 0
    for word in _primitive_words(model.alphabet_size, max_period):
        checked += 1
        reps = max(8, horizon // word.length())
        probe = power(word, reps)
        hit = None
        for _name, gen in model.generators:
            if gen.find_first(probe, horizon) is not None:
                hit = _name
                break
        if hit is not None:
            survivors.append(word.text())
    return {
        "max_period": max_period,
        "horizon": horizon,
        "repetition_cap_rule": "max(8, horizon // period_length)",
        "candidates_checked": checked,
        "survivors": sorted(survivors),
    }
