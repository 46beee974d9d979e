"""The recursive two-symbol word system and its verification toolkit.

Three interlocking word families drive everything here:

* C-words: c(0) = 10, and c(n) = 1^(8^n * L) 0^(2^n * L) where L is the
  total length of c(0)..c(n-1).
* Zero blocks q(n): all-zero words of the same length as c(n), n >= 1.
* Layered words: w(0) = c(0) q(1), and
  w(n) = w(0)..w(n-1) c(0)..c(n) q(n+1).

The point ``x`` concatenates all C-words, the point ``y`` concatenates all
layered words, and ``closing_point(n)`` is the tail-closed companion
c(0)..c(n) q(n+1) w(n+1) w(n+2)... reached inside y's orbit. Lengths grow
doubly exponentially, so every count here is an exact Python int and all
positional queries go through the lazy resolvers in points.py.

Hitting-time convention: tau counts shifts from 0 (the least t >= 0 landing
in the cylinder). Dynamics-style conditions elsewhere quantify over t >= 1;
each call site states which convention it uses.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from functools import cache
from typing import Iterator

from .points import (
    AbsRun,
    ClosingResolver,
    Cylinder,
    LayeredWordResolver,
    RecursiveWordResolver,
    SymbolicPoint,
    point_from_descriptor,
)
from .words import (
    DEFAULT_MATERIALIZATION_CAP,
    MaterializationRefused,
    RleWord,
    concat,
    make_word,
    occurrence_intervals,
)


class InsufficientHorizon(Exception):
    """A bounded search ended without a definite answer."""


# ---------------------------------------------------------------------------
# Length tables (memoized; fills are idempotent so concurrent use is safe)
# ---------------------------------------------------------------------------


@cache
def len_c(n: int) -> int:
    if n < 0:
        raise ValueError(f"len_c needs n >= 0, got {n}")
    if n == 0:
        return 2
    return (8**n + 2**n) * cum_c(n - 1)


@cache
def cum_c(n: int) -> int:
    """Total length of c(0)..c(n); 0 when n is -1."""
    if n < -1:
        raise ValueError(f"cum_c needs n >= -1, got {n}")
    if n == -1:
        return 0
    return cum_c(n - 1) + len_c(n)


def len_q(n: int) -> int:
    if n < 1:
        raise ValueError(f"zero blocks start at index 1, got {n}")
    return len_c(n)


@cache
def len_w(n: int) -> int:
    if n < 0:
        raise ValueError(f"len_w needs n >= 0, got {n}")
    if n == 0:
        return len_c(0) + len_q(1)
    return cum_w(n - 1) + cum_c(n) + len_q(n + 1)


@cache
def cum_w(n: int) -> int:
    """Total length of w(0)..w(n); 0 when n is -1."""
    if n < -1:
        raise ValueError(f"cum_w needs n >= -1, got {n}")
    if n == -1:
        return 0
    return cum_w(n - 1) + len_w(n)


def one_part_len(n: int) -> int:
    """Length of the leading all-ones part of c(n)."""
    return 1 if n == 0 else 8**n * cum_c(n - 1)


def zero_part_len(n: int) -> int:
    """Length of the trailing all-zeros part of c(n)."""
    return 1 if n == 0 else 2**n * cum_c(n - 1)


def lengths(n: int) -> dict:
    """One row of the length table, counts as exact ints."""
    if n < 0:
        raise ValueError(f"lengths needs n >= 0, got {n}")
    return {
        "n": n,
        "len_c": len_c(n),
        "len_q": len_q(n) if n >= 1 else None,
        "len_w": len_w(n),
        "cum_c": cum_c(n),
        "cum_w": cum_w(n),
    }


def block_index_c(q: int) -> int:
    """Index k with cum_c(k-1) <= q < cum_c(k)."""
    k = 0
    while cum_c(k) <= q:
        k += 1
    return k


def block_index_w(q: int) -> int:
    k = 0
    while cum_w(k) <= q:
        k += 1
    return k


# ---------------------------------------------------------------------------
# Run location inside the layered point (used by the resolvers)
# ---------------------------------------------------------------------------


def layered_run(q: int) -> AbsRun:
    """Maximal run of the layered point around absolute position q.

    The only same-symbol seam anywhere in the layered structure is the
    all-zero tail of each w(k): the zero part of its final C-word merges
    with the following zero block. Top-level w-blocks never merge because
    each starts with a 1 and ends with zeros.
    """
    k = block_index_w(q)
    base = cum_w(k - 1)
    sym, start, end = _run_in_w(k, q - base)
    return sym, base + start, base + end


def _run_in_w(k: int, r: int) -> tuple[int, int, int]:
    """Maximal run of w(k) around local position r, in local coordinates."""
    if k == 0:
        # w(0) = 10 followed by 20 zeros
        return (1, 0, 0) if r == 0 else (0, 1, len_w(0) - 1)
    replica = cum_w(k - 1)  # w(0)..w(k-1) replica, identical to y's prefix
    c_block = replica + cum_c(k)
    total = len_w(k)
    if r < replica:
        j = block_index_w(r)
        off = cum_w(j - 1)
        sym, start, end = _run_in_w(j, r - off)
        return sym, off + start, off + end
    if r < c_block:
        rr = r - replica
        j = block_index_c(rr)
        c_base = replica + cum_c(j - 1)
        one = one_part_len(j)
        if rr - cum_c(j - 1) < one:
            return 1, c_base, c_base + one - 1
        if j < k:
            return 0, c_base + one, replica + cum_c(j) - 1
        # zero part of the final C-word merges into the zero block
        return 0, c_base + one, total - 1
    return 0, c_block - zero_part_len(k), total - 1


# ---------------------------------------------------------------------------
# Word builders (materialized; run counts stay small for modest n)
# ---------------------------------------------------------------------------


@cache
def c_runs(n: int) -> RleWord:
    """The n-th C-word as an RLE word (two runs)."""
    return make_word([(1, one_part_len(n)), (0, zero_part_len(n))])


@cache
def q_runs(n: int) -> RleWord:
    """The n-th zero block (one run)."""
    return make_word([(0, len_q(n))])


@cache
def c_prefix_word(n: int) -> RleWord:
    """c(0)..c(n) concatenated."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    if n == 0:
        return c_runs(0)
    return concat(c_prefix_word(n - 1), c_runs(n))


@cache
def w_runs(n: int, cap: int = DEFAULT_MATERIALIZATION_CAP) -> RleWord:
    """The n-th layered word materialized; run count roughly doubles per level."""
    if n == 0:
        return concat(c_runs(0), q_runs(1))
    parts = [w_runs(j) for j in range(n)]
    parts.append(c_prefix_word(n))
    parts.append(q_runs(n + 1))
    word = concat(*parts)
    if word.run_count() > cap:
        raise MaterializationRefused(
            f"layered word {n} needs {word.run_count()} runs, cap is {cap}"
        )
    return word


@cache
def w_prefix_word(n: int) -> RleWord:
    """w(0)..w(n) concatenated."""
    if n == 0:
        return w_runs(0)
    return concat(w_prefix_word(n - 1), w_runs(n))


def closing_prefix_word(n: int) -> RleWord:
    """c(0)..c(n) followed by the (n+1)-th zero block."""
    return concat(c_prefix_word(n), q_runs(n + 1))


# ---------------------------------------------------------------------------
# Canonical points
# ---------------------------------------------------------------------------


def point_x() -> SymbolicPoint:
    """The concatenation of all C-words."""
    return SymbolicPoint(RecursiveWordResolver())


def point_y() -> SymbolicPoint:
    """The concatenation of all layered words."""
    return SymbolicPoint(LayeredWordResolver())


def closing_point(n: int) -> SymbolicPoint:
    """c(0)..c(n) q(n+1) w(n+1) w(n+2) ...; equals y shifted by 2*cum_w(n-1)."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    return SymbolicPoint(ClosingResolver(n))


# ---------------------------------------------------------------------------
# Inequality reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InequalityReport:
    name: str
    params: dict
    lhs: int
    rhs: int
    holds: bool

    def to_obj(self) -> dict:
        obj = {"name": self.name}
        obj.update({k: v for k, v in self.params.items()})
        obj.update({"lhs": str(self.lhs), "rhs": str(self.rhs), "holds": self.holds})
        return obj


def verify_claim1(n: int) -> InequalityReport:
    """6 * 8^(n+1) * len_c(n+1) must dominate cum_w(n) + cum_c(n+1) + 2*len_w(n)."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    lhs = 6 * 8 ** (n + 1) * len_c(n + 1)
    rhs = cum_w(n) + cum_c(n + 1) + 2 * len_w(n)
    return InequalityReport("claim1", {"n": n}, lhs, rhs, lhs >= rhs)


def verify_corollary(n: int, k: int) -> InequalityReport:
    """Iterated form: the same left side at level n+k dominates
    cum_w(n+k) + cum_c(n+1+k) plus the sum of len_w(n+1)..len_w(n+k)."""
    if n < 0 or k < 0:
        raise ValueError(f"need n, k >= 0, got {(n, k)}")
    lhs = 6 * 8 ** (n + 1 + k) * len_c(n + 1 + k)
    rhs = cum_w(n + k) + cum_c(n + 1 + k) + sum(len_w(n + 1 + i) for i in range(k))
    return InequalityReport("corollary", {"n": n, "k": k}, lhs, rhs, lhs >= rhs)


def verify_one_part_remark(n: int) -> InequalityReport:
    """The ones part of c(n+2) is long enough to absorb eight copies of
    8^(n+1) * len_c(n+1): checked as one_part >= (6 + 2) * 8^(n+1) * len_c(n+1)."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    one_part = 8 ** (n + 2) * cum_c(n + 1)
    claim_lhs = 6 * 8 ** (n + 1) * len_c(n + 1)
    extra = 2 * 8 ** (n + 1) * len_c(n + 1)
    report = InequalityReport(
        "one_part", {"n": n}, one_part, claim_lhs + extra, one_part >= claim_lhs + extra
    )
    return report


# ---------------------------------------------------------------------------
# First hitting times
# ---------------------------------------------------------------------------


def tau(point: SymbolicPoint, cyl: Cylinder, horizon: int) -> int | None:
    """Least t >= 0 with shift(point, t) in the cylinder, None beyond horizon."""
    return point.find_first(cyl.word, horizon)


@dataclass(frozen=True)
class HittingOrderRow:
    k: int
    tau_x_c: int
    tau_z_qc: int | None
    bound: int
    x_zero_entry: int
    holds: bool | None

    def to_obj(self) -> dict:
        return {
            "k": self.k,
            "tau_x_c": str(self.tau_x_c),
            "tau_z_qc": None if self.tau_z_qc is None else str(self.tau_z_qc),
            "bound": str(self.bound),
            "x_zero_entry": str(self.x_zero_entry),
            "holds": self.holds,
        }


@dataclass(frozen=True)
class HittingOrderReport:
    n: int
    k_max: int
    rows: tuple[HittingOrderRow, ...]
    note: str

    @property
    def holds(self) -> bool:
        return all(r.holds is True for r in self.rows)

    @property
    def inconclusive(self) -> bool:
        return any(r.holds is None for r in self.rows)

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "k_max": self.k_max,
            "holds": self.holds,
            "inconclusive": self.inconclusive,
            "rows": [r.to_obj() for r in self.rows],
            "note": self.note,
        }


def verify_hitting_order(n: int, k_max: int) -> HittingOrderReport:
    """For each k in (n, k_max], check the three hitting inequalities for
    z = closing_point(n):

      tau(x, [c(k)]) <= tau(z, [q(k) c(0)]) <= 6 * 8^(k-1) * len_c(k-1)
      and tau(z, [q(k) c(0)]) <= first entry of x into its k-th zero part.

    tau values are measured by search (tau counts from 0); the x-side values
    also have closed forms, and the search horizon comes from the bound, so a
    missing hit is reported as inconclusive rather than silently skipped.
    """
    if not 0 <= n < k_max:
        raise ValueError(f"need 0 <= n < k_max, got {(n, k_max)}")
    z = closing_point(n)
    x = point_x()
    rows = []
    for k in range(n + 1, k_max + 1):
        bound = 6 * 8 ** (k - 1) * len_c(k - 1)
        tau_x = tau(x, Cylinder(c_runs(k)), cum_c(k - 1))
        assert tau_x == cum_c(k - 1), "closed form for tau(x, [c(k)]) failed"
        pattern = concat(q_runs(k), c_runs(0))
        tau_z = tau(z, Cylinder(pattern), bound)
        x_zero_entry = cum_c(k - 1) + one_part_len(k)
        if tau_z is None:
            holds: bool | None = None
        else:
            holds = tau_x <= tau_z <= bound and tau_z <= x_zero_entry
        rows.append(HittingOrderRow(k, tau_x, tau_z, bound, x_zero_entry, holds))
    note = (
        "checks tau_x_c <= tau_z_qc, tau_z_qc <= bound, and "
        "tau_z_qc <= x_zero_entry; a missing hit within the bound is "
        "reported as inconclusive"
    )
    return HittingOrderReport(n, k_max, tuple(rows), note)


def layered_entry_evidence(level: int, *, strict: bool = True) -> int:
    """First occurrence of w(level) inside y, found by bounded search.

    The structural entry is at cum_w(level - 1); the search horizon is that
    value, so the result establishes that no earlier occurrence exists.
    Raises InsufficientHorizon if the search somehow misses.
    """
    target = cum_w(level - 1)
    hit = point_y().find_first(w_runs(level), target)
    if hit is None:
        raise InsufficientHorizon(f"w({level}) not found within {target}")
    if strict and hit != target:
        raise AssertionError(f"unexpected early occurrence of w({level}) at {hit}")
    return hit


# ---------------------------------------------------------------------------
# Witness certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MembershipFact:
    """shift(point, time) in/notin cylinder, with time optionally following
    the certificate's headline time under perturbation."""

    point_label: str
    point: SymbolicPoint
    time: int
    cylinder_label: str
    cyl: Cylinder
    expected: bool
    tracks_time: bool = False

    def holds(self) -> bool:
        return self.point.shift(self.time).in_cylinder(self.cyl) == self.expected

    def to_obj(self) -> dict:
        return {
            "point": self.point_label,
            "point_descriptor": self.point.to_descriptor(),
            "time": str(self.time),
            "cylinder": self.cylinder_label,
            "cylinder_word": self.cyl.word.to_obj(),
            "expected_member": self.expected,
        }


@dataclass(frozen=True)
class WitnessCertificate:
    """Closed-form refutation data, checkable by direct membership queries.

    Every certificate carries at least one membership fact in a cylinder
    whose word uses both symbols, anchored at the headline time; consecutive
    times cannot both satisfy such a fact, so perturbing the time by one in
    either direction breaks validation.
    """

    claim: str
    params: dict
    neighborhood: Cylinder  # the target neighborhood O being escaped
    base: Cylinder  # the cylinder U around the base point
    landing: Cylinder  # the cylinder V witnessing the visit
    time: int
    facts: tuple[MembershipFact, ...]

    def perturbed(self, delta: int) -> "WitnessCertificate":
        new_time = self.time + delta
        if new_time < 0:
            raise ValueError("perturbation would make the time negative")
        new_facts = tuple(
            replace(f, time=f.time + delta) if f.tracks_time else f for f in self.facts
        )
        return replace(self, time=new_time, facts=new_facts)

    def to_obj(self) -> dict:
        return {
            "claim": self.claim,
            "params": self.params,
            "neighborhood": self.neighborhood.word.to_obj(),
            "base": self.base.word.to_obj(),
            "landing": self.landing.word.to_obj(),
            "time": str(self.time),
            "facts": [f.to_obj() for f in self.facts],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), separators=(",", ":"))


@dataclass(frozen=True)
class CertificateCheck:
    valid: bool
    results: tuple[tuple[str, bool, bool], ...]  # (description, expected, held)

    def to_obj(self) -> dict:
        return {
            "valid": self.valid,
            "facts": [
                {"fact": desc, "expected": exp, "held": held}
                for desc, exp, held in self.results
            ],
        }


def validate_certificate(cert: WitnessCertificate) -> CertificateCheck:
    """Replay every membership fact by direct symbol queries."""
    results = []
    ok = True
    for fact in cert.facts:
        held = fact.point.shift(fact.time).in_cylinder(fact.cyl)
        results.append(
            (
                f"shift({fact.point_label}, {fact.time}) in [{fact.cylinder_label}]",
                fact.expected,
                held,
            )
        )
        if held != fact.expected:
            ok = False
    return CertificateCheck(ok, tuple(results))


def witness_not_evp_x_10inf(m: int, l: int) -> WitnessCertificate:
    """Certificate that x and the point 10^inf cannot be an evenly continuous
    pair: inside any base cylinder [c(0)..c(m)] sits an orbit point of y
    (the closing point) that has left the target neighborhood [10] by the
    time x revisits [1 0^l].

    The headline time is the last position of the ones part of c(m+1).
    """
    if not (m >= l >= 1):
        raise ValueError(f"need m >= l >= 1, got {(m, l)}")
    t = cum_c(m)
    k = 8 ** (m + 1) * cum_c(m)
    time = t + k - 1
    target = Cylinder(make_word([(1, 1), (0, 1)]))
    base = Cylinder(c_prefix_word(m))
    landing = Cylinder(make_word([(1, 1), (0, l)]))
    x = point_x()
    p = closing_point(m)
    facts = (
        MembershipFact("x", x, 0, "base", base, True),
        MembershipFact("closing", p, 0, "base", base, True),
        MembershipFact("x", x, time, "landing", landing, True, tracks_time=True),
        MembershipFact("closing", p, time, "target", target, False, tracks_time=True),
    )
    return WitnessCertificate(
        "not_evp_x_10inf",
        {"m": m, "l": l},
        target,
        base,
        landing,
        time,
        facts,
    )


def _min_level_with_zeros(n: int) -> int:
    m = 1
    while zero_part_len(m) < n:
        m += 1
    return m


def _min_level_with_ones(n: int) -> int:
    m = 1
    while one_part_len(m) < n:
        m += 1
    return m


def _fixed_target_time(level: int) -> int:
    """Entry of y into [q(level) c(0)..c(level)]: start of the zero block
    inside the second replica of y's own prefix within w(level)."""
    return cum_w(level - 1) + 2 * cum_w(level - 2) + cum_c(level - 1)


def witness_not_eqp_y_fixed(target_symbol: int, n: int) -> WitnessCertificate:
    """Certificate that y and a constant point (0^inf or 1^inf) cannot be an
    equicontinuous pair at depth n.

    The base cylinder is [w(0)..w(n)]; the shifted companion z (y moved to
    the start of w(level)) still lies in the base, yet at the headline time
    one of y, z sits in the landing cylinder while the other has escaped the
    target neighborhood. The anchor fact keeps the headline time rigid: y
    enters [q(level) c(0)..c(level)] exactly then.
    """
    if target_symbol not in (0, 1):
        raise ValueError(f"target symbol must be 0 or 1, got {target_symbol}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if target_symbol == 0:
        m = _min_level_with_zeros(n)
        claim = "not_eqp_y_0inf"
    else:
        m = _min_level_with_ones(n)
        claim = "not_eqp_y_1inf"
    level = max(n + 2, m + 2)
    time = _fixed_target_time(level)
    y = point_y()
    z = y.shift(cum_w(level - 1))
    base = Cylinder(w_prefix_word(n))
    anchor = Cylinder(concat(q_runs(level), c_prefix_word(level)))
    zeros = make_word([(0, n)])
    ones_next = make_word([(1, n + 1)])
    ones = make_word([(1, n)])
    if target_symbol == 0:
        target = Cylinder(make_word([(0, n)]))
        landing = Cylinder(zeros)
        facts = (
            MembershipFact("y", y, 0, "base", base, True),
            MembershipFact("z", z, 0, "base", base, True),
            MembershipFact("y", y, time, "anchor", anchor, True, tracks_time=True),
            MembershipFact("y", y, time, "landing", landing, True, tracks_time=True),
            MembershipFact("z", z, time, "ones", Cylinder(ones_next), True, tracks_time=True),
            MembershipFact("z", z, time, "target", target, False, tracks_time=True),
        )
    else:
        target = Cylinder(make_word([(1, n)]))
        landing = Cylinder(ones)
        facts = (
            MembershipFact("y", y, 0, "base", base, True),
            MembershipFact("z", z, 0, "base", base, True),
            MembershipFact("y", y, time, "anchor", anchor, True, tracks_time=True),
            MembershipFact("z", z, time, "landing", landing, True, tracks_time=True),
            MembershipFact("y", y, time, "zeros", Cylinder(zeros), True, tracks_time=True),
            MembershipFact("y", y, time, "target", target, False, tracks_time=True),
        )
    return WitnessCertificate(
        claim,
        {"target": f"{target_symbol}^inf", "n": n, "m": m, "level": level},
        target,
        base,
        landing,
        time,
        facts,
    )


def _min_level_with_factor(word: RleWord, cap: int = 16) -> int:
    """Least m with the word occurring inside w(m)."""
    from .words import find_first_in_word

    for m in range(cap + 1):
        if find_first_in_word(w_runs(m), word) is not None:
            return m
    raise InsufficientHorizon(f"factor not found in layered words up to level {cap}")


def witness_not_eqp_y_general(prefix: RleWord, n: int) -> WitnessCertificate:
    """Certificate that y cannot form an equicontinuous pair with any point
    whose leading symbols are `prefix` (which must use both symbols).

    The visit time is the first occurrence of the prefix after y re-enters
    the second replica of its own prefix inside w(level); the companion z is
    then deep inside the ones part of c(level). The landing cylinder is y's
    actual window at that time, which extends the prefix to depth n+1.
    """
    syms = {s for s, _ in prefix.runs}
    if syms != {0, 1}:
        raise ValueError("prefix must contain both symbols")
    if n < prefix.length():
        raise ValueError(f"need n >= len(prefix) = {prefix.length()}, got {n}")
    m = _min_level_with_factor(prefix)
    level = max(n + 2, m + 2)
    while 2 * 8 ** (level - 1) * len_c(level - 1) <= n + 1:
        level += 1
    y = point_y()
    t_entry = cum_w(level - 1)
    z = y.shift(t_entry)
    window_start = t_entry + cum_w(level - 2)
    window_end = _fixed_target_time(level)  # y reaches the zero block here
    rel = y.shift(window_start).find_first(prefix, window_end - window_start - 1)
    if rel is None:
        raise InsufficientHorizon(
            "prefix not found inside the replica window; widen the search"
        )
    time = window_start + rel
    landing_word = y.shift(time).prefix(n + 1)
    base = Cylinder(w_prefix_word(n))
    target = Cylinder(prefix)
    landing = Cylinder(landing_word)
    ones_next = Cylinder(make_word([(1, n + 1)]))
    facts = (
        MembershipFact("y", y, 0, "base", base, True),
        MembershipFact("z", z, 0, "base", base, True),
        MembershipFact("y", y, time, "landing", landing, True, tracks_time=True),
        MembershipFact("z", z, time, "ones", ones_next, True, tracks_time=True),
        MembershipFact("z", z, time, "target", target, False, tracks_time=True),
    )
    return WitnessCertificate(
        "not_eqp_y_general",
        {"prefix": prefix.to_obj(), "n": n, "m": m, "level": level},
        target,
        base,
        landing,
        time,
        facts,
    )


# ---------------------------------------------------------------------------
# Positive evidence for the evenly continuous pair (x, 0^inf)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EvpEvidenceReport:
    n: int
    time_horizon: int
    orbit_depth: int
    orbit_entries: tuple[int, ...]
    times_checked: int
    violations: tuple[dict, ...]

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "time_horizon": self.time_horizon,
            "orbit_depth": self.orbit_depth,
            "orbit_entries": [str(j) for j in self.orbit_entries],
            "times_checked": self.times_checked,
            "violations": list(self.violations),
            "holds": self.holds,
        }


def check_evp_x_0inf(n: int, time_horizon: int, orbit_depth: int) -> EvpEvidenceReport:
    """Exhaustive finite check that the pair (x, 0^inf) behaves evenly
    continuously with base [c(0)..c(n)] and landing/target [0^n].

    Enumerates every shift of y within orbit_depth that enters the base
    cylinder, and every time within time_horizon at which x sits in [0^n];
    each enumerated orbit point must then sit in [0^n] too. Both
    enumerations are exact interval scans, not samples.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    base_word = c_prefix_word(n)
    landing = make_word([(0, n)])
    y = point_y()
    x = point_x()
    entries: list[int] = []
    for lo, hi in occurrence_intervals(y.run_stream(), base_word, orbit_depth):
        entries.extend(range(lo, hi + 1))
    times: list[int] = []
    for lo, hi in occurrence_intervals(x.run_stream(), landing, time_horizon):
        start = max(lo, 1)
        if start <= hi:
            times.extend(range(start, hi + 1))
    target = Cylinder(landing)
    violations = []
    for j in entries:
        zj = y.shift(j)
        for t in times:
            if not zj.shift(t).in_cylinder(target):
                violations.append(
                    {"orbit_entry": str(j), "time": str(t)}
                )
    return EvpEvidenceReport(
        n,
        time_horizon,
        orbit_depth,
        tuple(entries),
        len(times),
        tuple(violations),
    )


# point_from_descriptor is re-exported here because CLI point parsing for
# this module's named points funnels through construction.
__all__ = [
    "CertificateCheck",
    "Cylinder",
    "EvpEvidenceReport",
    "HittingOrderReport",
    "HittingOrderRow",
    "InequalityReport",
    "InsufficientHorizon",
    "MembershipFact",
    "WitnessCertificate",
    "block_index_c",
    "block_index_w",
    "c_prefix_word",
    "c_runs",
    "check_evp_x_0inf",
    "closing_point",
    "closing_prefix_word",
    "cum_c",
    "cum_w",
    "layered_entry_evidence",
    "layered_run",
    "len_c",
    "len_q",
    "len_w",
    "lengths",
    "one_part_len",
    "point_from_descriptor",
    "point_x",
    "point_y",
    "q_runs",
    "tau",
    "validate_certificate",
    "verify_claim1",
    "verify_corollary",
    "verify_hitting_order",
    "verify_one_part_remark",
    "w_prefix_word",
    "w_runs",
    "witness_not_eqp_y_fixed",
    "witness_not_eqp_y_general",
    "witness_not_evp_x_10inf",
    "zero_part_len",
]
