"""Lazily addressable points of one-sided shift spaces.

A point is a total map from nonnegative positions to symbols, represented by
a stateless resolver plus an accumulated shift offset. Resolvers answer
"which maximal run contains absolute position q" in time polynomial in the
structural depth of q, never linear in q, so symbols near positions like
10**40 are as cheap as symbols near 0. Shifting is O(1): it only moves the
offset. Resolvers are pure values; no query mutates anything, so points are
safe to share across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .words import (
    DEFAULT_MATERIALIZATION_CAP,
    InvalidPattern,
    MaterializationRefused,
    OutOfRange,
    RleWord,
    Run,
    StreamRun,
    find_first,
    make_word,
)


class PointError(Exception):
    """Base class for symbolic-point errors."""


class InfiniteRun(PointError):
    """Signals that the run containing a position never ends.

    Carries the run's symbol and clamped start position.
    """

    def __init__(self, symbol: int, start: int):
        super().__init__(f"infinite run of {symbol} starting at {start}")
        self.symbol = symbol
        self.start = start


class UnknownDescriptor(PointError):
    """A point descriptor has an unrecognized kind or bad parameters."""


# A resolver's run_at(q) returns (symbol, start, end) for the maximal run
# containing absolute position q, with end None when the run is infinite.
AbsRun = tuple[int, int, int | None]


@dataclass(frozen=True, slots=True)
class RunLocation:
    """Maximal run around a queried position, in point coordinates."""

    symbol: int
    start: int
    end: int


@dataclass(frozen=True, slots=True)
class Cylinder:
    """The set of points beginning with a fixed nonempty word."""

    word: RleWord

    def __post_init__(self) -> None:
        if self.word.is_empty():
            raise InvalidPattern("a cylinder needs a nonempty word")

    def depth(self) -> int:
        return self.word.length()


def cylinder(word: RleWord) -> Cylinder:
    return Cylinder(word)


# ---------------------------------------------------------------------------
# Resolvers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EventuallyPeriodicResolver:
    """preperiod followed by an infinite repetition of period.

    Stored in a canonical form chosen at construction: either the period is a
    single run (an infinite tail run), or its first and last runs carry
    distinct symbols so copies never merge with each other. The only possible
    merge is then across the preperiod/period seam, handled at query time.
    """

    pre: tuple[Run, ...]
    period: tuple[Run, ...]
    alphabet_size: int

    def _pre_length(self) -> int:
        return sum(c for _, c in self.pre)

    def _period_length(self) -> int:
        return sum(c for _, c in self.period)

    def run_at(self, q: int) -> AbsRun:
        pre_len = self._pre_length()
        if len(self.period) == 1:
            sym = self.period[0][0]
            if q >= pre_len:
                return sym, pre_len, None
            return self._run_in_pre(q, tail_sym=sym, tail_end=None)
        plen = self._period_length()
        if q < pre_len:
            return self._run_in_pre(
                q,
                tail_sym=self.period[0][0],
                tail_end=pre_len + self.period[0][1] - 1,
            )
        phase = (q - pre_len) % plen
        copy_base = q - phase
        pos = 0
        for i, (sym, count) in enumerate(self.period):
            if phase < pos + count:
                start = copy_base + pos
                end = copy_base + pos + count - 1
                if i == 0 and copy_base == pre_len and self.pre and self.pre[-1][0] == sym:
                    start -= self.pre[-1][1]
                return sym, start, end
            pos += count
        raise AssertionError("phase outside period")

    def _run_in_pre(self, q: int, tail_sym: int, tail_end: int | None) -> AbsRun:
        pos = 0
        for i, (sym, count) in enumerate(self.pre):
            if q < pos + count:
                start, end = pos, pos + count - 1
                if i == len(self.pre) - 1 and sym == tail_sym:
                    end = tail_end
                return sym, start, end
            pos += count
        raise OutOfRange(f"position {q} not inside preperiod")

    def depth_ladder(self) -> Iterator[int]:
        d = 1
        while True:
            yield d
            d += 1

    def descriptor_kind(self) -> str:
        return "ev_periodic"

    def descriptor_params(self) -> dict:
        return {
            "preperiod": RleWord(self.alphabet_size, self.pre).to_obj(),
            "period": RleWord(self.alphabet_size, self.period).to_obj(),
        }


def _canonical_ev_periodic(pre: RleWord, period: RleWord) -> EventuallyPeriodicResolver:
    if period.is_empty():
        raise InvalidPattern("period must be nonempty")
    if pre.alphabet_size != period.alphabet_size:
        raise InvalidPattern("preperiod and period alphabets differ")
    pre_runs = list(pre.runs)
    per_runs = list(period.runs)
    if len({s for s, _ in per_runs}) == 1:
        sym = per_runs[0][0]
        total = sum(c for _, c in per_runs)
        per_runs = [(sym, total)]
        # strip preperiod runs that merge into the infinite tail
        while pre_runs and pre_runs[-1][0] == sym:
            pre_runs.pop()
    elif per_runs[0][0] == per_runs[-1][0]:
        # rotate so copies of the period never merge with each other
        head = per_runs[0]
        per_runs = per_runs[1:-1] + [(head[0], head[1] + per_runs[-1][1])]
        if pre_runs and pre_runs[-1][0] == head[0]:
            pre_runs[-1] = (head[0], pre_runs[-1][1] + head[1])
        else:
            pre_runs.append(head)
    return EventuallyPeriodicResolver(tuple(pre_runs), tuple(per_runs), pre.alphabet_size)


@dataclass(frozen=True)
class RecursiveWordResolver:
    """Positions of the infinite concatenation of the recursive C-words."""

    alphabet_size: int = 2

    def run_at(self, q: int) -> AbsRun:
        from . import construction as con

        k = con.block_index_c(q)
        base = con.cum_c(k - 1)
        one = con.one_part_len(k)
        if q - base < one:
            return 1, base, base + one - 1
        return 0, base + one, con.cum_c(k) - 1

    def depth_ladder(self) -> Iterator[int]:
        from . import construction as con

        k = 0
        while True:
            yield con.cum_c(k)
            k += 1

    def descriptor_kind(self) -> str:
        return "x"

    def descriptor_params(self) -> dict:
        return {}


@dataclass(frozen=True)
class LayeredWordResolver:
    """Positions of the infinite concatenation of the layered W-words."""

    alphabet_size: int = 2

    def run_at(self, q: int) -> AbsRun:
        from . import construction as con

        return con.layered_run(q)

    def depth_ladder(self) -> Iterator[int]:
        from . import construction as con

        k = 0
        while True:
            yield con.cum_w(k)
            k += 1

    def descriptor_kind(self) -> str:
        return "y"

    def descriptor_params(self) -> dict:
        return {}


@dataclass(frozen=True)
class ClosingResolver:
    """The tail-closed companion point: C-prefix, an all-zero block, then
    the layered point's suffix."""

    level: int
    alphabet_size: int = 2

    def run_at(self, q: int) -> AbsRun:
        from . import construction as con

        n = self.level
        c_prefix = con.cum_c(n)
        zeros = con.len_c(n + 1)
        if q < c_prefix:
            sym, start, end = RecursiveWordResolver().run_at(q)
            if sym == 0 and end == c_prefix - 1:
                end = c_prefix + zeros - 1
            return sym, start, end
        if q < c_prefix + zeros:
            return 0, c_prefix - con.zero_part_len(n), c_prefix + zeros - 1
        local = q - (c_prefix + zeros)
        y_base = con.cum_w(n)
        sym, start, end = con.layered_run(y_base + local)
        assert end is not None
        return sym, start - y_base + c_prefix + zeros, end - y_base + c_prefix + zeros

    def depth_ladder(self) -> Iterator[int]:
        from . import construction as con

        n = self.level
        for j in range(n + 1):
            yield con.cum_c(j)
        base = con.cum_c(n) + con.len_c(n + 1)
        yield base
        k = n + 1
        while True:
            base += con.len_w(k)
            yield base
            k += 1

    def descriptor_kind(self) -> str:
        return "closing"

    def descriptor_params(self) -> dict:
        return {"n": self.level}


@dataclass(frozen=True)
class BlockFamilyResolver:
    """A member of the block family: chosen nonzero words of lengths 1,2,3,...
    with an all-zero block of matching index after each one.

    The k-th chosen word occupies [k*(k-1), k*k); the k-th zero block
    occupies [k*k, k*(k+1)). The chooser is a pure function of (k) giving the
    k-th word's symbols, all in 1..alphabet_size-1.
    """

    alphabet_size: int
    salt: int
    chooser: Callable[[int], tuple[int, ...]] | None = field(default=None, compare=False)
    # per-instance memo; run_at hits word_at on every run step, and the
    # chooser is required to be pure, so rebuilding tuples would be waste
    _words: dict = field(default_factory=dict, compare=False, repr=False)

    def word_at(self, k: int) -> tuple[int, ...]:
        cached = self._words.get(k)
        if cached is not None:
            return cached
        if self.chooser is not None:
            word = tuple(self.chooser(k))
        else:
            m = self.alphabet_size - 1
            word = tuple(1 + ((i + self.salt + k) % m) for i in range(k))
        if len(word) != k or any(not 1 <= s < self.alphabet_size for s in word):
            raise InvalidPattern(f"chooser produced a bad word for k={k}")
        self._words[k] = word
        return word

    def run_at(self, q: int) -> AbsRun:
        k = (1 + math.isqrt(1 + 4 * q)) // 2
        while k * (k - 1) > q:
            k -= 1
        while k * (k + 1) <= q:
            k += 1
        base = k * (k - 1)
        r = q - base
        if r >= k:
            return 0, base + k, k * (k + 1) - 1
        word = self.word_at(k)
        lo = r
        while lo > 0 and word[lo - 1] == word[r]:
            lo -= 1
        hi = r
        while hi + 1 < k and word[hi + 1] == word[r]:
            hi += 1
        return word[r], base + lo, base + hi

    def depth_ladder(self) -> Iterator[int]:
        k = 1
        while True:
            yield k * k
            yield k * (k + 1)
            k += 1

    def descriptor_kind(self) -> str:
        return "block_family"

    def descriptor_params(self) -> dict:
        return {"alphabet": self.alphabet_size, "salt": self.salt}


@dataclass(frozen=True)
class SpikeTrainResolver:
    """The point 1 0 1 00 1 000 ...: a 1 followed by n zeros, for n = 1, 2, 3, ...

    The n-th block (1-based) starts at t(n) = (n-1)(n+2)/2 and has length n+1.
    """

    alphabet_size: int = 2

    @staticmethod
    def block_start(n: int) -> int:
        return (n - 1) * (n + 2) // 2

    def run_at(self, q: int) -> AbsRun:
        n = max(1, (math.isqrt(8 * q + 9) - 1) // 2)
        while self.block_start(n) > q:
            n -= 1
        while self.block_start(n + 1) <= q:
            n += 1
        start = self.block_start(n)
        if q == start:
            return 1, start, start
        return 0, start + 1, self.block_start(n + 1) - 1

    def depth_ladder(self) -> Iterator[int]:
        n = 2
        while True:
            yield self.block_start(n)
            n += 1

    def descriptor_kind(self) -> str:
        return "spike_train"

    def descriptor_params(self) -> dict:
        return {}


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class SymbolicPoint:
    """A resolver plus a shift offset; all queries are pure."""

    resolver: object
    offset: int = 0

    @property
    def alphabet_size(self) -> int:
        return self.resolver.alphabet_size

    def symbol_at(self, q: int) -> int:
        if q < 0:
            raise OutOfRange(f"negative position {q}")
        return self.resolver.run_at(self.offset + q)[0]

    def shift(self, t: int) -> "SymbolicPoint":
        if t < 0:
            raise OutOfRange(f"cannot shift by {t}")
        if t == 0:
            return self
        return SymbolicPoint(self.resolver, self.offset + t)

    def _run_at(self, q: int) -> AbsRun:
        """Maximal run around q in point coordinates; start clamped at 0."""
        sym, start, end = self.resolver.run_at(self.offset + q)
        start = max(start - self.offset, 0)
        return sym, start, None if end is None else end - self.offset

    def run_locate(self, q: int) -> RunLocation:
        if q < 0:
            raise OutOfRange(f"negative position {q}")
        sym, start, end = self._run_at(q)
        if end is None:
            raise InfiniteRun(sym, start)
        return RunLocation(sym, start, end)

    def run_stream(self, start: int = 0) -> Iterator[StreamRun]:
        """Maximal runs from a position onward as (symbol, count|None) pairs."""
        q = start
        while True:
            sym, s, e = self._run_at(q)
            if e is None:
                yield sym, None
                return
            yield sym, e - q + 1
            q = e + 1

    def in_cylinder(self, cyl: Cylinder) -> bool:
        """Does this point start with the cylinder's word?

        Cost proportional to the word's run count.
        """
        pos = 0
        for sym, count in cyl.word.runs:
            psym, _start, pend = self._run_at(pos)
            if psym != sym:
                return False
            if pend is not None and pend < pos + count - 1:
                return False
            pos += count
        return True

    def prefix(self, length: int, cap: int = DEFAULT_MATERIALIZATION_CAP) -> RleWord:
        """First `length` symbols as a word; run count is bounded by cap."""
        if length < 0:
            raise OutOfRange(f"negative prefix length {length}")
        runs: list[Run] = []
        pos = 0
        while pos < length:
            if len(runs) >= cap:
                raise MaterializationRefused(
                    f"prefix would exceed {cap} runs"
                )
            sym, _s, e = self._run_at(pos)
            take = length - pos if e is None else min(e - pos + 1, length - pos)
            runs.append((sym, take))
            pos += take
        return make_word(runs, self.alphabet_size)

    def find_first(self, pattern: RleWord, horizon: int) -> int | None:
        """Least t <= horizon with the pattern occurring at t, else None."""
        return find_first(self.run_stream(), pattern, horizon)

    def eq_up_to(self, other: "SymbolicPoint", length: int) -> bool:
        """Do the first `length` symbols agree? Run-walk, no materialization."""
        pos = 0
        while pos < length:
            s1, _a1, e1 = self._run_at(pos)
            s2, _a2, e2 = other._run_at(pos)
            if s1 != s2:
                return False
            stop1 = length - 1 if e1 is None else min(e1, length - 1)
            stop2 = length - 1 if e2 is None else min(e2, length - 1)
            pos = min(stop1, stop2) + 1
        return True

    def depth_ladder(self) -> Iterator[int]:
        """Structurally natural prefix depths for this point.

        A point created by shifting loses block alignment, so it falls back
        to a doubling ladder.
        """
        if self.offset == 0 or isinstance(self.resolver, EventuallyPeriodicResolver):
            yield from self.resolver.depth_ladder()
        else:
            d = 1
            while True:
                yield d
                d *= 2

    def to_descriptor(self) -> dict:
        return {
            "kind": self.resolver.descriptor_kind(),
            "params": self.resolver.descriptor_params(),
            "offset": str(self.offset),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_descriptor(), separators=(",", ":"))


def ev_periodic_point(preperiod: RleWord, period: RleWord) -> SymbolicPoint:
    return SymbolicPoint(_canonical_ev_periodic(preperiod, period))


def constant_point(symbol: int, alphabet_size: int = 2) -> SymbolicPoint:
    empty = RleWord(alphabet_size, ())
    period = make_word([(symbol, 1)], alphabet_size)
    return ev_periodic_point(empty, period)


def point_from_descriptor(obj: dict) -> SymbolicPoint:
    """Inverse of SymbolicPoint.to_descriptor for the serializable kinds."""
    from . import construction as con
    from .words import from_obj

    if not isinstance(obj, dict):
        raise UnknownDescriptor("descriptor must be a dict")
    kind = obj.get("kind")
    params = obj.get("params", {})
    try:
        offset = int(obj.get("offset", "0"))
    except (TypeError, ValueError) as exc:
        raise UnknownDescriptor(f"bad offset {obj.get('offset')!r}") from exc
    if offset < 0:
        raise UnknownDescriptor(f"negative offset {offset}")
    if kind == "x":
        base = con.point_x()
    elif kind == "y":
        base = con.point_y()
    elif kind == "closing":
        try:
            level = int(params["n"])
        except (KeyError, TypeError, ValueError) as exc:
            raise UnknownDescriptor("closing descriptor needs integer n") from exc
        base = con.closing_point(level)
    elif kind == "ev_periodic":
        try:
            pre = from_obj(params["preperiod"])
            per = from_obj(params["period"])
        except KeyError as exc:
            raise UnknownDescriptor(f"ev_periodic descriptor missing {exc}") from exc
        base = ev_periodic_point(pre, per)
    elif kind == "block_family":
        # only the default chooser round-trips; custom callables do not
        try:
            alpha = int(params["alphabet"])
            salt = int(params["salt"])
        except (KeyError, TypeError, ValueError) as exc:
            raise UnknownDescriptor("block_family descriptor needs alphabet and salt") from exc
        base = SymbolicPoint(BlockFamilyResolver(alpha, salt))
    elif kind == "spike_train":
        base = SymbolicPoint(SpikeTrainResolver())
    else:
        raise UnknownDescriptor(f"unknown point kind {kind!r}")
    return base.shift(offset)


def point_from_json(payload: str) -> SymbolicPoint:
    return point_from_descriptor(json.loads(payload))
