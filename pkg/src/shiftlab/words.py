"""Run-length encoded words over small alphabets with exact integer counts.

A word is stored as a tuple of (symbol, count) runs in maximal-run normal
form: adjacent runs carry distinct symbols and every count is at least 1.
Counts are plain Python ints, so run lengths far beyond 2**64 are exact.
Matching and indexing cost is proportional to the number of runs involved,
never to the expanded length.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

# Expansion guard: operations that would materialize symbols (or, for
# structured prefixes, runs) beyond this count refuse instead of truncating.
DEFAULT_MATERIALIZATION_CAP = 10**6


class WordError(Exception):
    """Base class for word-algebra errors."""


class InvalidRun(WordError):
    """A run has a non-positive count or is otherwise malformed."""


class InvalidSymbol(WordError):
    """A symbol value falls outside the word's alphabet."""


class AlphabetMismatch(WordError):
    """Operands declare different alphabet sizes."""


class InvalidExponent(WordError):
    """Word power requires an exponent of at least 1."""


class OutOfRange(WordError):
    """A position lies outside the word."""


class InvalidPattern(WordError):
    """A pattern word is empty or not usable for matching."""


class MaterializationRefused(WordError):
    """An expansion would exceed the materialization cap."""


Run = tuple[int, int]


def _merge_runs(runs: Iterable[Run]) -> tuple[Run, ...]:
    out: list[list[int]] = []
    for sym, count in runs:
        if out and out[-1][0] == sym:
            out[-1][1] += count
        else:
            out.append([sym, count])
    return tuple((s, c) for s, c in out)


@dataclass(frozen=True, slots=True)
class RleWord:
    """Immutable RLE word. Build via make_word / concat / power, not directly."""

    alphabet_size: int
    runs: tuple[Run, ...]

    def length(self) -> int:
        return sum(c for _, c in self.runs)

    def run_count(self) -> int:
        return len(self.runs)

    def is_empty(self) -> bool:
        return not self.runs

    def symbol_at(self, position: int) -> int:
        """Symbol at 0-based position; walks runs, cost O(run count)."""
        if position < 0:
            raise OutOfRange(f"negative position {position}")
        seen = 0
        for sym, count in self.runs:
            seen += count
            if position < seen:
                return sym
        raise OutOfRange(f"position {position} beyond length {seen}")

    def expand(self, cap: int = DEFAULT_MATERIALIZATION_CAP) -> list[int]:
        """Materialize to a symbol list; refuses beyond cap symbols."""
        n = self.length()
        if n > cap:
            raise MaterializationRefused(f"expansion of {n} symbols exceeds cap {cap}")
        out: list[int] = []
        for sym, count in self.runs:
            out.extend([sym] * count)
        return out

    def text(self, cap: int = DEFAULT_MATERIALIZATION_CAP) -> str:
        """Expanded form as a digit string (alphabets up to 10 only)."""
        if self.alphabet_size > 10:
            raise InvalidSymbol("text form needs a single digit per symbol")
        n = self.length()
        if n > cap:
            raise MaterializationRefused(f"expansion of {n} symbols exceeds cap {cap}")
        return "".join(str(sym) * count for sym, count in self.runs)

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), separators=(",", ":"))

    def to_obj(self) -> dict:
        # Counts are serialized as decimal strings so arbitrary-precision
        # values survive any JSON reader untouched.
        return {
            "alphabet": self.alphabet_size,
            "runs": [[str(s), str(c)] for s, c in self.runs],
        }

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        inner = " ".join(f"{s}^{c}" for s, c in self.runs)
        return f"RleWord<{self.alphabet_size}>({inner})"


def make_word(runs: Iterable[Run], alphabet_size: int = 2) -> RleWord:
    """Normalize runs (merge equal neighbours) and validate counts/symbols."""
    if alphabet_size < 1:
        raise InvalidSymbol(f"alphabet size must be positive, got {alphabet_size}")
    checked: list[Run] = []
    for item in runs:
        try:
            sym, count = item
        except (TypeError, ValueError) as exc:
            raise InvalidRun(f"run {item!r} is not a (symbol, count) pair") from exc
        if not isinstance(sym, int) or isinstance(sym, bool):
            raise InvalidSymbol(f"symbol {sym!r} is not an int")
        if not isinstance(count, int) or isinstance(count, bool):
            raise InvalidRun(f"count {count!r} is not an int")
        if count < 1:
            raise InvalidRun(f"count {count} must be at least 1")
        if not 0 <= sym < alphabet_size:
            raise InvalidSymbol(f"symbol {sym} outside alphabet of size {alphabet_size}")
        checked.append((sym, count))
    return RleWord(alphabet_size, _merge_runs(checked))


def word_from_symbols(symbols: Iterable[int], alphabet_size: int = 2) -> RleWord:
    """RLE-encode an explicit symbol sequence."""
    runs = [(sym, len(list(grp))) for sym, grp in itertools.groupby(symbols)]
    return make_word(runs, alphabet_size)


def word_from_text(text: str, alphabet_size: int = 2) -> RleWord:
    """Parse a digit string like \"10011\" into a word."""
    return word_from_symbols((int(ch) for ch in text), alphabet_size)


def concat(*words: RleWord) -> RleWord:
    """Concatenate words, merging runs across the seams."""
    words = tuple(w for w in words)
    if not words:
        raise InvalidPattern("concat needs at least one word")
    alpha = words[0].alphabet_size
    for w in words[1:]:
        if w.alphabet_size != alpha:
            raise AlphabetMismatch(
                f"alphabet {w.alphabet_size} differs from {alpha}"
            )
    return RleWord(alpha, _merge_runs(itertools.chain.from_iterable(w.runs for w in words)))


def power(word: RleWord, exponent: int, cap: int = DEFAULT_MATERIALIZATION_CAP) -> RleWord:
    """k-fold repetition. Run count (not length) is bounded by the cap."""
    if exponent < 1:
        raise InvalidExponent(f"exponent must be at least 1, got {exponent}")
    if word.is_empty() or exponent == 1:
        return word
    runs = word.runs
    if len(runs) == 1:
        sym, count = runs[0]
        return RleWord(word.alphabet_size, ((sym, count * exponent),))
    if len(runs) * exponent > cap:
        raise MaterializationRefused(
            f"power would build {len(runs) * exponent} runs, cap is {cap}"
        )
    if runs[0][0] != runs[-1][0]:
        return RleWord(word.alphabet_size, runs * exponent)
    # First and last runs share a symbol, so interior copies merge at seams.
    head = runs[0]
    seam = (runs[0][0], runs[0][1] + runs[-1][1])
    body = runs[1:-1]
    out: list[Run] = [head]
    for _ in range(exponent - 1):
        out.extend(body)
        out.append(seam)
    out.extend(body)
    out.append(runs[-1])
    return RleWord(word.alphabet_size, tuple(out))


def from_json(payload: str) -> RleWord:
    return from_obj(json.loads(payload))


def from_obj(obj: object) -> RleWord:
    """Inverse of RleWord.to_obj; validates shape and normal form."""
    if not isinstance(obj, dict):
        raise InvalidRun(f"word object must be a dict, got {type(obj).__name__}")
    try:
        alpha = obj["alphabet"]
        raw = obj["runs"]
    except KeyError as exc:
        raise InvalidRun(f"word object missing key {exc}") from exc
    if not isinstance(alpha, int) or isinstance(alpha, bool):
        raise InvalidSymbol("alphabet must be an int")
    if not isinstance(raw, list):
        raise InvalidRun("runs must be a list")
    runs: list[Run] = []
    for pair in raw:
        if not isinstance(pair, list) or len(pair) != 2:
            raise InvalidRun(f"run entry {pair!r} is not a [symbol, count] pair")
        try:
            runs.append((int(pair[0]), int(pair[1])))
        except (TypeError, ValueError) as exc:
            raise InvalidRun(f"run entry {pair!r} is not decimal") from exc
    return make_word(runs, alpha)


# ---------------------------------------------------------------------------
# Factor matching over run sequences.
#
# Text runs may be streamed: an iterable of (symbol, count) pairs in maximal
# form, where a final count of None stands for an infinite run. A pattern
# with r >= 2 runs occurs at q exactly when its first run is a suffix of a
# text run, its interior runs match text runs exactly, and its last run is a
# prefix of a text run. A single-run pattern occurs anywhere inside a text
# run of the same symbol that is long enough.
# ---------------------------------------------------------------------------

StreamRun = tuple[int, int | None]


def _positioned(text_runs: Iterable[StreamRun]) -> Iterator[tuple[int, int, int | None]]:
    """Yield (symbol, start, end) with end None for an infinite final run."""
    pos = 0
    for sym, count in text_runs:
        if count is None:
            yield sym, pos, None
            return
        if count < 1:
            raise InvalidRun(f"count {count} must be at least 1")
        yield sym, pos, pos + count - 1
        pos += count


def iter_occurrences(
    text_runs: Iterable[StreamRun],
    pattern: RleWord,
    max_start: int,
) -> Iterator[tuple[int, int]]:
    """Yield disjoint ascending intervals [lo, hi] of occurrence starts <= max_start.

    The text run sequence must be maximal (adjacent runs distinct). For a
    single-run pattern each long-enough text run contributes a whole interval
    of start positions; a multi-run pattern anchors at single positions.
    """
    if pattern.is_empty():
        raise InvalidPattern("cannot match an empty pattern")
    pruns = pattern.runs
    if len(pruns) == 1:
        psym, pcount = pruns[0]
        for sym, start, end in _positioned(text_runs):
            if start > max_start:
                return
            if sym != psym:
                continue
            if end is None:
                yield start, max_start
                return
            last = end - pcount + 1
            if last >= start:
                yield start, min(last, max_start)
                if last >= max_start:
                    return
        return

    first_sym, first_count = pruns[0]
    interior = pruns[1:-1]
    last_sym, last_count = pruns[-1]
    need = len(pruns)
    # a window for an anchor q <= max_start only contains runs starting
    # within q + |pattern|, so the stream never needs to be pulled past
    # this limit; without it, long patterns would force the window to fill
    # with runs from astronomically deep in a structured text
    run_start_limit = max_start + pattern.length() - 1
    runs_iter = _positioned(text_runs)
    buf: deque[tuple[int, int, int | None]] = deque()
    done = False
    while True:
        while len(buf) < need and not done:
            nxt = next(runs_iter, None)
            if nxt is None or nxt[1] > run_start_limit:
                done = True
            else:
                buf.append(nxt)
                if nxt[2] is None:
                    done = True
        if len(buf) < need:
            # remaining anchors lack enough following runs to fit the pattern
            return
        sym, start, end = buf[0]
        if start > max_start:
            return
        if sym == first_sym and end is not None:
            # anchor: pattern's first run must be a suffix of this text run
            q = end - first_count + 1
            if q > max_start:
                return
            if q >= start:
                ok = True
                for j, (isym, icount) in enumerate(interior, start=1):
                    tsym, tstart, tend = buf[j]
                    if tend is None or tsym != isym or tend - tstart + 1 != icount:
                        ok = False
                        break
                if ok:
                    tsym, tstart, tend = buf[need - 1]
                    avail = None if tend is None else tend - tstart + 1
                    if tsym == last_sym and (avail is None or avail >= last_count):
                        yield q, q
        buf.popleft()


def find_first(
    text_runs: Iterable[StreamRun],
    pattern: RleWord,
    horizon: int,
) -> int | None:
    """Leftmost occurrence start <= horizon, or None."""
    if horizon < 0:
        return None
    for lo, _hi in iter_occurrences(text_runs, pattern, horizon):
        return lo
    return None


def find_first_in_word(text: RleWord, pattern: RleWord, horizon: int | None = None) -> int | None:
    """Leftmost occurrence of pattern inside a finite word."""
    if text.alphabet_size != pattern.alphabet_size:
        raise AlphabetMismatch(
            f"alphabet {pattern.alphabet_size} differs from {text.alphabet_size}"
        )
    limit = text.length() - pattern.length()
    if limit < 0:
        return None
    if horizon is not None:
        limit = min(limit, horizon)
    return find_first(iter(text.runs), pattern, limit)


def occurrence_intervals(
    text_runs: Iterable[StreamRun],
    pattern: RleWord,
    max_start: int,
) -> list[tuple[int, int]]:
    """All occurrence-start intervals with start <= max_start, ascending."""
    return list(iter_occurrences(text_runs, pattern, max_start))
