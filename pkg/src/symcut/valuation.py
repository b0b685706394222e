"""Exact piecewise-constant measures and the Robertson-Webb query oracle.

Every coordinate and every measure value is a :class:`fractions.Fraction`.
Intervals are half-open ``[lo, hi)``; since all measures are non-atomic this
never changes a value.

Two query layers live here:

* the primitive queries :func:`measure_eval` and :func:`measure_cut`, which are
  the only operations that touch a :class:`QueryLedger`;
* the subcake queries :func:`subcake_eval` and :func:`subcake_cut`, which answer
  questions about ``[x, y] ∩ X`` for a finite union of intervals ``X`` using at
  most one (eval) or two (cut) primitive queries plus whatever the player has
  already revealed, as recorded in a :class:`GapCache`.
"""
from __future__ import annotations

import re
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, InfeasibleCutError, InvariantViolation, SchemaError

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*-?\d+\s*(/\s*\d+\s*)?$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (or an int) into a Fraction.

    Floats and decimal strings are rejected so that files stay exact.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool) or not isinstance(text, (int, str)):
        raise SchemaError(f"expected a rational string like '1/3', got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not _RATIONAL_RE.match(text):
        raise SchemaError(f"not an exact rational: {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError as exc:
        raise SchemaError(f"zero denominator in {text!r}") from exc


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not (ZERO <= self.lo <= self.hi <= ONE):
            raise DomainError(f"bad interval [{self.lo}, {self.hi}]")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __repr__(self):
        return f"[{self.lo}, {self.hi})"


@dataclass(frozen=True)
class Subcake:
    """A finite disjoint union of intervals, kept sorted and maximally merged."""

    intervals: tuple[Interval, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "intervals", _normalize(self.intervals))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence]) -> "Subcake":
        return cls(tuple(Interval(Fraction(a), Fraction(b)) for a, b in pairs))

    @classmethod
    def full(cls) -> "Subcake":
        return cls((Interval(ZERO, ONE),))

    @classmethod
    def empty(cls) -> "Subcake":
        return cls(())

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __repr__(self):
        if not self.intervals:
            return "Subcake(∅)"
        return "Subcake(" + " ∪ ".join(repr(iv) for iv in self.intervals) + ")"

    def pairs(self) -> list[tuple[Fraction, Fraction]]:
        return [(iv.lo, iv.hi) for iv in self.intervals]

    @property
    def lo(self) -> Fraction:
        if not self.intervals:
            raise DomainError("empty subcake has no minimum")
        return self.intervals[0].lo

    @property
    def hi(self) -> Fraction:
        if not self.intervals:
            raise DomainError("empty subcake has no maximum")
        return self.intervals[-1].hi

    @property
    def length(self) -> Fraction:
        return sum((iv.length for iv in self.intervals), ZERO)

    def union(self, *others: "Subcake") -> "Subcake":
        ivs = list(self.intervals)
        for o in others:
            ivs.extend(o.intervals)
        return Subcake(tuple(ivs))

    def intersect_interval(self, x, y) -> "Subcake":
        """``[x, y] ∩ self``."""
        x, y = Fraction(x), Fraction(y)
        out = []
        for iv in self.intervals:
            lo, hi = max(iv.lo, x), min(iv.hi, y)
            if lo < hi:
                out.append(Interval(lo, hi))
        return Subcake(tuple(out))

    def intersect(self, other: "Subcake") -> "Subcake":
        out: list[Interval] = []
        for iv in other.intervals:
            out.extend(self.intersect_interval(iv.lo, iv.hi).intervals)
        return Subcake(tuple(out))

    def difference(self, other: "Subcake") -> "Subcake":
        out = []
        for iv in self.intervals:
            pieces = [(iv.lo, iv.hi)]
            for cut in other.intervals:
                nxt = []
                for lo, hi in pieces:
                    if cut.hi <= lo or cut.lo >= hi:
                        nxt.append((lo, hi))
                        continue
                    if lo < cut.lo:
                        nxt.append((lo, cut.lo))
                    if cut.hi < hi:
                        nxt.append((cut.hi, hi))
                pieces = nxt
            out.extend(Interval(lo, hi) for lo, hi in pieces)
        return Subcake(tuple(out))

    def contains_interval(self, x, y) -> bool:
        if x >= y:
            return True
        return any(iv.lo <= x and y <= iv.hi for iv in self.intervals)

    def is_disjoint(self, other: "Subcake") -> bool:
        return not self.intersect(other)

    def endpoints(self) -> list[Fraction]:
        pts = []
        for iv in self.intervals:
            pts.extend((iv.lo, iv.hi))
        return pts

    def gaps(self) -> list[tuple[Fraction, Fraction]]:
        """Holes ``[t_j, s_{j+1}]`` between consecutive intervals."""
        return [
            (a.hi, b.lo) for a, b in zip(self.intervals, self.intervals[1:])
        ]

    # Helpers for the subcake queries.
    def clip_left(self, x: Fraction) -> Fraction | None:
        """Smallest point of the closure at or right of ``x`` that can start a piece."""
        for iv in self.intervals:
            if x < iv.hi:
                return max(x, iv.lo)
        return None

    def clip_right(self, y: Fraction) -> Fraction | None:
        for iv in reversed(self.intervals):
            if y > iv.lo:
                return min(y, iv.hi)
        return None

    def index_of(self, x: Fraction) -> int:
        """Index ``j`` with ``s_j <= x < t_j``."""
        for j, iv in enumerate(self.intervals):
            if iv.lo <= x < iv.hi:
                return j
        raise DomainError(f"{x} is not inside {self!r}")


def _normalize(intervals) -> tuple[Interval, ...]:
    ivs = sorted(
        (iv if isinstance(iv, Interval) else Interval(*iv)) for iv in intervals
    )
    out: list[Interval] = []
    for iv in ivs:
        if iv.lo == iv.hi:
            continue
        if out and iv.lo < out[-1].hi:
            raise DomainError(f"overlapping intervals {out[-1]!r} and {iv!r}")
        if out and iv.lo == out[-1].hi:
            out[-1] = Interval(out[-1].lo, iv.hi)
        else:
            out.append(iv)
    return tuple(out)


@dataclass(frozen=True)
class Valuation:
    """A probability measure on [0, 1] with piecewise-constant density.

    ``segments`` holds ``(lo, hi, density)`` triples. The constructor stores a
    canonical form (zero-density and empty segments dropped, equal neighbours
    merged), so ``==`` compares measures, not encodings. ``name`` is a label
    and takes no part in equality.
    """

    segments: tuple[tuple[Fraction, Fraction, Fraction], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        canon: list[tuple[Fraction, Fraction, Fraction]] = []
        prev_hi = ZERO
        for seg in self.segments:
            lo, hi, d = (Fraction(v) for v in seg)
            if not (ZERO <= lo <= hi <= ONE):
                raise SchemaError(f"segment [{lo}, {hi}] outside [0, 1]")
            if lo < prev_hi:
                raise SchemaError("density segments must be sorted and disjoint")
            if d < 0:
                raise SchemaError(f"negative density {d}")
            prev_hi = hi
            if lo == hi or d == 0:
                continue
            if canon and canon[-1][1] == lo and canon[-1][2] == d:
                canon[-1] = (canon[-1][0], hi, d)
            else:
                canon.append((lo, hi, d))
        total = sum(((hi - lo) * d for lo, hi, d in canon), ZERO)
        if total != ONE:
            raise SchemaError(f"valuation {self.name!r} has total mass {total}, not 1")
        object.__setattr__(self, "segments", tuple(canon))
        los = [lo for lo, _, _ in canon]
        cum_start, cum_end, acc = [], [], ZERO
        for lo, hi, d in canon:
            cum_start.append(acc)
            acc += (hi - lo) * d
            cum_end.append(acc)
        object.__setattr__(self, "_los", los)
        object.__setattr__(self, "_cum_start", cum_start)
        object.__setattr__(self, "_cum_end", cum_end)

    @classmethod
    def uniform(cls, lo=0, hi=1, name: str = "") -> "Valuation":
        lo, hi = Fraction(lo), Fraction(hi)
        return cls(((lo, hi, 1 / (hi - lo)),), name=name)

    @classmethod
    def lebesgue(cls, name: str = "") -> "Valuation":
        return cls.uniform(0, 1, name=name)

    @classmethod
    def from_masses(cls, pieces, name: str = "") -> "Valuation":
        """Build from ``(lo, hi, mass)`` triples; mass is spread uniformly."""
        segs = []
        for lo, hi, m in pieces:
            lo, hi, m = Fraction(lo), Fraction(hi), Fraction(m)
            segs.append((lo, hi, m / (hi - lo) if m else ZERO))
        return cls(tuple(segs), name=name)

    def renamed(self, name: str) -> "Valuation":
        return Valuation(self.segments, name=name)

    def cdf(self, x) -> Fraction:
        """``μ([0, x])``."""
        x = Fraction(x)
        idx = bisect_right(self._los, x) - 1
        if idx < 0:
            return ZERO
        lo, hi, d = self.segments[idx]
        return self._cum_start[idx] + d * (min(x, hi) - lo)

    def mass(self, a, b) -> Fraction:
        return self.cdf(b) - self.cdf(a)

    def leftmost_cut(self, x, a) -> Fraction:
        """Smallest ``y >= x`` with ``μ([x, y]) = a``."""
        x, a = Fraction(x), Fraction(a)
        if a < 0:
            raise DomainError(f"negative cut value {a}")
        if a == 0:
            return x
        target = self.cdf(x) + a
        idx = bisect_left(self._cum_end, target)
        if idx >= len(self.segments):
            raise InfeasibleCutError(
                f"cannot cut value {a} from {x}: only {ONE - self.cdf(x)} remains"
            )
        lo, _, d = self.segments[idx]
        return lo + (target - self._cum_start[idx]) / d

    def density_at(self, x) -> Fraction:
        idx = bisect_right(self._los, Fraction(x)) - 1
        if idx >= 0 and x < self.segments[idx][1]:
            return self.segments[idx][2]
        return ZERO

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "density": [
                {"from": format_rational(lo), "to": format_rational(hi), "weight": format_rational(d)}
                for lo, hi, d in self.segments
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "Valuation":
        if not isinstance(obj, dict) or "density" not in obj:
            raise SchemaError("valuation must be an object with a 'density' list")
        name = obj.get("name", "")
        if not isinstance(name, str):
            raise SchemaError("valuation name must be a string")
        segs = []
        for entry in obj["density"]:
            try:
                segs.append(
                    (parse_rational(entry["from"]), parse_rational(entry["to"]), parse_rational(entry["weight"]))
                )
            except (KeyError, TypeError) as exc:
                raise SchemaError(f"bad density entry {entry!r}") from exc
        try:
            return cls(tuple(segs), name=name)
        except DomainError as exc:
            raise SchemaError(str(exc)) from exc


@dataclass(frozen=True)
class Query:
    kind: str  # "eval" or "cut"
    player: int | None
    args: tuple[Fraction, Fraction]
    answer: Fraction


@dataclass
class QueryLedger:
    """Record of the primitive queries issued during one protocol run."""

    trace: list[Query] = field(default_factory=list)

    @property
    def eval_count(self) -> int:
        return sum(1 for q in self.trace if q.kind == "eval")

    @property
    def cut_count(self) -> int:
        return sum(1 for q in self.trace if q.kind == "cut")

    @property
    def total(self) -> int:
        return len(self.trace)

    def __len__(self):
        return len(self.trace)

    def to_json(self) -> dict:
        return {"eval": self.eval_count, "cut": self.cut_count}


class GapCache:
    """What one player has revealed so far, as exact interval measures.

    Every answered query tells us ``μ([lo, hi])`` for two points. Those facts
    are kept in a weighted union-find over points, so the measure of any
    interval whose endpoints are linked by a chain of known facts can be read
    off without a new query. ``entries`` keeps the raw facts for auditing.
    """

    def __init__(self):
        self._parent: dict[Fraction, Fraction] = {}
        # potential of a point relative to its parent: cdf(p) - cdf(parent)
        self._offset: dict[Fraction, Fraction] = {}
        self.entries: dict[tuple[Fraction, Fraction], Fraction] = {}

    @classmethod
    def for_full_cake(cls) -> "GapCache":
        cache = cls()
        cache.record(ZERO, ONE, ONE)
        return cache

    def _find(self, p: Fraction) -> tuple[Fraction, Fraction]:
        if p not in self._parent:
            self._parent[p] = p
            self._offset[p] = ZERO
            return p, ZERO
        path = []
        while self._parent[p] != p:
            path.append(p)
            p = self._parent[p]
        root = p
        # compress, accumulating offsets from the top of the path down
        acc = ZERO
        for q in reversed(path):
            acc += self._offset[q]
            self._parent[q] = root
            self._offset[q] = acc
        return root, (self._offset[path[0]] if path else ZERO)

    def record(self, lo, hi, value) -> None:
        lo, hi, value = Fraction(lo), Fraction(hi), Fraction(value)
        if lo > hi:
            lo, hi, value = hi, lo, -value
        self.entries[(lo, hi)] = value
        r_lo, p_lo = self._find(lo)
        r_hi, p_hi = self._find(hi)
        if r_lo == r_hi:
            if p_hi - p_lo != value:
                raise InvariantViolation(
                    f"inconsistent fact μ([{lo}, {hi}]) = {value}, expected {p_hi - p_lo}"
                )
            return
        # attach r_hi below r_lo: cdf(r_hi) - cdf(r_lo) = value + p_lo - p_hi
        self._parent[r_hi] = r_lo
        self._offset[r_hi] = value + p_lo - p_hi

    def get(self, lo, hi) -> Fraction | None:
        lo, hi = Fraction(lo), Fraction(hi)
        if lo == hi:
            return ZERO
        if lo not in self._parent or hi not in self._parent:
            return None
        r_lo, p_lo = self._find(lo)
        r_hi, p_hi = self._find(hi)
        if r_lo != r_hi:
            return None
        return p_hi - p_lo

    def __contains__(self, key) -> bool:
        return self.get(*key) is not None

    def known_points(self) -> list[Fraction]:
        return sorted(self._parent)


def _check_unit(*xs: Fraction) -> None:
    for x in xs:
        if not (ZERO <= x <= ONE):
            raise DomainError(f"coordinate {x} outside [0, 1]")


def measure_eval(v: Valuation, a, b, ledger: QueryLedger, player: int | None = None) -> Fraction:
    """Primitive eval query: ``μ_v([a, b])``; counted in ``ledger``."""
    a, b = Fraction(a), Fraction(b)
    _check_unit(a, b)
    if a > b:
        raise DomainError(f"eval bounds out of order: {a} > {b}")
    ans = v.mass(a, b)
    ledger.trace.append(Query("eval", player, (a, b), ans))
    return ans


def measure_cut(v: Valuation, x, a, ledger: QueryLedger, player: int | None = None) -> Fraction:
    """Primitive cut query: the leftmost ``y`` with ``μ_v([x, y]) = a``."""
    x, a = Fraction(x), Fraction(a)
    _check_unit(x)
    y = v.leftmost_cut(x, a)
    ledger.trace.append(Query("cut", player, (x, a), y))
    return y


def subcake_eval(
    v: Valuation,
    X: Subcake,
    x,
    y,
    cache: GapCache,
    ledger: QueryLedger,
    player: int | None = None,
) -> Fraction:
    """``μ_v([x, y] ∩ X)`` with at most one primitive eval.

    The window is first shrunk to the closure of ``X``; its raw measure comes
    from the cache or from one eval, and the known gap measures inside it are
    subtracted.
    """
    x, y = Fraction(x), Fraction(y)
    if x > y:
        raise DomainError(f"eval bounds out of order: {x} > {y}")
    lo, hi = X.clip_left(x), X.clip_right(y)
    if lo is None or hi is None or lo >= hi:
        return ZERO
    raw = cache.get(lo, hi)
    if raw is None:
        raw = measure_eval(v, lo, hi, ledger, player)
        cache.record(lo, hi, raw)
    for t, s in X.gaps():
        if lo <= t and s <= hi:
            gap = cache.get(t, s)
            if gap is None:
                raise InvariantViolation(f"gap [{t}, {s}] unknown to player {player}")
            raw -= gap
    return raw


def subcake_cut(
    v: Valuation,
    X: Subcake,
    x,
    a,
    cache: GapCache,
    ledger: QueryLedger,
    player: int | None = None,
) -> Fraction:
    """Leftmost ``y`` with ``μ_v([x, y] ∩ X) = a``, with at most one eval and one cut."""
    x, a = Fraction(x), Fraction(a)
    if a < 0:
        raise DomainError(f"negative cut value {a}")
    if a == 0:
        return x
    start = X.clip_left(x)
    if start is None:
        raise InfeasibleCutError(f"nothing of the subcake lies right of {x}")
    k = X.index_of(start)
    t = X.intervals[k].hi
    head = cache.get(start, t)
    if head is None:
        head = measure_eval(v, start, t, ledger, player)
        cache.record(start, t, head)
    if a <= head:
        y = measure_cut(v, start, a, ledger, player)
        cache.record(start, y, a)
        return y
    acc = head
    for iv in X.intervals[k + 1:]:
        m = cache.get(iv.lo, iv.hi)
        if m is None:
            raise InvariantViolation(f"interval {iv!r} unknown to player {player}")
        if acc + m >= a:
            y = measure_cut(v, iv.lo, a - acc, ledger, player)
            cache.record(iv.lo, y, a - acc)
            return y
        acc += m
    raise InfeasibleCutError(f"cannot cut {a} from {x}: only {acc} remains in the subcake")


def oracle_direct_measure(v: Valuation, X: Subcake) -> Fraction:
    """Ground-truth ``μ_v(X)`` by direct integration; never touches a ledger."""
    return sum((v.mass(iv.lo, iv.hi) for iv in X.intervals), ZERO)
