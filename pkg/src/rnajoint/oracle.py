"""Brute-force enumeration of secondary structures, shapes and joint structures.

Nothing in this module touches generating functions.  Diagrams are built by
recursive generation over the leftmost undecided vertex, then filtered by the
stack-length and zigzag conditions.

Vertices are 1-based: the top row is ``R_1..R_n`` and the bottom row is
``S_1..S_m``.  Exterior arcs are noncrossing, which for arcs drawn between the
two rows means order preserving: the ``r``-th exterior endpoint on the top is
joined to the ``r``-th exterior endpoint on the bottom.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .secondary import ParameterError, StructureParams

__all__ = [
    "CapacityError",
    "JointDiagram",
    "Block",
    "TightDecomposition",
    "Side",
    "stack_lengths",
    "exterior_stack_lengths",
    "generate_secondary",
    "enumerate_secondary",
    "is_zigzag_free",
    "generate_joint",
    "enumerate_joint",
    "generate_shapes",
    "enumerate_shapes",
    "tight_decompose",
]

SECONDARY_CAP = 22
JOINT_CAP = 16
SHAPE_CAP = 7


class CapacityError(ValueError):
    """Requested size is beyond the exhaustive-search cap."""


# --------------------------------------------------------------------------
# diagrams
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class JointDiagram:
    n: int
    m: int
    interior_top: frozenset = frozenset()
    interior_bottom: frozenset = frozenset()
    exterior: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "interior_top", frozenset(self.interior_top))
        object.__setattr__(self, "interior_bottom", frozenset(self.interior_bottom))
        object.__setattr__(self, "exterior", frozenset(self.exterior))

    @property
    def h(self) -> int:
        return len(self.exterior)

    def validate(self) -> None:
        """Raise ``ValueError`` unless this is a pre-structure (zigzags allowed)."""
        top_used = Counter()
        bottom_used = Counter()
        for side, arcs, size, used in (
            ("top", self.interior_top, self.n, top_used),
            ("bottom", self.interior_bottom, self.m, bottom_used),
        ):
            for i, j in arcs:
                if not 1 <= i < j <= size:
                    raise ValueError(f"{side} arc {(i, j)} out of range")
                used[i] += 1
                used[j] += 1
            if _has_crossing(arcs):
                raise ValueError(f"{side} arcs cross")
        for k, kk in self.exterior:
            if not (1 <= k <= self.n and 1 <= kk <= self.m):
                raise ValueError(f"exterior arc {(k, kk)} out of range")
            top_used[k] += 1
            bottom_used[kk] += 1
        if any(c > 1 for c in top_used.values()) or any(c > 1 for c in bottom_used.values()):
            raise ValueError("a vertex lies on more than one arc")
        ext = sorted(self.exterior)
        if any(b[1] <= a[1] for a, b in zip(ext, ext[1:])):
            raise ValueError("exterior arcs cross")

    def min_arc_length(self) -> int | None:
        lengths = [j - i for i, j in self.interior_top | self.interior_bottom]
        return min(lengths) if lengths else None


def _has_crossing(arcs) -> bool:
    arcs = sorted(arcs)
    for a in range(len(arcs)):
        i, j = arcs[a]
        for b in range(a + 1, len(arcs)):
            k, l = arcs[b]
            if k >= j:
                break
            if i < k < j < l:
                return True
    return False


def stack_lengths(arcs) -> list[int]:
    """Lengths of the maximal stacks ``(i, j), (i+1, j-1), ...`` in ``arcs``."""
    arcs = set(arcs)
    out = []
    for i, j in arcs:
        if (i - 1, j + 1) in arcs:
            continue
        length = 1
        while (i + length, j - length) in arcs:
            length += 1
        out.append(length)
    return out


def exterior_stack_lengths(exterior) -> list[int]:
    """Lengths of the maximal runs ``(k, k'), (k+1, k'+1), ...`` of exterior arcs."""
    arcs = set(exterior)
    out = []
    for k, kk in arcs:
        if (k - 1, kk - 1) in arcs:
            continue
        length = 1
        while (k + length, kk + length) in arcs:
            length += 1
        out.append(length)
    return out


# --------------------------------------------------------------------------
# one row: secondary structures with marked exterior endpoints
# --------------------------------------------------------------------------


def _row_structures(n: int, lam: int, marked: bool, perfect: bool = False):
    """All noncrossing arc sets on ``1..n`` with optional exterior marks.

    Each structure is ``(arcs, marks)``.  With ``perfect`` every vertex must be
    an arc endpoint or a mark.
    """

    @lru_cache(maxsize=None)
    def interval(i: int, j: int) -> tuple:
        if i > j:
            return (((), ()),)
        out = []
        if not perfect:
            out.extend(interval(i + 1, j))
        if marked:
            out.extend((arcs, (i,) + marks) for arcs, marks in interval(i + 1, j))
        for k in range(i + lam, j + 1):
            inner = interval(i + 1, k - 1)
            rest = interval(k + 1, j)
            for a1, m1 in inner:
                for a2, m2 in rest:
                    out.append((((i, k),) + a1 + a2, m1 + m2))
        return tuple(out)

    return interval(1, n)


def _stream_secondary(i: int, j: int, lam: int) -> Iterator[tuple]:
    # constant-memory recursion for counting large n
    if i > j:
        yield ()
        return
    yield from _stream_secondary(i + 1, j, lam)
    for k in range(i + lam, j + 1):
        for inner in _stream_secondary(i + 1, k - 1, lam):
            for rest in _stream_secondary(k + 1, j, lam):
                yield ((i, k),) + inner + rest


def generate_secondary(n: int, sigma: int = 1, lam: int = 2) -> Iterator[frozenset]:
    """Yield every sigma-canonical secondary structure on ``n`` vertices."""
    _check_secondary_args(n, sigma, lam)
    for arcs in _stream_secondary(1, n, lam):
        if all(s >= sigma for s in stack_lengths(arcs)):
            yield frozenset(arcs)


def _check_secondary_args(n, sigma, lam):
    if n < 0:
        raise ParameterError("n >= 0 violated")
    StructureParams(sigma=sigma, tau=1, lam=lam)


def enumerate_secondary(n: int, sigma: int = 1, lam: int = 2, cap: int = SECONDARY_CAP) -> int:
    """Count sigma-canonical secondary structures on ``n`` vertices with arc-length >= lam."""
    _check_secondary_args(n, sigma, lam)
    if n > cap:
        raise CapacityError(f"n={n} exceeds the exhaustive-search cap {cap}")
    return sum(1 for _ in generate_secondary(n, sigma, lam))


# --------------------------------------------------------------------------
# zigzags
# --------------------------------------------------------------------------


def _rank_interval(arc, marks) -> tuple[int, int]:
    """Half-open range of mark ranks strictly inside ``arc``."""
    i, j = arc
    lo = sum(1 for p in marks if p <= i)
    hi = sum(1 for p in marks if p < j)
    return lo, hi


def _intervals_zigzag_free(top_iv, bottom_iv) -> bool:
    for a_lo, a_hi in top_iv:
        for b_lo, b_hi in bottom_iv:
            if max(a_lo, b_lo) >= min(a_hi, b_hi):
                continue  # independent
            a_in_b = b_lo <= a_lo and a_hi <= b_hi
            b_in_a = a_lo <= b_lo and b_hi <= a_hi
            if not (a_in_b or b_in_a):
                return False
    return True


def is_zigzag_free(d: JointDiagram) -> bool:
    """True iff every dependent pair of arcs (one top, one bottom) is nested by subsumption.

    A top arc and a bottom arc are dependent when some exterior arc descends
    from both; the bottom arc is subsumed in the top arc when every exterior
    arc below it also lies below the top arc.
    """
    ext = sorted(d.exterior)
    top_marks = [k for k, _ in ext]
    bottom_marks = [kk for _, kk in ext]
    top_iv = {_rank_interval(a, top_marks) for a in d.interior_top}
    bottom_iv = {_rank_interval(b, bottom_marks) for b in d.interior_bottom}
    return _intervals_zigzag_free(top_iv, bottom_iv)


# --------------------------------------------------------------------------
# joint structures
# --------------------------------------------------------------------------


@dataclass
class Side:
    """Pre-digested row structure used by the pairing loop."""

    arcs: tuple
    marks: tuple
    intervals: frozenset
    adjacent: tuple  # adjacent[r]: marks r and r+1 are neighbouring vertices


@lru_cache(maxsize=128)
def _sides(n: int, sigma: int, lam: int, perfect: bool = False) -> dict[int, list[Side]]:
    by_h = defaultdict(list)
    for arcs, marks in _row_structures(n, lam, marked=True, perfect=perfect):
        if perfect:
            if any(s != 1 for s in stack_lengths(arcs)):
                continue
        elif any(s < sigma for s in stack_lengths(arcs)):
            continue
        ivs = frozenset(_rank_interval(a, marks) for a in arcs)
        if perfect and any(lo == hi for lo, hi in ivs):
            continue  # interior arc without exterior descendant
        adjacent = tuple(marks[r + 1] == marks[r] + 1 for r in range(len(marks) - 1))
        by_h[len(marks)].append(Side(arcs, marks, ivs, adjacent))
    return dict(by_h)


def _ext_runs_ok(top: Side, bottom: Side, tau: int, exact_one: bool) -> bool:
    run = 1
    for r in range(len(top.adjacent)):
        if top.adjacent[r] and bottom.adjacent[r]:
            run += 1
            if exact_one:
                return False
        else:
            if run < tau:
                return False
            run = 1
    return run >= tau or not top.marks


def _to_diagram(n, m, top: Side, bottom: Side) -> JointDiagram:
    return JointDiagram(n, m, top.arcs, bottom.arcs, tuple(zip(top.marks, bottom.marks)))


def _check_joint_size(n, m, cap):
    if n < 0 or m < 0:
        raise ParameterError("n >= 0 and m >= 0 violated")
    if n + m > cap:
        raise CapacityError(f"n+m={n + m} exceeds the exhaustive-search cap {cap}")


def generate_joint(
    n: int,
    m: int,
    params: StructureParams,
    *,
    zigzag_free: bool = True,
    cap: int = JOINT_CAP,
) -> Iterator[JointDiagram]:
    """Yield all joint structures on ``n`` top and ``m`` bottom vertices.

    With ``zigzag_free=False`` the zigzag filter is dropped and all
    pre-structures satisfying the stack and arc-length conditions are produced.
    """
    _check_joint_size(n, m, cap)
    tops = _sides(n, params.sigma, params.lam)
    bottoms = tops if m == n else _sides(m, params.sigma, params.lam)
    for h in sorted(set(tops) & set(bottoms)):
        for top in tops[h]:
            for bottom in bottoms[h]:
                if not _ext_runs_ok(top, bottom, params.tau, exact_one=False):
                    continue
                if zigzag_free and not _intervals_zigzag_free(top.intervals, bottom.intervals):
                    continue
                yield _to_diagram(n, m, top, bottom)


def enumerate_joint(
    n: int,
    m: int,
    params: StructureParams,
    *,
    zigzag_free: bool = True,
    cap: int = JOINT_CAP,
) -> dict[int, int]:
    """Counts of joint structures on ``(n, m)`` vertices, keyed by exterior-arc count."""
    _check_joint_size(n, m, cap)
    tops = _sides(n, params.sigma, params.lam)
    bottoms = tops if m == n else _sides(m, params.sigma, params.lam)
    counts: dict[int, int] = {}
    for h in sorted(set(tops) & set(bottoms)):
        total = 0
        for top in tops[h]:
            for bottom in bottoms[h]:
                if not _ext_runs_ok(top, bottom, params.tau, exact_one=False):
                    continue
                if zigzag_free and not _intervals_zigzag_free(top.intervals, bottom.intervals):
                    continue
                total += 1
        if total:
            counts[h] = total
    return counts


# --------------------------------------------------------------------------
# shapes
# --------------------------------------------------------------------------


def generate_shapes(max_arcs: int, cap: int = SHAPE_CAP) -> Iterator[tuple[tuple[int, int, int], JointDiagram]]:
    """Yield ``((t1, t2, h), diagram)`` for every shape with at most ``max_arcs`` arcs.

    A shape has every vertex on exactly one arc, no two parallel interior
    arcs, no two parallel exterior arcs, no zigzag, and every interior arc has
    an exterior arc below it.
    """
    if max_arcs < 0:
        raise ParameterError("max_arcs >= 0 violated")
    if max_arcs > cap:
        raise CapacityError(f"max_arcs={max_arcs} exceeds the exhaustive-search cap {cap}")
    rows = {}
    for t in range(max_arcs + 1):
        for h in range(max_arcs + 1 - t):
            size = 2 * t + h
            if size not in rows:
                rows[size] = _sides(size, 1, 1, perfect=True)
    for t1 in range(max_arcs + 1):
        for t2 in range(max_arcs + 1 - t1):
            for h in range(max_arcs + 1 - t1 - t2):
                n, m = 2 * t1 + h, 2 * t2 + h
                for top in rows[n].get(h, ()):
                    if len(top.arcs) != t1:
                        continue
                    for bottom in rows[m].get(h, ()):
                        if len(bottom.arcs) != t2:
                            continue
                        if not _ext_runs_ok(top, bottom, 1, exact_one=True):
                            continue
                        if not _intervals_zigzag_free(top.intervals, bottom.intervals):
                            continue
                        yield (t1, t2, h), _to_diagram(n, m, top, bottom)


def enumerate_shapes(max_arcs: int, cap: int = SHAPE_CAP) -> dict[tuple[int, int, int], int]:
    """Shape counts keyed by ``(t1, t2, h)``: top arcs, bottom arcs, exterior arcs."""
    counts: Counter = Counter()
    for key, _ in generate_shapes(max_arcs, cap):
        counts[key] += 1
    return dict(counts)


# --------------------------------------------------------------------------
# tight decomposition
# --------------------------------------------------------------------------

TIGHT_KINDS = ("circle", "down", "up", "square")


@dataclass(frozen=True)
class Block:
    """One piece of a decomposition.

    ``kind`` is ``"circle"`` (a lone exterior arc), ``"down"`` (the top row is
    spanned by an arc, the bottom row is not), ``"up"`` (the bottom row is
    spanned), ``"square"`` (both are), or ``"segment"`` (a maximal stretch of
    one row without exterior arcs).  Spans are inclusive ``(first, last)``
    vertex indices, ``None`` when the block does not use that row.  For tight
    blocks other than ``circle``, ``inner`` decomposes what is left after
    removing the spanning arcs.
    """

    kind: str
    top: tuple[int, int] | None
    bottom: tuple[int, int] | None
    interior_top: frozenset = frozenset()
    interior_bottom: frozenset = frozenset()
    exterior: frozenset = frozenset()
    inner: "TightDecomposition | None" = None

    @property
    def is_tight(self) -> bool:
        return self.kind in TIGHT_KINDS

    def all_arcs(self) -> tuple[set, set, set]:
        top, bottom, ext = set(self.interior_top), set(self.interior_bottom), set(self.exterior)
        if self.inner is not None:
            t, b, e = self.inner.all_arcs()
            top |= t
            bottom |= b
            ext |= e
        return top, bottom, ext


@dataclass(frozen=True)
class TightDecomposition:
    """Left-to-right sequence of tight blocks and secondary segments."""

    top: tuple[int, int] | None
    bottom: tuple[int, int] | None
    blocks: tuple[Block, ...] = field(default_factory=tuple)

    def all_arcs(self) -> tuple[set, set, set]:
        top, bottom, ext = set(), set(), set()
        for b in self.blocks:
            t, bb, e = b.all_arcs()
            top |= t
            bottom |= bb
            ext |= e
        return top, bottom, ext

    def tight_blocks(self) -> list[Block]:
        return [b for b in self.blocks if b.is_tight]

    def segments(self, recursive: bool = True) -> list[Block]:
        out = []
        for b in self.blocks:
            if b.kind == "segment":
                out.append(b)
            elif recursive and b.inner is not None:
                out.extend(b.inner.segments())
        return out

    def reassemble(self, n: int, m: int) -> JointDiagram:
        top, bottom, ext = self.all_arcs()
        return JointDiagram(n, m, top, bottom, ext)


def _span(lo, hi):
    return (lo, hi) if lo <= hi else None


def _closure(ext_arc, top_arcs, bottom_arcs, exterior):
    """Smallest block containing ``ext_arc`` and closed under ancestors and descendants."""
    t_lo = t_hi = ext_arc[0]
    b_lo = b_hi = ext_arc[1]
    while True:
        changed = False
        for k, kk in exterior:
            if t_lo <= k <= t_hi or b_lo <= kk <= b_hi:
                if k < t_lo or k > t_hi or kk < b_lo or kk > b_hi:
                    t_lo, t_hi = min(t_lo, k), max(t_hi, k)
                    b_lo, b_hi = min(b_lo, kk), max(b_hi, kk)
                    changed = True
        inside = [(k, kk) for k, kk in exterior if t_lo <= k <= t_hi]
        for i, j in top_arcs:
            if any(i < k < j for k, _ in inside) and (i < t_lo or j > t_hi):
                t_lo, t_hi = min(t_lo, i), max(t_hi, j)
                changed = True
        for i, j in bottom_arcs:
            if any(i < kk < j for _, kk in inside) and (i < b_lo or j > b_hi):
                b_lo, b_hi = min(b_lo, i), max(b_hi, j)
                changed = True
        if not changed:
            return (t_lo, t_hi), (b_lo, b_hi)


def _within(arcs, span):
    if span is None:
        return frozenset()
    lo, hi = span
    return frozenset((i, j) for i, j in arcs if lo <= i and j <= hi)


def _decompose(top_span, bottom_span, top_arcs, bottom_arcs, exterior) -> TightDecomposition:
    tight = []
    seen = set()
    for e in sorted(exterior):
        if e in seen:
            continue
        ts, bs = _closure(e, top_arcs, bottom_arcs, exterior)
        members = frozenset(x for x in exterior if ts[0] <= x[0] <= ts[1])
        seen |= members
        tight.append((ts, bs, members))

    blocks = []
    t_cursor = top_span[0] if top_span else 1
    b_cursor = bottom_span[0] if bottom_span else 1
    t_end = top_span[1] if top_span else 0
    b_end = bottom_span[1] if bottom_span else 0

    def emit_segments(t_stop, b_stop):
        if t_cursor <= t_stop:
            s = (t_cursor, t_stop)
            blocks.append(Block("segment", s, None, _within(top_arcs, s)))
        if b_cursor <= b_stop:
            s = (b_cursor, b_stop)
            blocks.append(Block("segment", None, s, interior_bottom=_within(bottom_arcs, s)))

    for ts, bs, members in tight:
        emit_segments(ts[0] - 1, bs[0] - 1)
        blocks.append(_tight_block(ts, bs, members, top_arcs, bottom_arcs))
        t_cursor, b_cursor = ts[1] + 1, bs[1] + 1
    emit_segments(t_end, b_end)
    return TightDecomposition(_span(*top_span) if top_span else None,
                              _span(*bottom_span) if bottom_span else None,
                              tuple(blocks))


def _tight_block(ts, bs, members, top_arcs, bottom_arcs) -> Block:
    if ts[0] == ts[1] and bs[0] == bs[1]:
        return Block("circle", ts, bs, exterior=members)
    top_spans = ts in top_arcs
    bottom_spans = bs in bottom_arcs
    if top_spans and bottom_spans:
        kind = "square"
    elif top_spans:
        kind = "down"
    elif bottom_spans:
        kind = "up"
    else:
        raise ValueError(f"block {ts}x{bs} is not tight; is the diagram zigzag-free?")
    in_top = (ts[0] + 1, ts[1] - 1) if top_spans else ts
    in_bottom = (bs[0] + 1, bs[1] - 1) if bottom_spans else bs
    inner_top = _within(top_arcs, in_top) - {ts}
    inner_bottom = _within(bottom_arcs, in_bottom) - {bs}
    inner = _decompose(in_top, in_bottom, inner_top, inner_bottom, members)
    return Block(
        kind,
        ts,
        bs,
        frozenset({ts}) if top_spans else frozenset(),
        frozenset({bs}) if bottom_spans else frozenset(),
        inner=inner,
    )


def tight_decompose(d: JointDiagram) -> TightDecomposition:
    """Split a joint structure into tight structures and maximal secondary segments.

    Tight blocks are decomposed again after removing their spanning arcs, so
    the result is a tree; its top level partitions both rows.
    """
    d.validate()
    if not is_zigzag_free(d):
        raise ValueError("diagram contains a zigzag")
    return _decompose(
        (1, d.n) if d.n else None,
        (1, d.m) if d.m else None,
        d.interior_top,
        d.interior_bottom,
        d.exterior,
    )
