"""Lazy concrete realizations of terms, with decidable point queries.

Every term is realized as a countable order whose points carry
hereditary codes: integers for the atoms, pairs for sums and products,
and (position, inner) pairs for shuffles, where positions are nodes of
the infinite binary tree in infix order and the block replacing a
position is chosen by its depth modulo the number of blocks.  Each
depth class is dense in the tree order, so this is a fixed concrete
realization of the dense partition.

Comparison, neighbourhood facts, betweenness, fair enumeration, the
back-and-forth construction, and a consistency checker against the
symbolic profiles are all computed from the codes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache, cmp_to_key

from .profiles import profile
from .terms import (
    Empty,
    Finite,
    Omega,
    OmegaStar,
    OrderTerm,
    Product,
    Shuffle,
    Single,
    Sum,
    Zeta,
    desugar,
)
from .textio import print_term

PointCode = object


class InvalidCodeError(ValueError):
    pass


@dataclass(frozen=True)
class PointFacts:
    is_min: bool
    is_max: bool
    has_successor: bool
    has_predecessor: bool


def _check(t: OrderTerm, c: PointCode) -> None:
    match t:
        case Single():
            ok = c == 0
        case Finite(n):
            ok = isinstance(c, int) and 0 <= c < n
        case Omega() | OmegaStar():
            ok = isinstance(c, int) and c >= 0
        case Zeta():
            ok = isinstance(c, int)
        case Sum(a, b):
            if not (isinstance(c, tuple) and len(c) == 2 and c[0] in (0, 1)):
                raise InvalidCodeError(f"bad sum code {c!r}")
            _check(a if c[0] == 0 else b, c[1])
            return
        case Product(x, y):
            if not (isinstance(c, tuple) and len(c) == 2):
                raise InvalidCodeError(f"bad product code {c!r}")
            _check(x, c[0])
            _check(y, c[1])
            return
        case Shuffle(blocks):
            if not (
                isinstance(c, tuple)
                and len(c) == 2
                and isinstance(c[0], str)
                and all(ch in "LR" for ch in c[0])
            ):
                raise InvalidCodeError(f"bad shuffle code {c!r}")
            _check(blocks[len(c[0]) % len(blocks)], c[1])
            return
        case _:
            raise InvalidCodeError("the empty order has no points")
    if not ok:
        raise InvalidCodeError(f"code {c!r} is not a point of {print_term(t)}")


def _pos_cmp(p: str, q: str) -> int:
    # Infix order on binary tree nodes: at the first divergence or at
    # the end of the shorter string, L < (stop) < R.
    for a, b in zip(p, q):
        if a != b:
            return -1 if a == "L" else 1
    if len(p) == len(q):
        return 0
    if len(p) < len(q):
        return 1 if q[len(p)] == "L" else -1
    return -1 if p[len(q)] == "L" else 1


def _sign(d: int) -> int:
    return (d > 0) - (d < 0)


def _cmp(t: OrderTerm, a: PointCode, b: PointCode) -> int:
    match t:
        case Single():
            return 0
        case Finite() | Omega() | Zeta():
            return _sign(a - b)
        case OmegaStar():
            return _sign(b - a)
        case Sum(left, right):
            if a[0] != b[0]:
                return _sign(a[0] - b[0])
            return _cmp(left if a[0] == 0 else right, a[1], b[1])
        case Product(x, y):
            c = _cmp(x, a[0], b[0])
            return c if c else _cmp(y, a[1], b[1])
        case Shuffle(blocks):
            c = _pos_cmp(a[0], b[0])
            if c:
                return c
            return _cmp(blocks[len(a[0]) % len(blocks)], a[1], b[1])
    raise AssertionError


def compare(t: OrderTerm, a: PointCode, b: PointCode) -> int:
    """Total-order comparison: -1, 0, or 1."""
    t = desugar(t)
    _check(t, a)
    _check(t, b)
    return _cmp(t, a, b)


def _facts(t: OrderTerm, c: PointCode) -> PointFacts:
    match t:
        case Single():
            return PointFacts(True, True, False, False)
        case Finite(n):
            return PointFacts(c == 0, c == n - 1, c < n - 1, c > 0)
        case Omega():
            return PointFacts(c == 0, False, True, c > 0)
        case OmegaStar():
            return PointFacts(False, c == 0, c > 0, True)
        case Zeta():
            return PointFacts(False, False, True, True)
        case Sum(left, right):
            side, inner = c
            if side == 0:
                f = _facts(left, inner)
                return PointFacts(
                    f.is_min,
                    False,
                    f.has_successor or (f.is_max and profile(right).has_left_endpoint),
                    f.has_predecessor,
                )
            f = _facts(right, inner)
            return PointFacts(
                False,
                f.is_max,
                f.has_successor,
                f.has_predecessor or (f.is_min and profile(left).has_right_endpoint),
            )
        case Product(x, y):
            cx, cy = c
            fx, fy = _facts(x, cx), _facts(y, cy)
            py = profile(y)
            return PointFacts(
                fx.is_min and fy.is_min,
                fx.is_max and fy.is_max,
                fy.has_successor
                or (fy.is_max and fx.has_successor and py.has_left_endpoint),
                fy.has_predecessor
                or (fy.is_min and fx.has_predecessor and py.has_right_endpoint),
            )
        case Shuffle(blocks):
            pos, inner = c
            f = _facts(blocks[len(pos) % len(blocks)], inner)
            # The positions around any copy are dense, so neighbours
            # exist only inside the copy.
            return PointFacts(False, False, f.has_successor, f.has_predecessor)
    raise AssertionError


def point_profile(t: OrderTerm, c: PointCode) -> PointFacts:
    """Exact endpoint/neighbour facts about the point c in the whole order."""
    t = desugar(t)
    _check(t, c)
    return _facts(t, c)


def _least(t: OrderTerm) -> PointCode:
    match t:
        case Single() | Finite() | Omega() | OmegaStar() | Zeta():
            return 0
        case Sum(a, _):
            return (0, _least(a))
        case Product(x, y):
            return (_least(x), _least(y))
        case Shuffle(blocks):
            return ("", _least(blocks[0]))
    raise AssertionError


def _above(t: OrderTerm, c: PointCode) -> PointCode | None:
    # Some point strictly above c; None exactly when c is the maximum.
    match t:
        case Single():
            return None
        case Finite(n):
            return c + 1 if c < n - 1 else None
        case Omega():
            return c + 1
        case OmegaStar():
            return c - 1 if c > 0 else None
        case Zeta():
            return c + 1
        case Sum(a, b):
            side, inner = c
            if side == 0:
                r = _above(a, inner)
                return (0, r) if r is not None else (1, _least(b))
            r = _above(b, inner)
            return (1, r) if r is not None else None
        case Product(x, y):
            cx, cy = c
            r = _above(y, cy)
            if r is not None:
                return (cx, r)
            rx = _above(x, cx)
            return (rx, _least(y)) if rx is not None else None
        case Shuffle(blocks):
            pos, inner = c
            r = _above(blocks[len(pos) % len(blocks)], inner)
            if r is not None:
                return (pos, r)
            nxt = pos + "R"
            return (nxt, _least(blocks[len(nxt) % len(blocks)]))
    raise AssertionError


def _below(t: OrderTerm, c: PointCode) -> PointCode | None:
    match t:
        case Single():
            return None
        case Finite() | Omega():
            return c - 1 if c > 0 else None
        case OmegaStar():
            return c + 1
        case Zeta():
            return c - 1
        case Sum(a, b):
            side, inner = c
            if side == 1:
                r = _below(b, inner)
                return (1, r) if r is not None else (0, _least(a))
            r = _below(a, inner)
            return (0, r) if r is not None else None
        case Product(x, y):
            cx, cy = c
            r = _below(y, cy)
            if r is not None:
                return (cx, r)
            rx = _below(x, cx)
            return (rx, _least(y)) if rx is not None else None
        case Shuffle(blocks):
            pos, inner = c
            r = _below(blocks[len(pos) % len(blocks)], inner)
            if r is not None:
                return (pos, r)
            nxt = pos + "L"
            return (nxt, _least(blocks[len(nxt) % len(blocks)]))
    raise AssertionError


def _pos_between(lo: str, hi: str) -> str:
    # Shortest tree node strictly between lo and hi in infix order.
    m = ""
    while True:
        if _pos_cmp(m, lo) <= 0:
            m += "R"
        elif _pos_cmp(m, hi) >= 0:
            m += "L"
        else:
            return m


def _between(t: OrderTerm, a: PointCode, b: PointCode) -> PointCode | None:
    match t:
        case Finite() | Omega() | Zeta():
            return a + 1 if b - a >= 2 else None
        case OmegaStar():
            return b + 1 if a - b >= 2 else None
        case Sum(left, right):
            (sa, ia), (sb, ib) = a, b
            if sa == sb:
                r = _between(left if sa == 0 else right, ia, ib)
                return (sa, r) if r is not None else None
            r = _above(left, ia)
            if r is not None:
                return (0, r)
            r = _below(right, ib)
            if r is not None:
                return (1, r)
            return None
        case Product(x, y):
            (xa, ya), (xb, yb) = a, b
            if xa == xb:
                r = _between(y, ya, yb)
                return (xa, r) if r is not None else None
            r = _above(y, ya)
            if r is not None:
                return (xa, r)
            m = _between(x, xa, xb)
            if m is not None:
                return (m, _least(y))
            r = _below(y, yb)
            if r is not None:
                return (xb, r)
            return None
        case Shuffle(blocks):
            (pa, ia), (pb, ib) = a, b
            if pa == pb:
                r = _between(blocks[len(pa) % len(blocks)], ia, ib)
                return (pa, r) if r is not None else None
            m = _pos_between(pa, pb)
            return (m, _least(blocks[len(m) % len(blocks)]))
    raise AssertionError


def between(t: OrderTerm, a: PointCode, b: PointCode) -> PointCode | None:
    """A point strictly between a and b, or None when b is the successor of a.

    The choice is deterministic: the first candidate in the canonical
    enumeration order of the relevant component.
    """
    t = desugar(t)
    _check(t, a)
    _check(t, b)
    if _cmp(t, a, b) != -1:
        raise InvalidCodeError("between requires a < b")
    return _between(t, a, b)


# ---------------------------------------------------------------------------
# fair enumeration


def _strings(length: int):
    for tup in itertools.product("LR", repeat=length):
        yield "".join(tup)


@cache
def _codes_of_weight(t: OrderTerm, w: int) -> tuple:
    match t:
        case Single():
            return (0,) if w == 0 else ()
        case Finite(n):
            return (w,) if w < n else ()
        case Omega() | OmegaStar():
            return (w,)
        case Zeta():
            return (0,) if w == 0 else (-w, w)
        case Sum(a, b):
            out = [(0, c) for c in _codes_of_weight(a, w)]
            if w >= 1:
                out.extend((1, c) for c in _codes_of_weight(b, w - 1))
            return tuple(out)
        case Product(x, y):
            out = []
            for wx in range(w + 1):
                xs = _codes_of_weight(x, wx)
                if not xs:
                    continue
                ys = _codes_of_weight(y, w - wx)
                out.extend((cx, cy) for cx in xs for cy in ys)
            return tuple(out)
        case Shuffle(blocks):
            k = len(blocks)
            out = []
            for length in range(w + 1):
                inner = _codes_of_weight(blocks[length % k], w - length)
                if not inner:
                    continue
                for pos in _strings(length):
                    out.extend((pos, c) for c in inner)
            return tuple(out)
    raise AssertionError


def _enum_iter(t: OrderTerm):
    size = profile(t).size
    emitted = 0
    w = 0
    while size is None or emitted < size:
        for c in _codes_of_weight(t, w):
            yield c
            emitted += 1
        w += 1


def enumerate_points(t: OrderTerm, n: int) -> list[PointCode]:
    """First n codes in weight order (value for naturals, |k| with the
    negative first for integers, length then L<R for positions, summed
    left-to-right for composites).  Prefix-stable in n; returns fewer
    than n codes only for finite orders with fewer points."""
    t = desugar(t)
    if t == Empty():
        return []
    return list(itertools.islice(_enum_iter(t), n))


# ---------------------------------------------------------------------------
# back-and-forth


@dataclass(frozen=True)
class PartialIso:
    pairs: tuple[tuple[PointCode, PointCode], ...]


@dataclass(frozen=True)
class MatchFailure:
    round: int
    reason: str


def _extend(tgt: OrderTerm, anchors: list[tuple], src_term: OrderTerm,
            src_code: PointCode) -> PointCode | None:
    # anchors: (src_code, tgt_code) pairs sorted on the source side.
    if not anchors:
        return _least(tgt)
    lo = 0
    hi = len(anchors)
    while lo < hi:
        mid = (lo + hi) // 2
        if _cmp(src_term, anchors[mid][0], src_code) < 0:
            lo = mid + 1
        else:
            hi = mid
    if lo == 0:
        return _below(tgt, anchors[0][1])
    if lo == len(anchors):
        return _above(tgt, anchors[-1][1])
    a = anchors[lo - 1][1]
    b = anchors[lo][1]
    return _between(tgt, a, b)


def _fresh_codes(t: OrderTerm, used: set):
    for c in _enum_iter(t):
        if c not in used:
            yield c


def back_and_forth(x: OrderTerm, y: OrderTerm, rounds: int,
                   block_map: dict[int, int] | None = None) -> PartialIso | MatchFailure:
    """Grow a partial isomorphism by alternating least-unmatched choices.

    Odd rounds pick the least-enumerated unmatched point of x, even
    rounds of y; the image is chosen with endpoint/betweenness queries
    on the other side.  With ``block_map`` both terms must be shuffles
    and matched points must carry corresponding block indices (matching
    whole copies and recursively matching their interiors).  Returns
    the matched pairs, or the first round at which no order-consistent
    extension exists.
    """
    x = desugar(x)
    y = desugar(y)
    if block_map is not None:
        return _colored(x, y, rounds, block_map)
    pairs: list[tuple[PointCode, PointCode]] = []
    sorted_pairs: list[tuple[PointCode, PointCode]] = []
    used = (set(), set())
    gens = (_fresh_codes(x, used[0]), _fresh_codes(y, used[1]))
    for r in range(1, rounds + 1):
        side = 0 if r % 2 == 1 else 1
        src_term, tgt_term = (x, y) if side == 0 else (y, x)
        try:
            src = next(gens[side])
        except StopIteration:
            break
        anchors = [(p[side], p[1 - side]) for p in sorted_pairs]
        tgt = _extend(tgt_term, anchors, src_term, src)
        if tgt is None:
            return MatchFailure(r, "no order-consistent image exists")
        used[side].add(src)
        used[1 - side].add(tgt)
        pair = (src, tgt) if side == 0 else (tgt, src)
        pairs.append(pair)
        sorted_pairs.append(pair)
        sorted_pairs.sort(key=cmp_to_key(lambda p, q: _cmp(x, p[0], q[0])))
    return PartialIso(tuple(pairs))


def _pos_find(lo: str | None, hi: str | None, residue: int, k: int,
              used: set[str]) -> str:
    # Some unused tree position with the required depth residue,
    # strictly between lo and hi; depth residues are dense, so a
    # bounded search suffices.
    for length in range(0, 64):
        if length % k != residue:
            continue
        for pos in _strings(length):
            if pos in used:
                continue
            if lo is not None and _pos_cmp(pos, lo) <= 0:
                continue
            if hi is not None and _pos_cmp(pos, hi) >= 0:
                continue
            return pos
    raise InvalidCodeError("no coloured position found within depth 64")


def _colored(x: OrderTerm, y: OrderTerm, rounds: int,
             block_map: dict[int, int]) -> PartialIso | MatchFailure:
    if not isinstance(x, Shuffle) or not isinstance(y, Shuffle):
        raise InvalidCodeError("coloured matching needs two shuffle terms")
    kx, ky = len(x.blocks), len(y.blocks)
    if sorted(block_map) != list(range(kx)) or sorted(block_map.values()) != list(range(ky)):
        raise InvalidCodeError("block_map must biject the block indices")
    inv = {v: k for k, v in block_map.items()}
    copy_of = ({}, {})  # matched position -> its image, per side
    sub: dict[tuple[str, str], list[tuple[PointCode, PointCode]]] = {}
    pairs: list[tuple[PointCode, PointCode]] = []
    used = (set(), set())
    gens = (_fresh_codes(x, used[0]), _fresh_codes(y, used[1]))
    for r in range(1, rounds + 1):
        side = 0 if r % 2 == 1 else 1
        src_shuffle, tgt_shuffle = (x, y) if side == 0 else (y, x)
        fwd = block_map if side == 0 else inv
        k_src, k_tgt = (kx, ky) if side == 0 else (ky, kx)
        src = next(gens[side])
        pos, inner = src
        src_block = src_shuffle.blocks[len(pos) % k_src]
        if pos in copy_of[side]:
            tpos = copy_of[side][pos]
            key = (pos, tpos) if side == 0 else (tpos, pos)
            # sub[key] holds inner pairs oriented x -> y
            anchors = [(p[side], p[1 - side]) for p in sub[key]]
            anchors.sort(key=cmp_to_key(lambda p, q: _cmp(src_block, p[0], q[0])))
            tgt_block = tgt_shuffle.blocks[len(tpos) % k_tgt]
            j = _extend(tgt_block, anchors, src_block, inner)
            if j is None:
                return MatchFailure(r, "no order-consistent image inside the matched copy")
        else:
            neighbours = sorted(copy_of[side], key=cmp_to_key(_pos_cmp))
            lo_img = hi_img = None
            for p in neighbours:
                if _pos_cmp(p, pos) < 0:
                    lo_img = copy_of[side][p]
                else:
                    hi_img = copy_of[side][p]
                    break
            tpos = _pos_find(lo_img, hi_img, fwd[len(pos) % k_src], k_tgt,
                             set(copy_of[1 - side]))
            tgt_block = tgt_shuffle.blocks[len(tpos) % k_tgt]
            j = _least(tgt_block)
            copy_of[side][pos] = tpos
            copy_of[1 - side][tpos] = pos
            key = (pos, tpos) if side == 0 else (tpos, pos)
            sub[key] = []
        tgt = (tpos, j)
        used[side].add(src)
        used[1 - side].add(tgt)
        pairs.append((src, tgt) if side == 0 else (tgt, src))
        sub[key].append((inner, j) if side == 0 else (j, inner))
    return PartialIso(tuple(pairs))


# ---------------------------------------------------------------------------
# cross-checking symbolic claims against sampled points


@dataclass(frozen=True)
class Outcome:
    predicate: str
    status: str  # consistent | counterexample | witness_found | witness_not_found
    witness: str | None = None


@dataclass
class CheckReport:
    term: str
    budget: int
    outcomes: tuple[Outcome, ...]
    failed: bool
    points_sampled: int

    def to_text(self) -> str:
        lines = [f"check {self.term} budget={self.budget} points={self.points_sampled}"]
        for o in self.outcomes:
            line = f"  {o.predicate}: {o.status}"
            if o.witness is not None:
                line += f" {o.witness}"
            lines.append(line)
        lines.append(f"result: {'FAILED' if self.failed else 'ok'}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "term": self.term,
            "budget": self.budget,
            "outcomes": [
                {"predicate": o.predicate, "status": o.status}
                | ({"witness": o.witness} if o.witness is not None else {})
                for o in self.outcomes
            ],
            "failed": self.failed,
        }


def cross_check(t: OrderTerm, budget: int) -> CheckReport:
    """Verify every profile claim about t against the first `budget` points.

    Universal claims must have no sampled counterexample; each negated
    universal claim is searched for a witness among the samples.
    """
    t = desugar(t)
    text = print_term(t)
    p = profile(t)
    pts = enumerate_points(t, budget)
    facts = [(c, _facts(t, c)) for c in pts]
    outcomes: list[Outcome] = []

    def universal(name: str, bad) -> None:
        for c, f in facts:
            if bad(c, f):
                outcomes.append(Outcome(name, "counterexample", str(c)))
                return
        outcomes.append(Outcome(name, "consistent"))

    def witness(name: str, good) -> None:
        for c, f in facts:
            if good(c, f):
                outcomes.append(Outcome(name, "witness_found", str(c)))
                return
        outcomes.append(Outcome(name, "witness_not_found"))

    ordered = sorted(pts, key=cmp_to_key(lambda a, b: _cmp(t, a, b)))

    if p.has_left_endpoint:
        witness("left_endpoint", lambda c, f: f.is_min)
        mins = [c for c, f in facts if f.is_min]
        if ordered and mins != [ordered[0]] and mins:
            outcomes.append(Outcome("left_endpoint_position", "counterexample", str(mins)))
    else:
        universal("left_endpoint", lambda c, f: f.is_min)
    if p.has_right_endpoint:
        witness("right_endpoint", lambda c, f: f.is_max)
        maxs = [c for c, f in facts if f.is_max]
        if ordered and maxs != [ordered[-1]] and maxs:
            outcomes.append(Outcome("right_endpoint_position", "counterexample", str(maxs)))
    else:
        universal("right_endpoint", lambda c, f: f.is_max)

    if p.succ_pair_free:
        universal("successor_pairs", lambda c, f: f.has_successor or f.has_predecessor)
        gap = None
        for a, b in zip(ordered, ordered[1:]):
            if _between(t, a, b) is None:
                gap = (a, b)
                break
        if gap is None:
            outcomes.append(Outcome("density_between", "consistent"))
        else:
            outcomes.append(Outcome("density_between", "counterexample", str(gap)))
    else:
        witness("successor_pairs", lambda c, f: f.has_successor)

    if p.succ_complete:
        universal("successor_complete", lambda c, f: not f.is_max and not f.has_successor)
    else:
        witness("successor_complete", lambda c, f: not f.is_max and not f.has_successor)
    if p.pred_complete:
        universal("predecessor_complete", lambda c, f: not f.is_min and not f.has_predecessor)
    else:
        witness("predecessor_complete", lambda c, f: not f.is_min and not f.has_predecessor)

    expected = budget if p.size is None else min(p.size, budget)
    if len(pts) == expected:
        outcomes.append(Outcome("size", "consistent"))
    else:
        outcomes.append(Outcome("size", "counterexample", f"{len(pts)} points"))

    failed = any(o.status == "counterexample" for o in outcomes)
    return CheckReport(text, budget, tuple(outcomes), failed, len(pts))
