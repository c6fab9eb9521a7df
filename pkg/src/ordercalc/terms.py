"""Term algebra for countable linear order types.

Terms denote order types built from the finite orders, N, N*, and Z by
sums, lexicographic products, shuffles, and reversal.  All values are
immutable and hashable, and every operation in this package is a pure
function, so terms may be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache


class OrderTerm:
    """Base class for order-type expressions."""

    __slots__ = ()


@dataclass(frozen=True)
class Empty(OrderTerm):
    """The empty order 0."""


@dataclass(frozen=True)
class Single(OrderTerm):
    """The one-point order 1."""


@dataclass(frozen=True)
class Finite(OrderTerm):
    """A finite order with n >= 2 points (0 and 1 have their own nodes)."""

    n: int


@dataclass(frozen=True)
class Omega(OrderTerm):
    """The natural numbers N in their usual order."""


@dataclass(frozen=True)
class OmegaStar(OrderTerm):
    """The reversed natural numbers N*."""


@dataclass(frozen=True)
class Zeta(OrderTerm):
    """The integers Z."""


@dataclass(frozen=True)
class Sum(OrderTerm):
    """left followed by right."""

    left: OrderTerm
    right: OrderTerm


@dataclass(frozen=True)
class Product(OrderTerm):
    """index-many consecutive copies of fiber, ordered lexicographically.

    ``Product(A, X)`` is "A copies of X": pairs (a, x) compared by a
    first, then x.
    """

    index: OrderTerm
    fiber: OrderTerm


@dataclass(frozen=True)
class Shuffle(OrderTerm):
    """A dense mixture of the block orders along the rationals.

    Each block type replaces a dense set of rational points; up to
    isomorphism the result does not depend on the chosen partition.
    """

    blocks: tuple[OrderTerm, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(self.blocks))


@dataclass(frozen=True)
class Reverse(OrderTerm):
    """The mirror image of body."""

    body: OrderTerm


class ValidationError(ValueError):
    """A term violates a structural invariant.

    ``kind`` is one of ``EmptyShuffleBlock``, ``EmptyBlockList``,
    ``BadFinite``; ``subterm`` is the offending node.
    """

    def __init__(self, kind: str, subterm: OrderTerm, message: str):
        super().__init__(message)
        self.kind = kind
        self.subterm = subterm


def validate(t: OrderTerm) -> None:
    """Check all constructor invariants recursively; raise on the first hit."""
    match t:
        case Empty() | Single() | Omega() | OmegaStar() | Zeta():
            pass
        case Finite(n):
            if not isinstance(n, int) or n < 2:
                raise ValidationError("BadFinite", t, f"Finite needs n >= 2, got {n!r}")
        case Sum(a, b):
            validate(a)
            validate(b)
        case Product(x, y):
            validate(x)
            validate(y)
        case Shuffle(blocks):
            if not blocks:
                raise ValidationError("EmptyBlockList", t, "shuffle needs at least one block")
            for b in blocks:
                if b == Empty():
                    raise ValidationError("EmptyShuffleBlock", t, "shuffle blocks must be non-empty orders")
                validate(b)
        case Reverse(body):
            validate(body)
        case _:
            raise TypeError(f"not an OrderTerm: {t!r}")


@cache
def desugar(t: OrderTerm) -> OrderTerm:
    """Eliminate Reverse nodes and interior Empty subterms.

    The result denotes an isomorphic order, contains no Reverse node,
    and contains Empty only as the whole term.  Blocks that reduce to
    the empty order are dropped from shuffles (replacing points of a
    dense class by nothing just deletes those points).
    """
    match t:
        case Reverse(body):
            return _reverse(desugar(body))
        case Sum(a, b):
            a, b = desugar(a), desugar(b)
            if a == Empty():
                return b
            if b == Empty():
                return a
            return Sum(a, b)
        case Product(x, y):
            x, y = desugar(x), desugar(y)
            if x == Empty() or y == Empty():
                return Empty()
            return Product(x, y)
        case Shuffle(blocks):
            kept = tuple(b for b in map(desugar, blocks) if b != Empty())
            return Shuffle(kept) if kept else Empty()
        case _:
            return t


def _reverse(t: OrderTerm) -> OrderTerm:
    # t is already desugared; push reversal down to the atoms.
    match t:
        case Empty() | Single() | Finite() | Zeta():
            return t
        case Omega():
            return OmegaStar()
        case OmegaStar():
            return Omega()
        case Sum(a, b):
            return Sum(_reverse(b), _reverse(a))
        case Product(x, y):
            return Product(_reverse(x), _reverse(y))
        case Shuffle(blocks):
            return Shuffle(tuple(_reverse(b) for b in blocks))
    raise AssertionError(f"unreachable: {t!r}")
