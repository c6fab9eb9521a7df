"""Deciders for self-similarity, left absorption, and squares.

An order is self-similar when it contains two disjoint convex copies of
itself; among countable orders these are exactly the ones of the shape
L + Q[blocks] + R with L a final segment of a block (or empty) and R an
initial segment of a block (or empty).  Which orders A satisfy
A*X = X is then determined by whether L, R, and the junction R + L
match blocks, which splits the absorbing orders into eight classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .canon import (
    CanonicalForm,
    Equality,
    Fin,
    Scat,
    Shuf,
    StuckError,
    UnsupportedError,
    _concat_components,
    canonicalize,
    cf_equal,
    cf_to_term,
    is_final_segment,
    is_initial_segment,
)
from .profiles import DenseClass, profile
from .terms import Empty, OrderTerm, Product, Single, desugar

_ONE = CanonicalForm((Scat((Fin(1),)),))


@dataclass(frozen=True)
class Decomposition:
    """The shape L + Q[blocks] + R; left/right are empty forms when absent."""

    left: CanonicalForm
    blocks: tuple[CanonicalForm, ...]
    right: CanonicalForm


@dataclass(frozen=True)
class NotSelfSimilar:
    reason: str


@dataclass(frozen=True)
class SelfSimilarNotAbsorbing:
    reason: str
    decomposition: Decomposition


@dataclass(frozen=True)
class AbsorptionCase:
    """One of the eight absorbing shapes, with its witness decomposition.

    1: L = R = empty.  2: L is a block, R empty.  3: mirror of 2.
    4: L and R are blocks but R + L is not.  5-8: R + L is a block and
    (neither / only L / only R / both) of L, R are blocks.
    """

    case: int
    decomposition: Decomposition


AbsorptionClass = NotSelfSimilar | SelfSimilarNotAbsorbing | AbsorptionCase


class Spectrum(Enum):
    ALL = "All"
    HAS_LEFT = "HasLeft"
    HAS_RIGHT = "HasRight"
    EXACTLY_ONE_Q_ONE_OR_1 = "ExactlyOneQOneOr1"
    BOTH_ENDS_SUCC_PRED_COMPLETE = "BothEndsSuccPredComplete"
    BOTH_ENDS_SUCC_COMPLETE = "BothEndsSuccComplete"
    BOTH_ENDS_PRED_COMPLETE = "BothEndsPredComplete"
    BOTH_ENDS = "BothEnds"
    TRIVIAL_ONLY = "TrivialOnly"


def decompose(t: OrderTerm) -> Decomposition | None:
    """Split the canonical form of t as L + Q[blocks] + R.

    Returns None when the canonical component sequence is not
    scattered + shuffle + scattered.  Raises UnsupportedError when
    canonicalization is stuck or the form is not tame.
    """
    try:
        cf = canonicalize(t)
    except StuckError as e:
        raise UnsupportedError(f"cannot canonicalize: {e}") from e
    if not cf.tame:
        raise UnsupportedError("canonical form has scattered parts outside the tame fragment")
    shuf_at = [i for i, c in enumerate(cf.components) if isinstance(c, Shuf)]
    if len(shuf_at) != 1:
        return None
    i = shuf_at[0]
    return Decomposition(
        CanonicalForm(cf.components[:i]),
        cf.components[i].blocks,
        CanonicalForm(cf.components[i + 1:]),
    )


@dataclass(frozen=True)
class SelfSimilarity:
    holds: bool
    decomposition: Decomposition | None
    reason: str | None

    def __bool__(self) -> bool:
        return self.holds


def is_self_similar(t: OrderTerm) -> SelfSimilarity:
    """Does t contain two disjoint convex copies of itself?"""
    d = decompose(t)
    if d is None:
        return SelfSimilarity(False, None, "canonical form is not scattered + shuffle + scattered")
    if d.left.components and not any(is_final_segment(d.left, b) for b in d.blocks):
        return SelfSimilarity(False, d, "left part is not a final segment of any block")
    if d.right.components and not any(is_initial_segment(d.right, b) for b in d.blocks):
        return SelfSimilarity(False, d, "right part is not an initial segment of any block")
    return SelfSimilarity(True, d, None)


def _matches_block(part: CanonicalForm, blocks) -> bool:
    return any(cf_equal(part, b) is Equality.EQUAL for b in blocks)


def classify_absorption(t: OrderTerm) -> AbsorptionClass:
    """Decide whether t is left-absorbing and, if so, which class it is in."""
    ss = is_self_similar(t)
    if not ss:
        return NotSelfSimilar(ss.reason)
    d = ss.decomposition
    l_empty = not d.left.components
    r_empty = not d.right.components
    if l_empty and r_empty:
        return AbsorptionCase(1, d)
    b_left = not l_empty and _matches_block(d.left, d.blocks)
    b_right = not r_empty and _matches_block(d.right, d.blocks)
    if r_empty:
        if b_left:
            return AbsorptionCase(2, d)
        return SelfSimilarNotAbsorbing("left part is not a block", d)
    if l_empty:
        if b_right:
            return AbsorptionCase(3, d)
        return SelfSimilarNotAbsorbing("right part is not a block", d)
    junction = CanonicalForm(_concat_components(d.right.components, d.left.components))
    b_junction = _matches_block(junction, d.blocks)
    if not b_junction:
        if b_left and b_right:
            return AbsorptionCase(4, d)
        return SelfSimilarNotAbsorbing(
            "neither the junction nor both of the outer parts match blocks", d
        )
    if b_left and b_right:
        return AbsorptionCase(8, d)
    if b_left:
        return AbsorptionCase(6, d)
    if b_right:
        return AbsorptionCase(7, d)
    return AbsorptionCase(5, d)


def absorbs(a: OrderTerm, x: OrderTerm) -> bool:
    """Does A*X denote the same order type as X?"""
    a = desugar(a)
    x = desugar(x)
    if a == Empty():
        return x == Empty()
    if x == Empty():
        return True
    if a == Single():
        return True
    pa = profile(a)
    match classify_absorption(x):
        case AbsorptionCase(1, _):
            return True
        case AbsorptionCase(2, _):
            return pa.has_left_endpoint
        case AbsorptionCase(3, _):
            return pa.has_right_endpoint
        case AbsorptionCase(4, _):
            return pa.dense_class is DenseClass.ONE_Q_ONE or pa.size == 1
        case AbsorptionCase(5, _):
            return (pa.has_left_endpoint and pa.has_right_endpoint
                    and pa.succ_complete and pa.pred_complete)
        case AbsorptionCase(6, _):
            return pa.has_left_endpoint and pa.has_right_endpoint and pa.succ_complete
        case AbsorptionCase(7, _):
            return pa.has_left_endpoint and pa.has_right_endpoint and pa.pred_complete
        case AbsorptionCase(8, _):
            return pa.has_left_endpoint and pa.has_right_endpoint
        case _:
            return pa.size == 1


def spectrum_description(x: OrderTerm) -> Spectrum:
    """Which orders A satisfy A*X = X, as a class description."""
    match classify_absorption(desugar(x)):
        case AbsorptionCase(n, _):
            return {
                1: Spectrum.ALL,
                2: Spectrum.HAS_LEFT,
                3: Spectrum.HAS_RIGHT,
                4: Spectrum.EXACTLY_ONE_Q_ONE_OR_1,
                5: Spectrum.BOTH_ENDS_SUCC_PRED_COMPLETE,
                6: Spectrum.BOTH_ENDS_SUCC_COMPLETE,
                7: Spectrum.BOTH_ENDS_PRED_COMPLETE,
                8: Spectrum.BOTH_ENDS,
            }[n]
        case _:
            return Spectrum.TRIVIAL_ONLY


def is_square(x: OrderTerm) -> bool:
    """Is x isomorphic to its lexicographic square x*x?"""
    x = desugar(x)
    if x in (Empty(), Single()):
        return True
    return absorbs(x, x)


def square_two_endpoints(x: OrderTerm) -> bool | None:
    """Square test specialized to orders with both endpoints.

    Returns None when x is missing an endpoint.  Evaluated directly on
    the decomposition: the block-level successor and predecessor
    requirements are read in the ambient order, so "every point has a
    successor" means successor-complete with no maximum.
    """
    p = profile(x)
    if not (p.has_left_endpoint and p.has_right_endpoint):
        return None
    if p.size == 1:
        return True
    d = decompose(x)
    if d is None:
        return False
    blocks = d.blocks
    b_left = _matches_block(d.left, blocks)
    b_right = _matches_block(d.right, blocks)
    junction = CanonicalForm(_concat_components(d.right.components, d.left.components))
    b_junction = _matches_block(junction, blocks)
    bp = [profile(cf_to_term(b)) for b in blocks]
    if d.left == _ONE and d.right == _ONE and blocks == (_ONE,):
        return True
    if not b_junction:
        return False
    if not b_left and not b_right:
        return all(q.succ_complete and not q.has_right_endpoint
                   and q.pred_complete and not q.has_left_endpoint for q in bp)
    if b_left and not b_right:
        return all(q.succ_complete and not q.has_right_endpoint for q in bp)
    if b_right and not b_left:
        return all(q.pred_complete and not q.has_left_endpoint for q in bp)
    return True


def absorption_case_predicates(t: OrderTerm) -> list[bool]:
    """Evaluate the eight case conditions independently (for exclusivity checks)."""
    d = decompose(t)
    if d is None:
        return [False] * 8
    l_empty = not d.left.components
    r_empty = not d.right.components
    b_left = not l_empty and _matches_block(d.left, d.blocks)
    b_right = not r_empty and _matches_block(d.right, d.blocks)
    if l_empty or r_empty:
        b_junction = False
    else:
        junction = CanonicalForm(_concat_components(d.right.components, d.left.components))
        b_junction = _matches_block(junction, d.blocks)
    return [
        l_empty and r_empty,
        b_left and r_empty,
        b_right and l_empty,
        b_left and b_right and not b_junction,
        b_junction and not b_left and not b_right,
        b_junction and b_left and not b_right,
        b_junction and b_right and not b_left,
        b_junction and b_left and b_right,
    ]
