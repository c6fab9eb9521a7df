import pytest
from hypothesis import given

from conftest import GOLDEN, T, term_strategy
from ordercalc import (
    Empty,
    Finite,
    Omega,
    OmegaStar,
    Product,
    Reverse,
    Shuffle,
    Single,
    Sum,
    ValidationError,
    Zeta,
    desugar,
    validate,
)


def test_validate_ok():
    validate(Shuffle((Zeta(),)))


@pytest.mark.parametrize(
    "term, kind",
    [
        (Shuffle((Empty(),)), "EmptyShuffleBlock"),
        (Shuffle(()), "EmptyBlockList"),
        (Finite(1), "BadFinite"),
        (Finite(0), "BadFinite"),
        (Sum(Omega(), Shuffle((Empty(),))), "EmptyShuffleBlock"),
    ],
)
def test_validate_errors(term, kind):
    with pytest.raises(ValidationError) as exc:
        validate(term)
    assert exc.value.kind == kind


def test_desugar_pushes_reversal_down():
    t = Reverse(Sum(Omega(), Shuffle((Zeta(),))))
    assert desugar(t) == Sum(Shuffle((Zeta(),)), OmegaStar())


def test_desugar_involution():
    assert desugar(Reverse(Reverse(Zeta()))) == Zeta()


def test_desugar_empty_product():
    assert desugar(Product(Empty(), Omega())) == Empty()
    assert desugar(Product(Omega(), Empty())) == Empty()
    assert desugar(Sum(Empty(), Zeta())) == Zeta()


def test_desugar_drops_computed_empty_blocks():
    t = Shuffle((Product(Empty(), Omega()), Zeta()))
    assert desugar(t) == Shuffle((Zeta(),))
    assert desugar(Shuffle((Product(Empty(), Omega()),))) == Empty()


def test_reverse_of_atoms():
    assert desugar(Reverse(Omega())) == OmegaStar()
    assert desugar(Reverse(OmegaStar())) == Omega()
    assert desugar(Reverse(Zeta())) == Zeta()
    assert desugar(Reverse(Finite(3))) == Finite(3)


def test_reverse_of_product():
    t = Reverse(Product(Omega(), Zeta()))
    assert desugar(t) == Product(OmegaStar(), Zeta())


@given(term_strategy())
def test_desugar_idempotent(t):
    d = desugar(t)
    assert desugar(d) == d


@given(term_strategy())
def test_desugar_has_no_reverse_or_inner_empty(t):
    def scan(u, top):
        assert not isinstance(u, Reverse)
        if not top:
            assert u != Empty()
        match u:
            case Sum(a, b) | Product(a, b):
                scan(a, False)
                scan(b, False)
            case Shuffle(blocks):
                for b in blocks:
                    scan(b, False)

    scan(desugar(t), True)


def test_golden_corpus_validates():
    for s in GOLDEN:
        validate(T(s))
