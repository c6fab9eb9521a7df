import pytest

from conftest import A_TERMS, CLASSIFIED, GOLDEN, T
from ordercalc import (
    AbsorptionCase,
    NotSelfSimilar,
    SelfSimilarNotAbsorbing,
    Single,
    Spectrum,
    Sum,
    UnsupportedError,
    absorbs,
    cf_to_term,
    classify_absorption,
    decompose,
    is_self_similar,
    is_square,
    parse,
    print_term,
    profile,
    spectrum_description,
    square_two_endpoints,
)
from ordercalc.classify import absorption_case_predicates


def _blocks(d):
    return sorted(print_term(cf_to_term(b)) for b in d.blocks)


def test_decompose_two_sided():
    d = decompose(T("N + Q[Z] + N~"))
    assert print_term(cf_to_term(d.left)) == "N"
    assert _blocks(d) == ["Z"]
    assert print_term(cf_to_term(d.right)) == "N~"


def test_decompose_wrong_shape():
    # Two distinct shuffle components survive: the junction Z is not a
    # block of the right-hand shuffle, so no merge applies.
    from ordercalc import Shuf, canonicalize

    cf = canonicalize(T("Q[Z] + Z + Q[N]"))
    assert len(cf.components) == 3
    assert sum(isinstance(c, Shuf) for c in cf.components) == 2
    assert decompose(T("Q[Z] + Z + Q[N]")) is None


def test_decompose_trivial_shuffle():
    d = decompose(T("Q"))
    assert not d.left.components and not d.right.components
    assert _blocks(d) == ["1"]


def test_decompose_unsupported_outside_tame_fragment():
    with pytest.raises(UnsupportedError):
        decompose(T("N*N + Q[Z]"))


@pytest.mark.parametrize(
    "src, expected",
    [
        ("N + Q[Z]", True),
        ("Q[N,Z]", True),
        ("1 + Q[Z]", False),
        ("Z", False),
        ("Q[Z] + Z + Q[N]", False),
    ],
)
def test_is_self_similar(src, expected):
    assert bool(is_self_similar(T(src))) is expected


def test_self_similar_reason_names_failing_side():
    verdict = is_self_similar(T("1 + Q[Z]"))
    assert not verdict
    assert "final segment" in verdict.reason
    verdict = is_self_similar(T("Q[Z] + 1"))
    assert "initial segment" in verdict.reason


CASES = {
    "Q[Z]": 1,
    "Z + Q[Z]": 2,
    "N + Q[Z,N]": 2,
    "Q[Z] + Z": 3,
    "Z + Q[Z] + Z": 4,
    "N + Q[Z] + N~": 5,
}


@pytest.mark.parametrize("src, case", CASES.items())
def test_classification_cases(src, case):
    verdict = classify_absorption(T(src))
    assert isinstance(verdict, AbsorptionCase)
    assert verdict.case == case


def test_self_similar_but_not_absorbing():
    verdict = classify_absorption(T("N + Q[Z]"))
    assert isinstance(verdict, SelfSimilarNotAbsorbing)
    assert bool(is_self_similar(T("N + Q[Z]")))


def test_not_self_similar_class():
    assert isinstance(classify_absorption(T("Z")), NotSelfSimilar)


def test_mixed_junction_case_six():
    verdict = classify_absorption(T("N + Q[Z,N] + N~"))
    assert isinstance(verdict, AbsorptionCase)
    assert verdict.case == 6


ABSORB_TRUE = [
    ("1+Q", "Z + Q[Z]"),
    ("Q", "Q[Z]"),
    ("2", "N + Q[Z] + N~"),
    ("1+Q+1", "Z + Q[Z] + Z"),
    ("N+N~", "N + Q[Z] + N~"),
    ("1", "N + Q[Z]"),
]

ABSORB_FALSE = [
    ("Q", "Z + Q[Z]"),
    ("2", "N + Q[Z]"),
    ("2", "Z + Q[Z] + Z"),
    ("1+Q+1", "N + Q[Z] + N~"),
]


@pytest.mark.parametrize("a, x", ABSORB_TRUE)
def test_absorbs_true(a, x):
    assert absorbs(T(a), T(x)) is True


@pytest.mark.parametrize("a, x", ABSORB_FALSE)
def test_absorbs_false(a, x):
    assert absorbs(T(a), T(x)) is False


def test_absorbs_empty_edge_cases():
    assert absorbs(T("0"), T("0")) is True
    assert absorbs(T("0"), T("Q")) is False
    assert absorbs(T("Q"), T("0")) is True
    assert absorbs(T("1"), T("Z")) is True


@pytest.mark.parametrize(
    "src, spectrum",
    [
        ("Q[Z]", Spectrum.ALL),
        ("Q[Z] + Z", Spectrum.HAS_RIGHT),
        ("Z + Q[Z]", Spectrum.HAS_LEFT),
        ("N + Q[Z]", Spectrum.TRIVIAL_ONLY),
        ("Z + Q[Z] + Z", Spectrum.EXACTLY_ONE_Q_ONE_OR_1),
        ("N + Q[Z] + N~", Spectrum.BOTH_ENDS_SUCC_PRED_COMPLETE),
        ("N + Q[Z,N] + N~", Spectrum.BOTH_ENDS_SUCC_COMPLETE),
        ("Z", Spectrum.TRIVIAL_ONLY),
    ],
)
def test_spectrum(src, spectrum):
    assert spectrum_description(T(src)) is spectrum


@pytest.mark.parametrize(
    "src, expected",
    [
        ("Q", True),
        ("Q[Z]", True),
        ("1 + Q + 1", True),
        ("N + Q[Z] + N~", True),
        ("N + Q[Z]", False),
        ("Z", False),
        ("0", True),
        ("1", True),
    ],
)
def test_is_square(src, expected):
    assert is_square(T(src)) is expected


@pytest.mark.parametrize(
    "src, expected",
    [
        ("1 + Q + 1", True),
        ("N + Q[Z] + N~", True),
        ("1 + Q[Z] + 1", False),
        ("3", False),
        ("1", True),
        ("N + Q[Z,N] + N~", True),
        ("Z", None),
        ("Q", None),
    ],
)
def test_square_two_endpoints(src, expected):
    assert square_two_endpoints(T(src)) is expected


BOTH_ENDPOINT_TERMS = [
    "1",
    "2",
    "3",
    "1 + Q + 1",
    "N + Q[Z] + N~",
    "1 + Q[Z] + 1",
    "N + Q[Z,N] + N~",
    "N + N~",
    "1 + Q[Z] + Z",
    "Z + Q[Z] + Z + 1",
]


def test_square_checkers_agree():
    for s in BOTH_ENDPOINT_TERMS + [t for t in GOLDEN]:
        t = T(s)
        p = profile(t)
        if not (p.has_left_endpoint and p.has_right_endpoint):
            continue
        try:
            assert square_two_endpoints(t) is is_square(t), s
        except UnsupportedError:
            pass


def test_case_predicates_mutually_exclusive():
    for s in GOLDEN + BOTH_ENDPOINT_TERMS:
        try:
            predicates = absorption_case_predicates(T(s))
        except UnsupportedError:
            continue
        assert sum(predicates) <= 1, s
        verdict = classify_absorption(T(s))
        if isinstance(verdict, AbsorptionCase):
            assert predicates[verdict.case - 1], s
            assert sum(predicates) == 1, s


def test_absorbing_implies_self_similar():
    for s in GOLDEN:
        if isinstance(classify_absorption(T(s)), AbsorptionCase):
            assert bool(is_self_similar(T(s))), s


def test_closed_interval_closure():
    # If X absorbs A then X absorbs every closed interval of A.
    cases = [
        # (absorbed term, a closed interval of it, the absorbing X)
        ("N+N~", "5", "N + Q[Z] + N~"),
        ("N+N~", "N+N~", "N + Q[Z] + N~"),
        ("1+Q", "1+Q+1", "Z + Q[Z]"),
        ("1+Q+1", "1+Q+1", "Z + Q[Z] + Z"),
        ("Z", "7", "Q[Z]"),
    ]
    for a, interval, x in cases:
        assert absorbs(T(a), T(x)) is True, (a, x)
        assert absorbs(T(interval), T(x)) is True, (interval, x)


def test_absorption_laws_smoke():
    xs = [T(s) for s in CLASSIFIED]
    asmall = [T(s) for s in A_TERMS[:5]]
    for x in xs:
        assert absorbs(T("1"), x)
        for a in asmall:
            for b in asmall:
                if absorbs(a, x) and absorbs(b, x):
                    from ordercalc import Product

                    assert absorbs(Product(a, b), x)
                lhs = absorbs(Sum(Sum(a, Single()), b), x)
                rhs = absorbs(Sum(a, Single()), x) and absorbs(Sum(Single(), b), x)
                assert lhs == rhs
