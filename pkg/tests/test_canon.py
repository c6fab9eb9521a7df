import pytest
from hypothesis import given, settings

from conftest import GOLDEN, T, term_strategy
from ordercalc import (
    CanonicalForm,
    Equality,
    Fin,
    Pow,
    Reverse,
    Scat,
    Shuf,
    StuckError,
    W,
    Wstar,
    Zat,
    canonicalize,
    cf_equal,
    cf_to_term,
    enumerate_points,
    is_final_segment,
    is_initial_segment,
    parse,
    point_profile,
    print_term,
    profile,
    scat_normalize,
)
from ordercalc.canon import _try_flatten


def norm(s: str) -> str:
    return print_term(cf_to_term(canonicalize(T(s))))


# --- scattered normal forms ---


def test_scat_reverse_plus_finite_plus_omega_is_zeta():
    assert scat_normalize(T("N~ + 3 + N")) == (Zat(),)


def test_scat_one_plus_omega():
    assert scat_normalize(T("1 + N")) == (W(),)


def test_scat_rejects_shuffles():
    assert scat_normalize(T("Q[Z]")) is None


def test_scat_products():
    assert scat_normalize(T("N*3")) == (W(),)
    assert scat_normalize(T("N~*3")) == (Wstar(),)
    assert scat_normalize(T("Z*2")) == (Zat(),)
    assert scat_normalize(T("Z*1")) == (Zat(),)
    assert scat_normalize(T("2*Z")) == (Zat(), Zat())
    assert scat_normalize(T("(1+1)*Z")) == (Zat(), Zat())


def test_scat_power_rotation():
    # N*(N + N~) regroups as N + (Z repeated), since inner junctions
    # N~ + N collapse to Z.
    assert scat_normalize(T("N*(N + N~)")) == (W(), Pow("N", (Zat(),)))
    assert scat_normalize(T("N~*(N + N~)")) == (Pow("N~", (Zat(),)), Wstar())
    assert scat_normalize(T("N*(N + 2 + N~)")) == (W(), Pow("N", (Fin(2), Zat())))


# --- canonicalization ---


def test_collapse_trivial_shuffle():
    assert norm("Q[1, 1+Q]") == "Q"


def test_collapse_nested_shuffle():
    assert norm("Q[N, Z + Q[N, Z]]") == "Q[N,Z]"


def test_product_absorbs_junction():
    assert norm("N*(N + Q[Z] + N~)") == "N + Q[Z]"
    assert norm("(1+Q+1)*(Z + Q[Z] + Z)") == "Z + Q[Z] + Z"


def test_non_flattening_regression():
    # Q[1 + Q[Z]] must keep its single composite block: the candidate
    # flattened set {1, Z} does not match the inner set {Z}.
    cf = canonicalize(T("Q[1 + Q[Z]]"))
    assert len(cf.components) == 1
    shuf = cf.components[0]
    assert isinstance(shuf, Shuf)
    assert len(shuf.blocks) == 1
    assert norm("Q[1 + Q[Z]]") == "Q[1 + Q[Z]]"

    # The two orders agree on every sampled first-order point fact, so
    # only the canonical forms distinguish them.
    a, b = T("Q[1 + Q[Z]]"), T("Q[1,Z]")
    assert profile(a) == profile(b)
    fact_sets = []
    for t in (a, b):
        fact_sets.append({point_profile(t, c) for c in enumerate_points(t, 300)})
    assert fact_sets[0] == fact_sets[1]
    assert cf_equal(canonicalize(a), canonicalize(b)) is Equality.NOT_EQUAL


def test_stuck_product_is_surfaced():
    with pytest.raises(StuckError):
        canonicalize(T("N*(Z + Q[Z] + Z)"))
    with pytest.raises(StuckError):
        canonicalize(T("(N+N~)*(Z + Q[Z] + Z)"))


def test_empty_and_scattered_forms():
    assert canonicalize(T("0")) == CanonicalForm(())
    assert canonicalize(T("N~ + N")) == CanonicalForm((Scat((Zat(),)),))


# --- equality ---


def test_equal_collapsed_shuffles():
    assert cf_equal(canonicalize(T("Q")), canonicalize(T("Q[1,1+Q]"))) is Equality.EQUAL


def test_not_equal_by_initial_segment():
    assert cf_equal(canonicalize(T("Z + Q[Z]")), canonicalize(T("Q[Z]"))) is Equality.NOT_EQUAL


def test_equal_after_power_unroll():
    assert cf_equal(canonicalize(T("N*N")), canonicalize(T("N + N*N"))) is Equality.EQUAL


def test_structural_only_outside_tame_fragment():
    a = canonicalize(T("N*N"))
    b = canonicalize(T("N*N + 1"))
    assert cf_equal(a, b) is Equality.STRUCTURAL_ONLY


# --- segments ---


def test_final_segment_of_zeta():
    assert is_final_segment(canonicalize(T("N")), canonicalize(T("Z")))


def test_initial_segment_of_zeta():
    assert not is_initial_segment(canonicalize(T("N")), canonicalize(T("Z")))
    assert is_initial_segment(canonicalize(T("N~")), canonicalize(T("Z")))


def test_initial_segment_cut_inside_shuffle():
    assert is_initial_segment(canonicalize(T("Q[Z] + N~")), canonicalize(T("Q[Z]")))
    assert not is_initial_segment(canonicalize(T("Q[Z] + N")), canonicalize(T("Q[Z]")))


def test_segment_families_of_atoms():
    z = canonicalize(T("Z"))
    assert is_initial_segment(canonicalize(T("0")), z)
    assert is_initial_segment(z, z)
    assert not is_initial_segment(canonicalize(T("1")), z)
    n = canonicalize(T("N"))
    assert is_initial_segment(canonicalize(T("3")), n)
    assert not is_final_segment(canonicalize(T("3")), n)
    assert is_final_segment(n, n)


# --- global invariants ---


def test_idempotence_on_corpus():
    for s in GOLDEN:
        cf = canonicalize(T(s))
        again = canonicalize(parse(print_term(cf_to_term(cf))))
        assert again == cf, s


def test_minimality_on_corpus():
    def shuf_nodes(cf):
        for comp in cf.components:
            if isinstance(comp, Shuf):
                yield comp
                for b in comp.blocks:
                    yield from shuf_nodes(b)

    for s in GOLDEN:
        for shuf in shuf_nodes(canonicalize(T(s))):
            assert _try_flatten(shuf.blocks) is None, s


def test_blocks_sorted_and_duplicate_free():
    cf = canonicalize(T("Q[Z, Z, N]"))
    shuf = cf.components[0]
    assert shuf.blocks == (CanonicalForm((Scat((W(),)),)), CanonicalForm((Scat((Zat(),)),)))


@given(term_strategy())
@settings(max_examples=60, deadline=None)
def test_canonicalization_preserves_profile(t):
    try:
        cf = canonicalize(t)
    except StuckError:
        return
    assert profile(cf_to_term(cf)) == profile(t)


@given(term_strategy())
@settings(max_examples=60, deadline=None)
def test_reversal_involution_at_canonical_level(t):
    try:
        expected = canonicalize(t)
    except StuckError:
        return
    assert canonicalize(Reverse(Reverse(t))) == expected
