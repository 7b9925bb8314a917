import pytest
from hypothesis import given

from alglam.ac import ac_equal
from alglam.confluence import (build_Y, check_eq_to_red, demonstrate_nonconfluence, demonstrate_trivial_equality,
                               joinable, local_confluence_check)
from alglam.engine import reduce
from alglam.fragments import NONNEG, UNRESTRICTED, fragment_by_name, size_bounded
from alglam.random_terms import TermGenerator
from alglam.rules import ALG_EQ, ALG_RED, LIN_EQ, LIN_RED, FuelExhausted, ReductionTrace, replay, step_all
from alglam.syntax import parse
from alglam.terms import ZERO, size
from conftest import terms

P = parse
I = P("\\x.x")


class TestJoinable:
    def test_identical(self):
        r = joinable(P("x"), P("x"), LIN_RED)
        assert r.joined and r.meet == P("x")

    def test_modulo_ac(self):
        assert joinable(P("x + y"), P("y + x"), LIN_RED, depth=1).joined

    def test_via_reduction(self):
        r = joinable(P("2.x + 3.x"), P("5.(1.x)"), LIN_RED)
        assert r.joined and ac_equal(r.meet, P("5.x"))
        assert replay(r.left_trace, LIN_RED) is None and replay(r.right_trace, LIN_RED) is None

    def test_distinct_normal_forms(self):
        assert not joinable(P("x"), P("y"), LIN_RED).joined
        assert not joinable(ZERO, I, LIN_RED, depth=10).joined


class TestLocalConfluence:
    @pytest.mark.parametrize("src", ["2.(x + x)", "1.(x + 0) + 0.y", "(\\x.x + x) (1.y)", "(2.f) (3.x)",
                                     "(f + g) (x + y)"])
    def test_examples(self, src):
        for lang in (LIN_RED, ALG_RED):
            assert local_confluence_check(P(src), lang) == []
            assert local_confluence_check(P(src), lang, algebraic_only=True) == []

    def test_non_terminating_peaks_still_join(self):
        omega = P("(\\x.(x) x) \\x.(x) x")
        assert local_confluence_check(P(f"1.({omega})"), LIN_RED) == []

    @given(terms(max_size=9))
    def test_random_terms(self, t):
        for lang in (LIN_RED, ALG_RED):
            assert local_confluence_check(t, lang, algebraic_only=True) == []


class TestNonConfluence:
    def test_Y_shape(self):
        y = build_Y(P("x"))
        assert y.fun == y.arg
        assert y.fun.binder != "x"
        assert y == P("(\\w.x + (w) w) \\w.x + (w) w")

    @pytest.mark.parametrize("lang", [LIN_RED, ALG_RED])
    def test_identity_witness(self, lang):
        w = demonstrate_nonconfluence(I, lang, join_depth=10)
        assert w.to_zero.end == ZERO
        assert ac_equal(w.to_m.end, I)
        assert w.diverge and not w.join.joined
        assert replay(w.to_zero, lang) is None and replay(w.to_m, lang) is None
        assert "within the bound" in w.note

    def test_zero_gives_no_divergence(self):
        w = demonstrate_nonconfluence(ZERO, LIN_RED)
        assert not w.diverge

    def test_symmetric_language_rejected(self):
        with pytest.raises(ValueError):
            demonstrate_nonconfluence(I, LIN_EQ)


class TestTrivialEquality:
    def test_x_equals_y(self):
        tr = demonstrate_trivial_equality(P("x"), P("y"))
        assert tr is not None and ac_equal(tr.end, P("y"))
        assert replay(tr, LIN_EQ) is None
        assert replay(tr, LIN_RED) is not None  # it needs reverse steps
        assert any(s.reversed for s in tr.steps)

    def test_nonneg_blocks_it(self):
        assert demonstrate_trivial_equality(P("x"), P("y"), NONNEG) is None

    def test_same_term(self):
        assert len(demonstrate_trivial_equality(P("x"), P("x"))) == 0

    @pytest.mark.parametrize("m, n", [("\\x.x", "0"), ("2.z", "(f) z"), ("0", "x + y")])
    def test_any_pair(self, m, n):
        tr = demonstrate_trivial_equality(P(m), P(n))
        assert tr is not None and replay(tr, LIN_EQ) is None


class TestEqualityToReduction:
    def test_plain_term(self):
        r = check_eq_to_red(P("(\\x.2.x) (y + z)"), LIN_RED, NONNEG)
        assert r.ok and not r.hypothesis_violation
        assert ac_equal(r.oriented_value, P("2.y + 2.z"))

    def test_omega_with_trivial_witness(self):
        omega = P("(\\x.(x) x) \\x.(x) x")
        witness = demonstrate_trivial_equality(omega, I)
        assert witness is not None
        r = check_eq_to_red(omega, LIN_RED, UNRESTRICTED, fuel=40, symmetric_witness=witness)
        assert r.hypothesis_violation and not r.ok

    def test_witness_must_start_at_term(self):
        with pytest.raises(ValueError):
            check_eq_to_red(P("x"), LIN_RED, symmetric_witness=ReductionTrace(P("y"), []))


class TestFragments:
    def test_lookup(self):
        assert fragment_by_name("nonneg") is NONNEG
        assert fragment_by_name("size<=7").admits(P("x")) and not fragment_by_name("size<=1").admits(P("(x) x"))
        with pytest.raises(ValueError):
            fragment_by_name("positive")

    def test_size_bound_not_reduction_closed(self):
        t = P("(\\x.(x) (x) x) \\y.((y) y) y")
        frag = size_bounded(size(t))
        assert frag.admits(t)
        assert not frag.reduction_closed
        assert not all(frag.admits(s.result) for s in step_all(t, LIN_RED))

    def test_reduction_closure(self):
        gen = TermGenerator(8)
        for _ in range(300):
            t = gen.sized_term(12)
            for frag in (UNRESTRICTED, NONNEG):
                if not frag.admits(t):
                    continue
                for lang in (LIN_RED, ALG_RED):
                    for s in step_all(t, lang):
                        assert frag.admits(s.result), (frag.name, t, s)


@given(terms(max_size=12))
def test_oriented_traces_replay_in_symmetric_language(t):
    for red, eq in ((LIN_RED, LIN_EQ), (ALG_RED, ALG_EQ)):
        try:
            tr = reduce(t, red, fuel=40)
        except FuelExhausted as e:
            tr = e.trace
        assert replay(tr, eq) is None
