import pytest
from hypothesis import given

from alglam.fragments import NONNEG
from alglam.random_terms import TermGenerator
from alglam.rules import (ALG_EQ, ALG_RED, LANGUAGES, LIN_EQ, LIN_RED, RuleName, apply_rule, language, replay,
                          step_all, ReductionTrace)
from alglam.terms import LAM_TAG, ZERO, is_base, is_value, subterm_at
from conftest import terms, values

R = RuleName


def rules_fired(t, lang, **kw):
    return {(s.rule, s.position) for s in step_all(t, lang, **kw) if not s.reversed}


def test_rule_names_in_declaration_order():
    names = [r.value for r in RuleName]
    assert names[:2] == ["BetaN", "BetaV"] and names[-1] == "S_zero_sum"
    assert len(names) == 23
    assert [r.order for r in RuleName] == list(range(23))


def test_language_table():
    assert {l.name for l in LANGUAGES.values()} == {"lin-red", "lin-eq", "alg-red", "alg-eq"}
    assert LIN_RED.cbv and not LIN_RED.symmetric
    assert LIN_EQ.cbv and LIN_EQ.symmetric
    assert not ALG_RED.cbv and ALG_EQ.symmetric
    assert R.Ar_sum in LIN_RED.rules and R.A_app_sum not in LIN_RED.rules
    assert R.A_app_sum in ALG_RED.rules and R.Al_sum not in ALG_RED.rules
    with pytest.raises(ValueError):
        language("lin")


def test_zero_is_normal():
    for lang in (LIN_RED, ALG_RED):
        assert step_all(ZERO, lang) == []
    assert all(s.reversed for s in step_all(ZERO, LIN_EQ))


def test_zero_applied_to_value_in_lin(P):
    steps = step_all(P("(0) \\x.x"), LIN_RED)
    assert [(s.rule, s.result) for s in steps] == [(R.Al_zero, ZERO)]


def test_beta_v_needs_basis_argument(P):
    t = P("(\\x.(x) x) (2.y + z)")
    assert (R.BetaV, ()) not in rules_fired(t, LIN_RED)
    assert (R.Ar_sum, ()) in rules_fired(t, LIN_RED)
    # call-by-name fires beta on anything
    [beta] = [s for s in step_all(t, ALG_RED) if s.rule is R.BetaN]
    assert beta.result == P("(2.y + z) (2.y + z)")


def test_left_rules_need_value_argument(P):
    assert (R.Al_sum, ()) in rules_fired(P("(x + y) z"), LIN_RED)
    assert (R.Al_sum, ()) not in rules_fired(P("(x + y) ((z) z)"), LIN_RED)
    assert (R.A_app_sum, ()) in rules_fired(P("(x + y) ((z) z)"), ALG_RED)


def test_right_rules_need_basis_function(P):
    assert (R.Ar_smul, ()) in rules_fired(P("(f) (2.x)"), LIN_RED)
    assert (R.Ar_smul, ()) not in rules_fired(P("(f + g) (2.x)"), LIN_RED)
    assert (R.Ar_zero, ()) in rules_fired(P("(\\x.x) 0"), LIN_RED)


def test_argument_context_only_under_cbv_with_value_function(P):
    t = P("(f) (1.x)")
    assert (R.S_one, (1,)) in rules_fired(t, LIN_RED)
    assert (R.S_one, (1,)) not in rules_fired(t, ALG_RED)
    assert (R.S_one, (1,)) not in rules_fired(P("((f) g) (1.x)"), LIN_RED)


def test_no_reduction_under_lambda(P):
    assert step_all(P("\\x.(\\y.y) x"), LIN_RED) == []
    assert step_all(P("\\x.1.x"), ALG_RED) == []


@pytest.mark.parametrize("src, rule, dst", [
    ("2.x + 3.x", R.F_fact, "5.x"),
    ("2.x + x", R.F_fact1, "3.x"),
    ("x + x", R.F_fact11, "2.x"),
    ("2.3.x", R.F_smul_smul, "6.x"),
    ("2.(x + y)", R.S_dist, "2.x + 2.y"),
    ("1.x", R.S_one, "x"),
    ("0.x", R.S_zero_coeff, "0"),
    ("2.0", R.S_zero_term, "0"),
    ("0 + x", R.S_zero_sum, "x"),
    ("x + (y + z)", R.Asso_L, "(x + y) + z"),
    ("(x + y) + z", R.Asso_R, "x + (y + z)"),
    ("x + y", R.Com, "y + x"),
])
def test_root_rules(P, src, rule, dst):
    assert apply_rule(P(src), rule, (), LIN_RED) == P(dst)
    assert apply_rule(P(src), rule, (), ALG_RED) == P(dst)


def test_factorisation_is_syntactic_modulo_alpha(P):
    assert apply_rule(P("2.(\\x.x) + 3.\\y.y"), R.F_fact, (), LIN_RED) == P("5.\\z.z")
    assert apply_rule(P("2.(x + y) + 3.(y + x)"), R.F_fact, (), LIN_RED) is None


def test_apply_rule_rejects_non_context(P):
    assert apply_rule(P("\\x.1.x"), R.S_one, (0,), LIN_RED) is None
    assert apply_rule(P("(f) (1.x)"), R.S_one, (1,), ALG_RED) is None
    assert apply_rule(P("1.x"), R.BetaN, (), LIN_RED) is None


def test_reverse_steps_only_in_symmetric_languages(P):
    t = P("2.x")
    assert not any(s.reversed for s in step_all(t, LIN_RED))
    rev = [s for s in step_all(t, LIN_EQ) if s.reversed]
    assert rev and all(not s.rule.is_beta for s in rev)
    assert P("1.(2.x)") in {s.result for s in rev}
    assert P("x + x") in {s.result for s in rev}


def test_reverse_respects_fragment(P):
    rev = [s.result for s in step_all(P("2.x"), LIN_EQ, fragment=NONNEG) if s.reversed]
    assert rev and all(NONNEG.admits(u) for u in rev)
    # an inadmissible source offers no reverse steps at all
    assert not any(s.reversed for s in step_all(P("(-1).x"), LIN_EQ, fragment=NONNEG))


def _under_lambda(t, pos):
    u = t
    for i in pos:
        if u.tag == LAM_TAG:
            return True
        u = subterm_at(u, (i,))
    return False


@given(terms(max_size=16))
def test_step_invariants(t):
    for lang in (LIN_RED, ALG_RED, LIN_EQ, ALG_EQ):
        steps = step_all(t, lang)
        for s in steps:
            assert not _under_lambda(t, s.position)
            if s.rule is R.BetaV:
                assert is_base(subterm_at(t, s.position).arg)
            if s.reversed:
                assert lang.symmetric and not s.rule.is_beta
                # applying the forward rule to the result gives the original back
                assert apply_rule(s.result, s.rule, s.position, lang) == t
            else:
                assert apply_rule(t, s.rule, s.position, lang) == s.result
        assert replay(ReductionTrace(t, steps[:1]), lang) is None


@given(terms(max_size=16))
def test_oriented_steps_offered_by_symmetric_language(t):
    for red, eq in ((LIN_RED, LIN_EQ), (ALG_RED, ALG_EQ)):
        fwd = {(s.rule, s.position, s.result) for s in step_all(t, red)}
        sym = {(s.rule, s.position, s.result) for s in step_all(t, eq) if not s.reversed}
        assert fwd <= sym


def test_value_stability_under_linear_rules():
    gen = TermGenerator(5)
    for _ in range(1000):
        v = gen.value(gen.rng.randint(1, 20))
        for s in step_all(v, LIN_RED, algebraic_only=True):
            assert is_value(s.result), (v, s)


@given(values(max_size=20))
def test_value_stability_property(v):
    for s in step_all(v, LIN_RED, algebraic_only=True):
        assert is_value(s.result)


def test_replay_detects_tampering(P):
    t = P("1.x + 0")
    good = [s for s in step_all(t, LIN_RED) if s.rule is R.S_one]
    assert replay(ReductionTrace(t, good), LIN_RED) is None
    bad = [type(good[0])(R.S_one, good[0].position, False, P("y"))]
    assert replay(ReductionTrace(t, bad), LIN_RED) == 0
    rev = [type(good[0])(R.S_one, (), True, P("1.(1.x + 0)"))]
    assert replay(ReductionTrace(t, rev), LIN_RED) == 0
    assert replay(ReductionTrace(t, rev), LIN_EQ) is None
