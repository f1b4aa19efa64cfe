import pytest
from hypothesis import given, settings

from funint import (
    ALI, B, D, FALSE, G, IL, INF, K, KT, TRUE, And, App, Arrow, Atom, Bang, BForall,
    Cond, EqBool, Exists, FinSet, Forall, FormulaTypeError, Implies, Lolli, Mem,
    MixedLogicError, Modality, N, Or, Tensor, Var, all_names, alpha_equal, alpha_normalize,
    connective_depth, expand_cond, free_vars, logic_of, pure_type, relabel, substitute,
    substitute_all, type_level, typecheck,
)
from strategies import SIGNATURE, al_formulas, il_formulas

x, y, z, a, c = (Var(n, N) for n in "xyzac")
b = Var("b", B)
P, Q, R = Atom("P"), Atom("Q"), Atom("R")


class TestTypes:
    def test_rendering(self):
        assert str(N) == "N" and str(B) == "B"
        assert str(Arrow(N, N)) == "N->N"
        assert str(Arrow(Arrow(N, N), N)) == "(N->N)->N"
        assert str(Arrow(N, Arrow(N, N))) == "N->N->N"
        assert str(FinSet(Arrow(N, B))) == "set(N->B)"

    @pytest.mark.parametrize("t, level", [
        (N, 0), (B, 0),
        (Arrow(N, N), 1),
        (Arrow(Arrow(N, N), N), 2),
        (Arrow(N, Arrow(N, N)), 1),
        (FinSet(Arrow(Arrow(N, N), N)), 2),
    ])
    def test_type_level(self, t, level):
        assert type_level(t) == level

    def test_pure_type_examples(self):
        assert pure_type(0) == N
        assert pure_type(1) == Arrow(N, N)
        assert pure_type(2) == Arrow(Arrow(N, N), N)

    def test_pure_type_has_its_level(self):
        for m in range(6):
            assert type_level(pure_type(m)) == m

    @pytest.mark.parametrize("bad", [-1, INF])
    def test_pure_type_rejects(self, bad):
        with pytest.raises(ValueError):
            pure_type(bad)


class TestModality:
    def test_stein_inf_is_not_k(self):
        assert Modality.stein(INF) != K
        assert str(Modality.stein(INF)) == "stein[inf]"
        assert str(Modality.stein(3)) == "stein[3]"

    @pytest.mark.parametrize("args", [("q",), ("stein",), ("k", 2), ("stein", -1)])
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            Modality(*args)


class TestSubstitution:
    def test_direct(self):
        assert substitute(Atom("P", (z,)), z, a) == Atom("P", (a,))

    def test_capture_avoidance(self):
        f = Forall(a, Atom("P", (z, a)))
        a1 = Var("a'", N)
        assert substitute(f, z, a) == Forall(a1, Atom("P", (a, a1)))

    def test_not_free(self):
        assert substitute(Q, z, a) == Q
        assert substitute(Forall(z, Atom("R", (z,))), z, a) == Forall(z, Atom("R", (z,)))

    def test_type_mismatch(self):
        with pytest.raises(FormulaTypeError):
            substitute(Atom("P", (z,)), z, b)

    def test_simultaneous(self):
        f = Atom("S", (x, y))
        assert substitute_all(f, {"x": y, "y": x}) == Atom("S", (y, x))

    def test_bounded_quantifier_bound_is_substituted(self):
        s = Var("s", FinSet(N))
        t = Var("t", FinSet(N))
        f = BForall(x, s, Atom("R", (x,)))
        assert substitute(f, s, t) == BForall(x, t, Atom("R", (x,)))

    @settings(max_examples=200, deadline=None)
    @given(il_formulas())
    def test_normalisation_commutes_with_substitution(self, f):
        t = App(Var("h", Arrow(N, N)), x)
        assert alpha_normalize(substitute(alpha_normalize(f), a, t)) == \
            alpha_normalize(substitute(f, a, t))

    @settings(max_examples=200, deadline=None)
    @given(il_formulas())
    def test_substitution_removes_the_variable(self, f):
        g = substitute(f, a, App(Var("h", Arrow(N, N)), x))
        assert a not in free_vars(g)
        if a in free_vars(f):
            assert x in free_vars(g)


class TestAlpha:
    def test_examples(self):
        assert alpha_normalize(Forall(x, Atom("P", (x,)))) == Forall(Var("v0", N), Atom("P", (Var("v0", N),)))
        assert alpha_normalize(Forall(y, Atom("P", (y,)))) == alpha_normalize(Forall(x, Atom("P", (x,))))
        assert alpha_normalize(Atom("P", (c,))) == Atom("P", (c,))

    def test_free_names_are_skipped(self):
        v0 = Var("v0", N)
        f = Forall(x, Atom("S", (x, v0)))
        assert alpha_normalize(f) == Forall(Var("v1", N), Atom("S", (Var("v1", N), v0)))

    def test_alpha_equal_distinguishes_structure(self):
        assert alpha_equal(Exists(x, Atom("R", (x,))), Exists(z, Atom("R", (z,))))
        assert not alpha_equal(Exists(x, Atom("R", (x,))), Forall(x, Atom("R", (x,))))
        assert not alpha_equal(Exists(x, Atom("R", (x,))), Exists(x, Atom("R", (a,))))

    def test_idempotent_on_corpus(self, il_corpus, al_corpus):
        for f in il_corpus + al_corpus:
            g = alpha_normalize(f)
            assert alpha_normalize(g) == g

    @settings(max_examples=200, deadline=None)
    @given(al_formulas())
    def test_idempotent_random(self, f):
        g = alpha_normalize(f)
        assert alpha_normalize(g) == g
        assert free_vars(g) == free_vars(f)


class TestLogicTag:
    def test_tags(self):
        assert logic_of(And(P, Q)) == IL
        assert logic_of(Bang(K, P)) == ALI
        assert logic_of(Forall(x, Atom("R", (x,)))) is None

    def test_mixed(self):
        with pytest.raises(MixedLogicError, match="mixed logics"):
            logic_of(And(P, Tensor(Q, R)))

    def test_depth(self):
        assert connective_depth(P) == 1
        assert connective_depth(Implies(P, Forall(x, Q))) == 3
        assert connective_depth(Bang(K, Bang(D, P))) == 3


class TestExpandCond:
    def test_il(self):
        assert expand_cond(Cond(b, P, Q)) == And(Implies(EqBool(b, TRUE), P),
                                                 Implies(EqBool(b, FALSE), Q))

    def test_al(self):
        got = expand_cond(Cond(b, Bang(K, P), Q), bang=G)
        assert got == Tensor(Lolli(Bang(G, EqBool(b, TRUE)), Bang(K, P)),
                             Lolli(Bang(G, EqBool(b, FALSE)), Q))

    def test_al_needs_modality(self):
        with pytest.raises(ValueError):
            expand_cond(Cond(b, Bang(K, P), Q))

    def test_identity_without_cond(self):
        f = Forall(x, Or(Atom("R", (x,)), P))
        assert expand_cond(f) == f

    def test_nested_keeps_typing_and_logic(self):
        c2 = Var("c2", B)
        f = Forall(x, Cond(b, Cond(c2, Atom("R", (x,)), P), Q))
        g = expand_cond(f)
        typecheck(g, SIGNATURE)
        assert logic_of(g) == IL
        h = expand_cond(Cond(b, Tensor(P, Cond(c2, P, Q)), Q), bang=D)
        typecheck(h, SIGNATURE)
        assert logic_of(h) == ALI


class TestTypecheck:
    def test_ok(self):
        typecheck(Atom("P", (a,)), {"P": (N,)})

    def test_not_a_function(self):
        f = Atom("P", (App(Var("f", N), a),))
        with pytest.raises(FormulaTypeError, match="not a function type"):
            typecheck(f)

    def test_mixed(self):
        with pytest.raises(MixedLogicError, match="mixed logics"):
            typecheck(And(P, Tensor(Q, R)))

    def test_arity(self):
        with pytest.raises(FormulaTypeError):
            typecheck(Atom("R", (a, a)), SIGNATURE)

    def test_inconsistent_free_variable(self):
        with pytest.raises(FormulaTypeError):
            typecheck(And(Atom("P", (Var("u", N),)), EqBool(Var("u", B), TRUE)))

    def test_membership_and_bounds(self):
        s = Var("s", FinSet(N))
        typecheck(And(Mem(a, s), BForall(x, s, Atom("R", (x,)))), SIGNATURE)
        typecheck(BForall(x, Var("e", Arrow(N, N)), Atom("R", (x,))), SIGNATURE)
        with pytest.raises(FormulaTypeError):
            typecheck(Mem(a, Var("s", FinSet(B))))
        with pytest.raises(FormulaTypeError):
            typecheck(BForall(x, a, Atom("R", (x,))), SIGNATURE)

    def test_cond_selector_must_be_boolean(self):
        with pytest.raises(FormulaTypeError):
            typecheck(Cond(a, P, Q))

    def test_error_carries_path(self):
        with pytest.raises(FormulaTypeError) as info:
            typecheck(And(P, Forall(x, Atom("P", (App(x, x),)))))
        assert info.value.path


class TestRelabel:
    def test_relabel_only_listed(self):
        f = Tensor(Bang(K, P), Bang(D, Bang(K, Q)))
        assert relabel(f, {K: KT}) == Tensor(Bang(KT, P), Bang(D, Bang(KT, Q)))

    def test_all_names(self):
        assert all_names(Forall(x, Atom("S", (x, a)))) == {"x", "a"}
