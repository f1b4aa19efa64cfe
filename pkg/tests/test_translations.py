import pytest
from hypothesis import given, settings

from funint import (
    ALI, CIRC, D, G, K, KT, STAR, STAR_SIMPLE, And, Atom, Bang, Exists, Forall,
    Implies, Lolli, MixedLogicError, N, Or, Plus, Tensor, Var, enumerate_formulas,
    extra_principles, forget, logic_of, translate, typecheck,
)
from strategies import SIGNATURE, il_formulas

P, Q = Atom("P"), Atom("Q")
z = Var("z", N)
Pz = Atom("R", (z,))


class TestPublishedClauses:
    def test_star_implication(self):
        assert translate(Implies(P, Q), STAR, G) == Lolli(Bang(G, P), Q)

    def test_simplified_existential_has_no_bang(self):
        assert translate(Exists(z, Pz), STAR_SIMPLE) == Exists(z, Pz)

    def test_circ_forall(self):
        assert translate(Forall(z, Pz), CIRC, G) == Bang(G, Forall(z, Bang(G, Pz)))

    def test_extra_principles(self):
        x = Var("x", N)
        disj, ex = extra_principles(P, Q, G, x)
        assert disj == Lolli(Plus(Bang(G, P), Bang(G, Q)), Bang(G, Plus(P, Q)))
        assert ex == Lolli(Exists(x, Bang(G, P)), Bang(G, Exists(x, P)))


class TestClauses:
    def test_star_full(self):
        assert translate(Or(P, Q), STAR, K) == Plus(Bang(K, P), Bang(K, Q))
        assert translate(Exists(z, Pz), STAR, K) == Exists(z, Bang(K, Pz))
        assert translate(And(P, Forall(z, Pz)), STAR, K) == Tensor(P, Forall(z, Pz))

    def test_circ(self):
        assert translate(Implies(P, Q), CIRC, K) == Bang(K, Lolli(Bang(K, P), Bang(K, Q)))
        assert translate(Or(P, Exists(z, Pz)), CIRC, D) == Plus(Bang(D, P), Exists(z, Bang(D, Pz)))

    def test_default_label_is_g(self):
        assert translate(Implies(P, Q), STAR) == Lolli(Bang(G, P), Q)

    def test_forget(self):
        assert forget(Lolli(Bang(G, P), Q)) == Implies(P, Q)
        assert forget(Tensor(Bang(KT, P), Bang(KT, P))) == And(P, P)
        assert forget(Exists(z, Pz)) == Exists(z, Pz)

    def test_extra_principles_same_slot(self):
        disj, _ = extra_principles(P, P, K)
        assert disj == Lolli(Plus(Bang(K, P), Bang(K, P)), Bang(K, Plus(P, P)))

    def test_wrong_logic(self):
        with pytest.raises(MixedLogicError):
            translate(Bang(K, P), STAR)
        with pytest.raises(MixedLogicError):
            forget(And(P, Q))
        with pytest.raises(MixedLogicError):
            extra_principles(And(P, Q), P, K)


def _has(f, classes):
    if isinstance(f, classes):
        return True
    return any(_has(getattr(f, c), classes) for c in ("left", "right", "body") if hasattr(f, c))


class TestCorpus:
    def test_translations_land_in_affine_logic(self, il_corpus):
        for f in il_corpus:
            for mode in (STAR, STAR_SIMPLE, CIRC):
                g = translate(f, mode, K)
                assert logic_of(g) in (ALI, None)
                typecheck(g, SIGNATURE)

    def test_star_variants_agree_without_or_exists(self, il_corpus):
        for f in il_corpus:
            if not _has(f, (Or, Exists)):
                assert translate(f, STAR, D) == translate(f, STAR_SIMPLE, D)

    def test_forget_is_left_inverse(self, il_corpus):
        for f in il_corpus:
            for mode in (STAR, STAR_SIMPLE, CIRC):
                assert forget(translate(f, mode, G)) == f

    def test_extra_principles_typecheck(self):
        al = list(enumerate_formulas(None, 2, ALI, modalities=(K, G)))
        for fa in al:
            for fb in al[:10]:
                for g in extra_principles(fa, fb, D):
                    typecheck(g, SIGNATURE)
                    assert logic_of(g) == ALI

    @settings(max_examples=300, deadline=None)
    @given(il_formulas())
    def test_forget_inverse_random(self, f):
        for mode in (STAR, STAR_SIMPLE, CIRC):
            assert forget(translate(f, mode)) == f
