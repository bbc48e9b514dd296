import math
import random
from fractions import Fraction

import pytest

from liftzeta.exactnum import CycRat, ZetaValue
from liftzeta.localfield import (
    AdditiveCharacter, KCoset, KElement, QuasiCharacter, enumerate_characters,
)
from liftzeta.schwartz import SBFunction
from liftzeta.zeta1d import (
    SBTensor, check_identity_A, double_star_invariance, epsilon_star,
    l_function, rho0, z_normalized, zeta, zeta_product,
)


def coset_basis(q, maxlev):
    """Ideals and all nonzero cosets refining pi^-1 O up to maxlev."""
    out = [SBFunction.char_ideal(q, n) for n in range(-1, maxlev + 1)]
    for lev in range(0, maxlev + 1):
        for c in KCoset.ideal(q, -1).subcosets(lev):
            if not c.rep.is_zero():
                out.append(SBFunction.char(c))
    return out


def ramified_chars(q, rmax, pi_value=None):
    out = []
    for w in enumerate_characters(q, rmax):
        if w.r > 0:
            out.append(w if pi_value is None else w.with_pi_value(pi_value))
    return out


class TestZeta:
    def test_char_o_trivial(self):
        q = 3
        got = zeta(SBFunction.char_ideal(q, 0), QuasiCharacter.trivial(q))
        expect = ZetaValue.from_fraction(q, [Fraction(q - 1, q)], [1, -1])
        assert got == expect
        assert z_normalized(SBFunction.char_ideal(q, 0),
                            QuasiCharacter.trivial(q)) == \
            ZetaValue.constant(q, Fraction(q - 1, q))

    def test_conductor_coset_is_constant(self):
        # the unit coset at the exact conductor integrates to its own
        # multiplicative measure, with no T dependence
        q = 3
        for w in ramified_chars(q, 2):
            r = w.r
            g = SBFunction.char(KCoset(q, KElement.one(q), r))
            got = zeta(g, w)
            assert got == ZetaValue.constant(q, Fraction(q) ** (-r))

    def test_shell_vanishes_for_ramified(self):
        q = 3
        w = ramified_chars(q, 1)[0]
        g = (SBFunction.char_ideal(q, 1)
             + SBFunction.char_ideal(q, 0, Fraction(-1, q)))
        assert zeta(g, w).is_zero()

    def test_mu_scaling(self):
        q = 2
        mu = Fraction(3, 7)
        got = zeta(SBFunction.char_ideal(q, 0, 1, mu),
                   QuasiCharacter.trivial(q))
        expect = ZetaValue.from_fraction(q, [mu * Fraction(q - 1, q)], [1, -1])
        assert got == expect

    def test_twisted_rejected(self):
        q = 3
        g = SBFunction.char_ideal(q, 0).twisted(KElement.one(q))
        with pytest.raises(ValueError):
            zeta(g, QuasiCharacter.trivial(q))

    def test_scaling_covariance(self):
        q = 3
        rng = random.Random(1)
        triv = QuasiCharacter.trivial(q)
        wram = ramified_chars(q, 1)[0]
        for _ in range(12):
            rep = KElement(q, {e: rng.randrange(q) for e in range(-1, 2)})
            g = SBFunction.char(KCoset(q, rep, rng.randrange(0, 3)))
            alpha = KElement(q, {rng.randrange(-2, 2): rng.randrange(1, q)})
            w = rng.choice([triv, wram])
            lhs = zeta(g.dilate(alpha), w)
            rhs = ZetaValue.monomial(
                q, w.inverse()(alpha), t_exp=-alpha.valuation()) * zeta(g, w)
            assert lhs == rhs


class TestLFunction:
    def test_trivial(self):
        q = 3
        assert l_function(QuasiCharacter.trivial(q)) == \
            ZetaValue.from_fraction(q, [1], [1, -1])

    def test_ramified(self):
        q = 3
        for w in ramified_chars(q, 2):
            assert l_function(w) == ZetaValue.constant(q, 1)

    def test_nontrivial_pi_value(self):
        q = 2
        w = QuasiCharacter.trivial(q, CycRat.root_of_unity(4))
        got = l_function(w)
        assert got.inverse() == (
            ZetaValue.constant(q, 1)
            - ZetaValue.monomial(q, CycRat.root_of_unity(4), t_exp=1))


class TestRho0:
    @pytest.mark.parametrize("q", [2, 3, 5])
    def test_unit_modulus(self, q):
        pi = KElement.uniformizer(q)
        psi = AdditiveCharacter(q, 0)
        seen = False
        for w in ramified_chars(q, 2):
            r = rho0(w, psi, pi)
            assert r * r.conjugate() == 1
            seen = True
        assert seen

    def test_conjugation_relation(self):
        q = 3
        pi = KElement.uniformizer(q)
        for d in (0, 1):
            psi = AdditiveCharacter(q, d)
            for w in ramified_chars(q, 2):
                lhs = rho0(w.inverse(), psi, pi)
                rhs = w.at_minus_one() * rho0(w, psi, pi).conjugate()
                assert lhs == rhs

    def test_unramified_rejected(self):
        q = 3
        with pytest.raises(ValueError):
            rho0(QuasiCharacter.trivial(q), AdditiveCharacter(q, 0),
                 KElement.uniformizer(q))

    def test_q2_r1_empty(self):
        # the unit group mod 1+piO is trivial for q = 2, so no character
        # of exact conductor 1 exists
        assert [w for w in enumerate_characters(2, 1) if w.r == 1] == []


class TestEpsilonStar:
    @pytest.mark.parametrize("q", [2, 3, 5])
    @pytest.mark.parametrize("d", [-1, 0, 1, 2])
    def test_unramified_closed_form(self, q, d):
        pi = KElement.uniformizer(q)
        eps = epsilon_star(QuasiCharacter.trivial(q),
                           AdditiveCharacter(q, d), pi)
        a, b = eps.is_exponential_type()
        k = math.ceil(d / 2)
        assert b == -k
        assert a == CycRat.from_rational(Fraction(q) ** (-2 * k))

    def test_unramified_mu(self):
        q = 3
        eps = epsilon_star(QuasiCharacter.trivial(q),
                           AdditiveCharacter(q, 1), KElement.uniformizer(q),
                           mu=Fraction(2, 5))
        a, b = eps.is_exponential_type()
        assert b == -1 and a == CycRat.from_rational(
            Fraction(2, 5) * Fraction(q) ** (-2))

    @pytest.mark.parametrize("q", [2, 3, 5])
    @pytest.mark.parametrize("d", [0, 1])
    def test_ramified_closed_form(self, q, d):
        pi = KElement.uniformizer(q)
        psi = AdditiveCharacter(q, d)
        for w in ramified_chars(q, 2, CycRat.root_of_unity(4)):
            r = w.r
            k = math.ceil((r - d) / 2)
            delta = Fraction(1) if (d - r) % 2 == 0 else Fraction(1, q)
            expect = (
                ZetaValue.monomial(q, Fraction(q) ** (2 * k), t_exp=k)
                * ZetaValue.constant(q, w.pi_value ** k)
                * ZetaValue.constant(q, CycRat.sqrt_q(q, -r))
                * ZetaValue.constant(q, delta)
                * ZetaValue.constant(q, rho0(w.inverse(), psi, pi)))
            assert epsilon_star(w, psi, pi) == expect

    def test_product_identity(self):
        q = 3
        pi = KElement.uniformizer(q)
        for d in (0, 1):
            psi = AdditiveCharacter(q, d)
            for w in enumerate_characters(q, 2):
                w = w.with_pi_value(CycRat.root_of_unity(5))
                prod = (epsilon_star(w, psi, pi)
                        * epsilon_star(w.inverse(), psi, pi).subst_dual())
                delta = Fraction(1) if (d - w.r) % 2 == 0 else Fraction(1, q)
                expect = ZetaValue.constant(
                    q, CycRat.from_rational(Fraction(q) ** (-d) * delta)
                    * w.at_minus_one())
                assert prod == expect

    def test_nowhere_vanishing(self):
        q = 3
        pi = KElement.uniformizer(q)
        psi = AdditiveCharacter(q, 1)
        for w in enumerate_characters(q, 2):
            a, _ = epsilon_star(w, psi, pi).is_exponential_type()
            assert not a.is_zero()

    @pytest.mark.parametrize("q", [2, 3])
    def test_functional_equation_on_basis(self, q):
        pi = KElement.uniformizer(q)
        chars = [w.with_pi_value(CycRat.root_of_unity(4))
                 for w in enumerate_characters(q, 2)]
        for d in (0, 1):
            psi = AdditiveCharacter(q, d)
            starred = [(f, f.star(psi, pi)) for f in coset_basis(q, 2)]
            for w in chars:
                eps = epsilon_star(w, psi, pi)
                winv = w.inverse()
                for f, fs in starred:
                    lhs = z_normalized(fs, winv).subst_dual()
                    assert lhs == eps * z_normalized(f, w)


class TestIdentityA:
    def test_char_o_trivial(self):
        q = 3
        pi = KElement.uniformizer(q)
        assert check_identity_A(SBFunction.char_ideal(q, 0),
                                QuasiCharacter.trivial(q),
                                AdditiveCharacter(q, 0), pi)

    def test_unit_coset_all_characters(self):
        q = 3
        pi = KElement.uniformizer(q)
        f = SBFunction.char(KCoset(q, KElement.one(q), 2))
        for d in (0, 1):
            psi = AdditiveCharacter(q, d)
            for w in enumerate_characters(q, 2):
                w = w.with_pi_value(CycRat.root_of_unity(3))
                assert check_identity_A(f, w, psi, pi)

    def test_zero_function(self):
        q = 2
        assert check_identity_A(SBFunction.zero(q), QuasiCharacter.trivial(q),
                                AdditiveCharacter(q, 0),
                                KElement.uniformizer(q))


class TestDoubleStar:
    def test_prime_independence(self):
        q = 3
        u = KElement.uniformizer(q)
        pi2 = u * (KElement.one(q) + u)
        f = SBFunction.char(KCoset(q, KElement.one(q), 2))
        assert double_star_invariance(f, u, pi2, AdditiveCharacter(q, 0),
                                      AdditiveCharacter(q, 2))

    def test_parity_mismatch_composition(self):
        q = 3
        u = KElement.uniformizer(q)
        pi2 = u * (KElement.one(q) + u)
        for f in (SBFunction.char_ideal(q, 0),
                  SBFunction.char(KCoset(q, KElement.one(q), 1))):
            assert double_star_invariance(f, u, pi2, AdditiveCharacter(q, 0),
                                          AdditiveCharacter(q, 1))

    def test_non_uniformizer_rejected(self):
        q = 3
        u = KElement.uniformizer(q)
        with pytest.raises(ValueError):
            double_star_invariance(SBFunction.char_ideal(q, 0), u, u * u,
                                   AdditiveCharacter(q, 0),
                                   AdditiveCharacter(q, 0))


class TestTensor:
    def test_product_value(self):
        q = 3
        t = SBTensor.pure(SBFunction.char_ideal(q, 0),
                          SBFunction.char_ideal(q, 0))
        triv = QuasiCharacter.trivial(q)
        one_var = zeta(SBFunction.char_ideal(q, 0), triv)
        assert zeta_product(t, triv, triv) == one_var * one_var

    def test_zero_tensor(self):
        q = 3
        t = SBTensor.pure(SBFunction.zero(q), SBFunction.char_ideal(q, 0))
        assert t.is_zero()
        triv = QuasiCharacter.trivial(q)
        assert zeta_product(t, triv, triv).is_zero()

    def test_functional_equation(self):
        q = 3
        pi = KElement.uniformizer(q)
        psi = AdditiveCharacter(q, 0)
        t = (SBTensor.pure(SBFunction.char_ideal(q, 0),
                           SBFunction.char(KCoset(q, KElement.one(q), 1)))
             + SBTensor.pure(SBFunction.char_ideal(q, 1),
                             SBFunction.char_ideal(q, 0)))
        triv = QuasiCharacter.trivial(q)
        wram = ramified_chars(q, 1)[0]
        for wa in (triv, wram):
            for wb in (triv, wram):
                lhs = (zeta_product(t.star(psi, pi), wa.inverse(),
                                    wb.inverse())
                       / (l_function(wa.inverse())
                          * l_function(wb.inverse()))).subst_dual()
                rhs = (epsilon_star(wa, psi, pi) * epsilon_star(wb, psi, pi)
                       * zeta_product(t, wa, wb)
                       / (l_function(wa) * l_function(wb)))
                assert lhs == rhs
