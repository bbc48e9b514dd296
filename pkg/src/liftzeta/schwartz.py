"""Schwartz functions on K: canonical forms, Haar integral, Fourier
transform, and the W / nabla / star operators.

An SBFunction is a finite sum of terms coeff * psi(b*x) * Char(atom) where
the atom is a coset a + pi^n O or a single point {c}.  The canonical
("plain") form has no twists, pairwise disjoint cosets, and no full family
of q sibling cosets with equal coefficients.  Point atoms ride along for the
pointwise calculus (evaluation, Haar integral, absolute value) but are
rejected by the transforms, which only make sense on locally constant
functions.
"""

from fractions import Fraction
import math
import re

from .exactnum import CycRat, cyc_zero
from .localfield import KCoset, KElement, KSingleton

TERM_CAP = 10 ** 5


def _isqrt_fraction(fr):
    """Exact square root of a nonnegative Fraction, or None."""
    n, d = fr.numerator, fr.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def cyc_abs(z, q):
    """|z| for a cyclotomic scalar, exact when z * conj(z) is a rational
    square times a power of q.  Raises otherwise."""
    n = z * z.conjugate()
    if not n.is_rational():
        raise ValueError("absolute value not exactly representable")
    fr = n.as_fraction()
    if fr == 0:
        return CycRat.from_rational(0)
    k = 0
    while fr.numerator % q == 0:
        fr /= q
        k += 1
    while fr.denominator % q == 0:
        fr *= q
        k -= 1
    root = _isqrt_fraction(fr)
    if root is None:
        raise ValueError("absolute value not exactly representable")
    return CycRat.sqrt_q(q, k) * CycRat.from_rational(root)


def _coerce_coeff(c):
    if isinstance(c, CycRat):
        return c
    return CycRat.from_rational(c)


class SBFunction:
    """Finite combination of (possibly twisted) coset indicators on K."""

    __slots__ = ("q", "mu", "terms", "_normal")

    def __init__(self, q, terms=(), mu=Fraction(1)):
        self.q = q
        self.mu = Fraction(mu)
        cleaned = []
        for atom, twist, coeff in terms:
            coeff = _coerce_coeff(coeff)
            if not coeff.is_zero():
                cleaned.append((atom, twist, coeff))
        self.terms = tuple(cleaned)
        self._normal = False

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, q, mu=Fraction(1)):
        return cls(q, (), mu)

    @classmethod
    def char(cls, coset, coeff=1, mu=Fraction(1)):
        return cls(coset.q, [(coset, None, coeff)], mu)

    @classmethod
    def char_ideal(cls, q, n, coeff=1, mu=Fraction(1)):
        return cls.char(KCoset.ideal(q, n), coeff, mu)

    @classmethod
    def char_point(cls, q, point, coeff=1, mu=Fraction(1)):
        return cls(q, [(KSingleton(q, point), None, coeff)], mu)

    @classmethod
    def char_units(cls, q, mu=Fraction(1)):
        """Indicator of O^x = O minus pi O."""
        return (cls.char_ideal(q, 0, 1, mu)
                + cls.char_ideal(q, 1, -1, mu))

    def twisted(self, b):
        """Multiply by the character factor psi(b * x)."""
        return SBFunction(self.q, [(a, b if t is None else t + b, c)
                                   for a, t, c in self.terms], self.mu)

    # -- algebra ---------------------------------------------------------------
    def _check(self, other):
        if self.q != other.q or self.mu != other.mu:
            raise ValueError("mixed base field or measure normalization")

    def __add__(self, other):
        if not isinstance(other, SBFunction):
            return NotImplemented
        self._check(other)
        return SBFunction(self.q, self.terms + other.terms, self.mu)

    def __neg__(self):
        return SBFunction(self.q, [(a, t, -c) for a, t, c in self.terms],
                          self.mu)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _coerce_coeff(c)
        return SBFunction(self.q, [(a, t, c * co) for a, t, co in self.terms],
                          self.mu)

    def __mul__(self, c):
        if isinstance(c, SBFunction):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def is_plain(self):
        return all(t is None for _, t, _ in self.terms)

    # -- evaluation ---------------------------------------------------------------
    def evaluate(self, x, psi=None):
        total = cyc_zero()
        for atom, twist, coeff in self.terms:
            if atom.contains(x):
                v = coeff
                if twist is not None:
                    if psi is None:
                        raise ValueError("twisted term needs psi")
                    v = v * psi(twist * x)
                total = total + v
        return total

    # -- canonicalization ------------------------------------------------------------
    def normalize(self, psi=None):
        """Plain canonical form: twist expansion, then trie merging."""
        if self._normal:
            return self
        singles = {}  # point -> coeff
        pending = []
        for atom, twist, coeff in self.terms:
            if isinstance(atom, KSingleton):
                v = coeff
                if twist is not None:
                    if psi is None:
                        raise ValueError("twisted term needs psi")
                    v = v * psi(twist * atom.point)
                key = atom.point
                singles[key] = singles[key] + v if key in singles else v
                continue
            if twist is None or twist.is_zero():
                pending.append((atom, coeff))
                continue
            if psi is None:
                raise ValueError("twisted term needs psi")
            # psi(b x) is constant on cosets of level d - w(b)
            lev = max(atom.level, psi.d - twist.valuation())
            subs = atom.subcosets(lev)
            if len(self.terms) * len(subs) > TERM_CAP:
                raise ValueError("term cap exceeded")
            vals = [coeff * CycRat.root_of_unity(self.q, t)
                    for t in range(self.q)]
            for sub in subs:
                pending.append((sub, vals[psi.twist_digit(twist, sub.rep)]))

        if not pending:
            out = []
        else:
            base = min(min(c.level, c.rep.valuation() if not c.rep.is_zero()
                           else c.level) for c, _ in pending)
            keymap = {}
            for c, coeff in pending:
                key = tuple(c.rep.digit(e) for e in range(base, c.level))
                keymap[key] = keymap[key] + coeff if key in keymap else coeff
            keymap = self._push_down(keymap)
            keymap = {k: v for k, v in keymap.items() if not v.is_zero()}
            keymap = self._merge_up(keymap)
            out = []
            for key in sorted(keymap, key=lambda k: (len(k), k)):
                rep = KElement(self.q, {base + i: d for i, d in enumerate(key)})
                out.append((KCoset(self.q, rep, base + len(key)), None,
                            keymap[key]))

        for pt in sorted(singles, key=lambda p: tuple(sorted(p.digits.items()))):
            v = singles[pt]
            if not v.is_zero():
                out.append((KSingleton(self.q, pt), None, v))
        result = SBFunction(self.q, out, self.mu)
        result._normal = True
        return result

    def _push_down(self, keymap):
        """Split any key that is a proper prefix of another key."""
        while True:
            prefixes = set()
            for k in keymap:
                for i in range(len(k)):
                    prefixes.add(k[:i])
            split = [k for k in keymap if k in prefixes]
            if not split:
                return keymap
            for k in split:
                c = keymap.pop(k)
                for d in range(self.q):
                    child = k + (d,)
                    keymap[child] = keymap[child] + c \
                        if child in keymap else c
            if len(keymap) > TERM_CAP:
                raise ValueError("term cap exceeded")

    def _merge_up(self, keymap):
        """Collapse full sibling families with equal coefficients."""
        changed = True
        while changed:
            changed = False
            parents = sorted({k[:-1] for k in keymap if k},
                             key=len, reverse=True)
            for p in parents:
                kids = [p + (d,) for d in range(self.q)]
                if all(k in keymap for k in kids):
                    c0 = keymap[kids[0]]
                    if all(keymap[k] == c0 for k in kids[1:]):
                        for k in kids:
                            del keymap[k]
                        keymap[p] = c0
                        changed = True
        return keymap

    def equals(self, other, psi=None):
        a = self.normalize(psi)
        b = other.normalize(psi)
        return a._canon_key() == b._canon_key()

    def _canon_key(self):
        out = []
        for atom, _, coeff in self.terms:
            if isinstance(atom, KSingleton):
                out.append(("pt", tuple(sorted(atom.point.digits.items())), coeff))
            else:
                out.append(("cs", atom.level,
                            tuple(sorted(atom.rep.digits.items())), coeff))
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, SBFunction):
            return NotImplemented
        return self.equals(other)

    # -- integral --------------------------------------------------------------------
    def haar_integral(self, psi=None):
        g = self.normalize(psi)
        total = cyc_zero()
        for atom, _, coeff in g.terms:
            if isinstance(atom, KSingleton):
                continue  # points have measure zero
            total = total + coeff * CycRat.from_rational(
                self.mu * Fraction(self.q) ** (-atom.level))
        return total

    # -- transforms ---------------------------------------------------------------------
    def _plain_cosets(self, psi=None, op="transform"):
        g = self.normalize(psi)
        for atom, _, _ in g.terms:
            if isinstance(atom, KSingleton):
                raise ValueError("%s undefined for point masses" % op)
        return g

    def fourier(self, psi):
        """g-hat(y) = integral of g(x) psi(xy) dx."""
        g = self._plain_cosets(psi, "fourier transform")
        out = []
        for atom, _, coeff in g.terms:
            scale = CycRat.from_rational(
                self.mu * Fraction(self.q) ** (-atom.level))
            ideal = KCoset.ideal(self.q, psi.d - atom.level)
            twist = None if atom.rep.is_zero() else atom.rep
            out.append((ideal, twist, coeff * scale))
        return SBFunction(self.q, out, self.mu).normalize(psi)

    def w_operator(self, pi, psi=None):
        g = self._plain_cosets(psi, "W operator")
        out = []
        for atom, _, coeff in g.terms:
            if atom.rep.is_zero():
                out.append((KCoset.ideal(self.q, 2 * atom.level), None, coeff))
            else:
                v = atom.rep.valuation()
                even = (pi ** v) * atom.rep if v >= 0 else \
                    atom.rep * pi.invert(atom.level + 2 * abs(v) + 2) ** (-v)
                out.append((KCoset(self.q, even, atom.level + v), None, coeff))
                odd = even * pi
                out.append((KCoset(self.q, odd, atom.level + v + 1), None,
                            coeff))
        return SBFunction(self.q, out, self.mu).normalize(psi)

    def nabla_compose(self, pi, psi=None):
        """x -> g(nabla x) with nabla x = pi^w(x) x."""
        g = self._plain_cosets(psi, "nabla composition")
        out = []
        for atom, _, coeff in g.terms:
            if atom.rep.is_zero():
                m = atom.level
                out.append((KCoset.ideal(self.q, -(-m // 2)), None, coeff))
            else:
                v = atom.rep.valuation()
                if v % 2:
                    continue
                k = v // 2
                rep = atom.rep * pi.invert(atom.level + 2 * abs(k) + 2) ** k \
                    if k > 0 else (pi ** (-k)) * atom.rep
                out.append((KCoset(self.q, rep, atom.level - k), None, coeff))
        return SBFunction(self.q, out, self.mu).normalize(psi)

    def star(self, psi, pi):
        """g* = (W g)-hat composed with nabla."""
        return self.w_operator(pi, psi).fourier(psi).nabla_compose(pi, psi)

    # -- geometry -----------------------------------------------------------------------
    def dilate(self, alpha):
        """x -> g(alpha x)."""
        if alpha.is_zero():
            raise ValueError("dilation by zero")
        wa = alpha.valuation()
        out = []
        for atom, twist, coeff in self.terms:
            nt = None if twist is None else alpha * twist
            if isinstance(atom, KSingleton):
                if len(alpha.digits) != 1:
                    raise ValueError(
                        "point dilation needs a monomial scale factor")
                inv = KElement(self.q, {-wa: pow(alpha.digit(wa), -1, self.q)})
                out.append((KSingleton(self.q, inv * atom.point), nt, coeff))
                continue
            lev = atom.level - wa
            if atom.rep.is_zero():
                rep = atom.rep
            else:
                prec = lev - atom.rep.valuation() + 1
                rep = alpha.invert(max(prec, 1)) * atom.rep
            out.append((KCoset(self.q, rep, lev), nt, coeff))
        return SBFunction(self.q, out, self.mu)

    def translate(self, tau, psi=None):
        """x -> g(x + tau)."""
        out = []
        for atom, twist, coeff in self.terms:
            c = coeff
            if twist is not None:
                if psi is None:
                    raise ValueError("twisted term needs psi")
                c = c * psi(twist * tau)
            if isinstance(atom, KSingleton):
                out.append((KSingleton(self.q, atom.point - tau), twist, c))
            else:
                out.append((KCoset(self.q, atom.rep - tau, atom.level),
                            twist, c))
        return SBFunction(self.q, out, self.mu)

    def abs_pointwise(self):
        """|g| as an SBFunction; coefficients must have exact absolute value."""
        g = self.normalize()
        out = []
        coset_terms = [(a, c) for a, _, c in g.terms if isinstance(a, KCoset)]
        for atom, c in coset_terms:
            out.append((atom, None, cyc_abs(c, self.q)))
        for atom, _, c in g.terms:
            if not isinstance(atom, KSingleton):
                continue
            backdrop = cyc_zero()
            for cs, cc in coset_terms:
                if cs.contains(atom.point):
                    backdrop = backdrop + cc
            correction = cyc_abs(backdrop + c, self.q) - cyc_abs(backdrop,
                                                                 self.q)
            out.append((atom, None, correction))
        return SBFunction(self.q, out, self.mu).normalize()

    # -- parsing / printing ---------------------------------------------------------------
    @classmethod
    def parse(cls, q, text, mu=Fraction(1)):
        """Literal syntax: "1*[1 + u^2*O] - 2*[u^-1 + u*O]"; "O" alone means
        the ring of integers, "u^k*O" the ideal pi^k O."""
        text = text.strip()
        if text in ("0", ""):
            return cls.zero(q, mu)
        terms = []
        pat = re.compile(r"([+-])?\s*([^+\-\[\]]*)\[([^\]]*)\]")
        spans = list(pat.finditer(text))
        covered = "".join(m.group(0) for m in spans)
        if covered.replace(" ", "") != text.replace(" ", ""):
            raise ValueError("unparsable term in %r" % text)
        for m in spans:
            sign, head, bracket = m.groups()
            neg = sign == "-"
            bracket = bracket.strip()
            head = head.rstrip("* ").strip()
            coeff = Fraction(head) if head else Fraction(1)
            if neg:
                coeff = -coeff
            parts = [s.strip() for s in bracket.split("+")]
            ideal_part = parts[-1]
            if not ideal_part.endswith("O"):
                raise ValueError("coset bracket must end with an ideal")
            ideal_part = ideal_part[:-1].rstrip("*").strip()
            if not ideal_part:
                level = 0
            elif ideal_part == "u":
                level = 1
            else:
                if not ideal_part.startswith("u^"):
                    raise ValueError("bad ideal %r" % ideal_part)
                level = int(ideal_part[2:])
            rep_text = " + ".join(parts[:-1]) if len(parts) > 1 else "0"
            rep = KElement.parse(q, rep_text)
            terms.append((KCoset(q, rep, level), None, coeff))
        return cls(q, terms, mu)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for atom, twist, coeff in self.terms:
            s = "%s*%s" % (coeff, atom)
            if twist is not None:
                s += "*psi(%s x)" % twist
            bits.append(s)
        return " + ".join(bits)

    __repr__ = __str__


def lift_finite(h, r, q, mu=Fraction(1)):
    """The function on K vanishing off pi^r O with value h(residue) there:
    sum over digits c of h(c) Char(c pi^r + pi^(r+1) O)."""
    terms = []
    for c in range(q):
        coeff = h.get(c, 0) if isinstance(h, dict) else h(c)
        terms.append((KCoset(q, KElement(q, {r: c}), r + 1), None, coeff))
    return SBFunction(q, terms, mu).normalize()
