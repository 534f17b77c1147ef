"""Hopf superalgebra structure: coproduct, counit, and antipode.

The tensor square carries the sign rule of super algebra:
(a (x) b)(c (x) d) = (-1)^{par b * par c} ac (x) bd.

Generator values:
    delta(E_i) = E_i (x) K_{alpha_i} + 1 (x) E_i
    delta(F_i) = F_i (x) 1 + K_{alpha_i}^{-1} (x) F_i
    delta(K_mu) = K_mu (x) K_mu
    counit(E) = counit(F) = 0, counit(K_mu) = 1
    S(E_i) = -E_i K_{alpha_i}^{-1},  S(F_i) = -K_{alpha_i} F_i,
    S(K_mu) = K_{-mu}
with the antipode extended as the graded anti-homomorphism
S(xy) = (-1)^{par x * par y} S(y) S(x).
"""

from .pbwcore import Element
from .scalars import RF_ONE, RF_ZERO, RatFunc


class TensorElement:
    """Element of the signed tensor square, keyed by monomial pairs."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        object.__setattr__(self, "alg", alg)
        object.__setattr__(
            self, "terms", {k: c for k, c in terms.items() if not c.is_zero()}
        )

    def __setattr__(self, *a):
        raise AttributeError("TensorElement is immutable")

    @classmethod
    def one(cls, alg):
        u = alg.unit_monomial()
        return cls(alg, {(u, u): RF_ONE})

    @classmethod
    def zero(cls, alg):
        return cls(alg, {})

    @classmethod
    def from_pair(cls, x, y):
        alg = x.alg
        out = {}
        for k1, c1 in x.terms.items():
            for k2, c2 in y.terms.items():
                key = (k1, k2)
                s = out.get(key, RF_ZERO) + c1 * c2
                out[key] = s
        return cls(alg, out)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, RF_ZERO) + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return TensorElement(self.alg, out)

    def __neg__(self):
        return TensorElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if isinstance(c, int):
            c = RatFunc.from_int(c)
        return TensorElement(self.alg, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, RatFunc)):
            return self.scale(other)
        if not isinstance(other, TensorElement):
            return NotImplemented
        alg = self.alg
        out = {}
        for (a, b), c1 in self.terms.items():
            pb = alg.monomial_parity(b)
            for (c, d), c2 in other.terms.items():
                pc = alg.monomial_parity(c)
                coeff = c1 * c2
                if pb and pc:
                    coeff = -coeff
                left = alg.mono_product(a, c)
                right = alg.mono_product(b, d)
                for k1, v1 in left.items():
                    for k2, v2 in right.items():
                        key = (k1, k2)
                        s = out.get(key, RF_ZERO) + coeff * v1 * v2
                        if s.is_zero():
                            out.pop(key, None)
                        else:
                            out[key] = s
        return TensorElement(alg, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((k, v) for k, v in self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0].key(), kv[0][1].key()))

    def map_slot(self, f, slot):
        """Apply a linear map (Element -> Element) to one tensor slot."""
        alg = self.alg
        out = {}
        for (a, b), c in self.terms.items():
            src = a if slot == 0 else b
            img = f(Element(alg, {src: RF_ONE}))
            for k, v in img.terms.items():
                key = (k, b) if slot == 0 else (a, k)
                s = out.get(key, RF_ZERO) + c * v
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return TensorElement(alg, out)

    def multiply_out(self):
        """The image under multiplication m(a (x) b) = ab."""
        alg = self.alg
        acc = alg.zero()
        for (a, b), c in self.terms.items():
            acc = acc + Element(alg, {a: c}) * Element(alg, {b: RF_ONE})
        return acc

    def __repr__(self):
        return "TensorElement(%d terms)" % len(self.terms)


class Hopf:
    """Coproduct, counit and antipode over a fixed straightening algebra."""

    def __init__(self, alg):
        self.alg = alg
        self._delta_gen = {}

    # -- generator images ----------------------------------------------------

    def _delta_atom(self, atom):
        alg = self.alg
        hit = self._delta_gen.get(atom)
        if hit is not None:
            return hit
        if atom[0] == "K":
            k = alg.k_mono(atom[1])
            ((key, _),) = k.terms.items()
            hit = TensorElement(alg, {(key, key): RF_ONE})
        else:
            kind, i, j, _ = atom
            g = alg.gen(kind, i, j)
            if kind == "E":
                hit = TensorElement.from_pair(g, alg.k_alpha(i)) + TensorElement.from_pair(
                    alg.one(), g
                )
            else:
                hit = TensorElement.from_pair(g, alg.one()) + TensorElement.from_pair(
                    alg.k_alpha(i, -1), g
                )
        self._delta_gen[atom] = hit
        return hit

    def delta(self, elt):
        """The coproduct, a superalgebra map into the signed tensor square."""
        return self.alg.apply_hom(
            elt,
            self._delta_atom,
            target_one=TensorElement.one(self.alg),
            target_mul=lambda x, y: x * y,
        )

    def counit(self, elt):
        """The counit: kills E and F, sends every K-monomial to 1."""
        u = self.alg.unit_monomial()
        acc = RF_ZERO
        for key, coeff in elt.terms.items():
            if (key.fd, key.fpsi, key.epsi, key.ed) == (u.fd, u.fpsi, u.epsi, u.ed):
                acc = acc + coeff
        return acc

    def antipode(self, elt):
        """The antipode, a graded anti-homomorphism."""
        alg = self.alg

        def image(atom):
            if atom[0] == "K":
                return alg.k_mono(tuple(-x for x in atom[1]))
            kind, i, j, _ = atom
            if kind == "E":
                return -(alg.gen("E", i, j) * alg.k_alpha(i, -1))
            return -(alg.k_alpha(i) * alg.gen("F", i, j))

        return alg.apply_hom(elt, image, anti=True, graded=True)

    # -- derived maps ----------------------------------------------------------

    def delta_slot(self, te, slot):
        """Apply delta to one slot of a tensor element: a map into U^(x)3.

        Returns {(k1, k2, k3): coeff}.
        """
        out = {}
        for (a, b), c in te.terms.items():
            src = a if slot == 0 else b
            img = self.delta(Element(self.alg, {src: RF_ONE}))
            for (x, y), v in img.terms.items():
                key = (x, y, b) if slot == 0 else (a, x, y)
                s = out.get(key, RF_ZERO) + c * v
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return out


class TensorSquareView:
    """Adapter exposing the algebra interface with generators replaced by
    their coproducts; running a relation catalog against it checks that the
    coproduct respects the presentation."""

    def __init__(self, hopf):
        self._hopf = hopf
        self._alg = hopf.alg
        self.shape = hopf.alg.shape

    def qi(self, i, power=1):
        return self._alg.qi(i, power)

    def gen(self, kind, i, j):
        return self._hopf.delta(self._alg.gen(kind, i, j))

    def k_mono(self, mu):
        return self._hopf.delta(self._alg.k_mono(mu))

    def k_alpha(self, i, exp=1):
        return self._hopf.delta(self._alg.k_alpha(i, exp))

    def one(self):
        return TensorElement.one(self._alg)

    def zero(self):
        return TensorElement.zero(self._alg)
