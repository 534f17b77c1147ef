"""PBW elements of U_q(gl(m,n)) and straightening multiplication.

An element is a finite Q(q)-linear combination of PBW basis monomials

    F1^d' F0^psi' K_mu E0^psi E1^d

with the odd F block first, then the even F block, a central torus
monomial, the even E block, and the odd E block.  Products are computed
by a terminating rewriting system on words of atoms:

    ('E', i, j, n)   n-th ordinary power of the root vector E_{ij}
    ('F', i, j, n)   same on the lowering side
    ('K', mu)        torus monomial K_1^{mu_1} ... K_{m+n}^{mu_{m+n}}

The rewrite rules are the straightening identities of the defining
presentation: supercommutation of nested/disjoint root vectors,
scalar swaps for pairs sharing an endpoint, the two-term overlap
identity for interleaved intervals, the triangular composite-root
recursion, torus commutation, and the E-F crossing rules.  Lowering-side
rules are obtained from raising-side rules through the anti-automorphism
Omega (E <-> F, K -> K^-1, q -> q^-1).
"""

from .errors import (
    DomainError,
    IndexOutOfShape,
    NegativeDividedPower,
    OddPowerTooHigh,
)
from .rootdata import Shape, bilinear_form
from .scalars import (
    RF_ONE,
    RF_ZERO,
    RatFunc,
    gauss_factorial,
)

_MAX_STEPS = 5_000_000


def _e_key(shape, i, j):
    return (shape.parity(i, j), i, j)


def _f_key(shape, i, j):
    return (1 - shape.parity(i, j), -i, -j)


class PBWMonomial:
    """Canonical key of one PBW basis word (value semantics via tuples)."""

    __slots__ = ("fd", "fpsi", "k", "epsi", "ed")

    def __init__(self, fd, fpsi, k, epsi, ed):
        object.__setattr__(self, "fd", fd)
        object.__setattr__(self, "fpsi", fpsi)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "epsi", epsi)
        object.__setattr__(self, "ed", ed)

    def __setattr__(self, *a):
        raise AttributeError("PBWMonomial is immutable")

    def key(self):
        return (self.fd, self.fpsi, self.k, self.epsi, self.ed)

    def __eq__(self, other):
        return isinstance(other, PBWMonomial) and self.key() == other.key()

    def __lt__(self, other):
        return self.key() < other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "PBWMonomial%r" % (self.key(),)


class Element:
    """Finite map PBWMonomial -> RatFunc over a fixed algebra; immutable."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        object.__setattr__(self, "alg", alg)
        object.__setattr__(self, "terms", dict(terms))

    def __setattr__(self, *a):
        raise AttributeError("Element is immutable")

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if self.alg is not other.alg:
            raise DomainError("elements from different algebras")

    def __add__(self, other):
        if isinstance(other, (int, RatFunc)):
            other = self.alg.scalar(other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, RF_ZERO) + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return Element(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, RatFunc)):
            other = self.alg.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if isinstance(c, int):
            c = RatFunc.from_int(c)
        if c.is_zero():
            return self.alg.zero()
        return Element(self.alg, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, RatFunc)):
            return self.scale(other)
        self._check(other)
        return self.alg.multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, RatFunc)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        if n < 0:
            raise DomainError("negative powers only defined for torus monomials")
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.alg.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((k, c) for k, c in self.terms.items()))

    def omega(self):
        return self.alg.omega(self)

    def psi(self):
        return self.alg.psi(self)

    def weight(self):
        """eps-weight when homogeneous; raises otherwise."""
        w = None
        for k in self.terms:
            wk = self.alg.monomial_weight(k)
            if w is None:
                w = wk
            elif w != wk:
                raise DomainError("element is not weight-homogeneous")
        return w if w is not None else tuple([0] * self.alg.shape.rank)

    def parity(self):
        p = None
        for k in self.terms:
            pk = self.alg.monomial_parity(k)
            if p is None:
                p = pk
            elif p != pk:
                raise DomainError("element is not parity-homogeneous")
        return p if p is not None else 0

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].key())

    def __repr__(self):
        if not self.terms:
            return "Element(0)"
        bits = []
        for k, c in self.sorted_terms()[:6]:
            bits.append("%s * %r" % (c.render(), k.key()))
        if len(self.terms) > 6:
            bits.append("... (%d terms)" % len(self.terms))
        return "Element(%s)" % "; ".join(bits)


class Algebra:
    """U_q(gl(m,n)) over Q(q): monomial bookkeeping, straightening, caches."""

    def __init__(self, shape):
        if not isinstance(shape, Shape):
            shape = Shape(*shape)
        self.shape = shape
        self.e0_list = list(shape.I0)
        self.e1_list = list(shape.I1)
        self.f1_list = sorted(shape.I1, reverse=True)
        self.f0_list = sorted(shape.I0, reverse=True)
        self._e0_idx = {p: i for i, p in enumerate(self.e0_list)}
        self._e1_idx = {p: i for i, p in enumerate(self.e1_list)}
        self._f0_idx = {p: i for i, p in enumerate(self.f0_list)}
        self._f1_idx = {p: i for i, p in enumerate(self.f1_list)}
        self._pair_cache = {}
        self._prod_cache = {}
        self._expand_cache = {}
        self._comp_cache = {}
        self._kconv_cache = {}

    # -- basics -------------------------------------------------------------

    def q_sign(self, i):
        return self.shape.eps_sign(i)

    def qi(self, i, power=1):
        """q_i^power as a scalar."""
        return RatFunc.q_power(self.q_sign(i) * power)

    def zero(self):
        return Element(self, {})

    def unit_monomial(self):
        r = self.shape.rank
        return PBWMonomial(
            (0,) * len(self.f1_list),
            (0,) * len(self.f0_list),
            (0,) * r,
            (0,) * len(self.e0_list),
            (0,) * len(self.e1_list),
        )

    def one(self):
        return Element(self, {self.unit_monomial(): RF_ONE})

    def scalar(self, c):
        if isinstance(c, int):
            c = RatFunc.from_int(c)
        if c.is_zero():
            return self.zero()
        return Element(self, {self.unit_monomial(): c})

    def gen(self, kind, i, j):
        """The root vector E_{ij} or F_{ij} as a basis element."""
        self.shape.check_pair(i, j)
        if kind not in ("E", "F"):
            raise DomainError("kind must be 'E' or 'F'")
        return self._atom_element((kind, i, j, 1))

    def k_mono(self, mu):
        mu = tuple(int(x) for x in mu)
        if len(mu) != self.shape.rank:
            raise DomainError("torus exponent length mismatch")
        u = self.unit_monomial()
        return Element(self, {PBWMonomial(u.fd, u.fpsi, mu, u.epsi, u.ed): RF_ONE})

    def k_alpha(self, i, exp=1):
        vec = self.shape.k_alpha_vector(i)
        return self.k_mono(tuple(exp * x for x in vec))

    def _atom_element(self, atom):
        kind, i, j, n = atom
        if n == 0:
            return self.one()
        par = self.shape.parity(i, j)
        if par and n >= 2:
            return self.zero()
        u = self.unit_monomial()
        if kind == "E":
            if par:
                ed = list(u.ed)
                ed[self.e1_list.index((i, j))] = n
                return Element(self, {PBWMonomial(u.fd, u.fpsi, u.k, u.epsi, tuple(ed)): RF_ONE})
            epsi = list(u.epsi)
            epsi[self.e0_list.index((i, j))] = n
            return Element(self, {PBWMonomial(u.fd, u.fpsi, u.k, tuple(epsi), u.ed): RF_ONE})
        if par:
            fd = list(u.fd)
            fd[self.f1_list.index((i, j))] = n
            return Element(self, {PBWMonomial(tuple(fd), u.fpsi, u.k, u.epsi, u.ed): RF_ONE})
        fpsi = list(u.fpsi)
        fpsi[self.f0_list.index((i, j))] = n
        return Element(self, {PBWMonomial(u.fd, tuple(fpsi), u.k, u.epsi, u.ed): RF_ONE})

    def monomial(self, fd=None, fpsi=None, k=None, epsi=None, ed=None):
        u = self.unit_monomial()
        key = PBWMonomial(
            tuple(fd) if fd is not None else u.fd,
            tuple(fpsi) if fpsi is not None else u.fpsi,
            tuple(k) if k is not None else u.k,
            tuple(epsi) if epsi is not None else u.epsi,
            tuple(ed) if ed is not None else u.ed,
        )
        return Element(self, {key: RF_ONE})

    def divided_power(self, kind, i, j, n):
        """E_{ij}^{(n)} = E_{ij}^n / [n]! (and likewise for F)."""
        if n < 0:
            raise NegativeDividedPower("divided power with n=%d" % n)
        self.shape.check_pair(i, j)
        if self.shape.parity(i, j):
            if n >= 2:
                raise OddPowerTooHigh(
                    "odd root vector (%d,%d) admits no divided power %d" % (i, j, n)
                )
            return self._atom_element((kind, i, j, n))
        fact = RatFunc.from_laurent(gauss_factorial(n))
        return self._atom_element((kind, i, j, n)).scale(fact.inverse())

    def kbracket_element(self, i, c, t):
        """The torus bracket element [K_{alpha_i}; c; t] expanded in K-monomials."""
        self.shape.check_node(i)
        if t < 0:
            raise DomainError("t must be nonnegative")
        out = self.one()
        for s in range(1, t + 1):
            a = c - s + 1
            num = self.k_alpha(i, 1).scale(self.qi(i, a)) - self.k_alpha(i, -1).scale(
                self.qi(i, -a)
            )
            den = self.qi(i, s) - self.qi(i, -s)
            out = out * num.scale(den.inverse())
        return out

    # -- monomial <-> word --------------------------------------------------

    def mono_word(self, key):
        w = []
        for idx, (i, j) in enumerate(self.f1_list):
            if key.fd[idx]:
                w.append(("F", i, j, key.fd[idx]))
        for idx, (i, j) in enumerate(self.f0_list):
            if key.fpsi[idx]:
                w.append(("F", i, j, key.fpsi[idx]))
        if any(key.k):
            w.append(("K", key.k))
        for idx, (i, j) in enumerate(self.e0_list):
            if key.epsi[idx]:
                w.append(("E", i, j, key.epsi[idx]))
        for idx, (i, j) in enumerate(self.e1_list):
            if key.ed[idx]:
                w.append(("E", i, j, key.ed[idx]))
        return tuple(w)

    def word_to_monomial(self, word):
        fd = [0] * len(self.f1_list)
        fpsi = [0] * len(self.f0_list)
        k = [0] * self.shape.rank
        epsi = [0] * len(self.e0_list)
        ed = [0] * len(self.e1_list)
        for atom in word:
            if atom[0] == "K":
                for idx, x in enumerate(atom[1]):
                    k[idx] += x
            elif atom[0] == "E":
                _, i, j, n = atom
                if self.shape.parity(i, j):
                    ed[self._e1_idx[(i, j)]] += n
                else:
                    epsi[self._e0_idx[(i, j)]] += n
            else:
                _, i, j, n = atom
                if self.shape.parity(i, j):
                    fd[self._f1_idx[(i, j)]] += n
                else:
                    fpsi[self._f0_idx[(i, j)]] += n
        return PBWMonomial(tuple(fd), tuple(fpsi), tuple(k), tuple(epsi), tuple(ed))

    def monomial_weight(self, key):
        r = self.shape.rank
        w = [0] * r
        for idx, (i, j) in enumerate(self.f1_list):
            if key.fd[idx]:
                w[i - 1] -= key.fd[idx]
                w[j - 1] += key.fd[idx]
        for idx, (i, j) in enumerate(self.f0_list):
            if key.fpsi[idx]:
                w[i - 1] -= key.fpsi[idx]
                w[j - 1] += key.fpsi[idx]
        for idx, (i, j) in enumerate(self.e0_list):
            if key.epsi[idx]:
                w[i - 1] += key.epsi[idx]
                w[j - 1] -= key.epsi[idx]
        for idx, (i, j) in enumerate(self.e1_list):
            if key.ed[idx]:
                w[i - 1] += key.ed[idx]
                w[j - 1] -= key.ed[idx]
        return tuple(w)

    def monomial_parity(self, key):
        return (sum(key.fd) + sum(key.ed)) % 2

    # -- straightening ------------------------------------------------------

    @staticmethod
    def _zone(atom):
        return 0 if atom[0] == "F" else (1 if atom[0] == "K" else 2)

    def _reducible(self, left, right):
        zl, zr = self._zone(left), self._zone(right)
        if zl > zr:
            return True
        if zl != zr:
            return False
        if zl == 1:
            return True  # merge torus monomials
        if zl == 2:
            if (left[1], left[2]) == (right[1], right[2]):
                return True
            return _e_key(self.shape, left[1], left[2]) > _e_key(
                self.shape, right[1], right[2]
            )
        if (left[1], left[2]) == (right[1], right[2]):
            return True
        return _f_key(self.shape, left[1], left[2]) > _f_key(
            self.shape, right[1], right[2]
        )

    def straighten(self, terms):
        """Reduce (coeff, word) pairs to a canonical monomial->coeff map."""
        out = {}
        stack = [(c, tuple(w), 0) for c, w in terms]
        steps = 0
        while stack:
            steps += 1
            if steps > _MAX_STEPS:
                raise RuntimeError("straightening step ceiling exceeded")
            coeff, word, hint = stack.pop()
            if coeff.is_zero():
                continue
            idx = None
            for p in range(max(hint, 0), len(word) - 1):
                if self._reducible(word[p], word[p + 1]):
                    idx = p
                    break
            if idx is None:
                key = self.word_to_monomial(word)
                s = out.get(key, RF_ZERO) + coeff
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
                continue
            for c2, repl in self._resolve(word[idx], word[idx + 1]):
                nw = word[:idx] + repl + word[idx + 2 :]
                stack.append((coeff * c2, nw, max(idx - 1, 0)))
        return out

    def _resolve(self, left, right):
        key = (left, right)
        hit = self._pair_cache.get(key)
        if hit is None:
            hit = self._resolve_uncached(left, right)
            # drop zero-coefficient branches and trivial atoms eagerly
            cleaned = []
            for c, w in hit:
                if c.is_zero():
                    continue
                w2 = tuple(
                    a
                    for a in w
                    if not (a[0] == "K" and not any(a[1]))
                    and not (a[0] in ("E", "F") and a[3] == 0)
                )
                cleaned.append((c, w2))
            hit = cleaned
            self._pair_cache[key] = hit
        return hit

    def _resolve_uncached(self, left, right):
        zl, zr = self._zone(left), self._zone(right)
        if zl == 1 and zr == 1:
            merged = tuple(a + b for a, b in zip(left[1], right[1]))
            if any(merged):
                return [(RF_ONE, (("K", merged),))]
            return [(RF_ONE, ())]
        if zl == 2 and zr == 1:
            # E K -> q^{-n (mu, eps_i - eps_j)} K E
            _, i, j, n = left
            mu = right[1]
            e = -n * bilinear_form(self.shape, mu, self.shape.root_weight(i, j))
            return [(RatFunc.q_power(e), (right, left))]
        if zl == 1 and zr == 0:
            # K F -> q^{-n (mu, eps_s - eps_t)} F K
            _, s, t, n = right
            mu = left[1]
            e = -n * bilinear_form(self.shape, mu, self.shape.root_weight(s, t))
            return [(RatFunc.q_power(e), (right, left))]
        if zl == 2 and zr == 2:
            return self._resolve_ee(left, right)
        if zl == 0 and zr == 0:
            return self._resolve_ff(left, right)
        if zl == 2 and zr == 0:
            return self._resolve_ef(left, right)
        raise AssertionError("unexpected pair %r %r" % (left, right))

    # .. raising-side pairs ..................................................

    def _resolve_ee(self, left, right):
        sh = self.shape
        _, a, b, N = left
        _, c, d, M = right
        if (a, b) == (c, d):
            if sh.parity(a, b) and N + M >= 2:
                return []
            return [(RF_ONE, (("E", a, b, N + M),))]
        pl, pr = sh.parity(a, b), sh.parity(c, d)

        if b == c:
            # E_{a,b} E_{b,d} = E_{a,d} + q_b^{-1} E_{b,d} E_{a,b}
            singles = [
                (RF_ONE, (("E", a, d, 1),)),
                (self.qi(b, -1), (("E", b, d, 1), ("E", a, b, 1))),
            ]
            return self._wrap_peel(singles, left, right)
        if d == a:
            # E_{a,b} E_{c,a} = q_a (E_{c,a} E_{a,b} - E_{c,b})
            singles = [
                (self.qi(a, 1), (("E", c, a, 1), ("E", a, b, 1))),
                (-self.qi(a, 1), (("E", c, b, 1),)),
            ]
            return self._wrap_peel(singles, left, right)
        if a == c:
            # shared left index; out-of-order forces d < b
            assert d < b
            sign = -1 if (sh.parity(a, d) and (N * M) % 2) else 1
            coeff = self.qi(a, -N * M) * sign
            return [(coeff, (("E", a, d, M), ("E", a, b, N)))]
        if b == d:
            # shared right index
            if c < a:
                sign = -1 if (sh.parity(a, b) and (N * M) % 2) else 1
                coeff = self.qi(b, -N * M) * sign
            else:
                sign = -1 if (sh.parity(c, b) and (N * M) % 2) else 1
                coeff = self.qi(b, N * M) * sign
            return [(coeff, (("E", c, b, M), ("E", a, b, N)))]
        nested = (a < c and d < b) or (c < a and b < d)
        disjoint = b < c or d < a
        if nested or disjoint:
            sign = -1 if (pl and pr and (N * M) % 2) else 1
            coeff = RF_ONE * sign
            return [(coeff, (right, left))]
        if a < c < b < d:
            # overlap: E_{a,b}E_{c,d} = (-1)^{pp'} E_{c,d}E_{a,b}
            #                           + (q_b - q_b^-1) E_{a,d}E_{c,b}
            s = -1 if (pl and pr) else 1
            singles = [
                (RF_ONE * s, (("E", c, d, 1), ("E", a, b, 1))),
                (self.qi(b, 1) - self.qi(b, -1), (("E", a, d, 1), ("E", c, b, 1))),
            ]
            return self._wrap_peel(singles, left, right)
        if c < a < d < b:
            s = -1 if (pl and pr) else 1
            singles = [
                (RF_ONE * s, (("E", c, d, 1), ("E", a, b, 1))),
                (
                    (self.qi(d, -1) - self.qi(d, 1)) * s,
                    (("E", c, b, 1), ("E", a, d, 1)),
                ),
            ]
            return self._wrap_peel(singles, left, right)
        raise AssertionError("unhandled raising pair %r %r" % (left, right))

    def _wrap_peel(self, singles, left, right):
        _, a, b, N = left
        _, c, d, M = right
        pre = ((left[0], a, b, N - 1),) if N > 1 else ()
        post = ((right[0], c, d, M - 1),) if M > 1 else ()
        return [(cf, pre + w + post) for cf, w in singles]

    # .. lowering-side pairs via Omega .......................................

    def _resolve_ff(self, left, right):
        _, a, b, N = left
        _, c, d, M = right
        if (a, b) == (c, d):
            if self.shape.parity(a, b) and N + M >= 2:
                return []
            return [(RF_ONE, (("F", a, b, N + M),))]
        mirrored = self._resolve_ee(("E", c, d, M), ("E", a, b, N))
        out = []
        for cf, w in mirrored:
            rw = tuple(("F", x[1], x[2], x[3]) for x in reversed(w))
            out.append((cf.bar(), rw))
        return out

    # .. crossing pairs ......................................................

    def _resolve_ef(self, left, right):
        sh = self.shape
        _, i, j, N = left
        _, s, t, M = right
        if t > s + 1:
            # expand the composite F once: F_{s,t} = -q_c F_{s,c}F_{c,t}
            #                                        + F_{c,t}F_{s,c},  c = s+1
            c = s + 1
            post = (("F", s, t, M - 1),) if M > 1 else ()
            return [
                (-self.qi(c, 1), (left, ("F", s, c, 1), ("F", c, t, 1)) + post),
                (RF_ONE, (left, ("F", c, t, 1), ("F", s, c, 1)) + post),
            ]
        # now F is a simple generator F_{s,s+1}
        if j == i + 1:
            if i != s:
                return [(RF_ONE, (right, left))]
            # Kac relation on one power of each factor
            kvec = sh.k_alpha_vector(i)
            den = (self.qi(i, 1) - self.qi(i, -1)).inverse()
            sgn = RF_ONE * (-1 if i == sh.m else 1)
            singles = [
                (sgn, (("F", i, j, 1), ("E", i, j, 1))),
                (den, (("K", kvec),)),
                (-den, (("K", tuple(-x for x in kvec)),)),
            ]
            return self._wrap_peel(singles, left, right)
        # composite E against simple F: triangular crossing identity
        pl = sh.parity(i, j)
        pr = sh.parity(s, t)
        sgn = RF_ONE * (-1 if (pl and pr) else 1)
        singles = [(sgn, (("F", s, t, 1), ("E", i, j, 1)))]
        if t == j:
            kvec = sh.k_alpha_vector(s)
            singles.append((self.qi(s, -1), (("E", i, s, 1), ("K", kvec))))
        if i == s:
            kvec = tuple(-x for x in sh.k_alpha_vector(s))
            # coefficient -(-1)^{delta_{sm}}
            c2 = RF_ONE if s == sh.m else -RF_ONE
            singles.append((c2, (("E", s + 1, j, 1), ("K", kvec))))
        return self._wrap_peel(singles, left, right)

    # -- products -----------------------------------------------------------

    def mono_product(self, k1, k2):
        key = (k1, k2)
        hit = self._prod_cache.get(key)
        if hit is None:
            hit = self.straighten([(RF_ONE, self.mono_word(k1) + self.mono_word(k2))])
            self._prod_cache[key] = hit
        return hit

    def multiply(self, a, b):
        out = {}
        for k1, c1 in a.terms.items():
            for k2, c2 in b.terms.items():
                c12 = c1 * c2
                for k, c in self.mono_product(k1, k2).items():
                    s = out.get(k, RF_ZERO) + c12 * c
                    if s.is_zero():
                        out.pop(k, None)
                    else:
                        out[k] = s
        return Element(self, out)

    def from_terms(self, pairs):
        """Element from (coeff, word) pairs of atoms."""
        return Element(self, self.straighten([(c, tuple(w)) for c, w in pairs]))

    # -- involutions --------------------------------------------------------

    def omega(self, elt):
        """Anti-automorphism: E_{ij} -> F_{ij}, K -> K^-1, q -> q^-1.

        On a standard monomial this is a pure relabeling because the
        lowering-side order mirrors the raising-side order.
        """
        out = {}
        for key, c in elt.terms.items():
            nk = PBWMonomial(
                tuple(reversed(key.ed)),
                tuple(reversed(key.epsi)),
                tuple(-x for x in key.k),
                tuple(reversed(key.fpsi)),
                tuple(reversed(key.fd)),
            )
            out[nk] = c.bar()
        return Element(self, out)

    def psi(self, elt):
        """Graded anti-automorphism fixing E, F, K with q -> q^-1."""
        imgs = {
            "E": lambda i, j: self.gen("E", i, j),
            "F": lambda i, j: self.gen("F", i, j),
        }

        def image(atom):
            if atom[0] == "K":
                return self.k_mono(atom[1])
            return imgs[atom[0]](atom[1], atom[2])

        return self.apply_hom(
            elt,
            image,
            anti=True,
            graded=True,
            scalar_map=lambda c: c.bar(),
        )

    # -- expansion into simple generators ------------------------------------

    def expand_composite(self, kind, i, j):
        """Words of simple generators equal to the composite root vector."""
        key = (kind, i, j)
        hit = self._comp_cache.get(key)
        if hit is not None:
            return hit
        if j == i + 1:
            hit = [(RF_ONE, ((kind, i, j, 1),))]
        else:
            c = i + 1
            head = (kind, i, c, 1)
            tails = self.expand_composite(kind, c, j)
            out = []
            for cf, w in tails:
                if kind == "E":
                    # E_{ij} = E_{ic} E_{cj} - q_c^{-1} E_{cj} E_{ic}
                    out.append((cf, (head,) + w))
                    out.append((cf * self.qi(c, -1) * -1, w + (head,)))
                else:
                    # F_{ij} = -q_c F_{ic} F_{cj} + F_{cj} F_{ic}
                    out.append((cf * self.qi(c, 1) * -1, (head,) + w))
                    out.append((cf, w + (head,)))
            hit = out
        self._comp_cache[key] = hit
        return hit

    def expand_monomial(self, key):
        """Expansion of a PBW monomial into simple-generator words.

        Returns a list of (coeff, word) with every E/F atom simple of
        power one; a torus atom may appear once in the middle.
        """
        hit = self._expand_cache.get(key)
        if hit is not None:
            return hit
        words = [(RF_ONE, ())]
        for atom in self.mono_word(key):
            if atom[0] == "K":
                pieces = [(RF_ONE, (atom,))]
            else:
                kind, i, j, n = atom
                if j == i + 1:
                    pieces = [(RF_ONE, ((kind, i, j, 1),) * n)]
                else:
                    one = self.expand_composite(kind, i, j)
                    pieces = [(RF_ONE, ())]
                    for _ in range(n):
                        pieces = [
                            (c1 * c2, w1 + w2) for c1, w1 in pieces for c2, w2 in one
                        ]
            words = [(c1 * c2, w1 + w2) for c1, w1 in words for c2, w2 in pieces]
        self._expand_cache[key] = words
        return words

    @staticmethod
    def atom_parity_of(shape, atom):
        if atom[0] == "K":
            return 0
        return shape.parity(atom[1], atom[2])

    def apply_hom(self, elt, image, anti=False, graded=False, scalar_map=None,
                  target_one=None, target_mul=None):
        """Extend a map on simple generators to the whole algebra.

        image(atom) must return a value in the target; the target's unit
        and multiplication default to this algebra's.  With anti=True the
        word is reversed; with graded=True the reversal carries the sign
        (-1)^{number of transposed odd pairs}.
        """
        if target_one is None:
            target_one = self.one()
        if target_mul is None:
            target_mul = lambda x, y: x * y
        acc = None
        for key, coeff in elt.terms.items():
            for c, word in self.expand_monomial(key):
                sign = 1
                if anti:
                    if graded:
                        ps = [self.atom_parity_of(self.shape, a) for a in word]
                        odd = sum(ps)
                        if (odd * (odd - 1) // 2) % 2:
                            sign = -1
                    word = tuple(reversed(word))
                total = coeff * c * sign
                if scalar_map is not None:
                    total = scalar_map(total)
                val = target_one
                for atom in word:
                    val = target_mul(val, image(atom))
                val = val * total if not isinstance(val, Element) else val.scale(total)
                acc = val if acc is None else acc + val
        if acc is None:
            # zero element: scale the unit by zero in the target
            z = target_one * RF_ZERO if not isinstance(target_one, Element) else target_one.scale(RF_ZERO)
            return z
        return acc

    # -- integral form ------------------------------------------------------

    def _k_basis_poly(self, sign, t):
        """[K;0;t] as {exponent: RatFunc} in the variable K_{alpha_i}, q_i=q^sign."""
        poly = {0: RF_ONE}
        for s in range(1, t + 1):
            a = -s + 1
            den = (RatFunc.q_power(sign * s) - RatFunc.q_power(-sign * s)).inverse()
            new = {}
            for e, cval in poly.items():
                up = cval * RatFunc.q_power(sign * a) * den
                dn = cval * RatFunc.q_power(-sign * a) * den
                new[e + 1] = new.get(e + 1, RF_ZERO) + up
                new[e - 1] = new.get(e - 1, RF_ZERO) - dn
            poly = {e: c for e, c in new.items() if not c.is_zero()}
        return poly

    def k_exponent_coords(self, i, nu):
        """Coordinates of K_{alpha_i}^nu in the basis {K^delta [K;0;t]}.

        Returns {(delta, t): RatFunc}.
        """
        sign = self.q_sign(i)
        key = (sign, nu)
        hit = self._kconv_cache.get(key)
        if hit is not None:
            return hit
        if nu == 0:
            hit = {(0, 0): RF_ONE}
            self._kconv_cache[key] = hit
            return hit
        D = abs(nu)
        basis = [(0, t) for t in range(D + 1)] + [(1, t) for t in range(D)]
        cols = []
        for delta, t in basis:
            poly = self._k_basis_poly(sign, t)
            if delta:
                poly = {e + 1: c for e, c in poly.items()}
            cols.append(poly)
        exps = list(range(-D, D + 1))
        mat = [[cols[c].get(e, RF_ZERO) for c in range(len(basis))] for e in exps]
        rhs = [RF_ONE if e == nu else RF_ZERO for e in exps]
        sol = _solve_square(mat, rhs)
        hit = {basis[c]: sol[c] for c in range(len(basis)) if not sol[c].is_zero()}
        self._kconv_cache[key] = hit
        return hit

    def a_form_coords(self, elt):
        """Coordinates in the divided-power integral basis.

        Keys are (fd, fpsi, delta, tvec, epsi, ed) with the torus part in
        the basis prod_i K_{alpha_i}^{delta_i} [K_{alpha_i}; 0; t_i].
        Raises NotIntegral when a coefficient leaves Z[q, q^-1].
        """
        from .errors import NotIntegral

        r = self.shape.rank
        out = {}
        for key, coeff in elt.terms.items():
            c = coeff
            for idx, (i, j) in enumerate(self.f0_list):
                c = c * RatFunc.from_laurent(gauss_factorial(key.fpsi[idx]))
            for idx, (i, j) in enumerate(self.e0_list):
                c = c * RatFunc.from_laurent(gauss_factorial(key.epsi[idx]))
            # K_mu = prod_i K_{alpha_i}^{nu_i}, nu = prefix sums of mu
            nu = []
            acc = 0
            for x in key.k:
                acc += x
                nu.append(acc)
            options = [(tuple(), tuple(), c)]
            for i in range(1, r + 1):
                coords = self.k_exponent_coords(i, nu[i - 1])
                options = [
                    (deltas + (delta,), ts + (t,), cv * c2)
                    for deltas, ts, cv in options
                    for (delta, t), c2 in coords.items()
                ]
            for deltas, ts, cv in options:
                akey = (key.fd, key.fpsi, deltas, ts, key.epsi, key.ed)
                s = out.get(akey, RF_ZERO) + cv
                if s.is_zero():
                    out.pop(akey, None)
                else:
                    out[akey] = s
        result = {}
        for akey, cv in sorted(out.items()):
            li = cv.as_laurent_int()
            if li is None:
                raise NotIntegral(akey, cv.render())
            result[akey] = li
        return result


def _solve_square(mat, rhs):
    """Solve a square linear system over any exact field by elimination."""
    n = len(mat)
    aug = [list(mat[r]) + [rhs[r]] for r in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if piv is None:
            raise ArithmeticError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]
