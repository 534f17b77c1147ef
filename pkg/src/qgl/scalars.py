"""Exact scalar arithmetic for the engine.

Three levels:

    LaurentInt -- Laurent polynomials over Z, the ring Z[q, q^-1];
    RatFunc    -- rational functions over Q, the field Q(q);
    CycloNum   -- the cyclotomic field Q(eta), eta a primitive l-th
                  root of unity (l odd, >= 3), realized as Q[q]/Phi_l.

Plus the q-combinatorics used everywhere: symmetric Gaussian integers
[n], Gaussian factorials and binomials, and the bracket scalar
(the eigenvalue of the torus bracket element on a weight vector).

All values are immutable after construction.
"""

from fractions import Fraction

from .errors import BadRootOrder, DenominatorVanishes

# ---------------------------------------------------------------------------
# dense polynomials over Q: tuples of Fractions, ascending degree, no
# trailing zeros; () is the zero polynomial.
# ---------------------------------------------------------------------------


def _ptrim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _ptrim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _ptrim(out)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(rem) <= db:
        return (), _ptrim(rem)
    quo = [Fraction(0)] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c:
            f = c / lead
            quo[i - db] = f
            for j, cb in enumerate(b):
                rem[i - db + j] -= f * cb
    return _ptrim(quo), _ptrim(rem)


def _pgcd(a, b):
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a:
        lead = a[-1]
        if lead != 1:
            a = tuple(c / lead for c in a)
    return a


def _pconst(c):
    c = Fraction(c)
    return (c,) if c else ()


def _peval(a, x):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


_ONE_POLY = (Fraction(1),)


def _render_poly(coeffs_by_exp):
    """Render {exponent: Fraction} as canonical text like '3*q^2 - q^-1 + 4'."""
    items = [(e, c) for e, c in sorted(coeffs_by_exp.items(), reverse=True) if c]
    if not items:
        return "0"
    parts = []
    for pos, (e, c) in enumerate(items):
        neg = c < 0
        c = -c if neg else c
        if e == 0:
            body = str(c)
        else:
            qpart = "q" if e == 1 else "q^%d" % e
            body = qpart if c == 1 else "%s*%s" % (c, qpart)
        if pos == 0:
            parts.append("-" + body if neg else body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


# ---------------------------------------------------------------------------
# LaurentInt
# ---------------------------------------------------------------------------


class LaurentInt:
    """Laurent polynomial over Z: map exponent -> nonzero integer coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        cleaned = {}
        if coeffs:
            for e, c in coeffs.items():
                if c:
                    cleaned[int(e)] = int(c)
        object.__setattr__(self, "coeffs", cleaned)

    def __setattr__(self, *a):
        raise AttributeError("LaurentInt is immutable")

    @classmethod
    def from_int(cls, n):
        return cls({0: n})

    @classmethod
    def q_power(cls, k):
        return cls({k: 1})

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        other = _as_laurent(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentInt(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentInt({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-_as_laurent(other))

    def __rsub__(self, other):
        return _as_laurent(other) + (-self)

    def __mul__(self, other):
        other = _as_laurent(other)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentInt(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentInt.from_int(other)
        if not isinstance(other, LaurentInt):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def bar(self):
        """Substitute q -> q^-1."""
        return LaurentInt({-e: c for e, c in self.coeffs.items()})

    def at_one(self):
        return sum(self.coeffs.values())

    def render(self):
        return _render_poly({e: Fraction(c) for e, c in self.coeffs.items()})

    def __repr__(self):
        return "LaurentInt(%s)" % self.render()


def _as_laurent(x):
    if isinstance(x, LaurentInt):
        return x
    if isinstance(x, int):
        return LaurentInt.from_int(x)
    raise TypeError("cannot coerce %r to LaurentInt" % (x,))


# ---------------------------------------------------------------------------
# RatFunc
# ---------------------------------------------------------------------------


class RatFunc:
    """Rational function in q over Q, stored in lowest terms, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=_ONE_POLY):
        # callers normally go through the classmethods / _make
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def _make(cls, num, den):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return _RF_ZERO
        g = _pgcd(num, den)
        if len(g) > 1 or (g and g[0] != 1):
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            num = tuple(c / lead for c in num)
            den = tuple(c / lead for c in den)
        return cls(num, den)

    @classmethod
    def from_int(cls, n):
        return cls(_pconst(n))

    @classmethod
    def from_fraction(cls, f):
        return cls(_pconst(f))

    @classmethod
    def q_power(cls, k):
        if k >= 0:
            return cls(_ptrim([Fraction(0)] * k + [Fraction(1)]))
        return cls(_ONE_POLY, _ptrim([Fraction(0)] * (-k) + [Fraction(1)]))

    @classmethod
    def from_laurent(cls, lp):
        lp = _as_laurent(lp)
        if not lp.coeffs:
            return _RF_ZERO
        shift = min(lp.coeffs)
        shift = min(shift, 0)
        deg = max(lp.coeffs) - shift
        num = [Fraction(0)] * (deg + 1)
        for e, c in lp.coeffs.items():
            num[e - shift] = Fraction(c)
        den = _ptrim([Fraction(0)] * (-shift) + [Fraction(1)])
        return cls._make(_ptrim(num), den)

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, int):
            return RatFunc.from_int(other)
        if isinstance(other, Fraction):
            return RatFunc.from_fraction(other)
        if isinstance(other, LaurentInt):
            return RatFunc.from_laurent(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return RatFunc._make(num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return _RF_ZERO
        return RatFunc._make(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc._make(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def inverse(self):
        return RatFunc.from_int(1) / self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = _RF_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def bar(self):
        """Substitute q -> q^-1 (an involutive field automorphism)."""
        dn, dd = len(self.num) - 1, len(self.den) - 1
        num = list(reversed(self.num))
        den = list(reversed(self.den))
        # p(1/q) = rev(p) / q^deg p; shift both sides to clear the powers of q
        if dn >= dd:
            den = [0] * (dn - dd) + den
        else:
            num = [0] * (dd - dn) + num
        num, den = _ptrim(num), _ptrim(den)
        return RatFunc._make(num, den)

    def _den_q_power(self):
        """If den == q^k exactly, return k; else None."""
        d = self.den
        if all(c == 0 for c in d[:-1]) and d[-1] == 1:
            return len(d) - 1
        return None

    def as_laurent_int(self):
        """Return the LaurentInt equal to self, or None if not in Z[q,q^-1]."""
        k = self._den_q_power()
        if k is None:
            return None
        out = {}
        for i, c in enumerate(self.num):
            if c:
                if c.denominator != 1:
                    return None
                out[i - k] = c.numerator
        return LaurentInt(out)

    def as_laurent_rational(self):
        """Return {exp: Fraction} if den is a power of q, else None."""
        k = self._den_q_power()
        if k is None:
            return None
        return {i - k: c for i, c in enumerate(self.num) if c}

    def as_int(self):
        """Return the integer equal to self, or None."""
        li = self.as_laurent_int()
        if li is None:
            return None
        if not li.coeffs:
            return 0
        if set(li.coeffs) == {0}:
            return li.coeffs[0]
        return None

    def eval_fraction(self, x):
        x = Fraction(x)
        d = _peval(self.den, x)
        if d == 0:
            raise ZeroDivisionError("pole at q=%s" % x)
        return _peval(self.num, x) / d

    def render(self):
        lau = self.as_laurent_rational()
        if lau is not None:
            return _render_poly(lau)
        num = _render_poly({i: c for i, c in enumerate(self.num) if c})
        den = _render_poly({i: c for i, c in enumerate(self.den) if c})
        return "(%s)/(%s)" % (num, den)

    def __repr__(self):
        return "RatFunc(%s)" % self.render()


_RF_ZERO = RatFunc((), _ONE_POLY)
_RF_ONE = RatFunc(_ONE_POLY, _ONE_POLY)

RF_ZERO = _RF_ZERO
RF_ONE = _RF_ONE
RF_Q = RatFunc.q_power(1)


# ---------------------------------------------------------------------------
# q-combinatorics
# ---------------------------------------------------------------------------


def gauss_int(n, sign=1):
    """Symmetric Gaussian integer [n] = (q_i^n - q_i^-n)/(q_i - q_i^-1), q_i = q^sign.

    [n] is invariant under q -> q^-1, so the sign never changes the value;
    it is accepted to keep call sites honest about which q_i they mean.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if n == 0:
        return LaurentInt({})
    neg = n < 0
    n = abs(n)
    out = {n - 1 - 2 * k: 1 for k in range(n)}
    lp = LaurentInt(out)
    return -lp if neg else lp


def gauss_factorial(n, sign=1):
    """[n]! = [n][n-1]...[1]; [0]! = 1."""
    if n < 0:
        raise ValueError("factorial of negative integer")
    out = LaurentInt.from_int(1)
    for k in range(2, n + 1):
        out = out * gauss_int(k, sign)
    return out


def gauss_binomial(m, n, sign=1):
    """Gaussian binomial [m choose n]; zero when n > m or n < 0 (convention)."""
    if n < 0 or n > m:
        return LaurentInt({})
    n = min(n, m - n)
    num = RatFunc.from_int(1)
    for k in range(n):
        num = num * RatFunc.from_laurent(gauss_int(m - k, sign))
    den = RatFunc.from_laurent(gauss_factorial(n, sign))
    quo = num / den
    out = quo.as_laurent_int()
    if out is None:
        raise ArithmeticError("Gaussian binomial failed to be integral")
    return out


def kbracket_scalar(zval, c, t, sign=1):
    """Eigenvalue of the bracket element [K;c;t] on a vector of K-exponent zval.

    Product over s = 1..t of
        (q_i^(zval+c-s+1) - q_i^-(zval+c)+s-1)) / (q_i^s - q_i^-s),
    which equals the Gaussian binomial [zval+c choose t] at q_i.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out = RF_ONE
    for s in range(1, t + 1):
        a = zval + c - s + 1
        num = RatFunc.q_power(sign * a) - RatFunc.q_power(-sign * a)
        den = RatFunc.q_power(sign * s) - RatFunc.q_power(-sign * s)
        out = out * (num / den)
    return out


# ---------------------------------------------------------------------------
# cyclotomic numbers
# ---------------------------------------------------------------------------

_CYCLO_CACHE = {}


def cyclotomic_poly(n):
    """The n-th cyclotomic polynomial as a Q-polynomial tuple (integer coeffs)."""
    if n in _CYCLO_CACHE:
        return _CYCLO_CACHE[n]
    # x^n - 1 divided by the product of Phi_d over proper divisors d of n
    xn1 = _ptrim([-1] + [0] * (n - 1) + [1])
    acc = _ONE_POLY
    for d in range(1, n):
        if n % d == 0:
            acc = _pmul(acc, cyclotomic_poly(d))
    quo, rem = _pdivmod(xn1, acc)
    if rem:
        raise ArithmeticError("cyclotomic division failed")
    _CYCLO_CACHE[n] = quo
    return quo


def _check_order(l):
    if not isinstance(l, int) or l < 3 or l % 2 == 0:
        raise BadRootOrder("root order must be an odd integer >= 3, got %r" % (l,))


class CycloNum:
    """Element of Q(eta) = Q[q]/Phi_l, eta a primitive l-th root of unity."""

    __slots__ = ("res", "order")

    def __init__(self, res, order):
        _check_order(order)
        phi = cyclotomic_poly(order)
        res = _pdivmod(_ptrim(Fraction(c) for c in res), phi)[1]
        object.__setattr__(self, "res", res)
        object.__setattr__(self, "order", order)

    def __setattr__(self, *a):
        raise AttributeError("CycloNum is immutable")

    @classmethod
    def from_int(cls, n, order):
        return cls(_pconst(n), order)

    @classmethod
    def eta_power(cls, k, order):
        _check_order(order)
        k %= order
        return cls(_ptrim([0] * k + [1]), order)

    def is_zero(self):
        return not self.res

    def __bool__(self):
        return bool(self.res)

    def _coerce(self, other):
        if isinstance(other, CycloNum):
            if other.order != self.order:
                raise ValueError("mixed root orders")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum(_pconst(other), self.order)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycloNum(_padd(self.res, other.res), self.order)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(_pneg(self.res), self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return CycloNum(_pmul(self.res, other.res), self.order)

    __rmul__ = __mul__

    def inverse(self):
        if not self.res:
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        # extended Euclid: a*res + b*Phi = gcd = const (Phi_l irreducible over Q)
        phi = cyclotomic_poly(self.order)
        r0, r1 = phi, self.res
        s0, s1 = (), _ONE_POLY
        while r1:
            quo, rem = _pdivmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _padd(s0, _pneg(_pmul(quo, s1)))
        # r0 is a nonzero constant
        inv_const = 1 / r0[0]
        return CycloNum(tuple(c * inv_const for c in s0), self.order)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.res == other.res

    def __hash__(self):
        return hash((self.res, self.order))

    def render(self):
        body = _render_poly({i: c for i, c in enumerate(self.res) if c})
        return body.replace("q", "eta")

    def __repr__(self):
        return "CycloNum(%s; l=%d)" % (self.render(), self.order)


def evaluate_at_root(x, l):
    """Image of x in Q(eta) under q -> eta (eta primitive l-th root, l odd >= 3).

    Raises DenominatorVanishes when x has a pole at eta.
    """
    _check_order(l)
    if isinstance(x, LaurentInt):
        x = RatFunc.from_laurent(x)
    elif isinstance(x, int):
        x = RatFunc.from_int(x)
    if not isinstance(x, RatFunc):
        raise TypeError("cannot specialize %r" % (x,))
    den = CycloNum(x.den, l)
    if den.is_zero():
        # stored in lowest terms, so a vanishing denominator is a genuine pole
        raise DenominatorVanishes("pole at primitive %d-th root of unity" % l)
    return CycloNum(x.num, l) / den


class FieldOps:
    """Tiny field descriptor shared by the generic and root-of-unity scalars."""

    def __init__(self, zero, one):
        self.zero = zero
        self.one = one


GENERIC_FIELD = FieldOps(RF_ZERO, RF_ONE)


def cyclo_field(l):
    _check_order(l)
    return FieldOps(CycloNum.from_int(0, l), CycloNum.from_int(1, l))
