"""Specializations of the quantum supergroup: q -> eta (a primitive odd
root of unity) and q -> 1.

Covers: specialization of integral elements and of weight modules, literal
enumeration of the small quantum (super)group bases, restricted simple
modules with their divided-power maximal-vector conditions, character
factorization through the Frobenius-type splitting of weights, and the
classical-limit check of the Serre presentation.
"""

import itertools

from . import repmod
from .errors import DomainError, OutOfRestrictedRange
from .rootdata import (
    frobenius_decompose,
    in_Xplus,
    weight_to_z,
    z_to_weight,
)
from .scalars import (
    CycloNum,
    cyclo_field,
    evaluate_at_root,
    _check_order,
)


# -- element specialization --------------------------------------------------


def specialize_element(alg, elt, l):
    """Coordinates of an integral element over Q(eta).

    Returns {integral-basis key: CycloNum}, dropping the terms whose
    coefficients vanish at eta.  Raises NotIntegral if the element is
    not in the integral form; the basis keys are those of a_form_coords.
    """
    _check_order(l)
    out = {}
    for key, li in alg.a_form_coords(elt).items():
        val = evaluate_at_root(li, l)
        if not val.is_zero():
            out[key] = val
    return out


# -- small quantum group dimension counts ------------------------------------


def small_group_counts(shape, l):
    """Dimensions of the small quantum (super)group and its pieces.

    Counted by literal enumeration of exponent tuples:
      upper     e-part: even exponents in [0, l), odd in {0, 1}
      torus     K-exponents in [0, 2l) per index
      reduced_torus  bracket-basis torus exponents in [0, l) per index
      full      lower x torus x upper
      reduced   lower x reduced_torus x upper
    """
    _check_order(l)
    n0, n1 = len(shape.I0), len(shape.I1)
    upper = sum(
        1
        for _ in itertools.product(
            *([range(l)] * n0 + [range(2)] * n1)
        )
    )
    lower = upper
    torus = sum(1 for _ in itertools.product(*([range(2 * l)] * shape.rank)))
    reduced_torus = sum(1 for _ in itertools.product(*([range(l)] * shape.rank)))
    return {
        "upper": upper,
        "lower": lower,
        "torus": torus,
        "reduced_torus": reduced_torus,
        "full": lower * torus * upper,
        "reduced": lower * reduced_torus * upper,
    }


# -- module specialization ---------------------------------------------------


def specialize_module(mod, l):
    """The weight module over Q(eta) on the same basis.

    Every stored action-matrix entry is evaluated at eta; a pole means the
    chosen lattice basis was not integral and is reported as an error.
    """
    _check_order(l)
    if mod.l is not None:
        raise DomainError("module is already specialized")
    field = cyclo_field(l)
    mats = {}
    for key, m in mod.mats.items():
        mats[key] = [[evaluate_at_root(x, l) for x in row] for row in m]
    return repmod.WeightModule(
        mod.alg, field, mod.eps_weights, mod.parities, mats, top=mod.top, l=l
    )


def specialize_kac(alg, lam, l, with_divided=True):
    """The Kac module at q = eta, with the divided powers X^{(l)} of the
    even simple root vectors carried along."""
    _check_order(l)
    mod = repmod.kac_module(alg, lam)
    mod = repmod.rebase_to_divided_monomials(mod)
    if with_divided:
        for i in range(1, alg.shape.rank):
            if i == alg.shape.m:
                continue
            mod.ensure_divided("E", i, i + 1, l)
            mod.ensure_divided("F", i, i + 1, l)
    return specialize_module(mod, l)


def restricted_simple(alg, z, l):
    """The simple module of restricted highest weight z at q = eta.

    z must lie in [0, l)^{m+n}; the module is the simple head of the
    specialized Kac module, with maximality meaning killed by all raising
    operators and by the divided powers E^{(l)} of the even simple roots.
    """
    _check_order(l)
    z = tuple(int(x) for x in z)
    if len(z) != alg.shape.rank:
        raise DomainError("z length does not match shape")
    if not all(0 <= x < l for x in z):
        raise OutOfRestrictedRange("z must lie in [0, %d)^%d" % (l, alg.shape.rank))
    lam = z_to_weight(alg.shape, z)
    mod = specialize_kac(alg, lam, l)
    return repmod.simple_head(mod, include_divided=True)


def simple_at_root(alg, z, l):
    """The simple head of the specialized Kac module for any z with
    dominant associated weight (not necessarily restricted)."""
    _check_order(l)
    lam = z_to_weight(alg.shape, tuple(int(x) for x in z))
    if not in_Xplus(alg.shape, lam):
        raise DomainError("z has no dominant associated weight")
    mod = specialize_kac(alg, lam, l)
    return repmod.simple_head(mod, include_divided=True)


# -- restricted-weight structure checks --------------------------------------


def restricted_checks(alg, z, l):
    """Structure of the restricted simple module at eta.

    Returns booleans:
      divided_f_kills_top   F^{(l)} of every even simple root kills the
                            highest vector
      maximal_line_unique   the joint kernel of all raising operators and
                            even divided powers E^{(l)} is one line
      small_group_generates every nonzero basis vector generates the whole
                            module under the simple (non-divided) action
    """
    mod = restricted_simple(alg, z, l)
    out = {}
    top = mod.unit_vector(mod.top)
    ok = True
    for key in mod.action_keys():
        if key[0] == "DF":
            col = [mod.mats[key][r][mod.top] for r in range(mod.dim)]
            if any(not x.is_zero() for x in col):
                ok = False
    out["divided_f_kills_top"] = ok
    sing = repmod.singular_vectors(mod, include_divided=True, skip_top=False)
    out["maximal_line_unique"] = len(sing) == 1
    simple_keys = [k for k in mod.action_keys() if k[0] in ("E", "F") and k[3] == 1]
    gen_ok = True
    for idx in range(mod.dim):
        span = repmod.submodule_closure(mod, [mod.unit_vector(idx)], keys=simple_keys)
        if len(span) != mod.dim:
            gen_ok = False
            break
    out["small_group_generates"] = gen_ok
    out["dim"] = mod.dim
    return out


# -- character factorization at a root of unity ------------------------------


def _char_convolve(ca, cb):
    out = {}
    for za, ma in ca.items():
        for zb, mb in cb.items():
            z = tuple(x + y for x, y in zip(za, zb))
            out[z] = out.get(z, 0) + ma * mb
    return out


def frobenius_character_check(alg, z, l):
    """Does char L(z) = char(L(z') (x) L(l z'')) at q = eta?

    z' + l z'' is the restricted splitting of z.  Returns a report dict.
    """
    _check_order(l)
    z = tuple(int(x) for x in z)
    zp, zpp = frobenius_decompose(alg.shape, z, l)
    whole = simple_at_root(alg, z, l)
    part_r = simple_at_root(alg, zp, l)
    part_f = simple_at_root(alg, tuple(l * x for x in zpp), l)
    lhs = whole.character()
    rhs = _char_convolve(part_r.character(), part_f.character())
    return {
        "z": z,
        "z_restricted": zp,
        "z_frobenius": zpp,
        "dim": whole.dim,
        "factor_dims": (part_r.dim, part_f.dim),
        "match": lhs == rhs,
    }


def frobenius_vanishing_check(alg, zpp, l):
    """On L(l z''), every simple E and F acts as zero and every K_{alpha}
    acts as the identity (the Frobenius-twist degeneracy)."""
    _check_order(l)
    mod = simple_at_root(alg, tuple(l * int(x) for x in zpp), l)
    ok_ef = True
    for i in range(1, alg.shape.rank):
        for kind in ("E", "F"):
            m = mod.matrix_of_atom((kind, i, i + 1, 1))
            if any(not x.is_zero() for row in m for x in row):
                ok_ef = False
    one = mod.field.one
    ok_k = all(
        mod.q_weight(alg.shape.k_alpha_vector(i), wt) == one
        for i in range(1, alg.shape.rank)
        for wt in mod.eps_weights
    )
    return {"dim": mod.dim, "ef_vanish": ok_ef, "k_identity": ok_k}


# -- centrality of K^l at eta ------------------------------------------------


def k_power_central_at_root(alg, l):
    """K_{alpha_i}^l commutes with every generator after specialization."""
    _check_order(l)
    for i in range(1, alg.shape.rank):
        kl = alg.k_alpha(i, l)
        kl_inv = alg.k_alpha(i, -l)
        for j in range(1, alg.shape.rank):
            for kind in ("E", "F"):
                g = alg.gen(kind, j, j + 1)
                diff = kl * g - g * kl
                coords = specialize_element(alg, diff * kl_inv, l)
                if coords:
                    return False
    return True


# -- classical limit q -> 1 --------------------------------------------------


def classical_reduce(alg, elt):
    """Coordinates of an integral element at q = 1 modulo (K_{alpha} - 1).

    Integral coordinates are evaluated at q = 1 and the pure torus factors
    K^delta collapse to 1 (the bracket basis elements [K;0;t] survive as
    the classical Cartan divided powers).  Returns {key: int} with the
    delta component zeroed.
    """
    out = {}
    for (fd, fpsi, deltas, ts, epsi, ed), li in alg.a_form_coords(elt).items():
        c = li.at_one()
        if c == 0:
            continue
        key = (fd, fpsi, tuple([0] * len(deltas)), ts, epsi, ed)
        s = out.get(key, 0) + c
        if s == 0:
            out.pop(key, None)
        else:
            out[key] = s
    return out


def classical_limit_check(alg):
    """Verify the eight classical Serre-presentation relation families for
    the images e -> E, f -> F, h -> [K; 0; 1] at q = 1 mod (K - 1).

    Returns a list of (name, bool) pairs.
    """
    sh = alg.shape
    r = sh.rank
    results = []

    def h(i):
        return alg.kbracket_element(i, 0, 1)

    def e(i):
        return alg.gen("E", i, i + 1)

    def f(i):
        return alg.gen("F", i, i + 1)

    def reduces(name, elt):
        results.append((name, not classical_reduce(alg, elt)))

    # (a1) Cartan commutativity: exact already at generic q
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            results.append(("a1:h%d-h%d" % (i, j), (h(i) * h(j) - h(j) * h(i)).is_zero()))
    # (a2) Cartan on raising/lowering: needs the q = 1, K = 1 reduction
    for i in range(1, r + 1):
        for j in range(1, r):
            a = sh.cartan_entry(i, j)
            reduces("a2:h%d-e%d" % (i, j), h(i) * e(j) - e(j) * h(i) - e(j).scale(a))
            reduces("a2:h%d-f%d" % (i, j), h(i) * f(j) - f(j) * h(i) + f(j).scale(a))
    # (a3) mixed bracket
    for i in range(1, r):
        for j in range(1, r):
            sgn = -1 if (i == sh.m and j == sh.m) else 1
            x = e(i) * f(j) - (f(j) * e(i)).scale(sgn)
            if i == j:
                x = x - h(i)
            reduces("a3:e%d-f%d" % (i, j), x)
    # (a4) distant commutation: exact
    for i in range(1, r):
        for j in range(1, r):
            if abs(i - j) > 1:
                results.append(("a4:e%d-e%d" % (i, j), (e(i) * e(j) - e(j) * e(i)).is_zero()))
                results.append(("a4:f%d-f%d" % (i, j), (f(i) * f(j) - f(j) * f(i)).is_zero()))
    # (a5)/(a6) Serre with the classical coefficient 2
    for i in range(1, r):
        for j in range(1, r):
            if abs(i - j) == 1 and i != sh.m:
                reduces(
                    "a5:e%d-e%d" % (i, j),
                    e(i) * e(i) * e(j) - (e(i) * e(j) * e(i)).scale(2) + e(j) * e(i) * e(i),
                )
                reduces(
                    "a6:f%d-f%d" % (i, j),
                    f(i) * f(i) * f(j) - (f(i) * f(j) * f(i)).scale(2) + f(j) * f(i) * f(i),
                )
    # (a7) odd squares: exact
    results.append(("a7:e%d" % sh.m, (e(sh.m) * e(sh.m)).is_zero()))
    results.append(("a7:f%d" % sh.m, (f(sh.m) * f(sh.m)).is_zero()))
    # (a8) the higher relation, with classical coefficient 2
    if sh.m >= 2 and sh.n >= 2:
        for name, g in (("e", e), ("f", f)):
            a, b, c = g(sh.m - 1), g(sh.m), g(sh.m + 1)
            x = (
                a * b * c * b
                + b * a * b * c
                + c * b * a * b
                + b * c * b * a
                - (b * a * c * b).scale(2)
            )
            reduces("a8:%s" % name, x)
    return results
