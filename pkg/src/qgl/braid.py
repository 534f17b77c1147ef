"""Braid operators attached to the even simple roots.

For an even node i (1 <= i < m+n, i != m), T_i is the algebra
automorphism acting on generators by

    T_i(E_i) = -F_i K_{alpha_i}            T_i(F_i) = -K_{alpha_i}^{-1} E_i
    T_i(E_j) = E_j, T_i(F_j) = F_j                      when a_ij = 0
    T_i(E_j) = -E_i E_j + q_i^{-1} E_j E_i              when a_ij = -1
    T_i(F_j) = -F_j F_i + q_i F_i F_j                   when a_ij = -1
    T_i(K_mu) = K_{s_i mu}   (s_i swaps entries i, i+1)

T_i is even (no super sign) and commutes with the E/F exchange map.
Composite root vectors are reproduced by chains of braid operators that
avoid the odd node.
"""

from .errors import BraidAtOddNode
from .pbwcore import Element
from .scalars import RF_ONE


def _check_even_node(shape, i):
    if not (1 <= i < shape.rank) or i == shape.m:
        raise BraidAtOddNode(
            "braid operator needs an even simple root, got %d (m=%d)" % (i, shape.m)
        )


def _swap_mu(mu, i):
    out = list(mu)
    out[i - 1], out[i] = out[i], out[i - 1]
    return tuple(out)


def braid_t(alg, i, elt):
    """Apply T_i to an element."""
    sh = alg.shape
    _check_even_node(sh, i)

    def image(atom):
        if atom[0] == "K":
            return alg.k_mono(_swap_mu(atom[1], i))
        kind, a, b, _ = atom
        j = a  # simple generator: (j, j+1)
        if kind == "E":
            if j == i:
                return -(alg.gen("F", i, i + 1) * alg.k_alpha(i))
            if sh.cartan_entry(i, j) == 0:
                return alg.gen("E", j, j + 1)
            ei, ej = alg.gen("E", i, i + 1), alg.gen("E", j, j + 1)
            return -(ei * ej) + (ej * ei).scale(alg.qi(i, -1))
        if j == i:
            return -(alg.k_alpha(i, -1) * alg.gen("E", i, i + 1))
        if sh.cartan_entry(i, j) == 0:
            return alg.gen("F", j, j + 1)
        fi, fj = alg.gen("F", i, i + 1), alg.gen("F", j, j + 1)
        return -(fj * fi) + (fi * fj).scale(alg.qi(i, 1))

    return alg.apply_hom(elt, image)


def braid_t_inv(alg, i, elt):
    """Apply T_i^{-1} to an element."""
    sh = alg.shape
    _check_even_node(sh, i)

    def image(atom):
        if atom[0] == "K":
            return alg.k_mono(_swap_mu(atom[1], i))
        kind, a, b, _ = atom
        j = a
        if kind == "E":
            if j == i:
                return -(alg.k_alpha(i, -1) * alg.gen("F", i, i + 1))
            if sh.cartan_entry(i, j) == 0:
                return alg.gen("E", j, j + 1)
            ei, ej = alg.gen("E", i, i + 1), alg.gen("E", j, j + 1)
            return -(ej * ei) + (ei * ej).scale(alg.qi(i, -1))
        if j == i:
            return -(alg.gen("E", i, i + 1) * alg.k_alpha(i))
        if sh.cartan_entry(i, j) == 0:
            return alg.gen("F", j, j + 1)
        fi, fj = alg.gen("F", i, i + 1), alg.gen("F", j, j + 1)
        return -(fi * fj) + (fj * fi).scale(alg.qi(i, 1))

    return alg.apply_hom(elt, image)


def root_vector_via_braid(alg, kind, i, j):
    """Rebuild the composite root vector X_{ij} from a simple generator.

    Uses the chain
        X_{ij} = (-1)^{j-i-1} T_i ... T_{k-1} Tinv_{j-1} ... Tinv_{k+1} X_{k,k+1}
    where k is chosen so every braid index avoids the odd node m.
    """
    sh = alg.shape
    sh.check_pair(i, j)
    k = sh.m if i <= sh.m < j else i
    out = alg.gen(kind, k, k + 1)
    for t in range(k + 1, j):
        out = braid_t_inv(alg, t, out)
    for t in range(k - 1, i - 1, -1):
        out = braid_t(alg, t, out)
    if (j - i - 1) % 2:
        out = -out
    return out


class BraidView:
    """Algebra adapter with generators replaced by their braid images;
    running the relation catalog against it checks T_i is a homomorphism."""

    def __init__(self, alg, i, inverse=False):
        _check_even_node(alg.shape, i)
        self._alg = alg
        self._i = i
        self._apply = braid_t_inv if inverse else braid_t
        self.shape = alg.shape

    def _t(self, elt):
        return self._apply(self._alg, self._i, elt)

    def qi(self, i, power=1):
        return self._alg.qi(i, power)

    def gen(self, kind, i, j):
        return self._t(self._alg.gen(kind, i, j))

    def k_mono(self, mu):
        return self._t(self._alg.k_mono(mu))

    def k_alpha(self, i, exp=1):
        return self._t(self._alg.k_alpha(i, exp))

    def one(self):
        return self._alg.one()

    def zero(self):
        return self._alg.zero()
