"""Module that holds the invariant pipelines for determinantal Calabi-Yau threefolds.

A determinantal pair `(M, E, F)` on a fourfold `M` with `rank E = rank F = n + 1` describes a general morphism
`sigma: E^v -> F`. Its degeneracy hypersurface `D_n(sigma)` is nodal, and the small resolution `X_F` inside `P(F)`
carries the tautological divisor `L` and the pullback `H` of `H_M`. The pipelines here compute the triple products
of `(L, H)`, the pairings with `c2(T_X)`, the number of nodes, Porteous classes and the Euler and Hodge numbers.

This module contains the `DetPairConfig` and `InvariantRow` classes, the pipeline functions `triple_products`,
`odp_count`, `c2_pairings`, `invariant_row`, `porteous_class`, `expected_codimension`, `degeneracy_degree`,
`anticanonical_euler`, `cy_hodge` and `require_integer`, and the configuration builders `determinantal_pair`, `quintic_flop_pair`,
`blowup_flop_pair`, `plane_count_bundles` and `sigma_class`.

Examples:
    Computing the first row of intersection numbers:

        cfg = determinantal_pair('v4')
        invariant_row(cfg).values()  # (80, 48, 26, 12, 104, 60, 26)
"""
import itertools
import logging
from dataclasses import astuple, dataclass
from fractions import Fraction

from sympy.combinatorics import Permutation

from conewright.chern import (dual, exterior_top_minus_one, line_bundle, trivial, twist_by_line, virtual_difference,
                              whitney_sum)
from conewright.gradedring import add, component, integrate, inverse, mul, scale
from conewright.spaces import catalog_get

LOGGER = logging.getLogger(__name__)

MAIN_CASES = ('v4', 'v5', 'gr24')


class PairConfigurationError(Exception):
    """Raised when a determinantal pair is malformed or used outside its mode."""

    def __init__(self, label, reason):
        super().__init__(f'bad determinantal pair {label}: {reason}')


class NonIntegralInvariantError(Exception):
    """Raised when an invariant that must be an integer comes out fractional."""

    def __init__(self, label, what, value):
        super().__init__(f'{what} of {label} is {value}, not an integer')


class DetPairConfig:
    """Represents a determinantal pair `(M, E, F)` on a fourfold `M`.

    In Calabi-Yau mode `c1(E) + c1(F) = c1(T_M)` is enforced; the non-CY mode skips that check and is used for the
    blown-up model, where the triple-product formula holds without it.
    """

    def __init__(self, space, e, f, divisor=None, calabi_yau=True, label=''):
        """Initializes a `DetPairConfig`.

        Args:
            space: A four-dimensional `conewright.spaces.SpaceModel`.
            e: The bundle `E`.
            f: The bundle `F`.
            divisor: The degree 1 class playing `H_M`; defaults to the space's fundamental divisor.
            calabi_yau: Whether to enforce the Calabi-Yau condition.
            label: A name used in messages and reports.

        Raises:
            PairConfigurationError: If `space` is not a fourfold, the bundles live elsewhere, their ranks differ, or
                                    the Calabi-Yau condition fails in CY mode.
        """
        label = label or f'({space.name()}, {e.label()}, {f.label()})'
        if space.dimension() != 4:
            raise PairConfigurationError(label, f'{space.name()} has dimension {space.dimension()}, not 4')
        for bundle in (e, f):
            if bundle.ring() is not space.ring():
                raise PairConfigurationError(label, f'{bundle.label()} does not live on {space.name()}')
        if e.rank() != f.rank() or e.rank() < 1:
            raise PairConfigurationError(label, f'ranks {e.rank()} and {f.rank()} must be equal and positive')
        divisor = space.divisor() if divisor is None else divisor
        if not divisor.is_homogeneous(1) or divisor.ring() is not space.ring():
            raise PairConfigurationError(label, f'{divisor} is not a degree 1 class of {space.name()}')
        if calabi_yau and add(e.c(1), f.c(1)) != space.tangent().c(1):
            raise PairConfigurationError(label, f'c1(E) + c1(F) = {e.c(1) + f.c(1)} is not c1(T_M)')
        self.__space = space
        self.__e = e
        self.__f = f
        self.__divisor = divisor
        self.__calabi_yau = calabi_yau
        self.__label = label

    def space(self):
        """Returns the ambient fourfold `M`."""
        return self.__space

    def e(self):
        """Returns the bundle `E`."""
        return self.__e

    def f(self):
        """Returns the bundle `F`."""
        return self.__f

    def n(self):
        """Returns `n = rank(E) - 1`, the corank defining `D_n`."""
        return self.__e.rank() - 1

    def divisor(self):
        """Returns the degree 1 class playing `H_M`."""
        return self.__divisor

    def calabi_yau(self):
        """Returns `True` if the Calabi-Yau condition was enforced, `False` otherwise."""
        return self.__calabi_yau

    def label(self):
        """Returns the label used in messages and reports."""
        return self.__label

    def swapped(self):
        """Returns the pair with the roles of `E` and `F` exchanged, which describes `X_E` inside `P(E)`."""
        return DetPairConfig(self.__space, self.__f, self.__e, self.__divisor, self.__calabi_yau,
                             f'{self.__label}^swap')

    def __repr__(self):
        return f'DetPairConfig({self.__label})'


@dataclass(frozen=True)
class InvariantRow:
    """The intersection numbers, `c2` pairings and node count of one determinantal threefold."""
    l3: int
    l2h: int
    lh2: int
    h3: int
    c2l: int
    c2h: int
    odp: int

    def triples(self):
        """Returns `(L^3, L^2 H, L H^2, H^3)`."""
        return self.l3, self.l2h, self.lh2, self.h3

    def values(self):
        """Returns all seven values in column order."""
        return astuple(self)


def require_integer(label, what, value):
    """Returns `value` as an `int`.

    Raises:
        NonIntegralInvariantError: If `value` is not an integer.
    """
    if Fraction(value).denominator != 1:
        raise NonIntegralInvariantError(label, what, value)
    return int(value)


def _integral(cfg, what, cls):
    return require_integer(cfg.label(), what, integrate(cls))


def triple_products(cfg):
    """Returns `(L^3, L^2 H, L H^2, H^3)`, where `L^(3-k) H^k` integrates `H_M^k c_(4-k)(E - F^v)` over `M`.

    Raises:
        NonIntegralInvariantError: If a product is not an integer.
    """
    difference = virtual_difference(cfg.e(), dual(cfg.f()))
    h = cfg.divisor()
    out = tuple(_integral(cfg, f'L^{3 - k} H^{k}', mul(h ** k, difference.c(4 - k))) for k in range(4))
    LOGGER.debug('triple products of %s: %s', cfg.label(), out)
    return out


def odp_count(cfg):
    """Returns the number of nodes of `D_n(sigma)`: the integral of `c2^2 - c1 c3` of `F - E^v`."""
    difference = virtual_difference(cfg.f(), dual(cfg.e()))
    c1, c2, c3 = difference.c(1), difference.c(2), difference.c(3)
    return _integral(cfg, 'node count', mul(c2, c2) - mul(c1, c3))


def _require_calabi_yau(cfg):
    if not cfg.calabi_yau():
        raise PairConfigurationError(cfg.label(), 'this pipeline needs Calabi-Yau mode')


def c2_pairings(cfg):
    """Returns `(c2(T_X) . L, c2(T_X) . H)`.

    Raises:
        PairConfigurationError: If `cfg` is not in Calabi-Yau mode.
    """
    _require_calabi_yau(cfg)
    c2 = cfg.space().tangent().c(2)
    difference = virtual_difference(cfg.e(), dual(cfg.f()))
    c2h = _integral(cfg, 'c2.H', mul(mul(c2, difference.c(1)), cfg.divisor()))
    c2l = _integral(cfg, 'c2.L', mul(c2, difference.c(2))) - odp_count(cfg)
    return c2l, c2h


def invariant_row(cfg):
    """Returns the `InvariantRow` of a Calabi-Yau pair."""
    return InvariantRow(*triple_products(cfg), *c2_pairings(cfg), odp_count(cfg))


def expected_codimension(e_rank, f_rank, k):
    """Returns `(e - k)(f - k)`, the expected codimension of the locus where a map of ranks `e, f` has rank <= k.

    Raises:
        ValueError: If `k` is negative or not below both ranks.
    """
    if not 0 <= k < min(e_rank, f_rank):
        raise ValueError(f'k ({k}) must satisfy 0 <= k < min({e_rank}, {f_rank})')
    return (e_rank - k) * (f_rank - k)


def _determinant(entries):
    # Leibniz expansion; the matrices here are at most a few rows.
    size = len(entries)
    ring = entries[0][0].ring()
    total = ring.zero()
    for perm in itertools.permutations(range(size)):
        term = ring.one()
        for i, j in enumerate(perm):
            term = mul(term, entries[i][j])
        total = add(total, scale(term, Permutation(list(perm)).signature()))
    return total


def porteous_class(e, f, k):
    """Returns the class of `D_k(sigma)` for `sigma: E^v -> F`.

    The class is `det(c_(f - k + j - i)(F - E^v))` over `1 <= i, j <= e - k`.

    Raises:
        ValueError: If `k` is out of range.
    """
    expected_codimension(e.rank(), f.rank(), k)
    difference = virtual_difference(f, dual(e))
    size = e.rank() - k
    offset = f.rank() - k
    entries = [[difference.c(offset + j - i) for j in range(size)] for i in range(size)]
    return _determinant(entries)


def degeneracy_degree(cfg):
    """Returns the degree of `D_n(sigma)` against `H_M`, i.e. `H_M^3 . [D_n(sigma)]`."""
    return _integral(cfg, 'degree of D_n', mul(cfg.divisor() ** 3, porteous_class(cfg.e(), cfg.f(), cfg.n())))


def anticanonical_euler(space):
    """Returns the topological Euler number of a smooth anticanonical hypersurface of a Fano fourfold.

    By adjunction this is the integral of `c1(T) . [c(T) / (1 + c1(T))]_3`.

    Raises:
        ValueError: If `space` is not a Fano fourfold model.
    """
    if space.fano_index() is None or space.dimension() != 4:
        raise ValueError(f'{space.name()} is not a Fano fourfold')
    tangent = space.tangent()
    c1 = tangent.c(1)
    restricted = component(mul(tangent.chern(), inverse(1 + c1)), 3)
    return require_integer(space.name(), 'anticanonical Euler number', integrate(mul(c1, restricted)))


def cy_hodge(cfg):
    """Returns `(chi_top(X), h^{2,1}(X))`.

    `chi_top(X) = chi_top(Y) + 2 * nodes` for a smooth anticanonical `Y`, and `h^{2,1}(X) = h^{2,1}(Y) - nodes + 1`
    with `h^{2,1}(Y) = 1 - chi_top(Y) / 2`.

    Raises:
        PairConfigurationError: If `cfg` is not in Calabi-Yau mode.
        NonIntegralInvariantError: If `chi_top(Y)` is odd.
    """
    _require_calabi_yau(cfg)
    euler = anticanonical_euler(cfg.space())
    if euler % 2:
        raise NonIntegralInvariantError(cfg.label(), 'h^{2,1} of the anticanonical hypersurface', euler / 2)
    nodes = odp_count(cfg)
    return euler + 2 * nodes, 1 - euler // 2 - nodes + 1


def determinantal_pair(case):
    """Returns the determinantal pair of a main case: `v4`, `v5` or `gr24`.

    Raises:
        ValueError: If `case` is unknown.
    """
    if case in ('v4', 'v5'):
        space = catalog_get(case)
        return DetPairConfig(space, trivial(space.ring(), 2), space.bundle('F'), label=case)
    if case == 'gr24':
        space = catalog_get('Gr24')
        sigma1 = space.divisor()
        f = whitney_sum(twist_by_line(space.bundle('S'), 2 * sigma1), line_bundle(sigma1))
        return DetPairConfig(space, trivial(space.ring(), 3), f.relabel('S(2)+O(1)'), label=case)
    raise ValueError(f'unknown case {case!r}; cases are {MAIN_CASES}')


def quintic_flop_pair():
    """Returns the pair on P4 whose resolution is the flop `X_F^+` of the V5 case.

    `E` is the third exterior power of `T(-1)` and `F = O^2 + O(1)^2`.
    """
    p4 = catalog_get('P4')
    h = p4.divisor()
    e = exterior_top_minus_one(p4.bundle('T(-1)'))
    f = whitney_sum(trivial(p4.ring(), 2), whitney_sum(line_bundle(h), line_bundle(h))).relabel('O^2+O(1)^2')
    return DetPairConfig(p4, e, f, label='v5+')


def blowup_flop_pair():
    """Returns the pair on BlP4 computing the intersection numbers of the flop `X_F^+` of the Gr(2,4) case.

    `E` is the pullback of the second exterior power of `T'(-1)` from P3, `F` is `O^3` twisted by `xi`, and
    `H' = xi`. The Calabi-Yau check is off.
    """
    blp4 = catalog_get('BlP4')
    xi = blp4.divisor()
    e = exterior_top_minus_one(blp4.bundle("f*T'(-1)"))
    f = twist_by_line(trivial(blp4.ring(), 3), xi).relabel('O^3(xi)')
    return DetPairConfig(blp4, e, f, divisor=xi, calabi_yau=False, label='gr24+')


def plane_count_bundles():
    """Returns `(O^2, V(1))` on P3 with `V = Omega(2) + O`; `D_1` of a general map counts planes."""
    p3 = catalog_get('P3')
    h = p3.divisor()
    v = whitney_sum(twist_by_line(p3.bundle('Omega'), 2 * h), trivial(p3.ring()))
    return trivial(p3.ring(), 2), twist_by_line(v, h).relabel('V(1)')


def sigma_class():
    """Returns the class on P4 of the locus where `O^2 -> wedge^3 T(-1)` drops rank."""
    p4 = catalog_get('P4')
    return porteous_class(trivial(p4.ring(), 2), exterior_top_minus_one(p4.bundle('T(-1)')), 1)
