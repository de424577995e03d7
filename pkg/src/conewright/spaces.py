"""Module that holds the catalog of ambient spaces.

This module contains the `SpaceModel` and `Cover` classes, the `UnknownSpaceError` and `ModelConsistencyError`
exceptions, and the functions `catalog_get`, `catalog_names`, `build_v4`, `build_v5` and `pushforward_check`. The
catalog holds projective spaces P1 to P5, the Grassmannians Gr(2,4) and Gr(2,5), the blow-up BlP4 of P4 at a point,
and the del Pezzo fourfolds V4 (double cover of the quadric Q4 = Gr(2,4)) and V5 (linear section of Gr(2,5)).

Grassmannian rings use the Chern-class presentation `Q[s1, s2] / (inverse-series relations)` where `s1, s2` are the
Chern classes of the tautological subbundle `S`; the Schubert class `sigma_1` is `-s1`.

Examples:
    Looking up a model and computing its degree:

        v5 = catalog_get('v5')
        v5.degree()  # Fraction(5, 1)
        v5.tangent().c(1) == 3 * v5.divisor()  # True
"""
import functools
import logging

import sympy as sp

from conewright.chern import (BundleExpr, character_of_line, dual, from_character, line_bundle, pullback, tensor,
                              to_character, trivial, twist_by_line, virtual_difference, whitney_sum)
from conewright.gradedring import integrate, mul, RingMap, RingPresentation

LOGGER = logging.getLogger(__name__)


class UnknownSpaceError(Exception):
    """Raised when `catalog_get` is given a name outside the catalog."""

    def __init__(self, name):
        super().__init__(f'unknown space {name!r}; known spaces are {", ".join(catalog_names())}')


class ModelConsistencyError(Exception):
    """Raised when a space model disagrees with itself or with its upstream model."""

    def __init__(self, model, reason):
        super().__init__(f'{model} is inconsistent: {reason}')


class Cover:
    """Records how a derived model integrates through an upstream model.

    A class `a` of the derived model integrates to `factor * integral(a * cofactor)` upstairs.
    """

    def __init__(self, upstream, factor=1, cofactor=None):
        self.upstream = upstream
        self.factor = factor
        self.cofactor = cofactor


class SpaceModel:
    """Represents an ambient variety: its Chow ring model, distinguished divisor, tangent bundle and named bundles."""

    def __init__(self, name, dimension, ring, divisor, tangent, bundles=None, fano_index=None, maps=None,
                 cover=None):
        """Initializes a `SpaceModel`.

        Args:
            name: The catalog name.
            dimension: The dimension, equal to the top degree of `ring`.
            ring: The `RingPresentation`.
            divisor: The fundamental divisor `H_M`, a degree 1 class.
            tangent: The tangent bundle as a `BundleExpr`.
            bundles: A `dict` of named `BundleExpr`s.
            fano_index: The Fano index, or `None`.
            maps: A `dict` of named `RingMap`s into this model's ring.
            cover: A `Cover` when the model integrates through an upstream model.

        Raises:
            ModelConsistencyError: If the dimension or tangent rank disagree with the ring, or `c1(T)` is not
                                   `fano_index * H_M`.
        """
        if ring.top_degree() != dimension:
            raise ModelConsistencyError(name, f'ring top degree {ring.top_degree()} != dimension {dimension}')
        if tangent.rank() != dimension:
            raise ModelConsistencyError(name, f'tangent rank {tangent.rank()} != dimension {dimension}')
        if fano_index is not None and tangent.c(1) != divisor * fano_index:
            raise ModelConsistencyError(name, f'c1(T) = {tangent.c(1)} is not {fano_index} * ({divisor})')
        self.__name = name
        self.__dimension = dimension
        self.__ring = ring
        self.__divisor = divisor
        self.__tangent = tangent.relabel(f'T_{name}')
        self.__bundles = dict(bundles or {})
        self.__fano_index = fano_index
        self.__maps = dict(maps or {})
        self.__cover = cover

    def name(self):
        """Returns the catalog name."""
        return self.__name

    def dimension(self):
        """Returns the dimension."""
        return self.__dimension

    def ring(self):
        """Returns the `RingPresentation` of the Chow ring."""
        return self.__ring

    def divisor(self):
        """Returns the fundamental divisor `H_M`."""
        return self.__divisor

    def tangent(self):
        """Returns the tangent bundle."""
        return self.__tangent

    def fano_index(self):
        """Returns the Fano index, or `None` for a model that is not Fano."""
        return self.__fano_index

    def cover(self):
        """Returns the `Cover` through which this model integrates, or `None`."""
        return self.__cover

    def bundle(self, name):
        """Returns the named bundle `name`.

        Raises:
            KeyError: If the model has no bundle called `name`.
        """
        if name not in self.__bundles:
            raise KeyError(f'{self.__name} has no bundle {name!r}; bundles are {sorted(self.__bundles)}')
        return self.__bundles[name]

    def bundle_names(self):
        """Returns the sorted names of the named bundles."""
        return sorted(self.__bundles)

    def map(self, name):
        """Returns the named `RingMap` into this model's ring."""
        return self.__maps[name]

    def integrate(self, cls):
        """Returns the integral of `cls` over this model."""
        return integrate(cls)

    def degree(self):
        """Returns the integral of `H_M` to the power of the dimension."""
        return integrate(self.__divisor ** self.__dimension)

    def chern_numbers(self):
        """Returns the integrals of `c_i(T) * H_M^(dim - i)` for `i = 0..dim`."""
        return tuple(integrate(mul(self.__tangent.c(i), self.__divisor ** (self.__dimension - i)))
                     for i in range(self.__dimension + 1))

    def __repr__(self):
        return f'SpaceModel({self.__name}, dim {self.__dimension})'


_PROJECTIVE = {f'p{n}': n for n in range(1, 6)}
_GRASSMANNIAN = {'gr24': 4, 'gr25': 5}


def catalog_names():
    """Returns the catalog names in catalog order."""
    return tuple(f'P{n}' for n in range(1, 6)) + ('Gr24', 'Gr25', 'BlP4', 'V4', 'V5')


def catalog_get(name):
    """Returns the catalog model called `name` (case insensitive), building it on first use.

    Raises:
        UnknownSpaceError: If `name` is not in the catalog.
    """
    key = str(name).lower()
    if key not in {n.lower() for n in catalog_names()}:
        raise UnknownSpaceError(name)
    return _build(key)


@functools.lru_cache(maxsize=None)
def _build(key):
    if key in _PROJECTIVE:
        model = build_projective_space(_PROJECTIVE[key])
    elif key in _GRASSMANNIAN:
        model = build_grassmannian(_GRASSMANNIAN[key])
    elif key == 'blp4':
        model = build_blown_up_p4()
    elif key == 'v4':
        model = build_v4()
    else:
        model = build_v5()
    LOGGER.info('built space model %s', model.name())
    return model


def build_projective_space(n):
    """Builds P^n with ring `Q[h] / (h^(n+1))` and the tangent bundle from the Euler sequence."""
    ring = RingPresentation(f'P{n}', [('h', 1)], [f'h**{n + 1}'], n, {f'h**{n}': 1})
    h = ring.generator('h')
    hyperplane = line_bundle(h, 'O(1)')
    euler = trivial(ring, 0)
    for _ in range(n + 1):
        euler = whitney_sum(euler, hyperplane)
    tangent = virtual_difference(euler, trivial(ring))
    # 0 -> O(-1) -> O^(n+1) -> T(-1) -> 0
    twisted_tangent = virtual_difference(trivial(ring, n + 1), line_bundle(-h)).relabel('T(-1)')
    bundles = {'O(1)': hyperplane, 'T(-1)': twisted_tangent, 'Omega': dual(tangent).relabel('Omega')}
    return SpaceModel(f'P{n}', n, ring, h, tangent, bundles, fano_index=n + 1)


def _grassmannian_relations(n):
    s1, s2 = sp.symbols('s1 s2')
    series = [sp.Integer(1), -s1]
    for _ in range(2, n + 1):
        series.append(sp.expand(-s1 * series[-1] - s2 * series[-2]))
    return series[n - 1:n + 1]


def build_grassmannian(n):
    """Builds Gr(2,n) with `S` of rank 2, `Q = O^n - S` and tangent bundle `S^v (x) Q`."""
    top = 2 * (n - 2)
    ring = RingPresentation(f'Gr(2,{n})', [('s1', 1), ('s2', 2)], _grassmannian_relations(n), top,
                            {f's2**{n - 2}': 1})
    sub = BundleExpr(2, ring.element('1 + s1 + s2'), 'S')
    quotient = virtual_difference(trivial(ring, n), sub).relabel('Q')
    tangent = tensor(dual(sub), quotient)
    sigma1 = -ring.generator('s1')
    return SpaceModel(f'Gr2{n}', top, ring, sigma1, tangent,
                      {'S': sub, 'Q': quotient, 'O(1)': line_bundle(sigma1, 'O(1)')}, fano_index=n)


def build_blown_up_p4():
    """Builds the blow-up of P4 at a point, a P1-bundle over P3.

    `alpha` is pulled back from P3 along the projection `f` and `xi` from P4 along the blow-down `mu`.
    """
    ring = RingPresentation('BlP4', [('alpha', 1), ('xi', 1)], ['alpha**4', 'xi**2 - alpha*xi'], 4,
                            {'alpha**3*xi': 1})
    alpha, xi = ring.generator('alpha'), ring.generator('xi')
    p3, p4 = catalog_get('P3'), catalog_get('P4')
    f = RingMap(p3.ring(), ring, {'h': alpha})
    mu = RingMap(p4.ring(), ring, {'h': xi})
    relative = virtual_difference(whitney_sum(line_bundle(xi), line_bundle(xi - alpha)), trivial(ring))
    tangent = whitney_sum(pullback(p3.tangent(), f), relative)
    bundles = {
        "f*T'(-1)": pullback(p3.bundle('T(-1)'), f).relabel("f*T'(-1)"),
        'O(alpha)': line_bundle(alpha, 'O(alpha)'),
        'O(xi)': line_bundle(xi, 'O(xi)'),
    }
    return SpaceModel('BlP4', 4, ring, xi, tangent, bundles, maps={'f': f, 'mu': mu})


def _same_generators(upstream, name, top, integration):
    ring = RingPresentation(name, upstream.ring().generators(), upstream.ring().relations(), top, integration)
    images = {g: ring.generator(g) for g, _ in ring.generators()}
    return ring, RingMap(upstream.ring(), ring, images)


def build_v4():
    """Builds V4 as the double cover `p` of Q4 = Gr(2,4) branched along a quadric section.

    Classes are pullbacks from Gr(2,4), integrated as twice their integral downstairs. The tangent bundle comes from
    the character identity `ch(T_V4) = p*ch(T_Q4) - (exp(2R) - exp(R))` with ramification divisor `R = H`.
    """
    gr = catalog_get('Gr24')
    ring, p = _same_generators(gr, 'V4', 4, {'s2**2': 2})
    divisor = p(gr.divisor())
    character = p(to_character(gr.tangent())) - (character_of_line(2 * divisor) - character_of_line(divisor))
    tangent = from_character(4, character, 'T_V4')
    sub = pullback(gr.bundle('S'), p)
    bundles = {'S': sub, 'F': twist_by_line(dual(sub), divisor).relabel('p*S^v(1)')}
    return SpaceModel('V4', 4, ring, divisor, tangent, bundles, fano_index=3, maps={'p': p},
                      cover=Cover(gr, factor=2))


def build_v5():
    """Builds V5 as a codimension 2 linear section of Gr(2,5).

    Classes are Gr(2,5) classes truncated above degree 4, and a class `a` integrates to the Gr(2,5) integral of
    `a * sigma_1^2`. The tangent bundle is the restriction of `T_Gr(2,5)` minus the normal bundle `O(1)^2`.
    """
    gr = catalog_get('Gr25')
    sigma1_squared = gr.divisor() ** 2
    integration = {gr.ring().monomial_expr(m): integrate(mul(gr.ring().monomial(m), sigma1_squared))
                   for m in gr.ring().monomials(4)}
    ring, restriction = _same_generators(gr, 'V5', 4, integration)
    divisor = restriction(gr.divisor())
    normal = whitney_sum(line_bundle(divisor), line_bundle(divisor))
    tangent = virtual_difference(pullback(gr.tangent(), restriction), normal)
    sub = pullback(gr.bundle('S'), restriction)
    bundles = {'S': sub, 'F': twist_by_line(dual(sub), divisor).relabel('S_V5^v(1)')}
    return SpaceModel('V5', 4, ring, divisor, tangent, bundles, fano_index=3, maps={'restriction': restriction},
                      cover=Cover(gr, cofactor=sigma1_squared))


def pushforward_check(model, cls):
    """Integrates `cls` both on `model` and through its upstream Grassmannian, and returns the common value.

    Raises:
        ValueError: If `model` has no upstream model.
        ModelConsistencyError: If the two integrals disagree.
    """
    cover = model.cover()
    if cover is None:
        raise ValueError(f'{model.name()} is not a derived model')
    upstream = cover.upstream.ring()
    lifted = upstream.from_terms(dict(cls.terms()))
    if cover.cofactor is not None:
        lifted = mul(lifted, cover.cofactor)
    upstairs = cover.factor * integrate(lifted)
    own = integrate(cls)
    if upstairs != own:
        raise ModelConsistencyError(model.name(), f'{cls} integrates to {own} but to {upstairs} upstairs')
    return own
