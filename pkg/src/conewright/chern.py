"""Module that holds the Chern-class calculus for genuine and virtual bundles.

This module contains the `BundleExpr` class, the `UnsupportedBundleError` exception and the bundle operations
`whitney_sum`, `virtual_difference`, `dual`, `twist_by_line`, `tensor`, `exterior_top_minus_one`, `pullback`,
`to_character` and `from_character`. A bundle is recorded only through its rank and its total Chern class, which is a
`conewright.gradedring.RingClass` of the ambient ring.

Examples:
    The twisted tangent bundle of P4 and its third exterior power:

        p4 = catalog_get('P4')
        t = p4.bundle('T(-1)')
        wedge3 = exterior_top_minus_one(t)
        wedge3.c(1)  # 3*h
"""
import logging
import math
from fractions import Fraction

from conewright.gradedring import add, component, inverse, mul, scale, RingMismatchError

LOGGER = logging.getLogger(__name__)


class UnsupportedBundleError(Exception):
    """Raised when an operation that needs a genuine bundle is given a virtual one."""

    def __init__(self, operation, bundle, requirement='a genuine bundle'):
        super().__init__(f'{operation} needs {requirement}, got {bundle.label() or "a bundle"} of rank {bundle.rank()}')


class BundleExpr:
    """Represents a (possibly virtual) bundle by its rank and total Chern class.

    The total Chern class always has constant term 1 and, like every class, is truncated above the top degree of its
    ring. The label is free-form provenance text and is ignored by equality.
    """

    def __init__(self, rank, total_chern, label=''):
        """Initializes a `BundleExpr`.

        Args:
            rank: An integer, negative for some virtual differences.
            total_chern: A `RingClass` with constant term 1.
            label: Provenance text.

        Raises:
            ValueError: If `rank` is not an integer or the constant term of `total_chern` is not 1.
        """
        if int(rank) != rank:
            raise ValueError(f'rank ({rank}) must be an integer')
        if total_chern.constant() != 1:
            raise ValueError(f'total Chern class {total_chern} must have constant term 1')
        self.__rank = int(rank)
        self.__chern = total_chern
        self.__label = label

    def rank(self):
        """Returns the integer rank, negative for some virtual bundles."""
        return self.__rank

    def chern(self):
        """Returns the total Chern class."""
        return self.__chern

    def c(self, k):
        """Returns the `k`-th Chern class (zero for `k < 0` or above the top degree)."""
        if k < 0:
            return self.__chern.ring().zero()
        return component(self.__chern, k)

    def ring(self):
        """Returns the `RingPresentation` the Chern classes live in."""
        return self.__chern.ring()

    def label(self):
        """Returns the provenance label."""
        return self.__label

    def is_virtual(self):
        """Returns `True` if the rank is negative, `False` otherwise."""
        return self.__rank < 0

    def relabel(self, label):
        """Returns a copy of this bundle carrying `label`."""
        return BundleExpr(self.__rank, self.__chern, label)

    def __eq__(self, other):
        if not isinstance(other, BundleExpr):
            return NotImplemented
        return self.__rank == other.rank() and self.__chern == other.chern()

    def __hash__(self):
        return hash((self.__rank, self.__chern))

    def __repr__(self):
        return f'BundleExpr({self.__label or "?"}, rank {self.__rank}, c = {self.__chern})'


def _same_ring(e, f):
    if e.ring() is not f.ring():
        raise RingMismatchError(e.ring().name(), f.ring().name())


def trivial(ring, rank=1):
    """Returns the trivial bundle of rank `rank` on `ring`."""
    return BundleExpr(rank, ring.one(), f'O^{rank}' if rank != 1 else 'O')


def line_bundle(divisor, label=''):
    """Returns the line bundle whose first Chern class is the degree 1 class `divisor`.

    Raises:
        ValueError: If `divisor` is not of degree 1.
    """
    if not divisor.is_homogeneous(1):
        raise ValueError(f'{divisor} is not a degree 1 class')
    return BundleExpr(1, divisor.ring().one() + divisor, label or f'O({divisor})')


def whitney_sum(e, f):
    """Returns the direct sum of `e` and `f`, with total Chern class `c(e) * c(f)`."""
    _same_ring(e, f)
    return BundleExpr(e.rank() + f.rank(), mul(e.chern(), f.chern()), f'{e.label()} + {f.label()}')


def virtual_difference(e, f):
    """Returns the virtual bundle `e - f`, with total Chern class `c(e) * c(f)^-1`."""
    _same_ring(e, f)
    return BundleExpr(e.rank() - f.rank(), mul(e.chern(), inverse(f.chern())), f'{e.label()} - ({f.label()})')


def dual(e):
    """Returns the dual bundle, whose `k`-th Chern class is `(-1)^k c_k(e)`."""
    chern = e.ring().zero()
    for k in e.chern().degrees():
        chern = add(chern, scale(e.c(k), (-1) ** k))
    return BundleExpr(e.rank(), chern, f'({e.label()})^v')


def twist_by_line(e, divisor):
    """Returns `e` tensored with the line bundle of first Chern class `divisor`.

    Uses `c_k(E(L)) = sum_i C(r - i, k - i) c_i(E) L^(k - i)` for a bundle `E` of rank `r`.

    Raises:
        UnsupportedBundleError: If `e` has negative rank or a nonzero Chern class above its rank.
        ValueError: If `divisor` is not of degree 1.
    """
    if e.rank() < 0:
        raise UnsupportedBundleError('twist_by_line', e)
    if any(d > e.rank() for d in e.chern().degrees()):
        raise UnsupportedBundleError('twist_by_line', e, 'Chern classes vanishing above the rank')
    if not divisor.is_homogeneous(1):
        raise ValueError(f'{divisor} is not a degree 1 class')
    ring = e.ring()
    r = e.rank()
    powers = [ring.one()]
    for _ in range(ring.top_degree()):
        powers.append(mul(powers[-1], divisor))
    chern = ring.zero()
    for k in range(ring.top_degree() + 1):
        for i in range(min(k, r) + 1):
            coefficient = math.comb(r - i, k - i)
            if coefficient:
                chern = add(chern, scale(mul(e.c(i), powers[k - i]), coefficient))
    return BundleExpr(r, chern, f'{e.label()}({divisor})')


def to_character(e):
    """Returns the Chern character of `e` as a class with constant term `rank(e)`.

    The power sums `p_k = k! ch_k` are obtained from the Chern classes by Newton's identities.
    """
    ring = e.ring()
    elementary = [e.c(k) for k in range(ring.top_degree() + 1)]
    power_sums = [None]
    character = scale(ring.one(), e.rank())
    for k in range(1, ring.top_degree() + 1):
        p = scale(elementary[k], (-1) ** (k - 1) * k)
        for i in range(1, k):
            p = add(p, scale(mul(elementary[i], power_sums[k - i]), (-1) ** (i - 1)))
        power_sums.append(p)
        character = add(character, scale(p, Fraction(1, math.factorial(k))))
    return character


def from_character(rank, character, label=''):
    """Returns the bundle of rank `rank` with Chern character `character`.

    Raises:
        ValueError: If the constant term of `character` differs from `rank`.
    """
    if character.constant() != rank:
        raise ValueError(f'character {character} does not have rank {rank}')
    ring = character.ring()
    power_sums = [None] + [scale(component(character, k), math.factorial(k)) for k in range(1, ring.top_degree() + 1)]
    elementary = [ring.one()]
    for k in range(1, ring.top_degree() + 1):
        e_k = ring.zero()
        for i in range(1, k + 1):
            e_k = add(e_k, scale(mul(elementary[k - i], power_sums[i]), (-1) ** (i - 1)))
        elementary.append(scale(e_k, Fraction(1, k)))
    chern = ring.zero()
    for e_k in elementary:
        chern = add(chern, e_k)
    return BundleExpr(rank, chern, label)


def character_of_line(divisor):
    """Returns `exp(divisor)`, the Chern character of the line bundle with first Chern class `divisor`."""
    return to_character(line_bundle(divisor))


def tensor(e, f):
    """Returns the tensor product of two genuine bundles, computed through `ch(e) * ch(f)`.

    Raises:
        UnsupportedBundleError: If either bundle has negative rank.
    """
    _same_ring(e, f)
    for bundle in (e, f):
        if bundle.rank() < 0:
            raise UnsupportedBundleError('tensor', bundle)
    character = mul(to_character(e), to_character(f))
    LOGGER.debug('tensor of %s (rank %d) and %s (rank %d)', e.label(), e.rank(), f.label(), f.rank())
    return from_character(e.rank() * f.rank(), character, f'{e.label()} (x) {f.label()}')


def exterior_top_minus_one(e):
    """Returns the exterior power of rank `rank(e) - 1`, as `e^v` twisted by `det e`.

    Raises:
        UnsupportedBundleError: If `e` has rank < 2.
    """
    if e.rank() < 2:
        raise UnsupportedBundleError('exterior_top_minus_one', e, 'rank >= 2')
    result = twist_by_line(dual(e), e.c(1))
    return result.relabel(f'wedge^{e.rank() - 1}({e.label()})')


def pullback(e, ring_map):
    """Returns the pullback of `e` along a `conewright.gradedring.RingMap`."""
    return BundleExpr(e.rank(), ring_map(e.chern()), e.label())
