"""Module that holds graded commutative quotient rings with a top-degree integration functional.

This module contains the `RingPresentation`, `NormalForm`, `RingClass` and `RingMap` classes, the
`build_normal_form` function and the arithmetic functions `add`, `mul`, `scale`, `component`, `inverse` and
`integrate`. A `RingPresentation` describes a ring such as `Q[s1, s2] / (relations)` truncated above its top degree,
together with the linear functional that integrates top-degree classes. Every `RingClass` is stored in normal form
with respect to a fixed basis of the quotient in each degree.

Examples:
    Building the Chow ring of the projective plane and integrating a class:

        p2 = RingPresentation('P2', [('h', 1)], ['h**3'], 2, {'h**2': 1})
        h = p2.generator('h')
        integrate(mul(h, h))  # Fraction(1, 1)

    Arithmetic can also be written with operators:

        c = (1 + h) ** 3
        component(c, 1)  # 3*h
"""
import logging
from fractions import Fraction

import sympy as sp
from sympy.polys.polyerrors import BasePolynomialError

LOGGER = logging.getLogger(__name__)


class PresentationError(Exception):
    """Raised when a `RingPresentation` or a `RingMap` is inconsistent or malformed."""

    def __init__(self, name, reason):
        super().__init__(f'invalid presentation {name}: {reason}')


class RingMismatchError(Exception):
    """Raised when classes from two different presentations are combined."""

    def __init__(self, left, right):
        super().__init__(f'classes live in different rings ({left} and {right})')


def _fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, sp.Basic):
        value = sp.Rational(value)
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


def _rational(value):
    value = _fraction(value)
    return sp.Rational(value.numerator, value.denominator)


def _monomials(degrees, d):
    # Exponent vectors of weighted degree d, in descending lexicographic order.
    if not degrees:
        return [()] if d == 0 else []
    head, rest = degrees[0], degrees[1:]
    out = []
    for e in range(d // head, -1, -1):
        for tail in _monomials(rest, d - e * head):
            out.append((e,) + tail)
    return out


def _times(m1, m2):
    return tuple(a + b for a, b in zip(m1, m2))


class NormalForm:
    """Per-degree bases of a quotient ring together with the reduction of every monomial onto them.

    Instances are produced by `build_normal_form` and are read-only afterwards.
    """

    def __init__(self, bases, reductions):
        self.__bases = bases
        self.__reductions = reductions

    def basis(self, d):
        """Returns the tuple of basis monomials in degree `d` (empty above the top degree)."""
        if d < 0 or d >= len(self.__bases):
            return ()
        return self.__bases[d]

    def reduce(self, d, monomial):
        """Returns the normal form of a degree `d` monomial as a `dict` from basis monomial to `Fraction`."""
        return self.__reductions[d][monomial]

    def top_degree(self):
        """Returns the largest degree with a nonempty basis."""
        return len(self.__bases) - 1


def build_normal_form(presentation):
    """Builds the degreewise normal-form tables of a `RingPresentation`.

    In each degree `d` up to the top degree, the degree-`d` slice of the relation ideal is spanned by the relations
    multiplied by every monomial of complementary degree. Row reducing that slice (columns ordered by graded
    lexicographic order with generators in declaration order) turns the pivot monomials into the reducible ones; the
    remaining monomials form the basis of the quotient in degree `d`.

    Args:
        presentation: The `RingPresentation` whose tables are built.

    Returns:
        A `NormalForm`.

    Raises:
        PresentationError: If the quotient vanishes in degree 0.
    """
    degrees = presentation.degrees()
    relations = presentation.relation_terms()
    bases, reductions = [], []
    for d in range(presentation.top_degree() + 1):
        monomials = _monomials(degrees, d)
        column = {m: i for i, m in enumerate(monomials)}
        rows = []
        for relation_degree, terms in relations:
            if relation_degree > d:
                continue
            for shift in _monomials(degrees, d - relation_degree):
                row = [sp.Integer(0)] * len(monomials)
                for m, c in terms.items():
                    row[column[_times(m, shift)]] += c
                rows.append(row)
        pivots = ()
        if rows:
            reduced, pivots = sp.Matrix(rows).rref()
        basis = tuple(m for i, m in enumerate(monomials) if i not in pivots)
        reduction = {m: {m: Fraction(1)} for m in basis}
        for r, p in enumerate(pivots):
            reduction[monomials[p]] = {
                monomials[j]: -_fraction(reduced[r, j])
                for j in range(len(monomials))
                if j not in pivots and reduced[r, j] != 0
            }
        LOGGER.debug('%s degree %d: %d monomials, %d relations, basis size %d', presentation.name(), d,
                     len(monomials), len(rows), len(basis))
        bases.append(basis)
        reductions.append(reduction)
    if not bases[0]:
        raise PresentationError(presentation.name(), 'the quotient is the zero ring')
    return NormalForm(bases, reductions)


class RingPresentation:
    """Represents a graded quotient ring truncated above its top degree.

    Generators carry positive integer degrees and relations must be homogeneous in that grading. Relations and
    integration keys may be given as strings or `sympy` expressions in the generator names. The integration values
    may be given on any top-degree monomials; they must determine a unique functional on the normal-form basis.

    Examples:
        The Chow ring of the blow-up of P4 at a point:

            blp4 = RingPresentation('BlP4', [('alpha', 1), ('xi', 1)], ['alpha**4', 'xi**2 - alpha*xi'], 4,
                                    {'alpha**3*xi': 1})
    """

    def __init__(self, name, generators, relations, top_degree, integration):
        """Initializes a `RingPresentation` and builds its normal-form tables.

        Args:
            name: A label used in messages.
            generators: A list of `(name, degree)` pairs with positive integer degrees.
            relations: A list of homogeneous polynomials in the generators.
            top_degree: The dimension of the variety the ring models.
            integration: A `dict` mapping top-degree monomials to rational values.

        Raises:
            ValueError: If a generator degree is not positive, a name repeats, or `top_degree < 0`.
            PresentationError: If a relation is not homogeneous, the quotient is zero, or the integration values are
                               inconsistent or do not determine the functional.
        """
        if top_degree < 0:
            raise ValueError(f'top_degree ({top_degree}) must be >= 0')
        names = [str(g) for g, _ in generators]
        if len(set(names)) != len(names):
            raise ValueError(f'generator names must be distinct, got {names}')
        for g, deg in generators:
            if int(deg) != deg or deg <= 0:
                raise ValueError(f'generator {g} must have a positive integer degree, got {deg}')
        self.__name = name
        self.__generators = tuple((str(g), int(deg)) for g, deg in generators)
        self.__symbols = tuple(sp.Symbol(g) for g in names)
        self.__locals = {g: s for g, s in zip(names, self.__symbols)}
        self.__top = int(top_degree)
        self.__relations = tuple(self.__sympify(r) for r in relations)
        self.__relation_terms = tuple(self.__homogeneous_terms(r) for r in self.__relations)
        self.__normal_form = build_normal_form(self)
        self.__integration = self.__solve_integration(integration)

    def name(self):
        """Returns the name of the ring."""
        return self.__name

    def generators(self):
        """Returns the `(name, degree)` pairs of this presentation."""
        return self.__generators

    def degrees(self):
        """Returns the degrees of the generators, in declaration order."""
        return tuple(deg for _, deg in self.__generators)

    def relations(self):
        """Returns the relations as `sympy` expressions."""
        return self.__relations

    def relation_terms(self):
        """Returns each relation as a pair `(degree, {exponent tuple: sympy.Rational})`."""
        return self.__relation_terms

    def top_degree(self):
        """Returns the top degree; classes are truncated above it."""
        return self.__top

    def normal_form(self):
        """Returns the `NormalForm` computed at construction."""
        return self.__normal_form

    def basis(self, d):
        """Returns the tuple of basis monomials in degree `d`."""
        return self.__normal_form.basis(d)

    def monomials(self, d):
        """Returns all exponent tuples of weighted degree `d`, in the fixed monomial order."""
        return tuple(_monomials(self.degrees(), d))

    def integration(self):
        """Returns the integration functional as a `dict` from top-degree basis monomial to `Fraction`."""
        return dict(self.__integration)

    def monomial_expr(self, monomial):
        """Returns `monomial` as a `sympy` expression in the generator symbols."""
        return sp.Mul(*(s ** e for s, e in zip(self.__symbols, monomial)))

    def degree_of(self, monomial):
        """Returns the weighted degree of an exponent tuple."""
        return sum(e * deg for e, (_, deg) in zip(monomial, self.__generators))

    def zero(self):
        """Returns the zero class."""
        return RingClass(self, {})

    def one(self):
        """Returns the unit class."""
        return self.from_terms({(0,) * len(self.__generators): 1})

    def generator(self, name):
        """Returns the class of the generator called `name`.

        Raises:
            KeyError: If there is no such generator.
        """
        names = [g for g, _ in self.__generators]
        if name not in names:
            raise KeyError(f'{self.__name} has no generator {name}; generators are {names}')
        exponents = tuple(1 if g == name else 0 for g in names)
        return self.from_terms({exponents: 1})

    def monomial(self, monomial):
        """Returns the class of the monomial with the given exponent tuple."""
        if len(monomial) != len(self.__generators):
            raise ValueError(f'monomial {monomial} needs {len(self.__generators)} exponents')
        return self.from_terms({tuple(monomial): 1})

    def from_terms(self, terms):
        """Reduces a `dict` from exponent tuple to rational coefficient into a `RingClass`.

        Monomials above the top degree are dropped.
        """
        out = {}
        for monomial, coefficient in terms.items():
            coefficient = _fraction(coefficient)
            if coefficient == 0:
                continue
            d = self.degree_of(monomial)
            if d > self.__top:
                continue
            bucket = out.setdefault(d, {})
            for b, r in self.__normal_form.reduce(d, tuple(monomial)).items():
                bucket[b] = bucket.get(b, 0) + coefficient * r
        return RingClass(self, out)

    def element(self, expr):
        """Parses a polynomial (string, `sympy` expression or number) in the generators into a `RingClass`."""
        if isinstance(expr, RingClass):
            _check_same(expr.ring(), self)
            return expr
        poly = self.__poly(self.__sympify(expr))
        return self.from_terms({m: _fraction(c) for m, c in poly.terms()})

    def __sympify(self, expr):
        try:
            return sp.sympify(expr, locals=self.__locals)
        except (sp.SympifyError, TypeError) as e:
            raise PresentationError(self.__name, f'cannot parse {expr!r}') from e

    def __poly(self, expr):
        try:
            return sp.Poly(expr, *self.__symbols, domain=sp.QQ)
        except BasePolynomialError as e:
            raise PresentationError(self.__name, f'{expr} is not a polynomial in {self.__locals}') from e

    def __homogeneous_terms(self, relation):
        terms = self.__poly(relation).terms()
        degrees = {self.degree_of(m) for m, _ in terms}
        if len(degrees) > 1:
            raise PresentationError(self.__name, f'relation {relation} is not homogeneous')
        if not terms or terms == [((0,) * len(self.__generators), 0)]:
            raise PresentationError(self.__name, 'a relation is zero')
        if degrees == {0}:
            raise PresentationError(self.__name, f'relation {relation} is a nonzero constant')
        return degrees.pop(), {m: c for m, c in terms}

    def __solve_integration(self, integration):
        basis = self.basis(self.__top)
        rows, values = [], []
        for key, value in integration.items():
            cls = self.element(key)
            if any(d != self.__top for d in cls.degrees()):
                raise PresentationError(self.__name, f'integration key {key} is not of degree {self.__top}')
            rows.append([_rational(cls.coefficient(b)) for b in basis])
            values.append(_rational(value))
        if not basis:
            if any(v != 0 for v in values):
                raise PresentationError(self.__name, 'top degree vanishes but integration values are nonzero')
            return {}
        if not rows:
            raise PresentationError(self.__name, 'no integration values given')
        try:
            solution, params = sp.Matrix(rows).gauss_jordan_solve(sp.Matrix(values))
        except ValueError as e:
            raise PresentationError(self.__name, 'integration values are inconsistent') from e
        if params.shape[0] > 0:
            raise PresentationError(self.__name, 'integration values do not determine the functional')
        return {b: _fraction(solution[i]) for i, b in enumerate(basis)}

    def __repr__(self):
        gens = ', '.join(g for g, _ in self.__generators)
        return f'RingPresentation({self.__name}: Q[{gens}] / {len(self.__relations)} relations, top {self.__top})'


def _check_same(left, right):
    if left is not right:
        raise RingMismatchError(left.name(), right.name())


class RingClass:
    """Represents an element of a `RingPresentation`, stored in normal form degree by degree.

    Classes are immutable. Integers and `Fraction`s are accepted wherever a class is expected in `+`, `-` and `*`.
    """

    def __init__(self, ring, terms):
        self.__ring = ring
        self.__terms = {}
        for d, bucket in terms.items():
            kept = {m: _fraction(c) for m, c in bucket.items() if c != 0}
            if kept:
                self.__terms[d] = kept

    def ring(self):
        """Returns the `RingPresentation` this class belongs to."""
        return self.__ring

    def degrees(self):
        """Returns the sorted degrees in which this class has a nonzero component."""
        return sorted(self.__terms)

    def terms(self):
        """Yields `(exponent tuple, Fraction)` pairs over all degrees."""
        for d in sorted(self.__terms):
            for m, c in self.__terms[d].items():
                yield m, c

    def bucket(self, d):
        """Returns a copy of the degree `d` part as a `dict` from basis monomial to `Fraction`."""
        return dict(self.__terms.get(d, {}))

    def coefficient(self, monomial):
        """Returns the coefficient of a basis monomial, zero if absent."""
        d = self.__ring.degree_of(monomial)
        return self.__terms.get(d, {}).get(tuple(monomial), Fraction(0))

    def constant(self):
        """Returns the degree 0 coefficient as a `Fraction`."""
        return sum(self.__terms.get(0, {}).values(), Fraction(0))

    def is_zero(self):
        """Returns `True` if every coefficient is zero, `False` otherwise."""
        return not self.__terms

    def is_integral(self):
        """Returns `True` if every coefficient is an integer, `False` otherwise."""
        return all(c.denominator == 1 for _, c in self.terms())

    def is_homogeneous(self, d):
        """Returns `True` if every nonzero part has degree `d`, `False` otherwise."""
        return all(k == d for k in self.__terms)

    def to_expr(self):
        """Returns this class as a `sympy` expression."""
        return sp.Add(*(_rational(c) * self.__ring.monomial_expr(m) for m, c in self.terms()))

    def __coerce(self, other):
        if isinstance(other, RingClass):
            _check_same(self.__ring, other.ring())
            return other
        if isinstance(other, (int, Fraction)):
            return scale(self.__ring.one(), other)
        return NotImplemented

    def __add__(self, other):
        other = self.__coerce(other)
        return NotImplemented if other is NotImplemented else add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        other = self.__coerce(other)
        return NotImplemented if other is NotImplemented else add(self, scale(other, -1))

    def __rsub__(self, other):
        other = self.__coerce(other)
        return NotImplemented if other is NotImplemented else add(other, scale(self, -1))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(self, other)
        if isinstance(other, RingClass):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return scale(self, Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f'exponent ({exponent}) must be a non-negative integer')
        result = self.__ring.one()
        for _ in range(exponent):
            result = mul(result, self)
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = scale(self.__ring.one(), other)
        if not isinstance(other, RingClass):
            return NotImplemented
        return self.__ring is other.ring() and dict(self.terms()) == dict(other.terms())

    def __hash__(self):
        return hash((id(self.__ring), frozenset(self.terms())))

    def __str__(self):
        return str(self.to_expr())

    def __repr__(self):
        return f'RingClass({self.__ring.name()}: {self})'


def add(a, b):
    """Returns the sum of two classes of the same ring.

    Raises:
        RingMismatchError: If `a` and `b` live in different rings.
    """
    _check_same(a.ring(), b.ring())
    out = {}
    for cls in (a, b):
        for d in cls.degrees():
            bucket = out.setdefault(d, {})
            for m, c in cls.bucket(d).items():
                bucket[m] = bucket.get(m, 0) + c
    return RingClass(a.ring(), out)


def scale(a, q):
    """Returns `q * a` for a rational `q`."""
    q = _fraction(q)
    return RingClass(a.ring(), {d: {m: q * c for m, c in a.bucket(d).items()} for d in a.degrees()})


def mul(a, b):
    """Returns the product of two classes, truncated above the top degree and reduced to normal form.

    Raises:
        RingMismatchError: If `a` and `b` live in different rings.
    """
    _check_same(a.ring(), b.ring())
    ring = a.ring()
    nf = ring.normal_form()
    top = ring.top_degree()
    out = {}
    for da in a.degrees():
        for db in b.degrees():
            d = da + db
            if d > top:
                continue
            bucket = out.setdefault(d, {})
            for ma, ca in a.bucket(da).items():
                for mb, cb in b.bucket(db).items():
                    for m, r in nf.reduce(d, _times(ma, mb)).items():
                        bucket[m] = bucket.get(m, 0) + ca * cb * r
    return RingClass(ring, out)


def component(a, d):
    """Returns the degree `d` component of `a` (zero if there is none)."""
    return RingClass(a.ring(), {d: a.bucket(d)})


def inverse(a):
    """Returns the multiplicative inverse of a class with nonzero constant term.

    Raises:
        ValueError: If the constant term of `a` is zero.
    """
    c0 = a.constant()
    if c0 == 0:
        raise ValueError(f'{a} has no constant term and is not invertible')
    ring = a.ring()
    nilpotent = ring.one() - scale(a, 1 / c0)
    result = ring.one()
    power = ring.one()
    for _ in range(ring.top_degree()):
        power = mul(power, nilpotent)
        result = add(result, power)
    return scale(result, 1 / c0)


def integrate(a):
    """Pairs the top-degree component of `a` with the integration functional; lower degrees contribute 0."""
    ring = a.ring()
    functional = ring.integration()
    return sum((c * functional[m] for m, c in a.bucket(ring.top_degree()).items()), Fraction(0))


class RingMap:
    """Represents a graded ring homomorphism determined by the images of the generators.

    The map is checked to be well defined: every relation of the source must map to zero in the target (relations
    landing above the target's top degree vanish by truncation).

    Examples:
        Pulling back the hyperplane class of P3 along the projection of the blow-up of P4:

            f_star = RingMap(p3, blp4, {'h': 'alpha'})
            f_star(p3.generator('h'))  # alpha
    """

    def __init__(self, source, target, images):
        """Initializes a `RingMap`.

        Args:
            source: The source `RingPresentation`.
            target: The target `RingPresentation`.
            images: A `dict` from source generator name to a class (or parsable expression) of the target.

        Raises:
            PresentationError: If a generator has no image, an image has the wrong degree, or a relation does not
                               map to zero.
        """
        self.__source = source
        self.__target = target
        self.__images = []
        for g, deg in source.generators():
            if g not in images:
                raise PresentationError(source.name(), f'generator {g} has no image in {target.name()}')
            image = target.element(images[g])
            if not image.is_homogeneous(deg):
                raise PresentationError(source.name(), f'image {image} of {g} is not of degree {deg}')
            self.__images.append(image)
        for relation_degree, terms in source.relation_terms():
            image = self.__evaluate({m: _fraction(c) for m, c in terms.items()})
            if not image.is_zero():
                raise PresentationError(source.name(), f'map to {target.name()} sends a relation to {image}')
        LOGGER.debug('validated ring map %s -> %s', source.name(), target.name())

    def source(self):
        """Returns the source `RingPresentation`."""
        return self.__source

    def target(self):
        """Returns the target `RingPresentation`."""
        return self.__target

    def __evaluate(self, terms):
        result = self.__target.zero()
        for monomial, coefficient in terms.items():
            value = self.__target.one()
            for image, e in zip(self.__images, monomial):
                if e:
                    value = mul(value, image ** e)
            result = add(result, scale(value, coefficient))
        return result

    def __call__(self, cls):
        _check_same(cls.ring(), self.__source)
        return self.__evaluate(dict(cls.terms()))

    def __repr__(self):
        return f'RingMap({self.__source.name()} -> {self.__target.name()})'
