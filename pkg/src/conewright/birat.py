"""Module that holds the divisor-lattice layer: flop matrices and movable-cone chamber decompositions.

Divisors on the Calabi-Yau threefold `X_F` are written `aL + bH` (a `Div2`). Small birational maps between minimal
models act on these classes through integer 2x2 matrices (a `Map2`), whose columns are the images of the basis
divisors. The pushforward solver recovers an unknown column from the invariance of two triple intersection numbers;
chamber assembly pushes the nef cone of every minimal model into the divisor lattice of `X_F` and checks that the
images tile the movable cone.

This module contains the `Div2`, `Map2`, `Chamber` and `ChamberDecomposition` classes, the `SolverError` and
`ChamberAssemblyError` exceptions, and the functions `triple_intersection`, `pushforward_candidates`,
`pushforward_solve`, `chi_matrix`, `solve_chi`, `involution_matrix_v4`, `flop_matrix`, `assemble_chambers` and
`fiber_invariant_checks`.

Examples:
    The flop matrix of the V5 case and its chamber decomposition:

        flop_matrix('v5')[0, 0]  # 5
        [str(w) for w in assemble_chambers('v5').walls]  # ['4L-5H', '9L-11H', 'L-H', 'H', '-L+3H']
"""
import functools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import sympy as sp

from conewright import expected
from conewright.detcy import (blowup_flop_pair, c2_pairings, degeneracy_degree, determinantal_pair, invariant_row,
                              MAIN_CASES, odp_count, quintic_flop_pair, require_integer, triple_products)
from conewright.gradedring import integrate, mul
from conewright.report import CheckItem

LOGGER = logging.getLogger(__name__)

# Curve class Sigma+ on the flop X_F^+ of the V5 case, paired with H' and 2L' - H'.
SIGMA_PLUS_PAIRINGS = {'H': 2, '2L-H': 0}
# The exceptional locus of X_F^+ -> Z_F is the single curve Sigma+, contracted to one node of Z_F.
Z_F_NODES = 1


class SolverError(Exception):
    """Raised when a pushforward system has no admissible exact solution or more than one."""

    def __init__(self, reason, discriminant=None):
        suffix = '' if discriminant is None else f' (discriminant {discriminant})'
        super().__init__(f'pushforward solver failed: {reason}{suffix}')
        self.discriminant = discriminant


class ChamberAssemblyError(Exception):
    """Raised when the pushed-forward nef cones do not tile a cone."""

    def __init__(self, case, reason):
        super().__init__(f'cannot assemble chambers for {case}: {reason}')


class Div2:
    """Represents the divisor class `aL + bH` with exact rational coordinates."""

    __slots__ = ('__a', '__b')

    def __init__(self, a, b):
        self.__a = Fraction(a)
        self.__b = Fraction(b)

    def a(self):
        """Returns the coefficient of `L`."""
        return self.__a

    def b(self):
        """Returns the coefficient of `H`."""
        return self.__b

    def coordinates(self):
        """Returns the pair `(a, b)` of `Fraction`s."""
        return self.__a, self.__b

    def is_zero(self):
        """Returns `True` if both coordinates are zero, `False` otherwise."""
        return self.__a == 0 and self.__b == 0

    def primitive(self):
        """Returns the primitive integer vector on the same ray.

        Raises:
            ValueError: If this divisor is zero.
        """
        if self.is_zero():
            raise ValueError('the zero divisor spans no ray')
        da, db = self.__a.denominator, self.__b.denominator
        denominator = da * db // math.gcd(da, db)
        a, b = int(self.__a * denominator), int(self.__b * denominator)
        g = math.gcd(a, b)
        return Div2(a // g, b // g)

    def cross(self, other):
        """Returns `a1 b2 - a2 b1`, positive when `other` is counterclockwise from this divisor."""
        return self.__a * other.b() - self.__b * other.a()

    def as_ints(self):
        """Returns `(a, b)` as `int`s, raising `ValueError` if either coordinate is fractional."""
        if self.__a.denominator != 1 or self.__b.denominator != 1:
            raise ValueError(f'{self} is not integral')
        return int(self.__a), int(self.__b)

    def __add__(self, other):
        return Div2(self.__a + other.a(), self.__b + other.b())

    def __sub__(self, other):
        return Div2(self.__a - other.a(), self.__b - other.b())

    def __neg__(self):
        return Div2(-self.__a, -self.__b)

    def __rmul__(self, q):
        return Div2(q * self.__a, q * self.__b)

    def __eq__(self, other):
        if not isinstance(other, Div2):
            return NotImplemented
        return self.coordinates() == other.coordinates()

    def __hash__(self):
        return hash(self.coordinates())

    def __str__(self):
        out = ''
        for coefficient, symbol in ((self.__a, 'L'), (self.__b, 'H')):
            if coefficient == 0:
                continue
            sign = '-' if coefficient < 0 else ('+' if out else '')
            magnitude = abs(coefficient)
            out += sign + ('' if magnitude == 1 else str(magnitude)) + symbol
        return out or '0'

    def __repr__(self):
        return f'Div2({self})'


L = Div2(1, 0)
H = Div2(0, 1)


class Map2:
    """Represents an integer 2x2 matrix acting on `Div2` column vectors.

    Column `j` holds the image of the `j`-th basis divisor (`L`, then `H`). Indexing works like a 2D array:
    `m[i, j]` is the entry in row `i` and column `j`, and an `IndexError` is raised outside `0 <= i, j < 2`.

    Examples:
        The involution of the V4 case fixes `L - H`:

            iota = Map2([[9, 8], [-10, -9]])
            iota(Div2(1, -1))  # Div2(L-H)
    """

    def __init__(self, rows, source='X_F', target='X_F'):
        """Initializes a `Map2` from its rows.

        Raises:
            ValueError: If `rows` is not a 2x2 integer matrix of determinant +1 or -1.
        """
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError(f'{rows} is not a 2x2 matrix')
        if any(Fraction(x).denominator != 1 for r in rows for x in r):
            raise ValueError(f'{rows} has non-integer entries')
        self.__rows = tuple(tuple(int(x) for x in r) for r in rows)
        if abs(self.determinant()) != 1:
            raise ValueError(f'{rows} has determinant {self.determinant()}, not +1 or -1')
        self.__source = source
        self.__target = target

    @staticmethod
    def from_columns(first, second, source='X_F', target='X_F'):
        """Builds the map sending `L` to `first` and `H` to `second`."""
        (a, b), (c, d) = first.as_ints(), second.as_ints()
        return Map2([[a, c], [b, d]], source, target)

    def rows(self):
        """Returns the rows of this `Map2` as a tuple of integer pairs."""
        return self.__rows

    def source(self):
        """Returns the name of the model this map starts from."""
        return self.__source

    def target(self):
        """Returns the name of the model this map lands in."""
        return self.__target

    def __getitem__(self, index):
        row, column = index
        if row < 0 or row >= 2:
            raise IndexError(f'row index ({row}) can\'t be < 0 or >= 2')
        if column < 0 or column >= 2:
            raise IndexError(f'column index ({column}) can\'t be < 0 or >= 2')
        return self.__rows[row][column]

    def determinant(self):
        """Returns the determinant, +1 or -1."""
        (a, c), (b, d) = self.__rows
        return a * d - b * c

    def inverse(self):
        """Returns the inverse `Map2`, with source and target exchanged."""
        (a, c), (b, d) = self.__rows
        det = self.determinant()
        return Map2([[d * det, -c * det], [-b * det, a * det]], self.__target, self.__source)

    def __call__(self, div):
        (a, c), (b, d) = self.__rows
        return Div2(a * div.a() + c * div.b(), b * div.a() + d * div.b())

    def __matmul__(self, other):
        """Returns the composition applying `other` first."""
        rows = [[sum(self[i, k] * other[k, j] for k in range(2)) for j in range(2)] for i in range(2)]
        return Map2(rows, other.source(), self.__target)

    def is_identity(self):
        """Returns `True` if this is the identity matrix, `False` otherwise."""
        return self.__rows == ((1, 0), (0, 1))

    def __eq__(self, other):
        if not isinstance(other, Map2):
            return NotImplemented
        return self.__rows == other.rows()

    def __hash__(self):
        return hash(self.__rows)

    def __repr__(self):
        return f'Map2({[list(r) for r in self.__rows]}: {self.__source} -> {self.__target})'


def triple_intersection(triples, u, v, w):
    """Returns `u . v . w` from the triple products `(D1^3, D1^2 D2, D1 D2^2, D2^3)` of a basis `(D1, D2)`."""
    total = Fraction(0)
    for i, x in enumerate(u.coordinates()):
        for j, y in enumerate(v.coordinates()):
            for k, z in enumerate(w.coordinates()):
                total += x * y * z * triples[i + j + k]
    return total


def pushforward_candidates(triples, targets, known):
    """Returns every exact rational `v = aD1 + bD2` with `v . w^2` and `v^2 . w` equal to `targets`, for `w = known`.

    The linear equation is solved for one unknown and substituted into the quadratic one.

    Args:
        triples: The triple products of the target basis `(D1, D2)`.
        targets: The pair `(v . w^2, v^2 . w)`.
        known: The `Div2` `w`.

    Returns:
        A `list` of `Div2`s.

    Raises:
        SolverError: If the system is degenerate or has an irrational root.
    """
    t0, t1, t2, t3 = (sp.Integer(t) for t in triples)
    p, q = (sp.Rational(x.numerator, x.denominator) for x in known.coordinates())
    a, b = sp.symbols('a b')
    linear = (p ** 2 * t0 + 2 * p * q * t1 + q ** 2 * t2) * a + (p ** 2 * t1 + 2 * p * q * t2 + q ** 2 * t3) * b \
        - targets[0]
    quadratic = (p * t0 + q * t1) * a ** 2 + 2 * (p * t1 + q * t2) * a * b + (p * t2 + q * t3) * b ** 2 - targets[1]
    linear_poly = sp.Poly(linear, a, b)
    if linear_poly.coeff_monomial(b) != 0:
        free, bound = a, b
    elif linear_poly.coeff_monomial(a) != 0:
        free, bound = b, a
    else:
        raise SolverError('the linear equation does not involve the unknowns')
    bound_value = sp.solve(linear, bound)[0]
    reduced = sp.Poly(sp.expand(quadratic.subs(bound, bound_value)), free)
    LOGGER.debug('eliminated %s = %s, reduced quadratic %s', bound, bound_value, reduced.as_expr())
    if reduced.degree() < 1:
        raise SolverError('the system is degenerate')
    discriminant = sp.discriminant(reduced) if reduced.degree() == 2 else None
    roots = sp.roots(reduced)
    if any(not r.is_rational for r in roots):
        raise SolverError('the roots are not rational', discriminant)
    out = []
    for root in sorted(roots):
        other = bound_value.subs(free, root)
        coordinates = {free: sp.Rational(root), bound: sp.Rational(other)}
        out.append(Div2(*(Fraction(int(coordinates[x].p), int(coordinates[x].q)) for x in (a, b))))
    return out


def pushforward_solve(triples, targets, known):
    """Returns the unique solution of the pushforward system with `a * b < 0`.

    Both equations are checked again on the solution through `triple_intersection`.

    Raises:
        SolverError: If there is no admissible solution, more than one, or the check fails.
    """
    candidates = pushforward_candidates(triples, targets, known)
    admissible = [v for v in candidates if v.a() * v.b() < 0]
    if len(admissible) != 1:
        raise SolverError(f'{len(admissible)} solutions with a*b < 0 among {[str(v) for v in candidates]}')
    v = admissible[0]
    if (triple_intersection(triples, v, known, known), triple_intersection(triples, v, v, known)) != tuple(targets):
        raise SolverError(f'{v} does not satisfy the invariance equations')
    LOGGER.debug('pushforward solution %s (rejected %s)', v, [str(c) for c in candidates if c != v])
    return v


def _space_of(case):
    return determinantal_pair(case).space()


def chi_matrix(case):
    """Returns the matrix `[[-1, 0], [r, 1]]` of the determinantal flop `X_F -> X_E`, with `r` the Fano index."""
    r = _space_of(case).fano_index()
    return Map2([[-1, 0], [r, 1]], 'X_F', 'X_E')


@functools.lru_cache(maxsize=None)
def _rows(case):
    cfg = determinantal_pair(case)
    return invariant_row(cfg), triple_products(cfg.swapped())


def solve_chi(case):
    """Recovers the image of `L` under the determinantal flop from the triple products of `X_E`.

    The image of `H` is `H_E`, so the system is solved with `known = H` in the basis `(L_E, H_E)`.
    """
    row, dual_triples = _rows(case)
    return pushforward_solve(dual_triples, (row.lh2, row.l2h), H)


def involution_matrix_v4(row):
    """Returns the involution matrix of the V4 case from its intersection numbers.

    With `a = H . (L - H)^2`, the involution fixes `L - H` and sends `H` to `a(L - H) - H`.
    """
    fibre = L - H
    a = triple_intersection(row.triples(), H, fibre, fibre)
    image_of_h = a * fibre - H
    return Map2.from_columns(fibre + image_of_h, image_of_h)


def _flop_pair(case):
    if case == 'v5':
        return quintic_flop_pair()
    if case == 'gr24':
        return blowup_flop_pair()
    raise ValueError(f'case {case!r} has no flop to X_F^+')


def flop_matrix(case):
    """Returns the matrix of the flop `X_F^+ -> X_F` for `v5` or `gr24`, in the bases `(L', H')` and `(L, H)`.

    The image of `H'` is `L - H`, and the image of `L'` solves the pushforward system built from the triple products
    of `X_F^+`.
    """
    row, _ = _rows(case)
    flop_triples = triple_products(_flop_pair(case))
    known = L - H
    image = pushforward_solve(row.triples(), (flop_triples[2], flop_triples[1]), known)
    return Map2.from_columns(image, known, 'X_F+', 'X_F')


@dataclass(frozen=True)
class Chamber:
    """A nef chamber transported into the divisor lattice of `X_F`, bounded by two primitive walls."""
    model: str
    lower: Div2
    upper: Div2
    lower_contraction: str
    upper_contraction: str
    via: str = ''

    def to_dict(self):
        """Returns the chamber as a JSON-compatible `dict`, walls printed as strings."""
        return {'model': self.model, 'lower': str(self.lower), 'upper': str(self.upper),
                'lower_contraction': self.lower_contraction, 'upper_contraction': self.upper_contraction,
                'via': self.via}


@dataclass(frozen=True)
class ChamberDecomposition:
    """Walls of the movable cone in counterclockwise order, with the chamber between each consecutive pair."""
    case: str
    walls: tuple
    chambers: tuple

    def to_dict(self):
        """Returns the decomposition as a JSON-compatible `dict`."""
        return {'case': self.case, 'walls': [str(w) for w in self.walls],
                'chambers': [c.to_dict() for c in self.chambers]}


_K3 = 'K3 fibration over P1'
_ELLIPTIC = 'elliptic fibration over P2'
_DETERMINANTAL = 'determinantal contraction'
_NEF_X_F = ((L - H, 'small contraction to Y_F'), (H, _DETERMINANTAL))

# (model, generators in the model's own basis with contraction types, maps applied in order)
_LAYOUT = {
    'v4': (
        ('X_F', _NEF_X_F, ()),
        ('X_E', ((L, _K3), (H, _DETERMINANTAL)), ('chi',)),
        ('X_F', _NEF_X_F, ('iota',)),
        ('X_E', ((L, _K3), (H, _DETERMINANTAL)), ('chi', 'iota')),
    ),
    'v5': (
        ('X_F', _NEF_X_F, ()),
        ('X_E', ((L, _K3), (H, _DETERMINANTAL)), ('chi',)),
        ('X_F^+', ((H, 'small contraction to the quintic'), (2 * L - H, 'flop to X_F^++')), ('theta',)),
        ('X_F^++', ((2 * L - H, 'flop to X_F^+'), (L - H, _K3)), ('theta',)),
    ),
    'gr24': (
        ('X_F', _NEF_X_F, ()),
        ('X_E', ((L, _ELLIPTIC), (H, _DETERMINANTAL)), ('chi',)),
        ('X_F^+', ((L - H, _ELLIPTIC), (H, 'small contraction to the quintic')), ('theta',)),
    ),
}

# Movable-cone edges as primitive vectors in the (L, H) basis.
MOVABLE_CONE_EDGES = {
    'v4': (Div2(15, -17), Div2(-1, 3)),
    'v5': (Div2(4, -5), Div2(-1, 3)),
    'gr24': (Div2(4, -5), Div2(-1, 4)),
}


def _case_maps(case):
    maps = {'chi': chi_matrix(case).inverse()}
    if case == 'v4':
        maps['iota'] = involution_matrix_v4(_rows(case)[0])
    else:
        maps['theta'] = flop_matrix(case)
    return maps


def _counterclockwise(x, y):
    cross = x.lower.cross(y.lower)
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def assemble_chambers(case):
    """Pushes the nef cone of every minimal model of `case` into `N^1(X_F)` and orders the resulting chambers.

    Raises:
        ValueError: If `case` is unknown.
        ChamberAssemblyError: If a chamber is degenerate, two chambers overlap or leave a gap, the chambers span
                              half a plane or more, or the outer walls are not the movable-cone edges.
    """
    if case not in _LAYOUT:
        raise ValueError(f'unknown case {case!r}; cases are {MAIN_CASES}')
    maps = _case_maps(case)
    chambers = []
    for model, generators, path in _LAYOUT[case]:
        images = []
        for div, contraction in generators:
            for name in path:
                div = maps[name](div)
            images.append((div.primitive(), contraction))
        (lower, lower_c), (upper, upper_c) = images
        cross = lower.cross(upper)
        if cross == 0:
            raise ChamberAssemblyError(case, f'the {model} chamber is degenerate')
        if cross < 0:
            (lower, lower_c), (upper, upper_c) = (upper, upper_c), (lower, lower_c)
        chambers.append(Chamber(model, lower, upper, lower_c, upper_c, ' o '.join(reversed(path))))
    chambers.sort(key=functools.cmp_to_key(_counterclockwise))
    for left, right in zip(chambers, chambers[1:]):
        if left.upper != right.lower:
            kind = 'gap' if left.upper.cross(right.lower) > 0 else 'overlap'
            raise ChamberAssemblyError(case, f'{kind} between {left.model} and {right.model}')
    if chambers[0].lower.cross(chambers[-1].upper) <= 0:
        raise ChamberAssemblyError(case, 'chambers span half a plane or more')
    walls = (chambers[0].lower,) + tuple(c.upper for c in chambers)
    if (walls[0], walls[-1]) != MOVABLE_CONE_EDGES[case]:
        raise ChamberAssemblyError(case, f'outer walls {walls[0]}, {walls[-1]} are not the movable-cone edges')
    if not any(c.model == 'X_F' and (c.lower, c.upper) == (L - H, H) for c in chambers):
        raise ChamberAssemblyError(case, 'Nef(X_F) = cone(L - H, H) is missing')
    LOGGER.debug('%s walls: %s', case, [str(w) for w in walls])
    return ChamberDecomposition(case, walls, tuple(chambers))


def fiber_invariant_checks(case):
    """Returns the `conewright.report.CheckItem`s comparing fibre invariants of `case` with their expected values.

    V4 and V5 check `c2(T_X_E) . L_E` on the K3 fibres. V5 also checks `c2(T_V5) . c2(F)`, the K3 fibre of `X_F^++`
    through the pairings of the curve class `Sigma+`, and the singular points of `Z_F` and of `D_1(sigma)` that keep
    `X_F^++` and `X_E` apart. Gr(2,4) checks both elliptic-fibre degrees and the degrees of the two contracted
    hypersurfaces.

    Raises:
        NonIntegralInvariantError: If a computed value is not an integer.
    """
    fibres = expected.FIBRES[case]
    cfg = determinantal_pair(case)
    items = []

    def check(name, computed):
        items.append(CheckItem(case, name, fibres[name], require_integer(case, name, computed)))

    if case in ('v4', 'v5'):
        check('c2.L_E', c2_pairings(cfg.swapped())[0])
    if case == 'v4':
        row, _ = _rows(case)
        fibre = L - H
        check('(L-H)^3', triple_intersection(row.triples(), fibre, fibre, fibre))
    if case == 'v5':
        space = cfg.space()
        check('c2(T).c2(F)', integrate(mul(space.tangent().c(2), cfg.f().c(2))))
        flop = invariant_row(quintic_flop_pair())
        sigma_l = Fraction(SIGMA_PLUS_PAIRINGS['2L-H'] + SIGMA_PLUS_PAIRINGS['H'], 2)
        sigma_fibre = sigma_l - SIGMA_PLUS_PAIRINGS['H']
        check("c2.(L'-H') on X_F^++", flop.c2l - flop.c2h + 2 * sigma_fibre)
        check('singular points of Z_F', Z_F_NODES)
        check('nodes of D_1(sigma)', odp_count(cfg))
    if case == 'gr24':
        check('L_E^2.H_E', triple_products(cfg.swapped())[1])
        flop = triple_products(blowup_flop_pair())
        fibre = L - H
        check("(L'-H')^2.H'", triple_intersection(flop, fibre, fibre, H))
        check("H'^3", flop[3])
        check('deg D_n', degeneracy_degree(cfg))
    return items
