import unittest
from fractions import Fraction
from unittest import mock

from conewright import birat, expected
from conewright.birat import (assemble_chambers, ChamberAssemblyError, chi_matrix, Div2, fiber_invariant_checks,
                              flop_matrix, H, involution_matrix_v4, L, Map2, MOVABLE_CONE_EDGES,
                              pushforward_candidates, pushforward_solve, solve_chi, SolverError,
                              triple_intersection)
from conewright.detcy import determinantal_pair, invariant_row, NonIntegralInvariantError


class Div2Test(unittest.TestCase):

    def test_str(self):
        self.assertEqual(str(Div2(15, -17)), '15L-17H')
        self.assertEqual(str(Div2(-1, 3)), '-L+3H')
        self.assertEqual(str(Div2(1, -1)), 'L-H')
        self.assertEqual(str(H), 'H')
        self.assertEqual(str(Div2(2, 0)), '2L')
        self.assertEqual(str(Div2(0, 0)), '0')

    def test_arithmetic(self):
        self.assertEqual(L - H, Div2(1, -1))
        self.assertEqual(2 * L - H, Div2(2, -1))
        self.assertEqual(-(L + H), Div2(-1, -1))
        self.assertEqual(L.cross(H), 1)
        self.assertEqual(H.cross(L), -1)

    def test_primitive(self):
        self.assertEqual(Div2(30, -34).primitive(), Div2(15, -17))
        self.assertEqual(Div2(Fraction(1, 2), Fraction(3, 2)).primitive(), Div2(1, 3))
        self.assertEqual(Div2(-2, 6).primitive(), Div2(-1, 3))
        self.assertRaises(ValueError, lambda: Div2(0, 0).primitive())

    def test_as_ints(self):
        self.assertEqual(Div2(5, -6).as_ints(), (5, -6))
        self.assertRaises(ValueError, lambda: Div2(Fraction(1, 2), 0).as_ints())


class Map2Test(unittest.TestCase):

    def test_init(self):
        m = Map2([[9, 8], [-10, -9]])
        self.assertEqual(m.determinant(), -1)
        self.assertEqual(m[1, 0], -10)
        self.assertRaises(ValueError, lambda: Map2([[2, 0], [0, 1]]))
        self.assertRaises(ValueError, lambda: Map2([[Fraction(1, 2), 0], [0, 2]]))
        self.assertRaises(ValueError, lambda: Map2([[1, 0]]))

    def test_index_errors(self):
        m = Map2([[1, 0], [0, 1]])
        self.assertRaises(IndexError, lambda: m[2, 0])
        self.assertRaises(IndexError, lambda: m[0, -1])

    def test_apply_and_compose(self):
        theta = Map2([[5, 1], [-6, -1]], 'X_F+', 'X_F')
        self.assertEqual(theta(L), Div2(5, -6))
        self.assertEqual(theta(H), L - H)
        self.assertTrue((theta @ theta.inverse()).is_identity())
        self.assertEqual(theta.inverse().source(), 'X_F')
        self.assertEqual(Map2.from_columns(Div2(5, -6), L - H), theta)

    def test_composition_order(self):
        a = Map2([[1, 1], [0, 1]])
        b = Map2([[1, 0], [1, 1]])
        self.assertEqual((a @ b)(L), a(b(L)))
        self.assertNotEqual(a @ b, b @ a)


class SolverTest(unittest.TestCase):

    def test_v5_flop_system(self):
        triples = expected.TABLE1['v5'][:4]
        candidates = pushforward_candidates(triples, (13, 23), L - H)
        self.assertEqual(len(candidates), 2)
        self.assertIn(Div2(5, -6), candidates)
        self.assertEqual(pushforward_solve(triples, (13, 23), L - H), Div2(5, -6))

    def test_gr24_flop_system(self):
        triples = expected.TABLE1['gr24'][:4]
        self.assertEqual(pushforward_solve(triples, (14, 28), L - H), Div2(5, -6))

    def test_equations(self):
        triples = expected.TABLE1['v5'][:4]
        v, w = Div2(5, -6), L - H
        self.assertEqual(triple_intersection(triples, v, w, w), 13)
        self.assertEqual(triple_intersection(triples, v, v, w), 23)
        self.assertEqual(triple_intersection(triples, L, L, L), 110)

    def test_degenerate_system(self):
        self.assertRaises(SolverError, lambda: pushforward_candidates((1, 0, 0, 1), (1, 1), H))

    def test_irrational_roots(self):
        try:
            pushforward_candidates((0, 1, 0, 1), (1, 3), H)
            self.fail('expected SolverError')
        except SolverError as e:
            self.assertEqual(e.discriminant, 8)

    def test_sign_filter(self):
        self.assertEqual(pushforward_solve((0, 1, 0, 1), (1, 5), H), Div2(-2, 1))
        self.assertRaises(SolverError, lambda: pushforward_solve((0, 1, 0, 1), (0, 4), H))


class FlopMatrixTest(unittest.TestCase):

    def test_chi(self):
        for case in expected.CASES:
            alpha, beta = expected.CHI_SOLUTION[case]
            self.assertEqual(solve_chi(case), Div2(alpha, beta))
            self.assertEqual(chi_matrix(case).rows(), ((-1, 0), (beta, 1)))
            self.assertEqual(chi_matrix(case)(L), solve_chi(case))
            self.assertEqual(chi_matrix(case)(H), H)

    def test_involution(self):
        iota = involution_matrix_v4(invariant_row(determinantal_pair('v4')))
        self.assertEqual(iota.rows(), ((9, 8), (-10, -9)))
        self.assertTrue((iota @ iota).is_identity())
        self.assertEqual(iota(L - H), L - H)

    def test_flops(self):
        for case in ('v5', 'gr24'):
            theta = flop_matrix(case)
            self.assertEqual(theta.rows(), ((5, 1), (-6, -1)))
            self.assertEqual((theta.source(), theta.target()), ('X_F+', 'X_F'))
        self.assertRaises(ValueError, lambda: flop_matrix('v4'))


class ChamberTest(unittest.TestCase):

    def test_walls(self):
        for case in expected.CASES:
            walls = assemble_chambers(case).walls
            self.assertEqual(tuple(w.as_ints() for w in walls), expected.WALLS[case])
            self.assertEqual((walls[0], walls[-1]), MOVABLE_CONE_EDGES[case])

    def test_printed_walls(self):
        walls = [str(w) for w in assemble_chambers('v4').walls]
        self.assertEqual(walls, ['15L-17H', '8L-9H', 'L-H', 'H', '-L+3H'])

    def test_chambers(self):
        decomposition = assemble_chambers('v5')
        self.assertEqual([c.model for c in decomposition.chambers], ['X_F^++', 'X_F^+', 'X_F', 'X_E'])
        nef = decomposition.chambers[2]
        self.assertEqual((nef.lower, nef.upper, nef.via), (L - H, H, ''))
        self.assertEqual(len(assemble_chambers('gr24').chambers), 3)
        self.assertEqual(assemble_chambers('v4').to_dict()['walls'][2], 'L-H')

    def test_unknown_case(self):
        self.assertRaises(ValueError, lambda: assemble_chambers('p4'))

    def test_degenerate_chamber(self):
        layout = {'v4': (('X_F', ((H, 'a'), (2 * H, 'b')), ()),)}
        with mock.patch.dict(birat._LAYOUT, layout):
            self.assertRaises(ChamberAssemblyError, lambda: assemble_chambers('v4'))

    def test_edge_mismatch(self):
        layout = {'v4': (('X_F', ((L - H, 'a'), (H, 'b')), ()),)}
        with mock.patch.dict(birat._LAYOUT, layout):
            self.assertRaises(ChamberAssemblyError, lambda: assemble_chambers('v4'))


class FibreTest(unittest.TestCase):

    def test_fibre_invariants(self):
        for case in expected.CASES:
            items = fiber_invariant_checks(case)
            self.assertEqual({item.name for item in items}, set(expected.FIBRES[case]))
            for item in items:
                self.assertTrue(item.passed, item)

    def test_fractional_fibre_value(self):
        with mock.patch('conewright.birat.triple_intersection', return_value=Fraction(5, 2)):
            self.assertRaises(NonIntegralInvariantError, lambda: fiber_invariant_checks('v4'))

    def test_v5_singular_points(self):
        items = {item.name: item.computed for item in fiber_invariant_checks('v5')}
        self.assertEqual(items['singular points of Z_F'], 1)
        self.assertEqual(items['nodes of D_1(sigma)'], 29)
        self.assertNotEqual(items['singular points of Z_F'], items['nodes of D_1(sigma)'])


if __name__ == '__main__':
    unittest.main()
