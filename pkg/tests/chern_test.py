import random
import unittest

from conewright.chern import (BundleExpr, character_of_line, dual, exterior_top_minus_one, from_character,
                              line_bundle, pullback, tensor, to_character, trivial, twist_by_line,
                              UnsupportedBundleError, virtual_difference, whitney_sum)
from conewright.gradedring import component, integrate, mul, scale
from conewright.spaces import catalog_get


def split_bundle(ring, divisors):
    bundle = trivial(ring, 0)
    for d in divisors:
        bundle = whitney_sum(bundle, line_bundle(d))
    return bundle


def random_divisor(ring, rng):
    total = ring.zero()
    for g, deg in ring.generators():
        if deg == 1:
            total = total + ring.generator(g) * rng.randint(-3, 3)
    return total


def dual_character(character):
    out = character.ring().zero()
    for k in character.degrees():
        out = out + scale(component(character, k), (-1) ** k)
    return out


class BundleTest(unittest.TestCase):

    def test_projective_tangent(self):
        p4 = catalog_get('P4')
        h = p4.divisor()
        self.assertEqual(p4.tangent().chern(), (1 + h) ** 5)
        self.assertEqual(integrate(p4.tangent().c(4)), 5)
        self.assertEqual(p4.bundle('T(-1)').chern(), 1 + h + h ** 2 + h ** 3 + h ** 4)

    def test_third_exterior_power(self):
        p4 = catalog_get('P4')
        wedge3 = exterior_top_minus_one(p4.bundle('T(-1)'))
        self.assertEqual(wedge3.rank(), 4)
        self.assertEqual(wedge3.c(1), 3 * p4.divisor())

    def test_exterior_of_split_bundle(self):
        ring = catalog_get('BlP4').ring()
        alpha, xi = ring.generator('alpha'), ring.generator('xi')
        e = split_bundle(ring, [alpha, xi, alpha + xi])
        expected = split_bundle(ring, [alpha + xi, 2 * alpha + xi, alpha + 2 * xi])
        self.assertEqual(exterior_top_minus_one(e), expected)

    def test_dual_and_twist(self):
        h = catalog_get('P3').divisor()
        self.assertEqual(dual(line_bundle(h)), line_bundle(-h))
        self.assertEqual(twist_by_line(trivial(h.ring(), 2), h), split_bundle(h.ring(), [h, h]))

    def test_character_of_line(self):
        h = catalog_get('P2').divisor()
        self.assertEqual(character_of_line(h), 1 + h + h ** 2 / 2)

    def test_label_is_ignored_by_equality(self):
        ring = catalog_get('P2').ring()
        self.assertEqual(trivial(ring, 2), trivial(ring, 2).relabel('something else'))
        self.assertEqual(trivial(ring, 2).relabel('V').label(), 'V')

    def test_virtual_difference(self):
        ring = catalog_get('P3').ring()
        v = virtual_difference(trivial(ring), line_bundle(ring.generator('h')))
        self.assertEqual(v.rank(), 0)
        self.assertFalse(v.is_virtual())
        w = virtual_difference(trivial(ring), trivial(ring, 2))
        self.assertTrue(w.is_virtual())

    def test_unsupported_operations(self):
        ring = catalog_get('P3').ring()
        h = ring.generator('h')
        virtual = virtual_difference(trivial(ring), trivial(ring, 2))
        self.assertRaises(UnsupportedBundleError, lambda: twist_by_line(virtual, h))
        self.assertRaises(UnsupportedBundleError,
                          lambda: twist_by_line(virtual_difference(trivial(ring), line_bundle(h)), h))
        self.assertRaises(UnsupportedBundleError, lambda: tensor(virtual, trivial(ring)))
        self.assertRaises(UnsupportedBundleError, lambda: exterior_top_minus_one(line_bundle(h)))
        self.assertRaises(ValueError, lambda: twist_by_line(trivial(ring), h ** 2))
        self.assertRaises(ValueError, lambda: line_bundle(1 + h))

    def test_bad_bundle_data(self):
        ring = catalog_get('P3').ring()
        h = ring.generator('h')
        self.assertRaises(ValueError, lambda: BundleExpr(1, 2 + h))
        self.assertRaises(ValueError, lambda: from_character(2, 1 + h))

    def test_pullback(self):
        blp4 = catalog_get('BlP4')
        f = blp4.map('f')
        p3 = catalog_get('P3')
        pulled = pullback(p3.bundle('O(1)'), f)
        self.assertEqual(pulled, blp4.bundle('O(alpha)'))
        self.assertEqual(integrate(mul(pullback(p3.tangent(), f).c(3), blp4.divisor())), 4)

    def test_quadric_tangent_character(self):
        gr = catalog_get('Gr24')
        self.assertEqual(component(to_character(gr.tangent()), 2), gr.divisor() ** 2)

    def test_twisted_dual_subbundle(self):
        gr = catalog_get('Gr25')
        sigma1 = gr.divisor()
        twisted = twist_by_line(dual(gr.bundle('S')), sigma1)
        self.assertEqual(twisted.c(2), gr.ring().generator('s2') + 2 * sigma1 ** 2)

    def test_pulled_back_exterior_square(self):
        blp4 = catalog_get('BlP4')
        alpha = blp4.ring().generator('alpha')
        wedge2 = exterior_top_minus_one(blp4.bundle("f*T'(-1)"))
        self.assertEqual(wedge2.rank(), 2)
        self.assertEqual(wedge2.chern(), 1 + 2 * alpha + 2 * alpha ** 2)

    def test_first_chern_class_of_gr24_bundle(self):
        gr = catalog_get('Gr24')
        sigma1 = gr.divisor()
        f = whitney_sum(twist_by_line(gr.bundle('S'), 2 * sigma1), line_bundle(sigma1))
        self.assertEqual(f.c(1), 4 * sigma1)


class BundleIdentityTest(unittest.TestCase):

    def check_identities(self, name, seed, trials):
        rng = random.Random(seed)
        ring = catalog_get(name).ring()
        for _ in range(trials):
            e = split_bundle(ring, [random_divisor(ring, rng) for _ in range(rng.randint(1, 3))])
            f = split_bundle(ring, [random_divisor(ring, rng) for _ in range(rng.randint(1, 2))])
            d1, d2 = random_divisor(ring, rng), random_divisor(ring, rng)
            self.assertEqual(whitney_sum(e, f).chern(), mul(e.chern(), f.chern()))
            self.assertEqual(to_character(whitney_sum(e, f)), to_character(e) + to_character(f))
            self.assertEqual(dual(dual(e)), e)
            self.assertEqual(twist_by_line(twist_by_line(e, d1), d2), twist_by_line(e, d1 + d2))
            self.assertEqual(tensor(e, line_bundle(d1)), twist_by_line(e, d1))
            self.assertEqual(from_character(e.rank(), to_character(e)), e)
            self.assertEqual(virtual_difference(whitney_sum(e, f), f), e)

    def test_identities_on_projective_space(self):
        self.check_identities('P4', 4, 60)

    def test_identities_on_blown_up_p4(self):
        self.check_identities('BlP4', 41, 100)

    def test_identities_on_v5(self):
        self.check_identities('V5', 5, 60)

    def check_catalog_identities(self, name, seed, trials):
        rng = random.Random(seed)
        space = catalog_get(name)
        ring = space.ring()
        pool = [space.tangent()] + [space.bundle(b) for b in space.bundle_names()]
        pool += [dual(b) for b in pool]
        for _ in range(trials):
            e = twist_by_line(rng.choice(pool), random_divisor(ring, rng))
            f = rng.choice(pool)
            d1, d2 = random_divisor(ring, rng), random_divisor(ring, rng)
            self.assertEqual(whitney_sum(e, f).chern(), mul(e.chern(), f.chern()))
            self.assertEqual(to_character(whitney_sum(e, f)), to_character(e) + to_character(f))
            self.assertEqual(dual(dual(e)), e)
            self.assertEqual(to_character(dual(e)), dual_character(to_character(e)))
            self.assertEqual(twist_by_line(twist_by_line(e, d1), d2), twist_by_line(e, d1 + d2))
            self.assertEqual(to_character(twist_by_line(e, d1)), mul(to_character(e), character_of_line(d1)))
            self.assertEqual(from_character(e.rank(), to_character(e)), e)
            self.assertEqual(virtual_difference(whitney_sum(e, f), f), e)

    def test_catalog_bundles_on_gr24(self):
        self.check_catalog_identities('Gr24', 24, 60)

    def test_catalog_bundles_on_gr25(self):
        self.check_catalog_identities('Gr25', 25, 30)

    def test_catalog_bundles_on_v4(self):
        self.check_catalog_identities('V4', 44, 50)

    def test_catalog_bundles_on_v5(self):
        self.check_catalog_identities('V5', 55, 50)

    def test_tensor_is_multiplicative_on_characters(self):
        rng = random.Random(11)
        ring = catalog_get('Gr24').ring()
        sub = catalog_get('Gr24').bundle('S')
        for _ in range(40):
            e = split_bundle(ring, [random_divisor(ring, rng) for _ in range(2)])
            self.assertEqual(to_character(tensor(sub, e)), mul(to_character(sub), to_character(e)))


if __name__ == '__main__':
    unittest.main()
