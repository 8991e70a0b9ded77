"""
Unit tests for the monomial coefficient functions.
"""

import unittest

from spacetime_rom.affine.theta import Theta, evaluate_thetas
from spacetime_rom.exceptions import AffineError
from spacetime_rom.models.parameter import Parameter


class TestTheta(unittest.TestCase):
    """Test cases for Theta parsing, evaluation and products."""

    def setUp(self):
        self.mu = Parameter(("mu_diff", "mu_target", "mu_geo"), (0.1, 2.0, 2.5))

    def test_parse_and_descriptor(self):
        theta = Theta.parse("mu_geo^-1*mu_diff")
        self.assertEqual(theta.descriptor, "mu_diff*mu_geo^-1")
        self.assertEqual(theta.components, ("mu_diff", "mu_geo"))
        self.assertEqual(Theta.parse(theta.descriptor), theta)

    def test_constant(self):
        self.assertEqual(Theta.parse("1"), Theta.constant())
        self.assertEqual(Theta.parse(""), Theta.constant())
        self.assertEqual(Theta.constant().descriptor, "1")
        self.assertEqual(Theta.constant()(self.mu), 1.0)

    def test_evaluation(self):
        self.assertAlmostEqual(Theta.parse("mu_diff*mu_geo^-1")(self.mu), 0.04)
        self.assertAlmostEqual(Theta.parse("mu_geo^2")(self.mu), 6.25)

    def test_repeated_factors_accumulate(self):
        self.assertEqual(Theta.parse("mu_geo*mu_geo").descriptor, "mu_geo^2")
        self.assertEqual(Theta.parse("mu_geo*mu_geo^-1"), Theta.constant())

    def test_product(self):
        product = Theta.parse("mu_diff*mu_geo^-1") * Theta.parse("mu_geo")
        self.assertEqual(product.descriptor, "mu_diff")
        self.assertEqual(str(product), "mu_diff")

    def test_malformed(self):
        for text in ("mu_geo^x", "2*mu_geo", "mu geo", "mu_geo^"):
            with self.subTest(text=text):
                with self.assertRaises(AffineError):
                    Theta.parse(text)

    def test_evaluate_thetas(self):
        values = evaluate_thetas([Theta.parse("mu_target"), Theta.constant()], self.mu)
        self.assertEqual(values, (2.0, 1.0))


if __name__ == "__main__":
    unittest.main()
