"""
Unit tests for the error decay and speedup study.
"""

import math
import unittest
from unittest.mock import Mock

from spacetime_rom.cases.presets import sample_parameters
from spacetime_rom.exceptions import ReductionError
from spacetime_rom.models.rom import PARABOLIC
from spacetime_rom.reduction.aggregation import reduced_dimension
from spacetime_rom.reduction.study import reduce_problem, speedup_study
from tests.helpers.oracles import tiny_offline


class TestSpeedupStudy(unittest.TestCase):
    """Test cases for speedup_study on the tiny Graetz run."""

    @classmethod
    def setUpClass(cls):
        cls.state = tiny_offline("graetz")
        cls.problem = cls.state.problem
        cls.test_parameters = sample_parameters(cls.problem.config, "test", count=2)
        cls.fe_solutions = [cls.problem.solve(mu) for mu in cls.test_parameters]

    def test_rows_per_basis_size(self):
        on_row = Mock()
        rows = speedup_study(
            self.problem,
            self.state.basis_set,
            self.test_parameters,
            [1, 3],
            fe_solutions=self.fe_solutions,
            on_row=on_row,
        )
        self.assertEqual([row.n for row in rows], [1, 3])
        self.assertEqual([row.n_tot for row in rows], [reduced_dimension(PARABOLIC, 1), reduced_dimension(PARABOLIC, 3)])
        self.assertEqual(on_row.call_count, 2)
        for row in rows:
            self.assertTrue(math.isfinite(row.e_state))
            self.assertTrue(math.isnan(row.e_pressure))
            self.assertGreater(row.fe_time, 0.0)

    def test_invalid_inputs(self):
        with self.assertRaises(ReductionError):
            speedup_study(self.problem, self.state.basis_set, [], [1])
        with self.assertRaises(ReductionError):
            speedup_study(self.problem, self.state.basis_set, self.test_parameters, [self.state.basis_set.n_max + 1])
        with self.assertRaises(ReductionError):
            speedup_study(
                self.problem, self.state.basis_set, self.test_parameters, [1], fe_solutions=self.fe_solutions[:1]
            )

    def test_reduce_problem(self):
        model = reduce_problem(self.problem, self.state.basis_set, 2)
        self.assertEqual(model.n_tot, reduced_dimension(PARABOLIC, 2))
        with self.assertRaises(ReductionError):
            reduce_problem(self.problem, self.state.basis_set, self.state.basis_set.n_max + 1)


if __name__ == "__main__":
    unittest.main()
