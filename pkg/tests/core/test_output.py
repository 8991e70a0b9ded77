"""
Unit tests for the CSV tables and field files of the online and benchmark commands.
"""

import csv
import math
import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import Mock, patch

import numpy as np

from spacetime_rom.core.output import (
    TIMING_COLUMNS,
    append_benchmark_row,
    benchmark_header,
    benchmark_record,
    error_columns,
    format_value,
    initialize_benchmark_csv,
    online_header,
    online_record,
    read_parameter_file,
    write_benchmark_csv,
    write_online_csv,
    write_online_fields,
)
from spacetime_rom.core.storage import read_matrix
from spacetime_rom.models.fields import VariableRole
from spacetime_rom.models.parameter import Parameter
from spacetime_rom.models.rom import ErrorReport, OnlineSolution
from spacetime_rom.models.stats import BenchmarkRow


def _row(n: int, pressure: float = math.nan) -> BenchmarkRow:
    return BenchmarkRow(
        n=n,
        n_tot=5 * n,
        e_state=0.1,
        e_control=0.2,
        e_adjoint=0.3,
        e_pressure=pressure,
        e_adjoint_pressure=pressure,
        e_output=1e-4,
        fe_time=2.0,
        rom_time=0.01,
        speedup=200.0,
    )


def _online(values=(0.1, 2.0, 1.5)) -> OnlineSolution:
    return OnlineSolution(
        parameter=Parameter(("mu_diff", "mu_target", "mu_geo"), values),
        coefficients=np.array([1.0, -0.5, 0.25]),
        solution=Mock(),
        objective=0.125,
        wall_time=0.002,
    )


def _read_csv(path):
    with open(path, "r", encoding="utf-8", newline="") as f:
        return list(csv.reader(f))


class TestFormatting(unittest.TestCase):
    """Test cases for value formatting and headers."""

    def test_format_value(self):
        self.assertEqual(format_value(0.1), "0.1")
        self.assertEqual(format_value(np.float64(1 / 3)), repr(1 / 3))
        self.assertEqual(format_value(np.int64(7)), "7")
        self.assertEqual(format_value(float("nan")), "nan")
        self.assertEqual(format_value("graetz"), "graetz")

    def test_error_columns(self):
        self.assertEqual(error_columns(False), ["e_y", "e_u", "e_p", "e_J"])
        self.assertEqual(error_columns(True), ["e_y", "e_u", "e_p", "e_press", "e_adjpress", "e_J"])

    def test_benchmark_header(self):
        header = benchmark_header(False)
        self.assertEqual(header[:2], ["N", "N_tot"])
        self.assertEqual(header[-3:], ["fe_time", "rom_time", "speedup"])
        for column in TIMING_COLUMNS[:3]:
            self.assertIn(column, header)

    def test_online_header(self):
        self.assertEqual(online_header(["a", "b"], False, False), ["index", "a", "b", "N_tot", "J", "wall_time"])
        header = online_header(["a"], True, True)
        self.assertEqual(header[-1], "fe_time")
        self.assertIn("J_fe", header)
        self.assertIn("e_adjpress", header)


class TestBenchmarkTable(unittest.TestCase):
    """Test cases for the benchmark CSV."""

    def test_record_matches_header(self):
        for with_pressure in (False, True):
            with self.subTest(pressure=with_pressure):
                record = benchmark_record(_row(3, 0.5), with_pressure)
                self.assertEqual(len(record), len(benchmark_header(with_pressure)))
                self.assertEqual(record[:2], ["3", "15"])

    def test_rows_are_appended(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "out" / "benchmark.csv"
            initialize_benchmark_csv(path, False)
            append_benchmark_row(path, _row(1), False)
            append_benchmark_row(path, _row(2), False)
            lines = _read_csv(path)
        self.assertEqual(lines[0], benchmark_header(False))
        self.assertEqual([line[0] for line in lines[1:]], ["1", "2"])
        self.assertEqual(lines[2][lines[0].index("e_J")], "0.0001")

    def test_write_truncates_previous_table(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "benchmark.csv"
            with patch("spacetime_rom.core.output.logger") as mock_logger:
                write_benchmark_csv(path, [_row(1), _row(2), _row(3)], True)
                write_benchmark_csv(path, [_row(4)], True)
            lines = _read_csv(path)
        self.assertEqual(len(lines), 2)
        self.assertEqual(lines[1][lines[0].index("e_press")], "nan")
        mock_logger.info.assert_called()


class TestOnlineTable(unittest.TestCase):
    """Test cases for the online CSV and field files."""

    def test_record_without_errors(self):
        record = online_record(0, _online(), 15)
        self.assertEqual(record, ["0", "0.1", "2.0", "1.5", "15", "0.125", "0.002"])

    def test_record_with_errors(self):
        report = ErrorReport(
            errors={
                VariableRole.STATE.value: 1e-3,
                VariableRole.CONTROL.value: 2e-3,
                VariableRole.ADJOINT.value: 3e-3,
            },
            output_error=4e-6,
        )
        record = online_record(2, _online(), 15, report, 0.1249, 1.5)
        header = online_header(["mu_diff", "mu_target", "mu_geo"], True, False)
        self.assertEqual(len(record), len(header))
        self.assertEqual(record[header.index("J_fe")], "0.1249")
        self.assertEqual(record[header.index("e_u")], "0.002")
        self.assertEqual(record[header.index("e_J")], "4e-06")

    def test_write_online_csv(self):
        names = ("mu_diff", "mu_target", "mu_geo")
        records = [online_record(i, _online(), 15) for i in range(3)]
        with tempfile.TemporaryDirectory() as tmp:
            with patch("spacetime_rom.core.output.logger"):
                path = write_online_csv(Path(tmp) / "online" / "online.csv", names, records, False, False)
            lines = _read_csv(path)
        self.assertEqual(lines[0], online_header(names, False, False))
        self.assertEqual(len(lines), 4)

    def test_write_online_csv_failure_is_logged(self):
        with tempfile.TemporaryDirectory() as tmp:
            blocker = Path(tmp) / "file"
            blocker.write_text("x", encoding="utf-8")
            with patch("spacetime_rom.core.output.logger") as mock_logger:
                with self.assertRaises(OSError):
                    write_online_csv(blocker / "online.csv", ["a"], [], False, False)
            mock_logger.error.assert_called_once()

    def test_field_files(self):
        state = np.arange(8, dtype=float).reshape(4, 2)
        with tempfile.TemporaryDirectory() as tmp:
            paths = write_online_fields(tmp, 7, _online(), {VariableRole.STATE: state})
            self.assertEqual(set(paths), {"coefficients", "state"})
            self.assertEqual(paths["state"].name, "mu_007_state.strm")
            np.testing.assert_array_equal(read_matrix(paths["state"]), state.T)
            np.testing.assert_array_equal(read_matrix(paths["coefficients"])[:, 0], [1.0, -0.5, 0.25])


class TestParameterFile(unittest.TestCase):
    """Test cases for read_parameter_file."""

    def test_skips_comments_and_blank_lines(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "mu.txt")
            with open(path, "w", encoding="utf-8") as f:
                f.write("# showcase\n0.0833,2,2.5\n\n  mu_diff=0.1,mu_target=1,mu_geo=1  \n")
            self.assertEqual(read_parameter_file(path), ["0.0833,2,2.5", "mu_diff=0.1,mu_target=1,mu_geo=1"])

    def test_missing_file(self):
        with self.assertRaises(ValueError) as cm:
            read_parameter_file("/nonexistent/mu.txt")
        self.assertIn("not found", str(cm.exception))


if __name__ == "__main__":
    unittest.main()
