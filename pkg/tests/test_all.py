import unittest
import sys
import os
import json
import tempfile

# Add parent directory to path for module imports
parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.append(parent_dir)

from unittest.mock import patch

import numpy as np
import pandas as pd

import manage
from src.config import Config
from src.main import EXIT_ALL_FAILED, EXIT_CONFIG_ERROR, EXIT_OK, main, model_paths
from src.rbf import load_model

TEST_CONFIG = {
    "SAMPLE_COUNT": 200,
    "NOISE_AMPLITUDE": 0.1,
    "SEED": 12345,
    "NEIGHBORS": 20,
    "GLOBAL_CENTERS": 10,
    "LOG_LEVEL": "WARNING",
}


class ConfigTestCase(unittest.TestCase):
    # Restores Config and provides a scratch directory

    def setUp(self):
        self.snapshot = Config.as_dict()
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def tearDown(self):
        Config.load_from_dict(self.snapshot)

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def write_config(self, settings=None, name="config.json"):
        with open(self.path(name), "w") as f:
            json.dump(TEST_CONFIG if settings is None else settings, f)
        return self.path(name)


class TestConfig(ConfigTestCase):
    # Loading, conversion and validation of settings

    def test_load_from_dict_converts_types(self):
        Config.load_from_dict({
            "SAMPLE_COUNT": "250",
            "NOISE_AMPLITUDE": "0.05",
            "DEGREE_FALLBACK": "no",
            "UNKNOWN_KEY": 1,
        })
        self.assertEqual(Config.SAMPLE_COUNT, 250)
        self.assertEqual(Config.NOISE_AMPLITUDE, 0.05)
        self.assertFalse(Config.DEGREE_FALLBACK)
        self.assertFalse(hasattr(Config, "UNKNOWN_KEY"))

    def test_unreadable_value_keeps_previous(self):
        Config.load_from_dict({"NEIGHBORS": 50})
        Config.load_from_dict({"NEIGHBORS": "many"})
        self.assertEqual(Config.NEIGHBORS, 50)

    def test_reload_from_file(self):
        self.assertTrue(Config.reload_from_file(self.write_config()))
        self.assertEqual(Config.SAMPLE_COUNT, 200)
        self.assertEqual(Config.NEIGHBORS, 20)
        self.assertFalse(Config.reload_from_file(self.path("missing.json")))

    def test_validate(self):
        Config.validate()
        for key, value in (
            ("SAMPLE_COUNT", 2),
            ("NOISE_AMPLITUDE", -1.0),
            ("SEED", -3),
            ("NEIGHBORS", 0),
            ("LOWESS_DEGREE", 7),
            ("SUPPORT_OVERLAP", 0.0),
            ("BENCH_REPEATS", 1),
            ("LOG_LEVEL", "LOUD"),
        ):
            with patch(f'src.config.Config.{key}', value):
                with self.assertRaises(ValueError, msg=key):
                    Config.validate()

    def test_interval_must_be_ordered(self):
        with patch('src.config.Config.INTERVAL_LOW', 1.0), \
             patch('src.config.Config.INTERVAL_HIGH', -1.0):
            with self.assertRaises(ValueError):
                Config.validate()


class TestCommandLine(ConfigTestCase):
    # Exit codes and outputs of the smooth CLI

    def run_cli(self, *argv):
        return main(["--config", self.write_config(), *argv])

    def test_run_writes_outputs(self):
        code = self.run_cli(
            "run", "--synthetic", "200",
            "--method", "lowess:d=1,k=20",
            "--method", "rbf-global:m=10,d=1",
            "--out-curves", self.path("curves.csv"),
            "--out-table", self.path("table.csv"),
            "--out-model", self.path("model.txt"),
        )
        self.assertEqual(code, EXIT_OK)
        table = pd.read_csv(self.path("table.csv"))
        self.assertEqual(table["method"].tolist(), ["lowess:d=1,k=20", "rbf-global:m=10,d=1,overlap=2"])
        self.assertTrue(table["E_d"].notna().all())
        model = load_model(self.path("model.txt"))
        self.assertEqual(model.centers.shape, (10, 1))

    def test_benchmark_output(self):
        code = self.run_cli(
            "run", "--method", "lowess:k=20", "--bench", "--repeats", "3",
            "--out-bench", self.path("bench.csv"),
        )
        self.assertEqual(code, EXIT_OK)
        bench = pd.read_csv(self.path("bench.csv"))
        self.assertEqual(bench["N"].tolist(), [200])
        self.assertEqual(bench["R"].tolist(), [200])

    def test_all_methods_failing(self):
        code = self.run_cli("run", "--method", "rbf-global:m=500")
        self.assertEqual(code, EXIT_ALL_FAILED)

    def test_configuration_errors(self):
        self.assertEqual(self.run_cli("run", "--method", "spline"), EXIT_CONFIG_ERROR)
        self.assertEqual(self.run_cli("run", "--queries", "grid:1"), EXIT_CONFIG_ERROR)
        self.assertEqual(self.run_cli("run", "--noise", "-1"), EXIT_CONFIG_ERROR)
        self.assertEqual(self.run_cli("run", "--method", "lowess:k=300"), EXIT_CONFIG_ERROR)
        self.assertEqual(
            self.run_cli("run", "--reference", self.path("ref.csv")), EXIT_CONFIG_ERROR
        )
        self.assertEqual(
            self.run_cli("run", "--input", self.path("missing.csv")), EXIT_CONFIG_ERROR
        )
        self.assertEqual(
            main(["--config", self.path("missing.json"), "run"]), EXIT_CONFIG_ERROR
        )
        self.assertEqual(self.run_cli("--log-level", "LOUD", "run"), EXIT_CONFIG_ERROR)
        self.assertEqual(self.run_cli(), EXIT_CONFIG_ERROR)

    def test_input_with_reference(self):
        x = np.linspace(0, 1, 80)
        pd.DataFrame({"x": x, "value": np.sin(4 * x) + 0.01 * np.cos(40 * x)}).to_csv(
            self.path("data.csv"), index=False
        )
        pd.DataFrame({"x": x, "value": np.sin(4 * x)}).to_csv(
            self.path("ref.csv"), index=False
        )
        code = self.run_cli(
            "run", "--input", self.path("data.csv"), "--reference", self.path("ref.csv"),
            "--method", "lowess:k=15", "--queries", "grid:40",
            "--out-curves", self.path("curves.csv"), "--out-table", self.path("table.csv"),
        )
        self.assertEqual(code, EXIT_OK)
        table = pd.read_csv(self.path("table.csv"))
        self.assertLess(table["E_d"][0], 40 * 0.1)
        curves = pd.read_csv(self.path("curves.csv"))
        self.assertEqual(len(curves), 40)

    def test_comparison_table_per_seed(self):
        code = self.run_cli(
            "table", "--seeds", "1,2", "--ks", "10,20",
            "--out-table", self.path("comparison.csv"),
        )
        self.assertEqual(code, EXIT_OK)
        for i in range(2):
            frame = pd.read_csv(self.path(f"comparison-{i}.csv"))
            self.assertEqual(frame["k"].tolist(), [10, 20])

    def test_config_file_from_environment(self):
        path = self.write_config(dict(TEST_CONFIG, SAMPLE_COUNT=150), "env.json")
        with patch.dict(os.environ, {"SMOOTH_CONFIG": path}):
            self.assertEqual(Config.config_file(), path)
            code = main([
                "run", "--method", "lowess:k=20", "--bench", "--repeats", "3",
                "--out-bench", self.path("bench.csv"),
            ])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(Config.SAMPLE_COUNT, 150)
        self.assertEqual(pd.read_csv(self.path("bench.csv"))["N"].tolist(), [150])

    def test_missing_config_file_from_environment(self):
        with patch.dict(os.environ, {"SMOOTH_CONFIG": self.path("missing.json")}):
            self.assertEqual(main(["run", "--method", "lowess:k=20"]), EXIT_CONFIG_ERROR)

    def test_model_paths(self):
        self.assertEqual([p.name for p in model_paths("m.txt", 1)], ["m.txt"])
        self.assertEqual(
            [p.name for p in model_paths("m.txt", 2)], ["m-0.txt", "m-1.txt"]
        )


class TestManage(ConfigTestCase):
    # Configuration file management commands

    def test_set_and_get(self):
        path = self.write_config()
        manage.main(["--file", path, "set", "neighbors", "50"])
        manage.main(["--file", path, "set", "DEGREE_FALLBACK", "false"])
        saved = manage.load_config(path)
        self.assertEqual(saved["NEIGHBORS"], 50)
        self.assertIs(saved["DEGREE_FALLBACK"], False)
        manage.main(["--file", path, "get", "NEIGHBORS"])

    def test_rejects_invalid_values(self):
        path = self.write_config()
        for argv in (
            ["set", "NEIGHBORS", "abc"],
            ["set", "NEIGHBORS", "0"],
            ["set", "NOT_A_KEY", "1"],
            ["set", "DEGREE_FALLBACK", "maybe"],
            ["get", "NOT_A_KEY"],
        ):
            with self.assertRaises(SystemExit, msg=argv):
                manage.main(["--file", path, *argv])
        self.assertEqual(manage.load_config(path)["NEIGHBORS"], 20)

    def test_check_restores_config(self):
        manage.main(["--file", self.write_config(), "check"])
        self.assertEqual(Config.as_dict(), self.snapshot)
        bad = self.write_config({"INTERVAL_LOW": 2.0, "INTERVAL_HIGH": 1.0}, "bad.json")
        with self.assertRaises(SystemExit):
            manage.main(["--file", bad, "check"])
        self.assertEqual(Config.as_dict(), self.snapshot)

    def test_file_from_environment(self):
        path = self.write_config(name="env.json")
        with patch.dict(os.environ, {"SMOOTH_CONFIG": path}):
            manage.main(["set", "SEED", "99"])
            self.assertEqual(manage.load_config()["SEED"], 99)
        self.assertEqual(manage.load_config(path)["SEED"], 99)

    def test_missing_file(self):
        with self.assertRaises(SystemExit):
            manage.load_config(self.path("missing.json"))

    def test_convert_value(self):
        self.assertEqual(manage.convert_value("SEED", "7"), 7)
        self.assertEqual(manage.convert_value("SUPPORT_OVERLAP", "1.5"), 1.5)
        self.assertTrue(manage.convert_value("DEGREE_FALLBACK", "yes"))
        with self.assertRaises(ValueError):
            manage.convert_value("UNKNOWN", "1")


if __name__ == '__main__':
    unittest.main()
