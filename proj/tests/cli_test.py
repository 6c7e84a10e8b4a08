"""End-to-end checks of the zstates command line tool.

Usage: cli_test.py <zstates binary> <repo root>
"""

import json
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

try:
    import jsonschema
    from referencing import Registry, Resource
except ImportError:  # pragma: no cover
    jsonschema = None

BINARY = None
ROOT = None


def run(*args, env=None, check=None):
    full_env = dict(os.environ)
    full_env.pop("ZSTATES_SEED", None)
    full_env.update(env or {})
    proc = subprocess.run([BINARY, *map(str, args)], capture_output=True, text=True, env=full_env)
    if check is not None and proc.returncode != check:
        raise AssertionError(f"exit {proc.returncode} != {check}\nstdout:\n{proc.stdout}\n"
                             f"stderr:\n{proc.stderr}")
    return proc


class SchemaMixin:
    @classmethod
    def setUpClass(cls):
        cls.tmp = tempfile.TemporaryDirectory()
        cls.dir = Path(cls.tmp.name)
        cls.validators = {}
        if jsonschema is None:
            return
        resources = []
        for path in sorted((ROOT / "schemas").glob("*.schema.json")):
            schema = json.loads(path.read_text())
            jsonschema.Draft202012Validator.check_schema(schema)
            resources.append((schema["$id"], Resource.from_contents(schema)))
        registry = Registry().with_resources(resources)
        for uri, res in resources:
            name = uri.rsplit(":", 1)[1]
            cls.validators[name] = jsonschema.Draft202012Validator(res.contents, registry=registry)

    @classmethod
    def tearDownClass(cls):
        cls.tmp.cleanup()

    def validate(self, name, doc):
        if jsonschema is None:
            self.skipTest("jsonschema not installed")
        self.validators[name].validate(doc)

    def check_counts(self, counts, shots):
        self.validate("counts", counts)
        self.assertEqual(counts["shots"], shots)
        self.assertEqual(sum(counts["counts"].values()), shots)
        for key in counts["counts"]:
            self.assertEqual(len(key), counts["n_measured"])


class ExitCodes(SchemaMixin, unittest.TestCase):
    def test_unknown_flag_is_usage_error(self):
        proc = run("discriminate", "--bogus", check=2)
        self.assertIn("Usage", proc.stderr)

    def test_missing_subcommand_and_required_flag(self):
        run(check=2)
        run("verify", check=2)

    def test_out_of_range_values(self):
        run("discriminate", "--n", 2, "--k", 4, check=2)
        run("tomo", "--n", 2, "--k", 0, "--target", "both", check=2)
        run("discriminate", "--n", 2, "--k", 0, "--noise", "depol:0.1", check=2)
        run("fidelity", "--rho", ROOT / "fixtures" / "rho_run_state.json", "--target",
            "zstate:2:9", check=2)

    def test_runtime_failure_is_one(self):
        bad = self.dir / "bad.json"
        bad.write_text("{ not json")
        run("fidelity", "--rho", bad, "--target", "zstate:2:1", check=1)

    def test_help(self):
        self.assertIn("verify", run("--help", check=0).stdout)


class PublishedExamples(SchemaMixin, unittest.TestCase):
    def test_run_state_fidelity(self):
        out = self.dir / "fid.json"
        proc = run("fidelity", "--rho", ROOT / "fixtures" / "rho_run_state.json", "--target",
                   "zstate:2:1", "--reversed", "--convention", "sqrt", "--out", out, check=0)
        self.assertAlmostEqual(float(proc.stdout), 0.815, delta=0.005)
        doc = json.loads(out.read_text())
        self.validate("fidelity", doc)
        self.assertFalse(doc["input_physical"])

    def test_theory_fidelity_squared(self):
        proc = run("fidelity", "--rho", ROOT / "fixtures" / "rho_theory_state.json", "--target",
                   "zstate:2:1", "--convention", "squared", check=0)
        self.assertAlmostEqual(float(proc.stdout), 1.0, places=12)

    def test_discriminate_table_row(self):
        out = self.dir / "disc.json"
        run("discriminate", "--n", 2, "--k", 1, "--shots", 8192, "--seed", 7, "--out", out, check=0)
        doc = json.loads(out.read_text())
        self.validate("discriminate", doc)
        self.check_counts(doc["counts"], 8192)
        self.assertEqual(doc["decoded_index"], 1)
        self.assertEqual(doc["counts"]["counts"], {"01": 8192})

    def test_verify_four_qubits(self):
        out = self.dir / "verify.json"
        proc = run("verify", "--n", 4, "--out", out, check=0)
        self.assertIn("distinct syndromes: 16", proc.stdout)
        doc = json.loads(out.read_text())
        self.validate("verify", doc)
        self.assertEqual(len({e["ancilla_bits"] for e in doc["entries"]}), 16)

    def test_fixtures_match_schema(self):
        for path in sorted((ROOT / "fixtures").glob("*.json")):
            self.validate("density_matrix", json.loads(path.read_text()))


class Outputs(SchemaMixin, unittest.TestCase):
    def test_noisy_discriminate(self):
        out = self.dir / "noisy.json"
        run("discriminate", "--n", 3, "--k", 5, "--shots", 2000, "--noise",
            "depol:0.01,0.03;readout:0.03", "--out", out, check=0)
        doc = json.loads(out.read_text())
        self.validate("discriminate", doc)
        self.check_counts(doc["counts"], 2000)
        self.assertEqual(doc["config"]["noise"], {"p1": 0.01, "p2": 0.03, "p_readout": 0.03})
        self.assertTrue(doc["correct"])

    def test_tomography_outputs_and_csv(self):
        for target in ("state", "ancilla"):
            out = self.dir / f"tomo_{target}.json"
            csv = self.dir / f"tomo_{target}.csv"
            run("tomo", "--target", target, "--n", 2, "--k", 1, "--shots", 1024, "--out", out,
                "--csv", csv, check=0)
            doc = json.loads(out.read_text())
            self.validate("tomography", doc)
            self.validate("config", doc["config"])
            self.assertEqual(len(doc["counts"]), 9)
            for counts in doc["counts"].values():
                self.check_counts(counts, 1024)
            lines = csv.read_text().splitlines()
            self.assertEqual(lines[0], "matrix,row,col,row_label,col_label,real,imag")
            self.assertEqual(len(lines), 1 + 32)

    def test_stdout_when_no_out(self):
        doc = json.loads(run("discriminate", "--n", 2, "--k", 3, "--shots", 16, check=0).stdout)
        self.validate("discriminate", doc)
        self.assertEqual(doc["ancilla_bits"], "11")

    def test_gen_qasm(self):
        text = run("gen", "--n", 3, "--k", 3, check=0).stdout
        self.assertTrue(text.startswith("OPENQASM 2.0;\n"))
        self.assertEqual(sum(line.startswith("z ") for line in text.splitlines()), 2)
        full = run("gen", "--n", 2, "--k", 1, "--discriminate", check=0).stdout
        self.assertIn("measure q[2] -> c[1];", full)
        self.assertIn("measure q[3] -> c[0];", full)


class Reproducibility(SchemaMixin, unittest.TestCase):
    def test_same_config_gives_identical_bytes(self):
        config = self.dir / "config.json"
        out = self.dir / "repro.json"
        config.write_text(json.dumps({"command": "tomo", "n": 2, "k": 2, "shots": 2048, "seed": 99,
                                      "noise": {"p1": 0.01, "p2": 0.02, "p_readout": 0.01},
                                      "target": "state", "out": str(out)}))
        self.validate("config", json.loads(config.read_text()))
        run("tomo", "--config", config, check=0)
        first = out.read_bytes()
        run("tomo", "--config", config, check=0)
        self.assertEqual(first, out.read_bytes())
        run("tomo", "--config", config, "--seed", 100, check=0)
        self.assertNotEqual(first, out.read_bytes())

    def test_seed_from_environment(self):
        env_doc = json.loads(run("discriminate", "--n", 2, "--k", 0, "--shots", 8,
                                 env={"ZSTATES_SEED": "1234"}, check=0).stdout)
        self.assertEqual(env_doc["config"]["seed"], 1234)
        flag_doc = json.loads(run("discriminate", "--n", 2, "--k", 0, "--shots", 8, "--seed", 5,
                                  env={"ZSTATES_SEED": "1234"}, check=0).stdout)
        self.assertEqual(flag_doc["config"]["seed"], 5)
        default_doc = json.loads(run("discriminate", "--n", 2, "--k", 0, "--shots", 8,
                                     check=0).stdout)
        self.assertEqual(default_doc["config"]["seed"], 1)


if __name__ == "__main__":
    BINARY = sys.argv.pop(1)
    ROOT = Path(sys.argv.pop(1))
    unittest.main(verbosity=2)
