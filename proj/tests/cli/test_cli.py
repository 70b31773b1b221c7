"""End-to-end checks of the phaselift command line tool."""

import csv
import hashlib
import io
import math
import os
import subprocess
import sys
import tempfile
import unittest

CLI = os.environ.get("PHASELIFT_CLI", "phaselift")


def run(*args, check=True):
    env = dict(os.environ, PHASELIFT_THREADS="1")
    proc = subprocess.run([CLI, *args], capture_output=True, text=True, env=env)
    if check and proc.returncode != 0:
        raise AssertionError(f"exit {proc.returncode}: {proc.stderr}")
    return proc


def parse(text):
    comments = [l for l in text.splitlines() if l.startswith("#")]
    body = "\n".join(l for l in text.splitlines() if not l.startswith("#"))
    return comments, list(csv.DictReader(io.StringIO(body)))


class CliTest(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def test_hash_matches_git_blob_sha1(self):
        comments, _ = parse(run("--experiment", "f-curves", "--mc-samples", "1000").stdout)
        config = comments[1].removeprefix("# config: ")
        digest = comments[2].removeprefix("# config-hash: ")
        blob = f"blob {len(config)}\0{config}".encode()
        self.assertEqual(hashlib.sha1(blob).hexdigest(), digest)
        self.assertEqual(comments[0], "# phaselift-csv schema=1")

    def test_outputs_and_determinism(self):
        args = ["--experiment", "snr-sweep", "--n", "8", "--trials", "2",
                "--snr-db", "20,inf", "--noise", "gaussian", "--field", "real"]
        run(*args, "--out", self.path("a.csv"))
        run(*args, "--out", self.path("b.csv"))
        with open(self.path("a.csv"), "rb") as a, open(self.path("b.csv"), "rb") as b:
            self.assertEqual(a.read(), b.read())
        with open(self.path("a.csv.timing.csv")) as f:
            timing = list(csv.DictReader(f))
        self.assertEqual(len(timing), 4)
        self.assertTrue(all(float(r["wall_time_ms"]) >= 0 for r in timing))

        with open(self.path("a.csv")) as f:
            comments, rows = parse(f.read())
        self.assertIn("field=real", comments[1])
        trials = [r for r in rows if r["row_type"] == "trial"]
        summaries = [r for r in rows if r["row_type"] == "summary"]
        self.assertEqual(len(trials), 4)
        self.assertEqual(len(summaries), 2)
        for s in summaries:
            group = [t for t in trials if t["grid_index"] == s["grid_index"]]
            rms = sum(math.sqrt(float(t["rel_mse"])) for t in group) / len(group)
            self.assertAlmostEqual(float(s["rel_rms"]), rms, delta=1e-12)
            self.assertGreaterEqual(min(float(t["rel_mse"]) for t in group), 0.0)
        self.assertEqual({t["snr_db"] for t in trials}, {"20", "inf"})

    def test_config_file_with_flag_override(self):
        cfg = self.path("run.toml")
        with open(cfg, "w") as f:
            f.write('experiment = "rip1-study"\nn = [4, 6]\nm = [24]\ntrials = 2\n'
                    'rank2-samples = 10\nseed = 5\n')
        _, rows = parse(run("--config", cfg, "--seed", "9").stdout)
        self.assertEqual([(r["n"], r["m"]) for r in rows], [("4", "24"), ("6", "24")])
        comments, _ = parse(run("--config", cfg, "--seed", "9").stdout)
        self.assertIn(";seed=9;", comments[1])

    def test_exit_codes(self):
        self.assertEqual(run("--experiment", "snr-sweep", "--trials", "0", check=False).returncode, 2)
        self.assertEqual(run("--experiment", "bogus", check=False).returncode, 2)
        self.assertEqual(run("--experiment", "snr-sweep", "--noise", "laplace", check=False).returncode, 2)
        self.assertEqual(run("--experiment", "snr-sweep", "--snr-db", "abc", check=False).returncode, 2)
        self.assertEqual(run("--experiment", "rip1-study", "--m-over-n", "0.5", check=False).returncode, 2)
        self.assertEqual(run("--experiment", "oversampling-sweep", "--m-over-n", "", check=False).returncode, 2)
        failing = ["--experiment", "snr-sweep", "--n", "4", "--trials", "1", "--snr-db", "-4000"]
        self.assertEqual(run(*failing, check=False).returncode, 0)
        strict = run(*failing, "--strict", check=False)
        self.assertEqual(strict.returncode, 3)
        self.assertIn("error: ", strict.stdout)
        self.assertEqual(run("--help", check=False).returncode, 0)


if __name__ == "__main__":
    unittest.main(argv=[sys.argv[0]] + sys.argv[1:])
