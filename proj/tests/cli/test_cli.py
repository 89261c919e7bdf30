"""Command-line contract: exit codes, formats, determinism and worked values."""

import csv
import io
import json
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

BINARY = None


def run(*args):
    return subprocess.run([BINARY, *args], capture_output=True, text=True)


class ExitCodes(unittest.TestCase):
    def test_success(self):
        self.assertEqual(run("csum", "--q", "1..5", "--a", "1..5").returncode, 0)

    def test_usage_errors(self):
        for args in (
            ["csum", "--q", "0"],
            ["csum", "--q", "5..2"],
            ["coeffs", "--fn", "nope"],
            ["coeffs", "--fn", "one", "--kind", "p-wintner"],
            ["coeffs", "--fn", "one", "--kind", "bogus"],
            ["wod", "--fn", "one"],
            ["wod", "--fn", "one", "--prime", "4"],
            ["wod", "--fn", "one", "--table", "x.txt", "--prime", "3"],
            ["verify", "nosuch"],
            ["frobnicate"],
            ["coeffs", "--table", "/nonexistent/table.txt"],
        ):
            with self.subTest(args=args):
                r = run(*args)
                self.assertEqual(r.returncode, 2, r.stderr)
                self.assertTrue(r.stderr.strip())

    def test_tolerance_failure(self):
        args = ["wod", "--fn", "sigma_over_id", "--prime", "5", "--a", "1..10", "--cutoff", "100000"]
        self.assertEqual(run(*args, "--format", "csv").returncode, 1)
        self.assertEqual(run(*args, "--tolerance", "1e-2", "--format", "csv").returncode, 0)


class Values(unittest.TestCase):
    def rows(self, *args):
        r = run(*args, "--format", "csv")
        self.assertEqual(r.returncode, 0, r.stderr)
        return list(csv.DictReader(io.StringIO(r.stdout)))

    def test_csum(self):
        rows = self.rows("csum", "--q", "6", "--a", "4")
        self.assertEqual(rows, [{"q": "6", "a": "4", "value": "-1"}])
        rows = self.rows("csum", "--q", "8", "--a=-4..4")
        self.assertEqual([r["value"] for r in rows], ["-4", "0", "0", "0", "4", "0", "0", "0", "-4"])

    def test_omega_p_wintner(self):
        rows = self.rows("coeffs", "--fn", "omega", "--kind", "p-wintner", "--prime", "5", "--q", "1..30")
        nonzero = {r["q"]: r["value"] for r in rows if r["value"] != "0"}
        self.assertEqual(nonzero, {"1": "31/30", "2": "1/2", "3": "1/3", "5": "1/5"})
        self.assertTrue(all(r["complete"] == "1" for r in rows))

    def test_table_input(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "t.txt"
            path.write_text("@as_transform\n1 1\n4 -2\n")
            rows = self.rows("coeffs", "--table", str(path), "--q", "1..4")
            self.assertEqual([r["value"] for r in rows], ["1/2", "-1/2", "0", "-1/2"])
            path.write_text("1 1\n1 2\n")
            self.assertEqual(run("coeffs", "--table", str(path)).returncode, 2)

    def test_wod_scope(self):
        rows = self.rows("wod", "--fn", "one", "--prime", "3", "--a", "1..10")
        for r in rows:
            smooth = set(_factors(int(r["a"]))) <= {2, 3}
            self.assertEqual(r["in_scope"], "1" if smooth else "0")
            if smooth:
                self.assertEqual(r["residual"], "0")
            else:
                self.assertTrue(r["note"])

    def test_wod_fprime(self):
        rows = self.rows("wod", "--fn", "sigma_over_id", "--prime", "3", "--d", "1..3", "--cutoff", "50")
        self.assertEqual([r["lhs"] for r in rows], ["1", "1/2", "1/3"])
        self.assertTrue(all(r["residual"] == "0" for r in rows))


def _factors(n):
    p = 2
    while p * p <= n:
        while n % p == 0:
            yield p
            n //= p
        p += 1
    if n > 1:
        yield n


class Formats(unittest.TestCase):
    def test_json_is_deterministic(self):
        args = ["coeffs", "--fn", "sigma_over_id", "--q", "1..6", "--cutoff", "2000", "--format", "json"]
        first, second = run(*args), run(*args)
        self.assertEqual(first.returncode, 0)
        self.assertEqual(first.stdout, second.stdout)
        doc = json.loads(first.stdout)
        self.assertIsInstance(doc, dict)

    def test_out_file_matches_stdout(self):
        args = ["csum", "--q", "1..12", "--a", "1..12", "--format", "json"]
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / "o.json"
            self.assertEqual(run(*args, "--out", str(out)).returncode, 0)
            self.assertEqual(out.read_text(), run(*args).stdout)

    def test_text_and_approx(self):
        r = run("coeffs", "--fn", "sigma_over_id", "--q", "1", "--cutoff", "100000", "--format", "text", "--approx", "4")
        self.assertEqual(r.returncode, 0)
        self.assertIn("1.644", r.stdout)


class Suites(unittest.TestCase):
    def test_each_suite_passes(self):
        names = ["csum", "orthogonality", "local-expansion", "wod", "null-function", "inertia", "lemmas", "appendix"]
        for name in names:
            with self.subTest(suite=name):
                r = run("verify", name, "--format", "csv")
                self.assertEqual(r.returncode, 0, r.stdout + r.stderr)
                rows = list(csv.DictReader(io.StringIO(r.stdout)))
                self.assertTrue(rows)
                self.assertTrue(all(row["status"] == "pass" for row in rows), r.stdout)

    def test_seed_determinism(self):
        a = run("verify", "wod", "--seed", "5", "--format", "json")
        b = run("verify", "wod", "--seed", "5", "--format", "json")
        self.assertEqual(a.stdout, b.stdout)


if __name__ == "__main__":
    BINARY = sys.argv.pop(1)
    unittest.main()
