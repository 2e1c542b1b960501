#!/usr/bin/env python3
"""End-to-end checks of the heislink CLI: exit codes, schema validity, sweep behaviour."""

import json
import math
import pathlib
import subprocess
import sys
import tempfile
import unittest

import jsonschema

BIN = None
SCHEMAS = None


def run(*args):
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, timeout=600)


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def checked(name, *args, code=0):
    r = run(*args)
    if r.returncode != code:
        raise AssertionError(f"{args}: exit {r.returncode}, expected {code}\n{r.stderr}")
    doc = json.loads(r.stdout)
    jsonschema.validate(doc, schema(name))
    return doc


def csv_rows(text):
    lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    header = lines[0].split(",")
    return [dict(zip(header, l.split(","))) for l in lines[1:]]


class CurveFiles(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.tmp = tempfile.TemporaryDirectory()
        d = pathlib.Path(cls.tmp.name)
        # unit circle: cos θ = Re e^{iθ}, sin θ has coefficient −i/2
        cls.circle = d / "circle.json"
        cls.circle.write_text(json.dumps({"name": "circle", "coeffs_x": [[1, 0.5, 0.0]], "coeffs_y": [[1, 0.0, -0.5]]}))
        # Gerono lemniscate (cos θ, ½ sin 2θ) shifted by (0.3, 0.2)
        cls.lemniscate = d / "lemniscate.json"
        cls.lemniscate.write_text(json.dumps({"name": "lemniscate-file", "coeffs_x": [[0, 0.3], [1, 0.5, 0.0]],
                                              "coeffs_y": [[0, 0.2], [2, 0.0, -0.25]]}))
        cls.malformed = d / "bad.json"
        cls.malformed.write_text("{\"coeffs_x\": [[1, 0.5")

    @classmethod
    def tearDownClass(cls):
        cls.tmp.cleanup()

    def test_validate_circle_fails_with_area(self):
        doc = checked("validate", "validate", self.circle, code=1)
        self.assertFalse(doc["certificate"]["valid"])
        self.assertEqual(doc["certificate"]["reason"], "AreaNotZero")
        self.assertAlmostEqual(doc["certificate"]["area_residual"], -2 * math.pi, places=10)

    def test_validate_lemniscate_file(self):
        doc = checked("validate", "validate", self.lemniscate)
        self.assertTrue(doc["certificate"]["valid"])
        builtin = checked("diagram", "diagram", "builtin:lemniscate")
        mine = checked("diagram", "diagram", self.lemniscate)
        self.assertEqual(mine["tb"], builtin["tb"])
        self.assertEqual(mine["writhe"], builtin["writhe"])

    def test_malformed_json_is_parse_error(self):
        r = run("validate", self.malformed)
        self.assertEqual(r.returncode, 2)
        err = json.loads(r.stderr.strip().splitlines()[-1])
        jsonschema.validate(err, schema("error"))
        self.assertEqual(err["error"]["kind"], "ParseError")

    def test_missing_file_is_parse_error(self):
        self.assertEqual(run("validate", pathlib.Path(self.tmp.name) / "absent.json").returncode, 2)


class Usage(unittest.TestCase):
    def test_unknown_subcommand(self):
        self.assertEqual(run("frobnicate").returncode, 2)

    def test_missing_positional(self):
        self.assertEqual(run("diagram").returncode, 2)

    def test_unknown_builtin(self):
        self.assertEqual(run("diagram", "builtin:nope").returncode, 2)

    def test_nonpositive_lambda(self):
        self.assertEqual(run("selflink", "builtin:lemniscate", "--lambda", "-1").returncode, 2)


class Subcommands(unittest.TestCase):
    def test_diagram_knot_and_link(self):
        k = checked("diagram", "diagram", "builtin:lemniscate")
        self.assertEqual(k["writhe"], sum(c["writhe_sign"] for c in k["crossings"]))
        self.assertEqual(k["rot_curvature"]["rounded"], k["rot_tangencies"])
        l = checked("diagram", "diagram", "builtin:hopf")
        self.assertEqual(abs(l["lk"]), 1)
        self.assertEqual(l["lk"], l["half_total"])

    def test_link_hopf(self):
        doc = checked("link", "link", "builtin:hopf")
        self.assertAlmostEqual(doc["lk_gauss"]["value"], doc["lk_diagram"], delta=1e-4)
        self.assertEqual(len(doc["lk_heisenberg"]), 4)
        for r in doc["lk_heisenberg"]:
            self.assertAlmostEqual(r["value"], doc["lk_gauss"]["value"], delta=1e-3)

    def test_selflink_heisenberg_branch(self):
        doc = checked("selflink", "selflink", "builtin:lemniscate", "--hbar", "1")
        self.assertAlmostEqual(doc["result"]["value"], -1.0, delta=0.02)

    def test_invariants_lemniscate(self):
        doc = checked("invariants", "invariants", "builtin:lemniscate")
        checks = doc["main_theorem_check"]
        self.assertEqual(len(checks), 4)
        for c in checks:
            if c["branch"] == "hbar=1":
                self.assertEqual(c["predicted"], doc["tb"])
                self.assertTrue(c["pass"])
            else:
                self.assertEqual(c["predicted"], doc["tb"] - doc["rot_curvature"]["rounded"])
                # the measured abelian-branch value follows the sign-weighted rotation term
                self.assertAlmostEqual(c["measured"], c["sign_weighted_prediction"], delta=0.05)
            self.assertEqual(c["pass"], abs(c["measured"] - c["predicted"]) < 0.05)

    def test_invariants_topological(self):
        doc = checked("invariants", "invariants", "builtin:trefoil-space", "--topological")
        self.assertIsNone(doc["slk_kappa"])
        self.assertIsNotNone(doc["slk_tau"])
        self.assertAlmostEqual(doc["slk_tau"]["value"], round(doc["slk_tau"]["value"]), delta=0.05)

    def test_localize_totals_sum_exactly(self):
        doc = checked("localize", "localize", "builtin:lemniscate", "--hbar", "1")
        self.assertEqual(doc["total"], doc["crossing_sum"] + doc["diagonal_contrib"])
        self.assertAlmostEqual(doc["crossing_sum"], sum(c["value"] for c in doc["crossing_contribs"]), places=14)
        self.assertAlmostEqual(doc["residual"], abs(doc["total"] - doc["slk_reference"]), places=14)
        r = run("localize", "builtin:lemniscate", "--hbar", "1", "--csv")
        self.assertEqual(r.returncode, 0)
        rows = csv_rows(r.stdout)
        crossings = [x for x in rows if x["piece"] == "crossing"]
        self.assertEqual(len(crossings), len(doc["crossing_contribs"]))
        total = next(float(x["value"]) for x in rows if x["piece"] == "total")
        self.assertEqual(total, doc["total"])

    def test_probe(self):
        doc = checked("probe", "probe", "builtin:lemniscate", "--th1", "0.3", "--th2", "2.0")
        self.assertEqual(len(doc["samples"]), 1)
        a = run("probe", "builtin:lemniscate", "--random", "5", "--seed", "4")
        b = run("probe", "builtin:lemniscate", "--random", "5", "--seed", "4")
        self.assertEqual(a.returncode, 0)
        self.assertEqual(a.stdout, b.stdout)
        self.assertEqual(len(json.loads(a.stdout)["samples"]), 5)

    def test_calc_lemma(self):
        for profile in ("linear", "scaled"):
            doc = checked("calc-lemma", "calc-lemma", "--profile", profile)
            self.assertTrue(doc["monotone"])
        self.assertEqual(run("calc-lemma", "--profile", "cubic").returncode, 2)

    def test_output_file_matches_stdout(self):
        with tempfile.TemporaryDirectory() as d:
            out = pathlib.Path(d) / "diagram.json"
            self.assertEqual(run("diagram", "builtin:hypotrochoid", "-o", out).returncode, 0)
            self.assertEqual(out.read_text(), run("diagram", "builtin:hypotrochoid").stdout)

    def test_non_convergence_exit_code(self):
        r = run("selflink", "builtin:lemniscate", "--lambda", "1e5", "--hbar", "1", "--max-grid", "256")
        self.assertEqual(r.returncode, 3)
        err = json.loads(r.stderr.strip().splitlines()[-1])
        jsonschema.validate(err, schema("error"))
        self.assertEqual(err["error"]["kind"], "UnresolvedPeak")

    def test_domain_failure_exit_code(self):
        r = run("selflink", "builtin:circle")
        self.assertEqual(r.returncode, 1)
        self.assertEqual(json.loads(r.stderr.strip().splitlines()[-1])["error"]["kind"], "AreaNotZero")


class Sweep(unittest.TestCase):
    # the abelian-branch rows settle near 1e-3 between grid levels; the default 1e-4 target would exit 3
    ARGS = ("sweep", "builtin:lemniscate", "--lambda", "4", "8", "16", "--hbar", "0", "0.5", "1", "--t", "1",
            "--refine-until", "2e-3")

    def test_grid_and_spread(self):
        r = run(*self.ARGS)
        self.assertEqual(r.returncode, 0, r.stderr)
        rows = csv_rows(r.stdout)
        self.assertEqual(len(rows), 9)
        self.assertTrue(all(x["error"] == "" for x in rows))
        self.assertEqual(set(rows[0]), {"lambda", "hbar", "t", "value", "est_error", "grid", "error"})
        for branch in (lambda h: h != 1.0, lambda h: h == 1.0):
            vals = [float(x["value"]) for x in rows if branch(float(x["hbar"]))]
            self.assertLess(max(vals) - min(vals), 0.03)

    def test_bit_identical_reruns(self):
        self.assertEqual(run(*self.ARGS).stdout, run(*self.ARGS).stdout)

    def test_empty_lambda_list_is_usage_error(self):
        self.assertEqual(run("sweep", "builtin:lemniscate", "--lambda").returncode, 2)


if __name__ == "__main__":
    BIN = sys.argv[1]
    SCHEMAS = pathlib.Path(sys.argv[2])
    unittest.main(argv=[sys.argv[0], "-v"])
