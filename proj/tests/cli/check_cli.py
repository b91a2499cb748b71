"""End-to-end checks of the forcing_lab command line.

Usage: check_cli.py <forcing_lab binary> <source dir>
"""
import copy
import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

BINARY = None
SOURCE = None

EXPECTED_EXIT = {
    "diagram_violation.json": 1,
}

KIND_OF = {
    "slalom.json": "slalom",
    "refine.json": "refine",
    "extend.json": "extend",
    "generic_run.json": "generic-run",
    "generic_run_empty.json": "generic-run",
    "smz.json": "smz",
    "rapid_cubes.json": "rapid",
    "rapidity.json": "rapid",
    "diagram_violation.json": "diagram",
    "diagram_extension.json": "diagram",
}


def run(args, stdin=None, env=None):
    return subprocess.run([BINARY, *args], input=stdin, capture_output=True, text=True, env=env)


def body(report):
    out = dict(report)
    out.pop("wall_time_ms", None)
    return out


class CliTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        with open(os.path.join(SOURCE, "docs", "report.schema.json")) as f:
            cls.schema = json.load(f)
        cls.tmp = tempfile.TemporaryDirectory()

    @classmethod
    def tearDownClass(cls):
        cls.tmp.cleanup()

    def scenario_path(self, name):
        return os.path.join(SOURCE, "scenarios", name)

    def write(self, name, doc):
        path = os.path.join(self.tmp.name, name)
        with open(path, "w") as f:
            f.write(doc if isinstance(doc, str) else json.dumps(doc))
        return path

    def report(self, kind, path, *extra):
        proc = run([kind, "--input", path, *extra])
        report = json.loads(proc.stdout)
        jsonschema.validate(report, self.schema)
        return proc.returncode, report

    def test_bundled_scenarios(self):
        for name, kind in KIND_OF.items():
            with self.subTest(scenario=name):
                code, report = self.report(kind, self.scenario_path(name))
                self.assertEqual(code, EXPECTED_EXIT.get(name, 0), report)
                self.assertEqual(report["kind"], kind)
                self.assertEqual(report["status"], "ok" if code == 0 else "failed")

    def test_same_seed_same_body(self):
        for name in ("extend.json", "generic_run.json", "smz.json"):
            kind = KIND_OF[name]
            with self.subTest(scenario=name):
                _, first = self.report(kind, self.scenario_path(name))
                _, second = self.report(kind, self.scenario_path(name))
                self.assertEqual(json.dumps(body(first), sort_keys=True), json.dumps(body(second), sort_keys=True))

    def test_seed_flag_overrides(self):
        code, report = self.report("generic-run", self.scenario_path("generic_run.json"), "--seed", "99")
        self.assertEqual(code, 0)
        self.assertEqual(report["seed"], 99)

    def test_out_file(self):
        out = os.path.join(self.tmp.name, "out.json")
        proc = run(["slalom", "--input", self.scenario_path("slalom.json"), "--out", out])
        self.assertEqual(proc.returncode, 0)
        with open(out) as f:
            report = json.load(f)
        jsonschema.validate(report, self.schema)
        self.assertEqual(report["outputs"]["slalom"]["slots"][1], [0])

    def test_stdin_input(self):
        with open(self.scenario_path("slalom.json")) as f:
            proc = run(["slalom", "--input", "-"], stdin=f.read())
        self.assertEqual(proc.returncode, 0)

    def test_diagram_prints_table(self):
        out = os.path.join(self.tmp.name, "diagram.json")
        proc = run(["diagram", "--input", self.scenario_path("diagram_violation.json"), "--out", out])
        self.assertEqual(proc.returncode, 1)
        self.assertIn("add(N) <= cov(N)", proc.stdout)

    def test_schema_errors_exit_2(self):
        with open(self.scenario_path("extend.json")) as f:
            extend = json.load(f)
        no_seed = copy.deepcopy(extend)
        del no_seed["seed"]
        unknown_key = copy.deepcopy(extend)
        unknown_key["params"]["colour"] = "blue"
        wrong_version = copy.deepcopy(extend)
        wrong_version["version"] = 2
        cases = {
            "no_seed.json": ("extend", no_seed),
            "unknown_key.json": ("extend", unknown_key),
            "wrong_version.json": ("extend", wrong_version),
            "kind_mismatch.json": ("slalom", extend),
            "syntax.json": ("extend", "{ not json"),
        }
        for name, (kind, doc) in cases.items():
            with self.subTest(case=name):
                code, report = self.report(kind, self.write(name, doc))
                self.assertEqual(code, 2)
                self.assertEqual(report["status"], "invalid")

    def test_module_error_exit_1(self):
        with open(self.scenario_path("refine.json")) as f:
            doc = json.load(f)
        doc["params"]["p"] = []
        code, report = self.report("refine", self.write("empty_p.json", doc))
        self.assertEqual(code, 1)
        self.assertEqual(report["error"]["kind"], "EmptyCondition")

    def test_missing_input_file(self):
        proc = run(["slalom", "--input", os.path.join(self.tmp.name, "absent.json")])
        self.assertEqual(proc.returncode, 2)

    def test_log_verbosity(self):
        env = dict(os.environ, FORCING_LAB_LOG="info")
        proc = run(["slalom", "--input", self.scenario_path("slalom.json")], env=env)
        self.assertIn("[info]", proc.stderr)
        env["FORCING_LAB_LOG"] = "off"
        proc = run(["slalom", "--input", self.scenario_path("slalom.json")], env=env)
        self.assertEqual(proc.stderr, "")

    def test_selftest_corrupted_fixture(self):
        with open(os.path.join(SOURCE, "data", "selftest_fixtures.json")) as f:
            fixtures = json.load(f)
        for fx in fixtures["fixtures"]:
            if fx["name"] == "refine-full-space":
                fx["expect"]["outputs"]["measure_q"] = "7/8"
        path = self.write("corrupted.json", fixtures)
        out = os.path.join(self.tmp.name, "selftest.json")
        proc = run(["selftest", "--only", "fixtures", "--input", path, "--out", out])
        self.assertEqual(proc.returncode, 1)
        self.assertIn("FAIL  fixture refine-full-space", proc.stdout)
        with open(out) as f:
            report = json.load(f)
        jsonschema.validate(report, self.schema)
        failed = [x["name"] for x in report["fixtures"] if not x["passed"]]
        self.assertEqual(failed, ["refine-full-space"])

    def test_selftest_unreadable_fixture_file(self):
        path = self.write("garbage.json", "[1, 2")
        proc = run(["selftest", "--only", "fixtures", "--input", path])
        self.assertEqual(proc.returncode, 1)
        self.assertIn("FAIL  fixture fixture-file", proc.stdout)

    def test_selftest_deterministic(self):
        reports = []
        for i in range(2):
            out = os.path.join(self.tmp.name, f"selftest{i}.json")
            proc = run(["selftest", "--out", out])
            self.assertEqual(proc.returncode, 0, proc.stdout)
            with open(out) as f:
                reports.append(json.load(f))
            jsonschema.validate(reports[-1], self.schema)
        self.assertEqual(body(reports[0]), body(reports[1]))


if __name__ == "__main__":
    BINARY, SOURCE = sys.argv[1], sys.argv[2]
    unittest.main(argv=sys.argv[:1], verbosity=2)
