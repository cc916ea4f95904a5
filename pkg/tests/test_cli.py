import io
import json
import subprocess
import sys

import pytest

from easywg.cli import run
from easywg.weingarten import weingarten


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    text = out.getvalue()
    return code, text


def call_json(*argv):
    code, text = call(*argv)
    return code, json.loads(text)


class TestSubcommands:
    def test_enumerate(self):
        code, out = call_json("enumerate", "--l", "4", "--category", "o")
        assert code == 0 and out["count"] == 3 and out["partitions"] == ["/aabb", "/abab", "/abba"]
        _, nc = call_json("enumerate", "--l", "6", "--noncrossing")
        assert nc["count"] == 132
        _, pairs = call_json("enumerate", "--k", "1", "--l", "3", "--pairings")
        assert pairs["count"] == 3

    def test_closure(self):
        code, out = call_json("closure", "--generator", "/aaaa", "--bound", "6")
        assert code == 0 and out["identified_as"] == ["H"]
        _, listed = call_json("closure", "--generator", "/ab", "--no-crossing", "--bound", "4", "--list")
        assert listed["identified_as"] == []

    def test_classify(self):
        code, out = call_json("classify", "--generator", "abc/cba", "--no-crossing", "--bound", "8")
        assert code == 0 and out["identified_as"] == "O*"
        _, report = call_json("classify", "--bound", "4")
        assert isinstance(report, dict)

    def test_gram_and_wg(self):
        _, g = call_json("gram", "--category", "s", "--k", "2", "--n", "3")
        assert g["gram"] == [["3", "3"], ["3", "9"]]
        _, w = call_json("wg", "--category", "o", "--k", "4", "--n", "3")
        assert w["wg"][0] == ["2/15", "-1/30", "-1/30"]

    def test_integrate(self):
        assert call_json("integrate", "--category", "o", "--n", "5", "--i", "1,1", "--j", "1,1")[1]["value"] == "1/5"
        assert call_json("integrate", "--category", "s", "--n", "3", "--i", "1,2", "--j", "1,2")[1]["value"] == "1/6"

    def test_char_moments(self):
        _, asym = call_json("char-moments", "--category", "s+", "--k", "6", "--asymptotic")
        assert asym["coeffs"] == {"1": "1", "2": "15", "3": "50", "4": "50", "5": "15", "6": "1"}
        _, exact = call_json("char-moments", "--category", "o", "--k", "2", "--n", "10", "--s", "5")
        assert exact["value"] == "1/2"
        _, count = call_json("char-moments", "--category", "o*", "--k", "6")
        assert count["even"] == "6"

    def test_cumulants_and_bp(self):
        _, cum = call_json("cumulants", "--kind", "free", "--k", "8", "--category", "h+")
        assert cum["cumulants"][1] == {"1": "1"} and cum["cumulants"][2] == {}
        _, ver = call_json("cumulants", "--category", "s'", "--k", "4", "--verdict")
        assert ver["verdict"]["verdict"] == "NOT-SEMIGROUP"
        assert ver["verdict"]["certificate"]["text"] == "t + t^2"
        _, bp = call_json("bp", "--category", "o", "--k", "4")
        assert bp["free_moments"][3] == {"2": "2"}
        _, raw = call_json("bp", "--moments-json", '["0", "1", "0", "3"]')
        assert raw["free_moments"][3] == {"0": "2"}

    def test_laws(self):
        _, out = call_json("laws", "--law", "pi", "--k", "3", "--t", "1/2")
        assert out["moments"] == ["1/2", "3/4", "11/8"]

    def test_mc_check(self):
        code, out = call_json("mc-check", "--group", "s", "--n", "4", "--i", "1", "--j", "1", "--samples", "1e4")
        assert code == 0 and out["exact"] == "1/4" and out["samples"] == 10_000

    def test_verify_subset(self):
        code, out = call_json("verify", "--only", "5,9")
        assert code == 0 and out["passed"]
        assert [c["criterion"] for c in out["criteria"]] == [5, 9]

    def test_text_format(self):
        code, text = call("integrate", "--category", "o", "--n", "5", "--i", "1,1", "--j", "1,1", "--format", "text")
        assert code == 0 and text.strip() == "value: 1/5"


class TestErrors:
    def test_usage(self):
        code, out = call_json("enumerate")
        assert code == 2 and out["kind"] == "usage"
        code, out = call_json("frobnicate")
        assert code == 2

    def test_singular(self):
        code, out = call_json("integrate", "--category", "s", "--n", "2", "--i", "1,1,1", "--j", "1,1,1")
        assert code == 1 and out["kind"] == "singular-gram" and out["k"] == 3

    @pytest.mark.parametrize(
        "argv",
        [
            ("integrate", "--category", "o", "--n", "3", "--i", "1,4", "--j", "1,1"),
            ("gram", "--category", "q", "--k", "2", "--n", "3"),
            ("laws", "--law", "rho", "--k", "2"),
            ("char-moments", "--category", "o", "--k", "2", "--n", "3", "--s", "4"),
        ],
    )
    def test_domain(self, argv):
        code, out = call_json(*argv)
        assert code in (1, 2) and out["kind"] in ("domain", "usage")

    def test_cache_dir_option(self, tmp_path, monkeypatch):
        # the option writes the environment variable; monkeypatch restores it
        monkeypatch.setenv("EASYWG_CACHE_DIR", "off")
        weingarten.cache_clear()
        code, _ = call("wg", "--category", "h", "--k", "2", "--n", "3", "--cache-dir", str(tmp_path))
        assert code == 0
        assert list(tmp_path.glob("wg-v1-h-2-3.json"))


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "easywg.cli", "integrate", "--category", "o", "--n", "5", "--i", "1,1", "--j", "1,1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == "1/5"
