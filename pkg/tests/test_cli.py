import json
import random
import subprocess
import sys

import pytest

from diffsys.cli.dsl import ScriptError, parse_script, script_for_system
from diffsys.cli.main import main
from diffsys.gallery import (
    build_arbitrary_functions_system,
    build_bounded_norm_system,
    build_darboux_system,
    build_periodicity_family,
    build_trig_escape_system,
    build_unbounded_system,
    sc_polynomial_system,
)
from diffsys.exact import BasisContext

A3 = """basis b1 b2;
eq delta(b1) f = 1;
eq delta(b2) f = 1;
eq delta(-b1 - b2) f = 1;
solve;
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def script(tmp_path):
    def make(text, name="s.ds"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return make


# -- parsing ---------------------------------------------------------------------

def test_parse_examples():
    s = parse_script("basis b1 b2; eq delta(b1) f = 1; eq delta(b2) f = 1; solve;")
    assert len(s.systems()["main"]) == 2 and [c.kind for c in s.commands] == ["solve"]
    s2 = parse_script("basis b1; eq delta(b1) f = chi(<b1>+0);")
    (_, g), = s2.systems()["main"].equations
    assert g.kind == "coset"


def test_undeclared_name_location():
    with pytest.raises(ScriptError) as exc:
        parse_script("basis b1; eq delta(b9) f = 1;")
    assert (exc.value.line, exc.value.col) == (1, 20)
    assert "b9" in exc.value.message


def test_expected_tokens_reported():
    with pytest.raises(ScriptError) as exc:
        parse_script("basis b1;\neq delta(b1) f 1;")
    assert (exc.value.line, exc.value.col) == (2, 16)
    assert exc.value.expected == ("'='",)


# -- exit codes ---------------------------------------------------------------------

def test_unsolvable_json_exit_zero(capsys, script):
    code, out, _ = run(capsys, "solve", script(A3), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    res = doc["results"][0]["result"]
    assert doc["schema"] == 1 and res["verdict"] == "unsolvable"
    assert res["certificate"]["combined_rhs"] == "3"


def test_malformed_script_exit_one(capsys, script):
    code, out, err = run(capsys, "solve", script("basis b1;\neq delta(b1 f = 1;"))
    assert code == 1 and out == ""
    assert ":2:" in err and "error" in err


def test_usage_errors_exit_one(capsys, script):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "solve")[0] == 1
    assert run(capsys, "solve", "/nonexistent/file.ds")[0] == 1
    assert run(capsys, "solve", script(A3), "--system", "nope")[0] == 1
    assert run(capsys, "solve", script(A3), "--radius", "0")[0] == 1


def test_inconclusive_exit_two(capsys, script):
    code, out, _ = run(capsys, "solve", script("basis b1;\neq delta(b1) f = cos2pi(1, x);\n"))
    assert code == 2 and "inconclusive" in out


def test_gallery_command(capsys):
    code, out, _ = run(capsys, "gallery", "bounded", "--n", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    values = [c["evidence"].get("value") for c in doc["claims"]]
    assert "3/2" in values
    assert run(capsys, "gallery", "bounded", "--k", "3")[0] == 1
    assert run(capsys, "gallery", "nosuch")[0] == 1
    code, out, _ = run(capsys, "gallery", "poly-sc")
    assert code == 0 and "[pass]" in out


def test_gallery_config_file(capsys, tmp_path):
    cfg = tmp_path / "g.json"
    cfg.write_text(json.dumps({"k": 3, "format": "json"}))
    code, out, _ = run(capsys, "gallery", "periodicity", "--config", str(cfg))
    assert code == 0 and json.loads(out)["parameters"]["k"] == 3
    code, out, _ = run(capsys, "gallery", "periodicity", "--config", str(cfg), "--k", "2")
    assert json.loads(out)["parameters"]["k"] == 2


def test_config_precedence(capsys, script, tmp_path):
    path = script("basis b1;\neq delta(b1) f = chi(<b1>);\nsolve;\n")
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"window_radius": 2, "format": "json"}))
    code, out, _ = run(capsys, "run", path, "--config", str(cfg))
    assert code == 0
    table = json.loads(out)["results"][0]["result"]["solution"]["table"]
    assert table["radius"] == 2
    code, out, _ = run(capsys, "run", path, "--config", str(cfg), "--radius", "3")
    assert json.loads(out)["results"][0]["result"]["solution"]["table"]["radius"] == 3
    cfg.write_text(json.dumps({"colour": "red"}))
    assert run(capsys, "run", path, "--config", str(cfg))[0] == 1


def test_parse_check(capsys, script):
    code, out, _ = run(capsys, "parse", script(A3), "--check")
    assert code == 0 and out.strip() == "ok"
    code, out, _ = run(capsys, "parse", script(A3))
    assert parse_script(out) == parse_script(A3)


def test_module_entry_point(tmp_path):
    p = tmp_path / "a.ds"
    p.write_text(A3)
    proc = subprocess.run([sys.executable, "-m", "diffsys", "solve", str(p)], capture_output=True, text=True)
    assert proc.returncode == 0 and "unsolvable" in proc.stdout


# -- determinism and certification -----------------------------------------------------

FULL = """basis b1 b2;
let a = b1 + b2;
fun g = chi(<b2>);
system tri {
  eq delta(b1) f = 1;
  eq delta(b2) f = 1;
  eq delta(-a) f = 1;
}
system cocyc {
  eq delta(b1) f = g;
  eq delta(b2) f = 0;
}
system poly {
  eq delta(1) f = poly(0, 2);
}
system lone {
  eq T[b1] f = 1;
}
solve tri;
solve cocyc;
minsup cocyc;
polysolve poly;
deduce tri using eq 1, eq 2 by T[b1], eq 3 by T[a];
deduce cocyc using eq 1 by T[b2];
vanish lone on chi(<b1>);
"""


def test_byte_identical_json(capsys, script):
    path = script(FULL)
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, "run", path, "--format", "json")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    proc = subprocess.run([sys.executable, "-m", "diffsys", "run", path, "--format", "json"], capture_output=True)
    assert proc.stdout.decode() == outs[0]


def test_certify_round_trip(capsys, script, tmp_path):
    code, out, _ = run(capsys, "run", script(FULL), "--format", "json")
    doc_path = tmp_path / "doc.json"
    doc_path.write_text(out)
    code, out, _ = run(capsys, "certify", str(doc_path), "--format", "json")
    assert code == 0
    checks = json.loads(out)["checks"]
    statuses = [c["status"] for c in checks]
    assert "rejected" not in statuses
    assert statuses.count("verified") >= 5
    # every surfaced verdict carries re-checkable data
    doc = json.loads(doc_path.read_text())
    for r in doc["results"]:
        res = r["result"]
        assert "certificate" in res or "solution" in res or "witness" in res


def test_certify_rejects_tampering(capsys, script, tmp_path):
    code, out, _ = run(capsys, "run", script(FULL), "--format", "json")
    doc = json.loads(out)
    doc["results"][0]["result"]["certificate"]["combined_rhs"] = "4"
    minsup = next(r for r in doc["results"] if r["command"] == "minsup")
    minsup["result"]["value"] = "1/7"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "certify", str(p))
    assert code == 1
    assert out.count("rejected") >= 2


def test_deduce_command(capsys, script):
    code, out, _ = run(capsys, "deduce", script(FULL), "--format", "json")
    results = json.loads(out)["results"]
    assert [r["result"]["verdict"] for r in results] == ["unsolvable", "deduced"]


def test_text_output(capsys, script):
    code, out, _ = run(capsys, "run", script(FULL))
    assert code == 0
    assert "[solve tri] unsolvable" in out and "min sup norm on window" in out


# -- round trip corpus -----------------------------------------------------------------

def gallery_scripts():
    out = []
    for n in range(2, 7):
        out.append(script_for_system(build_arbitrary_functions_system(n)).render())
    for n in range(2, 5):
        out.append(script_for_system(build_bounded_norm_system(n), "bounded", ("solve", "minsup")).render())
        out.append(script_for_system(build_unbounded_system(n), "unbounded").render())
    for k in (2, 5):
        out.append(script_for_system(build_periodicity_family(k)[1]).render())
    ctx = BasisContext.numbered(2)
    out.append(script_for_system(build_darboux_system(ctx.basis(), ctx)).render())
    out.append(script_for_system(build_trig_escape_system(4, samples=20_000)[1], "trig").render())
    out.append(script_for_system(sc_polynomial_system(), "pair", ("polysolve", "solve")).render())
    return out


def random_scripts(count, seed=5):
    rng = random.Random(seed)
    funcs = ["1", "-3/2", "poly(1, 0, -2)", "cos2pi(2, x)", "3*sin2pi(1/2, x)", "chi(<b1>)",
             "chi(<b1, b2> + 1/2*b1)", "latfun(<b1, b2>; gt(k1,0) + k2^2 - 1; 0)", "chi(<>)",
             "cos(2pi*4*x)", "2*chi(<b2> - b1) - chi(<b1>)", "trig(1; 8; 0, 1, 0, 0)"]
    shifts = ["b1", "b2", "-b1", "b1 + b2", "2*b1 - b2", "1/2*b1", "(b1 - b2)", "1", "1/4"]
    out = []
    for _ in range(count):
        lines = ["basis b1 b2;"]
        if rng.random() < 0.5:
            lines.append("let s = " + rng.choice(shifts) + ";")
        n = rng.randint(1, 3)
        body = []
        for _ in range(n):
            kind = rng.random()
            b = rng.choice(shifts)
            if kind < 0.5:
                op = f"delta({b})"
            elif kind < 0.8:
                op = f"T[{b}] - {rng.randint(1, 3)}*T[0]"
            else:
                op = f"delta({b}) * delta({rng.choice(shifts)})"
            body.append(f"eq {op} f = {rng.choice(funcs)};")
        if rng.random() < 0.5:
            lines += ["system s1 {"] + ["  " + e for e in body] + ["}", "solve s1;"]
            if n >= 2:
                lines.append("deduce s1 using eq 1, eq 2 by T[b1];")
        else:
            lines += body + ["solve;", "minsup;"]
            if rng.random() < 0.3:
                lines.append("vanish on chi(<b1>), off <b1, b2>;")
        out.append("\n".join(lines) + "\n")
    return out


CORPUS = gallery_scripts() + random_scripts(40) + [A3, FULL]


def test_corpus_size():
    assert len(CORPUS) >= 50


@pytest.mark.parametrize("text", CORPUS)
def test_round_trip(text):
    first = parse_script(text)
    rendered = first.render()
    second = parse_script(rendered)
    assert second == first
    assert second.render() == rendered
