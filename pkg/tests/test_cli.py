"""End-to-end command-line checks: exit-code contract, deterministic stdout,
documented output shapes, and the closed verify-cert loop for every
certificate kind."""

import json

import pytest

from ratskew.cli import run_command
from ratskew.fields import field_from_name
from ratskew.freealg import FreeElem
from ratskew.realize import build_generators, hom_spec, spot_check_sigma_prime
from ratskew.skew import CoeffDomain, SkewRing, verify_word_system

QQ = field_from_name("q")


@pytest.fixture
def run(capsys):
    def go(*argv):
        code = run_command(list(argv))
        cap = capsys.readouterr()
        return code, cap.out, cap.err

    return go


def jrun(run, *argv):
    code, out, _ = run(*argv)
    return code, json.loads(out)


# -- exit codes --------------------------------------------------------------------

def test_usage_errors_exit_2(run):
    assert run("series", "eval", "--field", "fp:6", "x0")[0] == 2  # bad modulus
    assert run("series", "eval", "x0 +")[0] == 2                   # syntax error
    assert run("nonsense")[0] == 2                                 # unknown command
    assert run("verify-cert", "/no/such/file.json")[0] == 2        # unreadable file
    assert run("k0", "group", "no pipe")[0] == 2                   # unparsable text


def test_computation_failures_exit_1(run):
    # zero in the quotient: no witness can exist
    assert run("leavitt", "witness", "--n", "2", "x1*y2")[0] == 1
    # enumeration refuses a second independent relation
    assert run("k0", "monoid", "a,b | 2a=a, 2b=b")[0] == 1


def test_false_predicates_exit_0(run):
    code, out, _ = run("series", "equal", "x0", "x1")
    assert code == 0 and out.strip() == "false"
    code, out, _ = run("skew", "member", "x0")
    assert code == 0 and out.strip() == "false"
    code, out, _ = run("skew", "equal", "x0*y0", "1")
    assert code == 0 and out.strip() == "true"


# -- determinism ----------------------------------------------------------------------

def test_fixed_seed_stdout_is_reproducible(run):
    a = run("selftest", "--criterion", "1", "--json")
    b = run("selftest", "--criterion", "1", "--json")
    assert a[0] == b[0] == 0
    assert a[1] == b[1]
    c = run("selftest", "--criterion", "8")
    d = run("selftest", "--criterion", "8")
    assert c[1] == d[1]
    assert "criterion" in c[2]  # timings go to stderr, not stdout
    assert "PASS" in c[1]


def test_selftest_json_shape(run):
    code, obj = jrun(run, "selftest", "--criterion", "12", "--json")
    assert code == 0
    assert obj["passed"] == obj["total"] == 1
    assert obj["criteria"][0]["num"] == 12 and obj["criteria"][0]["ok"]


# -- documented output shapes ----------------------------------------------------------

def test_series_eval_json(run):
    code, obj = jrun(run, "series", "eval", "--json", "--window", "4", "(1 - x0)^-1")
    assert code == 0
    assert obj["dim"] == 1 and obj["window"] == 4
    words = {tuple(w): r for w, r in obj["coeffs"]}
    assert words[(0, 0)] == "1"


def test_series_invert_and_transduce(run):
    code, out, _ = run("series", "invert", "1 - x0")
    assert code == 0 and "x0" in out
    assert run("series", "invert", "x0")[0] == 1  # no constant term
    code, obj = jrun(run, "series", "transduce", "--json", "--letter", "1",
                     "x0*x1 + x1*x0")
    assert code == 0
    assert [w for w, _ in obj["coeffs"]] == [[0]]


def test_k0_monoid_example(run):
    code, obj = jrun(run, "k0", "monoid", "--json", "I | 3I=I")
    assert code == 0
    assert obj["invariant_factors"] == [2]
    assert obj["generators"] == {"I": [1]} == obj["generator_images"]
    assert obj["group"] == "Z/2"
    shape = obj["shape_report"]
    assert shape["complete"] and shape["conical"] and shape["simple"]
    assert shape["nonzero_is_group"] and shape["matches_group_side"]


def test_k0_group_infinite_monoid(run):
    code, obj = jrun(run, "k0", "group", "--json", "I,P | I = 2I + P")
    assert code == 0
    assert obj["invariant_factors"] == [0]
    assert obj["generator_images"]["I"] == [1]
    assert obj["generator_images"]["P"] == [-1]


def test_k0_monoid_bound_overflow(run):
    code, obj = jrun(run, "k0", "monoid", "--json", "--bound", "8", "g |")
    assert code == 0  # overflow is a partial report, not a failure
    assert not obj["shape_report"]["complete"]


def test_leavitt_witness_example(run):
    code, obj = jrun(run, "leavitt", "witness", "--json", "--n", "2", "y1*x2")
    assert code == 0
    assert (obj["beta"], obj["gamma"], obj["check"]) == ("x1", "y2", "1")
    assert obj["ok"] and obj["cert"]["kind"] == "paired_witness"


def test_leavitt_nf(run):
    code, out, _ = run("leavitt", "nf", "--n", "2", "y2*x2")
    assert code == 0 and out.strip() == "1 - y1*x1"
    code, out, _ = run("leavitt", "nf", "--n", "0", "x1*y1")
    assert code == 0 and out.strip() == "1"


def test_realize_build_example(run):
    code, obj = jrun(run, "realize", "build", "--from", "0", "--to", "2", "--mult", "1")
    assert code == 0
    assert obj["kind"] == "generator_matrices"
    assert obj["spec"]["case"] == 2 and obj["spec"]["l"] == 1
    # invalid tags and ill-defined maps are domain errors, not usage errors
    assert run("realize", "build", "--from", "1", "--to", "2", "--mult", "1")[0] == 1
    assert run("realize", "build", "--from", "2", "--to", "4", "--mult", "1")[0] == 1


# -- closed certificate loops ------------------------------------------------------------

def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_verify_cert_skew_witness(run, tmp_path):
    code, cert = jrun(run, "skew", "witness", "--json", "1 - x0")
    assert code == 0 and cert["kind"] == "skew_witness"
    assert jrun(run, "verify-cert", _write(tmp_path, "w.json", cert)) == (0, {"kind": "skew_witness", "ok": True, "precision": None})
    cert["m"] = cert["m"] + [1]
    assert run("verify-cert", _write(tmp_path, "w2.json", cert))[0] == 1


def test_verify_cert_paired_witness(run, tmp_path):
    code, wrapper = jrun(run, "leavitt", "witness", "--json", "--n", "2", "y1*x2")
    assert code == 0
    # the wrapper is accepted as-is; the re-check descends into "cert"
    assert run("verify-cert", _write(tmp_path, "p.json", wrapper))[0] == 0
    wrapper["cert"]["beta"] = wrapper["cert"]["gamma"]
    assert run("verify-cert", _write(tmp_path, "p2.json", wrapper))[0] == 1


def test_verify_cert_unbounded_witness(run, tmp_path):
    code, wrapper = jrun(run, "leavitt", "witness", "--json", "--n", "0",
                         "--beyond", "3", "1 + x1*x2")
    assert code == 0 and wrapper["cert"]["mode"] == "uinf"
    assert run("verify-cert", _write(tmp_path, "u.json", wrapper["cert"]))[0] == 0


def test_verify_cert_word_system(run, tmp_path):
    ring = SkewRing(CoeffDomain("rat", QQ), 2)
    words = [(i,) for i in range(3)]
    qs = [ring.x(i) for i in range(3)]
    rep = verify_word_system(ring, words, qs)
    assert rep.ok
    cert = rep.to_json()
    code, out = jrun(run, "verify-cert", _write(tmp_path, "ws.json", cert))
    assert code == 0 and out["ok"] and out["s_mod"] == 1
    cert["words"][0] = [1]
    code, out = jrun(run, "verify-cert", _write(tmp_path, "ws2.json", cert))
    assert code == 1 and not out["ok"]
    assert any("w_" in v and "q_" in v for v in out["violations"])


def test_verify_cert_sigma(run, tmp_path):
    g = build_generators(hom_spec(0, 3, 2), count=2)
    cert = spot_check_sigma_prime(g, FreeElem.letter(QQ, 0)).to_json()
    assert run("verify-cert", _write(tmp_path, "s.json", cert))[0] == 0
    cert["inverse"] = cert["matrix"]
    assert run("verify-cert", _write(tmp_path, "s2.json", cert))[0] == 1


def test_verify_cert_generator_matrices(run, tmp_path):
    code, cert = jrun(run, "realize", "build", "--from", "0", "--to", "3",
                      "--mult", "2", "--count", "2")
    assert code == 0
    path = _write(tmp_path, "g.json", cert)
    assert run("verify-cert", path)[0] == 0
    code, rep = jrun(run, "realize", "verify", path)
    assert code == 0 and rep["ok"] and rep["failed"] == []
    cert["A"][0], cert["A"][1] = cert["A"][1], cert["A"][0]
    code, rep = jrun(run, "verify-cert", _write(tmp_path, "g2.json", cert))
    assert code == 1 and not rep["ok"]


def test_verify_cert_chain_plan(run, tmp_path):
    plan = {"groups": [{"tags": [2], "u": [1]}, {"tags": [4], "u": [2]}],
            "maps": [[[2]]]}
    code, out = jrun(run, "realize", "chain", "--verify",
                     _write(tmp_path, "plan.json", plan))
    assert code == 0 and out["ok"]
    assert all(v["ok"] for v in out["verification"])
    assert run("verify-cert", _write(tmp_path, "c.json", out))[0] == 0
    out["maps"][0][0][0] = 3  # 3*2 is not 0 mod 4: not a group map
    assert run("verify-cert", _write(tmp_path, "c2.json", out))[0] == 1


def test_top_level_verify_cert_flag(run, tmp_path):
    code, cert = jrun(run, "skew", "witness", "--json", "1 - x0 - x1")
    assert code == 0
    assert run("--verify-cert", _write(tmp_path, "t.json", cert))[0] == 0


def test_verify_cert_stdin(run, tmp_path, monkeypatch):
    import io

    code, cert = jrun(run, "skew", "witness", "--json", "1 - x0")
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(cert)))
    assert run("verify-cert", "-")[0] == 0


def test_verify_cert_rejects_unknown_kind(run, tmp_path):
    assert run("verify-cert", _write(tmp_path, "x.json", {"kind": "other"}))[0] == 2
    assert run("verify-cert", _write(tmp_path, "y.json", [1, 2]))[0] == 2


def test_chain_plan_failure_exits_1(run, tmp_path):
    plan = {"groups": [{"tags": [2], "u": [1]}, {"tags": [0], "u": [1]}],
            "maps": [[[1]]]}
    code, out = jrun(run, "realize", "chain", _write(tmp_path, "bad.json", plan))
    assert code == 1 and not out["ok"] and out["errors"]
    assert run("realize", "chain", _write(tmp_path, "shape.json", {"groups": []}))[0] == 2
