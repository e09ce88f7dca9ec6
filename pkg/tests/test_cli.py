"""The hv command: dispatch, output formats and exit codes."""

import json

import pytest

from hvtensor.cli import ConfigError, RunConfig, build_module, main, run_suite
from hvtensor.report import emit_report

TENSOR = ('{"factors":[{"lambda":"1","alpha":"3","beta":"0"},{"lambda":"2","alpha":"0","beta":"5"}],'
          '"hw":{"h":"1","c0":"1","c1":"0","c2":"0"}}')
SWAPPED = ('{"factors":[{"lambda":"2","alpha":"0","beta":"5"},{"lambda":"1","alpha":"3","beta":"0"}],'
           '"hw":{"h":"1","c0":"1","c1":"0","c2":"0"}}')
INTERMEDIATE = '{"gamma":"1/2","alpha":"3","beta":"2"}'


def run(capfd, *argv):
    code = main(list(argv))
    out, err = capfd.readouterr()
    return code, out, err


def test_act_example(capfd):
    code, out, _ = run(capfd, "act", "--family", "omega", "--params", '{"lambda":"2","alpha":"3","beta":"0"}',
                       "--gen", "L[1]", "--vec", "1")
    assert (code, out) == (0, "2*d + 6\n")


def test_act_json(capfd):
    code, out, _ = run(capfd, "act", "--family", "ind", "--params", '{"h":"1/2","c0":"3","c1":"1","c2":"2"}',
                       "--gen", "L[1]", "--vec", "[I(-1) | v]", "--format", "json")
    assert code == 0
    assert json.loads(out)["result"] == "[v]"  # (-c0 + 2 c2) v with c0 = 3, c2 = 2


def test_check_jacobi(capfd):
    code, out, _ = run(capfd, "check", "jacobi", "--window", "6")
    assert code == 0
    assert json.loads(out)["status"] == "pass"


def test_check_axioms_single_family(capfd):
    code, out, _ = run(capfd, "check", "axioms", "--family", "intermediate", "--params", INTERMEDIATE,
                       "--trials", "40")
    assert code == 0


def test_submodule_chain(capfd):
    code, out, _ = run(capfd, "verify", "submodule-chain", "--lambda", "1", "--a1", "1/2", "--b1", "2",
                       "--a2", "1/3", "--b2", "0", "--smax", "3")
    assert code == 0
    report = json.loads(out)
    assert list(report) == ["status", "checks", "counterexample", "version", "seed"]


def test_iso_exit_codes(capfd):
    assert run(capfd, "iso", "--params", TENSOR, "--params2", SWAPPED)[0] == 0
    changed = SWAPPED.replace('"alpha":"3"', '"alpha":"4"')
    assert run(capfd, "iso", "--params", TENSOR, "--params2", changed)[0] == 1


def test_distinguish_exit_codes(capfd):
    assert run(capfd, "distinguish", "--family", "tensor", "--params", TENSOR,
               "--family2", "intermediate", "--params2", INTERMEDIATE)[0] == 0
    assert run(capfd, "distinguish", "--family", "intermediate", "--params", INTERMEDIATE,
               "--family2", "intermediate", "--params2", INTERMEDIATE)[0] == 2


def test_fingerprint(capfd):
    code, out, _ = run(capfd, "fingerprint", "--params", TENSOR)
    assert code == 0
    assert json.loads(out)["checks"][0]["actual"]["factors"][1]["beta"] == "5"


def test_verify_t_operator_and_nilpotency(capfd):
    assert run(capfd, "verify", "t-operator", "--family", "tensor", "--params", TENSOR)[0] == 0
    assert run(capfd, "verify", "t-operator", "--family", "intermediate", "--params", INTERMEDIATE,
               "--s", "2")[0] == 0
    assert run(capfd, "verify", "nilpotency", "--family", "ind", "--params", '{"h":"1","c0":"1"}', "--gen", "I[5]",
               "--vec", "[L(-2) | v]", "--expect", "nilpotent")[0] == 0
    assert run(capfd, "verify", "nilpotency", "--family", "omega", "--params", '{"lambda":"2","alpha":"1"}',
               "--gen", "L[5]", "--vec", "d", "--expect", "nilpotent")[0] == 1


def test_params_from_file(capfd, tmp_path):
    p = tmp_path / "t.json"
    p.write_text(TENSOR)
    assert run(capfd, "iso", "--params", f"@{p}", "--params2", SWAPPED)[0] == 0


@pytest.mark.parametrize("argv", [
    ["nonsense"],
    ["check", "nothing"],
    ["act", "--family", "omega", "--params", "{}", "--gen", "L[1]", "--vec", "1"],
    ["act", "--family", "omega", "--params", '{"lambda":"2","alpha":"1"}', "--gen", "L[1", "--vec", "1"],
    ["act", "--family", "omega", "--params", "not json", "--gen", "L[1]", "--vec", "1"],
    ["check", "jacobi", "--seed", "-1"],
    ["verify", "irreducibility", "--cutoff", "2"],
    ["suite", "--only", "nope"],
])
def test_usage_errors_exit_3(capfd, argv):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse-level errors
        code = exc.code
    capfd.readouterr()
    assert code == 3


def test_run_suite_is_deterministic():
    cfg = RunConfig("suite", seed=12345, options={"only": ["lie", "extraction", "fingerprint"]})
    assert emit_report(run_suite(cfg)) == emit_report(run_suite(cfg))


def test_config_errors():
    with pytest.raises(ConfigError):
        build_module("nope", {})
    with pytest.raises(ConfigError):
        run_suite(RunConfig("check", target="jacobi", seed=2**64))
