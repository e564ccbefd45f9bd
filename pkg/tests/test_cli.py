"""End-to-end tests of the command-line interface, run in-process."""

import json
import os

import pytest

from divint import cli, lattice
from divint._version import __version__


@pytest.fixture
def env(monkeypatch, tmp_path):
    """Isolated cwd with no DIVINT_* variables leaking in."""
    for key in list(os.environ):
        if key.startswith("DIVINT_"):
            monkeypatch.delenv(key)
    monkeypatch.chdir(tmp_path)
    return tmp_path


def run(argv, capsys):
    code = cli.main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_bound_text(env, capsys):
    code, out, err = run(["bound", "--sig", "2,1,1,1"], capsys)
    assert code == 0
    assert out == "12\n"
    assert "elapsed:" in err
    assert "elapsed" not in out


def test_bound_normalization_note(env, capsys):
    code, out, _ = run(["bound", "--sig", "1,2"], capsys)
    assert code == 0
    assert out.splitlines() == [
        "note: signature normalized from 1,2 to 2,1", "3"]


def test_bound_from_integer(env, capsys):
    code, out, _ = run(["bound", "--n", "420"], capsys)
    assert code == 0
    assert out.strip() == "12"


def test_json_envelope(env, capsys):
    code, out, _ = run(["bound", "--sig", "2,1", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"command", "parameters", "results", "tool_version"}
    assert doc["command"] == "bound"
    assert doc["parameters"] == {"sig": "2,1"}
    assert doc["results"]["min_size"] == 3
    assert doc["results"]["signature"]["exponents"] == [2, 1]
    assert doc["tool_version"] == __version__


def test_json_is_its_own_canonical_form(env, capsys):
    _, out, _ = run(["extremal", "--n", "420", "--format", "json"], capsys)
    doc = json.loads(out)
    assert json.dumps(doc, sort_keys=True, indent=2) + "\n" == out


def test_csv_output(env, capsys):
    code, out, _ = run(["bound", "--sig", "2,1", "--format", "csv"], capsys)
    assert code == 0
    assert out.splitlines() == ["signature,min_size", '"2,1",3']


def test_count(env, capsys):
    code, out, _ = run(["count", "--n", "420"], capsys)
    assert code == 0
    assert out.strip() == "4"


def test_extremal_text(env, capsys):
    code, out, _ = run(["extremal", "--n", "420"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ("signature 2,1,1,1: flat regime, minimum size 12, "
                        "4 minimum-size maximal families")
    assert lines[1] == "  [1] generators {3}"
    assert lines[2] == "  [2] generators {5}"
    assert lines[3] == "  [3] generators {7}"
    assert lines[4] == "  [4] generators {15, 21, 35}"


def test_antichains_listing(env, capsys):
    code, out, _ = run(["antichains", "--k", "3", "--list"], capsys)
    assert code == 0
    assert out.splitlines() == [
        "4 generating antichains on 3 primes",
        "  [1] p1",
        "  [2] p2",
        "  [3] p3",
        "  [4] p1*p2, p1*p3, p2*p3",
    ]


def test_oracle_text(env, capsys):
    code, out, _ = run(["oracle", "--n", "420"], capsys)
    assert code == 0
    assert out.strip() == (
        "signature 2,1,1,1: 12 maximal families (radical-lift); "
        "min size 12 attained by 4; sizes: 12x4 13x3 14x3 15 16")


def test_oracle_methods_same_summary(env, capsys):
    _, lift, _ = run(["oracle", "--sig", "2,2", "--format", "csv"], capsys)
    _, direct, _ = run(["oracle", "--sig", "2,2", "--method", "direct-clique",
                        "--format", "csv"], capsys)
    assert lift.replace("radical-lift", "X") == direct.replace(
        "direct-clique", "X")


def test_matching_ground(env, capsys):
    code, out, _ = run(["matching", "--k", "3"], capsys)
    assert code == 0
    assert out.strip() == ("ground of 3 primes: 18 upward-closed families, "
                           "all with certified complement permutations")


def test_matching_signature(env, capsys):
    code, out, _ = run(["matching", "--sig", "2,2"], capsys)
    assert code == 0
    assert out.splitlines()[0] == (
        "signature 2,2: weight-preserving pairings on all 2 "
        "minimum-size families")


def test_matching_argument_exclusivity(env, capsys):
    code, _, err = run(["matching", "--k", "2", "--sig", "1,1"], capsys)
    assert code == 2
    assert "not both" in err
    code, _, err = run(["matching"], capsys)
    assert code == 2


def test_openprob_single_cell(env, capsys):
    code, out, _ = run(["openprob", "--mode", "omega", "--t", "2",
                        "--sig", "1,1,1"], capsys)
    assert code == 0
    assert out.strip() == ("m(1,1,1; t=2, restricted) = 3; 1 attaining "
                           "families; universe size 3")


def test_openprob_bigomega_letter(env, capsys):
    code, out, _ = run(["openprob", "--mode", "bigomega", "--t", "2",
                        "--sig", "2,1"], capsys)
    assert code == 0
    assert out.startswith("M(2,1; t=2, restricted) = 2")


def test_openprob_t1_gate(env, capsys):
    code, _, err = run(["openprob", "--mode", "omega", "--t", "1",
                        "--sig", "1,1"], capsys)
    assert code == 2
    assert "allow" in err
    code, out, _ = run(["openprob", "--mode", "omega", "--t", "1",
                        "--sig", "1,1", "--allow-t1"], capsys)
    assert code == 0
    assert "note:" in out


def test_openprob_sweep_csv(env, capsys):
    code, out, _ = run(["openprob", "--mode", "omega", "--t", "2,3",
                        "--max-n", "2", "--format", "csv"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == ("signature,n,mode,t,maximality,universe_size,"
                        "status,value,attaining_count,error")
    assert len(lines) == 1 + 5 * 2  # five signatures, two t values


def test_openprob_usage_errors(env, capsys):
    base = ["openprob", "--mode", "omega"]
    assert run(base + ["--sig", "1,1"], capsys)[0] == 2  # --t missing
    assert run(base + ["--t", "x", "--sig", "1,1"], capsys)[0] == 2
    assert run(base + ["--t", "2"], capsys)[0] == 2  # no sig, no sweep
    assert run(base + ["--t", "2", "--sig", "1,1", "--max-n", "2"],
               capsys)[0] == 2
    assert run(base + ["--t", "2,3", "--sig", "1,1"], capsys)[0] == 2


def test_usage_errors(env, capsys):
    code, _, err = run(["bound"], capsys)
    assert code == 2
    assert "error:" in err
    assert run(["bound", "--sig", "1,1", "--n", "6"], capsys)[0] == 2
    assert run(["bound", "--sig", "a,b"], capsys)[0] == 2
    assert run(["bound", "--sig", "0,1"], capsys)[0] == 2


def test_resource_exit_codes(env, capsys):
    code, _, err = run(["antichains", "--k", "9"], capsys)
    assert code == 3
    assert "resource limit" in err
    assert run(["oracle", "--sig", "1,1,1,1,1,1,1"], capsys)[0] == 3


def test_universe_cap_via_env(env, capsys, monkeypatch):
    monkeypatch.setenv("DIVINT_UNIVERSE_CAP", "1")
    code, _, err = run(["openprob", "--mode", "omega", "--t", "2",
                        "--sig", "1,1,1"], capsys)
    assert code == 3
    assert "universe" in err


def test_version_flag(env, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == __version__


def test_integer_and_signature_agree(env, capsys):
    _, by_n, _ = run(["extremal", "--n", "420", "--list", "--format", "json"],
                     capsys)
    _, by_sig, _ = run(["extremal", "--sig", "2,1,1,1", "--list",
                        "--format", "json"], capsys)
    assert by_n == by_sig


def test_thread_count_never_changes_json(env, capsys):
    args = ["verify", "--max-n", "2", "--max-exp", "2", "--format", "json"]
    _, one, _ = run(args + ["--threads", "1"], capsys)
    _, four, _ = run(args + ["--threads", "4"], capsys)
    assert one == four
    doc = json.loads(one)
    assert "threads" not in doc["parameters"]


def test_config_file_env_flag_precedence(env, capsys, monkeypatch):
    (env / "divisor-intersect.toml").write_text('format = "json"\n')
    _, out, _ = run(["bound", "--sig", "1,1"], capsys)
    assert out.startswith("{")  # config file applied
    monkeypatch.setenv("DIVINT_FORMAT", "csv")
    _, out, _ = run(["bound", "--sig", "1,1"], capsys)
    assert out.splitlines()[0] == "signature,min_size"  # env beats file
    _, out, _ = run(["bound", "--sig", "1,1", "--format", "text"], capsys)
    assert out == "2\n"  # flag beats env


def test_bad_config_file_is_a_usage_error(env, capsys):
    (env / "divisor-intersect.toml").write_text("surprise = 1\n")
    code, _, err = run(["bound", "--sig", "1,1"], capsys)
    assert code == 2
    assert "surprise" in err


def test_cache_dir_round_trip(env, capsys):
    cache = env / "cache"
    args = ["antichains", "--k", "4", "--cache-dir", str(cache)]
    _, first, _ = run(args, capsys)
    assert (cache / "antichains-k4.json").is_file()
    _, second, _ = run(args, capsys)
    assert first == second
    _, bypass, _ = run(args + ["--no-cache"], capsys)
    assert bypass == first


def test_verify_text_and_exit(env, capsys):
    code, out, _ = run(["verify", "--max-n", "2", "--max-exp", "1"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("PASS ") for line in lines[:-1])
    assert lines[-1].endswith("0 failed")


def test_verify_failure_exits_4(env, capsys, monkeypatch):
    real = lattice.min_size_bound
    monkeypatch.setattr(lattice, "min_size_bound", lambda sig: real(sig) + 1)
    code, out, _ = run(["verify", "--max-n", "2", "--max-exp", "1"], capsys)
    assert code == 4
    assert "FAIL min-size-equality" in out
