import json
import os

import pytest

from parhox.cli import main
from parhox.errors import SchemaError
from parhox.problems import (bundled_fixtures, build_instance, fixture_dir,
                             load_fixture, parse_spec)


def fixture_path(name):
    return os.path.join(fixture_dir(), name)


def group_path(name):
    return os.path.join(fixture_dir(), "groups", name)


def test_all_bundled_fixtures_parse_and_build():
    names = bundled_fixtures()
    assert len(names) == 11
    for name in names:
        spec = load_fixture(name)
        inst = build_instance(spec)
        assert inst.lam.algebra.dim >= 1


def test_parse_spec_minimal():
    spec = parse_spec({"field": {"kind": "Q"},
                       "group": {"order": 2, "cayley": [[0, 1], [1, 0]]}})
    assert spec.group.n == 2
    assert spec.sigma is None
    assert spec.module == "regular"


def test_parse_spec_rejects_bad_prime():
    with pytest.raises(SchemaError):
        parse_spec({"field": {"kind": "Fp", "p": 4},
                    "group": {"cayley": [[0]]}})


def test_parse_spec_rejects_bad_sigma_shape():
    with pytest.raises(SchemaError):
        parse_spec({"field": {"kind": "Q"},
                    "group": {"cayley": [[0, 1], [1, 0]]},
                    "sigma": [["1", "1"]]})


def test_parse_spec_action_requires_sigma():
    with pytest.raises(SchemaError):
        parse_spec({"field": {"kind": "Q"},
                    "group": {"cayley": [[0, 1], [1, 0]]},
                    "action": {"algebra": {"dim": 1, "unit": ["1"],
                                           "sc": [[0, 0, 0, "1"]]},
                               "one_g": [["1"], ["1"]],
                               "theta": [[["1"]], [["1"]]]}})


def test_cli_build_kpar_z2(capsys):
    code = main(["build-kpar", group_path("z2.json")])
    out = capsys.readouterr().out
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["dim"] == 3


def test_cli_build_kpar_with_sigma(tmp_path, capsys):
    sig = tmp_path / "sigma.json"
    sig.write_text(json.dumps([["1", "1"], ["1", "2"]]))
    code = main(["build-kpar", group_path("z2.json"), "--sigma", str(sig)])
    out = capsys.readouterr().out
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["dim"] == 3


def test_cli_validate(capsys):
    code = main(["validate", fixture_path("z3_kappa2_q.json")])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0 and doc["ok"]
    assert doc["result"]["crossed_product"]["dim"] == 4


def test_cli_build_crossed(capsys):
    code = main(["build-crossed", fixture_path("z2_twist2_q.json")])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["result"]["dim"] == 3
    assert doc["result"]["universal_base"]


def test_cli_hochschild(capsys):
    code = main(["hochschild", fixture_path("z2_trivial_f2.json"),
                 "--max-n", "2"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["result"]["oracle_agreement"]
    assert doc["result"]["dims"]["H0"] == 3
    assert doc["result"]["dims"]["H1"] == 2      # F2[u]/(u^3 - u) pattern


def test_cli_partial_homology(capsys):
    code = main(["partial-homology", fixture_path("z2_trivial_q.json"),
                 "--max-n", "2"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["result"]["dims"]["H1"] == 0      # semisimple over Q


def test_cli_spectral(capsys):
    code = main(["spectral", fixture_path("z3_kappa2_q.json"),
                 "--max-p", "2", "--max-q", "2"])
    out = capsys.readouterr().out
    assert code == 0
    doc = json.loads(out[:out.rindex("}") + 1])
    assert doc["result"]["checks"]["ok"]


def test_cli_error_is_machine_readable(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"field": {"kind": "Fp", "p": 9},
                               "group": {"cayley": [[0]]}}))
    code = main(["validate", str(bad)])
    doc = json.loads(capsys.readouterr().out)
    assert code == 2
    assert doc["error"]["type"] == "SchemaError"


def test_cli_missing_file(capsys):
    code = main(["validate", "/nonexistent/problem.json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 2
    assert not doc["ok"]


def test_report_byte_identical_modulo_timing(capsys):
    main(["hochschild", fixture_path("z2_trivial_q.json"), "--max-n", "1"])
    out1 = capsys.readouterr().out
    main(["hochschild", fixture_path("z2_trivial_q.json"), "--max-n", "1"])
    out2 = capsys.readouterr().out
    d1, d2 = json.loads(out1), json.loads(out2)
    d1.pop("timing_seconds")
    d2.pop("timing_seconds")
    assert d1 == d2


def test_json_out_flag(tmp_path, capsys):
    dest = tmp_path / "report.json"
    code = main(["--json-out", str(dest), "build-kpar", group_path("z3.json")])
    capsys.readouterr()
    assert code == 0
    doc = json.loads(dest.read_text())
    assert doc["result"]["dim"] == 8


def test_env_cap_override(monkeypatch, capsys):
    monkeypatch.setenv("PARHOX_CAP", "2")
    code = main(["build-kpar", group_path("z3.json")])
    doc = json.loads(capsys.readouterr().out)
    assert code == 2
    assert doc["error"]["type"] == "SizeLimit"


def test_cli_malformed_json_is_machine_readable(tmp_path, capsys):
    bad = tmp_path / "broken.json"
    bad.write_text("{not json")
    code = main(["validate", str(bad)])
    doc = json.loads(capsys.readouterr().out)
    assert code == 2
    assert doc["error"]["type"] == "IOError"


def test_problem_file_cap_is_honored(tmp_path, capsys):
    # a tiny chain cap in the problem options must trip SizeLimit
    src = json.loads(open(fixture_path("z2_dual_q.json")).read())
    src["options"]["cap"] = 4
    p = tmp_path / "capped.json"
    p.write_text(json.dumps(src))
    code = main(["hochschild", str(p), "--max-n", "2"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 2
    assert doc["error"]["type"] == "SizeLimit"


def test_report_carries_scope_note(capsys):
    code = main(["spectral", fixture_path("z2_trivial_q.json"),
                 "--max-p", "1", "--max-q", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "differentials d_r are not constructed" in out
