"""Command-line interface tests: exit codes, report schema, option handling."""

import json

import pytest

from actionpairs import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_verify_gn3_passes(capsys):
    code, rep = run_json(capsys, "verify-presentation", "--family", "Gn",
                         "--n", "3")
    assert code == cli.EXIT_PASS
    assert rep["schema"] == "v1"
    assert rep["verdicts"]["presented_size"] == 6
    assert rep["config"]["seed"] == 0
    assert "node_cap" in rep["config"]


def test_verify_fl93_expected_failure(capsys):
    code, rep = run_json(capsys, "verify-presentation", "--family", "SubA",
                         "--instance", "fl93")
    assert code == cli.EXIT_FAIL
    assert rep["verdicts"]["presented_size"] == 15
    assert rep["target_size"] == 12


def test_verify_fl93_enlarged_passes(capsys):
    code, rep = run_json(capsys, "verify-presentation", "--family",
                         "SubA_enlarged", "--instance", "fl93")
    assert code == cli.EXIT_PASS
    assert rep["verdicts"]["presented_size"] == 12


def test_verify_wreath_with_monoid(capsys):
    code, rep = run_json(capsys, "verify-presentation", "--family", "MwrPTn",
                         "--n", "2", "--monoid", "c2")
    assert code == cli.EXIT_PASS
    assert rep["target_size"] == 25


def test_verify_bad_input(capsys):
    code, _ = run(capsys, "verify-presentation", "--family", "Gn")
    assert code == cli.EXIT_BAD_INPUT
    code, _ = run(capsys, "verify-presentation", "--family", "nope", "--n", "2")
    assert code == cli.EXIT_BAD_INPUT


def test_verify_model_families(capsys):
    code, rep = run_json(capsys, "verify-presentation", "--family",
                         "LX_truncated", "--alphabet", "xy", "--length", "2")
    assert code == cli.EXIT_PASS and rep["model_check"] is True


def test_show_relations(capsys):
    code, rep = run_json(capsys, "verify-presentation", "--family", "Gn",
                         "--n", "2", "--show-relations")
    assert code == cli.EXIT_PASS
    assert rep["relation_list"] == [["s1 s1", "1"]]


def test_classify_pair_text_and_json(capsys):
    code, rep = run_json(capsys, "classify-pair", "--ambient", "PT2",
                         "--U", "E2", "--S", "T")
    assert code == cli.EXIT_PASS
    assert rep["pair"]["strong"] is True and rep["pair"]["proper"] is False
    assert rep["product_size"] == 9


def test_classify_pair_with_cover_and_embed(capsys):
    code, rep = run_json(capsys, "classify-pair", "--ambient", "MwrPT2",
                         "--M", "c2", "--U", "Mn", "--S", "T",
                         "--cover", "--embed")
    assert code == cli.EXIT_PASS
    assert rep["cover"]["proper"] and rep["cover"]["surjective"]
    assert rep["embed"]["injective"] and rep["embed"]["homomorphic"]


def test_classify_pair_with_omega_rule(capsys):
    code, rep = run_json(capsys, "classify-pair", "--ambient", "PT2",
                         "--U", "M0n", "--S", "PT", "--omega", "submonoids")
    assert code == cli.EXIT_PASS
    assert rep["omega"]["matches_theta"] is True


def test_classify_pair_bad_inputs(capsys):
    code, _ = run(capsys, "classify-pair", "--ambient", "XX2",
                  "--U", "E", "--S", "T")
    assert code == cli.EXIT_BAD_INPUT
    code, _ = run(capsys, "classify-pair", "--ambient", "PT2",
                  "--U", "E3", "--S", "T")
    assert code == cli.EXIT_BAD_INPUT


def test_node_cap_env_override(capsys, monkeypatch):
    import actionpairs.fmonoid as fm
    old = fm.NODE_CAP
    try:
        monkeypatch.setenv("ACTIONPAIR_NODE_CAP", "12345")
        code, rep = run_json(capsys, "verify-presentation", "--family", "Gn",
                             "--n", "2")
        assert rep["config"]["node_cap"] == 12345
        # a starved budget forces the inconclusive exit, never a pass
        monkeypatch.setenv("ACTIONPAIR_NODE_CAP", "40")
        code, rep = run_json(capsys, "verify-presentation", "--family", "Tn",
                             "--n", "4")
        assert code == cli.EXIT_BOUND
        assert rep["verdicts"]["size_match"] is None
    finally:
        fm.set_node_cap(old)


def test_classify_tuple_pair_strong(capsys):
    code, rep = run_json(capsys, "classify-pair", "--ambient", "MwrPT2",
                         "--M", "c2", "--U", "M0n", "--S", "T")
    assert code == cli.EXIT_PASS
    assert rep["pair"]["strong"] is True and rep["pair"]["proper"] is False


def test_custom_algebra_from_json(capsys, tmp_path):
    import json as _json
    path = tmp_path / "alg.json"
    path.write_text(_json.dumps({"carrier": 3, "ops": []}))
    code, rep = run_json(capsys, "verify-presentation", "--family", "SubA",
                         "--instance", str(path))
    assert code == cli.EXIT_PASS
    assert rep["verdicts"]["presented_size"] == 8   # the subset semilattice


def test_entry_point_runs(capsys):
    with pytest.raises(SystemExit):
        cli.build_parser().parse_args([])
    capsys.readouterr()
