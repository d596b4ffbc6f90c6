import json

import pytest

from conftest import corpus_path
from relsing.cli import run


def ok(argv):
    code, out, err = run(argv)
    assert code == 0, err
    return out


def payload(argv):
    return json.loads(ok(argv + ["--format", "json", "--no-timing"]))["result"]


def test_mu_br_codimension_two_plane():
    res = payload(["mu-br", corpus_path("example_3_5"), "--f", "f0", "--variety", "V"])
    assert res["value"] == 3
    assert res["generators"][0] == "2*x1^2"


def test_le_number_brieskorn():
    res = payload(["le-number", corpus_path("example_4_4"), "--phi", "Phi", "--f", "ft",
                   "--at", "t=1/5"])
    assert (res["value"], res["milnor_phi"], res["polynomial"]) == (126, 630, "x*y + 1/5*z")


def test_multiplicity_of_zero_is_precondition_error():
    code, out, err = run(["multiplicity", corpus_path("example_4_4"), "--f", "zero"])
    assert code == 3 and out == "" and "zero polynomial" in err


def test_milnor_and_multiplicity():
    assert payload(["milnor", corpus_path("example_4_4"), "--f", "Phi"])["value"] == 630
    assert payload(["multiplicity", corpus_path("example_4_4"), "--f", "ft",
                    "--at", "t=1/5"])["value"] == 1


def test_tangency_and_quasihomog():
    res = payload(["tangency", corpus_path("example_3_1"), "--variety", "V"])
    assert res["value"] is True and len(res["checks"]) == 4
    res = payload(["tangency", corpus_path("example_3_5"), "--variety", "V"])
    assert res["value"] is True and len(res["checks"]) == 12
    res = payload(["quasihomog", corpus_path("example_3_1"), "--f", "Phi", "--weights", "w"])
    assert res["quasihomogeneous"] is True and res["degree"] == 6


def test_family_check_report():
    res = payload(["family-check", corpus_path("swallowtail"), "--F", "F", "--variety", "V",
                   "--arcs", "gamma"])
    assert res["conditions"]["2_r"]["status"] == "refuted-with-witness"
    assert res["conditions"]["3_r"]["status"] == "consistent-with-supplied-arcs"


def test_arc_test():
    res = payload(["arc-test", corpus_path("example_3_2"), "--F", "F", "--variety", "V",
                   "--arc", "alpha"])
    assert (res["strict"], res["weak"], res["inf"]) == ("fails", "holds", "5")


def test_radical_test():
    res = payload(["radical-test", corpus_path("example_3_1"), "--F", "F", "--variety", "V"])
    assert res["member"] is True and res["witness_power"] == 2


def test_split_check():
    res = payload(["split-check", corpus_path("example_3_5"), "--F", "F", "--variety", "V",
                   "--t0", "1/2", "--points", "q"])
    assert res["split"] is True and res["accounted_sum"] == 2 and res["conserved"] is False


def test_parameter_override():
    res = payload(["mu-br", corpus_path("example_3_1"), "--f", "f0", "--variety", "V",
                   "--set", "a=1"])
    assert res["value"] == "infinite"


def test_text_output_is_deterministic():
    argv = ["family-check", corpus_path("cusp"), "--F", "F4", "--variety", "V",
            "--arcs", "lt1,gt1,eq4", "--no-timing"]
    first = ok(argv)
    assert first == ok(argv)
    assert first.startswith("command: family-check")


def test_json_payload_is_deterministic():
    argv = ["mu-br", corpus_path("cusp"), "--f", "f5", "--variety", "V", "--format", "json"]
    a, b = json.loads(ok(argv)), json.loads(ok(argv))
    assert "elapsed_ms" in a
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert a == b


def test_bound_exceeded_exit_code():
    code, out, _ = run(["milnor", corpus_path("example_4_4"), "--f", "Phi",
                        "--dim-bound", "100"])
    assert code == 4 and "exceeds-bound" in out


@pytest.mark.parametrize("argv", [
    [],
    ["nonsense", "file"],
    ["milnor"],
    ["milnor", "/nonexistent/file.germ", "--f", "f"],
    ["milnor", "FILE", "--trunc", "0"],
    ["split-check", "FILE", "--F", "F4", "--variety", "V"],
    ["mu-br", "FILE", "--f", "nope", "--variety", "V"],
])
def test_usage_errors(argv):
    argv = [corpus_path("cusp") if a == "FILE" else a for a in argv]
    code, out, err = run(argv)
    assert code == 1 and out == "" and err.startswith("error:")


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.germ"
    bad.write_text("ring x, y;\npoly f = x +* y;\n")
    code, _, err = run(["milnor", str(bad), "--f", "f"])
    assert code == 2 and "line 2" in err


def test_tangency_failure_at_load(tmp_path):
    bad = tmp_path / "bad.germ"
    bad.write_text("ring x, y;\npoly Phi = x^3 - y^2;\nvfield v = (1, 0);\n"
                   "variety V = Phi with v;\npoly f = x^2 + y^2;\n")
    code, _, err = run(["milnor", str(bad), "--f", "f"])
    assert code == 3 and "#1" in err


def test_tangency_command_reports_failures(tmp_path):
    bad = tmp_path / "bad.germ"
    bad.write_text("ring x, y;\npoly Phi = x^3 - y^2;\nvfield e = (2*x, 3*y);\n"
                   "vfield v = (1, 0);\nvariety V = Phi with e, v;\n")
    res = payload(["tangency", str(bad), "--variety", "V"])
    assert [c["tangent"] for c in res["checks"]] == [True, False]
    assert res["value"] is False


def test_uninstantiated_parameter(tmp_path):
    src = tmp_path / "p.germ"
    src.write_text("ring x, y;\nparam a;\npoly f = x^2 + a*y^2;\n")
    assert run(["milnor", str(src), "--f", "f"])[0] == 1
    assert payload(["milnor", str(src), "--f", "f", "--set", "a=1"])["value"] == 1
