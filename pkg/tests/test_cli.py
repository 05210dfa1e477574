import json
from importlib import resources

import jsonschema
import pytest

from lapspec.cli import main
from lapspec.graphs import complete_graph, cycle_graph, write_graph
from lapspec.partitions import default_odd_walk_family, walk_family_to_dict


def _schema(name: str) -> dict:
    ref = resources.files("lapspec.schemas").joinpath(f"{name}.schema.json")
    return json.loads(ref.read_text())


@pytest.fixture()
def k5_file(tmp_path):
    path = tmp_path / "k5.json"
    write_graph(complete_graph(5), path)
    return str(path)


@pytest.fixture()
def c4_file(tmp_path):
    path = tmp_path / "c4.json"
    write_graph(cycle_graph(4), path)
    return str(path)


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# happy paths, validated against the shipped schemas


def test_spectrum_command(capsys, k5_file):
    code, out, err = _run(capsys, "spectrum", "--input", k5_file)
    assert code == 0 and err == ""
    payload = json.loads(out)
    jsonschema.validate(payload, _schema("spectrum"))
    assert payload["n"] == 5
    assert payload["lambda1"] == pytest.approx(1.25)
    assert payload["rho"] == pytest.approx(0.25)


def test_constants_command(capsys, k5_file):
    code, out, _ = _run(capsys, "constants", "--input", k5_file)
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, _schema("constants"))
    assert payload["h"]["value"] == pytest.approx(0.75)
    assert payload["hbar"]["value"] == pytest.approx(0.6)
    assert payload["greedy_dual_lower"] >= 0.5
    assert payload["xi"] is not None


def test_constants_on_bipartite_has_no_xi(capsys, c4_file):
    code, out, _ = _run(capsys, "constants", "--input", c4_file)
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, _schema("constants"))
    assert payload["xi"] is None
    assert payload["hbar"]["value"] == pytest.approx(1.0)


def test_constants_with_walk_file(capsys, tmp_path, k5_file):
    fam = default_odd_walk_family(complete_graph(5))
    walks_path = tmp_path / "walks.json"
    walks_path.write_text(json.dumps(walk_family_to_dict(fam)))
    code, out, _ = _run(capsys, "constants", "--input", k5_file, "--walks", str(walks_path))
    assert code == 0
    payload = json.loads(out)
    assert payload["xi"]["value"] >= 1.0


def test_bounds_command(capsys, k5_file):
    code, out, _ = _run(capsys, "bounds", "--input", k5_file, "--l-list", "2,3")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, _schema("bounds"))
    names = {r["name"] for r in payload["reports"]}
    assert "cheeger" in names and "dual_cheeger" in names
    assert payload["lambdaMax"] == pytest.approx(1.25)


def test_neighborhood_command(capsys, k5_file):
    code, out, _ = _run(capsys, "neighborhood", "--input", k5_file, "--l", "2")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, _schema("graph"))
    assert payload["n"] == 5
    # K_5 at order 2 gains loops
    assert any(i == j for i, j, _ in payload["edges"])


def test_curves_csv_default(capsys):
    code, out, _ = _run(
        capsys, "curves", "--family", "looped_pair", "--grid", "0.5,1.0", "--l-list", "1,2"
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == (
        "param,l,lower,upper_from_h,upper_from_h_applicable,upper_from_hbar,"
        "lambda1,lambdaMax"
    )
    assert len(lines) == 5


def test_curves_json(capsys):
    code, out, _ = _run(
        capsys,
        "curves",
        "--family",
        "complete",
        "--grid",
        "3:5:1",
        "--format",
        "json",
    )
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, _schema("curves"))
    assert [r["param"] for r in payload["rows"][::3]] == [3.0, 4.0, 5.0]


def test_walk_csv(capsys, k5_file):
    code, out, _ = _run(capsys, "walk", "--input", k5_file, "--steps", "5", "--l", "2")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "t,deviation,bound_rho,bound_hl"
    assert len(lines) == 7


def test_walk_json_custom_start(capsys, k5_file):
    code, out, _ = _run(
        capsys,
        "walk",
        "--input",
        k5_file,
        "--steps",
        "3",
        "--f",
        "1,0,0,0,-1",
        "--format",
        "json",
    )
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, _schema("walk"))
    assert len(payload["reports"]) == 4


def test_cml_command(capsys, k5_file, tmp_path):
    spread = tmp_path / "spread.csv"
    code, out, _ = _run(
        capsys,
        "cml",
        "--input",
        k5_file,
        "--eps",
        "0.8",
        "--steps",
        "100",
        "--transient",
        "20",
        "--trials",
        "2",
        "--spread-output",
        str(spread),
    )
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, _schema("sync"))
    assert payload["synchronized"] is True
    assert spread.read_text().startswith("t,max_spread\n")


# ---------------------------------------------------------------------------
# output handling


def test_output_flag_is_atomic(capsys, k5_file, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = _run(capsys, "spectrum", "--input", k5_file, "--output", str(target))
    assert code == 0
    assert out == ""  # nothing on stdout when writing a file
    json.loads(target.read_text())
    leftovers = [p for p in tmp_path.iterdir() if p.name.startswith(".lapspec-")]
    assert leftovers == []


def test_repeated_runs_are_byte_identical(capsys, k5_file):
    _, first, _ = _run(capsys, "bounds", "--input", k5_file)
    _, second, _ = _run(capsys, "bounds", "--input", k5_file)
    assert first == second


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.startswith("lapspec ")


# ---------------------------------------------------------------------------
# failure modes


def test_domain_error_exit_1(capsys, tmp_path):
    path = tmp_path / "disconnected.json"
    path.write_text(json.dumps({"n": 4, "edges": [[0, 1, 1.0], [2, 3, 1.0]]}))
    code, out, err = _run(capsys, "spectrum", "--input", str(path))
    assert code == 1
    assert err.startswith("error[Disconnected]")
    assert out == ""


def test_cap_exceeded_exit_1(capsys, k5_file):
    code, _, err = _run(capsys, "constants", "--input", k5_file, "--cap-h", "3")
    assert code == 1
    assert "error[SizeCapExceeded]" in err


def test_missing_file_exit_2(capsys):
    code, _, err = _run(capsys, "spectrum", "--input", "/nonexistent/g.json")
    assert code == 2
    assert err.startswith("usage error:")


def test_malformed_json_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{ this is not json")
    code, _, err = _run(capsys, "spectrum", "--input", str(path))
    assert code == 2


def test_unknown_family_exit_2(capsys):
    code, _, err = _run(capsys, "curves", "--family", "nosuch", "--grid", "1.0")
    assert code == 2
    assert "nosuch" in err


def test_bad_start_function_exit_2(capsys, k5_file):
    code, _, err = _run(capsys, "walk", "--input", k5_file, "--f", "1,2")
    assert code == 2
    assert "5 comma-separated" in err


def test_bad_order_exit_2(capsys, k5_file):
    code, _, _ = _run(capsys, "neighborhood", "--input", k5_file, "--l", "0")
    assert code == 2


def test_bad_map_exit_2(capsys, k5_file):
    code, _, err = _run(capsys, "cml", "--input", k5_file, "--eps", "0.5", "--map", "sine:1")
    assert code == 2
    assert "sine" in err


def test_bad_grid_exit_2(capsys):
    code, _, _ = _run(capsys, "curves", "--family", "complete", "--grid", "5:3:0")
    assert code == 2


def test_edge_list_input(capsys, tmp_path):
    path = tmp_path / "tri.txt"
    path.write_text("a b 1.0\nb c 1.0  # comment\na c 1.0\n")
    code, out, _ = _run(capsys, "spectrum", "--input", str(path))
    assert code == 0
    assert json.loads(out)["n"] == 3
