import json

from g2ks.cli import main
from g2ks.errors import InvariantError
from g2ks.ratfunc import RatFunc, ratfunc_from_json
from g2ks.poly import X


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_transition_json_round_trip(capsys):
    code, out, _ = run_cli(capsys, "transition", "--from", "3,3", "--to", "6,2")
    assert code == 0
    data = json.loads(out)
    assert data["from"] == {"n": 3, "m": 3}
    assert data["matrix"]["rows"] == 3 and data["matrix"]["cols"] == 2
    entry = ratfunc_from_json(data["matrix"]["entries"][1][0])
    assert entry == RatFunc(2 - X, 3)


def test_basis_schema(capsys):
    code, out, _ = run_cli(capsys, "basis", "--n", "6", "--m", "2")
    assert code == 0
    data = json.loads(out)
    kinds = [v["kind"] for v in data["vectors"]]
    assert kinds == ["v", "v'", "v"]
    weights = [c["weight"] for c in data["vectors"][0]["coeffs"]]
    assert weights == sorted(weights)
    for vec in data["vectors"]:
        for coeff in vec["coeffs"]:
            ratfunc_from_json(coeff["value"])  # parses


def test_eigenvalues_text_and_json(capsys):
    code, out, _ = run_cli(capsys, "eigenvalues", "--n", "3", "--m", "3")
    assert code == 0 and "slot 0" in out and "slot 1" in out
    code, out, _ = run_cli(capsys, "eigenvalues", "--n", "3", "--m", "3", "--eps", "1", "--json")
    assert code == 0
    data = json.loads(out)
    assert [s["j"] for s in data["slots"]] == [0]


def test_amatrix_block(capsys):
    code, out, _ = run_cli(capsys, "amatrix", "--n", "6", "--m", "2", "--eps", "0")
    assert code == 0
    data = json.loads(out)
    assert data["slots"] == [0, 2]
    assert data["matrix"]["rows"] == 2


def test_reducibility_with_scan(capsys):
    code, out, _ = run_cli(
        capsys, "reducibility", "--s", "2/3", "--eps", "1", "--scan", "--bound", "10"
    )
    assert code == 0
    data = json.loads(out)
    assert data["reducible"] is True
    assert data["scan"]
    code, out, _ = run_cli(capsys, "reducibility", "--s", "3/2", "--eps", "0", "--scan", "--bound", "10")
    data = json.loads(out)
    assert data["reducible"] is False and data["scan"] == []


def test_classify_labels(capsys):
    code, out, _ = run_cli(capsys, "classify", "--s", "3/2", "--eps", "0")
    assert code == 0
    assert json.loads(out)["labels"] == ["complementary-series", "unitary-axis"]
    code, out, _ = run_cli(capsys, "classify", "--s", "axis", "--eps", "1")
    assert json.loads(out)["labels"] == ["unitary-axis"]


def test_subrep_members(capsys):
    code, out, _ = run_cli(capsys, "subrep", "--name", "double-ladder", "--bound", "8")
    assert code == 0
    data = json.loads(out)
    members = {(p["n"], p["m"]) for p in data["members"]}
    assert (0, 0) in members and (4, 0) in members and (2, 0) not in members


def test_verify_command(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--nmax", "6", "--suites", "recurrences,appendix", "--json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["failure_count"] == 0
    assert "norm_formula_arbitration" in data


def test_lattice_ascii(capsys):
    code, out, _ = run_cli(capsys, "lattice", "--eps", "1", "--s", "2/3", "--bound", "8")
    assert code == 0
    assert "ladder" in out and "m=0" in out


def test_lattice_svg_with_csv_alongside(tmp_path, capsys):
    target = tmp_path / "diagram.svg"
    code, out, _ = run_cli(
        capsys,
        "lattice", "--eps", "1", "--s", "2/3", "--bound", "8",
        "--format", "svg", "--out", str(target),
    )
    assert code == 0
    assert target.exists()
    svg_text = target.read_text()
    assert svg_text.startswith("<?xml")
    csv_file = tmp_path / "diagram.csv"
    assert csv_file.exists()
    header = csv_file.read_text().splitlines()[0]
    assert header == "n,m,slot,order,highlighted"


def test_lattice_svg_requires_out(capsys):
    code, _out, err = run_cli(capsys, "lattice", "--eps", "1", "--s", "2/3", "--format", "svg")
    assert code == 2
    assert "error" in err


def test_table_csv_contains_kernel_families(capsys):
    code, out, _ = run_cli(
        capsys,
        "table", "--query", "valuations", "--s", "2", "--eps", "1",
        "--nmax", "16", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,m,j,eps,value"
    rows = {tuple(line.split(",")[:4]): line.split(",")[4] for line in lines[1:]}
    assert rows[("0", "2", "0", "1")] == '"1"'  # kernel family member
    assert rows[("2", "0", "0", "1")] == '"0"'  # anchor


def test_table_json_schema(capsys):
    code, out, _ = run_cli(
        capsys, "table", "--query", "eigenvalues", "--eps", "0", "--nmax", "8"
    )
    assert code == 0
    data = json.loads(out)
    for row in data["rows"]:
        assert row["eps"] == 0
        ratfunc_from_json(row["value"])
    keys = [(r["n"], r["m"], r["j"]) for r in data["rows"]]
    assert keys == sorted(keys)


def test_determinism_byte_identical(capsys):
    _, first, _ = run_cli(capsys, "table", "--query", "eigenvalues", "--nmax", "8")
    _, second, _ = run_cli(capsys, "table", "--query", "eigenvalues", "--nmax", "8")
    assert first == second
    _, a1, _ = run_cli(capsys, "lattice", "--eps", "0", "--s", "1/3", "--bound", "10")
    _, a2, _ = run_cli(capsys, "lattice", "--eps", "0", "--s", "1/3", "--bound", "10")
    assert a1 == a2


def test_svg_determinism(tmp_path, capsys):
    one = tmp_path / "one.svg"
    two = tmp_path / "two.svg"
    for target in (one, two):
        code, _, _ = run_cli(
            capsys,
            "lattice", "--eps", "0", "--s", "1/3", "--bound", "8",
            "--format", "svg", "--out", str(target),
        )
        assert code == 0
    assert one.read_bytes() == two.read_bytes()


def test_precondition_exit_code(capsys):
    code, _, err = run_cli(capsys, "eigenvalues", "--n", "2", "--m", "1")
    assert code == 2 and "error" in err
    code, _, err = run_cli(capsys, "reducibility", "--s", "0.5", "--eps", "0")
    assert code == 2
    code, _, err = run_cli(capsys, "subrep", "--name", "qds", "--k", "5")
    assert code == 2
    code, _, err = run_cli(capsys, "eigenvalues", "--n", "1", "--m", "1")
    assert code == 2  # (1,1) does not occur


def test_invariant_exit_code(monkeypatch, capsys):
    def boom(args):
        raise InvariantError("synthetic breach")

    monkeypatch.setattr("g2ks.cli.cmd_classify", boom)
    code, _, err = run_cli(capsys, "classify", "--s", "1/2", "--eps", "0")
    assert code == 3 and "invariant" in err


def test_threads_env_accepted(monkeypatch, capsys):
    monkeypatch.setenv("G2KS_THREADS", "2")
    code, out, _ = run_cli(capsys, "table", "--query", "eigenvalues", "--nmax", "6")
    assert code == 0
    monkeypatch.setenv("G2KS_THREADS", "1")
    _, serial, _ = run_cli(capsys, "table", "--query", "eigenvalues", "--nmax", "6")
    assert out == serial


def test_lattice_at_irreducible_point_all_regular(capsys):
    code, out, _ = run_cli(capsys, "lattice", "--eps", "0", "--s", "3/2", "--bound", "12")
    assert code == 0
    assert "*" not in out
    body = [line for line in out.splitlines()[1:] if line.startswith("m=")]
    orders = set()
    for line in body:
        for cell in line.split()[1:]:
            orders.update(cell.split(","))
    assert orders <= {"0"}


def test_more_precondition_exit_codes(capsys):
    code, _, _ = run_cli(capsys, "amatrix", "--n", "0", "--m", "0", "--eps", "1")
    assert code == 2  # (0,0) has no odd-series slot
    code, _, _ = run_cli(capsys, "verify", "--suites", "nonsense")
    assert code == 2
    code, _, _ = run_cli(capsys, "verify", "--nmax", "4")
    assert code == 2
    code, _, _ = run_cli(capsys, "table", "--query", "valuations", "--nmax", "8")
    assert code == 2  # missing --s
    code, _, _ = run_cli(capsys, "transition", "--from", "0,0", "--to", "6,2")
    assert code == 2  # not a lattice neighbour


def test_transition_reflected_param(capsys):
    code, out, _ = run_cli(
        capsys, "transition", "--from", "0,0", "--to", "3,1", "--param", "3-s"
    )
    assert code == 0
    data = json.loads(out)
    entry = ratfunc_from_json(data["matrix"]["entries"][0][0])
    assert entry == RatFunc(3 - X)  # the reflection of s


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "eig.json"
    code, out, _ = run_cli(
        capsys, "eigenvalues", "--n", "3", "--m", "3", "--json", "--out", str(target)
    )
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["ktype"] == {"n": 3, "m": 3}


def test_table_empty_range_header_only(capsys):
    # nmax 0 leaves only (0,0), which has no odd-series slot
    code, out, _ = run_cli(
        capsys, "table", "--query", "eigenvalues", "--eps", "1",
        "--nmax", "0", "--format", "csv",
    )
    assert code == 0
    assert out == "n,m,j,eps,value\n"
