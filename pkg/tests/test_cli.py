import pytest

from lrckit.algebra import Matrix
from lrckit.cli import TABLE_HEADER, main, sweep_triples, table_row


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_bound(capsys):
    code, out = run(capsys, "bound", "9", "6", "3")
    assert code == 0
    assert "gopalan=3\nip=2\nimproved=2\n" in out.out
    code, out = run(capsys, "bound", "9", "6", "3", "--csv")
    assert out.out.splitlines() == ["n,k,r,n1,n2,gopalan,ip,improved,applicable", "9,6,3,3,3,3,2,2,1"]


def test_bound_rejects_bad_params(capsys):
    code, out = run(capsys, "bound", "5", "5", "2")
    assert code == 2 and "error" in out.err


def test_psi(capsys):
    code, out = run(capsys, "psi", "3", "3", "1", "2")
    assert code == 0 and "psi=8\n" in out.out and "closed_form=7\n" in out.out


def test_construct_is_deterministic(capsys):
    _, a = run(capsys, "construct", "tamo-barg", "10", "5", "3", "13")
    _, b = run(capsys, "construct", "tamo-barg", "10", "5", "3", "13")
    assert a.out == b.out
    header, matrix = a.out.split("\n\n")
    assert "kind=tamo_barg" in header and "d_lower=4" in header
    assert Matrix.from_text(matrix).shape == (5, 10)


def test_construct_error(capsys):
    code, out = run(capsys, "construct", "tamo-barg", "9", "5", "3")
    assert code == 2 and "s != 0, 1" in out.err


@pytest.mark.parametrize("args", [("tamo-barg", "10", "5", "3"), ("modified", "9", "5", "5")])
def test_construct_verify_roundtrip(capsys, tmp_path, args):
    path = tmp_path / "G.txt"
    assert main(["construct", *args, "--out", str(path)]) == 0
    assert (tmp_path / "G.txt.meta").exists()
    code, out = run(capsys, "verify", str(path))
    assert code == 0, out.out
    assert "passed=yes" in out.out and "d=4\n" in out.out


def test_graph_and_export(capsys, tmp_path):
    code, out = run(capsys, "graph", "name:petersen")
    assert code == 0 and "code=[15,6,5]" in out.out and "rate_lower=1/3" in out.out
    H = tmp_path / "H.txt"
    assert main(["export", "name:k33", "--format", "matrix", "--out", str(H)]) == 0
    capsys.readouterr()
    code, out = run(capsys, "verify", str(H), "--parity", "--d", "4", "--r", "2", "--t", "2")
    assert code == 0 and "passed=yes" in out.out


def test_graph_gen_needs_seed(capsys):
    code, out = run(capsys, "graph", "gen:3,5,10")
    assert code == 2
    code, out = run(capsys, "graph", "gen:3,5,10", "--seed", "42")
    assert code == 0 and "girth=5" in out.out


def test_verify_inflated_claim_exits_nonzero(capsys, tmp_path):
    H = tmp_path / "H.txt"
    main(["export", "name:k33", "--format", "matrix", "--out", str(H)])
    code, out = run(capsys, "verify", str(H), "--parity", "--d", "5", "--r", "2", "--t", "2")
    assert code == 1 and "verdict.distance=fail" in out.out


def test_verify_missing_file(capsys, tmp_path):
    code, _ = run(capsys, "verify", str(tmp_path / "nope.txt"))
    assert code == 2


def test_table(capsys):
    code, out = run(capsys, "table", "--n-min", "9", "--n-max", "9", "--r-min", "3", "--r-max", "3")
    lines = out.out.splitlines()
    assert lines[0] == TABLE_HEADER
    assert "9,6,3,3,3,3,2,2,1,2,0,1,modified" in lines
    code, out = run(capsys, "table", "--n-min", "5", "--n-max", "4")
    assert out.out == TABLE_HEADER + "\n"


def test_table_row_regimes():
    assert table_row(20, 14, 5).endswith(",tamo_barg")
    assert table_row(10, 5, 3).endswith(",")


def test_table_workers_match_serial(capsys):
    _, a = run(capsys, "table", "--n-max", "14", "--only-applicable")
    _, b = run(capsys, "table", "--n-max", "14", "--only-applicable", "--workers", "2")
    assert a.out == b.out
    assert len(sweep_triples(3, 14, 1, 4, True)) == len(a.out.splitlines()) - 1
