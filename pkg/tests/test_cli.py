import json

import pytest

from tournament_entropy import __version__
from tournament_entropy.cli import main
from tournament_entropy.core import Tournament, consecutive_rotational


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_text_and_json(capsys):
    code, out, err = run(capsys, "gen", "--family", "consecutive", "--n", "5")
    assert code == 0
    assert Tournament.from_text(out.strip()) == consecutive_rotational(5)
    assert f"tournament-entropy {__version__} seed=0" in err
    code, out, _ = run(capsys, "gen", "--family", "rotational", "--n", "7", "--symbol", "1,2,4", "--format", "json")
    assert json.loads(out)["n"] == 7


def test_gen_random_is_seeded(capsys):
    a = run(capsys, "gen", "--family", "random", "--n", "8", "--seed", "4")[1]
    b = run(capsys, "gen", "--family", "random", "--n", "8", "--seed", "4")[1]
    assert a == b


def test_bad_input_exit_code(capsys):
    code, _, err = run(capsys, "gen", "--family", "qr", "--n", "5")
    assert code == 2 and "error:" in err
    with pytest.raises(SystemExit):
        main(["gen"])


def test_enum(capsys):
    assert run(capsys, "enum", "--n", "5", "--count-only")[1].strip() == "12"
    assert run(capsys, "enum", "--n", "7", "--regular", "--count-only")[1].strip() == "3"
    code, out, _ = run(capsys, "enum", "--n", "4", "--format", "csv")
    assert out.splitlines()[0] == "bits,scores,raw2,raw3,raw4" and len(out.splitlines()) == 5
    assert run(capsys, "enum", "--n", "9")[0] == 2


def test_entropy_formats(capsys):
    code, out, _ = run(capsys, "entropy", "--tournament", "n=3 bits=0", "--alpha", "2", "--raw", "--format", "json")
    row = json.loads(out)[0]
    assert code == 0 and row["raw2"] == 5
    assert float(row["exact"]) == pytest.approx(float(row["numeric"]))
    code, out, _ = run(capsys, "entropy", "--family", "consecutive", "--n", "5", "--alpha", "4")
    assert "UNDEFINED" in out
    code, out, _ = run(capsys, "entropy", "--family", "qr", "--n", "7", "--alpha", "2.5", "--format", "csv")
    assert out.startswith("tournament,alpha,numeric")
    assert run(capsys, "entropy", "--family", "qr", "--n", "7", "--alpha", "2.5", "--exact")[0] == 2


def test_entropy_from_file(tmp_path, capsys):
    f = tmp_path / "ts.txt"
    f.write_text("n=3 bits=0\n" + consecutive_rotational(3).to_json() + "\n")
    code, out, _ = run(capsys, "entropy", "--file", str(f), "--format", "json")
    assert code == 0 and len(json.loads(out)) == 2


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--tournament", "n=3 bits=5", "--format", "json")
    obj = json.loads(out)
    assert obj["char_poly"] == ["1", "-3", "3", "0"] and len(obj["normalized_eigenvalues"]) == 3


def test_vn_methods(capsys):
    _, out, _ = run(capsys, "vn", "--n", "3", "--edges", "0-1,1-2", "--method", "eigen")
    eig = json.loads(out)["estimate"]
    _, out, _ = run(capsys, "vn", "--n", "3", "--edges", "0-1,1-2")
    assert json.loads(out)["estimate"] == pytest.approx(eig, abs=1e-6)
    _, out1, _ = run(capsys, "vn", "--n", "3", "--arcs", "0>1,1>2,2>0", "--method", "walk", "--trials", "2000")
    _, out2, _ = run(capsys, "vn", "--n", "3", "--arcs", "0>1,1>2,2>0", "--method", "walk", "--trials", "2000")
    assert out1 == out2
    assert run(capsys, "vn", "--n", "3", "--arcs", "")[0] == 2


def test_hasse(capsys, tmp_path):
    code, out, _ = run(capsys, "hasse", "--n", "5", "--alpha", "3")
    assert code == 0 and out.startswith("digraph H3")
    dest = tmp_path / "h.csv"
    run(capsys, "hasse", "--n", "4", "--format", "csv", "--out", str(dest))
    assert dest.read_text().splitlines()[0] == "label,raw2,raw3,raw4"


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "small-tables")
    assert code == 0 and out.startswith("PASS")


@pytest.mark.parametrize("which", ["t4", "t5", "counts", "regular"])
def test_tables(capsys, which):
    code, out, _ = run(capsys, "tables", which)
    assert code == 0 and len(out.splitlines()) > 1


def test_tables_conjecture(capsys):
    code, out, _ = run(capsys, "tables", "conjecture", "--n", "5", "--alpha", "3")
    assert code == 0 and out.splitlines()[0].startswith("n,alpha,h,S")
