import json

import pytest
from hypothesis import given, settings

from artinshape import generators as gen
from artinshape.cli import main
from artinshape.serialize import (
    grid_rows,
    render_grid,
    shape_from_records,
    shape_to_records,
    tiling_to_records,
)
from artinshape.shapes import GradedShape

from conftest import shapes


@settings(max_examples=1000, deadline=None)
@given(shapes())
def test_round_trip(s):
    records = shape_to_records(s)
    assert shape_from_records(records) == s
    assert shape_from_records(json.loads(json.dumps(records))) == s
    keys = [(r["shift"], r["class"] != "F") for r in records]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    assert all(r["mult"] > 0 for r in records)


def test_records_example():
    s = gen.upper_case2(3)
    assert shape_to_records(s) == [
        {"shift": 0, "class": "F", "mult": 1},
        {"shift": 1, "class": "A", "mult": 1},
        {"shift": 2, "class": "F", "mult": 1},
    ]


def test_bad_records():
    with pytest.raises(ValueError):
        shape_from_records([{"shift": 0, "class": "F"}])
    with pytest.raises(ValueError):
        shape_from_records([{"shift": 0, "class": "Q", "mult": 1}])


def test_tiling_records_sorted():
    assert tiling_to_records([("b", 1), ("a", 1), ("z", 0)]) == [
        {"tile": "z", "shift": 0},
        {"tile": "a", "shift": 1},
        {"tile": "b", "shift": 1},
    ]


def column_totals(text):
    """Parse a rendered grid back into per-shift class counts."""
    lines = text.splitlines()
    header, body = lines[0], lines[1:]
    width = len(header.split()[-1])
    acc = {}
    for line in body:
        for col in range(0, (len(line) + 1) // (width + 1) + 1):
            cell = line[col * (width + 1): col * (width + 1) + width].strip()
            if not cell:
                continue
            row = acc.setdefault(col, [0, 0])
            for part in cell.split("+"):
                mult = int(part[:-1]) if len(part) > 1 else 1
                row[0 if part[-1] == "F" else 1] += mult
    return GradedShape({k: tuple(v) for k, v in acc.items()})


class TestGrid:
    def test_shape_r_n3(self):
        text = render_grid(grid_rows(gen.decomposition_M(3)), header=False)
        assert text.splitlines() == ["F F F", "  A A A", "    F F F"]

    def test_second_n3(self):
        rows = grid_rows(gen.decomposition_second(3))
        assert [(r["shift"], "".join(r["cells"])) for r in rows] == [(0, "FAF"), (1, "FAF"), (2, "FAF")]

    def test_third_n3(self):
        rows = grid_rows(gen.decomposition_third(3))
        assert [(r["shift"], r["cells"]) for r in rows] == [(0, ["F", "A", "F"]), (1, ["F", "A", "F"])]

    @pytest.mark.parametrize("N", [1, 3, 5, 9, 13])
    @pytest.mark.parametrize("kind", ["M", "second", "third"])
    def test_faithful(self, N, kind):
        decomp = {"M": gen.decomposition_M, "second": gen.decomposition_second,
                  "third": gen.decomposition_third}[kind](N)
        if not decomp.summands:
            return
        assert column_totals(render_grid(grid_rows(decomp))) == decomp.total


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCommands:
    def test_shape_weil(self, capsys):
        code, out, _ = run(capsys, "shape", "weil", "--p", "3", "--n", "1", "--format", "structured")
        data = json.loads(out)
        assert code == 0
        assert data["stats"] == {"rank": 9, "countF": 6, "countA": 3, "ratio": "2/1"}
        assert shape_from_records(data["shape"]) == gen.weil_closed(3)

    def test_shape_text(self, capsys):
        assert run(capsys, "shape", "upper2", "--p", "3", "--n", "1")[1].splitlines()[0] == "F A F"
        assert run(capsys, "shape", "proj", "--p", "3", "--n", "1")[1].splitlines()[0] == "F F F"

    def test_shape_my(self, capsys):
        code, out, _ = run(capsys, "shape", "my", "--p", "3", "--n", "1", "--format", "structured")
        assert json.loads(out)["stats"]["countF"] == 4

    @pytest.mark.parametrize("p,n", [("4", "1"), ("2", "1"), ("3", "0")])
    def test_bad_params(self, capsys, p, n):
        code, _, err = run(capsys, "shape", "weil", "--p", p, "--n", n)
        assert code == 2 and "error" in err

    def test_usage_error_from_argparse(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["shape", "nonsense", "--p", "3", "--n", "1"])
        assert exc.value.code == 2

    def test_grid(self, capsys):
        code, out, _ = run(capsys, "grid", "shapeR", "--p", "3", "--n", "1")
        assert code == 0
        assert out.splitlines()[1:] == ["F F F", "  A A A", "    F F F"]
        code, out, _ = run(capsys, "grid", "third", "--p", "3", "--n", "1", "--format", "structured")
        rows = json.loads(out)["grid"]["rows"]
        assert len(rows) == 2

    @pytest.mark.parametrize("theorem", ["main1", "main2", "main3", "lemma", "identity"])
    def test_verify_pass(self, capsys, theorem):
        code, out, _ = run(capsys, "verify", theorem, "--p", "3", "--n", "1", "--format", "structured")
        assert code == 0
        assert json.loads(out)["report"]["verdict"] == "pass"

    def test_verify_main3_detail(self, capsys):
        code, out, _ = run(capsys, "verify", "main3", "--p", "3", "--n", "1")
        assert code == 0 and "countF=4 ≢ 0 mod 3" in out

    def test_verify_proposition_flagged(self, capsys):
        code, out, _ = run(capsys, "verify", "proposition", "--p", "3", "--n", "1", "--format", "structured")
        rep = json.loads(out)["report"]
        assert code == 0
        assert rep["verdict"] == "flagged"
        assert rep["details"]["proposition_counts"] == [4, 2]
        assert rep["details"]["corollary_literal"] == [8, 4]

    def test_verify_bound(self, capsys):
        code, _, err = run(capsys, "verify", "main1", "--p", "3", "--n", "3")
        assert code == 3 and "bound" in err
        code, _, _ = run(capsys, "verify", "main1", "--p", "3", "--n", "3", "--rank-bound", "1000")
        assert code == 0

    def test_decompose(self, capsys, tmp_path):
        code, out, _ = run(capsys, "decompose", "--tiles", "case2", "--p", "3", "--n", "1",
                           "--exhaustive", "--format", "structured")
        data = json.loads(out)
        assert code == 0
        assert data["tiling"] == [{"tile": "U2", "shift": s} for s in range(3)]
        assert data["tilings_found"] == 1

        path = tmp_path / "my.json"
        path.write_text(json.dumps(shape_to_records(gen.decomposition_third(3).total)))
        code, out, _ = run(capsys, "decompose", "--input", str(path), "--tiles", "case1", "--p", "3", "--n", "1")
        assert code == 1 and "no tiling" in out

    def test_decompose_bad_input(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("[{\"shift\": -1, \"class\": \"F\", \"mult\": 1}]")
        code, _, _ = run(capsys, "decompose", "--input", str(path), "--p", "3", "--n", "1")
        assert code == 2

    def test_sweep(self, capsys):
        code, out, _ = run(capsys, "sweep", "--p-list", "3", "--n-max", "2", "--format", "structured")
        rows = json.loads(out)["report"]
        assert code == 0
        assert [r["N"] for r in rows] == [3, 9]
        for r in rows:
            assert r["checks"].pop("proposition") == "flagged"
            assert set(r["checks"].values()) == {"pass"}

    def test_sweep_rows(self, capsys):
        code, out, _ = run(capsys, "sweep", "--p-list", "3", "5", "7", "--n-max", "1")
        assert code == 0 and len(out.splitlines()) == 3

    def test_sweep_empty(self, capsys):
        code, out, _ = run(capsys, "sweep", "--format", "structured")
        assert code == 0 and json.loads(out)["report"] == []

    def test_sweep_bad_prime(self, capsys):
        assert run(capsys, "sweep", "--p-list", "9")[0] == 2

    def test_sweep_skips_large(self, capsys, caplog):
        code, out, _ = run(capsys, "sweep", "--p-list", "3", "--n-max", "5", "--max-N", "27")
        assert code == 0 and len(out.splitlines()) == 3
        assert "skipping p=3 n=4" in caplog.text
