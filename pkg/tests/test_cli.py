import json
import subprocess
import sys

import numpy as np
import pytest

import pcflib as pl
from pcflib import cli
from pcflib.cli import main


def write_json_collection(path, pcfs, dtype="f64"):
    doc = {
        "dtype": dtype,
        "pcfs": [
            [[float(t), float(v)] for t, v in zip(f.times, f.values)]
            for f in pcfs
        ],
    }
    path.write_text(json.dumps(doc))


def read_csv_matrix(path):
    return np.array([
        [float(x) for x in line.split(",")]
        for line in path.read_text().splitlines()
    ])


@pytest.fixture
def guide_json(tmp_path, guide_collection):
    p = tmp_path / "coll.json"
    write_json_collection(p, guide_collection)
    return p


class TestPdistCommand:
    def test_guide_matrix_csv(self, tmp_path, guide_json):
        out = tmp_path / "d.csv"
        rc = main(["pdist", str(guide_json), "--output", str(out), "--quiet"])
        assert rc == 0
        expect = [[0, 34, 6, 12], [34, 0, 34, 24], [6, 34, 0, 10], [12, 24, 10, 0]]
        assert np.array_equal(read_csv_matrix(out), expect)

    def test_json_output_round_trips(self, tmp_path, guide_json):
        out = tmp_path / "d.json"
        rc = main(["pdist", str(guide_json), "--p", "3.5",
                   "--output", str(out), "--format", "json", "--quiet"])
        assert rc == 0
        doc = json.loads(out.read_text())
        assert doc["dtype"] == "f64"
        got = np.array(doc["matrix"])
        want = np.asarray(pl.pdist(cli.load_collection(guide_json)[0], p=3.5))
        assert np.array_equal(got, want)

    def test_bounds_flag(self, tmp_path, guide_json, guide_collection):
        out = tmp_path / "d.csv"
        rc = main(["pdist", str(guide_json), "--bounds", "1", "6",
                   "--output", str(out), "--quiet"])
        assert rc == 0
        got = read_csv_matrix(out)
        assert got[0, 1] == pl.lp_distance(
            guide_collection[0], guide_collection[1], a=1.0, b=6.0)

    def test_divergent_exit_3(self, tmp_path, capsys):
        src = tmp_path / "bad.json"
        src.write_text('{"dtype":"f64","pcfs":[[[0,1]],[[0,0]]]}')
        out = tmp_path / "d.csv"
        rc = main(["pdist", str(src), "--output", str(out), "--quiet"])
        assert rc == 3
        assert "divergent" in capsys.readouterr().err

    def test_parse_error_exit_2_names_location(self, tmp_path, capsys):
        src = tmp_path / "bad.json"
        src.write_text('{"dtype":"f64","pcfs":[[[0,1],[0.5,2],[0.25,3]]]}')
        out = tmp_path / "d.csv"
        rc = main(["pdist", str(src), "--output", str(out), "--quiet"])
        assert rc == 2
        err = capsys.readouterr().err
        assert "bad.json" in err and "#0" in err

    def test_missing_input_exit_2(self, tmp_path):
        rc = main(["pdist", str(tmp_path / "nope.json"),
                   "--output", str(tmp_path / "d.csv"), "--quiet"])
        assert rc == 2

    def test_progress_on_stderr(self, tmp_path, guide_json, capsys):
        out = tmp_path / "d.csv"
        main(["pdist", str(guide_json), "--output", str(out)])
        err = capsys.readouterr().err
        assert "progress: 100%" in err


class TestKernelCommand:
    def test_guide_matrix(self, tmp_path, guide_json):
        out = tmp_path / "k.csv"
        rc = main(["kernel", str(guide_json), "--output", str(out), "--quiet"])
        assert rc == 0
        expect = [[77, 53, 55, 38], [53, 213, 31, 51],
                  [55, 31, 43, 26], [38, 51, 26, 25]]
        assert np.array_equal(read_csv_matrix(out), expect)


class TestMeanCommand:
    def test_json_round_trip(self, tmp_path, f3, f4):
        src = tmp_path / "coll.json"
        write_json_collection(src, [f3, f4])
        out = tmp_path / "mean.json"
        rc = main(["mean", str(src), "--output", str(out)])
        assert rc == 0
        (got,) = cli.load_collection(out)[0]
        assert got == pl.mean([f3, f4])

    def test_csv_directory_input(self, tmp_path, f3, f4):
        d = tmp_path / "coll"
        d.mkdir()
        for name, f in (("a.csv", f3), ("b.csv", f4)):
            lines = ["t,v"] + [
                f"{float(t)},{float(v)}" for t, v in zip(f.times, f.values)
            ]
            (d / name).write_text("\n".join(lines) + "\n")
        out = tmp_path / "mean.csv"
        rc = main(["mean", str(d), "--output", str(out)])
        assert rc == 0
        text = out.read_text().splitlines()
        assert text[0] == "t,v"
        rows = [tuple(float(x) for x in line.split(",")) for line in text[1:]]
        assert pl.make_pcf(rows) == pl.mean([f3, f4])

    def test_bad_csv_header_exit_2(self, tmp_path, capsys):
        d = tmp_path / "coll"
        d.mkdir()
        (d / "a.csv").write_text("time,value\n0,1\n")
        rc = main(["mean", str(d), "--output", str(tmp_path / "m.csv")])
        assert rc == 2
        err = capsys.readouterr().err
        assert "a.csv" in err and "row 1" in err


class TestGenerateCommand:
    def test_deterministic_bytes(self, tmp_path):
        outs = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            rc = main(["generate", "--kind", "synthetic", "--count", "5",
                       "--seed", "99", "--output", str(out)])
            assert rc == 0
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]

    def test_output_is_loadable(self, tmp_path):
        out = tmp_path / "c.json"
        main(["generate", "--kind", "sin", "--count", "3",
              "--n-points", "40", "--seed", "7", "--output", str(out)])
        coll, fmt = cli.load_collection(out)
        assert fmt == "json"
        assert len(coll) == 3
        assert all(f.size == 41 for f in coll)

    def test_values_round_trip_bitwise(self, tmp_path):
        out = tmp_path / "c.json"
        main(["generate", "--kind", "synthetic", "--count", "4",
              "--seed", "12", "--output", str(out)])
        coll, _ = cli.load_collection(out)
        direct = pl.synthetic_benchmark(4, rng=pl.RngSpec(12))
        assert all(f == g for f, g in zip(coll, direct))

    def test_f32_tag(self, tmp_path):
        out = tmp_path / "c.json"
        main(["generate", "--count", "2", "--seed", "1",
              "--dtype", "f32", "--output", str(out)])
        coll, _ = cli.load_collection(out)
        assert all(f.dtype == np.float32 for f in coll)


class TestPipeline:
    def test_generate_then_pdist_stable_across_processes(self, tmp_path):
        cmds = [
            [sys.executable, "-m", "pcflib.cli", "generate", "--count", "8",
             "--seed", "5", "--output", None],
            [sys.executable, "-m", "pcflib.cli", "pdist", None,
             "--p", "2", "--output", None, "--quiet"],
        ]
        results = []
        for tag in ("one", "two"):
            coll = tmp_path / f"coll_{tag}.json"
            mat = tmp_path / f"mat_{tag}.csv"
            gen = cmds[0][:-1] + [str(coll)]
            subprocess.run(gen, check=True)
            pd = list(cmds[1])
            pd[4] = str(coll)
            pd[8] = str(mat)
            subprocess.run(pd, check=True)
            results.append((coll.read_bytes(), mat.read_bytes()))
        assert results[0] == results[1]

    def test_entry_point_help(self):
        proc = subprocess.run(
            [sys.executable, "-m", "pcflib.cli", "--help"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        for cmd in ("pdist", "kernel", "mean", "generate"):
            assert cmd in proc.stdout
