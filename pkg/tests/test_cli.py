from fractions import Fraction as F

import pytest
from click.testing import CliRunner

from dispkit import parse_points, points_to_csv
from dispkit.cli import main
from helpers import full_grid


@pytest.fixture
def runner():
    return CliRunner()


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


def data_rows(output: str) -> list[str]:
    return [line for line in output.splitlines() if line and not line.startswith("#")]


class TestDisp:
    def test_center_point(self, runner, tmp_path):
        pf = write(tmp_path / "p.csv", "1/2,1/2\n")
        res = runner.invoke(main, ["disp", pf])
        assert res.exit_code == 0
        assert "dispersion: 1/2" in res.output

    def test_empty_file(self, runner, tmp_path):
        pf = write(tmp_path / "p.csv", "")
        res = runner.invoke(main, ["disp", pf])
        assert res.exit_code == 0
        assert "dispersion: 1\n" in res.output

    def test_parse_error_exit_3(self, runner, tmp_path):
        pf = write(tmp_path / "p.csv", "1/2,1/2\nbroken\n")
        res = runner.invoke(main, ["disp", pf])
        assert res.exit_code == 3
        assert "line 2" in res.output

    def test_budget_exit_4(self, runner, tmp_path):
        pf = write(tmp_path / "p.csv", "1/2,1/3\n1/5,1/7\n2/3,1/9\n")
        res = runner.invoke(main, ["disp", pf, "--budget", "3"])
        assert res.exit_code == 4

    def test_csv_output(self, runner, tmp_path):
        pf = write(tmp_path / "p.csv", "1/2,1/2\n")
        out = tmp_path / "r.csv"
        res = runner.invoke(main, ["disp", pf, "-o", str(out)])
        assert res.exit_code == 0
        text = out.read_text()
        assert "value,l1,u1,l2,u2,candidates_examined,pruned" in text
        assert "\n1/2,0,1/2,0,1," in text


class TestConstruct:
    def test_diagonal_row_count(self, runner):
        res = runner.invoke(main, ["construct", "diagonal", "--r", "2/5", "--d", "2"])
        assert res.exit_code == 0
        assert len(data_rows(res.output)) == 7

    def test_diagonal_rejects_small_r(self, runner):
        res = runner.invoke(main, ["construct", "diagonal", "--r", "1/5", "--d", "2"])
        assert res.exit_code == 2

    def test_random_grid_values(self, runner):
        res = runner.invoke(
            main,
            ["construct", "random-grid", "--q", "4", "--d", "2", "--n", "9", "--seed", "1"],
        )
        assert res.exit_code == 0
        rows = data_rows(res.output)
        assert len(rows) == 9
        ps = parse_points("\n".join(rows))
        assert all(c in {F(1, 4), F(1, 2), F(3, 4)} for p in ps for c in p)

    def test_random_grid_requires_seed(self, runner):
        res = runner.invoke(
            main, ["construct", "random-grid", "--q", "4", "--d", "2", "--n", "9"]
        )
        assert res.exit_code == 2

    def test_baseline_lattice(self, runner):
        res = runner.invoke(
            main, ["construct", "baseline", "--kind", "lattice", "--n", "4", "--d", "2"]
        )
        assert res.exit_code == 0
        assert data_rows(res.output) == ["1/4,1/4", "1/4,3/4", "3/4,1/4", "3/4,3/4"]

    def test_construct_output_reparses(self, runner, tmp_path):
        out = tmp_path / "pts.csv"
        res = runner.invoke(
            main, ["construct", "diagonal", "--r", "9/20", "--d", "3", "-o", str(out)]
        )
        assert res.exit_code == 0
        ps = parse_points(out.read_text())
        assert ps.dim == 3 and len(ps) == 6


class TestCertify:
    def test_full_grid_holds(self, runner, tmp_path):
        pf = write(tmp_path / "g.csv", points_to_csv(full_grid(4, 2)))
        res = runner.invoke(main, ["certify", pf, "--q", "4"])
        assert res.exit_code == 0
        assert "q,d,M,M_eff,family_size,holds,first_violation,patterns_checked" in res.output
        assert "4,2,4,2,9,true,,9" in res.output

    def test_missing_center_violation(self, runner, tmp_path):
        pts = [p for p in full_grid(4, 2) if p.coords != (F(1, 2), F(1, 2))]
        from dispkit import PointSet

        pf = write(tmp_path / "g.csv", points_to_csv(PointSet(2, pts)))
        res = runner.invoke(main, ["certify", pf, "--q", "4"])
        assert res.exit_code == 0
        assert '4,2,4,2,9,false,"(1,2):(2,2)",5' in res.output or "(1,2):(2,2)" in res.output

    def test_q_validation(self, runner, tmp_path):
        pf = write(tmp_path / "g.csv", "1/2,1/2\n")
        res = runner.invoke(main, ["certify", pf, "--q", "1"])
        assert res.exit_code == 2


class TestBounds:
    def test_r_mode_row_count(self, runner):
        res = runner.invoke(main, ["bounds", "--r", "1/8", "--d-range", "2:8"])
        assert res.exit_code == 0
        rows = data_rows(res.output)
        assert len(rows) == 1 + 7  # header + one per d

    def test_n_mode_pigeonhole_column(self, runner):
        res = runner.invoke(main, ["bounds", "--n", "3", "--d-range", "2:4"])
        assert res.exit_code == 0
        for row in data_rows(res.output)[1:]:
            assert row.split(",")[3] == "1/4"

    def test_diagonal_constant_column(self, runner):
        res = runner.invoke(main, ["bounds", "--r", "1/2", "--d-range", "2:4"])
        assert res.exit_code == 0
        for row in data_rows(res.output)[1:]:
            cells = row.split(",")
            assert cells[10] == "5" and cells[11] == "true"

    def test_requires_one_input(self, runner):
        assert runner.invoke(main, ["bounds", "--d-range", "2:4"]).exit_code == 2
        assert (
            runner.invoke(
                main, ["bounds", "--r", "1/8", "--n", "3", "--d-range", "2:4"]
            ).exit_code
            == 2
        )


class TestExperiments:
    def test_diagonal_sweep_shape(self, runner):
        res = runner.invoke(
            main,
            [
                "experiment",
                "diagonal-sweep",
                "--r-list",
                "2/5,9/20,1/2",
                "--d-list",
                "2,3",
            ],
        )
        assert res.exit_code == 0
        rows = data_rows(res.output)
        assert len(rows) == 1 + 6
        for row in rows[1:]:
            assert ",ok," in row and ",true," in row

    def test_certify_sweep_counting_floor(self, runner):
        res = runner.invoke(
            main,
            ["experiment", "certify-sweep", "--q", "4", "--d", "2", "--seeds", "1:20"],
        )
        assert res.exit_code == 0
        rows = data_rows(res.output)[1:]
        assert len(rows) == 20
        assert all(int(r.split(",")[1]) >= 9 for r in rows)

    def test_minimal_n_columns(self, runner):
        res = runner.invoke(
            main,
            ["experiment", "minimal-n", "--q", "4", "--d", "2", "--seeds", "1,2"],
        )
        assert res.exit_code == 0
        rows = data_rows(res.output)[1:]
        assert len(rows) == 2
        for row in rows:
            q, d, seed, emp, analytic = row.split(",")
            assert int(emp) >= 9
            assert int(analytic) == 311764549251


class TestReproducibility:
    def test_sweep_byte_identical_across_threads(self, runner, tmp_path):
        args = ["experiment", "diagonal-sweep", "--r-list", "3/10,1/2", "--d-list", "2,3"]
        one = tmp_path / "a.csv"
        eight = tmp_path / "b.csv"
        r1 = runner.invoke(main, args + ["--threads", "1", "-o", str(one)])
        r8 = runner.invoke(main, args + ["--threads", "8", "-o", str(eight)])
        assert r1.exit_code == 0 and r8.exit_code == 0
        assert one.read_bytes() == eight.read_bytes()

    def test_construct_byte_identical_across_runs(self, runner, tmp_path):
        args = ["construct", "random-grid", "--q", "4", "--d", "3", "--n", "50", "--seed", "9"]
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        assert runner.invoke(main, args + ["-o", str(a)]).exit_code == 0
        assert runner.invoke(main, args + ["-o", str(b)]).exit_code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_metadata_header_present(self, runner, tmp_path):
        out = tmp_path / "o.csv"
        res = runner.invoke(
            main, ["bounds", "--n", "3", "--d-range", "2:4", "-o", str(out)]
        )
        assert res.exit_code == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("# tool: dispkit ")
        assert lines[1] == "# command: bounds --n 3 --d-range 2:4"
        assert lines[2] == "# seed: none"
