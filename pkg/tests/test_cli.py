import numpy as np
import pytest

from copula_outage.cli import main


def run_cli(args, tmp_path, name="out.csv"):
    path = tmp_path / name
    code = main(["--output", str(path)] + args)
    return code, path.read_bytes() if path.exists() else b""


def parse_csv(data):
    lines = data.decode("utf-8").split("\n")
    meta = [l for l in lines if l.startswith("#")]
    body = [l for l in lines if l and not l.startswith("#")]
    header = body[0].split(",")
    rows = np.array([[float(v) for v in l.split(",")] for l in body[1:]])
    return meta, header, rows


class TestBoundsCommand:
    def test_uniform_sum_matches_closed_form(self, tmp_path):
        code, data = run_cli(["bounds", "sum", "uniform:1:3", "uniform:2:5",
                              "--from", "0", "--to", "20", "--points", "201"], tmp_path)
        assert code == 0
        meta, header, rows = parse_csv(data)
        assert header == ["s", "lower", "upper"]
        s, lower, upper = rows[:, 0], rows[:, 1], rows[:, 2]
        assert np.all(lower[s <= 5.0] == 0.0)
        assert np.all(lower[s >= 8.0] == 1.0)
        assert np.all(upper[s <= 3.0] == 0.0)
        assert np.all(upper[s >= 6.0] == 1.0)
        mid = (s > 5.0) & (s < 8.0)
        assert np.allclose(lower[mid], (s[mid] - 5.0) / 3.0, atol=1e-9)

    def test_uniform_product_lower(self, tmp_path):
        code, data = run_cli(["bounds", "product", "uniform:1:3", "uniform:2:5",
                              "--from", "0", "--to", "20", "--points", "101"], tmp_path)
        assert code == 0
        _, _, rows = parse_csv(data)
        s, lower = rows[:, 0], rows[:, 1]
        assert np.all(lower[s >= 15.0] >= 1.0 - 1e-8)
        assert np.all(lower[s <= 5.0] <= 1e-8)
        interior = (s > 5.0) & (s < 15.0)
        assert np.allclose(lower[interior], (s[interior] - 5.0) / 10.0, atol=1e-6)

    def test_bad_sweep_rejected(self, tmp_path):
        code, _ = run_cli(["bounds", "sum", "exp:1", "exp:1",
                           "--from", "0", "--to", "0", "--points", "2"], tmp_path)
        assert code == 2

    def test_bad_marginal_rejected(self, tmp_path):
        code, _ = run_cli(["bounds", "sum", "nakagami:1", "exp:1",
                           "--from", "0", "--to", "1"], tmp_path)
        assert code == 2


class TestOutageCommands:
    def test_p2p_single_row(self, tmp_path):
        code, data = run_cli(["outage", "p2p", "--lx", "1", "--ly", "1",
                              "--snr-db", "10", "--rate", "1"], tmp_path)
        assert code == 0
        _, header, rows = parse_csv(data)
        assert header == ["rate", "lower", "upper"]
        assert rows[0, 1] == 0.0
        assert rows[0, 2] == pytest.approx(0.095162581964, abs=1e-9)

    def test_ris_ordered_columns(self, tmp_path):
        code, data = run_cli(["outage", "ris", "--lx", "1", "--ly", "1",
                              "--snr-db", "0", "--rate-from", "0.001",
                              "--rate-to", "10", "--points", "20", "--log"], tmp_path)
        assert code == 0
        _, header, rows = parse_csv(data)
        assert header == ["rate", "lower", "independent", "upper"]
        assert np.all(rows[:, 1] <= rows[:, 2] + 1e-9)
        assert np.all(rows[:, 2] <= rows[:, 3] + 1e-9)

    def test_mac_sweep(self, tmp_path):
        code, data = run_cli(["outage", "mac", "--lx", "1", "--ly", "1",
                              "--r2", "1", "--r1-from", "0.1", "--r1-to", "2",
                              "--points", "10"], tmp_path)
        assert code == 0
        _, header, rows = parse_csv(data)
        assert header == ["r1", "lower", "upper"]
        assert np.all(rows[:, 1] <= rows[:, 2] + 1e-12)

    def test_corr_within_band(self, tmp_path):
        code, data = run_cli(["outage", "corr", "--snr-db", "10", "--rate", "1",
                              "--rho-from", "0", "--rho-to", "1", "--points", "5",
                              "--samples", "100000", "--seed", "42"], tmp_path)
        assert code == 0
        _, header, rows = parse_csv(data)
        assert header == ["rho", "mc_estimate", "mc_stderr", "lower", "upper"]
        band = 3.0 * rows[:, 2]
        assert np.all(rows[:, 1] >= rows[:, 3] - band)
        assert np.all(rows[:, 1] <= rows[:, 4] + band)


class TestDeterminism:
    @pytest.mark.parametrize("args", [
        ["bounds", "sum", "exp:1", "exp:1", "--from", "0.1", "--to", "5",
         "--points", "21"],
        ["outage", "corr", "--snr-db", "10", "--rate", "1", "--points", "5",
         "--samples", "50000", "--seed", "7"],
        ["outage", "ris", "--lx", "1", "--ly", "1", "--rate-from", "0.01",
         "--rate-to", "5", "--points", "10", "--log"],
    ])
    def test_byte_identical_reruns(self, args, tmp_path):
        _, first = run_cli(args, tmp_path, "a.csv")
        _, second = run_cli(args, tmp_path, "b.csv")
        assert first == second
        assert first.endswith(b"\n")
        assert b"\r" not in first


class TestVerify:
    def test_passes_and_is_deterministic(self, tmp_path):
        code1, rep1 = run_cli(["verify", "--samples", "50000", "--seed", "7"],
                              tmp_path, "v1.txt")
        code2, rep2 = run_cli(["verify", "--samples", "50000", "--seed", "7"],
                              tmp_path, "v2.txt")
        assert code1 == 0 and code2 == 0
        assert rep1 == rep2
        assert b"FAIL" not in rep1
        assert rep1.count(b"PASS") >= 10
