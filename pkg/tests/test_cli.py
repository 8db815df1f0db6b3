import pytest

from guessnum import cli, digraph as dg, netcode


@pytest.fixture()
def files(tmp_path):
    paths = {}
    paths["k3"] = str(tmp_path / "k3.dg")
    dg.write_digraph(dg.clique(3), paths["k3"])
    paths["c4"] = str(tmp_path / "c4.dg")
    dg.write_digraph(dg.cycle(4), paths["c4"])
    paths["butterfly"] = str(tmp_path / "butterfly.nc")
    netcode.write_instance(netcode.butterfly(), paths["butterfly"])
    paths["bottleneck"] = str(tmp_path / "bottleneck.nc")
    netcode.write_instance(netcode.bottleneck(3, 2), paths["bottleneck"])
    paths["tmp"] = tmp_path
    return paths


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out.strip()
    return code, out


class TestCommands:
    def test_guess_clique(self, files, capsys):
        code, out = run(capsys, "guess", files["k3"], "-s", "2")
        assert code == 0
        assert out == "alpha=4 g=2.000"

    def test_guess_machine_records(self, files, capsys):
        code, out = run(capsys, "guess", files["k3"], "-s", "2", "--machine")
        assert code == 0
        assert out.splitlines() == ["alpha=4", "g=2.000"]

    def test_guess_witness_file(self, files, capsys):
        witness = str(files["tmp"] / "fix.txt")
        code, out = run(capsys, "guess", files["k3"], "-s", "2", "--witness", witness)
        assert code == 0
        codes = [int(line) for line in open(witness).read().split()]
        assert codes == [0, 3, 5, 6]

    def test_guess_protocol_tables(self, files, capsys):
        proto = str(files["tmp"] / "proto.txt")
        code, _ = run(capsys, "guess", files["k3"], "-s", "2", "--protocol", proto)
        assert code == 0
        text = open(proto).read().splitlines()
        assert text[0] == "n 3 s 2"
        assert text[1] == "0: 1,2 | 0110"

    def test_linear_pipeline_matches_generated_digraph(self, files, capsys):
        p7 = str(files["tmp"] / "p7.dg")
        code, _ = run(capsys, "cyclic-gen", "--poly", "11101", "-n", "7", "-o", p7)
        assert code == 0
        code, out = run(capsys, "linear", p7, "-p", "2")
        assert code == 0
        assert "g_linear=4" in out

    def test_cyclic_gen_report(self, files, capsys):
        code, out = run(capsys, "cyclic-gen", "--poly", "11101", "-n", "7", "--machine")
        assert code == 0
        records = dict(line.split("=", 1) for line in out.splitlines())
        assert records["divides"] == "true"
        assert records["mas"] == "3"
        assert records["fixed_space_dimension"] == "4"
        assert records["tournament"] == "true"

    def test_defect(self, files, capsys):
        code, out = run(capsys, "defect", files["k3"], "-s", "2")
        assert code == 0
        assert out.startswith("chi=2 b=1.000")

    def test_bounds_keys_are_stable(self, files, capsys):
        code, out = run(capsys, "bounds", files["c4"], "-s", "2")
        assert code == 0
        keys = [line.split("=", 1)[0] for line in out.splitlines()]
        assert keys == sorted(keys, key=keys.index)  # deterministic order
        assert "g_upper.mas_cover" in keys
        assert "g_lower" in keys and "g_upper" in keys

    def test_mas(self, files, capsys):
        code, out = run(capsys, "mas", files["c4"])
        assert code == 0
        assert out == "mas=3 exact=true witness=0,1,2"

    def test_netcode_solve_butterfly(self, files, capsys):
        code, out = run(capsys, "netcode-solve", files["butterfly"], "-s", "2")
        assert code == 0
        assert "solvable=true" in out
        assert "z sends" in out

    def test_netcode_solve_bottleneck(self, files, capsys):
        code, out = run(capsys, "netcode-solve", files["bottleneck"], "-s", "2")
        assert code == 0  # an unsolvable verdict is still a result
        assert "solvable=false" in out

    def test_netcode_convert_both_ways(self, files, capsys):
        merged = str(files["tmp"] / "bf.dg")
        code, _ = run(capsys, "netcode-convert", files["butterfly"], "--to-digraph", "-o", merged)
        assert code == 0
        assert dg.read_digraph(merged) == dg.clique(3)
        back = str(files["tmp"] / "bf.nc")
        code, out = run(capsys, "netcode-convert", merged, "-o", back)
        assert code == 0
        inst = netcode.read_instance(back)
        assert inst.n_pairs == 2

    def test_product_union_expand_thm3(self, files, capsys):
        out_dg = str(files["tmp"] / "out.dg")
        code, out = run(capsys, "product", files["c4"], files["c4"], "-o", out_dg)
        assert code == 0 and "n=16" in out
        code, out = run(capsys, "union", "--kind", "disjoint", files["k3"], files["c4"], "-o", out_dg)
        assert code == 0 and "n=7" in out
        code, out = run(capsys, "expand", files["c4"], "-k", "2", "-o", out_dg)
        assert code == 0 and "n=8" in out
        code, out = run(capsys, "thm3", "-l", "3", "-k", "1", "-m", "2", "-o", out_dg)
        assert code == 0 and "girth=3" in out

    def test_simplex_and_family(self, files, capsys):
        code, out = run(capsys, "simplex", "-l", "3")
        assert code == 0 and "n=7" in out and "poly=11101" in out
        code, out = run(capsys, "family", "--kind", "three_t", "--t", "5")
        assert code == 0 and "n=15" in out

    def test_gg_export(self, files, capsys):
        out_path = str(files["tmp"] / "gg.txt")
        code, out = run(capsys, "gg-export", files["k3"], "-s", "2", "-o", out_path)
        assert code == 0 and "configs=8" in out


class TestExitCodes:
    def test_size_guard_is_three(self, files, capsys):
        code, _ = run(capsys, "guess", files["k3"], "-s", "9999999")
        assert code == 3

    def test_invalid_input_is_four(self, files, capsys, tmp_path):
        bad = tmp_path / "bad.dg"
        bad.write_text("3\n0 0\n")
        code, _ = run(capsys, "guess", str(bad), "-s", "2")
        assert code == 4

    def test_missing_file_is_four(self, files, capsys):
        code, _ = run(capsys, "mas", "does-not-exist.dg")
        assert code == 4

    def test_usage_error_is_two(self, files):
        with pytest.raises(SystemExit) as exc:
            cli.main(["guess"])  # missing digraph argument
        assert exc.value.code == 2

    def test_bad_family_params_is_four(self, files, capsys):
        code, _ = run(capsys, "family", "--kind", "three_t", "--t", "6")
        assert code == 4
