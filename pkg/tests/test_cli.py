import json
import subprocess
import sys

import pytest

from tree_moduli.cli import render_poset, render_strata_table, run
from tree_moduli import specialization_poset, stratum_descriptor, RationalTree

STAR3 = '{"vertices":4,"edges":[[0,3],[1,3],[2,3]]}'


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestStrata:
    def test_table_two_rows(self, capsys):
        code, out, _ = call(capsys, "strata", "--max-nodes", "1", "--format", "table")
        lines = out.strip().splitlines()
        assert code == 0 and len(lines) == 3
        assert lines[1].split()[:3] == ["()", "0", "0"]
        assert lines[2].split()[:3] == ["(())", "1", "1"]

    def test_table_point_row(self, capsys):
        _, out, _ = call(capsys, "strata", "--max-nodes", "0")
        row = out.strip().splitlines()[1].split()
        assert row == ["()", "0", "0", "0", "1", "3", "-3"]

    def test_dash_for_high_multiplicity(self, capsys):
        _, out, _ = call(capsys, "strata", "--max-nodes", "4")
        star = [l for l in out.splitlines() if l.startswith("(()()()())")]
        assert star and star[0].split()[-2:] == ["—", "—"]

    def test_json(self, capsys):
        code, out, _ = call(capsys, "strata", "--max-nodes", "3", "--format", "json")
        doc = json.loads(out)
        assert code == 0 and len(doc["strata"]) == 5
        assert doc["strata"][0] == {"code": "()", "nodes": 0, "codim": 0, "stack_dim": -3, "aut_dim": 3, "aut_component_order": 1}

    @pytest.mark.parametrize("argv", [
        ["strata", "--max-nodes", "-1"],
        ["strata", "--max-nodes", "x"],
        ["strata", "--max-nodes", "2", "--format", "dot"],
        ["strata", "--max-nodes", "2", "--bogus"],
        ["strata", "--max-nodes", "13"],
        ["frobnicate"],
    ])
    def test_usage_errors(self, capsys, argv):
        code, out, err = call(capsys, *argv)
        assert code == 2 and out == "" and err

    def test_offending_flag_named(self, capsys):
        _, _, err = call(capsys, "strata", "--max-nodes", "2", "--bogus")
        assert "--bogus" in err

    def test_cap_override(self, capsys, monkeypatch):
        assert call(capsys, "--cap", "3", "strata", "--max-nodes", "4")[0] == 2
        monkeypatch.setenv("TREE_MODULI_MAX_N", "2")
        assert call(capsys, "strata", "--max-nodes", "3")[0] == 2
        assert call(capsys, "strata", "--max-nodes", "2")[0] == 0


class TestPoset:
    def arrows(self, out):
        return [l for l in out.splitlines() if "->" in l]

    def test_dot(self, capsys):
        for n, nodes, arrows in [(0, 1, 0), (1, 2, 1), (3, 5, 4)]:
            code, out, _ = call(capsys, "poset", "--max-nodes", str(n))
            assert code == 0 and out.startswith("digraph")
            assert len([l for l in out.splitlines() if "[label=" in l]) == nodes
            assert len(self.arrows(out)) == arrows

    def test_arrows_point_to_more_nodes(self, capsys):
        _, out, _ = call(capsys, "poset", "--max-nodes", "1", "--format", "dot")
        assert self.arrows(out) == ["  s0 -> s1;"]

    def test_json_round_trip(self, capsys):
        _, out, _ = call(capsys, "poset", "--max-nodes", "4", "--format", "json")
        doc = json.loads(out)
        p = specialization_poset(4)
        assert [tuple(c) for c in doc["covers"]] == list(p.cover_relations)
        assert {s["code"] for s in doc["strata"]} == {s.code for s in p.strata}
        assert render_poset(p, "json") == out.strip()


class TestAut:
    def test_star(self, capsys):
        code, out, _ = call(capsys, "aut", "--tree", STAR3)
        doc = json.loads(out)
        assert code == 0
        assert (doc["order"], doc["aut_dim"], doc["stack_dim"], doc["codim"]) == (6, 6, -6, 3)

    def test_star4_has_no_aut_dim(self, capsys):
        _, out, _ = call(capsys, "aut", "--tree", json.dumps(RationalTree.star(4).to_json()))
        doc = json.loads(out)
        assert doc["order"] == 24 and "aut_dim" not in doc

    @pytest.mark.parametrize("tree", ['{"vertices":3,"edges":[[0,1]]}', "nope", '{"edges":[]}'])
    def test_bad_tree(self, capsys, tree):
        assert call(capsys, "aut", "--tree", tree)[0] == 2


class TestCohom:
    def test_dualizing_dual_on_star(self, capsys):
        code, out, _ = call(capsys, "cohom", "--tree", STAR3, "--bundle", "dualizing-dual")
        assert code == 0 and out.strip() == "h0=3 h1=0 chi=3"

    def test_basis_dump(self, capsys):
        tree = json.dumps(RationalTree.star(4).to_json())
        _, out, _ = call(capsys, "cohom", "--tree", tree, "--bundle", "dualizing-power:2", "--basis")
        first, second = out.strip().splitlines()
        assert first == "h0=1 h1=4 chi=-3"
        assert json.loads(second)["basis"] == [[[], [], [], [], [0, 2, -3, 1, 0]]]

    def test_bad_bundle(self, capsys):
        assert call(capsys, "cohom", "--tree", STAR3, "--bundle", "omega")[0] == 2

    def test_wrong_degree_count(self, capsys):
        code, _, err = call(capsys, "cohom", "--tree", STAR3, "--bundle", "degrees:1,2")
        assert code == 2 and "--bundle" in err


class TestFitting:
    def test_grid(self, capsys):
        fam = '{"parameters": 2, "nodes": ["t0", "t1"]}'
        pts = json.dumps([[a, b] for a in (-1, 0, 1) for b in (-1, 0, 1)])
        code, out, _ = call(capsys, "fitting", "--family", fam, "--points", pts)
        doc = json.loads(out)
        assert code == 0 and doc["counts"] == {"0": 4, "1": 4, "2": 1}

    def test_rational_points(self, capsys):
        fam = '{"parameters": 1, "nodes": ["2*t0 - 1"]}'
        _, out, _ = call(capsys, "fitting", "--family", fam, "--points", '[["1/2"], [1]]')
        assert [p["exact"] for p in json.loads(out)["points"]] == [1, 0]

    def test_arity_is_computation_error(self, capsys):
        fam = '{"parameters": 2, "nodes": ["t0"]}'
        assert call(capsys, "fitting", "--family", fam, "--points", "[[0]]")[0] == 1

    @pytest.mark.parametrize("fam", ['{"parameters": 1, "nodes": ["t3"]}', '{"nodes": []}', "{"])
    def test_bad_family(self, capsys, fam):
        assert call(capsys, "fitting", "--family", fam, "--points", "[]")[0] == 2


def test_render_table_direct():
    rows = render_strata_table([stratum_descriptor(RationalTree.point())], "table").splitlines()
    assert len(rows) == 2 and rows[1].split()[-2:] == ["3", "-3"]


def test_byte_identical_subprocess():
    argv = [sys.executable, "-m", "tree_moduli", "poset", "--max-nodes", "5", "--format", "json"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a
