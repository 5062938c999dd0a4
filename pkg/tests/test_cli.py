import json

import pytest

from hproduct import oriented_cycle
from hproduct.cli import main
from hproduct.fileio import (
    dumps_assignment,
    dumps_digraph,
    dumps_family,
    dumps_form,
    dumps_graph,
    dumps_labeling,
)
from hproduct.labeling import sem_odd_cycle
from hproduct.unicyclic import UnicyclicForm, assemble

from .conftest import path_tree


@pytest.fixture()
def ex_files(tmp_path, ex_family, ex_h, ex_hprime):
    host = oriented_cycle(4)
    paths = {
        "host": tmp_path / "host.dg",
        "family": tmp_path / "family.txt",
        "h": tmp_path / "h.txt",
        "hprime": tmp_path / "hprime.txt",
    }
    paths["host"].write_text(dumps_digraph(host))
    paths["family"].write_text(dumps_family(ex_family))
    paths["h"].write_text(dumps_assignment(ex_h))
    paths["hprime"].write_text(dumps_assignment(ex_hprime))
    return paths


def run(capsys, *argv) -> tuple[int, str]:
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


class TestProductCommand:
    def test_reports_components(self, capsys, ex_files, tmp_path):
        out_path = tmp_path / "prod.dg"
        code, out = run(
            capsys, "product", ex_files["host"], ex_files["family"], ex_files["h"],
            "--out", out_path,
        )
        assert code == 0
        assert "[8, 16]" in out
        assert out_path.exists()

    def test_swapped_assignment(self, capsys, ex_files):
        code, out = run(
            capsys, "product", ex_files["host"], ex_files["family"], ex_files["hprime"]
        )
        assert code == 0
        assert "[4, 20]" in out

    def test_missing_arc_names_the_arc(self, capsys, ex_files, tmp_path):
        partial = tmp_path / "partial.txt"
        partial.write_text("1 2 -> F1\n2 3 -> F2\n3 4 -> F1r\n")
        code = main(
            ["product", str(ex_files["host"]), str(ex_files["family"]), str(partial)]
        )
        assert code == 2
        assert "(4, 1)" in capsys.readouterr().err

    def test_round_trip_of_written_product(self, capsys, ex_files, tmp_path):
        from hproduct.fileio import loads_digraph

        out_path = tmp_path / "prod.dg"
        run(capsys, "product", ex_files["host"], ex_files["family"], ex_files["h"],
            "--out", out_path)
        text = out_path.read_text()
        assert dumps_digraph(loads_digraph(text)) == text


class TestPredictCommand:
    def test_fixture_pass(self, capsys, ex_files):
        code, out = run(
            capsys, "predict", "-m", "4", ex_files["family"], ex_files["h"]
        )
        assert code == 0
        assert "PASS" in out and "FAIL" not in out

    def test_twelve_instance(self, capsys, tmp_path, twelve_family, twelve_h):
        fam = tmp_path / "fam.txt"
        fam.write_text(dumps_family(twelve_family))
        h = tmp_path / "h.txt"
        h.write_text(dumps_assignment(twelve_h))
        code, out = run(capsys, "predict", "-m", "3", fam, h)
        assert code == 0
        assert "[12]" in out

    def test_assignment_line_order_irrelevant(self, capsys, ex_files, tmp_path):
        lines = ex_files["h"].read_text().strip().splitlines()
        scrambled = tmp_path / "scrambled.txt"
        scrambled.write_text("\n".join(reversed(lines)) + "\n")
        code, out = run(capsys, "predict", "-m", "4", ex_files["family"], scrambled)
        assert code == 0
        assert "FAIL" not in out

    def test_random_mode_deterministic(self, capsys):
        code, out = run(capsys, "predict", "--random", "--trials", "40", "--seed", "11")
        assert code == 0
        code2, out2 = run(capsys, "predict", "--random", "--trials", "40", "--seed", "11")
        assert out == out2

    def test_form_mode_per_component(self, capsys, tmp_path):
        from hproduct.fileio import dumps_form
        from hproduct import UnicyclicForm, RootedTree

        f1 = tmp_path / "a.form"
        f1.write_text(dumps_form(UnicyclicForm([RootedTree.single()] * 3)))
        f2 = tmp_path / "b.form"
        f2.write_text(dumps_form(UnicyclicForm([path_tree(2)] * 4)))
        code, out = run(
            capsys, "predict", "--forms", f1, f2, "--n", "3", "--reversals", "1,2"
        )
        assert code == 0
        assert "PASS component 1" in out and "PASS component 2" in out

    def test_non_one_regular_member_rejected(self, capsys, tmp_path):
        fam = tmp_path / "fam.txt"
        fam.write_text("family 3\nmember bad\n1 2\n1 3\n2 1\n")
        h = tmp_path / "h.txt"
        h.write_text("1 2 -> bad\n2 1 -> bad\n")
        code = main(["predict", "-m", "2", str(fam), str(h)])
        assert code == 2
        assert "1-regular" in capsys.readouterr().err

    def test_json_format(self, capsys, ex_files):
        code, out = run(
            capsys, "predict", "-m", "4", ex_files["family"], ex_files["h"],
            "--format", "json",
        )
        payload = json.loads(out)
        assert payload["passed"] is True
        assert all(item["passed"] for item in payload["items"])


class TestRainbowCommand:
    def test_circuit_listing_and_dot(self, capsys, tmp_path, twelve_family, twelve_h):
        fam = tmp_path / "fam.txt"
        fam.write_text(dumps_family(twelve_family))
        h = tmp_path / "h.txt"
        h.write_text(dumps_assignment(twelve_h))
        dot = tmp_path / "m.dot"
        code, out = run(capsys, "rainbow", "-m", "3", fam, h, "--dot", dot)
        assert code == 0
        assert "circuit 1 (length 12)" in out
        assert "rainbow eulerian: True" in out
        assert dot.exists() and "style=dashed" in dot.read_text()


class TestLabelCommands:
    def test_verify_pass(self, capsys, tmp_path):
        cert = sem_odd_cycle(3).certificate()
        path = tmp_path / "c3.lab"
        path.write_text(dumps_labeling(cert))
        code, out = run(capsys, "label", "verify", path)
        assert code == 0 and "PASS" in out

    def test_verify_catches_wrong_sum(self, capsys, tmp_path):
        cert = sem_odd_cycle(3).certificate()
        text = dumps_labeling(cert).replace("labeling 3 3 9 super", "labeling 3 3 10 super")
        path = tmp_path / "c3.lab"
        path.write_text(text)
        code, out = run(capsys, "label", "verify", path)
        assert code == 1 and "FAIL" in out

    def test_search(self, capsys, tmp_path):
        g = assemble(UnicyclicForm([path_tree(1)] * 3))
        path = tmp_path / "c3.graph"
        path.write_text(dumps_graph(g))
        code, out = run(capsys, "label", "search", path, "--super", "--limit", "2")
        assert code == 0
        assert "sums: [9]" in out

    def test_product_writes_verified_certificate(self, capsys, tmp_path):
        sem = sem_odd_cycle(3)
        host = tmp_path / "host.dg"
        host.write_text(dumps_digraph(sem.digraph))
        lab = tmp_path / "seed.lab"
        lab.write_text(dumps_labeling(sem.certificate()))
        out_path = tmp_path / "out.lab"
        code, out = run(
            capsys, "label", "product", host, lab, "-n", "3", "--out", out_path
        )
        assert code == 0
        assert "PASS magic sum matches the product formula" in out
        code2, out2 = run(capsys, "label", "verify", out_path)
        assert code2 == 0

    def test_amplify(self, capsys, tmp_path):
        cert = sem_odd_cycle(3).certificate()
        lab = tmp_path / "seed.lab"
        lab.write_text(dumps_labeling(cert))
        code, out = run(capsys, "label", "amplify", lab, "--steps", "2", "-n", "3")
        assert code == 0
        assert "PASS at least steps + 2 distinct sums" in out


class TestPlanCommand:
    def test_default_bare_cycle(self, capsys):
        code, out = run(capsys, "plan", "--l", "0", "--m", "3", "--n", "3", "--s", "1")
        assert code == 0
        assert "PASS execution reproduces the target union" in out

    def test_with_coefficients(self, capsys):
        code, out = run(
            capsys, "plan", "--l", "1", "--m", "3", "--n", "3", "--s", "0",
            "--a", "3,2",
        )
        assert code == 0

    def test_infeasible_reported(self, capsys):
        code = main(["plan", "--l", "1", "--m", "3", "--n", "3", "--s", "0", "--a", "2,2"])
        assert code == 2
        assert "not an integer" in capsys.readouterr().err


class TestFormsCommands:
    def test_assemble_recognize_period_chain(self, capsys, tmp_path):
        form = UnicyclicForm([path_tree(1), path_tree(2)] * 2)
        form_path = tmp_path / "f.form"
        form_path.write_text(dumps_form(form))
        graph_path = tmp_path / "f.graph"
        code, out = run(capsys, "forms", "assemble", form_path, "--out", graph_path)
        assert code == 0

        code, out = run(capsys, "forms", "recognize", graph_path)
        assert code == 0
        assert "period multiplicity 2" in out

        code, out = run(capsys, "forms", "period", form_path)
        assert code == 0
        assert "multiplicity: 2" in out
