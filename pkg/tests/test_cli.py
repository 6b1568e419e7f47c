"""Command-line interface: exit codes and deterministic reports."""

import json

import pytest

from schemepoly import catalog, dump_scheme
from schemepoly.cli import main


@pytest.fixture()
def km32_files(tmp_path):
    entry = catalog.complete_multipartite(3, 2)
    scheme = tmp_path / "km32.json"
    dom = tmp_path / "dom.json"
    order = tmp_path / "lex.json"
    dump_scheme(entry.scheme, str(scheme))
    dom.write_text(json.dumps(entry.domain.to_json()))
    order.write_text(json.dumps(entry.order.to_json()))
    return str(scheme), str(dom), str(order)


def test_validate_and_invariants(km32_files, tmp_path, capsys):
    scheme, _, _ = km32_files
    assert main(["validate", "--scheme", scheme]) == 0
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert main(["invariants", "--scheme", scheme, "--out", str(out1)]) == 0
    assert main(["invariants", "--scheme", scheme, "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    report = json.loads(out1.read_text())
    assert report["P"][0] == ["1", "4", "1"]


def test_make_round_trip(tmp_path, capsys):
    out = tmp_path / "made.json"
    rc = main(["make", "--family", "complete_multipartite",
               "--params", "3,2", "--out", str(out)])
    assert rc == 0
    assert main(["validate", "--scheme", str(out)]) == 0


def test_closed_subsets_and_series(tmp_path, capsys):
    q3 = tmp_path / "q3.json"
    main(["make", "--family", "graph_distance", "--params", '"hypercube",3',
          "--out", str(q3)])
    out = tmp_path / "subs.json"
    assert main(["closed-subsets", "--scheme", str(q3),
                 "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["checks"][0]["count"] == 4
    out2 = tmp_path / "series.json"
    assert main(["series", "--scheme", str(q3), "--out", str(out2)]) == 0
    assert json.loads(out2.read_text())["checks"][0]["chains"] == 2


def test_structure_and_ideal_commands(km32_files, tmp_path, capsys):
    scheme, dom, order = km32_files
    assert main(["check-ppoly", "--scheme", scheme, "--domain", dom,
                 "--order", order]) == 0
    out = tmp_path / "gb.json"
    assert main(["groebner", "--scheme", scheme, "--domain", dom,
                 "--order", order, "--out", str(out)]) == 0
    rendered = json.loads(out.read_text())["basis"]["rendered"]
    assert "x2^2 - 1" in rendered


def test_theorem_verifiers(km32_files, tmp_path, capsys):
    scheme, dom, order = km32_files
    assert main(["verify-thm41", "--scheme", scheme]) == 0
    closed = '[[0,0],[0,1]]'
    out = tmp_path / "t47.json"
    assert main(["verify-thm47", "--scheme", scheme, "--domain", dom,
                 "--order", order, "--closed", closed,
                 "--out", str(out)]) == 0
    report = json.loads(out.read_text())["thm47"]
    assert report["block_ideal"] == ["x1^2 - 1"]
    assert report["quotient_adjoined"] == ["x1^2 - 2*x1 - 8"]
    assert report["quotient_ideal"] == ["x1^2 - x1 - 2"]
    assert main(["verify-thm45", "--scheme", scheme, "--domain", dom,
                 "--order", order, "--closed", closed]) == 0
    assert main(["verify-thm46", "--scheme", scheme, "--domain", dom,
                 "--order", order, "--closed", closed]) == 0


def test_error_exit_codes(tmp_path, capsys):
    # usage error: unreadable scheme file
    assert main(["validate", "--scheme", str(tmp_path / "missing.json")]) == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert main(["validate", "--scheme", str(broken)]) == 2
    # failing check: invalid scheme matrix
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"relations": [[0, 0], [0, 0]]}))
    assert main(["validate", "--scheme", str(bad)]) == 1
