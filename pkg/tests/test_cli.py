"""Command line front end: dispatch, exit codes, deterministic reports."""
import json

import pytest

from vertexzhu.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_preset_roundtrip_byte_identical(tmp_path, capsys):
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    assert main(["preset", "affine-sl2", "--x", "h/2",
                 "--output", str(p1)]) == 0
    assert main(["preset", "affine-sl2", "--x", "h/2",
                 "--output", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_ope_on_preset(tmp_path, capsys):
    spec = tmp_path / "sl2.json"
    main(["preset", "affine-sl2", "--x", "0", "--output", str(spec)])
    code, out = run(["ope", "--algebra", str(spec),
                     "--left", "e", "--right", "f"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert "h" in rep["text"] and "k" in rep["text"]


def test_verify_identity_exit_zero(tmp_path, capsys):
    spec = tmp_path / "sl2.json"
    main(["preset", "affine-sl2", "--x", "h/2", "--output", str(spec)])
    code, out = run(["verify-identity", "--algebra", str(spec),
                     "--identity", "quasi-asso", "--samples", "5",
                     "--seed", "3"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["pass"] and rep["failed"] == 0


def test_malformed_json_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code = main(["ope", "--algebra", str(bad), "--left", "e",
                 "--right", "f"])
    captured = capsys.readouterr()
    assert code == 2
    assert "line" in captured.err


def test_invalid_algebra_exit_three(tmp_path, capsys):
    # a bracket table violating skew-symmetry must be rejected on load
    spec = tmp_path / "bad_alg.json"
    spec.write_text(json.dumps({
        "generators": [
            {"name": "a", "parity": 0, "weight": "1", "phase": "0",
             "zeta": "1"},
            {"name": "b", "parity": 0, "weight": "1", "phase": "0",
             "zeta": "1"},
        ],
        "table": {"0,0": [[[[[1, 0]], "1"]]]},
    }))
    code = main(["ope", "--algebra", str(spec), "--left", "a",
                 "--right", "b"])
    captured = capsys.readouterr()
    assert code == 3
    assert "validation" in captured.err


def test_unknown_field_rejected(tmp_path, capsys):
    spec = tmp_path / "extra.json"
    spec.write_text(json.dumps({"generators": [], "table": {},
                                "surprise": 1}))
    code = main(["ope", "--algebra", str(spec), "--left", "e",
                 "--right", "f"])
    capsys.readouterr()
    assert code == 2


def test_determinism_across_runs(tmp_path):
    spec = tmp_path / "sl2.json"
    main(["preset", "affine-sl2", "--x", "h/2", "--output", str(spec)])
    outs = []
    for i in (1, 2):
        rep = tmp_path / ("r%d.json" % i)
        main(["verify-identity", "--algebra", str(spec),
              "--identity", "Borcherds-id", "--samples", "4",
              "--seed", "11", "--output", str(rep)])
        outs.append(rep.read_bytes())
    assert outs[0] == outs[1]


def test_theorem_d_cli(tmp_path):
    rep = tmp_path / "td.json"
    code = main(["theorem-d-check", "--lie", "sl2",
                 "--levels", "7/3,5/2", "--dmax", "4", "--zmax", "4",
                 "--output", str(rep)])
    assert code == 0
    data = json.loads(rep.read_text())
    assert data["pass"] and data["consistent"]


def test_zhu_census_cli(tmp_path, capsys):
    spec = tmp_path / "sl2.json"
    main(["preset", "affine-sl2", "--x", "0", "--output", str(spec)])
    code, out = run(["zhu-census", "--algebra", str(spec),
                     "--zmax", "3"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert [r["words"] for r in rep["rows"]] == [1, 4, 10, 20]
