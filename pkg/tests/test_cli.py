import json
import math

import numpy as np
import pytest

from eulerpart import SurfaceSpec, build_complex, from_labels
from eulerpart.cli import main
from eulerpart.jsonio import dumps, partition_to_json


@pytest.fixture()
def bands3_file(tmp_path):
    c = build_complex(SurfaceSpec.moebius(12, 12))
    x = (np.arange(12) + 0.5) * math.pi / 12
    p = from_labels(c, np.tile((np.sin(3 * x) > 0).astype(int), (12, 1)).ravel())
    path = tmp_path / "bands3.json"
    path.write_text(dumps(partition_to_json(p)))
    return path


def run(args, capsys):
    code = main([str(a) for a in args])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_invariants_command(bands3_file, capsys):
    code, doc = run(["invariants", bands3_file], capsys)
    assert code == 0
    assert (doc["kappa"], doc["omega"], doc["beta"], doc["sigma"]) == (2, 1, 1, 0)
    assert len(doc["domains"]) == 2


def test_verify_command(bands3_file, capsys):
    code, doc = run(["verify", bands3_file], capsys)
    assert code == 0
    assert doc["status"] == "pass"


def test_verify_report_only_torus(tmp_path, capsys):
    c = build_complex(SurfaceSpec.torus(6, 6))
    p = from_labels(c, np.zeros(36, dtype=int))
    f = tmp_path / "t.json"
    f.write_text(dumps(partition_to_json(p)))
    code, doc = run(["verify", f], capsys)
    assert code == 0
    assert doc["status"] == "report_only"


def test_nodal_command(capsys):
    code, doc = run(
        ["nodal", "--family", "bands", "--m", "3", "--surface", "moebius", "--n", "30"],
        capsys,
    )
    assert code == 0
    inv = doc["invariants"]
    assert (inv["kappa"], inv["omega"], inv["beta"], inv["sigma"]) == (2, 1, 1, 0)
    assert doc["verdict"]["status"] == "pass"
    assert inv["defect"] == 0


def test_nodal_instability_exit_code(capsys):
    code = main(["nodal", "--family", "bands", "--m", "3", "--n", "8",
                 "--max-refine", "0"])
    assert code == 3


def test_sweep_command(tmp_path, capsys):
    out = tmp_path / "sweep.json"
    code = main(["sweep", "--family", "phi", "--beta", str(math.pi / 6),
                 "--count", "5", "--n", "48", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert len(doc["rows"]) == 5
    assert all(r["defect"] == 0 for r in doc["rows"] if r["stable"])


def test_bisect_command(capsys):
    code, doc = run(["bisect", "--beta", str(math.pi / 6), "--tol", "0.05",
                     "--n", "48"], capsys)
    assert code == 0
    assert doc["width"] <= 0.05


def test_random_check_command(capsys):
    code, doc = run(["random-check", "--surface", "moebius", "--count", "10",
                     "--seed", "7", "--size", "12"], capsys)
    assert code == 0
    assert doc["passes"] == 10
    assert doc["defect_histogram"] == {"0": 10}


def test_cover_check_on_file(bands3_file, capsys):
    code, doc = run(["cover-check", bands3_file], capsys)
    assert code == 0
    assert doc["kappa_star"] == 3


def test_circle_command(tmp_path, capsys):
    doc = {"surface": {"surface": "projective", "width": 8, "height": 8},
           "cycle": {"midline": "horizontal"}}
    f = tmp_path / "cycle.json"
    f.write_text(json.dumps(doc))
    code, out = run(["circle", f], capsys)
    assert code == 0
    assert out["n_components"] == 1

    doc["cycle"] = {"block": [2, 2, 4, 4]}
    f.write_text(json.dumps(doc))
    code, out = run(["circle", f], capsys)
    assert code == 0
    assert out["n_components"] == 2


def test_cut_command(tmp_path, capsys):
    c = build_complex(SurfaceSpec.moebius(6, 6))
    p = from_labels(c, np.zeros(36, dtype=int))
    pf = tmp_path / "p.json"
    pf.write_text(dumps(partition_to_json(p)))
    path = tmp_path / "path.json"
    path.write_text(json.dumps({"edges": [c.horizontal_edge(i, 3) for i in range(6)]}))
    code, doc = run(["cut", pf, "--path", path], capsys)
    assert code == 0
    assert doc["after"]["omega"] == 0
    assert doc["after"]["delta"] == doc["before"]["delta"]
    assert doc["n_crossings"] == 0


def test_normalize_command(tmp_path, capsys):
    c = build_complex(SurfaceSpec.rectangle(4, 3))
    lab = np.ones(12, dtype=int)
    for i, j in [(1, 0), (0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (2, 1)]:
        lab[j * 4 + i] = 0
    pf = tmp_path / "s.json"
    pf.write_text(dumps(partition_to_json(from_labels(c, lab))))
    code, doc = run(["normalize", pf], capsys)
    assert code == 0
    assert doc["after"]["kappa"] == doc["before"]["kappa"] + 1
    assert doc["after"]["delta"] == doc["before"]["delta"]


def test_render_command(bands3_file, tmp_path, capsys):
    out = tmp_path / "img.ppm"
    assert main(["render", str(bands3_file), "--out", str(out)]) == 0
    assert out.read_bytes().startswith(b"P6")
    out_svg = tmp_path / "img.svg"
    assert main(["render", str(bands3_file), "--out", str(out_svg)]) == 0
    assert out_svg.read_bytes().startswith(b"<svg")


def test_cli_deterministic_output(bands3_file, capsys):
    code1, doc1 = run(["invariants", bands3_file], capsys)
    code2, doc2 = run(["invariants", bands3_file], capsys)
    assert doc1 == doc2


def test_usage_errors(capsys, tmp_path):
    assert main(["no-such-command"]) == 2
    assert main(["verify", str(tmp_path / "missing.json")]) == 2


def test_invariant_violation_exit_code(tmp_path):
    # a dangling wall is rejected as a hard invariant violation
    c = build_complex(SurfaceSpec.rectangle(4, 4))
    doc = {"surface": {"surface": "rectangle", "width": 4, "height": 4},
           "labels": [0] * 16,
           "walls": [[int(c.vertical_edge(2, 1))]]}
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(doc))
    assert main(["invariants", str(f)]) == 1
