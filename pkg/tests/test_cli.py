import json
import os
import subprocess
import sys

import pytest

FAN2 = {"format": "pcdl/1", "elements": ["g", "t1", "t2"],
        "covers": [["g", "t1"], ["g", "t2"]]}
FAN3 = {"format": "pcdl/1", "elements": ["g", "t1", "t2", "t3"],
        "covers": [["g", "t1"], ["g", "t2"], ["g", "t3"]]}


def run(*args, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run([sys.executable, "-m", "pcdl.cli"] + list(args),
                          capture_output=True, text=True, env=full_env)


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture
def fan2(tmp_path):
    return write(tmp_path, "fan2.json", FAN2)


@pytest.fixture
def fan3(tmp_path):
    return write(tmp_path, "fan3.json", FAN3)


def test_dual_poset_to_lattice_and_back(tmp_path, fan2):
    r = run("dual", "--in", fan2)
    assert r.returncode == 0
    lat = json.loads(r.stdout)
    assert lat["format"] == "pcdl/1"
    assert len(lat["elements"]) == 5
    assert "joins" in lat and "meets" in lat

    back = write(tmp_path, "lat.json", lat)
    r = run("dual", "--in", back)
    assert r.returncode == 0
    pos = json.loads(r.stdout)
    assert sorted(pos) == ["covers", "elements", "format"]
    assert len(pos["elements"]) == 3


def test_dual_dot_output(fan2):
    r = run("dual", "--in", fan2, "--dot")
    assert r.returncode == 0
    assert r.stdout.startswith("digraph")


def test_check_pspace_map(tmp_path):
    doubling = {"format": "pcdl/1", "source": FAN3, "target": FAN2,
                "map": {"g": "g", "t1": "t1", "t2": "t2", "t3": "t2"}}
    path = write(tmp_path, "gamma.json", doubling)
    r = run("check-pspace-map", "--in", path)
    assert r.returncode == 0
    d = json.loads(r.stdout)
    assert d["p_morphism"] and d["onto"] and d["failure"] is None
    assert d["classification"] == "order_preserving"

    broken = dict(doubling, map={"g": "t1", "t1": "t1",
                                 "t2": "t2", "t3": "t2"})
    path = write(tmp_path, "broken.json", broken)
    r = run("check-pspace-map", "--in", path)
    assert r.returncode == 1
    d = json.loads(r.stdout)
    assert not d["p_morphism"] and d["failure"] is not None


def test_star_homs_counts(fan2, fan3):
    r = run("star-homs", "--from", fan2, "--to", fan3)
    assert r.returncode == 0
    d = json.loads(r.stdout)
    assert d["count"] == 8 and len(d["homs"]) == 8

    r = run("star-homs", "--from", fan2, "--to", fan3, "--onto")
    assert r.returncode == 1
    assert json.loads(r.stdout)["count"] == 0


def test_variety_index(fan3):
    r = run("variety-index", "--in", fan3)
    assert r.returncode == 0
    assert json.loads(r.stdout)["variety_index"] == 3


def test_congruences_count(fan3):
    r = run("congruences", "--in", fan3)
    assert r.returncode == 0
    assert json.loads(r.stdout)["count"] == 9


def test_quotient_by_labels(fan3):
    r = run("quotient", "--in", fan3, "--by", "g,t1")
    assert r.returncode == 0
    d = json.loads(r.stdout)
    assert len(d["algebra"]["elements"]) == 4
    assert d["projection"]["{t1}"] == "{}"


def test_extensile_exit_codes(fan2):
    r = run("extensile", "--in", fan2, "--n", "3", "--bound", "5")
    assert r.returncode == 0
    d = json.loads(r.stdout)
    assert d["verdict"] == "yes" and d["instances"] == 710

    r = run("extensile", "--in", fan2, "--n", "3", "--bound", "5",
            "--max-instances", "10")
    assert r.returncode == 2
    assert json.loads(r.stdout)["verdict"] == "inconclusive"


def test_amalgam_verdicts(fan2, fan3):
    r = run("amalgam", "--in", fan3, "--n", "3")
    assert r.returncode == 0
    d = json.loads(r.stdout)
    assert d["is_base"] is True and d["forbidden_is"] == []

    r = run("amalgam", "--in", fan2, "--n", "3")
    assert r.returncode == 1
    d = json.loads(r.stdout)
    assert d["is_base"] is False and d["forbidden_is"] == [2]
    assert d["witnesses"]["2"] == {"g": "g", "t1": "t1", "t2": "t2"}


def test_amalgam_oracle_column(fan2):
    r = run("amalgam", "--in", fan2, "--n", "3", "--oracle", "--bound", "5")
    assert r.returncode == 1
    d = json.loads(r.stdout)
    assert d["oracle"] == "fails_with_witness"


def test_lift_found_and_not_found(tmp_path):
    doubling = {"format": "pcdl/1", "source": FAN3, "target": FAN2,
                "map": {"g": "g", "t1": "t1", "t2": "t2", "t3": "t2"}}
    g_path = write(tmp_path, "gamma.json", doubling)
    a_path = write(tmp_path, "alpha.json", doubling)
    r = run("lift", "--gamma", g_path, "--alpha", a_path)
    assert r.returncode == 0
    d = json.loads(r.stdout)
    assert d["found"] is True and d["beta"] is not None

    total = {"format": "pcdl/1",
             "elements": ["g1", "a1", "b1", "c1", "g2", "a2", "b2", "c2"],
             "covers": [["g1", "a1"], ["g1", "b1"], ["g1", "c1"],
                        ["g2", "a2"], ["g2", "b2"], ["g2", "c2"]]}
    quot = {"format": "pcdl/1",
            "elements": ["g1", "a1", "b1", "c1", "g2", "a2", "b2"],
            "covers": [["g1", "a1"], ["g1", "b1"], ["g1", "c1"],
                       ["g2", "a2"], ["g2", "b2"]]}
    collapse = {"format": "pcdl/1", "source": total, "target": quot,
                "map": {"g1": "g1", "a1": "a1", "b1": "b1", "c1": "c1",
                        "g2": "g2", "a2": "a2", "b2": "b2", "c2": "a2"}}
    doubled = {"format": "pcdl/1", "source": FAN3, "target": quot,
               "map": {"g": "g2", "t1": "a2", "t2": "b2", "t3": "b2"}}
    g_path = write(tmp_path, "collapse.json", collapse)
    a_path = write(tmp_path, "doubled.json", doubled)
    r = run("lift", "--gamma", g_path, "--alpha", a_path)
    assert r.returncode == 1
    d = json.loads(r.stdout)
    assert d["found"] is False and d["beta"] is None


def test_q_model_verify_all():
    r = run("q-model", "--N", "1", "--m", "1", "--verify", "all",
            "--bound", "4")
    assert r.returncode == 0
    d = json.loads(r.stdout)
    assert d["sizes"] == {"total": 8, "quotient": 7}
    assert d["collapse_check"]["passed"] is True
    assert d["separation_check"]["passed"] is True
    lift = d["lift_check"]
    assert lift["case_counts"] == {"1": 10, "2": 12, "3a": 6, "3b": 3}
    assert lift["failures"] == 0
    assert lift["uncovered"] == 3
    assert d["divergence"]["diverges"] is True
    assert d["divergence"]["quotient_forbidden"] == [2]


def test_q_model_dot():
    r = run("q-model", "--N", "1", "--m", "1", "--dot")
    assert r.returncode == 0
    assert "subgraph cluster" in r.stdout
    assert "dashed" in r.stdout


def test_catalog_rows():
    r = run("catalog", "--max-points", "4", "--n", "3")
    assert r.returncode == 0
    d = json.loads(r.stdout)
    assert len(d["rows"]) == 16
    verdicts = {row["verdict"] for row in d["rows"]}
    assert verdicts == {"base", "not_base"}


def test_byte_identical_reruns(fan2):
    a = run("amalgam", "--in", fan2, "--n", "3", "--oracle", "--bound", "5")
    b = run("amalgam", "--in", fan2, "--n", "3", "--oracle", "--bound", "5")
    assert a.stdout == b.stdout

    one = run("amalgam", "--in", fan2, "--n", "3", "--oracle", "--bound",
              "5", "--jobs", "1")
    two = run("amalgam", "--in", fan2, "--n", "3", "--oracle", "--bound",
              "5", "--jobs", "2")
    assert one.stdout == two.stdout


def test_jobs_env_default(fan2):
    r = run("amalgam", "--in", fan2, "--n", "3", "--oracle", "--bound", "5",
            env={"PCDL_JOBS": "2"})
    assert r.returncode == 1
    assert json.loads(r.stdout)["oracle"] == "fails_with_witness"


def test_error_exit_codes(tmp_path, fan2):
    bad = tmp_path / "bad.json"
    bad.write_text('{"elements": [,]}')
    r = run("dual", "--in", str(bad))
    assert r.returncode == 3
    assert "line 1 column" in r.stderr

    r = run("dual", "--in", str(tmp_path / "missing.json"))
    assert r.returncode == 3
    assert r.stderr.startswith("error:")

    cyc = write(tmp_path, "cyc.json",
                {"format": "pcdl/1", "elements": ["a", "b"],
                 "covers": [["a", "b"], ["b", "a"]]})
    r = run("dual", "--in", cyc)
    assert r.returncode == 3
    assert "cycle" in r.stderr


def test_text_format(fan2):
    r = run("variety-index", "--in", fan2, "--format", "text")
    assert r.returncode == 0
    assert "variety_index: 2" in r.stdout


def test_out_file_and_seed(tmp_path, fan2):
    out = tmp_path / "vi.json"
    r = run("variety-index", "--in", fan2, "--out", str(out))
    assert r.returncode == 0 and r.stdout == ""
    assert json.loads(out.read_text())["variety_index"] == 2

    r = run("variety-index", "--in", fan2, "--seed", "7")
    assert json.loads(r.stdout)["seed"] == 7
