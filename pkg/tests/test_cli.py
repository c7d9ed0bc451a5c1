import json
import subprocess
import sys

import pytest

from opsmith import chain as ch
from opsmith import serialize as ser
from opsmith.algebra import Bimodule, algebra_from_product
from opsmith.cli import bundled_scenarios, generate, main
from opsmith.operad import std_operad
from opsmith.ratlin import Matrix
from opsmith.scenario import ScenarioError, parse_scenario, run
from opsmith.smith import assemble_box_algebra, smith_ideals_equal, unravel, validate_smith_ideal

SCENARIOS = {p.stem: p for p in bundled_scenarios()}


def write(tmp_path, doc, name="s.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(p)


def asymmetric_scenario():
    """ℚ² over the unit Com algebra with f = (1, 0): valid parts, failing two-x."""
    o = std_operad("Com", 3)
    q = ch.unit_complex()
    y = algebra_from_product(o, {"*": q}, {"*": ch.left_unitor(q)})
    x2 = ch.sphere(0, 2)
    b = Bimodule(y, {"*": x2}, {})
    for (cs, d) in o.entries:
        for i in range(len(cs)):
            b.theta[(cs, d, i)] = ch.ChainMap(b.domain(cs, d, i), x2, {0: Matrix.identity(2)})
    f = ch.ChainMap(x2, q, {0: Matrix.from_rows([[1, 0]])})
    return {
        "name": "asymmetric",
        "operads": {"O": {"standard": "Com"}},
        "algebras": {"Y": ser.algebra_to_json(y, "O")},
        "bimodules": {"X": ser.bimodule_to_json(b, "Y")},
        "maps": {"f": ser.map_to_json(f)},
        "checks": [{"id": "two-x", "check": "two_x", "Y": "Y", "X": "X", "f": {"*": "f"}}],
    }


def test_dual_numbers_scenario_passes(capsys):
    assert main(["run", str(SCENARIOS["smith_dual_numbers"])]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert out.count("PASS") >= 10
    assert "summary: 10/10 checks passed, 0 failed" in out


def test_empty_scenario(capsys):
    assert main(["run", str(SCENARIOS["empty"]), "--format", "structured"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["checks"] == []


def test_corrupted_differential(tmp_path, capsys):
    doc = {"complexes": {"C": {"dims": {"2": 1, "1": 1, "0": 1}, "d": {"2": [["1"]], "1": [["1"]]}}}}
    p = write(tmp_path, doc)
    assert main(["run", p, "--format", "structured"]) == 2
    err = json.loads(capsys.readouterr().out)
    assert err["error"] == "validation"
    assert err["name"] == "C" and err["degree"] == 2
    assert "'C'" in err["message"]


def test_parse_error_has_position(tmp_path, capsys):
    p = write(tmp_path, '{"name": "x",\n  "checks": [}')
    assert main(["run", p, "--format", "structured"]) == 2
    err = json.loads(capsys.readouterr().out)
    assert err["error"] == "parse" and err["line"] == 2 and err["column"] > 1


def test_reference_error(tmp_path):
    p = write(tmp_path, {"checks": [{"id": "h", "check": "homology", "complex": "nope"}]})
    assert main(["run", p]) == 2
    with pytest.raises(ScenarioError) as exc:
        run(parse_scenario(json.dumps({"checks": [{"id": "h", "check": "homology", "complex": "nope"}]})))
    assert exc.value.kind == "reference"


def test_unknown_check_is_reference_error():
    with pytest.raises(ScenarioError) as exc:
        run(parse_scenario(json.dumps({"checks": [{"check": "bogus"}]})))
    assert exc.value.kind == "reference"


def test_failing_two_x_names_location(tmp_path, capsys):
    p = write(tmp_path, asymmetric_scenario())
    assert main(["run", p]) == 1
    out = capsys.readouterr().out
    assert "FAIL two-x" in out
    assert "i=1, j=2" in out and "(*,*;*)" in out and "color *" in out
    assert "summary: 0/1 checks passed, 1 failed" in out


def test_d1_homology_row_is_zero():
    rep = run(parse_scenario(json.dumps({"complexes": {"D": "D(1)"}})))
    assert rep.homology["D"]["homology"] == {0: 0, 1: 0}
    from opsmith.report import render_text
    text = render_text(rep)
    h_rows = [line.split() for line in text.splitlines() if line.strip().startswith("H ")]
    assert h_rows == [["H", "0", "0"]]


def test_generate_is_deterministic():
    a = generate("complex", 7, max_dim=3, degrees=(-1, 2))
    b = generate("complex", 7, max_dim=3, degrees=(-1, 2))
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    x = ser.complex_from_json(a["data"])
    assert ch.validate_complex(x)
    assert all(-1 <= n <= 2 and k <= 3 for n, k in x.dims.items())


@pytest.mark.parametrize("kind", ["cofibration", "trivial-cofibration"])
def test_generated_cofibrations(kind):
    for seed in range(5):
        f = ser.map_from_json(generate(kind, seed)["data"])
        c = ch.classify_map(f)
        assert c.is_cofibration
        assert c.is_weak_equivalence or kind == "cofibration"


def test_generated_smith_ideal_round_trip():
    o = std_operad("As", 3)
    s = ser.smith_from_json(generate("smith-ideal", 1, operad="As", N=3)["data"], o)
    assert validate_smith_ideal(s)
    assert smith_ideals_equal(unravel(assemble_box_algebra(s), o), s)


def test_generated_algebra_validates():
    from opsmith.algebra import validate_algebra
    o = std_operad("Com", 3)
    a = ser.algebra_from_json(generate("operad-algebra", 3, operad="Com")["data"], o)
    assert validate_algebra(a)


@pytest.mark.parametrize("argv", [
    ["generate", "complex", "--degrees", "2", "1"],
    ["generate", "complex", "--max-dim", "0"],
    ["generate", "smith-ideal", "--operad", "Lie"],
    ["generate", "operad-algebra", "--N", "1"],
    ["generate", "trivial-cofibration", "--max-dim", "1"],
])
def test_unsatisfiable_generate_params(argv):
    assert main(argv) == 2


def test_structured_reports_byte_identical(capsys):
    path = str(SCENARIOS["arrow_examples"])
    main(["run", path, "--format", "structured", "--seed", "3"])
    first = capsys.readouterr().out
    main(["run", path, "--format", "structured", "--seed", "3"])
    assert capsys.readouterr().out == first
    rep = json.loads(first)
    ids = [r["id"] for r in rep["checks"]]
    assert ids == sorted(ids) and len(ids) == len(set(ids))


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("OPSMITH_SEED", "11")
    main(["generate", "complex"])
    from_env = json.loads(capsys.readouterr().out)
    assert from_env["seed"] == 11
    main(["generate", "complex", "--seed", "11"])
    assert json.loads(capsys.readouterr().out) == from_env


def test_duplicate_check_ids_rejected():
    doc = {"checks": [{"id": "a", "check": "homology", "complex": "S(0)"}] * 2}
    with pytest.raises(ScenarioError):
        run(parse_scenario(json.dumps(doc)))


def test_every_criterion_has_a_bundled_scenario():
    for k in range(1, 11):
        assert any(name.startswith(f"criterion_{k:02d}_") for name in SCENARIOS)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "opsmith", "run", str(SCENARIOS["chain_examples"])],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "summary:" in r.stdout
