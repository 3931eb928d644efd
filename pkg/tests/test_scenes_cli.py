"""Scene files, reports, and the command line."""

import json
from fractions import Fraction

import pytest
import sympy

from folindex.cli import main
from folindex.errors import SceneParseError
from folindex.pencil import bifurcation_formula_check
from folindex.resolve import derive_resolution
from folindex.scenes import (decode_value, derived_scene, dump_scene,
                             encode_value, parse_scene, polynomial_scene)

SCENES = "scenes"


def tower_doc(**overrides):
    doc = {
        "kind": "combinatorial",
        "name": "tower",
        "blowups": [[], [1], [1, 2]],
        "invariant": [0, 0, 1],
        "branches": [{"name": "h", "s": [0, 0, 1]},
                     {"name": "f", "s": [1, 1, 0]}],
    }
    doc.update(overrides)
    return doc


class TestValues:
    def test_round_trips(self):
        for v in (0, 7, -3, Fraction(-1, 3), Fraction(22, 7)):
            assert decode_value(encode_value(v)) == v

    def test_integral_fraction_collapses(self):
        assert encode_value(Fraction(8, 2)) == 4

    def test_algebraic(self):
        enc = {"minpoly": "t^2 - 2", "root": 1}
        val = decode_value(enc)
        assert (val**2).equals(2) and val > 0
        assert decode_value(encode_value(val)) == val

    def test_rejects_booleans(self):
        with pytest.raises(SceneParseError):
            decode_value(True)

    def test_rejects_bad_rational(self):
        with pytest.raises(SceneParseError):
            decode_value("3/0")
        with pytest.raises(SceneParseError):
            decode_value("pi")

    def test_rejects_two_variable_minpoly(self):
        with pytest.raises(SceneParseError):
            decode_value({"minpoly": "t*s - 2", "root": 0})


class TestSceneParsing:
    def test_combinatorial(self):
        scene = parse_scene(json.dumps(tower_doc()))
        assert scene.a.rows[0] == (-3, 0, 1)
        assert scene.marking.iota == (0, 0, 1)
        assert scene.branches["h"].s == (0, 0, 1)

    def test_default_marking_is_invariant(self):
        doc = tower_doc()
        del doc["invariant"]
        scene = parse_scene(json.dumps(doc))
        assert scene.marking.iota == (1, 1, 1)

    def test_bad_kind(self):
        with pytest.raises(SceneParseError, match="kind"):
            parse_scene(json.dumps({"kind": "mystery"}))

    def test_duplicate_branch_name(self):
        doc = tower_doc(branches=[{"name": "h", "s": [0, 0, 1]},
                                  {"name": "h", "s": [1, 1, 0]}])
        with pytest.raises(SceneParseError, match="duplicate"):
            parse_scene(json.dumps(doc))

    def test_unknown_balanced_name(self):
        with pytest.raises(SceneParseError, match="unknown branch"):
            parse_scene(json.dumps(tower_doc(balanced=["nope"])))

    def test_wrong_vector_length(self):
        doc = tower_doc(branches=[{"name": "h", "s": [0, 0]}])
        with pytest.raises(SceneParseError, match="nonnegative"):
            parse_scene(json.dumps(doc))

    def test_reduced_point_needs_location(self):
        doc = tower_doc(reduced_points=[{"cs": -1}])
        with pytest.raises(SceneParseError, match="reduced_points"):
            parse_scene(json.dumps(doc))

    def test_pencil_needs_stanza(self):
        doc = tower_doc(kind="pencil")
        with pytest.raises(SceneParseError, match="pencil"):
            parse_scene(json.dumps(doc))

    def test_pencil_generators_must_attach_alike(self):
        doc = tower_doc(kind="pencil")
        doc["pencil"] = {"generators": ["f", "h"], "mu_generic": 1,
                         "i0": 5, "fibers": []}
        with pytest.raises(SceneParseError, match="same attachment"):
            parse_scene(json.dumps(doc))

    def test_polynomial_requires_f(self):
        with pytest.raises(SceneParseError, match="'f'"):
            parse_scene(json.dumps({"kind": "polynomial"}))

    def test_fixture_scenes_parse(self):
        import pathlib
        for path in sorted(pathlib.Path(SCENES).glob("*.json")):
            scene = parse_scene(path.read_text(), source=str(path))
            assert scene.kind in ("combinatorial", "polynomial", "pencil")


class TestReplayIdentity:
    def test_pencil_replay_matches_derivation(self):
        res = derive_resolution({"f": "x*y + y^2 + x^3", "g": "x*y"},
                                mode="pencil")
        doc = derived_scene(res, name="replay")
        scene = parse_scene(dump_scene(doc))
        model = scene.pencil_model
        direct = bifurcation_formula_check(res.pencil)
        replay = bifurcation_formula_check(model)
        assert replay.mu_pair == direct.mu_pair == 12
        assert replay.mu_fg == direct.mu_fg == 11
        assert model.i0 == res.pencil.i0
        assert model.mu_generic == res.pencil.mu_generic
        assert {f.name: f.mu for f in model.bifurcation_fibers} == \
            {f.name: f.mu for f in res.pencil.bifurcation_fibers}

    def test_curve_replay_matches_derivation(self):
        res = derive_resolution({"c": "y^2 - x^3"})
        doc = derived_scene(res, name="replay")
        scene = parse_scene(dump_scene(doc))
        assert scene.program.to_lists() == res.program.to_lists()
        assert scene.branches["c"].s == res.s_vectors["c"]

    def test_polynomial_scene_builder_round_trips(self):
        doc = polynomial_scene("y^2 - x^3", "x*y", seed=3)
        scene = parse_scene(json.dumps(doc))
        assert scene.seed == 3
        assert scene.as_pencil
        assert scene.germs["f"].order() == 2


class TestCli:
    def test_invariants_text(self, capsys):
        assert main(["invariants", "--scene", f"{SCENES}/radial.json"]) == 0
        out = capsys.readouterr().out
        assert "result: PASS" in out
        assert "mu(foliation)" in out

    def test_invariants_json_deterministic(self, capsys):
        assert main(["invariants", "--scene", f"{SCENES}/radial.json",
                     "--format", "json"]) == 0
        first = capsys.readouterr().out
        assert main(["invariants", "--scene", f"{SCENES}/radial.json",
                     "--format", "json"]) == 0
        second = capsys.readouterr().out
        assert first == second
        payload = json.loads(first)
        assert payload["result"] == "pass"
        assert payload["scene"] == "radial"

    def test_pencil_scene(self, capsys):
        path = f"{SCENES}/node-cusp-pencil.json"
        assert main(["pencil", "--scene", path]) == 0
        out = capsys.readouterr().out
        assert "result: PASS" in out

    def test_pencil_polynomial_with_oracle(self, capsys):
        path = f"{SCENES}/node-cusp-germs.json"
        assert main(["pencil", "--scene", path, "--oracle"]) == 0
        out = capsys.readouterr().out
        assert "independent (resultant)" in out

    def test_exit_code_input_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{\"kind\": \"nope\"}")
        assert main(["invariants", "--scene", str(bad)]) == 2

    def test_exit_code_unsupported(self, tmp_path, capsys):
        doc = {"kind": "polynomial", "f": "(y^2 - 2*x^2)^2 - x^5",
               "max_extension_degree": 1}
        path = tmp_path / "ext.json"
        path.write_text(json.dumps(doc))
        assert main(["invariants", "--scene", str(path)]) == 3

    def test_exit_code_violated_expectation(self, tmp_path, capsys):
        doc = json.loads(open(f"{SCENES}/radial.json").read())
        doc["expected"]["mu(foliation)"] = 99
        path = tmp_path / "wrong.json"
        path.write_text(json.dumps(doc))
        assert main(["invariants", "--scene", str(path)]) == 1
        out = capsys.readouterr().out
        assert "result: FAIL" in out

    def test_resolve_emits_replayable_scene(self, tmp_path, capsys):
        out_path = tmp_path / "derived.json"
        assert main(["resolve", "--scene", f"{SCENES}/node-cusp-germs.json",
                     "--out", str(out_path)]) == 0
        capsys.readouterr()
        assert main(["pencil", "--scene", str(out_path)]) == 0
        out = capsys.readouterr().out
        assert "result: PASS" in out

    def test_resolve_json_lists_branches(self, capsys):
        assert main(["resolve", "--scene", f"{SCENES}/cusp-curve.json",
                     "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        (branch,) = payload["branches"]
        assert branch["characteristic_exponents"] == [2, 3]
        assert payload["scene"]["blowups"] == [[], [1], [1, 2]]

    def test_verify_command(self, capsys):
        assert main(["verify", "--count", "10", "--max-n", "8"]) == 0
        out = capsys.readouterr().out
        assert "result: PASS" in out
        assert "decomposition" in out

    def test_dot_output(self, tmp_path, capsys):
        dot = tmp_path / "graph.dot"
        assert main(["invariants", "--scene", f"{SCENES}/radial.json",
                     "--dot", str(dot)]) == 0
        assert "graph dual" in dot.read_text()
