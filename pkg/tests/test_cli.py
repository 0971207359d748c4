import json
import subprocess
import sys
import time

import pytest

from emvkit.cli import docs, main

CHAIN3 = {"kind": "chain", "n": 3}
CHAIN4 = {"kind": "chain", "n": 4}
DS = {"kind": "direct_sum", "pattern": [{"kind": "chain", "n": 2}], "repeat": True}
SETMINUS = {"kind": "builtin", "name": "setminus"}
ID_FS = {"kind": "builtin", "name": "identity", "source": {"kind": "finset_boolean"}}
FAM = {"kind": "family", "source": {"kind": "chain", "n": 2}, "target": CHAIN3,
       "entries": [{"a": 1, "map": [[0, 0], [1, 2]]}]}
FAM2 = {"kind": "family", "source": {"kind": "chain", "n": 2}, "target": {"kind": "chain", "n": 2},
        "entries": [{"a": 1, "map": [[0, 0], [1, 1]]}]}
BAD_TABLE = {"kind": "table", "oplus": [[0, 1, 2], [1, 2, 2], [2, 2, 1]], "neg": [2, 1, 0], "zero": 0, "one": 2}
Z3_CHAIN = {"kind": "pomonoid", "plus": [[0, 1, 2], [1, 2, 0], [2, 0, 1]],
            "leq": [[1, 1, 1], [0, 1, 1], [0, 0, 1]], "zero": 0}

ALGEBRA_DOCS = [
    CHAIN3,
    {"kind": "boolean", "atoms": 2},
    {"kind": "product", "factors": [{"kind": "chain", "n": 2}, CHAIN3]},
    BAD_TABLE,
    {"kind": "table", "join": [[0, 1], [1, 1]], "meet": [[0, 0], [0, 1]], "oplus": [[0, 1], [1, 1]],
     "zero": 0, "labels": ["a", "b"]},
    DS,
    {"kind": "finset_boolean"},
    {"kind": "emv_product", "factors": [{"kind": "chain", "n": 2}, {"kind": "finset_boolean"}]},
    {"kind": "unitization", "base": DS},
    {"kind": "free", "generators": ["x", "y"]},
    Z3_CHAIN,
]

MORPHISM_DOCS = [
    FAM,
    SETMINUS,
    ID_FS,
    {"kind": "composite", "inner": SETMINUS, "outer": ID_FS},
    {"kind": "mediating", "source": {"kind": "chain", "n": 2}, "components": [FAM, FAM2]},
    {"kind": "free_lift", "generators": ["x"], "target": CHAIN3, "assign": {"x": 1}},
    {"kind": "weakly_free_lift", "generators": ["x"], "target": DS, "assign": {"x": {"0": 1}}},
]


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        p = tmp_path / name
        p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(p)
    return write


def run(capsys, *argv):
    rc = main(list(argv))
    return rc, capsys.readouterr().out


@pytest.mark.parametrize("doc", ALGEBRA_DOCS, ids=[d["kind"] for d in ALGEBRA_DOCS])
def test_algebra_round_trip(doc):
    assert docs.encode_algebra(docs.decode_algebra(doc)) == doc


@pytest.mark.parametrize("doc", MORPHISM_DOCS, ids=[d["kind"] for d in MORPHISM_DOCS])
def test_morphism_round_trip(doc):
    f = docs.decode_morphism(doc, level=2)
    out = docs.encode_morphism(f, 2)
    assert docs.encode_morphism(docs.decode_morphism(out, level=2), 2) == out
    if doc["kind"] != "weakly_free_lift":
        assert out == doc


def test_check_pass(files, capsys):
    rc, out = run(capsys, "check", files("c.json", CHAIN3))
    assert rc == 0
    assert out == "mv-axioms: pass\nemv-axioms: pass\nlambda-identities: pass\n"


def test_check_bad_table(files, capsys):
    rc, out = run(capsys, "check", files("b.json", BAD_TABLE))
    assert rc == 1
    assert out.splitlines()[0] == 'mv-axioms: fail clause=monoid-assoc witness={"x": 1, "y": 1, "z": 2}'


def test_check_pomonoid(files, capsys):
    rc, out = run(capsys, "check", files("p.json", Z3_CHAIN))
    assert rc == 1
    assert "alt-ii: fail clause=ii" in out
    assert "emv-axioms: fail clause=EMV2" in out


def test_invalid_inputs_exit_2(files, capsys):
    assert main(["check", files("x.json", '{"kind": "chain", "n": }')]) == 2
    assert "invalid JSON at line 1 column 24" in capsys.readouterr().err
    assert main(["check", files("y.json", {"kind": "chain", "n": 1})]) == 2
    assert main(["check", files("z.json", {"kind": "nope"})]) == 2
    nonhom = {"kind": "family", "source": CHAIN3, "target": CHAIN3, "entries": [{"a": 2, "map": [[0, 0], [1, 2], [2, 2]]}]}
    assert main(["morphism", files("n.json", nonhom)]) == 2
    assert main(["check", "/nonexistent/file.json"]) == 2
    assert main(["no-such-command"]) == 2
    capsys.readouterr()


def test_similar_both(files, capsys):
    rc, out = run(capsys, "similar", files("s.json", SETMINUS), files("i.json", ID_FS), "--both", "--bound", "3")
    assert rc == 0
    assert out == "similar: pass-up-to-bound bound=3\nsimilar-converse: pass-up-to-bound bound=3\n"


def test_compose_writes_composite(files, capsys, tmp_path):
    target = tmp_path / "out.json"
    rc, out = run(capsys, "compose", files("i.json", ID_FS), files("s.json", SETMINUS), "--bound", "2",
                  "-o", str(target))
    assert rc == 0
    assert out == "morphism: pass-up-to-bound bound=2\n"
    assert json.loads(target.read_text()) == {"kind": "composite", "outer": ID_FS, "inner": SETMINUS}


def test_compose_finite_writes_family(files, capsys, tmp_path):
    target = tmp_path / "out.json"
    rc, _ = run(capsys, "compose", files("f2.json", {**FAM2, "target": {"kind": "chain", "n": 2}}),
                files("f.json", FAM2), "-o", str(target))
    assert rc == 0
    assert json.loads(target.read_text())["kind"] == "family"


def test_kernel_and_quotient(files, capsys):
    rc, out = run(capsys, "kernel", files("s.json", SETMINUS), "--bound", "2")
    assert rc == 0
    assert "  blocks: [[[]], [[1]], [[1, 2]], [[2]]]" in out
    rc, out = run(capsys, "quotient", files("c4.json", CHAIN4), files("g.json", {"kind": "generated", "pairs": [[0, 1]]}))
    assert rc == 0
    assert "  classes: [[0, 1, 2, 3]]" in out and "  size: 1" in out
    rc, out = run(capsys, "quotient", files("b.json", {"kind": "boolean", "atoms": 2}),
                  files("p.json", {"kind": "partition", "blocks": [[0, 1], [2, 3]]}))
    assert rc == 0 and "  size: 2" in out
    rc, _ = run(capsys, "quotient", files("c3.json", CHAIN3), files("bad.json", {"kind": "partition", "blocks": [[0, 1]]}))
    assert rc == 1


def test_product(files, capsys):
    rc, out = run(capsys, "product", files("a.json", FAM), files("b.json", FAM2))
    assert rc == 0
    assert out == "mediating: pass\nprojection[0]: pass\nprojection[1]: pass\n"


def test_free_lift(files, capsys):
    rc, out = run(capsys, "free-lift", "--gens", "x", "--target", files("c.json", CHAIN3), "--assign", "x=1/2",
                  "--term", "x+x", "--term", "x*x")
    assert rc == 0
    assert out.splitlines()[-1] == '  entries: {"2": {"x*x": 0, "x+x": 2}}'
    rc, out = run(capsys, "free-lift", "--gens", "x", "--target", files("d.json", DS), "--assign", 'x={"0": 1}',
                  "--bound", "2")
    assert rc == 0
    assert "sim-commutes: pass-up-to-bound" in out
    assert main(["free-lift", "--gens", "x,y,z", "--target", files("e.json", CHAIN3)]) == 2


def test_unitize(files, capsys):
    rc, out = run(capsys, "unitize", files("d.json", DS), "--bound", "1")
    assert rc == 0
    assert out.splitlines()[:2] == ["mv-axioms[slice 0]: pass", "  size: 2"]


def test_json_lines_parse(files, capsys):
    rc, out = run(capsys, "morphism", files("s.json", SETMINUS), "--json", "--bound", "2")
    assert rc == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert recs[0] == {"bound": 2, "check": "morphism", "clause": None, "verdict": "pass-up-to-bound", "witness": {}}
    assert all("wall_time" not in r for r in recs)
    rc, out = run(capsys, "morphism", files("s.json", SETMINUS), "--json", "--bound", "1", "--timing")
    assert all("wall_time" in json.loads(line) for line in out.splitlines())


def test_output_is_byte_stable(files, capsys):
    args = ["similar", files("s.json", SETMINUS), files("i.json", ID_FS), "--both", "--json", "--bound", "2"]
    outs = {run(capsys, *args)[1] for _ in range(3)}
    assert len(outs) == 1


def test_suite_quick_and_mutant():
    t = time.perf_counter()
    p = subprocess.run([sys.executable, "-m", "emvkit", "suite", "--level", "quick"], capture_output=True, text=True)
    assert time.perf_counter() - t < 10
    assert p.returncode == 0, p.stdout + p.stderr
    assert len(p.stdout.splitlines()) == 13
    p = subprocess.run([sys.executable, "-m", "emvkit", "suite", "--level", "quick", "--only", "c02",
                        "--inject-mutant", "direct-sum-lambda"], capture_output=True, text=True)
    assert p.returncode == 1
    assert p.stdout.startswith("c02")
    assert "fail" in p.stdout


def test_suite_only_unknown_id(capsys):
    assert main(["suite", "--only", "c99"]) == 2
    capsys.readouterr()
