import pytest

import dicheck


def test_canonical_model_is_clean():
    text = dicheck.canonical_model()
    assert "model canonical" in text
    assert dicheck.validate_model(text) == []


def test_validate_reports_positions():
    diagnostics = dicheck.validate_model("version 1\nmodel m\nactor ghost g\n")
    assert diagnostics
    assert "ghost" in diagnostics[0]


def test_inference_derives_capabilities():
    facts = dicheck.derived_facts()
    assert "fulfills i issuance" in facts
    assert "retrieves o credential" in facts
    assert "owns o credential" not in facts  # declared, not derived

    proof = dicheck.prove("presents o credential")
    assert proof is not None
    assert "[Ax2]" in proof
    assert "[base]" in proof

    assert dicheck.prove("fulfills o issuance") is None
    with pytest.raises(ValueError):
        dicheck.prove("presents nobody credential")


def test_simulate_check_round_trip():
    assert set(dicheck.scenarios()) >= {"issuance", "presentation"}

    trace = dicheck.simulate("issuance", seed=7)
    verdicts = dicheck.check([trace])
    assert len(verdicts) == 10
    by_key = {v["fr"]: v for v in verdicts}
    assert by_key["FR33b"]["status"] == "satisfied"
    assert by_key["FR53"]["status"] == "not-exercised"
    assert all(v["status"] != "violated" for v in verdicts)
    assert any("event" in w for w in by_key["FR32"]["witnesses"])


def test_each_injection_is_detected():
    targets = {
        "skip-consent": ("issuance", "FR33b"),
        "process-after-withdraw": ("issuance", "FR47"),
        "skip-inform": ("issuance", "FR32"),
        "reuse-consent-across-credentials": ("presentation", "FR33a"),
        "verifier-initiated-presentation": ("presentation", "FR53"),
        "drop-metadata": ("presentation", "FR53"),
        "skip-proof-generate": ("proof-presentation", "FR54"),
    }
    assert set(dicheck.violations()) == set(targets)
    for inject, (scenario, fr) in targets.items():
        trace = dicheck.simulate(scenario, seed=7, inject=inject)
        violated = [v["fr"] for v in dicheck.check([trace]) if v["status"] == "violated"]
        assert violated == [fr], inject


def test_lint_matrices():
    original = dicheck.lint(builtin="original")
    failed = {(f["target"], f["criterion"]) for f in original if not f["passed"]}
    assert ("FR6.4", "atomic") in failed
    assert ("FR6.5", "verifiable") in failed
    assert all(target == "set" for target, _ in failed - {("FR6.4", "atomic"), ("FR6.5", "verifiable")})

    updated = dicheck.lint(builtin="updated")
    assert all(f["passed"] for f in updated if f["target"] != "set")


def test_coverage_matrix_shape():
    matrix = dicheck.coverage()
    assert len(matrix["nfr_keys"]) == 24
    assert matrix["linked_counts"]["NFR6"] == 10
    assert matrix["cells"]["NFR8"]["FR18"] == "constraint"
    assert matrix["cells"]["NFR6"]["FR18"] == "linked"


def test_readability():
    assert dicheck.grade("") is None
    consent = dicheck.grade("I agree that my name may be stored.")
    assert consent == pytest.approx(2.28, abs=0.01)
    assert dicheck.passes_grade8(8.0)
    assert not dicheck.passes_grade8(8.01)


def test_run_cli_exit_codes(tmp_path):
    code, out, err = dicheck.run_cli(["lint", "--builtin", "original"])
    assert code == 1
    assert "FR6.4" in out

    trace = tmp_path / "issuance.ditrace"
    trace.write_text(dicheck.simulate("issuance", seed=7))
    code, out, err = dicheck.run_cli(["check", str(trace), "--format", "machine"])
    assert code == 0
    assert "verdict FR18 satisfied" in out

    code, _, err = dicheck.run_cli(["simulate", "fantasy"])
    assert code == 2
    assert "unknown scenario" in err
