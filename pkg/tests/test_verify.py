import json

from cdzero import verify


def test_case_ids_are_unique_and_prefixed():
    ids = [c.case_id for c in verify.registry()]
    assert len(ids) == len(set(ids))
    assert all(i.split("_")[0] in {"example", "identity", "spectrum", "construct", "stiefel"} for i in ids)


def test_worked_examples_pass_except_the_level5_readings():
    reports = verify.run_cases(["example_"])
    failed = {r.case_id for r in reports if not r.passed}
    assert failed == {"example_level5_flat_text", "example_level5_pair_form"}


def test_identity_cases_pass_with_few_draws():
    reports = verify.run_cases(["identity_"], draws=3)
    assert reports and all(r.passed for r in reports), [r.detail for r in reports if not r.passed]


def test_crashing_case_becomes_a_failure(monkeypatch):
    def boom(draws):
        raise ValueError("broken")
    monkeypatch.setattr(verify, "_REGISTRY", [verify.Case("example_boom", "worked_example", boom)])
    (rep,) = verify.run_cases()
    assert rep.status == "fail" and "broken" in rep.detail


def test_reports_serialize():
    reports = verify.run_cases(["example_basis"])
    payload = verify.reports_json(reports)
    json.dumps(payload)
    assert payload["passed"] == 1
    assert "1 passed, 0 failed" in verify.summary_table(reports)
