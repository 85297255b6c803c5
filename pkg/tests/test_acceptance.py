"""Acceptance gate: every headline criterion, exact arithmetic throughout.

Each test drives the corresponding suite runner and prints one PASS/FAIL
line; `quillen-lab paper-suite` executes the identical runners.
"""

import json

import pytest

from quillenlab.suite import CRITERIA, paper_suite

_RUNNERS = {cid: (title, runner) for cid, title, runner in CRITERIA}


@pytest.mark.parametrize("cid", [cid for cid, _, _ in CRITERIA])
def test_criterion(cid):
    title, runner = _RUNNERS[cid]
    passed, details = runner()
    status = "PASS" if passed else "FAIL"
    print(f"[{status}] criterion {cid}: {title}")
    assert passed, json.dumps(details, default=str, indent=2)


def test_suite_report_shape():
    report = paper_suite(criteria=["9"])
    payload = report.to_json()
    assert payload["schema_version"] == 1
    assert payload["all_passed"] is True
    row = payload["results"][0]
    assert set(row) == {"criterion", "title", "passed", "elapsed_s", "details"}
    # the report is valid JSON end to end
    json.dumps(payload)


def test_suite_detects_corrupted_fixture(monkeypatch):
    # tampering with a fixture must flip exactly the affected criterion
    import quillenlab.suite as suite_mod
    from quillenlab.admissible import Collection
    from quillenlab.constructions import sl42

    def corrupted():
        good = sl42()
        # swap c_1 for an element that normalizes <e_1>
        return Collection(E=good.E, c=(good.E.basis[0], good.c[1]),
                          group=good.group, maximality=good.maximality)

    monkeypatch.setattr(suite_mod, "sl42", corrupted)
    passed, details = suite_mod.run_criterion_3()
    assert not passed
