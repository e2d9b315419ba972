# Copyright (C) 2026 The vcot authors
# SPDX-License-Identifier: Apache-2.0

import hashlib
import math
import pathlib

import pytest

import vcot

ROOT = pathlib.Path(__file__).resolve().parents[2]
FIXTURES = ROOT / "data" / "fixtures"


def test_hash_matches_hashlib():
    assert vcot.sha256_hex("abc") == hashlib.sha256(b"abc").hexdigest()


def test_merged_length():
    assert [vcot.expected_merged_length(5, d) for d in (1, 2, 3)] == [9, 17, 33]
    assert vcot.expected_merged_length(0, 2) == 0


def test_joint_log_likelihood():
    assert vcot.joint_log_likelihood([]) == 0.0
    assert vcot.joint_log_likelihood([-0.5, -0.25]) == pytest.approx(-0.75, abs=1e-12)
    with pytest.raises(vcot.VcotError):
        vcot.joint_log_likelihood([0.5])


def test_mock_embedding_is_unit_norm():
    v = vcot.mock_embed_text("a red kite over the beach")
    assert len(v) == 64
    assert math.isclose(math.fsum(x * x for x in v), 1.0, abs_tol=1e-12)
    assert vcot.cosine(v, v) == pytest.approx(1.0)


def test_mock_text():
    assert vcot.mock_generated_text("hello", 0.0, 0) == "GEN(2cf24dba,0.00,0)"


def test_tabulate():
    csv = (
        "item_id,metric,mode,pairwise_outcome,scale_score,baseline,annotator_id\n"
        "a,image_consistency,pairwise,win,,cot_plus_coi,x\n"
        "b,image_consistency,pairwise,tie,,cot_plus_coi,x\n"
        "c,image_consistency,pairwise,tie,,cot_plus_coi,x\n"
        "d,image_consistency,pairwise,loss,,cot_plus_coi,x\n"
    )
    summary, markdown = vcot.tabulate(csv)
    cell = summary["win_tie_loss"]["cot_plus_coi"]["image_consistency"]
    assert (cell["win"], cell["tie"], cell["loss"]) == (25.0, 50.0, 25.0)
    assert "cot_plus_coi" in markdown
    assert vcot.sums_to_100(26.82, 53.02, 20.16)


def test_run_and_verify(tmp_path):
    out = tmp_path / "run"
    summary = vcot.run(FIXTURES / "vist_two_stories.json", "vist", out, depth=1, seed=7, baselines=["cot_plus_coi"])
    assert summary["sequences"] == 2
    assert summary["failed"] == 0
    report = vcot.verify(out)
    assert report["ok"], report["problems"]
    again = vcot.run(FIXTURES / "vist_two_stories.json", "vist", out, depth=1, seed=7, baselines=["cot_plus_coi"])
    assert again["backend_calls"] == 0
