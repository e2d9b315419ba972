# Copyright (C) 2026 The vcot authors
# SPDX-License-Identifier: Apache-2.0
"""Python bindings for the vcot core library."""

import json as _json

from ._vcot import (
    VcotError,
    cosine,
    expected_merged_length,
    joint_log_likelihood,
    mock_embed_text,
    mock_generated_text,
    percent_hundredths,
    run,
    sha256_hex,
    sums_to_100,
    verify,
)
from ._vcot import tabulate_csv as _tabulate_csv

__all__ = [
    "VcotError",
    "cosine",
    "expected_merged_length",
    "joint_log_likelihood",
    "mock_embed_text",
    "mock_generated_text",
    "percent_hundredths",
    "run",
    "sha256_hex",
    "sums_to_100",
    "tabulate",
    "verify",
]


def tabulate(csv_text: str) -> tuple[dict, str]:
    """Tabulate annotation CSV text; returns (summary, markdown)."""
    summary, markdown = _tabulate_csv(csv_text)
    return _json.loads(summary), markdown
