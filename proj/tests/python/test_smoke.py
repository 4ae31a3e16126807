# Copyright 2026 The mcqt Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import mcqt


def test_counts():
    assert mcqt.branch_count(1) == 32
    assert mcqt.branch_count(4) == 2**17
    assert mcqt.protocol_classical_bits(4) == 20


def test_forced_branch_restores_messages():
    inputs = mcqt.random_inputs(4, 3)
    r = mcqt.run_forced(inputs, "k+,k-,l+,l-,k+,k+,l-,l-,1")
    assert r["z"] == 1
    assert r["probability"] == pytest.approx(2.0**-17, abs=1e-12)
    assert all(abs(f - 1) < 1e-9 for f in r["fidelity"])
    assert r["classical_bits"] == 20


def test_engines_agree_on_sampled_run():
    inputs = mcqt.random_inputs(2, 4)
    a = mcqt.run_sampled(inputs, 9, "dense")
    b = mcqt.run_sampled(inputs, 9, "structured")
    assert a["branch_index"] == b["branch_index"]


def test_exhaustive_two_senders():
    rows = mcqt.run_exhaustive(mcqt.random_inputs(2, 5), workers=2)
    assert len(rows) == 512
    assert math.fsum(r["probability"] for r in rows) == pytest.approx(1, abs=1e-10)
    assert [r["branch_index"] for r in rows] == list(range(512))


def test_correction_lookup():
    assert mcqt.correction(1, "k+", "k+", 0) == "I (x) I"


def test_reports_pass():
    assert mcqt.prepare_channel(8, verify=True)["pass"]
    assert mcqt.verify_tables()["pass"]
    assert mcqt.verify_gating(draws=5)["pass"]
    assert mcqt.efficiency()["pass"]
    rep = mcqt.run(senders=1, mode="exhaustive", engine="dense")
    assert rep["pass"] and len(rep["branches"]) == 32


def test_reports_deterministic():
    assert mcqt.run(seed=4, mode="sampled:8") == mcqt.run(seed=4, mode="sampled:8")


def test_unnormalized_input_rejected():
    with pytest.raises(ValueError):
        mcqt.run_forced([[1, 1, 0, 0]], "k+,k+,0")
