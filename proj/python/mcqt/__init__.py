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
"""Controlled multi-party teleportation simulator."""

import json

from ._mcqt import (
    ImpossibleBranchError,
    SizeCapError,
    UsageError,
    branch_count,
    correction,
    intrinsic_efficiency,
    protocol_classical_bits,
    random_inputs,
    run_exhaustive,
    run_forced,
    run_sampled,
)
from . import _mcqt

__all__ = [
    "ImpossibleBranchError",
    "SizeCapError",
    "UsageError",
    "branch_count",
    "correction",
    "intrinsic_efficiency",
    "protocol_classical_bits",
    "random_inputs",
    "run_exhaustive",
    "run_forced",
    "run_sampled",
    "prepare_channel",
    "run",
    "verify_tables",
    "verify_gating",
    "efficiency",
]


def prepare_channel(pairs=8, verify=False, allow_large_dense=False):
    return json.loads(_mcqt.channel_report_json(pairs, verify, allow_large_dense))


def run(senders=4, seed=1, mode="sampled:1", engine="structured",
        allow_large_dense=False, workers=1):
    return json.loads(_mcqt.run_report_json(senders, seed, mode, engine,
                                            allow_large_dense, workers))


def verify_tables(seed=7):
    return json.loads(_mcqt.tables_report_json(seed))


def verify_gating(seed=11, draws=20):
    return json.loads(_mcqt.gating_report_json(seed, draws))


def efficiency():
    return json.loads(_mcqt.efficiency_report_json())
