# Copyright 2026 The sifc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Security lattices, Lagois connections and cross-domain flow checking."""

import json as _json

from ._sifc import (
    LagoisConnection,
    Lattice,
    SifcError,
    check_connection,
    find_adjoint,
    label_leq,
    typecheck,
)
from ._sifc import run_cli as _run_cli

__all__ = [
    "LagoisConnection",
    "Lattice",
    "SifcError",
    "check_connection",
    "find_adjoint",
    "label_leq",
    "run",
    "typecheck",
]


def run(*args):
    """Run a command-line invocation in-process; returns (exit_code, report)."""
    code, report = _run_cli([str(a) for a in args])
    return code, _json.loads(report)
