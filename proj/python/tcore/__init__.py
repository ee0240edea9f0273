# Copyright 2026 The tcore Authors
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

"""Python interface to the tcore particle fluid kernel.

    import tcore
    sim = tcore.create_sim({"nx": 32}, demo="dam-break")
    sim.step(100)
    xy = sim.positions()
    sim.save_frame("frame.ppm")
"""

from ._tcore import (
    CflError,
    ClosedHandleError,
    ConfigError,
    Error,
    IoError,
    SerializationError,
    SimHandle,
    SimulationError,
    layout_benchmark,
    list_demos,
    load_snapshot,
)
from ._tcore import _create_sim

__all__ = [
    "CflError",
    "ClosedHandleError",
    "ConfigError",
    "Error",
    "IoError",
    "SerializationError",
    "SimHandle",
    "SimulationError",
    "create_sim",
    "layout_benchmark",
    "list_demos",
    "load_snapshot",
]


def create_sim(config=None, demo=None):
    """Seeded simulation from a mapping of setting names to scalars.

    Keys are the same as in a run manifest. ``demo`` is shorthand for the
    ``run.demo`` key.
    """
    settings = dict(config or {})
    if demo is not None:
        settings["run.demo"] = demo
    return _create_sim(settings)
