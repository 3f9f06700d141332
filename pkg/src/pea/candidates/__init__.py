"""Reference programs packaged as synthesis candidates.

Each module follows the candidate wire protocol and defines the entry points
the task's prompt asks for, so it passes the integrity check unchanged.
"""

from importlib import resources

from ..synthesis.candidate import CandidateProgram, default_manifest
from ..synthesis.templates import TASKS

_MODULES = {"sat": "sat_pea.py", "g24": "g24_pea.py", "bw": "bw_pea.py", "logi": "logi_pea.py"}


def reference_candidate(task: str) -> CandidateProgram:
    name = _MODULES[task]
    source = resources.files(__name__).joinpath(name).read_text()
    manifest = default_manifest(TASKS[task])
    manifest["source"] = name
    return CandidateProgram(source, manifest)
