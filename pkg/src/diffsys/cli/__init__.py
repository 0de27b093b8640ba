"""The workbench script language and the command-line tool."""

from .dsl import ScriptError, WorkbenchScript, parse_function, parse_operator, parse_script, parse_shift
from .runner import RunConfig, run_script

__all__ = [
    "RunConfig",
    "ScriptError",
    "WorkbenchScript",
    "parse_function",
    "parse_operator",
    "parse_script",
    "parse_shift",
    "run_script",
]
