"""Command-line surface: expression parser, identity fuzzer, scenarios."""

from .fuzz import fuzz_identities, replay_counterexample
from .main import main
from .parser import parse_expression, parse_ideal
from .scenario import COMMANDS, Scenario, load_scenario, run_scenario, scenario_from_dict

__all__ = [
    "COMMANDS",
    "Scenario",
    "fuzz_identities",
    "load_scenario",
    "main",
    "parse_expression",
    "parse_ideal",
    "replay_counterexample",
    "run_scenario",
    "scenario_from_dict",
]
