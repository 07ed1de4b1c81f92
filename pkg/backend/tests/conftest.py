from pathlib import Path

import pytest

from utils.engine import State
from utils.evaluator import eval_program
from utils.parser import parse
from utils.stdlib import equality_only_system, standard_system

PROGRAMS_DIR = Path(__file__).resolve().parent.parent / "programs"


@pytest.fixture
def standard():
    return standard_system()


@pytest.fixture
def equality_only():
    return equality_only_system()


@pytest.fixture
def initial_state(standard):
    return State(standard.initial_store(), 0)


@pytest.fixture
def programs_dir() -> Path:
    return PROGRAMS_DIR


@pytest.fixture
def run_source(standard):
    """Parse and evaluate source text; returns the answers of every query."""
    def run(text, system=None, **kwargs):
        system = system or standard
        return eval_program(parse(text, system), system, **kwargs)
    return run
