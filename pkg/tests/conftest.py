import os
import tempfile

os.environ.setdefault("SCF_LOG_DIR", os.path.join(tempfile.gettempdir(), "scf-workbench-test-logs"))
os.environ.setdefault("SCF_LOG_LEVEL", "WARNING")

import pytest

from scf_workbench.prefcore import Profile, ScfTable
from scf_workbench.services.rules import borda, constant_table, dictatorship, plurality
from scf_workbench.table_store import write_table


def rankings(*orders: str) -> Profile:
    """rankings('012', '102') -> profile ((0≻1≻2), (1≻0≻2))."""
    return Profile.of(*[tuple(int(c) for c in order) for order in orders])


@pytest.fixture
def dictator0() -> ScfTable:
    return dictatorship(0)


@pytest.fixture
def dictator1() -> ScfTable:
    return dictatorship(1)


@pytest.fixture
def plurality32() -> ScfTable:
    return plurality(3, 2)


@pytest.fixture
def borda32() -> ScfTable:
    return borda(3, 2)


@pytest.fixture
def constant0() -> ScfTable:
    return constant_table(0)


@pytest.fixture
def table_file(tmp_path):
    """Write a table into tmp_path and return the path."""
    def write(f: ScfTable, name: str = "table.gssc"):
        return write_table(tmp_path / name, f)
    return write
