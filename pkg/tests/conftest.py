import os

import pytest

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture(scope="session")
def standin_xes_path() -> str:
    return os.path.join(DATA_DIR, "standin.xes.gz")


def _external_log(env_var: str, names: tuple[str, ...]) -> str | None:
    env = os.environ.get(env_var)
    if env and os.path.exists(env):
        return env
    for name in names:
        candidate = os.path.join(DATA_DIR, name)
        if os.path.exists(candidate):
            return candidate
    return None


@pytest.fixture(scope="session")
def sepsis_xes_path() -> str | None:
    """Path to the genuine Sepsis benchmark log, when supplied externally."""
    return _external_log(
        "SEPSIS_XES", ("sepsis.xes", "sepsis.xes.gz", "Sepsis Cases - Event Log.xes.gz")
    )


@pytest.fixture(scope="session")
def road_fines_xes_path() -> str | None:
    """Path to the genuine Road Traffic Fine log, when supplied externally."""
    return _external_log(
        "ROAD_FINES_XES",
        ("road_fines.xes", "road_fines.xes.gz", "Road_Traffic_Fine_Management_Process.xes.gz"),
    )
