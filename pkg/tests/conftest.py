import pytest

from iqa.cache import TrajectoryCache


@pytest.fixture(scope="session")
def cache(tmp_path_factory):
    """Session-wide trajectory cache so acceptance criteria share runs."""
    return TrajectoryCache(tmp_path_factory.mktemp("trajectories"))
