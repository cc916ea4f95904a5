import os

import hypothesis
import pytest

hypothesis.settings.register_profile("default", max_examples=100, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=1000, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session", autouse=True)
def isolated_cache(tmp_path_factory):
    """Keep the Weingarten disk cache of the test session out of $HOME."""
    old = os.environ.get("EASYWG_CACHE_DIR")
    path = tmp_path_factory.mktemp("wg-cache")
    os.environ["EASYWG_CACHE_DIR"] = str(path)
    yield path
    if old is None:
        os.environ.pop("EASYWG_CACHE_DIR", None)
    else:
        os.environ["EASYWG_CACHE_DIR"] = old
