import pytest

import smallgraphs


@pytest.fixture
def twin_hubs():
    return smallgraphs.twin_hubs()
