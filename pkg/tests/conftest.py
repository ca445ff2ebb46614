import pytest

from skelcal import GaitDirection, default_template, generate_truth_capture


@pytest.fixture(scope="session")
def template():
    return default_template()


@pytest.fixture(scope="session")
def truth_walk(template):
    """90-frame vertical ground-truth walk from 4.5 m to 1.5 m."""
    return generate_truth_capture(template, GaitDirection.VERTICAL, 90, 4.5, 1.5)
