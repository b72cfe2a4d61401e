import pytest

from gsdalloc import demo_alternatives, demo_scenario


@pytest.fixture(scope="session")
def demo():
    return demo_scenario()


@pytest.fixture(scope="session")
def alternatives():
    return demo_alternatives()
