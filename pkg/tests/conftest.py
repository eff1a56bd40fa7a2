from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

import pytest

from qcv import enumeration


@pytest.fixture(scope="session")
def full_report():
    """The default sweep over even d in [20, 276], computed once per session."""
    return enumeration.run(enumeration.FilterConfig())


# Outcomes of the module property suites, consumed by the acceptance check for them.
PROPERTY_OUTCOMES: dict[str, str] = {}


def pytest_collection_modifyitems(items):
    # acceptance criteria run last so they can see the property-suite results
    items.sort(key=lambda item: item.fspath.basename == "test_acceptance.py")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid:
        return
    if report.when == "call" or report.outcome == "failed":
        PROPERTY_OUTCOMES[report.nodeid] = report.outcome
