"""
Shared pytest configuration.

Tests marked ``slow`` solve the determining equation at the configured
window for every corpus entry; deselect them with ``-m "not slow"``.
"""


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: full-window solver runs over the corpus')
