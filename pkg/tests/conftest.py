import pytest

_CRITERIA: dict = {}


def pytest_configure(config):
  config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
  outcome = yield
  rep = outcome.get_result()
  mark = item.get_closest_marker("criterion")
  if mark is None:
    return
  n = mark.args[0]
  if rep.when == "call" or (rep.when == "setup" and rep.failed):
    _CRITERIA[n] = (item.name, rep.passed)


def pytest_terminal_summary(terminalreporter):
  if not _CRITERIA:
    return
  terminalreporter.section("acceptance criteria")
  for n in sorted(_CRITERIA):
    name, ok = _CRITERIA[n]
    terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({name})")
