import pytest

from quadchar import verify


@pytest.mark.parametrize("suite", sorted(verify.SUITES))
def test_suite_passes(suite):
    results = verify.run_suite(suite)
    failed = [(r.name, r.detail) for r in results if not r.passed]
    assert not failed, failed


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        verify.run_suite("nope")
