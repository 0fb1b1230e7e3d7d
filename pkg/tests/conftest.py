import sys

import pytest

from finite_physics.universe import MODE_A, SearchConfig, search_universe


@pytest.fixture(scope="session")
def u577():
    return search_universe(SearchConfig(B=2, K=1, extra_divisors=(288,)))


@pytest.fixture(scope="session")
def u17():
    return search_universe(SearchConfig(mode=MODE_A, iota=2))


def primes_upto(n):
    """Sieve of Eratosthenes; independent of the package's primality test."""
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"
    for q in range(2, int(n ** 0.5) + 1):
        if sieve[q]:
            sieve[q * q::q] = bytearray(len(range(q * q, n + 1, q)))
    return [q for q in range(n + 1) if sieve[q]]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
