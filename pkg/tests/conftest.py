from fractions import Fraction

import pytest
from hypothesis import strategies as st

from so3five.field import QSqrt3
from so3five.poly import MultiPoly, VarEnv
from so3five.representations import derive_m5_basis
from so3five.upsilon import build_upsilon

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
qsqrt3 = st.builds(QSqrt3, small_fractions, small_fractions)
nonzero_qsqrt3 = qsqrt3.filter(bool)

ENV3 = VarEnv(("x", "y", "z"))


@st.composite
def polys(draw, env=ENV3, max_terms=4, max_exp=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        mono = tuple(draw(st.integers(0, max_exp)) for _ in env.names)
        terms[mono] = draw(qsqrt3)
    return MultiPoly(env, terms)


@pytest.fixture(scope="session")
def basis():
    return derive_m5_basis()


@pytest.fixture(scope="session")
def ups(basis):
    return build_upsilon(basis)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
