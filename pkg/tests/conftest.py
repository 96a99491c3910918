import pytest

from artifact import derived
from artifact.triangulation import Triangulation, double_tetrahedron

# one-tetrahedron triangulations of S³: two vertices / three edges, and one vertex / two edges
TWO_VERTEX_S3 = [[(0, (1, 0, 2, 3)), (0, (1, 0, 2, 3)), (0, (0, 1, 3, 2)), (0, (0, 1, 3, 2))]]
ONE_VERTEX_S3 = [[(0, (1, 0, 2, 3)), (0, (1, 0, 2, 3)), (0, (1, 2, 3, 0)), (0, (3, 0, 1, 2))]]


@pytest.fixture(scope="session")
def double():
    return double_tetrahedron()


@pytest.fixture(scope="session")
def two_vertex_s3():
    return Triangulation(1, TWO_VERTEX_S3)


@pytest.fixture(scope="session")
def one_vertex_s3():
    return Triangulation(1, ONE_VERTEX_S3)


@pytest.fixture(scope="session")
def double_d2(double):
    return derived.build_d2(double, 1, 3)


@pytest.fixture(scope="session")
def s3_d2(one_vertex_s3):
    return derived.build_d2(one_vertex_s3, 1, 4)


@pytest.fixture(scope="session")
def small_d2(double):
    return derived.build_d2(double, 0, 2)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
