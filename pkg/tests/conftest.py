import functools

import pytest
from hypothesis import HealthCheck, settings

from homhopf import corpus
from homhopf.linalg import QQ

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES = []


@functools.lru_cache(maxsize=None)
def valid_systems():
    return corpus.valid_systems(QQ)


@functools.lru_cache(maxsize=None)
def mutant_systems():
    return corpus.mutant_systems(QQ)


@functools.lru_cache(maxsize=None)
def cleft_corpus():
    return corpus.cleft_corpus(QQ)


@functools.lru_cache(maxsize=None)
def group_example(name):
    return corpus.group_example(name, QQ)


@pytest.fixture(scope="session")
def s3a3():
    return group_example("S3/A3 conj:(12)")


@pytest.fixture(scope="session")
def q8rot():
    return group_example("Q8/Z rot")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@functools.lru_cache(maxsize=None)
def classical_pairs():
    """(name, package system, classical oracle) for α = β = id systems over Z/2, Z/3 quotients."""
    import classical

    def ext(name, n, step, reps):
        return (name, corpus.group_example(name, QQ).system, classical.cyclic_extension(n, step, reps))

    return (
        ext("Z2", 2, 2, {"[0]": 0, "[1]": 1}),
        ext("Z4/{0,2}", 4, 2, {"[0]": 0, "[1]": 1}),
        ext("Z6/{0,3}", 6, 3, {"[0]": 0, "[1]": 1, "[2]": 2}),
        ("twisted-z2", corpus.system_by_name("twisted-z2"), classical.scalar_system(2, {(1, 1): -1})),
        ("scalar-z3", corpus.scalar_system("Z3", "id", {(1, 2): -1, (2, 1): -1, (2, 2): -1}),
         classical.scalar_system(3, {(1, 2): -1, (2, 1): -1, (2, 2): -1})),
        ("smash-z3", corpus.system_by_name("smash-z3"), classical.translation_smash(3)),
    )


def as_label_dict(vec, space):
    return {space.labels[i]: x for i, x in enumerate(vec) if x}
