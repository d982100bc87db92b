import pytest

from morphfreq import corpus


@pytest.fixture(scope="session")
def fibonacci():
    return corpus.load("fibonacci")


@pytest.fixture(scope="session")
def thue_morse():
    return corpus.load("thue_morse")


@pytest.fixture(scope="session")
def aba_b():
    return corpus.load("aba_b")


@pytest.fixture(scope="session")
def ab_b():
    return corpus.load("ab_b")


@pytest.fixture(scope="session")
def abc_b_cc():
    return corpus.load("abc_b_cc")
