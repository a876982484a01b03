import os

import pytest
from hypothesis import settings, strategies as st

from dcgrowth.words import free_reduce, read_presentation

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "demos", "data")


def data_path(name):
    return os.path.abspath(os.path.join(DATA, name))


@pytest.fixture
def pres():
    return lambda name: read_presentation(data_path(name))


def letters(rank):
    return st.sampled_from([s * (i + 1) for i in range(rank) for s in (1, -1)])


def raw_words(rank=2, max_size=12):
    return st.lists(letters(rank), max_size=max_size).map(tuple)


def reduced_words(rank=2, max_size=12):
    return raw_words(rank, max_size).map(free_reduce)
