# tests/conftest.py
import numpy as np
import pytest

from app.config import settings
from app.services.corpus import corpus_ids, corpus_semigroup

# Canonical indices of I_2 (rank descending, then image array):
#   0 id, 1 alpha, 2 beta^{-1}, 3 I_2, 4 I_1, 5 beta, 6 empty
I2_ID, I2_ALPHA, I2_BETA_INV, I2_E2, I2_E1, I2_BETA, I2_ZERO = range(7)

CORPUS = corpus_ids()


@pytest.fixture
def i2():
    return corpus_semigroup("i2")


@pytest.fixture(params=CORPUS)
def corpus_member(request):
    return corpus_semigroup(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(settings.RANDOM_SEED)
