import numpy as np
import pytest

from ngramlex import kernels
from ngramlex.model import ProbabilityVector
from ngramlex.oracle import mc_expected_vocab


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # first call of a jitted kernel pays compilation; trigger every
    # kernel once so runtime-budget assertions measure steady state
    pv = ProbabilityVector([0.5, 0.3, 0.2])
    kernels.expected_vocab_sum(pv.values, pv._mults_f8, 3.0)
    kernels.expected_vocab_grid(pv.values, pv._mults_f8, np.array([1.0, 2.0]))
    kernels.zipf_power_sums(np.log(np.array([1.0, 2.0, 3.0])), 1.1)
    mc_expected_vocab(pv, 2, 2, 0)
    yield
