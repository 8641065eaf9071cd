import itertools

import pytest

from perronkit import NonnegativeTensor, TensorShape
from perronkit.examples import four_blocks_tensor, majorization_counterexample_tensor


def all_ones_tensor(order: int, dim: int) -> NonnegativeTensor:
    entries = {
        key: 1.0 for key in itertools.product(range(1, dim + 1), repeat=order)
    }
    return NonnegativeTensor(TensorShape(order, dim), entries)


@pytest.fixture(scope="session")
def four_blocks() -> NonnegativeTensor:
    return four_blocks_tensor()


@pytest.fixture()
def tiny_mixed() -> NonnegativeTensor:
    return majorization_counterexample_tensor()
