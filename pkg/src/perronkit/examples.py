"""Bundled example tensors and their reference values."""

from __future__ import annotations

from importlib import resources

from .tensor import NonnegativeTensor, TensorShape, read_tensor

__all__ = [
    "four_blocks_tensor",
    "FOUR_BLOCKS_REFERENCE",
    "majorization_counterexample_tensor",
]

# Expected results for the bundled four-block tensor, used by the
# ``repro-example`` command and the acceptance tests.
FOUR_BLOCKS_REFERENCE = {
    "blocks": ((1, 2), (3, 4), (5, 6), (7, 8)),
    "block_radii": (1.3183, 1.2581, 2.6317, 3.1253),
    "block_radii_tol": 1e-3,
    "rho": 3.1253,
    "rho_tol": 1e-3,
    "gamma": 0.5,
    "tolerance": 1e-6,
    "perron_vector": (0.4462, 0.4143, 0.3808, 0.4446, 0.2943, 0.3055, 0.5257, 0.4743),
    "perron_vector_tol": 5e-3,
    "residual_bound": 1e-5,
    "iteration_range": (30, 120),
}


def four_blocks_tensor() -> NonnegativeTensor:
    """The shipped order-3, dimension-8 demo tensor.

    Four dense positive 2x2x2 diagonal blocks chained by sparse couplings;
    the last block is the unique genuine one, so the tensor is strongly
    nonnegative with spectral radius about 3.1253.
    """
    path = resources.files("perronkit").joinpath("data/four_blocks.tns")
    with resources.as_file(path) as fixture:
        return read_tensor(fixture)


def majorization_counterexample_tensor() -> NonnegativeTensor:
    """Order-3, dimension-3 tensor whose majorization does not commute with restriction.

    Entries a[1,2,3] = a[2,1,3] = a[3,3,3] = 1.  Restricting to {1, 2} drops
    every entry, so the restricted majorization is zero while the {1, 2}
    submatrix of the full majorization is not.
    """
    return NonnegativeTensor(
        TensorShape(3, 3), {(1, 2, 3): 1.0, (2, 1, 3): 1.0, (3, 3, 3): 1.0}
    )
