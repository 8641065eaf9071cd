"""Sparse nonnegative tensors and the multilinear operations on them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

__all__ = [
    "TensorShape",
    "NonnegativeTensor",
    "IndexPermutation",
    "apply",
    "principal_subtensor",
    "identity_tensor",
    "permute",
    "read_tensor",
    "write_tensor",
]


@dataclass(frozen=True)
class TensorShape:
    """Order and dimension of a tensor: order-m entries indexed by m indices in [1, dim]."""

    order: int
    dim: int

    def __post_init__(self) -> None:
        if self.order < 2:
            raise ValueError(f"tensor order must be >= 2, got {self.order}")
        if self.dim < 1:
            raise ValueError(f"tensor dimension must be >= 1, got {self.dim}")


@dataclass(frozen=True, eq=False)
class NonnegativeTensor:
    """Order-m, dimension-n tensor with nonnegative entries in sparse coordinate form.

    Entries are kept as a map from 1-based index tuples ``(i1, ..., im)`` to
    positive values.  Zero values supplied at construction are dropped, so
    "stored entry" and "nonzero entry" coincide.  Instances are immutable.
    """

    shape: TensorShape
    entries: Mapping[tuple[int, ...], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        m, n = self.shape.order, self.shape.dim
        clean: dict[tuple[int, ...], float] = {}
        for key, value in self.entries.items():
            key = tuple(int(i) for i in key)
            if len(key) != m:
                raise ValueError(f"index tuple {key} has {len(key)} indices, expected {m}")
            for i in key:
                if not 1 <= i <= n:
                    raise ValueError(f"index {i} out of range [1, {n}] in tuple {key}")
            value = float(value)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"entry {key} has invalid value {value}; must be finite and >= 0")
            if value > 0.0:
                clean[key] = value
        object.__setattr__(self, "entries", clean)

    @property
    def order(self) -> int:
        return self.shape.order

    @property
    def dim(self) -> int:
        return self.shape.dim

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NonnegativeTensor):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self) -> str:
        return f"NonnegativeTensor(order={self.order}, dim={self.dim}, nnz={self.nnz})"

    @cached_property
    def _packed(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        # Entries packed in sorted tuple order so contraction accumulates
        # in a reproducible sequence.
        keys = sorted(self.entries)
        rows = np.array([k[0] - 1 for k in keys], dtype=np.intp)
        tails = np.array([[i - 1 for i in k[1:]] for k in keys], dtype=np.intp)
        tails = tails.reshape(len(keys), self.order - 1)
        vals = np.array([self.entries[k] for k in keys], dtype=np.float64)
        return rows, tails, vals


@dataclass(frozen=True)
class IndexPermutation:
    """A bijection on [1, n], stored as the image tuple ``(sigma(1), ..., sigma(n))``."""

    sigma: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigma", tuple(int(i) for i in self.sigma))
        n = len(self.sigma)
        if sorted(self.sigma) != list(range(1, n + 1)):
            raise ValueError(f"{self.sigma} is not a permutation of [1, {n}]")

    @classmethod
    def identity(cls, n: int) -> "IndexPermutation":
        return cls(tuple(range(1, n + 1)))

    def __call__(self, i: int) -> int:
        return self.sigma[i - 1]

    def __len__(self) -> int:
        return len(self.sigma)

    def inverse(self) -> "IndexPermutation":
        inv = [0] * len(self.sigma)
        for i, image in enumerate(self.sigma, start=1):
            inv[image - 1] = i
        return IndexPermutation(tuple(inv))

    def compose(self, other: "IndexPermutation") -> "IndexPermutation":
        """Composition self after other: ``(self.compose(other))(i) == self(other(i))``."""
        if len(other) != len(self):
            raise ValueError("cannot compose permutations of different sizes")
        return IndexPermutation(tuple(self(other(i)) for i in range(1, len(self) + 1)))


def apply(A: NonnegativeTensor, x: np.ndarray) -> np.ndarray:
    """Contract A with x in every slot but the first.

    Returns the n-vector whose i-th component is
    ``sum over stored entries a[i, i2, ..., im] * x[i2] * ... * x[im]``,
    i.e. the left-hand side of the tensor eigenvalue equation.  Only stored
    nonzeros contribute; accumulation order is fixed (sorted tuples) so the
    result is bit-reproducible.
    """
    x = np.asarray(x, dtype=np.float64)
    n = A.dim
    if x.shape != (n,):
        raise ValueError(f"vector has shape {x.shape}, expected ({n},)")
    rows, tails, vals = A._packed
    if len(vals) == 0:
        return np.zeros(n)
    contrib = vals * np.prod(x[tails], axis=1)
    return np.bincount(rows, weights=contrib, minlength=n)


def principal_subtensor(A: NonnegativeTensor, I: Iterable[int]) -> NonnegativeTensor:
    """Restrict A to the index set I, reindexing by position in I.

    Keeps exactly the entries all of whose indices lie in I.  I must be a
    nonempty strictly increasing sequence of indices from [1, n].
    """
    I = tuple(int(i) for i in I)
    if not I:
        raise ValueError("index set I must be nonempty")
    n = A.dim
    for i in I:
        if not 1 <= i <= n:
            raise ValueError(f"index {i} out of range [1, {n}]")
    if any(a >= b for a, b in zip(I, I[1:])):
        raise ValueError(f"index set {I} must be strictly increasing")
    local = {orig: pos for pos, orig in enumerate(I, start=1)}
    entries = {}
    for key, value in A.entries.items():
        if all(i in local for i in key):
            entries[tuple(local[i] for i in key)] = value
    return NonnegativeTensor(TensorShape(A.order, len(I)), entries)


def identity_tensor(shape: TensorShape) -> NonnegativeTensor:
    """The tensor with unit super-diagonal entries; contracts any x to x**(m-1)."""
    return NonnegativeTensor(shape, {(i,) * shape.order: 1.0 for i in range(1, shape.dim + 1)})


def permute(A: NonnegativeTensor, sigma: IndexPermutation) -> NonnegativeTensor:
    """Relabel indices by sigma: the result B satisfies B[i1,...,im] = A[sigma(i1),...,sigma(im)]."""
    if len(sigma) != A.dim:
        raise ValueError(f"permutation on {len(sigma)} elements, tensor dimension {A.dim}")
    inv = sigma.inverse()
    entries = {tuple(inv(i) for i in key): value for key, value in A.entries.items()}
    return NonnegativeTensor(A.shape, entries)


def write_tensor(A: NonnegativeTensor, path) -> None:
    """Write A in the sparse text format (see :func:`read_tensor`).

    Values are written as shortest round-tripping decimal literals, so a
    write/read cycle reproduces the tensor bit-exactly.  Entries appear in
    sorted tuple order, making the output byte-deterministic.
    """
    lines = [f"{A.order} {A.dim}"]
    for key in sorted(A.entries):
        lines.append(" ".join(str(i) for i in key) + " " + repr(A.entries[key]))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def read_tensor(path) -> NonnegativeTensor:
    """Read a tensor from the sparse text format.

    Format::

        # comment lines start with '#'
        m n
        i1 i2 ... im value

    Indices are 1-based; values are nonnegative decimal literals.  Duplicate
    index tuples are an error.
    """
    with open(path, "r", encoding="ascii") as fh:
        raw = fh.read()
    shape = None
    entries: dict[tuple[int, ...], float] = {}
    for lineno, line in enumerate(raw.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if shape is None:
            if len(tokens) != 2:
                raise ValueError(f"line {lineno}: header must be 'm n', got {stripped!r}")
            shape = TensorShape(int(tokens[0]), int(tokens[1]))
            continue
        if len(tokens) != shape.order + 1:
            raise ValueError(
                f"line {lineno}: expected {shape.order} indices and a value, got {stripped!r}"
            )
        try:
            key = tuple(int(t) for t in tokens[:-1])
            value = float(tokens[-1])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
        for i in key:
            if not 1 <= i <= shape.dim:
                raise ValueError(f"line {lineno}: index {i} out of range [1, {shape.dim}]")
        if not math.isfinite(value) or value < 0:
            raise ValueError(f"line {lineno}: value must be a finite nonnegative number")
        if key in entries:
            raise ValueError(f"line {lineno}: duplicate index tuple {key}")
        entries[key] = value
    if shape is None:
        raise ValueError("empty tensor file: missing 'm n' header")
    return NonnegativeTensor(shape, entries)
