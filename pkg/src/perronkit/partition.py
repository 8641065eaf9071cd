"""Canonical nonnegative partition of a tensor into weakly irreducible blocks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import is_irreducible, majorization, scc_condensation
from .tensor import IndexPermutation, NonnegativeTensor, principal_subtensor

__all__ = ["CanonicalPartition", "canonical_partition", "is_genuine", "verify_partition"]


@dataclass(frozen=True)
class CanonicalPartition:
    """Ordered blocks I_1, ..., I_r covering [1, n], genuine blocks last.

    Each block induces a weakly irreducible principal sub-tensor.  A block is
    *genuine* when no stored entry with first index in the block reaches
    outside it; the first ``s`` blocks are the non-genuine ones.  ``sigma``
    relabels the tensor so the blocks become consecutive index ranges:
    position p in the canonical arrangement holds original index sigma(p).
    """

    blocks: tuple[tuple[int, ...], ...]
    genuine: tuple[bool, ...]
    s: int
    sigma: IndexPermutation

    @property
    def r(self) -> int:
        return len(self.blocks)

    def genuine_blocks(self) -> tuple[tuple[int, ...], ...]:
        return self.blocks[self.s:]

    def nongenuine_blocks(self) -> tuple[tuple[int, ...], ...]:
        return self.blocks[: self.s]


def is_genuine(A: NonnegativeTensor, I: Iterable[int]) -> bool:
    """True iff every stored entry with first index in I keeps all its indices in I.

    The caller is responsible for I inducing a weakly irreducible block;
    this predicate only scans the entry pattern.
    """
    members = set(int(i) for i in I)
    for key in A.entries:
        if key[0] in members and not all(i in members for i in key[1:]):
            return False
    return True


def _refine(A: NonnegativeTensor, labels: tuple[int, ...]) -> list[tuple[int, ...]]:
    # Recursive split: condense the majorization digraph, then re-partition
    # each diagonal block's principal sub-tensor (whose majorization can be
    # strictly sparser than the corresponding submatrix).
    cond = scc_condensation(majorization(A))
    if len(cond.blocks) == 1:
        return [labels]
    out: list[tuple[int, ...]] = []
    for local_block in cond.blocks:
        sub = principal_subtensor(A, local_block)
        out.extend(_refine(sub, tuple(labels[i - 1] for i in local_block)))
    return out


def canonical_partition(A: NonnegativeTensor) -> CanonicalPartition:
    """Compute the canonical nonnegative partition of A.

    The index set splits into ordered blocks, each inducing a weakly
    irreducible principal sub-tensor, such that no stored entry points from a
    block into strictly earlier blocks without also touching a later one.
    Genuine blocks are moved after the non-genuine ones, preserving the
    relative order within each group, so the result is deterministic.
    """
    n = A.dim
    raw = _refine(A, tuple(range(1, n + 1)))
    flags = [is_genuine(A, block) for block in raw]
    nongenuine = [b for b, g in zip(raw, flags) if not g]
    genuine = [b for b, g in zip(raw, flags) if g]
    blocks = tuple(nongenuine + genuine)
    sigma = IndexPermutation(tuple(i for block in blocks for i in block))
    return CanonicalPartition(
        blocks=blocks,
        genuine=tuple([False] * len(nongenuine) + [True] * len(genuine)),
        s=len(nongenuine),
        sigma=sigma,
    )


def verify_partition(A: NonnegativeTensor, P: CanonicalPartition) -> bool:
    """Audit a partition against the defining conditions.

    Checks that (a) every block induces a weakly irreducible sub-tensor,
    (b) no entry points from a block into earlier blocks while staying within
    the first j blocks, (c) every non-genuine block has at least one entry
    escaping into strictly later blocks, and (d) the genuine flags match the
    entry scan.  Raises if the blocks do not partition [1, n].
    """
    n = A.dim
    seen = [i for block in P.blocks for i in block]
    if sorted(seen) != list(range(1, n + 1)):
        raise ValueError("blocks do not partition [1, n]")
    block_of = {}
    for j, block in enumerate(P.blocks):
        for i in block:
            block_of[i] = j

    for block in P.blocks:
        if not is_irreducible(majorization(principal_subtensor(A, block))):
            return False

    escapes_later = [False] * len(P.blocks)
    for key in A.entries:
        j = block_of[key[0]]
        tail_blocks = [block_of[i] for i in key[1:]]
        if max(tail_blocks) <= j and min(tail_blocks) < j:
            return False
        if max(tail_blocks) > j:
            escapes_later[j] = True

    for j, (flag, block) in enumerate(zip(P.genuine, P.blocks)):
        if flag != is_genuine(A, block):
            return False
        if not flag and not escapes_later[j]:
            return False
    return True
