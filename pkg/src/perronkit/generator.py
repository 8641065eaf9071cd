"""Random third-order instances with a prescribed block structure."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import PowerMethodConfig, power_method
from .tensor import NonnegativeTensor, TensorShape, principal_subtensor

__all__ = ["GeneratorSpec", "generate", "generate_not_strong"]


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for a random block tensor.

    ``block_sizes`` lists the diagonal block dimensions in order; the last
    block is the unique genuine one.  ``rt`` (> 1) is the ratio by which the
    genuine block's radius exceeds the largest raw block radius, ``den`` the
    Bernoulli inclusion probability for admissible off-block couplings.
    """

    block_sizes: tuple[int, ...]
    rt: float
    den: float
    seed: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "block_sizes", tuple(int(b) for b in self.block_sizes))
        if not self.block_sizes or any(b < 1 for b in self.block_sizes):
            raise ValueError("block_sizes must be a nonempty list of positive integers")
        if not self.rt > 1:
            raise ValueError("rt must be > 1")
        if not 0 < self.den <= 1:
            raise ValueError("den must lie in (0, 1]")


def _block_ranges(sizes: tuple[int, ...]) -> list[range]:
    starts = np.concatenate([[0], np.cumsum(sizes)])
    return [range(int(a) + 1, int(b) + 1) for a, b in zip(starts[:-1], starts[1:])]


def generate(spec: GeneratorSpec, power_cfg: PowerMethodConfig | None = None) -> NonnegativeTensor:
    """Build a strongly nonnegative third-order tensor from the spec.

    Each diagonal block gets dense positive uniform entries (hence weakly
    irreducible); the largest block radius times ``rt`` becomes the target
    radius, and the final block is rescaled to hit it exactly.  Every non-
    final block receives couplings whose tail indices lie in strictly later
    blocks, drawn Bernoulli(``den``) per admissible coordinate with one
    forced coupling if none was drawn, so the final block is the unique
    genuine one and the result always classifies as strongly nonnegative.
    Output is a deterministic function of the spec.
    """
    rng = np.random.default_rng(spec.seed)
    sizes = spec.block_sizes
    n = sum(sizes)
    blocks = _block_ranges(sizes)
    entries: dict[tuple[int, ...], float] = {}

    for block in blocks:
        lo = block.start
        nb = len(block)
        vals = 1.0 - rng.random((nb, nb, nb))  # uniform on (0, 1]: surely positive
        for a in range(nb):
            for b in range(nb):
                for c in range(nb):
                    entries[(lo + a, lo + b, lo + c)] = vals[a, b, c]

    radii = []
    tensor = NonnegativeTensor(TensorShape(3, n), dict(entries))
    for block in blocks:
        radii.append(power_method(principal_subtensor(tensor, block), power_cfg).rho)
    lam = max(radii) * spec.rt

    for j, block in enumerate(blocks[:-1]):
        later = [i for blk in blocks[j + 1 :] for i in blk]
        coords = [(s, u, v) for s in block for u in later for v in later]
        mask = rng.random(len(coords)) < spec.den
        chosen = [c for c, keep in zip(coords, mask) if keep]
        if not chosen:
            chosen = [coords[int(rng.integers(len(coords)))]]
        vals = 1.0 - rng.random(len(chosen))
        for coord, value in zip(chosen, vals):
            entries[coord] = value

    scale = lam / radii[-1]
    for s in blocks[-1]:
        for u in blocks[-1]:
            for v in blocks[-1]:
                entries[(s, u, v)] *= scale

    return NonnegativeTensor(TensorShape(3, n), entries)


def generate_not_strong(
    spec: GeneratorSpec, power_cfg: PowerMethodConfig | None = None
) -> NonnegativeTensor:
    """Build a tensor that is certainly not strongly nonnegative.

    Starting from :func:`generate`, even seeds inflate the first block's
    radius to twice the genuine radius (a non-genuine block catching up with
    the spectral radius), odd seeds instead strip the first block's couplings
    and rescale it to half the genuine radius (a second genuine block with a
    different radius).  Requires at least two blocks.
    """
    if len(spec.block_sizes) < 2:
        raise ValueError("generate_not_strong needs at least two blocks")
    base = generate(spec, power_cfg)
    blocks = _block_ranges(spec.block_sizes)
    first = set(blocks[0])
    lam = power_method(principal_subtensor(base, blocks[-1]), power_cfg).rho
    rho_first = power_method(principal_subtensor(base, blocks[0]), power_cfg).rho

    entries = dict(base.entries)
    if spec.seed % 2 == 0:
        scale = 2 * lam / rho_first
        for key in base.entries:
            if all(i in first for i in key):
                entries[key] *= scale
    else:
        scale = lam / (2 * rho_first)
        for key in base.entries:
            if key[0] in first:
                if all(i in first for i in key):
                    entries[key] *= scale
                else:
                    del entries[key]
    return NonnegativeTensor(base.shape, entries)
