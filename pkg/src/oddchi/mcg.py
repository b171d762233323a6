"""Mapping-class relations checked at two exact levels.

* Punctured-disk level: braid automorphisms of the free group ``F_n`` (Artin
  action), compared by free reduction.
* Homology level: symplectic transvections on ``H_1`` of a closed genus-g
  surface, compared as integer matrices.

Free-group words are tuples of nonzero ints: ``i`` is ``x_i`` and ``-i`` its
inverse (generators are numbered from 1). Homology classes are integer
vectors in the basis ``a_1, b_1, ..., a_g, b_g`` with ``<a_i, b_i> = +1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

Word = tuple[int, ...]


def reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if x == 0:
            raise ValueError("generator index 0 is not allowed")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse_word(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def format_word(word: Sequence[int], symbol: str = "x") -> str:
    if not word:
        return "1"
    return "".join(f"{symbol}{abs(x)}" + ("^-1" if x < 0 else "") for x in word)


class RankMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FreeAutomorphism:
    """Automorphism of ``F_rank`` given by generator images and the images
    of its inverse."""

    rank: int
    images: tuple[Word, ...]
    inverse_images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.rank or len(self.inverse_images) != self.rank:
            raise RankMismatch("need one image per generator")
        object.__setattr__(self, "images", tuple(reduce(w) for w in self.images))
        object.__setattr__(self, "inverse_images", tuple(reduce(w) for w in self.inverse_images))
        for w in self.images + self.inverse_images:
            if any(abs(x) > self.rank for x in w):
                raise RankMismatch(f"word {w} uses a generator outside rank {self.rank}")
        gens = tuple((i,) for i in range(1, self.rank + 1))
        if tuple(_substitute(self.images, w) for w in self.inverse_images) != gens:
            raise ValueError("inverse_images do not invert images")

    @classmethod
    def identity(cls, rank: int) -> FreeAutomorphism:
        gens = tuple((i,) for i in range(1, rank + 1))
        return cls(rank, gens, gens)

    def inverse(self) -> FreeAutomorphism:
        return FreeAutomorphism(self.rank, self.inverse_images, self.images)

    def __call__(self, word: Sequence[int]) -> Word:
        return apply(self, word)

    def __matmul__(self, other: FreeAutomorphism) -> FreeAutomorphism:
        return compose(self, other)

    def __pow__(self, n: int) -> FreeAutomorphism:
        base = self if n >= 0 else self.inverse()
        out = FreeAutomorphism.identity(self.rank)
        for _ in range(abs(n)):
            out = out @ base
        return out


def _substitute(images: Sequence[Word], word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        out.extend(images[x - 1] if x > 0 else inverse_word(images[-x - 1]))
    return reduce(out)


def apply(f: FreeAutomorphism, word: Sequence[int]) -> Word:
    if any(abs(x) > f.rank for x in word):
        raise RankMismatch(f"word {tuple(word)} does not live in F_{f.rank}")
    return _substitute(f.images, word)


def compose(f: FreeAutomorphism, g: FreeAutomorphism) -> FreeAutomorphism:
    """``f o g``: apply ``g`` first, then ``f``."""
    if f.rank != g.rank:
        raise RankMismatch(f"ranks {f.rank} and {g.rank} differ")
    return FreeAutomorphism(
        f.rank,
        tuple(_substitute(f.images, w) for w in g.images),
        tuple(_substitute(g.inverse_images, w) for w in f.inverse_images),
    )


def artin_generator(i: int, n: int) -> FreeAutomorphism:
    """Half twist ``sigma_i``: ``x_i -> x_i x_{i+1} x_i^-1``, ``x_{i+1} -> x_i``.

    Fixes the boundary word ``x_1 x_2 ... x_n`` exactly.
    """
    if not 1 <= i < n:
        raise IndexError(f"sigma_{i} is undefined in rank {n}")
    images = [(k,) for k in range(1, n + 1)]
    inv = list(images)
    images[i - 1] = (i, i + 1, -i)
    images[i] = (i,)
    inv[i - 1] = (i + 1,)
    inv[i] = (-(i + 1), i, i + 1)
    return FreeAutomorphism(n, tuple(images), tuple(inv))


def braid(word: Sequence[int], n: int) -> FreeAutomorphism:
    """Automorphism of a braid word such as ``(1, 2, 2, -1)`` for
    ``sigma_1 sigma_2^2 sigma_1^-1`` (leftmost factor applied last)."""
    out = FreeAutomorphism.identity(n)
    for x in word:
        g = artin_generator(abs(x), n)
        out = out @ (g if x > 0 else g.inverse())
    return out


def full_twist(n: int = 3) -> FreeAutomorphism:
    """``Delta^2 = (sigma_1 ... sigma_{n-1})^n``."""
    return braid(tuple(range(1, n)) * n, n)


# Punctured-disk model of the lantern: twists about curves enclosing punctures
# {1,2}, {2,3}, {1,3}. Twists about the boundary of each single puncture are
# trivial on pi_1 of the punctured disk.
LANTERN_BRAIDS = {
    "C5": (1, 1),
    "C6": (2, 2),
    "C7": (1, 2, 2, -1),
}


def verify_braid_lantern(factors: Sequence[Sequence[int]] | None = None) -> bool:
    """Check ``Delta^2 == prod(factors)`` in Aut(F_3).

    ``factors`` defaults to the twists about C7, C5, C6 in that order (left
    to right, composed right-to-left).
    """
    if factors is None:
        factors = (LANTERN_BRAIDS["C7"], LANTERN_BRAIDS["C5"], LANTERN_BRAIDS["C6"])
    rhs = FreeAutomorphism.identity(3)
    for w in factors:
        rhs = rhs @ braid(w, 3)
    return full_twist(3) == rhs


# ---------------------------------------------------------------------------
# homology level


def symplectic_form(g: int) -> np.ndarray:
    J = np.zeros((2 * g, 2 * g), dtype=object)
    for i in range(g):
        J[2 * i, 2 * i + 1] = 1
        J[2 * i + 1, 2 * i] = -1
    return J


def pairing(x: Sequence[int], y: Sequence[int]) -> int:
    """Algebraic intersection ``<x, y>``; ``<a_i, b_i> = 1``."""
    if len(x) != len(y) or len(x) % 2:
        raise ValueError("classes must have equal even length")
    return sum(x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i] for i in range(len(x) // 2))


def transvection(c: Sequence[int], g: int) -> np.ndarray:
    """Matrix of ``x -> x + <x, c> c`` on ``Z^{2g}`` (columns are images)."""
    if len(c) != 2 * g:
        raise ValueError(f"class {tuple(c)} has dimension {len(c)}, expected {2 * g}")
    c = np.array(c, dtype=object)
    # <x, c> = x^T J c
    J = symplectic_form(g)
    return np.eye(2 * g, dtype=object) + np.outer(c, J @ c)


def is_symplectic(M: np.ndarray) -> bool:
    g = M.shape[0] // 2
    J = symplectic_form(g)
    return np.array_equal(M.T @ J @ M, J)


def is_transvection_like(M: np.ndarray) -> bool:
    """Symplectic and unipotent of step 2: ``(M - I)^2 == 0``."""
    N = M - np.eye(M.shape[0], dtype=object)
    return is_symplectic(M) and not np.any(N @ N)


def _product(mats: Sequence[np.ndarray], dim: int) -> np.ndarray:
    out = np.eye(dim, dtype=object)
    for m in mats:
        out = out @ m
    return out


def lantern_transvections(cs) -> list[np.ndarray]:
    g = len(cs.h1_classes[0]) // 2
    return [transvection(c, g) for c in cs.h1_classes]


def verify_h1_lantern(cs) -> bool:
    """``T4 T3 T2 T1 == T7 T6 T5`` on ``H_1`` for the seven lantern classes."""
    T = lantern_transvections(cs)
    dim = T[0].shape[0]
    lhs = _product([T[3], T[2], T[1], T[0]], dim)
    rhs = _product([T[6], T[5], T[4]], dim)
    return np.array_equal(lhs, rhs)


def verify_seven_twist_identity(cs, drop: Sequence[int] = ()) -> bool:
    """``T7^-1 T6^-1 T5^-1 T4 T3 T2 T1 == I``; indices in ``drop`` (0-based)
    are replaced by the identity, for negative controls."""
    T = lantern_transvections(cs)
    dim = T[0].shape[0]
    I = np.eye(dim, dtype=object)
    # inverse of x -> x + <x,c>c is x -> x - <x,c>c
    Tinv = [2 * I - t for t in T]
    seq = [Tinv[6], Tinv[5], Tinv[4], T[3], T[2], T[1], T[0]]
    order = [6, 5, 4, 3, 2, 1, 0]
    seq = [I if idx in drop else m for m, idx in zip(seq, order)]
    return np.array_equal(_product(seq, dim), I)
