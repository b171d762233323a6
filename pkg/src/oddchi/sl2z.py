"""Exact SL(2,Z) arithmetic and conjugacy classification.

Matrices act on column vectors and products compose right-to-left, so the
product ``twist_a() @ twist_b() @ twist_a()`` applies the rightmost factor
first.

Conjugacy classes are represented by :class:`MonodromyClass` normal forms:

* ``central``    -- ``+I`` or ``-I``
* ``elliptic``   -- one of six fixed representatives (|trace| < 2)
* ``parabolic``  -- ``sign * [[1, k], [0, 1]]`` with ``k != 0``
* ``hyperbolic`` -- ``sign`` times a positive word in ``R`` and ``L``,
  canonical up to cyclic rotation

Signed words are written as strings over ``R, L`` with lowercase letters for
inverses, e.g. ``"RlR"`` is ``R @ L^-1 @ R``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

__all__ = [
    "Sl2Matrix",
    "MonodromyClass",
    "identity",
    "multiply",
    "invert",
    "twist_a",
    "twist_b",
    "phi",
    "R",
    "L",
    "word_product",
    "verify_phi_decomposition",
    "normal_form",
    "classify",
    "are_conjugate",
    "rl_word",
    "rl_word_length",
    "twist_factorization",
    "induced_core_monodromy",
]


class NotInSL2Z(ValueError):
    pass


@dataclass(frozen=True)
class Sl2Matrix:
    """Integer 2x2 matrix ``[[a, b], [c, d]]`` with determinant 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for v in (self.a, self.b, self.c, self.d):
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"entries must be int, got {v!r}")
        if self.a * self.d - self.b * self.c != 1:
            raise NotInSL2Z(f"determinant of {self.tolist()} is not 1")

    @classmethod
    def from_rows(cls, rows) -> Sl2Matrix:
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def __matmul__(self, other: Sl2Matrix) -> Sl2Matrix:
        if not isinstance(other, Sl2Matrix):
            return NotImplemented
        return multiply(self, other)

    def __neg__(self) -> Sl2Matrix:
        return Sl2Matrix(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, n: int) -> Sl2Matrix:
        base = self if n >= 0 else invert(self)
        result = identity()
        for _ in range(abs(n)):
            result = result @ base
        return result

    @property
    def trace(self) -> int:
        return self.a + self.d

    def inverse(self) -> Sl2Matrix:
        return invert(self)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def tolist(self) -> list[int]:
        """Row-major ``[a, b, c, d]``, the serialized form."""
        return [self.a, self.b, self.c, self.d]

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


def identity() -> Sl2Matrix:
    return Sl2Matrix(1, 0, 0, 1)


def multiply(A: Sl2Matrix, B: Sl2Matrix) -> Sl2Matrix:
    return Sl2Matrix(
        A.a * B.a + A.b * B.c,
        A.a * B.b + A.b * B.d,
        A.c * B.a + A.d * B.c,
        A.c * B.b + A.d * B.d,
    )


def invert(A: Sl2Matrix) -> Sl2Matrix:
    return Sl2Matrix(A.d, -A.b, -A.c, A.a)


# Right-handed twists about the two basis curves and their product.
def twist_a() -> Sl2Matrix:
    return Sl2Matrix(1, 1, 0, 1)


def twist_b() -> Sl2Matrix:
    return Sl2Matrix(1, 0, -1, 1)


def phi() -> Sl2Matrix:
    return Sl2Matrix(0, 1, -1, 0)


R = Sl2Matrix(1, 1, 0, 1)
L = Sl2Matrix(1, 0, 1, 1)
_S = Sl2Matrix(0, -1, 1, 0)

_LETTERS = {"R": R, "L": L, "r": invert(R), "l": invert(L)}


def word_product(word: str) -> Sl2Matrix:
    """Multiply out a signed R/L word, e.g. ``"RlR"``."""
    result = identity()
    for ch in word:
        try:
            result = result @ _LETTERS[ch]
        except KeyError:
            raise ValueError(f"bad letter {ch!r} in word {word!r}") from None
    return result


def verify_phi_decomposition(factors=None, target=None) -> bool:
    """Check that the product of ``factors`` (default ``tau_a, tau_b, tau_a``)
    equals ``target`` (default ``phi()``)."""
    if factors is None:
        factors = (twist_a(), twist_b(), twist_a())
    if target is None:
        target = phi()
    product = identity()
    for f in factors:
        product = product @ f
    return product == target


# ---------------------------------------------------------------------------
# conjugacy normal forms

CENTRAL = "central"
ELLIPTIC = "elliptic"
PARABOLIC = "parabolic"
HYPERBOLIC = "hyperbolic"

# index -> (representative, exact signed word for it)
ELLIPTIC_REPS: tuple[tuple[Sl2Matrix, str], ...] = (
    (Sl2Matrix(0, -1, 1, 0), "rLr"),
    (Sl2Matrix(0, -1, 1, -1), "rLrr"),
    (Sl2Matrix(0, -1, 1, 1), "rL"),
    (Sl2Matrix(0, 1, -1, 0), "RlR"),
    (Sl2Matrix(0, 1, -1, 1), "Rl"),
    (Sl2Matrix(0, 1, -1, -1), "RlRR"),
)


@dataclass(frozen=True)
class MonodromyClass:
    """Canonical SL(2,Z) conjugacy class.

    Only the fields relevant to ``kind`` are meaningful; the others keep their
    defaults so that equality of two classes is plain field equality.
    """

    kind: str
    sign: int = 1
    twist: int = 0
    word: str = ""
    index: int = -1

    def representative(self) -> Sl2Matrix:
        if self.kind == CENTRAL:
            base = identity()
        elif self.kind == ELLIPTIC:
            return ELLIPTIC_REPS[self.index][0]
        elif self.kind == PARABOLIC:
            base = Sl2Matrix(1, self.twist, 0, 1)
        else:
            base = word_product(self.word)
        return base if self.sign > 0 else -base

    def inverse(self) -> MonodromyClass:
        return classify(invert(self.representative()))

    @property
    def rl_word(self) -> str:
        """Signed R/L word ``w`` with ``representative() == +-word_product(w)``."""
        if self.kind == CENTRAL:
            return ""
        if self.kind == ELLIPTIC:
            return ELLIPTIC_REPS[self.index][1]
        if self.kind == PARABOLIC:
            return ("R" if self.twist > 0 else "r") * abs(self.twist)
        return self.word

    def __str__(self) -> str:
        s = "+" if self.sign > 0 else "-"
        if self.kind == CENTRAL:
            return f"Central({s})"
        if self.kind == ELLIPTIC:
            return f"Elliptic({self.index})"
        if self.kind == PARABOLIC:
            return f"Parabolic({s},{self.twist})"
        return f"Hyperbolic({s},{self.word})"

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "sign": self.sign}
        if self.kind == ELLIPTIC:
            out = {"kind": self.kind, "index": self.index}
        elif self.kind == PARABOLIC:
            out["twist"] = self.twist
        elif self.kind == HYPERBOLIC:
            out["word"] = self.word
        return out


def _bezout(p: int, q: int) -> tuple[int, int]:
    """Return (s, t) with p*s + q*t == 1 for coprime p, q."""
    old_r, r = p, q
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    assert old_r in (1, -1) and p * old_s + q * old_t == 1
    return old_s, old_t


def _conj(A: Sl2Matrix, Q: Sl2Matrix) -> Sl2Matrix:
    """``Q^-1 A Q``."""
    return invert(Q) @ A @ Q


def _elliptic_form(A: Sl2Matrix) -> tuple[MonodromyClass, Sl2Matrix]:
    # Gauss-style descent: shrink |a| by R-conjugation, swap b/c by S while
    # |b| < |c|. For |trace| < 2 this ends exactly at [[0, -c], [c, t]], c = +-1.
    P = identity()
    B = A
    while True:
        n0 = -(B.a // B.c)
        n = min((n0, n0 - 1), key=lambda m: abs(B.a + m * B.c))
        Q = R ** (-n)
        B, P = _conj(B, Q), P @ Q
        if abs(B.b) < abs(B.c):
            Q = invert(_S)
            B, P = _conj(B, Q), P @ Q
        else:
            break
    for idx, (rep, _) in enumerate(ELLIPTIC_REPS):
        if rep == B:
            return MonodromyClass(ELLIPTIC, index=idx), P
    raise AssertionError(f"elliptic descent of {A} stopped at {B}")


def _parabolic_form(A: Sl2Matrix, sign: int) -> tuple[MonodromyClass, Sl2Matrix]:
    B = A if sign > 0 else -A
    r1, r2 = B.a - 1, B.b
    if r1 == 0 and r2 == 0:
        r1, r2 = B.c, B.d - 1
    p, q = r2, -r1
    g = gcd(p, q)
    p, q = p // g, q // g
    s, t = _bezout(p, q)
    P = Sl2Matrix(p, -t, q, s)
    U = _conj(B, P)
    assert U.a == 1 and U.c == 0 and U.d == 1, U
    return MonodromyClass(PARABOLIC, sign=sign, twist=U.b), P


def _floor_quadratic(P: int, Q: int, D: int, r: int) -> int:
    """floor((P + sqrt(D)) / Q) for non-square D with r = isqrt(D)."""
    if Q > 0:
        return (P + r) // Q
    return (P + r + 1) // Q


def _positive_conjugate(B: Sl2Matrix) -> tuple[Sl2Matrix, Sl2Matrix]:
    """For trace(B) > 2 find P with P^-1 B P having all entries positive.

    Walks the continued fraction of a fixed point of B; odd convergent
    matrices eventually separate the two fixed points by 0 and infinity.
    """
    t = B.trace
    D = t * t - 4
    r = isqrt(D)
    Pq, Qq = B.a - B.d, 2 * B.c
    M = identity()
    n = 0
    while True:
        an = _floor_quadratic(Pq, Qq, D, r)
        # M <- M @ [[an, 1], [1, 0]] done in pairs to stay inside SL(2,Z)
        if n % 2 == 0:
            pending = an
        else:
            M = M @ Sl2Matrix(pending * an + 1, pending, an, 1)
            C = _conj(B, M)
            if C.b * C.c > 0:
                if C.b < 0:
                    M = M @ invert(_S)
                    C = _conj(B, M)
                return C, M
        Pq = an * Qq - Pq
        Qq = (D - Pq * Pq) // Qq
        n += 1


def _positive_word(C: Sl2Matrix) -> str:
    letters = []
    while C != identity():
        if C.a >= C.c and C.b >= C.d:
            letters.append("R")
            C = Sl2Matrix(C.a - C.c, C.b - C.d, C.c, C.d)
        elif C.c >= C.a and C.d >= C.b:
            letters.append("L")
            C = Sl2Matrix(C.a, C.b, C.c - C.a, C.d - C.b)
        else:
            raise AssertionError(f"rows of {C} are not comparable")
    return "".join(letters)


_ORDER = str.maketrans("RL", "01")


def _hyperbolic_form(A: Sl2Matrix, sign: int) -> tuple[MonodromyClass, Sl2Matrix]:
    B = A if sign > 0 else -A
    C, P = _positive_conjugate(B)
    w = _positive_word(C)
    # least rotation with R < L
    j = min(range(len(w)), key=lambda i: (w[i:] + w[:i]).translate(_ORDER))
    P = P @ word_product(w[:j])
    return MonodromyClass(HYPERBOLIC, sign=sign, word=w[j:] + w[:j]), P


@lru_cache(maxsize=4096)
def normal_form(A: Sl2Matrix) -> tuple[MonodromyClass, Sl2Matrix]:
    """Return ``(cls, P)`` with ``A == P @ cls.representative() @ P^-1``."""
    t = A.trace
    if A == identity() or A == -identity():
        return MonodromyClass(CENTRAL, sign=1 if A.a > 0 else -1), identity()
    if abs(t) < 2:
        return _elliptic_form(A)
    sign = 1 if t > 0 else -1
    if abs(t) == 2:
        return _parabolic_form(A, sign)
    return _hyperbolic_form(A, sign)


def classify(A: Sl2Matrix) -> MonodromyClass:
    return normal_form(A)[0]


def are_conjugate(A: Sl2Matrix, B: Sl2Matrix) -> bool:
    return classify(A) == classify(B)


def rl_word(A: Sl2Matrix) -> str:
    return classify(A).rl_word


def rl_word_length(A: Sl2Matrix) -> int:
    """Length of the R/L factorization behind ``classify`` (0 for +-I).

    An upper bound on the number of Dehn twists needed, not a minimum.
    """
    return len(rl_word(A))


def twist_factorization(A: Sl2Matrix) -> tuple[int, list[Sl2Matrix]]:
    """Write ``A = sign * t_1 @ t_2 @ ... @ t_r`` with each ``t_i`` a
    conjugate of ``R^{+-1}`` or ``L^{+-1}`` (a single Dehn twist)."""
    cls, P = normal_form(A)
    Pinv = invert(P)
    twists = [P @ _LETTERS[ch] @ Pinv for ch in cls.rl_word]
    sign = 1 if cls.kind == ELLIPTIC else cls.sign
    return sign, twists


def induced_core_monodromy() -> Sl2Matrix:
    """H1 action of ``(x, y) -> (y, reversed x)`` on the boundary torus.

    In angle coordinates the map is the swap followed by reversing the
    second circle; both factors have determinant -1.
    """
    swap = ((0, 1), (1, 0))
    reverse_second = ((1, 0), (0, -1))
    m = [
        [sum(reverse_second[i][k] * swap[k][j] for k in range(2)) for j in range(2)]
        for i in range(2)
    ]
    result = Sl2Matrix.from_rows(m)
    if not (are_conjugate(result, phi()) or are_conjugate(result, invert(phi()))):
        raise AssertionError(f"core boundary monodromy {result} is not conjugate to phi^+-1")
    return result
