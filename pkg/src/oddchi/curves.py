"""The seven-curve lantern configuration on a genus-3 surface."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .mcg import pairing


class InvalidCurveSystem(ValueError):
    pass


@dataclass(frozen=True)
class CurveSystem:
    names: tuple[str, ...]
    h1_classes: tuple[tuple[int, ...], ...]
    geom_intersections: tuple[tuple[int, ...], ...]
    alg_intersections: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = len(self.names)
        if len(self.h1_classes) != m:
            raise InvalidCurveSystem("one homology class per curve")
        for table in (self.geom_intersections, self.alg_intersections):
            if len(table) != m or any(len(row) != m for row in table):
                raise InvalidCurveSystem("intersection tables must be m x m")
        G, A = self.geom_intersections, self.alg_intersections
        for i in range(m):
            if G[i][i] or A[i][i]:
                raise InvalidCurveSystem(f"nonzero self-intersection for {self.names[i]}")
            for j in range(m):
                if G[i][j] != G[j][i] or G[i][j] < 0:
                    raise InvalidCurveSystem("geometric table must be symmetric and non-negative")
                if A[i][j] != -A[j][i]:
                    raise InvalidCurveSystem("algebraic table must be antisymmetric")
                if abs(A[i][j]) > G[i][j]:
                    raise InvalidCurveSystem(
                        f"|alg| > geom for ({self.names[i]}, {self.names[j]})"
                    )
                if A[i][j] != pairing(self.h1_classes[i], self.h1_classes[j]):
                    raise InvalidCurveSystem(
                        f"alg({self.names[i]}, {self.names[j]}) disagrees with the homology pairing"
                    )

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def genus(self) -> int:
        return len(self.h1_classes[0]) // 2

    def index(self, curve: int | str) -> int:
        if isinstance(curve, str):
            try:
                return self.names.index(curve)
            except ValueError:
                raise IndexError(f"no curve named {curve!r}") from None
        if not 0 <= curve < self.size:
            raise IndexError(f"curve index {curve} out of range")
        return curve

    def geom(self, i: int | str, j: int | str) -> int:
        return self.geom_intersections[self.index(i)][self.index(j)]

    def alg(self, i: int | str, j: int | str) -> int:
        return self.alg_intersections[self.index(i)][self.index(j)]

    def table(self) -> str:
        w = max(len(n) for n in self.names) + 1
        lines = ["geom/alg".ljust(w + 2) + " ".join(n.rjust(5) for n in self.names)]
        for i, n in enumerate(self.names):
            cells = " ".join(
                f"{self.geom_intersections[i][j]}/{self.alg_intersections[i][j]}".rjust(5)
                for j in range(self.size)
            )
            lines.append(n.ljust(w + 2) + cells)
        lines.append("")
        for n, c in zip(self.names, self.h1_classes):
            lines.append(f"[{n}] = {_format_class(c)}")
        return "\n".join(lines)


def _format_class(c: Sequence[int]) -> str:
    terms = []
    for k, coef in enumerate(c):
        if coef:
            base = ("a" if k % 2 == 0 else "b") + str(k // 2 + 1)
            terms.append(base if coef == 1 else f"{coef}{base}")
    return " + ".join(terms) or "0"


def _a(*idx: int, g: int = 3) -> tuple[int, ...]:
    v = [0] * (2 * g)
    for i in idx:
        v[2 * (i - 1)] += 1
    return tuple(v)


def lantern_curve_system() -> CurveSystem:
    """C1..C3 bound the punctures, C4 is the outer boundary, and C5, C6, C7
    enclose the puncture pairs {1,2}, {2,3}, {1,3}.

    Homology classes lie in the span of a1, a2, a3 so all algebraic
    intersections vanish; any two of C5, C6, C7 meet geometrically twice.
    """
    names = tuple(f"C{i}" for i in range(1, 8))
    classes = (_a(1), _a(2), _a(3), _a(1, 2, 3), _a(1, 2), _a(2, 3), _a(1, 3))
    geom = [[0] * 7 for _ in range(7)]
    for i, j in ((4, 5), (5, 6), (4, 6)):
        geom[i][j] = geom[j][i] = 2
    alg = [[pairing(x, y) for y in classes] for x in classes]
    return CurveSystem(names, classes, tuple(map(tuple, geom)), tuple(map(tuple, alg)))


def composite_fixes_support(prefix: Sequence[int | str], target: int | str, cs: CurveSystem) -> bool:
    """Whether twists along ``prefix`` all miss the curve ``target``.

    Disjoint supports are the checkable stand-in for "the composite fixes the
    target curve pointwise". Integer indices are 0-based.
    """
    t = cs.index(target)
    return all(cs.geom_intersections[cs.index(p)][t] == 0 for p in prefix)
