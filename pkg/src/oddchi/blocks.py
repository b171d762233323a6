"""Building blocks with boundary labels, Euler characteristic and claimed
signature.

A boundary label ``(g, m, s)`` stands for the oriented boundary component
``s * F_g(m)``. Since ``-F(m) = F(m^-1)``, what matters for gluing is the
*effective* monodromy ``m`` if ``s = +1`` and ``m^-1`` otherwise. Two
components glue when one effective monodromy is conjugate to the inverse of
the other.

Genus-1 monodromies are :class:`~oddchi.sl2z.MonodromyClass` normal forms.
Higher-genus monodromies are symbolic: freely reduced words in named twist
generators, e.g. ``(("tau", 1),)``, compared literally.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Union

from . import sl2z
from .sl2z import MonodromyClass, Sl2Matrix

SymbolicWord = tuple[tuple[str, int], ...]
Monodromy = Union[MonodromyClass, SymbolicWord]

CLAIMED = "claimed, not independently verified"


def reduce_symbolic(word: Sequence[tuple[str, int]]) -> SymbolicWord:
    out: list[tuple[str, int]] = []
    for name, e in word:
        if out and out[-1][0] == name:
            e += out.pop()[1]
        if e:
            out.append((name, e))
    return tuple(out)


def invert_symbolic(word: SymbolicWord) -> SymbolicWord:
    return tuple((name, -e) for name, e in reversed(word))


def format_symbolic(word: SymbolicWord) -> str:
    if not word:
        return "1"
    return "".join(name if e == 1 else f"{name}^{e}" for name, e in word)


@dataclass(frozen=True)
class BoundaryLabel:
    fiber_genus: int
    monodromy: Monodromy
    orientation: int = 1

    def __post_init__(self):
        if self.fiber_genus < 1:
            raise ValueError("fiber genus must be positive")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        if self.fiber_genus == 1:
            if not isinstance(self.monodromy, MonodromyClass):
                raise TypeError("genus-1 labels carry a MonodromyClass")
        else:
            if isinstance(self.monodromy, MonodromyClass):
                raise TypeError("higher-genus labels carry a symbolic word")
            object.__setattr__(self, "monodromy", reduce_symbolic(self.monodromy))

    @classmethod
    def torus(cls, m: Sl2Matrix, orientation: int = 1) -> BoundaryLabel:
        return cls(1, sl2z.classify(m), orientation)

    def reverse(self) -> BoundaryLabel:
        """``-F(m) = F(m^-1)``: invert the monodromy, keep the sign."""
        return replace(self, monodromy=_invert(self.monodromy))

    @property
    def effective(self) -> Monodromy:
        return self.monodromy if self.orientation > 0 else _invert(self.monodromy)

    def __str__(self) -> str:
        m = str(self.monodromy) if self.fiber_genus == 1 else format_symbolic(self.monodromy)
        s = "" if self.orientation > 0 else "-"
        return f"{s}F{self.fiber_genus}({m})"


def _invert(m: Monodromy) -> Monodromy:
    if isinstance(m, MonodromyClass):
        return m.inverse()
    return invert_symbolic(m)


def labels_glueable(l1: BoundaryLabel, l2: BoundaryLabel) -> bool:
    if l1.fiber_genus != l2.fiber_genus:
        return False
    return l2.effective == _invert(l1.effective)


class BlockKind(enum.Enum):
    CORE = "core"
    SPLITTER = "splitter"
    CONNECTOR = "connector"
    CAP = "cap"
    SIX_CAP = "six_cap"
    TWIST_COBORDISM = "twist_cobordism"
    GENUS_THREE_BUNDLE = "genus_three_bundle"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Block:
    kind: BlockKind
    chi: int
    sigma_claimed: Optional[int]
    boundaries: tuple[BoundaryLabel, ...]
    parameters: tuple = ()
    orientation: int = 1
    sigma_source: str = ""
    aspherical_certified: bool = True
    pi1_injective_certified: bool = True
    # boundary matrices of a genus-1 bundle over a punctured sphere, in the
    # native orientation; untouched by reversed_block
    monodromies: tuple[Sl2Matrix, ...] = field(default=(), compare=False)

    @property
    def name(self) -> str:
        base = {
            BlockKind.CORE: "Core",
            BlockKind.SPLITTER: "Splitter",
            BlockKind.CONNECTOR: "Connector",
            BlockKind.CAP: "Cap",
            BlockKind.SIX_CAP: "SixCap",
            BlockKind.TWIST_COBORDISM: "TwistCobordism",
            BlockKind.GENUS_THREE_BUNDLE: "GenusThreeBundle",
            BlockKind.CUSTOM: "Bundle",
        }[self.kind]
        return base if self.orientation > 0 else f"-{base}"

    def params_dict(self) -> dict:
        return dict(self.parameters)


def reversed_block(b: Block) -> Block:
    """The same manifold with the opposite orientation."""
    return replace(
        b,
        orientation=-b.orientation,
        sigma_claimed=None if b.sigma_claimed is None else -b.sigma_claimed,
        boundaries=tuple(l.reverse() for l in b.boundaries),
    )


def _tau_class() -> MonodromyClass:
    return sl2z.classify(sl2z.twist_a())


def core() -> Block:
    return Block(
        BlockKind.CORE,
        chi=1,
        sigma_claimed=1,
        boundaries=(BoundaryLabel.torus(sl2z.phi()),),
        sigma_source=CLAIMED,
    )


def _punctured_sphere_bundle(kind, monodromies, sigma, parameters=(), note=CLAIMED) -> Block:
    if not monodromy_product_is_identity(monodromies):
        raise ValueError("boundary monodromies of a bundle over a punctured sphere must compose to I")
    return Block(
        kind,
        chi=0,
        sigma_claimed=sigma,
        boundaries=tuple(BoundaryLabel.torus(m) for m in monodromies),
        parameters=parameters,
        sigma_source=note,
        monodromies=tuple(monodromies),
    )


def monodromy_product_is_identity(monodromies: Sequence[Sl2Matrix]) -> bool:
    """``m_n ... m_2 m_1 == I``, the existence condition for a torus bundle over
    an n-punctured sphere with these boundary monodromies."""
    prod = sl2z.identity()
    for m in monodromies:
        prod = m @ prod
    return prod == sl2z.identity()


def splitter() -> Block:
    # punctures tau_a, tau_b, tau_a and the reversed Phi boundary
    ta, tb = sl2z.twist_a(), sl2z.twist_b()
    return _punctured_sphere_bundle(
        BlockKind.SPLITTER, (sl2z.invert(sl2z.phi()), ta, tb, ta), sigma=1
    )


def connector(psi: Sl2Matrix) -> Block:
    inv = sl2z.invert(psi)
    return _punctured_sphere_bundle(
        BlockKind.CONNECTOR,
        (inv, inv, psi, psi),
        sigma=0,
        parameters=(("psi", tuple(psi.tolist())),),
        note="assumed 0; no value is stated for connectors",
    )


def torus_bundle_over_punctured_sphere(monodromies: Sequence[Sl2Matrix]) -> Block:
    """Generic chi = 0 filler; signature unknown."""
    return _punctured_sphere_bundle(
        BlockKind.CUSTOM,
        tuple(monodromies),
        sigma=None,
        parameters=(("monodromies", tuple(tuple(m.tolist()) for m in monodromies)),),
        note="",
    )


def cap() -> Block:
    # The cap fills a T^2(tau) boundary, so its own boundary is -T^2(tau).
    return Block(
        BlockKind.CAP,
        chi=4,
        sigma_claimed=-1,
        boundaries=(BoundaryLabel(1, _tau_class(), -1),),
        sigma_source=CLAIMED,
    )


def six_cap() -> Block:
    return Block(
        BlockKind.SIX_CAP,
        chi=0,
        sigma_claimed=-4,
        boundaries=tuple(BoundaryLabel(1, _tau_class(), -1) for _ in range(6)),
        sigma_source=CLAIMED,
    )


TAU = (("tau", 1),)


def twist_cobordism(h: int) -> Block:
    if h < 2:
        raise ValueError(f"twist cobordism needs genus >= 2, got {h}")
    return Block(
        BlockKind.TWIST_COBORDISM,
        chi=0,
        sigma_claimed=None,
        boundaries=(BoundaryLabel(h, invert_symbolic(TAU)), BoundaryLabel(1, _tau_class())),
        parameters=(("genus", h),),
    )


def genus_bundle_chi(h: int, punctures: int = 7) -> int:
    """chi of an F_h bundle over a sphere with ``punctures`` holes."""
    return (2 - punctures) * (2 - 2 * h)


def genus_three_bundle() -> Block:
    return Block(
        BlockKind.GENUS_THREE_BUNDLE,
        chi=genus_bundle_chi(3),
        sigma_claimed=None,
        boundaries=(BoundaryLabel(3, TAU),),
    )


def build_block(kind: BlockKind | str, parameters: dict | None = None) -> Block:
    """Rebuild a native (positively oriented) block from its kind and parameters."""
    kind = BlockKind(kind)
    parameters = parameters or {}
    expected = {
        BlockKind.CONNECTOR: {"psi"},
        BlockKind.TWIST_COBORDISM: {"genus"},
        BlockKind.CUSTOM: {"monodromies"},
    }.get(kind, set())
    if set(parameters) != expected:
        raise ValueError(f"{kind.value} takes parameters {sorted(expected)}, got {sorted(parameters)}")
    if kind is BlockKind.CONNECTOR:
        return connector(Sl2Matrix(*parameters["psi"]))
    if kind is BlockKind.TWIST_COBORDISM:
        return twist_cobordism(parameters["genus"])
    if kind is BlockKind.CUSTOM:
        return torus_bundle_over_punctured_sphere([Sl2Matrix(*m) for m in parameters["monodromies"]])
    return {
        BlockKind.CORE: core,
        BlockKind.SPLITTER: splitter,
        BlockKind.CAP: cap,
        BlockKind.SIX_CAP: six_cap,
        BlockKind.GENUS_THREE_BUNDLE: genus_three_bundle,
    }[kind]()
