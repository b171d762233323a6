"""Closed assemblies with prescribed chi (and sigma), the cap construction
plan, and upper bounds on the Euler invariant of torus bundles."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import sl2z
from .assembly import AssemblyGraph, Slot
from .blocks import (
    BlockKind,
    BoundaryLabel,
    cap,
    connector,
    core,
    genus_bundle_chi,
    genus_three_bundle,
    labels_glueable,
    reversed_block,
    six_cap,
    splitter,
    torus_bundle_over_punctured_sphere,
    twist_cobordism,
)
from .curves import CurveSystem, composite_fixes_support, lantern_curve_system
from .mcg import Word, format_word, reduce


class EvenTarget(ValueError):
    pass


class TargetBelow13(ValueError):
    pass


STATED_SIGMA = 1


def _pair(g: AssemblyGraph, orientation: int) -> int:
    """Core (or reversed Core) with a Splitter attached along the Phi torus.
    Returns the splitter's instance index; its slots 1..3 stay open."""
    c = g.add(core(), orientation)
    s = g.add(splitter(), orientation)
    g.add_gluing((c, 0), (s, 0))
    return s


def synthesize_chi(n: int) -> AssemblyGraph:
    """Closed assembly with chi = n for odd n >= 13.

    Components alternate P0, N0, P1, ..., Pk (P a Core+Splitter pair, N its
    reverse). Connector i bridges component i and i+1: its slot 0 takes a
    free tau slot of the positive splitter, slot 2 a free tau^-1 slot of the
    negative one. Leftover tau^-1 slots are paired with tau slots in slot
    order and the last three tau slots get Caps.
    """
    if n % 2 == 0:
        raise EvenTarget(f"even targets not realized by this construction (chi = {n})")
    if n < 13:
        raise TargetBelow13(f"chi = {n} is below 13, the smallest value this construction realizes")
    k = (n - 13) // 2
    g = AssemblyGraph()
    comps = []
    for i in range(2 * k + 1):
        comps.append(_pair(g, 1 if i % 2 == 0 else -1))

    tau = sl2z.twist_a()
    for i in range(2 * k):
        a, b = comps[i], comps[i + 1]
        pos, neg = (a, b) if i % 2 == 0 else (b, a)
        c = g.add(connector(tau))
        g.add_gluing((c, 0), _first_open(g, pos))
        g.add_gluing((c, 2), _first_open(g, neg))

    tau_cls = sl2z.classify(tau)
    plus, minus = [], []
    for s in g.open_slots():
        (plus if g.label(s).effective == tau_cls else minus).append(s)
    assert len(plus) == len(minus) + 3, (len(plus), len(minus))
    for s, t in zip(minus, plus):
        g.add_gluing(s, t)
    for s in plus[len(minus):]:
        c = g.add(cap())
        g.add_gluing(s, (c, 0))
    return g


def _first_open(g: AssemblyGraph, inst: int) -> Slot:
    for k in range(1, len(g.instances[inst].block.boundaries)):
        if not g.is_used((inst, k)):
            return (inst, k)
    raise RuntimeError(f"instance {inst} has no open splitter slot")


def recipe_counts(n: int) -> dict[str, int]:
    """Block counts for chi = n: Cores, reversed Cores, Splitters,
    Connectors, Caps."""
    k = (n - 13) // 2
    return {"core": k + 1, "reversed_core": k, "splitter": 2 * k + 1, "connector": 2 * k, "cap": 3}


def assembly_counts(g: AssemblyGraph) -> dict[str, int]:
    out = {"core": 0, "reversed_core": 0, "splitter": 0, "connector": 0, "cap": 0}
    for inst in g.instances:
        kind = inst.block.kind
        if kind is BlockKind.CORE:
            out["core" if inst.orientation > 0 else "reversed_core"] += 1
        elif kind.value in out:
            out[kind.value] += 1
    return out


# ---------------------------------------------------------------------------
# (chi, sigma)


def _odd_unit(g: AssemblyGraph) -> list[tuple[Slot, Slot]]:
    # reversed Core + Splitter + 3 Caps: chi 13, sigma +1
    s = _pair(g, -1)
    edges = []
    for k in (1, 2, 3):
        c = g.add(cap(), -1)
        g.add_gluing((s, k), (c, 0))
        edges.append(((s, k), (c, 0)))
    return edges


def _even_unit(g: AssemblyGraph) -> list[tuple[Slot, Slot]]:
    # two Core + Splitter pairs closed by one SixCap: chi 2, sigma 0
    s1, s2 = _pair(g, 1), _pair(g, 1)
    six = g.add(six_cap())
    edges = []
    for j, slot in enumerate([(s1, 1), (s1, 2), (s1, 3), (s2, 1), (s2, 2), (s2, 3)]):
        g.add_gluing(slot, (six, j))
        edges.append((slot, (six, j)))
    return edges


def synthesize_chi_sigma(s: int, m: int) -> AssemblyGraph:
    """Closed connected assembly with chi = 13 s + 2 m and claimed sigma = s.

    ``s`` odd units and ``m`` even units are chained by Connectors; each
    Connector replaces one tau gluing in each of two neighbouring units.
    (0, 0) gives the empty assembly.
    """
    if s < 0 or m < 0:
        raise ValueError(f"s and m must be non-negative, got s={s}, m={m}")
    g = AssemblyGraph()
    units = [_odd_unit(g) for _ in range(s)] + [_even_unit(g) for _ in range(m)]
    tau = sl2z.twist_a()
    for left, right in zip(units, units[1:]):
        c = g.add(connector(tau))
        for edge in (left.pop(), right.pop(0)):
            g.remove_gluing(*edge)
            for end in edge:
                free = [(c, j) for j in range(4) if not g.is_used((c, j))]
                slot = next(x for x in free if labels_glueable(g.label(x), g.label(end)))
                g.add_gluing(slot, end)
    return g


# ---------------------------------------------------------------------------
# Cap plan


@dataclass(frozen=True)
class Piece:
    name: str
    monodromies: tuple[Word, Word, Word]
    chi_before: int
    trick_applied: bool
    chi_after: int
    trick_prefix: tuple[str, ...]
    trick_target: str
    obstruction: Optional[dict] = None

    def words(self) -> str:
        return ", ".join(format_word(w, "phi") for w in self.monodromies)


@dataclass(frozen=True)
class CapPlan:
    genus: int
    pieces: tuple[Piece, ...]
    final_steps: tuple[tuple[str, int], ...]
    ledger: tuple[int, ...]
    remarks: tuple[str, ...] = field(default=())

    @property
    def total_before(self) -> int:
        return sum(p.chi_before for p in self.pieces)

    @property
    def total(self) -> int:
        return self.ledger[-1]

    @property
    def tricks(self) -> int:
        return sum(p.trick_applied for p in self.pieces)

    def table(self) -> str:
        lines = [f"{'piece':6} {'chi':>4} {'trick':6} {'after':>5} {'running':>7}  monodromies"]
        for p, run in zip(self.pieces, self.ledger):
            lines.append(
                f"{p.name:6} {p.chi_before:>4} {'yes' if p.trick_applied else 'no':6} "
                f"{p.chi_after:>5} {run:>7}  {p.words()}"
            )
        for (step, delta), run in zip(self.final_steps, self.ledger[len(self.pieces):]):
            lines.append(f"{step}: chi {delta:+d}, running {run}")
        for p in self.pieces:
            if p.obstruction:
                o = p.obstruction
                lines.append(
                    f"{p.name} obstruction: {o['form']}; {o['curves'][0]} and {o['curves'][1]} meet "
                    f"geometrically {o['geometric']} times, algebraically {o['algebraic']}"
                )
        lines += list(self.remarks)
        return "\n".join(lines)


# twist phi_i is about curve C_i
_PIECES = (
    ("W2", ((1,), (2,), (-1, -2))),
    ("W3", ((2, 1), (3,), (-1, -2, -3))),
    ("W4", ((3, 2, 1), (4,), (-1, -2, -3, -4))),
    ("W5", ((4, 3, 2, 1), (-5,), (-1, -2, -3, -4, 5))),
    ("W6", ((-5, 4, 3, 2, 1), (-6,), (-1, -2, -3, -4, 5, 6))),
)
_W6_REWRITTEN = ((6, 7), (-6,), (-7,))


def _curve(i: int) -> str:
    return f"C{abs(i)}"


def build_cap_plan(cs: CurveSystem | None = None) -> CapPlan:
    cs = cs or lantern_curve_system()
    h = cs.genus
    piece_chi = 2 * h - 2
    pieces = []
    for name, (alpha, beta, gamma) in _PIECES:
        prefix = tuple(_curve(i) for i in alpha)
        target = _curve(beta[0])
        ok = composite_fixes_support(prefix, target, cs)
        obstruction = None
        if name == "W6":
            if ok:
                raise RuntimeError("W6 unexpectedly admits the torus trick; curve data is corrupted")
            # same piece as W[phi6 phi7, phi6^-1, phi7^-1]
            p, t = _curve(_W6_REWRITTEN[2][0]), _curve(_W6_REWRITTEN[1][0])
            if composite_fixes_support((p,), t, cs):
                raise RuntimeError("rewritten W6 unexpectedly admits the torus trick")
            obstruction = {
                "form": ", ".join(format_word(w, "phi") for w in _W6_REWRITTEN),
                "curves": (t, p),
                "geometric": cs.geom(t, p),
                "algebraic": cs.alg(t, p),
            }
        elif not ok:
            raise RuntimeError(f"{name}: {prefix} does not fix {target}; curve data is corrupted")
        pieces.append(Piece(name, (alpha, beta, gamma), piece_chi, ok, 0 if ok else piece_chi,
                            prefix, target, obstruction))

    final_steps = (
        ("glue altered pieces back together", 0),
        ("attach torus bundle cobordisms to the unmatched boundaries", 0),
        ("identify the remaining boundary pairs", 0),
    )
    ledger, run = [], 0
    for p in pieces:
        run += p.chi_after
        ledger.append(run)
    for _, delta in final_steps:
        run += delta
        ledger.append(run)
    total_before = sum(p.chi_before for p in pieces)
    if total_before != genus_bundle_chi(h):
        raise RuntimeError(f"untricked total {total_before} != bundle chi {genus_bundle_chi(h)}")
    remarks = ("whether a cap with chi 0 exists is open",)
    return CapPlan(h, tuple(pieces), final_steps, tuple(ledger), remarks)


def pieces_chain(plan: CapPlan) -> bool:
    """Each piece satisfies gamma beta alpha = 1 freely, and consecutive
    pieces share a boundary: gamma_i alpha_{i+1} = 1."""
    for p in plan.pieces:
        a, b, c = p.monodromies
        if reduce(c + b + a):
            return False
    for p, q in zip(plan.pieces, plan.pieces[1:]):
        if reduce(p.monodromies[2] + q.monodromies[0]):
            return False
    return True


def genus_three_filling() -> AssemblyGraph:
    """Genus-3 bundle plus the genus-3 to torus cobordism: chi 20 with one
    open genus-1 slot."""
    g = AssemblyGraph()
    b = g.add(genus_three_bundle())
    c = g.add(twist_cobordism(3))
    g.add_gluing((b, 0), (c, 0))
    return g


# ---------------------------------------------------------------------------
# Euler invariant bounds


@dataclass
class EulerBound:
    bound: Optional[int]
    witness: Optional[AssemblyGraph]
    route: str
    open_slot: Optional[Slot] = None

    def __iter__(self):
        yield self.bound
        yield self.witness

    def describe(self) -> str:
        if self.bound is None:
            return f"no bound: {self.route}"
        return f"E ≤ {self.bound} with witness {self.route}"


INTRO_BOUND_REMARK = "a uniform bound of 20 for all torus bundles is not reproduced; only the routes above are implemented"


def _cap_for(g: AssemblyGraph, slot: Slot) -> int:
    orient = 1 if labels_glueable(g.label(slot), cap().boundaries[0]) else -1
    c = g.add(cap(), orient)
    g.add_gluing(slot, (c, 0))
    return c


def _twist_route(m: sl2z.Sl2Matrix) -> EulerBound:
    sign, twists = sl2z.twist_factorization(m)
    extra = [sl2z.phi(), sl2z.phi()] if sign < 0 else []
    # monodromies m^-1, t_r, ..., t_1, Phi, Phi compose to I
    mats = [sl2z.invert(m)] + list(reversed(twists)) + extra
    g = AssemblyGraph()
    b = g.add(torus_bundle_over_punctured_sphere(mats))
    for j in range(1, len(twists) + 1):
        _cap_for(g, (b, j))
    for j in range(len(twists) + 1, len(mats)):
        c = g.add(core(), -1)
        g.add_gluing((b, j), (c, 0))
    route = f"Bundle+{len(twists)}Cap" + ("+2(-Core)" if extra else "")
    return EulerBound(sum(i.block.chi for i in g.instances), g, route, (b, 0))


def _single_cap(orientation: int) -> EulerBound:
    g = AssemblyGraph()
    c = g.add(cap(), orientation)
    return EulerBound(4, g, "Cap", (c, 0))


def _splitter_route(orientation: int) -> EulerBound:
    g = AssemblyGraph()
    s = g.add(splitter(), orientation)
    for k in (1, 2, 3):
        c = g.add(cap(), orientation)
        g.add_gluing((s, k), (c, 0))
    return EulerBound(12, g, "Splitter+3Cap", (s, 0))


def euler_bound(label: BoundaryLabel) -> EulerBound:
    """Best available upper bound on the Euler invariant of the torus bundle
    ``label`` with a witness whose one open slot glues to ``label``.

    Unpacks as ``(bound, witness)``. Central monodromies get no bound.
    """
    if label.fiber_genus != 1:
        raise ValueError("euler_bound takes a genus-1 label")
    cls = label.effective
    if cls.kind == sl2z.CENTRAL:
        return EulerBound(None, None, "central monodromy has no witness in this block inventory")
    candidates = []
    if cls.kind == sl2z.PARABOLIC and cls.sign == 1 and abs(cls.twist) == 1:
        candidates.append(_single_cap(cls.twist))
    if cls.kind == sl2z.ELLIPTIC and cls.index in (0, 3):
        candidates.append(_splitter_route(1 if cls.index == 3 else -1))
    candidates.append(_twist_route(cls.representative()))
    best = min(candidates, key=lambda c: c.bound)
    assert labels_glueable(label, best.witness.label(best.open_slot))
    return best
