"""Assemblies of block instances glued along boundary components."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from . import mcg, sl2z
from .blocks import Block, BlockKind, BoundaryLabel, build_block, labels_glueable, monodromy_product_is_identity
from .curves import lantern_curve_system

Slot = tuple[int, int]


class AssemblyError(ValueError):
    pass


class IllegalGluing(AssemblyError):
    pass


class SlotInUse(AssemblyError):
    pass


class UnknownSlot(AssemblyError):
    pass


@dataclass(frozen=True)
class Instance:
    id: str
    block: Block
    orientation: int = 1

    @property
    def labels(self) -> tuple[BoundaryLabel, ...]:
        if self.orientation > 0:
            return self.block.boundaries
        return tuple(l.reverse() for l in self.block.boundaries)

    @property
    def sigma(self) -> Optional[int]:
        s = self.block.sigma_claimed
        return None if s is None else self.orientation * s

    @property
    def name(self) -> str:
        return self.block.name if self.orientation > 0 else f"-{self.block.name}"


class AssemblyGraph:
    """Multigraph of block instances; edges pair boundary slots.

    Blocks are stored in their native orientation together with an
    orientation sign, so a reversed block added with sign +1 is recorded as
    the native block with sign -1.
    """

    def __init__(self):
        self.instances: list[Instance] = []
        self.gluings: list[tuple[Slot, Slot]] = []
        self._partner: dict[Slot, Slot] = {}

    def __eq__(self, other):
        if not isinstance(other, AssemblyGraph):
            return NotImplemented
        return self.instances == other.instances and self.gluings == other.gluings

    def __repr__(self):
        return f"AssemblyGraph({len(self.instances)} blocks, {len(self.gluings)} gluings)"

    def add(self, block: Block, orientation: int = 1, id: str | None = None) -> int:
        if orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        if block.orientation < 0:
            native = build_block(block.kind, _json_params(block))
            block, orientation = native, -orientation
        if id is None:
            id = f"b{len(self.instances)}"
        if any(inst.id == id for inst in self.instances):
            raise ValueError(f"duplicate instance id {id!r}")
        self.instances.append(Instance(id, block, orientation))
        return len(self.instances) - 1

    def label(self, slot: Slot) -> BoundaryLabel:
        i, k = slot
        if not 0 <= i < len(self.instances):
            raise UnknownSlot(f"no instance {i}")
        labels = self.instances[i].labels
        if not 0 <= k < len(labels):
            raise UnknownSlot(f"instance {i} ({self.instances[i].name}) has no slot {k}")
        return labels[k]

    def slots(self):
        for i, inst in enumerate(self.instances):
            for k in range(len(inst.block.boundaries)):
                yield (i, k)

    def is_used(self, slot: Slot) -> bool:
        return slot in self._partner

    def add_gluing(self, a: Slot, b: Slot, check: bool = True) -> AssemblyGraph:
        """Glue slot ``a`` to slot ``b``.

        With ``check=False`` only slot existence is enforced; :func:`verify`
        then reports any illegal edge or reused slot.
        """
        a, b = tuple(a), tuple(b)
        la, lb = self.label(a), self.label(b)
        if check:
            for s in (a, b):
                if s in self._partner:
                    raise SlotInUse(f"slot {s} is already glued")
            if a == b:
                raise SlotInUse(f"cannot glue slot {a} to itself")
            if not labels_glueable(la, lb):
                raise IllegalGluing(f"{la} at {a} does not glue to {lb} at {b}")
        self.gluings.append((a, b))
        self._partner.setdefault(a, b)
        self._partner.setdefault(b, a)
        return self

    def remove_gluing(self, a: Slot, b: Slot) -> AssemblyGraph:
        for edge in ((a, b), (b, a)):
            if edge in self.gluings:
                self.gluings.remove(edge)
                del self._partner[a], self._partner[b]
                return self
        raise AssemblyError(f"no gluing between {a} and {b}")

    def partner(self, slot: Slot) -> Optional[Slot]:
        return self._partner.get(slot)

    def open_slots(self) -> list[Slot]:
        return [s for s in self.slots() if s not in self._partner]

    def is_closed(self) -> bool:
        return not self.open_slots()

    def is_connected(self) -> bool:
        """Reachability over instances; the empty assembly counts as connected."""
        n = len(self.instances)
        if n == 0:
            return True
        adj: dict[int, set[int]] = {i: set() for i in range(n)}
        for (i, _), (j, _) in self.gluings:
            adj[i].add(j)
            adj[j].add(i)
        seen = {0}
        stack = [0]
        while stack:
            for j in adj[stack.pop()] - seen:
                seen.add(j)
                stack.append(j)
        return len(seen) == n

    def block_counts(self) -> Counter:
        """Counts keyed by block name, reversed instances prefixed with '-'."""
        return Counter(inst.name for inst in self.instances)

    def kind_counts(self) -> Counter:
        return Counter(inst.block.kind for inst in self.instances)

    def copy(self) -> AssemblyGraph:
        g = AssemblyGraph()
        g.instances = list(self.instances)
        g.gluings = list(self.gluings)
        g._partner = dict(self._partner)
        return g


def reversed_assembly(g: AssemblyGraph) -> AssemblyGraph:
    """Flip every instance. Each glued pair stays glueable since both sides
    have their effective monodromy inverted."""
    out = g.copy()
    out.instances = [Instance(i.id, i.block, -i.orientation) for i in g.instances]
    return out


def _json_params(block: Block) -> dict:
    out = {}
    for k, v in block.parameters:
        out[k] = [list(x) for x in v] if k == "monodromies" else (list(v) if isinstance(v, tuple) else v)
    return out


def euler_characteristic(g: AssemblyGraph) -> int:
    # every gluing interface is a surface bundle over a circle, chi = 0
    return sum(inst.block.chi for inst in g.instances)


def signature_sum(g: AssemblyGraph) -> Optional[int]:
    """Novikov sum of claimed signatures, or None if any block lacks one."""
    total = 0
    for inst in g.instances:
        if inst.sigma is None:
            return None
        total += inst.sigma
    return total


@lru_cache(maxsize=None)
def relation_certificates() -> dict[str, bool]:
    cs = lantern_curve_system()
    return {
        "phi_decomposition": sl2z.verify_phi_decomposition(),
        "braid_lantern": mcg.verify_braid_lantern(),
        "h1_lantern": mcg.verify_h1_lantern(cs),
        "seven_twist_identity": mcg.verify_seven_twist_identity(cs),
    }


@dataclass
class VerificationReport:
    legal: bool
    closed: bool
    connected: bool
    chi_total: int
    sigma_total: Optional[int]
    open_slots: list[Slot]
    certificates: dict[str, bool]
    conjecture_checks: dict[str, Optional[bool]]
    block_counts: dict[str, int]
    problems: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.legal and self.closed and self.connected and all(self.certificates.values())

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "legal": self.legal,
            "closed": self.closed,
            "connected": self.connected,
            "chi": self.chi_total,
            "sigma_claimed": self.sigma_total,
            "open_slots": [list(s) for s in self.open_slots],
            "block_counts": dict(sorted(self.block_counts.items())),
            "certificates": dict(self.certificates),
            "conjecture_checks": dict(self.conjecture_checks),
            "problems": list(self.problems),
            "warnings": list(self.warnings),
            "notes": list(self.notes),
        }

    def render(self) -> str:
        yes = lambda b: "yes" if b else "NO"
        lines = [
            f"legal:      {yes(self.legal)}",
            f"closed:     {yes(self.closed)}" + ("" if self.closed else f" ({len(self.open_slots)} open slot(s))"),
            f"connected:  {yes(self.connected)}",
            f"chi:        {self.chi_total}",
            "sigma:      " + ("unknown" if self.sigma_total is None else f"{self.sigma_total} (claimed)"),
            "blocks:     " + ", ".join(f"{n} x{c}" for n, c in sorted(self.block_counts.items())),
        ]
        for name, ok in self.certificates.items():
            lines.append(f"cert {name}: {'ok' if ok else 'FAILED'}")
        for name, ok in self.conjecture_checks.items():
            lines.append(f"check {name}: " + ("n/a" if ok is None else ("holds" if ok else "VIOLATED")))
        lines += [f"problem: {p}" for p in self.problems]
        lines += [f"warning: {w}" for w in self.warnings]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)


def verify(g: AssemblyGraph, stated_sigma: Optional[int] = None) -> VerificationReport:
    problems = []
    seen: Counter = Counter()
    for a, b in g.gluings:
        seen[a] += 1
        seen[b] += 1
        if a == b:
            problems.append(f"slot {a} glued to itself")
        elif not labels_glueable(g.label(a), g.label(b)):
            problems.append(f"illegal gluing {a} {g.label(a)} ~ {b} {g.label(b)}")
    problems += [f"slot {s} used {n} times" for s, n in sorted(seen.items()) if n > 1]

    certificates = dict(relation_certificates())
    bundle_ok = all(
        monodromy_product_is_identity(inst.block.monodromies)
        for inst in g.instances
        if inst.block.monodromies
    )
    certificates["bundle_monodromy_products"] = bundle_ok

    chi = euler_characteristic(g)
    sigma = signature_sum(g)
    closed = g.is_closed()
    checks: dict[str, Optional[bool]] = {"chi >= |sigma|": None, "chi >= 3|sigma|": None}
    warnings, notes = [], []
    if closed and sigma is not None:
        checks["chi >= |sigma|"] = chi >= abs(sigma)
        checks["chi >= 3|sigma|"] = chi >= 3 * abs(sigma)
        if (chi - sigma) % 2:
            warnings.append(f"chi = {chi} and sigma = {sigma} differ in parity")
    if sigma is not None:
        notes.append("sigma is a sum of claimed block signatures, not independently verified")
    if any(inst.block.kind is BlockKind.CONNECTOR for inst in g.instances):
        notes.append("connector signature assumed 0")
    if stated_sigma is not None:
        notes.append(f"stated signature target {stated_sigma} (up to orientation); computed sum {sigma}")
    notes.append("asphericity and pi1-injectivity are recorded block attributes, not computed")

    return VerificationReport(
        legal=not problems,
        closed=closed,
        connected=g.is_connected(),
        chi_total=chi,
        sigma_total=sigma,
        open_slots=g.open_slots(),
        certificates=certificates,
        conjecture_checks=checks,
        block_counts=dict(g.block_counts()),
        problems=problems,
        warnings=warnings,
        notes=notes,
    )
