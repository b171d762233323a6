"""Assembly file format (versioned JSON, strict schema) and DOT export."""

from __future__ import annotations

import json

import jsonschema

from .assembly import AssemblyGraph, _json_params
from .blocks import BlockKind, build_block

FORMAT_VERSION = "1"

_SLOT = {
    "type": "array",
    "prefixItems": [{"type": "string"}, {"type": "integer", "minimum": 0}],
    "items": False,
    "minItems": 2,
}

_INT4 = {"type": "array", "items": {"type": "integer"}, "minItems": 4, "maxItems": 4}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["version", "blocks", "gluings"],
    "properties": {
        "version": {"const": FORMAT_VERSION},
        "blocks": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["id", "kind", "parameters", "orientation"],
                "properties": {
                    "id": {"type": "string", "minLength": 1},
                    "kind": {"enum": [k.value for k in BlockKind]},
                    "orientation": {"enum": [1, -1]},
                    "parameters": {
                        "type": "object",
                        "additionalProperties": False,
                        "properties": {
                            "psi": _INT4,
                            "genus": {"type": "integer"},
                            "monodromies": {"type": "array", "items": _INT4},
                        },
                    },
                },
            },
        },
        "gluings": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["from", "to"],
                "properties": {"from": _SLOT, "to": _SLOT},
            },
        },
    },
}


class FormatError(ValueError):
    pass


def to_dict(g: AssemblyGraph) -> dict:
    ids = [inst.id for inst in g.instances]
    return {
        "version": FORMAT_VERSION,
        "blocks": [
            {
                "id": inst.id,
                "kind": inst.block.kind.value,
                "parameters": _json_params(inst.block),
                "orientation": inst.orientation,
            }
            for inst in g.instances
        ],
        "gluings": [
            {"from": [ids[a[0]], a[1]], "to": [ids[b[0]], b[1]]} for a, b in g.gluings
        ],
    }


def serialize(g: AssemblyGraph) -> str:
    return json.dumps(to_dict(g), indent=2) + "\n"


def from_dict(data: dict, check: bool = True) -> AssemblyGraph:
    """Rebuild an assembly. With ``check=False`` gluing legality is left for
    :func:`~oddchi.assembly.verify` to report."""
    try:
        jsonschema.validate(data, SCHEMA)
    except jsonschema.ValidationError as e:
        raise FormatError(f"schema violation at {list(e.absolute_path)}: {e.message}") from None
    g = AssemblyGraph()
    index = {}
    for b in data["blocks"]:
        if b["id"] in index:
            raise FormatError(f"duplicate block id {b['id']!r}")
        try:
            block = build_block(b["kind"], b["parameters"])
        except (ValueError, TypeError) as e:
            raise FormatError(f"block {b['id']!r}: {e}") from None
        index[b["id"]] = g.add(block, b["orientation"], b["id"])
    for e in data["gluings"]:
        ends = []
        for bid, slot in (e["from"], e["to"]):
            if bid not in index:
                raise FormatError(f"gluing refers to unknown block {bid!r}")
            ends.append((index[bid], slot))
        try:
            g.add_gluing(*ends, check=check)
        except ValueError as err:
            if check:
                raise
            raise FormatError(str(err)) from None
    return g


def parse(text: str, check: bool = True) -> AssemblyGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"not valid JSON: {e}") from None
    return from_dict(data, check=check)


def to_dot(g: AssemblyGraph, name: str = "assembly") -> str:
    """Blocks as nodes labelled ``kind orientation chi``; gluings as edges
    labelled with the monodromy class on the ``from`` side."""
    lines = [f"graph {name} {{", "  node [shape=box];"]
    for inst in g.instances:
        sign = "+" if inst.orientation > 0 else "-"
        lines.append(f'  "{inst.id}" [label="{inst.block.name} {sign} chi={inst.block.chi}"];')
    for a, b in g.gluings:
        ia, ib = g.instances[a[0]].id, g.instances[b[0]].id
        lines.append(f'  "{ia}" -- "{ib}" [label="{g.label(a)}", taillabel="{a[1]}", headlabel="{b[1]}"];')
    for s in g.open_slots():
        inst = g.instances[s[0]]
        lines.append(f'  "open_{inst.id}_{s[1]}" [shape=point];')
        lines.append(f'  "{inst.id}" -- "open_{inst.id}_{s[1]}" [label="{g.label(s)}", style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
