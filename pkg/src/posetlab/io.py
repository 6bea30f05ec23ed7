"""Poset documents, DOT export, and the key: value report format."""
from __future__ import annotations

import hashlib
import json
import re
from typing import Iterable

from .errors import PosetLabError
from .poset import FinitePoset, transitive_reduction


class InputError(PosetLabError):
    pass


def poset_from_doc(doc: dict) -> FinitePoset:
    try:
        n = int(doc["n"])
        pairs = [(int(a), int(b)) for a, b in doc.get("pairs", [])]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad poset document: {e}") from None
    return FinitePoset.from_edges(n, pairs, closed=bool(doc.get("closed", False)))


def poset_to_doc(P: FinitePoset) -> dict:
    return P.to_dict()


def load_json(path: str) -> tuple[dict, bytes]:
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        return json.loads(raw), raw
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: {e}") from None


def dump_poset(P: FinitePoset) -> str:
    return json.dumps(poset_to_doc(P), separators=(",", ":"))


def to_dot(P: FinitePoset, labels: list[str] | None = None, name: str = "P") -> str:
    """Hasse diagram, edges from lower to upper cover."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for x in range(P.n):
        lab = str(x) if labels is None else labels[x]
        lines.append(f"  n{x} [label={json.dumps(lab)}];")
    for a, b in transitive_reduction(P):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_dot_edges(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Tiny reader for our own DOT output (node count, edges)."""
    text = text.strip()
    if not (text.startswith("digraph") and text.endswith("}")):
        raise InputError("not a digraph")
    nodes, edges = set(), []
    for line in text.splitlines()[1:-1]:
        line = line.strip().rstrip(";")
        if "->" in line:
            a, b = (s.strip() for s in line.split("->"))
            edges.append((int(a[1:]), int(b[1:])))
        elif line.startswith("n") and "[" in line:
            nodes.add(int(line[1:line.index(" ")]))
    return len(nodes), edges


def digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _plain(v):
    """Make a value JSON friendly and deterministic."""
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (set, frozenset)):
        return sorted(_plain(x) for x in v)
    if isinstance(v, float) and v == float("inf"):
        return "inf"
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    return str(v)


_BARE = re.compile(r"[A-Za-z_][A-Za-z0-9_.:()+*^-]*")


def _encode(v) -> str:
    # simple tokens print bare; anything JSON could misread is quoted
    if isinstance(v, str) and _BARE.fullmatch(v) and v not in ("true", "false", "null", "NaN", "Infinity"):
        return v
    return json.dumps(v, separators=(",", ":"), ensure_ascii=False)


def _decode(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        if _BARE.fullmatch(text):
            return text
        raise InputError(f"bad report value {text!r}") from None


def format_report(items: Iterable[tuple[str, object]]) -> str:
    """One ``key: value`` line per item; the caller puts ``verdict`` last.

    Values are JSON except plain word-like strings, which print bare.
    """
    return "".join(f"{k}: {_encode(_plain(v))}\n" for k, v in items)


def parse_report(text: str) -> list[tuple[str, object]]:
    items = []
    for line in text.splitlines():
        if not line.strip():
            continue
        k, sep, v = line.partition(": ")
        if not sep:
            raise InputError(f"not a report line: {line!r}")
        items.append((k, _decode(v)))
    if not items or items[-1][0] != "verdict":
        raise InputError("report must end with a verdict line")
    return items
