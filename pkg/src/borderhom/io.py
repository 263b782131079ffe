"""Text formats for spaces and subcomplex families.

Space files are line oriented::

    # comment
    depth 9                  (optional; defaults to the largest stage)
    vertex <id> stage=<k> [inA]
    simplex <id> <id> ...

Lines may come in any order and repeated simplex lines are harmless.
Simplices are closed under faces on reading.  ``render_space`` writes the
canonical form: sorted vertices, then sorted maximal simplices.
"""

from __future__ import annotations

import re

from .simplicial import SimplicialComplex
from .spaces import FilteredSpace, SpacePair

_ID = re.compile(r"^[^\s#]+$")


class SpaceFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        self.line = line
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


def _strip(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def parse_space(text: str, source: str = "<input>") -> SpacePair:
    stages: dict[str, int] = {}
    in_a: set[str] = set()
    simplices: list[tuple[int, list[str]]] = []
    depth = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line:
            continue
        head, *rest = line.split()
        if head == "vertex":
            if not rest:
                raise SpaceFormatError("vertex line needs an id", lineno, source)
            vid, *opts = rest
            stage = None
            flag = False
            for opt in opts:
                if opt.startswith("stage="):
                    value = opt[len("stage="):]
                    if not value.isdigit():
                        raise SpaceFormatError(f"malformed stage {value!r} for vertex {vid!r}", lineno, source)
                    stage = int(value)
                elif opt == "inA":
                    flag = True
                else:
                    raise SpaceFormatError(f"unknown vertex option {opt!r}", lineno, source)
            if stage is None:
                raise SpaceFormatError(f"vertex {vid!r} has no stage", lineno, source)
            if vid in stages and (stages[vid] != stage or (vid in in_a) != flag):
                raise SpaceFormatError(f"vertex {vid!r} declared twice with different data", lineno, source)
            stages[vid] = stage
            if flag:
                in_a.add(vid)
        elif head == "simplex":
            if not rest:
                raise SpaceFormatError("simplex line needs at least one vertex", lineno, source)
            if len(set(rest)) != len(rest):
                raise SpaceFormatError(f"simplex repeats a vertex: {' '.join(rest)}", lineno, source)
            simplices.append((lineno, rest))
        elif head == "depth":
            if len(rest) != 1 or not rest[0].isdigit():
                raise SpaceFormatError("depth line needs one nonnegative integer", lineno, source)
            depth = int(rest[0])
        else:
            raise SpaceFormatError(f"unknown directive {head!r}", lineno, source)
    for lineno, verts in simplices:
        for v in verts:
            if v not in stages:
                raise SpaceFormatError(f"simplex uses undeclared vertex {v!r}", lineno, source)
    if not stages:
        raise SpaceFormatError("no vertices declared", None, source)
    cx = SimplicialComplex.from_simplices([v for _, v in simplices], vertices=stages)
    try:
        space = FilteredSpace(cx, stages, depth)
    except ValueError as exc:
        raise SpaceFormatError(str(exc), None, source) from None
    return SpacePair(space, frozenset(in_a))


def render_space(pair: SpacePair) -> str:
    space = pair.space
    for v in space.vertices:
        if not _ID.match(v):
            raise ValueError(f"vertex id {v!r} cannot be written (whitespace or '#')")
    lines = []
    if space.depth != space.max_stage:
        lines.append(f"depth {space.depth}")
    for v in space.vertices:
        flag = " inA" if v in pair.a_vertices else ""
        lines.append(f"vertex {v} stage={space.stage[v]}{flag}")
    for s in space.complex.maximal_simplices():
        if len(s) > 1:
            lines.append("simplex " + " ".join(s))
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> list[frozenset]:
    """One whitespace-separated vertex list per line."""
    out = []
    for raw in text.splitlines():
        line = _strip(raw)
        if line:
            out.append(frozenset(line.split()))
    return out
