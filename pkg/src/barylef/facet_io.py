"""Plain-text facet lists.

One facet per line, vertices as space-separated positive integers, ``#``
starts a comment.  A subdivided complex additionally carries a sidecar
table with one ``vertex level origin...`` line per vertex.
"""

from __future__ import annotations

from pathlib import Path

from .complex_core import SimplicialComplex, SubdividedComplex, from_facets


class FacetParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _positive_ints(text: str, lineno: int) -> list[int]:
    out = []
    for tok in text.split():
        try:
            v = int(tok)
        except ValueError:
            raise FacetParseError(lineno, f"not an integer: {tok!r}") from None
        if v <= 0:
            raise FacetParseError(lineno, f"vertex labels must be positive, got {v}")
        out.append(v)
    return out


def parse_facets(text: str) -> SimplicialComplex:
    facets = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        verts = _positive_ints(line, lineno)
        if len(set(verts)) != len(verts):
            raise FacetParseError(lineno, "repeated vertex in facet")
        facets.append(verts)
    if not facets:
        raise FacetParseError(0, "no facets found")
    return from_facets(facets)


def format_facets(cx: SimplicialComplex) -> str:
    return "".join(" ".join(map(str, sorted(f))) + "\n" for f in cx.sorted_facets())


def read_facets(path) -> SimplicialComplex:
    return parse_facets(Path(path).read_text())


def write_facets(cx: SimplicialComplex, path) -> None:
    Path(path).write_text(format_facets(cx))


def format_sidecar(sd: SubdividedComplex) -> str:
    lines = ["# vertex level origin"]
    for v in sorted(sd.origin):
        lines.append(" ".join(map(str, [v, sd.level[v], *sorted(sd.origin[v])])))
    return "\n".join(lines) + "\n"


def parse_sidecar(text: str, base: SimplicialComplex) -> SubdividedComplex:
    origin = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        nums = _positive_ints(line, lineno)
        if len(nums) < 3:
            raise FacetParseError(lineno, "expected vertex, level and at least one origin vertex")
        v, level, face = nums[0], nums[1], frozenset(nums[2:])
        if level != len(face):
            raise FacetParseError(lineno, f"level {level} does not match origin size {len(face)}")
        origin[v] = face
    return SubdividedComplex(base, origin)


def write_subdivided(sd: SubdividedComplex, path) -> Path:
    """Write facets to ``path`` and the level/origin table to ``path + '.sd'``."""
    path = Path(path)
    write_facets(sd.base, path)
    sidecar = path.with_name(path.name + ".sd")
    sidecar.write_text(format_sidecar(sd))
    return sidecar


def read_subdivided(path) -> SubdividedComplex:
    path = Path(path)
    base = read_facets(path)
    return parse_sidecar(path.with_name(path.name + ".sd").read_text(), base)
