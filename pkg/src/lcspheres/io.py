"""Text codecs for complexes, collapse sequences and LC certificates.

A complex file has one facet per line, vertices as positive base-10
integers separated by spaces; ``#`` starts a comment and blank lines are
ignored.  A collapse file starts with ``COLLAPSE n=<steps>`` and lists one
``free face | cofacet`` pair per line.
"""
from __future__ import annotations

import warnings
from pathlib import Path

from .canonical import canonical_key
from .collapse import CollapseSequence, CollapseStep
from .complex import SimplicialComplex, face_key
from .errors import IllegalCollapse, ParseError
from .lc.certificates import LCCertificate, certificate_from_text, certificate_to_text


class AbsorbedFacetWarning(UserWarning):
    """A listed facet was contained in another one and has been dropped."""


def parse_complex(text: str) -> SimplicialComplex:
    facets = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            verts = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(lineno, f"not a vertex list: {line!r}") from None
        if any(v <= 0 for v in verts):
            raise ParseError(lineno, "vertices must be positive")
        if len(set(verts)) != len(verts):
            raise ParseError(lineno, "repeated vertex")
        facets.append(frozenset(verts))
    if not facets:
        raise ParseError(0, "no facets")
    C = SimplicialComplex(facets)
    dropped = len(set(facets)) - len(C.facets)
    if dropped:
        warnings.warn(f"{dropped} dominated facet(s) absorbed", AbsorbedFacetWarning, stacklevel=2)
    return C


def serialize_complex(C: SimplicialComplex, canonical: bool = True) -> str:
    """Facet list text; canonical output relabels by the canonical key."""
    rows = canonical_key(C) if canonical else C.sorted_facets()
    return "".join(" ".join(map(str, f)) + "\n" for f in rows)


def read_complex(path) -> SimplicialComplex:
    return parse_complex(Path(path).read_text(encoding="utf-8"))


def write_complex(path, C: SimplicialComplex, canonical: bool = True) -> None:
    Path(path).write_text(serialize_complex(C, canonical), encoding="utf-8")


def read_certificate(path) -> LCCertificate:
    return certificate_from_text(Path(path).read_text(encoding="utf-8"))


def write_certificate(path, cert: LCCertificate) -> None:
    Path(path).write_text(certificate_to_text(cert), encoding="utf-8")


def _vertex_list(text, lineno):
    try:
        verts = [int(tok) for tok in text.split()]
    except ValueError:
        raise ParseError(lineno, f"not a vertex list: {text!r}") from None
    if not verts or any(v <= 0 for v in verts) or len(set(verts)) != len(verts):
        raise ParseError(lineno, f"bad vertex list {text!r}")
    return frozenset(verts)


def collapse_to_text(seq) -> str:
    rows = [f"COLLAPSE n={len(seq)}"]
    for step in seq:
        rows.append(" ".join(map(str, face_key(step.free_face))) + " | " + " ".join(map(str, face_key(step.cofacet))))
    return "\n".join(rows) + "\n"


def collapse_from_text(text: str) -> CollapseSequence:
    lines = [(i, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines or not lines[0][1].startswith("COLLAPSE"):
        raise ParseError(lines[0][0] if lines else 1, "header must read 'COLLAPSE n=<steps>'")
    try:
        n = int(lines[0][1].split()[1].removeprefix("n="))
    except (IndexError, ValueError):
        raise ParseError(lines[0][0], "header must read 'COLLAPSE n=<steps>'") from None
    steps = []
    for lineno, ln in lines[1:]:
        parts = ln.split("|")
        if len(parts) != 2:
            raise ParseError(lineno, "a step reads 'free face | cofacet'")
        try:
            steps.append(CollapseStep(_vertex_list(parts[0], lineno), _vertex_list(parts[1], lineno)))
        except IllegalCollapse as exc:
            raise ParseError(lineno, str(exc)) from None
    if len(steps) != n:
        raise ParseError(lines[0][0], f"header says n={n} but {len(steps)} steps follow")
    return CollapseSequence(tuple(steps))
