import warnings

import pytest

from lcspheres import catalog
from lcspheres.canonical import canonical_complex, canonical_key
from lcspheres.collapse import CollapseSequence, CollapseStep, free_pairs, is_collapsible, verify_collapse
from lcspheres.complex import SimplicialComplex, simplex, simplex_boundary
from lcspheres.errors import NotFound, ParseError
from lcspheres.io import (
    AbsorbedFacetWarning,
    collapse_from_text,
    collapse_to_text,
    parse_complex,
    read_certificate,
    read_complex,
    serialize_complex,
    write_certificate,
    write_complex,
)
from lcspheres.lc.certificates import verify_lc_certificate
from lcspheres.lc.decide import is_lc


def test_parse_simplex_boundary():
    C = parse_complex("1 2 3\n1 2 4\n1 3 4\n2 3 4")
    assert C == simplex_boundary(3)


def test_comments_and_blank_lines():
    C = parse_complex("# a triangle\n\n1 2 3   # the only facet\n")
    assert C == simplex([1, 2, 3])


@pytest.mark.parametrize(
    "text,line",
    [("1 2\nzebra", 2), ("", 0), ("# nothing\n", 0), ("1 2 3\n0 1 2", 2), ("1 2 2", 1), ("1 -2", 1)],
)
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_complex(text)
    assert exc.value.line == line


def test_absorbed_facets_warn():
    with pytest.warns(AbsorbedFacetWarning):
        C = parse_complex("1 2 3\n1 2\n")
    assert C == simplex([1, 2, 3])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        parse_complex("1 2 3\n1 2 3\n")  # a repeated facet is not dominated


@pytest.mark.parametrize("name", catalog.names())
def test_canonical_round_trip(name):
    C = catalog.builtin(name)
    text = serialize_complex(C)
    assert serialize_complex(parse_complex(text)) == text
    assert parse_complex(text) == canonical_complex(C)
    assert canonical_key(parse_complex(serialize_complex(C, canonical=False))) == canonical_key(C)


def test_files(tmp_path):
    C = catalog.builtin("octahedron")
    write_complex(tmp_path / "o.txt", C, canonical=False)
    assert read_complex(tmp_path / "o.txt") == C
    cert = is_lc(C, "sphere").certificate
    write_certificate(tmp_path / "o.lc", cert)
    back = read_certificate(tmp_path / "o.lc")
    assert back == cert and verify_lc_certificate(C, back)
    assert (tmp_path / "o.lc").read_text().startswith("LC d=2 N=8\n")


def test_collapse_text_round_trip():
    C = catalog.builtin("minus_facet:stacked_sphere:3:2")
    seq = is_collapsible(C).sequence
    text = collapse_to_text(seq)
    assert text.splitlines()[0] == f"COLLAPSE n={len(seq)}"
    assert collapse_from_text(text) == seq
    assert verify_collapse(C, collapse_from_text(text))
    assert collapse_from_text("COLLAPSE n=0\n") == CollapseSequence(())


@pytest.mark.parametrize(
    "text,line",
    [
        ("", 1),
        ("LC d=3 N=1\n", 1),
        ("COLLAPSE n=2\n1 2 | 1 2 3\n", 1),
        ("COLLAPSE n=1\n1 2 1 2 3\n", 2),
        ("COLLAPSE n=1\n1 2 | 1 2 x\n", 2),
        ("COLLAPSE n=1\n1 2 | 1 3 4\n", 2),
    ],
)
def test_collapse_text_errors(text, line):
    with pytest.raises(ParseError) as exc:
        collapse_from_text(text)
    assert exc.value.line == line


def test_collapse_step_text_uses_sorted_vertices():
    seq = CollapseSequence((CollapseStep(frozenset({3, 1}), frozenset({3, 2, 1})),))
    assert collapse_to_text(seq) == "COLLAPSE n=1\n1 3 | 1 2 3\n"


def test_builtin_examples():
    assert catalog.builtin("simplex_boundary:4").f_vector() == (5, 10, 10, 5)
    hat = catalog.builtin("dunce_hat")
    assert hat.dim == 2 and hat.euler_characteristic() == 1
    assert free_pairs(hat) == []
    fig4 = catalog.builtin("fig4")
    assert len(fig4.vertices) == 9 and len(fig4.facets) == 14
    assert catalog.entry("fig4").provenance == "derived"
    for k in range(2, 6):
        assert catalog.builtin(f"simplex_boundary:{k}") == simplex_boundary(k)


def test_builders_compose():
    C = catalog.builtin("cone:suspension:simplex_boundary:2")
    assert C.dim == 3 and len(C.facets) == 6
    assert catalog.entry("suspension:octahedron").kind == "sphere"
    assert catalog.entry("cone:octahedron").kind == "ball"


@pytest.mark.parametrize(
    "name", ["nope", "simplex_boundary", "simplex_boundary:x", "simplex_boundary:9", "cone:", "cone:nope", "torus", "edge_star:2", "tree_ball:1:3", "simplex:-1"]
)
def test_unknown_names(name):
    with pytest.raises(NotFound):
        catalog.builtin(name)


def test_entries_are_checked_at_load():
    for name in catalog.names():
        e = catalog.entry(name)
        assert e.kind in ("sphere", "ball", "other")
        assert e.provenance in ("standard", "derived", "constructed")
        assert isinstance(e.complex, SimplicialComplex)
