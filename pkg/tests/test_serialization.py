"""JSON contract: scalar encodings, schema validation with paths, document
round trips, shorthand expansion, and shipped fixture consistency."""

import json
from fractions import Fraction

import pytest

from orbhodge.exactla import GaussRational, I, QiMatrix, Subspace
from orbhodge.fixture_store import FIXTURE_BUILDERS, fixture_json, fixture_text, shipped_text
from orbhodge.models import kummer_model, p1_degeneration, torus_weight_one
from orbhodge.serialization import (
    InputError,
    canonical_json,
    decode_rational,
    decode_scalar,
    detect_kind,
    encode_matrix,
    encode_rational,
    encode_scalar,
    hodge_structure_from_json,
    hodge_structure_to_json,
    load_document,
    orbifold_from_json,
    orbifold_to_json,
    parse_gauss_text,
    pmhs_from_json,
    pmhs_to_json,
    polytope_from_json,
    polytope_to_json,
)
from orbhodge.toric import LatticePolytope

ALL_NAMES = sorted(FIXTURE_BUILDERS)


def test_rational_encoding_round_trip():
    for x in (Fraction(0), Fraction(3), Fraction(-2, 3), Fraction(22, 7)):
        enc = encode_rational(x)
        assert decode_rational(enc, "$") == x
    assert encode_rational(Fraction(4, 2)) == 2  # integers stay bare
    assert encode_rational(Fraction(-2, 3)) == "-2/3"
    for bad in (True, 1.5, "1.5", "1/0", None, "x"):
        with pytest.raises(InputError):
            decode_rational(bad, "$.here")


def test_scalar_encoding_round_trip():
    for z in (GaussRational(1, 0), GaussRational(0, 1), GaussRational(Fraction(1, 2), -2)):
        assert decode_scalar(encode_scalar(z), "$") == z
    assert encode_scalar(GaussRational(2, 0)) == 2
    assert encode_scalar(GaussRational(0, 1)) == {"re": 0, "im": 1}


def test_parse_gauss_text_grammar():
    cases = {
        "i": GaussRational(0, 1),
        "-i": GaussRational(0, -1),
        "2i": GaussRational(0, 2),
        "1+i": GaussRational(1, 1),
        "1/2-3/4i": GaussRational(Fraction(1, 2), Fraction(-3, 4)),
        "2": GaussRational(2, 0),
        "-3/4": GaussRational(Fraction(-3, 4), 0),
    }
    for text, want in cases.items():
        assert parse_gauss_text(text) == want
    for bad in ("", "1+", "2x", "i+1", "1/0", "1.5"):
        with pytest.raises(InputError):
            parse_gauss_text(bad)


def test_every_fixture_parses_as_its_own_kind():
    kinds = {}
    for name in ALL_NAMES:
        kind, obj = load_document(fixture_text(name))
        kinds[name] = kind
        assert obj is not None
    assert kinds["p11226"] == "polytope"
    assert kinds["torus_h1"] == "hodge_structure"
    assert kinds["p1"] == "pmhs"
    assert kinds["kummer"] == "orbifold"


def test_shipped_fixture_files_match_the_builders():
    for name in ALL_NAMES:
        assert shipped_text(name) == fixture_text(name), name


def test_canonical_json_is_stable_and_sorted():
    doc = fixture_json("kummer")
    text = canonical_json(doc)
    assert text == canonical_json(json.loads(text))
    assert text.endswith("\n")


def test_polytope_round_trip():
    p = LatticePolytope(2, [(1, 1), (1, -1), (-1, 1), (-1, -1)])
    assert polytope_from_json(polytope_to_json(p)) == p


def test_hodge_structure_round_trip_with_form():
    h, q = torus_weight_one()
    doc = hodge_structure_to_json(h, q)
    h2, q2 = hodge_structure_from_json(doc)
    assert h2 == h
    assert q2.gram == q.gram and q2.symmetry_sign == q.symmetry_sign
    bare, none_form = hodge_structure_from_json(hodge_structure_to_json(h))
    assert bare == h and none_form is None


def test_pmhs_round_trip():
    b = p1_degeneration()
    b2 = pmhs_from_json(pmhs_to_json(b))
    for key in ("ambient_dim", "weight", "bigrading", "form", "nilpotents", "samples"):
        assert b2[key] == b[key], key
    assert b2["filtrations"] is None


def test_orbifold_round_trip():
    kum = kummer_model()
    assert orbifold_from_json(orbifold_to_json(kum)) == kum


def _sector_with_shorthand(doc, triples_by_degree):
    sector = dict(doc["sectors"][0])
    del sector["cohomology"]
    sector["hodge_numbers"] = triples_by_degree
    doc = dict(doc)
    doc["sectors"] = [sector] + list(doc["sectors"][1:])
    return doc


def test_hodge_numbers_shorthand_expands_deterministically():
    explicit = fixture_json("p2")
    shorthand = _sector_with_shorthand(explicit, [[0, 0, 1], [1, 1, 1], [2, 2, 1]])
    assert orbifold_from_json(explicit) == orbifold_from_json(shorthand)
    # a conjugate pair takes 2h coordinates spanned by e0 +- i e1
    curve = {
        "kind": "orbifold", "n": 1, "kaehler_basis_size": 1,
        "sectors": [{
            "id": "0", "age": 0, "partner": "0", "dim": 1,
            "hodge_numbers": [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]],
            "pairing": [{"degree": 0, "matrix": [[1]]},
                        {"degree": 1, "matrix": [[0, 1], [-1, 0]]}],
            "kaehler_actions": [[{"degree": 0, "matrix": [[1]]}]],
        }],
    }
    o = orbifold_from_json(curve)
    h1 = dict(o.sectors[0].cohomology)[1]
    assert dict(h1.pieces if isinstance(h1.pieces, dict) else
                {(p, q): s for p, q, s in h1.pieces})[(1, 0)] == Subspace.span(
        2, [[GaussRational(1, 0), I]])


def test_hodge_numbers_shorthand_requires_conjugate_symmetry():
    doc = _sector_with_shorthand(fixture_json("p2"), [[2, 0, 1], [1, 1, 1], [0, 0, 1]])
    with pytest.raises(InputError) as err:
        orbifold_from_json(doc)
    assert any("hodge_numbers" in path for path, _ in err.value.problems)


def test_schema_violations_carry_json_paths():
    doc = fixture_json("p11226")
    doc["vertices"][1] = [1, 2]  # ragged row
    with pytest.raises(InputError) as err:
        load_document(canonical_json(doc))
    assert err.value.problems
    # unknown kind
    with pytest.raises(InputError):
        load_document('{"kind": "mystery"}')
    # not JSON at all
    with pytest.raises(InputError) as err:
        load_document("{nope")
    assert err.value.problems[0][0] == "$"


def test_pmhs_rejects_mixed_bigrading_and_filtrations():
    doc = fixture_json("p1")
    assert "bigrading" in doc
    doc["filtrations"] = {"weight": [], "hodge": []}
    with pytest.raises(InputError):
        load_document(canonical_json(doc))


def test_orbifold_schema_rejects_unknown_fields():
    doc = fixture_json("p2")
    doc["sectors"][0]["surprise"] = 1
    with pytest.raises(InputError):
        load_document(canonical_json(doc))


def test_matrix_encoding_is_row_major_scalars():
    m = QiMatrix.from_rows([[1, GaussRational(0, 1)], [Fraction(1, 2), 0]])
    assert encode_matrix(m) == [[1, {"re": 0, "im": 1}], ["1/2", 0]]
