"""Pure Hodge structures: validation, filtration round trips, Weil operator,
polarization, hard Lefschetz."""

import random

import pytest

from orbhodge.exactla import GaussRational, I, QiMatrix, Subspace, i_power
from orbhodge.hodge import (
    BilinearFormData,
    GradedSpace,
    GradingViolation,
    HardLefschetzFailure,
    HodgeStructureData,
    LefschetzOperator,
    check_polarization,
    filtration_from_pieces,
    hard_lefschetz_check,
    lefschetz_decomposition,
    pieces_from_filtration,
    primitive_subspace,
    restrict_structure,
    validate_hodge_structure,
    weil_operator,
)
from orbhodge.models import torus_weight_one

from oracles import random_hodge_structure


def test_validation_passes_quietly_on_valid_structures():
    rng = random.Random(31)
    for _ in range(20):
        h = random_hodge_structure(rng)
        rep = validate_hodge_structure(h)
        # contract: a valid structure produces no items at all
        assert rep.ok() and rep.items == []


def test_validation_catches_each_axiom():
    line = Subspace.span(2, [[GaussRational(1, 0), I]])
    # conjugation must swap (1,0) and (0,1): same line twice breaks it
    broken = HodgeStructureData(2, 1, {(1, 0): line, (0, 1): line})
    rep = validate_hodge_structure(broken)
    assert not rep.ok()
    ids = {it.check_id for it in rep.failures()}
    assert any("conjugate" in i or "symmetry" in i for i in ids), ids

    # pieces that overlap cannot give a direct sum
    full = Subspace.full(2)
    overlap = HodgeStructureData(2, 2, {(2, 0): full, (0, 2): full})
    assert not validate_hodge_structure(overlap).ok()

    # pieces that do not span
    small = HodgeStructureData(2, 0, {(0, 0): Subspace.span(2, [[1, 0]])})
    assert not validate_hodge_structure(small).ok()

    with pytest.raises(ValueError):
        HodgeStructureData(2, 1, {(1, 1): full})  # p+q != weight


def test_pieces_filtration_round_trip_random():
    rng = random.Random(37)
    for _ in range(30):
        h = random_hodge_structure(rng)
        f = filtration_from_pieces(h)
        back = pieces_from_filtration(f, h.weight)
        assert back == h


def test_filtration_shape_on_the_weight_one_torus():
    h, q = torus_weight_one()
    f = filtration_from_pieces(h)
    assert f.at(0).is_full()
    assert f.at(1) == Subspace.span(2, [[GaussRational(1, 0), I]])
    assert f.at(2).is_zero()
    # F^p + conj(F^{k-p+1}) must be the whole space in each degree
    assert f.at(1).sum(f.conjugate().at(1)).is_full()


def test_weil_operator_acts_by_i_powers_and_squares_to_sign():
    rng = random.Random(41)
    for _ in range(15):
        h = random_hodge_structure(rng)
        c = weil_operator(h)
        for p, q, s in h.pieces:
            lam = i_power((p - q) % 4)
            for v in s.vectors():
                assert list(c.apply(v)) == [lam * x for x in v]
        sign = -1 if h.weight % 2 else 1
        assert c @ c == QiMatrix.identity(h.ambient_dim).scale(sign)


def test_torus_polarization_desk_values():
    h, q = torus_weight_one()
    assert q.symmetry_sign == -1
    rep = check_polarization(h, q)
    assert rep.ok()
    ids = [it.check_id for it in rep.items]
    assert "orthogonality" in ids and "positivity" in ids

    flipped = BilinearFormData(q.gram.scale(-1), -1)
    bad = check_polarization(h, flipped)
    assert not bad.ok()
    wit = [it for it in bad.failures() if it.check_id == "positivity"]
    assert wit and wit[0].witness["minor_index"] == 1


def test_polarization_requires_piece_orthogonality():
    # weight 0 on two real lines; the form pairs them, so S(H00a, H00b) != 0
    # is fine -- instead take weight 2 with (2,0)+(0,2)+(1,1) and a form
    # that fails to keep (2,0) isotropic against (1,1)
    v20 = [GaussRational(1, 0), I, GaussRational(0, 0)]
    v02 = [GaussRational(1, 0), -I, GaussRational(0, 0)]
    v11 = [GaussRational(0, 0), GaussRational(0, 0), GaussRational(1, 0)]
    h = HodgeStructureData(3, 2, {
        (2, 0): Subspace.span(3, [v20]),
        (0, 2): Subspace.span(3, [v02]),
        (1, 1): Subspace.span(3, [v11]),
    })
    # i^(p-q) is -1 on (2,0) and (0,2), so the form must be negative there
    good = BilinearFormData(QiMatrix.from_rows(
        [[-1, 0, 0], [0, -1, 0], [0, 0, 1]]), 1)
    rep = check_polarization(h, good)
    assert rep.ok(), rep.as_dicts()
    # pairing (2,0) against (1,1) violates the orthogonality axiom
    mixing = BilinearFormData(QiMatrix.from_rows(
        [[-1, 0, 1], [0, -1, 0], [1, 0, 1]]), 1)
    bad = check_polarization(h, mixing)
    assert any(it.check_id == "orthogonality" for it in bad.failures())


def test_hard_lefschetz_on_a_two_string_model():
    # strings: length 3 through degrees 0,2,4 and length 1 at degree 2
    g = GradedSpace([(0, 1), (2, 2), (4, 1)])
    m = [[0] * 4 for _ in range(4)]
    m[1][0] = 1  # degree 0 -> 2
    m[3][1] = 1  # degree 2 -> 4 on the long string
    op = LefschetzOperator(QiMatrix.from_rows(m), g)
    assert hard_lefschetz_check(op, 2).ok()

    prim2 = primitive_subspace(op, 2, 2)
    assert prim2.dim == 1
    assert prim2 == Subspace.span(4, [[0, 0, 1, 0]])
    assert primitive_subspace(op, 2, 0).dim == 1

    dec = lefschetz_decomposition(op, 2)
    assert sorted(dec) == [0, 1, 2]
    assert [(j, s.dim) for j, s in dec[2]] == [(0, 1), (1, 1)]
    assert dec[1] == []

    # kill the raising map: degree symmetry still holds, ranks do not
    broken = LefschetzOperator(QiMatrix.zeros(4, 4), g)
    rep = hard_lefschetz_check(broken, 2)
    assert not rep.ok()
    with pytest.raises(HardLefschetzFailure):
        lefschetz_decomposition(broken, 2)


def test_lefschetz_operator_enforces_grading():
    g = GradedSpace([(0, 1), (2, 1)])
    lowering = [[0, 1], [0, 0]]  # degree 2 -> 0 is not allowed
    with pytest.raises(GradingViolation):
        LefschetzOperator(QiMatrix.from_rows(lowering), g)


def test_hard_lefschetz_rejects_fractional_offsets():
    from fractions import Fraction

    # blocks at half-integer distance from the middle: no integer power of L
    # can connect them, so a matched pair still fails
    g = GradedSpace([(Fraction(1, 2), 1), (Fraction(3, 2), 1)])
    op = LefschetzOperator(QiMatrix.zeros(2, 2), g)
    rep = hard_lefschetz_check(op, 1)
    assert not rep.ok()
    assert any(it.witness.get("reason") for it in rep.failures())


def test_restrict_structure_needs_piecewise_exhaustion():
    h, _ = torus_weight_one()
    whole = restrict_structure(h, Subspace.full(2))
    assert whole is not None and whole.ambient_dim == 2
    # a real line meets both pieces trivially: nothing to restrict to
    assert restrict_structure(h, Subspace.span(2, [[1, 1]])) is None
    # the (1,0) line itself restricts to a one-piece structure
    line = Subspace.span(2, [[GaussRational(1, 0), I]])
    cut = restrict_structure(h, line)
    assert cut is not None and cut.ambient_dim == 1
    assert [(p, q) for p, q, _ in cut.pieces] == [(1, 0)]
    zero = restrict_structure(h, Subspace.zero(2))
    assert zero is not None and zero.ambient_dim == 0
