"""Unit form tests."""

import json
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxquiver.linalg import char_poly, identity, mat_neg
from coxquiver.quiver import (
    Quiver,
    coxeter_matrix_of_quiver,
    incidence_matrix,
    opposite,
    relabel_vertices,
)
from coxquiver.unitform import (
    UnitForm,
    check_strong_congruence,
    corank,
    coxeter_matrix,
    coxeter_polynomial_direct,
    evaluate,
    form_from_upper,
    form_of_quiver,
    is_connected,
    is_non_negative,
    symmetric_gram,
)

A3 = Quiver(3, ((1, 2), (2, 3)))
KRONECKER = Quiver(2, ((1, 2), (1, 2)))
A3_FORM = form_of_quiver(A3)          # gram ((1,-1),(0,1))
KRONECKER_FORM = form_of_quiver(KRONECKER)  # gram ((1,2),(0,1))


def test_unitform_validation():
    with pytest.raises(ValueError):
        UnitForm(2, ((2, 0), (0, 1)))  # bad diagonal
    with pytest.raises(ValueError):
        UnitForm(2, ((1, 0), (1, 1)))  # lower entry


def test_evaluate_zero_vector():
    assert evaluate(A3_FORM, (0, 0)) == 0


def test_evaluate_kronecker_isotropic():
    # x1^2 + x2^2 + 2 x1 x2 = (x1 + x2)^2
    assert evaluate(KRONECKER_FORM, (1, -1)) == 0
    assert evaluate(KRONECKER_FORM, (2, 3)) == 25


def test_evaluate_a3():
    # x1^2 + x2^2 - x1 x2
    assert evaluate(A3_FORM, (1, 1)) == 1


def test_evaluate_length_mismatch():
    with pytest.raises(ValueError):
        evaluate(A3_FORM, (1, 2, 3))


def test_symmetric_gram():
    assert symmetric_gram(form_from_upper(1, [])) == ((2,),)
    assert symmetric_gram(KRONECKER_FORM) == ((2, 2), (2, 2))
    assert symmetric_gram(A3_FORM) == ((2, -1), (-1, 2))


def test_corank_examples():
    assert corank(A3_FORM) == 0
    assert corank(KRONECKER_FORM) == 1
    four = form_of_quiver(Quiver(2, ((1, 2), (2, 1), (1, 2), (2, 1))))
    assert corank(four) == 3


def test_is_non_negative():
    assert is_non_negative(A3_FORM)
    assert is_non_negative(KRONECKER_FORM)
    assert not is_non_negative(form_from_upper(2, [(1, 2, -3)]))
    assert is_non_negative(form_from_upper(1, []))


def test_quiver_forms_are_non_negative():
    quivers = [A3, KRONECKER, Quiver(4, ((1, 2), (3, 2), (3, 4), (1, 4))),
               Quiver(3, ((2, 1), (1, 3), (3, 2), (2, 3)))]
    for q in quivers:
        assert is_non_negative(form_of_quiver(q))


def test_is_connected():
    assert is_connected(form_from_upper(1, []))
    assert is_connected(KRONECKER_FORM)
    assert not is_connected(form_from_upper(2, []))
    block = form_from_upper(4, [(1, 2, -1), (3, 4, -1)])
    assert not is_connected(block)


def test_form_of_quiver_matches_half_norm():
    quivers = [A3, KRONECKER, Quiver(3, ((2, 1), (1, 3), (3, 2)))]
    for q in quivers:
        f = form_of_quiver(q)
        inc = incidence_matrix(q)
        for x in product(range(-2, 3), repeat=q.n):
            image = [sum(inc[r][i] * x[i] for i in range(q.n))
                     for r in range(q.m)]
            half_norm2 = sum(y * y for y in image)
            assert half_norm2 == 2 * evaluate(f, x)


def test_form_of_quiver_examples():
    assert form_of_quiver(Quiver(2, ((1, 2),))).gram_upper == ((1,),)
    assert A3_FORM.gram_upper == ((1, -1), (0, 1))
    assert KRONECKER_FORM.gram_upper == ((1, 2), (0, 1))


def test_form_of_quiver_invariance():
    q = Quiver(4, ((1, 2), (2, 3), (3, 4), (1, 4)))
    assert form_of_quiver(opposite(q)) == form_of_quiver(q)
    assert form_of_quiver(relabel_vertices(q, (3, 1, 4, 2))) == form_of_quiver(q)


def test_coxeter_matrix_examples():
    assert coxeter_matrix(form_from_upper(1, [])) == ((-1,),)
    assert coxeter_matrix(KRONECKER_FORM) == ((-1, 2), (-2, 3))


def test_coxeter_matrix_agrees_with_quiver_route():
    quivers = [A3, KRONECKER, Quiver(4, ((1, 2), (2, 3), (3, 4), (1, 4))),
               Quiver(3, ((2, 1), (1, 3), (3, 2), (2, 3)))]
    for q in quivers:
        assert coxeter_matrix(form_of_quiver(q)) == coxeter_matrix_of_quiver(q)


def test_coxeter_polynomial_direct_examples():
    assert coxeter_polynomial_direct(form_from_upper(1, [])) == (1, 1)
    assert coxeter_polynomial_direct(KRONECKER_FORM) == (1, -2, 1)
    # linear quivers give nu_m
    for m in range(2, 7):
        q = Quiver(m, tuple((j, j + 1) for j in range(1, m)))
        assert coxeter_polynomial_direct(form_of_quiver(q)) == (1,) * m


def test_coxeter_polynomial_direct_is_char_poly():
    f = form_of_quiver(Quiver(3, ((2, 1), (1, 3), (3, 2))))
    assert coxeter_polynomial_direct(f) == char_poly(coxeter_matrix(f))


def test_check_strong_congruence_identity():
    assert check_strong_congruence(A3_FORM, A3_FORM, identity(2))
    assert not check_strong_congruence(A3_FORM, KRONECKER_FORM, identity(2))


def test_check_strong_congruence_negated_identity():
    minus = mat_neg(identity(2))
    assert check_strong_congruence(KRONECKER_FORM, KRONECKER_FORM, minus)


def test_check_strong_congruence_rejects_non_unimodular():
    assert not check_strong_congruence(A3_FORM, A3_FORM, ((2, 0), (0, 1)))


def test_strong_congruence_from_relabeled_quivers():
    q = Quiver(4, ((1, 2), (2, 3), (3, 4), (1, 4)))
    relabeled = relabel_vertices(q, (2, 4, 1, 3))
    f, g = form_of_quiver(q), form_of_quiver(relabeled)
    assert f == g
    assert check_strong_congruence(f, g, identity(4))


def test_strong_congruence_preserves_coxeter_polynomial():
    # congruence by the permutation matrix that swaps two orthogonal variables
    f = form_from_upper(3, [(1, 2, -1)])
    b = ((1, 0, 0), (0, 0, 1), (0, 1, 0))
    g_gram = ((1, 0, -1), (0, 1, 0), (0, 0, 1))
    g = UnitForm(3, g_gram)
    assert check_strong_congruence(f, g, b)
    assert coxeter_polynomial_direct(f) == coxeter_polynomial_direct(g)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def test_unitform_json_roundtrip():
    f = form_from_upper(3, [(1, 2, -1), (1, 3, 2)])
    blob = json.dumps(f.to_json())
    assert UnitForm.from_json(json.loads(blob)) == f


def test_unitform_json_rejects_unknown_keys():
    with pytest.raises(ValueError):
        UnitForm.from_json({"n": 2, "upper": [], "extra": True})


def test_unitform_json_rejects_bad_entries():
    with pytest.raises(ValueError):
        UnitForm.from_json({"n": 2, "upper": [[2, 1, -1]]})
    with pytest.raises(ValueError):
        UnitForm.from_json({"n": 2, "upper": [[1, 1, 1]]})


@given(st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4),
                          st.integers(-2, 2)), max_size=6))
@settings(max_examples=60)
def test_unitform_json_roundtrip_random(entries):
    triples = [(min(i, j), max(i, j), v) for i, j, v in entries if i != j]
    seen = set()
    unique = []
    for i, j, v in triples:
        if (i, j) not in seen:
            seen.add((i, j))
            unique.append((i, j, v))
    f = form_from_upper(4, unique)
    assert UnitForm.from_json(json.loads(json.dumps(f.to_json()))) == f
