"""Realization tests: representative families, the canonical extension
quiver, both realization strategies, and the weak-congruence search."""

import json

import pytest

from coxquiver.errors import CanonicalizationError, NotDynkinTypeA
from coxquiver.linalg import determinant, mat_mul, transpose
from coxquiver.partitions import Partition, part1c
from coxquiver.quiver import (
    Quiver,
    cycle_type_of_quiver,
    gram_matrix,
    inverse_quiver,
    is_connected as quiver_connected,
    iter_connected_quivers,
    triangular_gram,
)
from coxquiver.realize import (
    canonical_extension_quiver,
    linear_quiver,
    realize,
    realize_algorithm71,
    realize_backtracking,
    representative_quiver_A,
    representative_quiver_star,
    star_quiver,
    weak_congruence_to_canonical,
)
from coxquiver.unitform import (
    UnitForm,
    corank,
    evaluate,
    form_from_upper,
    form_of_quiver,
    symmetric_gram,
)


# ---------------------------------------------------------------------------
# representative families
# ---------------------------------------------------------------------------

def test_representative_single_part_is_linear():
    for m in range(2, 7):
        assert representative_quiver_A(Partition((m,)), 0) == linear_quiver(m)
        assert representative_quiver_star(Partition((m,)), 0) == star_quiver(m)


def test_representative_11_d1_matches_figure():
    a = representative_quiver_A(Partition((1, 1)), 1)
    star = representative_quiver_star(Partition((1, 1)), 1)
    assert a == Quiver(2, ((1, 2), (2, 1), (1, 2), (2, 1)))
    assert star == Quiver(2, ((1, 2), (1, 2), (1, 2), (1, 2)))


def test_representative_322_d1_matches_figure():
    a = representative_quiver_A(Partition((3, 2, 2)), 1)
    assert a.m == 7 and a.n == 10
    # spine 1..6, chord 7 -> 4, chord 4 -> 2, then the opposed pair on {2, 4}
    assert a.arrows == (
        (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7),
        (7, 4), (4, 2), (2, 4), (4, 2),
    )
    star = representative_quiver_star(Partition((3, 2, 2)), 1)
    assert star.arrows == (
        (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (1, 7),
        (1, 5), (1, 3), (1, 3), (1, 3),
    )


def test_representative_arrow_count_and_corank():
    for m in range(2, 7):
        for length in range(1, m + 1):
            for pi in [p for p in part1c(length - 1, m) if p.length == length]:
                for d in range(0, 3):
                    q = representative_quiver_A(pi, d)
                    assert q.m == m
                    assert q.n == m + length + 2 * (d - 1)
                    assert quiver_connected(q)
                    f = form_of_quiver(q)
                    assert corank(f) == length - 1 + 2 * d


def test_representative_cycle_type_surjectivity():
    for m in range(2, 7):
        for c in range(0, 5):
            for pi in part1c(c, m):
                d = (c - (pi.length - 1)) // 2
                q = representative_quiver_A(pi, d)
                assert cycle_type_of_quiver(q) == pi


def test_representative_inverse_pairing_exact():
    for m in range(2, 7):
        for c in range(0, 5):
            for pi in part1c(c, m):
                d = (c - (pi.length - 1)) // 2
                assert inverse_quiver(representative_quiver_A(pi, d)) == \
                    representative_quiver_star(pi, d)


def test_all_ones_vector_is_root_or_radical():
    # the incidence columns telescope to e_1 - e_{last part}, so the all-ones
    # vector is a root exactly when the smallest part exceeds 1 (or there is
    # a single part); for a trailing part 1 it is a radical vector instead
    for parts, d in (((3, 2, 2), 1), ((4,), 0), ((2, 1, 1), 0), ((1, 1), 2),
                     ((5,), 1), ((3, 3, 2), 0)):
        pi = Partition(parts)
        q = representative_quiver_A(pi, d)
        f = form_of_quiver(q)
        expected = 1 if (pi.length == 1 or pi.parts[-1] >= 2) else 0
        assert evaluate(f, (1,) * f.n) == expected


def test_representative_requires_two_vertices():
    with pytest.raises(ValueError):
        representative_quiver_A(Partition((1,)), 0)


# ---------------------------------------------------------------------------
# canonical extension quivers
# ---------------------------------------------------------------------------

def test_canonical_extension_no_arcs_is_linear():
    for r in range(1, 6):
        assert canonical_extension_quiver(r, 0) == linear_quiver(r + 1)


def test_canonical_extension_2_1():
    assert canonical_extension_quiver(2, 1) == \
        Quiver(3, ((1, 2), (2, 3), (3, 1)))


def test_canonical_extension_rank_and_corank():
    for r in range(1, 5):
        for c in range(0, 4):
            q = canonical_extension_quiver(r, c)
            assert q.m == r + 1 and q.n == r + c
            f = form_of_quiver(q)
            assert corank(f) == c
            assert cycle_type_of_quiver(q) is not None


# ---------------------------------------------------------------------------
# backtracking realization
# ---------------------------------------------------------------------------

def test_backtracking_path_form():
    f = form_from_upper(2, [(1, 2, -1)])
    result = realize_backtracking(f)
    assert result.strategy == "backtracking"
    assert result.basis_change is None
    assert form_of_quiver(result.quiver) == f
    assert cycle_type_of_quiver(result.quiver) == Partition((3,))


def test_backtracking_kronecker():
    f = form_from_upper(2, [(1, 2, 2)])
    result = realize_backtracking(f)
    assert result.quiver == Quiver(2, ((1, 2), (1, 2)))


def test_backtracking_deterministic_labels():
    f = form_of_quiver(Quiver(4, ((1, 2), (2, 3), (3, 4), (1, 4))))
    first = realize_backtracking(f).quiver
    second = realize_backtracking(f).quiver
    assert first == second
    assert first.arrows[0] == (1, 2)


def test_backtracking_rejects_type_d():
    d4 = form_from_upper(4, [(1, 2, -1), (1, 3, -1), (1, 4, -1)])
    with pytest.raises(NotDynkinTypeA):
        realize_backtracking(d4)


def test_backtracking_rejects_type_e():
    # E6 diagram: path 1-2-3-4-5 with 6 attached to the middle vertex 3
    e6 = form_from_upper(6, [(1, 2, -1), (2, 3, -1), (3, 4, -1),
                             (4, 5, -1), (3, 6, -1)])
    with pytest.raises(NotDynkinTypeA):
        realize_backtracking(e6)


def test_backtracking_validates_preconditions():
    with pytest.raises(ValueError):
        realize_backtracking(form_from_upper(2, []))  # disconnected
    with pytest.raises(ValueError):
        realize_backtracking(form_from_upper(2, [(1, 2, -3)]))  # indefinite


# ---------------------------------------------------------------------------
# weak congruence search
# ---------------------------------------------------------------------------

def test_weak_congruence_canonical_input_is_signed_permutation():
    f = form_of_quiver(canonical_extension_quiver(3, 2))
    b = weak_congruence_to_canonical(f)
    target = gram_matrix(canonical_extension_quiver(3, 2))
    assert mat_mul(mat_mul(transpose(b), symmetric_gram(f)), b) == target
    assert all(sum(1 for x in row if x != 0) == 1 for row in b)


def test_weak_congruence_kronecker():
    f = form_from_upper(2, [(1, 2, 2)])
    b = weak_congruence_to_canonical(f)
    assert determinant(b) in (1, -1)
    target = gram_matrix(canonical_extension_quiver(1, 1))
    assert mat_mul(mat_mul(transpose(b), symmetric_gram(f)), b) == target


def test_weak_congruence_path_form():
    f = form_from_upper(2, [(1, 2, -1)])
    b = weak_congruence_to_canonical(f)
    target = gram_matrix(canonical_extension_quiver(2, 0))
    assert mat_mul(mat_mul(transpose(b), symmetric_gram(f)), b) == target


def test_weak_congruence_clears_positive_units():
    # gram with a +1 entry: needs at least one inflation step
    f = form_from_upper(2, [(1, 2, 1)])
    b = weak_congruence_to_canonical(f)
    target = gram_matrix(canonical_extension_quiver(2, 0))
    assert mat_mul(mat_mul(transpose(b), symmetric_gram(f)), b) == target


def test_weak_congruence_failure_raises():
    # two separate isotropic pairs stabilize to a Gram matrix that no signed
    # permutation carries to the canonical one
    q = Quiver(3, ((1, 2), (1, 2), (2, 3), (2, 3)))
    f = form_of_quiver(q)
    with pytest.raises(CanonicalizationError):
        weak_congruence_to_canonical(f)


# ---------------------------------------------------------------------------
# canonical realization route
# ---------------------------------------------------------------------------

def test_algorithm71_on_canonical_form():
    q = canonical_extension_quiver(3, 2)
    f = form_of_quiver(q)
    result = realize_algorithm71(f)
    assert result.strategy == "algorithm71"
    assert form_of_quiver(result.quiver) == f


def test_algorithm71_path_form():
    f = form_from_upper(2, [(1, 2, -1)])
    result = realize_algorithm71(f)
    assert result.strategy == "algorithm71"
    assert result.basis_change is not None
    assert form_of_quiver(result.quiver) == f
    assert cycle_type_of_quiver(result.quiver) == Partition((3,))


def test_algorithm71_falls_back_when_search_fails():
    q = Quiver(3, ((1, 2), (1, 2), (2, 3), (2, 3)))
    f = form_of_quiver(q)
    result = realize_algorithm71(f)
    assert result.strategy == "backtracking"
    assert form_of_quiver(result.quiver) == f


def test_algorithm71_representative_322():
    f = form_of_quiver(representative_quiver_A(Partition((3, 2, 2)), 1))
    result = realize_algorithm71(f)
    assert form_of_quiver(result.quiver) == f
    assert cycle_type_of_quiver(result.quiver) == Partition((3, 2, 2))


def test_realize_wrapper():
    f = form_from_upper(2, [(1, 2, 2)])
    assert form_of_quiver(realize(f).quiver) == f


def test_both_strategies_agree_exhaustively_small():
    # every connected quiver form with m <= 4, n <= 5: both routes reproduce
    # the form and the same cycle type
    seen = set()
    for m in range(2, 5):
        for n in range(m - 1, 6):
            if n < 1:
                continue
            for q in iter_connected_quivers(m, n):
                gram = triangular_gram(q)
                if gram in seen:
                    continue
                seen.add(gram)
                f = UnitForm(n, gram)
                ct = cycle_type_of_quiver(q)
                bt = realize_backtracking(f)
                assert triangular_gram(bt.quiver) == gram
                assert cycle_type_of_quiver(bt.quiver) == ct
                alg = realize_algorithm71(f)
                assert triangular_gram(alg.quiver) == gram
                assert cycle_type_of_quiver(alg.quiver) == ct
                if alg.basis_change is not None:
                    assert determinant(alg.basis_change) in (1, -1)


def test_realization_result_json():
    f = form_from_upper(2, [(1, 2, 2)])
    result = realize_algorithm71(f)
    data = json.loads(json.dumps(result.to_json()))
    assert set(data) == {"quiver", "basis_change", "strategy"}
    assert data["strategy"] in ("algorithm71", "backtracking")
    assert Quiver.from_json(data["quiver"]) == result.quiver
    bt = realize_backtracking(f)
    assert bt.to_json()["basis_change"] is None
