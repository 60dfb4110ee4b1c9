"""Constructive bridges between unit forms and quivers.

Two independent strategies produce a quiver realization of a connected
non-negative unit form of Dynkin type A:

* a backtracking search assigning each variable a signed vertex pair so the
  incidence columns reproduce the symmetric Gram matrix, and
* the canonical route: find a weak congruence to the reference form of the
  right rank and corank, pull the canonical quiver's incidence matrix back
  through it, and read off the arrows.

The module also builds the representative quiver families realizing every
admissible cycle type, and the canonical extension quivers used as weak
congruence targets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CanonicalizationError, InvariantViolation, NotDynkinTypeA
from .linalg import (
    IntMatrix,
    identity,
    mat_mul,
    transpose,
    unimodular_inverse,
)
from .partitions import Partition
from .quiver import (
    Quiver,
    gram_matrix,
    incidence_matrix,
    is_connected as quiver_is_connected,
    relabel_vertices,
)
from .unitform import (
    UnitForm,
    corank,
    is_connected,
    is_non_negative,
    symmetric_gram,
)


@dataclass(frozen=True)
class RealizationResult:
    """A quiver with the same unit form as the input, plus the basis change
    when one was produced by the canonical route."""

    quiver: Quiver
    basis_change: IntMatrix | None
    strategy: str

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "basis_change": (
                None if self.basis_change is None
                else [list(row) for row in self.basis_change]
            ),
            "strategy": self.strategy,
        }


# ---------------------------------------------------------------------------
# representative families
# ---------------------------------------------------------------------------

def _chord_indices(pi: Partition) -> list[int]:
    """Indices m - (pi_1 + ... + pi_k) for k = 1..length-1."""
    m = pi.m
    out = []
    total = 0
    for part in pi.parts[:-1]:
        total += part
        out.append(m - total)
    return out


def linear_quiver(m: int) -> Quiver:
    """Arrows j: v_j -> v_{j+1} for j = 1..m-1."""
    if m < 2:
        raise ValueError("linear quiver needs at least two vertices")
    return Quiver(m, tuple((j, j + 1) for j in range(1, m)))


def star_quiver(m: int) -> Quiver:
    """Arrows j: v_1 -> v_{j+1} for j = 1..m-1."""
    if m < 2:
        raise ValueError("star quiver needs at least two vertices")
    return Quiver(m, tuple((1, j + 1) for j in range(1, m)))


def representative_quiver_A(pi: Partition, d: int) -> Quiver:
    """Connected quiver with cycle type pi and corank length(pi) - 1 + 2d.

    Built from the linear quiver by adding chords that split the cycle into
    the prescribed parts, then d pairs of opposed parallel arrows that raise
    the corank without changing the vertex permutation.
    """
    m = pi.m
    if m < 2:
        raise ValueError("representative quivers need m >= 2")
    if d < 0:
        raise ValueError("d must be nonnegative")
    ell = pi.length
    arrows = [(j, j + 1) for j in range(1, m)]
    idx = _chord_indices(pi)
    if ell > 1:
        arrows.append((m, idx[0]))
        for k in range(ell - 2):
            arrows.append((idx[k], idx[k + 1]))
    for _ in range(d):
        if ell > 2:
            a, b = idx[ell - 2], idx[ell - 3]
        elif ell == 2:
            a, b = idx[0], m
        else:
            a, b = m, m - 1
        arrows.append((a, b))
        arrows.append((b, a))
    return Quiver(m, tuple(arrows))


def representative_quiver_star(pi: Partition, d: int) -> Quiver:
    """The inverse quiver of :func:`representative_quiver_A`, built directly
    on the maximal star quiver."""
    m = pi.m
    if m < 2:
        raise ValueError("representative quivers need m >= 2")
    if d < 0:
        raise ValueError("d must be nonnegative")
    ell = pi.length
    arrows = [(1, j + 1) for j in range(1, m)]
    idx = _chord_indices(pi)
    for k in range(ell - 1):
        arrows.append((1, idx[k] + 1))
    for _ in range(d):
        t = idx[ell - 2] + 1 if ell > 1 else m
        arrows.append((1, t))
        arrows.append((1, t))
    return Quiver(m, tuple(arrows))


def canonical_extension_quiver(r: int, c: int) -> Quiver:
    """Linear spine 1..r plus c arcs from vertex r+1 back to vertex 1,
    the reference quiver of rank r and corank c."""
    if r < 1:
        raise ValueError("rank must be >= 1")
    if c < 0:
        raise ValueError("corank must be >= 0")
    arrows = tuple((j, j + 1) for j in range(1, r + 1)) + ((r + 1, 1),) * c
    return Quiver(r + 1, arrows)


# ---------------------------------------------------------------------------
# backtracking realization
# ---------------------------------------------------------------------------

def _validate_input_form(f: UnitForm) -> None:
    if not is_connected(f):
        raise ValueError("realization requires a connected unit form")
    if not is_non_negative(f):
        raise ValueError("realization requires a non-negative unit form")


def _normalize_labels(q: Quiver) -> Quiver:
    """Relabel vertices in first-appearance order along the arrow list."""
    order: list[int] = []
    seen = set()
    for s, t in q.arrows:
        if s not in seen:
            seen.add(s)
            order.append(s)
        if t not in seen:
            seen.add(t)
            order.append(t)
    if len(order) != q.m:
        raise ValueError("cannot normalize labels with isolated vertices")
    rho = [0] * q.m
    for new_label, old_label in enumerate(order, start=1):
        rho[old_label - 1] = new_label
    return relabel_vertices(q, tuple(rho))


def realize_backtracking(f: UnitForm) -> RealizationResult:
    """Search for vertex pairs (s_i, t_i) whose incidence columns reproduce
    the symmetric Gram matrix exactly.

    Vertices are introduced in first-appearance order and the first arrow is
    pinned to (1, 2), which breaks both the relabeling and the global
    orientation symmetry; the search is exhaustive up to those symmetries.
    Raises NotDynkinTypeA when no assignment exists.
    """
    _validate_input_form(f)
    return _realize_backtracking_impl(f)


def _realize_backtracking_impl(f: UnitForm) -> RealizationResult:
    n = f.n
    m = n - corank(f) + 1
    if m < 2:
        raise NotDynkinTypeA("form has rank 0; no loop-less realization exists")
    g = symmetric_gram(f)
    arrows: list[tuple[int, int]] = []

    def dot(a: tuple[int, int], b: tuple[int, int]) -> int:
        return (a[0] == b[0]) + (a[1] == b[1]) - (a[0] == b[1]) - (a[1] == b[0])

    def extend(i: int, used: int) -> bool:
        if i == n:
            return used == m
        if used + 2 * (n - i) < m:
            return False
        row = g[i]
        max_s = min(used + 1, m)
        for s in range(1, max_s + 1):
            used_s = used + 1 if s == used + 1 else used
            max_t = min(used_s + 1, m)
            for t in range(1, max_t + 1):
                if t == s:
                    continue
                cand = (s, t)
                if all(dot(cand, arrows[j]) == row[j] for j in range(i)):
                    arrows.append(cand)
                    if extend(i + 1, used_s + 1 if t == used_s + 1 else used_s):
                        return True
                    arrows.pop()
        return False

    if not extend(0, 0):
        raise NotDynkinTypeA(
            f"no quiver on {m} vertices realizes this form: not Dynkin type A"
        )
    q = Quiver(m, tuple(arrows))
    if not quiver_is_connected(q):
        raise InvariantViolation("realized quiver of a connected form is disconnected")
    return RealizationResult(q, None, "backtracking")


# ---------------------------------------------------------------------------
# canonical route
# ---------------------------------------------------------------------------

def _signed_permutation_match(g: IntMatrix, target: IntMatrix) -> IntMatrix | None:
    """Monomial matrix S with entries +-1 and S^T g S = target, or None.

    Column k of S is sigma_k e_{p(k)}, so the condition reads
    target[k][l] = sigma_k sigma_l g[p(k)][p(l)].
    """
    n = len(g)
    profile_g = [tuple(sorted(abs(x) for x in row)) for row in g]
    profile_t = [tuple(sorted(abs(x) for x in row)) for row in target]
    assignment: list[tuple[int, int]] = []  # (p(k), sigma_k)
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        for p in range(n):
            if used[p] or profile_g[p] != profile_t[k]:
                continue
            for sigma in ((1,) if k == 0 else (1, -1)):
                ok = True
                for l in range(k):
                    pl, sl = assignment[l]
                    if sigma * sl * g[p][pl] != target[k][l]:
                        ok = False
                        break
                if ok:
                    assignment.append((p, sigma))
                    used[p] = True
                    if extend(k + 1):
                        return True
                    assignment.pop()
                    used[p] = False
        return False

    if not extend(0):
        return None
    rows = [[0] * n for _ in range(n)]
    for k, (p, sigma) in enumerate(assignment):
        rows[p][k] = sigma
    return tuple(tuple(row) for row in rows)


def weak_congruence_to_canonical(f: UnitForm) -> IntMatrix:
    """Unimodular B with B^T G_f B equal to the symmetric Gram matrix of the
    canonical extension quiver of matching rank and corank.

    Strategy: repeatedly clear +1 off-diagonal entries with the elementary
    substitution x_i -> x_i - x_j (which keeps the diagonal at 2), then match
    the stabilized Gram matrix against the canonical one by a signed
    permutation of variables.  Raises CanonicalizationError when the
    iteration bound is hit, a state repeats, or no match exists; callers
    fall back to the backtracking realizer.
    """
    _validate_input_form(f)
    return _weak_congruence_impl(f)


def _weak_congruence_impl(f: UnitForm) -> IntMatrix:
    n = f.n
    c = corank(f)
    r = n - c
    if r < 1:
        raise CanonicalizationError("form has rank 0")
    target = gram_matrix(canonical_extension_quiver(r, c))
    g = [list(row) for row in symmetric_gram(f)]
    b = [list(row) for row in identity(n)]
    max_steps = 10 * n * n
    seen = {tuple(map(tuple, g))}
    for _ in range(max_steps + 1):
        pivot = next(
            ((i, j) for i in range(n) for j in range(n) if i != j and g[i][j] == 1),
            None,
        )
        if pivot is None:
            break
        i, j = pivot
        # substitution x_i -> x_i - x_j: column j of both G and B gains -column i
        for k in range(n):
            g[k][j] -= g[k][i]
        for k in range(n):
            g[j][k] -= g[i][k]
        for k in range(n):
            b[k][j] -= b[k][i]
        key = tuple(map(tuple, g))
        if key in seen:
            raise CanonicalizationError("inflation loop revisited a Gram matrix")
        seen.add(key)
    else:
        raise CanonicalizationError("inflation iteration bound exceeded")
    frozen = tuple(tuple(row) for row in g)
    s = _signed_permutation_match(frozen, target)
    if s is None:
        raise CanonicalizationError(
            "stabilized Gram matrix does not match the canonical one up to a "
            "signed permutation"
        )
    return mat_mul(tuple(tuple(row) for row in b), s)


def realize_algorithm71(f: UnitForm) -> RealizationResult:
    """Canonical realization: pull the canonical quiver's incidence matrix
    back through a weak congruence and read off the arrows.

    Falls back to :func:`realize_backtracking` when the weak congruence
    search fails; the strategy field records which route produced the
    result.
    """
    _validate_input_form(f)
    n = f.n
    c = corank(f)
    r = n - c
    if r < 1:
        raise NotDynkinTypeA("form has rank 0; no loop-less realization exists")
    try:
        basis = _weak_congruence_impl(f)
    except CanonicalizationError:
        return _realize_backtracking_impl(f)
    basis_inv = unimodular_inverse(basis)
    canonical = canonical_extension_quiver(r, c)
    inc = mat_mul(incidence_matrix(canonical), basis_inv)
    if mat_mul(transpose(inc), inc) != symmetric_gram(f):
        raise InvariantViolation("pulled-back incidence matrix does not "
                                 "reproduce the Gram matrix")
    arrows = []
    for i in range(n):
        col = [inc[v][i] for v in range(r + 1)]
        plus = [v for v, x in enumerate(col) if x == 1]
        minus = [v for v, x in enumerate(col) if x == -1]
        if len(plus) != 1 or len(minus) != 1 or any(
            x not in (-1, 0, 1) for x in col
        ):
            raise InvariantViolation(
                f"column {i + 1} of the pulled-back incidence matrix is not "
                "a signed vertex pair"
            )
        arrows.append((plus[0] + 1, minus[0] + 1))
    q = Quiver(r + 1, tuple(arrows))
    if not quiver_is_connected(q):
        raise InvariantViolation("canonical route produced a disconnected quiver")
    return RealizationResult(_normalize_labels(q), basis, "algorithm71")


def realize(f: UnitForm) -> RealizationResult:
    """Realize a form as a quiver, preferring the canonical route."""
    return realize_algorithm71(f)
