"""Exhaustive verification sweeps over small connected quivers.

Phase 1 walks every connected loop-less quiver in range and checks the
matrix identities tying the incidence matrix, triangular Gram matrix,
Laplace matrix, Coxeter matrix and Coxeter-Laplace matrix together, plus
the walk-based constructions; it collects the distinct unit forms seen.
Phase 2 runs the form-level checks (polynomial identities, Coxeter numbers,
realization round trips, spectral multiplicities) once per distinct form.

Both phases can fan out over worker processes; aggregation is deterministic
because work units are fixed and merged in submission order.  The sweep is
the engine behind the ``verify`` CLI verb and the acceptance tests.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb, gcd, isqrt

from .errors import InvariantViolation
from .invariants import cycle_type_from_cox_poly
from .linalg import (
    char_poly,
    identity,
    mat_mul,
    mat_neg,
    mat_pow,
    mat_sub,
    poly_divmod,
    rational_rank,
    transpose,
    unitriangular_inverse,
    v_power_minus_one,
)
from .partitions import FactoredCoxPoly, cycle_type_of_permutation, part1c
from .quiver import (
    Quiver,
    incidence_matrix,
    inverse_quiver,
    iter_connected_quivers,
    laplace,
    opposite,
    ordered_pairs,
    relabel_vertices,
    triangular_gram,
    vertex_permutation,
)
from .realize import realize_algorithm71
from .unitform import UnitForm

_SAMPLE_CAP = 20
_SPLIT_THRESHOLD = 20000

CHECKS = (
    "matrix_identities",
    "laplace_kernel",
    "cycle_type_membership",
    "polynomial_factorization",
    "coxeter_numbers",
    "realization_roundtrip",
    "polynomial_roundtrip",
    "spectral_multiplicities",
    "congruence_invariance",
)


@dataclass
class SweepReport:
    max_vertices: int
    max_arrows: int
    quiver_count: int = 0
    form_count: int = 0
    strategy_counts: dict[str, int] = field(default_factory=dict)
    failure_counts: dict[str, int] = field(default_factory=lambda: {c: 0 for c in CHECKS})
    failure_samples: dict[str, list[str]] = field(default_factory=lambda: {c: [] for c in CHECKS})

    def record(self, check: str, message: str) -> None:
        self.failure_counts[check] += 1
        samples = self.failure_samples[check]
        if len(samples) < _SAMPLE_CAP:
            samples.append(message)

    @property
    def total_failures(self) -> int:
        return sum(self.failure_counts.values())

    def ok(self) -> bool:
        return self.total_failures == 0

    def to_json(self) -> dict:
        return {
            "max_vertices": self.max_vertices,
            "max_arrows": self.max_arrows,
            "quiver_count": self.quiver_count,
            "form_count": self.form_count,
            "strategy_counts": dict(sorted(self.strategy_counts.items())),
            "failure_counts": self.failure_counts,
            "failure_samples": self.failure_samples,
        }


class _Recorder:
    """Failure accumulator shared by both phases (per work unit)."""

    def __init__(self) -> None:
        self.counts = {c: 0 for c in CHECKS}
        self.samples: dict[str, list[str]] = {c: [] for c in CHECKS}

    def __call__(self, check: str, message: str) -> None:
        self.counts[check] += 1
        if len(self.samples[check]) < _SAMPLE_CAP:
            self.samples[check].append(message)


def _encode_gram(gram_tri) -> bytes:
    """Triangular Gram matrices of quivers have entries in [-2, 2]."""
    return bytes(x + 2 for row in gram_tri for x in row)


def _decode_gram(blob: bytes):
    n = isqrt(len(blob))
    it = iter(blob)
    return tuple(tuple(next(it) - 2 for _ in range(n)) for _ in range(n))


# ---------------------------------------------------------------------------
# phase 1: per-quiver identities
# ---------------------------------------------------------------------------

def _check_quiver(q: Quiver, rec, admissible: frozenset) -> tuple | None:
    """All matrix identities for one connected quiver.  Returns the pair
    (triangular Gram, cycle type parts), or None when the walk machinery
    itself failed."""
    m, n, arrows = q.m, q.n, q.arrows
    label = f"m={m} arrows={arrows}"

    inc = incidence_matrix(q)
    inc_t = transpose(inc)
    gram_tri = triangular_gram(q)

    # I^T I = G + G^T (matrix product against the combinatorial Gram matrix)
    gsym = mat_mul(inc_t, inc)
    if any(
        gsym[i][j] != gram_tri[i][j] + gram_tri[j][i]
        for i in range(n) for j in range(n)
    ):
        rec("matrix_identities", f"{label}: I^T I != G + G^T")

    # L = I I^T = degree matrix - adjacency; corank 1 with all-ones kernel
    lap = laplace(q)
    if mat_mul(inc, inc_t) != lap:
        rec("matrix_identities", f"{label}: I I^T != Laplace matrix")
    if any(sum(row) != 0 for row in lap):
        rec("laplace_kernel", f"{label}: all-ones vector not in the kernel")
    if rational_rank(lap) != m - 1:
        rec("laplace_kernel", f"{label}: Laplace rank != m - 1")

    # I(Q^-1) by walks against I(Q) G^-1 (sparse column accumulation)
    gram_inv = unitriangular_inverse(gram_tri)
    cols = []
    for j in range(n):
        col = [0] * m
        for k in range(j + 1):
            coef = gram_inv[k][j]
            if coef:
                s, t = arrows[k]
                col[s - 1] += coef
                col[t - 1] -= coef
        cols.append(col)
    inc_inverse = tuple(tuple(col[v] for col in cols) for v in range(m))
    try:
        qinv = inverse_quiver(q)
    except InvariantViolation as exc:
        rec("matrix_identities", f"{label}: {exc}")
        return None
    if incidence_matrix(qinv) != inc_inverse:
        rec("matrix_identities", f"{label}: I(Q^-1) != I(Q) G^-1")

    # Coxeter-Laplace matrix equals the walk permutation matrix
    try:
        xi = vertex_permutation(q, allow_disconnected=True)
    except InvariantViolation as exc:
        rec("matrix_identities", f"{label}: {exc}")
        return None
    prod = [[0] * m for _ in range(m)]
    for i, (s, t) in enumerate(arrows):
        si, ti = s - 1, t - 1
        for v in range(m):
            x = inc_inverse[v][i]
            if x:
                prod[v][si] += x
                prod[v][ti] -= x
    lam_ok = True
    for v in range(m):
        image = xi[v] - 1
        for w in range(m):
            expected = (1 if w == image else 0)
            if (1 if w == v else 0) - prod[w][v] != expected:
                lam_ok = False
                break
        if not lam_ok:
            break
    if not lam_ok:
        rec("matrix_identities",
            f"{label}: Coxeter-Laplace matrix != walk permutation matrix")

    # Coxeter matrix both ways: Id - I^T I(Q^-1) vs -G^T G^-1
    phi_rows = []
    for i, (s, t) in enumerate(arrows):
        top = inc_inverse[s - 1]
        bot = inc_inverse[t - 1]
        phi_rows.append(tuple(
            (1 if i == j else 0) - (top[j] - bot[j]) for j in range(n)
        ))
    phi = tuple(phi_rows)
    if phi != mat_neg(mat_mul(transpose(gram_tri), gram_inv)):
        rec("matrix_identities", f"{label}: the two Coxeter matrix formulas disagree")

    # cycle type membership for corank n - m + 1
    ct = cycle_type_of_permutation(xi)
    if ct not in admissible:
        rec("cycle_type_membership",
            f"{label}: {ct} not admissible for corank {n - m + 1}")

    return gram_tri, ct.parts


def _check_congruence(rec, q: Quiver, rng: random.Random) -> None:
    """Cycle type invariance under vertex relabeling and orientation flip."""
    label = f"m={q.m} arrows={q.arrows}"
    ct = cycle_type_of_permutation(vertex_permutation(q))
    rho = list(range(1, q.m + 1))
    rng.shuffle(rho)
    relabeled = relabel_vertices(q, tuple(rho))
    if triangular_gram(relabeled) != triangular_gram(q):
        rec("congruence_invariance",
            f"{label}: relabeling changed the triangular Gram matrix")
    if cycle_type_of_permutation(vertex_permutation(relabeled)) != ct:
        rec("congruence_invariance", f"{label}: relabeling changed the cycle type")
    flipped = opposite(q)
    if triangular_gram(flipped) != triangular_gram(q):
        rec("congruence_invariance",
            f"{label}: opposite quiver changed the triangular Gram matrix")
    if cycle_type_of_permutation(vertex_permutation(flipped)) != ct:
        rec("congruence_invariance", f"{label}: opposite quiver changed the cycle type")


def _phase1_worker(args: tuple) -> tuple:
    m, n, pair_index, seed, sample_rate = args
    rec = _Recorder()
    admissible = frozenset(part1c(n - m + 1, m))
    first_pair = None if pair_index < 0 else ordered_pairs(m)[pair_index]
    rng = random.Random(f"{seed}:{m}:{n}:{pair_index}") if seed is not None else None
    forms: dict[bytes, tuple[int, ...]] = {}
    count = 0
    for q in iter_connected_quivers(m, n, first_pair):
        count += 1
        outcome = _check_quiver(q, rec, admissible)
        if outcome is None:
            continue
        gram_tri, ct_parts = outcome
        key = _encode_gram(gram_tri)
        known = forms.get(key)
        if known is None:
            forms[key] = ct_parts
        elif known != ct_parts:
            rec("cycle_type_membership",
                f"m={m} arrows={q.arrows}: equal forms with different cycle types")
        if rng is not None and count % sample_rate == 0:
            _check_congruence(rec, q, rng)
    return count, rec.counts, rec.samples, forms


# ---------------------------------------------------------------------------
# phase 2: per-form checks
# ---------------------------------------------------------------------------

def _power_sums(coeffs_low: tuple[int, ...], upto: int) -> list[int]:
    """Traces of matrix powers 1..upto from the characteristic polynomial,
    by Newton's identities (exact)."""
    n = len(coeffs_low) - 1
    c = [coeffs_low[n - i] for i in range(n + 1)]  # c[i] multiplies v^{n-i}
    sums = [0] * (upto + 1)
    for k in range(1, upto + 1):
        acc = k * c[k] if k <= n else 0
        for i in range(1, min(k, n + 1)):
            acc += c[i] * sums[k - i]
        sums[k] = -acc
    return sums


def _is_nilpotent(matrix) -> bool:
    n = len(matrix)
    power = matrix
    k = 1
    while k < n:
        power = mat_mul(power, power)
        k *= 2
    return all(all(x == 0 for x in row) for row in power)


def _check_form(rec, strategies: dict[str, int], gram_tri,
                ct_parts: tuple[int, ...], roundtrip_memo: dict,
                multiplicity_memo: dict) -> None:
    n = len(gram_tri)
    m = sum(ct_parts)
    c = n - m + 1
    label = f"n={n} c={c} gram={gram_tri}"
    gram_inv = unitriangular_inverse(gram_tri)
    phi = mat_neg(mat_mul(transpose(gram_tri), gram_inv))
    direct = char_poly(phi)

    # factored polynomial from the cycle type against the characteristic
    # polynomial of the Coxeter matrix
    factored = FactoredCoxPoly(c + len(ct_parts) - 1, ct_parts)
    dense = factored.expand()
    if dense != direct:
        rec("polynomial_factorization",
            f"{label}: factored expansion != Coxeter characteristic polynomial")

    # minimal k with Id - Phi^k nilpotent must be lcm(ct); Phi^k = Id within
    # that range exactly for single-part cycle types.  Traces of powers give
    # a sound rejection certificate (trace != n), with exact matrix checks
    # whenever the certificate is inconclusive.
    target = 1
    for p in ct_parts:
        target = target * p // gcd(target, p)
    sums = _power_sums(direct, target)
    ident = identity(n)
    first_identity = None
    for k in range(1, target):
        if sums[k] == n:
            power = mat_pow(phi, k)
            if _is_nilpotent(mat_sub(ident, power)):
                rec("coxeter_numbers",
                    f"{label}: Id - Phi^{k} nilpotent below lcm {target}")
            if power == ident and first_identity is None:
                first_identity = k
    final_power = mat_pow(phi, target)
    if not _is_nilpotent(mat_sub(ident, final_power)):
        rec("coxeter_numbers", f"{label}: Id - Phi^lcm is not nilpotent")
    if first_identity is None and final_power == ident:
        first_identity = target
    if len(ct_parts) == 1:
        if first_identity != ct_parts[0]:
            rec("coxeter_numbers",
                f"{label}: Coxeter number {first_identity} != {ct_parts[0]}")
    elif first_identity is not None:
        rec("coxeter_numbers",
            f"{label}: Phi^{first_identity} = Id for a multi-part cycle type")

    # realization round trip (canonical route with its built-in fallback)
    form = UnitForm(n, gram_tri)
    try:
        result = realize_algorithm71(form)
    except (ValueError, InvariantViolation) as exc:
        rec("realization_roundtrip", f"{label}: realization failed: {exc}")
    else:
        strategies[result.strategy] = strategies.get(result.strategy, 0) + 1
        if triangular_gram(result.quiver) != gram_tri:
            rec("realization_roundtrip",
                f"{label}: realization changed the Gram matrix")
        elif cycle_type_of_permutation(
            vertex_permutation(result.quiver, allow_disconnected=True)
        ).parts != ct_parts:
            rec("realization_roundtrip",
                f"{label}: realization changed the cycle type")

    # polynomial -> cycle type round trip (memoized per cycle type/corank)
    key = (ct_parts, c)
    if key not in roundtrip_memo:
        try:
            recovered = cycle_type_from_cox_poly(dense, c)
        except ValueError as exc:
            roundtrip_memo[key] = str(exc)
        else:
            roundtrip_memo[key] = (
                None if recovered.parts == ct_parts
                else f"recovered {recovered} from the Coxeter polynomial"
            )
    if roundtrip_memo[key] is not None:
        rec("polynomial_roundtrip", f"{label}: {roundtrip_memo[key]}")

    # spectral multiplicities via exact division (memoized per cycle type)
    if key not in multiplicity_memo:
        problems: list[str] = []
        if len(dense) - 1 != n:
            problems.append(f"degree {len(dense) - 1} != {n}")
        orders = {1}
        for part in ct_parts:
            for d in range(2, part + 1):
                if part % d == 0:
                    orders.add(d)

        def prim_mult(e: int) -> int:
            if e == 1:
                return c + len(ct_parts) - 1
            return sum(1 for p in ct_parts if p % e == 0)

        for d in sorted(orders):
            count = 0
            current = dense
            divisor = v_power_minus_one(d)
            while True:
                quotient, rem = poly_divmod(current, divisor)
                if rem != (0,):
                    break
                count += 1
                current = quotient
            expected = min(prim_mult(e) for e in range(1, d + 1) if d % e == 0)
            if count != expected:
                problems.append(
                    f"(v^{d}-1) divides {count} times, expected {expected}")
        multiplicity_memo[key] = problems
    for problem in multiplicity_memo[key]:
        rec("spectral_multiplicities", f"{label}: {problem}")


def _phase2_worker(items: list[tuple[bytes, tuple[int, ...]]]) -> tuple:
    rec = _Recorder()
    strategies: dict[str, int] = {}
    roundtrip_memo: dict = {}
    multiplicity_memo: dict = {}
    for blob, ct_parts in items:
        _check_form(rec, strategies, _decode_gram(blob), ct_parts,
                    roundtrip_memo, multiplicity_memo)
    return rec.counts, rec.samples, strategies


# ---------------------------------------------------------------------------
# orchestration
# ---------------------------------------------------------------------------

def _phase1_units(max_vertices: int, max_arrows: int, seed: int | None,
                  sample_rate: int) -> list[tuple]:
    units = []
    for m in range(2, max_vertices + 1):
        for n in range(max(m - 1, 1), max_arrows + 1):
            pairs = m * (m - 1)
            if comb(pairs + n - 1, n) > _SPLIT_THRESHOLD:
                for index in range(pairs):
                    units.append((m, n, index, seed, sample_rate))
            else:
                units.append((m, n, -1, seed, sample_rate))
    return units


def _merge_phase1(report: SweepReport, results,
                  forms: dict[bytes, tuple[int, ...]]) -> None:
    for count, counts, samples, unit_forms in results:
        report.quiver_count += count
        for check in CHECKS:
            report.failure_counts[check] += counts[check]
            space = _SAMPLE_CAP - len(report.failure_samples[check])
            if space > 0:
                report.failure_samples[check].extend(samples[check][:space])
        for key, ct_parts in unit_forms.items():
            known = forms.get(key)
            if known is None:
                forms[key] = ct_parts
            elif known != ct_parts:
                report.record("cycle_type_membership",
                              "equal forms with different cycle types across units")


def run_sweep(max_vertices: int, max_arrows: int, *,
              seed: int | None = None,
              jobs: int = 1,
              congruence_sample_rate: int = 997) -> SweepReport:
    """Check every identity over all connected loop-less quivers with at
    most ``max_vertices`` vertices and ``max_arrows`` arrows (arrow multisets
    in lexicographic order, all vertex labelings kept).

    ``seed`` enables randomized congruence-invariance spot checks.  ``jobs``
    > 1 fans both phases out over worker processes with deterministic
    aggregation.
    """
    if max_vertices < 1 or max_arrows < 0:
        raise ValueError("sweep bounds must be positive")
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    report = SweepReport(max_vertices, max_arrows)
    units = _phase1_units(max_vertices, max_arrows, seed, congruence_sample_rate)
    forms: dict[bytes, tuple[int, ...]] = {}

    if jobs == 1:
        _merge_phase1(report, map(_phase1_worker, units), forms)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            _merge_phase1(report, pool.map(_phase1_worker, units), forms)

    report.form_count = len(forms)
    items = sorted(forms.items())
    if jobs == 1:
        chunks = [items]
    else:
        step = max(1, (len(items) + 4 * jobs - 1) // (4 * jobs))
        chunks = [items[i:i + step] for i in range(0, len(items), step)]

    if jobs == 1:
        results = map(_phase2_worker, chunks)
    else:
        pool = ProcessPoolExecutor(max_workers=jobs)
        results = pool.map(_phase2_worker, chunks)
    for counts, samples, strategies in results:
        for check in CHECKS:
            report.failure_counts[check] += counts[check]
            space = _SAMPLE_CAP - len(report.failure_samples[check])
            if space > 0:
                report.failure_samples[check].extend(samples[check][:space])
        for name, value in strategies.items():
            report.strategy_counts[name] = report.strategy_counts.get(name, 0) + value
    if jobs > 1:
        pool.shutdown()

    return report
