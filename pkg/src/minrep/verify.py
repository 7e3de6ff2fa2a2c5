"""Named, independently runnable checks over the record catalog.

Each check recomputes one identity from the root-system and reflection-group
layers and compares against the stored record data: half-sums, tangent-space
dimensions, ladder dominance, the orthogonal decomposition behind xi0, the
stored w0 word (action, closed-form factorization, uniqueness among line
preservers), ladder lattice periods, module counts with pairwise ladder
disjointness, the highest-root ladder of complex forms, and the stored
infinitesimal-character patterns.

A check returns a CheckReport with status "pass", "fail", or "skipped";
skips happen exactly when a precondition is unmet (missing stored data,
one-sided record, enumeration budget).  Fail reports always carry a
counterexample witness in the evidence string.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction as Q

from .registry import (
    RealFormRecord,
    all_default_records,
    g_dimension,
    joseph_infchar,
    k_dimension,
    normalize_name,
)
from .render import format_q, format_vector, format_weight, format_word
from .rootsys import (
    bilinear,
    factor_bilinear,
    lattice_period,
    make_root_system,
    omega_to_coords,
    pair_coroot,
    space_casimir,
    space_dominance,
    space_rho,
    space_weyl_dim,
    trace_free_canonical,
    weight,
    weight_add,
    weight_is_zero,
    weight_scale,
    weight_sub,
)
from .weyl import (
    BudgetExceededError,
    apply,
    as_element,
    compose,
    equal_elements,
    identity_element,
    line_preservers,
    space_beta_subsystems,
    space_longest_element,
    space_subgroup_longest,
)

CHECK_NAMES = (
    "rho",
    "p_dimension",
    "ladder_wellformed",
    "xi0",
    "w0_table",
    "w0_formula",
    "w0_unique",
    "same_line",
    "period",
    "count_and_disjoint",
    "complex_beta",
    "infchar_coords",
)

SKIP_ONE_SIDED = "one-sided record: symmetric line data does not apply"
SKIP_NO_MODULES = "no modules"


@dataclass(frozen=True)
class VerifyConfig:
    strategy: str = "reduced"
    rung_cap: int = 50
    budget: int = 10 ** 7
    jobs: int = 1


DEFAULT_CONFIG = VerifyConfig()


@dataclass(frozen=True)
class CheckReport:
    check: str
    record: str
    status: str          # "pass" | "fail" | "skipped"
    evidence: str        # exact values; for skips, the reason
    duration_ms: int


def _pass(text: str):
    return "pass", text


def _fail(text: str):
    return "fail", text


def _skip(reason: str):
    return "skipped", reason


def _module_betas(r: RealFormRecord):
    out = []
    for m in r.modules:
        if m.beta not in out:
            out.append(m.beta)
    return out


def _is_complex(r: RealFormRecord) -> bool:
    return len(r.g_complex) == 2


# ---------------------------------------------------------------------------
# the checks


def _check_rho(r: RealFormRecord, config: VerifyConfig):
    if r.rho is None:
        return _skip("no stored half-sum")
    computed = space_rho(r.space)
    if computed == r.rho:
        return _pass(f"computed half-sum {format_weight(computed)} matches stored")
    return _fail(f"computed half-sum {format_weight(computed)} "
                 f"!= stored {format_weight(r.rho)}")


def _check_p_dimension(r: RealFormRecord, config: VerifyConfig):
    if not r.p_summands:
        return _skip("no tangent summands (compact form)")
    total = sum(space_weyl_dim(r.space, w) for w in r.p_summands)
    dim_g, dim_k = g_dimension(r), k_dimension(r)
    if total == dim_g - dim_k:
        return _pass(f"sum of summand dimensions {total} == "
                     f"dim g ({dim_g}) - dim k ({dim_k})")
    return _fail(f"sum of summand dimensions {total} != "
                 f"dim g ({dim_g}) - dim k ({dim_k}) = {dim_g - dim_k}")


def _check_ladder_wellformed(r: RealFormRecord, config: VerifyConfig):
    if not r.modules:
        return _skip(SKIP_NO_MODULES)
    for m in r.modules:
        for label, w in (("mu0", m.mu0), ("beta", m.beta)):
            dom = space_dominance(r.space, w)
            if not (dom.dominant and dom.integral):
                flaw = "dominant" if not dom.dominant else "integral"
                return _fail(f"module {m.label}: {label} = {format_weight(w)} "
                             f"is not {flaw}")
    return _pass(f"mu0 and beta dominant integral for all "
                 f"{len(r.modules)} module(s), hence every rung mu0+n*beta is")


def _check_xi0(r: RealFormRecord, config: VerifyConfig):
    if not r.modules:
        return _skip(SKIP_NO_MODULES)
    if r.hermitian:
        return _skip(SKIP_ONE_SIDED)
    if r.xi0 is None:
        return _skip("no stored xi0")
    scalars = []
    for m in r.modules:
        for i in range(len(r.space.factors)):
            d = factor_bilinear(r.space, i, r.xi0, m.beta)
            if d != 0:
                return _fail(f"module {m.label}: (xi0, beta) = {format_q(d)} "
                             f"!= 0 in factor {i}")
        target = weight_sub(weight_add(m.mu0, r.rho), r.xi0)
        c = bilinear(r.space, target, m.beta) / bilinear(r.space, m.beta, m.beta)
        if not weight_is_zero(weight_sub(target, weight_scale(c, m.beta))):
            return _fail(f"module {m.label}: mu0 + rho - xi0 = "
                         f"{format_weight(target)} is not a multiple of beta")
        scalars.append(c)
    shown = ", ".join(format_q(c) for c in scalars)
    return _pass(f"mu0 + rho = xi0 + c*beta with c = {shown}; "
                 f"xi0 orthogonal to beta in every factor")


def _check_w0_table(r: RealFormRecord, config: VerifyConfig):
    if not r.modules:
        return _skip(SKIP_NO_MODULES)
    if r.hermitian:
        return _skip(SKIP_ONE_SIDED)
    if r.w0 is None or r.xi0 is None:
        return _skip("no stored w0 word")
    for beta in _module_betas(r):
        image = apply(r.space, r.w0, beta)
        if not weight_is_zero(weight_add(image, beta)):
            return _fail(f"w0(beta) = {format_weight(image)} != "
                         f"-beta = {format_weight(weight_scale(-1, beta))}")
    image = apply(r.space, r.w0, r.xi0)
    if image != r.xi0:
        return _fail(f"w0(xi0) = {format_weight(image)} != "
                     f"xi0 = {format_weight(r.xi0)}")
    return _pass(f"{format_word(r.w0)} sends beta to -beta and fixes xi0")


def _check_w0_formula(r: RealFormRecord, config: VerifyConfig):
    if not r.modules:
        return _skip(SKIP_NO_MODULES)
    if r.hermitian:
        return _skip(SKIP_ONE_SIDED)
    if r.w0 is None:
        return _skip("no stored w0 word")
    beta = _module_betas(r)[0]
    subs = space_beta_subsystems(r.space, beta)
    lhs = as_element(r.space, r.w0)
    rhs = compose(as_element(r.space, space_longest_element(r.space)),
                  as_element(r.space, space_subgroup_longest(r.space, subs)))
    shape = ", ".join(
        "x".join(s.components) if s.components else "empty" for s in subs)
    if equal_elements(lhs, rhs):
        return _pass(f"w0 equals (longest element) * (longest element fixing "
                     f"beta); orthogonal subsystem per factor: {shape}")
    return _fail(f"stored word {format_word(r.w0)} differs from the "
                 f"factorization through the beta-orthogonal subsystem ({shape})")


def _check_w0_unique(r: RealFormRecord, config: VerifyConfig):
    if not r.modules:
        return _skip(SKIP_NO_MODULES)
    if r.hermitian:
        return _skip(SKIP_ONE_SIDED)
    if r.w0 is None or r.xi0 is None:
        return _skip("no stored w0 word")
    expected = frozenset({identity_element(r.space), as_element(r.space, r.w0)})
    for beta in _module_betas(r):
        try:
            got = line_preservers(r.space, beta, r.xi0,
                                  strategy=config.strategy, budget=config.budget)
        except BudgetExceededError as exc:
            return _skip(f"enumeration order {exc.order} above budget "
                         f"{config.budget} for strategy {config.strategy}")
        if got != expected:
            extras = [g for g in got if g not in expected]
            missing = [g for g in expected if g not in got]
            return _fail(f"line preservers differ from {{identity, w0}}: "
                         f"{len(got)} found, {len(extras)} unexpected, "
                         f"{len(missing)} missing (strategy {config.strategy})")
    return _pass(f"line preservers == {{identity, w0}} "
                 f"(strategy {config.strategy})")


def _check_same_line(r: RealFormRecord, config: VerifyConfig):
    if not r.modules:
        return _skip(SKIP_NO_MODULES)
    if r.hermitian:
        return _skip(SKIP_ONE_SIDED)
    if r.w0 is None:
        return _skip("no stored w0 word")
    shifts = []
    for m in r.modules:
        v = weight_add(m.mu0, r.rho)
        diff = weight_sub(apply(r.space, r.w0, v), v)
        c = bilinear(r.space, diff, m.beta) / bilinear(r.space, m.beta, m.beta)
        if not weight_is_zero(weight_sub(diff, weight_scale(c, m.beta))):
            return _fail(f"module {m.label}: w0(mu0+rho) - (mu0+rho) = "
                         f"{format_weight(diff)} is not a multiple of beta")
        shifts.append(c)
    shown = ", ".join(format_q(c) for c in shifts)
    return _pass(f"w0(mu0+rho) = (mu0+rho) + c*beta with c = {shown}")


def _check_period(r: RealFormRecord, config: VerifyConfig):
    if not r.modules:
        return _skip(SKIP_NO_MODULES)
    expected = Q(1, 2) if r.family in ("sp_R", "sp_C") else Q(1)
    for beta in _module_betas(r):
        period = lattice_period(r.space, beta)
        if period != expected:
            return _fail(f"lattice period of the {format_weight(beta)} ladder "
                         f"is {format_q(period)}, expected {format_q(expected)}")
    tag = f" (family {r.family})" if r.family in ("sp_R", "sp_C") else ""
    return _pass(f"lattice period {format_q(expected)}{tag}")


def _raw_sum(w) -> Q:
    return sum((sum(v, Q(0)) for v in w.factors), Q(0))


def _separator(r: RealFormRecord, a, b) -> str | None:
    """Symbolic certificate that the ladders of modules a and b never meet,
    valid for every rung count."""
    if r.space.center_dim == 1:
        ca, cb = a.mu0.center[0], b.mu0.center[0]
        da, db = a.beta.center[0], b.beta.center[0]
        # charges move away from zero along each ladder
        if ca * da > 0 and cb * db > 0 and (ca > 0) != (cb > 0):
            return "center-charge sign"
        if da == db and (ca - cb).denominator != 1:
            return "center-charge congruence"
        return None
    if any(rs.trace_redundant for rs in r.space.factors):
        # raw coordinate sums are not canonical on such factors
        return None
    sa, sb = _raw_sum(a.mu0), _raw_sum(b.mu0)
    ba, bb = _raw_sum(a.beta), _raw_sum(b.beta)
    if all(x.denominator == 1 for x in (sa, sb, ba, bb)) \
            and ba % 2 == 0 and bb % 2 == 0 and (sa - sb) % 2 == 1:
        return "coordinate-sum parity"
    return None


def _canonical_rung(r: RealFormRecord, m, n: int):
    return trace_free_canonical(r.space, weight_add(m.mu0, weight_scale(n, m.beta)))


def _check_count_and_disjoint(r: RealFormRecord, config: VerifyConfig):
    if len(r.modules) != r.expected_count:
        return _fail(f"{len(r.modules)} modules stored, expected "
                     f"{r.expected_count}")
    if len(r.modules) < 2:
        why = f" ({r.nonexistence_reason})" if r.nonexistence_reason else ""
        return _pass(f"count {r.expected_count} as expected{why}; "
                     f"no module pairs to separate")
    cap = config.rung_cap
    ladders = [
        {_canonical_rung(r, m, n): n for n in range(cap + 1)} for m in r.modules]
    notes = []
    for i in range(len(r.modules)):
        for j in range(i + 1, len(r.modules)):
            a, b = r.modules[i], r.modules[j]
            sep = _separator(r, a, b)
            if sep is None:
                return _fail(f"no symbolic separator certifies ({a.label}, "
                             f"{b.label}) stay disjoint beyond the sweep")
            common = set(ladders[i]) & set(ladders[j])
            if common:
                k = next(iter(common))
                return _fail(f"({a.label}, {b.label}) share K-type "
                             f"{format_weight(k)} at rungs m={ladders[i][k]}, "
                             f"n={ladders[j][k]}")
            notes.append(f"({a.label},{b.label}): {sep}")
    return _pass(f"count {r.expected_count} as expected; pairwise disjoint "
                 f"through rung {cap}; separators: " + "; ".join(notes))


def _check_complex_beta(r: RealFormRecord, config: VerifyConfig):
    if not _is_complex(r):
        return _skip("not a complex form")
    rs = r.space.factors[0]
    theta = weight(r.space, rs.highest_root)
    for beta in _module_betas(r):
        if beta != theta:
            return _fail(f"beta = {format_weight(beta)} is not the highest "
                         f"root {format_vector(rs.highest_root)}")
    if not any(weight_is_zero(m.mu0) for m in r.modules):
        return _fail("no module has mu0 = 0 (spherical bottom K-type)")
    return _pass(f"beta is the highest root {format_vector(rs.highest_root)} "
                 f"and a module has mu0 = 0")


def _check_infchar_coords(r: RealFormRecord, config: VerifyConfig):
    if r.infchar is None:
        return _skip("no stored infinitesimal-character pattern")
    shown = []
    for g_label, pattern in zip(r.g_complex, r.infchar):
        try:
            canonical = joseph_infchar(g_label)
        except ValueError as exc:
            return _fail(str(exc))
        if tuple(pattern) != canonical:
            return _fail(f"stored coefficients ({', '.join(map(format_q, pattern))}) "
                         f"differ from the {g_label} pattern "
                         f"({', '.join(map(format_q, canonical))})")
        rs = make_root_system(g_label)
        coords = omega_to_coords(rs, pattern)
        back = tuple(pair_coroot(coords, a) for a in rs.simple)
        if back != tuple(pattern):
            return _fail(f"{g_label}: coordinates {format_vector(coords)} do not "
                         f"pair back to the stored coefficients")
        shown.append(f"{g_label}: {format_vector(coords)}")
    return _pass("coefficients match the per-type pattern and round-trip "
                 "through coordinates; " + "; ".join(shown))


_CHECKS = {
    "rho": _check_rho,
    "p_dimension": _check_p_dimension,
    "ladder_wellformed": _check_ladder_wellformed,
    "xi0": _check_xi0,
    "w0_table": _check_w0_table,
    "w0_formula": _check_w0_formula,
    "w0_unique": _check_w0_unique,
    "same_line": _check_same_line,
    "period": _check_period,
    "count_and_disjoint": _check_count_and_disjoint,
    "complex_beta": _check_complex_beta,
    "infchar_coords": _check_infchar_coords,
}


def run_check(name: str, record: RealFormRecord,
              config: VerifyConfig = DEFAULT_CONFIG) -> CheckReport:
    if name not in _CHECKS:
        raise ValueError(f"unknown check {name!r}; known: "
                         + ", ".join(CHECK_NAMES))
    t0 = time.perf_counter_ns()
    status, evidence = _CHECKS[name](record, config)
    ms = (time.perf_counter_ns() - t0) // 10 ** 6
    return CheckReport(name, record.name, status, evidence, ms)


def check_rho(record, config=DEFAULT_CONFIG):
    return run_check("rho", record, config)


def check_p_dimension(record, config=DEFAULT_CONFIG):
    return run_check("p_dimension", record, config)


def check_ladder_wellformed(record, config=DEFAULT_CONFIG):
    return run_check("ladder_wellformed", record, config)


def check_xi0(record, config=DEFAULT_CONFIG):
    return run_check("xi0", record, config)


def check_w0_table(record, config=DEFAULT_CONFIG):
    return run_check("w0_table", record, config)


def check_w0_formula(record, config=DEFAULT_CONFIG):
    return run_check("w0_formula", record, config)


def check_w0_unique(record, config=DEFAULT_CONFIG):
    return run_check("w0_unique", record, config)


def check_same_line(record, config=DEFAULT_CONFIG):
    return run_check("same_line", record, config)


def check_period(record, config=DEFAULT_CONFIG):
    return run_check("period", record, config)


def check_count_and_disjoint(record, config=DEFAULT_CONFIG):
    return run_check("count_and_disjoint", record, config)


def check_complex_beta(record, config=DEFAULT_CONFIG):
    return run_check("complex_beta", record, config)


def check_infchar_coords(record, config=DEFAULT_CONFIG):
    return run_check("infchar_coords", record, config)


# ---------------------------------------------------------------------------
# suite runner


def _run_task(task) -> CheckReport:
    record, name, config = task
    return run_check(name, record, config)


def run_all(records=None, *, record: str | None = None,
            family: str | None = None, checks=None,
            config: VerifyConfig = DEFAULT_CONFIG) -> tuple[CheckReport, ...]:
    """Run checks in deterministic order: records as given, then CHECK_NAMES
    order within each record.  Selectors narrow by record name or family id."""
    pool = tuple(records) if records is not None else all_default_records()
    if record is not None:
        key = normalize_name(record)
        pool = tuple(r for r in pool if r.key == key)
        if not pool:
            raise KeyError(f"no record named {record!r}")
    if family is not None:
        pool = tuple(r for r in pool if r.family == family)
        if not pool:
            raise KeyError(f"no records in family {family!r}")
    names = tuple(checks) if checks else CHECK_NAMES
    for n in names:
        if n not in _CHECKS:
            raise ValueError(f"unknown check {n!r}; known: "
                             + ", ".join(CHECK_NAMES))
    tasks = [(r, n, config) for r in pool for n in names]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool_exec:
            return tuple(pool_exec.map(_run_task, tasks))
    return tuple(_run_task(t) for t in tasks)


def suite_status(reports) -> str:
    return "fail" if any(rep.status == "fail" for rep in reports) else "pass"


def casimir_along_ladder(record: RealFormRecord, module_index: int = 0,
                         rungs: int = 10) -> tuple[Q, ...]:
    """Casimir scalars of mu0 + n*beta for n = 0..rungs (they separate the
    rungs, so any shared K-type forces equal scalars)."""
    m = record.modules[module_index]
    return tuple(
        space_casimir(record.space, weight_add(m.mu0, weight_scale(n, m.beta)))
        for n in range(rungs + 1))
