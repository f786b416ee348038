"""Replay of the worked examples and randomized identity checks.

Every case has a descriptive id; ids share prefixes by topic (``example_``,
``identity_``, ``spectrum_``, ``construct_``, ``stiefel_``) so ``--only``
can select groups.  Random cases use fixed seeds and are reproducible.
"""
from __future__ import annotations

import math
import time
import traceback
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import properties as props
from .algebra import (
    CDElement, associator, hat, multiply, parse_element, tilde,
)
from .errors import CDError
from .operators import SCHEMA_VERSION, invertibility_test, l_squared, left_matrix
from .sampling import random_circle_point, random_doubly_pure, random_pure
from .spectrum import (
    eigenspace, is_alternative, is_normed, kernel_dimension_bound_check, local_norm_check, spectrum,
)
from .stiefel import classify, stiefel_to_nontrivial, sweep_stiefel_zero_divisors
from .zerodiv import (
    annihilator, complement_vector, construct_orthogonal, construct_promote_pure, construct_spectral,
    construct_tilde_partner, hat_symmetry_check, in_h_perp, project_out_h, zero_divisor_is_doubly_pure_check,
)

DEFAULT_DRAWS = 20
BASE_SEED = 20240


@dataclass
class VerificationReport:
    case_id: str
    status: str
    expected: object
    actual: object
    residual: float | None = None
    source: str = "worked_example"
    detail: str = ""
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "case_id": self.case_id,
            "status": self.status,
            "expected": _jsonable(self.expected),
            "actual": _jsonable(self.actual),
            "residual": self.residual,
            "source": self.source,
            "detail": self.detail,
        }


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, CDElement):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


@dataclass(frozen=True)
class Case:
    case_id: str
    source: str
    run: Callable[[int], tuple]
    randomized: bool = False


_REGISTRY: list[Case] = []


def case(case_id: str, source: str = "worked_example", randomized: bool = False):
    def deco(fn):
        _REGISTRY.append(Case(case_id, source, fn, randomized))
        return fn
    return deco


def registry() -> list[Case]:
    return list(_REGISTRY)


def _p(text: str, level: int) -> CDElement:
    return parse_element(text, level)


def _rng(tag: str) -> np.random.Generator:
    return np.random.default_rng([BASE_SEED, sum(map(ord, tag))])


# -- worked examples --------------------------------------------------------------

@case("example_pair_product_annihilates")
def _(draws):
    prod = multiply(_p("e1 + e10", 4), _p("-e4 + e15", 4))
    return prod.is_zero(), "0", str(prod), None


@case("example_basis_products")
def _(draws):
    table = {("e1", "e4"): "e5", ("e7", "e2"): "e5", ("e7", "e1"): "-e6", ("e2", "e4"): "e6",
             ("e1", "e7"): "e6", ("e4", "e2"): "-e6", ("e4", "e1"): "-e5", ("e2", "e7"): "-e5"}
    actual = {f"{x}{y}": str(multiply(_p(x, 3), _p(y, 3))) for x, y in table}
    expected = {f"{x}{y}": v for (x, y), v in table.items()}
    return actual == expected, expected, actual, None


@case("example_pair_times_swapped_pair")
def _(draws):
    a, x = _p("e1 + e10", 4), _p("e2 + e9", 4)
    prod = multiply(a, x)
    sq = l_squared(a).apply(x)
    ok = prod == _p("2e3", 4) and sq == x * -2
    return ok, ["2e3", str(x * -2)], [str(prod), str(sq)], None


@case("example_eigenvector_value_two")
def _(draws):
    a, x = _p("e1 + e10", 4), _p("e7 - e12", 4)
    ax = multiply(a, x)
    sq = l_squared(a).apply(x)
    ok = ax == _p("2e6 + 2e13", 4) and sq == x * -4
    return ok, ["2e6 + 2e13", str(x * -4)], [str(ax), str(sq)], None


@case("example_spectrum_zero_one_two")
def _(draws):
    r = spectrum(_p("e1 + e10", 4))
    ok = len(r.lambdas) == 3 and np.allclose(r.lambdas, [0, 1, 2], atol=1e-10) and r.max_residual <= 1e-10
    return ok, [0, 1, 2], list(r.lambdas), r.max_residual


@case("example_spectrum_octonion_unit")
def _(draws):
    r = spectrum(_p("e1", 3))
    return np.allclose(r.lambdas, [1], atol=1e-10), [1], list(r.lambdas), r.max_residual


@case("example_spectrum_basis_element_all_ones")
def _(draws):
    vals = {i: list(spectrum(CDElement.basis(4, i)).lambdas) for i in range(1, 16) if i != 8}
    ok = all(np.allclose(v, [1, 1, 1], atol=1e-10) for v in vals.values())
    return ok, [1, 1, 1], vals, None


@case("example_eigenspaces_contain_witnesses")
def _(draws):
    a = _p("e1 + e10", 4)
    v0, v2 = eigenspace(a, 0.0), eigenspace(a, 2.0)
    ok = v0.dim == 4 and v2.dim == 4 and v0.contains(_p("-e4 + e15", 4)) and v2.contains(_p("e7 - e12", 4))
    return ok, [4, 4, True, True], [v0.dim, v2.dim, v0.contains(_p("-e4 + e15", 4)),
                                    v2.contains(_p("e7 - e12", 4))], max(v0.quadruple_residual, v2.quadruple_residual)


@case("example_normed_with_but_not_alternating")
def _(draws):
    a, eps = _p("e1 + e10", 4), _p("e4", 4)
    normed, ratio = local_norm_check(a, eps)
    assoc = associator(a, a, eps)
    sq = l_squared(a).apply(eps)
    ok = normed and assoc == _p("2e15", 4) and sq == _p("-2e4 - 2e15", 4)
    return ok, [True, "2e15", "-2e4 - 2e15"], [normed, str(assoc), str(sq)], None


@case("example_alternative_iff_normed")
def _(draws):
    rows = {"e5": (is_alternative(_p("e5", 4)), is_normed(_p("e5", 4))),
            "e1 + e10": (is_alternative(_p("e1 + e10", 4)), is_normed(_p("e1 + e10", 4)))}
    ok = rows == {"e5": (True, True), "e1 + e10": (False, False)}
    return ok, {"e5": [True, True], "e1 + e10": [False, False]}, {k: list(v) for k, v in rows.items()}, None


@case("example_local_norm_ratios")
def _(draws):
    a = _p("e1 + e10", 4)
    vals = [local_norm_check(a, _p(x, 4))[1] for x in ("-e4 + e15", "e7 - e12", "e2 + e9")]
    return vals == [0, 2, 1], [0, 2, 1], vals, None


@case("example_mirror_symmetry")
def _(draws):
    a = _p("e1 + e10", 4)
    x = _p("-e4 + e15", 4)
    mirrored = hat(x)
    _, val = local_norm_check(a, mirrored)
    r = spectrum(a)
    ok = multiply(a, x).is_zero() and val == 2 and r.contains_one
    return ok, [True, 2, True], [multiply(a, x).is_zero(), val, r.contains_one], None


@case("example_pair_singular_operator")
def _(draws):
    v = invertibility_test(_p("e1", 3), _p("e2", 3))
    ok = not v.invertible and v.witness is not None and multiply(_p("e1 + e10", 4), v.witness).is_zero()
    return ok, "singular", "invertible" if v.invertible else f"singular, witness {v.witness}", None


@case("example_annihilator_dimension_four")
def _(draws):
    ann = annihilator(_p("e1 + e10", 4))
    ok = ann.dim == 4 and any(b == _p("-e4 + e15", 4) or b == _p("e4 - e15", 4) for b in ann.basis) \
        and annihilator(_p("e1", 4)).dim == 0
    return ok, [4, 0], [ann.dim, annihilator(_p("e1", 4)).dim], None


def _level5_example(coef: float, index: int) -> tuple[bool, int, float]:
    a = _p("e1 + e10", 4).to_float() * (1 / math.sqrt(2))
    elem = CDElement.pair(a, CDElement.zero(4).to_float()) + CDElement.basis(5, index).to_float() * coef
    s = np.linalg.svd(left_matrix(elem).to_float(), compute_uv=False)
    dim = annihilator(elem, check=False).dim
    return dim > 0, dim, float(s.min() / s.max())


@case("example_level5_flat_text")
def _(draws):
    # the element as printed, with the symplectic term on e16
    ok, dim, sigma = _level5_example(2.0, 16)
    return ok, "nonzero annihilator", f"annihilator dim {dim}", sigma


@case("example_level5_pair_form")
def _(draws):
    # (a, 2 e~_0) in pair notation flattens to the e24 coordinate
    ok, dim, sigma = _level5_example(2.0, 24)
    return ok, "nonzero annihilator", f"annihilator dim {dim}", sigma


@case("example_level5_rescaled_partner")
def _(draws):
    ok, dim, sigma = _level5_example(math.sqrt(2), 24)
    exact = annihilator(_p("e1 + e10 + 2e24", 5)).dim
    return ok and exact == 4, [4, 4], [dim, exact], sigma


# -- randomized identities ---------------------------------------------------------

LEVELS = (3, 4, 5)


def _identity(case_id: str, fn, drawer, levels=LEVELS):
    @case(case_id, "identity", randomized=True)
    def run(draws, _fn=fn, _drawer=drawer, _id=case_id):
        bad = []
        for n in levels:
            rng = _rng(f"{_id}:{n}")
            for i in range(draws):
                args = _drawer(rng, n, i)
                if not _fn(*args):
                    bad.append(f"level {n} draw {i}")
        return not bad, "holds on every draw", bad or "holds on every draw", None
    return run


def _dp(rng, n, i):
    return (random_doubly_pure(rng, n),)


def _pure(rng, n, i):
    return (random_pure(rng, n),)


def _pure_dp(rng, n, i):
    return random_pure(rng, n), random_doubly_pure(rng, n)


def _pair_circle(rng, n, i):
    a, b = props.draw_pure_pair(rng, n, i)
    r, s = random_circle_point(rng)
    return a, b, r, s


def _two_pairs(rng, n, i):
    a, b = props.draw_pure_pair(rng, n, i)
    x, y = props.draw_pure_pair(rng, n, i + 1)
    return CDElement.pair(a, b), CDElement.pair(x, y)


_identity("identity_tilde_via_symplectic_unit", props.tilde_via_symplectic_unit, _dp)
_identity("identity_tilde_square", props.tilde_square, _dp)
_identity("identity_tilde_left_product", props.tilde_left_product, _pure_dp)
_identity("identity_orthogonal_iff_tilde_sum", props.orthogonal_iff_tilde_sum, props.draw_doubly_pure_pair)
_identity("identity_tilde_orthogonal_iff_swap", props.tilde_orthogonal_iff_swap, props.draw_doubly_pure_pair)
_identity("identity_tilde_commutes_iff_h_perp", props.tilde_commutes_iff_h_perp, props.draw_doubly_pure_pair)
_identity("identity_symplectic_and_tilde_anticommutation", props.symplectic_and_tilde_anticommutation, _dp)
_identity("identity_left_square_equals_right_square", props.left_square_equals_right_square, _pure)
_identity("identity_block_decomposition", props.block_identity, props.draw_pure_pair)
_identity("identity_circle_action_invariance", props.rotation_invariance, _pair_circle)
_identity("identity_hat_product_relation", props.hat_product_relation, _two_pairs)
_identity("identity_split_inner_product", props.split_inner_product, _two_pairs)
_identity("identity_stiefel_hat_nontrivial", props.stiefel_hat_biconditional, props.draw_pure_pair, (3, 4))
_identity("identity_hermitian_form", props.hermitian_properties, props.draw_doubly_pure_pair, (3, 4))


# -- spectra ----------------------------------------------------------------------

def spectral_draw_check(a: CDElement) -> dict:
    """Multiplicities, membership of 1 and the kernel bound for one element."""
    import warnings
    r = spectrum(a)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        kdim = kernel_dimension_bound_check(a)
    return {
        "mod4": all(c.multiplicity % 4 == 0 for c in r.clusters)
        and sum(c.multiplicity for c in r.clusters) == a.dim - 4,
        "contains_one": r.contains_one,
        "kernel_dim": kdim,
    }


def _spectral_case(level: int, key: str):
    @case(f"spectrum_{key}_level{level}", "identity", randomized=True)
    def run(draws, _n=level, _key=key):
        rng = _rng(f"spectrum:{_n}")
        bad = []
        for i in range(draws):
            res = spectral_draw_check(random_doubly_pure(rng, _n))
            ok = {"multiplicity_mod4": res["mod4"], "contains_one": res["contains_one"],
                  "kernel_dim_at_least_8": res["kernel_dim"] >= 8}[_key]
            if not ok:
                bad.append(i)
        return not bad, f"{draws} of {draws}", f"{draws - len(bad)} of {draws}", None
    return run


for _n in (3, 4, 5, 6):
    for _k in ("multiplicity_mod4", "contains_one", "kernel_dim_at_least_8"):
        _spectral_case(_n, _k)


@case("spectrum_invariances", "identity", randomized=True)
def _(draws):
    bad = []
    for n in (3, 4, 5):
        rng = _rng(f"spectrum_inv:{n}")
        for i in range(draws):
            a = random_doubly_pure(rng, n)
            base = np.array(spectrum(a).lambdas)
            scaled = np.array(spectrum(a * Fraction(-7, 3)).lambdas)
            tl = np.array(spectrum(tilde(a)).lambdas)
            h1, h2 = a.halves()
            r, s = random_circle_point(rng)
            rot = CDElement.pair(h1 * r - h2 * s, h1 * s + h2 * r)
            rotated = np.array(spectrum(rot).lambdas)
            if not all(np.allclose(base, x, atol=1e-9) for x in (scaled, tl, rotated)):
                bad.append(f"level {n} draw {i}")
    return not bad, "scale, tilde and circle invariant", bad or "scale, tilde and circle invariant", None


# -- constructors -----------------------------------------------------------------------

def constructor_instance(kind: str, rng: np.random.Generator, n: int):
    """One randomized instance of a constructor at input level ``n``; returns the pair(s)."""
    if kind == "orthogonal":
        # b = e_k a is a rational isometric image of a; with a_k and the
        # matching symplectic coordinate cleared it usually lands in H_a^perp
        half = 1 << (n - 1)
        while True:
            k = int(rng.integers(1, 1 << n))
            if k == half:
                continue
            coords = list(random_doubly_pure(rng, n).coords)
            coords[k] = coords[k ^ half] = Fraction(0)
            a = CDElement(n, coords)
            if a.is_zero():
                continue
            b = multiply(CDElement.basis(n, k), a)
            if in_h_perp(a, b):
                return [construct_orthogonal(a, b)]
    if kind == "tilde":
        a = random_doubly_pure(rng, n)
        x = project_out_h(a, random_doubly_pure(rng, n))
        if x.is_zero():
            x = complement_vector(a)
        return [construct_tilde_partner(a, int(rng.choice((-1, 1))), x)]
    if kind == "spectral":
        a = random_doubly_pure(rng, n)
        rep = spectrum(a)
        nonzero = [c.value for c in rep.clusters if c.value > 1e-8]
        value = nonzero[int(rng.integers(len(nonzero)))]
        return list(construct_spectral(a, value, sign=int(rng.choice((-1, 1)))))
    if kind == "promote":
        a = random_pure(rng, n)
        if rng.random() < 0.25:
            a = random_doubly_pure(rng, n)
        return [construct_promote_pure(a)[1]]
    raise ValueError(kind)


def _constructor_case(kind: str, level: int):
    @case(f"construct_{kind}_level{level}", "identity", randomized=True)
    def run(draws, _kind=kind, _n=level):
        rng = _rng(f"construct:{_kind}:{_n}")
        bad = []
        for i in range(draws):
            try:
                pairs = constructor_instance(_kind, rng, _n)
                for pr in pairs:
                    if not (zero_divisor_is_doubly_pure_check(pr.alpha) and hat_symmetry_check(pr.alpha, pr.chi)):
                        bad.append(f"draw {i}: symmetry check")
                    if _n == 3 and annihilator(pr.alpha).dim != 4:
                        bad.append(f"draw {i}: annihilator dim {annihilator(pr.alpha).dim}")
            except CDError as exc:
                bad.append(f"draw {i}: {type(exc).__name__}")
        return not bad, "certified on every draw", bad[:5] or "certified on every draw", None
    return run


for _kind in ("orthogonal", "tilde", "spectral", "promote"):
    for _n in (3, 4, 5):
        _constructor_case(_kind, _n)


@case("construct_worked_instances")
def _(draws):
    checks = {
        "orthogonal": construct_orthogonal(_p("e1", 3), _p("e2", 3)).chi == _p("e5 + e14", 4),
        "tilde_minus": construct_tilde_partner(_p("e1", 3), -1, _p("e2", 3)).alpha == _p("e1 - e13", 4),
        "tilde_plus": construct_tilde_partner(_p("e1", 3), 1, _p("e2", 3)).chi == _p("e2 - e14", 4),
        "spectral": construct_spectral(_p("e1", 3), 1.0, _p("e2", 3))[0].alpha == _p("e1 + e12", 4),
        "promote": construct_promote_pure(_p("3/5 e1 + 4/5 e8", 4))[0] == _p("4/5 e1 - 3/5 e8", 4),
    }
    return all(checks.values()), {k: True for k in checks}, checks, None


# -- Stiefel ----------------------------------------------------------------------

@case("stiefel_worked_classification")
def _(draws):
    got = {
        "e1,e2": classify(_p("e1", 3), _p("e2", 3)).case_tag.value,
        "e1,-e5": classify(_p("e1", 3), _p("-e5", 3)).case_tag.value,
        "e1,2e2": classify(_p("e1", 3), _p("2e2", 3)).is_stiefel,
        "hat": [str(v) for v in stiefel_to_nontrivial(_p("e1 + e10", 4))],
    }
    want = {"e1,e2": "NonTrivial", "e1,-e5": "TildePartnerCase", "e1,2e2": False, "hat": ["e1 + e10", "e2 + e9"]}
    return got == want, want, got, None


@case("stiefel_sweep_level3_all_zero_divisors", "identity", randomized=True)
def _(draws):
    rep = sweep_stiefel_zero_divisors(3, draws, BASE_SEED, "mixed")
    return rep["zero_divisors"] == draws and not rep["failures"], draws, rep["zero_divisors"], None


# -- driver -------------------------------------------------------------------------

def run_cases(only: list[str] | None = None, draws: int = DEFAULT_DRAWS) -> list[VerificationReport]:
    reports = []
    for c in _REGISTRY:
        if only and not any(c.case_id.startswith(p) for p in only):
            continue
        t0 = time.perf_counter()
        try:
            ok, expected, actual, residual = c.run(draws)
            status, detail = ("pass" if ok else "fail"), ""
        except Exception as exc:  # a crash is a failure of the case, with the reason kept
            status, expected, actual, residual = "fail", None, None, None
            detail = "".join(traceback.format_exception_only(type(exc), exc)).strip()
        reports.append(VerificationReport(c.case_id, status, expected, actual,
                                          None if residual is None else float(residual),
                                          c.source, detail, time.perf_counter() - t0))
    return reports


def reports_json(reports: list[VerificationReport]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "passed": sum(r.passed for r in reports),
        "failed": [r.case_id for r in reports if not r.passed],
        "cases": [r.to_json() for r in reports],
    }


def summary_table(reports: list[VerificationReport]) -> str:
    width = max((len(r.case_id) for r in reports), default=10)
    lines = [f"{'case':<{width}}  status  seconds"]
    for r in reports:
        lines.append(f"{r.case_id:<{width}}  {r.status:<6}  {r.seconds:7.3f}")
    failed = [r.case_id for r in reports if not r.passed]
    lines.append(f"{len(reports) - len(failed)} passed, {len(failed)} failed")
    return "\n".join(lines)
