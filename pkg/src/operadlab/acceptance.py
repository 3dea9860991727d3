"""The twelve acceptance checks, shared by ``operadlab verify`` and the test suite.

Each ``criterion_k`` returns a :class:`CheckResult`.  Everything is exact
rational arithmetic, so every tolerance is "exact".  The details dict holds
only deterministic data (no timings) so that reports can be diffed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import factorial
from typing import Callable, Dict, List

from .exactlin.perms import all_perms, doubling


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    tolerance: str = "exact"
    details: Dict = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} (tolerance: {self.tolerance})"

    def as_dict(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "tolerance": self.tolerance, "details": self.details, "failures": self.failures}


def _result(number, title, failures, **details) -> CheckResult:
    return CheckResult(number, title, not failures, details=details, failures=failures)


def _reliable_zero(tab) -> bool:
    return all(h == 0 for h in tab.reliable_h())


def criterion_1(cap: int = 7) -> CheckResult:
    from .liecplx import soul_cohomology

    tab = soul_cohomology("Ass", cap)
    bad = [] if _reliable_zero(tab) else [f"Ass soul cohomology {tab.h} (reliable {tab.reliable})"]
    return _result(1, f"Ass soul complex acyclic in reliable degrees, cap {cap}", bad,
                   dims=tab.dims, h=tab.h, reliable=tab.reliable)


def criterion_2(cap: int = 7) -> CheckResult:
    from .exactlin.complexes import cohomology_dims
    from .liecplx import soul_cohomology
    from .permcplx import alternating_identity_complex

    ref = cohomology_dims(alternating_identity_complex(cap))
    bad, details = [], {"reference_dims": ref.dims}
    for name in ("Com", "Lie"):
        tab = soul_cohomology(name, cap)
        details[name] = {"dims": tab.dims, "h": tab.h, "reliable": tab.reliable}
        if tab.dims != ref.dims:
            bad.append(f"{name} soul dims {tab.dims} differ from the alternating identity complex {ref.dims}")
        if not _reliable_zero(tab):
            bad.append(f"{name} soul cohomology {tab.h}")
    return _result(2, f"Com and Lie souls match the alternating identity complex, cap {cap}", bad, **details)


def criterion_3(cap: int = 4) -> CheckResult:
    from .liecplx import soul_cohomology

    tab = soul_cohomology("D", cap)
    bad = []
    if tab.h[:2] != [0, 1] or not all(tab.reliable[:2]):
        bad.append(f"D soul H^0, H^1 = {tab.h[:2]}, expected [0, 1]")
    return _result(3, f"D soul has H^0 = 0 and H^1 = 1, cap {cap}", bad,
                   dims=tab.dims, h=tab.h, reliable=tab.reliable)


def criterion_4(cap: int = 4) -> CheckResult:
    from .liecplx import nonsigma_soul_cohomology, soul_cohomology

    sym = soul_cohomology("Mag", cap)
    non = nonsigma_soul_cohomology("uMag", cap)
    bad = []
    if len(sym.h) < 2 or sym.h[1] != 1 or not sym.reliable[1]:
        bad.append(f"symmetric Mag soul H^1 = {sym.h[1:2]}, expected 1")
    if not _reliable_zero(non):
        bad.append(f"non-symmetric uMag soul cohomology {non.h}")
    return _result(4, f"Mag soul H^1 = 1 and non-symmetric uMag soul acyclic, cap {cap}", bad,
                   mag={"dims": sym.dims, "h": sym.h, "reliable": sym.reliable},
                   umag={"dims": non.dims, "h": non.h, "reliable": non.reliable})


def criterion_5(cap: int = 4) -> CheckResult:
    from .liecplx import bracket_sigma, catalog_chi, check_associative, chi_symmetric, presentation_chi
    from .operads.catalog import CATALOG_NAMES
    from .operads.free import prelie_presentation

    bad, checked = [], {}
    for name in CATALOG_NAMES:
        if name == "preLie":
            # no stored dual: P! comes from the annihilator of the presentation
            T, chi = presentation_chi(prelie_presentation(), cap)
        else:
            T, chi = catalog_chi(name, cap)
        if T.symmetric:
            sq = bracket_sigma(chi, chi)
            nz = {m: v for m, v in sq.comps.items() if v}
            if not chi_symmetric(chi):
                bad.append(f"{name}: χτ != χ")
            if nz:
                bad.append(f"{name}: [χ,χ] has support in arities {sorted(nz)}")
            checked[name] = "symmetric"
        else:
            res = check_associative(chi)
            if res:
                bad.append(f"{name}: χ∘_1χ - χ∘_2χ = {res}")
            checked[name] = "non-symmetric"
    return _result(5, "canonical element symmetric with vanishing self-bracket", bad, checked=checked)


def criterion_6() -> CheckResult:
    from .cupnat import zp_solve

    want = {("Ass", n): factorial(n) for n in range(1, 5)}
    want.update({(p, n): factorial(n - 1) for p in ("Com", "Lie") for n in range(1, 5)})
    want[("D", 2)] = 4
    got, bad = {}, []
    for (p, n), w in want.items():
        got[(p, n)] = len(zp_solve(p, n))
        if got[(p, n)] != w:
            bad.append(f"dim Z_{p}({n}) = {got[(p, n)]}, expected {w}")
    for n in range(1, 5):
        if got[("Com", n)] != got[("Lie", n)]:
            bad.append(f"dim Z_Com({n}) != dim Z_Lie({n})")
    return _result(6, "dimensions of the cup-product spaces Z_P(n)", bad,
                   dims={f"{p}({n})": d for (p, n), d in sorted(got.items())})


def criterion_7(cap: int = 6) -> CheckResult:
    from .permcplx import block_table, grade

    bad = []
    for m in range(1, cap):
        for s in all_perms(m):
            g0 = grade(s)
            for i in range(m + 2):
                g1 = grade(doubling(s, i))
                if g1.g != g0.g + 1 or g1.primitive != g0.primitive:
                    bad.append(f"d_{i}{s}: grade {g0.g} -> {g1.g}, block {g0.primitive} -> {g1.primitive}")
    # block_table builds each block as a subcomplex and raises if δ leaves it
    rows = block_table(cap)
    for r in rows:
        if r["sizes"] != r["expected_sizes"]:
            bad.append(f"block {r['kappa']}: sizes {r['sizes']} != {r['expected_sizes']}")
        if any(h for h, ok in zip(r["h"], r["reliable"]) if ok):
            bad.append(f"block {r['kappa']}: cohomology {r['h']}")
    return _result(7, f"grading, block sizes and blockwise acyclicity of the permutation complex, m <= {cap}",
                   bad, blocks=len(rows))


def criterion_8(cap: int = 5) -> CheckResult:
    from .permcplx import oracle_mismatches

    bad = oracle_mismatches(cap)
    return _result(8, f"permutation differential equals the algebraic Ass soul differential, m <= {cap}", bad)


def criterion_9(cap: int = 5, seed: int = 0, samples: int = 3) -> CheckResult:
    """d_P² on random cochains of random algebras, the classical cup, and δ(∘) = -2χ."""
    from .cochain import (classical_cup, cup_act, d_P, delta_of_circle_is_chi, diagonal_element,
                          dual_numbers, embed_map, random_algebra)

    rng = random.Random(seed)
    bad, sampled = [], []
    for op in ("Ass", "Com", "Lie", "Sym", "D"):
        for dim in (2, 3):
            if op in ("Ass", "D") and dim == 3:
                continue  # arity-5 cochains of these are too large for a minutes-scale check
            A = random_algebra(op, dim, rng, cap)
            sampled.append(f"{op}/{dim}")
            for m in range(1, cap - 1):
                for _ in range(samples):
                    f = _random_cochain(A, m, rng)
                    r = d_P(A, d_P(A, f, m), m + 1)
                    if r:
                        bad.append(f"{op} dim {dim}: d_P^2 != 0 on an arity-{m} cochain")
    A = dual_numbers("Ass", cap)
    d = A.dim
    f = {(j, (i,)): rng.randint(-3, 3) for j in range(d) for i in range(d)}
    g = {(j, (i,)): rng.randint(-3, 3) for j in range(d) for i in range(d)}
    lhs = cup_act(A, diagonal_element(A), 2, [(embed_map(A, f, 1), 1), (embed_map(A, g, 1), 1)])
    rhs = embed_map(A, classical_cup(A, f, 1, g, 1), 2)
    if lhs != rhs:
        bad.append("diagonal cup on C^0 ⊗ C^0 differs from f(a)·g(b)")
    residuals = delta_of_circle_is_chi(dual_numbers("Ass", 4))
    bad += residuals
    return _result(9, f"d_P^2 = 0 at cap {cap}, classical cup, δ_P(∘) proportional to χ", bad,
                   algebras=sampled, samples_per_arity=samples, seed=seed,
                   delta_circle_residuals=len(residuals))


def _random_cochain(A, m, rng):
    from .cochain import basis_cochains
    from .exactlin.linalg import vadd

    out = {}
    for b in basis_cochains(A, m):
        c = rng.randint(-2, 2)
        if c:
            vadd(out, b, c)
    return out


def criterion_10(cap: int = 5) -> CheckResult:
    from .cupnat import lin_sigma_dim, module_endo_space, sym_b1_fixture

    bad, dims = [], {}
    for name in ("Ass", "Com", "Lie", "Sym", "D"):
        dims[name] = len(module_endo_space(name, cap))
        if dims[name] != 1:
            bad.append(f"End of {name}! as a module over itself has dim {dims[name]}")
    fx = sym_b1_fixture()
    if fx["h"] != [1, 1] or fx["axiom_errors"]:
        bad.append(f"Sym fixture cohomology {fx['h']}, axiom errors {fx['axiom_errors']}")
    b0 = lin_sigma_dim("Sym", cap)
    if b0 != 2:
        bad.append(f"dim B^0_Sym(1) = {b0}, expected 2")
    return _result(10, "unary operations: module endomorphisms, Sym fixture, B^0_Sym(1)", bad,
                   module_endo_dims=dims, sym_fixture_h=fx["h"], b0_sym=b0)


def criterion_11(max_degree: int = 3) -> CheckResult:
    from .cochain import check_mn_algebra, diagonal_element, dual_numbers, induced_products

    A = dual_numbers("Ass", max_degree + 2)
    H = induced_products(A, diagonal_element(A), max_degree)
    fails = check_mn_algebra(H, 1, 0)
    bad = [f"axiom ({k}): {w}" for k, ws in fails.items() for w in ws[:3]]
    return _result(11, f"cup and bracket on H*(k[ε]) form a (1,0)-algebra, degrees <= {max_degree}", bad,
                   degrees=H.degrees, pairs_cup=len(H.cup), pairs_bracket=len(H.bracket))


def criterion_12(cap: int = 4) -> CheckResult:
    from .cupnat import h0_binary_evidence

    r = h0_binary_evidence("Lie", cap)
    bad = []
    if r["restricted_dim"] != 1:
        bad.append(f"closed binary degree-0 operations have dim {r['restricted_dim']}")
    if not r["bracket_in_span"]:
        bad.append("intrinsic bracket not in the solution span")
    if r["transposition_eigenvalue"] != -1:
        bad.append(f"transposition eigenvalue {r['transposition_eigenvalue']}, expected -1")
    keep = ("unknowns", "closed_dim_raw", "full_dim", "restricted_dim", "bracket_in_span",
            "transposition_eigenvalue", "caveat")
    return _result(12, f"H^0 of binary natural operations for Lie, truncated at arity {cap}", bad,
                   **{k: r[k] for k in keep}, imposed=[list(c) for c in r["imposed"]])


CRITERIA: Dict[int, Callable[..., CheckResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6,
    7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10, 11: criterion_11, 12: criterion_12,
}

# the ones that finish in seconds
QUICK = (2, 4, 5, 6, 8, 10, 11)


def run(numbers=None) -> List[CheckResult]:
    return [CRITERIA[k]() for k in (numbers or sorted(CRITERIA))]
