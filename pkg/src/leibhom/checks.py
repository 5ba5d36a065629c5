"""Structural checks for h(p,q), each returning TheoremCheck records.

Every check states the expected value literally.  Where the literal
statement fails, the record carries the computed relation in ``note``
so the report shows what does hold.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import build_h, build_so, build_translations, check_ideal_and_quotient, restricted
from .cohomology import (DEFAULT_SEED, CohomologyReport, TheoremCheck, cochain_terms,
                         cohomology_dims, extend_product_class, graded_product, hl_dims,
                         hr_dims, is_coboundary, is_cocycle, leibniz_adjoint, lie_betti,
                         predicted_hl_dimension, product_cochain)
from .complexes import CEComplex, LieHomologyComplex, SubComplex
from .invariants import (CHAIN_KIND, HOM_KIND, expected_invariant_dims, extend_to_h,
                         invariant_dims_table, invariant_subspace, make_named,
                         named_span_matches, scalar_class_cochain, translation_action)
from .linalg import EXACT, PROBABILISTIC
from .multilinear import (WEDGE, Cochain, MultiBasis, action_on_chain, induced_action_on_hom,
                          psi, psi_inverse)


def _check(name, expected, got, note: str = "") -> TheoremCheck:
    return TheoremCheck(name, expected, got, expected == got, note)


def _tag(p: int, q: int) -> str:
    return f"h({p},{q})"


# structure -----------------------------------------------------------------

def structure_checks(p: int, q: int) -> list[TheoremCheck]:
    n = p + q
    h, so = build_h(p, q), build_so(p, q)
    rep = check_ideal_and_quotient(h, so, strict=False)
    return [
        _check(f"antisymmetry {_tag(p, q)}", True, h.is_antisymmetric()),
        _check(f"jacobi {_tag(p, q)}", [], [list(map(str, (h.labels[a] for a in t)))
                                             for t in h.jacobi_violations()]),
        _check(f"dim so({p},{q})", n * (n - 1) // 2, so.dim),
        _check(f"ideal and quotient {_tag(p, q)}", True, rep.passed,
               "" if rep.passed else f"counterexample {rep.counterexample}"),
    ]


# invariants ----------------------------------------------------------------

def wedge_invariant_checks(p: int, q: int) -> list[TheoremCheck]:
    n = p + q
    on_I, _, _ = translation_action(p, q, "so")
    got = [len(invariant_subspace(on_I, MultiBasis(n, WEDGE, k))) for k in range(n + 1)]
    expected = [1 if k in (0, n) else 0 for k in range(n + 1)]
    return [_check(f"invariants of wedge^k I_n, {_tag(p, q)}", expected, got)]


def invariant_table_checks(p: int, q: int) -> list[TheoremCheck]:
    n = p + q
    table = invariant_dims_table(p, q)
    expected = expected_invariant_dims(n)
    out = [_check(f"invariants of wedge^k I_n (x) h, {_tag(p, q)}", expected, table["chain"]),
           _check(f"invariants of Hom(wedge^k I_n, h), {_tag(p, q)}", expected, table["hom"])]
    for kind in (CHAIN_KIND, HOM_KIND):
        spans = [k for k in range(1, n) if expected[k] and not named_span_matches(p, q, k, kind)]
        out.append(_check(f"named {kind} classes span the invariants, {_tag(p, q)}", [], spans))
    return out


def psi_basis_checks(p: int, q: int) -> list[TheoremCheck]:
    """psi is a bijection and so(p,q)-equivariant on every basis element, k = 0..n."""
    n = p + q
    h = build_h(p, q)
    on_I, on_h, so = translation_action(p, q, "so")
    bij_bad, eq_bad = [], []
    for k in range(n + 1):
        dom = MultiBasis(n, WEDGE, k)
        for z in dom.elements:
            for m in range(h.dim):
                f = Cochain(dom, h.dim, {z: {m: 1}})
                if psi_inverse(psi(f, p), p) != f or psi(psi_inverse(f, p), p) != f:
                    bij_bad.append((k, z, m))
                for g in range(so.dim):
                    lhs = psi(induced_action_on_hom(on_h, on_I, g, f), p)
                    rhs = action_on_chain(on_I, on_h, g, psi(f, p))
                    if lhs != rhs:
                        eq_bad.append((k, z, m, str(so.labels[g])))
    return [_check(f"psi bijective, {_tag(p, q)}", [], bij_bad[:3]),
            _check(f"psi equivariant, {_tag(p, q)}", [], eq_bad[:3])]


def _ratio(a: Cochain, b: Cochain):
    r = a.proportionality(b)
    return None if r is None else Fraction(r)


def psi_named_checks(p: int, q: int) -> list[TheoremCheck]:
    """psi(x) = x_pq for x in I, rho, beta, gamma; ``got`` is the scalar c with psi(x) = c x_pq."""
    out = []
    for nm in ("I", "rho", "beta", "gamma"):
        image = psi(make_named(nm, p, q).realization, p)
        target = make_named(nm + "_pq", p, q).realization
        c = _ratio(image, target)
        note = ""
        if c != 1:
            note = f"psi({nm}) = {c} * {nm}_pq" if c is not None else f"psi({nm}) not proportional to {nm}_pq"
        out.append(_check(f"psi({nm}) = {nm}_pq, {_tag(p, q)}", 1, c, note))
    return out


# differentials on the invariant complexes ------------------------------------

def _translation_complexes(p: int, q: int):
    h, I = build_h(p, q), build_translations(p, q)
    rep = restricted(I, h)
    return CEComplex(I, rep, f"CE(I_n; h) {_tag(p, q)}"), LieHomologyComplex(I, rep, f"C(I_n; h) {_tag(p, q)}")


def _relation(cx, source: str, target: str, p: int, q: int):
    """c with d(source) = c * target, 0 when d(source) = 0, None if not proportional."""
    src = make_named(source, p, q).realization
    image = cx.apply(cochain_terms(src))
    if not image:
        return 0
    tgt = cochain_terms(make_named(target, p, q).realization)
    if set(image) != set(tgt):
        return None
    key = min(tgt)
    c = Fraction(image[key]) / Fraction(tgt[key])
    return c if all(image[k] == c * tgt[k] for k in tgt) else None


def delta_checks(p: int, q: int) -> list[TheoremCheck]:
    n = p + q
    ce, ho = _translation_complexes(p, q)
    dgamma = _relation(ce, "gamma", "beta", p, q)
    dbeta = _relation(ce, "beta", "gamma", p, q)
    drho = _relation(ho, "rho_pq", "I_pq", p, q)
    out = [
        _check(f"dI = 0, {_tag(p, q)}", 0, _relation(ce, "I", "I", p, q)),
        _check(f"drho = 0, {_tag(p, q)}", 0, _relation(ce, "rho", "rho", p, q)),
        _check(f"dgamma = 0, {_tag(p, q)}", 0, dgamma,
               "" if dgamma == 0 else f"dgamma = {dgamma} * beta"),
        _check(f"dbeta = (-1)^(n-1) (n-1) gamma, {_tag(p, q)}", (-1) ** (n - 1) * (n - 1), dbeta,
               "" if dbeta != 0 else "dbeta = 0; beta and gamma differ in degree by one, "
                                     "so dbeta cannot be a multiple of gamma"),
        _check(f"boundary I_pq = 0, {_tag(p, q)}", 0, _relation(ho, "I_pq", "I_pq", p, q)),
        _check(f"boundary rho_pq = I_pq, {_tag(p, q)}", 1, drho,
               "" if drho == 1 else f"boundary rho_pq = {drho} * I_pq"),
        _check(f"boundary beta_pq = 0, {_tag(p, q)}", 0, _relation(ho, "beta_pq", "beta_pq", p, q)),
        _check(f"boundary gamma_pq = 0, {_tag(p, q)}", 0, _relation(ho, "gamma_pq", "gamma_pq", p, q)),
    ]
    return out


# Lie cohomology ---------------------------------------------------------------

def lie_betti_checks(p: int, q: int, mode: str | None = None) -> tuple[list[TheoremCheck], list[int]]:
    n = p + q
    so_b = lie_betti(build_so(p, q), mode=mode)
    h_b = lie_betti(build_h(p, q), mode=mode)
    expected = graded_product(so_b, [1] + [0] * (n - 1) + [1])
    return [_check(f"H*(h;R) = H*(so;R) (x) (1 + t^{n}), {_tag(p, q)}", expected, h_b,
                   f"so Betti numbers {so_b}")], so_b


def invariant_homology_checks(p: int, q: int) -> list[TheoremCheck]:
    """Homology of the so-invariant chains: degrees and representatives."""
    n = p + q
    _, ho = _translation_complexes(p, q)
    on_I, on_h, _ = translation_action(p, q, "so")
    bases = {k: [cochain_terms(c) for c in invariant_subspace(on_I, MultiBasis(n, WEDGE, k), on_h)]
             for k in range(n + 1)}
    sub = SubComplex(ho, bases, f"invariant chains {_tag(p, q)}")
    dims = cohomology_dims(sub, range(n + 1), EXACT).dims()
    expected = [1 if k in (n - 2, n - 1) else 0 for k in range(n + 1)]
    out = [_check(f"invariant homology degrees, {_tag(p, q)}", expected, dims)]
    for nm, k in (("gamma_pq", n - 2), ("beta_pq", n - 1)):
        c = cochain_terms(make_named(nm, p, q).realization)
        cycle = not ho.apply(c)
        boundary = _in_image(ho, k, c, bases)
        out.append(_check(f"{nm} represents the degree-{k} class, {_tag(p, q)}",
                          [True, False], [cycle, boundary]))
    return out


def _in_image(ho, k: int, c: dict, bases: dict) -> bool:
    from .linalg import SparseMatrix, solve
    images = [ho.apply(v) for v in bases.get(k + 1, [])]
    keys = sorted({key for v in images for key in v} | set(c))
    idx = {key: i for i, key in enumerate(keys)}
    A = SparseMatrix.from_columns(len(keys), [{idx[a]: x for a, x in v.items()} for v in images])
    return solve(A, {idx[a]: x for a, x in c.items()}, mode=EXACT) is not None


def relative_checks(p: int, q: int, so_betti: list[int], degrees=(0, 1),
                    mode: str | None = None) -> list[TheoremCheck]:
    return [hr_dims(p, q, m, so_betti, mode) for m in degrees]


# Leibniz cohomology --------------------------------------------------------

def leibniz_low_checks(p: int, q: int) -> tuple[list[TheoremCheck], CohomologyReport]:
    report = hl_dims(p, q, [0, 1, 2], EXACT)
    out = [_check(f"HL^k(h;h), k = 0..2, {_tag(p, q)}", [0, 1, 1], report.dims())]
    L = leibniz_adjoint(p, q)
    for nm, k in (("I", 1), ("rho", 2)):
        f = cochain_terms(extend_to_h(make_named(nm, p, q)))
        got = [is_cocycle(L, k, f), is_coboundary(L, k, f, EXACT).is_coboundary]
        out.append(_check(f"{nm} represents HL^{k}, {_tag(p, q)}", [True, False], got))
        report.representatives[f"HL^{k}"] = nm
    return out, report


def leibniz_degree3_check(p: int, q: int, mode: str | None = None,
                          seed: int = DEFAULT_SEED) -> tuple[TheoremCheck, CohomologyReport]:
    report = hl_dims(p, q, [3], mode, seed)
    d = report.degrees[0]
    return (_check(f"HL^3(h;h) = {predicted_hl_dimension(p, q, 3)}, {_tag(p, q)}",
                   predicted_hl_dimension(p, q, 3), d.cohomology, f"mode {d.mode}, field {report.field}"),
            report)


def product_class_checks(p: int, q: int, seed: int = DEFAULT_SEED,
                         extension: bool = True) -> list[TheoremCheck]:
    """The degree n, n+1 and 2n-1 product classes, literally and after completion."""
    n = p + q
    L = leibniz_adjoint(p, q)
    I = extend_to_h(make_named("I", p, q))
    rho = extend_to_h(make_named("rho", p, q))
    g = scalar_class_cochain(make_named("gamma*_pq", p, q))
    ig = product_cochain(I, g)
    out = []
    for name, f, k in (("I (x) gamma*_pq", ig, n), ("rho (x) gamma*_pq", product_cochain(rho, g), n + 1),
                       ("(I (x) gamma*_pq) (x) gamma*_pq", product_cochain(ig, g), 2 * n - 1)):
        terms = cochain_terms(f)
        cocycle = is_cocycle(L, k, terms)
        note = "" if cocycle else f"{len(L.apply(terms))} nonzero coefficients in its coboundary"
        out.append(_check(f"{name} is a degree-{k} cocycle, {_tag(p, q)}", True, cocycle, note))
        if k <= n + 1:
            if cocycle:
                v = is_coboundary(L, k, terms, PROBABILISTIC, seed)
                out.append(_check(f"{name} is not a coboundary, {_tag(p, q)}", False, v.is_coboundary,
                                  f"mode {v.mode}"))
            else:
                out.append(_check(f"{name} is not a coboundary, {_tag(p, q)}", False, None,
                                  "undefined: the cochain is not closed"))
    if extension:
        from .linalg import random_primes
        for u, k in (("I", n), ("rho", n + 1)):
            results = [extend_product_class(p, q, u, P, seed=seed)
                       for P in random_primes(2, seed=seed, congruent_one_mod=4)]
            got = [all(r.extendable for r in results), any(r.coboundary for r in results)]
            out.append(_check(f"{u} (x) gamma*_pq completes to a nonzero HL^{k} class, {_tag(p, q)}",
                              [True, False], got,
                              "completion by terms on other argument types, GF("
                              + "),GF(".join(str(r.prime) for r in results) + ")"))
    return out


# orchestration ---------------------------------------------------------------

def verify_paper(p: int, q: int, seed: int = DEFAULT_SEED, extension: bool = True) -> CohomologyReport:
    """Run every check for h(p,q) in a fixed order and collect them in one report."""
    n = p + q
    checks: list[TheoremCheck] = []
    checks += structure_checks(p, q)
    checks += wedge_invariant_checks(p, q)
    checks += invariant_table_checks(p, q)
    checks += psi_basis_checks(p, q)
    checks += psi_named_checks(p, q)
    checks += delta_checks(p, q)
    betti, so_b = lie_betti_checks(p, q)
    checks += betti
    if n == 4:
        checks += invariant_homology_checks(p, q)
        checks += relative_checks(p, q, so_b)
    low, report = leibniz_low_checks(p, q)
    checks += low
    c3, r3 = leibniz_degree3_check(p, q, seed=seed)
    checks.append(c3)
    report.degrees += r3.degrees
    checks += product_class_checks(p, q, seed, extension)
    report.complex = f"verify {_tag(p, q)}"
    report.field = "Q" if all(d.mode == EXACT for d in report.degrees) else f"Q,{r3.field}"
    report.theorem_checks = checks
    return report


def first_failure(report: CohomologyReport) -> TheoremCheck | None:
    return next((c for c in report.theorem_checks if not c.passed), None)
