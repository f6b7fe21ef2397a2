"""Verification suites: batch re-derivations with pass/fail reporting.

Each suite recomputes one family of facts about the basis, the coefficient
tables or the operator algebra and reports a case per checked group, with
exact values quoted in the details.  Reports contain no timestamps or other
environment data, so a repeated run serializes to identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Sequence

from .basis import (BasisLabel, enumerate_basis, energy, group_action,
                    j2_eigenvalue, norm_ratio, psi, rho1_eigenvalue)
from .group import ALL_ELEMENTS, act, elem_name, rotation
from .kernel import IDENTITIES, IDENTITY_NAMES, prove_named
from .operators import apply_named
from .params import DEFAULT_PARAMS, EXTRA_PARAM_SETS, Params
from .poly import MPoly
from .scalars import QI, format_rat
from .spectra import (adjudicate_mirror_diagonals, expand,
                      h0_shifted_expansion, j2_expansion, khat_expansion,
                      label_str, predicted_h0, predicted_k,
                      _E1_DIAG_VARIANT, _E2_DIAG_VARIANT)
from .weighted import verify_weighted_conjugation


@dataclass(frozen=True)
class Case:
    name: str
    passed: bool
    detail: str = ""

    def to_json_dict(self) -> dict:
        return {"name": self.name,
                "status": "pass" if self.passed else "fail",
                "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    max_degree: int
    params: Params
    cases: List[Case]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "max_degree": self.max_degree,
            "params": self.params.to_json_dict(),
            "status": "pass" if self.passed else "fail",
            "cases": [c.to_json_dict() for c in self.cases],
        }


def _tally(name: str, bad: List[str], total: int, noun: str) -> Case:
    if not bad:
        return Case(name, True, f"{total} {noun} checked")
    head = "; ".join(bad[:3])
    more = f" (+{len(bad) - 3} more)" if len(bad) > 3 else ""
    return Case(name, False,
                f"{len(bad)}/{total} {noun} failed: {head}{more}")


# ---- individual suites -----------------------------------------------------


def _suite_eigen(params: Params, max_degree: int) -> List[Case]:
    cases = []
    for deg in range(max_degree + 1):
        e = energy(deg, params)
        bad = []
        for lb in enumerate_basis(deg):
            f = psi(lb, params)
            if apply_named("Hhat", f, params) != e * f:
                bad.append(label_str(lb))
        case = _tally(f"level-{deg:02d}", bad, deg + 1, "states")
        if case.passed:
            case = Case(case.name, True,
                        f"{deg + 1} states at energy {format_rat(e)}")
        cases.append(case)
    return cases


def _suite_j2(params: Params, max_degree: int) -> List[Case]:
    cases = []
    for deg in range(max_degree + 1):
        bad = []
        values = []
        for lb in enumerate_basis(deg):
            lam = j2_eigenvalue(lb, params)
            if lam not in values:
                values.append(lam)
            f = psi(lb, params)
            if apply_named("J2", f, params) != lam * f:
                bad.append(label_str(lb))
        case = _tally(f"level-{deg:02d}", bad, deg + 1, "states")
        if case.passed:
            shown = ", ".join(format_rat(v) for v in sorted(values))
            case = Case(case.name, True, f"eigenvalues {shown}")
        cases.append(case)
    return cases


def _suite_rho1(params: Params, max_degree: int) -> List[Case]:
    quarter = rotation(1)
    cases = []
    for deg in range(max_degree + 1):
        bad = []
        for lb in enumerate_basis(deg):
            f = psi(lb, params)
            if act(quarter, f) != rho1_eigenvalue(lb) * f:
                bad.append(label_str(lb))
        cases.append(_tally(f"level-{deg:02d}", bad, deg + 1, "states"))
    return cases


def _match_table(expansion, predicted, params: Params,
                 max_degree: int) -> Iterable[Case]:
    for deg in range(max_degree + 1):
        labels = enumerate_basis(deg)
        bad = []
        checked = 0
        for src in labels:
            got = dict(expansion(src, params))
            want = {t: QI(v) for t, v in predicted(src, params).items()}
            keys = sorted(set(got) | set(want))
            checked += len(keys)
            for t in keys:
                g, w = got.get(t, QI(0)), want.get(t, QI(0))
                if g != w:
                    bad.append(f"{label_str(src)}->{label_str(t)} "
                               f"computed {g} predicted {w}")
        yield _tally(f"table-level-{deg:02d}", bad, checked, "entries")


def _suite_h0(params: Params, max_degree: int) -> List[Case]:
    cases = list(_match_table(h0_shifted_expansion, predicted_h0,
                              params, max_degree))
    diag_bad: List[str] = []
    parity_bad: List[str] = []
    recon_bad: List[str] = []
    total = 0
    for deg in range(max_degree + 1):
        e_half = Fraction(1, 2) * energy(deg, params)
        for src in enumerate_basis(deg):
            total += 1
            row = dict(h0_shifted_expansion(src, params))
            if src in row:
                diag_bad.append(label_str(src))
            for t in row:
                if (src.b - t.b) % 2 == 0:
                    parity_bad.append(f"{label_str(src)}->{label_str(t)}")
            f = psi(src, params)
            other = apply_named("Hhat_2", f, params) - e_half * f
            want = {t: -c for t, c in row.items()}
            if expand(other, deg, params) != want:
                recon_bad.append(label_str(src))
    cases.append(_tally("shift-removes-diagonal", diag_bad, total, "states"))
    cases.append(_tally("entries-flip-chain-parity", parity_bad, total,
                        "states"))
    cases.append(_tally("opposite-component-reconstruction", recon_bad,
                        total, "states"))
    return cases


def _suite_k(params: Params, max_degree: int) -> List[Case]:
    cases = list(_match_table(khat_expansion, predicted_k,
                              params, max_degree))

    commute_bad: List[str] = []
    closed_bad: List[str] = []
    equiv_bad: List[str] = []
    total = 0
    w2 = params.omega() ** 2
    for deg in range(max_degree + 1):
        e = energy(deg, params)
        for src in enumerate_basis(deg):
            total += 1
            f = psi(src, params)
            kf = apply_named("Khat", f, params)
            if apply_named("Hhat", kf, params) != e * kf:
                commute_bad.append(label_str(src))
            hf = apply_named("Hhat", f, params)
            df = apply_named("Hhat_0", f, params) - Fraction(1, 2) * hf
            ddf = (apply_named("Hhat_0", df, params)
                   - Fraction(1, 2) * apply_named("Hhat", df, params))
            rhs = (Fraction(-1, 2) * apply_named("Hhat", hf, params)
                   + 2 * w2 * apply_named("J2", f, params)
                   + 2 * w2 * apply_named("R", f, params)
                   + 4 * ddf)
            if kf != rhs:
                closed_bad.append(label_str(src))
            row = dict(khat_expansion(src, params))
            for g in ALL_ELEMENTS:
                img, phase = group_action(g, src)
                lhs = {t: phase * c
                       for t, c in khat_expansion(img, params)}
                rhs_g: Dict[BasisLabel, QI] = {}
                for t, c in row.items():
                    timg, tphase = group_action(g, t)
                    rhs_g[timg] = c * tphase
                if lhs != rhs_g:
                    equiv_bad.append(f"{label_str(src)} under {elem_name(g)}")
    cases.append(_tally("hamiltonian-commutes", commute_bad, total,
                        "states"))
    cases.append(_tally("closed-form-on-basis", closed_bad, total, "states"))
    cases.append(_tally("group-equivariance", equiv_bad, 8 * total,
                        "actions"))

    z = MPoly.var("z")
    kz = apply_named("Khat", z, params)
    lam = -8 * w2 * (params.kappa(0) - params.kappa(1)) \
        * (params.kappa(0) + params.kappa(1) + 1)
    cases.append(Case("coordinate-eigenvector", kz == lam * z,
                      f"quartic action on z has eigenvalue "
                      f"{format_rat(lam)}"))

    triples = [params]
    for extra in EXTRA_PARAM_SETS:
        if extra not in triples:
            triples.append(extra)
    if DEFAULT_PARAMS not in triples:
        triples.append(DEFAULT_PARAMS)
    triples = triples[:3]
    adj_deg = min(max_degree, 8)
    verdicts = [adjudicate_mirror_diagonals(pr, adj_deg) for pr in triples]
    stable = all(v["E1"] == {_E1_DIAG_VARIANT} and
                 v["E2"] == {_E2_DIAG_VARIANT} for v in verdicts)
    shown = "; ".join(f"{pr.label()}: E1={sorted(v['E1'])} "
                      f"E2={sorted(v['E2'])}"
                      for pr, v in zip(triples, verdicts))
    cases.append(Case("contested-diagonal-adjudication", stable, shown))
    return cases


def _suite_cai(params: Params, max_degree: int) -> List[Case]:
    cases = []
    for table_name, expansion in (("h0_shifted", h0_shifted_expansion),
                                  ("quartic", khat_expansion)):
        bad: List[str] = []
        checked = 0
        for deg in range(max_degree + 1):
            labels = enumerate_basis(deg)
            rows = {lb: dict(expansion(lb, params)) for lb in labels}
            for j in labels:
                for k in labels:
                    checked += 1
                    cjk = rows[j].get(k, QI(0))
                    ckj = rows[k].get(j, QI(0))
                    if cjk != ckj.conj() * QI(norm_ratio(j, k, params)):
                        bad.append(f"{label_str(j)},{label_str(k)}")
        cases.append(_tally(f"norm-symmetry-{table_name}", bad, checked,
                            "pairs"))
    return cases


def _suite_kernel(params: Params, max_degree: int) -> List[Case]:
    cases = []
    for name in IDENTITY_NAMES:
        expected = IDENTITIES[name].provable
        res = prove_named(name)
        ok = res.proven == expected
        detail = res.status.lower()
        if not res.proven:
            detail += f" with witness on {len(res.residual.parts)} elements"
        detail += "" if expected == res.proven else " (unexpected)"
        cases.append(Case(name, ok, detail))
    return cases


def _suite_weighted_conjugation(params: Params, max_degree: int) -> List[Case]:
    cases = []
    for deg in range(max_degree + 1):
        bad = []
        for a in range(deg + 1):
            mono = MPoly(("z", "zb"), {(a, deg - a): 1})
            if not verify_weighted_conjugation(mono):
                bad.append(f"z^{a} zb^{deg - a}")
        case = _tally(f"degree-{deg:02d}", bad, deg + 1, "monomials")
        if case.passed:
            case = Case(case.name, True,
                        f"{deg + 1} monomials, couplings symbolic")
        cases.append(case)
    return cases


def _suite_superint(params: Params, max_degree: int) -> List[Case]:
    res = prove_named("angular-quartic")
    cases = [Case("formal-refutation", not res.proven,
                  f"{res.status.lower()} with witness on "
                  f"{len(res.residual.parts)} elements"
                  if not res.proven else res.status.lower())]

    witness = BasisLabel(6, 1)
    f = psi(witness, params)
    comm = (apply_named("J2", apply_named("Khat", f, params), params)
            - apply_named("Khat", apply_named("J2", f, params), params))
    coeffs = expand(comm, witness.degree, params)
    nonzero = not comm.is_zero()
    head = "; ".join(f"{label_str(t)}: {c}"
                     for t, c in list(coeffs.items())[:2])
    cases.append(Case("spectral-witness", nonzero,
                      f"commutator on state {label_str(witness)} expands "
                      f"to {len(coeffs)} terms ({head})" if nonzero
                      else "commutator vanished unexpectedly"))
    return cases


# ---- public runner ---------------------------------------------------------


SUITE_ORDER = ("eigen", "j2", "rho1", "h0", "k", "cai", "kernel",
               "appendixA", "superint")

_SUITES: Dict[str, Callable[[Params, int], List[Case]]] = {
    "eigen": _suite_eigen,
    "j2": _suite_j2,
    "rho1": _suite_rho1,
    "h0": _suite_h0,
    "k": _suite_k,
    "cai": _suite_cai,
    "kernel": _suite_kernel,
    "appendixA": _suite_weighted_conjugation,
    "superint": _suite_superint,
}


def run_suite(name: str, params: Params, max_degree: int) -> SuiteReport:
    try:
        fn = _SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; available: "
                       + ", ".join(SUITE_ORDER) + ", all") from None
    if params.is_symbolic:
        raise ValueError("verification suites need numeric parameters")
    params.require_generic(max_degree)
    return SuiteReport(name, max_degree, params, fn(params, max_degree))


def run_suites(names: Sequence[str], params: Params,
               max_degree: int) -> List[SuiteReport]:
    ordered = [n for n in SUITE_ORDER if n in names]
    unknown = [n for n in names if n not in SUITE_ORDER]
    if unknown:
        raise KeyError(f"unknown suite {unknown[0]!r}; available: "
                       + ", ".join(SUITE_ORDER) + ", all")
    return [run_suite(n, params, max_degree) for n in ordered]
