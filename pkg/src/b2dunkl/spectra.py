"""Expansion of energy-eigenspace polynomials in the wavefunction basis,
exact coefficient tables for the conserved operators, and the closed-form
predictions those tables are checked against.

Every operator that commutes with the oscillator Hamiltonian maps the span
of one energy level into itself, so its action is a finite exact matrix per
total degree.  The computed tables come from applying the operator and
solving an exact linear system; the predicted tables are rational closed
forms in the tower index n and chain position j.  The two are compared
entry by entry elsewhere; here both sides are merely constructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .basis import (BasisLabel, energy, enumerate_basis, norm_ratio, psi,
                    seed_norm_rel)
from .linsolve import LinearSolver, NotInSpanError
from .operators import apply_named
from .params import Params
from .poly import MPoly
from .scalars import QI, format_rat

__all__ = [
    "NotInSpanError", "expand", "CoeffTable", "h0_table", "k_table",
    "j2_table", "norm_table", "predicted_h0", "predicted_k",
    "h0_shifted_expansion", "khat_expansion", "label_str", "parse_label",
    "adjudicate_mirror_diagonals", "MIRROR_DIAG_VARIANTS",
]


def label_str(label: BasisLabel) -> str:
    return f"{label.a},{label.b}"


def parse_label(text: str) -> BasisLabel:
    a, b = text.split(",")
    return BasisLabel(int(a), int(b))


# ---- expansion in one energy level ---------------------------------------


def _monomial_grid(degree: int) -> List[Tuple[int, int]]:
    """Monomial exponents reachable inside one energy level, graded order."""
    grid = []
    for d in range(degree, -1, -2):
        for a in range(d, -1, -1):
            grid.append((a, d - a))
    return grid


@lru_cache(maxsize=None)
def _level_solver(degree: int, params: Params):
    labels = enumerate_basis(degree)
    grid = _monomial_grid(degree)
    index = {exp: i for i, exp in enumerate(grid)}
    columns = [psi(lb, params) for lb in labels]
    rows = [[col.coefficient({"z": a, "zb": b}) for col in columns]
            for (a, b) in grid]
    return index, LinearSolver(rows)


def expand(p: MPoly, degree: int, params: Params) -> Dict[BasisLabel, QI]:
    """Exact coordinates of p in the basis of the given energy level.

    Raises NotInSpanError if p does not lie in the level (wrong parity,
    too high degree, or simply not an eigenspace element).
    """
    for v in p.vars:
        if v not in ("z", "zb"):
            raise ValueError(f"not a coordinate polynomial: contains {v!r}")
    index, solver = _level_solver(degree, params)
    rhs = [QI(0)] * len(index)
    zi = p.vars.index("z") if "z" in p.vars else -1
    zbi = p.vars.index("zb") if "zb" in p.vars else -1
    for exp, c in p.terms.items():
        key = (exp[zi] if zi >= 0 else 0, exp[zbi] if zbi >= 0 else 0)
        if key not in index:
            raise NotInSpanError(
                f"monomial z^{key[0]} zb^{key[1]} is outside the "
                f"degree-{degree} level")
        rhs[index[key]] = c
    coords = solver.solve(rhs)
    out: Dict[BasisLabel, QI] = {}
    for lb, c in zip(enumerate_basis(degree), coords):
        if c:
            out[lb] = c
    return out


# ---- cached operator actions on basis functions ---------------------------


@lru_cache(maxsize=None)
def h0_shifted_expansion(label: BasisLabel,
                         params: Params) -> Tuple[Tuple[BasisLabel, QI], ...]:
    """Expansion of (component-zero Hamiltonian - E/2) psi; diagonal-free."""
    f = psi(label, params)
    n = label.degree
    r = apply_named("Hhat_0", f, params) - Fraction(1, 2) * energy(n, params) * f
    return tuple(expand(r, n, params).items())


@lru_cache(maxsize=None)
def khat_expansion(label: BasisLabel,
                   params: Params) -> Tuple[Tuple[BasisLabel, QI], ...]:
    """Expansion of the quartic invariant applied to one basis function."""
    f = psi(label, params)
    r = apply_named("Khat", f, params)
    return tuple(expand(r, label.degree, params).items())


@lru_cache(maxsize=None)
def j2_expansion(label: BasisLabel,
                 params: Params) -> Tuple[Tuple[BasisLabel, QI], ...]:
    f = psi(label, params)
    r = apply_named("J2", f, params)
    return tuple(expand(r, label.degree, params).items())


# ---- coefficient tables ----------------------------------------------------


@dataclass
class CoeffTable:
    operator: str
    degree: int
    params: Params
    entries: Dict[BasisLabel, Dict[BasisLabel, QI]]

    def entry(self, source: BasisLabel, target: BasisLabel) -> QI:
        return self.entries.get(source, {}).get(target, QI(0))

    def to_json_dict(self) -> dict:
        return {
            "operator": self.operator,
            "degree": self.degree,
            "params": self.params.to_json_dict(),
            "basis": [label_str(lb) for lb in enumerate_basis(self.degree)],
            "entries": [
                {"source": label_str(src), "target": label_str(tgt),
                 "re": format_rat(c.re), "im": format_rat(c.im)}
                for src, row in self.entries.items()
                for tgt, c in row.items()
            ],
        }

    def to_csv_rows(self) -> List[List[str]]:
        rows = [["operator", "degree", "source", "target", "re", "im"]]
        for src, row in self.entries.items():
            for tgt, c in row.items():
                rows.append([self.operator, str(self.degree),
                             label_str(src), label_str(tgt),
                             format_rat(c.re), format_rat(c.im)])
        return rows


def _table(operator: str, degree: int, params: Params, expander) -> CoeffTable:
    params.require_generic(degree)
    entries: Dict[BasisLabel, Dict[BasisLabel, QI]] = {}
    for src in enumerate_basis(degree):
        entries[src] = dict(expander(src, params))
    return CoeffTable(operator, degree, params, entries)


def h0_table(degree: int, params: Params) -> CoeffTable:
    """Traceless action of the component-zero Hamiltonian on one level."""
    return _table("h0_shifted", degree, params, h0_shifted_expansion)


def k_table(degree: int, params: Params) -> CoeffTable:
    return _table("quartic", degree, params, khat_expansion)


def j2_table(degree: int, params: Params) -> CoeffTable:
    return _table("angular_squared", degree, params, j2_expansion)


def norm_table(degree: int, params: Params) -> dict:
    """Exact squared-norm ratios within one level (head label as unit)."""
    params.require_generic(degree)
    head = BasisLabel(degree, 0)
    rows = []
    for lb in enumerate_basis(degree):
        rows.append({
            "label": label_str(lb),
            "seed_norm_rel": format_rat(seed_norm_rel(lb, params)),
            "norm_ratio_to_head": format_rat(norm_ratio(lb, head, params)),
        })
    return {"degree": degree, "params": params.to_json_dict(),
            "head": label_str(head), "rows": rows}


# ---- predicted tables ------------------------------------------------------


def predicted_h0(label: BasisLabel,
                 params: Params) -> Dict[BasisLabel, Fraction]:
    """Closed-form prediction for the traceless level action.

    Entries are included only when the target stays inside the valid label
    set and the originating tower keeps a nonnegative index; boundary cases
    collapse onto the mirror entry instead.
    """
    if params.is_symbolic:
        raise ValueError("predictions need numeric parameters")
    fam, n, j = label.classify()
    k0, k1, w = params.k0, params.k1, params.w
    K = k0 + k1
    out: Dict[BasisLabel, Fraction] = {}
    if fam == "E0":
        if j >= 1:
            out[BasisLabel(4 * n + j + 1, j - 1)] = \
                w ** 2 * (n + K) / (2 * n + K)
        if n >= 1:
            out[BasisLabel(4 * n + j - 1, j + 1)] = \
                Fraction(j + 1) * (2 * n + 2 * k0 - 1) \
                * (4 * n + 2 * K + j) / (2 * (2 * n + K))
    elif fam == "E1":
        if j >= 1:
            out[BasisLabel(4 * n + j + 3, j - 1)] = \
                4 * w ** 2 * (n + 1) / (2 * n + K + 1)
        out[BasisLabel(4 * n + 1 + j, j + 1)] = \
            2 * (j + 1) * (2 * n + 2 * k1 + 1) * (4 * n + 2 * K + j + 2) \
            / (2 * n + K + 1)
    elif fam == "E3":
        if j >= 1:
            out[BasisLabel(j - 1, 4 * n + j + 1)] = \
                4 * w ** 2 * n / (2 * n + K)
        out[BasisLabel(j + 1, 4 * n + j - 1)] = \
            2 * Fraction(j + 1) * (2 * n + 2 * k1 - 1) * (4 * n + 2 * K + j) \
            / (2 * n + K)
    elif fam == "E2":
        if j >= 1:
            out[BasisLabel(j - 1, 4 * n + j + 3)] = \
                w ** 2 * (n + K + 1) / (2 * n + K + 1)
        if n >= 1:
            out[BasisLabel(j + 1, 4 * n + 1 + j)] = \
                Fraction(j + 1) * (2 * n + 2 * k0 + 1) \
                * (4 * n + 2 * K + j + 2) / (2 * (2 * n + K + 1))
    elif fam == "O1":
        if j >= 1:
            out[BasisLabel(4 * n + 2 + j, j - 1)] = \
                w ** 2 / (2 * n + K + 1)
        if n >= 1:
            out[BasisLabel(4 * n + j, j + 1)] = \
                Fraction(j + 1) * (4 * n + 2 * K + j + 1) / (2 * n + K)
        out[BasisLabel(j, 4 * n + 1 + j)] = w * (
            j * (2 * n + 2 * k0 + 1) / (2 * n + K + 1)
            + 2 * n * (j + 1) / (2 * n + K)
            - (2 * j + 2 * k1 + 1))
    elif fam == "O3":
        if j >= 1:
            out[BasisLabel(4 * n + 4 + j, j - 1)] = \
                4 * w ** 2 * (n + 1) * (n + K + 1) / (2 * n + K + 2)
        out[BasisLabel(4 * n + 2 + j, j + 1)] = \
            Fraction(j + 1) * (4 * n + 2 * K + j + 3) \
            * (2 * n + 2 * k0 + 1) * (2 * n + 2 * k1 + 1) / (2 * n + K + 1)
        out[BasisLabel(j, 4 * n + 3 + j)] = w * (
            -(j + 1) * (2 * n + 2 * k0 + 1) / (2 * n + K + 1)
            - 2 * j * (n + 1) / (2 * n + K + 2)
            + (2 * j + 2 * k1 + 1))
    else:   # O1R, O3R: mirror of the direct chain
        direct = predicted_h0(label.swap(), params)
        return {tgt.swap(): val for tgt, val in direct.items()}
    return out


# The two mirror-family diagonal coefficients of the quartic table carry a
# contested overall sign and frequency power.  Variants are written as
# (lead_sign, correction_sign, omega_power); the resolved choice below is the
# one reproduced exactly by the computed tables at several parameter triples
# (see adjudicate_mirror_diagonals).
MIRROR_DIAG_VARIANTS: Tuple[Tuple[int, int, int], ...] = (
    (1, -1, 2), (-1, -1, 2), (1, 1, 2), (-1, 1, 2),
    (1, -1, 1), (-1, -1, 1), (1, 1, 1), (-1, 1, 1),
)
_E1_DIAG_VARIANT = (1, -1, 2)
_E2_DIAG_VARIANT = (-1, -1, 2)


def _mirror_diag(n: int, j: int, params: Params, reversed_family: bool,
                 variant: Tuple[int, int, int]) -> Fraction:
    k0, k1, w = params.k0, params.k1, params.w
    K = k0 + k1
    lead_sign, corr_sign, wpow = variant
    shift = 1 if reversed_family else -1
    bracket = (2 * j + 1
               + (n + 1) * j * (j - 1) / (2 * n + K + 2)
               - n * (j + 1) * (j + 2) / (2 * n + K))
    return (lead_sign * 8 * w ** 2 * K
            + corr_sign * 8 * w ** wpow * (k0 - k1 + shift) * bracket)


def predicted_k(label: BasisLabel,
                params: Params) -> Dict[BasisLabel, Fraction]:
    """Closed-form prediction for the quartic-invariant level action."""
    if params.is_symbolic:
        raise ValueError("predictions need numeric parameters")
    fam, n, j = label.classify()
    k0, k1, w = params.k0, params.k1, params.w
    K = k0 + k1
    out: Dict[BasisLabel, Fraction] = {}
    if fam == "E0":
        if j >= 2:
            out[BasisLabel(4 * n + j + 2, j - 2)] = \
                16 * w ** 4 * (n + 1) * (n + K) \
                / ((2 * n + K) * (2 * n + K + 1))
        out[label] = -8 * w ** 2 * (k0 - k1) * (
            2 * j + (n + 1) * j * (j - 1) / (2 * n + K + 1)
            - n * (j + 1) * (j + 2) / (2 * n + K - 1))
        if n >= 1:
            out[BasisLabel(4 * n + j - 2, j + 2)] = \
                4 * (j + 1) * (j + 2) * (2 * n + 2 * k0 - 1) \
                * (2 * n + 2 * k1 - 1) * (4 * n + 2 * K + j - 1) \
                * (4 * n + 2 * K + j) \
                / ((2 * n + K - 1) * (2 * n + K))
    elif fam == "E1":
        if j >= 2:
            out[BasisLabel(4 * n + 4 + j, j - 2)] = \
                16 * w ** 4 * (n + 1) * (n + K + 1) \
                / ((2 * n + K + 2) * (2 * n + K + 1))
        out[label] = _mirror_diag(n, j, params, False, _E1_DIAG_VARIANT)
        if n >= 1:
            out[BasisLabel(4 * n + j, j + 2)] = \
                4 * (j + 1) * (j + 2) * (2 * n + 2 * k0 - 1) \
                * (2 * n + 2 * k1 + 1) * (4 * n + 2 * K + j + 2) \
                * (4 * n + 2 * K + j + 1) \
                / ((2 * n + K + 1) * (2 * n + K))
    elif fam == "E3":
        if j >= 2:
            out[BasisLabel(j - 2, 4 * n + j + 2)] = \
                16 * w ** 4 * n * (n + K + 1) \
                / ((2 * n + K) * (2 * n + K + 1))
        out[label] = -8 * w ** 2 * (k0 - k1) * (
            2 * j + 2 + n * j * (j - 1) / (2 * n + K + 1)
            - (n - 1) * (j + 1) * (j + 2) / (2 * n + K - 1))
        if n >= 2:
            out[BasisLabel(j + 2, 4 * n + j - 2)] = \
                4 * (j + 1) * (j + 2) * (2 * n + 2 * k0 - 1) \
                * (2 * n + 2 * k1 - 1) * (4 * n + 2 * K + j - 1) \
                * (4 * n + 2 * K + j) \
                / ((2 * n + K - 1) * (2 * n + K))
    elif fam == "E2":
        if j >= 2:
            out[BasisLabel(j - 2, 4 * n + 4 + j)] = \
                16 * w ** 4 * (n + 1) * (n + K + 1) \
                / ((2 * n + K + 2) * (2 * n + K + 1))
        out[label] = _mirror_diag(n, j, params, True, _E2_DIAG_VARIANT)
        if n >= 1:
            out[BasisLabel(j + 2, 4 * n + j)] = \
                4 * (j + 1) * (j + 2) * (2 * n + 2 * k0 + 1) \
                * (2 * n + 2 * k1 - 1) * (4 * n + 2 * K + j + 1) \
                * (4 * n + 2 * K + j + 2) \
                / ((2 * n + K + 1) * (2 * n + K))
    elif fam == "O1":
        if j >= 2:
            out[BasisLabel(4 * n + 3 + j, j - 2)] = \
                16 * w ** 4 * (n + 1) * (n + K + 1) \
                / ((2 * n + K + 2) * (2 * n + K + 1))
        if j >= 1:
            out[BasisLabel(j - 1, 4 * n + 2 + j)] = \
                -8 * w ** 3 * (k0 + k1) * (2 * n + K + j + 1) \
                / _poch3(2 * n + K)
        out[label] = -8 * w ** 2 * (k0 + k1) * (k0 - k1) \
            * (2 * n + K + j + 1) ** 2 \
            / ((2 * n + K) * (2 * n + K + 1))
        if n >= 1:
            out[BasisLabel(j + 1, 4 * n + j)] = \
                -8 * w * (k0 - k1) * (j + 1) * (2 * n + K + j + 1) \
                * (4 * n + 2 * K + j + 1) / _poch3(2 * n + K - 1)
            out[BasisLabel(4 * n - 1 + j, j + 2)] = \
                4 * (j + 1) * (j + 2) * (2 * n + 2 * k0 - 1) \
                * (2 * n + 2 * k1 - 1) * (4 * n + 2 * K + j + 1) \
                * (4 * n + 2 * K + j) \
                / ((2 * n + K - 1) * (2 * n + K))
    elif fam == "O3":
        if j >= 2:
            out[BasisLabel(4 * n + 5 + j, j - 2)] = \
                16 * w ** 4 * (n + 1) * (n + K + 1) \
                / ((2 * n + K + 2) * (2 * n + K + 3))
        if j >= 1:
            out[BasisLabel(j - 1, 4 * n + 4 + j)] = \
                -32 * w ** 3 * (k0 - k1) * (n + 1) * (2 * n + K + j + 2) \
                * (n + K + 1) / _poch3(2 * n + K + 1)
        out[label] = -8 * w ** 2 * (k0 + k1) * (k0 - k1) \
            * (2 * n + K + j + 2) ** 2 \
            / ((2 * n + K + 1) * (2 * n + K + 2))
        out[BasisLabel(j + 1, 4 * n + 2 + j)] = \
            -8 * w * (k0 + k1) * (2 * n + K + j + 2) \
            * (4 * n + 2 * K + j + 3) * (j + 1) * (2 * n + 2 * k0 + 1) \
            * (2 * n + 2 * k1 + 1) / _poch3(2 * n + K)
        if n >= 1:
            out[BasisLabel(4 * n + 1 + j, j + 2)] = \
                4 * (j + 1) * (j + 2) * (2 * n + 2 * k0 + 1) \
                * (2 * n + 2 * k1 + 1) * (4 * n + 2 * K + j + 2) \
                * (4 * n + 2 * K + j + 3) \
                / ((2 * n + K + 1) * (2 * n + K))
    else:   # O1R, O3R
        direct = predicted_k(label.swap(), params)
        return {tgt.swap(): val for tgt, val in direct.items()}
    return out


def _poch3(x: Fraction) -> Fraction:
    return x * (x + 1) * (x + 2)


def adjudicate_mirror_diagonals(params: Params, max_degree: int = 10):
    """Determine which variants of the contested mirror-family diagonal
    formulas reproduce the computed quartic table.

    Returns {"E1": set of matching variants, "E2": ...} where each variant
    is (lead_sign, correction_sign, omega_power); a variant survives only if
    it matches every diagonal entry of its family up to max_degree.
    """
    surviving = {"E1": set(MIRROR_DIAG_VARIANTS),
                 "E2": set(MIRROR_DIAG_VARIANTS)}
    for degree in range(max_degree + 1):
        for label in enumerate_basis(degree):
            fam, n, j = label.classify()
            if fam not in ("E1", "E2"):
                continue
            computed = dict(khat_expansion(label, params)).get(label, QI(0))
            for variant in list(surviving[fam]):
                pred = _mirror_diag(n, j, params, fam == "E2", variant)
                if computed != QI(pred):
                    surviving[fam].discard(variant)
    return surviving
