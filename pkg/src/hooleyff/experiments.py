"""Cancellation bounds, experiment drivers, and report output.

Bound formulas (all evaluated exactly as float powers of integers):

* main square-root cancellation bound for a trace function of rank r and
  conductor c mod g, over an interval of cardinality X = q^n:
      sqrt(q) * X^(1/2) * |g|^(log_q(2r + c))  ==  q^((n+1)/2) * (2r+c)^deg g
* mixed-character short-sum bound in terms of the T-degrees of the family
  data:  q^((n+1)/2) * max(deg_T F + 2 deg_T b + 2, 2 deg_T b + 2)^(deg g)
* variance error budget:  X^(1/2) * |P|^(-1/2 + 2 log_q(3(r+c)))
* covariance error budget:  q^((k - deg P)/2) * (3(r1+c1)(r2+c2))^(deg P)
* value-set (Mordell) error budget:
      X^(1/2) * (3 d!)^(deg pi) + d!^4 + d!^4 * X * |pi|^(-1/2)

Experiment drivers return (rows, summary) pairs; ``write_report`` persists
them as a CSV (12 significant digits, stable field order) plus a JSON summary
carrying the ``hooley-ff/report/v1`` schema tag.  Nothing time- or
path-dependent is written, so reruns are byte-identical.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .characters import AdditiveChar
from .errors import NTooLarge, RangeViolation, Validation, XNotPowerOfQ, XTooLarge
from .polyring import Poly, ResidueField, ResidueRing
from .tracefn import TraceFunction, tpoly_degree, value_set
from .transforms import Interval, autocorrelation, short_sum

REPORT_SCHEMA = "hooley-ff/report/v1"

#: above this ring size, sweeps sample centers instead of enumerating them
EXHAUSTIVE_CENTER_LIMIT = 729
SAMPLED_CENTERS = 64


def power_of_q(X: int, q: int) -> int:
    """The n with X = q^n, or XNotPowerOfQ."""
    if X >= 1:
        n = 0
        t = X
        while t % q == 0:
            t //= q
            n += 1
        if t == 1:
            return n
    raise XNotPowerOfQ(f"interval cardinality {X} is not a power of q = {q}")


def mainres_bound(X: int, ring: ResidueRing, rank_r: int, conductor_c: int) -> float:
    n = power_of_q(X, ring.field.q)
    q = ring.field.q
    return math.sqrt(q ** (n + 1)) * float(2 * rank_r + conductor_c) ** ring.m


def hooley_cor_bound(n: int, g: Poly, degT_F: int, degT_b: int) -> float:
    m = int(g.degree)
    if n > m:
        raise NTooLarge(f"interval height {n} exceeds deg g = {m}")
    q = g.field.q
    base = max(degT_F + 2 * degT_b + 2, 2 * degT_b + 2)
    return math.sqrt(q ** (n + 1)) * float(base) ** m


def variance_error_budget(X: int, P: Poly, rank_r: int, conductor_c: int) -> float:
    q = P.field.q
    power_of_q(X, q)
    dP = int(P.degree)
    return math.sqrt(X) * q ** (-dP / 2.0) * float(3 * (rank_r + conductor_c)) ** (2 * dP)


def covariance_error_budget(k: int, P: Poly, r1: int, c1: int,
                            r2: int, c2: int) -> float:
    q = P.field.q
    dP = int(P.degree)
    gamma = 3.0 * (r1 + c1) * (r2 + c2)
    return q ** ((k - dP) / 2.0) * gamma ** dP


def mordell_error_budget(X: int, pi: Poly, d: int) -> float:
    q = pi.field.q
    dpi = int(pi.degree)
    f = math.factorial(d)
    return (math.sqrt(X) * float(3 * f) ** dpi
            + float(f) ** 4
            + float(f) ** 4 * X * q ** (-dpi / 2.0))


# ------------------------------------------------------------- square phase


def square_phase_control(g: Poly, m_small: int) -> dict:
    """Sum of e(f^2/g) over deg f < m_small, in the no-cancellation range.

    Requires m_small < (deg g - 1)/2; there the sum equals q^m exactly, which
    beats the square-root reference q^((m+1)/2) as soon as m >= 2, so those
    rows are flagged as expected violations of square-root cancellation.
    """
    dg = int(g.degree)
    if not 0 <= m_small or not 2 * m_small < dg - 1:
        raise RangeViolation(
            f"height {m_small} is not below (deg g - 1)/2 = {(dg - 1) / 2}")
    field = g.field
    q = field.q
    add = AdditiveChar(field)
    total = 0j
    for idx in range(q ** m_small):
        coeffs = []
        t = idx
        for _ in range(m_small):
            t, c = divmod(t, q)
            coeffs.append(c)
        f = Poly(field, coeffs)
        total += add.zeta_pow[add.phase(f * f, g)]
    expected = float(q ** m_small)
    sqrt_reference = math.sqrt(q ** (m_small + 1))
    return {
        "g": str(g),
        "deg_g": dg,
        "m": m_small,
        "sum_re": total.real,
        "sum_im": total.imag,
        "abs_sum": abs(total),
        "expected": expected,
        "exact": bool(abs(total - expected) <= 1e-9 * max(1.0, expected)),
        "sqrt_reference": sqrt_reference,
        "expected_violation": bool(expected > sqrt_reference + 1e-9),
    }


def run_control(field, g_list: list[Poly]) -> tuple[list[dict], dict]:
    rows = []
    for g in g_list:
        dg = int(g.degree)
        for m in range(max(0, (dg - 2) // 2 + 1)):
            rows.append(square_phase_control(g, m))
    summary = {
        "rows": len(rows),
        "all_exact": all(r["exact"] for r in rows),
        "expected_violations": sum(r["expected_violation"] for r in rows),
    }
    return rows, summary


# -------------------------------------------------------------- short sweeps


def window_sums(t: TraceFunction, n: int) -> np.ndarray:
    """S[i] = sum over deg f < n of t(x_i + f), for every residue x_i.

    Adding the whole interval to a center permutes the low n coefficient
    slots and fixes the rest, so the window sum is constant on each
    contiguous block of q^n indices and equals that block's total.
    """
    ring = t.ring
    X = ring.field.q ** n
    blocks = t.values.reshape(ring.N // X, X).sum(axis=1)
    return np.repeat(blocks, X)


def pick_centers(ring: ResidueRing, seed: int,
                 count: int | None = None) -> np.ndarray:
    """Center indices: exhaustive for small rings, else a seeded sample."""
    if count is None:
        if ring.N <= EXHAUSTIVE_CENTER_LIMIT:
            return np.arange(ring.N, dtype=np.int64)
        count = SAMPLED_CENTERS
    if count >= ring.N:
        return np.arange(ring.N, dtype=np.int64)
    rng = np.random.default_rng(seed)
    return np.sort(rng.choice(ring.N, size=count, replace=False)).astype(np.int64)


def sweep_short_sums(t: TraceFunction, n_values, *, seed: int = 0,
                     centers: int | None = None,
                     cor_degrees: tuple[int, int] | None = None) -> tuple[list[dict], dict]:
    """Short sums over intervals vs the applicable cancellation bound.

    With ``cor_degrees = (deg_T F, deg_T b)`` the mixed-character bound is
    used; otherwise the main bound with the table's (rank, conductor)
    metadata.  Bounds are stated for centered intervals; translated rows are
    marked, the same bound being applied through the translation reduction.
    """
    ring = t.ring
    q = ring.field.q
    center_idx = pick_centers(ring, seed, centers)
    rows = []
    max_ratio = 0.0
    violations = 0
    for n in n_values:
        if not 0 <= n <= ring.m:
            raise NTooLarge(f"interval height {n} outside [0, {ring.m}]")
        if cor_degrees is not None:
            bound = hooley_cor_bound(n, ring.modulus, *cor_degrees)
            bound_kind = "mixed-char"
        else:
            bound = mainres_bound(q ** n, ring, t.rank_r, t.conductor_c)
            bound_kind = "main"
        S = window_sums(t, n)
        for ci in center_idx:
            s = complex(S[ci])
            ratio = abs(s) / bound if bound > 0 else math.inf
            ok = abs(s) <= bound + 1e-9
            if not ok:
                violations += 1
            max_ratio = max(max_ratio, ratio)
            rows.append({
                "modulus": str(ring.modulus),
                "family": t.family,
                "n": n,
                "center_index": int(ci),
                "center": str(ring.unrank(int(ci))),
                "translated": bool(ci != 0),
                "sum_re": s.real,
                "sum_im": s.imag,
                "abs_sum": abs(s),
                "bound_kind": bound_kind,
                "bound": bound,
                "ratio": ratio,
                "within_bound": ok,
            })
    summary = {
        "rows": len(rows),
        "violations": violations,
        "max_ratio": max_ratio,
        "backend_note": "bounds hold with the stated implied constants",
    }
    return rows, summary


# ---------------------------------------------------------- variance family


def variance_of(t: TraceFunction, k: int) -> float:
    """Normalized second moment of height-k window sums:
    (1/(N q^k)) * sum_x |S(x)|^2."""
    S = window_sums(t, k)
    q = t.ring.field.q
    return float(np.mean(np.abs(S) ** 2) / q ** k)


def variance_expansion(t: TraceFunction, k: int) -> complex:
    """sum over deg h < k of autocorrelation(t, t, h)."""
    return covariance_expansion(t, t, k)


def covariance_expansion(t1: TraceFunction, t2: TraceFunction, k: int) -> complex:
    ring = t1.ring
    total = 0j
    for j in range(ring.field.q ** k):
        total += autocorrelation(t1, t2, ring.unrank(j))
    return total


def run_variance(t: TraceFunction, k_values, *, budget_constant: float = 10.0,
                 rank_r: int | None = None,
                 conductor_c: int | None = None) -> tuple[list[dict], dict]:
    """Window-sum variance vs the main term 1 and its error budget.

    The budget uses the table's metadata unless overridden.  The expansion
    identity variance == sum of autocorrelations is checked on every row.
    """
    ring = t.ring
    q = ring.field.q
    r = t.rank_r if rank_r is None else rank_r
    c = t.conductor_c if conductor_c is None else conductor_c
    rows = []
    for k in k_values:
        if not 0 <= k <= ring.m:
            raise NTooLarge(f"window height {k} outside [0, {ring.m}]")
        X = q ** k
        var = variance_of(t, k)
        expansion = covariance_expansion(t, t, k)
        budget = budget_constant * variance_error_budget(X, ring.modulus, r, c)
        rows.append({
            "modulus": str(ring.modulus),
            "family": t.family,
            "k": k,
            "X": X,
            "variance": var,
            "expansion_re": expansion.real,
            "expansion_im": expansion.imag,
            "expansion_agrees": bool(abs(var - expansion) <= 1e-9 * max(1.0, var)),
            "main_term": 1.0,
            "deviation": abs(var - 1.0),
            "error_budget": budget,
            "within_budget": bool(abs(var - 1.0) <= budget + 1e-9),
        })
    summary = {
        "rows": len(rows),
        "all_expansions_agree": all(r_["expansion_agrees"] for r_ in rows),
        "all_within_budget": all(r_["within_budget"] for r_ in rows),
    }
    return rows, summary


def run_covariance(t1: TraceFunction, t2: TraceFunction, k_values, *,
                   main_indicator: bool,
                   budget_constant: float = 10.0) -> tuple[list[dict], dict]:
    """Covariance of window sums of two trace functions on one ring.

    Whether the main term 1 is expected is not decided here: correlation of
    the two families is the caller's knowledge and arrives as
    ``main_indicator``.
    """
    ring = t1.ring
    if ring != t2.ring:
        from .errors import RingMismatch
        raise RingMismatch("covariance of trace functions on different rings")
    q = ring.field.q
    main = 1.0 if main_indicator else 0.0
    rows = []
    for k in k_values:
        if not 0 <= k <= ring.m:
            raise NTooLarge(f"window height {k} outside [0, {ring.m}]")
        S1 = window_sums(t1, k)
        S2 = window_sums(t2, k)
        cov = complex(np.mean(S1 * np.conj(S2)) / q ** k)
        expansion = covariance_expansion(t1, t2, k)
        budget = budget_constant * covariance_error_budget(
            k, ring.modulus, t1.rank_r, t1.conductor_c, t2.rank_r, t2.conductor_c)
        rows.append({
            "modulus": str(ring.modulus),
            "family_1": t1.family,
            "family_2": t2.family,
            "k": k,
            "cov_re": cov.real,
            "cov_im": cov.imag,
            "expansion_re": expansion.real,
            "expansion_im": expansion.imag,
            "expansion_agrees": bool(abs(cov - expansion) <= 1e-9 * max(1.0, abs(cov))),
            "main_indicator": main_indicator,
            "deviation": abs(cov - main),
            "error_budget": budget,
            "within_budget": bool(abs(cov - main) <= budget + 1e-9),
        })
    summary = {
        "rows": len(rows),
        "all_expansions_agree": all(r_["expansion_agrees"] for r_ in rows),
        "all_within_budget": all(r_["within_budget"] for r_ in rows),
    }
    return rows, summary


# ------------------------------------------------------------------ Mordell


def run_mordell(P, rf: ResidueField, X_values, *,
                budget_constant: float = 10.0) -> tuple[list[dict], dict]:
    """Count value-set members in short initial intervals vs the density
    main term X * |VS| / |pi|."""
    members, indicator = value_set(P, rf)
    d = int(tpoly_degree(P))
    size = len(members)
    Q = rf.Q
    rows = []
    for X in X_values:
        power_of_q(X, rf.field.q)
        if X > Q:
            raise XTooLarge(f"interval cardinality {X} exceeds |pi| = {Q}")
        count = int(round(indicator.values[:X].real.sum()))
        main = X * size / Q
        budget = budget_constant * mordell_error_budget(X, rf.pi, d)
        rows.append({
            "P": indicator.family,
            "pi": str(rf.pi),
            "d": d,
            "value_set_size": size,
            "X": X,
            "count": count,
            "main_term": main,
            "deviation": abs(count - main),
            "error_budget": budget,
            "within_budget": bool(abs(count - main) <= budget + 1e-9),
            "ratio": abs(count - main) / budget if budget > 0 else 0.0,
        })
    summary = {
        "rows": len(rows),
        "all_within_budget": all(r_["within_budget"] for r_ in rows),
    }
    return rows, summary


# ------------------------------------------------------------ identity suite


def run_identity_suite(ring: ResidueRing, tables: int = 10, seed: int = 0,
                       centers: int = 5, char_cap: int = 512,
                       tol: float = 1e-9) -> tuple[list[dict], dict]:
    """Exact-identity battery on one ring: character orthogonality, Fourier
    inversion, Parseval, the double transform, and the restriction identity
    on pseudorandom tables."""
    import itertools

    from .characters import additive_char_table, all_characters
    from .transforms import (Interval, dft, inverse_dft, negate,
                             restriction_sum, short_sum)

    rows = []

    def record(check: str, cases: int, max_err: float) -> None:
        rows.append({"check": check, "cases": cases, "max_err": max_err,
                     "tol": tol, "passed": bool(max_err <= tol)})

    N = ring.N
    err = 0.0
    for j in range(N):
        tot = additive_char_table(ring, ring.unrank(j)).sum()
        err = max(err, abs(tot - (N if j == 0 else 0.0)))
    record("additive-orthogonality", N, err)

    phi = int(ring.unit_mask.sum())
    err = 0.0
    cases = 0
    for chi in itertools.islice(all_characters(ring), char_cap):
        tot = chi.table().sum()
        err = max(err, abs(tot - (phi if chi.is_principal else 0.0)))
        cases += 1
    record("multiplicative-orthogonality", cases, err)

    rng = np.random.default_rng(seed)
    err_inv = err_par = err_dd = err_res = 0.0
    res_cases = 0
    for _ in range(tables):
        vals = rng.uniform(-1, 1, N) + 1j * rng.uniform(-1, 1, N)
        t = TraceFunction(ring, vals)
        t_hat = dft(t)
        back = inverse_dft(t_hat)
        err_inv = max(err_inv, float(np.max(np.abs(back.values - t.values))))
        energy = N * float(np.sum(np.abs(t.values) ** 2))
        err_par = max(err_par, abs(float(np.sum(np.abs(t_hat.values) ** 2))
                                   - energy) / energy)
        dd = dft(t_hat)
        err_dd = max(err_dd, float(np.max(np.abs(
            dd.values - N * negate(t).values))) / N)
        for n in range(ring.m + 1):
            for ci in pick_centers(ring, seed, centers):
                iv = Interval(ring, n, ring.unrank(int(ci)))
                direct = short_sum(t, iv)
                via = restriction_sum(t_hat, iv)
                err_res = max(err_res, abs(direct - via))
                res_cases += 1
    record("fourier-inversion", tables, err_inv)
    record("parseval", tables, err_par)
    record("double-transform", tables, err_dd)
    record("restriction-identity", res_cases, err_res)

    summary = {"rows": len(rows), "all_pass": all(r_["passed"] for r_ in rows)}
    return rows, summary


# ------------------------------------------------------------ report output


def _fmt_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def write_report(outdir, name: str, rows: list[dict], summary: dict,
                 config_echo: dict | None = None,
                 gnuplot: str | None = None) -> dict:
    """Write <name>.csv and <name>.json under outdir; returns the file map.

    Cell formatting is fixed (12 significant digits for floats), the field
    order is taken from the first row, and the JSON is key-sorted, so a rerun
    with the same configuration reproduces the files byte for byte.
    """
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / f"{name}.csv"
    json_path = outdir / f"{name}.json"
    fieldnames = list(rows[0].keys()) if rows else []
    with csv_path.open("w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(fieldnames)
        for row in rows:
            wr.writerow([_fmt_cell(row[k]) for k in fieldnames])
    doc = {
        "schema": REPORT_SCHEMA,
        "experiment": name,
        "rows": len(rows),
        "summary": summary,
    }
    if config_echo is not None:
        doc["config"] = config_echo
    json_path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    out = {"csv": str(csv_path), "json": str(json_path)}
    if gnuplot is not None:
        gp_path = outdir / f"{name}.gnuplot"
        gp_path.write_text(gnuplot)
        out["gnuplot"] = str(gp_path)
    return out


def gnuplot_script(name: str, rows: list[dict]) -> str | None:
    """A plot of |sum| (or deviation) against the bound column, if present."""
    if not rows:
        return None
    cols = list(rows[0].keys())
    pairs = [("abs_sum", "bound"), ("deviation", "error_budget")]
    for ycol, bcol in pairs:
        if ycol in cols and bcol in cols:
            yi, bi = cols.index(ycol) + 1, cols.index(bcol) + 1
            return (
                "set datafile separator ','\n"
                f"set title '{name}'\n"
                "set key outside\n"
                "set logscale y\n"
                f"plot '{name}.csv' skip 1 using 0:{yi} with points title '{ycol}', \\\n"
                f"     '{name}.csv' skip 1 using 0:{bi} with lines title '{bcol}'\n")
    return None
