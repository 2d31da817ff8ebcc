"""Figures and tables for the ``report`` command."""
from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from . import confinement as cf  # noqa: E402
from . import fpoly as fp  # noqa: E402
from .desing import t3_on_Xi  # noqa: E402
from .polygon import TwistedPolygon, iterate, random_polygon_in_XS, regular_polygon  # noqa: E402
from .projective import ProjPoint, RandomSource, join, meet  # noqa: E402
from .render import PALETTE, pick_chart, plot_polygons, svg_document, trace_points  # noqa: E402

plt.rc("figure", figsize=(5, 5), dpi=120)
plt.rc("font", size=9)
plt.rc("axes", linewidth=0.6)


def _save(fig, out: Path, stem: str) -> list[Path]:
    paths = [out / f"{stem}.png", out / f"{stem}.svg"]
    for p in paths:
        fig.savefig(p, bbox_inches="tight")
    plt.close(fig)
    return paths


def nested_iterates(out: Path, n: int = 9, k: int = 3) -> list[Path]:
    polys = iterate(regular_polygon(n), k)
    fig, ax = plt.subplots()
    plot_polygons(ax, polys)
    ax.set_title(f"{k} pentagram iterates of a {n}-gon")
    paths = _save(fig, out, "nested_iterates")
    p = out / "nested_iterates_plain.svg"
    p.write_text(svg_document(polys, title=f"{k} pentagram iterates"))
    return paths + [p]


def x3_polygon(n: int = 9):
    """Regular n-gon with A_3 pulled onto the line A_1 A_5."""
    A = regular_polygon(n)
    V = list(A.base_vertices)
    V[3] = meet(join(V[1], V[5]), join(ProjPoint((0, 0, 1)), V[3]))
    return TwistedPolygon(V, degenerate=True)


def x3_construction(out: Path, n: int = 9) -> list[Path]:
    A = x3_polygon(n)
    D = t3_on_Xi(A)
    chart = pick_chart(trace_points([A, D]))
    fig, ax = plt.subplots()
    plot_polygons(ax, [A, D], chart)
    for i in A.indices:
        ax.annotate(str(i), chart(A.vertex(i)), fontsize=7, xytext=(3, 3), textcoords="offset points")
    pts = [chart(A.vertex(i)) for i in (1, 3, 5)]
    ax.plot([p[0] for p in pts], [p[1] for p in pts], "--", color="0.5", lw=0.8)
    ax.set_title(f"A in X_3 (n={n}) and its third iterate")
    return _save(fig, out, "x3_construction")


def confinement_rows(seed: int) -> list[dict]:
    cases = [("step2", m, 13) for m in (1, 2, 3)] + [("step1", m, 13) for m in (1, 3)]
    rows = []
    for kind, m, n in cases:
        spec = cf.parse_type_spec(f"{kind}:i=4,m={m}")
        A = random_polygon_in_XS(n, spec.members(n), RandomSource(seed, stream=f"report-{kind}{m}"))
        pred = cf.predict_confinement(cf.classify(spec.members(n), n))
        rows.append({"type": str(spec), "n": n, "m": m, "predicted": pred.first_regular_step,
                     "observed": cf.observed_first_regular_step(A, m + 4)})
    for S in ([3, 4, 6], [3, 4, 7, 8]):
        A = random_polygon_in_XS(12, S, RandomSource(seed, stream=f"report-{S}"))
        spec = cf.TypeSpec("set", elements=tuple(S))
        rows.append({"type": str(spec), "n": 12, "m": len(S), "predicted": "",
                     "observed": cf.observed_first_regular_step(A, 8)})
    return rows


def confinement_chart(out: Path, rows: list[dict]) -> list[Path]:
    fig, ax = plt.subplots(figsize=(6, 3.2))
    xs = range(len(rows))
    ax.bar([x - 0.2 for x in xs], [r["predicted"] or 0 for r in rows], 0.4, color=PALETTE[0], label="predicted")
    ax.bar([x + 0.2 for x in xs], [r["observed"] or 0 for r in rows], 0.4, color=PALETTE[1], label="observed")
    ax.set_xticks(list(xs))
    ax.set_xticklabels([f"{r['type']}\nn={r['n']}" for r in rows], rotation=30, ha="right", fontsize=7)
    ax.set_ylabel("first regular step")
    ax.legend(frameon=False)
    return _save(fig, out, "confinement_steps")


def _write_csv(path: Path, rows: list[dict], delimiter=","):
    with path.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), delimiter=delimiter)
        w.writeheader()
        w.writerows(rows)
    return path


def fpoly_rows(kmax: int = 5) -> list[dict]:
    rows = []
    for k in range(1, kmax + 1):
        F = fp.F_recursive(0, k)
        rows.append({"k": k, "monomials": len(F), "coefficient_sum": sum(c for _, c in F.monomials()),
                     "ideals_P": len(fp.ideals_P(k)),
                     "asms": len(fp.asm_list(k)) if k <= 5 else "", "ideals_Q": len(fp.ideals_Q(k))})
    return rows


def write_report(out: Path, seed: int = 0) -> list[Path]:
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    paths += nested_iterates(out)
    paths += x3_construction(out)
    rows = confinement_rows(seed)
    paths.append(_write_csv(out / "confinement.csv", rows))
    paths += confinement_chart(out, rows)
    S = [6, 10]  # y-indices of the type {3, 5}
    paths.append(_write_csv(out / "vanishing.tsv", cf.vanishing_report(S, range(-2, 18), range(1, 6)), "\t"))
    paths.append(_write_csv(out / "fpoly_counts.csv", fpoly_rows()))
    from .suites import conjecture_experiments
    res = conjecture_experiments(n=8, seed=seed)
    paths.append(_write_csv(out / "conjecture_n8.csv", [
        {k: r.get(k, "") for k in ("n", "S", "classification", "observed", "lasts", "within_n")} for r in res.rows]))
    return paths
