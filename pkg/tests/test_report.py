import csv
import xml.etree.ElementTree as ET

import pytest

from pentaconf.desing import DeformationOracle, t3_on_Xi
from pentaconf.polygon import iterate, random_polygon, regular_polygon, singularity_type
from pentaconf.projective import RandomSource, point
from pentaconf.render import pick_chart, svg_document
from pentaconf.report import write_report, x3_polygon

SVG = "{http://www.w3.org/2000/svg}"


def test_chart_avoids_points():
    pts = [point(1, 0, 0), point(0, 1, 0), point(1, 1, 1)]
    chart = pick_chart(pts)
    assert all(sum(a * b for a, b in zip(chart.w, p.coords)) != 0 for p in pts)
    assert chart.w != (0, 0, 1)
    assert chart(point(2, 4, 2)) == chart(point(1, 2, 1))


def test_svg_document_structure():
    polys = iterate(regular_polygon(7), 2)
    root = ET.fromstring(svg_document(polys, title="two & more", labels=True).split("\n", 2)[2])
    assert root.get("version") == "1.1"
    assert len(root.findall(f"{SVG}path")) == 3
    assert len(root.findall(f"{SVG}circle")) == 21
    assert root.find(f"{SVG}title").text == "two & more"


def test_svg_handles_twisted_polygons():
    A = random_polygon(8, src=RandomSource(3))
    text = svg_document(iterate(A, 1))
    assert text.count("<path") == 2 and "nan" not in text


def test_x3_figure_polygon():
    A = x3_polygon(9)
    assert singularity_type(A) == {3}
    assert t3_on_Xi(A).same_as(DeformationOracle(A, src=RandomSource(1)).iterate(3), sides=True)


@pytest.fixture(scope="module")
def report(tmp_path_factory):
    out = tmp_path_factory.mktemp("report")
    return out, write_report(out, seed=0)


def test_report_files(report):
    out, paths = report
    names = {p.name for p in paths}
    for stem in ("nested_iterates", "x3_construction", "confinement_steps"):
        assert {f"{stem}.png", f"{stem}.svg"} <= names
    assert {"confinement.csv", "vanishing.tsv", "fpoly_counts.csv", "conjecture_n8.csv"} <= names
    assert all(p.exists() and p.stat().st_size > 0 for p in paths)
    assert (out / "nested_iterates.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_report_tables(report):
    out, _ = report
    with (out / "confinement.csv").open() as fh:
        rows = list(csv.DictReader(fh))
    for r in rows:
        if r["predicted"]:
            assert r["predicted"] == r["observed"]
    with (out / "fpoly_counts.csv").open() as fh:
        counts = {int(r["k"]): r for r in csv.DictReader(fh)}
    assert counts[4]["monomials"] == "822" and counts[4]["asms"] == "42"
    with (out / "vanishing.tsv").open() as fh:
        statuses = {r["status"] for r in csv.DictReader(fh, delimiter="\t")}
    assert "zero" in statuses and "nonzero" in statuses
