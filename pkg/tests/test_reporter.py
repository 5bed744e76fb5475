from app.models.schemas import (
    CrosscheckReport,
    Discrepancy,
    EnumerationRow,
    FourCycleWitness,
    Method,
)
from app.services.reporter import Reporter


def _rows():
    return [
        EnumerationRow(p=(0, 0, 0, 0, 0, 0), acm=True, method=Method.CLOSED_FORM, condition="i"),
        EnumerationRow(
            p=(1, 0, 0, 0, 0, 1),
            acm=False,
            method=Method.CLOSED_FORM,
            witness=FourCycleWitness(i=1, j=1, l=1, m=1),
        ),
    ]


def _report(discrepancies=()):
    return CrosscheckReport(
        max_value=1,
        total=64,
        methods=[Method.CLOSED_FORM, Method.WITNESS, Method.REISNER],
        acm_count=40,
        discrepancies=list(discrepancies),
        skipped={"reisner": 3},
    )


def test_generate_census_writes_html(tmp_path):
    out = tmp_path / "census.html"
    path = Reporter().generate_census(_rows(), max_value=1, output_path=str(out))
    assert out.exists()
    contents = out.read_text()
    assert "2 vectors with entries &le; 1" in contents
    assert "1, 1, 1, 1" in contents
    assert path.endswith("census.html")


def test_census_counts_by_condition():
    html = Reporter().render_census(_rows(), max_value=1)
    assert "<td>i</td><td>1</td>" in html
    assert "<td>not ACM</td><td>1</td>" in html


def test_census_of_no_rows():
    assert "0 vectors" in Reporter().render_census([], max_value=0)


def test_crosscheck_without_discrepancies(tmp_path):
    out = tmp_path / "crosscheck.html"
    Reporter().generate_crosscheck(_report(), output_path=str(out))
    contents = out.read_text()
    assert "All methods agree." in contents
    assert "<td>reisner</td><td>3</td>" in contents
    assert "Discrepancies" not in contents


def test_crosscheck_lists_discrepancies():
    bad = Discrepancy(
        p=(1, 0, 0, 0, 0, 1),
        verdicts={"witness": False},
        errors={"closed_form": "matched no condition"},
    )
    html = Reporter().render_crosscheck(_report([bad]))
    assert "1 discrepancies." in html
    assert "1,0,0,0,0,1" in html
    assert "witness=not ACM" in html
    assert "closed_form: matched no condition" in html
