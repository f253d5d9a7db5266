import orjson

from app.models.schemas import (
    Caps,
    CertificateReport,
    CertificateResult,
    Command,
    IterationLevel,
    IterationRunReport,
    OutputFormat,
    PropertyName,
    RunConfig,
    SequenceReport,
    Witness,
)
from app.services.report_renderer import ReportRenderer, strip_timing


def config(command=Command.GENERATE, **options) -> RunConfig:
    return RunConfig(command=command, caps=Caps.from_settings(), **options)


def sequence_report(terms, rows=None) -> SequenceReport:
    return SequenceReport(config=config(family="catalan"), tool_version="1.0.0",
                          name="catalan", terms=terms, rows=rows)


def cert_report() -> CertificateReport:
    return CertificateReport(
        config=config(Command.CHECK, family="catalan"),
        tool_version="1.0.0",
        property=PropertyName.TP2,
        matrix_size=3,
        minor_order=2,
        result=CertificateResult.FAIL,
        witness=Witness(rows=[0, 1], cols=[1, 2], value=[-1, 2], matrix="hankel"),
        statement="Hankel matrix of order 2 is not TP2",
    )


renderer = ReportRenderer(app_name="moments")


def test_numeric_terms_on_one_line():
    report = sequence_report([[1], [1], [2], [5], [14], [42]])
    assert renderer.render(report, OutputFormat.TEXT) == "1 1 2 5 14 42\n"


def test_polynomial_terms_one_array_per_line():
    report = sequence_report([[1], [1, 1], [1, 4, 1]])
    assert renderer.render(report, OutputFormat.TEXT) == "[1]\n[1,1]\n[1,4,1]\n"


def test_triangle_rows_text():
    report = sequence_report([], rows=[[[1]], [[1], [1]], [[1], [2], [1]]])
    assert renderer.render(report, OutputFormat.TEXT) == "1\n1  1\n1  2  1\n"


def test_terms_csv():
    report = sequence_report([[1], [0, 2]])
    assert renderer.render(report, OutputFormat.CSV) == 'index,value\n0,[1]\n1,"[0,2]"\n'


def test_certificate_csv_row():
    lines = renderer.render(cert_report(), OutputFormat.CSV).splitlines()
    assert lines[0].startswith("check_id,property,result,matrix_size")
    assert lines[1].startswith("TP2,TP2,fail,3,2,,false,,,")
    assert '"[-1,2]"' in lines[1]


def test_certificate_text_witness():
    text = renderer.render(cert_report(), OutputFormat.TEXT)
    assert text.startswith("moments 1.0.0\nTP2: FAIL\n")
    assert "witness: matrix=hankel rows=[0, 1] cols=[1, 2] value=-1 + 2*q" in text


def test_json_is_sorted_and_stable():
    first = renderer.render(cert_report(), OutputFormat.JSON)
    assert first == renderer.render(cert_report(), OutputFormat.JSON)
    data = orjson.loads(first)
    assert list(data) == sorted(data)
    assert data["config"]["command"] == "check"


def test_iteration_text_marks_truncation():
    level = IterationLevel(level=1, length=4, terms=[[1], [2]], nonnegative=True, positive=True, truncated=True)
    report = IterationRunReport(
        config=config(Command.ITERATE, family="catalan"), tool_version="1.0.0",
        depth=1, terms=6, levels=[level], result=CertificateResult.PASS, statement="ok",
    )
    assert "level 1 (4 terms): 1, 2, ..." in renderer.render(report, OutputFormat.TEXT)


def test_strip_timing():
    data = {"elapsed_ms": 3, "checks": [{"check_id": "sm", "wall_time_ms": 1}], "r": 2}
    assert strip_timing(data) == {"checks": [{"check_id": "sm"}], "r": 2}
