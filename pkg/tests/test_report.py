import pytest

from trisparse.errors import NotClosedError
from trisparse.report import EXIT_PRECONDITION, RunReport, file_digest, format_value


def test_format_value():
    assert format_value(True) == 'true'
    assert format_value(None) == 'none'
    assert format_value('a\nb') == 'a b'
    assert format_value(3) == '3'


def test_render_order():
    report = RunReport('info', file_digest(b''))
    report.add('n', 1)
    report.extend([('v', 2), ('closed', False)], prefix='in_')
    assert report.render() == (
        "command=info\n"
        "digest=e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855\n"
        "n=1\nin_v=2\nin_closed=false\nexit=0\n")
    assert report.get('in_v') == '2'
    assert report.get('missing') is None


def test_duplicate_keys():
    report = RunReport('info', 'none')
    report.add('n', 1)
    with pytest.raises(KeyError):
        report.add('n', 2)
    with pytest.raises(KeyError):
        report.add('exit', 0)


def test_failure_keeps_metrics():
    report = RunReport('heegaard', 'none')
    report.add('n', 2)
    report.fail(EXIT_PRECONDITION, NotClosedError("face (0, 2) is unglued"))
    lines = report.render().splitlines()
    assert lines[2] == 'n=2'
    assert lines[3].startswith('error=NotClosedError: ')
    assert lines[-1] == 'exit=2'
