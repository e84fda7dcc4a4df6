import random
from pathlib import Path

import pytest

from trisparse import __version__
from trisparse.cli import create_parser, main, version_string
from trisparse.config import TestingConfig
from trisparse.report import file_digest


def run_cli(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr().out
    lines = out.splitlines()
    metrics = dict(line.split('=', 1) for line in lines)
    assert lines[-1] == f"exit={status}"
    return status, metrics, out


def test_info(capsys, tri_path):
    status, metrics, out = run_cli(capsys, 'info', tri_path('s3'))
    assert status == 0
    assert out.splitlines()[0] == 'command=info'
    assert metrics['digest'] == file_digest(Path(tri_path('s3')).read_bytes())
    assert (metrics['n'], metrics['v'], metrics['e'], metrics['f']) == ('1', '1', '2', '2')
    assert metrics['closed'] == 'true'
    assert metrics['valences'] == '1:1,5:1'
    assert metrics['orientable'] == 'true'
    assert metrics['check_euler'] == 'true'
    assert run_cli(capsys, 'info', tri_path('s3'))[2] == out


def test_info_on_open_triangulation(capsys, tri_path):
    status, metrics, _ = run_cli(capsys, 'info', tri_path('fig1'))
    assert status == 0
    assert metrics['closed'] == 'false'
    assert metrics['unglued'] == '2'
    assert metrics['orientable'] == 'none'
    assert 'check_euler' not in metrics


def test_heegaard(capsys, tri_path, tmp_path):
    target = tmp_path / 's3.hd'
    status, metrics, _ = run_cli(capsys, 'heegaard', tri_path('s3'), '-o', str(target))
    assert status == 0
    assert (metrics['crossings'], metrics['genus']) == ('6', '2')
    assert metrics['problems'] == '0'
    assert target.read_text().startswith('hd genus=2')

    status, metrics, _ = run_cli(capsys, 'heegaard', tri_path('rp3'), '--minimize', '--oriented')
    assert status == 0
    assert (metrics['alpha'], metrics['beta']) == ('3', '3')
    assert metrics['oriented'] == 'true'


def test_heegaard_needs_closed_input(capsys, tri_path):
    status, metrics, _ = run_cli(capsys, 'heegaard', tri_path('fig1'))
    assert status == 2
    assert metrics['error'].startswith('NotClosedError')


@pytest.mark.parametrize('group,value', [('Z2', '2'), ('Z3', '1'), ('S3', '4')])
def test_kuperberg(capsys, tri_path, group, value):
    status, metrics, _ = run_cli(capsys, 'kuperberg', tri_path('rp3'), '--algebra', group)
    assert status == 0
    assert metrics['value'] == value


def test_kuperberg_options(capsys, tri_path, data_dir):
    status, metrics, _ = run_cli(capsys, 'kuperberg', tri_path('rp3'), '--mirror', '--minimize')
    assert status == 0
    assert metrics['mirror_equal'] == 'true'
    status, metrics, _ = run_cli(capsys, 'kuperberg', tri_path('rp3'), '--algebra',
                                 str(data_dir / 'algebras' / 'z2.hopf'))
    assert (status, metrics['value']) == (0, '2')
    status, _, _ = run_cli(capsys, 'kuperberg', tri_path('rp3'), '--field', 'F4')
    assert status == 1


def test_kuperberg_with_decomposition_file(capsys, tri_path, tmp_path):
    td = tmp_path / 'rp3.td'
    td.write_text("s td 1 2 2\nb 1 1 2\n")
    status, metrics, _ = run_cli(capsys, 'kuperberg', tri_path('rp3'), '--td', str(td))
    assert (status, metrics['value']) == (0, '2')
    td.write_text("s td 1 1 2\nb 1 1\n")
    status, metrics, _ = run_cli(capsys, 'kuperberg', tri_path('rp3'), '--td', str(td))
    assert status == 1
    assert metrics['error'].startswith('DecompositionError')


def test_kuperberg_non_orientable(capsys, tri_path):
    status, _, _ = run_cli(capsys, 'kuperberg', tri_path('nonorientable'))
    assert status == 2


def test_retriangulate(capsys, tri_path, tmp_path):
    status, metrics, _ = run_cli(capsys, 'retriangulate', tri_path('s3'), '--full')
    assert status == 0
    assert (metrics['steps'], metrics['within_budget']) == ('0', 'true')

    td_in, td_out = tmp_path / 'in.td', tmp_path / 'out.td'
    td_in.write_text("s td 1 1 1\nb 1 1\n")
    out = tmp_path / 'out.tri'
    status, metrics, _ = run_cli(capsys, 'retriangulate', tri_path('s3'), '--force',
                                 '--emit-td', str(td_in), str(td_out), '-o', str(out))
    assert status == 0
    assert metrics['steps'] == '1'
    assert metrics['step1_n'] == '12'
    assert metrics['bounds_ok'] == 'true'
    assert metrics['td_valid'] == 'true'
    assert td_out.read_text().startswith('s td 1 12 12')
    assert out.read_text().startswith('tri 12')


def test_verify(capsys, tri_path):
    status, metrics, _ = run_cli(capsys, 'verify', tri_path('rp3'))
    assert status == 0
    assert metrics['failed'] == '0'
    assert metrics['h1'] == 'Z/2'
    assert metrics['check_hom_Z2'] == 'pass'
    assert metrics['check_td_network_full'] == 'pass'


def test_verify_reports_injected_fault(capsys, tri_path, monkeypatch):
    monkeypatch.setattr('trisparse.commands.verify.hom_count', lambda presentation, group: 0)
    status, metrics, _ = run_cli(capsys, 'verify', tri_path('rp3'), '--against', 'hom', '--groups', 'Z2')
    assert status == 3
    assert metrics['check_hom_Z2'] == 'fail'
    assert metrics['diff1'] == 'hom_Z2: kuperberg=2 hom_count=0'
    assert metrics['error'].startswith('VerificationError')


def test_resource_limits_exit_with_precondition_status(capsys, tri_path, monkeypatch):
    monkeypatch.setattr(TestingConfig, 'MAX_TENSOR_ENTRIES', 1)
    status, metrics, _ = run_cli(capsys, 'kuperberg', tri_path('rp3'), '--algebra', 'Z2')
    assert status == 2
    assert metrics['error'].startswith('EvaluationError')
    monkeypatch.undo()

    monkeypatch.setattr(TestingConfig, 'HOM_SEARCH_BUDGET', 1)
    status, metrics, _ = run_cli(capsys, 'verify', tri_path('rp3'), '--against', 'hom', '--groups', 'Z2')
    assert status == 2
    assert metrics['error'].startswith('SearchSpaceError')


def test_format_errors(capsys, tmp_path):
    broken = tmp_path / 'broken.tri'
    broken.write_text("tri 1\n0: 0/3012 0/0213\n")
    status, metrics, _ = run_cli(capsys, 'info', str(broken))
    assert status == 1
    assert metrics['error'].startswith('ParseError')

    binary = tmp_path / 'binary.tri'
    binary.write_bytes(b'\xff\xfe')
    assert run_cli(capsys, 'info', str(binary))[0] == 1


def test_missing_input(capsys, tmp_path):
    status, metrics, _ = run_cli(capsys, 'info', str(tmp_path / 'nope.tri'))
    assert status == 1
    assert metrics['digest'] == 'none'


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(['info'])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(['retriangulate', 'x.tri', '--full', '--steps', '2'])
    assert exc.value.code == 1
    assert main([]) == 1


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        create_parser().parse_args(['--version'])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == version_string()
    assert version_string().startswith(f"trisparse {__version__} ")


def test_global_flags(capsys, tri_path):
    _, _, plain = run_cli(capsys, 'info', tri_path('s3'))
    status, _, out = run_cli(capsys, '--seed', '7', '--log-level', 'DEBUG', 'info', tri_path('s3'))
    assert status == 0
    assert out == plain
    assert random.random() == random.Random(7).random()
