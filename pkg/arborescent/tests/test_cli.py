"""
End to end runs of the command line entry point
"""
import json
import os

import pytest

from cli import EXIT_DISAGREE, EXIT_OK, EXIT_USAGE, main, parse_corpus, CorpusFormatError

from conftest import Q_TEXT, Q_DELTA

SHIPPED_CORPUS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                              'corpus.txt')


def _run(config_file, capsys, *argv):
    code = main(['--config_file', config_file] + list(argv))
    out, err = capsys.readouterr()
    return code, out.splitlines(), err


def test_compute_single_values(config_file, capsys):
    assert _run(config_file, capsys, 'compute', 'D([1])')[:2] == (EXIT_OK, ['1'])
    assert _run(config_file, capsys, 'compute', Q_TEXT)[:2] == (EXIT_OK, [Q_DELTA])
    code, out, _ = _run(config_file, capsys, 'compute', Q_TEXT, '--no-fastpath', '--check')
    assert (code, out) == (EXIT_OK, [Q_DELTA])


def test_compute_all_methods(config_file, capsys):
    code, out, _ = _run(config_file, capsys, 'compute', 'D([3]*[3]*[-2])', '--method', 'all')
    assert code == EXIT_OK
    assert out[0].startswith('knot-even')
    names = [line.split(':')[0] for line in out if ': ' in line and '~' not in line]
    assert names == ['engine', 'closed-form', 'fox', 'q-matrix']
    assert all(line.endswith('yes') for line in out if '~' in line)


def test_compute_json(config_file, capsys):
    code, out, _ = _run(config_file, capsys, 'compute', Q_TEXT, '--json')
    assert code == EXIT_OK
    report = json.loads('\n'.join(out))
    assert report == {
        'input': Q_TEXT,
        'closure': 'D',
        'components': 1,
        'method_results': {'engine': Q_DELTA},
        'agree': True,
    }


def test_compute_all_without_closed_form(config_file, capsys):
    code, out, _ = _run(config_file, capsys, 'compute', Q_TEXT, '--method', 'all')
    assert code == EXIT_OK
    assert out[:3] == [f'engine: {Q_DELTA}', f'fox: {Q_DELTA}', f'q-matrix: {Q_DELTA}']


@pytest.mark.parametrize('argv', [
    ['compute', 'D([0])'],
    ['compute', 'D([1/3])', '--method', 'closed-form'],
    ['compute', 'D([1/2])', '--orient', 'bits=1'],
    ['compute', 'D([1/2])', '--orient', 'sideways'],
    ['compute', 'D([1]*[1]*[1])', '--method', 'closed-form', '--orient', 'bits=1'],
    ['compute'],
    ['compute', '--from-pd', 'missing.pd'],
    ['pretzel', '1,1'],
    ['pretzel', '1,x,3'],
    ['montesinos', '1/2,2/4,1/7'],
    ['family', 'kt', '3', '3', '1'],
    ['family', 'kt', '3', '-2', '0'],
    ['family', 'three', '0', '1'],
])
def test_input_errors_exit_with_usage(config_file, capsys, argv):
    code, _, err = _run(config_file, capsys, *argv)
    assert code == EXIT_USAGE
    assert 'error' in err


def test_unknown_method_is_a_usage_error(config_file, capsys):
    with pytest.raises(SystemExit) as info:
        main(['--config_file', config_file, 'compute', 'D([1])', '--method', 'magic'])
    assert info.value.code == EXIT_USAGE
    capsys.readouterr()


def test_bad_config_file(tmp_path, capsys):
    path = tmp_path / 'config.yaml'
    path.write_text('colour: blue\n')
    assert main(['--config_file', str(path), 'compute', 'D([1])']) == EXIT_USAGE
    assert 'colour' in capsys.readouterr().err


def test_pd_export_and_import(config_file, capsys, tmp_path):
    code, out, _ = _run(config_file, capsys, 'pd', 'D([1/3])')
    assert code == EXIT_OK
    assert len([line for line in out if line.startswith('X[')]) == 3
    assert 'components: 1 1 1' in out
    assert out[-1].startswith('signs: ')
    pd_file = tmp_path / 'trefoil.pd'
    pd_file.write_text('\n'.join(out) + '\n')
    code, out, _ = _run(config_file, capsys, 'compute', '--from-pd', str(pd_file), '--method', 'all')
    assert code == EXIT_OK
    assert out == ['fox: t^2 - t + 1', 'q-matrix: t^2 - t + 1', 'fox ~ q-matrix: yes']
    code, _, _ = _run(config_file, capsys, 'compute', '--from-pd', str(pd_file), '--method', 'engine')
    assert code == EXIT_USAGE


def test_pretzel_and_montesinos(config_file, capsys):
    code, out, _ = _run(config_file, capsys, 'pretzel', '1,1,1')
    assert (code, out) == (EXIT_OK, ['knot-odd n0=0 n1=3', 't^2 - t + 1'])
    code, out, _ = _run(config_file, capsys, 'pretzel', '3,3,-2', '--check')
    assert code == EXIT_OK
    assert out[-1] == 'closed-form ~ engine: yes'
    code, out, _ = _run(config_file, capsys, 'montesinos', '1/2,1/3,1/7', '--check')
    assert code == EXIT_OK
    assert out[0].startswith('link-2comp')
    assert out[-1] == 'closed-form ~ engine: yes'


def test_family(config_file, capsys):
    code, out, _ = _run(config_file, capsys, 'family', 'kt', '3', '-2', '1')
    assert code == EXIT_OK
    assert out == ['engine: 1', 'formula: 1', 'engine ~ formula: yes']
    code, out, _ = _run(config_file, capsys, 'family', 'kt', '3', '2', '-1', '--json')
    assert code == EXIT_OK
    assert json.loads('\n'.join(out))['agree'] is True
    code, out, _ = _run(config_file, capsys, 'family', 'three', '1', '1')
    assert code == EXIT_OK
    assert out[-1] == 'engine ~ formula: yes'


def _corpus(tmp_path, text):
    path = tmp_path / 'corpus.txt'
    path.write_text(text)
    return str(path)


def test_empty_corpus(config_file, capsys, tmp_path):
    path = _corpus(tmp_path, '# nothing yet\n\n')
    code, out, _ = _run(config_file, capsys, 'corpus', path)
    assert code == EXIT_OK
    assert out == ['0 entries, 0 passed, 0 failed, 0 disagreed, 0 errors']


def test_corpus_reports_failures(config_file, capsys, tmp_path):
    path = _corpus(tmp_path, 'trefoil | D([1/3]) | t^2 - t + 1 | derived\n'
                             'wrong   | D([1/3]) | t^2 + 1     | made up\n')
    code, out, _ = _run(config_file, capsys, 'corpus', path)
    assert code == EXIT_DISAGREE
    assert out[-1] == '2 entries, 1 passed, 1 failed, 0 disagreed, 0 errors'
    assert any(line.startswith('wrong') and 'fail' in line for line in out)


def test_corpus_writes_results_and_log(config_file, capsys, tmp_path):
    path = _corpus(tmp_path, 'hopf | D([1/2]) | 1 | derived\n')
    assert _run(config_file, capsys, 'corpus', path)[0] == EXIT_OK
    rows = (tmp_path / 'results.csv').read_text().splitlines()
    assert len(rows) == 1
    assert rows[0].split(',')[1:3] == ['hopf', 'pass']
    log_text = (tmp_path / 'logs' / 'alexander_log.txt').read_text()
    assert 'corpus' in log_text


def test_malformed_corpus(config_file, capsys, tmp_path):
    path = _corpus(tmp_path, '# header\ntrefoil | D([1/3])\n')
    code, _, err = _run(config_file, capsys, 'corpus', path)
    assert code == EXIT_USAGE
    assert 'line 2' in err


@pytest.mark.parametrize('text, line', [
    ('a | D([1/3) | - | -\n', 1),
    ('a | D([1/3]) | t^2 - t + 1 | -\n', 1),
    ('\na | D([1/3]) | t^^2 | derived\n', 2),
])
def test_parse_corpus_errors(text, line):
    with pytest.raises(CorpusFormatError) as info:
        parse_corpus(text)
    assert str(info.value).startswith(f'line {line}:')


def test_parallel_corpus(config_file, capsys, tmp_path):
    path = _corpus(tmp_path, 'trefoil | D([1/3]) | t^2 - t + 1 | derived\n'
                             'figure-eight | N([[2],[2]]) | t^2 - 3*t + 1 | derived\n'
                             'hopf | D([1/2]) | 1 | derived\n')
    code, out, _ = _run(config_file, capsys, 'corpus', path, '--workers', '2')
    assert code == EXIT_OK
    assert out[-1] == '3 entries, 3 passed, 0 failed, 0 disagreed, 0 errors'


def test_shipped_corpus_passes(config_file, capsys):
    code, out, _ = _run(config_file, capsys, 'corpus', SHIPPED_CORPUS)
    assert out[-1].endswith(' 0 failed, 0 disagreed, 0 errors')
    assert code == EXIT_OK


def test_read_retries_report_on_stderr(tmp_path, capsys, monkeypatch):
    import file_utils
    path = tmp_path / 'trefoil.txt'
    path.write_text('D([1/3])\n')
    real_open = open
    calls = []

    def flaky_open(*args, **kwargs):
        calls.append(args[0])
        if len(calls) == 1:
            raise OSError('stale file handle')
        return real_open(*args, **kwargs)

    monkeypatch.setattr(file_utils, 'open', flaky_open, raising=False)
    monkeypatch.setattr(file_utils.time, 'sleep', lambda seconds: None)
    assert file_utils.read_text(str(path), retries=2) == 'D([1/3])\n'
    out, err = capsys.readouterr()
    assert out == ''
    assert 'exception reading' in err and 'stale file handle' in err
    assert len(calls) == 2
