"""
End-to-end tests for the command-line front end
"""
import json
import logging
import math

import pytest

import cli
from models.phase_space import PhasePoint
from services.output_writer import read_output_doc
from services.wigner_service import rel_wigner_operator


@pytest.fixture(autouse=True)
def cli_env(config_manager, monkeypatch, tmp_path):
    """Default configuration, shipped presets, no stray .env file"""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv('LOG_LEVEL', 'ERROR')
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    """Tests for the eval command"""

    def test_default_is_relative_ground_state(self, capsys):
        code, out, _ = run(capsys, 'eval')
        value_line, diagnostics_line = out.strip().splitlines()
        assert code == 0
        assert float(value_line) == pytest.approx(1.0)
        diagnostics = json.loads(diagnostics_line)
        assert diagnostics['kind'] == 'relative'
        assert diagnostics['method'] == 'operator'
        assert diagnostics['convention_dependent'] is False

    def test_cm_kind_uses_capital_coordinates(self, capsys):
        code, out, _ = run(capsys, 'eval', '--kind', 'cm', '--Q', '0.5', '--q', '9')
        assert code == 0
        assert float(out.splitlines()[0]) == pytest.approx(math.exp(-0.5))

    def test_cm_origin(self, capsys):
        code, out, _ = run(capsys, 'eval', '--kind', 'cm', '--l', '3')
        assert code == 0
        assert float(out.splitlines()[0]) == -1.0

    def test_series_method(self, capsys):
        code, out, _ = run(capsys, 'eval', '--n', '1', '--alpha', '2', '--omega-bar', '3',
                           '--method', 'series', '--q', '0.4', '--p', '-1.1')
        expected = rel_wigner_operator(1, 2, 3.0, PhasePoint(q=0.4, p=-1.1)).value
        assert code == 0
        assert float(out.splitlines()[0]) == pytest.approx(expected, rel=1e-9)
        assert json.loads(out.splitlines()[1])['method'] == 'series'

    def test_quadrature_non_integer_alpha(self, capsys):
        code, out, _ = run(capsys, 'eval', '--alpha', '0.5', '--method', 'quadrature', '--q', '0.3')
        assert code == 0
        assert json.loads(out.splitlines()[1])['convention_dependent'] is True

    def test_coupling_derives_alpha(self, capsys):
        """g = 2 in units hbar = m = omega_bullet = 1 gives alpha = 2"""
        code, out, _ = run(capsys, 'eval', '--g', '2')
        expected = rel_wigner_operator(0, 2, 1.0, PhasePoint(q=0.0, p=0.0)).value
        assert code == 0
        assert float(out.splitlines()[0]) == pytest.approx(expected, rel=1e-9)

    def test_pair_frequency(self, capsys):
        code, out, _ = run(capsys, 'eval', '--omega0-bar', '1', '--q', '1')
        assert code == 0
        assert float(out.splitlines()[0]) == pytest.approx(math.exp(-math.sqrt(3.0) / 2.0), rel=1e-9)

    def test_non_integer_alpha_on_exact_path_is_usage_error(self, capsys):
        code, out, err = run(capsys, 'eval', '--alpha', '0.5', '--method', 'series')
        assert code == 1
        assert out == ''
        assert err.strip().splitlines()[-1].startswith('error:')

    def test_alpha_and_coupling_exclusive(self, capsys):
        code, _, err = run(capsys, 'eval', '--alpha', '1', '--g', '2')
        assert code == 1
        assert 'mutually exclusive' in err

    def test_coupling_below_bound(self, capsys):
        code, _, err = run(capsys, 'eval', '--g', '-1')
        assert code == 1
        assert 'below the bound' in err

    def test_frequency_flags_exclusive(self, capsys):
        code, _, _ = run(capsys, 'eval', '--omega-bar', '2', '--omega0-bar', '1')
        assert code == 1

    def test_asymptotic_at_origin_is_singular(self, capsys):
        code, _, err = run(capsys, 'eval', '--method', 'asymptotic')
        assert code == 1
        assert 'singular' in err

    def test_missing_command(self, capsys):
        assert run(capsys)[0] == 1

    def test_help_exits_zero(self, capsys):
        code, out, _ = run(capsys, '--help')
        assert code == 0
        assert 'verify' in out


class TestGrid:
    """Tests for the grid command"""

    def test_csv(self, capsys, tmp_path):
        out_path = tmp_path / 'w.csv'
        code, out, _ = run(capsys, 'grid', '--alpha', '2', '--n-q', '5', '--n-p', '4', '--out', str(out_path))
        assert code == 0
        assert 'wrote 4x5 grid' in out
        lines = out_path.read_text(encoding='utf-8').splitlines()
        assert lines[0] == 'q,p,w'
        assert len(lines) == 21

    def test_json_from_suffix(self, capsys, tmp_path):
        out_path = tmp_path / 'w.json'
        code, _, _ = run(capsys, 'grid', '--kind', 'cm', '--l', '2', '--n-q', '3', '--n-p', '3',
                         '--q-min', '-1', '--q-max', '1', '--p-min', '-1', '--p-max', '1', '--out', str(out_path))
        doc = read_output_doc(out_path)
        assert code == 0
        assert doc.values[1][1] == 1.0
        assert doc.params['kind'] == 'cm'
        assert doc.version == cli.TOOL_VERSION

    def test_preset(self, capsys, tmp_path):
        out_path = tmp_path / 'fig.json'
        code, _, _ = run(capsys, 'grid', '--preset', 'fig2a', '--out', str(out_path), '--threads', '2')
        doc = read_output_doc(out_path)
        assert code == 0
        assert doc.preset == 'fig2a'
        assert doc.grid.n_q == 121
        assert doc.values[60][60] == pytest.approx(-1.0, rel=1e-9)

    def test_explicit_format_overrides_suffix(self, capsys, tmp_path):
        out_path = tmp_path / 'w.json'
        run(capsys, 'grid', '--n-q', '2', '--n-p', '2', '--format', 'csv', '--out', str(out_path))
        assert out_path.read_text(encoding='utf-8').startswith('q,p,w')

    def test_unknown_preset(self, capsys, tmp_path):
        code, _, err = run(capsys, 'grid', '--preset', 'fig9z', '--out', str(tmp_path / 'x.csv'))
        assert code == 1
        assert 'Unknown grid preset' in err

    def test_bad_bounds(self, capsys, tmp_path):
        code, _, _ = run(capsys, 'grid', '--q-min', '1', '--q-max', '0', '--out', str(tmp_path / 'x.csv'))
        assert code == 1

    def test_unwritable_output(self, capsys, tmp_path):
        code, _, err = run(capsys, 'grid', '--n-q', '2', '--n-p', '2', '--out', str(tmp_path / 'no' / 'x.csv'))
        assert code == 1
        assert 'I/O failure' in err

    def test_out_required(self, capsys):
        assert run(capsys, 'grid')[0] == 1


class TestVerify:
    """Tests for the verify command"""

    def test_zeros_suite(self, capsys):
        code, out, _ = run(capsys, 'verify', '--suite', 'zeros')
        lines = out.strip().splitlines()
        assert code == 0
        assert lines[0].startswith('PASS zeros/zero_k1')
        summary = json.loads(lines[-1])
        assert summary['version'] == cli.TOOL_VERSION
        assert summary['suites'][0]['passed'] is True

    def test_failing_suite_exits_two(self, capsys):
        code, out, _ = run(capsys, 'verify', '--suite', 'zeros', '--tol', '1e-6')
        assert code == 2
        assert 'FAIL zeros/zero_k1' in out

    def test_unknown_suite(self, capsys):
        assert run(capsys, 'verify', '--suite', 'nonsense')[0] == 1


class TestZeros:
    """Tests for the zeros command"""

    def test_table(self, capsys):
        code, out, _ = run(capsys, 'zeros', '--n', '20', '--k-max', '4')
        lines = out.strip().splitlines()
        assert code == 0
        assert lines[0] == 'k,r_k,semi_axis_q,semi_axis_p,symplectic_area,gromov_ok'
        assert len(lines) == 5
        assert lines[1].endswith(',false')
        assert lines[4].endswith(',true')
        assert float(lines[1].split(',')[1]) == pytest.approx(math.pi ** 2 * 0.5625 / 82.0, abs=1e-6)

    def test_k_max_must_be_positive(self, capsys):
        code, _, err = run(capsys, 'zeros', '--k-max', '0')
        assert code == 1
        assert 'k-max' in err
