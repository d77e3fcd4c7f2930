"""
Unit tests for grid output documents
"""
import json

import numpy as np
import pytest
from pydantic import ValidationError

from models.phase_space import GridSpec, OutputDoc
from services.output_writer import (
    CSV_HEADER,
    build_output_doc,
    read_output_doc,
    write_csv,
    write_json,
    write_output,
)
from utils.error_handler import ConfigurationValidationError

GRID = GridSpec(q_min=-1.0, q_max=1.0, p_min=0.0, p_max=0.5, n_q=3, n_p=2)
VALUES = np.array([[0.1, -0.2, 0.3], [1.0 / 3.0, 0.5, -0.6]])


@pytest.fixture
def doc():
    return build_output_doc(
        params={'kind': 'relative', 'n': 0, 'alpha': 2.0},
        grid=GRID,
        method='operator',
        values=VALUES,
        diagnostics={'max_imag_residue': 0.0, 'max_quad_error': 0.0},
        version='1.0.0',
        preset='fig1a',
    )


class TestBuildOutputDoc:
    """Tests for OutputDoc assembly"""

    def test_values_are_nested_lists(self, doc):
        assert doc.values == VALUES.tolist()
        assert doc.preset == 'fig1a'

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValidationError):
            build_output_doc({}, GRID, 'operator', VALUES[:, :2], {}, '1.0.0')


class TestCsv:
    """Tests for the q,p,w CSV layout"""

    def test_rows_p_outer_q_inner(self, doc, tmp_path):
        path = tmp_path / 'grid.csv'
        write_csv(path, doc)
        lines = path.read_text(encoding='utf-8').splitlines()
        assert lines[0] == ','.join(CSV_HEADER)
        assert len(lines) == 1 + GRID.n_q * GRID.n_p
        assert lines[1] == '-1.0,0.0,0.1'
        assert lines[2] == '0.0,0.0,-0.2'
        assert lines[4] == '-1.0,0.5,0.3333333333333333'

    def test_floats_read_back_exactly(self, doc, tmp_path):
        path = tmp_path / 'grid.csv'
        write_csv(path, doc)
        w = [float(line.split(',')[2]) for line in path.read_text(encoding='utf-8').splitlines()[1:]]
        assert w == VALUES.ravel().tolist()


class TestJson:
    """Tests for the JSON OutputDoc"""

    def test_read_back(self, doc, tmp_path):
        path = tmp_path / 'grid.json'
        write_json(path, doc)
        assert read_output_doc(path) == doc
        assert json.loads(path.read_text(encoding='utf-8'))['version'] == '1.0.0'

    def test_invalid_json_rejected(self, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{not json', encoding='utf-8')
        with pytest.raises(ConfigurationValidationError):
            read_output_doc(path)

    def test_invalid_document_rejected(self, tmp_path):
        path = tmp_path / 'partial.json'
        path.write_text(json.dumps({'method': 'operator'}), encoding='utf-8')
        with pytest.raises(ConfigurationValidationError):
            read_output_doc(path)


class TestWriteOutput:
    """Tests for format dispatch"""

    def test_dispatch(self, doc, tmp_path):
        write_output(tmp_path / 'a.csv', doc, 'csv')
        write_output(tmp_path / 'a.json', doc, 'json')
        assert (tmp_path / 'a.csv').read_text(encoding='utf-8').startswith('q,p,w')
        assert isinstance(read_output_doc(tmp_path / 'a.json'), OutputDoc)

    def test_unknown_format_rejected(self, doc, tmp_path):
        with pytest.raises(ValueError):
            write_output(tmp_path / 'a.txt', doc, 'xml')
