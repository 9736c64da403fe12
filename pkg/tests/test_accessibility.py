"""Tests for the log-space coefficient magnitude analysis."""

import pytest
from numpy.testing import assert_allclose

from processing.errors import DomainError
from targets.accessibility import (
    BINARY64_MAX_LOG10, CSV_COLUMNS, DEFAULT_RECT_LOG10_INV_EPS, DEFAULT_RECT_WIDTHS,
    DEFAULT_THRESHOLD_GAPS, DEFAULT_THRESHOLD_LOG10_INV_EPS, accessibility_cell, accessibility_map,
    cells_to_frame, direct_log10_range, rect_log10_range, threshold_log10_range,
)


class TestAccessibilityMap:
    """Grids over the standard axes."""

    def test_threshold_grid_size(self):
        cells = accessibility_map('threshold', DEFAULT_THRESHOLD_GAPS, DEFAULT_THRESHOLD_LOG10_INV_EPS)
        assert len(cells) == 70

    def test_rect_grid_size(self):
        cells = accessibility_map('rect', DEFAULT_RECT_WIDTHS, DEFAULT_RECT_LOG10_INV_EPS)
        assert len(cells) == 9
        assert [(c.param, c.log10_inv_eps) for c in cells[:3]] == [(0.3, 1), (0.3, 2), (0.3, 3)]

    @pytest.mark.parametrize("family,params,levels", [
        ('threshold', DEFAULT_THRESHOLD_GAPS, DEFAULT_THRESHOLD_LOG10_INV_EPS),
        ('rect', DEFAULT_RECT_WIDTHS, DEFAULT_RECT_LOG10_INV_EPS),
    ])
    def test_max_nondecreasing_in_precision(self, family, params, levels):
        cells = accessibility_map(family, params, levels)
        for p in params:
            row = [c.max_log10_coeff for c in cells if c.param == p]
            assert all(b >= a - 1e-9 for a, b in zip(row, row[1:]))

    def test_overflow_flag(self):
        for cell in accessibility_map('threshold', DEFAULT_THRESHOLD_GAPS, DEFAULT_THRESHOLD_LOG10_INV_EPS):
            assert cell.overflow == (cell.max_log10_coeff > BINARY64_MAX_LOG10)
            assert cell.dynamic_range_digits == pytest.approx(
                cell.max_log10_coeff - cell.min_log10_nonzero_coeff)

    def test_smallest_gap_overflows(self):
        cell = accessibility_cell('threshold', 0.001, 14)
        assert cell.overflow

    def test_threads_do_not_change_cells(self):
        serial = accessibility_map('rect', DEFAULT_RECT_WIDTHS, DEFAULT_RECT_LOG10_INV_EPS, threads=1)
        threaded = accessibility_map('rect', DEFAULT_RECT_WIDTHS, DEFAULT_RECT_LOG10_INV_EPS, threads=4)
        assert serial == threaded

    def test_frame_columns(self):
        frame = cells_to_frame(accessibility_map('rect', [0.5], [1, 2]))
        assert list(frame.columns) == CSV_COLUMNS
        assert len(frame) == 2

    def test_unknown_family(self):
        with pytest.raises(DomainError, match="Unknown accessibility family"):
            accessibility_cell('hs', 1.0, 3)

    def test_empty_grid(self):
        with pytest.raises(DomainError, match="nonempty"):
            accessibility_map('rect', [], [1])

    @pytest.mark.parametrize("family,params,levels", [
        ('threshold', DEFAULT_THRESHOLD_GAPS, DEFAULT_THRESHOLD_LOG10_INV_EPS),
        ('rect', DEFAULT_RECT_WIDTHS, DEFAULT_RECT_LOG10_INV_EPS),
    ])
    def test_max_nonincreasing_in_width(self, family, params, levels):
        cells = accessibility_map(family, params, levels)
        widths = sorted(params)
        for level in levels:
            column = [next(c.max_log10_coeff for c in cells if c.param == w and c.log10_inv_eps == level)
                      for w in widths]
            assert all(b <= a + 1e-9 for a, b in zip(column, column[1:]))


class TestDirectCrossCheck:
    """Log-space magnitudes against naive binary64 evaluation."""

    def test_rect(self):
        direct = direct_log10_range('rect', 0.5, 0.1)
        assert_allclose(direct, rect_log10_range(0.5, 0.1), atol=1e-8)

    def test_threshold(self):
        direct = direct_log10_range('threshold', 0.25, 0.1)
        assert_allclose(direct, threshold_log10_range(0.25, 0.1), atol=1e-8)

    def test_direct_reports_overflow(self):
        top, _ = direct_log10_range('threshold', 0.01, 1e-14)
        assert top == float('inf')


@pytest.mark.slow
class TestDirectCrossCheckGrid:
    """Every cell of the standard grids against binary64 evaluation."""

    @pytest.mark.parametrize("family,params,levels", [
        ('threshold', DEFAULT_THRESHOLD_GAPS, DEFAULT_THRESHOLD_LOG10_INV_EPS),
        ('rect', DEFAULT_RECT_WIDTHS, DEFAULT_RECT_LOG10_INV_EPS),
    ])
    def test_every_cell(self, family, params, levels):
        for cell in accessibility_map(family, params, levels):
            top, _ = direct_log10_range(family, cell.param, 10.0 ** -cell.log10_inv_eps)
            label = (cell.param, cell.log10_inv_eps)
            if cell.overflow:
                assert top == float('inf'), label
            elif cell.max_log10_coeff <= 300.0:
                assert abs(top - cell.max_log10_coeff) <= 1.0, label
