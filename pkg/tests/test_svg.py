import xml.etree.ElementTree as ET

import numpy as np

from pqc_lens.svg import heatmap, histogram_plot, line_plot, path_plot


def _parse(doc: str) -> ET.Element:
    root = ET.fromstring(doc)
    assert root.tag.endswith("svg")
    return root


def _tags(root) -> set:
    return {el.tag.split("}")[-1] for el in root.iter()}


class TestLinePlot:
    def test_well_formed_with_legend_and_axes(self):
        xs = np.linspace(0, 1, 20)
        doc = line_plot(
            [("first", xs, np.sin(xs)), ("second", xs, np.cos(xs))],
            title="two curves", xlabel="x", ylabel="y",
        )
        root = _parse(doc)
        assert "polyline" in _tags(root)
        assert "two curves" in doc
        assert "first" in doc and "second" in doc

    def test_deterministic(self):
        xs = np.arange(5.0)
        args = ([("s", xs, xs * 2)], "t", "x", "y")
        assert line_plot(*args) == line_plot(*args)

    def test_flat_series_still_renders(self):
        xs = np.arange(4.0)
        doc = line_plot([("flat", xs, np.zeros(4))], "flat", "x", "y")
        _parse(doc)


class TestHistogramPlot:
    def test_bar_and_line_layers(self):
        edges = np.linspace(0.0, 1.0, 6)
        masses = np.array([0.1, 0.2, 0.4, 0.2, 0.1])
        doc = histogram_plot(
            [("observed", edges, masses, "bar"),
             ("reference", edges, masses[::-1], "line")],
            title="hist", xlabel="value",
        )
        root = _parse(doc)
        assert "rect" in _tags(root)
        assert "polyline" in _tags(root)


class TestHeatmap:
    def test_cell_count_matches_grid(self):
        x = np.linspace(-1, 1, 4)
        y = np.linspace(-1, 1, 3)
        grid = np.arange(12.0).reshape(4, 3)
        doc = heatmap(x, y, grid, "map", "a", "b")
        root = _parse(doc)
        fills = {el.get("fill") for el in root.iter() if el.tag.endswith("rect")}
        assert doc.count("<rect") >= 12
        assert len({f for f in fills if f and f.startswith("#")}) >= 10

    def test_constant_grid_does_not_divide_by_zero(self):
        x = np.linspace(0, 1, 3)
        grid = np.ones((3, 3))
        _parse(heatmap(x, x, grid, "flat", "a", "b"))


class TestPathPlot:
    def test_one_polyline_per_restart(self):
        coords = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 0.5],
                           [0.0, 1.0], [1.0, 2.0]])
        restarts = np.array([0, 0, 0, 1, 1])
        root = _parse(path_plot(coords, restarts, "paths"))
        lines = [el for el in root.iter() if el.tag.endswith("polyline")]
        assert len(lines) >= 2
        # start and end markers for each restart
        circles = [el for el in root.iter() if el.tag.endswith("circle")]
        assert len(circles) >= 4
