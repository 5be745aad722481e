import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fracsl import DomainError, ProblemSpec, Solution, make_grid


def test_small_grid_nodes():
    g = make_grid(4, 1)
    assert g.nodes.tolist() == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert g.dt == 0.25


def test_reference_grid_step():
    g = make_grid(2048, 1.0)
    assert g.dt == 1 / 2048
    assert len(g) == 2049


@pytest.mark.parametrize("n, b", [(1, 1.0), (0, 1.0), (4, 0.0), (4, -1.0), (2.5, 1.0)])
def test_rejects_bad_grid(n, b):
    with pytest.raises(DomainError):
        make_grid(n, b)


@given(st.integers(2, 5000), st.floats(1e-3, 1e3))
def test_nodes_exact_endpoints(n, b):
    g = make_grid(n, b)
    assert g.nodes[0] == 0.0
    assert g.nodes[-1] == b
    i = np.arange(n + 1)
    assert np.all(np.abs(g.nodes - i * (b / n)) <= np.spacing(b))
    assert abs(g.dt * n - b) <= np.spacing(b)


def test_grid_is_immutable():
    g = make_grid(8)
    with pytest.raises(ValueError):
        g.nodes[1] = 3.0


def test_index_of_probe():
    g = make_grid(256)
    assert g.index_of("1/4") == 64
    assert g.index_of(0.5) == 128
    with pytest.raises(DomainError):
        make_grid(10).index_of("1/4")


@pytest.mark.parametrize("alpha", [0.0, -0.1, 1.0000001, math.nan])
def test_problem_rejects_alpha(alpha):
    with pytest.raises(DomainError):
        ProblemSpec(alpha, -3.0)


def test_problem_parses_potential():
    spec = ProblemSpec(0.5, -3.0, "t^2", b=2.0, L=3.0)
    assert spec.potential(2.0) == 4.0
    with pytest.raises(DomainError):
        ProblemSpec(0.5, -3.0, b=0.0)


def test_solution_length_checked():
    g = make_grid(4)
    with pytest.raises(ValueError):
        Solution(g, [0.0, 1.0])
    s = Solution(g, np.linspace(0, 1, 5))
    assert s.at("1/2") == 0.5
