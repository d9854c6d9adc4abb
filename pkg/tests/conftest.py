from __future__ import annotations

import numpy as np
import pytest

from simpdepth import ColoredConfiguration


@pytest.fixture
def square_corners_config() -> ColoredConfiguration:
    """Three classes sitting on the corners of the unit square plus center
    points; small enough to enumerate by hand."""
    cls0 = np.array([[0.0, 0.0], [1.0, 1.0]])
    cls1 = np.array([[1.0, 0.0], [0.25, 0.75]])
    cls2 = np.array([[0.0, 1.0], [0.75, 0.25]])
    return ColoredConfiguration((cls0, cls1, cls2))


def make_config(*classes) -> ColoredConfiguration:
    return ColoredConfiguration(tuple(np.asarray(c, dtype=float) for c in classes))
