import pytest

from g2scan.model import WeierstrassModel

# curves that anchor the whole suite: the two smallest-|disc|-277 curves,
# the smallest new odd discriminant 1665, the QM curve of conductor 2^18,
# and the conductor worked example 2^9*3*311
CURVE_277A = WeierstrassModel.make([0, -1, -1, 0, 0, 0, 0], [1, 1, 1, 1])
CURVE_277B = WeierstrassModel.make([-6, 11, -19, 14, -9, 1, 0], [1, 0, 0, 0])
CURVE_1665 = WeierstrassModel.make([1, 2, 2, 1, 1, 0, 0], [1, 0, 1, 1])
CURVE_QM = WeierstrassModel.make([-1, 5, -8, 4, -1, 1, 0], [0, 0, 0, 0])
CURVE_3732 = WeierstrassModel.make([3, -14, -33, 10, 6, 0, -1], [1, 1, 0, 1])


@pytest.fixture
def curve_277a():
    return CURVE_277A


@pytest.fixture
def curve_277b():
    return CURVE_277B


@pytest.fixture
def curve_3732():
    return CURVE_3732
