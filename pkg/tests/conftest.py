import pytest

from rank1_group import GroupRank1

# 验收网格中用到的 (p, q)
ACCEPTANCE_PQ = [(1, 0), (2, 0), (2, 1), (4, 3)]


def make_group(p: int, q: int) -> GroupRank1:
    return GroupRank1(name=f"custom-p{p}-q{q}", p=p, q=q)


@pytest.fixture
def sec4() -> GroupRank1:
    return GroupRank1(name="sl2r-sec4", p=2, q=0)


@pytest.fixture
def sec2() -> GroupRank1:
    return GroupRank1(name="sl2r-sec2", p=2, q=0, model="sl2r-sec2")


@pytest.fixture
def real_hyperbolic() -> GroupRank1:
    return make_group(1, 0)
