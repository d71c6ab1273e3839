import pytest

from spanalg import LimitUnavailable, check_associativity
from spanalg.thin import ThinCategory, ThinMor


@pytest.fixture(scope="module")
def chain3():
    return ThinCategory.chain(3)


def test_chain_structure(chain3):
    assert list(chain3.objects()) == [0, 1, 2]
    assert chain3.hom(0, 2) == [ThinMor(0, 2)]
    assert chain3.hom(2, 0) == []
    assert check_associativity(chain3, max_triples=500).holds


def test_meets_and_terminal(chain3):
    pr = chain3.product(1, 2)
    assert pr.apex == 1
    t, bang = chain3.terminal()
    assert t == 2
    assert bang(0) == ThinMor(0, 2)


def test_pullback_is_meet_of_domains(chain3):
    pb = chain3.pullback(ThinMor(1, 2), ThinMor(2, 2))
    assert pb.apex == 1
    m = pb.mediate(ThinMor(0, 1), ThinMor(0, 2))
    assert m == ThinMor(0, 1)


def test_diamond_without_meet_is_rejected():
    # two maximal elements: no top
    with pytest.raises(LimitUnavailable):
        ThinCategory("abc", [("a", "b"), ("a", "c")])


def test_vee_without_binary_meet_is_rejected():
    # b and c share two incomparable lower bounds under a top
    with pytest.raises(LimitUnavailable):
        ThinCategory(
            "xybct",
            [("x", "b"), ("x", "c"), ("y", "b"), ("y", "c"),
             ("x", "t"), ("y", "t"), ("b", "t"), ("c", "t")],
        )


def test_every_morphism_is_monic(chain3):
    for f in [ThinMor(0, 1), ThinMor(1, 2)]:
        assert chain3.is_mono(f).holds
