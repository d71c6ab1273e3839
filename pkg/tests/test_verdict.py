import pytest

from spanalg import FAILS, HOLDS, UNKNOWN, Verdict, combine


def test_constructors_and_flags():
    assert Verdict.yes().holds
    assert Verdict.no(witness=3).fails
    assert Verdict.no(witness=3).witness == 3
    assert Verdict.maybe(reason="bound").unknown


def test_truthiness_is_rejected():
    with pytest.raises(TypeError):
        bool(Verdict.yes())


def test_combine_dominance():
    assert combine([Verdict.yes(), Verdict.yes()]).outcome == HOLDS
    assert combine([Verdict.yes(), Verdict.maybe()]).outcome == UNKNOWN
    assert combine([Verdict.maybe(), Verdict.no(witness=1)]).outcome == FAILS
    # fails wins regardless of order
    assert combine([Verdict.no(witness=1), Verdict.maybe()]).outcome == FAILS


def test_combine_keeps_first_failure_witness():
    v = combine([Verdict.yes(), Verdict.no(witness="w1"), Verdict.no(witness="w2")])
    assert v.witness == "w1"


def test_combine_empty_holds():
    assert combine([]).holds
