import pytest

from pybruhat import bruhat
from pybruhat.bruhat import AdmissibleOrder, BruhatElement
from pybruhat.combinat_core import parse_family
from pybruhat.errors import InputError


def element(n, d, text):
    return BruhatElement.from_family(n, d, parse_family(text))


@pytest.mark.parametrize("n,d,expected",
                         [(3, 1, 6),
                          (4, 1, 24),
                          (4, 2, 8),
                          (5, 2, 62),
                          (4, 3, 2),
                          (5, 3, 10),
                          (3, 0, 8)])
def test_enumerate_bruhat_counts(n, d, expected):
    assert len(bruhat.enumerate_bruhat(n, d)) == expected


@pytest.mark.parametrize("n,d", [(3, 1), (4, 1), (4, 2), (5, 2), (5, 3)])
def test_enumerate_bruhat_matches_brute_force(n, d):
    assert bruhat.enumerate_bruhat(n, d) == \
        bruhat.enumerate_bruhat_bruteforce(n, d)


def test_enumeration_is_sorted_by_size_then_lex():
    elements = bruhat.enumerate_bruhat(3, 1)
    assert [str(e) for e in elements] == ['{}', '12', '23', '12,13',
                                          '13,23', '12,13,23']
    assert elements[0] == bruhat.bottom(3, 1)
    assert elements[-1] == bruhat.top(3, 1)


@pytest.mark.parametrize("text,expected",
                         [("", True),
                          ("12", True),
                          ("13", False),
                          ("12,23", False),
                          ("13,23", True),
                          ("12,13,23", True)])
def test_is_consistent(text, expected):
    assert bruhat.is_consistent(parse_family(text), 3, 1) is expected


@pytest.mark.parametrize("text,expected",
                         [("", True),
                          ("12", True),
                          ("23", True),
                          ("12,13", False),
                          ("13,23", False),
                          ("12,13,23", True)])
def test_is_superconsistent(text, expected):
    assert bruhat.is_superconsistent(parse_family(text), 3, 1) is expected


def test_from_family_rejects_inconsistent():
    with pytest.raises(InputError, match="not a consistent set"):
        element(3, 1, "13")


@pytest.mark.parametrize("n,d,text", [(3, 1, "123"), (3, 1, "14"),
                                      (2, 3, "")])
def test_from_family_rejects_bad_members(n, d, text):
    with pytest.raises(InputError):
        element(n, d, text)


def test_json_round_trip():
    e = element(6, 2, "123,124,356,456")
    data = e.to_json()
    assert data == {'type': 'bruhat', 'n': 6, 'd': 2,
                    'inversions': [[1, 2, 3], [1, 2, 4], [3, 5, 6],
                                   [4, 5, 6]]}
    assert BruhatElement.from_json(data) == e
    with pytest.raises(InputError):
        BruhatElement.from_json({'type': 'bruhat', 'n': 6})


def test_covers():
    ups = bruhat.covers_up(bruhat.bottom(3, 1))
    assert sorted(str(e) for e in ups) == ['12', '23']
    downs = bruhat.covers_down(bruhat.top(3, 1))
    assert sorted(str(e) for e in downs) == ['12,13', '13,23']
    assert bruhat.covers_up(bruhat.top(4, 2)) == []


@pytest.mark.parametrize("low,high,expected",
                         [("12", "12,13", True),
                          ("12", "23", False),
                          ("23", "12,13,23", True),
                          ("12,13", "13,23", False),
                          ("", "13,23", True)])
def test_bruhat_leq(low, high, expected):
    assert bruhat.bruhat_leq(element(3, 1, low),
                             element(3, 1, high)) is expected


@pytest.mark.parametrize("n,d", [(3, 1), (4, 1), (4, 2), (5, 2)])
def test_witness_order_round_trip(n, d):
    for e in bruhat.enumerate_bruhat(n, d):
        order = bruhat.witness_order(e)
        assert bruhat.is_admissible(order)
        assert bruhat.inversion_set(order) == e


def test_admissible_order_through_prefix():
    e = element(5, 2, "123,124,125")
    order = bruhat.admissible_order_through([e.inversions], 5, 2)
    assert order.n == 5 and order.d == 3
    assert bruhat.is_admissible(order)
    assert bruhat.prefix_family(order, len(e)) == e.inversions


def test_admissible_order_through_rejects_non_nested():
    with pytest.raises(InputError, match="nested"):
        bruhat.admissible_order_through([{(1, 2)}, {(2, 3)}], 3, 1)


def test_is_admissible():
    assert bruhat.is_admissible(
        AdmissibleOrder(3, 2, ((2, 3), (1, 3), (1, 2))))
    assert not bruhat.is_admissible(
        AdmissibleOrder(3, 2, ((1, 3), (1, 2), (2, 3))))
    with pytest.raises(InputError):
        bruhat.is_admissible(AdmissibleOrder(3, 2, ((1, 2), (1, 3))))


def test_inversion_set_of_reversed_packet():
    order = AdmissibleOrder(3, 1, ((3,), (1,), (2,)))
    assert str(bruhat.inversion_set(order)) == '13,23'


@pytest.mark.parametrize("word,text", [((1, 2, 3), "{}"),
                                       ((3, 2, 1), "12,13,23"),
                                       ((2, 1, 3), "12"),
                                       ((3, 1, 2), "12,13"),
                                       ((2, 3, 1), "13,23")])
def test_permutations(word, text):
    e = bruhat.element_from_permutation(word)
    assert str(e) == text
    assert bruhat.permutation_of(e) == word


def test_element_from_permutation_rejects_words():
    with pytest.raises(InputError):
        bruhat.element_from_permutation((1, 1, 2))


@pytest.mark.parametrize("n,d", [(3, 1), (4, 2)])
def test_definitional_cover_pairs(n, d):
    pairs = {(e, c) for e in bruhat.enumerate_bruhat(n, d)
             for c in bruhat.covers_up(e)}
    assert bruhat.definitional_cover_pairs(n, d) == pairs
