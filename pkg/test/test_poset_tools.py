import numpy as np
import pytest

from pybruhat import bruhat, cyclic_model, maps, poset_tools
from pybruhat.combinat_core import ground_set
from pybruhat.errors import ConstructionError, InputError
from pybruhat.poset_tools import HasseDiagram


@pytest.fixture(scope="module")
def weak_order():
    return poset_tools.bruhat_hasse(3, 1)


@pytest.fixture(scope="module")
def pentagon():
    return poset_tools.tamari_hasse(5, 2)


def test_element_key():
    assert poset_tools.element_key(bruhat.bottom(3, 1)) == \
        '{"d":1,"inversions":[],"n":3,"type":"bruhat"}'
    _, high = cyclic_model.bottom_top(ground_set(4), 1)
    assert poset_tools.element_key(high) == \
        '{"d":1,"labels":[1,2,3,4],"simplices":[[1,4]],"type":"tamari"}'


def test_element_from_json():
    element = bruhat.top(3, 1)
    assert poset_tools.element_from_json(element.to_json()) == element
    with pytest.raises(InputError, match="Element type"):
        poset_tools.element_from_json({'type': 'tree'})
    with pytest.raises(InputError):
        poset_tools.element_from_json([1, 2])


def test_hasse_shape(weak_order, pentagon):
    assert len(weak_order) == 6
    assert len(weak_order.covers) == 6
    assert weak_order.bottom() == bruhat.bottom(3, 1)
    assert weak_order.top() == bruhat.top(3, 1)
    assert len(pentagon) == 5
    assert len(pentagon.covers) == 5
    low, high = cyclic_model.bottom_top(ground_set(5), 2)
    assert pentagon.bottom() == low
    assert pentagon.top() == high


def test_order_queries(weak_order):
    low, high = weak_order.bottom(), weak_order.top()
    atoms = bruhat.covers_up(low)
    assert weak_order.leq(low, high)
    assert not weak_order.leq(high, low)
    assert not weak_order.leq(atoms[0], atoms[1])
    assert len(weak_order.interval(low, high)) == 6
    assert weak_order.interval(atoms[0], atoms[0]) == [atoms[0]]
    assert weak_order.leq_matrix().sum() == 6 + 3 + 3 + 2 + 2 + 1
    with pytest.raises(InputError, match="not an element"):
        weak_order.index_of(bruhat.bottom(4, 1))


def test_moebius(weak_order, pentagon):
    low, high = weak_order.bottom(), weak_order.top()
    assert weak_order.moebius(low, high) == 1
    assert weak_order.moebius(low, low) == 1
    for atom in bruhat.covers_up(low):
        assert weak_order.moebius(low, atom) == -1
    assert pentagon.moebius(pentagon.bottom(), pentagon.top()) == 1
    with pytest.raises(InputError, match="not below"):
        weak_order.moebius(high, low)


def test_moebius_sums_vanish_on_random_intervals():
    hasse = poset_tools.bruhat_hasse(5, 2)
    leq = hasse.leq_matrix()
    rng = np.random.default_rng(20240601)
    for _ in range(100):
        i = int(rng.integers(len(hasse)))
        j = int(rng.choice(np.flatnonzero(leq[i, :])))
        a, b = hasse.elements[i], hasse.elements[j]
        total = sum(hasse.moebius(a, z) for z in hasse.interval(a, b))
        assert total == (1 if i == j else 0)


def test_moebius_on_boolean_lattice():
    hasse = poset_tools.bruhat_hasse(3, 0)
    assert len(hasse) == 8
    assert hasse.moebius(hasse.bottom(), hasse.top()) == -1


def test_build_hasse():
    elements = bruhat.enumerate_bruhat(3, 1)
    hasse = poset_tools.build_hasse(elements, bruhat.covers_up, 'bruhat')
    assert hasse == poset_tools.bruhat_hasse(3, 1)
    with pytest.raises(InputError, match="not among the elements"):
        poset_tools.build_hasse(elements[:2], bruhat.covers_up, 'bruhat')


def test_hasse_rejects_bad_covers():
    elements = bruhat.enumerate_bruhat(3, 1)[:3]
    with pytest.raises(InputError, match="cycle"):
        HasseDiagram(elements, [(0, 1), (1, 0)], 'bruhat')
    with pytest.raises(InputError, match="implied"):
        HasseDiagram(elements, [(0, 1), (1, 2), (0, 2)], 'bruhat')
    with pytest.raises(InputError, match="distinct"):
        HasseDiagram([elements[0], elements[0]], [], 'bruhat')
    with pytest.raises(InputError):
        HasseDiagram(elements, [], 'weak')


def test_extremes_must_be_unique():
    elements = bruhat.enumerate_bruhat(3, 1)[1:3]
    hasse = HasseDiagram(elements, [], 'bruhat')
    with pytest.raises(ConstructionError, match="extreme elements"):
        hasse.bottom()


def test_export_dot(weak_order):
    text = poset_tools.export(weak_order, 'dot')
    lines = text.splitlines()
    assert lines[0] == "digraph bruhat {"
    assert lines[1] == '  n0 [label="{}"];'
    assert lines[-1] == "}"
    assert len(lines) == 1 + 6 + 6 + 1
    assert text.endswith("}\n")


def test_export_json_round_trip(pentagon):
    text = poset_tools.export(pentagon, 'json')
    assert poset_tools.import_diagram(text) == pentagon
    assert poset_tools.export(pentagon, 'json') == text


def test_export_rejects_format(weak_order):
    with pytest.raises(InputError):
        poset_tools.export(weak_order, 'text')
    with pytest.raises(InputError):
        poset_tools.import_diagram('{"kind": "bruhat"}')


@pytest.mark.parametrize("n,d", [(5, 1), (5, 2), (6, 2), (6, 3)])
def test_g_is_monotone_and_an_embedding(n, d):
    src = poset_tools.tamari_hasse(n, d)
    dst = poset_tools.bruhat_hasse(n - 1, d)
    assert maps.g(src.bottom()) == dst.bottom()
    assert maps.g(src.top()) == dst.top()
    assert poset_tools.check_monotone(maps.g, src, dst) == []
    assert poset_tools.check_embedding(maps.g, src, dst) == []


def test_check_monotone_reverse(weak_order):
    def flip(element):
        return bruhat.BruhatElement(3, 1, bruhat.top(3, 1).inversions
                                    - element.inversions)

    assert poset_tools.check_monotone(flip, weak_order, weak_order,
                                      reverse=True) == []
    assert len(poset_tools.check_monotone(flip, weak_order,
                                          weak_order)) == 6
    assert poset_tools.check_embedding(flip, weak_order, weak_order) != []


def test_check_monotone_needs_images_in_target(weak_order):
    with pytest.raises(InputError, match="not an element"):
        poset_tools.check_monotone(lambda e: bruhat.bottom(4, 1),
                                   weak_order, weak_order)
