import pytest

from pybruhat import bruhat, cyclic_model, maps
from pybruhat.bruhat import BruhatElement
from pybruhat.combinat_core import ground_set, parse_family
from pybruhat.cyclic_model import Triangulation
from pybruhat.data.base import load_golden_examples
from pybruhat.errors import InputError
from pybruhat.maps import PlanarBinaryTree


@pytest.fixture
def golden():
    record = load_golden_examples()['fiber_without_maximum']
    n, d = record['n'], record['d']

    def element(family):
        return BruhatElement.from_family(n, d, parse_family(','.join(family)))

    image = Triangulation.from_simplices(
        ground_set(n + 2, start=0), d + 1,
        parse_family(','.join(record['image'])))
    return record, element, image


def test_f_of_reference_element(golden):
    record, element, image = golden
    assert maps.f(element(record['inversions'])) == image
    assert len(image) == 11


def test_fiber_without_maximum(golden):
    record, element, image = golden
    fiber = maps.fiber_f(image)
    assert set(fiber) == {element(x) for x in record['fiber']}
    assert set(maps.fiber_maximal_elements(fiber)) == \
        {element(x) for x in record['maximal']}
    assert maps.surjectivity_witness(image) in fiber


def test_link_at_both_ends_of_reference_image(golden):
    record, _, image = golden
    link = cyclic_model.link(image, (0, record['n'] + 1))
    assert link.labels == ground_set(record['n'])
    assert link.simplices == set(parse_family(','.join(
        record['link_both_ends'])))


@pytest.mark.parametrize("n,d", [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3)])
def test_f_of_extremes(n, d):
    low, high = cyclic_model.bottom_top(ground_set(n + 2, start=0), d + 1)
    assert maps.f(bruhat.bottom(n, d)) == low
    assert maps.f(bruhat.top(n, d)) == high


def test_f_in_dimension_zero():
    element = BruhatElement.from_family(3, 0, [(2,)])
    image = maps.f(element)
    assert image.labels == (0, 1, 2, 3, 4)
    assert image.d == 1
    assert str(image) == "01,13,34"


@pytest.mark.parametrize("n,d", [(3, 0), (3, 1), (4, 1), (4, 2), (5, 2)])
def test_definitions_of_f_agree(n, d):
    for element in bruhat.enumerate_bruhat(n, d):
        image = maps.f_def2(element)
        assert maps.f_def1(element) == image
        assert maps.f_def3(element) == image


@pytest.mark.parametrize("word,text",
                         [((), "."),
                          ((1,), "(.,.)"),
                          ((1, 2), "((.,.),.)"),
                          ((2, 1), "(.,(.,.))"),
                          ((1, 3, 2), "((.,.),(.,.))"),
                          ((3, 1, 2), "(.,((.,.),.))")])
def test_psi(word, text):
    tree = maps.psi(word)
    assert maps.format_tree(tree) == text
    assert maps.parse_tree(text) == tree
    assert maps.tree_size(tree) == len(word)


@pytest.mark.parametrize("text", ["(.,.", "(.;.)", "x", "(.,.))"])
def test_parse_tree_rejects(text):
    with pytest.raises(InputError):
        maps.parse_tree(text)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_theta_of_f_is_psi(n):
    for element in bruhat.enumerate_bruhat(n, 1):
        word = bruhat.permutation_of(element)
        image = maps.f(element)
        assert maps.theta(image) == maps.psi(word)
        assert maps.theta_inverse(maps.psi(word), n) == image


@pytest.mark.parametrize("word,tree,text",
                         [((2, 3, 1), "((.,.),(.,.))", "012,024,234"),
                          ((1, 3, 2), "((.,.),(.,.))", "012,024,234"),
                          ((3, 1, 2), "(.,((.,.),.))", "014,123,134")])
def test_f_of_one_line_word(word, tree, text):
    image = maps.f(bruhat.element_from_permutation(word))
    assert maps.format_tree(maps.theta(image)) == tree
    assert maps.format_tree(maps.psi(word)) == tree
    assert str(image) == text


def test_f_def3_keeps_triangulation_on_unflippable_inversion():
    # 23 flips 0234; afterwards no simplex 0134 has its lower facets present
    element = bruhat.element_from_permutation((2, 3, 1))
    assert str(element) == "13,23"
    assert str(maps.f_def3(element)) == "012,024,234"
    assert maps.f_def3(element) == maps.f_def3(BruhatElement.from_family(
        3, 1, [(2, 3)]))


def test_theta_inverse_rejects_wrong_size():
    with pytest.raises(InputError):
        maps.theta_inverse(PlanarBinaryTree(None, None), 2)


def test_theta_needs_polygon():
    low, _ = cyclic_model.bottom_top(ground_set(5, start=0), 3)
    with pytest.raises(InputError):
        maps.theta(low)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_fibers_of_f_are_intervals(n):
    elements = bruhat.enumerate_bruhat(n, 1)
    for image in cyclic_model.flip_closure(n + 2, 2,
                                           labels=ground_set(n + 2, 0)):
        fiber = {e for e in elements if maps.f(e) == image}
        minimum, maximum = maps.min_max_fiber(image)
        low = bruhat.element_from_permutation(minimum)
        high = bruhat.element_from_permutation(maximum)
        assert fiber == {e for e in elements
                         if bruhat.bruhat_leq(low, e)
                         and bruhat.bruhat_leq(e, high)}
        assert maps.ascending_fiber(image) == fiber


def test_min_max_fiber_of_bottom():
    image = maps.f(bruhat.bottom(3, 1))
    assert maps.min_max_fiber(image) == ((1, 2, 3), (1, 2, 3))


def test_min_max_fiber_is_one_line():
    image = maps.f(bruhat.element_from_permutation((2, 3, 1)))
    assert maps.min_max_fiber(image) == ((1, 3, 2), (2, 3, 1))
    assert maps.ascending_fiber(image) == {
        bruhat.element_from_permutation((1, 3, 2)),
        bruhat.element_from_permutation((2, 3, 1))}


@pytest.mark.parametrize("n,dimension", [(3, 2), (4, 2), (3, 3), (4, 3)])
def test_surjectivity_witness(n, dimension):
    labels = ground_set(n + 2, start=0)
    for target in cyclic_model.flip_closure(n + 2, dimension, labels=labels):
        witness = maps.surjectivity_witness(target)
        assert maps.f(witness) == target


def test_surjectivity_witness_rejects_dimension():
    low, _ = cyclic_model.bottom_top(ground_set(6, start=0), 4)
    with pytest.raises(InputError):
        maps.surjectivity_witness(low)


def test_g_of_extremes():
    low, high = cyclic_model.bottom_top(ground_set(4), 1)
    assert maps.g(low) == bruhat.bottom(3, 1)
    assert maps.g(high) == bruhat.top(3, 1)


@pytest.mark.parametrize("text,expected", [("13,34", "12"),
                                           ("12,24", "23")])
def test_g_of_segment_triangulations(text, expected):
    triangulation = Triangulation.from_simplices(ground_set(4), 1,
                                                 parse_family(text))
    assert str(maps.g(triangulation)) == expected


def test_g_needs_standard_labels():
    low, _ = cyclic_model.bottom_top(ground_set(4, start=0), 1)
    with pytest.raises(InputError, match="labels 1..n"):
        maps.g(low)


@pytest.mark.parametrize("n,d", [(4, 1), (5, 1), (5, 2), (6, 2), (6, 3)])
def test_g_inverse_inverts_g(n, d):
    images = {maps.g(s): s for s in cyclic_model.enumerate_tamari(n, d)}
    for element in bruhat.enumerate_bruhat(n - 1, d):
        preimage = maps.g_inverse(element)
        if bruhat.is_superconsistent(element.inversions, n - 1, d):
            assert preimage == images[element]
        else:
            assert preimage is None
            assert element not in images


@pytest.mark.parametrize("n,d", [(5, 2), (6, 2), (6, 3)])
def test_g_constructions_agree(n, d):
    for triangulation in cyclic_model.enumerate_tamari(n, d):
        expected = maps.g(triangulation)
        assert maps.g_via_ascending(triangulation) == expected
        assert maps.g_via_chain(triangulation) == expected


def test_g_via_chain_needs_d_above_one():
    low, _ = cyclic_model.bottom_top(ground_set(4), 1)
    with pytest.raises(InputError):
        maps.g_via_chain(low)


def test_f_of_g_is_extension():
    triangulation = Triangulation.from_simplices(ground_set(4), 1, [(1, 4)])
    assert maps.f(maps.g(triangulation)) == \
        cyclic_model.extension(triangulation)


@pytest.mark.parametrize("n,d", [(5, 1), (5, 2), (6, 2)])
def test_f_of_g_is_extension_on_whole_poset(n, d):
    for triangulation in cyclic_model.enumerate_tamari(n, d):
        extended = cyclic_model.extension(triangulation)
        assert maps.f(maps.g(triangulation)) == extended
        assert cyclic_model.link(extended, (0,)) == triangulation


def test_rectangular_orders():
    rectangle = cyclic_model.snug_rectangle((1, 3, 5))
    orders = [o.sequence for o in maps.rectangular_orders(rectangle)]
    assert sorted(orders) == [((1, 4), (1, 3), (2, 4), (2, 3)),
                              ((1, 4), (2, 4), (1, 3), (2, 3))]
    first = maps.first_rectangular_order(rectangle).sequence
    assert first == ((1, 4), (1, 3), (2, 4), (2, 3))
    assert maps.is_rectangular(rectangle, first)
    assert not maps.is_rectangular(rectangle,
                                   ((1, 3), (1, 4), (2, 4), (2, 3)))
    assert maps.same_commutation_class(orders[0], orders[1])
    assert not maps.same_commutation_class(
        first, ((1, 3), (1, 4), (2, 4), (2, 3)))


def test_flip_simplex():
    low, _ = cyclic_model.bottom_top(ground_set(5), 2)
    high = Triangulation.from_simplices(ground_set(5), 2,
                                        parse_family("124,234,145"))
    assert maps.flip_simplex(low, high) == (1, 2, 3, 4)
    assert maps.flip_simplex(low, low) is None


def test_rectangular_composition():
    hasse_elements = cyclic_model.enumerate_tamari(5, 2)
    for low in hasse_elements:
        for high in cyclic_model.covers_up(low):
            assert maps.check_rectangular_composition(low, high)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_small_poset_formula(d):
    expected = {maps.small_poset_formula(d, i) for i in range(1, d + 2)}
    low, high = cyclic_model.bottom_top(ground_set(d + 3), d)
    found = {maps.g(s).inversions
             for s in cyclic_model.enumerate_tamari(d + 3, d)
             if s not in (low, high)}
    assert found == expected


def test_small_poset_formula_values():
    assert maps.small_poset_formula(1, 1) == {(2, 3)}
    assert maps.small_poset_formula(1, 2) == {(1, 2)}
    with pytest.raises(InputError):
        maps.small_poset_formula(1, 3)
