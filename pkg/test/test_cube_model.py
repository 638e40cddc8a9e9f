from fractions import Fraction

import pytest

from pybruhat import bruhat, cube_model, cyclic_model, maps
from pybruhat.bruhat import BruhatElement
from pybruhat.cube_model import CubeFace
from pybruhat.errors import InputError


@pytest.mark.parametrize("y,label_set,expected",
                         [(2, (1, 3), -1),
                          (4, (1, 3), 1),
                          (5, (1, 3), 1),
                          (1, (2,), -1),
                          (3, (2,), 1)])
def test_p_sign(y, label_set, expected):
    assert cube_model.p_sign(y, label_set) == expected


def test_p_sign_rejects_star():
    with pytest.raises(InputError):
        cube_model.p_sign(2, (2, 3))


@pytest.mark.parametrize("inversions,expected",
                         [([], "+*-"),
                          ([(1, 2)], "-*-")])
def test_face_of(inversions, expected):
    element = BruhatElement.from_family(3, 1, inversions)
    assert str(cube_model.face_of(element, (2,))) == expected


def test_face_of_wrong_size():
    with pytest.raises(InputError):
        cube_model.face_of(bruhat.bottom(3, 1), (1, 2))


def test_cube_face_text():
    face = CubeFace.from_string("+*-")
    assert face.stars == (2,)
    assert face.dimension == 1
    assert str(face.negated()) == "-*+"
    assert sorted(face.vertices()) == [(1, -1, -1), (1, 1, -1)]
    with pytest.raises(InputError):
        CubeFace.from_string("+x-")


def test_square_facets():
    square = CubeFace.from_string("**")
    assert {str(f) for f in cube_model.upper_facets(square)} == {"-*", "*+"}
    assert {str(f) for f in cube_model.lower_facets(square)} == {"+*", "*-"}
    # the bottom of B(2,1) is the lower boundary of the square
    assert cube_model.face_complex(bruhat.bottom(2, 1)).face_set() == \
        cube_model.lower_facets(square)
    with pytest.raises(InputError):
        cube_model.upper_facets(CubeFace.from_string("+-"))


def test_exact_linear_algebra():
    assert cube_model.exact_det([[1, 2], [3, 4]]) == -2
    assert cube_model.exact_det([[0, 1], [1, 0]]) == -1
    assert cube_model.exact_rank([[1, 2], [2, 4]]) == 1
    assert cube_model.exact_rank([]) == 0
    assert cube_model.solve_exact([[2, 0], [0, 4]], [2, 2]) == \
        (Fraction(1), Fraction(1, 2))
    with pytest.raises(InputError, match="Singular"):
        cube_model.solve_exact([[1, 2], [2, 4]], [1, 1])


@pytest.mark.parametrize("n,d", [(3, 1), (3, 2), (4, 2), (4, 3)])
def test_vandermonde_map_is_totally_positive(n, d):
    projection = cube_model.vandermonde_map(n, d)
    assert projection.rows == d and projection.cols == n
    assert projection.is_totally_positive()


def test_vandermonde_map_affine_row():
    projection = cube_model.vandermonde_map(3, 2, affine=True)
    assert list(projection.entries[0]) == [1, 1, 1]
    assert not cube_model.ExactLinearMap([[1, 2], [2, 1]]).is_totally_positive()


@pytest.mark.parametrize("n,d", [(3, 1), (4, 1), (4, 2), (5, 1), (5, 2)])
def test_face_complexes_tile(n, d):
    projection = cube_model.vandermonde_map(n, d)
    for element in bruhat.enumerate_bruhat(n, d):
        report = cube_model.verify_tiling(cube_model.face_complex(element),
                                          projection)
        assert report.ok, report.violations


def test_tiling_with_missing_face_fails():
    complex_ = cube_model.face_complex(bruhat.top(4, 2))
    broken = complex_.without(complex_.faces[0].stars)
    report = cube_model.verify_tiling(broken, cube_model.vandermonde_map(4, 2))
    assert not report.ok


def test_verify_tiling_rejects_projection_shape():
    with pytest.raises(InputError):
        cube_model.verify_tiling(cube_model.face_complex(bruhat.top(3, 1)),
                                 cube_model.vandermonde_map(3, 2))


@pytest.mark.parametrize("n,d", [(3, 1), (4, 2), (5, 1), (5, 2)])
def test_covers_change_one_face(n, d):
    for element in bruhat.enumerate_bruhat(n, d):
        for cover in bruhat.covers_up(element):
            assert cube_model.cover_face_change(element, cover)
    assert not cube_model.cover_face_change(bruhat.top(n, d),
                                            bruhat.bottom(n, d))


@pytest.mark.parametrize("size", [2, 3, 4])
def test_preimage_alternates(size):
    assert cube_model.preimage_alternates(
        cube_model.vandermonde_map(size, size))


@pytest.mark.parametrize("element,expected",
                         [(bruhat.bottom(3, 1), {(3,)}),
                          (bruhat.top(3, 1), {(1,)})])
def test_vertex_figure_ones(element, expected):
    assert cube_model.vertex_figure_ones(element) == expected


@pytest.mark.parametrize("text,expected", [("*+", True), ("+*", False),
                                           ("**", True)])
def test_maxprefix_preserves_dim(text, expected):
    assert cube_model.maxprefix_preserves_dim(
        CubeFace.from_string(text)) is expected


def test_prefix_simplex():
    assert cube_model.prefix_simplex(CubeFace.from_string("*+")) == (1, 2)


@pytest.mark.parametrize("n,d", [(3, 1), (4, 2)])
def test_link_zero_simplices_match_link_of_f(n, d):
    for element in bruhat.enumerate_bruhat(n, d):
        link = cyclic_model.link(maps.f(element), (0,))
        assert cube_model.link_zero_simplices(element) == link.simplices
