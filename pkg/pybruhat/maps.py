# -*- coding: utf-8 -*-
"""
Maps between higher Bruhat orders and higher Stasheff-Tamari posets.

f : B(n,d) -> S([0,n+1], d+1) sends an element to a triangulation of the
cyclic polytope on [0, n+1] one dimension up; g : S(n,d) -> B(n-1,d) reads
an inversion set off the collapses of a triangulation.  Each map has several
equivalent constructions; f_def2 and g are the public entry points and the
others are kept as independent cross-checks.
"""
import logging
from functools import lru_cache
from itertools import combinations, permutations
from typing import NamedTuple, Optional, Tuple

import networkx as nx

from pybruhat.bruhat import (AdmissibleOrder, BruhatElement,
                             admissible_order_through, bruhat_leq,
                             element_from_permutation, enumerate_bruhat,
                             inversion_set, is_admissible,
                             is_superconsistent, prefix_family,
                             witness_order)
from pybruhat.combinat_core import (DEFAULT_BUDGET, LabelSet, complement,
                                    format_label_set, ground_set,
                                    inverse_permutation, standardize,
                                    subsets)
from pybruhat.cube_model import face_of
from pybruhat.cyclic_model import (SnugRectangle, Triangulation,
                                   ascending_orders, bottom_top, collapse,
                                   first_ascending_order, flip_chain,
                                   lower_facets_simplex, snug_rectangle,
                                   triangulation_violations,
                                   upper_facets_simplex)
from pybruhat.errors import ConstructionError, InputError

logger = logging.getLogger(__name__)


class PlanarBinaryTree(NamedTuple):
    """An internal node; the empty tree is None."""
    left: Optional['PlanarBinaryTree']
    right: Optional['PlanarBinaryTree']


class RectangularOrder(NamedTuple):
    rectangle: SnugRectangle
    sequence: Tuple[LabelSet, ...]


def tree_size(tree):
    """Number of internal nodes."""
    if tree is None:
        return 0
    return 1 + tree_size(tree.left) + tree_size(tree.right)


def format_tree(tree):
    """'.' for the empty tree, '(L,R)' for a node."""
    if tree is None:
        return '.'
    return f"({format_tree(tree.left)},{format_tree(tree.right)})"


def parse_tree(text):
    """Inverse of format_tree."""
    text = text.replace(' ', '')

    def read(pos):
        if pos >= len(text):
            msg = f"Tree text '{text}' ends early"
            raise InputError(msg)
        if text[pos] == '.':
            return None, pos + 1
        if text[pos] != '(':
            msg = f"Unexpected '{text[pos]}' at position {pos} of '{text}'"
            raise InputError(msg)
        left, pos = read(pos + 1)
        if text[pos:pos + 1] != ',':
            msg = f"Expected ',' at position {pos} of '{text}'"
            raise InputError(msg)
        right, pos = read(pos + 1)
        if text[pos:pos + 1] != ')':
            msg = f"Expected ')' at position {pos} of '{text}'"
            raise InputError(msg)
        return PlanarBinaryTree(left, right), pos + 1

    tree, end = read(0)
    if end != len(text):
        msg = f"Trailing characters after tree in '{text}'"
        raise InputError(msg)
    return tree


def _polytope_labels(n):
    return ground_set(n + 2, start=0)


def _path(n, removed):
    vertices = [v for v in _polytope_labels(n) if v not in removed]
    return Triangulation(_polytope_labels(n), 1,
                         frozenset(zip(vertices, vertices[1:])))


def _removed_vertices(element):
    return {x for (x,) in element.inversions}


def f_def2(element):
    """
    f(e) in closed form: each d-subset X whose face F^e_X is +1 on every
    coordinate strictly between min X and max X (outside X) contributes the
    simplex {x} u X u {z}, where x is the last coordinate before min X at
    which the face is -1 (else 0) and z the first one after max X (else n+1).

    Parameters
    ----------
    element : BruhatElement

    Returns
    -------
    triangulation : Triangulation
        On the labels 0..n+1, of dimension d+1.
    """
    n, d = element.n, element.d
    if d == 0:
        return _path(n, _removed_vertices(element))

    simplices = set()
    for stars in subsets(ground_set(n), d):
        signs = face_of(element, stars).signs
        first, last = stars[0], stars[-1]
        interior = [y for y in range(first + 1, last) if y not in stars]
        if any(signs[y - 1] != 1 for y in interior):
            continue
        x = next((y for y in range(first - 1, 0, -1) if signs[y - 1] == -1),
                 0)
        z = next((y for y in range(last + 1, n + 1) if signs[y - 1] == -1),
                 n + 1)
        simplices.add((x,) + stars + (z,))
    return Triangulation(_polytope_labels(n), d + 1, frozenset(simplices))


def f(element):
    return f_def2(element)


@lru_cache(maxsize=None)
def f_def1(element):
    """
    f(e) by induction on d: along an admissible order whose class is e, the
    images of consecutive prefixes either agree or differ by one flip, and
    f(e) collects the flipped simplices.

    Raises
    ------
    ConstructionError
        If two consecutive images differ by anything other than a flip.
    """
    n, d = element.n, element.d
    if d == 0:
        return _path(n, _removed_vertices(element))

    order = witness_order(element)
    images = [f_def1(BruhatElement(n, d - 1, prefix_family(order, i)))
              for i in range(len(order.sequence) + 1)]
    simplices = set()
    for low, high in zip(images, images[1:]):
        if low == high:
            continue
        changed = low.simplices ^ high.simplices
        simplex = tuple(sorted(set().union(*changed)))
        lower = lower_facets_simplex(simplex)
        upper = upper_facets_simplex(simplex)
        if len(simplex) != d + 2 or not lower <= low.simplices \
                or high.simplices != (low.simplices - lower) | upper:
            msg = (f"Images {low} and {high} of consecutive prefixes do not "
                   f"differ by a flip")
            raise ConstructionError(msg)
        simplices.add(simplex)
    return Triangulation(_polytope_labels(n), d + 1, frozenset(simplices))


def f_def3(element):
    """
    f(e) by flips from 0̂ of S([0,n+1], d+1): the inversions are taken in an
    order with consistent prefixes, and for each inversion X a simplex
    {x} u X u {z} (x below X, z above X) whose lower facets are all present
    has them replaced by its upper facets.  An inversion with no such simplex
    leaves the triangulation as it is.
    """
    n, d = element.n, element.d
    labels = _polytope_labels(n)
    current, _ = bottom_top(labels, d + 1)
    count = len(element.inversions)
    order = admissible_order_through([element.inversions], n, d)
    for inversion in order.sequence[:count]:
        for x in range(0, inversion[0]):
            simplex = None
            for z in range(inversion[-1] + 1, n + 2):
                candidate = (x,) + inversion + (z,)
                if lower_facets_simplex(candidate) <= current.simplices:
                    simplex = candidate
                    break
            if simplex is not None:
                current = Triangulation(
                    labels, d + 1,
                    (current.simplices - lower_facets_simplex(simplex))
                    | upper_facets_simplex(simplex))
                break
        else:
            logger.debug("Inversion %s flips nothing in %s",
                         format_label_set(inversion), current)
    return current


def psi(word):
    """
    The planar binary tree of a permutation: the root splits the word at its
    largest entry, and both sides are standardized and treated the same way.
    """
    word = tuple(word)
    if not word:
        return None
    if sorted(word) != list(range(1, len(word) + 1)):
        msg = f"{word} is not a permutation of 1..{len(word)}"
        raise InputError(msg)
    split = word.index(len(word))
    left, right = word[:split], word[split + 1:]
    return PlanarBinaryTree(psi(standardize(left)) if left else None,
                            psi(standardize(right)) if right else None)


def _check_polygon(triangulation):
    if triangulation.d != 2:
        msg = (f"Expected a triangulation of a polygon (d=2), got "
               f"d={triangulation.d}")
        raise InputError(msg)


def _middles(triangulation):
    """Middle vertex of the triangle standing on each chord."""
    return {(a, c): b for a, b, c in triangulation.simplices}


def theta(triangulation):
    """
    The dual tree of a polygon triangulation, rooted at the triangle on the
    edge between the first and last labels.
    """
    _check_polygon(triangulation)
    labels = triangulation.labels
    rank = {label: i for i, label in enumerate(labels)}
    middles = _middles(triangulation)

    def region(a, c):
        if rank[c] == rank[a] + 1:
            return None
        try:
            b = middles[(a, c)]
        except KeyError:
            msg = (f"No triangle on the chord {a}{c} of {triangulation}")
            raise InputError(msg)
        return PlanarBinaryTree(region(a, b), region(b, c))

    return region(labels[0], labels[-1])


def theta_inverse(tree, n):
    """The triangulation of the polygon on 0..n+1 whose dual tree is `tree`."""
    if tree_size(tree) != n:
        msg = f"Tree {format_tree(tree)} does not have {n} internal nodes"
        raise InputError(msg)
    simplices = set()

    def region(a, c, node):
        if node is None:
            return
        b = a + tree_size(node.left) + 1
        simplices.add((a, b, c))
        region(a, b, node.left)
        region(b, c, node.right)

    region(0, n + 1, tree)
    return Triangulation(_polytope_labels(n), 2, frozenset(simplices))


def middle_vertex_word(order):
    """
    The permutation of an ascending order of triangles, in one-line notation:
    middle vertex b goes to the position of its triangle in the order.
    """
    return inverse_permutation(simplex[1] for simplex in order)


def min_max_fiber(triangulation):
    """
    Least and greatest permutation (in weak order) mapped by f onto a
    polygon triangulation, in one-line notation.

    On the region between chord (lo, hi) and the boundary, with triangle
    (lo, a, hi), the middle vertices are listed as Min(left) Min(right) a
    and Max(right) Max(left) a; the permutations are the inverses of these
    listings.
    """
    _check_polygon(triangulation)
    middles = _middles(triangulation)

    def extremes(lo, hi):
        if hi == lo + 1:
            return (), ()
        a = middles[(lo, hi)]
        left_min, left_max = extremes(lo, a)
        right_min, right_max = extremes(a, hi)
        return (left_min + right_min + (a,), right_max + left_max + (a,))

    labels = triangulation.labels
    if labels != _polytope_labels(len(labels) - 2):
        msg = f"Expected labels 0..n+1, got {list(labels)}"
        raise InputError(msg)
    minimum, maximum = extremes(labels[0], labels[-1])
    return inverse_permutation(minimum), inverse_permutation(maximum)


def _fiber_parameters(triangulation):
    n = len(triangulation.labels) - 2
    if n < 1 or triangulation.labels != _polytope_labels(n) \
            or triangulation.d < 1:
        msg = (f"Fibers of f are taken over triangulations on 0..n+1 with "
               f"d >= 1, got labels {list(triangulation.labels)} and "
               f"d={triangulation.d}")
        raise InputError(msg)
    return n, triangulation.d - 1


def fiber_f(triangulation, budget=DEFAULT_BUDGET):
    """
    All e in B(n,d) with f(e) equal to `triangulation` (which lives in
    S([0,n+1], d+1)), found by filtering the full enumeration.

    Raises
    ------
    BudgetError
    """
    n, d = _fiber_parameters(triangulation)
    fiber = [element for element in enumerate_bruhat(n, d, budget)
             if f_def2(element) == triangulation]
    logger.debug("Fiber of %s: %d elements of B(%d,%d)", triangulation,
                 len(fiber), n, d)
    return fiber


def fiber_maximal_elements(fiber):
    """Members of `fiber` with no other member above them."""
    fiber = list(fiber)
    return [element for element in fiber
            if not any(other != element and bruhat_leq(element, other)
                       for other in fiber)]


def surjectivity_witness(triangulation):
    """
    An element e with f(e) equal to a triangulation of dimension 2 or 3.

    In dimension 2 this is the least element of the fiber.  In dimension 3
    an ascending order gives a chain of polygon triangulations from 0̂ to
    1̂, the least permutations of their fibers form a chain in B(n,1), and
    any maximal chain through them is an admissible order whose class is e.

    Raises
    ------
    InputError
        For other dimensions.
    ConstructionError
        If the constructed element does not map onto `triangulation`.
    """
    n, d = _fiber_parameters(triangulation)
    if d == 1:
        minimum, _ = min_max_fiber(triangulation)
        witness = element_from_permutation(minimum)
    elif d == 2:
        chain = flip_chain(triangulation)
        targets = [element_from_permutation(min_max_fiber(step)[0]).inversions
                   for step in chain]
        order = admissible_order_through(targets, n, 1)
        witness = inversion_set(order)
    else:
        msg = (f"Surjectivity witnesses are built in dimensions 2 and 3, "
               f"got {triangulation.d}")
        raise InputError(msg)
    if f_def2(witness) != triangulation:
        msg = f"Witness {witness} does not map onto {triangulation}"
        raise ConstructionError(msg)
    return witness


def _require_standard(triangulation):
    n = triangulation.n
    if triangulation.labels != ground_set(n):
        msg = (f"g is defined on triangulations with labels 1..n, got "
               f"{list(triangulation.labels)}")
        raise InputError(msg)
    return n, triangulation.d


def g(triangulation):
    """
    g(S) in B(n-1,d): the (d+1)-subsets X of [n-1] such that collapsing S
    onto X u {n} gives 1̂.
    """
    n, d = _require_standard(triangulation)
    inversions = set()
    for kept in subsets(ground_set(n - 1), d + 1):
        _, top = bottom_top(kept + (n,), d)
        if collapse(triangulation, kept) == top:
            inversions.add(kept)
    return BruhatElement(n - 1, d, frozenset(inversions))


def _rectangle_dag(rectangle):
    """Constraints of a rectangular order between members one step apart
    in a single coordinate."""
    graph = nx.DiGraph()
    graph.add_nodes_from(sorted(rectangle.members))
    for member in rectangle.members:
        size = len(member)
        for i in range(1, size + 1):
            moved = member[:i - 1] + (member[i - 1] + 1,) + member[i:]
            if moved not in rectangle.members:
                continue
            if (size - i) % 2 == 0:
                graph.add_edge(moved, member)
            else:
                graph.add_edge(member, moved)
    return graph


def rectangular_orders(rectangle):
    """Iterator over the rectangular orders of a snug rectangle."""
    for sequence in nx.all_topological_sorts(_rectangle_dag(rectangle)):
        yield RectangularOrder(rectangle, tuple(sequence))


def first_rectangular_order(rectangle):
    sequence = nx.lexicographical_topological_sort(_rectangle_dag(rectangle))
    return RectangularOrder(rectangle, tuple(sequence))


def is_rectangular(rectangle, sequence):
    if sorted(sequence) != sorted(rectangle.members):
        return False
    position = {member: i for i, member in enumerate(sequence)}
    return all(position[a] < position[b]
               for a, b in _rectangle_dag(rectangle).edges)


def same_commutation_class(first, second):
    """
    True if two orders of the same sets only differ on pairs of sets that
    never share a packet.
    """
    if sorted(first) != sorted(second):
        return False
    position = {member: i for i, member in enumerate(second)}
    for a, b in combinations(first, 2):
        if len(set(a) | set(b)) == len(a) + 1 and position[a] > position[b]:
            return False
    return True


def g_via_ascending(triangulation, order=None):
    """
    g(S) from an ascending order of the simplices, writing each snug
    rectangle in a rectangular order and taking the class of the
    concatenation.

    Raises
    ------
    ConstructionError
        If the concatenated order is not admissible.
    """
    n, d = _require_standard(triangulation)
    if d < 1:
        msg = "g via ascending orders needs d >= 1"
        raise InputError(msg)
    if order is None:
        order = first_ascending_order(triangulation)
    sequence = []
    for simplex in order:
        sequence.extend(
            first_rectangular_order(snug_rectangle(simplex)).sequence)
    admissible = AdmissibleOrder(n - 1, d, tuple(sequence))
    if not is_admissible(admissible):
        msg = (f"Rectangular orders along an ascending order of "
               f"{triangulation} do not concatenate to an admissible order")
        raise ConstructionError(msg)
    return inversion_set(admissible)


def g_via_chain(triangulation):
    """
    g(S) for d >= 2: the chain of S(n,d-1) along an ascending order maps
    under g to a chain of B(n-1,d-1), and any maximal refinement of it is an
    admissible order whose class is g(S).
    """
    n, d = _require_standard(triangulation)
    if d < 2:
        msg = f"g via chains is only defined for d >= 2, got d={d}"
        raise InputError(msg)
    targets = [g(step).inversions for step in flip_chain(triangulation)]
    order = admissible_order_through(targets, n - 1, d - 1)
    return inversion_set(order)


def g_inverse(element):
    """
    The triangulation S in S(n,d) with g(S) = e, for e in B(n-1,d), or None
    if the inversion set of e is not superconsistent.

    Each d-subset X of [n-1] picks, for the i-th element c of its complement,
    s = c or c+1 according to whether X u {c} is an inversion and to the
    parity of d+i-c; X then lies in the snug rectangle of [n] minus the s.
    """
    n, d = element.n + 1, element.d
    if not is_superconsistent(element.inversions, element.n, d):
        return None
    inner = ground_set(n - 1)
    simplices = set()
    for stars in subsets(inner, d):
        chosen = []
        for i, c in enumerate(complement(stars, inner), start=1):
            inverted = tuple(sorted(stars + (c,))) in element.inversions
            even = (d + i - c) % 2 == 0
            chosen.append(c if inverted == even else c + 1)
        simplices.add(complement(chosen, ground_set(n)))
    violations = triangulation_violations(simplices, ground_set(n), d)
    if violations:
        msg = f"Preimage of {element} is not a triangulation: {violations[0]}"
        raise ConstructionError(msg)
    return Triangulation(ground_set(n), d, frozenset(simplices))


def flip_simplex(low, high):
    """The (d+2)-set whose lower facets `low` holds and whose upper facets
    `high` holds, or None if the pair is not a flip."""
    changed = low.simplices ^ high.simplices
    if not changed:
        return None
    simplex = tuple(sorted(set().union(*changed)))
    if len(simplex) != low.d + 2:
        return None
    lower = lower_facets_simplex(simplex)
    upper = upper_facets_simplex(simplex)
    if lower <= low.simplices and \
            high.simplices == (low.simplices - lower) | upper:
        return simplex
    return None


def check_rectangular_composition(low, high, max_permutations=5040):
    """
    For a flip low < high in S(n,d) with d >= 2, checks that an order of
    g(low)'s inversions, then an order of the snug rectangle of the flipped
    simplex, then an order of the rest is admissible exactly when the middle
    part is rectangular.
    """
    n, d = _require_standard(low)
    if d < 2:
        msg = f"Rectangular composition is checked for d >= 2, got d={d}"
        raise InputError(msg)
    simplex = flip_simplex(low, high)
    if simplex is None:
        msg = f"{low} and {high} are not related by a flip"
        raise InputError(msg)
    rectangle = snug_rectangle(simplex)
    members = sorted(rectangle.members)
    below, above = g(low).inversions, g(high).inversions
    if above != below | rectangle.members or below & rectangle.members:
        msg = (f"g({high}) is not g({low}) plus the snug rectangle of "
               f"{format_label_set(simplex)}")
        raise ConstructionError(msg)

    through = admissible_order_through([below, above], n - 1, d).sequence
    prefix = through[:len(below)]
    suffix = through[len(above):]
    count = 0
    for middle in permutations(members):
        count += 1
        if count > max_permutations:
            msg = (f"Snug rectangle of {format_label_set(simplex)} has too "
                   f"many orderings to scan")
            raise InputError(msg)
        order = AdmissibleOrder(n - 1, d + 1, prefix + middle + suffix)
        if is_admissible(order) != is_rectangular(rectangle, middle):
            return False
    return True


def small_poset_formula(d, i):
    """
    Inversion set of g(S_i) for the middle elements S_1..S_{d+1} of
    S(d+3,d), as subsets of [d+2].
    """
    if not 1 <= i <= d + 1:
        msg = f"S(d+3,d) has middle elements S_1..S_{d + 1}, not S_{i}"
        raise InputError(msg)
    ground = ground_set(d + 2)
    if (d - i) % 2 == 0:
        removed = range(1, i + 1)
    else:
        removed = range(i + 1, d + 3)
    return frozenset(complement((r,), ground) for r in removed)


def ascending_fiber(triangulation):
    """For a polygon triangulation, the permutations read off all of its
    ascending orders."""
    _check_polygon(triangulation)
    return {element_from_permutation(middle_vertex_word(order))
            for order in ascending_orders(triangulation)}
