# -*- coding: utf-8 -*-
"""
Triangulations of cyclic polytopes, the elements of S(n,d).

Points are taken on the moment curve t -> (t, t**2, ..., t**d), but every
geometric question is answered by a parity count on labels: whether a point
lies above a hyperplane through other points only depends on how many of
those points come after it.  Ground sets are explicit label tuples so that
triangulations on [0, n+1] or on I u {n} are handled like those on [n].
"""
import logging
import time
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations, product
from typing import FrozenSet, NamedTuple, Tuple

import networkx as nx
from dlx import DLX

from pybruhat.combinat_core import (DEFAULT_BUDGET, LabelSet, as_label_set,
                                    complement, format_family,
                                    format_label_set, ground_set, subsets)
from pybruhat.errors import ConstructionError, InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Triangulation:
    """
    A set of (d+1)-subsets of `labels`, read as d-simplices of the cyclic
    polytope with vertices `labels`.
    """
    labels: Tuple[int, ...]
    d: int
    simplices: FrozenSet[LabelSet]

    @classmethod
    def from_simplices(cls, labels, d, simplices, check=True):
        """
        Builds a triangulation from raw label lists.

        Raises
        ------
        InputError
            If a simplex has the wrong size or leaves the ground set, or if
            the simplices do not form a triangulation (unless check is False).
        """
        labels = as_label_set(labels)
        if d < 0 or len(labels) < d + 1:
            msg = f"{len(labels)} labels cannot carry {d}-simplices"
            raise InputError(msg)
        members = set()
        for simplex in simplices:
            simplex = as_label_set(simplex, ground=labels)
            if len(simplex) != d + 1:
                msg = f"Simplex {simplex} does not have {d + 1} vertices"
                raise InputError(msg)
            members.add(simplex)
        if check:
            violations = triangulation_violations(members, labels, d)
            if violations:
                msg = (f"{format_family(members) or '{}'} is not a "
                       f"triangulation: {violations[0]}")
                raise InputError(msg)
        return cls(labels, d, frozenset(members))

    @property
    def n(self):
        return len(self.labels)

    @property
    def sorted_simplices(self):
        return tuple(sorted(self.simplices))

    def sort_key(self):
        return self.sorted_simplices

    def to_json(self):
        return {'type': 'tamari', 'labels': list(self.labels), 'd': self.d,
                'simplices': [list(x) for x in self.sorted_simplices]}

    @classmethod
    def from_json(cls, data):
        try:
            if data.get('type', 'tamari') != 'tamari':
                msg = f"Expected a tamari element, got type {data['type']!r}"
                raise InputError(msg)
            return cls.from_simplices(data['labels'], int(data['d']),
                                      data['simplices'])
        except (KeyError, TypeError, AttributeError) as exc:
            msg = f"Malformed tamari element {data!r} ({exc})"
            raise InputError(msg)

    def __len__(self):
        return len(self.simplices)

    def __str__(self):
        return format_family(self.simplices)


class SnugRectangle(NamedTuple):
    generator: LabelSet
    members: FrozenSet[LabelSet]


class SnugPartition(NamedTuple):
    n: int
    d: int
    rectangles: FrozenSet[SnugRectangle]


def is_above(j, facet):
    """
    True if the moment-curve point j lies above the hyperplane through the
    points of `facet` (in dimension |facet|): an even number of the facet's
    labels exceed j.
    """
    if j in facet:
        msg = f"Label {j} belongs to {tuple(facet)}"
        raise InputError(msg)
    return sum(1 for f in facet if f > j) % 2 == 0


def opposite_sides(i, j, hyperplane):
    """True if points i and j are separated by the hyperplane through
    `hyperplane`: an odd number of its labels lie strictly between them."""
    if i == j or i in hyperplane or j in hyperplane:
        msg = f"Labels {i}, {j} must be distinct and outside {hyperplane}"
        raise InputError(msg)
    low, high = min(i, j), max(i, j)
    return sum(1 for a in hyperplane if low < a < high) % 2 == 1


def upper_facets_simplex(simplex):
    """
    Facets lying on top of a k-simplex (k = |simplex| - 1) on the moment
    curve in dimension k: omit a vertex whose position has the parity of k.
    """
    return _simplex_facets(simplex, upper=True)


def lower_facets_simplex(simplex):
    return _simplex_facets(simplex, upper=False)


def _simplex_facets(simplex, upper):
    simplex = tuple(simplex)
    if len(simplex) < 2:
        msg = f"Simplex {simplex} has no facets"
        raise InputError(msg)
    k = len(simplex) - 1
    return frozenset(simplex[:i - 1] + simplex[i:]
                     for i in range(1, len(simplex) + 1)
                     if (i % 2 == k % 2) == upper)


def is_boundary_facet(facet, labels):
    sides = {is_above(j, facet) for j in labels if j not in facet}
    return len(sides) <= 1


def triangulation_violations(simplices, labels, d):
    """
    Reasons why `simplices` fail to triangulate the cyclic polytope on
    `labels` in dimension d; an empty list means they do.

    Each facet must be a boundary facet used by exactly one simplex, or be
    used by exactly two simplices whose remaining vertices lie on opposite
    sides of it.
    """
    if not simplices:
        return ["no simplices"]
    if d == 0:
        return [] if len(simplices) == 1 else ["more than one point"]

    apexes = defaultdict(list)
    for simplex in simplices:
        for apex in simplex:
            facet = tuple(x for x in simplex if x != apex)
            apexes[facet].append(apex)

    violations = []
    for facet in sorted(apexes):
        owners = apexes[facet]
        name = format_label_set(facet)
        if is_boundary_facet(facet, labels):
            if len(owners) != 1:
                violations.append(f"boundary facet {name} used "
                                  f"{len(owners)} times")
        elif len(owners) != 2:
            violations.append(f"interior facet {name} used "
                              f"{len(owners)} times")
        elif not opposite_sides(owners[0], owners[1], facet):
            violations.append(f"simplices overlap across facet {name}")
    return violations


def is_triangulation(simplices, labels, d):
    return not triangulation_violations(set(simplices), tuple(labels), d)


def bottom_top(labels, d):
    """
    0̂ and 1̂ of the triangulations of the cyclic polytope on `labels`:
    the lower and the upper facets of the cyclic polytope one dimension up.
    """
    labels = tuple(labels)
    if len(labels) < d + 1:
        msg = f"{len(labels)} labels cannot carry {d}-simplices"
        raise InputError(msg)
    lower, upper = set(), set()
    for face in combinations(labels, d + 1):
        sides = {is_above(j, face) for j in labels if j not in face}
        if sides <= {True}:
            lower.add(face)
        if sides <= {False}:
            upper.add(face)
    return (Triangulation(labels, d, frozenset(lower)),
            Triangulation(labels, d, frozenset(upper)))


def standard_relabel(triangulation, start=1):
    """The same triangulation with its labels replaced by start, start+1, ..."""
    renumber = {label: i for i, label in
                enumerate(triangulation.labels, start=start)}
    simplices = frozenset(tuple(renumber[x] for x in simplex)
                          for simplex in triangulation.simplices)
    return Triangulation(ground_set(triangulation.n, start), triangulation.d,
                         simplices)


def snug_rectangle(generator):
    """
    r(a_1, ..., a_{d+1}): the d-sets with exactly one element in each window
    [a_i, a_{i+1} - 1].
    """
    generator = as_label_set(generator)
    windows = [range(a, b) for a, b in zip(generator, generator[1:])]
    return SnugRectangle(generator, frozenset(product(*windows)))


def snug_complement(generator, n):
    """
    Complements in [n-1] of the members of r(A), from the product of the
    pairs {c-1, c} over the elements c of [n] missing from A.
    """
    generator = as_label_set(generator, ground=range(1, n + 1))
    missing = complement(generator, ground_set(n))
    family = set()
    for choice in product(*[(c - 1, c) for c in missing]):
        if all(1 <= x <= n - 1 for x in choice) \
                and all(a < b for a, b in zip(choice, choice[1:])):
            family.add(choice)
    return frozenset(family)


def triangulation_to_snug(triangulation):
    """The snug rectangles of the simplices, on label positions 1..n."""
    standard = standard_relabel(triangulation)
    return SnugPartition(standard.n, standard.d,
                         frozenset(snug_rectangle(simplex)
                                   for simplex in standard.simplices))


def snug_to_triangulation(partition, labels=None):
    """
    Inverse of triangulation_to_snug.

    Raises
    ------
    InputError
        If the rectangles miss or overlap on a d-subset of [n-1].
    """
    n, d = partition.n, partition.d
    seen = defaultdict(int)
    for rectangle in partition.rectangles:
        if rectangle != snug_rectangle(rectangle.generator):
            msg = f"{rectangle.generator} does not carry its snug rectangle"
            raise InputError(msg)
        for member in rectangle.members:
            seen[member] += 1
    for member in subsets(range(1, n), d):
        if seen[member] != 1:
            msg = (f"{format_label_set(member)} lies in {seen[member]} "
                   f"rectangles")
            raise InputError(msg)
    labels = ground_set(n) if labels is None else tuple(labels)
    simplices = frozenset(tuple(labels[x - 1] for x in rectangle.generator)
                          for rectangle in partition.rectangles)
    return Triangulation(labels, d, simplices)


def _check_tamari_parameters(n, d):
    if d < 1 or n < d + 1:
        msg = f"S(n,d) needs d >= 1 and n >= d+1, got n={n}, d={d}"
        raise InputError(msg)


def enumerate_tamari(n, d, budget=DEFAULT_BUDGET):
    """
    Enumerates S(n,d) as the exact covers of the d-subsets of [n-1] by snug
    rectangles.

    Returns
    -------
    elements : list of Triangulation
        On labels 1..n, in canonical order.

    Raises
    ------
    BudgetError
    """
    _check_tamari_parameters(n, d)
    columns = subsets(range(1, n), d)
    column_of = {member: i for i, member in enumerate(columns)}
    solver = DLX([(format_label_set(member), DLX.PRIMARY)
                  for member in columns])
    generators = subsets(ground_set(n), d + 1)
    rows = [sorted(column_of[member]
                   for member in snug_rectangle(generator).members)
            for generator in generators]
    solver.appendRows(rows, generators)

    started = time.monotonic()
    elements = []
    for solution in solver.solve():
        simplices = frozenset(solver.N[node] for node in solution)
        elements.append(Triangulation(ground_set(n), d, simplices))
        budget.check(len(elements), started)
    logger.debug("S(%d,%d): %d exact covers", n, d, len(elements))
    return sorted(elements, key=Triangulation.sort_key)


def _flips(triangulation, upward):
    """Triangulations reached by one flip up (or down)."""
    results = []
    simplices = triangulation.simplices
    for circuit in combinations(triangulation.labels, triangulation.d + 2):
        lower = lower_facets_simplex(circuit)
        upper = upper_facets_simplex(circuit)
        removed, added = (lower, upper) if upward else (upper, lower)
        if removed <= simplices:
            results.append(Triangulation(triangulation.labels,
                                         triangulation.d,
                                         (simplices - removed) | added))
    return results


def covers_up(triangulation):
    return _flips(triangulation, upward=True)


def covers_down(triangulation):
    """Triangulations below `triangulation` by one flip: a (d+2)-set whose
    upper facets all belong to it has them replaced by its lower facets."""
    return _flips(triangulation, upward=False)


def flip_closure(n, d, budget=DEFAULT_BUDGET, labels=None):
    """S(n,d) as the closure of 0̂ under upward flips."""
    _check_tamari_parameters(n, d)
    labels = ground_set(n) if labels is None else tuple(labels)
    start, _ = bottom_top(labels, d)
    started = time.monotonic()
    seen = {start}
    frontier = [start]
    while frontier:
        grown = []
        for triangulation in frontier:
            for cover in covers_up(triangulation):
                if cover not in seen:
                    seen.add(cover)
                    grown.append(cover)
            budget.check(len(seen), started)
        frontier = grown
    return sorted(seen, key=Triangulation.sort_key)


def ascending_dag(triangulation):
    """
    Directed graph on the simplices with an edge from A to B when they share
    a facet and B lies above it.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(triangulation.sorted_simplices)
    owners = defaultdict(list)
    for simplex in triangulation.simplices:
        for apex in simplex:
            owners[tuple(x for x in simplex if x != apex)].append(
                (apex, simplex))
    for facet, pair in owners.items():
        if len(pair) != 2:
            continue
        (apex_a, a), (apex_b, b) = pair
        if is_above(apex_b, facet):
            graph.add_edge(a, b)
        else:
            graph.add_edge(b, a)
    if not nx.is_directed_acyclic_graph(graph):
        msg = f"Ascending relation of {triangulation} has a cycle"
        raise ConstructionError(msg)
    return graph


def ascending_orders(triangulation):
    """Iterator over all ascending orders of the simplices."""
    for order in nx.all_topological_sorts(ascending_dag(triangulation)):
        yield tuple(order)


def first_ascending_order(triangulation):
    return tuple(nx.lexicographical_topological_sort(
        ascending_dag(triangulation)))


def flip_chain(triangulation):
    """
    Chain 0̂ = T_0 < T_1 < ... < T_r = 1̂ in the poset one dimension down,
    where T_i replaces the lower facets of the i-th simplex of an ascending
    order by its upper facets.

    Raises
    ------
    ConstructionError
        If a simplex's lower facets are not all present when it is reached.
    """
    if triangulation.d < 1:
        msg = "Flip chains need d >= 1"
        raise InputError(msg)
    current, _ = bottom_top(triangulation.labels, triangulation.d - 1)
    chain = [current]
    for simplex in first_ascending_order(triangulation):
        lower = lower_facets_simplex(simplex)
        if not lower <= current.simplices:
            msg = (f"Lower facets of {format_label_set(simplex)} missing "
                   f"from {current}")
            raise ConstructionError(msg)
        current = Triangulation(
            current.labels, current.d,
            (current.simplices - lower) | upper_facets_simplex(simplex))
        chain.append(current)
    return chain


def collapse(triangulation, kept):
    """
    c_I(S): moves each label a to the least label of I u {n} at or above a,
    keeping the simplices whose labels stay distinct.
    """
    labels = triangulation.labels
    last = labels[-1]
    kept = tuple(sorted(set(kept)))
    if not set(kept) <= set(labels[:-1]):
        msg = f"Collapse set {kept} must lie in {list(labels[:-1])}"
        raise InputError(msg)
    targets = kept + (last,)
    image = {label: next(t for t in targets if t >= label)
             for label in labels}
    simplices = set()
    for simplex in triangulation.simplices:
        moved = tuple(sorted({image[x] for x in simplex}))
        if len(moved) == len(simplex):
            simplices.add(moved)
    return Triangulation(targets, triangulation.d, frozenset(simplices))


def link(triangulation, at):
    """
    lk_v(S) for v the first label, the last label, or both: the simplices
    containing v with v removed.
    """
    at = tuple(sorted(set(at)))
    ends = {triangulation.labels[0], triangulation.labels[-1]}
    if not at or not set(at) <= ends:
        msg = (f"Links are taken at the end labels {sorted(ends)}, "
               f"not at {list(at)}")
        raise InputError(msg)
    labels = tuple(x for x in triangulation.labels if x not in at)
    simplices = frozenset(tuple(x for x in simplex if x not in at)
                          for simplex in triangulation.simplices
                          if set(at) <= set(simplex))
    return Triangulation(labels, triangulation.d - len(at), simplices)


def extension(triangulation):
    """
    Ŝ: the cone over a new first label together with, for each simplex
    (a_1, ..., a_{d+1}), the simplices (x, x+1, a_2, ..., a_{d+1}) for
    a_1 <= x <= a_2 - 2.
    """
    labels = triangulation.labels
    if labels != ground_set(len(labels), labels[0]) or labels[0] < 1:
        msg = (f"Extension needs consecutive labels starting at 1 or more, "
               f"got {list(labels)}")
        raise InputError(msg)
    if triangulation.d < 1:
        msg = "Extension needs d >= 1"
        raise InputError(msg)
    apex = labels[0] - 1
    simplices = set()
    for simplex in triangulation.simplices:
        simplices.add((apex,) + simplex)
        for x in range(simplex[0], simplex[1] - 1):
            simplices.add((x, x + 1) + simplex[1:])
    return Triangulation((apex,) + labels, triangulation.d + 1,
                         frozenset(simplices))
