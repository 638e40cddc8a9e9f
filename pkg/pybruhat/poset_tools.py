# -*- coding: utf-8 -*-
"""
Finite posets given by their Hasse diagrams.

A HasseDiagram holds the elements of B(n,d) or S(n,d) in canonical order and
the cover relation as a networkx DiGraph on element positions.  Order
queries go through a reflexive transitive closure held as a numpy boolean
matrix, which also drives the Möbius function.
"""
import json
import logging

import networkx as nx
import numpy as np

from pybruhat import bruhat, cyclic_model
from pybruhat.bruhat import BruhatElement
from pybruhat.combinat_core import DEFAULT_BUDGET
from pybruhat.cyclic_model import Triangulation
from pybruhat.errors import ConstructionError, InputError

logger = logging.getLogger(__name__)

KINDS = ('bruhat', 'tamari')


def element_key(element):
    """Canonical JSON text of an element."""
    return json.dumps(element.to_json(), separators=(',', ':'),
                      sort_keys=True)


def element_from_json(data):
    kind = data.get('type') if isinstance(data, dict) else None
    if kind == 'bruhat':
        return BruhatElement.from_json(data)
    if kind == 'tamari':
        return Triangulation.from_json(data)
    msg = f"Element type must be one of {KINDS}, got {kind!r}"
    raise InputError(msg)


class HasseDiagram:
    """
    Parameters
    ----------
    elements : sequence
        BruhatElement or Triangulation objects, all of one kind.
    covers : iterable of (int, int)
        Pairs (i, j) of positions in `elements` with elements[i] covered by
        elements[j].
    kind : str
        'bruhat' or 'tamari'.

    Raises
    ------
    InputError
        If the covers contain a cycle or an edge implied by other edges.
    """

    def __init__(self, elements, covers, kind):
        if kind not in KINDS:
            msg = f"Hasse diagram kind must be one of {KINDS}, got {kind!r}"
            raise InputError(msg)
        self.kind = kind
        self.elements = tuple(elements)
        self.keys = tuple(element_key(e) for e in self.elements)
        self.position = {e: i for i, e in enumerate(self.elements)}
        if len(self.position) != len(self.elements):
            msg = "Hasse diagram elements must be distinct"
            raise InputError(msg)

        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(range(len(self.elements)))
        self.graph.add_edges_from(covers)
        if not nx.is_directed_acyclic_graph(self.graph):
            msg = "Cover relation contains a cycle"
            raise InputError(msg)
        reduced = set(nx.transitive_reduction(self.graph).edges)
        extra = set(self.graph.edges) - reduced
        if extra:
            i, j = min(extra)
            msg = (f"Cover {self.elements[i]} < {self.elements[j]} is "
                   f"implied by other covers")
            raise InputError(msg)
        self._leq = None
        self._moebius = {}

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, HasseDiagram):
            return NotImplemented
        return (self.kind == other.kind and self.keys == other.keys
                and self.covers == other.covers)

    @property
    def covers(self):
        return sorted(self.graph.edges)

    def index_of(self, element):
        try:
            return self.position[element]
        except KeyError:
            msg = f"{element} is not an element of this {self.kind} poset"
            raise InputError(msg)

    def leq_matrix(self):
        """Boolean matrix with entry (i, j) set iff elements[i] <= elements[j]."""
        if self._leq is None:
            closure = nx.transitive_closure_dag(self.graph)
            size = len(self.elements)
            leq = np.eye(size, dtype=bool)
            for i, j in closure.edges:
                leq[i, j] = True
            self._leq = leq
        return self._leq

    def leq(self, a, b):
        return bool(self.leq_matrix()[self.index_of(a), self.index_of(b)])

    def interval(self, a, b):
        leq = self.leq_matrix()
        i, j = self.index_of(a), self.index_of(b)
        inside = np.flatnonzero(leq[i, :] & leq[:, j])
        return [self.elements[k] for k in inside]

    def _extreme(self, degree):
        ends = [i for i in self.graph.nodes if degree(i) == 0]
        if len(ends) != 1:
            msg = (f"{self.kind} poset has {len(ends)} extreme elements "
                   f"where one was expected")
            raise ConstructionError(msg)
        return self.elements[ends[0]]

    def bottom(self):
        return self._extreme(self.graph.in_degree)

    def top(self):
        return self._extreme(self.graph.out_degree)

    def _moebius_row(self, i):
        """mu(elements[i], z) for every z, by forward substitution over a
        topological order of the up-set of elements[i]."""
        if i not in self._moebius:
            leq = self.leq_matrix()
            mu = np.zeros(len(self.elements), dtype=np.int64)
            mu[i] = 1
            for z in nx.topological_sort(self.graph):
                if z == i or not leq[i, z]:
                    continue
                below = leq[i, :] & leq[:, z]
                below[z] = False
                mu[z] = -mu[below].sum()
            self._moebius[i] = mu
        return self._moebius[i]

    def moebius(self, a, b):
        """
        Möbius function mu(a, b).

        Raises
        ------
        InputError
            If a is not below b.
        """
        i, j = self.index_of(a), self.index_of(b)
        if not self.leq_matrix()[i, j]:
            msg = f"{a} is not below {b}: Möbius value undefined"
            raise InputError(msg)
        return int(self._moebius_row(i)[j])


def build_hasse(elements, cover_fn, kind):
    """
    Builds the Hasse diagram of `elements` from a function returning the
    upper covers of an element.
    """
    elements = list(elements)
    position = {e: i for i, e in enumerate(elements)}
    covers = []
    for i, element in enumerate(elements):
        for cover in cover_fn(element):
            if cover not in position:
                msg = f"Cover {cover} of {element} is not among the elements"
                raise InputError(msg)
            covers.append((i, position[cover]))
    logger.debug("Hasse diagram of %d %s elements with %d covers",
                 len(elements), kind, len(covers))
    return HasseDiagram(elements, covers, kind)


def bruhat_hasse(n, d, budget=DEFAULT_BUDGET):
    return build_hasse(bruhat.enumerate_bruhat(n, d, budget),
                       bruhat.covers_up, 'bruhat')


def tamari_hasse(n, d, budget=DEFAULT_BUDGET):
    return build_hasse(cyclic_model.enumerate_tamari(n, d, budget),
                       cyclic_model.covers_up, 'tamari')


def _image_index(map_fn, src, dst):
    images = []
    for element in src.elements:
        image = map_fn(element)
        if image not in dst.position:
            msg = (f"Image {image} of {element} is not an element of the "
                   f"target poset")
            raise InputError(msg)
        images.append(dst.position[image])
    return images


def check_monotone(map_fn, src, dst, reverse=False):
    """
    Cover pairs (a, b) of `src` whose images are not related as
    map(a) <= map(b) in `dst` (or map(b) <= map(a) with reverse=True).

    Returns
    -------
    failures : list of (element, element)
        Empty when the map is order-preserving (or order-reversing).
    """
    images = _image_index(map_fn, src, dst)
    leq = dst.leq_matrix()
    failures = []
    for i, j in src.covers:
        low, high = images[i], images[j]
        if reverse:
            low, high = high, low
        if not leq[low, high]:
            failures.append((src.elements[i], src.elements[j]))
    return failures


def check_embedding(map_fn, src, dst):
    """Pairs (a, b) of `src` for which a <= b and map(a) <= map(b)
    disagree; empty when the map is a poset embedding."""
    images = np.array(_image_index(map_fn, src, dst), dtype=np.int64)
    src_leq = src.leq_matrix()
    dst_leq = dst.leq_matrix()[np.ix_(images, images)]
    rows, cols = np.nonzero(src_leq != dst_leq)
    return [(src.elements[i], src.elements[j]) for i, j in zip(rows, cols)]


def _dot_label(element):
    return str(element).replace('"', '\\"') or '{}'


def export(diagram, fmt='json'):
    """
    Text form of a Hasse diagram: 'dot' for a graph description, 'json' for
    the element records and cover pairs.
    """
    if fmt == 'dot':
        lines = [f"digraph {diagram.kind} {{"]
        for i, element in enumerate(diagram.elements):
            lines.append(f'  n{i} [label="{_dot_label(element)}"];')
        for i, j in diagram.covers:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt == 'json':
        record = {'kind': diagram.kind,
                  'elements': [e.to_json() for e in diagram.elements],
                  'covers': [list(pair) for pair in diagram.covers]}
        return json.dumps(record, indent=2, sort_keys=True) + "\n"
    msg = f"Hasse diagrams export to 'dot' or 'json', not {fmt!r}"
    raise InputError(msg)


def import_diagram(text):
    """Reads the JSON written by export()."""
    try:
        record = json.loads(text)
        elements = [element_from_json(data) for data in record['elements']]
        covers = [tuple(pair) for pair in record['covers']]
        kind = record['kind']
    except (ValueError, KeyError, TypeError) as exc:
        msg = f"Unable to read Hasse diagram ({exc})"
        raise InputError(msg)
    return HasseDiagram(elements, covers, kind)
