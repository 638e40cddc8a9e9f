# -*- coding: utf-8 -*-
"""
Elements of the higher Bruhat orders B(n,d).

An element is stored as its inversion set, a consistent family of
(d+1)-subsets of [n].  Admissible orders (orderings of the d-subsets in which
every packet appears in lex or reversed lex order) are only used as witnesses:
they are produced on demand by witness_order() and admissible_order_through().
"""
import logging
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import FrozenSet, Tuple

import networkx as nx

from pybruhat.combinat_core import (DEFAULT_BUDGET, LabelSet, SubsetIndex,
                                    as_label_set, format_family, ground_set,
                                    inverse_permutation, packet_of,
                                    standardize, subsets)
from pybruhat.errors import ConstructionError, InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AdmissibleOrder:
    """An ordering of all d-subsets of [n]."""
    n: int
    d: int
    sequence: Tuple[LabelSet, ...]


@dataclass(frozen=True)
class BruhatElement:
    """
    An element of B(n,d), identified with its inversion set.

    The constructor trusts its arguments; use from_family() to validate input
    coming from outside the library.
    """
    n: int
    d: int
    inversions: FrozenSet[LabelSet]

    @classmethod
    def from_family(cls, n, d, family, check_consistent=True):
        """
        Builds an element from an iterable of (d+1)-subsets of [n].

        Raises
        ------
        InputError
            If a member is not a (d+1)-subset of [n], or if the family is not
            consistent (unless check_consistent is False).
        """
        _check_parameters(n, d)
        inversions = set()
        for member in family:
            member = as_label_set(member, ground=range(1, n + 1))
            if len(member) != d + 1:
                msg = (f"Inversion {member} does not have {d + 1} elements "
                       f"(n={n}, d={d})")
                raise InputError(msg)
            inversions.add(member)
        if check_consistent and not is_consistent(inversions, n, d):
            msg = (f"{format_family(inversions) or '{}'} is not a consistent "
                   f"set in B({n},{d})")
            raise InputError(msg)
        return cls(n, d, frozenset(inversions))

    @property
    def sorted_inversions(self):
        return tuple(sorted(self.inversions))

    def sort_key(self):
        return (len(self.inversions), self.sorted_inversions)

    def to_json(self):
        return {'type': 'bruhat', 'n': self.n, 'd': self.d,
                'inversions': [list(x) for x in self.sorted_inversions]}

    @classmethod
    def from_json(cls, data):
        try:
            if data.get('type', 'bruhat') != 'bruhat':
                msg = f"Expected a bruhat element, got type {data['type']!r}"
                raise InputError(msg)
            return cls.from_family(int(data['n']), int(data['d']),
                                   data['inversions'])
        except (KeyError, TypeError, AttributeError) as exc:
            msg = f"Malformed bruhat element {data!r} ({exc})"
            raise InputError(msg)

    def __len__(self):
        return len(self.inversions)

    def __str__(self):
        return format_family(self.inversions) or '{}'


def _check_parameters(n, d):
    if not 0 <= d <= n:
        msg = f"B(n,d) needs 0 <= d <= n, got n={n}, d={d}"
        raise InputError(msg)


@lru_cache(maxsize=None)
def subset_index(n, d):
    """Bit-mask numbering of binom([n], d+1) with its (d+2)-packets."""
    return SubsetIndex(ground_set(n), d + 1)


def _restriction(mask, packet):
    """Size of the restriction of `mask` to `packet`, and whether it is an
    initial and/or final segment of the packet."""
    bits = [mask >> p & 1 for p in packet]
    count = sum(bits)
    return count, all(bits[:count]), all(bits[len(bits) - count:])


def _packets_consistent(mask, packets):
    for packet in packets:
        _, initial, final = _restriction(mask, packet)
        if not (initial or final):
            return False
    return True


def _grown_consistent(index, mask, bit):
    # only packets through the new bit can change status
    return _packets_consistent(mask, index.packets_through[bit])


def bottom(n, d):
    return BruhatElement(n, d, frozenset())


def top(n, d):
    return BruhatElement(n, d, frozenset(subsets(ground_set(n), d + 1)))


def is_consistent(inversions, n, d):
    """
    True if the restriction of `inversions` to every packet of a
    (d+2)-subset of [n] is an initial or final segment in lex order.
    """
    index = subset_index(n, d)
    return _packets_consistent(index.mask_of(inversions), index.packets)


def is_superconsistent(inversions, n, d):
    """
    True if every packet restriction is empty, full, an initial segment of
    odd length, or a final segment whose length has the parity of d.
    """
    index = subset_index(n, d)
    mask = index.mask_of(inversions)
    for packet in index.packets:
        count, initial, final = _restriction(mask, packet)
        if count == 0 or count == len(packet):
            continue
        if initial and count % 2 == 1:
            continue
        if final and count % 2 == d % 2:
            continue
        return False
    return True


def is_admissible(order):
    """
    Checks that every packet of a (d+1)-subset of [n] appears in `order` in
    lex or reversed lex order.

    Raises
    ------
    InputError
        If the sequence is not an ordering of all d-subsets of [n].
    """
    ground = ground_set(order.n)
    if sorted(order.sequence) != subsets(ground, order.d):
        msg = (f"Sequence is not an ordering of the {order.d}-subsets of "
               f"[{order.n}]")
        raise InputError(msg)
    position = {member: i for i, member in enumerate(order.sequence)}
    for generator in combinations(ground, order.d + 1):
        places = [position[m] for m in packet_of(generator).members]
        ascending = all(a < b for a, b in zip(places, places[1:]))
        descending = all(a > b for a, b in zip(places, places[1:]))
        if not (ascending or descending):
            return False
    return True


def inversion_set(order):
    """
    Returns the element of B(n,d) whose inversions are the (d+1)-subsets with
    a reversed packet in `order`.
    """
    if order.d < 1:
        msg = "Inversion sets are defined for orders of d-subsets with d >= 1"
        raise InputError(msg)
    if not is_admissible(order):
        msg = "Order is not admissible"
        raise InputError(msg)
    position = {member: i for i, member in enumerate(order.sequence)}
    inversions = set()
    for generator in combinations(ground_set(order.n), order.d + 1):
        members = packet_of(generator).members
        if position[members[0]] > position[members[-1]]:
            inversions.add(generator)
    return BruhatElement(order.n, order.d, frozenset(inversions))


def enumerate_bruhat(n, d, budget=DEFAULT_BUDGET):
    """
    Enumerates B(n,d) by breadth-first growth from the empty inversion set,
    one consistent single-element extension at a time.

    Parameters
    ----------
    n, d : int
    budget : Budget, optional

    Returns
    -------
    elements : list of BruhatElement
        Sorted by size, then lexicographically.

    Raises
    ------
    BudgetError
        If the budget is exceeded before the enumeration finishes.
    """
    _check_parameters(n, d)
    index = subset_index(n, d)
    started = time.monotonic()
    seen = {0}
    frontier = [0]
    while frontier:
        grown_frontier = []
        for mask in frontier:
            for bit in range(len(index)):
                if mask >> bit & 1:
                    continue
                grown = mask | 1 << bit
                if grown in seen or not _grown_consistent(index, grown, bit):
                    continue
                seen.add(grown)
                grown_frontier.append(grown)
            budget.check(len(seen), started)
        logger.debug("B(%d,%d): layer of %d elements", n, d,
                     len(grown_frontier))
        frontier = grown_frontier

    elements = [BruhatElement(n, d, frozenset(index.family_of(mask)))
                for mask in seen]
    return sorted(elements, key=BruhatElement.sort_key)


def enumerate_bruhat_bruteforce(n, d):
    """Filters every subset of binom([n], d+1); only for tiny cases."""
    index = subset_index(n, d)
    if len(index) > 20:
        msg = f"Brute force over 2^{len(index)} subsets is not supported"
        raise InputError(msg)
    elements = [BruhatElement(n, d, frozenset(index.family_of(mask)))
                for mask in range(index.full_mask + 1)
                if _packets_consistent(mask, index.packets)]
    return sorted(elements, key=BruhatElement.sort_key)


def covers_up(element):
    """Elements obtained by adding one inversion while staying consistent."""
    index = subset_index(element.n, element.d)
    mask = index.mask_of(element.inversions)
    covers = []
    for bit in range(len(index)):
        if mask >> bit & 1:
            continue
        grown = mask | 1 << bit
        if _grown_consistent(index, grown, bit):
            covers.append(BruhatElement(
                element.n, element.d,
                element.inversions | {index.members[bit]}))
    return covers


def covers_down(element):
    index = subset_index(element.n, element.d)
    mask = index.mask_of(element.inversions)
    covers = []
    for bit in index.bits(mask):
        shrunk = mask & ~(1 << bit)
        if _grown_consistent(index, shrunk, bit):
            covers.append(BruhatElement(
                element.n, element.d,
                element.inversions - {index.members[bit]}))
    return covers


def _chain_between(index, low, high):
    """
    Bits to add one at a time to get from mask `low` to mask `high` with
    every intermediate mask consistent, or None if there is no such chain.
    """
    dead = set()
    path = []

    def extend(mask):
        if mask == high:
            return True
        for bit in index.bits(high & ~mask):
            grown = mask | 1 << bit
            if grown in dead or not _grown_consistent(index, grown, bit):
                continue
            path.append(bit)
            if extend(grown):
                return True
            path.pop()
            dead.add(grown)
        return False

    return path if extend(low) else None


def bruhat_leq(low, high):
    """True if `high` is reachable from `low` by single-step extensions."""
    index = subset_index(low.n, low.d)
    low_mask = index.mask_of(low.inversions)
    high_mask = index.mask_of(high.inversions)
    if low_mask & ~high_mask:
        return False
    return _chain_between(index, low_mask, high_mask) is not None


def admissible_order_through(targets, n, d):
    """
    Returns an ordering of all (d+1)-subsets of [n] in which every prefix is
    consistent and which passes through each of `targets`, i.e. a maximal
    chain of B(n,d) through the targets.

    Parameters
    ----------
    targets : list of families of (d+1)-subsets
        Consistent and nested, in increasing order.
    n, d : int

    Returns
    -------
    order : AdmissibleOrder
        An order on binom([n], d+1), so an element of A(n, d+1).

    Raises
    ------
    InputError
        If a target is inconsistent or the targets are not nested.
    ConstructionError
        If two consecutive targets are not joined by single-step growth.
    """
    _check_parameters(n, d)
    index = subset_index(n, d)
    chain = [0]
    for target in targets:
        mask = index.mask_of(target)
        if not _packets_consistent(mask, index.packets):
            msg = f"Target {format_family(target) or '{}'} is not consistent"
            raise InputError(msg)
        if chain[-1] & ~mask:
            msg = "Targets must be nested"
            raise InputError(msg)
        chain.append(mask)
    chain.append(index.full_mask)

    sequence = []
    for low, high in zip(chain, chain[1:]):
        path = _chain_between(index, low, high)
        if path is None:
            msg = (f"No single-step chain from "
                   f"{format_family(index.family_of(low)) or '{}'} to "
                   f"{format_family(index.family_of(high)) or '{}'}")
            raise ConstructionError(msg)
        sequence.extend(index.members[bit] for bit in path)
    logger.debug("Chain of length %d through %d targets in B(%d,%d)",
                 len(sequence), len(targets), n, d)
    return AdmissibleOrder(n, d + 1, tuple(sequence))


def witness_order(element):
    """
    An admissible order on the d-subsets of [n] whose inversion set is that
    of `element`: a topological sort of the constraints that each packet runs
    forwards, or backwards when its generator is an inversion.
    """
    n, d = element.n, element.d
    if d < 1:
        msg = "Witness orders exist for d >= 1 only"
        raise InputError(msg)
    graph = nx.DiGraph()
    graph.add_nodes_from(subsets(ground_set(n), d))
    for generator in combinations(ground_set(n), d + 1):
        members = packet_of(generator).members
        if generator in element.inversions:
            members = members[::-1]
        nx.add_path(graph, members)
    try:
        sequence = tuple(nx.lexicographical_topological_sort(graph))
    except nx.NetworkXUnfeasible:
        msg = f"Packet constraints of {element} contain a cycle"
        raise ConstructionError(msg)
    return AdmissibleOrder(n, d, sequence)


def prefix_family(order, length):
    """The first `length` members of an order, as a set."""
    return frozenset(order.sequence[:length])


def element_from_permutation(word):
    """
    The element of B(n,1) of a permutation in one-line notation: the
    position pairs {i<j} with word[i] > word[j].
    """
    word = tuple(int(x) for x in word)
    n = len(word)
    if standardize(word) != word or sorted(word) != list(range(1, n + 1)):
        msg = f"{word} is not a permutation of 1..{n}"
        raise InputError(msg)
    inversions = frozenset((i, j) for i, j in combinations(range(1, n + 1), 2)
                           if word[i - 1] > word[j - 1])
    return BruhatElement(n, 1, inversions)


def permutation_of(element):
    if element.d != 1:
        msg = f"Only elements of B(n,1) are permutations, got d={element.d}"
        raise InputError(msg)
    # the witness order lists positions; the one-line word is its inverse
    return inverse_permutation(x for (x,) in witness_order(element).sequence)


def definitional_cover_pairs(n, d):
    """
    Cover pairs read off admissible orders directly: reversing a packet whose
    members sit consecutively, in lex order, in some admissible order.

    Runs over all orderings of binom([n], d), so only for tiny cases.
    """
    ground = ground_set(n)
    members = subsets(ground, d)
    if len(members) > 8:
        msg = f"Too many orderings of {len(members)} subsets to scan"
        raise InputError(msg)
    pairs = set()
    for sequence in permutations(members):
        order = AdmissibleOrder(n, d, sequence)
        if not is_admissible(order):
            continue
        low = inversion_set(order)
        for start in range(len(sequence) - d):
            window = sequence[start:start + d + 1]
            generator = tuple(sorted(set().union(*window)))
            if len(generator) != d + 1:
                continue
            if window != packet_of(generator).members:
                continue
            flipped = (sequence[:start] + window[::-1]
                       + sequence[start + d + 1:])
            high = inversion_set(AdmissibleOrder(n, d, flipped))
            pairs.add((low, high))
    return pairs
