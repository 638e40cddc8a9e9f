# -*- coding: utf-8 -*-
"""
Ground-set subset arithmetic used by every other PyBruhat module.

A label set is a strictly increasing tuple of non-negative integers.  Tuples
compare lexicographically in Python, so sorting a collection of equal-size
label sets puts it in the canonical (lex) order used for serialization.
"""
import logging
import time
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from pybruhat.errors import BudgetError, InputError

logger = logging.getLogger(__name__)

LabelSet = Tuple[int, ...]


class Packet(NamedTuple):
    """The d-subsets of a (d+1)-set, in lexicographic order."""
    generator: LabelSet
    members: Tuple[LabelSet, ...]


@dataclass(frozen=True)
class Budget:
    """
    Limits applied to every enumeration.

    Parameters
    ----------
    max_elements : int
        Largest number of elements an enumeration may produce.
    max_seconds : float, optional
        Wall-clock limit, no limit if None.
    """
    max_elements: int = 10**7
    max_seconds: Optional[float] = None

    def check(self, count, started, what='elements'):
        """
        Raises BudgetError if `count` or the time elapsed since `started`
        (a time.monotonic() reading) is beyond the budget.
        """
        if count > self.max_elements:
            msg = (f"Budget of {self.max_elements} {what} exceeded "
                   f"({count} found so far)")
            raise BudgetError(msg)
        if self.max_seconds is not None:
            elapsed = time.monotonic() - started
            if elapsed > self.max_seconds:
                msg = (f"Time budget of {self.max_seconds:g} s exceeded "
                       f"after {count} {what}")
                raise BudgetError(msg)


DEFAULT_BUDGET = Budget()


def as_label_set(elements, ground=None):
    """
    Validates `elements` and returns them as a LabelSet.

    Parameters
    ----------
    elements : iterable of int
        Must already be strictly increasing.
    ground : collection of int, optional
        If given, every element must belong to it.

    Returns
    -------
    label_set : tuple of int

    Raises
    ------
    InputError
        If the elements are not strictly increasing non-negative integers, or
        fall outside the ground set.
    """
    try:
        label_set = tuple(int(x) for x in elements)
    except (TypeError, ValueError):
        msg = f"Cannot read {elements!r} as a set of integer labels"
        raise InputError(msg)

    if any(x < 0 for x in label_set):
        msg = f"Labels must be non-negative: {label_set}"
        raise InputError(msg)
    if any(a >= b for a, b in zip(label_set, label_set[1:])):
        msg = f"Labels must be strictly increasing: {label_set}"
        raise InputError(msg)
    if ground is not None:
        ground = set(ground)
        outside = [x for x in label_set if x not in ground]
        if outside:
            msg = f"Labels {outside} lie outside the ground set"
            raise InputError(msg)

    return label_set


def lex_compare(a, b):
    """
    Lexicographic comparison of two label sets of the same size.

    Returns -1, 0 or 1 for less, equal and greater.
    """
    if len(a) != len(b):
        msg = (f"Cannot compare label sets of different sizes "
               f"({len(a)} and {len(b)})")
        raise InputError(msg)
    a, b = tuple(a), tuple(b)
    return (a > b) - (a < b)


def packet_of(generator):
    """
    Returns the packet of `generator`: its subsets with one element removed,
    in lexicographic order.

    Removing a larger element gives a lexicographically smaller subset, so the
    members are produced by removing elements from the largest down.
    """
    generator = tuple(generator)
    if not generator:
        msg = "The packet of the empty set is not defined"
        raise InputError(msg)
    members = tuple(generator[:i] + generator[i + 1:]
                    for i in reversed(range(len(generator))))
    return Packet(generator, members)


def standardize(seq):
    """
    Replaces each entry of `seq` by its rank, giving a permutation of
    1..len(seq) with the same relative order.
    """
    seq = tuple(seq)
    if len(set(seq)) != len(seq):
        msg = f"Cannot standardize a sequence with repeated entries: {seq}"
        raise InputError(msg)
    ranks = {value: rank for rank, value in enumerate(sorted(seq), start=1)}
    return tuple(ranks[value] for value in seq)


def inverse_permutation(word):
    """The inverse of a permutation of 1..n in one-line notation."""
    word = tuple(word)
    if sorted(word) != list(range(1, len(word) + 1)):
        msg = f"{word} is not a permutation of 1..{len(word)}"
        raise InputError(msg)
    inverse = [0] * len(word)
    for position, value in enumerate(word, start=1):
        inverse[value - 1] = position
    return tuple(inverse)


def ground_set(n, start=1):
    return tuple(range(start, start + n))


def subsets(ground, k):
    """All k-subsets of `ground` as label sets, lex sorted."""
    return [tuple(c) for c in combinations(sorted(ground), k)]


def complement(label_set, ground):
    members = set(label_set)
    return tuple(x for x in sorted(ground) if x not in members)


def format_label_set(label_set):
    """Compact text for a label set: '134', or '1.10.12' if any label > 9."""
    if all(x < 10 for x in label_set):
        return ''.join(str(x) for x in label_set)
    return '.'.join(str(x) for x in label_set)


def parse_label_set(text):
    """Inverse of format_label_set."""
    text = text.strip()
    try:
        if '.' in text:
            elements = [int(x) for x in text.split('.')]
        else:
            elements = [int(x) for x in text]
    except ValueError:
        msg = f"Unable to read label set from '{text}'"
        raise InputError(msg)
    return as_label_set(elements)


def format_family(family):
    return ','.join(format_label_set(x) for x in sorted(family))


def parse_family(text):
    """Reads a comma-separated family such as '123,124,456,356'."""
    text = text.strip()
    if not text:
        return []
    return [parse_label_set(token) for token in text.split(',')]


class SubsetIndex:
    """
    Numbers the k-subsets of a ground set so that families of them can be
    held as integer bit masks, and records each packet (the members of a
    (k+1)-subset) as a tuple of bit positions in lex order.

    Parameters
    ----------
    ground : sequence of int
    k : int
    """

    def __init__(self, ground, k):
        self.ground = tuple(sorted(ground))
        self.k = k
        self.members: List[LabelSet] = subsets(self.ground, k)
        self.position: Dict[LabelSet, int] = {
            member: i for i, member in enumerate(self.members)}
        self.packets: List[Tuple[int, ...]] = [
            tuple(self.position[m] for m in packet_of(generator).members)
            for generator in combinations(self.ground, k + 1)]
        self.packets_through: List[List[Tuple[int, ...]]] = [
            [] for _ in self.members]
        for packet in self.packets:
            for bit in packet:
                self.packets_through[bit].append(packet)
        self.full_mask = (1 << len(self.members)) - 1

    def __len__(self):
        return len(self.members)

    def mask_of(self, family: Iterable[Sequence[int]]):
        mask = 0
        for member in family:
            try:
                mask |= 1 << self.position[tuple(member)]
            except KeyError:
                msg = (f"{tuple(member)} is not a {self.k}-subset of "
                       f"{list(self.ground)}")
                raise InputError(msg)
        return mask

    def family_of(self, mask):
        return tuple(member for i, member in enumerate(self.members)
                     if mask >> i & 1)

    def bits(self, mask):
        return [i for i in range(len(self.members)) if mask >> i & 1]
