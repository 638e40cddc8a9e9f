# -*- coding: utf-8 -*-
"""
Exhaustive small-scale checks of the structural properties of B(n,d),
S(n,d) and the maps between them.

Each suite takes VerifyLimits and returns a SuiteResult; run_suites collects
them into a pandas DataFrame.  The limits bound the ground-set size and the
dimension; each suite scales its own ranges from them.
"""
import logging
import math
import time
from dataclasses import dataclass, field
from itertools import combinations, islice
from typing import List

import numpy as np
import pandas as pd

from pybruhat import bruhat, cube_model, cyclic_model, maps, poset_tools
from pybruhat.bruhat import BruhatElement
from pybruhat.combinat_core import (DEFAULT_BUDGET, Budget, complement,
                                    format_label_set, ground_set,
                                    parse_family, subsets)
from pybruhat.cyclic_model import Triangulation
from pybruhat.data.base import load_golden_examples, load_known_counts
from pybruhat.errors import BudgetError, InputError, PybruhatError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VerifyLimits:
    max_n: int = 4
    max_d: int = 2
    seed: int = 20240601
    budget: Budget = DEFAULT_BUDGET


@dataclass
class SuiteResult:
    checks: int = 0
    failures: List[str] = field(default_factory=list)

    def check(self, condition, message):
        self.checks += 1
        if not condition:
            self.failures.append(message)
        return condition

    @property
    def ok(self):
        return not self.failures


def _polytope_labels(n):
    return ground_set(n + 2, start=0)


def _tamari_on(labels, d, budget):
    labels = tuple(labels)
    return cyclic_model.flip_closure(len(labels), d, budget, labels=labels)


def _tamari_hasse_on(labels, d, budget):
    return poset_tools.build_hasse(_tamari_on(labels, d, budget),
                                   cyclic_model.covers_up, 'tamari')


def _is_flip_or_equal(low, high):
    return low == high or high in cyclic_model.covers_up(low)


def moment_curve_above(j, facet):
    """
    Exact side test: solves for the polynomial p of degree < k through the
    points (t, t**k), t in `facet` (k = |facet|), and compares j**k with p(j).
    """
    k = len(facet)
    rows = [[t ** power for power in range(k)] for t in facet]
    coefficients = cube_model.solve_exact(rows, [t ** k for t in facet])
    height = sum(c * j ** power for power, c in enumerate(coefficients))
    return j ** k > height


def oracle_suite(limits):
    """Parity predicates against exact moment-curve computations."""
    result = SuiteResult()
    max_n, max_k = min(limits.max_n + 3, 8), min(limits.max_d + 2, 4)
    for k in range(1, max_k + 1):
        for facet in subsets(ground_set(max_n), k):
            outside = complement(facet, ground_set(max_n))
            side = {j: moment_curve_above(j, facet) for j in outside}
            for j in outside:
                result.check(cyclic_model.is_above(j, facet) == side[j],
                             f"is_above({j}, {format_label_set(facet)})")
            for i, j in combinations(outside, 2):
                result.check(
                    cyclic_model.opposite_sides(i, j, facet)
                    == (side[i] != side[j]),
                    f"opposite_sides({i}, {j}, {format_label_set(facet)})")
        for simplex in subsets(ground_set(max_n), k + 1):
            upper, lower = set(), set()
            for apex in simplex:
                facet = tuple(x for x in simplex if x != apex)
                (lower if moment_curve_above(apex, facet) else upper).add(
                    facet)
            name = format_label_set(simplex)
            result.check(cyclic_model.upper_facets_simplex(simplex) == upper,
                         f"upper facets of {name}")
            result.check(cyclic_model.lower_facets_simplex(simplex) == lower,
                         f"lower facets of {name}")
    return result


def counts_suite(limits):
    """Enumeration sizes against the reference table and the brute-force
    and flip-closure enumerators."""
    result = SuiteResult()
    table = load_known_counts()
    for row in table.itertuples(index=False):
        if row.d > limits.max_d + 2:
            continue
        if row.poset == 'bruhat' and row.n <= limits.max_n:
            found = len(bruhat.enumerate_bruhat(row.n, row.d, limits.budget))
        elif row.poset == 'tamari' and row.n <= limits.max_n + 2:
            found = len(cyclic_model.enumerate_tamari(row.n, row.d,
                                                      limits.budget))
        else:
            continue
        result.check(found == row.size,
                     f"|{row.poset}({row.n},{row.d})| = {found}, "
                     f"expected {row.size}")
    for n in range(1, limits.max_n + 1):
        for d in range(0, min(limits.max_d, n) + 1):
            if math.comb(n, d + 1) > 20:
                continue
            result.check(bruhat.enumerate_bruhat(n, d, limits.budget)
                         == bruhat.enumerate_bruhat_bruteforce(n, d),
                         f"brute force B({n},{d})")
    return result


def tiling_suite(limits):
    """Face complexes tile the projected cube, covers swap the facets of
    one face, and square totally positive maps have alternating
    preimages."""
    result = SuiteResult()
    for n in range(2, limits.max_n + 1):
        for d in range(1, min(limits.max_d, n - 1) + 1):
            projection = cube_model.vandermonde_map(n, d)
            elements = bruhat.enumerate_bruhat(n, d, limits.budget)
            for element in elements:
                report = cube_model.verify_tiling(
                    cube_model.face_complex(element), projection)
                result.check(report.ok, f"tiling of {element} in B({n},{d}): "
                             f"{report.violations[:1]}")
                for cover in bruhat.covers_up(element):
                    result.check(cube_model.cover_face_change(element, cover),
                                 f"faces of cover {element} < {cover}")
            top = cube_model.face_complex(bruhat.top(n, d))
            broken = top.without(top.faces[0].stars)
            result.check(not cube_model.verify_tiling(broken, projection).ok,
                         f"tiling with a missing face accepted in B({n},{d})")
            if math.comb(n, d) <= 6:
                cover_pairs = {(e, c) for e in elements
                               for c in bruhat.covers_up(e)}
                result.check(
                    bruhat.definitional_cover_pairs(n, d) == cover_pairs,
                    f"covers of B({n},{d}) read off admissible orders")
        square = cube_model.vandermonde_map(n, n)
        result.check(cube_model.preimage_alternates(square),
                     f"preimage signs of the {n}x{n} Vandermonde map")
    return result


def f_definitions_suite(limits):
    """The three constructions of f agree, f sends covers to flips, and
    admissible orders witness every element."""
    result = SuiteResult()
    for n in range(1, limits.max_n + 1):
        for d in range(0, min(limits.max_d + 1, n) + 1):
            labels = _polytope_labels(n)
            low, high = cyclic_model.bottom_top(labels, d + 1)
            for element in bruhat.enumerate_bruhat(n, d, limits.budget):
                image = maps.f_def2(element)
                result.check(maps.f_def1(element) == image,
                             f"first definition of f at {element}")
                result.check(maps.f_def3(element) == image,
                             f"third definition of f at {element}")
                result.check(cyclic_model.is_triangulation(
                    image.simplices, labels, d + 1),
                    f"f({element}) is not a triangulation")
                for cover in bruhat.covers_up(element):
                    result.check(_is_flip_or_equal(image, maps.f_def2(cover)),
                                 f"f on cover {element} < {cover}")
                if d >= 1:
                    order = bruhat.witness_order(element)
                    result.check(bruhat.inversion_set(order) == element,
                                 f"witness order of {element}")
                through = bruhat.admissible_order_through(
                    [element.inversions], n, d)
                result.check(bruhat.prefix_family(through, len(element))
                             == element.inversions,
                             f"chain through {element}")
                if d == 1:
                    result.check(bruhat.element_from_permutation(
                        bruhat.permutation_of(element)) == element,
                        f"permutation of {element}")
            result.check(maps.f_def2(bruhat.bottom(n, d)) == low,
                         f"f(0̂) in B({n},{d})")
            result.check(maps.f_def2(bruhat.top(n, d)) == high,
                         f"f(1̂) in B({n},{d})")
    return result


def d1_fibers_suite(limits):
    """Trees of permutations and polygon triangulations, and the fibers of
    f over polygon triangulations."""
    result = SuiteResult()
    for n in range(1, min(limits.max_n + 1, 6) + 1):
        elements = bruhat.enumerate_bruhat(n, 1, limits.budget)
        result.check(len(elements) == math.factorial(n), f"|B({n},1)|")
        fibers = {}
        for element in elements:
            image = maps.f_def2(element)
            word = bruhat.permutation_of(element)
            result.check(maps.theta(image) == maps.psi(word),
                         f"tree of {word}")
            fibers.setdefault(image, set()).add(element)
        for image in _tamari_on(_polytope_labels(n), 2, limits.budget):
            tree = maps.theta(image)
            result.check(maps.theta_inverse(tree, n) == image,
                         f"tree {maps.format_tree(tree)} inverts")
            result.check(maps.parse_tree(maps.format_tree(tree)) == tree,
                         f"tree text of {maps.format_tree(tree)}")
            fiber = fibers.get(image, set())
            result.check(maps.ascending_fiber(image) == fiber,
                         f"ascending orders of {image}")
            minimum, maximum = maps.min_max_fiber(image)
            low = bruhat.element_from_permutation(minimum)
            high = bruhat.element_from_permutation(maximum)
            interval = {e for e in elements
                        if bruhat.bruhat_leq(low, e)
                        and bruhat.bruhat_leq(e, high)}
            result.check(interval == fiber, f"fiber interval of {image}")
    return result


def _golden(name='fiber_without_maximum'):
    record = load_golden_examples()[name]
    n, d = record['n'], record['d']

    def element(family):
        return BruhatElement.from_family(n, d, parse_family(','.join(family)))

    return record, element


def surjectivity_suite(limits):
    """Every triangulation of dimension 2 or 3 is reached by f, and the
    fiber of the reference triangulation has no maximum."""
    result = SuiteResult()
    record, element = _golden()
    base = element(record['inversions'])
    image = Triangulation.from_simplices(
        _polytope_labels(record['n']), record['d'] + 1,
        parse_family(','.join(record['image'])))
    result.check(maps.f_def2(base) == image, "image of the reference element")
    fiber = set(maps.fiber_f(image, limits.budget))
    result.check(fiber == {element(x) for x in record['fiber']},
                 "fiber of the reference triangulation")
    result.check(set(maps.fiber_maximal_elements(fiber))
                 == {element(x) for x in record['maximal']},
                 "maximal elements of the reference fiber")
    result.check(maps.surjectivity_witness(image) in fiber,
                 "witness for the reference triangulation")

    for n in range(1, limits.max_n + 1):
        for dimension in (2, 3):
            if dimension - 1 > limits.max_d or n < dimension - 1:
                continue
            for target in _tamari_on(_polytope_labels(n), dimension,
                                     limits.budget):
                try:
                    witness = maps.surjectivity_witness(target)
                    reached = maps.f_def2(witness) == target
                except PybruhatError as exc:
                    reached = False
                    logger.debug("No witness for %s: %s", target, exc)
                result.check(reached, f"witness for {target}")
    return result


def links_suite(limits):
    """Links of f(e) against the vertex figure and the prefix map of K(e),
    and monotonicity of links at the end labels."""
    result = SuiteResult()
    for n in range(1, limits.max_n + 1):
        for d in range(1, min(limits.max_d, n) + 1):
            for element in bruhat.enumerate_bruhat(n, d, limits.budget):
                image = maps.f_def2(element)
                both = cyclic_model.link(image, (0, n + 1))
                first = cyclic_model.link(image, (0,))
                result.check(
                    cube_model.vertex_figure_ones(element) == both.simplices,
                    f"vertex figure of {element}")
                result.check(
                    cube_model.link_zero_simplices(element) == first.simplices,
                    f"prefix map of {element}")

    record, element = _golden()
    image = maps.f_def2(element(record['inversions']))
    expected = set(parse_family(','.join(record['link_both_ends'])))
    result.check(cyclic_model.link(image, (0, record['n'] + 1)).simplices
                 == expected, "link at both ends of the reference image")

    for m in range(3, limits.max_n + 2):
        for d in range(2, min(limits.max_d + 1, m - 1) + 1):
            labels = ground_set(m)
            src = _tamari_hasse_on(labels, d, limits.budget)
            for end, reverse in ((labels[0], False), (labels[-1], True)):
                rest = tuple(x for x in labels if x != end)
                dst = _tamari_hasse_on(rest, d - 1, limits.budget)
                failures = poset_tools.check_monotone(
                    lambda s, end=end: cyclic_model.link(s, (end,)),
                    src, dst, reverse=reverse)
                result.check(not failures,
                             f"link at {end} on S({m},{d}): {failures[:1]}")
    return result


def snug_suite(limits):
    """Snug partitions against triangulations, exact cover against flips,
    and collapses."""
    result = SuiteResult()
    for d in range(1, limits.max_d + 1):
        for n in range(d + 1, limits.max_n + 3):
            elements = cyclic_model.enumerate_tamari(n, d, limits.budget)
            result.check(elements == cyclic_model.flip_closure(
                n, d, limits.budget), f"exact cover of S({n},{d})")
            low, high = cyclic_model.bottom_top(ground_set(n), d)
            hasse = poset_tools.build_hasse(elements, cyclic_model.covers_up,
                                            'tamari')
            result.check(hasse.bottom() == low and hasse.top() == high,
                         f"extremes of S({n},{d})")
            for triangulation in elements:
                partition = cyclic_model.triangulation_to_snug(triangulation)
                result.check(cyclic_model.snug_to_triangulation(partition)
                             == triangulation,
                             f"snug partition of {triangulation}")
                result.check(cyclic_model.is_triangulation(
                    triangulation.simplices, triangulation.labels, d),
                    f"{triangulation} fails the facet test")
                result.check(
                    len(cyclic_model.first_ascending_order(triangulation))
                    == len(triangulation),
                    f"ascending order of {triangulation}")
            for generator in subsets(ground_set(n), d + 1):
                members = cyclic_model.snug_rectangle(generator).members
                inner = ground_set(n - 1)
                result.check(
                    cyclic_model.snug_complement(generator, n)
                    == {complement(x, inner) for x in members},
                    f"complementary rectangle of {generator}")
            if n > limits.max_n + 1:
                continue
            for triangulation in elements:
                for size in range(d, n):
                    for outer in subsets(ground_set(n - 1), size):
                        once = cyclic_model.collapse(triangulation, outer)
                        result.check(cyclic_model.is_triangulation(
                            once.simplices, once.labels, d),
                            f"collapse of {triangulation} onto {outer}")
                        for inner_size in range(d, size):
                            for kept in subsets(outer, inner_size):
                                result.check(
                                    cyclic_model.collapse(once, kept)
                                    == cyclic_model.collapse(triangulation,
                                                             kept),
                                    f"collapse of {triangulation} onto "
                                    f"{kept} through {outer}")
    return result


def superconsistency_suite(limits):
    """The image of g is the superconsistent part of B(n-1,d), g_inverse
    inverts it, and the small posets S(d+2,d) and S(d+3,d) have the
    expected shape."""
    result = SuiteResult()
    for d in range(1, limits.max_d + 1):
        for n in range(d + 2, limits.max_n + 2):
            triangulations = cyclic_model.enumerate_tamari(n, d,
                                                           limits.budget)
            images = {maps.g(s): s for s in triangulations}
            for element in bruhat.enumerate_bruhat(n - 1, d, limits.budget):
                superconsistent = bruhat.is_superconsistent(
                    element.inversions, n - 1, d)
                preimage = maps.g_inverse(element)
                result.check((element in images) == superconsistent,
                             f"superconsistency of {element}")
                result.check((preimage is None) != superconsistent,
                             f"g_inverse presence at {element}")
                if preimage is not None:
                    result.check(images.get(element) == preimage,
                                 f"g_inverse({element})")
            low, high = cyclic_model.bottom_top(ground_set(n), d)
            result.check(maps.g(low) == bruhat.bottom(n - 1, d),
                         f"g(0̂) on S({n},{d})")
            result.check(maps.g(high) == bruhat.top(n - 1, d),
                         f"g(1̂) on S({n},{d})")

    for d in range(1, limits.max_d + 2):
        result.check(len(cyclic_model.enumerate_tamari(d + 2, d,
                                                       limits.budget)) == 2,
                     f"|S({d + 2},{d})|")
        hasse = poset_tools.tamari_hasse(d + 3, d, limits.budget)
        result.check(len(hasse) == d + 3, f"|S({d + 3},{d})|")
        result.check(len(hasse.covers) == d + 3,
                     f"cover count of S({d + 3},{d})")
        degrees = [hasse.graph.degree(i) for i in hasse.graph.nodes]
        result.check(all(x == 2 for x in degrees),
                     f"S({d + 3},{d}) is not two chains from 0̂ to 1̂")
        expected = {frozenset(),
                    frozenset(subsets(ground_set(d + 2), d + 1))}
        expected |= {maps.small_poset_formula(d, i) for i in range(1, d + 2)}
        found = {maps.g(s).inversions for s in hasse.elements}
        result.check(found == expected, f"g on S({d + 3},{d})")
    return result


def g_monotone_suite(limits):
    """g is an embedding, covers add one snug rectangle, and rectangular
    orders behave as claimed."""
    result = SuiteResult()
    rectangle = cyclic_model.snug_rectangle((1, 3, 5))
    orders = {o.sequence for o in maps.rectangular_orders(rectangle)}
    result.check(orders == {((1, 4), (1, 3), (2, 4), (2, 3)),
                            ((1, 4), (2, 4), (1, 3), (2, 3))},
                 "rectangular orders of r(1,3,5)")

    for d in range(1, limits.max_d + 1):
        for n in range(d + 2, limits.max_n + 2):
            src = poset_tools.tamari_hasse(n, d, limits.budget)
            dst = poset_tools.bruhat_hasse(n - 1, d, limits.budget)
            result.check(len({maps.g(s) for s in src.elements}) == len(src),
                         f"g is injective on S({n},{d})")
            failures = poset_tools.check_embedding(maps.g, src, dst)
            result.check(not failures,
                         f"g is not an embedding on S({n},{d}): "
                         f"{failures[:1]}")
            for i, j in src.covers:
                low, high = src.elements[i], src.elements[j]
                simplex = maps.flip_simplex(low, high)
                added = maps.g(high).inversions - maps.g(low).inversions
                result.check(
                    simplex is not None
                    and maps.g(low).inversions <= maps.g(high).inversions
                    and added == cyclic_model.snug_rectangle(simplex).members,
                    f"cover {low} < {high} adds one snug rectangle")
                if d >= 2 and n <= 6:
                    try:
                        composed = maps.check_rectangular_composition(
                            low, high, max_permutations=720)
                    except InputError:
                        continue
                    result.check(composed, f"rectangular composition on "
                                           f"{low} < {high}")
            for generator in subsets(ground_set(n), d + 1):
                rect = cyclic_model.snug_rectangle(generator)
                sequences = [o.sequence for o in
                             islice(maps.rectangular_orders(rect), 24)]
                result.check(all(maps.is_rectangular(rect, s)
                                 for s in sequences),
                             f"rectangular orders of r{generator}")
                result.check(all(maps.same_commutation_class(sequences[0], s)
                                 for s in sequences),
                             f"commutation class of r{generator}")
    return result


def extension_suite(limits):
    """f(g(S)) is the extension of S, whose link at the new label is S."""
    result = SuiteResult()
    for d in range(1, limits.max_d + 1):
        for n in range(d + 1, limits.max_n + 2):
            for triangulation in cyclic_model.enumerate_tamari(n, d,
                                                               limits.budget):
                extended = cyclic_model.extension(triangulation)
                result.check(maps.f_def2(maps.g(triangulation)) == extended,
                             f"f(g({triangulation}))")
                result.check(cyclic_model.link(extended, (0,)) == triangulation,
                             f"link of the extension of {triangulation}")
                result.check(cyclic_model.is_triangulation(
                    extended.simplices, extended.labels, d + 1),
                    f"extension of {triangulation}")
    return result


def g_definitions_suite(limits):
    """g from ascending orders and from chains agrees with g."""
    result = SuiteResult()
    for d in range(1, limits.max_d + 1):
        for n in range(d + 2, limits.max_n + 2):
            for triangulation in cyclic_model.enumerate_tamari(n, d,
                                                               limits.budget):
                expected = maps.g(triangulation)
                for order in islice(
                        cyclic_model.ascending_orders(triangulation), 12):
                    result.check(
                        maps.g_via_ascending(triangulation, order)
                        == expected,
                        f"g via ascending order {order}")
                if d >= 2:
                    result.check(maps.g_via_chain(triangulation) == expected,
                                 f"g via chains at {triangulation}")
                else:
                    try:
                        maps.g_via_chain(triangulation)
                        rejected = False
                    except InputError:
                        rejected = True
                    result.check(rejected, "g via chains accepted d=1")
    return result


def moebius_suite(limits):
    """Möbius values at the extremes and the defining sum on random
    intervals."""
    result = SuiteResult()
    for hasse in (poset_tools.bruhat_hasse(3, 1, limits.budget),
                  poset_tools.tamari_hasse(5, 2, limits.budget)):
        low, high = hasse.bottom(), hasse.top()
        result.check(hasse.moebius(low, high) == 1,
                     f"mu(0̂,1̂) in the {hasse.kind} poset")
        result.check(hasse.moebius(low, low) == 1, "mu(x,x)")

    n, d = min(limits.max_n, 5), min(limits.max_d, 2)
    hasse = poset_tools.bruhat_hasse(n, d, limits.budget)
    leq = hasse.leq_matrix()
    rng = np.random.default_rng(limits.seed)
    for _ in range(100):
        i = int(rng.integers(len(hasse)))
        above = np.flatnonzero(leq[i, :])
        j = int(rng.choice(above))
        a, b = hasse.elements[i], hasse.elements[j]
        total = sum(hasse.moebius(a, z) for z in hasse.interval(a, b))
        result.check(total == (1 if i == j else 0),
                     f"Möbius sum over [{a}, {b}] in B({n},{d})")
    return result


SUITES = {
    'oracle': oracle_suite,
    'counts': counts_suite,
    'tiling': tiling_suite,
    'f-definitions': f_definitions_suite,
    'd1-fibers': d1_fibers_suite,
    'surjectivity': surjectivity_suite,
    'links': links_suite,
    'snug': snug_suite,
    'superconsistency': superconsistency_suite,
    'g-monotone': g_monotone_suite,
    'extension': extension_suite,
    'g-definitions': g_definitions_suite,
    'moebius': moebius_suite,
}

# result numbers used to cite the suites
SUITE_ALIASES = {
    'thm2.1': ('tiling',),
    'thm4.x': ('f-definitions',),
    'prop5.x': ('d1-fibers',),
    'prop6.1': ('surjectivity',),
    'prop7.x': ('links',),
    'thm8.1': ('snug',),
    'thm9.1': ('superconsistency',),
    'thm10.1': ('g-monotone',),
    'thm11.1': ('extension', 'g-definitions'),
    'prop12.x': ('moebius',),
}


def expand_suites(names):
    """
    Resolves 'all' and the result-number aliases, and removes duplicates,
    keeping names sorted.
    """
    selected = set()
    for name in names:
        if name == 'all':
            selected.update(SUITES)
        elif name in SUITES:
            selected.add(name)
        elif name in SUITE_ALIASES:
            selected.update(SUITE_ALIASES[name])
        else:
            msg = f"Unknown verification suite '{name}'"
            raise InputError(msg)
    return sorted(selected)


def run_suites(names, limits=VerifyLimits()):
    """
    Runs the named suites.

    Returns
    -------
    report : pandas.DataFrame
        One row per suite, sorted by name, with the number of checks and
        failures, a pass/fail status and the first failure message.

    Raises
    ------
    BudgetError
        If a suite runs out of budget.
    """
    rows = []
    for name in expand_suites(names):
        started = time.monotonic()
        try:
            outcome = SUITES[name](limits)
        except BudgetError:
            raise
        except PybruhatError as exc:
            outcome = SuiteResult(1, [f"raised {type(exc).__name__}: "
                                      f"{exc.args[0]}"])
        elapsed = time.monotonic() - started
        logger.info("%s: %d checks, %d failures (%.1f s)", name,
                    outcome.checks, len(outcome.failures), elapsed)
        for message in outcome.failures[:5]:
            logger.debug("%s failure: %s", name, message)
        rows.append({'suite': name, 'checks': outcome.checks,
                     'failures': len(outcome.failures),
                     'status': 'pass' if outcome.ok else 'FAIL',
                     'first_failure': (outcome.failures[0]
                                       if outcome.failures else '')})
    return pd.DataFrame(rows, columns=['suite', 'checks', 'failures',
                                       'status', 'first_failure'])
