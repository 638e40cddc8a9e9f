# -*- coding: utf-8 -*-
"""
Set of functions behind the PyBruhat command line: reading element payloads,
building the command configuration, applying maps and formatting results.
"""
import json
import sys
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple

import pandas as pd

from pybruhat import bruhat, cyclic_model, maps, poset_tools
from pybruhat.bruhat import BruhatElement
from pybruhat.combinat_core import Budget, ground_set, parse_family
from pybruhat.cyclic_model import Triangulation
from pybruhat.errors import AbsentResultError, InputError
from pybruhat.verify import SUITE_ALIASES, SUITES


# Define custom message formatter for warnings
def _format_pybruhat_warning(message, *args, **kwargs):
    """
    Format warnings into PyBruhat style, discarding all but the message.
    """
    return f"\nUserWarning (PyBruhat): {message}\n"


# Replace built-in warning format function
warnings.formatwarning = _format_pybruhat_warning

# thefuzz falls back to difflib when python-Levenshtein is missing and warns
# about it; the suite names are short so the fallback is fine.
with warnings.catch_warnings():
    warnings.filterwarnings('ignore',
                            message="Using slow pure-python SequenceMatcher.")
    from thefuzz import fuzz, process

DEFAULT_SEED = 20240601

# limits beyond which the exhaustive suites take minutes rather than seconds
CI_LIMITS = {'max_n': 5, 'max_d': 3}

POSETS = ('bruhat', 'tamari')

MAPS = {'f': 'bruhat', 'g': 'tamari', 'g-inverse': 'bruhat',
        'link0': 'tamari', 'link-top': 'tamari', 'link-both': 'tamari',
        'extension': 'tamari'}

FORMATS = ('json', 'dot', 'text')


@dataclass(frozen=True)
class CommandConfig:
    """Validated settings of one command-line invocation."""
    subcommand: str
    poset: Optional[str] = None
    which: Optional[str] = None
    n: Optional[int] = None
    d: Optional[int] = None
    payload: Optional[str] = None
    base: int = 1
    fmt: str = 'json'
    budget: Budget = Budget()
    seed: int = DEFAULT_SEED
    suites: Tuple[str, ...] = ()
    max_n: int = 4
    max_d: int = 2
    bottom: Optional[str] = None
    top: Optional[str] = None
    csv: Optional[str] = None


def budget_from_args(max_elements, timeout):
    """
    Builds the enumeration budget from the --budget and --timeout flags.

    Raises
    ------
    InputError
        If either limit is not positive.
    """
    if max_elements is not None and max_elements <= 0:
        msg = f"Element budget must be positive, got {max_elements}"
        raise InputError(msg)
    if timeout is not None and timeout <= 0:
        msg = f"Timeout must be positive, got {timeout}"
        raise InputError(msg)
    if max_elements is None:
        return Budget(max_seconds=timeout)
    return Budget(max_elements=max_elements, max_seconds=timeout)


def fuzzy_matching(suite_name, limit=5):
    """
    Lists the verification suites whose names are closest to `suite_name`.

    Returns
    -------
    similar_suites : str
        One suite per line, with its matching score.
    """
    choices = sorted(SUITES) + sorted(SUITE_ALIASES) + ['all']
    matches = process.extract(suite_name, choices, limit=limit,
                              scorer=fuzz.token_sort_ratio)
    table = pd.DataFrame([(name, score) for name, score in matches],
                         columns=['suite', 'score'])
    return table.to_string(index=False)


def match_suites(names):
    """
    Checks the requested suite names.

    Raises
    ------
    InputError
        If a name is unknown; the message lists close matches.
    """
    names = tuple(names) or ('all',)
    for name in names:
        if name != 'all' and name not in SUITES \
                and name not in SUITE_ALIASES:
            suggestions = fuzzy_matching(name)
            msg = f"Suite {name} not found! Did you mean:\n{suggestions}"
            raise InputError(msg)
    return names


def warn_on_large_limits(max_n, max_d):
    if max_n > CI_LIMITS['max_n'] or max_d > CI_LIMITS['max_d']:
        msg = (f"Verification limits max_n={max_n}, max_d={max_d} go beyond "
               f"{CI_LIMITS['max_n']} and {CI_LIMITS['max_d']}; the "
               f"exhaustive suites may run for a long time.")
        warnings.warn(msg)


def _check_size(name, value, low=0):
    if value is not None and value < low:
        msg = f"--{name} must be at least {low}, got {value}"
        raise InputError(msg)


def build_command_config(args, stdin=None):
    """
    Reads the argparse namespace into a CommandConfig.

    Parameters
    ----------
    args : argparse.Namespace
    stdin : file-like, optional
        Source of the payload when --stdin is given; sys.stdin by default.

    Raises
    ------
    InputError
        If flags are missing, out of range or contradictory.
    """
    subcommand = args.subcommand
    payload = getattr(args, 'element', None)
    if getattr(args, 'stdin', False):
        if payload is not None:
            msg = "Give the element either with --element or with --stdin"
            raise InputError(msg)
        payload = (stdin or sys.stdin).read().strip()

    n, d = getattr(args, 'n', None), getattr(args, 'd', None)
    _check_size('n', n)
    _check_size('d', d)
    if subcommand in ('enum', 'hasse', 'moebius', 'fiber') \
            and (n is None or d is None):
        msg = f"'{subcommand}' needs both --n and --d"
        raise InputError(msg)
    if subcommand in ('map', 'fiber') and not payload:
        msg = f"'{subcommand}' needs an element (--element or --stdin)"
        raise InputError(msg)

    fmt = getattr(args, 'format', 'json')
    if fmt not in FORMATS:
        msg = f"--format must be one of {FORMATS}, got {fmt!r}"
        raise InputError(msg)

    suites = ()
    max_n, max_d = getattr(args, 'max_n', 4), getattr(args, 'max_d', 2)
    if subcommand == 'verify':
        suites = match_suites(args.suites)
        _check_size('max-n', max_n, 1)
        _check_size('max-d', max_d, 1)
        warn_on_large_limits(max_n, max_d)

    which = getattr(args, 'which', None)
    poset = getattr(args, 'poset', None)
    if subcommand == 'map':
        poset = MAPS[which]
    elif subcommand == 'fiber':
        poset = 'tamari'

    return CommandConfig(
        subcommand=subcommand, poset=poset, which=which, n=n, d=d,
        payload=payload, base=getattr(args, 'base', 1), fmt=fmt,
        budget=budget_from_args(getattr(args, 'budget', None),
                                getattr(args, 'timeout', None)),
        seed=getattr(args, 'seed', DEFAULT_SEED), suites=suites,
        max_n=max_n, max_d=max_d, bottom=getattr(args, 'bottom', None),
        top=getattr(args, 'top', None), csv=getattr(args, 'csv', None))


def parse_element(payload, poset, n=None, d=None, base=1):
    """
    Reads an element from JSON or from the compact family form.

    The compact form lists inversions (bruhat) or simplices (tamari) as
    comma-separated digit strings, e.g. '123,124,456,356'; it needs n and d,
    and for triangulations the labels are n consecutive integers from
    `base`.

    Raises
    ------
    InputError
    """
    payload = payload.strip()
    if payload.startswith('{') and payload != '{}':
        try:
            data = json.loads(payload)
        except ValueError as exc:
            msg = f"Unable to read element JSON ({exc})"
            raise InputError(msg)
        element = poset_tools.element_from_json(data)
        kind = 'bruhat' if isinstance(element, BruhatElement) else 'tamari'
        if kind != poset:
            msg = f"Expected a {poset} element, got a {kind} element"
            raise InputError(msg)
        return element

    if n is None or d is None:
        msg = "The compact element form needs --n and --d"
        raise InputError(msg)
    family = parse_family(payload if payload not in ('{}', '-') else '')
    if poset == 'bruhat':
        return BruhatElement.from_family(n, d, family)
    return Triangulation.from_simplices(ground_set(n, base), d, family)


def format_element(element, fmt='json'):
    if fmt == 'json':
        return poset_tools.element_key(element)
    return str(element) or '{}'


def output_listing(elements, fmt='json'):
    """
    Text for a list of elements: canonical JSON lines, or a table with
    --format text.
    """
    if fmt == 'json':
        return "\n".join(format_element(e) for e in elements)
    if fmt == 'text':
        table = pd.DataFrame({'size': [len(e) for e in elements],
                              'element': [format_element(e, 'text')
                                          for e in elements]})
        return table.to_string()
    msg = "Element listings are written as json or text"
    raise InputError(msg)


def output_report(report, fmt='text', filename=None):
    """
    Text form of a verification report; optionally also written to csv.
    """
    if filename is not None:
        report.to_csv(filename, sep=',', header=True, index=False)
    if fmt == 'json':
        return report.to_json(orient='records')
    return report.to_string(index=False)


def apply_map(which, element):
    """
    Applies a named map.

    Raises
    ------
    AbsentResultError
        For g-inverse of an element without preimage.
    InputError
        For an unknown map or an element the map does not accept.
    """
    if which == 'f':
        return maps.f(element)
    if which == 'g':
        return maps.g(element)
    if which == 'g-inverse':
        preimage = maps.g_inverse(element)
        if preimage is None:
            msg = (f"{element} is not superconsistent, so it has no "
                   f"preimage under g")
            raise AbsentResultError(msg)
        return preimage
    if which == 'extension':
        return cyclic_model.extension(element)
    if which in ('link0', 'link-top', 'link-both'):
        first, last = element.labels[0], element.labels[-1]
        ends = {'link0': (first,), 'link-top': (last,),
                'link-both': (first, last)}
        return cyclic_model.link(element, ends[which])
    msg = f"Unknown map {which!r}; choose from {sorted(MAPS)}"
    raise InputError(msg)


def describe_fiber(triangulation, budget):
    """
    The fiber of f over a triangulation on 0..n+1, with its maximal
    elements and, for polygons, its least and greatest permutations.
    """
    fiber = maps.fiber_f(triangulation, budget)
    maximal = maps.fiber_maximal_elements(fiber)
    extremes = None
    if triangulation.d == 2:
        extremes = maps.min_max_fiber(triangulation)
    return fiber, maximal, extremes


def enumerate_poset(poset, n, d, budget):
    if poset == 'bruhat':
        return bruhat.enumerate_bruhat(n, d, budget)
    return cyclic_model.enumerate_tamari(n, d, budget)


def build_diagram(poset, n, d, budget):
    if poset == 'bruhat':
        return poset_tools.bruhat_hasse(n, d, budget)
    return poset_tools.tamari_hasse(n, d, budget)


def output_diagram(diagram, fmt='json'):
    if fmt == 'text':
        table = pd.DataFrame(
            [(format_element(diagram.elements[i], 'text'),
              format_element(diagram.elements[j], 'text'))
             for i, j in diagram.covers], columns=['lower', 'upper'])
        return table.to_string(index=False)
    return poset_tools.export(diagram, fmt).rstrip("\n")
