# -*- coding: utf-8 -*-
"""
Command line interface of PyBruhat.
"""

# Main script used to run PyBruhat

# standard packages
import argparse
import logging
import sys

# our packages
from pybruhat import __version__
from pybruhat.errors import PybruhatError, VerificationError
from pybruhat.pybruhat_func import (
    DEFAULT_SEED,
    FORMATS,
    MAPS,
    POSETS,
    apply_map,
    build_command_config,
    build_diagram,
    describe_fiber,
    enumerate_poset,
    format_element,
    output_diagram,
    output_listing,
    output_report,
    parse_element,
)
from pybruhat.verify import VerifyLimits, run_suites


def cli():
    """
    Command line interface to enumerate higher Bruhat and higher
    Stasheff-Tamari posets, apply the maps between them and run the
    verification suites.

    Results go to standard output; counts and diagnostics are logged to
    standard error.  On a PybruhatError the message is logged and the
    process exits with the error's exit code: 1 for verification failures
    and internal errors, 2 for invalid input, 3 when the budget runs out and
    4 when a partial map has no value.
    """
    # setup logging
    formatter = logging.Formatter('PyBruhat: %(message)s')
    handler = logging.StreamHandler()
    handler.setFormatter(formatter)
    logging.basicConfig(handlers=[handler], level=logging.INFO)

    # get the arguments
    args = parse_args()

    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        config = build_command_config(args)
        logging.debug("Command configuration: %s", config)
        COMMANDS[config.subcommand](config)
    except PybruhatError as exc:
        # print error message and quit program on error
        logging.error(exc.args[0])
        sys.exit(exc.exit_code)


def run_enum(config):
    elements = enumerate_poset(config.poset, config.n, config.d,
                               config.budget)
    print(output_listing(elements, config.fmt))
    logging.info("%d elements in %s(%d,%d)", len(elements),
                 'B' if config.poset == 'bruhat' else 'S', config.n, config.d)


def run_map(config):
    element = parse_element(config.payload, config.poset, config.n,
                            config.d, config.base)
    image = apply_map(config.which, element)
    print(format_element(image, config.fmt))


def run_fiber(config):
    # the triangulation lives on 0..n+1 in dimension d+1
    triangulation = parse_element(config.payload, 'tamari', config.n + 2,
                                  config.d + 1, base=0)
    fiber, maximal, extremes = describe_fiber(triangulation, config.budget)
    print(output_listing(fiber, config.fmt))
    logging.info("%d elements of B(%d,%d) map onto %s", len(fiber),
                 config.n, config.d, triangulation)
    for element in maximal:
        logging.info("maximal: %s", element)
    if extremes is not None:
        minimum, maximum = extremes
        logging.info("Min: %s, Max: %s", ''.join(map(str, minimum)),
                     ''.join(map(str, maximum)))


def run_hasse(config):
    diagram = build_diagram(config.poset, config.n, config.d, config.budget)
    print(output_diagram(diagram, config.fmt))
    logging.info("%d elements, %d covers", len(diagram),
                 len(diagram.covers))


def run_moebius(config):
    diagram = build_diagram(config.poset, config.n, config.d, config.budget)
    low = diagram.bottom() if config.bottom is None else parse_element(
        config.bottom, config.poset, config.n, config.d, config.base)
    high = diagram.top() if config.top is None else parse_element(
        config.top, config.poset, config.n, config.d, config.base)
    print(diagram.moebius(low, high))


def run_verify(config):
    limits = VerifyLimits(max_n=config.max_n, max_d=config.max_d,
                          seed=config.seed, budget=config.budget)
    report = run_suites(config.suites, limits)
    fmt = 'json' if config.fmt == 'json' else 'text'
    print(output_report(report, fmt, filename=config.csv))
    failed = report[report['status'] == 'FAIL']
    if not failed.empty:
        first = failed.iloc[0]
        msg = (f"{len(failed)} suite(s) failed; first: {first['suite']}: "
               f"{first['first_failure']}")
        raise VerificationError(msg)


COMMANDS = {
    'enum': run_enum,
    'map': run_map,
    'fiber': run_fiber,
    'hasse': run_hasse,
    'moebius': run_moebius,
    'verify': run_verify,
}


def _add_common_arguments(parser, fmt_default='json'):
    parser.add_argument("--n", type=int, default=None,
                        help="Size of the ground set")
    parser.add_argument("--d", type=int, default=None,
                        help="Dimension parameter")
    parser.add_argument("--format", choices=FORMATS, default=fmt_default,
                        help="Output format (default: %(default)s)")
    parser.add_argument("--budget", type=int, default=None,
                        help="Largest number of elements to enumerate")
    parser.add_argument("--timeout", type=float, default=None,
                        help="Wall-clock limit in seconds")
    parser.add_argument("--base", type=int, default=1,
                        help=("First label of compact triangulation "
                              "payloads (default: 1)"))
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="Print debug-level logging output")


def _add_element_arguments(parser):
    parser.add_argument("--element", default=None,
                        help=("Element as JSON or in compact form, "
                              "e.g. '123,124,356,456'"))
    parser.add_argument("--stdin", action="store_true",
                        help="Read the element from standard input")


def parse_args(argv=None):
    """
    Reads PyBruhat arguments from command line and returns values
    that are usable by the program.

    Parameters
    ----------
    Please type: `$ pybruhat --help` to display all PyBruhat parameters
    """
    parser = argparse.ArgumentParser(
        prog="pybruhat",
        description=("Higher Bruhat orders, higher Stasheff-Tamari posets "
                     "and the maps between them"))
    parser.add_argument("-V", "--version", action="version",
                        help="Print PyBruhat package version and exit",
                        version=__version__)
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    enum = subparsers.add_parser("enum", help="List all elements of a poset")
    enum.add_argument("poset", choices=POSETS)
    _add_common_arguments(enum)

    map_ = subparsers.add_parser("map", help="Apply a map to an element")
    map_.add_argument("which", choices=sorted(MAPS))
    _add_common_arguments(map_)
    _add_element_arguments(map_)

    fiber = subparsers.add_parser(
        "fiber", help="List the elements of B(n,d) that f maps onto a "
                      "triangulation on 0..n+1")
    _add_common_arguments(fiber)
    _add_element_arguments(fiber)

    hasse = subparsers.add_parser("hasse", help="Export a Hasse diagram")
    hasse.add_argument("poset", choices=POSETS)
    _add_common_arguments(hasse)

    moebius = subparsers.add_parser(
        "moebius", help="Möbius value of an interval (default: 0̂ to 1̂)")
    moebius.add_argument("poset", choices=POSETS)
    moebius.add_argument("--bottom", default=None,
                         help="Lower end of the interval")
    moebius.add_argument("--top", default=None,
                         help="Upper end of the interval")
    _add_common_arguments(moebius)

    verify = subparsers.add_parser("verify",
                                   help="Run verification suites")
    verify.add_argument("suites", nargs="*", default=["all"],
                        help="Suite names, or 'all'")
    verify.add_argument("--max-n", dest="max_n", type=int, default=4,
                        help="Largest ground set checked (default: 4)")
    verify.add_argument("--max-d", dest="max_d", type=int, default=2,
                        help="Largest dimension checked (default: 2)")
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="Seed of the randomized checks")
    verify.add_argument("--csv", default=None, metavar="FILE",
                        help="Also write the report to a csv file")
    _add_common_arguments(verify, fmt_default='text')

    args = parser.parse_args(argv)

    return args


if __name__ == '__main__':
    cli()
