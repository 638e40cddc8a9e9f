"""
    PyBruhat computes with the higher Bruhat orders B(n,d) and the higher
    Stasheff-Tamari posets S(n,d), and with the maps that relate them.

    B(n,d) is held as the set of consistent inversion sets of (d+1)-subsets
    of [n]; S(n,d) as the triangulations of the cyclic polytope, decided by
    parity tests on labels rather than by real geometry.  The library
    provides:

        (1) enumeration of both posets, their covers and Hasse diagrams;
        (2) the map f from B(n,d) onto S([0,n+1],d+1), its fibers and
        surjectivity witnesses in low dimension;
        (3) the map g from S(n,d) into B(n-1,d), its image and inverse;
        (4) links, collapses and the extension of a triangulation;
        (5) Möbius values, and a verification harness checking the
        structural properties on all small cases.

    A command line tool, `pybruhat`, exposes these operations.
"""
# flake8: noqa

__version__ = '0.1.0'

from pybruhat.data.base import load_known_counts
from pybruhat.data.base import load_golden_examples
