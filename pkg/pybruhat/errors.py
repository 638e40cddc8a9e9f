# -*- coding: utf-8 -*-
"""
Exception classes shared by every PyBruhat module.

Each class carries the process exit code used by the command line interface.
"""


class PybruhatError(Exception):
    """Base class for all PyBruhat errors"""
    exit_code = 1


class InputError(PybruhatError):
    """Malformed element, label set, order or command-line payload"""
    exit_code = 2


class BudgetError(PybruhatError):
    """Enumeration stopped by the element-count or wall-clock budget"""
    exit_code = 3


class AbsentResultError(PybruhatError):
    """A partial map has no value on the requested element"""
    exit_code = 4


class ConstructionError(PybruhatError):
    """An internal construction contradicted a structural invariant"""
    exit_code = 1


class VerificationError(PybruhatError):
    """One or more verification suites reported failures"""
    exit_code = 1
