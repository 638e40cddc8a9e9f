"""
Loaders for the reference tables shipped with PyBruhat.
"""
import json
from pathlib import Path

import pandas as pd

BASE_DIR = Path(__file__).resolve().parent


def load_known_counts():
    """Sizes of B(n,d) and S(n,d) used to check the enumerators."""
    return pd.read_csv(BASE_DIR.joinpath("known_counts.csv"))


def load_golden_examples():
    with open(BASE_DIR.joinpath("golden_examples.json"), encoding="utf-8") as f:
        return json.load(f)
