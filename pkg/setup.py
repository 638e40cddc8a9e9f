"""
Setup script for the pybruhat library
"""
import pathlib
from setuptools import setup

# The directory containing this file
HERE = pathlib.Path(__file__).parent

# The text of the README file
README = (HERE / "README.md").read_text()

# This call to setup() does all the work
setup(
    name="pybruhat",
    version="0.1.0",
    description=("Higher Bruhat orders, higher Stasheff-Tamari posets and "
                 "the maps between them."),
    long_description=README,
    long_description_content_type="text/markdown",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Natural Language :: English",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires='>=3.8',
    packages=["pybruhat", "pybruhat.data"],
    package_data={"pybruhat.data": ["known_counts.csv",
                                    "golden_examples.json"]},
    install_requires=[
        'numpy',
        'pandas',
        'thefuzz',
        'networkx',
        'dlx'
    ],
    extras_require={
        'dev': ['flake8',
                'ipdb',
                'ipython',
                'pytest',
                'pytest-cov'
                ]},
    entry_points={
        "console_scripts": [
            "pybruhat=pybruhat.pybruhat:cli",
        ]
    },
)
