#!/usr/bin/env python
"""This module contains setup instructions for galeforge."""
import codecs
import os

from setuptools import setup

here = os.path.abspath(os.path.dirname(__file__))

with codecs.open(os.path.join(here, "README.md"), encoding="utf-8") as fh:
    long_description = "\n" + fh.read()

with open(os.path.join(here, "galeforge", "version.py")) as fp:
    exec(fp.read())

setup(
    name="galeforge",
    version=__version__,  # noqa: F821
    packages=["galeforge", "galeforge.contrib"],
    package_data={
        "": ["LICENSE"],
    },
    license="The Unlicense (Unlicense)",
    entry_points={
        "console_scripts": ["galeforge = galeforge.cli:main"],
    },
    install_requires=["numpy>=1.20"],
    extras_require={"test": ["pytest"]},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: The Unlicense (Unlicense)",
        "Natural Language :: English",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Software Development :: Libraries :: Python Modules",
        "Topic :: Utilities",
    ],
    description=(
        "Exact polarized arrangement combinatorics and refined quasimap "
        "invariants of hypertoric varieties."
    ),
    include_package_data=True,
    long_description_content_type="text/markdown",
    long_description=long_description,
    zip_safe=True,
    python_requires=">=3.9",
    keywords=[
        "hyperplane arrangement",
        "hypertoric",
        "gale duality",
        "quasimaps",
    ],
)
