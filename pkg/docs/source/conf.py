# Configuration file for the Sphinx documentation builder.
#
# https://www.sphinx-doc.org/en/master/usage/configuration.html

from __future__ import annotations

import os
import sys

import toral_types

sys.path.insert(0, os.path.abspath("."))


# -- Project information -----------------------------------------------------

project = "Toral Types"
copyright = "2024, Anthony Kuang"
author = "Anthony Kuang"


# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "recommonmark",
    "sphinx_copybutton",
    "sphinx.ext.napoleon",
    "sphinx.ext.doctest",
    "sphinx.ext.viewcode",
    "sphinxcontrib.programoutput",
    "sphinxext.opengraph",
]

# generate documentation from type hints
autodoc_typehints = "description"
autoclass_content = "both"

add_module_names = False

exclude_patterns: list[str] = []

# -- Options for HTML output -------------------------------------------------

html_theme = "furo"
html_title = f"Toral Types v{toral_types.__version__}"

# opengraph settings
ogp_site_name = "Toral Types | Documentation"
