# Sphinx configuration of the kitbath documentation.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys

# project root, two levels above docs/source/conf.py
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..')))

# -- Project information -----------------------------------------------------

project = 'kitbath'
copyright = '2026, kitbath developers'  # pylint: disable=redefined-builtin
author = 'kitbath developers'

# rewritten by scripts/setup_versions.py
release = '0.1.0'

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.viewcode',
    'sphinx.ext.intersphinx',
    'sphinx.ext.napoleon',
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx_autodoc_typehints',
    'sphinxemoji.sphinxemoji',
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'bpc_utils': ('https://bpc-utils.readthedocs.io/en/latest/', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
}

autodoc_typehints = 'description'
autodoc_member_order = 'groupwise'
autoclass_content = 'both'

# docstrings are Google style throughout
napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_include_private_with_doc = True
napoleon_use_ivar = True
napoleon_use_rtype = True

exclude_patterns = []  # type: ignore[var-annotated]

# -- Options for HTML output -------------------------------------------------

html_theme = 'alabaster'
html_theme_options = {
    'description': 'covariance matrices of a dissipative Kitaev chain',
    'show_powered_by': False,
}
