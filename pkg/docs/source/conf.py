# -*- coding: utf-8 -*-
#
# fluidprior documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys

exec(open(os.path.join("..", "..", "src", "fluidprior", "_version.py")).read())

# Mock the heavy dependencies so the API pages build without them
fluidprior_require = ["tqdm", "h5py", "multiprocess", "matplotlib.pyplot", "matplotlib",
                      "seaborn", "scipy", "scipy.spatial", "scipy.spatial.distance",
                      "scipy.special", "ruamel", "ruamel.yaml", "ruamel.yaml.error", "click"]

autodoc_mock_imports = fluidprior_require

sys.path.insert(0, os.path.abspath("../../src"))


# -- General configuration ------------------------------------------------

extensions = ['sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.todo',
    'sphinx.ext.coverage',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.autosummary',
    'sphinx.ext.napoleon']

viewcode_import = True

# Napoleon settings
napoleon_google_docstring = False
napoleon_numpy_docstring = True
napoleon_include_init_with_doc = False
napoleon_use_param = False
napoleon_use_ivar = True
autosummary_generate = True
napoleon_include_special_with_doc = False
napoleon_use_admonition_for_notes = False

source_suffix = '.rst'
master_doc = 'index'

project = u'fluidprior'
copyright = u'2026, the fluidprior developers'
author = u'the fluidprior developers'

version = __version__
release = __version__

language = None
exclude_patterns = []
pygments_style = 'sphinx'
todo_include_todos = True


# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'
htmlhelp_basename = 'fluidpriordoc'


# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'fluidprior', u'fluidprior Documentation',
     [author], 1)
]


# Stop cross references from resolving to a same-named class in another module
from sphinx.domains.python import PythonDomain

class PatchedPythonDomain(PythonDomain):
    def resolve_xref(self, env, fromdocname, builder, typ, target, node, contnode):
        if 'refspecific' in node:
            del node['refspecific']
        return super(PatchedPythonDomain, self).resolve_xref(
            env, fromdocname, builder, typ, target, node, contnode)


def setup(sphinx):
    sphinx.override_domain(PatchedPythonDomain)
