#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# lm3fe documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.

import sys, os

# Document the package from the source tree.
sys.path.insert(0, os.path.abspath('..'))

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode', 'sphinx.ext.mathjax']
templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'lm3fe'
copyright = '2015, LM3FE development team'
version = '1.0'
release = '1.0'

exclude_patterns = ['_build']
pygments_style = 'sphinx'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'default'
html_static_path = ['_static']
htmlhelp_basename = 'lm3fedoc'

# -- Options for LaTeX output --------------------------------------------------

latex_elements = {
}
latex_documents = [
  ('index', 'lm3fe.tex', 'lm3fe Documentation',
   'LM3FE development team', 'manual'),
]

# -- Options for manual page output --------------------------------------------

man_pages = [
    ('index', 'lm3fe', 'lm3fe Documentation',
     ['LM3FE development team'], 1)
]
