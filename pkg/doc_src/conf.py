# -*- coding: utf-8 -*-
#
# fdalg documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.

import sys, os

sys.path.append(os.path.abspath('..'))
import fdalg

# -- General configuration -----------------------------------------------------

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.mathjax']

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = u'fdalg'
copyright = u'2026, the fdalg developers'

version = fdalg.get_version(short=True)
release = fdalg.get_version()

exclude_trees = ['_build']

pygments_style = 'sphinx'

autodoc_member_order = 'bysource'

# -- Options for HTML output ---------------------------------------------------

html_theme = 'default'

html_static_path = ['_static']

html_show_sourcelink = False

htmlhelp_basename = 'fdalgdoc'

# -- Options for LaTeX output --------------------------------------------------

latex_documents = [
  ('index', 'fdalg.tex', u'fdalg Documentation',
   u'the fdalg developers', 'manual'),
]
