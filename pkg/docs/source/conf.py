# -*- coding: utf-8 -*-
#
# Sphinx configuration for the aimkg documentation.

import os
import sys

sys.path.insert(0, os.path.abspath('../../'))

project = 'aimkg'
copyright = '2026-present, aimkg developers'
author = 'aimkg developers'
release = '0.1.0'

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
]
autodoc_member_order = 'bysource'

# markdown pages (Quick-Start, FAQ, History) go through recommonmark
source_suffix = ['.rst', '.md']
source_parsers = {
    '.md': 'recommonmark.parser.CommonMarkParser',
}
master_doc = 'index'
exclude_patterns = []
pygments_style = 'sphinx'

html_theme = 'sphinx_rtd_theme'
html_title = 'aimkg {0}'.format(release)
