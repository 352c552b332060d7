import datetime
import os
import sys

sys.path.insert(0, os.path.abspath("../src"))

# -- Project information -----------------------------------------------------

project = "rmcorr"
long_title = "Spectra of high-dimensional sample correlation matrices"
this_year = datetime.datetime.now().year
author = "rmcorr developers"
copyright = f"{this_year}, {author}"

version = ""
release = os.getenv("RMCORR_VER", "0.1.0dev")

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.mathjax",
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.napoleon",
]

autodoc_member_order = "bysource"
source_suffix = [".rst", ".md"]
master_doc = "index"
language = "en"
exclude_patterns = ["Thumbs.db", ".DS_Store", "_build"]
pygments_style = "sphinx"

# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
html_theme_options = {"collapse_navigation": False}
