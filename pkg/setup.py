"""Build the optional compiled search kernel.

The package works without the extension (a pure-Python kernel is picked
up at import time), so a failed compile only costs speed.
"""

import os

from setuptools import setup

SOURCES = ["src/gf2designs/_dlx.pyx"]

try:
    from Cython.Build import cythonize

    present = [s for s in SOURCES if os.path.exists(s)]
    ext_modules = cythonize(present, language_level=3) if present else []
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
