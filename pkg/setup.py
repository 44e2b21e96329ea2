"""Builds the optional Cython DP kernel.

If Cython or a C compiler is unavailable the install still succeeds and the
package falls back to the pure-Python kernels at import time.
"""
from setuptools import setup

try:
    from Cython.Build import cythonize
    import numpy

    ext_modules = cythonize(
        ["src/secroute/_kernels/dp_cy.pyx"],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
    include_dirs = [numpy.get_include()]
except ImportError:
    ext_modules = []
    include_dirs = []

setup(ext_modules=ext_modules, include_dirs=include_dirs)
