"""Build with the optional compiled row-reduction kernel.

The extension is a pure speed optimization; if it fails to build (no C
compiler, no Cython) the package falls back to hopfext._pure at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("hopfext._speedups", ["src/hopfext/_speedups.pyx"])],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
