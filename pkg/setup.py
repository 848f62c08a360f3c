"""Build script for the optional compiled kernels.

The package is fully functional without the extension: ``bkgraph._core``
falls back to ``bkgraph._pykernels`` when ``bkgraph._kernels`` cannot be
imported. Set ``BKGRAPH_NO_EXT=1`` to skip compilation entirely.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("BKGRAPH_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "bkgraph._kernels",
                    ["src/bkgraph/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )

setup(ext_modules=ext_modules)
