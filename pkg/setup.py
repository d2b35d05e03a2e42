"""Build script for the optional compiled kernel core.

The package is fully functional without the extension (a pure-Python
backend is selected at import time); set NEUMANNKIT_NO_EXT=1 to skip
compilation entirely.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("NEUMANNKIT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "neumannkit._core",
                    ["src/neumannkit/_core.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
