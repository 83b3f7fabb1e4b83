"""Build script for the optional compiled branch-and-bound kernel.

The package is fully functional without the extension (a pure-Python
kernel with identical behavior is selected at import time), so the
extension can be skipped with SFC_SURVIVE_NO_EXT=1.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SFC_SURVIVE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "sfcsurvive._bbcore",
                    ["src/sfcsurvive/_bbcore.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
