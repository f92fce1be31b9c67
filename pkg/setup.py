"""Build script: compiles the optional Jacobi eigensolver extension.

The package works without the extension (a pure-Python kernel is selected
at import time), so a missing compiler or missing Cython only costs speed.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "realmon._jacobi",
                ["src/realmon/_jacobi.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
