"""Build script.

The compiled kernel is optional: when Cython (or a C compiler) is not
available the build falls back to the pure-Python kernel, which is selected
automatically at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/arguesia/_ckernel.pyx"],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
