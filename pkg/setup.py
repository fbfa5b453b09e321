"""Build the optional compiled kernels.

The package is fully functional without the extension (the NumPy fallback
is selected at import time); building it just makes the sweep and census
kernels fast.  Cython is only required when building from source.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "genegeo._core._speedups",
                ["src/genegeo/_core/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
