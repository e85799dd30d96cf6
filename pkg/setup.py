"""Build script. The compiled convolution kernel is optional: when Cython or a
C compiler is unavailable the package installs anyway and falls back to the
pure-Python kernel at import time."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "idemconv._kernel._cykernel",
                ["src/idemconv/_kernel/_cykernel.pyx"],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
