"""Build script: compiles the optional Cython hot-loop kernels.

The package works without the extension (a NumPy fallback is selected at
import time); the extension makes the large resonant lattice sums roughly
an order of magnitude faster.
"""
import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "cplattice.kernels._fast",
                ["src/cplattice/kernels/_fast.pyx"],
                include_dirs=[numpy.get_include()],
                # -fno-math-errno is value-safe; the kernels rely on strict
                # IEEE semantics for the compensated accumulation, so no
                # -ffast-math here. -march=native lets the chunked fill
                # passes vectorize on the build host.
                extra_compile_args=["-O3", "-fno-math-errno", "-march=native"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
