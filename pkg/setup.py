"""Build script for the optional Cython kernels.

The extension is marked optional: when Cython or a C compiler is missing the
package installs with the pure-Python kernels only.
"""
from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - build environment without Cython
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "pgcurves._ckernels",
                ["src/pgcurves/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
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
