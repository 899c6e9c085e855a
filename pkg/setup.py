import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # no Cython: install the pure-Python backend only
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("FDO_NO_EXTENSION"):
    ext_modules = cythonize(
        [
            Extension(
                "fdo._kernels",
                ["src/fdo/_kernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                # no -ffast-math: compiled and NumPy paces must agree bit for bit
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
