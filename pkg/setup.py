"""Build script for the optional compiled environment kernels.

The package works without the extension (a pure-Python engine is selected at
import time); building it just makes data collection much faster.
"""

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = []
if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "worldforge.toyworlds._engine_c",
                ["src/worldforge/toyworlds/_engine_c.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=extensions)
