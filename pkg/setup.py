import numpy as np
from setuptools import setup
from setuptools.extension import Extension

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    exts = cythonize(
        [
            Extension(
                "pcflib._sweepkern",
                sources=["src/pcflib/_sweepkern.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    # Package still works without the compiled core; the pure-Python
    # fallback kernels are selected at import time.
    exts = []

setup(ext_modules=exts)
