"""Build script: compiles the optional Cython kernels when possible.

The package is fully functional without the extension; qie._kernels falls
back to the NumPy implementation if the compiled module is absent.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("QIE_SKIP_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "qie._kernels.fast",
                    ["src/qie/_kernels/fast.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
