from setuptools import setup

# The compiled kernels are optional: without Cython (or without a C
# compiler) the package falls back to the pure-Python implementations
# in orbitcal._kernels.pure, selected automatically at import time.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/orbitcal/_kernels/_speed.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
