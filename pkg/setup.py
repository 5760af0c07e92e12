import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "csympl._fastscatter",
                ["src/csympl/_fastscatter.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Without Cython the package still works through the pure-numpy kernels.
    ext_modules = []

setup(ext_modules=ext_modules)
