import numpy as np
from setuptools import Extension, setup
from Cython.Build import cythonize

ext = Extension(
    "nneten._kernels",
    ["src/nneten/_kernels.pyx"],
    include_dirs=[np.get_include()],
    extra_compile_args=["-O3"],
    optional=True,  # package still works via the pure-numpy fallback
)

setup(ext_modules=cythonize([ext], language_level=3))
