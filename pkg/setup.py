import os

from setuptools import setup, Extension

ext_modules = []
if not os.environ.get("CONFREN_NO_EXT"):
    try:
        from Cython.Build import cythonize
        ext_modules = cythonize(
            [Extension("confren._kernels", ["src/confren/_kernels.pyx"])],
            compiler_directives={"language_level": 3},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
