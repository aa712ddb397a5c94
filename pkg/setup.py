"""Build the optional compiled kernels.

Without Cython or a C compiler the package installs pure Python and falls
back to ``skewmorph._kernels_py`` at import time.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("SKEWMORPH_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("skewmorph._kernels", ["src/skewmorph/_kernels.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
