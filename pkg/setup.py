"""Build hook for the optional compiled kernels; metadata lives in pyproject.toml."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("STARRED_PURE_PYTHON", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("starred._kernels", ["src/starred/_kernels.pyx"], extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
