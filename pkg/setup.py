"""Builds the optional compiled kernels. Without a working Cython toolchain
the package still installs and falls back to the pure-Python kernels."""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext

ext_modules = []
if not os.environ.get("ALGLAM_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("alglam._kernels", ["src/alglam/_kernels.pyx"], extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or broken
            print(f"warning: compiled kernels not built ({exc}); using pure Python")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: {ext.name} not built ({exc}); using pure Python")


setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
