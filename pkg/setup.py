"""Build script: compiles the optional Cython speedup kernel.

The package works without the extension (pure-Python kernel selected at
import time), so a failed compile only costs speed.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing etc.
            print(f"warning: skipping C extension build ({exc}); "
                  "pure-Python kernel will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); "
                  "pure-Python kernel will be used")


try:
    from Cython.Build import cythonize
    extensions = cythonize(
        [Extension(
            "quadtwist._speedups",
            ["src/quadtwist/_speedups.pyx"],
            extra_compile_args=["-O3"],
        )],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": OptionalBuildExt})
