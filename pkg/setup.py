"""Build script: compiles the optional C extension for the hot kernels.

The package works without the extension (a pure-Python twin is selected at
import time), so a failed compile only costs speed, never functionality.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Degrade to the pure-Python kernels if compilation is impossible."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler, broken toolchain, ...
            print(f"warning: skipping C kernels ({exc}); pure-Python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not compile {ext.name} ({exc}); pure-Python fallback will be used")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available; building without C kernels")
        return []
    ext = Extension(
        "scimetrics._kernels",
        ["src/scimetrics/_kernels.pyx"],
        # -ffp-contract=off keeps doubles bit-identical with the pure-Python twin
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
