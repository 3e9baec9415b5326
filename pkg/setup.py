"""Build script for the optional compiled kernel.

The package is fully functional without the extension: tracesim._kernels
falls back to pure Python when the compiled module is absent, so any
compiler failure here downgrades the install instead of breaking it.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken toolchain
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        import warnings

        warnings.warn(
            "tracesim: compiled kernel build failed (%s); "
            "falling back to the pure-Python kernels" % (exc,)
        )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [
            Extension(
                "tracesim._kernels._speedups",
                ["src/tracesim/_kernels/_speedups.pyx"],
            )
        ],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
