"""Build script: compiles the optional Cython kernel extension.

If Cython (or a C compiler) is unavailable the package installs without the
extension and falls back to the pure-Python kernels at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "sunwire._core",
                ["src/sunwire/_core.pyx"],
                # -ffp-contract=off: the compiled kernels must produce
                # bit-identical floats to the pure-Python twin, so FMA
                # contraction and any value-changing optimization is banned.
                extra_compile_args=["-O2", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
