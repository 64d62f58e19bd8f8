import os

from setuptools import Extension, setup

# LRSCODEC_NO_COUNT=1 builds the compiled kernels without the multiplication counter.
macros = [("LRSCODEC_NO_COUNT", "1")] if os.environ.get("LRSCODEC_NO_COUNT") == "1" else []

try:
    from Cython.Build import cythonize
except ImportError:
    # The pure-Python kernels are used when Cython is unavailable.
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("lrscodec._ckernels", ["src/lrscodec/_ckernels.pyx"], extra_compile_args=["-O2"], define_macros=macros)],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )

setup(ext_modules=ext_modules)
