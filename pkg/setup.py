"""Build the optional compiled kernels; the package works without them."""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension(
            "nerfkit._core._ckernels",
            ["src/nerfkit/_core/_ckernels.pyx"],
            include_dirs=[numpy.get_include()],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        )],
        compiler_directives={"language_level": 3},
        quiet=True,
    )
except ImportError:  # Cython or numpy missing: pure-Python fallback only
    pass

setup(ext_modules=ext_modules)
