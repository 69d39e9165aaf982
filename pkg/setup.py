from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "orbitint.kernels._ckernels",
                ["src/orbitint/kernels/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # no Cython: the package runs on the pure-Python kernels
    pass

setup(ext_modules=ext_modules)
