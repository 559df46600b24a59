from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Pure-Python install: the package falls back to the numpy kernels.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "cohwit._native",
                ["src/cohwit/_native.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
