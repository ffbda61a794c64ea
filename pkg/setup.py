import os

from setuptools import Extension, setup

extensions = []
if not os.environ.get("POSETSAT_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        extensions = cythonize(
            [
                Extension(
                    "posetsat._csearch",
                    ["src/posetsat/_csearch.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=extensions)
