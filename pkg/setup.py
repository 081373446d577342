from setuptools import Extension, setup
from Cython.Build import cythonize

# -ffp-contract=off keeps the compiled kernel bit-identical to the pure-Python
# fallback: no FMA fusion, strict IEEE-754 double ops in source order.
extensions = [
    Extension(
        "lensgraph._fastpath",
        ["src/lensgraph/_fastpath.pyx"],
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3"},
    )
)
