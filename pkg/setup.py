from setuptools import Extension, setup
from Cython.Build import cythonize

# -ffp-contract=off keeps the compiled kernel bit-identical to the pure
# Python fallback (no fused multiply-add reassociation).
EXT_FLAGS = ["-O3", "-ffp-contract=off"]

extensions = [
    Extension(
        "puftank.kernels._thd",
        sources=["src/puftank/kernels/_thd.pyx"],
        extra_compile_args=EXT_FLAGS,
    ),
]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": False,
        },
    ),
)
