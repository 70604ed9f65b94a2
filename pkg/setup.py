import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "shrinkcut._kernels._ext",
                ["src/shrinkcut/_kernels/_ext.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    # Without Cython the package still installs; the pure-numpy kernels are
    # selected at import time.
    extensions = []

for ext in extensions:
    ext.optional = True

setup(ext_modules=extensions)
